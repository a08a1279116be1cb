//! Intersection numbers on `Bl_e X_Delta`, diamonds of negative curves in the
//! `(s,t)` plane, containment of minimal triangles under pivots, and MDS
//! certificates.
//!
//! Classes are written `h H + e E` where `H` is the class of a triangle and
//! `E` the exceptional curve, so `H.E = 0`, `E.E = -1` and a curve of order
//! `m` in the triangle has class `H - mE`.

use crate::exactmath::{q, qbig, qi, to_f64, Frac, Rational};
use crate::families::{
    edge_coefficients, fib, solves_mn, xi, FamilyError, TriangleKind, XiKind,
};
use crate::lattice::{LatticePoint, QPoint, QPolygon};
use crate::laurent::LaurentPoly;
use crate::negcurve::{canonical_scaling, NegCurveError, VanishingSystem};
use crate::trispace::{minimal_triangle, SlopePair, SlopeTriangle};
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MdsError {
    #[error("classes refer to different H^2 ({0} vs {1})")]
    MismatchedReference(String, String),
    #[error("slopes {0} are not in 0 < s < t")]
    NotNormalized(SlopePair),
    #[error("right slope {0} is not an integer")]
    NonIntegralSlope(String),
    #[error("{0} is outside the diamond of {1}")]
    OutsideDiamond(SlopePair, String),
    #[error("column counts {found:?} are not 1,1,2,..,{n}")]
    ColumnCounts { found: Vec<usize>, n: usize },
    #[error("no polynomial vanishing to order {0} on the pruned points")]
    EmptyKernel(usize),
    #[error("postcondition failed: {0}")]
    Check(String),
    #[error(transparent)]
    NegCurve(#[from] NegCurveError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

// ---------------------------------------------------------------------------
// classes

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveClass {
    #[serde(with = "crate::exactmath::rational::serde_q")]
    pub h: Rational,
    #[serde(with = "crate::exactmath::rational::serde_q")]
    pub e: Rational,
    /// `H^2` of the reference class.
    #[serde(with = "crate::exactmath::rational::serde_q")]
    pub h2: Rational,
}

impl CurveClass {
    pub fn new(h: Rational, e: Rational, h2: Rational) -> Self {
        CurveClass { h, e, h2 }
    }

    pub fn exceptional(h2: Rational) -> Self {
        CurveClass::new(qi(0), qi(1), h2)
    }

    /// `H_tri - mE`, measured against the triangle of size 1 with the same
    /// slopes, so that classes of different triangles at one point of the
    /// `(s,t)` plane can be paired.
    pub fn of_triangle(tri: &SlopeTriangle, m: usize) -> Self {
        let sp = &tri.slopes;
        let h2 = (&sp.s * &sp.t * (&sp.t - &sp.s)).recip();
        CurveClass::new(triangle_size(tri), -qi(m as i64), h2)
    }

    pub fn self_intersection(&self) -> Rational {
        &self.h * &self.h * &self.h2 - &self.e * &self.e
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} H + {} E (H^2 = {})", Frac(&self.h), Frac(&self.e), Frac(&self.h2))
    }
}

pub fn intersect(c1: &CurveClass, c2: &CurveClass) -> Result<Rational, MdsError> {
    if c1.h2 != c2.h2 {
        return Err(MdsError::MismatchedReference(c1.h2.to_string(), c2.h2.to_string()));
    }
    Ok(&c1.h * &c2.h * &c1.h2 - &c1.e * &c2.e)
}

/// Linear size `s (r + y0) + t (l - y0)` of a triangle: base `size/(st)`,
/// height `size/(t-s)`, area `size^2 / (2 s t (t-s))`.
pub fn triangle_size(tri: &SlopeTriangle) -> Rational {
    let (y0, l, r) = tri.support_values();
    &tri.slopes.s * (&r + &y0) + &tri.slopes.t * (&l - &y0)
}

// ---------------------------------------------------------------------------
// quadratic irrationals

/// `a + b sqrt(d)` with rational `a`, `b` and a nonnegative integer `d`
/// stripped of small square factors.
#[derive(Debug, Clone)]
pub struct QuadraticIrrational {
    a: Rational,
    b: Rational,
    d: BigInt,
}

fn is_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl QuadraticIrrational {
    pub fn rational(a: Rational) -> Self {
        QuadraticIrrational { a, b: qi(0), d: BigInt::zero() }
    }

    pub fn new(a: Rational, b: Rational, d: BigInt) -> Self {
        assert!(!d.is_negative(), "negative radicand");
        if b.is_zero() || d.is_zero() {
            return Self::rational(a);
        }
        if let Some(r) = is_square(&d) {
            return Self::rational(a + b * qbig(r));
        }
        let (mut d, mut f) = (d, BigInt::one());
        let mut p = BigInt::from(2);
        let limit = BigInt::from(20_000);
        while p < limit && &p * &p <= d {
            let p2 = &p * &p;
            while (&d % &p2).is_zero() {
                d /= &p2;
                f *= &p;
            }
            p += 1;
        }
        if let Some(r) = is_square(&d) {
            return Self::rational(a + b * qbig(f * r));
        }
        QuadraticIrrational { a, b: b * qbig(f), d }
    }

    /// `sqrt(x)` for a rational `x >= 0`.
    pub fn sqrt(x: &Rational) -> Self {
        let (n, den) = (x.numer().clone(), x.denom().clone());
        Self::new(qi(0), Rational::new(BigInt::one(), den.clone()), n * den)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.a) + to_f64(&self.b) * self.d.to_f64().unwrap_or(f64::INFINITY).sqrt()
    }

    /// `(p, q, D, r)` with value `(p + q sqrt(D))/r`, `r > 0`.
    pub fn parts(&self) -> (BigInt, BigInt, BigInt, BigInt) {
        let r = self.a.denom().lcm(self.b.denom());
        let p = (&self.a * qbig(r.clone())).to_integer();
        let qn = (&self.b * qbig(r.clone())).to_integer();
        (p, qn, self.d.clone(), r)
    }
}

/// Sign of `a + b sqrt(d)`.
fn sign_root(a: &Rational, b: &Rational, d: &BigInt) -> Ordering {
    let sa = a.cmp(&qi(0));
    let sb = if d.is_zero() { Ordering::Equal } else { b.cmp(&qi(0)) };
    if sb == Ordering::Equal || sa == sb {
        return if sa == Ordering::Equal { sb } else { sa };
    }
    if sa == Ordering::Equal {
        return sb;
    }
    match (a * a).cmp(&(b * b * qbig(d.clone()))) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Sign of `a + b sqrt(d1) + c sqrt(d2)`.
fn sign_two_roots(a: &Rational, b: &Rational, d1: &BigInt, c: &Rational, d2: &BigInt) -> Ordering {
    let su = sign_root(a, b, d1);
    let sv = if d2.is_zero() { Ordering::Equal } else { c.cmp(&qi(0)) };
    if sv == Ordering::Equal {
        return su;
    }
    if su == Ordering::Equal || su == sv {
        return sv;
    }
    // |u| against |v| through u^2 - v^2
    let s2 = sign_root(&(a * a + b * b * qbig(d1.clone()) - c * c * qbig(d2.clone())), &(qi(2) * a * b), d1);
    match s2 {
        Ordering::Greater => su,
        Ordering::Less => sv,
        Ordering::Equal => Ordering::Equal,
    }
}

impl Ord for QuadraticIrrational {
    fn cmp(&self, o: &Self) -> Ordering {
        let da = &self.a - &o.a;
        if self.d == o.d || o.b.is_zero() {
            let b = if o.b.is_zero() { self.b.clone() } else { &self.b - &o.b };
            let d = if self.d.is_zero() { &o.d } else { &self.d };
            return sign_root(&da, &b, d);
        }
        if self.b.is_zero() {
            return sign_root(&da, &-o.b.clone(), &o.d);
        }
        sign_two_roots(&da, &self.b, &self.d, &-o.b.clone(), &o.d)
    }
}

impl PartialOrd for QuadraticIrrational {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl PartialEq for QuadraticIrrational {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}

impl Eq for QuadraticIrrational {}

impl fmt::Display for QuadraticIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", Frac(&self.a));
        }
        let (p, qn, d, r) = self.parts();
        let sign = if qn.sign() == Sign::Minus { "-" } else { "+" };
        let qa = qn.abs();
        let rad = if qa.is_one() { format!("sqrt({d})") } else { format!("{qa}*sqrt({d})") };
        let num = if p.is_zero() {
            format!("{}{rad}", if sign == "-" { "-" } else { "" })
        } else {
            format!("{p}{sign}{rad}")
        };
        if r.is_one() {
            write!(f, "{num}")
        } else {
            write!(f, "({num})/{r}")
        }
    }
}

impl Serialize for QuadraticIrrational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QuadraticIrrational", 2)?;
        st.serialize_field("exact", &self.to_string())?;
        st.serialize_field("approx", &self.to_f64())?;
        st.end()
    }
}

/// A rational strictly between `lo < hi`, found from continued-fraction
/// convergents of the midpoint.
fn rational_between(lo: &QuadraticIrrational, hi: &QuadraticIrrational) -> Option<Rational> {
    let mid = (lo.to_f64() + hi.to_f64()) / 2.0;
    if !mid.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut x = mid;
    for _ in 0..40 {
        let a = x.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        let c = Rational::new(h2.clone(), k2.clone());
        let cq = QuadraticIrrational::rational(c.clone());
        if &cq > lo && &cq < hi {
            return Some(c);
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = x - a;
        if frac.abs() < 1e-15 {
            break;
        }
        x = 1.0 / frac;
    }
    None
}

// ---------------------------------------------------------------------------
// diamonds

/// The region of `(s,t)` where `poly` defines a curve of nonpositive
/// self-intersection with vanishing order `m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diamond {
    pub label: String,
    pub m: usize,
    /// Vertices of the Newton polygon.
    pub vertices: Vec<QPoint>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub poly: Option<LaurentPoly>,
}

impl Diamond {
    pub fn new(label: impl Into<String>, poly: LaurentPoly, m: usize) -> Result<Self, MdsError> {
        let np = poly.newton_polygon().map_err(|_| NegCurveError::ZeroPolynomial)?;
        Ok(Diamond { label: label.into(), m, vertices: np.vertices().to_vec(), poly: Some(poly) })
    }

    /// From a known Newton polygon.
    pub fn from_polygon(label: impl Into<String>, np: &QPolygon, m: usize) -> Result<Self, MdsError> {
        if np.is_empty() {
            return Err(NegCurveError::ZeroPolynomial.into());
        }
        Ok(Diamond { label: label.into(), m, vertices: np.vertices().to_vec(), poly: None })
    }

    /// `Upsilon_K` through the vertices of its Newton polygon.
    pub fn special(k: i64) -> Result<Self, MdsError> {
        let np = QPolygon::from_lattice(&crate::families::special_vertices(k));
        let m = ((k - 3) * (k - 1) * (k - 1)) as usize;
        Diamond::from_polygon(format!("Upsilon_{k}"), &np, m)
    }

    /// The curve `1 - y` of order 1.
    pub fn one_minus_y() -> Self {
        Diamond::new("1-y", LaurentPoly::from_i64_terms(&[(0, 0, 1), (0, 1, -1)]), 1).unwrap()
    }

    /// The diamond of `xi^int` (order `M+N`) or `xi^rat` (order `M`) of index `n`.
    pub fn family(k: i64, n: usize, kind: TriangleKind) -> Result<Self, MdsError> {
        let (m, nn) = (fib(k, n + 1), fib(k, n));
        let (xk, order, tag) = match kind {
            TriangleKind::Integral => (XiKind::Int, m + nn, "IT"),
            TriangleKind::Rational => (XiKind::Rat, m, "RT"),
        };
        Diamond::new(format!("{tag}_{k}({m},{nn})"), xi(k, n, xk)?, order as usize)
    }

    fn polygon(&self) -> QPolygon {
        QPolygon::hull(&self.vertices)
    }

    pub fn minimal_triangle(&self, sp: &SlopePair) -> SlopeTriangle {
        minimal_triangle(&self.polygon(), sp)
    }

    pub fn class_at(&self, sp: &SlopePair) -> CurveClass {
        CurveClass::of_triangle(&self.minimal_triangle(sp), self.m)
    }

    pub fn self_intersection_at(&self, sp: &SlopePair) -> Rational {
        qi(2) * self.minimal_triangle(sp).area() - qi((self.m * self.m) as i64)
    }

    fn y0(&self) -> Rational {
        self.vertices.iter().map(|v| v.y.clone()).min().unwrap()
    }

    /// Slopes at which the vertex realising a support value changes.
    fn breakpoints(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                if a.x != b.x {
                    out.push((&a.y - &b.y) / (&a.x - &b.x));
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// `0 < s < t` and the minimal triangle has area at most `m^2/2`.
pub fn diamond_contains(d: &Diamond, p: &SlopePair) -> bool {
    p.is_normalized() && qi(2) * d.minimal_triangle(p).area() <= qi((d.m * d.m) as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Line<'a> {
    /// `t = t0`, parametrised by `s`.
    Horizontal(&'a Rational),
    /// `s = s0`, parametrised by `t`.
    Vertical(&'a Rational),
}

/// A closed interval of the line parameter; `hi = None` is unbounded.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectionInterval {
    pub lo: QuadraticIrrational,
    pub hi: Option<QuadraticIrrational>,
}

impl SectionInterval {
    pub fn contains(&self, x: &Rational) -> bool {
        let x = QuadraticIrrational::rational(x.clone());
        self.lo <= x && self.hi.as_ref().map_or(true, |h| &x <= h)
    }
}

impl fmt::Display for SectionInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.hi {
            Some(h) => write!(f, "[{}, {}]", self.lo, h),
            None => write!(f, "[{}, inf)", self.lo),
        }
    }
}

type Bound = Option<QuadraticIrrational>;

fn max_lo(a: &Bound, b: &Bound) -> Bound {
    match (a, b) {
        (None, x) | (x, None) => x.clone(),
        (Some(x), Some(y)) => Some(if x >= y { x.clone() } else { y.clone() }),
    }
}

fn min_hi(a: &Bound, b: &Bound) -> Bound {
    match (a, b) {
        (None, x) | (x, None) => x.clone(),
        (Some(x), Some(y)) => Some(if x <= y { x.clone() } else { y.clone() }),
    }
}

fn nonempty(lo: &Bound, hi: &Bound) -> bool {
    match (lo, hi) {
        (Some(l), Some(h)) => l <= h,
        _ => true,
    }
}

/// `{x : a x^2 + b x + c <= 0}` as intervals with optional bounds.
fn quadratic_nonpositive(a: &Rational, b: &Rational, c: &Rational) -> Vec<(Bound, Bound)> {
    let r = QuadraticIrrational::rational;
    if a.is_zero() {
        if b.is_zero() {
            return if c <= &qi(0) { vec![(None, None)] } else { vec![] };
        }
        let x = r(-c / b);
        return if b.is_positive() { vec![(None, Some(x))] } else { vec![(Some(x), None)] };
    }
    let disc = b * b - qi(4) * a * c;
    if disc.is_negative() {
        return if a.is_positive() { vec![] } else { vec![(None, None)] };
    }
    let root = QuadraticIrrational::sqrt(&disc);
    let two_a = qi(2) * a;
    let mk = |sgn: i64| QuadraticIrrational::new(-b / &two_a, &root.b * qi(sgn) / &two_a, root.d.clone());
    let (mut r1, mut r2) = (mk(-1), mk(1));
    if root.is_rational() {
        r1 = r(-b / &two_a - &root.a / &two_a);
        r2 = r(-b / &two_a + &root.a / &two_a);
    }
    if r1 > r2 {
        std::mem::swap(&mut r1, &mut r2);
    }
    if a.is_positive() {
        vec![(Some(r1), Some(r2))]
    } else {
        vec![(None, Some(r1)), (Some(r2), None)]
    }
}

/// Intersection of the diamond with a horizontal or vertical line. On each
/// piece where the support vertices are fixed, the area condition is a
/// quadratic inequality in the line parameter.
pub fn diamond_section(d: &Diamond, line: Line<'_>) -> Vec<SectionInterval> {
    let m2 = qi((d.m * d.m) as i64);
    let y0 = d.y0();
    let bps = d.breakpoints();
    let (dom_lo, dom_hi) = match line {
        Line::Vertical(s0) => (s0.clone(), None),
        Line::Horizontal(t0) => (qi(0), Some(t0.clone())),
    };
    let mut cuts: Vec<Rational> = vec![dom_lo.clone()];
    cuts.extend(bps.into_iter().filter(|b| b > &dom_lo && dom_hi.as_ref().map_or(true, |h| b < h)));
    let mut pieces: Vec<(Rational, Option<Rational>)> = Vec::new();
    for (i, c) in cuts.iter().enumerate() {
        let next = cuts.get(i + 1).cloned().or_else(|| dom_hi.clone());
        pieces.push((c.clone(), next));
    }
    let argmax = |f: &dyn Fn(&QPoint) -> Rational| -> QPoint {
        d.vertices.iter().max_by(|a, b| f(a).cmp(&f(b))).unwrap().clone()
    };
    let mut raw: Vec<(Bound, Bound)> = Vec::new();
    for (lo, hi) in pieces {
        let sample = match &hi {
            Some(h) => (&lo + h) / qi(2),
            None => &lo + qi(1),
        };
        let (a, b, c) = match line {
            Line::Vertical(s0) => {
                let l = d.vertices.iter().map(|v| &v.y - s0 * &v.x).max().unwrap() - &y0;
                let v = argmax(&|v: &QPoint| &sample * &v.x - &v.y);
                let p = s0 * &v.x + &l;
                let qq = s0 * (&y0 - &v.y);
                (&p * &p - &m2 * s0, qi(2) * &p * &qq + &m2 * s0 * s0, &qq * &qq)
            }
            Line::Horizontal(t0) => {
                let r = d.vertices.iter().map(|v| t0 * &v.x - &v.y).max().unwrap() + &y0;
                let v = argmax(&|v: &QPoint| &v.y - &sample * &v.x);
                let p = &r - t0 * &v.x;
                let qq = t0 * (&v.y - &y0);
                (&p * &p + &m2 * t0, qi(2) * &p * &qq - &m2 * t0 * t0, &qq * &qq)
            }
        };
        let plo = Some(QuadraticIrrational::rational(lo.clone()));
        let phi = hi.map(QuadraticIrrational::rational);
        for (l, h) in quadratic_nonpositive(&a, &b, &c) {
            let (l, h) = (max_lo(&l, &plo), min_hi(&h, &phi));
            if nonempty(&l, &h) {
                raw.push((l, h));
            }
        }
    }
    raw.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<SectionInterval> = Vec::new();
    for (l, h) in raw {
        let l = l.expect("bounded below by the domain");
        if let Some(last) = out.last_mut() {
            let touches = last.hi.as_ref().map_or(true, |lh| &l <= lh);
            if touches {
                last.hi = match (&last.hi, &h) {
                    (None, _) | (_, None) => None,
                    (Some(a), Some(b)) => Some(if a >= b { a.clone() } else { b.clone() }),
                };
                continue;
            }
        }
        out.push(SectionInterval { lo: l, hi: h });
    }
    // the domain ends are open
    out.retain(|iv| {
        let lo_is_dom = iv.lo == QuadraticIrrational::rational(dom_lo.clone());
        let degenerate = iv.hi.as_ref().map_or(false, |h| h == &iv.lo);
        !(lo_is_dom && degenerate)
    });
    out
}

// ---------------------------------------------------------------------------
// containment

/// Pivot rules certifying that the minimal triangle at `target` of a curve
/// contains its minimal triangle `inner`.
///
/// Moving the left slope up with `t` fixed pivots the left edge about the
/// lower-left vertex; moving `t` down with `s` fixed pivots the right edge
/// about the lower-right vertex; lowering `s` or raising `t` pivots about the
/// top vertex. Combined moves need the vertices of both single moves.
pub fn supports_containment(inner: &SlopeTriangle, target: &SlopePair) -> bool {
    if !target.is_normalized() {
        return false;
    }
    let [bl, br, top] = inner.integral_flags();
    let (s1, t1) = (&inner.slopes.s, &inner.slopes.t);
    let (s2, t2) = (&target.s, &target.t);
    match (s2.cmp(s1), t2.cmp(t1)) {
        (Ordering::Equal, Ordering::Equal) => true,
        (Ordering::Greater, Ordering::Equal) => bl,
        (Ordering::Equal, Ordering::Less) => br,
        (Ordering::Less | Ordering::Equal, Ordering::Greater | Ordering::Equal) => top,
        (Ordering::Greater, Ordering::Less) => bl && br,
        _ => false,
    }
}

// ---------------------------------------------------------------------------
// certificates

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveAt {
    pub label: String,
    pub m: usize,
    pub minimal_triangle: SlopeTriangle,
    pub class: CurveClass,
    #[serde(with = "crate::exactmath::rational::serde_q")]
    pub self_intersection: Rational,
}

impl CurveAt {
    fn of(d: &Diamond, sp: &SlopePair) -> Self {
        let tri = d.minimal_triangle(sp);
        let class = CurveClass::of_triangle(&tri, d.m);
        CurveAt {
            label: d.label.clone(),
            m: d.m,
            self_intersection: class.self_intersection(),
            minimal_triangle: tri,
            class,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContainmentStep {
    pub from: SlopePair,
    pub to: SlopePair,
    pub inner: SlopeTriangle,
    pub outer: SlopeTriangle,
}

impl ContainmentStep {
    pub fn holds(&self) -> bool {
        supports_containment(&self.inner, &self.to) && self.outer.contains_triangle(&self.inner)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum MdsEvidence {
    /// Two curves of nonpositive self-intersection meeting at `point`, and a
    /// chain of containments carrying the target's minimal triangle there.
    Meeting {
        point: SlopePair,
        home: CurveAt,
        neighbor: CurveAt,
        #[serde(with = "crate::exactmath::rational::serde_q")]
        intersection: Rational,
        chain: Vec<ContainmentStep>,
    },
    /// A curve `D` with `C.D = 0`.
    DisjointCurve(Box<DCurve>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonMdsEvidence {
    pub hypothesis: String,
    pub center: SlopePair,
    pub quadrant: String,
    pub edge_check: Option<EdgeCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeCheck {
    pub n: usize,
    /// `(coefficient two steps from the vertex, coefficient next to it)`.
    #[serde(with = "crate::exactmath::rational::serde_q")]
    pub near: Rational,
    #[serde(with = "crate::exactmath::rational::serde_q")]
    pub far: Rational,
    /// `|far| > |near|`.
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict")]
pub enum MdsCertificate {
    #[serde(rename = "MDS")]
    Mds { target: SlopePair, evidence: MdsEvidence },
    #[serde(rename = "NonMDS")]
    NonMds { target: SlopePair, evidence: NonMdsEvidence },
    Unknown { target: SlopePair, reason: String },
}

impl MdsCertificate {
    pub fn is_mds(&self) -> bool {
        matches!(self, MdsCertificate::Mds { .. })
    }

    pub fn is_non_mds(&self) -> bool {
        matches!(self, MdsCertificate::NonMds { .. })
    }

    pub fn target(&self) -> &SlopePair {
        match self {
            MdsCertificate::Mds { target, .. }
            | MdsCertificate::NonMds { target, .. }
            | MdsCertificate::Unknown { target, .. } => target,
        }
    }

    /// Recompute every intersection number and containment step.
    pub fn replay(&self, home: &Diamond, neighbor: Option<&Diamond>) -> bool {
        match self {
            MdsCertificate::Mds { target, evidence: MdsEvidence::Meeting { point, chain, .. } } => {
                let Some(nb) = neighbor else { return false };
                let (h, n) = (CurveAt::of(home, point), CurveAt::of(nb, point));
                let ok_point = !h.self_intersection.is_positive()
                    && !n.self_intersection.is_positive()
                    && intersect(&h.class, &n.class).map_or(false, |x| x.is_zero());
                let mut at = target.clone();
                let mut ok_chain = true;
                for st in chain {
                    ok_chain &= st.from == at
                        && st.inner == home.minimal_triangle(&st.from)
                        && st.outer == home.minimal_triangle(&st.to)
                        && st.holds();
                    at = st.to.clone();
                }
                ok_point && ok_chain && &at == point
            }
            MdsCertificate::Mds { target, evidence: MdsEvidence::DisjointCurve(dc) } => {
                match d_curve_integer_t(&home.minimal_triangle(target)) {
                    Ok(again) => again.poly == dc.poly && again.intersection.is_zero(),
                    Err(_) => false,
                }
            }
            _ => false,
        }
    }
}

fn meeting_certificate(target: &SlopePair, home: &Diamond, nb: &Diamond, point: &SlopePair) -> Option<MdsCertificate> {
    let (h, n) = (CurveAt::of(home, point), CurveAt::of(nb, point));
    if h.self_intersection.is_positive() || n.self_intersection.is_positive() {
        return None;
    }
    let intersection = intersect(&h.class, &n.class).ok()?;
    if !intersection.is_zero() {
        return None;
    }
    let mut chain = Vec::new();
    if point != target {
        let step = ContainmentStep {
            from: target.clone(),
            to: point.clone(),
            inner: home.minimal_triangle(target),
            outer: home.minimal_triangle(point),
        };
        if !step.holds() {
            return None;
        }
        chain.push(step);
    }
    Some(MdsCertificate::Mds {
        target: target.clone(),
        evidence: MdsEvidence::Meeting { point: point.clone(), home: h, neighbor: n, intersection, chain },
    })
}

/// Rational points common to the two sections: touching endpoints and one
/// interior point of any overlap.
fn common_points(a: &[SectionInterval], b: &[SectionInterval]) -> Vec<Rational> {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            let lo = max_lo(&Some(x.lo.clone()), &Some(y.lo.clone())).unwrap();
            let hi = min_hi(&x.hi, &y.hi);
            if !nonempty(&Some(lo.clone()), &hi) {
                continue;
            }
            out.extend(lo.as_rational().cloned());
            if let Some(h) = &hi {
                out.extend(h.as_rational().cloned());
                if &lo < h {
                    out.extend(rational_between(&lo, h));
                }
            } else {
                out.push(qi(lo.to_f64().floor() as i64 + 1));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// MDS certificate for `target` in the diamond of `home`: either `target`
/// also lies in the neighboring diamond, or a point shared by both diamonds
/// is reached along the vertical or horizontal line through `target` by a
/// containment the pivot rules certify.
pub fn certify_mds(target: &SlopePair, home: &Diamond, neighbor: &Diamond) -> MdsCertificate {
    let unknown = |reason: String| MdsCertificate::Unknown { target: target.clone(), reason };
    if !target.is_normalized() {
        return unknown("slopes not in 0 < s < t".into());
    }
    if !diamond_contains(home, target) {
        return unknown(format!("outside the diamond of {}", home.label));
    }
    if diamond_contains(neighbor, target) {
        if let Some(c) = meeting_certificate(target, home, neighbor, target) {
            return c;
        }
    }
    let mut candidates: Vec<SlopePair> = Vec::new();
    for vertical in [true, false] {
        let line = if vertical { Line::Vertical(&target.s) } else { Line::Horizontal(&target.t) };
        let pts = common_points(&diamond_section(home, line), &diamond_section(neighbor, line));
        for x in pts {
            let p = if vertical { SlopePair::new(target.s.clone(), x) } else { SlopePair::new(x, target.t.clone()) };
            if p.is_normalized() {
                candidates.push(p);
            }
        }
    }
    let dist = |p: &SlopePair| (&p.s - &target.s).abs() + (&p.t - &target.t).abs();
    candidates.sort_by_key(dist);
    for p in &candidates {
        if let Some(c) = meeting_certificate(target, home, neighbor, p) {
            return c;
        }
    }
    unknown(format!(
        "no point shared with the diamond of {} is reachable by a certified pivot ({} candidates)",
        neighbor.label,
        candidates.len()
    ))
}

// ---------------------------------------------------------------------------
// the curve D for integral right slope

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DCurve {
    pub slopes: SlopePair,
    pub order: usize,
    /// The triangle parallel to the target with integral left edge and width `order`.
    pub triangle: SlopeTriangle,
    pub column_counts: Vec<usize>,
    pub points: Vec<LatticePoint>,
    pub poly: LaurentPoly,
    pub class_c: CurveClass,
    pub class_d: CurveClass,
    #[serde(with = "crate::exactmath::rational::serde_q")]
    pub intersection: Rational,
    #[serde(with = "crate::exactmath::rational::serde_q")]
    pub self_intersection: Rational,
}

/// For slopes where `1 - y` is the negative curve and `t` is an integer, the
/// curve `D` of class `H' - nE` disjoint from `C`.
///
/// `n` is the denominator of `s`; `Delta'` has vertices `(0,0)`, `(n - sn/t, 0)`,
/// `(n, sn)`. In each column we keep the lowest lattice points, as many as the
/// column of the triangle with base `[0,n]`, height `n` and the same left edge
/// has once the right part of `Delta'` is sheared flat.
pub fn d_curve_integer_t(tri: &SlopeTriangle) -> Result<DCurve, MdsError> {
    let sp = tri.slopes.clone();
    if !sp.is_normalized() {
        return Err(MdsError::NotNormalized(sp));
    }
    if !sp.t.is_integer() {
        return Err(MdsError::NonIntegralSlope(sp.t.to_string()));
    }
    let c_diamond = Diamond::one_minus_y();
    if !diamond_contains(&c_diamond, &sp) {
        return Err(MdsError::OutsideDiamond(sp, c_diamond.label));
    }
    let (s, t) = (&sp.s, &sp.t);
    let n = s.denom().to_i64().ok_or_else(|| MdsError::Check("denominator overflow".into()))?;
    let nq = qi(n);
    let top = s * &nq;
    let br = &nq - &top / t;
    let big = SlopeTriangle::from_vertices([
        QPoint::new(qi(0), qi(0)),
        QPoint::new(br.clone(), qi(0)),
        QPoint::new(nq.clone(), top.clone()),
    ])
    .ok_or_else(|| MdsError::Check("degenerate triangle".into()))?;
    // apex of the height-n sub-triangle on the left edge
    let p = &nq / s;
    let mut counts = Vec::new();
    let mut pts = Vec::new();
    for x in 0..=n {
        let xq = qi(x);
        let h = if xq <= p { &nq * &xq / &p } else { &nq * (&nq - &xq) / (&nq - &p) };
        let k = h.floor().to_integer().to_usize().unwrap() + 1;
        counts.push(k);
        let bottom = if xq <= br { qi(0) } else { t * (&xq - &nq) + &top };
        let y_lo = bottom.ceil().to_integer().to_i64().unwrap();
        let y_hi = (s * &xq).floor().to_integer().to_i64().unwrap();
        if (y_hi - y_lo + 1) < k as i64 {
            return Err(MdsError::ColumnCounts { found: counts, n: n as usize });
        }
        pts.extend((y_lo..y_lo + k as i64).map(|y| LatticePoint::new(x, y)));
    }
    let mut sorted = counts.clone();
    sorted.sort();
    let mut want: Vec<usize> = vec![1];
    want.extend(1..=n as usize);
    if sorted != want {
        return Err(MdsError::ColumnCounts { found: counts, n: n as usize });
    }
    let sys = VanishingSystem::new(&pts, n as usize)?;
    let ker = sys.kernel()?;
    if ker.len() != 1 {
        return Err(MdsError::EmptyKernel(n as usize));
    }
    let poly = sys.polynomial(&canonical_scaling(&pts, &ker[0]));
    if poly.coeff(0, 0).is_zero() || poly.coeff(n, top.to_integer().to_i64().unwrap()).is_zero() {
        return Err(MdsError::Check("left or top coefficient vanishes".into()));
    }
    let one_minus_y = LaurentPoly::from_i64_terms(&[(0, 0, 1), (0, 1, -1)]);
    if poly.div_exact(&one_minus_y).is_some() {
        return Err(MdsError::Check("1-y divides D".into()));
    }
    let np = poly.newton_polygon().map_err(|_| NegCurveError::ZeroPolynomial)?;
    let d_tri = minimal_triangle(&np, &sp);
    if d_tri != big {
        return Err(MdsError::Check(format!("minimal triangle of D is {d_tri}, expected {big}")));
    }
    let class_c = c_diamond.class_at(&sp);
    let class_d = CurveClass::of_triangle(&d_tri, n as usize);
    let intersection = intersect(&class_c, &class_d)?;
    if !intersection.is_zero() {
        return Err(MdsError::Check(format!("C.D = {intersection}")));
    }
    let self_intersection = class_d.self_intersection();
    Ok(DCurve {
        slopes: sp,
        order: n as usize,
        triangle: big,
        column_counts: counts,
        points: pts,
        poly,
        class_c,
        class_d,
        intersection,
        self_intersection,
    })
}

/// Certificate through [`d_curve_integer_t`].
pub fn certify_integer_t(target: &SlopePair) -> MdsCertificate {
    let c = Diamond::one_minus_y();
    match d_curve_integer_t(&c.minimal_triangle(target)) {
        Ok(d) => MdsCertificate::Mds { target: target.clone(), evidence: MdsEvidence::DisjointCurve(Box::new(d)) },
        Err(e) => MdsCertificate::Unknown { target: target.clone(), reason: e.to_string() },
    }
}

// ---------------------------------------------------------------------------
// non-MDS screen

pub fn family_center(k: i64, m: i64, n: i64, kind: TriangleKind) -> SlopePair {
    match kind {
        TriangleKind::Integral => SlopePair::new(q(k * n, m + n), qi(k)),
        TriangleKind::Rational => SlopePair::new(q(m + n, m), qi(k)),
    }
}

/// Index `n` and orientation (`false` for `(F_{n+1}, F_n)`) of a family pair.
fn family_index(k: i64, m: i64, nn: i64) -> Option<(usize, bool)> {
    (0..64).find_map(|n| {
        let (a, b) = (fib(k, n + 1), fib(k, n));
        if (a, b) == (m, nn) {
            Some((n, false))
        } else if (b, a) == (m, nn) {
            Some((n, true))
        } else {
            None
        }
    })
}

/// Unimodular affine map between two lattice triangles.
fn triangle_map(from: [LatticePoint; 3], to: [LatticePoint; 3]) -> Option<([[i64; 2]; 2], (i64, i64))> {
    let e1 = (from[1].x - from[0].x, from[1].y - from[0].y);
    let e2 = (from[2].x - from[0].x, from[2].y - from[0].y);
    let det = e1.0 * e2.1 - e1.1 * e2.0;
    for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        let g0 = to[perm[0]];
        let g1 = (to[perm[1]].x - g0.x, to[perm[1]].y - g0.y);
        let g2 = (to[perm[2]].x - g0.x, to[perm[2]].y - g0.y);
        let num = [
            [g1.0 * e2.1 - g2.0 * e1.1, g2.0 * e1.0 - g1.0 * e2.0],
            [g1.1 * e2.1 - g2.1 * e1.1, g2.1 * e1.0 - g1.1 * e2.0],
        ];
        if num.iter().flatten().any(|x| x % det != 0) {
            continue;
        }
        let a = num.map(|row| row.map(|x| x / det));
        if (a[0][0] * a[1][1] - a[0][1] * a[1][0]).abs() != 1 {
            continue;
        }
        let t = (g0.x - a[0][0] * from[0].x - a[0][1] * from[0].y, g0.y - a[1][0] * from[0].x - a[1][1] * from[0].y);
        return Some((a, t));
    }
    None
}

/// The diamond of the family curve of `IT_K(M,N)` or `RT_K(M,N)`, with the
/// transposed integral triangle `IT_K(F_n, F_{n+1})` reached by a unimodular map.
pub fn family_diamond(k: i64, m: i64, nn: i64, kind: TriangleKind) -> Result<Diamond, MdsError> {
    if !solves_mn(k, m, nn) {
        return Err(FamilyError::NotASolution { k, m, n: nn }.into());
    }
    let (n, transposed) = family_index(k, m, nn).ok_or(FamilyError::NotASolution { k, m, n: nn })?;
    if !transposed {
        return Diamond::family(k, n, kind);
    }
    if kind == TriangleKind::Rational {
        return Err(MdsError::Check(format!("RT_{k}({m},{nn}) with M < N is not a family triangle")));
    }
    let base = Diamond::family(k, n, kind)?;
    let (bm, bn) = (nn, m);
    let from = [LatticePoint::new(0, 0), LatticePoint::new(bm, 0), LatticePoint::new(bm + bn, k * bn)];
    let to = [LatticePoint::new(0, 0), LatticePoint::new(m, 0), LatticePoint::new(m + nn, k * nn)];
    let (a, t) = triangle_map(from, to).ok_or_else(|| MdsError::Check("no unimodular map".into()))?;
    let poly = base.poly.clone().expect("family diamonds carry xi").transform_exponents(a).shift(t.0, t.1);
    Diamond::new(format!("IT_{k}({m},{nn})"), poly, (m + nn) as usize)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "screen")]
pub enum NonMdsScreen {
    NonMds(NonMdsEvidence),
    Inconclusive { reason: String },
}

impl NonMdsScreen {
    pub fn fired(&self) -> bool {
        matches!(self, NonMdsScreen::NonMds(_))
    }
}

/// Hypotheses under which the blowup at `target` in the diamond of the
/// family curve of `IT_K(M,N)`/`RT_K(M,N)` is not a MDS: when `N > K-2`,
/// every point of an integral diamond off the horizontal axis and the upper
/// vertical half-axis; when `N = K-2` (integral) or `M+N > 1` (rational),
/// the points above `t = K` off the vertical axis. Below `t = K` the
/// argument uses an edge of the Newton polygon carrying two coefficients
/// of different absolute value, recomputed from the edge sequences.
pub fn non_mds_screen(k: i64, m: i64, nn: i64, kind: TriangleKind, target: &SlopePair) -> NonMdsScreen {
    let inconclusive = |reason: String| NonMdsScreen::Inconclusive { reason };
    let diamond = match family_diamond(k, m, nn, kind) {
        Ok(d) => d,
        Err(e) => return inconclusive(e.to_string()),
    };
    if diamond.m <= 1 {
        return inconclusive("order 1".into());
    }
    if !diamond_contains(&diamond, target) {
        return inconclusive(format!("outside the diamond of {}", diamond.label));
    }
    let center = family_center(k, m, nn, kind);
    let kq = qi(k);
    let on_horizontal = target.t == kq;
    let on_vertical = target.s == center.s;
    let upper = target.t > kq;
    let quadrant = match (target.s.cmp(&center.s), target.t.cmp(&kq)) {
        (_, Ordering::Equal) => "horizontal axis",
        (Ordering::Equal, Ordering::Greater) => "upper vertical axis",
        (Ordering::Equal, Ordering::Less) => "lower vertical axis",
        (Ordering::Less, Ordering::Greater) => "upper left",
        (Ordering::Greater, Ordering::Greater) => "upper right",
        (Ordering::Less, Ordering::Less) => "lower left",
        (Ordering::Greater, Ordering::Less) => "lower right",
    }
    .to_string();
    let edge_check = family_index(k, m, nn).and_then(|(n, transposed)| {
        let rows = edge_coefficients(k, n).ok()?;
        let row = rows.rows.iter().find(|r| r.n == n)?.clone();
        let (near, far) = if transposed { (row.a_prime, row.b_prime) } else { (row.a, row.b) };
        let holds = far.abs() > near.abs();
        Some(EdgeCheck { n, near, far, holds })
    });
    let fire = |hypothesis: &str| {
        NonMdsScreen::NonMds(NonMdsEvidence {
            hypothesis: hypothesis.to_string(),
            center: center.clone(),
            quadrant: quadrant.clone(),
            edge_check: edge_check.clone(),
        })
    };
    if kind == TriangleKind::Integral && nn > k - 2 {
        if on_horizontal || (on_vertical && upper) {
            return inconclusive(format!("{quadrant}: excluded by the lemma"));
        }
        if upper {
            return fire("N > K-2, upper half: the left edge carries two terms");
        }
        return match &edge_check {
            Some(e) if e.holds => fire("N > K-2, lower half: |b_n| > |a_n| on the right edge"),
            _ => inconclusive("edge coefficients do not separate".into()),
        };
    }
    let upper_case = (kind == TriangleKind::Integral && nn == k - 2) || (kind == TriangleKind::Rational && m + nn > 1);
    if upper_case && upper && !on_vertical {
        return fire(if kind == TriangleKind::Integral {
            "N = K-2, upper half off the vertical axis"
        } else {
            "rational triangle with M+N > 1, upper half off the vertical axis"
        });
    }
    inconclusive(format!("{quadrant}: no hypothesis applies"))
}

// ---------------------------------------------------------------------------
// the two class computations of the new family

/// `C . D` for even `K` from classes: `[C] = H - mE`, `[D] = (b_D/b_C) H - (K-2) E`
/// with `H^2 = b_C h_C`.
pub fn new_family_even_orthogonality(k: i64) -> Result<Rational, MdsError> {
    let (tri, m) = crate::families::new_family_triangle(k)?;
    let (b_d, _, direct) = crate::families::new_family_even_cd(k)?;
    let h2 = tri.base() * tri.height();
    let c = CurveClass::new(qi(1), -qi(m as i64), h2.clone());
    let d = CurveClass::new(&b_d / tri.base(), -qi(k - 2), h2);
    let cd = intersect(&c, &d)?;
    if cd != direct {
        return Err(MdsError::Check(format!("C.D = {cd} from classes, {direct} from the formula")));
    }
    Ok(cd)
}

/// Odd `K`: intersection of the two curves `C1`, `C2` of the odd-case argument.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddKCheck {
    pub k: i64,
    /// `C1 . C2` from classes.
    #[serde(with = "crate::exactmath::rational::serde_q")]
    pub c1_c2: Rational,
    /// `d (2K - 11) / (ac)` from the closed form.
    #[serde(with = "crate::exactmath::rational::serde_q")]
    pub closed_form: Rational,
    /// The sign test as printed, `-22K + 25 < 0`.
    pub printed_test: bool,
    /// `C1 . C2 < 0`: the two curves cannot both be irreducible.
    pub argument_closes: bool,
}

/// `H^2 = ac/b`, `[C] = ((K-1)/2 + 1/c) H - mE`, `[C1] = (bd/(ac)) H - E`,
/// `[C2] = [C] - d [C1]`.
pub fn new_family_odd_check(k: i64) -> Result<OddKCheck, MdsError> {
    let (_, m) = crate::families::new_family_triangle(k)?;
    let closed_form = crate::families::new_family_odd_c1c2(k)?;
    let (a, b, c, d) = crate::families::new_family_constants(k);
    let h2 = q(a * c, b);
    let class_c = CurveClass::new(q(k - 1, 2) + q(1, c), -qi(m as i64), h2.clone());
    let c1 = CurveClass::new(q(b * d, a * c), qi(-1), h2.clone());
    let c2 = CurveClass::new(&class_c.h - qi(d) * &c1.h, &class_c.e - qi(d) * &c1.e, h2);
    let c1_c2 = intersect(&c1, &c2)?;
    if c1_c2 != closed_form {
        return Err(MdsError::Check(format!("C1.C2 = {c1_c2} against {closed_form}")));
    }
    Ok(OddKCheck { k, argument_closes: c1_c2.is_negative(), closed_form, printed_test: -22 * k + 25 < 0, c1_c2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: (i64, i64), t: (i64, i64)) -> SlopePair {
        SlopePair::from_ints(s, t)
    }

    #[test]
    fn pairing() {
        let e = CurveClass::exceptional(qi(7));
        assert_eq!(intersect(&e, &e).unwrap(), qi(-1));
        let tri = crate::families::special_triangle(4);
        let c = CurveClass::new(qi(1), qi(-9), qi(2) * tri.area());
        assert_eq!(c.self_intersection(), q(-3, 8));
        assert!(intersect(&c, &CurveClass::exceptional(qi(1))).is_err());
        assert_eq!(new_family_even_orthogonality(4).unwrap(), qi(0));
        assert_eq!(crate::families::new_family_even_cd(4).unwrap().0, q(8, 7));
    }

    #[test]
    fn class_of_triangle_matches_area() {
        let d = Diamond::family(3, 1, TriangleKind::Integral).unwrap();
        let p = sp((3, 2), (3, 1));
        let c = d.class_at(&p);
        assert_eq!(c.self_intersection(), d.self_intersection_at(&p));
        assert_eq!(c.self_intersection(), qi(-1));
    }

    #[test]
    fn quadratic_order() {
        let r2 = QuadraticIrrational::sqrt(&qi(2));
        let r3 = QuadraticIrrational::sqrt(&qi(3));
        assert!(r2 < r3);
        assert!(QuadraticIrrational::rational(q(141, 100)) < r2);
        assert!(QuadraticIrrational::rational(q(142, 100)) > r2);
        let x = QuadraticIrrational::new(qi(1), qi(1), BigInt::from(2));
        let y = QuadraticIrrational::new(qi(0), qi(1), BigInt::from(3));
        assert!(x > y); // 2.414 > 1.732
        assert_eq!(QuadraticIrrational::sqrt(&q(9, 4)), QuadraticIrrational::rational(q(3, 2)));
        assert_eq!(QuadraticIrrational::sqrt(&qi(12)).to_string(), "2*sqrt(3)");
    }

    #[test]
    fn contains_examples() {
        let c = Diamond::one_minus_y();
        assert!(diamond_contains(&c, &sp((2, 1), (5, 1))));
        assert!(!diamond_contains(&c, &sp((3, 2), (3, 1))));
        let d = Diamond::family(3, 1, TriangleKind::Integral).unwrap();
        assert!(diamond_contains(&d, &sp((3, 2), (3, 1))));
    }

    #[test]
    fn sections() {
        let c = Diamond::one_minus_y();
        let s = diamond_section(&c, Line::Vertical(&qi(2)));
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].lo, QuadraticIrrational::rational(qi(4)));
        assert!(s[0].hi.is_none());
        let d = Diamond::family(3, 1, TriangleKind::Integral).unwrap();
        let h = diamond_section(&d, Line::Horizontal(&qi(3)));
        assert_eq!(h.len(), 1);
        assert!(h[0].contains(&q(3, 2)));
        let mid = (h[0].lo.to_f64() + h[0].hi.as_ref().unwrap().to_f64()) / 2.0;
        assert!((mid - 1.5).abs() < 1e-12, "{}", h[0]);
        assert!(diamond_section(&d, Line::Horizontal(&qi(40))).is_empty());
    }

    #[test]
    fn section_matches_membership() {
        let d = Diamond::family(4, 2, TriangleKind::Integral).unwrap();
        for t0 in [q(7, 2), qi(4), q(9, 2)] {
            let sec = diamond_section(&d, Line::Horizontal(&t0));
            for i in 1..200 {
                let s = q(i, 50);
                if s >= t0 {
                    break;
                }
                let p = SlopePair::new(s.clone(), t0.clone());
                assert_eq!(diamond_contains(&d, &p), sec.iter().any(|iv| iv.contains(&s)), "{p}");
            }
        }
    }

    #[test]
    fn pivots() {
        let d = Diamond::family(3, 1, TriangleKind::Integral).unwrap();
        let home = sp((3, 2), (3, 1));
        let inner = d.minimal_triangle(&home);
        assert_eq!(inner.integral_flags(), [true, true, true]);
        assert!(supports_containment(&inner, &sp((1, 1), (4, 1))));
        assert!(supports_containment(&inner, &sp((2, 1), (3, 1))));
        assert!(!supports_containment(&inner, &sp((2, 1), (4, 1))));
        let half = SlopeTriangle::from_vertices([
            QPoint::new(qi(0), qi(0)),
            QPoint::new(q(1, 2), qi(0)),
            QPoint::new(qi(1), qi(2)),
        ])
        .unwrap();
        assert_eq!(half.integral_flags(), [true, false, true]);
        assert!(!supports_containment(&half, &sp((2, 1), (3, 1))));
        assert!(supports_containment(&half, &sp((5, 2), (4, 1))));
    }

    #[test]
    fn certify_it_center() {
        let d = Diamond::family(4, 1, TriangleKind::Integral).unwrap();
        let center = family_center(4, 2, 1, TriangleKind::Integral);
        let cert = certify_mds(&center, &d, &Diamond::one_minus_y());
        assert!(cert.is_mds(), "{cert:?}");
        assert!(cert.replay(&d, Some(&Diamond::one_minus_y())));
        let far = certify_mds(&center, &d, &Diamond::family(4, 3, TriangleKind::Integral).unwrap());
        assert!(!far.is_mds());
    }

    #[test]
    fn d_curves() {
        let c = Diamond::one_minus_y();
        let d = d_curve_integer_t(&c.minimal_triangle(&sp((2, 1), (4, 1)))).unwrap();
        assert_eq!(d.order, 1);
        assert!(d.intersection.is_zero());
        // t >= s^2/(s-1) >= 4 on the diamond of 1-y
        assert!(d_curve_integer_t(&c.minimal_triangle(&sp((8, 5), (4, 1)))).is_err());
        let e = d_curve_integer_t(&c.minimal_triangle(&sp((8, 5), (5, 1)))).unwrap();
        assert_eq!(e.order, 5);
        assert!(e.intersection.is_zero());
        assert_ne!(d.poly, e.poly);
        assert!(d_curve_integer_t(&c.minimal_triangle(&sp((2, 1), (9, 2)))).is_err());
    }

    #[test]
    fn screens() {
        let center = family_center(4, 4, 3, TriangleKind::Integral);
        let off = SlopePair::new(&center.s + q(1, 1000), qi(4) + q(1, 1000));
        assert!(non_mds_screen(4, 4, 3, TriangleKind::Integral, &off).fired());
        let low = SlopePair::new(&center.s + q(1, 1000), qi(4) - q(1, 1000));
        assert!(non_mds_screen(4, 4, 3, TriangleKind::Integral, &low).fired());
        let rc = family_center(4, 3, 2, TriangleKind::Rational);
        let up = SlopePair::new(&rc.s + q(1, 1000), qi(4) + q(1, 1000));
        assert!(non_mds_screen(4, 3, 2, TriangleKind::Rational, &up).fired());
        let down = SlopePair::new(&rc.s + q(1, 1000), qi(4) - q(1, 1000));
        assert!(!non_mds_screen(4, 3, 2, TriangleKind::Rational, &down).fired());
    }

    #[test]
    fn odd_k() {
        let c5 = new_family_odd_check(5).unwrap();
        assert!(c5.argument_closes && c5.printed_test);
        let c7 = new_family_odd_check(7).unwrap();
        assert!(!c7.argument_closes && c7.printed_test);
    }
}
