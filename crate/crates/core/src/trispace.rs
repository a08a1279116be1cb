//! The `(s,t)` plane of triangles with a horizontal base: reduction to the
//! fundamental domain, rebasing on another edge, minimal triangles around a
//! polygon and the dictionary with weighted projective planes.
//!
//! In the coordinates `u = 1/s`, `v = 1/t` the isomorphisms fixing the
//! horizontal direction act by shears `(u,v) -> (u+k, v+k)`, the negation
//! `(u,v) -> (-u,-v)` and the swap of the two coordinates. The fundamental
//! domain is the closed triangle `0 <= v <= u`, `u + v <= 1`.

use crate::exactmath::{floor_int, q, qbig, qi, Frac, Rational};
use crate::lattice::{QPoint, QPolygon};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SlopePair {
    #[serde(with = "crate::exactmath::rational::serde_q")]
    pub s: Rational,
    #[serde(with = "crate::exactmath::rational::serde_q")]
    pub t: Rational,
}

impl SlopePair {
    pub fn new(s: Rational, t: Rational) -> Self {
        SlopePair { s, t }
    }

    pub fn from_ints(s: (i64, i64), t: (i64, i64)) -> Self {
        SlopePair::new(q(s.0, s.1), q(t.0, t.1))
    }

    /// `0 < s < t`.
    pub fn is_normalized(&self) -> bool {
        self.s.is_positive() && self.s < self.t
    }

    pub fn u(&self) -> Rational {
        self.s.recip()
    }

    pub fn v(&self) -> Rational {
        self.t.recip()
    }

    /// Point of the `(u,v)` chart back in slopes (`None` for a zero
    /// coordinate, i.e. a vertical edge).
    pub fn from_uv(u: &Rational, v: &Rational) -> Option<Self> {
        if u.is_zero() || v.is_zero() {
            return None;
        }
        Some(SlopePair::new(u.recip(), v.recip()))
    }
}

impl fmt::Display for SlopePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", Frac(&self.s), Frac(&self.t))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TrispaceError {
    #[error("equal slopes {0} do not bound a triangle")]
    EqualSlopes(String),
    #[error("zero slope is parallel to the base")]
    ZeroSlope,
    #[error("weights {0:?} are not pairwise coprime; the triangle is not a weighted projective plane")]
    NotCoprime((u64, u64, u64)),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupOp {
    Shear(i64),
    Negate,
    Swap,
}

impl GroupOp {
    pub fn apply(self, (u, v): (Rational, Rational)) -> (Rational, Rational) {
        match self {
            GroupOp::Shear(k) => (u + qi(k), v + qi(k)),
            GroupOp::Negate => (-u, -v),
            GroupOp::Swap => (v, u),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DegenerateKind {
    /// Slopes of opposite signs: `1-x` and `1-y` cut out disjoint curves.
    MixedSigns,
    /// One edge vertical.
    InfiniteSlope,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Reduced {
    InDomain { slopes: SlopePair, ops: Vec<GroupOp> },
    Degenerate {
        #[serde(with = "crate::exactmath::rational::serde_q")]
        u: Rational,
        #[serde(with = "crate::exactmath::rational::serde_q")]
        v: Rational,
        kind: DegenerateKind,
        ops: Vec<GroupOp>,
    },
}

impl Reduced {
    pub fn slopes(&self) -> Option<&SlopePair> {
        match self {
            Reduced::InDomain { slopes, .. } => Some(slopes),
            Reduced::Degenerate { .. } => None,
        }
    }

    pub fn ops(&self) -> &[GroupOp] {
        match self {
            Reduced::InDomain { ops, .. } | Reduced::Degenerate { ops, .. } => ops,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, Reduced::Degenerate { .. })
    }
}

/// Reduces a `(u,v)` pair. `u + v` is moved into `[0, 1]` by shears and a
/// negation, then the coordinates are ordered so that `u >= v`. The pair
/// difference `|u - v|` is an orbit invariant and the image of `u + v` in
/// `[0,1]` is unique, so the result does not depend on the input's position
/// in the orbit. Points on `u + v = 1` are fixed by the negate-and-shear
/// step, so no further boundary tie-break is needed.
pub fn reduce_uv(u: Rational, v: Rational) -> Reduced {
    let mut ops = Vec::new();
    let mut p = (u, v);
    let sigma = &p.0 + &p.1;
    let k = -floor_int(&(sigma / qi(2))).to_i64().expect("slope out of range");
    if k != 0 {
        ops.push(GroupOp::Shear(k));
        p = GroupOp::Shear(k).apply(p);
    }
    if &p.0 + &p.1 > qi(1) {
        ops.push(GroupOp::Negate);
        ops.push(GroupOp::Shear(1));
        p = GroupOp::Shear(1).apply(GroupOp::Negate.apply(p));
    }
    if p.0 < p.1 {
        ops.push(GroupOp::Swap);
        p = GroupOp::Swap.apply(p);
    }
    let (u, v) = p;
    if v.is_positive() {
        let slopes = SlopePair::from_uv(&u, &v).unwrap();
        Reduced::InDomain { slopes, ops }
    } else {
        let kind = if v.is_zero() { DegenerateKind::InfiniteSlope } else { DegenerateKind::MixedSigns };
        Reduced::Degenerate { u, v, kind, ops }
    }
}

pub fn to_fundamental_domain(p: &SlopePair) -> Result<Reduced, TrispaceError> {
    if p.s.is_zero() || p.t.is_zero() {
        return Err(TrispaceError::ZeroSlope);
    }
    if p.s == p.t {
        return Err(TrispaceError::EqualSlopes(p.to_string()));
    }
    Ok(reduce_uv(p.u(), p.v()))
}

/// `true` when `(s,t)` already lies in the closed fundamental domain.
pub fn in_fundamental_domain(p: &SlopePair) -> bool {
    let (u, v) = (p.u(), p.v());
    v.is_positive() && v <= u && &u + &v <= qi(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Edge {
    Base,
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rebasing {
    pub edge: Edge,
    /// Slopes right after the chosen edge is made horizontal (positive pair
    /// when both are of one sign, ascending); `None` if an edge became
    /// vertical.
    pub raw: Option<SlopePair>,
    pub reduced: Reduced,
}

/// Unimodular matrix sending the primitive direction of slope `r` to `(1,0)`:
/// rows `(alpha, beta)` and `(-a, p)` where `r = a/p` and `alpha` is the
/// inverse of `p` modulo `|a|` taken in `[0, |a|)`.
fn horizontalizer(r: &Rational) -> [[BigInt; 2]; 2] {
    let (a, p) = (r.numer().clone(), r.denom().clone());
    let m = a.abs();
    let alpha = if m.is_one() {
        BigInt::zero()
    } else {
        let e = p.extended_gcd(&m);
        e.x.mod_floor(&m)
    };
    // alpha p + beta a = 1
    let beta = (BigInt::one() - &alpha * &p) / &a;
    [[alpha, beta], [-a, p]]
}

fn image_slope(m: &[[BigInt; 2]; 2], slope: Option<&Rational>) -> Option<Rational> {
    // direction (1, slope); `None` stands for the horizontal base
    let (dx, dy) = match slope {
        Some(r) => (Rational::one(), r.clone()),
        None => (Rational::one(), Rational::zero()),
    };
    let x = qbig(m[0][0].clone()) * &dx + qbig(m[0][1].clone()) * &dy;
    let y = qbig(m[1][0].clone()) * &dx + qbig(m[1][1].clone()) * &dy;
    if x.is_zero() {
        None
    } else {
        Some(y / x)
    }
}

fn raw_pair(a: Rational, b: Rational) -> SlopePair {
    let (a, b) = if a.is_negative() && b.is_negative() { (-a, -b) } else { (a, b) };
    if a <= b {
        SlopePair::new(a, b)
    } else {
        SlopePair::new(b, a)
    }
}

/// The three `(s,t)` points of one triangle, one per edge made horizontal.
pub fn edge_rebasings(p: &SlopePair) -> Result<Vec<Rebasing>, TrispaceError> {
    let base = to_fundamental_domain(p)?;
    let mut out = vec![Rebasing { edge: Edge::Base, raw: Some(raw_pair(p.s.clone(), p.t.clone())), reduced: base }];
    for (edge, this, other) in [(Edge::Left, &p.s, &p.t), (Edge::Right, &p.t, &p.s)] {
        let m = horizontalizer(this);
        let a = image_slope(&m, None);
        let b = image_slope(&m, Some(other));
        let (raw, reduced) = match (a, b) {
            (Some(a), Some(b)) => {
                let red = to_fundamental_domain(&SlopePair::new(a.clone(), b.clone()))?;
                (Some(raw_pair(a, b)), red)
            }
            (a, b) => {
                // a vertical edge: u = 0 for that edge
                let u = a.map(|x| x.recip()).unwrap_or_else(Rational::zero);
                let v = b.map(|x| x.recip()).unwrap_or_else(Rational::zero);
                (None, reduce_uv(u, v))
            }
        };
        out.push(Rebasing { edge, raw, reduced });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WppWeights {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl WppWeights {
    pub fn new(a: u64, b: u64, c: u64) -> Self {
        WppWeights { a, b, c }
    }

    pub fn sorted(&self) -> WppWeights {
        let mut w = [self.a, self.b, self.c];
        w.sort();
        WppWeights::new(w[0], w[1], w[2])
    }

    pub fn product(&self) -> u64 {
        self.a * self.b * self.c
    }

    pub fn pairwise_coprime(&self) -> bool {
        let g = |x: u64, y: u64| x.gcd(&y) == 1;
        g(self.a, self.b) && g(self.a, self.c) && g(self.b, self.c)
    }
}

impl fmt::Display for WppWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({},{},{})", self.a, self.b, self.c)
    }
}

/// With `s = a/p`, `t = b/q` in lowest terms the toric surface is
/// `P(a, b, bp - aq)` exactly when `gcd(a, b) = 1`.
pub fn wpp_of_slopes(sp: &SlopePair) -> Option<WppWeights> {
    if !sp.is_normalized() {
        return None;
    }
    let (a, p) = (sp.s.numer(), sp.s.denom());
    let (b, q) = (sp.t.numer(), sp.t.denom());
    if !a.gcd(b).is_one() {
        return None;
    }
    let c = b * p - a * q;
    Some(WppWeights::new(a.to_u64()?, b.to_u64()?, c.to_u64()?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WppChart {
    /// Weight of the edge made horizontal.
    pub horizontal: u64,
    pub reduced: Reduced,
}

/// All fundamental-domain points of `P(a,b,c)`: for each weight `c` taken as
/// the horizontal edge, the other edges have slopes `a/p`, `b/q` with
/// `bp - aq = c`; different solutions differ by shears.
pub fn slopes_of_wpp(w: &WppWeights) -> Result<Vec<WppChart>, TrispaceError> {
    if !w.pairwise_coprime() || w.a == 0 || w.b == 0 || w.c == 0 {
        return Err(TrispaceError::NotCoprime((w.a, w.b, w.c)));
    }
    let mut out: Vec<WppChart> = Vec::new();
    for (a, b, c) in [(w.a, w.b, w.c), (w.b, w.c, w.a), (w.c, w.a, w.b)] {
        let (ai, bi, ci) = (BigInt::from(a), BigInt::from(b), BigInt::from(c));
        // b p - a q = c  with  p = c * b^{-1} mod a
        let e = bi.extended_gcd(&ai);
        let p = (&e.x * &ci).mod_floor(&ai);
        let qn = (&bi * &p - &ci) / &ai;
        let (u, v) = (Rational::new(p, ai), Rational::new(qn, bi));
        let reduced = reduce_uv(u, v);
        if !out.iter().any(|o| o.reduced.slopes().is_some() && o.reduced.slopes() == reduced.slopes()) {
            out.push(WppChart { horizontal: c, reduced });
        }
    }
    Ok(out)
}

/// Triangle with horizontal base, left edge of slope `s` and right edge of
/// slope `t`. Vertices are stored as base-left, base-right, apex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SlopeTriangle {
    pub slopes: SlopePair,
    pub vertices: [QPoint; 3],
}

impl SlopeTriangle {
    /// From the three support values: base `y = y0`, left edge
    /// `y - s x = l`, right edge `t x - y = r`.
    pub fn from_support(slopes: SlopePair, y0: Rational, l: Rational, r: Rational) -> Self {
        let (s, t) = (&slopes.s, &slopes.t);
        let bl = QPoint::new((&y0 - &l) / s, y0.clone());
        let br = QPoint::new((&r + &y0) / t, y0);
        let ax = (&l + &r) / (t - s);
        let ay = s * &ax + &l;
        let apex = QPoint::new(ax, ay);
        SlopeTriangle { vertices: [bl, br, apex], slopes }
    }

    /// From three vertices, two of which span the horizontal base.
    pub fn from_vertices(pts: [QPoint; 3]) -> Option<Self> {
        let mut v = pts.to_vec();
        v.sort_by(|a, b| (&a.y, &a.x).cmp(&(&b.y, &b.x)));
        if v[0].y != v[1].y || v[2].y <= v[0].y {
            return None;
        }
        let s = (&v[2].y - &v[0].y) / (&v[2].x - &v[0].x).clone();
        let dx = &v[2].x - &v[1].x;
        if dx.is_zero() || (&v[2].x - &v[0].x).is_zero() {
            return None;
        }
        let t = (&v[2].y - &v[1].y) / dx;
        let slopes = SlopePair::new(s, t);
        Some(SlopeTriangle { slopes, vertices: [v[0].clone(), v[1].clone(), v[2].clone()] })
    }

    pub fn base_left(&self) -> &QPoint {
        &self.vertices[0]
    }

    pub fn base_right(&self) -> &QPoint {
        &self.vertices[1]
    }

    pub fn apex(&self) -> &QPoint {
        &self.vertices[2]
    }

    pub fn base(&self) -> Rational {
        &self.vertices[1].x - &self.vertices[0].x
    }

    pub fn height(&self) -> Rational {
        &self.vertices[2].y - &self.vertices[0].y
    }

    pub fn area(&self) -> Rational {
        self.base() * self.height() / qi(2)
    }

    pub fn integral_flags(&self) -> [bool; 3] {
        [self.vertices[0].is_integral(), self.vertices[1].is_integral(), self.vertices[2].is_integral()]
    }

    pub fn is_degenerate(&self) -> bool {
        self.area().is_zero()
    }

    pub fn polygon(&self) -> QPolygon {
        QPolygon::hull(&self.vertices)
    }

    /// Dilation by `k` about the origin.
    pub fn scaled(&self, k: &Rational) -> SlopeTriangle {
        SlopeTriangle {
            slopes: self.slopes.clone(),
            vertices: [self.vertices[0].scale(k), self.vertices[1].scale(k), self.vertices[2].scale(k)],
        }
    }

    pub fn translated(&self, d: &QPoint) -> SlopeTriangle {
        SlopeTriangle {
            slopes: self.slopes.clone(),
            vertices: [self.vertices[0].add(d), self.vertices[1].add(d), self.vertices[2].add(d)],
        }
    }

    /// Support values `(y0, l, r)` as in [`SlopeTriangle::from_support`].
    pub fn support_values(&self) -> (Rational, Rational, Rational) {
        let a = self.apex();
        let y0 = self.vertices[0].y.clone();
        let l = &a.y - &self.slopes.s * &a.x;
        let r = &self.slopes.t * &a.x - &a.y;
        (y0, l, r)
    }

    /// `true` if `other` lies inside this triangle.
    pub fn contains_triangle(&self, other: &SlopeTriangle) -> bool {
        let p = self.polygon();
        other.vertices.iter().all(|v| p.contains(v))
    }
}

impl fmt::Display for SlopeTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.vertices[0], self.vertices[1], self.vertices[2])
    }
}

/// Smallest triangle with slopes `(s,t)` (base normal `(0,-1)`, left normal
/// `(-s,1)`, right normal `(t,-1)`) containing `poly`.
pub fn minimal_triangle(poly: &QPolygon, sp: &SlopePair) -> SlopeTriangle {
    let (y0, _) = poly.support_range(&qi(0), &qi(1)).expect("empty polygon");
    let (_, l) = poly.support_range(&-sp.s.clone(), &qi(1)).unwrap();
    let (_, r) = poly.support_range(&sp.t, &qi(-1)).unwrap();
    SlopeTriangle::from_support(sp.clone(), y0, l, r)
}

/// Area of the minimal triangle of the segment from `(0,0)` to `(0,1)`.
pub fn unit_segment_area(sp: &SlopePair) -> Rational {
    &sp.t / (qi(2) * &sp.s * (&sp.t - &sp.s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: (i64, i64), t: (i64, i64)) -> SlopePair {
        SlopePair::from_ints(s, t)
    }

    #[test]
    fn domain_examples() {
        let p = sp((3, 1), (4, 1));
        assert!(in_fundamental_domain(&p));
        assert_eq!(to_fundamental_domain(&p).unwrap().slopes(), Some(&p));
        let e = sp((3, 2), (3, 1));
        assert!(in_fundamental_domain(&e));
        assert_eq!(to_fundamental_domain(&e).unwrap().slopes(), Some(&e));
        let w = sp((9, 4), (7, 2));
        assert_eq!(to_fundamental_domain(&w).unwrap().slopes(), Some(&w));
        assert!(to_fundamental_domain(&sp((2, 1), (2, 1))).is_err());
        // slopes of opposite sign stay degenerate
        assert!(to_fundamental_domain(&sp((-1, 1), (3, 1))).unwrap().is_degenerate());
    }

    #[test]
    fn reduction_replays() {
        let p = sp((-7, 3), (5, 11));
        let r = to_fundamental_domain(&p).unwrap();
        let mut uv = (p.u(), p.v());
        for op in r.ops() {
            uv = op.apply(uv);
        }
        match r {
            Reduced::InDomain { slopes, .. } => assert_eq!((slopes.u(), slopes.v()), uv),
            Reduced::Degenerate { u, v, .. } => assert_eq!((u, v), uv),
        }
    }

    #[test]
    fn rebasing_on_integer_right_slope() {
        let r = edge_rebasings(&sp((3, 1), (4, 1))).unwrap();
        assert_eq!(r[2].edge, Edge::Right);
        assert_eq!(r[2].raw, Some(sp((1, 1), (4, 1))));
    }

    #[test]
    fn rebasing_left_slope_five_halves() {
        for t in [(7, 2), (4, 1), (13, 3), (6, 1), (31, 7)] {
            let tq = q(t.0, t.1);
            let r = edge_rebasings(&SlopePair::new(q(5, 2), tq.clone())).unwrap();
            let expect = SlopePair::new(q(5, 3), qi(2) + (tq - qi(3)).recip());
            assert_eq!(r[1].raw, Some(expect));
        }
    }

    #[test]
    fn rebasings_of_p7_9_10() {
        // 1/(u-v) = 2 area / (base lattice length)^2, and the three edges of
        // this triangle have lattice lengths 10, 9, 7: three distinct points
        let r = edge_rebasings(&sp((9, 4), (7, 2))).unwrap();
        let pts: Vec<_> = r.iter().map(|x| x.reduced.slopes().cloned().unwrap()).collect();
        assert_eq!(pts, vec![sp((9, 4), (7, 2)), sp((10, 3), (9, 2)), sp((7, 3), (10, 3))]);
    }

    #[test]
    fn wpp_dictionary() {
        assert_eq!(wpp_of_slopes(&sp((8, 5), (15, 4))), Some(WppWeights::new(8, 15, 43)));
        assert_eq!(wpp_of_slopes(&sp((5, 3), (33, 10))), Some(WppWeights::new(5, 33, 49)));
        assert_eq!(wpp_of_slopes(&sp((4, 3), (4, 1))), None);
        let has = |w: WppWeights, p: SlopePair| {
            slopes_of_wpp(&w).unwrap().iter().any(|c| c.reduced.slopes() == Some(&p))
        };
        assert!(has(WppWeights::new(3, 5, 7), sp((3, 2), (5, 1))));
        assert!(has(WppWeights::new(8, 15, 43), sp((8, 5), (15, 4))));
        assert!(has(WppWeights::new(7, 9, 10), sp((9, 4), (7, 2))));
        assert!(slopes_of_wpp(&WppWeights::new(2, 4, 5)).is_err());
    }

    #[test]
    fn minimal_triangles() {
        let seg = QPolygon::from_i64(&[(0, 0), (0, 1)]);
        let t = minimal_triangle(&seg, &sp((2, 1), (4, 1)));
        assert_eq!(t.vertices, [QPoint::new(q(-1, 2), qi(0)), QPoint::new(qi(0), qi(0)), QPoint::new(q(1, 2), qi(2))]);
        assert_eq!(t.area(), q(1, 2));
        assert_eq!(unit_segment_area(&sp((2, 1), (4, 1))), q(1, 2));
        let np = QPolygon::from_i64(&[(0, 0), (1, 0), (2, 3)]);
        let t = minimal_triangle(&np, &sp((3, 2), (3, 1)));
        assert_eq!(t.polygon(), np);
        assert_eq!(t.integral_flags(), [true, true, true]);
        let pt = QPolygon::from_i64(&[(2, 5)]);
        assert!(minimal_triangle(&pt, &sp((3, 2), (3, 1))).is_degenerate());
    }

    #[test]
    fn triangle_from_vertices() {
        let t = SlopeTriangle::from_vertices([
            QPoint::new(q(-4, 13), qi(0)),
            QPoint::new(q(14, 13), qi(0)),
            QPoint::new(q(68, 13), qi(18)),
        ])
        .unwrap();
        assert_eq!(t.slopes, sp((13, 4), (13, 3)));
    }
}
