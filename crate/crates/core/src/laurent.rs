//! Laurent polynomials in `x, y` with exact rational coefficients.

use crate::exactmath::{qbig, qi, Frac, Rational};
use crate::lattice::{LatticePoint, QPolygon};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

pub type Exponent = (i64, i64);

/// Finitely supported map from exponents to nonzero rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponent, Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LaurentError {
    #[error("the zero polynomial has no {0}")]
    Zero(&'static str),
    #[error("zero-length edge")]
    ZeroLengthEdge,
    #[error("cannot parse polynomial term `{0}`")]
    Parse(String),
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(qi(1), 0, 0)
    }

    pub fn constant(c: Rational) -> Self {
        LaurentPoly::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, i: i64, j: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        LaurentPoly { terms }
    }

    pub fn x() -> Self {
        LaurentPoly::monomial(qi(1), 1, 0)
    }

    pub fn y() -> Self {
        LaurentPoly::monomial(qi(1), 0, 1)
    }

    /// Builds from `(i, j, c)` triples; repeated exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64, Rational)>>(it: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (i, j, c) in it {
            p.add_term((i, j), c);
        }
        p
    }

    pub fn from_i64_terms(t: &[(i64, i64, i64)]) -> Self {
        LaurentPoly::from_terms(t.iter().map(|&(i, j, c)| (i, j, qi(c))))
    }

    /// Polynomial with coefficient `c[k]` at `points[k]`.
    pub fn from_points(points: &[LatticePoint], coeffs: &[Rational]) -> Self {
        LaurentPoly::from_terms(points.iter().zip(coeffs).map(|(p, c)| (p.x, p.y, c.clone())))
    }

    pub fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: i64, j: i64) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<LatticePoint> {
        self.terms.keys().map(|&(i, j)| LatticePoint::new(i, j)).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }

    /// Smallest `x` and `y` exponents.
    pub fn min_exponents(&self) -> Option<Exponent> {
        let mx = self.terms.keys().map(|e| e.0).min()?;
        let my = self.terms.keys().map(|e| e.1).min()?;
        Some((mx, my))
    }

    pub fn max_exponents(&self) -> Option<Exponent> {
        let mx = self.terms.keys().map(|e| e.0).max()?;
        let my = self.terms.keys().map(|e| e.1).max()?;
        Some((mx, my))
    }

    pub fn shift(&self, di: i64, dj: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&(i, j), c)| ((i + di, j + dj), c.clone())).collect() }
    }

    /// Divides out the monomial gcd so that the smallest `x` and `y`
    /// exponents are 0.
    pub fn normalized(&self) -> Self {
        match self.min_exponents() {
            Some((mx, my)) => self.shift(-mx, -my),
            None => self.clone(),
        }
    }

    /// Equality up to multiplication by a monomial `x^a y^b`.
    pub fn eq_up_to_monomial(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    /// Equality up to a monomial and a nonzero scalar.
    pub fn proportional(&self, other: &Self) -> bool {
        let (a, b) = (self.normalized(), other.normalized());
        if a.len() != b.len() {
            return false;
        }
        let Some(((ea, ca), (eb, cb))) = a.terms.iter().next().zip(b.terms.iter().next()) else {
            return a.is_zero() && b.is_zero();
        };
        if ea != eb {
            return false;
        }
        let r = cb / ca;
        a.terms.iter().zip(&b.terms).all(|((e1, c1), (e2, c2))| e1 == e2 && &(c1 * &r) == c2)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e, c * k)).collect() }
    }

    /// Applies `(i, j) -> (a i + b j, c i + d j)` to every exponent.
    pub fn transform_exponents(&self, m: [[i64; 2]; 2]) -> Self {
        LaurentPoly::from_terms(
            self.terms.iter().map(|(&(i, j), c)| (m[0][0] * i + m[0][1] * j, m[1][0] * i + m[1][1] * j, c.clone())),
        )
    }

    /// Smallest positive integer making every coefficient integral.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()))
    }

    fn integer_terms(&self) -> Option<Vec<(Exponent, BigInt)>> {
        self.terms
            .iter()
            .map(|(&e, c)| c.denom().is_one().then(|| (e, c.numer().clone())))
            .collect()
    }

    fn from_int_map<I: IntoIterator<Item = (Exponent, BigInt)>>(it: I) -> Self {
        LaurentPoly {
            terms: it.into_iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (e, qbig(c))).collect(),
        }
    }

    pub fn multiply(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        if let (Some(a), Some(b)) = (self.integer_terms(), other.integer_terms()) {
            let mut acc: HashMap<Exponent, BigInt> = HashMap::with_capacity(a.len() * 4 + b.len() * 4);
            for (ea, ca) in &a {
                for (eb, cb) in &b {
                    let e = (ea.0 + eb.0, ea.1 + eb.1);
                    match acc.get_mut(&e) {
                        Some(v) => *v += ca * cb,
                        None => {
                            acc.insert(e, ca * cb);
                        }
                    }
                }
            }
            return LaurentPoly::from_int_map(acc);
        }
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term((ea.0 + eb.0, ea.1 + eb.1), ca * cb);
            }
        }
        out
    }

    pub fn power(&self, n: u32) -> Self {
        let mut r = LaurentPoly::one();
        for _ in 0..n {
            r = r.multiply(self);
        }
        r
    }

    /// Exact quotient `self / g`, or `None` if `g` does not divide `self`.
    /// Division runs along the lexicographic term order (`x` first), with
    /// quotient exponents confined to the box forced by the Newton polygons.
    pub fn div_exact(&self, g: &Self) -> Option<Self> {
        let (gmin, gmax) = (g.min_exponents()?, g.max_exponents()?);
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let (fmin, fmax) = (self.min_exponents()?, self.max_exponents()?);
        let lo = (fmin.0 - gmin.0, fmin.1 - gmin.1);
        let hi = (fmax.0 - gmax.0, fmax.1 - gmax.1);
        if lo.0 > hi.0 || lo.1 > hi.1 {
            return None;
        }
        let in_box = |e: Exponent| lo.0 <= e.0 && e.0 <= hi.0 && lo.1 <= e.1 && e.1 <= hi.1;
        let (&glead, glc) = g.terms.iter().next_back()?;
        if let (Some(f), Some(gt), true) = (self.integer_terms(), g.integer_terms(), glc.abs().is_one()) {
            let sign = glc.numer().clone();
            let mut r: BTreeMap<Exponent, BigInt> = f.into_iter().collect();
            let mut quo: Vec<(Exponent, BigInt)> = Vec::new();
            while let Some((&e, c)) = r.iter().next_back() {
                let qe = (e.0 - glead.0, e.1 - glead.1);
                if !in_box(qe) {
                    return None;
                }
                let qc = c * &sign;
                for (ge, gc) in &gt {
                    let key = (qe.0 + ge.0, qe.1 + ge.1);
                    let v = r.entry(key).or_insert_with(BigInt::zero);
                    *v -= &qc * gc;
                    if v.is_zero() {
                        r.remove(&key);
                    }
                }
                quo.push((qe, qc));
            }
            return Some(LaurentPoly::from_int_map(quo));
        }
        let mut r = self.clone();
        let mut quo = LaurentPoly::zero();
        while let Some((&e, c)) = r.terms.iter().next_back() {
            let qe = (e.0 - glead.0, e.1 - glead.1);
            if !in_box(qe) {
                return None;
            }
            let qc = c / glc;
            for (ge, gc) in &g.terms {
                r.add_term((qe.0 + ge.0, qe.1 + ge.1), -(&qc * gc));
            }
            quo.add_term(qe, qc);
        }
        Some(quo)
    }

    pub fn newton_polygon(&self) -> Result<QPolygon, LaurentError> {
        if self.is_zero() {
            return Err(LaurentError::Zero("Newton polygon"));
        }
        Ok(QPolygon::from_lattice(&self.support()))
    }

    /// Terms on which `w . e` attains its maximum.
    pub fn face(&self, w: (i64, i64)) -> Self {
        let Some(best) = self.terms.keys().map(|e| w.0 * e.0 + w.1 * e.1).max() else {
            return LaurentPoly::zero();
        };
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| w.0 * e.0 + w.1 * e.1 == best)
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
        }
    }

    /// Coefficients at the lattice points `a + j (b - a)/g`, `j = 0..=g`,
    /// where `g` is the lattice length of the segment.
    pub fn edge_restriction(&self, a: LatticePoint, b: LatticePoint) -> Result<Vec<Rational>, LaurentError> {
        if a == b {
            return Err(LaurentError::ZeroLengthEdge);
        }
        let (dx, dy) = (b.x - a.x, b.y - a.y);
        let g = dx.abs().gcd(&dy.abs());
        let (sx, sy) = (dx / g, dy / g);
        Ok((0..=g).map(|j| self.coeff(a.x + j * sx, a.y + j * sy)).collect())
    }

    /// Integer-scaled coefficients of the support translated into the
    /// nonnegative quadrant.
    fn scaled_quadrant_terms(&self) -> Vec<(u64, u64, BigInt)> {
        let (mx, my) = self.min_exponents().unwrap_or((0, 0));
        let l = self.denominator_lcm();
        self.terms
            .iter()
            .map(|(&(i, j), c)| ((i - mx) as u64, (j - my) as u64, (c * qbig(l.clone())).to_integer()))
            .collect()
    }

    /// Taylor coefficients of `f(1+u, 1+v)` (after translating the support
    /// into the nonnegative quadrant and clearing denominators) of total
    /// degree `< m`, indexed `[a][b]` with `a + b < m`.
    pub fn taylor_coefficients(&self, m: usize) -> Vec<Vec<BigInt>> {
        TaylorExpansion::new(self).coefficients(m)
    }

    /// True iff every Taylor coefficient at `e = (1,1)` of degree `< m`
    /// vanishes.
    pub fn vanishes_to_order(&self, m: usize) -> bool {
        if self.is_zero() {
            return true;
        }
        TaylorExpansion::new(self).first_nonzero_degree(m).is_none()
    }

    pub fn vanishing_order(&self) -> Result<usize, LaurentError> {
        if self.is_zero() {
            return Err(LaurentError::Zero("vanishing order"));
        }
        let t = TaylorExpansion::new(self);
        Ok(t.first_nonzero_degree(usize::MAX).expect("nonzero polynomial has finite order"))
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

/// Two-stage binomial accumulation: `G[p][b] = sum_q f[p][q] C(q, b)` then
/// `c[a][b] = sum_p C(p, a) G[p][b]`.
struct TaylorExpansion {
    /// rows keyed by translated x-exponent, each a list of (y-exponent, coeff)
    rows: Vec<(u64, Vec<(u64, BigInt)>)>,
}

impl TaylorExpansion {
    fn new(f: &LaurentPoly) -> Self {
        let mut rows: BTreeMap<u64, Vec<(u64, BigInt)>> = BTreeMap::new();
        for (p, q, c) in f.scaled_quadrant_terms() {
            rows.entry(p).or_default().push((q, c));
        }
        TaylorExpansion { rows: rows.into_iter().collect() }
    }

    /// `G[row][b]` for `b < m`.
    fn stage_one(&self, m: usize) -> Vec<Vec<BigInt>> {
        self.rows
            .iter()
            .map(|(_, cols)| {
                let mut g = vec![BigInt::zero(); m];
                for (q, c) in cols {
                    // C(q, b) built incrementally
                    let mut binom = BigInt::one();
                    for (b, gb) in g.iter_mut().enumerate() {
                        if b as u64 > *q {
                            break;
                        }
                        if b > 0 {
                            binom = binom * BigInt::from(*q - b as u64 + 1) / BigInt::from(b as u64);
                        }
                        *gb += c * &binom;
                    }
                }
                g
            })
            .collect()
    }

    fn coefficients(&self, m: usize) -> Vec<Vec<BigInt>> {
        let g = self.stage_one(m);
        let mut c: Vec<Vec<BigInt>> = (0..m).map(|a| vec![BigInt::zero(); m - a]).collect();
        for ((p, _), gp) in self.rows.iter().zip(&g) {
            let mut binom = BigInt::one();
            for (a, ca) in c.iter_mut().enumerate() {
                if a as u64 > *p {
                    break;
                }
                if a > 0 {
                    binom = binom * BigInt::from(*p - a as u64 + 1) / BigInt::from(a as u64);
                }
                for (b, cab) in ca.iter_mut().enumerate() {
                    if !gp[b].is_zero() {
                        *cab += &binom * &gp[b];
                    }
                }
            }
        }
        c
    }

    /// Smallest total degree `< limit` carrying a nonzero coefficient.
    fn first_nonzero_degree(&self, limit: usize) -> Option<usize> {
        let mut m = 8usize;
        let mut from = 0;
        loop {
            let cap = m.min(limit);
            let c = self.coefficients(cap);
            for d in from..cap {
                if (0..=d).any(|a| !c[a][d - a].is_zero()) {
                    return Some(d);
                }
            }
            if cap == limit {
                return None;
            }
            from = cap;
            m *= 2;
        }
    }
}

pub fn multiply(f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
    f.multiply(g)
}

pub fn power(f: &LaurentPoly, n: u32) -> LaurentPoly {
    f.power(n)
}

pub fn vanishing_order(f: &LaurentPoly) -> Result<usize, LaurentError> {
    f.vanishing_order()
}

pub fn newton_polygon(f: &LaurentPoly) -> Result<QPolygon, LaurentError> {
    f.newton_polygon()
}

pub fn edge_restriction(f: &LaurentPoly, edge: (LatticePoint, LatticePoint)) -> Result<Vec<Rational>, LaurentError> {
    f.edge_restriction(edge.0, edge.1)
}

/// `Some(f / g)` when `g` divides `f` exactly.
pub fn divides(g: &LaurentPoly, f: &LaurentPoly) -> Option<LaurentPoly> {
    f.div_exact(g)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (&e, c) in &o.terms {
            r.add_term(e, c.clone());
        }
        r
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (&e, c) in &o.terms {
            r.add_term(e, -c.clone());
        }
        r
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        self.multiply(o)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&qi(-1))
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: LaurentPoly) -> LaurentPoly {
        &self + &o
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: LaurentPoly) -> LaurentPoly {
        &self - &o
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: LaurentPoly) -> LaurentPoly {
        self.multiply(&o)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl serde::Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Terms in increasing `(x, y)` exponent order, each written `c*x^a*y^b`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (&(i, j), c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write!(f, "{}*x^{}*y^{}", Frac(&mag), i, j)?;
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;

    /// Accepts the `Display` format and the looser `3*x^2*y - x + 1/2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(LaurentPoly::zero());
        }
        if compact.is_empty() {
            return Err(LaurentError::Parse(s.to_string()));
        }
        // split before every sign that does not follow `^`
        let mut pieces: Vec<String> = Vec::new();
        let mut cur = String::new();
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() && prev != Some('^') {
                pieces.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
            prev = Some(ch);
        }
        pieces.push(cur);
        let mut p = LaurentPoly::zero();
        for piece in pieces {
            let (i, j, c) = parse_term(&piece).ok_or_else(|| LaurentError::Parse(piece.clone()))?;
            p.add_term((i, j), c);
        }
        Ok(p)
    }
}

fn parse_term(t: &str) -> Option<(i64, i64, Rational)> {
    let (neg, body) = match t.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let mut coeff = qi(1);
    let (mut i, mut j) = (0i64, 0i64);
    for f in body.split('*') {
        if let Some(rest) = f.strip_prefix('x') {
            i += parse_exp(rest)?;
        } else if let Some(rest) = f.strip_prefix('y') {
            j += parse_exp(rest)?;
        } else {
            coeff *= crate::exactmath::parse_rational(f).ok()?;
        }
    }
    Some((i, j, if neg { -coeff } else { coeff }))
}

fn parse_exp(rest: &str) -> Option<i64> {
    if rest.is_empty() {
        return Some(1);
    }
    rest.strip_prefix('^')?.parse().ok()
}

/// Product of several factors.
pub fn product<'a, I: IntoIterator<Item = &'a LaurentPoly>>(it: I) -> LaurentPoly {
    it.into_iter().fold(LaurentPoly::one(), |acc, f| acc.multiply(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::q;
    use crate::lattice::lp;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn products() {
        assert_eq!(p("1-x") * p("1+x"), p("1-x^2"));
        assert_eq!(p("1-x*y").power(3), p("1-3*x*y+3*x^2*y^2-x^3*y^3"));
        assert_eq!(p("1-y").power(5).vanishing_order(), Ok(5));
        assert_eq!(p("1/2*x-1/3") * p("6"), p("3*x-2"));
    }

    #[test]
    fn orders() {
        assert_eq!(p("1-y").vanishing_order(), Ok(1));
        let xi = p("1+x-3*x*y+x^2*y^3");
        assert_eq!(xi.vanishing_order(), Ok(2));
        assert!(xi.vanishes_to_order(2));
        assert!(!xi.vanishes_to_order(3));
        assert_eq!(p("x^-3*y^2-x^-3*y^2*x").vanishing_order(), Ok(1));
        assert_eq!(p("5").vanishing_order(), Ok(0));
        assert!(LaurentPoly::zero().vanishing_order().is_err());
        // order 20 crosses the internal doubling of the Taylor window
        assert_eq!(p("1-x").power(11).multiply(&p("x-y").power(9)).vanishing_order(), Ok(20));
    }

    #[test]
    fn taylor_matches_hand_expansion() {
        // 1 + x^2 y at (1+u,1+v) = 2 + 2u + v + u^2 + 2uv + u^2 v
        let c = p("1+x^2*y").taylor_coefficients(3);
        assert_eq!(c[0][0], BigInt::from(2));
        assert_eq!(c[1][0], BigInt::from(2));
        assert_eq!(c[0][1], BigInt::from(1));
        assert_eq!(c[2][0], BigInt::from(1));
        assert_eq!(c[1][1], BigInt::from(2));
    }

    #[test]
    fn newton_polygons() {
        let np = p("1+x-3*x*y+x^2*y^3").newton_polygon().unwrap();
        assert_eq!(np, QPolygon::from_i64(&[(0, 0), (1, 0), (2, 3)]));
        assert!(p("1").newton_polygon().unwrap().is_point());
    }

    #[test]
    fn edges() {
        let xi = p("1+x-3*x*y+x^2*y^3");
        assert_eq!(xi.edge_restriction(lp(1, 0), lp(2, 3)).unwrap(), vec![qi(1), qi(1)]);
        assert_eq!(p("1-y").edge_restriction(lp(0, 0), lp(0, 1)).unwrap(), vec![qi(1), qi(-1)]);
        assert!(xi.edge_restriction(lp(1, 1), lp(1, 1)).is_err());
        assert_eq!(xi.face((3, -1)), p("x+x^2*y^3"));
    }

    #[test]
    fn division() {
        assert_eq!(divides(&p("1-y"), &(p("1-y") * p("1+x"))), Some(p("1+x")));
        assert_eq!(divides(&p("1-x"), &p("1-y")), None);
        assert_eq!(divides(&p("2-y"), &p("4-y^2")), Some(p("2+y")));
        assert_eq!(divides(&p("x^-1-y"), &p("x^-2-y^2")), Some(p("x^-1+y")));
        assert_eq!(divides(&p("2*x+1"), &p("x+1/2")), Some(p("1/2")));
        let xi = ((p("1-x*y")).power(3) + p("x^2") * p("y-1").power(3)).div_exact(&p("1-x"));
        assert_eq!(xi, Some(p("1+x-3*x*y+x^2*y^3")));
    }

    #[test]
    fn text_round_trip() {
        let f = p("-1/2*x^-1*y^3 + 7 - x*y^-2");
        let s = f.to_string();
        assert_eq!(s, "-1/2*x^-1*y^3 + 7*x^0*y^0 - 1*x^1*y^-2");
        assert_eq!(s.parse::<LaurentPoly>().unwrap(), f);
        assert_eq!("0".parse::<LaurentPoly>().unwrap(), LaurentPoly::zero());
        assert!("x^".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn proportionality() {
        assert!(p("2-2*x").proportional(&p("x^3*y-x^4*y")));
        assert!(!p("1-x").proportional(&p("1+x")));
        assert_eq!(p("x^2*y - x^3*y").normalized(), p("1-x"));
        assert_eq!(q(1, 2), p("1/2").coeff(0, 0));
    }
}
