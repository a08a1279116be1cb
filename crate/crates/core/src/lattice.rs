//! Lattice points, convex polygons with rational vertices, Pick statistics
//! and integral Minkowski indecomposability.

use crate::exactmath::{ceil_i64, floor_i64, gcd_i64, is_integer, qi, Frac, Rational};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }

    pub fn to_q(self) -> QPoint {
        QPoint::new(qi(self.x), qi(self.y))
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

pub fn lp(x: i64, y: i64) -> LatticePoint {
    LatticePoint::new(x, y)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QPoint {
    #[serde(with = "crate::exactmath::rational::serde_q")]
    pub x: Rational,
    #[serde(with = "crate::exactmath::rational::serde_q")]
    pub y: Rational,
}

impl QPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        QPoint { x, y }
    }

    pub fn is_integral(&self) -> bool {
        is_integer(&self.x) && is_integer(&self.y)
    }

    /// The lattice point, if both coordinates are integers.
    pub fn lattice(&self) -> Option<LatticePoint> {
        if !self.is_integral() {
            return None;
        }
        Some(LatticePoint::new(self.x.to_integer().to_i64()?, self.y.to_integer().to_i64()?))
    }

    pub fn add(&self, o: &QPoint) -> QPoint {
        QPoint::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &QPoint) -> QPoint {
        QPoint::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn scale(&self, k: &Rational) -> QPoint {
        QPoint::new(&self.x * k, &self.y * k)
    }
}

impl fmt::Display for QPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", Frac(&self.x), Frac(&self.y))
    }
}

pub fn qp(x: Rational, y: Rational) -> QPoint {
    QPoint::new(x, y)
}

/// Twice the signed area of the triangle `o a b`.
fn cross(o: &QPoint, a: &QPoint, b: &QPoint) -> Rational {
    (&a.x - &o.x) * (&b.y - &o.y) - (&a.y - &o.y) * (&b.x - &o.x)
}

/// Convex polygon stored as its counterclockwise vertex cycle, starting at
/// the lowest (then leftmost) vertex. One vertex is a point, two a segment.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QPolygon {
    vertices: Vec<QPoint>,
}

impl QPolygon {
    /// Convex hull of arbitrary points; collinear and duplicate points are
    /// dropped.
    pub fn hull(points: &[QPoint]) -> QPolygon {
        QPolygon { vertices: convex_hull(points) }
    }

    pub fn from_lattice(points: &[LatticePoint]) -> QPolygon {
        let q: Vec<QPoint> = points.iter().map(|p| p.to_q()).collect();
        QPolygon::hull(&q)
    }

    pub fn from_i64(points: &[(i64, i64)]) -> QPolygon {
        let q: Vec<QPoint> = points.iter().map(|&(x, y)| qp(qi(x), qi(y))).collect();
        QPolygon::hull(&q)
    }

    pub fn vertices(&self) -> &[QPoint] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn is_segment(&self) -> bool {
        self.vertices.len() == 2
    }

    pub fn is_integral(&self) -> bool {
        self.vertices.iter().all(QPoint::is_integral)
    }

    /// Integer vertices, or `None` if some vertex is not a lattice point.
    pub fn lattice_vertices(&self) -> Option<Vec<LatticePoint>> {
        self.vertices.iter().map(QPoint::lattice).collect()
    }

    pub fn area(&self) -> Rational {
        let n = self.vertices.len();
        if n < 3 {
            return Rational::zero();
        }
        let mut s = Rational::zero();
        for i in 0..n {
            let (a, b) = (&self.vertices[i], &self.vertices[(i + 1) % n]);
            s += &a.x * &b.y - &a.y * &b.x;
        }
        s / qi(2)
    }

    /// Edges as consecutive vertex pairs (a segment yields both directions).
    pub fn edges(&self) -> Vec<(QPoint, QPoint)> {
        let n = self.vertices.len();
        if n < 2 {
            return Vec::new();
        }
        (0..n)
            .map(|i| (self.vertices[i].clone(), self.vertices[(i + 1) % n].clone()))
            .collect()
    }

    pub fn contains(&self, p: &QPoint) -> bool {
        let v = &self.vertices;
        match v.len() {
            0 => false,
            1 => v[0] == *p,
            2 => {
                cross(&v[0], &v[1], p).is_zero()
                    && between(&v[0].x, &v[1].x, &p.x)
                    && between(&v[0].y, &v[1].y, &p.y)
            }
            n => (0..n).all(|i| !cross(&v[i], &v[(i + 1) % n], p).is_negative()),
        }
    }

    pub fn translate(&self, d: &QPoint) -> QPolygon {
        QPolygon::hull(&self.vertices.iter().map(|v| v.add(d)).collect::<Vec<_>>())
    }

    /// Image under the integer matrix `[[a,b],[c,d]]` acting on columns.
    pub fn transform(&self, m: [[i64; 2]; 2]) -> QPolygon {
        let pts: Vec<QPoint> = self
            .vertices
            .iter()
            .map(|v| {
                qp(
                    qi(m[0][0]) * &v.x + qi(m[0][1]) * &v.y,
                    qi(m[1][0]) * &v.x + qi(m[1][1]) * &v.y,
                )
            })
            .collect();
        QPolygon::hull(&pts)
    }

    /// Minimum and maximum of `a x + b y` over the polygon.
    pub fn support_range(&self, a: &Rational, b: &Rational) -> Option<(Rational, Rational)> {
        let mut it = self.vertices.iter().map(|v| a * &v.x + b * &v.y);
        let first = it.next()?;
        Some(it.fold((first.clone(), first), |(lo, hi), x| {
            let lo = if x < lo { x.clone() } else { lo };
            let hi = if x > hi { x } else { hi };
            (lo, hi)
        }))
    }
}

impl fmt::Display for QPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

fn between(a: &Rational, b: &Rational, x: &Rational) -> bool {
    (a <= x && x <= b) || (b <= x && x <= a)
}

/// Andrew's monotone chain in exact arithmetic. Output starts at the lowest,
/// then leftmost point and runs counterclockwise.
pub fn convex_hull(points: &[QPoint]) -> Vec<QPoint> {
    let mut pts: Vec<QPoint> = points.to_vec();
    pts.sort_by(|a, b| (&a.y, &a.x).cmp(&(&b.y, &b.x)));
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<QPoint> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_negative() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<QPoint> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_negative() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    // the chains above are clockwise; reverse keeping the first point
    lower[1..].reverse();
    lower
}

/// Minkowski sum via the hull of pairwise vertex sums.
pub fn minkowski_sum(p: &QPolygon, q: &QPolygon) -> QPolygon {
    let mut pts = Vec::with_capacity(p.vertices.len() * q.vertices.len());
    for a in &p.vertices {
        for b in &q.vertices {
            pts.push(a.add(b));
        }
    }
    QPolygon::hull(&pts)
}

/// Integer points of the polygon, ordered by row (`y`) and then by `x`.
pub fn lattice_points(p: &QPolygon) -> Vec<LatticePoint> {
    let mut out = Vec::new();
    let v = p.vertices();
    if v.is_empty() {
        return out;
    }
    let (ylo, yhi) = p.support_range(&qi(0), &qi(1)).unwrap();
    for y in ceil_i64(&ylo)..=floor_i64(&yhi) {
        if let Some((xl, xr)) = row_span(v, &qi(y)) {
            for x in ceil_i64(&xl)..=floor_i64(&xr) {
                out.push(LatticePoint::new(x, y));
            }
        }
    }
    out
}

/// Number of lattice points without materialising them.
pub fn lattice_point_count(p: &QPolygon) -> u64 {
    let v = p.vertices();
    if v.is_empty() {
        return 0;
    }
    let (ylo, yhi) = p.support_range(&qi(0), &qi(1)).unwrap();
    let mut n = 0u64;
    for y in ceil_i64(&ylo)..=floor_i64(&yhi) {
        if let Some((xl, xr)) = row_span(v, &qi(y)) {
            let (a, b) = (ceil_i64(&xl), floor_i64(&xr));
            if b >= a {
                n += (b - a + 1) as u64;
            }
        }
    }
    n
}

/// Exact `x` extent of the polygon on the horizontal line at height `y`.
fn row_span(v: &[QPoint], y: &Rational) -> Option<(Rational, Rational)> {
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    let mut push = |x: Rational| {
        if lo.as_ref().is_none_or(|l| &x < l) {
            lo = Some(x.clone());
        }
        if hi.as_ref().is_none_or(|h| &x > h) {
            hi = Some(x);
        }
    };
    let n = v.len();
    if n == 1 && &v[0].y == y {
        push(v[0].x.clone());
    }
    for i in 0..if n == 1 { 0 } else { n } {
        let (a, b) = (&v[i], &v[(i + 1) % n]);
        if a.y == b.y {
            if &a.y == y {
                push(a.x.clone());
                push(b.x.clone());
            }
        } else if between(&a.y, &b.y, y) {
            push(&a.x + (y - &a.y) * (&b.x - &a.x) / (&b.y - &a.y));
        }
    }
    Some((lo?, hi?))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("polygon has a non-integral vertex {0}")]
    NonIntegral(String),
    #[error("polygon is degenerate (zero area)")]
    Degenerate,
    #[error("endpoints coincide")]
    ZeroLength,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PickStats {
    #[serde(with = "crate::exactmath::rational::serde_q")]
    pub area: Rational,
    pub boundary: u64,
    pub interior: u64,
}

pub fn lattice_length(a: LatticePoint, b: LatticePoint) -> Result<u64, LatticeError> {
    if a == b {
        return Err(LatticeError::ZeroLength);
    }
    Ok(gcd_i64(b.x - a.x, b.y - a.y) as u64)
}

/// Sum of edge lattice lengths of an integral polygon (a segment counts once).
pub fn lattice_perimeter(p: &QPolygon) -> Result<u64, LatticeError> {
    let v = integral_vertices(p)?;
    match v.len() {
        0 | 1 => Ok(0),
        2 => lattice_length(v[0], v[1]),
        n => (0..n).map(|i| lattice_length(v[i], v[(i + 1) % n])).sum(),
    }
}

fn integral_vertices(p: &QPolygon) -> Result<Vec<LatticePoint>, LatticeError> {
    p.vertices
        .iter()
        .map(|v| v.lattice().ok_or_else(|| LatticeError::NonIntegral(v.to_string())))
        .collect()
}

pub fn pick_stats(p: &QPolygon) -> Result<PickStats, LatticeError> {
    integral_vertices(p)?;
    if p.vertices.len() < 3 {
        return Err(LatticeError::Degenerate);
    }
    let area = p.area();
    let boundary = lattice_perimeter(p)?;
    // Pick: A = I + B/2 - 1
    let interior = &area - Rational::new(boundary.into(), 2.into()) + qi(1);
    debug_assert!(is_integer(&interior));
    Ok(PickStats {
        area,
        boundary,
        interior: interior.to_integer().to_u64().expect("negative interior count"),
    })
}

pub const INDECOMPOSABLE_BUDGET: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Indecomposability {
    Yes,
    /// `P = first + second`, both with at least two lattice points.
    No(QPolygon, QPolygon),
    TooLarge,
}

pub fn indecomposable(p: &QPolygon) -> Result<Indecomposability, LatticeError> {
    indecomposable_with_budget(p, INDECOMPOSABLE_BUDGET)
}

/// Searches for a nontrivial integral Minkowski splitting. Each edge
/// `l * e` (with `e` primitive) contributes `k * e` to one summand for some
/// `0 <= k <= l`; the choice closes up iff the partial vectors sum to zero.
/// A dynamic program over reachable partial sums finds such a choice.
pub fn indecomposable_with_budget(p: &QPolygon, budget: u64) -> Result<Indecomposability, LatticeError> {
    let v = integral_vertices(p)?;
    if v.len() <= 1 {
        return Ok(Indecomposability::Yes);
    }
    let n = v.len();
    let mut edges: Vec<((i64, i64), u64)> = Vec::with_capacity(n);
    for i in 0..n {
        let (a, b) = (v[i], v[(i + 1) % n]);
        let l = lattice_length(a, b)?;
        let li = l as i64;
        edges.push((((b.x - a.x) / li, (b.y - a.y) / li), l));
    }
    if edges.iter().map(|e| e.1).sum::<u64>() > budget {
        return Ok(Indecomposability::TooLarge);
    }
    // state: partial sum, some k > 0 chosen, some k < l chosen
    type State = ((i64, i64), bool, bool);
    let mut layers: Vec<HashMap<State, (State, u64)>> = Vec::with_capacity(n + 1);
    let mut first = HashMap::new();
    first.insert(((0, 0), false, false), (((0, 0), false, false), 0));
    layers.push(first);
    for &((ex, ey), l) in &edges {
        let prev = layers.last().unwrap();
        let mut next: HashMap<State, (State, u64)> = HashMap::new();
        let mut keys: Vec<&State> = prev.keys().collect();
        keys.sort();
        for &st in keys {
            let ((sx, sy), pos, part) = st;
            for k in 0..=l {
                let ki = k as i64;
                let ns = ((sx + ki * ex, sy + ki * ey), pos || k > 0, part || k < l);
                next.entry(ns).or_insert((st, k));
            }
        }
        layers.push(next);
    }
    let goal: State = ((0, 0), true, true);
    if !layers[n].contains_key(&goal) {
        return Ok(Indecomposability::Yes);
    }
    let mut ks = vec![0u64; n];
    let mut st = goal;
    for i in (1..=n).rev() {
        let (prev, k) = layers[i][&st];
        ks[i - 1] = k;
        st = prev;
    }
    let walk = |start: LatticePoint, take: &dyn Fn(usize) -> u64| {
        let mut cur = start;
        let mut pts = vec![cur];
        for (i, &((ex, ey), _)) in edges.iter().enumerate() {
            let k = take(i) as i64;
            cur = LatticePoint::new(cur.x + k * ex, cur.y + k * ey);
            pts.push(cur);
        }
        QPolygon::from_lattice(&pts)
    };
    let q = walk(LatticePoint::new(0, 0), &|i| ks[i]);
    let r = walk(v[0], &|i| edges[i].1 - ks[i]);
    Ok(Indecomposability::No(q, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::q;

    #[test]
    fn hull_orientation_and_collinear_points() {
        let p = QPolygon::from_i64(&[(2, 2), (0, 0), (1, 0), (2, 0), (0, 2), (1, 1)]);
        assert_eq!(p, QPolygon::from_i64(&[(0, 0), (2, 0), (2, 2), (0, 2)]));
        assert_eq!(p.vertices()[0], qp(qi(0), qi(0)));
        assert_eq!(p.vertices()[1], qp(qi(2), qi(0)));
        assert_eq!(p.area(), qi(4));
    }

    #[test]
    fn points_of_small_polygons() {
        let t = QPolygon::from_i64(&[(0, 0), (1, 0), (2, 3)]);
        assert_eq!(lattice_points(&t), vec![lp(0, 0), lp(1, 0), lp(1, 1), lp(2, 3)]);
        let sq = QPolygon::from_i64(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        assert_eq!(lattice_points(&sq).len(), 4);
        let seg = QPolygon::from_i64(&[(0, 0), (0, 3)]);
        assert_eq!(lattice_points(&seg).len(), 4);
        assert_eq!(lattice_points(&QPolygon::from_i64(&[(5, -2)])), vec![lp(5, -2)]);
    }

    #[test]
    fn rational_vertices() {
        // new-family triangle for K=4: (-1/5,0),(2,0),(4,7)
        let t = QPolygon::hull(&[qp(q(-1, 5), qi(0)), qp(qi(2), qi(0)), qp(qi(4), qi(7))]);
        assert_eq!(lattice_points(&t).len(), 11);
        assert_eq!(lattice_point_count(&t), 11);
        assert!(!t.is_integral());
        assert!(pick_stats(&t).is_err());
    }

    #[test]
    fn pick_examples() {
        let t = QPolygon::from_i64(&[(0, 0), (1, 0), (0, 1)]);
        assert_eq!(pick_stats(&t).unwrap(), PickStats { area: q(1, 2), boundary: 3, interior: 0 });
        let up4 = QPolygon::from_i64(&[(0, 0), (5, 0), (9, 15), (4, 7), (1, 2)]);
        assert_eq!(pick_stats(&up4).unwrap(), PickStats { area: q(79, 2), boundary: 9, interior: 36 });
        assert_eq!(lattice_points(&up4).len(), 45);
        assert_eq!(pick_stats(&QPolygon::from_i64(&[(0, 0), (3, 3)])), Err(LatticeError::Degenerate));
    }

    #[test]
    fn lengths() {
        assert_eq!(lattice_length(lp(0, 0), lp(4, 6)), Ok(2));
        // bottom-right edge of N*IT_4(3,2) and its sub-edge up to Q'
        assert_eq!(lattice_length(lp(6, 0), lp(10, 16)), Ok(4));
        assert_eq!(lattice_length(lp(6, 0), lp(10, 15)), Ok(1));
        assert_eq!(lattice_length(lp(0, 0), lp(1, 7)), Ok(1));
        assert_eq!(lattice_length(lp(1, 1), lp(1, 1)), Err(LatticeError::ZeroLength));
    }

    #[test]
    fn indecomposability() {
        let seg = QPolygon::from_i64(&[(0, 0), (0, 1)]);
        assert_eq!(indecomposable(&seg), Ok(Indecomposability::Yes));
        let t = QPolygon::from_i64(&[(0, 0), (1, 0), (2, 3)]);
        assert_eq!(indecomposable(&t), Ok(Indecomposability::Yes));
        let two = QPolygon::from_i64(&[(0, 0), (2, 0), (0, 2)]);
        let simplex = QPolygon::from_i64(&[(0, 0), (1, 0), (0, 1)]);
        assert_eq!(indecomposable(&two), Ok(Indecomposability::No(simplex.clone(), simplex)));
        let seg2 = QPolygon::from_i64(&[(1, 1), (3, 5)]);
        match indecomposable(&seg2).unwrap() {
            Indecomposability::No(a, b) => assert_eq!(minkowski_sum(&a, &b), seg2),
            other => panic!("{other:?}"),
        }
        let big = QPolygon::from_i64(&[(0, 0), (100, 0), (0, 100)]);
        assert_eq!(indecomposable(&big), Ok(Indecomposability::TooLarge));
    }
}
