//! Negative curves: vanishing systems at `e = (1,1)`, deficiency,
//! self-intersection, irreducibility verdicts, canonical degree and genus,
//! and the Cox-ring degree search in weighted projective planes.

use crate::exactmath::{
    binomial, kernel_basis, kernel_multimodular, qi, rank_certified, rank_certified_modular, ExactSystem, QMatrix,
    RankCertificate, Rational,
};
use crate::exactmath::modular::ModMatrix;
use crate::lattice::{
    indecomposable_with_budget, lattice_length, lattice_perimeter, lattice_points, pick_stats, Indecomposability,
    LatticePoint, QPolygon,
};
use crate::laurent::LaurentPoly;
use crate::lattice::QPoint;
use crate::trispace::{minimal_triangle, SlopePair, SlopeTriangle, WppWeights};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Columns up to which ranks are certified by fraction-free elimination.
pub const FRACTION_FREE_MAX_COLS: usize = 200;

/// Columns up to which kernels are computed by fraction-free elimination.
/// Beyond this the binomial entries make Bareiss slower than the
/// multimodular route, which verifies its vectors exactly anyway.
pub const FRACTION_FREE_KERNEL_MAX_COLS: usize = 40;

/// Boundary budget for the full Minkowski decomposition search inside
/// [`irreducibility_verdict`].
pub const VERDICT_DECOMPOSITION_BUDGET: u64 = 160;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NegCurveError {
    #[error("empty lattice point set")]
    EmptyPoints,
    #[error("vanishing order must be at least {0}")]
    OrderTooSmall(usize),
    #[error("Newton polygon is not two-dimensional")]
    DegeneratePolygon,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("deficiency mismatch: count-based {count_based}, rank-based {rank_based}")]
    DeficiencyMismatch { count_based: i64, rank_based: i64 },
    #[error("rank certification failed: {0}")]
    Rank(String),
}

fn binom2(m: usize) -> usize {
    m * (m + 1) / 2
}

/// Linear conditions for vanishing to order `m` at `e`, one row per Taylor
/// coefficient `(i,j)` with `i + j < m`, one column per lattice point.
/// Points are translated into the nonnegative quadrant; the entry at
/// `((i,j), (p,q))` is `C(p,i) C(q,j)`.
#[derive(Debug, Clone)]
pub struct VanishingSystem {
    points: Vec<LatticePoint>,
    shifted: Vec<(u64, u64)>,
    conditions: Vec<(usize, usize)>,
    m: usize,
}

impl VanishingSystem {
    pub fn new(points: &[LatticePoint], m: usize) -> Result<Self, NegCurveError> {
        if points.is_empty() {
            return Err(NegCurveError::EmptyPoints);
        }
        if m == 0 {
            return Err(NegCurveError::OrderTooSmall(1));
        }
        let x0 = points.iter().map(|p| p.x).min().unwrap();
        let y0 = points.iter().map(|p| p.y).min().unwrap();
        let shifted = points.iter().map(|p| ((p.x - x0) as u64, (p.y - y0) as u64)).collect();
        let conditions = (0..m).flat_map(|d| (0..=d).map(move |i| (i, d - i))).collect();
        Ok(VanishingSystem { points: points.to_vec(), shifted, conditions, m })
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn order(&self) -> usize {
        self.m
    }

    /// Row labels `(i,j)`, in order of total degree then `i`.
    pub fn conditions(&self) -> &[(usize, usize)] {
        &self.conditions
    }

    pub fn to_qmatrix(&self) -> QMatrix {
        let rows = self
            .conditions
            .iter()
            .map(|&(i, j)| {
                self.shifted
                    .iter()
                    .map(|&(p, q)| {
                        let a = if (i as u64) <= p { binomial(p, i as u64) } else { Zero::zero() };
                        let b = if (j as u64) <= q { binomial(q, j as u64) } else { Zero::zero() };
                        Rational::from_integer(a * b)
                    })
                    .collect()
            })
            .collect();
        QMatrix::from_rows(rows)
    }

    /// The polynomial with coefficient `v[k]` at `points[k]`.
    pub fn polynomial(&self, v: &[Rational]) -> LaurentPoly {
        LaurentPoly::from_points(&self.points, v)
    }

    /// Certified rank, using `known_kernel` vectors for the upper bound on
    /// large systems.
    pub fn rank(&self, known_kernel: &[Vec<Rational>]) -> Result<RankCertificate, NegCurveError> {
        if self.ncols() <= FRACTION_FREE_MAX_COLS {
            return Ok(rank_certified(&self.to_qmatrix()));
        }
        rank_certified_modular(self, known_kernel).map_err(NegCurveError::Rank)
    }

    /// Exact kernel basis, each vector with first nonzero entry 1.
    pub fn kernel(&self) -> Result<Vec<Vec<Rational>>, NegCurveError> {
        if self.ncols() <= FRACTION_FREE_KERNEL_MAX_COLS {
            return Ok(kernel_basis(&self.to_qmatrix()));
        }
        kernel_multimodular(self).map(|r| r.1).map_err(NegCurveError::Rank)
    }
}

/// Pascal table of `C(n, k) mod p` for `n <= nmax`, `k < kmax`.
fn pascal_mod(nmax: usize, kmax: usize, p: u64) -> Vec<Vec<u64>> {
    let mut t = vec![vec![0u64; kmax]; nmax + 1];
    for n in 0..=nmax {
        t[n][0] = 1 % p;
        for k in 1..kmax.min(n + 1) {
            t[n][k] = (t[n - 1][k - 1] + if k < n { t[n - 1][k] } else { 0 }) % p;
        }
    }
    t
}

impl ExactSystem for VanishingSystem {
    fn nrows(&self) -> usize {
        self.conditions.len()
    }

    fn ncols(&self) -> usize {
        self.points.len()
    }

    fn modular(&self, p: u64) -> ModMatrix {
        let xmax = self.shifted.iter().map(|s| s.0).max().unwrap() as usize;
        let ymax = self.shifted.iter().map(|s| s.1).max().unwrap() as usize;
        let cx = pascal_mod(xmax, self.m, p);
        let cy = pascal_mod(ymax, self.m, p);
        ModMatrix::from_fn(p, self.conditions.len(), self.points.len(), |r, c| {
            let (i, j) = self.conditions[r];
            let (a, b) = self.shifted[c];
            cx[a as usize][i] * cy[b as usize][j] % p
        })
    }

    fn annihilates(&self, v: &[Rational]) -> bool {
        let f = self.polynomial(v);
        f.is_zero() || f.vanishes_to_order(self.m)
    }
}

pub fn vanishing_system(points: &[LatticePoint], m: usize) -> Result<QMatrix, NegCurveError> {
    Ok(VanishingSystem::new(points, m)?.to_qmatrix())
}

/// Evidence attached to an irreducibility verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "evidence")]
pub enum Irreducibility {
    Irreducible(String),
    Reducible(LaurentPoly),
    Unknown,
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible(_))
    }
}

impl fmt::Display for Irreducibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Irreducibility::Irreducible(r) => write!(f, "irreducible: {r}"),
            Irreducibility::Reducible(g) => write!(f, "reducible, divisible by {g}"),
            Irreducibility::Unknown => write!(f, "unknown"),
        }
    }
}

/// Binomials `x^a y^b - 1` with `(a,b)` primitive, `|a|, |b| <= 3`, one per
/// line through the origin.
pub fn binomial_screen() -> Vec<LaurentPoly> {
    let mut out = Vec::new();
    for a in 0..=3i64 {
        for b in -3..=3i64 {
            if (a == 0 && b <= 0) || crate::exactmath::gcd_i64(a, b) != 1 {
                continue;
            }
            let (i0, j0) = (0.min(a), 0.min(b));
            out.push(LaurentPoly::from_terms([(-i0, -j0, qi(1)), (a - i0, b - j0, qi(-1))]));
        }
    }
    out
}

/// First divisor in `screen` that is a proper factor of `f`.
pub fn divisor_screen(f: &LaurentPoly, screen: &[LaurentPoly]) -> Option<LaurentPoly> {
    let nf = f.support().len();
    screen.iter().find_map(|g| {
        if g.support().len() < 2 || g.support().len() > nf {
            return None;
        }
        let q = f.div_exact(g)?;
        (q.len() > 1).then(|| g.clone())
    })
}

/// Sufficient test for integral indecomposability: an edge `e` of lattice
/// length 1 and a functional rising only along `e`, with at most one edge
/// on which it is constant. Any summand then takes all of `e` or none of it,
/// and the one taking none is a point.
pub fn unit_edge_criterion(p: &QPolygon) -> Option<(LatticePoint, LatticePoint)> {
    let vs = p.lattice_vertices()?;
    let n = vs.len();
    if n < 3 {
        return None;
    }
    let dirs: Vec<(i64, i64)> = (0..n).map(|k| (vs[(k + 1) % n].x - vs[k].x, vs[(k + 1) % n].y - vs[k].y)).collect();
    let dot = |l: (i64, i64), d: (i64, i64)| l.0 as i128 * d.0 as i128 + l.1 as i128 * d.1 as i128;
    for k in 0..n {
        if lattice_length(vs[k], vs[(k + 1) % n]).ok()? != 1 {
            continue;
        }
        let (prev, next) = (dirs[(k + n - 1) % n], dirs[(k + 1) % n]);
        let cands = [(-prev.1, prev.0), (prev.1, -prev.0), (-next.1, next.0), (next.1, -next.0)];
        for l in cands {
            if dot(l, dirs[k]) <= 0 {
                continue;
            }
            let rising = dirs.iter().filter(|&&d| dot(l, d) > 0).count();
            let level = dirs.iter().filter(|&&d| dot(l, d) == 0).count();
            if rising == 1 && level <= 1 {
                return Some((vs[k], vs[(k + 1) % n]));
            }
        }
    }
    None
}

/// Cascade of sufficient tests: a divisor screen (binomials and `extra`),
/// the unit-edge criterion, then a full Minkowski decomposition search.
pub fn irreducibility_verdict_with(f: &LaurentPoly, extra: &[LaurentPoly]) -> Irreducibility {
    if f.len() < 2 {
        return Irreducibility::Unknown;
    }
    let mut screen = binomial_screen();
    screen.extend(extra.iter().cloned());
    let found = divisor_screen(f, &screen);
    let np = match f.newton_polygon() {
        Ok(p) => p,
        Err(_) => return Irreducibility::Unknown,
    };
    let claim = if np.is_segment() {
        let v = np.lattice_vertices().unwrap();
        match lattice_length(v[0], v[1]) {
            Ok(1) => Some(format!("Newton polygon is the primitive segment {}-{}", v[0], v[1])),
            _ => None,
        }
    } else if let Some((a, b)) = unit_edge_criterion(&np) {
        Some(format!(
            "Newton polygon edge {a}-{b} has lattice length 1 (coefficients {}, {}) and is the only edge rising in its direction, so the polygon is indecomposable",
            f.coeff(a.x, a.y),
            f.coeff(b.x, b.y)
        ))
    } else {
        match indecomposable_with_budget(&np, VERDICT_DECOMPOSITION_BUDGET) {
            Ok(Indecomposability::Yes) => Some(format!("Newton polygon {np} is integrally indecomposable")),
            _ => None,
        }
    };
    match (claim, found) {
        (Some(_), Some(g)) => panic!("divisor {g} found for a polynomial with indecomposable Newton polygon"),
        (Some(r), None) => Irreducibility::Irreducible(r),
        (None, Some(g)) => Irreducibility::Reducible(g),
        (None, None) => Irreducibility::Unknown,
    }
}

pub fn irreducibility_verdict(f: &LaurentPoly) -> Irreducibility {
    irreducibility_verdict_with(f, &crate::families::screening_catalogue())
}

/// Result of the kernel search in a triangle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NegativeCurveCandidate {
    pub poly: LaurentPoly,
    pub m: usize,
    pub minimal_triangle: SlopeTriangle,
    #[serde(with = "crate::exactmath::rational::serde_q")]
    pub self_intersection: Rational,
    pub irreducibility: Irreducibility,
    pub kernel_dim: usize,
    /// Kernel of dimension > 1: the polynomial is one basis vector only.
    pub ambiguous: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome")]
pub enum Detection {
    /// Area exceeds `m^2/2`: no negative curve of this order fits.
    AreaTooLarge {
        #[serde(with = "crate::exactmath::rational::serde_q")]
        area: Rational,
    },
    /// Full column rank: nothing vanishes to order `m`.
    EmptyKernel { lattice_points: usize },
    Found(Box<NegativeCurveCandidate>),
}

impl Detection {
    pub fn candidate(&self) -> Option<&NegativeCurveCandidate> {
        match self {
            Detection::Found(c) => Some(c),
            _ => None,
        }
    }
}

/// Scale `v` so that the entry at the lexicographically smallest point of
/// its support is 1.
pub(crate) fn canonical_scaling(points: &[LatticePoint], v: &[Rational]) -> Vec<Rational> {
    let k = (0..v.len())
        .filter(|&k| !v[k].is_zero())
        .min_by_key(|&k| (points[k].x, points[k].y))
        .expect("zero kernel vector");
    let c = v[k].clone();
    v.iter().map(|x| x / &c).collect()
}

/// Candidate built from a kernel polynomial at the slopes of `tri`.
pub fn candidate_from_poly(
    poly: LaurentPoly,
    m: usize,
    tri: &SlopeTriangle,
    kernel_dim: usize,
) -> Result<NegativeCurveCandidate, NegCurveError> {
    let np = poly.newton_polygon().map_err(|_| NegCurveError::ZeroPolynomial)?;
    let minimal = minimal_triangle(&np, &tri.slopes);
    let self_intersection = qi(2) * minimal.area() - qi((m * m) as i64);
    let irreducibility = irreducibility_verdict(&poly);
    Ok(NegativeCurveCandidate {
        poly,
        m,
        minimal_triangle: minimal,
        self_intersection,
        irreducibility,
        kernel_dim,
        ambiguous: kernel_dim > 1,
    })
}

pub fn detect_negative_curve(tri: &SlopeTriangle, m: usize) -> Result<Detection, NegCurveError> {
    let area = tri.area();
    if area > qi((m * m) as i64) / qi(2) {
        return Ok(Detection::AreaTooLarge { area });
    }
    let pts = lattice_points(&tri.polygon());
    if pts.is_empty() {
        return Ok(Detection::EmptyKernel { lattice_points: 0 });
    }
    let sys = VanishingSystem::new(&pts, m)?;
    let ker = sys.kernel()?;
    if ker.is_empty() {
        return Ok(Detection::EmptyKernel { lattice_points: pts.len() });
    }
    let v = canonical_scaling(&pts, &ker[0]);
    let poly = sys.polynomial(&v);
    Ok(Detection::Found(Box::new(candidate_from_poly(poly, m, tri, ker.len())?)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deficiency {
    /// `C(m+1,2) + 1 - lattice_points`.
    pub value: i64,
    pub lattice_points: usize,
    pub rank: usize,
    /// `C(m+1,2) - rank`: dimension of polynomials of degree `< m` vanishing
    /// at every lattice point.
    pub rank_based: i64,
    pub kernel_dim: usize,
}

pub fn deficiency(tri: &SlopeTriangle, m: usize) -> Result<Deficiency, NegCurveError> {
    deficiency_with_kernel(tri, m, &[])
}

/// As [`deficiency`], with known kernel vectors (in the order of
/// `lattice_points`) to certify the rank of large systems.
pub fn deficiency_with_kernel(
    tri: &SlopeTriangle,
    m: usize,
    known_kernel: &[Vec<Rational>],
) -> Result<Deficiency, NegCurveError> {
    if m == 0 {
        return Err(NegCurveError::OrderTooSmall(1));
    }
    let pts = lattice_points(&tri.polygon());
    let sys = VanishingSystem::new(&pts, m)?;
    let rank = sys.rank(known_kernel)?.rank;
    let kernel_dim = pts.len() - rank;
    let value = binom2(m) as i64 + 1 - pts.len() as i64;
    let rank_based = binom2(m) as i64 - rank as i64;
    // The two notions agree exactly when the curve is unique.
    if kernel_dim == 1 && value != rank_based {
        return Err(NegCurveError::DeficiencyMismatch { count_based: value, rank_based });
    }
    Ok(Deficiency { value, lattice_points: pts.len(), rank, rank_based, kernel_dim })
}

/// `(K_Y . C, arithmetic genus)` for the curve of `f` in the blowup, with
/// `m` the vanishing order of `f` at `e`.
pub fn canonical_degree_and_genus(f: &LaurentPoly) -> Result<(i64, i64), NegCurveError> {
    if f.is_zero() {
        return Err(NegCurveError::ZeroPolynomial);
    }
    let m = f.vanishing_order().map_err(|_| NegCurveError::ZeroPolynomial)? as i64;
    if m <= 1 {
        return Err(NegCurveError::OrderTooSmall(2));
    }
    let np = f.newton_polygon().map_err(|_| NegCurveError::ZeroPolynomial)?;
    if np.is_point() || np.is_segment() {
        return Err(NegCurveError::DegeneratePolygon);
    }
    let perim = lattice_perimeter(&np).map_err(|_| NegCurveError::DegeneratePolygon)? as i64;
    let interior = pick_stats(&np).map_err(|_| NegCurveError::DegeneratePolygon)?.interior as i64;
    Ok((m - perim, interior - m * (m - 1) / 2))
}

/// Monomials of degree `d` in `P(a,b,c)`, dehomogenised at `z = 1`, as
/// points `(i,j)` with `a i + b j <= d` and `c | d - a i - b j`.
pub fn wpp_points(w: &WppWeights, d: u64) -> Vec<LatticePoint> {
    let mut out = Vec::new();
    let mut j = 0;
    while w.b * j <= d {
        let mut i = 0;
        while w.a * i + w.b * j <= d {
            if (d - w.a * i - w.b * j) % w.c == 0 {
                out.push(LatticePoint::new(i as i64, j as i64));
            }
            i += 1;
        }
        j += 1;
    }
    out
}

/// A homogeneous polynomial found by [`wpp_degree_search`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeHit {
    pub degree: u64,
    /// Dehomogenised at `z = 1`.
    pub poly: LaurentPoly,
    pub kernel_dim: usize,
    /// `d^2 - abc m^2`, the sign of the self-intersection.
    pub scaled_self_intersection: i128,
}

/// Smallest `d <= dmax` with a nonzero form of degree `d` vanishing to order
/// `m` at `(1,1,1)`. Degrees are scanned upward; full column rank modulo a
/// prime rules a degree out, any modular kernel is confirmed exactly.
pub fn wpp_degree_search(w: &WppWeights, m: usize, dmax: u64) -> Result<Option<DegreeHit>, NegCurveError> {
    wpp_degree_search_from(w, m, 1, dmax)
}

/// As [`wpp_degree_search`], starting at degree `dmin`.
pub fn wpp_degree_search_from(
    w: &WppWeights,
    m: usize,
    dmin: u64,
    dmax: u64,
) -> Result<Option<DegreeHit>, NegCurveError> {
    if m == 0 {
        return Err(NegCurveError::OrderTooSmall(1));
    }
    let p = crate::exactmath::modular::prime(0);
    for d in dmin.max(1)..=dmax {
        let pts = wpp_points(w, d);
        if pts.is_empty() {
            continue;
        }
        let sys = VanishingSystem::new(&pts, m)?;
        if sys.modular(p).rank() == pts.len() {
            continue;
        }
        let ker = sys.kernel()?;
        if ker.is_empty() {
            continue;
        }
        let v = canonical_scaling(&pts, &ker[0]);
        let abc = (w.a as i128) * (w.b as i128) * (w.c as i128);
        return Ok(Some(DegreeHit {
            degree: d,
            poly: sys.polynomial(&v),
            kernel_dim: ker.len(),
            scaled_self_intersection: (d as i128) * (d as i128) - abc * (m * m) as i128,
        }));
    }
    Ok(None)
}

/// Exact check that the forms of degree `d` contain one vanishing to order `m`.
pub fn wpp_kernel_at(w: &WppWeights, m: usize, d: u64) -> Result<Option<LaurentPoly>, NegCurveError> {
    let pts = wpp_points(w, d);
    if pts.is_empty() {
        return Ok(None);
    }
    let sys = VanishingSystem::new(&pts, m)?;
    let ker = sys.kernel()?;
    Ok(ker.first().map(|v| sys.polynomial(&canonical_scaling(&pts, v))))
}

/// `C . C` for a curve of degree `d` with multiplicity `m` in `P(a,b,c)`.
pub fn wpp_self_intersection(w: &WppWeights, d: u64, m: usize) -> Rational {
    Rational::new((d as i64 * d as i64).into(), (w.product() as i64).into()) - qi((m * m) as i64)
}

/// Lattice isomorphism from the degree-`d` monomials of `P(a,b,c)` onto
/// `Z^2` carrying their triangle to one with slopes `sp`: the exponent of the
/// weight `perm[2]` becomes the height and
/// `x = alpha e[perm[0]] + beta e[perm[1]] + gamma e[perm[2]]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WppChartMap {
    pub weights: WppWeights,
    pub degree: u64,
    pub perm: [usize; 3],
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub triangle: SlopeTriangle,
}

impl WppChartMap {
    /// The edge `e1 = 0` has `1/slope = gamma - beta w3/w2`, the edge `e2 = 0`
    /// has `gamma - alpha w3/w1`, and `alpha w2 - beta w1 = +-1` makes the map
    /// unimodular. Changing `gamma` by `w3` only translates.
    pub fn find(w: &WppWeights, d: u64, sp: &SlopePair) -> Option<WppChartMap> {
        if !sp.is_normalized() {
            return None;
        }
        let ws = [w.a as i64, w.b as i64, w.c as i64];
        let (u, v) = (sp.u(), sp.v());
        for perm in [[0, 1, 2], [1, 0, 2], [1, 2, 0], [2, 1, 0], [2, 0, 1], [0, 2, 1]] {
            let (w1, w2, w3) = (ws[perm[0]], ws[perm[1]], ws[perm[2]]);
            for (ua, ub) in [(&u, &v), (&v, &u)] {
                for gamma in 0..w3 {
                    let alpha = (qi(gamma) - ua) * qi(w1) / qi(w3);
                    let beta = (qi(gamma) - ub) * qi(w2) / qi(w3);
                    if !alpha.is_integer() || !beta.is_integer() {
                        continue;
                    }
                    let (Some(alpha), Some(beta)) = (alpha.to_integer().to_i64(), beta.to_integer().to_i64()) else {
                        continue;
                    };
                    if (alpha * w2 - beta * w1).abs() != 1 {
                        continue;
                    }
                    let dq = qi(d as i64);
                    let vs = [
                        QPoint::new(qi(alpha) * &dq / qi(w1), qi(0)),
                        QPoint::new(qi(beta) * &dq / qi(w2), qi(0)),
                        QPoint::new(qi(gamma) * &dq / qi(w3), &dq / qi(w3)),
                    ];
                    if let Some(tri) = SlopeTriangle::from_vertices(vs) {
                        if &tri.slopes == sp {
                            return Some(WppChartMap { weights: *w, degree: d, perm, alpha, beta, gamma, triangle: tri });
                        }
                    }
                }
            }
        }
        None
    }

    /// Image of the dehomogenised monomial `x^i y^j` (the `z` exponent is
    /// implied by the degree).
    pub fn map_exponent(&self, i: i64, j: i64) -> (i64, i64) {
        let k = (self.degree as i64 - self.weights.a as i64 * i - self.weights.b as i64 * j) / self.weights.c as i64;
        let e = [i, j, k];
        (self.alpha * e[self.perm[0]] + self.beta * e[self.perm[1]] + self.gamma * e[self.perm[2]], e[self.perm[2]])
    }

    pub fn map_poly(&self, f: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_terms(f.terms().map(|(&(i, j), c)| {
            let (x, y) = self.map_exponent(i, j);
            (x, y, c.clone())
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::q;
    use crate::lattice::lp;

    fn it311() -> SlopeTriangle {
        SlopeTriangle::from_vertices([
            QPoint::new(qi(0), qi(0)),
            QPoint::new(qi(1), qi(0)),
            QPoint::new(qi(2), qi(3)),
        ])
        .unwrap()
    }

    #[test]
    fn small_systems() {
        let pts = lattice_points(&it311().polygon());
        let m = vanishing_system(&pts, 2).unwrap();
        assert_eq!((m.rows(), m.cols()), (3, 4));
        assert_eq!(crate::exactmath::rank_exact(&m), 3);
        let one = vanishing_system(&[lp(5, -2)], 1).unwrap();
        assert_eq!(one.get(0, 0), qi(1));
        assert!(vanishing_system(&[], 2).is_err());
    }

    #[test]
    fn modular_matches_exact() {
        let pts = lattice_points(&QPolygon::from_i64(&[(0, 0), (6, 0), (3, 7)]));
        let sys = VanishingSystem::new(&pts, 5).unwrap();
        let exact = sys.to_qmatrix().modular(1_000_003);
        let fast = sys.modular(1_000_003);
        for i in 0..sys.nrows() {
            for j in 0..sys.ncols() {
                assert_eq!(exact.get(i, j), fast.get(i, j));
            }
        }
    }

    #[test]
    fn detect_it311() {
        let d = detect_negative_curve(&it311(), 2).unwrap();
        let c = d.candidate().unwrap();
        let expect = LaurentPoly::from_i64_terms(&[(0, 0, 1), (1, 0, 1), (1, 1, -3), (2, 3, 1)]);
        assert_eq!(c.poly, expect);
        assert_eq!(c.self_intersection, qi(-1));
        assert!(c.irreducibility.is_irreducible());
        assert!(!c.ambiguous);
        let big = it311().scaled(&qi(3));
        assert!(matches!(detect_negative_curve(&big, 2).unwrap(), Detection::AreaTooLarge { .. }));
    }

    #[test]
    fn detect_new_family_k4() {
        let tri = SlopeTriangle::from_vertices([
            QPoint::new(q(-1, 5), qi(0)),
            QPoint::new(qi(2), qi(0)),
            QPoint::new(qi(4), qi(7)),
        ])
        .unwrap();
        let c = detect_negative_curve(&tri, 4).unwrap().candidate().unwrap().clone();
        assert_eq!(c.self_intersection, q(-3, 5));
        assert_eq!(c.kernel_dim, 1);
    }

    #[test]
    fn deficiency_it311() {
        let d = deficiency(&it311(), 2).unwrap();
        assert_eq!((d.value, d.lattice_points, d.rank, d.rank_based), (0, 4, 3, 0));
    }

    #[test]
    fn verdicts() {
        let one_minus_y = LaurentPoly::from_i64_terms(&[(0, 0, 1), (0, 1, -1)]);
        assert!(irreducibility_verdict(&one_minus_y).is_irreducible());
        let one_minus_x = LaurentPoly::from_i64_terms(&[(0, 0, 1), (1, 0, -1)]);
        match irreducibility_verdict(&(&one_minus_x * &one_minus_y)) {
            Irreducibility::Reducible(g) => assert!(g.proportional(&one_minus_y) || g.proportional(&one_minus_x)),
            v => panic!("{v}"),
        }
        let sq = one_minus_x.power(2);
        assert!(matches!(irreducibility_verdict(&sq), Irreducibility::Reducible(_)));
    }

    #[test]
    fn unit_edge_on_pentagon() {
        // Newton polygon of the special curve for K = 4
        let p = QPolygon::from_i64(&[(0, 0), (5, 0), (9, 15), (4, 7), (1, 2)]);
        assert_eq!(unit_edge_criterion(&p), Some((lp(5, 0), lp(9, 15))));
        // a parallelogram has two level edges for every candidate functional
        let par = QPolygon::from_i64(&[(0, 0), (1, 0), (2, 1), (1, 1)]);
        assert_eq!(unit_edge_criterion(&par), None);
    }

    #[test]
    fn genus_of_small_curves() {
        let f = LaurentPoly::from_i64_terms(&[(0, 0, 1), (1, 0, 1), (1, 1, -3), (2, 3, 1)]);
        // perimeter of (0,0),(1,0),(2,3) is 3
        assert_eq!(canonical_degree_and_genus(&f).unwrap(), (-1, 0));
        let lin = LaurentPoly::from_i64_terms(&[(0, 0, 1), (0, 1, -1)]);
        assert!(canonical_degree_and_genus(&lin).is_err());
    }

    #[test]
    fn wpp_p7_9_10() {
        let w = WppWeights::new(7, 9, 10);
        let hit = wpp_degree_search(&w, 4, 120).unwrap().unwrap();
        assert_eq!(hit.degree, 100);
        assert_eq!(hit.scaled_self_intersection, -80);
        assert!(hit.poly.vanishes_to_order(4));
        assert_eq!(wpp_self_intersection(&w, 100, 4), q(-8, 63));
        let _ = SlopePair::from_ints((9, 4), (7, 2));
    }
}
