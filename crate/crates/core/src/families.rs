//! The infinite families: solutions of `(M+N)^2 = KMN + 1`, the integral and
//! rational triangle polynomials built by the mutual recurrences, the new
//! non-special family, the special family `Upsilon_K`, and the edge
//! coefficient sequences used to bound the lower halves of the diamonds.

use crate::exactmath::{binomial, floor_i64, gcd_i64, q, qi, Rational};
use crate::lattice::{lattice_perimeter, lattice_points, pick_stats, LatticePoint, QPoint, QPolygon};
use crate::laurent::LaurentPoly;
use crate::negcurve::{
    detect_negative_curve, irreducibility_verdict_with, Detection, Irreducibility, NegCurveError,
    NegativeCurveCandidate,
};
use crate::trispace::{minimal_triangle, SlopePair, SlopeTriangle, WppWeights};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("K = {0} is out of range (need K >= {1})")]
    KOutOfRange(i64, i64),
    #[error("({m},{n}) does not solve (M+N)^2 = {k} M N + 1")]
    NotASolution { k: i64, m: i64, n: i64 },
    #[error("index n = {n} gives the non-admissible pair ({m},{nn}) for K = {k}")]
    NotAdmissible { k: i64, n: usize, m: i64, nn: i64 },
    #[error("recurrence division failed for K = {k}, n = {n} ({which})")]
    Division { k: i64, n: usize, which: &'static str },
    #[error("postcondition failed for K = {k}, n = {n}: {what}")]
    Check { k: i64, n: usize, what: String },
    #[error(transparent)]
    NegCurve(#[from] NegCurveError),
}

/// `F_n` with `F_0 = 0`, `F_1 = 1`, `F_{n+2} = (K-2) F_{n+1} - F_n`.
pub fn fib(k: i64, n: usize) -> i64 {
    let (mut a, mut b) = (0i64, 1i64);
    for _ in 0..n {
        let c = (k - 2) * b - a;
        a = b;
        b = c;
    }
    a
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySolution {
    pub k: i64,
    pub n: usize,
    /// `M = F_{n+1}`.
    pub m: i64,
    /// `N = F_n`.
    pub nn: i64,
}

impl FamilySolution {
    /// Both entries nonnegative and `M >= 1`: the triangles are defined.
    pub fn is_admissible(&self) -> bool {
        self.m >= 1 && self.nn >= 0
    }
}

pub fn solves_mn(k: i64, m: i64, n: i64) -> bool {
    let s = (m + n) as i128;
    s * s == (k as i128) * (m as i128) * (n as i128) + 1
}

/// `(F_{n+1}, F_n)` for `n = 0..=n_max`. For `K = 3` the sequence is
/// periodic and only `(1,0)` and `(1,1)` are admissible; all pairs are
/// returned and flagged through [`FamilySolution::is_admissible`].
pub fn mn_pairs(k: i64, n_max: usize) -> Result<Vec<FamilySolution>, FamilyError> {
    if k < 3 {
        return Err(FamilyError::KOutOfRange(k, 3));
    }
    (0..=n_max)
        .map(|n| {
            let s = FamilySolution { k, n, m: fib(k, n + 1), nn: fib(k, n) };
            if !solves_mn(k, s.m, s.nn) {
                return Err(FamilyError::NotASolution { k, m: s.m, n: s.nn });
            }
            Ok(s)
        })
        .collect()
}

/// Signs `(eps_int, eps_rat)` in the recurrences at index `n`.
pub fn epsilon(k: i64, n: usize) -> (i64, i64) {
    if k % 2 == 0 {
        (-1, if n % 2 == 1 { 1 } else { -1 })
    } else {
        let ei = if n % 3 == 1 { 1 } else { -1 };
        let er = if n % 3 == 2 { 1 } else { -1 };
        (ei, er)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum XiKind {
    Int,
    Rat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TriangleKind {
    /// `IT_K(M,N)`: `(0,0), (M,0), (M+N, KN)`.
    Integral,
    /// `RT_K(M,N)`: `(0,0), (M-(M+N)/K, 0), (M, M+N)`.
    Rational,
}

/// `x^e (y-1)^d` with sign `c`.
fn x_pow_y_minus_one(c: i64, e: i64, d: u64) -> LaurentPoly {
    LaurentPoly::from_terms((0..=d).map(|j| {
        let sign = if (d - j) % 2 == 0 { c } else { -c };
        (e, j as i64, Rational::from_integer(binomial(d, j) * sign))
    }))
}

type XiPair = (Arc<LaurentPoly>, Arc<LaurentPoly>);

fn xi_memo() -> &'static Mutex<HashMap<(i64, usize), XiPair>> {
    static MEMO: OnceLock<Mutex<HashMap<(i64, usize), XiPair>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

fn check(ok: bool, k: i64, n: usize, what: impl Into<String>) -> Result<(), FamilyError> {
    if ok {
        Ok(())
    } else {
        Err(FamilyError::Check { k, n, what: what.into() })
    }
}

fn within(f: &LaurentPoly, tri: &SlopeTriangle) -> bool {
    let p = tri.polygon();
    f.terms().all(|(e, _)| p.contains(&QPoint::new(qi(e.0), qi(e.1))))
}

/// `(xi_int_n, xi_rat_n)` for the family with right slope `K`, computed by
/// exact division and checked against both recurrences, the supports, the
/// vanishing orders, the constant terms and the integral vertex
/// coefficients.
pub fn xi_pair(k: i64, n: usize) -> Result<XiPair, FamilyError> {
    if k < 3 {
        return Err(FamilyError::KOutOfRange(k, 3));
    }
    if let Some(p) = xi_memo().lock().unwrap().get(&(k, n)) {
        return Ok(p.clone());
    }
    let pair = if n == 0 {
        (
            Arc::new(LaurentPoly::from_i64_terms(&[(0, 0, 1), (1, 0, -1)])),
            Arc::new(LaurentPoly::from_i64_terms(&[(0, 0, 1), (1, 1, -1)])),
        )
    } else {
        let (int_prev, rat_prev) = xi_pair(k, n - 1)?;
        let (m, nn) = (fib(k, n + 1), fib(k, n));
        if m < 1 || nn < 0 {
            return Err(FamilyError::NotAdmissible { k, n, m, nn });
        }
        let (ei, er) = epsilon(k, n);
        let tail_int = x_pow_y_minus_one(ei, m + nn, (k * nn) as u64);
        let rat_pow = rat_prev.power(k as u32);
        let int_n = (&rat_pow + &tail_int)
            .div_exact(&int_prev)
            .ok_or(FamilyError::Division { k, n, which: "integral" })?;
        let tail_rat = x_pow_y_minus_one(er, m, (m + nn) as u64);
        let rat_n = (&int_n + &tail_rat)
            .div_exact(&rat_prev)
            .ok_or(FamilyError::Division { k, n, which: "rational" })?;
        check(&int_n * &*int_prev - tail_int == rat_pow, k, n, "first recurrence")?;
        check(&rat_n * &*rat_prev - tail_rat == int_n, k, n, "second recurrence")?;
        verify_xi(k, n, m, nn, &int_n, &rat_n)?;
        (Arc::new(int_n), Arc::new(rat_n))
    };
    xi_memo().lock().unwrap().insert((k, n), pair.clone());
    Ok(pair)
}

fn verify_xi(k: i64, n: usize, m: i64, nn: i64, int_n: &LaurentPoly, rat_n: &LaurentPoly) -> Result<(), FamilyError> {
    let it = family_triangle(k, m, nn, TriangleKind::Integral)?;
    let rt = family_triangle(k, m, nn, TriangleKind::Rational)?;
    check(within(int_n, &it), k, n, "integral support outside IT")?;
    check(within(rat_n, &rt), k, n, "rational support outside RT")?;
    check(int_n.coeff(0, 0).is_one() && rat_n.coeff(0, 0).is_one(), k, n, "constant term")?;
    let oi = int_n.vanishing_order().map_err(|e| FamilyError::Check { k, n, what: e.to_string() })?;
    let or = rat_n.vanishing_order().map_err(|e| FamilyError::Check { k, n, what: e.to_string() })?;
    check(oi == (m + nn) as usize, k, n, format!("integral order {oi}"))?;
    check(or == m as usize, k, n, format!("rational order {or}"))?;
    if let Ok(np) = int_n.newton_polygon() {
        for v in np.lattice_vertices().unwrap_or_default() {
            check(int_n.coeff(v.x, v.y).abs().is_one(), k, n, format!("vertex coefficient at {v}"))?;
        }
    }
    Ok(())
}

pub fn xi(k: i64, n: usize, kind: XiKind) -> Result<LaurentPoly, FamilyError> {
    let (i, r) = xi_pair(k, n)?;
    Ok(match kind {
        XiKind::Int => (*i).clone(),
        XiKind::Rat => (*r).clone(),
    })
}

/// Vanishing order of the family curve in the given triangle.
pub fn family_order(kind: TriangleKind, m: i64, n: i64) -> i64 {
    match kind {
        TriangleKind::Integral => m + n,
        TriangleKind::Rational => m,
    }
}

pub fn family_triangle(k: i64, m: i64, n: i64, kind: TriangleKind) -> Result<SlopeTriangle, FamilyError> {
    if !solves_mn(k, m, n) {
        return Err(FamilyError::NotASolution { k, m, n });
    }
    let pts = match kind {
        TriangleKind::Integral => [(qi(0), qi(0)), (qi(m), qi(0)), (qi(m + n), qi(k * n))],
        TriangleKind::Rational => [(qi(0), qi(0)), (qi(m) - q(m + n, k), qi(0)), (qi(m), qi(m + n))],
    };
    let tri = SlopeTriangle::from_vertices(pts.map(|(x, y)| QPoint::new(x, y)));
    tri.ok_or(FamilyError::Check { k, n: 0, what: format!("degenerate triangle for ({m},{n})") })
}

/// Polynomials screened as possible factors by the irreducibility verdict.
pub fn screening_catalogue() -> Vec<LaurentPoly> {
    static CAT: OnceLock<Vec<LaurentPoly>> = OnceLock::new();
    CAT.get_or_init(|| {
        let mut out = Vec::new();
        for (k, nmax) in [(3, 1), (4, 2), (5, 1), (6, 1)] {
            for n in 1..=nmax {
                if let Ok((i, r)) = xi_pair(k, n) {
                    out.push((*i).clone());
                    out.push((*r).clone());
                }
            }
        }
        out
    })
    .clone()
}

/// Data of the new non-special family at `K`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NewFamilyCurve {
    pub k: i64,
    pub triangle: SlopeTriangle,
    pub m: usize,
    pub lattice_points: usize,
    #[serde(with = "crate::exactmath::rational::serde_q")]
    pub hull_area: Rational,
    pub hull_perimeter: u64,
    pub candidate: NegativeCurveCandidate,
}

/// `(a, b, c, d)` = `(2K-3, 2K-1, 4K^2-16K+11, 2K-5)`.
pub fn new_family_constants(k: i64) -> (i64, i64, i64, i64) {
    (2 * k - 3, 2 * k - 1, 4 * k * k - 16 * k + 11, 2 * k - 5)
}

/// Triangle and vanishing order of the new non-special family.
pub fn new_family_triangle(k: i64) -> Result<(SlopeTriangle, usize), FamilyError> {
    if k < 4 {
        return Err(FamilyError::KOutOfRange(k, 4));
    }
    let (a, b, c, d) = new_family_constants(k);
    // m = ceil(K^2 - 7K/2 + 2)
    let m = (2 * k * k - 7 * k + 4 + 1).div_euclid(2);
    let verts = if k % 2 == 0 {
        [(q(-1, a), qi(0)), (qi(m - k + 2), qi(0)), (qi(m), q((k - 2) * b, 2))]
    } else {
        let f = q(k - 1, 2) + q(1, c);
        [(qi(0), qi(0)), (qi(m - k + 2), qi(0)), (&f * qi(d), &f * qi(a))]
    };
    let tri = SlopeTriangle::from_vertices(verts.map(|(x, y)| QPoint::new(x, y)))
        .ok_or(FamilyError::Check { k, n: 0, what: "degenerate new-family triangle".into() })?;
    Ok((tri, m as usize))
}

pub fn new_nonspecial(k: i64) -> Result<NewFamilyCurve, FamilyError> {
    let (tri, m) = new_family_triangle(k)?;
    let pts = lattice_points(&tri.polygon());
    check(pts.len() == m * (m + 1) / 2 + 1, k, 0, format!("lattice count {}", pts.len()))?;
    let hull = QPolygon::from_lattice(&pts);
    let hull_area = hull.area();
    let hull_perimeter = lattice_perimeter(&hull).map_err(|e| FamilyError::Check { k, n: 0, what: e.to_string() })?;
    check(hull_area == q((m * m) as i64 - 1, 2), k, 0, format!("hull area {hull_area}"))?;
    check(hull_perimeter == m as u64 + 1, k, 0, format!("hull perimeter {hull_perimeter}"))?;
    let candidate = match detect_negative_curve(&tri, m)? {
        Detection::Found(c) => *c,
        other => return Err(FamilyError::Check { k, n: 0, what: format!("no curve: {other:?}") }),
    };
    check(candidate.kernel_dim == 1, k, 0, format!("kernel dimension {}", candidate.kernel_dim))?;
    Ok(NewFamilyCurve { k, triangle: tri, m, lattice_points: pts.len(), hull_area, hull_perimeter, candidate })
}

/// Even `K`: the class `D` with base `b_D = (K-2) - 2(K-1)/(2K-1)` and the
/// curve `C` with height `h_C = (K-2)(2K-1)/2` satisfy
/// `C . D = b_D h_C - (K-2) m`. Returns `(b_D, h_C, C.D)`.
pub fn new_family_even_cd(k: i64) -> Result<(Rational, Rational, Rational), FamilyError> {
    if k < 4 || k % 2 != 0 {
        return Err(FamilyError::KOutOfRange(k, 4));
    }
    let (_, m) = new_family_triangle(k)?;
    let b_d = qi(k - 2) - q(2 * (k - 1), 2 * k - 1);
    let h_c = q((k - 2) * (2 * k - 1), 2);
    let cd = &b_d * &h_c - qi((k - 2) * m as i64);
    Ok((b_d, h_c, cd))
}

/// Odd `K`: the intersection `d(2K-11)/(ac)` of the two curves in the
/// odd-case argument.
pub fn new_family_odd_c1c2(k: i64) -> Result<Rational, FamilyError> {
    if k < 5 || k % 2 == 0 {
        return Err(FamilyError::KOutOfRange(k, 5));
    }
    let (a, _, c, d) = new_family_constants(k);
    Ok(q(d * (2 * k - 11), a * c))
}

/// Closed forms for the Newton polygon of `Upsilon_K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialClosedForms {
    pub perimeter: i64,
    /// Twice the area.
    pub twice_area: i64,
    pub lattice_points: i64,
    pub deficiency: i64,
    pub m: i64,
}

pub fn special_closed_forms(k: i64) -> SpecialClosedForms {
    let n = k - 2;
    let m_ = n * n - 1;
    let m = n * (m_ + n) - 1;
    SpecialClosedForms {
        perimeter: n * (m_ + 1) + 1,
        twice_area: k * m_ * n * n * n - k * n * n - m_ * n + m_ + n,
        lattice_points: (k * m_ * n * n * n - k * n * n + 2 * n + m_ + 3) / 2,
        deficiency: (k - 2) * (k - 3) / 2,
        m,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecialCurve {
    pub k: i64,
    pub poly: LaurentPoly,
    pub weights: WppWeights,
    pub m: usize,
    pub deficiency: i64,
    pub triangle: SlopeTriangle,
    #[serde(with = "crate::exactmath::rational::serde_q")]
    pub self_intersection: Rational,
    pub vertices: Vec<LatticePoint>,
    pub closed_forms: SpecialClosedForms,
    pub irreducibility: Irreducibility,
}

/// Vertices `O, A, B, C, D` of the Newton polygon of `Upsilon_K`.
pub fn special_vertices(k: i64) -> [LatticePoint; 5] {
    let n = k - 2;
    let m = n * n - 1;
    [
        LatticePoint::new(0, 0),
        LatticePoint::new(m * n - 1, 0),
        LatticePoint::new(n * (m + n) - 1, k * n * n - 1),
        LatticePoint::new(m + n - 1, k * n - 1),
        LatticePoint::new(n - 1, n),
    ]
}

/// `(KN, KN^2 - 1, KMN^2 - (M+N))`.
pub fn special_weights(k: i64) -> WppWeights {
    let n = k - 2;
    let m = n * n - 1;
    WppWeights::new((k * n) as u64, (k * n * n - 1) as u64, (k * m * n * n - (m + n)) as u64)
}

/// Triangle with apex `B`, base-right vertex `A`, left slope `KN/(M+N)`.
pub fn special_triangle(k: i64) -> SlopeTriangle {
    let n = k - 2;
    let m = n * n - 1;
    let sp = SlopePair::new(q(k * n, m + n), qi(k) - q(1, n * n));
    let v = special_vertices(k);
    minimal_triangle(&QPolygon::from_lattice(&v), &sp)
}

fn upsilon_memo() -> &'static Mutex<HashMap<i64, Arc<LaurentPoly>>> {
    static MEMO: OnceLock<Mutex<HashMap<i64, Arc<LaurentPoly>>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Upsilon_K` from `x(1-y) Upsilon_K = (xi_{2,K})^N - (xi_{1,K-1})^{M+N}`.
pub fn upsilon(k: i64) -> Result<Arc<LaurentPoly>, FamilyError> {
    if k < 4 {
        return Err(FamilyError::KOutOfRange(k, 4));
    }
    if let Some(p) = upsilon_memo().lock().unwrap().get(&k) {
        return Ok(p.clone());
    }
    let n = k - 2;
    let m = n * n - 1;
    let big = xi_pair(k, 2)?.0.power(n as u32);
    let small = xi_pair(k - 1, 1)?.0.power((m + n) as u32);
    let x_one_minus_y = LaurentPoly::from_i64_terms(&[(1, 0, 1), (1, 1, -1)]);
    let u = (&big - &small)
        .div_exact(&x_one_minus_y)
        .ok_or(FamilyError::Division { k, n: 2, which: "x(1-y)" })?;
    let u = Arc::new(u);
    upsilon_memo().lock().unwrap().insert(k, u.clone());
    Ok(u)
}

pub fn special_upsilon(k: i64) -> Result<SpecialCurve, FamilyError> {
    let poly = (*upsilon(k)?).clone();
    let forms = special_closed_forms(k);
    let m = forms.m as usize;
    let order = poly.vanishing_order().map_err(|e| FamilyError::Check { k, n: 2, what: e.to_string() })?;
    check(order == m, k, 2, format!("order {order}, expected {m}"))?;
    let np = poly.newton_polygon().map_err(|e| FamilyError::Check { k, n: 2, what: e.to_string() })?;
    let mut got = np.lattice_vertices().unwrap_or_default();
    let mut want = special_vertices(k).to_vec();
    got.sort();
    want.sort();
    check(got == want, k, 2, format!("Newton polygon vertices {got:?}"))?;
    let perim = lattice_perimeter(&np).map_err(|e| FamilyError::Check { k, n: 2, what: e.to_string() })?;
    let pick = pick_stats(&np).map_err(|e| FamilyError::Check { k, n: 2, what: e.to_string() })?;
    check(perim as i64 == forms.perimeter, k, 2, format!("perimeter {perim}"))?;
    check(pick.area.clone() * qi(2) == qi(forms.twice_area), k, 2, format!("area {}", pick.area))?;
    let npts = (pick.boundary + pick.interior) as i64;
    check(npts == forms.lattice_points, k, 2, format!("point count {npts}"))?;
    let triangle = special_triangle(k);
    check(within(&poly, &triangle), k, 2, "support outside the triangle")?;
    let tri_pts = lattice_points(&triangle.polygon()).len() as i64;
    let deficiency = (m * (m + 1) / 2) as i64 + 1 - tri_pts;
    check(deficiency == forms.deficiency, k, 2, format!("deficiency {deficiency}"))?;
    let self_intersection = qi(2) * triangle.area() - qi((m * m) as i64);
    let n = k - 2;
    check(self_intersection == q(-(k - 1), k * n), k, 2, format!("C^2 = {self_intersection}"))?;
    let irreducibility = irreducibility_verdict_with(&poly, &[]);
    Ok(SpecialCurve {
        k,
        poly,
        weights: special_weights(k),
        m,
        deficiency,
        triangle,
        self_intersection,
        vertices: special_vertices(k).to_vec(),
        closed_forms: forms,
        irreducibility,
    })
}

/// Edge data of `xi_int_n` and `xi_rat_n` at one index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeRow {
    pub n: usize,
    pub m: i64,
    pub nn: i64,
    pub eps_int: i64,
    pub eps_rat: i64,
    /// Coefficient of `x^M`, the right vertex of `IT`.
    pub delta: i64,
    #[serde(with = "crate::exactmath::rational::serde_q")]
    pub a: Rational,
    #[serde(with = "crate::exactmath::rational::serde_q")]
    pub a_prime: Rational,
    #[serde(with = "crate::exactmath::rational::serde_q")]
    pub b: Rational,
    /// Coefficient of `x` on the base: the `b` of the transposed triangle
    /// `IT(N,M)`.
    #[serde(with = "crate::exactmath::rational::serde_q")]
    pub b_prime: Rational,
    #[serde(with = "crate::exactmath::rational::serde_q")]
    pub c: Rational,
    #[serde(with = "crate::exactmath::rational::serde_q")]
    pub c_prime: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeCoefficients {
    pub k: i64,
    /// Read off the edge restrictions.
    pub rows: Vec<EdgeRow>,
    /// `a_n` and `a'_n` from the coefficient recurrences started at the
    /// values read for `n = 0`.
    #[serde(with = "crate::exactmath::rational::serde_q::vec")]
    pub rec_a: Vec<Rational>,
    #[serde(with = "crate::exactmath::rational::serde_q::vec")]
    pub rec_a_prime: Vec<Rational>,
    /// The same recurrence for `a'_n` started at `a'_0 = -1, c'_0 = 1`.
    #[serde(with = "crate::exactmath::rational::serde_q::vec")]
    pub rec_a_prime_alt: Vec<Rational>,
    /// `|a_{2j}| = |a_{2j-1}| <= j` for every computed pair.
    pub a_bound_holds: bool,
    /// `|a'_{2j+1}| = |a'_{2j}| <= j+1` for every computed pair.
    pub a_prime_bound_holds: bool,
    /// `|b_n| = F_{n-1} + F_{n-2}` for `n >= 2`.
    pub b_formula_holds: bool,
}

/// Right-edge faces (weight `(K,-1)`) and bases (`y = 0`) of the two
/// polynomials at one index.
#[derive(Clone)]
struct EdgeFaces {
    right_int: LaurentPoly,
    right_rat: LaurentPoly,
    base_int: LaurentPoly,
    base_rat: LaurentPoly,
}

fn weight(e: &(i64, i64), w: (i64, i64)) -> i64 {
    e.0 * w.0 + e.1 * w.1
}

fn top_weight(f: &LaurentPoly, w: (i64, i64)) -> Option<i64> {
    f.terms().map(|(e, _)| weight(e, w)).max()
}

/// Initial form of `f + g` from the initial forms of `f` and `g`.
fn face_sum(f: &LaurentPoly, g: &LaurentPoly, w: (i64, i64)) -> Option<LaurentPoly> {
    match (top_weight(f, w), top_weight(g, w)) {
        (Some(a), Some(b)) if a > b => Some(f.clone()),
        (Some(a), Some(b)) if a < b => Some(g.clone()),
        (Some(_), Some(_)) => {
            let s = f + g;
            (!s.is_zero()).then_some(s)
        }
        _ => None,
    }
}

fn faces_step(k: i64, n: usize, prev: &EdgeFaces) -> Result<EdgeFaces, FamilyError> {
    let w = (k, -1);
    let (m, nn) = (fib(k, n + 1), fib(k, n));
    let (ei, er) = epsilon(k, n);
    let err = |which| FamilyError::Division { k, n, which };
    let sign_kn = if (k * nn) % 2 == 0 { 1 } else { -1 };
    let sign_mn = if (m + nn) % 2 == 0 { 1 } else { -1 };
    let mono_int = LaurentPoly::monomial(qi(ei * sign_kn), m + nn, 0);
    let mono_rat = LaurentPoly::monomial(qi(er * sign_mn), m, 0);

    let num = face_sum(&prev.right_rat.power(k as u32), &mono_int, w).ok_or(err("right face cancels"))?;
    let right_int = num.div_exact(&prev.right_int).ok_or(err("right face, integral"))?;
    let base_int = (&prev.base_rat.power(k as u32) + &mono_int)
        .div_exact(&prev.base_int)
        .ok_or(err("base, integral"))?;
    let num = face_sum(&right_int, &mono_rat, w).ok_or(err("right face cancels"))?;
    let right_rat = num.div_exact(&prev.right_rat).ok_or(err("right face, rational"))?;
    let base_rat = (&base_int + &mono_rat).div_exact(&prev.base_rat).ok_or(err("base, rational"))?;
    Ok(EdgeFaces { right_int, right_rat, base_int, base_rat })
}

fn initial_faces() -> EdgeFaces {
    EdgeFaces {
        right_int: LaurentPoly::from_i64_terms(&[(1, 0, -1)]),
        right_rat: LaurentPoly::from_i64_terms(&[(1, 1, -1)]),
        base_int: LaurentPoly::from_i64_terms(&[(0, 0, 1), (1, 0, -1)]),
        base_rat: LaurentPoly::from_i64_terms(&[(0, 0, 1)]),
    }
}

/// Edge faces for `n = 0..=n_max`. For indices whose full polynomials are
/// cheap (`full_upto`), the faces are compared with the polynomials.
fn edge_faces(k: i64, n_max: usize, full_upto: usize) -> Result<Vec<EdgeFaces>, FamilyError> {
    let mut out = vec![initial_faces()];
    for n in 1..=n_max {
        let next = faces_step(k, n, out.last().unwrap())?;
        out.push(next);
    }
    for (n, f) in out.iter().enumerate().take(full_upto.min(n_max) + 1) {
        let (i, r) = xi_pair(k, n)?;
        let base = |p: &LaurentPoly| LaurentPoly::from_terms(p.terms().filter(|(e, _)| e.1 == 0).map(|(e, c)| (e.0, e.1, c.clone())));
        check(i.face((k, -1)) == f.right_int, k, n, "integral right face")?;
        check(r.face((k, -1)) == f.right_rat, k, n, "rational right face")?;
        check(base(&i) == f.base_int, k, n, "integral base")?;
        check(base(&r) == f.base_rat, k, n, "rational base")?;
    }
    Ok(out)
}

/// Default index up to which the face recursion is checked against the
/// full polynomials.
pub fn default_full_check(k: i64) -> usize {
    match k {
        3 => 1,
        4 => 6,
        5 => 4,
        6 => 3,
        _ => 2,
    }
}

pub fn edge_coefficients(k: i64, n_max: usize) -> Result<EdgeCoefficients, FamilyError> {
    edge_coefficients_checked(k, n_max, default_full_check(k))
}

/// As [`edge_coefficients`], comparing faces with full polynomials up to
/// index `full_upto`.
pub fn edge_coefficients_checked(k: i64, n_max: usize, full_upto: usize) -> Result<EdgeCoefficients, FamilyError> {
    if k < 3 {
        return Err(FamilyError::KOutOfRange(k, 3));
    }
    for s in mn_pairs(k, n_max)? {
        if !s.is_admissible() {
            return Err(FamilyError::NotAdmissible { k, n: s.n, m: s.m, nn: s.nn });
        }
    }
    let faces = edge_faces(k, n_max, full_upto)?;
    let rows: Vec<EdgeRow> = faces
        .iter()
        .enumerate()
        .map(|(n, f)| {
            let (m, nn) = (fib(k, n + 1), fib(k, n));
            let (eps_int, eps_rat) = epsilon(k, n);
            let y1 = (m + nn).rem_euclid(k);
            let cx = m - (m + nn - y1) / k;
            let cpx = floor_i64(&(qi(m) - q(m + nn, k)));
            EdgeRow {
                n,
                m,
                nn,
                eps_int,
                eps_rat,
                delta: f.right_int.coeff(m, 0).to_integer().try_into().unwrap_or(0),
                a: f.right_int.coeff(m + 1, k),
                a_prime: f.base_int.coeff(m - 1, 0),
                b: if nn >= 1 { f.right_int.coeff(m + nn - 1, k * (nn - 1)) } else { Rational::zero() },
                b_prime: f.base_int.coeff(1, 0),
                c: f.right_rat.coeff(cx, y1),
                c_prime: f.base_rat.coeff(cpx, 0),
            }
        })
        .collect();
    for r in &rows {
        check(r.delta.abs() == 1, k, r.n, format!("delta = {}", r.delta))?;
        let want = -r.eps_rat * if (r.m + r.nn) % 2 == 0 { 1 } else { -1 };
        if r.n >= 1 {
            check(r.delta == want, k, r.n, "delta sign")?;
        }
    }
    let rhs_on = |n: usize, primed: bool| if primed { n % 2 == 0 } else { n % 2 == 1 };
    let kpow = |c: &Rational| num_traits::pow(c.clone(), k as usize);
    // Both relations on the values read off the edges.
    for n in 1..rows.len() {
        let (r, p) = (&rows[n], &rows[n - 1]);
        for (primed, an, ap, cn, cp) in
            [(false, &r.a, &p.a, &r.c, &p.c), (true, &r.a_prime, &p.a_prime, &r.c_prime, &p.c_prime)]
        {
            let rhs = if rhs_on(n, primed) { kpow(cp) } else { Rational::zero() };
            let lhs = qi(r.delta) * ap + qi(p.delta) * an;
            let tag = if primed { "a'" } else { "a" };
            check(lhs == rhs, k, n, format!("{tag} relation: {lhs} vs {rhs}"))?;
            check(cn * cp == *an, k, n, format!("{tag} product relation"))?;
        }
    }
    // Forward run from initial values; `c_n` is reread when `c_{n-1} = 0`
    // leaves it undetermined.
    let run = |a0: Rational, c0: Rational, primed: bool| -> Vec<Rational> {
        let (mut a, mut c) = (vec![a0], vec![c0]);
        for n in 1..rows.len() {
            let rhs = if rhs_on(n, primed) { kpow(&c[n - 1]) } else { Rational::zero() };
            let an = (rhs - qi(rows[n].delta) * &a[n - 1]) / qi(rows[n - 1].delta);
            let cn = if c[n - 1].is_zero() {
                if primed { rows[n].c_prime.clone() } else { rows[n].c.clone() }
            } else {
                &an / &c[n - 1]
            };
            a.push(an);
            c.push(cn);
        }
        a
    };
    let rec_a = run(rows[0].a.clone(), rows[0].c.clone(), false);
    let rec_a_prime = run(rows[0].a_prime.clone(), rows[0].c_prime.clone(), true);
    let rec_a_prime_alt = run(qi(-1), qi(1), true);
    for r in &rows {
        check(rec_a[r.n] == r.a, k, r.n, format!("a recurrence {} vs {}", rec_a[r.n], r.a))?;
        check(rec_a_prime[r.n] == r.a_prime, k, r.n, format!("a' recurrence {} vs {}", rec_a_prime[r.n], r.a_prime))?;
    }
    let abs = |x: &Rational| x.abs();
    let mut a_bound_holds = true;
    let mut a_prime_bound_holds = true;
    let mut j = 1;
    while 2 * j < rows.len() {
        let (x, y) = (abs(&rows[2 * j].a), abs(&rows[2 * j - 1].a));
        a_bound_holds &= x == y && x <= qi(j as i64);
        j += 1;
    }
    let mut j = 0;
    while 2 * j + 1 < rows.len() {
        let (x, y) = (abs(&rows[2 * j + 1].a_prime), abs(&rows[2 * j].a_prime));
        a_prime_bound_holds &= x == y && x <= qi(j as i64 + 1);
        j += 1;
    }
    let b_formula_holds = rows
        .iter()
        .filter(|r| r.n >= 2)
        .all(|r| abs(&r.b) == qi(fib(k, r.n - 1) + fib(k, r.n - 2)));
    Ok(EdgeCoefficients { k, rows, rec_a, rec_a_prime, rec_a_prime_alt, a_bound_holds, a_prime_bound_holds, b_formula_holds })
}

/// Unimodular affine map `v -> A v + t` carrying the support of `f` onto
/// that of `g` with `coeff_g(A v + t) = lambda coeff_f(v)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Equivalence {
    pub matrix: [[i64; 2]; 2],
    pub translation: (i64, i64),
    #[serde(with = "crate::exactmath::rational::serde_q")]
    pub lambda: Rational,
}

pub fn unimodular_equivalence(f: &LaurentPoly, g: &LaurentPoly) -> Option<Equivalence> {
    if f.len() != g.len() {
        return None;
    }
    let vf = f.newton_polygon().ok()?.lattice_vertices()?;
    let vg = g.newton_polygon().ok()?.lattice_vertices()?;
    let n = vf.len();
    if n != vg.len() || n < 3 {
        return None;
    }
    let sub = |a: LatticePoint, b: LatticePoint| (a.x - b.x, a.y - b.y);
    let e1 = sub(vf[1], vf[0]);
    let e2 = sub(vf[n - 1], vf[0]);
    let det = e1.0 * e2.1 - e1.1 * e2.0;
    for r in 0..n {
        for dir in [1usize, n - 1] {
            let g0 = vg[r];
            let g1 = sub(vg[(r + dir) % n], g0);
            let g2 = sub(vg[(r + n - dir) % n], g0);
            // A [e1 e2] = [g1 g2]
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
            let t = (g0.x - (a[0][0] * vf[0].x + a[0][1] * vf[0].y), g0.y - (a[1][0] * vf[0].x + a[1][1] * vf[0].y));
            let map = |e: &(i64, i64)| (a[0][0] * e.0 + a[0][1] * e.1 + t.0, a[1][0] * e.0 + a[1][1] * e.1 + t.1);
            let (e0, c0) = f.terms().next()?;
            let im = map(e0);
            let cg = g.coeff(im.0, im.1);
            if cg.is_zero() {
                continue;
            }
            let lambda = cg / c0;
            if f.terms().all(|(e, c)| {
                let im = map(e);
                g.coeff(im.0, im.1) == &lambda * c
            }) {
                return Some(Equivalence { matrix: a, translation: t, lambda });
            }
        }
    }
    None
}

/// The curve of `IT_{K-1}(K-3,1)` against that of `RT_K(K-2,1)`.
pub fn first_coincidence(k: i64) -> Result<Option<Equivalence>, FamilyError> {
    if k < 4 {
        return Err(FamilyError::KOutOfRange(k, 4));
    }
    let it = xi(k - 1, 1, XiKind::Int)?;
    let rt = xi(k, 1, XiKind::Rat)?;
    Ok(unimodular_equivalence(&it, &rt))
}

/// `gcd(M, N) = 1` for every admissible family pair.
pub fn coprime_pair(s: &FamilySolution) -> bool {
    gcd_i64(s.m, s.nn) == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::lp;

    #[test]
    fn pairs() {
        let p: Vec<_> = mn_pairs(4, 3).unwrap().iter().map(|s| (s.m, s.nn)).collect();
        assert_eq!(p, vec![(1, 0), (2, 1), (3, 2), (4, 3)]);
        let p: Vec<_> = mn_pairs(5, 3).unwrap().iter().map(|s| (s.m, s.nn)).collect();
        assert_eq!(p, vec![(1, 0), (3, 1), (8, 3), (21, 8)]);
        let k3 = mn_pairs(3, 4).unwrap();
        assert_eq!(k3.iter().filter(|s| s.is_admissible() && s.nn > 0).count(), 1);
        assert!(mn_pairs(2, 1).is_err());
    }

    #[test]
    fn xi_small() {
        assert_eq!(xi(3, 1, XiKind::Int).unwrap(), LaurentPoly::from_i64_terms(&[(0, 0, 1), (1, 0, 1), (1, 1, -3), (2, 3, 1)]));
        assert_eq!(xi(7, 0, XiKind::Rat).unwrap(), LaurentPoly::from_i64_terms(&[(0, 0, 1), (1, 1, -1)]));
        let x = xi(4, 2, XiKind::Int).unwrap();
        assert_eq!(x.vanishing_order().unwrap(), 5);
        let np = x.newton_polygon().unwrap();
        assert_eq!(np.lattice_vertices().unwrap(), vec![lp(0, 0), lp(3, 0), lp(5, 8)]);
    }

    #[test]
    fn triangles() {
        let t = family_triangle(4, 2, 1, TriangleKind::Integral).unwrap();
        assert_eq!(t.slopes, SlopePair::new(q(4, 3), qi(4)));
        let t = family_triangle(4, 3, 2, TriangleKind::Rational).unwrap();
        assert_eq!(t.base_right().x, q(7, 4));
        assert_eq!(t.slopes, SlopePair::new(q(5, 3), qi(4)));
        let t = family_triangle(3, 1, 1, TriangleKind::Integral).unwrap();
        assert_eq!(t.slopes, SlopePair::new(q(3, 2), qi(3)));
        assert!(family_triangle(4, 3, 3, TriangleKind::Integral).is_err());
    }

    #[test]
    fn new_family_small() {
        let c = new_nonspecial(4).unwrap();
        assert_eq!((c.m, c.lattice_points), (4, 11));
        assert_eq!(c.triangle.slopes, SlopePair::new(q(5, 3), q(7, 2)));
        assert_eq!(c.hull_area, q(15, 2));
        assert_eq!(c.hull_perimeter, 5);
        let (t, m) = new_family_triangle(5).unwrap();
        assert_eq!(m, 10);
        assert_eq!(*t.apex(), QPoint::new(q(315, 31), q(441, 31)));
        assert_eq!(t.slopes, SlopePair::new(q(7, 5), q(9, 2)));
        assert_eq!(lattice_points(&t.polygon()).len(), 56);
        let (bd, hc, cd) = new_family_even_cd(4).unwrap();
        assert_eq!((bd, hc, cd), (q(8, 7), qi(7), qi(0)));
    }

    #[test]
    fn special_k4() {
        let s = special_upsilon(4).unwrap();
        assert_eq!(s.weights, WppWeights::new(8, 15, 43));
        assert_eq!((s.m, s.deficiency), (9, 1));
        assert_eq!(s.self_intersection, q(-3, 8));
        assert!(s.irreducibility.is_irreducible());
        assert_eq!(s.closed_forms.lattice_points, 45);
        assert_eq!(s.poly.len(), 43);
    }

    #[test]
    fn coincidence_k4() {
        assert!(first_coincidence(4).unwrap().is_some());
    }

    #[test]
    fn edge_k4() {
        let e = edge_coefficients(4, 4).unwrap();
        assert_eq!(e.rows[0].a, qi(0));
        assert_eq!(e.rows[0].c, qi(-1));
        assert_eq!(e.rows[0].c_prime, qi(1));
        assert!(e.a_bound_holds && e.a_prime_bound_holds);
    }
}
