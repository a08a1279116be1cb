//! Rational matrices, exact rank and kernel.
//!
//! Small systems (at most [`BAREISS_MAX_COLS`] columns) go through
//! fraction-free Gauss-Jordan elimination. Larger ones are ranked modulo
//! several primes; the maximum is a proven lower bound (a minor that is
//! nonzero mod p is nonzero over Z) and is matched by an upper bound from
//! exactly verified kernel vectors, which are recovered by CRT and rational
//! reconstruction.

use super::modular::{prime, ModMatrix, RankProfile};
use super::rational::{qbig, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

pub const BAREISS_MAX_COLS: usize = 200;
const SPARSE_DENSITY: f64 = 0.25;

#[derive(Debug, Clone, PartialEq)]
enum Storage {
    Dense(Vec<Rational>),
    Sparse(BTreeMap<(usize, usize), Rational>),
}

/// Rational matrix. Stored sparsely when fewer than a quarter of the
/// entries are nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    storage: Storage,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            storage: Storage::Sparse(BTreeMap::new()),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = BTreeMap::new();
        for i in 0..n {
            entries.insert((i, i), Rational::one());
        }
        Self::from_entries(n, n, entries)
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        let nnz = rows.iter().flatten().filter(|x| !x.is_zero()).count();
        if r * c > 0 && (nnz as f64) < SPARSE_DENSITY * (r * c) as f64 {
            let mut m = BTreeMap::new();
            for (i, row) in rows.into_iter().enumerate() {
                for (j, x) in row.into_iter().enumerate() {
                    if !x.is_zero() {
                        m.insert((i, j), x);
                    }
                }
            }
            QMatrix { rows: r, cols: c, storage: Storage::Sparse(m) }
        } else {
            QMatrix {
                rows: r,
                cols: c,
                storage: Storage::Dense(rows.into_iter().flatten().collect()),
            }
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn from_entries(rows: usize, cols: usize, entries: BTreeMap<(usize, usize), Rational>) -> Self {
        let entries: BTreeMap<_, _> = entries.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        assert!(entries.keys().all(|&(i, j)| i < rows && j < cols));
        if rows * cols > 0 && (entries.len() as f64) >= SPARSE_DENSITY * (rows * cols) as f64 {
            let mut d = vec![Rational::zero(); rows * cols];
            for ((i, j), v) in entries {
                d[i * cols + j] = v;
            }
            QMatrix { rows, cols, storage: Storage::Dense(d) }
        } else {
            QMatrix { rows, cols, storage: Storage::Sparse(entries) }
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.storage, Storage::Sparse(_))
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        match &self.storage {
            Storage::Dense(d) => d[i * self.cols + j].clone(),
            Storage::Sparse(m) => m.get(&(i, j)).cloned().unwrap_or_else(Rational::zero),
        }
    }

    pub fn row(&self, i: usize) -> Vec<Rational> {
        match &self.storage {
            Storage::Dense(d) => d[i * self.cols..(i + 1) * self.cols].to_vec(),
            Storage::Sparse(m) => {
                let mut r = vec![Rational::zero(); self.cols];
                for ((_, j), v) in m.range((i, 0)..(i + 1, 0)) {
                    r[*j] = v.clone();
                }
                r
            }
        }
    }

    /// Row `i` multiplied by the lcm of its denominators.
    pub fn integer_row(&self, i: usize) -> Vec<BigInt> {
        let row = self.row(i);
        let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![Rational::zero(); self.rows];
        match &self.storage {
            Storage::Dense(d) => {
                for (i, o) in out.iter_mut().enumerate() {
                    for j in 0..self.cols {
                        let a = &d[i * self.cols + j];
                        if !a.is_zero() && !v[j].is_zero() {
                            *o += a * &v[j];
                        }
                    }
                }
            }
            Storage::Sparse(m) => {
                for ((i, j), a) in m {
                    if !v[*j].is_zero() {
                        out[*i] += a * &v[*j];
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> QMatrix {
        let mut e = BTreeMap::new();
        for i in 0..self.rows {
            for (j, x) in self.row(i).into_iter().enumerate() {
                if !x.is_zero() {
                    e.insert((j, i), x);
                }
            }
        }
        QMatrix::from_entries(self.cols, self.rows, e)
    }
}

/// Anything that can be reduced modulo a prime and multiplied exactly with a
/// rational vector. Lets large structured systems skip materialisation.
pub trait ExactSystem {
    fn nrows(&self) -> usize;
    fn ncols(&self) -> usize;
    /// Integer-scaled rows reduced modulo `p` (row scaling does not change
    /// rank or kernel).
    fn modular(&self, p: u64) -> ModMatrix;
    /// Exact test of `M v = 0`.
    fn annihilates(&self, v: &[Rational]) -> bool;
}

impl ExactSystem for QMatrix {
    fn nrows(&self) -> usize {
        self.rows
    }
    fn ncols(&self) -> usize {
        self.cols
    }
    fn modular(&self, p: u64) -> ModMatrix {
        let mut m = ModMatrix::zeros(p, self.rows, self.cols);
        let pb = BigInt::from(p);
        for i in 0..self.rows {
            for (j, x) in self.integer_row(i).into_iter().enumerate() {
                if !x.is_zero() {
                    let r = x.mod_floor(&pb).to_u64().unwrap();
                    m.set(i, j, r);
                }
            }
        }
        m
    }
    fn annihilates(&self, v: &[Rational]) -> bool {
        self.mul_vec(v).iter().all(|x| x.is_zero())
    }
}

/// How a rank value was established.
#[derive(Debug, Clone, PartialEq)]
pub enum RankMethod {
    FractionFree,
    /// Lower bound from a nonsingular minor modulo `profile.prime`, upper
    /// bound from `kernel_vectors` verified kernel vectors (or the matrix
    /// shape when `kernel_vectors == 0`).
    Modular {
        primes_tried: Vec<u64>,
        profile: RankProfile,
        kernel_vectors: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankCertificate {
    pub rank: usize,
    pub method: RankMethod,
}

/// Fraction-free Gauss-Jordan elimination on integer rows. Every pivot ends
/// up equal to the same determinant `d`; other entries in pivot columns are 0.
struct FractionFree {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    det: BigInt,
}

fn fraction_free(mut a: Vec<Vec<BigInt>>, cols: usize) -> FractionFree {
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(i) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(i, r);
        let piv = a[r][c].clone();
        let prow = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c].clone();
            for j in 0..cols {
                let num = &piv * &row[j] - &f * &prow[j];
                let (qt, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "fraction-free division not exact");
                row[j] = qt;
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    FractionFree { rows: a, pivots, det: prev }
}

fn normalize_first_one(v: &mut [Rational]) {
    if let Some(first) = v.iter().find(|x| !x.is_zero()).cloned() {
        for x in v.iter_mut() {
            *x = &*x / &first;
        }
    }
}

fn ff_kernel(ff: &FractionFree, cols: usize) -> Vec<Vec<Rational>> {
    let mut is_pivot = vec![false; cols];
    for &c in &ff.pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = qbig(ff.det.clone());
            for (k, &c) in ff.pivots.iter().enumerate() {
                v[c] = qbig(-ff.rows[k][f].clone());
            }
            normalize_first_one(&mut v);
            v
        })
        .collect()
}

fn integer_rows(m: &QMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows).map(|i| m.integer_row(i)).collect()
}

/// Rank by fraction-free elimination (exact, no size switch).
pub fn rank_fraction_free(m: &QMatrix) -> usize {
    fraction_free(integer_rows(m), m.cols).pivots.len()
}

/// Kernel by fraction-free elimination (exact, no size switch).
pub fn kernel_fraction_free(m: &QMatrix) -> Vec<Vec<Rational>> {
    let ff = fraction_free(integer_rows(m), m.cols);
    ff_kernel(&ff, m.cols)
}

/// Rank modulo one prime of any exact system.
pub fn rank_mod<S: ExactSystem + ?Sized>(s: &S, p: u64) -> RankProfile {
    s.modular(p).rank_profile()
}

/// Certified rank of a rational matrix.
pub fn rank_exact(m: &QMatrix) -> usize {
    rank_certified(m).rank
}

pub fn rank_certified(m: &QMatrix) -> RankCertificate {
    if m.cols <= BAREISS_MAX_COLS {
        return RankCertificate {
            rank: rank_fraction_free(m),
            method: RankMethod::FractionFree,
        };
    }
    rank_certified_modular(m, &[]).expect("modular rank certification failed")
}

/// Right kernel basis, each vector scaled so its first nonzero entry is 1.
pub fn kernel_basis(m: &QMatrix) -> Vec<Vec<Rational>> {
    if m.cols <= BAREISS_MAX_COLS {
        return kernel_fraction_free(m);
    }
    kernel_multimodular(m).expect("multimodular kernel failed").1
}

const MAX_RANK_PRIMES: usize = 3;

/// Modular rank with certificate. `known_kernel` vectors, if supplied, are
/// verified exactly and count toward the upper bound when they are
/// independent modulo a prime. When the bounds do not meet, the kernel is
/// reconstructed exactly.
pub fn rank_certified_modular<S: ExactSystem + ?Sized>(
    s: &S,
    known_kernel: &[Vec<Rational>],
) -> Result<RankCertificate, String> {
    let (rows, cols) = (s.nrows(), s.ncols());
    let mut verified = 0;
    if !known_kernel.is_empty() {
        if known_kernel.iter().all(|v| v.len() == cols && s.annihilates(v))
            && independent_mod(known_kernel, prime(0))
        {
            verified = known_kernel.len();
        } else {
            return Err("supplied kernel vectors are not an independent kernel family".into());
        }
    }
    let upper = rows.min(cols).min(cols - verified);
    let mut primes_tried = Vec::new();
    let mut best: Option<RankProfile> = None;
    for i in 0..MAX_RANK_PRIMES {
        let p = prime(i);
        primes_tried.push(p);
        let prof = rank_mod(s, p);
        if best.as_ref().is_none_or(|b| prof.rank > b.rank) {
            best = Some(prof);
        }
        let lower = best.as_ref().unwrap().rank;
        if lower == upper {
            let kernel_vectors = if lower == rows.min(cols) { 0 } else { verified };
            return Ok(RankCertificate {
                rank: lower,
                method: RankMethod::Modular { primes_tried, profile: best.unwrap(), kernel_vectors },
            });
        }
    }
    let profile = best.unwrap();
    let lower = profile.rank;
    let (rank, ker, used) = kernel_multimodular(s)?;
    if rank != lower && rank + ker.len() != cols {
        return Err("kernel reconstruction inconsistent with modular rank".into());
    }
    primes_tried.extend(used);
    let profile = if rank > lower { rank_mod(s, prime(0)) } else { profile };
    Ok(RankCertificate {
        rank,
        method: RankMethod::Modular { primes_tried, profile, kernel_vectors: ker.len() },
    })
}

fn independent_mod(vs: &[Vec<Rational>], p: u64) -> bool {
    let m = QMatrix::from_rows(vs.to_vec());
    m.modular(p).rank() == vs.len()
}

/// Rational reconstruction of `a` modulo `n`: the unique `r/s` with
/// `|r|, s <= sqrt(n/2)`, if any.
pub fn rational_reconstruct(a: &BigInt, n: &BigInt) -> Option<Rational> {
    let bound = (n >> 1u32).sqrt();
    let (mut r0, mut r1) = (n.clone(), a.mod_floor(n));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let qt = &r0 / &r1;
        let r2 = &r0 - &qt * &r1;
        let s2 = &s0 - &qt * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound {
        return None;
    }
    if !(&r1 - a * &s1).mod_floor(n).is_zero() {
        return None;
    }
    Some(Rational::new(r1, s1))
}

/// Exact kernel through RREF modulo a growing set of primes, CRT, rational
/// reconstruction and exact verification. Returns (rank, kernel, primes).
pub fn kernel_multimodular<S: ExactSystem + ?Sized>(
    s: &S,
) -> Result<(usize, Vec<Vec<Rational>>, Vec<u64>), String> {
    let cols = s.ncols();
    // residues of RREF entries in free columns, per prime
    let mut good: Vec<(u64, Vec<Vec<u64>>)> = Vec::new();
    let mut pivots: Option<Vec<usize>> = None;
    let mut used = Vec::new();
    let mut next_prime = 0;
    let mut target = 2;
    loop {
        while good.len() < target {
            if next_prime >= 250 {
                return Err("ran out of primes".into());
            }
            let p = prime(next_prime);
            next_prime += 1;
            used.push(p);
            let rr = s.modular(p).rref();
            let better = match &pivots {
                None => true,
                Some(pv) => {
                    rr.pivot_cols.len() > pv.len()
                        || (rr.pivot_cols.len() == pv.len() && rr.pivot_cols < *pv)
                }
            };
            if better {
                pivots = Some(rr.pivot_cols.clone());
                good.clear();
            } else if Some(&rr.pivot_cols) != pivots.as_ref() {
                continue;
            }
            good.push((p, rr.rows));
        }
        let pv = pivots.clone().unwrap();
        let rank = pv.len();
        let mut is_pivot = vec![false; cols];
        for &c in &pv {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..cols).filter(|&f| !is_pivot[f]).collect();
        if free.is_empty() {
            return Ok((rank, Vec::new(), used));
        }
        let modulus: BigInt = good.iter().map(|(p, _)| BigInt::from(*p)).product();
        let mut kernel = Vec::with_capacity(free.len());
        let mut ok = true;
        'outer: for &f in &free {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (k, &c) in pv.iter().enumerate() {
                let residues: Vec<(u64, u64)> = good
                    .iter()
                    .map(|(p, rows)| (*p, (*p - rows[k][f]) % *p))
                    .collect();
                let a = crt(&residues);
                match rational_reconstruct(&a, &modulus) {
                    Some(x) => v[c] = x,
                    None => {
                        ok = false;
                        break 'outer;
                    }
                }
            }
            normalize_first_one(&mut v);
            kernel.push(v);
        }
        if ok && kernel.iter().all(|v| s.annihilates(v)) {
            return Ok((rank, kernel, used));
        }
        target *= 2;
    }
}

/// Chinese remaindering of `(prime, residue)` pairs into `[0, prod)`.
pub fn crt(residues: &[(u64, u64)]) -> BigInt {
    let mut x = BigInt::zero();
    let mut n = BigInt::one();
    for &(p, r) in residues {
        let pb = BigInt::from(p);
        // x + n*t = r (mod p)
        let xm = (&x % &pb).to_u64().unwrap();
        let nm = (&n % &pb).to_u64().unwrap();
        let diff = (r + p - xm) % p;
        let t = diff * super::modular::inv_mod(nm, p) % p;
        x += &n * BigInt::from(t);
        n *= pb;
    }
    x
}
