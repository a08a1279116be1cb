//! Dense elimination modulo primes below 2^20.
//!
//! Residues live in `f64` lanes. Row updates `r += f * pivot` are exact as
//! long as the accumulated value stays below 2^53, so reduction is delayed
//! and done per row only when its update budget runs out. The inner loop is
//! a plain axpy and vectorizes.

use std::sync::OnceLock;

pub const PRIME_BOUND: u64 = 1 << 20;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The `count` largest primes below `limit`, in decreasing order.
pub fn primes_below(limit: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = limit - 1;
    while out.len() < count && n > 2 {
        if is_prime(n) {
            out.push(n);
        }
        n -= 1;
    }
    out
}

/// Fixed sequence of primes used by every modular computation in the crate.
pub fn prime(i: usize) -> u64 {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    let v = PRIMES.get_or_init(|| primes_below(PRIME_BOUND, 256));
    v[i]
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

#[inline(always)]
fn axpy_body(dst: &mut [f64], src: &[f64], f: f64) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d += f * *s;
    }
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx512f")]
unsafe fn axpy_avx512(dst: &mut [f64], src: &[f64], f: f64) {
    axpy_body(dst, src, f)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2")]
unsafe fn axpy_avx2(dst: &mut [f64], src: &[f64], f: f64) {
    axpy_body(dst, src, f)
}

#[inline(always)]
fn axpy4_body(dst: &mut [f64], src: [&[f64]; 4], f: [f64; 4]) {
    let n = dst.len();
    let (s0, s1, s2, s3) = (&src[0][..n], &src[1][..n], &src[2][..n], &src[3][..n]);
    for i in 0..n {
        dst[i] += f[0] * s0[i] + f[1] * s1[i] + f[2] * s2[i] + f[3] * s3[i];
    }
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx512f")]
unsafe fn axpy4_avx512(dst: &mut [f64], src: [&[f64]; 4], f: [f64; 4]) {
    axpy4_body(dst, src, f)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2")]
unsafe fn axpy4_avx2(dst: &mut [f64], src: [&[f64]; 4], f: [f64; 4]) {
    axpy4_body(dst, src, f)
}

#[inline]
fn axpy4(dst: &mut [f64], src: [&[f64]; 4], f: [f64; 4]) {
    match simd() {
        #[cfg(target_arch = "x86_64")]
        // SAFETY: feature presence checked at runtime in `simd()`.
        Simd::Avx512 => unsafe { axpy4_avx512(dst, src, f) },
        #[cfg(target_arch = "x86_64")]
        Simd::Avx2 => unsafe { axpy4_avx2(dst, src, f) },
        _ => axpy4_body(dst, src, f),
    }
}

#[derive(Clone, Copy)]
enum Simd {
    Avx512,
    Avx2,
    Plain,
}

fn simd() -> Simd {
    static S: OnceLock<Simd> = OnceLock::new();
    *S.get_or_init(|| {
        #[cfg(target_arch = "x86_64")]
        {
            if std::is_x86_feature_detected!("avx512f") {
                return Simd::Avx512;
            }
            if std::is_x86_feature_detected!("avx2") {
                return Simd::Avx2;
            }
        }
        Simd::Plain
    })
}

#[inline]
fn axpy(dst: &mut [f64], src: &[f64], f: f64) {
    match simd() {
        #[cfg(target_arch = "x86_64")]
        // SAFETY: feature presence checked at runtime in `simd()`.
        Simd::Avx512 => unsafe { axpy_avx512(dst, src, f) },
        #[cfg(target_arch = "x86_64")]
        Simd::Avx2 => unsafe { axpy_avx2(dst, src, f) },
        _ => axpy_body(dst, src, f),
    }
}

/// Residue-class matrix over Z/p, row-major.
#[derive(Clone)]
pub struct ModMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

/// Result of forward elimination: rank and the positions of a nonsingular
/// minor of that size (modulo p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankProfile {
    pub prime: u64,
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
    /// Pivot columns, sorted increasingly.
    pub pivot_cols: Vec<usize>,
}

/// Reduced row echelon form modulo p. Row `k` has a 1 at `pivot_cols[k]`
/// and zeros in every other pivot column.
pub struct ModRref {
    pub prime: u64,
    pub pivot_cols: Vec<usize>,
    pub rows: Vec<Vec<u64>>,
}

struct Reducer {
    p: f64,
    pinv: f64,
    budget: u32,
}

impl Reducer {
    fn new(p: u64) -> Self {
        let pm1 = (p - 1) as f64;
        let budget = ((9007199254740992.0 - p as f64) / (pm1 * pm1)).floor();
        assert!(budget >= 1.0, "prime too large for f64 elimination");
        Reducer {
            p: p as f64,
            pinv: 1.0 / p as f64,
            budget: budget.min(u32::MAX as f64) as u32,
        }
    }

    #[inline]
    fn red(&self, x: f64) -> f64 {
        let mut r = x - (x * self.pinv).floor() * self.p;
        if r < 0.0 {
            r += self.p;
        } else if r >= self.p {
            r -= self.p;
        }
        r
    }

    fn red_row(&self, row: &mut [f64]) {
        for x in row.iter_mut() {
            *x = self.red(*x);
        }
    }
}

const PANEL: usize = 64;
const CHUNK: usize = 1024;

impl ModMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        assert!(p < PRIME_BOUND && p > 2);
        ModMatrix {
            p,
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_fn(p: u64, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut m = Self::zeros(p, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = (f(i, j) % p) as f64;
            }
        }
        m
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = (v % self.p) as f64;
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        Reducer::new(self.p).red(self.data[i * self.cols + j]) as u64
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        let c = self.cols;
        &mut self.data[i * c..(i + 1) * c]
    }

    /// Blocked forward elimination. Returns the rank and the pivot rows and
    /// columns of a minor that is nonzero modulo p; the reduced pivot rows
    /// (normalized, zero in earlier pivot columns) are left in place.
    fn eliminate(&mut self) -> (Vec<(usize, usize)>, Reducer) {
        let red = Reducer::new(self.p);
        let p = self.p;
        let cols = self.cols;
        let mut counts = vec![0u32; self.rows];
        // (pivot column, row index)
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut next = 0usize;
        while next < self.rows && pivots.len() < cols {
            let panel_start = pivots.len();
            while next < self.rows && pivots.len() - panel_start < PANEL {
                let r = next;
                next += 1;
                // apply the pivots of the current panel
                for k in panel_start..pivots.len() {
                    let (c, pr) = pivots[k];
                    let (dst, src) = two_rows(&mut self.data, cols, r, pr);
                    let v = red.red(dst[c]) as u64;
                    if v != 0 {
                        axpy(&mut dst[c..], &src[c..], (p - v) as f64);
                        counts[r] += 1;
                        if counts[r] >= red.budget {
                            red.red_row(dst);
                            counts[r] = 0;
                        }
                    }
                }
                let row = &mut self.data[r * cols..(r + 1) * cols];
                red.red_row(row);
                counts[r] = 0;
                if let Some(c) = row.iter().position(|&x| x != 0.0) {
                    let inv = inv_mod(row[c] as u64, p);
                    for x in row[c..].iter_mut() {
                        *x = ((*x as u64) * inv % p) as f64;
                    }
                    pivots.push((c, r));
                }
            }
            // bulk update of all rows after the panel
            let panel = &pivots[panel_start..];
            if panel.is_empty() {
                continue;
            }
            let b = panel.len();
            let pcols: Vec<usize> = panel.iter().map(|&(c, _)| c).collect();
            let (head, tail) = self.data.split_at_mut(next * cols);
            let prow: Vec<&[f64]> = panel
                .iter()
                .map(|&(_, pr)| &head[pr * cols..(pr + 1) * cols])
                .collect();
            let ntarget = self.rows - next;
            let mut fs = vec![0f64; ntarget * b];
            for (ri, dst) in tail.chunks_mut(cols).enumerate() {
                let r = next + ri;
                if counts[r] as usize + b >= red.budget as usize {
                    red.red_row(dst);
                    counts[r] = 0;
                }
                counts[r] += b as u32;
                // factors for the whole panel, as sequential updates would see them
                let f = &mut fs[ri * b..(ri + 1) * b];
                for k in 0..b {
                    let mut v = dst[pcols[k]];
                    for j in 0..k {
                        v += f[j] * prow[j][pcols[k]];
                    }
                    let v = red.red(v) as u64;
                    f[k] = ((p - v) % p) as f64;
                }
            }
            // column-chunked update keeps the panel's slice of pivot rows in cache
            let first = *pcols.iter().min().unwrap();
            let mut lo = first;
            while lo < cols {
                let hi = (lo + CHUNK).min(cols);
                for (ri, dst) in tail.chunks_mut(cols).enumerate() {
                    let f = &fs[ri * b..(ri + 1) * b];
                    let mut k = 0;
                    while k + 4 <= b {
                        let c0 = (*pcols[k..k + 4].iter().min().unwrap()).max(lo);
                        if c0 < hi {
                            axpy4(
                                &mut dst[c0..hi],
                                [
                                    &prow[k][c0..hi],
                                    &prow[k + 1][c0..hi],
                                    &prow[k + 2][c0..hi],
                                    &prow[k + 3][c0..hi],
                                ],
                                [f[k], f[k + 1], f[k + 2], f[k + 3]],
                            );
                        }
                        k += 4;
                    }
                    while k < b {
                        let c0 = pcols[k].max(lo);
                        if c0 < hi {
                            axpy(&mut dst[c0..hi], &prow[k][c0..hi], f[k]);
                        }
                        k += 1;
                    }
                }
                lo = hi;
            }
        }
        (pivots, red)
    }

    pub fn rank_profile(mut self) -> RankProfile {
        let (pivots, _) = self.eliminate();
        let mut pivot_rows: Vec<usize> = pivots.iter().map(|&(_, r)| r).collect();
        let mut pivot_cols: Vec<usize> = pivots.iter().map(|&(c, _)| c).collect();
        pivot_rows.sort_unstable();
        pivot_cols.sort_unstable();
        RankProfile {
            prime: self.p,
            rank: pivots.len(),
            pivot_rows,
            pivot_cols,
        }
    }

    pub fn rank(self) -> usize {
        self.rank_profile().rank
    }

    /// Reduced row echelon form of the row space.
    pub fn rref(mut self) -> ModRref {
        let (mut pivots, red) = self.eliminate();
        let p = self.p;
        let cols = self.cols;
        pivots.sort_unstable();
        let mut counts = vec![0u32; self.rows];
        for k in (0..pivots.len()).rev() {
            let (ck, rk) = pivots[k];
            red.red_row(&mut self.data[rk * cols..(rk + 1) * cols]);
            counts[rk] = 0;
            for &(_, rj) in pivots.iter().take(k) {
                let (dst, src) = two_rows(&mut self.data, cols, rj, rk);
                let v = red.red(dst[ck]) as u64;
                if v != 0 {
                    axpy(&mut dst[ck..], &src[ck..], (p - v) as f64);
                    counts[rj] += 1;
                    if counts[rj] >= red.budget {
                        red.red_row(dst);
                        counts[rj] = 0;
                    }
                }
            }
        }
        let rows = pivots
            .iter()
            .map(|&(_, r)| {
                self.data[r * cols..(r + 1) * cols]
                    .iter()
                    .map(|&x| red.red(x) as u64)
                    .collect()
            })
            .collect();
        ModRref {
            prime: p,
            pivot_cols: pivots.iter().map(|&(c, _)| c).collect(),
            rows,
        }
    }
}

fn two_rows(data: &mut [f64], cols: usize, dst: usize, src: usize) -> (&mut [f64], &[f64]) {
    debug_assert_ne!(dst, src);
    if dst < src {
        let (a, b) = data.split_at_mut(src * cols);
        (&mut a[dst * cols..(dst + 1) * cols], &b[..cols])
    } else {
        let (a, b) = data.split_at_mut(dst * cols);
        (&mut b[..cols], &a[src * cols..(src + 1) * cols])
    }
}

impl ModRref {
    /// Kernel basis modulo p: one vector per free column, with a 1 in that
    /// column.
    pub fn kernel(&self, cols: usize) -> Vec<Vec<u64>> {
        let p = self.prime;
        let mut is_pivot = vec![false; cols];
        for &c in &self.pivot_cols {
            is_pivot[c] = true;
        }
        (0..cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![0u64; cols];
                v[f] = 1;
                for (k, &c) in self.pivot_cols.iter().enumerate() {
                    v[c] = (p - self.rows[k][f]) % p;
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_prime_and_descending() {
        let ps = primes_below(PRIME_BOUND, 10);
        assert_eq!(ps[0], 1048573);
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(ps.iter().all(|&p| is_prime(p)));
    }

    #[test]
    fn small_ranks() {
        let p = prime(0);
        let id = ModMatrix::from_fn(p, 3, 3, |i, j| (i == j) as u64);
        assert_eq!(id.rank(), 3);
        let z = ModMatrix::zeros(p, 5, 7);
        assert_eq!(z.rank(), 0);
        // rows 1,2,3 ; 2,4,6 ; 1,0,1
        let vals = [[1, 2, 3], [2, 4, 6], [1, 0, 1]];
        let m = ModMatrix::from_fn(p, 3, 3, |i, j| vals[i][j]);
        let prof = m.clone().rank_profile();
        assert_eq!(prof.rank, 2);
        assert_eq!(prof.pivot_rows, vec![0, 2]);
        let rr = m.rref();
        let ker = rr.kernel(3);
        assert_eq!(ker.len(), 1);
        // kernel of [[1,2,3],[1,0,1]] is (-1,-1,1)
        assert_eq!(ker[0], vec![p - 1, p - 1, 1]);
    }

    #[test]
    fn delayed_reduction_is_exact_over_many_updates() {
        // lower-triangular all-ones plus identity forces many updates per row
        let p = prime(1);
        let n = 300;
        let m = ModMatrix::from_fn(p, n, n, |i, j| if j <= i { (i * 7 + j * 13 + 1) as u64 } else { 0 });
        assert_eq!(m.rank(), n);
    }
}
