//! Dense complex linear algebra for the sizes this crate actually meets:
//! 2x2 and 4x4 Hermitian matrices (closed form and cyclic Jacobi), N x N
//! Hermitian eigenvalues for the brute-force entropy oracle (Householder
//! tridiagonalization plus implicit QL), complex LU solves, and the matrix
//! exponential by scaling-and-squaring with a Pade(13) approximant.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerances;

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let n = rows.len();
        let mut m = CMatrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "from_rows requires a square layout");
            m.data[i * n..(i + 1) * n].copy_from_slice(row);
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Maximum column absolute sum.
    pub fn one_norm(&self) -> f64 {
        let mut sums = vec![0.0; self.n];
        for i in 0..self.n {
            for (j, s) in sums.iter_mut().enumerate() {
                *s += self.get(i, j).norm();
            }
        }
        sums.into_iter().fold(0.0, f64::max)
    }

    /// Largest |A[i][j] - conj(A[j][i])| over all pairs.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in i..self.n {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn scale(&mut self, s: Complex64) {
        for z in &mut self.data {
            *z *= s;
        }
    }

    pub fn add_assign_scaled(&mut self, other: &CMatrix, s: Complex64) {
        assert_eq!(self.n, other.n);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * *b;
        }
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= *b;
        }
        out
    }

    /// A += weight * |v><v|
    pub fn add_outer_product(&mut self, v: &[Complex64], weight: f64) {
        assert_eq!(v.len(), self.n);
        for (i, vi) in v.iter().enumerate() {
            let wvi = weight * vi;
            let row = &mut self.data[i * self.n..(i + 1) * self.n];
            for (cell, vj) in row.iter_mut().zip(v) {
                *cell += wvi * vj.conj();
            }
        }
    }

    pub fn mul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            let orow = &mut out.data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let brow = &rhs.data[k * n..(k + 1) * n];
                for (o, b) in orow.iter_mut().zip(brow) {
                    *o += a * *b;
                }
            }
        }
        out
    }

    /// Zero every entry below `threshold` in magnitude. Exponentials of
    /// banded generators carry huge physically-dead tails whose subnormal
    /// values cost microcode assists in the hot kernels; flushing them
    /// also lets the zero-skip in the block products exploit the band.
    pub fn flush_tiny(&mut self, threshold: f64) {
        for z in &mut self.data {
            if z.re.abs() < threshold {
                z.re = 0.0;
            }
            if z.im.abs() < threshold {
                z.im = 0.0;
            }
        }
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.n);
        let n = self.n;
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (i, o) in out.iter_mut().enumerate() {
            let row = &self.data[i * n..(i + 1) * n];
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, b) in row.iter().zip(x) {
                acc += *a * *b;
            }
            *o = acc;
        }
        out
    }
}

/// Eigenvalues (descending) and unitary eigenvector columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

fn check_hermitian(m: &CMatrix) -> Result<()> {
    let defect = m.hermitian_defect();
    let scale = m.max_abs().max(1.0);
    if defect > 1e-12 * scale {
        return Err(Error::NotHermitian {
            max_asymmetry: defect,
        });
    }
    Ok(())
}

/// Full Hermitian eigendecomposition.
///
/// Dispatches to the closed trace/determinant form at dimension 2 and to
/// cyclic complex Jacobi sweeps otherwise. Values come back descending.
pub fn hermitian_eigen(m: &CMatrix) -> Result<EigenDecomposition> {
    check_hermitian(m)?;
    match m.dim() {
        0 => Ok(EigenDecomposition {
            values: vec![],
            vectors: CMatrix::zeros(0),
        }),
        1 => Ok(EigenDecomposition {
            values: vec![m.get(0, 0).re],
            vectors: CMatrix::identity(1),
        }),
        2 => Ok(eigen_2x2(m)),
        _ => jacobi_eigen(m),
    }
}

/// Eigenvalues only, descending. Same dispatch as [`hermitian_eigen`].
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(m)?.values)
}

/// Eigenvalues of a large Hermitian matrix, descending, by Householder
/// reduction to a real symmetric tridiagonal matrix followed by the
/// implicit-shift QL iteration. Values only; this is the route the dense
/// entropy oracle takes, independent of the Jacobi path above.
pub fn hermitian_eigenvalues_tridiagonal(m: &CMatrix) -> Result<Vec<f64>> {
    check_hermitian(m)?;
    let n = m.dim();
    if n == 0 {
        return Ok(vec![]);
    }
    let (mut d, mut e) = tridiagonalize(m);
    tql1(&mut d, &mut e)?;
    d.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(d)
}

fn eigen_2x2(m: &CMatrix) -> EigenDecomposition {
    let a = m.get(0, 0).re;
    let d = m.get(1, 1).re;
    let b = m.get(0, 1);
    let mid = 0.5 * (a + d);
    let half_gap = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    let hi = mid + half_gap;
    let lo = mid - half_gap;
    let mut q = CMatrix::identity(2);
    if b.norm() > 1e-300 && half_gap > 0.0 {
        // (b, lambda - a) is an eigenvector for each eigenvalue.
        for (col, lambda) in [(0usize, hi), (1usize, lo)] {
            let v0 = b;
            let v1 = Complex64::new(lambda - a, 0.0);
            let norm = (v0.norm_sqr() + v1.norm_sqr()).sqrt();
            q.set(0, col, v0 / norm);
            q.set(1, col, v1 / norm);
        }
    } else if a < d {
        // already diagonal; order columns to match descending values
        q = CMatrix::zeros(2);
        q.set(0, 1, Complex64::new(1.0, 0.0));
        q.set(1, 0, Complex64::new(1.0, 0.0));
    }
    EigenDecomposition {
        values: vec![hi, lo],
        vectors: q,
    }
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += 2.0 * a.get(i, j).norm_sqr();
        }
    }
    s.sqrt()
}

/// Cyclic complex Jacobi with eigenvector accumulation.
fn jacobi_eigen(m: &CMatrix) -> Result<EigenDecomposition> {
    let n = m.dim();
    let mut a = m.clone();
    let mut q = CMatrix::identity(n);
    let target = tolerances::JACOBI_OFF_NORM * a.frobenius_norm().max(1.0);
    let mut off = off_diagonal_norm(&a);
    let mut sweeps = 0;
    while off > target {
        if sweeps >= tolerances::JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                residual: off,
            });
        }
        // small entries are skipped; they cannot dominate the off-norm
        let skip = off / (n as f64 * 10.0);
        for p in 0..n {
            for r in (p + 1)..n {
                rotate(&mut a, &mut q, p, r, skip);
            }
        }
        off = off_diagonal_norm(&a);
        sweeps += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = CMatrix::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            vectors.set(row, new_col, q.get(row, old_col));
        }
    }
    Ok(EigenDecomposition { values, vectors })
}

/// One complex Jacobi rotation zeroing A[p][r].
fn rotate(a: &mut CMatrix, q: &mut CMatrix, p: usize, r: usize, skip: f64) {
    let apr = a.get(p, r);
    let abs = apr.norm();
    if abs <= skip || abs == 0.0 {
        return;
    }
    let phase = apr / abs;
    let app = a.get(p, p).re;
    let arr = a.get(r, r).re;
    let tau = (arr - app) / (2.0 * abs);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let n = a.dim();
    // columns p and r of A (rows follow by Hermitian symmetry)
    for k in 0..n {
        if k == p || k == r {
            continue;
        }
        let akp = a.get(k, p);
        let akr = a.get(k, r);
        let new_kp = c * akp - s * phase.conj() * akr;
        let new_kr = s * phase * akp + c * akr;
        a.set(k, p, new_kp);
        a.set(p, k, new_kp.conj());
        a.set(k, r, new_kr);
        a.set(r, k, new_kr.conj());
    }
    let shift = t * abs;
    a.set(p, p, Complex64::new(app - shift, 0.0));
    a.set(r, r, Complex64::new(arr + shift, 0.0));
    a.set(p, r, Complex64::new(0.0, 0.0));
    a.set(r, p, Complex64::new(0.0, 0.0));
    for k in 0..n {
        let qkp = q.get(k, p);
        let qkr = q.get(k, r);
        q.set(k, p, c * qkp - s * phase.conj() * qkr);
        q.set(k, r, s * phase * qkp + c * qkr);
    }
}

/// Householder reduction of a Hermitian matrix to a real symmetric
/// tridiagonal (diagonal, |subdiagonal|); eigenvalues are unchanged by the
/// phase similarity that absorbs the subdiagonal arguments.
fn tridiagonalize(m: &CMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = m.dim();
    let mut a = m.clone();
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    let mut p = vec![Complex64::new(0.0, 0.0); n];
    for col in 0..n.saturating_sub(2) {
        let lo = col + 1;
        let mut xnorm2 = 0.0;
        for k in lo..n {
            xnorm2 += a.get(k, col).norm_sqr();
        }
        let x0 = a.get(lo, col);
        let rest = xnorm2 - x0.norm_sqr();
        if rest <= 0.0 || xnorm2 < 1e-300 {
            continue;
        }
        let xnorm = xnorm2.sqrt();
        let sigma = if x0.norm() > 0.0 {
            (x0 / x0.norm()) * xnorm
        } else {
            Complex64::new(xnorm, 0.0)
        };
        v[lo] = x0 + sigma;
        let mut vnorm2 = v[lo].norm_sqr();
        for k in (lo + 1)..n {
            v[k] = a.get(k, col);
            vnorm2 += v[k].norm_sqr();
        }
        if vnorm2 < 1e-300 {
            continue;
        }
        let tau = 2.0 / vnorm2;
        // p = tau * A22 * v over the trailing block
        for k in lo..n {
            let mut acc = Complex64::new(0.0, 0.0);
            let row = a.row(k);
            for j in lo..n {
                acc += row[j] * v[j];
            }
            p[k] = tau * acc;
        }
        let mut vdotp = 0.0;
        for k in lo..n {
            vdotp += (v[k].conj() * p[k]).re;
        }
        let kappa = 0.5 * tau * vdotp;
        for k in lo..n {
            p[k] -= kappa * v[k];
        }
        // A22 <- A22 - v w+ - w v+
        for k in lo..n {
            let vk = v[k];
            let wk = p[k];
            for j in lo..n {
                let delta = vk * p[j].conj() + wk * v[j].conj();
                let cur = a.get(k, j);
                a.set(k, j, cur - delta);
            }
        }
        let new_sub = -sigma;
        a.set(lo, col, new_sub);
        a.set(col, lo, new_sub.conj());
        for k in (lo + 1)..n {
            a.set(k, col, Complex64::new(0.0, 0.0));
            a.set(col, k, Complex64::new(0.0, 0.0));
        }
    }
    let d: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    let mut e = vec![0.0; n];
    for i in 0..n - 1 {
        e[i] = a.get(i + 1, i).norm();
    }
    (d, e)
}

/// Implicit-shift QL on a real symmetric tridiagonal matrix, values only.
/// `e[i]` couples `d[i]` and `d[i+1]`; `e[n-1]` is ignored.
fn tql1(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    // deflation floor: rank-deficient inputs put clusters of near-zero
    // eigenvalues next to near-zero couplings, where a purely relative
    // test never fires
    let anorm = d
        .iter()
        .zip(e.iter())
        .map(|(di, ei)| di.abs() + ei.abs())
        .fold(0.0, f64::max);
    let floor = f64::EPSILON * anorm.max(f64::MIN_POSITIVE);
    for l in 0..n {
        let mut iter = 0usize;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd + floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(Error::NoConvergence {
                    sweeps: iter,
                    residual: e[l].abs(),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.abs().copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                f = (d[i] - g) * s + 2.0 * c * b;
                p = s * f;
                d[i + 1] = g + p;
                g = c * f - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Solve A X = B by LU with partial pivoting (A consumed as workspace).
pub fn solve(mut a: CMatrix, mut b: CMatrix) -> Result<CMatrix> {
    let n = a.dim();
    assert_eq!(b.dim(), n);
    for col in 0..n {
        let mut pivot = col;
        let mut best = a.get(col, col).norm();
        for r in (col + 1)..n {
            let mag = a.get(r, col).norm();
            if mag > best {
                best = mag;
                pivot = r;
            }
        }
        if best < 1e-300 {
            return Err(Error::InvalidSpectrum {
                reason: "singular matrix in LU solve".into(),
            });
        }
        if pivot != col {
            for j in 0..n {
                let tmp = a.get(col, j);
                a.set(col, j, a.get(pivot, j));
                a.set(pivot, j, tmp);
                let tmp = b.get(col, j);
                b.set(col, j, b.get(pivot, j));
                b.set(pivot, j, tmp);
            }
        }
        let inv = Complex64::new(1.0, 0.0) / a.get(col, col);
        for r in (col + 1)..n {
            let factor = a.get(r, col) * inv;
            if factor.norm() == 0.0 {
                continue;
            }
            for j in (col + 1)..n {
                let v = a.get(r, j) - factor * a.get(col, j);
                a.set(r, j, v);
            }
            a.set(r, col, Complex64::new(0.0, 0.0));
            for j in 0..n {
                let v = b.get(r, j) - factor * b.get(col, j);
                b.set(r, j, v);
            }
        }
    }
    // back substitution
    for col in (0..n).rev() {
        let inv = Complex64::new(1.0, 0.0) / a.get(col, col);
        for j in 0..n {
            let mut acc = b.get(col, j);
            for k in (col + 1)..n {
                acc -= a.get(col, k) * b.get(k, j);
            }
            b.set(col, j, acc * inv);
        }
    }
    Ok(b)
}

/// Pade(13) coefficients for the scaling-and-squaring matrix exponential.
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// theta_13 threshold for the Pade(13) approximant.
const THETA13: f64 = 5.371920351148152;

/// Matrix exponential exp(A) by scaling-and-squaring with Pade(13).
pub fn expm(a: &CMatrix) -> Result<CMatrix> {
    let n = a.dim();
    if n == 0 {
        return Ok(CMatrix::zeros(0));
    }
    let norm = a.one_norm();
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as u32
    } else {
        0
    };
    let scale = Complex64::new(0.5f64.powi(squarings as i32), 0.0);
    let mut a_s = a.clone();
    a_s.scale(scale);

    let ident = CMatrix::identity(n);
    let a2 = a_s.mul(&a_s);
    let a4 = a2.mul(&a2);
    let a6 = a2.mul(&a4);

    let c = |k: usize| Complex64::new(PADE13[k], 0.0);

    // U = A (A6 (b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I)
    let mut w1 = CMatrix::zeros(n);
    w1.add_assign_scaled(&a6, c(13));
    w1.add_assign_scaled(&a4, c(11));
    w1.add_assign_scaled(&a2, c(9));
    let mut w = a6.mul(&w1);
    w.add_assign_scaled(&a6, c(7));
    w.add_assign_scaled(&a4, c(5));
    w.add_assign_scaled(&a2, c(3));
    w.add_assign_scaled(&ident, c(1));
    let u = a_s.mul(&w);

    // V = A6 (b12 A6 + b10 A4 + b8 A2) + b6 A6 + b4 A4 + b2 A2 + b0 I
    let mut z1 = CMatrix::zeros(n);
    z1.add_assign_scaled(&a6, c(12));
    z1.add_assign_scaled(&a4, c(10));
    z1.add_assign_scaled(&a2, c(8));
    let mut v = a6.mul(&z1);
    v.add_assign_scaled(&a6, c(6));
    v.add_assign_scaled(&a4, c(4));
    v.add_assign_scaled(&a2, c(2));
    v.add_assign_scaled(&ident, c(0));

    // r13 = (V - U)^{-1} (V + U)
    let mut vmu = v.clone();
    vmu.add_assign_scaled(&u, Complex64::new(-1.0, 0.0));
    let mut vpu = v;
    vpu.add_assign_scaled(&u, Complex64::new(1.0, 0.0));
    let mut r = solve(vmu, vpu)?;
    for _ in 0..squarings {
        r = r.mul(&r);
    }
    Ok(r)
}

/// Exact trace distance (1/2)||a - b||_1 via the tridiagonal eigenvalue
/// route on the Hermitian difference.
pub fn trace_distance(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    let delta = a.sub(b);
    let eigs = hermitian_eigenvalues_tridiagonal(&delta)?;
    Ok(0.5 * eigs.iter().map(|x| x.abs()).sum::<f64>())
}

/// Cheap rigorous upper bound on the trace distance:
/// ||X||_1 <= sqrt(n) ||X||_F.
pub fn trace_distance_bound(a: &CMatrix, b: &CMatrix) -> f64 {
    let delta = a.sub(b);
    0.5 * (delta.dim() as f64).sqrt() * delta.frobenius_norm()
}

/// Square complex matrix stored as separate real/imaginary panels, for
/// fast repeated products against wide blocks. This is the hot kernel of
/// the Wigner phase-space walk.
#[derive(Debug, Clone)]
pub struct SplitMatrix {
    n: usize,
    re: Vec<f64>,
    im: Vec<f64>,
    /// Purely real matrices (real displacement generators) skip half the
    /// panel products.
    real_only: bool,
}

/// Rectangular complex block (rows x cols, row-major) in split storage.
#[derive(Debug, Clone)]
pub struct SplitBlock {
    pub rows: usize,
    pub cols: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl SplitBlock {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SplitBlock {
            rows,
            cols,
            re: vec![0.0; rows * cols],
            im: vec![0.0; rows * cols],
        }
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, v: Complex64) {
        self.re[row * self.cols + col] = v.re;
        self.im[row * self.cols + col] = v.im;
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        Complex64::new(self.re[row * self.cols + col], self.im[row * self.cols + col])
    }

    /// Zero every entry below `threshold` in magnitude (see
    /// [`CMatrix::flush_tiny`]).
    pub fn flush_tiny(&mut self, threshold: f64) {
        for x in self.re.iter_mut().chain(self.im.iter_mut()) {
            if x.abs() < threshold {
                *x = 0.0;
            }
        }
    }

    /// Copy column `src` of `other` into column `dst` of `self`.
    pub fn copy_column_from(&mut self, dst: usize, other: &SplitBlock, src: usize) {
        assert_eq!(self.rows, other.rows);
        for r in 0..self.rows {
            self.re[r * self.cols + dst] = other.re[r * other.cols + src];
            self.im[r * self.cols + dst] = other.im[r * other.cols + src];
        }
    }
}

impl SplitMatrix {
    pub fn from_cmatrix(m: &CMatrix) -> Self {
        let n = m.dim();
        let mut re = vec![0.0; n * n];
        let mut im = vec![0.0; n * n];
        for (k, z) in m.data().iter().enumerate() {
            re[k] = z.re;
            im[k] = z.im;
        }
        let real_only = im.iter().all(|&x| x == 0.0);
        SplitMatrix {
            n,
            re,
            im,
            real_only,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// out = self * b, column-chunked so each panel chunk stays resident
    /// in L2 across the row sweep; the inner loops are contiguous
    /// multiply-add streams the compiler turns into vector FMAs.
    pub fn apply_block(&self, b: &SplitBlock, out: &mut SplitBlock) {
        let n = self.n;
        assert_eq!(b.rows, n);
        assert_eq!(out.rows, n);
        assert_eq!(b.cols, out.cols);
        let cols = b.cols;
        out.re.fill(0.0);
        out.im.fill(0.0);
        const CHUNK: usize = 128;
        let mut j0 = 0;
        while j0 < cols {
            let jw = CHUNK.min(cols - j0);
            for i in 0..n {
                let row = i * cols + j0;
                let (ore, oim) = (&mut out.re[row..row + jw], &mut out.im[row..row + jw]);
                if self.real_only {
                    for k in 0..n {
                        let ar = self.re[i * n + k];
                        if ar == 0.0 {
                            continue;
                        }
                        let src = k * cols + j0;
                        let bre = &b.re[src..src + jw];
                        let bim = &b.im[src..src + jw];
                        for j in 0..jw {
                            ore[j] += ar * bre[j];
                            oim[j] += ar * bim[j];
                        }
                    }
                } else {
                    for k in 0..n {
                        let ar = self.re[i * n + k];
                        let ai = self.im[i * n + k];
                        if ar == 0.0 && ai == 0.0 {
                            continue;
                        }
                        let src = k * cols + j0;
                        let bre = &b.re[src..src + jw];
                        let bim = &b.im[src..src + jw];
                        for j in 0..jw {
                            ore[j] += ar * bre[j] - ai * bim[j];
                            oim[j] += ar * bim[j] + ai * bre[j];
                        }
                    }
                }
            }
            j0 += jw;
        }
    }
}

/// out = A * B for a rectangular complex block B (row-major).
pub fn mat_times_block(a: &CMatrix, b: &[Complex64], cols: usize, out: &mut [Complex64]) {
    let n = a.dim();
    assert_eq!(b.len(), n * cols);
    assert_eq!(out.len(), n * cols);
    let split_a = SplitMatrix::from_cmatrix(a);
    let mut bs = SplitBlock::zeros(n, cols);
    for (k, z) in b.iter().enumerate() {
        bs.re[k] = z.re;
        bs.im[k] = z.im;
    }
    let mut os = SplitBlock::zeros(n, cols);
    split_a.apply_block(&bs, &mut os);
    for (k, o) in out.iter_mut().enumerate() {
        *o = Complex64::new(os.re[k], os.im[k]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_hermitian(n: usize, seed: u64) -> CMatrix {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, c(rng.gen_range(-1.0..1.0), 0.0));
            for j in (i + 1)..n {
                let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m.set(i, j, z);
                m.set(j, i, z.conj());
            }
        }
        m
    }

    fn reconstruction_residual(m: &CMatrix, eig: &EigenDecomposition) -> f64 {
        let n = m.dim();
        let mut rebuilt = CMatrix::zeros(n);
        for (k, &lambda) in eig.values.iter().enumerate() {
            let col: Vec<Complex64> = (0..n).map(|i| eig.vectors.get(i, k)).collect();
            rebuilt.add_outer_product(&col, lambda);
        }
        m.sub(&rebuilt).max_abs()
    }

    #[test]
    fn eigen_2x2_projector() {
        // 0.5*sigma_x + 0.5*I has eigenvalues 1 and 0
        let m = CMatrix::from_rows(&[
            vec![c(0.5, 0.0), c(0.5, 0.0)],
            vec![c(0.5, 0.0), c(0.5, 0.0)],
        ]);
        let eig = hermitian_eigen(&m).unwrap();
        assert!((eig.values[0] - 1.0).abs() < 1e-14);
        assert!(eig.values[1].abs() < 1e-14);
        assert!(reconstruction_residual(&m, &eig) < 1e-13);
    }

    #[test]
    fn eigen_2x2_diagonal() {
        let m = CMatrix::from_rows(&[
            vec![c(0.5, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.5, 0.0)],
        ]);
        let eig = hermitian_eigen(&m).unwrap();
        assert_eq!(eig.values, vec![0.5, 0.5]);
    }

    #[test]
    fn jacobi_matches_tridiagonal_route() {
        for seed in 0..20u64 {
            for &n in &[3usize, 4, 6, 9] {
                let m = random_hermitian(n, 1000 * seed + n as u64);
                let jac = hermitian_eigen(&m).unwrap();
                let tri = hermitian_eigenvalues_tridiagonal(&m).unwrap();
                for (a, b) in jac.values.iter().zip(&tri) {
                    assert!(
                        (a - b).abs() < 1e-11,
                        "n={n} seed={seed}: {a} vs {b}"
                    );
                }
                assert!(reconstruction_residual(&m, &jac) < 1e-12);
            }
        }
    }

    #[test]
    fn jacobi_rejects_non_hermitian() {
        let mut m = random_hermitian(4, 7);
        m.set(1, 2, c(3.0, 1.0));
        assert!(matches!(
            hermitian_eigen(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn tridiagonal_route_large_trace_sum() {
        let m = random_hermitian(64, 42);
        let eigs = hermitian_eigenvalues_tridiagonal(&m).unwrap();
        let trace: f64 = (0..64).map(|i| m.get(i, i).re).sum();
        let sum: f64 = eigs.iter().sum();
        assert!((trace - sum).abs() < 1e-10);
        // descending order
        for w in eigs.windows(2) {
            assert!(w[0] >= w[1]);
        }
    }

    #[test]
    fn solve_roundtrip() {
        let a = random_hermitian(8, 3);
        let x = random_hermitian(8, 4);
        let b = a.mul(&x);
        let solved = solve(a.clone(), b).unwrap();
        assert!(solved.sub(&x).max_abs() < 1e-10);
    }

    #[test]
    fn expm_diagonal() {
        let mut m = CMatrix::zeros(3);
        m.set(0, 0, c(0.0, 1.0));
        m.set(1, 1, c(-0.5, 0.0));
        m.set(2, 2, c(0.0, 0.0));
        let e = expm(&m).unwrap();
        assert!((e.get(0, 0) - c(0.0, 1.0).exp()).norm() < 1e-14);
        assert!((e.get(1, 1) - c(-0.5, 0.0).exp()).norm() < 1e-14);
        assert!((e.get(2, 2) - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn expm_skew_hermitian_is_unitary() {
        // K = i H with H Hermitian; exp(K) must be unitary
        let h = random_hermitian(12, 9);
        let mut k = CMatrix::zeros(12);
        for i in 0..12 {
            for j in 0..12 {
                k.set(i, j, c(0.0, 1.0) * h.get(i, j));
            }
        }
        let u = expm(&k).unwrap();
        // U U+ = I
        let mut udag = CMatrix::zeros(12);
        for i in 0..12 {
            for j in 0..12 {
                udag.set(i, j, u.get(j, i).conj());
            }
        }
        let prod = u.mul(&udag);
        assert!(prod.sub(&CMatrix::identity(12)).max_abs() < 1e-12);
    }

    #[test]
    fn expm_large_norm_squares() {
        // 2x2 with norm above theta_13 exercises the squaring phase
        let mut m = CMatrix::zeros(2);
        m.set(0, 1, c(9.0, 0.0));
        m.set(1, 0, c(-9.0, 0.0));
        let e = expm(&m).unwrap();
        // exp of 9*(rotation generator) = rotation by 9 radians
        assert!((e.get(0, 0).re - 9.0f64.cos()).abs() < 1e-12);
        assert!((e.get(0, 1).re - 9.0f64.sin()).abs() < 1e-12);
    }

    #[test]
    fn block_product_matches_matvec() {
        let a = random_hermitian(16, 5);
        let x = random_hermitian(16, 6);
        let cols = 16;
        let mut out = vec![c(0.0, 0.0); 16 * cols];
        mat_times_block(&a, x.data(), cols, &mut out);
        let full = a.mul(&x);
        for (got, want) in out.iter().zip(full.data()) {
            assert!((got - want).norm() < 1e-12);
        }
    }

    #[test]
    fn trace_distance_of_shifted_projectors() {
        // distance between |0><0| and |1><1| is 1
        let mut p0 = CMatrix::zeros(3);
        p0.set(0, 0, c(1.0, 0.0));
        let mut p1 = CMatrix::zeros(3);
        p1.set(1, 1, c(1.0, 0.0));
        let d = trace_distance(&p0, &p1).unwrap();
        assert!((d - 1.0).abs() < 1e-12);
        assert!(trace_distance_bound(&p0, &p1) >= d - 1e-15);
    }
}
