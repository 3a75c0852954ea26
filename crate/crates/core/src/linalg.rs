//! Dense eigenvalue kernels behind the placement solver: eigendecomposition
//! of real (generally unsymmetric) tridiagonal matrices and root extraction
//! from companion matrices of monic polynomials.
//!
//! The tridiagonal path exploits structure where it exists: when all
//! sub/super-diagonal products are positive the matrix is similar to a
//! symmetric one via diagonal scaling and an implicit-shift QL iteration is
//! used; otherwise the matrix is treated as upper Hessenberg and a Francis
//! double-shift QR finds the spectrum. Eigenvectors always come from inverse
//! iteration on the original matrix, so the two eigenvalue paths share one
//! eigenvector code path.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Real tridiagonal matrix stored by diagonals.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    /// Sub-diagonal, length `dim − 1`; entry `k` sits at row `k+1`, col `k`.
    pub sub: Vec<f64>,
    /// Main diagonal, length `dim`.
    pub diag: Vec<f64>,
    /// Super-diagonal, length `dim − 1`; entry `k` sits at row `k`, col `k+1`.
    pub sup: Vec<f64>,
}

impl Tridiagonal {
    pub fn new(sub: Vec<f64>, diag: Vec<f64>, sup: Vec<f64>) -> Result<Tridiagonal> {
        let n = diag.len();
        if n == 0 || sub.len() != n - 1 || sup.len() != n - 1 {
            return Err(Error::InvalidConfig("tridiagonal band lengths inconsistent".into()));
        }
        if !diag.iter().chain(&sub).chain(&sup).all(|v| v.is_finite()) {
            return Err(Error::InvalidConfig("tridiagonal entries must be finite".into()));
        }
        Ok(Tridiagonal { sub, diag, sup })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Row-sum (infinity) norm.
    pub fn norm_inf(&self) -> f64 {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut r = self.diag[i].abs();
                if i > 0 {
                    r += self.sub[i - 1].abs();
                }
                if i + 1 < n {
                    r += self.sup[i].abs();
                }
                r
            })
            .fold(0.0, f64::max)
    }

    /// y = T x
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut y = self.diag[i] * x[i];
                if i > 0 {
                    y += self.sub[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    y += self.sup[i] * x[i + 1];
                }
                y
            })
            .collect()
    }
}

/// Companion matrix of a monic polynomial, stored as the negated normalized
/// coefficient column.
#[derive(Debug, Clone, PartialEq)]
pub struct Companion {
    /// `last_col[i] = −c_i / c_K`, length K.
    pub last_col: Vec<f64>,
}

impl Companion {
    /// Build from ascending coefficients `c_0..c_K`; `c_K` must be safely
    /// normalizable.
    pub fn from_coeffs(coeffs: &[f64]) -> Result<Companion> {
        let k = coeffs.len().checked_sub(1).filter(|&k| k >= 1).ok_or_else(|| {
            Error::InvalidConfig("polynomial degree must be at least 1".into())
        })?;
        let lead = coeffs[k];
        if !lead.is_finite() || lead.abs() < 1e-300 {
            return Err(Error::InvalidConfig("leading coefficient not normalizable".into()));
        }
        Ok(Companion { last_col: coeffs[..k].iter().map(|&c| -c / lead).collect() })
    }

    pub fn dim(&self) -> usize {
        self.last_col.len()
    }

    /// Dense upper-Hessenberg form: ones on the sub-diagonal, the stored
    /// column last.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let k = self.dim();
        let mut a = vec![vec![0.0; k]; k];
        for i in 0..k {
            if i + 1 < k {
                a[i + 1][i] = 1.0;
            }
            a[i][k - 1] = self.last_col[i];
        }
        a
    }
}

/// One real eigenpair: unit-norm vector with a deterministic sign convention
/// (first entry of noticeable magnitude is positive).
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<f64>,
}

const MAX_QL_SWEEPS: usize = 50;
const IMAG_TOL: f64 = 1e-8;

// ---------------------------------------------------------------------------
// Symmetric tridiagonal QL (implicit Wilkinson shift), eigenvalues only
// ---------------------------------------------------------------------------

/// Eigenvalues of a symmetric tridiagonal matrix, ascending. `d` and `e` are
/// consumed as workspace (`e` one shorter than `d`).
pub(crate) fn sym_tridiag_eigenvalues(mut d: Vec<f64>, mut e: Vec<f64>) -> Result<Vec<f64>> {
    let n = d.len();
    if n == 1 {
        return Ok(d);
    }
    e.push(0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_SWEEPS {
                return Err(Error::ConvergenceFailure("symmetric tridiagonal QL"));
            }
            let shift = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let hyp = shift.hypot(1.0);
            let mut g =
                d[m] - d[l] + e[l] / (shift + hyp.copysign(if shift == 0.0 { 1.0 } else { shift }));
            let mut r;
            let (mut s, mut c) = (1.0f64, 1.0f64);
            let mut p = 0.0f64;
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
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(d)
}

// ---------------------------------------------------------------------------
// Balancing + Francis double-shift QR for real upper-Hessenberg matrices
// ---------------------------------------------------------------------------

/// Diagonal-similarity balancing (powers of two). Preserves Hessenberg
/// structure and eigenvalues exactly.
fn balance(a: &mut [Vec<f64>]) {
    let n = a.len();
    const RADIX: f64 = 2.0;
    let sqrdx = RADIX * RADIX;
    loop {
        let mut done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[j][i].abs();
                    r += a[i][j].abs();
                }
            }
            if c != 0.0 && r != 0.0 {
                let mut g = r / RADIX;
                let mut f = 1.0;
                let s = c + r;
                let mut c_acc = c;
                while c_acc < g {
                    f *= RADIX;
                    c_acc *= sqrdx;
                }
                g = r * RADIX;
                while c_acc > g {
                    f /= RADIX;
                    c_acc /= sqrdx;
                }
                if (c_acc + r) / f < 0.95 * s {
                    done = false;
                    let g = 1.0 / f;
                    for j in 0..n {
                        a[i][j] *= g;
                    }
                    for j in 0..n {
                        a[j][i] *= f;
                    }
                }
            }
        }
        if done {
            break;
        }
    }
}

/// Eigenvalues of a real upper-Hessenberg matrix by the shifted QR iteration
/// with deflation. The matrix is balanced first; the input is consumed.
pub fn hessenberg_qr(mut a: Vec<Vec<f64>>) -> Result<Vec<Complex64>> {
    let n = a.len();
    if n == 0 {
        return Ok(vec![]);
    }
    for row in &a {
        if row.len() != n {
            return Err(Error::InvalidConfig("hessenberg matrix must be square".into()));
        }
    }
    balance(&mut a);
    let mut eig = vec![Complex64::new(0.0, 0.0); n];

    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += a[i][j].abs();
        }
    }
    if anorm == 0.0 {
        return Ok(eig);
    }

    let mut nn = n as isize - 1;
    let mut t = 0.0f64;
    let mut total_sweeps = 0usize;
    let sweep_cap = 30 * n;
    while nn >= 0 {
        let mut its = 0;
        loop {
            // Find the active block [l, nn].
            let mut l = nn;
            while l >= 1 {
                let s = a[(l - 1) as usize][(l - 1) as usize].abs() + a[l as usize][l as usize].abs();
                let s = if s == 0.0 { anorm } else { s };
                if a[l as usize][(l - 1) as usize].abs() <= f64::EPSILON * s {
                    a[l as usize][(l - 1) as usize] = 0.0;
                    break;
                }
                l -= 1;
            }
            let x = a[nn as usize][nn as usize];
            if l == nn {
                eig[nn as usize] = Complex64::new(x + t, 0.0);
                nn -= 1;
                break;
            }
            let y = a[(nn - 1) as usize][(nn - 1) as usize];
            let w = a[nn as usize][(nn - 1) as usize] * a[(nn - 1) as usize][nn as usize];
            if l == nn - 1 {
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let z = q.abs().sqrt();
                let x = x + t;
                if q >= 0.0 {
                    let z = p + z.copysign(if p == 0.0 { 1.0 } else { p });
                    let r1 = x + z;
                    let r2 = if z != 0.0 { x - w / z } else { x + z };
                    eig[(nn - 1) as usize] = Complex64::new(r1, 0.0);
                    eig[nn as usize] = Complex64::new(r2, 0.0);
                } else {
                    eig[(nn - 1) as usize] = Complex64::new(x + p, z);
                    eig[nn as usize] = Complex64::new(x + p, -z);
                }
                nn -= 2;
                break;
            }
            total_sweeps += 1;
            if total_sweeps > sweep_cap {
                return Err(Error::ConvergenceFailure("hessenberg QR"));
            }
            let (mut x, mut y, mut w) = (x, y, w);
            if its == 10 || its == 20 {
                // Exceptional shift.
                t += x;
                for i in 0..=nn as usize {
                    a[i][i] -= x;
                }
                let s = a[nn as usize][(nn - 1) as usize].abs()
                    + a[(nn - 1) as usize][(nn - 2) as usize].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            if its > 30 {
                return Err(Error::ConvergenceFailure("hessenberg QR block"));
            }
            // Look for two consecutive small subdiagonal elements.
            let mut m = nn - 2;
            let (mut p, mut q, mut r);
            loop {
                let z = a[m as usize][m as usize];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a[(m + 1) as usize][m as usize] + a[m as usize][(m + 1) as usize];
                q = a[(m + 1) as usize][(m + 1) as usize] - z - rr - ss;
                r = a[(m + 2) as usize][(m + 1) as usize];
                let scale = p.abs() + q.abs() + r.abs();
                p /= scale;
                q /= scale;
                r /= scale;
                if m == l {
                    break;
                }
                let u = a[m as usize][(m - 1) as usize].abs() * (q.abs() + r.abs());
                let v = p.abs()
                    * (a[(m - 1) as usize][(m - 1) as usize].abs()
                        + z.abs()
                        + a[(m + 1) as usize][(m + 1) as usize].abs());
                if u <= f64::EPSILON * v {
                    break;
                }
                m -= 1;
            }
            for i in (m + 2)..=nn {
                a[i as usize][(i - 2) as usize] = 0.0;
                if i > m + 2 {
                    a[i as usize][(i - 3) as usize] = 0.0;
                }
            }
            // Double QR step on rows/columns l..nn.
            for k in m..nn {
                if k != m {
                    p = a[k as usize][(k - 1) as usize];
                    q = a[(k + 1) as usize][(k - 1) as usize];
                    r = if k != nn - 1 { a[(k + 2) as usize][(k - 1) as usize] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = (p * p + q * q + r * r).sqrt().copysign(if p == 0.0 { 1.0 } else { p });
                if s == 0.0 {
                    continue;
                }
                if k == m {
                    if l != m {
                        a[k as usize][(k - 1) as usize] = -a[k as usize][(k - 1) as usize];
                    }
                } else {
                    a[k as usize][(k - 1) as usize] = -s * x;
                }
                p += s;
                x = p / s;
                y = q / s;
                let z = r / s;
                q /= p;
                r /= p;
                for j in k..=nn {
                    p = a[k as usize][j as usize] + q * a[(k + 1) as usize][j as usize];
                    if k != nn - 1 {
                        p += r * a[(k + 2) as usize][j as usize];
                        a[(k + 2) as usize][j as usize] -= p * z;
                    }
                    a[(k + 1) as usize][j as usize] -= p * y;
                    a[k as usize][j as usize] -= p * x;
                }
                let mmin = if nn < k + 3 { nn } else { k + 3 };
                for i in l..=mmin {
                    p = x * a[i as usize][k as usize] + y * a[i as usize][(k + 1) as usize];
                    if k != nn - 1 {
                        p += z * a[i as usize][(k + 2) as usize];
                        a[i as usize][(k + 2) as usize] -= p * r;
                    }
                    a[i as usize][(k + 1) as usize] -= p * q;
                    a[i as usize][k as usize] -= p;
                }
            }
        }
    }
    Ok(eig)
}

// ---------------------------------------------------------------------------
// Companion roots
// ---------------------------------------------------------------------------

/// Horner evaluation of `p` and `p'` at a complex point, ascending
/// coefficients.
fn horner_complex(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Roots of a monic-normalizable polynomial (ascending coefficients
/// `c_0..c_K`) via the eigenvalues of its balanced companion matrix, with a
/// Newton polish per root on the original polynomial.
pub fn companion_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let comp = Companion::from_coeffs(coeffs)?;
    let k = comp.dim();
    if k == 1 {
        return Ok(vec![Complex64::new(comp.last_col[0], 0.0)]);
    }
    let mut roots = hessenberg_qr(comp.to_dense())?;
    let max_coeff = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let tol = 1e-8 * max_coeff;
    for z in &mut roots {
        // One Newton step; clustered roots near interval endpoints lose
        // digits in the bare QR, the polish recovers them.
        for _ in 0..4 {
            let (p, dp) = horner_complex(coeffs, *z);
            if p.norm() <= tol * 1e-4 || dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            *z -= step;
        }
    }
    for z in &roots {
        let (p, _) = horner_complex(coeffs, *z);
        if !(p.norm() <= tol) {
            return Err(Error::ConvergenceFailure("companion root residual"));
        }
    }
    roots.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    Ok(roots)
}

// ---------------------------------------------------------------------------
// Unsymmetric tridiagonal eigendecomposition
// ---------------------------------------------------------------------------

/// Solve `(T − λI) x = b` by Gaussian elimination with partial pivoting;
/// near-singular pivots are replaced by a small multiple of the norm, which
/// is exactly what inverse iteration wants.
fn shifted_tridiag_solve(t: &Tridiagonal, lambda: f64, b: &[f64]) -> Vec<f64> {
    let n = t.dim();
    let tiny = f64::EPSILON * t.norm_inf().max(1.0);
    let mut c0: Vec<f64> = t.diag.iter().map(|&d| d - lambda).collect();
    let mut c1 = t.sup.clone();
    c1.push(0.0);
    let mut c2 = vec![0.0; n];
    let mut rhs = b.to_vec();
    let mut sub = t.sub.clone();
    for k in 0..n - 1 {
        if sub[k].abs() > c0[k].abs() {
            std::mem::swap(&mut c0[k], &mut sub[k]);
            let tmp = c1[k];
            c1[k] = c0[k + 1];
            c0[k + 1] = tmp;
            if k + 2 < n {
                c2[k] = c1[k + 1];
                c1[k + 1] = 0.0;
            }
            rhs.swap(k, k + 1);
        }
        if c0[k].abs() < tiny {
            c0[k] = tiny.copysign(if c0[k] == 0.0 { 1.0 } else { c0[k] });
        }
        let m = sub[k] / c0[k];
        c0[k + 1] -= m * c1[k];
        if k + 2 < n {
            c1[k + 1] -= m * c2[k];
        }
        let (lo, hi) = rhs.split_at_mut(k + 1);
        hi[0] -= m * lo[k];
    }
    if c0[n - 1].abs() < tiny {
        c0[n - 1] = tiny.copysign(if c0[n - 1] == 0.0 { 1.0 } else { c0[n - 1] });
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut v = rhs[i];
        if i + 1 < n {
            v -= c1[i] * x[i + 1];
        }
        if i + 2 < n {
            v -= c2[i] * x[i + 2];
        }
        x[i] = v / c0[i];
    }
    x
}

fn normalize_with_sign(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
    let lead = v.iter().find(|x| x.abs() > 1e-12).copied().unwrap_or(0.0);
    if lead < 0.0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

/// Inverse iteration for the eigenvector of `t` at eigenvalue `lambda`.
/// When the gap to a neighboring eigenvalue is small the iterate is
/// re-orthogonalized against the vectors already found.
fn inverse_iteration(t: &Tridiagonal, lambda: f64, reorth: &[&[f64]]) -> Vec<f64> {
    let n = t.dim();
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    for _ in 0..3 {
        let mut w = shifted_tridiag_solve(t, lambda, &v);
        for prev in reorth {
            let dot: f64 = w.iter().zip(prev.iter()).map(|(a, b)| a * b).sum();
            for (wi, pi) in w.iter_mut().zip(prev.iter()) {
                *wi -= dot * pi;
            }
        }
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            break;
        }
        for x in w.iter_mut() {
            *x /= norm;
        }
        v = w;
    }
    normalize_with_sign(&mut v);
    v
}

/// Inverse-iteration eigenvector of `t` at an externally supplied (accurate)
/// eigenvalue, with the usual normalization and sign convention.
pub(crate) fn eigenvector_at(t: &Tridiagonal, lambda: f64) -> Vec<f64> {
    inverse_iteration(t, lambda, &[])
}

/// Full eigendecomposition of a real tridiagonal matrix with real spectrum,
/// eigenpairs sorted by ascending eigenvalue.
///
/// Symmetrizable matrices (all off-diagonal products positive) go through
/// the implicit QL path; everything else falls back to Hessenberg QR, which
/// reports [`Error::NonRealSpectrum`] if the spectrum is not real to
/// tolerance.
pub fn tridiag_eigen(t: &Tridiagonal) -> Result<Vec<EigenPair>> {
    let n = t.dim();
    let norm = t.norm_inf();
    if n == 1 {
        return Ok(vec![EigenPair { value: t.diag[0], vector: vec![1.0] }]);
    }
    let products: Vec<f64> = t.sub.iter().zip(&t.sup).map(|(a, b)| a * b).collect();
    let values: Vec<f64> = if products.iter().all(|&p| p > 0.0) {
        let off: Vec<f64> = products.iter().map(|p| p.sqrt()).collect();
        sym_tridiag_eigenvalues(t.diag.clone(), off)?
    } else {
        let mut dense = vec![vec![0.0; n]; n];
        for i in 0..n {
            dense[i][i] = t.diag[i];
            if i + 1 < n {
                dense[i][i + 1] = t.sup[i];
                dense[i + 1][i] = t.sub[i];
            }
        }
        let eig = hessenberg_qr(dense)?;
        let max_imag = eig.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        if max_imag > IMAG_TOL * norm.max(1.0) {
            return Err(Error::NonRealSpectrum { max_imag });
        }
        let mut vals: Vec<f64> = eig.iter().map(|z| z.re).collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        vals
    };

    let gap_tol = 1e-8 * norm.max(1.0);
    let mut pairs: Vec<EigenPair> = Vec::with_capacity(n);
    for (i, &lambda) in values.iter().enumerate() {
        let clustered = (i > 0 && (lambda - values[i - 1]).abs() < gap_tol)
            || (i + 1 < n && (values[i + 1] - lambda).abs() < gap_tol);
        let reorth: Vec<&[f64]> = if clustered {
            pairs
                .iter()
                .filter(|p| (p.value - lambda).abs() < gap_tol)
                .map(|p| p.vector.as_slice())
                .collect()
        } else {
            vec![]
        };
        let vector = inverse_iteration(t, lambda, &reorth);
        pairs.push(EigenPair { value: lambda, vector });
    }

    for pair in &pairs {
        let tv = t.mul_vec(&pair.vector);
        let resid = tv
            .iter()
            .zip(&pair.vector)
            .map(|(a, b)| (a - pair.value * b).powi(2))
            .sum::<f64>()
            .sqrt();
        if resid > 1e-10 * norm.max(1.0) {
            return Err(Error::ConvergenceFailure("inverse iteration residual"));
        }
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Sturm-sequence bisection oracle for symmetric tridiagonal
    /// eigenvalues; independent of the QL path.
    fn sturm_eigenvalues(d: &[f64], e: &[f64]) -> Vec<f64> {
        let n = d.len();
        let count_below = |x: f64| -> usize {
            let mut count = 0;
            let mut q = d[0] - x;
            if q < 0.0 {
                count += 1;
            }
            for i in 1..n {
                let denom = if q == 0.0 { 1e-300 } else { q };
                q = d[i] - x - e[i - 1] * e[i - 1] / denom;
                if q < 0.0 {
                    count += 1;
                }
            }
            count
        };
        let radius: f64 = d
            .iter()
            .enumerate()
            .map(|(i, &di)| {
                let mut r = di.abs();
                if i > 0 {
                    r += e[i - 1].abs();
                }
                if i < n - 1 {
                    r += e[i].abs();
                }
                r
            })
            .fold(0.0, f64::max)
            + 1.0;
        (0..n)
            .map(|k| {
                let (mut lo, mut hi) = (-radius, radius);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if count_below(mid) > k {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                0.5 * (lo + hi)
            })
            .collect()
    }

    /// Characteristic polynomial by the Faddeev–LeVerrier recursion.
    fn char_poly(a: &[Vec<f64>]) -> Vec<f64> {
        let n = a.len();
        let matmul = |x: &[Vec<f64>], y: &[Vec<f64>]| -> Vec<Vec<f64>> {
            let mut z = vec![vec![0.0; n]; n];
            for i in 0..n {
                for k in 0..n {
                    let xik = x[i][k];
                    for j in 0..n {
                        z[i][j] += xik * y[k][j];
                    }
                }
            }
            z
        };
        let mut m = a.to_vec();
        let mut coeffs = vec![0.0; n + 1];
        coeffs[n] = 1.0;
        for k in 1..=n {
            let trace: f64 = (0..n).map(|i| m[i][i]).sum();
            let c = -trace / k as f64;
            coeffs[n - k] = c;
            if k < n {
                for i in 0..n {
                    m[i][i] += c;
                }
                m = matmul(a, &m);
            }
        }
        coeffs
    }

    /// Durand–Kerner root finder, independent of companion matrices.
    fn durand_kerner(coeffs: &[f64]) -> Vec<Complex64> {
        let k = coeffs.len() - 1;
        let lead = coeffs[k];
        let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
        let eval = |z: Complex64| -> Complex64 {
            let mut p = Complex64::new(0.0, 0.0);
            for &c in monic.iter().rev() {
                p = p * z + c;
            }
            p
        };
        let seed = Complex64::new(0.4, 0.9);
        let mut roots: Vec<Complex64> = (0..k).map(|i| seed.powu(i as u32 + 1)).collect();
        for _ in 0..500 {
            let mut delta: f64 = 0.0;
            for i in 0..k {
                let mut denom = Complex64::new(1.0, 0.0);
                for j in 0..k {
                    if j != i {
                        denom *= roots[i] - roots[j];
                    }
                }
                let step = eval(roots[i]) / denom;
                roots[i] -= step;
                delta = delta.max(step.norm());
            }
            if delta < 1e-14 {
                break;
            }
        }
        roots
    }

    #[test]
    fn two_by_two_symmetric() {
        let t = Tridiagonal::new(vec![1.0], vec![0.0, 0.0], vec![1.0]).unwrap();
        let pairs = tridiag_eigen(&t).unwrap();
        assert!((pairs[0].value + 1.0).abs() < 1e-14);
        assert!((pairs[1].value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn one_by_one() {
        let t = Tridiagonal::new(vec![], vec![2.0], vec![]).unwrap();
        let pairs = tridiag_eigen(&t).unwrap();
        assert_eq!(pairs[0].value, 2.0);
        assert_eq!(pairs[0].vector, vec![1.0]);
    }

    #[test]
    fn random_symmetrizable_matches_sturm_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let n = 8;
            let diag: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let sub: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(0.2..2.0)).collect();
            let sup: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(0.2..2.0)).collect();
            let t = Tridiagonal::new(sub.clone(), diag.clone(), sup.clone()).unwrap();
            let pairs = tridiag_eigen(&t).unwrap();
            let sym_off: Vec<f64> =
                sub.iter().zip(&sup).map(|(a, b)| (a * b).sqrt()).collect();
            let oracle = sturm_eigenvalues(&diag, &sym_off);
            for (p, o) in pairs.iter().zip(oracle) {
                assert!((p.value - o).abs() < 1e-9, "{} vs {}", p.value, o);
            }
        }
    }

    #[test]
    fn eigenvector_residuals_and_sign_convention() {
        let t = Tridiagonal::new(
            vec![2.0, 1.5, 0.5],
            vec![1.0, -1.0, 0.5, 2.0],
            vec![0.3, 0.7, 1.1],
        )
        .unwrap();
        let pairs = tridiag_eigen(&t).unwrap();
        let norm = t.norm_inf();
        for p in &pairs {
            let tv = t.mul_vec(&p.vector);
            let resid: f64 = tv
                .iter()
                .zip(&p.vector)
                .map(|(a, b)| (a - p.value * b).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(resid <= 1e-10 * norm);
            let lead = p.vector.iter().find(|x| x.abs() > 1e-12).unwrap();
            assert!(*lead > 0.0);
        }
    }

    #[test]
    fn companion_quadratic_and_linear() {
        let roots = companion_roots(&[-1.0, 0.0, 1.0]).unwrap();
        assert!((roots[0].re + 1.0).abs() < 1e-12 && roots[0].im.abs() < 1e-12);
        assert!((roots[1].re - 1.0).abs() < 1e-12);
        let roots = companion_roots(&[0.0, 1.0]).unwrap();
        assert_eq!(roots[0], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn companion_cubic_factored() {
        // (t−1)(t−2)(t−3) = t³ − 6t² + 11t − 6
        let roots = companion_roots(&[-6.0, 11.0, -6.0, 1.0]).unwrap();
        for (r, expect) in roots.iter().zip([1.0, 2.0, 3.0]) {
            assert!((r.re - expect).abs() < 1e-10 && r.im.abs() < 1e-12);
        }
    }

    #[test]
    fn hessenberg_identity_and_diagonal() {
        let eye = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let eig = hessenberg_qr(eye).unwrap();
        for z in eig {
            assert!((z.re - 1.0).abs() < 1e-14 && z.im == 0.0);
        }
        let n = 5;
        let mut diag = vec![vec![0.0; n]; n];
        for i in 0..n {
            diag[i][i] = (i + 1) as f64;
        }
        let mut eig: Vec<f64> = hessenberg_qr(diag).unwrap().iter().map(|z| z.re).collect();
        eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (i, v) in eig.iter().enumerate() {
            assert!((v - (i + 1) as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn hessenberg_random_matches_char_poly_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let n = 6;
            let mut a = vec![vec![0.0; n]; n];
            for i in 0..n {
                for j in i.saturating_sub(1)..n {
                    a[i][j] = rng.gen_range(-2.0..2.0);
                }
            }
            let eig = hessenberg_qr(a.clone()).unwrap();
            let mut oracle = durand_kerner(&char_poly(&a));
            // Conjugate pairs come out with re parts differing at eps level,
            // so lockstep sorting can cross-pair them; match greedily.
            for e in &eig {
                let (idx, dist) = oracle
                    .iter()
                    .enumerate()
                    .map(|(i, o)| (i, (e - o).norm()))
                    .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                    .unwrap();
                assert!(dist < 1e-7, "eigenvalue {e} has no oracle partner (closest {dist:e})");
                oracle.swap_remove(idx);
            }
        }
    }

    #[test]
    fn tridiag_rejects_inconsistent_bands() {
        assert!(Tridiagonal::new(vec![1.0], vec![1.0], vec![]).is_err());
    }
}
