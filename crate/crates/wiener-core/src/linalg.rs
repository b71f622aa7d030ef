//! Small dense eigen-solvers: implicit-shift QL on symmetric tridiagonal
//! matrices, Householder reduction of dense symmetric matrices, and a power
//! iteration for the largest eigenvalue magnitude of large sparse operators.

use crate::error::{Error, Result};

const QL_MAX_SWEEPS: usize = 60;

/// Eigen-decomposition of a symmetric tridiagonal matrix.
///
/// `diag` has length n, `off[i]` couples rows i and i+1 (length n − 1). The
/// eigenvalues come back unsorted; when `first_components` is set the first
/// component of every normalized eigenvector is returned alongside.
pub fn tridiagonal_eigen(
    diag: &[f64],
    off: &[f64],
    first_components: bool,
    tol: f64,
) -> Result<(Vec<f64>, Option<Vec<f64>>)> {
    let n = diag.len();
    assert!(
        n == 0 || off.len() + 1 == n,
        "off-diagonal length must be n - 1"
    );
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(0.0);
    let mut z: Vec<f64> = if first_components {
        let mut row = vec![0.0; n];
        if n > 0 {
            row[0] = 1.0;
        }
        row
    } else {
        Vec::new()
    };

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= tol * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > QL_MAX_SWEEPS {
                return Err(Error::NonConvergence {
                    iterations: sweeps,
                    residual: e[l].abs(),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
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
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if first_components {
                    let f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok((d, first_components.then_some(z)))
}

/// Householder reduction of a dense symmetric matrix (row-major, n × n) to
/// tridiagonal form. Returns (diagonal, off-diagonal).
pub fn tridiagonalize(mut a: Vec<f64>, n: usize) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(a.len(), n * n);
    let idx = |i: usize, j: usize| i * n + j;
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = (0..=l).map(|k| a[idx(i, k)].abs()).sum();
            if scale == 0.0 {
                e[i] = a[idx(i, l)];
            } else {
                for k in 0..=l {
                    a[idx(i, k)] /= scale;
                    h += a[idx(i, k)] * a[idx(i, k)];
                }
                let f = a[idx(i, l)];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[idx(i, l)] = f - g;
                let mut f = 0.0;
                for j in 0..=l {
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[idx(j, k)] * a[idx(i, k)];
                    }
                    for k in j + 1..=l {
                        g += a[idx(k, j)] * a[idx(i, k)];
                    }
                    e[j] = g / h;
                    f += e[j] * a[idx(i, j)];
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    let f = a[idx(i, j)];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[idx(j, k)] -= f * e[k] + g * a[idx(i, k)];
                    }
                }
            }
        } else {
            e[i] = a[idx(i, l)];
        }
        d[i] = h;
    }
    for (i, di) in d.iter_mut().enumerate() {
        *di = a[idx(i, i)];
    }
    let off = if n > 0 { e[1..].to_vec() } else { Vec::new() };
    (d, off)
}

/// All eigenvalues of a dense symmetric matrix, ascending.
pub fn symmetric_eigenvalues(a: Vec<f64>, n: usize, tol: f64) -> Result<Vec<f64>> {
    let (d, e) = tridiagonalize(a, n);
    let (mut ev, _) = tridiagonal_eigen(&d, &e, false, tol)?;
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// Largest |λ| of a symmetric operator given only through `matvec`, by power
/// iteration on its square with a Rayleigh-quotient stopping rule.
pub fn power_max_abs<F>(n: usize, matvec: F, tol: f64, max_iter: usize) -> Result<f64>
where
    F: Fn(&[f64], &mut [f64]),
{
    let mut x: Vec<f64> = (0..n)
        .map(|i| 1.0 + 0.5 * ((i as f64) * 0.754_877).sin())
        .collect();
    let norm = |v: &[f64]| v.iter().map(|t| t * t).sum::<f64>().sqrt();
    let nx = norm(&x);
    x.iter_mut().for_each(|t| *t /= nx);
    let mut y = vec![0.0; n];
    let mut w = vec![0.0; n];
    let mut estimate = 0.0;
    for it in 1..=max_iter {
        matvec(&x, &mut y);
        let lam = norm(&y);
        matvec(&y, &mut w);
        let nw = norm(&w);
        if nw == 0.0 {
            return Ok(0.0);
        }
        for (xi, wi) in x.iter_mut().zip(&w) {
            *xi = wi / nw;
        }
        if it > 1 && (lam - estimate).abs() <= tol * lam {
            return Ok(lam);
        }
        estimate = lam;
    }
    Err(Error::NonConvergence {
        iterations: max_iter,
        residual: estimate,
    })
}
