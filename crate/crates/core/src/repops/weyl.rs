//! Polynomial differential operators with matrix coefficients, used to evaluate
//! represented Casimir elements exactly.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::DiffOp;
use crate::error::{Error, Result};

/// `Σ M_{αβ} ⊗ x^α ∂^β` in normal order (multiplications left of derivatives).
///
/// A term key stores the exponents `α` followed by `β`.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorOp {
    nvars: usize,
    dim: usize,
    terms: BTreeMap<Vec<u8>, DMatrix<Complex64>>,
}

fn falling(n: u8, k: u8) -> f64 {
    (0..k).map(|i| (n - i) as f64).product()
}

fn binomial(n: u8, k: u8) -> f64 {
    falling(n, k) / falling(k, k)
}

impl TensorOp {
    pub fn zero(nvars: usize, dim: usize) -> Self {
        TensorOp { nvars, dim, terms: BTreeMap::new() }
    }

    pub fn matrix(nvars: usize, m: DMatrix<Complex64>) -> Self {
        let mut out = Self::zero(nvars, m.nrows());
        out.add_term(vec![0; 2 * nvars], m);
        out
    }

    pub fn scalar(nvars: usize, dim: usize, c: Complex64) -> Self {
        Self::matrix(nvars, DMatrix::identity(dim, dim) * c)
    }

    fn monomial(nvars: usize, dim: usize, key: Vec<u8>, c: Complex64) -> Self {
        let mut out = Self::zero(nvars, dim);
        out.add_term(key, DMatrix::identity(dim, dim) * c);
        out
    }

    /// Multiplication by variable `i`.
    pub fn var(nvars: usize, dim: usize, i: usize) -> Self {
        let mut key = vec![0; 2 * nvars];
        key[i] = 1;
        Self::monomial(nvars, dim, key, 1.0.into())
    }

    /// `∂/∂(variable i)`.
    pub fn deriv(nvars: usize, dim: usize, i: usize) -> Self {
        let mut key = vec![0; 2 * nvars];
        key[nvars + i] = 1;
        Self::monomial(nvars, dim, key, 1.0.into())
    }

    /// Embeds a [`DiffOp`] whose `x_k` is variable `xs[k]` and whose `t̃` is variable `t`.
    pub fn from_diffop(d: &DiffOp, xs: &[usize], t: Option<usize>, nvars: usize, dim: usize) -> Result<Self> {
        let c = |z: Complex64| Self::scalar(nvars, dim, z);
        let x = |k: usize| Self::var(nvars, dim, xs[k]);
        let dx = |k: usize| Self::deriv(nvars, dim, xs[k]);
        let tv = || {
            t.map(|i| Self::var(nvars, dim, i))
                .ok_or_else(|| Error::UnsupportedGeneratorShape("operator depends on t but no time variable".into()))
        };
        let zero = Complex64::new(0.0, 0.0);
        let m = &d.mult;
        let mut out = c(m.c0);
        let r2 = (0..xs.len()).fold(Self::zero(nvars, dim), |acc, k| acc.add(&x(k).mul(&x(k))));
        out = out.add(&r2.scale(m.c5));
        for k in 0..xs.len() {
            out = out.add(&x(k).scale(m.c1[k]));
            out = out.add(&dx(k).scale(d.dx_const[k]));
            for l in 0..xs.len() {
                if d.dx_linear_x[(k, l)] != zero {
                    out = out.add(&x(l).mul(&dx(k)).scale(d.dx_linear_x[(k, l)]));
                }
            }
            if m.c4[k] != zero {
                out = out.add(&x(k).mul(&tv()?).scale(m.c4[k]));
            }
            if d.dx_linear_t[k] != zero {
                out = out.add(&tv()?.mul(&dx(k)).scale(d.dx_linear_t[k]));
            }
        }
        if m.c2 != zero {
            out = out.add(&tv()?.scale(m.c2));
        }
        if m.c3 != zero {
            out = out.add(&tv()?.mul(&tv()?).scale(m.c3));
        }
        if d.dt != zero {
            let ti = t.ok_or_else(|| Error::UnsupportedGeneratorShape("time derivative without time variable".into()))?;
            out = out.add(&Self::deriv(nvars, dim, ti).scale(d.dt));
        }
        Ok(out)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: Vec<u8>, m: DMatrix<Complex64>) {
        let entry = self.terms.entry(key.clone()).or_insert_with(|| DMatrix::zeros(m.nrows(), m.ncols()));
        *entry += m;
        if entry.iter().all(|z| z.re == 0.0 && z.im == 0.0) {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, m) in &o.terms {
            out.add_term(k.clone(), m.clone());
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = Self::zero(self.nvars, self.dim);
        for (k, m) in &self.terms {
            out.add_term(k.clone(), m * c);
        }
        out
    }

    /// Operator product, reordered with `∂^β x^γ = Σ_k C(β,k) γ!/(γ−k)! x^{γ−k} ∂^{β−k}`.
    pub fn mul(&self, o: &Self) -> Self {
        let nv = self.nvars;
        let mut out = Self::zero(nv, self.dim);
        for (k1, m1) in &self.terms {
            for (k2, m2) in &o.terms {
                let m = m1 * m2;
                let mut stack: Vec<(usize, Vec<u8>, f64)> = vec![(0, vec![0; nv], 1.0)];
                while let Some((i, ks, coef)) = stack.pop() {
                    if i == nv {
                        let mut key = vec![0u8; 2 * nv];
                        for v in 0..nv {
                            key[v] = k1[v] + k2[v] - ks[v];
                            key[nv + v] = k1[nv + v] - ks[v] + k2[nv + v];
                        }
                        out.add_term(key, &m * Complex64::from(coef));
                        continue;
                    }
                    let (beta, gamma) = (k1[nv + i], k2[i]);
                    for k in 0..=beta.min(gamma) {
                        let mut next = ks.clone();
                        next[i] = k;
                        stack.push((i + 1, next, coef * binomial(beta, k) * falling(gamma, k)));
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).add(&o.mul(self).scale((-1.0).into()))
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().flat_map(|m| m.iter().map(|z| z.norm())).fold(0.0, f64::max)
    }

    /// The scalar `c` with `self ≈ c·1`, and the largest deviation from that form.
    pub fn scalar_part(&self) -> (Complex64, f64) {
        let zero_key = vec![0u8; 2 * self.nvars];
        let mut residual: f64 = 0.0;
        let mut c = Complex64::new(0.0, 0.0);
        for (k, m) in &self.terms {
            if *k == zero_key {
                c = m.trace() / Complex64::from(self.dim as f64);
                let off = m - DMatrix::identity(self.dim, self.dim) * c;
                residual = residual.max(off.iter().map(|z| z.norm()).fold(0.0, f64::max));
            } else {
                residual = residual.max(m.iter().map(|z| z.norm()).fold(0.0, f64::max));
            }
        }
        (c, residual)
    }
}
