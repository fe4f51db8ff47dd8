//! Represented Casimir elements and their closed-form eigenvalues.

use std::collections::HashMap;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::catalog::{catalog, Catalog};
use super::RepLabels;
use crate::enveloping::casimir_element;
use crate::error::{Error, Result};
use crate::liealg::{builtin_algebra, Family};
use crate::repops::TensorOp;

pub const SCALARITY_TOL: f64 = 1e-9;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CasimirValue {
    pub family: String,
    pub n: usize,
    pub k: usize,
    /// Scalar the represented Casimir collapses to.
    pub value: f64,
    pub closed_form: f64,
    /// Largest coefficient of the represented Casimir outside its scalar part.
    pub residual: f64,
}

impl CasimirValue {
    pub fn deviation(&self) -> f64 {
        (self.value - self.closed_form).abs()
    }

    pub fn pass(&self) -> bool {
        self.residual <= SCALARITY_TOL && self.deviation() <= SCALARITY_TOL * (1.0 + self.closed_form.abs())
    }
}

/// Tabulated eigenvalue of the k-th cataloged Casimir in terms of the labels,
/// with `λ, μ, α, ε` measured in units of ℏ.
///
/// For the fifth quantum Hamilton Casimir this is `(αμ − κλ)² j(j+1)`. The
/// central element evaluates to `(C₄ + C₂C₃)² j(j+1) = (κλ)² j(j+1)` instead, so
/// the two agree only when `αμ = 0`.
pub fn casimir_closed_form(family: Family, k: usize, labels: &RepLabels) -> Result<f64> {
    let h = labels.hbar;
    let (lam, mu, alpha, eps, kappa) = (labels.lambda / h, labels.mu / h, labels.alpha / h, labels.epsilon / h, labels.kappa);
    let jj = labels.j * (labels.j + 1.0);
    let values: Vec<f64> = match family {
        Family::WeylHeisenberg => vec![lam],
        Family::Hamilton => vec![kappa, kappa * kappa * jj],
        Family::Galilei => vec![mu, 2.0 * mu * eps, mu * mu * jj],
        Family::GalileiConjugate => vec![alpha, 2.0 * alpha * eps, alpha * alpha * jj],
        Family::QuantumHamilton => {
            let c4 = kappa * lam - mu * alpha;
            vec![lam, mu, alpha, c4, c4 * c4 * jj]
        }
        _ => vec![],
    };
    values.get(k.wrapping_sub(1)).copied().ok_or(Error::UnknownCasimir {
        family: family.to_string(),
        n: 3,
        index: k,
    })
}

/// Variable layout of the tensor realization: internal, then base, then time.
struct Layout {
    nvars: usize,
    internal: Vec<usize>,
    base: Vec<usize>,
    time: Option<usize>,
}

fn layout(cat: &Catalog) -> Layout {
    let n = cat.n;
    let has_base = cat.has_base();
    let mut next = 0;
    let mut take = |present: bool, k: usize| -> Vec<usize> {
        if !present {
            return vec![];
        }
        let v = (next..next + k).collect();
        next += k;
        v
    };
    let internal = take(cat.has_internal, n);
    let base = take(has_base, n);
    let time = take(cat.base_time, 1).first().copied();
    Layout { nvars: next, internal, base, time }
}

/// `X̂₁` of every basis generator of the family as a tensor operator.
pub fn tensor_generators(cat: &Catalog) -> Result<Vec<TensorOp>> {
    let lay = layout(cat);
    let dim = cat.spin_dim();
    let alg = builtin_algebra(cat.family, cat.n)?;
    let gens = alg.gens.clone().unwrap_or_default();
    gens.iter()
        .map(|g| {
            let rep = cat.unit(*g).ok_or_else(|| Error::Config(format!("{} missing from catalog", g.label())))?;
            let mut op = TensorOp::zero(lay.nvars, dim);
            if let Some(m) = &rep.spin {
                op = op.add(&TensorOp::matrix(lay.nvars, m.clone()));
            }
            if let Some(d) = &rep.internal {
                op = op.add(&TensorOp::from_diffop(d, &lay.internal, None, lay.nvars, dim)?);
            }
            if let Some(d) = &rep.base {
                op = op.add(&TensorOp::from_diffop(d, &lay.base, lay.time, lay.nvars, dim)?);
            }
            Ok(op)
        })
        .collect()
}

/// Substitutes the represented generators into the cataloged Casimir and checks
/// that the result is a scalar equal to the closed form.
pub fn casimir_eigenvalue(family: Family, n: usize, k: usize, labels: &RepLabels) -> Result<CasimirValue> {
    let element = casimir_element(family, n, k)?;
    let cat = catalog(family, n, labels)?;
    // X ↦ −iX̂₁ is the Lie homomorphism; the top-degree factor i^d restores the
    // convention of substituting X̂₁ into a product-form Casimir.
    let gens: Vec<TensorOp> = tensor_generators(&cat)?.iter().map(|g| g.scale(-I)).collect();
    let lay = layout(&cat);
    let dim = cat.spin_dim();
    let mut memo: HashMap<Vec<u32>, TensorOp> = HashMap::new();
    memo.insert(vec![0; gens.len()], TensorOp::scalar(lay.nvars, dim, 1.0.into()));
    let mut total = TensorOp::zero(lay.nvars, dim);
    for (mono, coef) in element.terms() {
        let op = monomial_op(mono, &gens, &mut memo);
        let c = coef.to_f64().unwrap_or(f64::NAN);
        total = total.add(&op.scale(Complex64::from(c)));
    }
    let (value, off) = total.scale(I.powu(element.degree())).scalar_part();
    let residual = off.max(value.im.abs());
    if residual > SCALARITY_TOL {
        return Err(Error::ScalarityViolation { residual });
    }
    Ok(CasimirValue {
        family: family.to_string(),
        n,
        k,
        value: value.re,
        closed_form: casimir_closed_form(family, k, labels)?,
        residual,
    })
}

/// Product `X_0^{e0} X_1^{e1} ...` with prefixes cached.
fn monomial_op(mono: &[u32], gens: &[TensorOp], memo: &mut HashMap<Vec<u32>, TensorOp>) -> TensorOp {
    if let Some(op) = memo.get(mono) {
        return op.clone();
    }
    let last = mono.iter().rposition(|e| *e > 0).expect("nonzero monomial");
    let mut prefix = mono.to_vec();
    prefix[last] -= 1;
    let op = monomial_op(&prefix, gens, memo).mul(&gens[last]);
    memo.insert(mono.to_vec(), op.clone());
    op
}
