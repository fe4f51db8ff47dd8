//! Seeded homomorphism checks `rep(g1) rep(g2) = rep(g1 g2)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{catalog, rep_value, wh_rep, Element, RepLabels, RepValue};
use crate::error::Result;
use crate::groups::cover::cover_product;
use crate::groups::{product, CoverParams, GroupParams, WhElement};
use crate::liealg::Family;

pub const HOMOMORPHISM_TOL: f64 = 1e-9;

/// Largest deviation per factor.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct RepDeviation {
    pub dj: f64,
    pub internal: f64,
    pub base: f64,
}

impl RepDeviation {
    pub fn between(a: &RepValue, b: &RepValue) -> Self {
        RepDeviation {
            dj: (&a.dj - &b.dj).iter().map(|z| z.norm()).fold(0.0, f64::max),
            internal: a.internal.max_deviation(&b.internal),
            base: a.base.max_deviation(&b.base),
        }
    }

    pub fn max(&self) -> f64 {
        self.dj.max(self.internal).max(self.base)
    }

    fn merge(&mut self, o: RepDeviation) {
        self.dj = self.dj.max(o.dj);
        self.internal = self.internal.max(o.internal);
        self.base = self.base.max(o.base);
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HomomorphismReport {
    pub family: String,
    pub n: usize,
    pub labels: RepLabels,
    pub trials: usize,
    pub seed: u64,
    pub max_dev: RepDeviation,
    pub pass: bool,
    pub notes: Vec<String>,
}

/// Conventions fixed by the homomorphism checks, reported with every run.
pub fn convention_notes(family: Family) -> Vec<String> {
    let mut notes = vec![
        "U(exp(x X)) = exp(i s_X x X^) with s_X = -1 for J, G, Q, T and +1 otherwise".to_string(),
        "rotations act by substitution psi(R^T x); spin factor D^j of the SU(2) lift".to_string(),
    ];
    match family {
        Family::QuantumHamilton => notes.extend([
            "time generator realized as T~ = -lambda t~ so that [T~, E~] = i hbar lambda".to_string(),
            "boost-force factor shifts the momentum argument by +mu v - lambda f t~ (time variable t~, not the parameter t)"
                .to_string(),
            "H(n+1) factor phase: (lambda iota + q.p~ + lambda eps t~ - (lambda/2)(q.p + eps t)) / hbar".to_string(),
            "power generator R~ = (T~^2 + mu alpha)/(lambda hbar) and one-parameter subgroup exp((r/2) R)".to_string(),
            "internal factor uses R^ = -kappa, giving T^2 - IR -> kappa lambda - mu alpha".to_string(),
        ]),
        Family::Hamilton => notes.push("internal phase kappa (r/2 - v.f/2 + v.f~) with argument R^T f~ - f".to_string()),
        Family::Galilei => notes.push("momentum argument shifted by +mu v; phase (mu s + q.p~ + t(eps + p~^2/2mu))/hbar".to_string()),
        Family::WeylHeisenberg => notes.push("phase lambda(iota + x.a - a.b/2)/hbar with argument x - b".to_string()),
        _ => {}
    }
    notes
}

fn random_element(family: Family, n: usize, spin: bool, rng: &mut ChaCha8Rng) -> Element {
    if spin {
        let mut c = CoverParams::random(rng);
        c.params = c.params.restrict(family);
        Element::from(&c)
    } else {
        Element::from(&GroupParams::random(n, rng).restrict(family))
    }
}

fn element_product(a: &Element, b: &Element) -> Result<Element> {
    match (a.rbar, b.rbar) {
        (Some(ra), Some(rb)) => {
            let ab = cover_product(&CoverParams { rbar: ra, params: a.params.clone() }, &CoverParams { rbar: rb, params: b.params.clone() })?;
            Ok(Element::from(&ab))
        }
        _ => Ok(Element::from(&product(&a.params, &b.params)?)),
    }
}

/// Compares `rep(g1)∘rep(g2)` with `rep(g1 g2)` on seeded random pairs.
///
/// Trial `k` draws from the ChaCha stream `k` of `seed`, so results do not
/// depend on evaluation order.
pub fn verify_homomorphism(family: Family, n: usize, labels: &RepLabels, trials: usize, seed: u64) -> Result<HomomorphismReport> {
    let mut dev = RepDeviation::default();
    let spin = labels.j > 0.0;
    if family == Family::WeylHeisenberg {
        labels.validate_for(family)?;
        for k in 0..trials {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let g1 = WhElement::from_params(&GroupParams::random(n, &mut rng));
            let g2 = WhElement::from_params(&GroupParams::random(n, &mut rng));
            let lhs = crate::repops::compose(&wh_rep(labels, &g1)?, &wh_rep(labels, &g2)?)?;
            let rhs = wh_rep(labels, &g1.product(&g2))?;
            dev.base = dev.base.max(lhs.max_deviation(&rhs));
        }
    } else {
        let cat = catalog(family, n, labels)?;
        for k in 0..trials {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let g1 = random_element(family, n, spin, &mut rng);
            let g2 = random_element(family, n, spin, &mut rng);
            let lhs = rep_value(&cat, &g1)?.compose(&rep_value(&cat, &g2)?)?;
            let rhs = rep_value(&cat, &element_product(&g1, &g2)?)?;
            dev.merge(RepDeviation::between(&lhs, &rhs));
        }
    }
    Ok(HomomorphismReport {
        family: family.to_string(),
        n,
        labels: labels.clone(),
        trials,
        seed,
        pass: trials >= 1 && dev.max() <= HOMOMORPHISM_TOL,
        max_dev: dev,
        notes: convention_notes(family),
    })
}
