//! Nondegenerate projective unitary irreducible representations of H(n),
//! Ha(n), Ga(n) and QHa(n).
//!
//! Every group representation is the exponential of a hermitian generator
//! catalog (see [`catalog`]) taken factor by factor along
//! `Γ = Υ(q,t,p,ε,ι) A(s,u) Υ̃(v,f,r) R`, so the homomorphism property follows
//! from the algebra and is checked numerically by [`verify`].

pub mod casimir;
pub mod catalog;
pub mod verify;

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{wigner_d, CoverParams, GroupParams, WhElement};
use crate::liealg::{Family, Gen};
use crate::repops::{compose, exponentiate, QuadPhaseOperator, SpaceOnlyOperator};

pub use casimir::{casimir_closed_form, casimir_eigenvalue, CasimirValue, SCALARITY_TOL};
pub use catalog::{algebra_rep, catalog, hbar_scaled, sigma, Catalog, GeneratorRep};
pub use verify::{verify_homomorphism, HomomorphismReport, RepDeviation, HOMOMORPHISM_TOL};

/// Variables of the base factor.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseBasis {
    /// Functions of momentum and time; P and T diagonal.
    #[default]
    MomentumTime,
    /// Functions of position and time; Q and T diagonal.
    PositionTime,
}

/// Variable of the internal (Hamilton) factor.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InternalBasis {
    /// Functions of the force variable; G diagonal.
    #[default]
    ForceDiag,
    /// Functions of the velocity variable; F diagonal.
    VelocityDiag,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisChoice {
    pub base: BaseBasis,
    pub internal: InternalBasis,
}

impl BasisChoice {
    pub const ALL: [BasisChoice; 4] = [
        BasisChoice { base: BaseBasis::MomentumTime, internal: InternalBasis::ForceDiag },
        BasisChoice { base: BaseBasis::MomentumTime, internal: InternalBasis::VelocityDiag },
        BasisChoice { base: BaseBasis::PositionTime, internal: InternalBasis::ForceDiag },
        BasisChoice { base: BaseBasis::PositionTime, internal: InternalBasis::VelocityDiag },
    ];
}

impl fmt::Display for BasisChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = match self.base {
            BaseBasis::MomentumTime => "momentum_time",
            BaseBasis::PositionTime => "position_time",
        };
        let i = match self.internal {
            InternalBasis::ForceDiag => "force_diag",
            InternalBasis::VelocityDiag => "velocity_diag",
        };
        write!(f, "{b}+{i}")
    }
}

impl FromStr for BasisChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BasisChoice::ALL
            .into_iter()
            .find(|b| b.to_string() == s)
            .ok_or_else(|| Error::Config(format!("unknown basis choice `{s}`")))
    }
}

/// Representation labels. `epsilon` is the internal energy of the Galilei factor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RepLabels {
    pub lambda: f64,
    pub mu: f64,
    pub alpha: f64,
    pub kappa: f64,
    pub j: f64,
    pub hbar: f64,
    pub epsilon: f64,
    pub basis: BasisChoice,
}

impl Default for RepLabels {
    fn default() -> Self {
        RepLabels { lambda: 1.0, mu: 1.0, alpha: 1.0, kappa: 1.0, j: 0.5, hbar: 1.0, epsilon: 0.0, basis: BasisChoice::default() }
    }
}

impl RepLabels {
    pub fn with_basis(mut self, basis: BasisChoice) -> Self {
        self.basis = basis;
        self
    }

    pub fn with_spin(mut self, j: f64) -> Self {
        self.j = j;
        self
    }

    pub fn spin_dim(&self) -> usize {
        (2.0 * self.j).round() as usize + 1
    }

    /// Checks ℏ, the spin, and the faithfulness conditions of the family.
    pub fn validate_for(&self, family: Family) -> Result<()> {
        if !(self.hbar > 0.0) {
            return Err(Error::Config(format!("hbar must be positive (got {})", self.hbar)));
        }
        let tj = 2.0 * self.j;
        if !(tj >= 0.0) || (tj - tj.round()).abs() > 1e-12 {
            return Err(Error::InvalidSpin(self.j));
        }
        let need = |ok: bool, what: &str, quotient: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::DegenerateLabels(format!("{what} = 0 is degenerate; use the quotient {quotient}")))
            }
        };
        match family {
            Family::WeylHeisenberg => need(self.lambda != 0.0, "lambda", "H(n)/{R}"),
            Family::Hamilton => need(self.kappa != 0.0, "kappa", "Ha(n)/{R}"),
            Family::Galilei => need(self.mu != 0.0, "mu", "Ga(n)/{M}"),
            Family::GalileiConjugate => need(self.alpha != 0.0, "alpha", "Ga*(n)/{A}"),
            Family::QuantumHamilton => {
                need(self.lambda != 0.0, "lambda", "QHa(n)/{I}")?;
                need(self.kappa != 0.0, "kappa", "QHa(n)/{I, P, Q, E, T, A, M}")?;
                need(self.mu != 0.0, "mu", "QHa(n)/{M}")
            }
            _ => Ok(()),
        }
    }
}

/// A group element with an optional SU(2) lift of its rotation.
#[derive(Clone, Debug)]
pub struct Element {
    pub params: GroupParams,
    pub rbar: Option<Matrix2<Complex64>>,
}

impl From<&GroupParams> for Element {
    fn from(g: &GroupParams) -> Self {
        Element { params: g.clone(), rbar: None }
    }
}

impl From<&CoverParams> for Element {
    fn from(c: &CoverParams) -> Self {
        Element { params: c.params.clone(), rbar: Some(c.rbar) }
    }
}

/// `σ(R) ⊗ ρ(K) ⊗ ρ̃(Γ)`: spin matrix, internal operator and base operator.
#[derive(Clone, Debug, PartialEq)]
pub struct RepValue {
    pub dj: DMatrix<Complex64>,
    pub internal: SpaceOnlyOperator,
    pub base: QuadPhaseOperator,
}

impl RepValue {
    pub fn identity(n: usize, spin_dim: usize) -> Self {
        RepValue {
            dj: DMatrix::identity(spin_dim, spin_dim),
            internal: QuadPhaseOperator::identity(n),
            base: QuadPhaseOperator::identity(n),
        }
    }

    /// Moves the constant internal phase into the base factor.
    pub fn canonical(mut self) -> Self {
        self.base.phase.c0 += self.internal.phase.c0;
        self.internal.phase.c0 = 0.0;
        self
    }

    pub fn compose(&self, o: &RepValue) -> Result<RepValue> {
        Ok(RepValue {
            dj: &self.dj * &o.dj,
            internal: compose(&self.internal, &o.internal)?,
            base: compose(&self.base, &o.base)?,
        }
        .canonical())
    }

    /// Structural unitarity: unitary spin factor, orthogonal substitutions, real phases.
    pub fn unitarity_defect(&self) -> f64 {
        let d = self.dj.nrows();
        let spin = (self.dj.adjoint() * &self.dj - DMatrix::<Complex64>::identity(d, d)).iter().map(|z| z.norm()).fold(0.0, f64::max);
        let rot = |u: &QuadPhaseOperator| crate::groups::orthogonality_defect(&u.rot);
        spin.max(rot(&self.internal)).max(rot(&self.base))
    }
}

fn spin_factor(labels: &RepLabels, el: &Element) -> Result<DMatrix<Complex64>> {
    if labels.j == 0.0 {
        return Ok(DMatrix::identity(1, 1));
    }
    let n = el.params.n();
    if n != 3 {
        return Err(Error::SpinNeedsThreeDimensions(n));
    }
    let rbar = match el.rbar {
        Some(r) => r,
        None => CoverParams::lift(&el.params)?.rbar,
    };
    wigner_d(labels.j, &rbar)
}

/// Value of the catalog's representation at an element, built factor by factor.
pub fn rep_value(cat: &Catalog, el: &Element) -> Result<RepValue> {
    let g = &el.params;
    g.validate()?;
    let n = cat.n;
    if g.n() != n {
        return Err(Error::LengthMismatch { expected: n, got: g.n() });
    }
    let mut upsilon = vec![(Gen::E, g.t), (Gen::T, g.eps), (Gen::I, g.iota)];
    let mut boost = vec![(Gen::R, g.r / 2.0)];
    for i in 0..n {
        upsilon.push((Gen::P(i), g.q[i]));
        upsilon.push((Gen::Q(i), g.p[i]));
        boost.push((Gen::G(i), g.v[i]));
        boost.push((Gen::F(i), g.f[i]));
    }
    let central = [(Gen::M, g.s), (Gen::A, g.u)];
    for (gen, x) in upsilon.iter().chain(boost.iter()).chain(central.iter()) {
        if *x != 0.0 && cat.get(*gen).is_none() {
            return Err(Error::Config(format!("parameter of {} is outside {}", gen.label(), cat.family)));
        }
    }
    let (_, d_ups) = cat.factor_generator(&upsilon);
    let (_, d_a) = cat.factor_generator(&central);
    let (d_int, d_boost) = cat.factor_generator(&boost);
    let rot = QuadPhaseOperator::rotation(g.rot.clone());
    let base = if cat.has_base() {
        compose(
            &compose(&exponentiate(&d_ups)?, &exponentiate(&d_a)?)?,
            &compose(&exponentiate(&d_boost)?, &rot)?,
        )?
    } else {
        QuadPhaseOperator::identity(n)
    };
    let internal = if cat.has_internal {
        compose(&exponentiate(&d_int)?, &rot)?
    } else {
        QuadPhaseOperator::identity(n)
    };
    let dj = if cat.labels.j > 0.0 { spin_factor(&cat.labels, el)? } else { DMatrix::identity(1, 1) };
    Ok(RepValue { dj, internal, base }.canonical())
}

/// `ψ′(x) = e^{iλ(ι + x·a − a·b/2)/ℏ} ψ(x − b)`.
pub fn wh_rep(labels: &RepLabels, g: &WhElement) -> Result<QuadPhaseOperator> {
    labels.validate_for(Family::WeylHeisenberg)?;
    let n = g.a.len();
    if g.b.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: g.b.len() });
    }
    let lam = labels.lambda / labels.hbar;
    let mut u = QuadPhaseOperator::translation(-&g.b);
    u.phase.c0 = lam * (g.iota - 0.5 * g.a.dot(&g.b));
    u.phase.c1 = &g.a * lam;
    Ok(u)
}

/// Hamilton group element K(R, v, f, r) on the internal factor (base is trivial).
pub fn hamilton_rep(labels: &RepLabels, el: impl Into<Element>) -> Result<RepValue> {
    let el = el.into();
    let cat = catalog(Family::Hamilton, el.params.n(), labels)?;
    rep_value(&cat, &restricted(el, Family::Hamilton))
}

/// Galilei element Γ(R, t, v, q, s) on momentum space.
pub fn galilei_rep(labels: &RepLabels, el: impl Into<Element>) -> Result<RepValue> {
    let el = el.into();
    let cat = catalog(Family::Galilei, el.params.n(), labels)?;
    rep_value(&cat, &restricted(el, Family::Galilei))
}

/// Full quantum Hamilton element in the basis selected by `labels.basis`.
pub fn qha_rep(labels: &RepLabels, el: impl Into<Element>) -> Result<RepValue> {
    let el = el.into();
    let cat = catalog(Family::QuantumHamilton, el.params.n(), labels)?;
    rep_value(&cat, &el)
}

fn restricted(mut el: Element, family: Family) -> Element {
    el.params = el.params.restrict(family);
    el
}
