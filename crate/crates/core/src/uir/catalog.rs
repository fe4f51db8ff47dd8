//! Hermitian generator realizations `X̂` with `[X̂_a, X̂_b] = i c^k_ab X̂_k`.
//!
//! Each generator acts on up to three tensor factors: a spin matrix, an internal
//! operator on the force (or velocity) variable, and a base operator on
//! momentum (or position) and time.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{BaseBasis, InternalBasis, RepLabels};
use crate::error::{Error, Result};
use crate::groups::cover::spin_matrices;
use crate::liealg::{basis_generators, Family, Gen, GenKind};
use crate::repops::{DiffOp, PhasePoly};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Sign in `U(exp(x X)) = exp(i σ_X x X̂)`; makes `X ↦ iσ_X X̂` a Lie homomorphism.
pub fn sigma(kind: GenKind) -> f64 {
    match kind {
        GenKind::J | GenKind::G | GenKind::Q | GenKind::T => -1.0,
        _ => 1.0,
    }
}

/// Generators whose algebra element carries a factor ℏ (`X = ℏ X₁`).
pub fn hbar_scaled(kind: GenKind) -> bool {
    matches!(kind, GenKind::P | GenKind::Q | GenKind::E | GenKind::T | GenKind::I | GenKind::M | GenKind::A)
}

/// Realization of one generator on the three factors; `None` means identity on
/// that factor (and zero generator there).
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorRep {
    pub spin: Option<DMatrix<Complex64>>,
    pub internal: Option<DiffOp>,
    pub base: Option<DiffOp>,
}

impl GeneratorRep {
    fn base(d: DiffOp) -> Self {
        GeneratorRep { spin: None, internal: None, base: Some(d) }
    }

    pub fn scale(&self, s: f64) -> Self {
        GeneratorRep {
            spin: self.spin.as_ref().map(|m| m * Complex64::from(s)),
            internal: self.internal.as_ref().map(|d| d.scale_re(s)),
            base: self.base.as_ref().map(|d| d.scale_re(s)),
        }
    }
}

/// Generator catalog of one family's representation.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub family: Family,
    pub n: usize,
    pub labels: RepLabels,
    /// Internal sector present (force or velocity variable).
    pub has_internal: bool,
    /// Base sector depends on the time variable.
    pub base_time: bool,
    pub entries: BTreeMap<Gen, GeneratorRep>,
}

impl Catalog {
    pub fn spin_dim(&self) -> usize {
        (2.0 * self.labels.j).round() as usize + 1
    }

    /// Whether any generator acts on the base factor.
    pub fn has_base(&self) -> bool {
        self.entries.values().any(|e| e.base.is_some())
    }

    pub fn get(&self, g: Gen) -> Option<&GeneratorRep> {
        self.entries.get(&g)
    }

    /// `X̂₁`: the realization of the ℏ = 1 generator.
    pub fn unit(&self, g: Gen) -> Option<GeneratorRep> {
        let r = self.entries.get(&g)?;
        Some(if hbar_scaled(g.kind()) { r.scale(1.0 / self.labels.hbar) } else { r.clone() })
    }

    /// `Σ σ_X x_X X̂₁` restricted to the internal and base factors.
    pub fn factor_generator(&self, coeffs: &[(Gen, f64)]) -> (DiffOp, DiffOp) {
        let mut int = DiffOp::zero(self.n);
        let mut base = DiffOp::zero(self.n);
        for (g, x) in coeffs {
            if *x == 0.0 {
                continue;
            }
            let Some(rep) = self.unit(*g) else { continue };
            let w = sigma(g.kind()) * x;
            if let Some(d) = &rep.internal {
                int = int.add(&d.scale_re(w));
            }
            if let Some(d) = &rep.base {
                base = base.add(&d.scale_re(w));
            }
        }
        (int, base)
    }
}

/// Orbital part of `J_ij`: `i(x_i ∂_j − x_j ∂_i)`.
fn angular(n: usize, i: usize, j: usize) -> DiffOp {
    DiffOp::angular(n, i, j).scale(I)
}

/// Spin part of `J_ij`: `−ε_ijk S_k` (n = 3).
fn spin_rotation(j: f64, a: usize, b: usize) -> Result<DMatrix<Complex64>> {
    let s = spin_matrices(j)?;
    let (k, sign) = match (a, b) {
        (0, 1) => (2, 1.0),
        (0, 2) => (1, -1.0),
        (1, 2) => (0, 1.0),
        _ => return Err(Error::SpinNeedsThreeDimensions(a.max(b) + 1)),
    };
    Ok(&s[k] * Complex64::from(-sign))
}

fn rotations(n: usize, labels: &RepLabels, internal: bool, base: bool, out: &mut BTreeMap<Gen, GeneratorRep>) -> Result<()> {
    let spin = labels.j > 0.0;
    if spin && n != 3 {
        return Err(Error::SpinNeedsThreeDimensions(n));
    }
    for a in 0..n {
        for b in a + 1..n {
            let rep = GeneratorRep {
                spin: if spin { Some(spin_rotation(labels.j, a, b)?) } else { None },
                internal: internal.then(|| angular(n, a, b)),
                base: base.then(|| angular(n, a, b)),
            };
            out.insert(Gen::J(a, b), rep);
        }
    }
    Ok(())
}

/// Internal sector with `R̂ = k`.
fn internal_sector(n: usize, basis: InternalBasis, k: f64) -> Vec<(Gen, DiffOp)> {
    let mut out = Vec::new();
    for i in 0..n {
        let mult = DiffOp::coordinate(n, i).scale_re(k);
        let der = DiffOp::partial(n, i).scale(I);
        match basis {
            InternalBasis::ForceDiag => {
                out.push((Gen::G(i), mult.scale_re(-1.0)));
                out.push((Gen::F(i), der));
            }
            InternalBasis::VelocityDiag => {
                out.push((Gen::G(i), der));
                out.push((Gen::F(i), mult));
            }
        }
    }
    out.push((Gen::R, DiffOp::constant(n, k.into())));
    out
}

fn merge_internal(out: &mut BTreeMap<Gen, GeneratorRep>, sector: Vec<(Gen, DiffOp)>) {
    for (g, d) in sector {
        out.entry(g).or_insert(GeneratorRep { spin: None, internal: None, base: None }).internal = Some(d);
    }
}

fn merge_base(out: &mut BTreeMap<Gen, GeneratorRep>, sector: Vec<(Gen, DiffOp)>) {
    for (g, d) in sector {
        out.entry(g).or_insert(GeneratorRep { spin: None, internal: None, base: None }).base = Some(d);
    }
}

/// Base sector of the quantum Hamilton representation (ℏ-algebra generators).
fn qha_base(n: usize, l: &RepLabels) -> Vec<(Gen, DiffOp)> {
    let (lam, mu, alpha, hbar) = (l.lambda, l.mu, l.alpha, l.hbar);
    let mut out = Vec::new();
    let t = DiffOp::time(n);
    out.push((Gen::T, t.scale_re(-lam)));
    out.push((Gen::E, DiffOp::partial_t(n).scale(I * hbar)));
    for i in 0..n {
        let x = DiffOp::coordinate(n, i);
        let d = DiffOp::partial(n, i);
        let tx = DiffOp::time_coordinate(n, i);
        let td = DiffOp::time_partial(n, i);
        match l.basis.base {
            BaseBasis::MomentumTime => {
                out.push((Gen::P(i), x.clone()));
                out.push((Gen::Q(i), d.scale(-I * lam * hbar)));
                out.push((Gen::G(i), tx.scale_re(-1.0 / hbar).add(&d.scale(I * mu))));
                out.push((Gen::F(i), td.scale(I * lam).add(&x.scale_re(alpha / (lam * hbar)))));
            }
            BaseBasis::PositionTime => {
                out.push((Gen::Q(i), x.scale_re(lam)));
                out.push((Gen::P(i), d.scale(I * hbar)));
                out.push((Gen::G(i), td.scale(-I).add(&x.scale_re(-mu / hbar))));
                out.push((Gen::F(i), tx.scale_re(-lam / hbar).add(&d.scale(I * alpha / lam))));
            }
        }
    }
    let mut r = PhasePoly::zero(n);
    r.c3 = (lam / hbar).into();
    r.c0 = (mu * alpha / (lam * hbar)).into();
    out.push((Gen::R, DiffOp::multiplier(r)));
    out.push((Gen::I, DiffOp::constant(n, lam.into())));
    out.push((Gen::M, DiffOp::constant(n, mu.into())));
    out.push((Gen::A, DiffOp::constant(n, alpha.into())));
    out
}

/// Galilei base sector on momentum: `P̂ = p̃`, `Ĝ = iμ∂`, `M̂ = μ`, `Ê = ε + p̃²/2μ`.
/// The conjugate subgroup uses the same shape with (F, Q, A) and mass α.
fn galilei_base(n: usize, mass: f64, eps: f64, boost: GenKind, trans: GenKind, center: Gen) -> Vec<(Gen, DiffOp)> {
    let mut out = Vec::new();
    for i in 0..n {
        out.push((Gen::vector(trans, i), DiffOp::coordinate(n, i)));
        out.push((Gen::vector(boost, i), DiffOp::partial(n, i).scale(I * mass)));
    }
    out.push((center, DiffOp::constant(n, mass.into())));
    let mut e = PhasePoly::zero(n);
    e.c0 = eps.into();
    e.c5 = (0.5 / mass).into();
    out.push((Gen::E, DiffOp::multiplier(e)));
    out
}

/// Generator catalog for a family's nondegenerate representation.
///
/// The quantum Hamilton internal sector uses `R̂ = −κ` so that its base and
/// internal contributions to `T² − IR` combine to `κλ − μα`.
pub fn catalog(family: Family, n: usize, labels: &RepLabels) -> Result<Catalog> {
    labels.validate_for(family)?;
    let mut entries = BTreeMap::new();
    let (has_internal, base_time) = match family {
        Family::QuantumHamilton => {
            rotations(n, labels, true, true, &mut entries)?;
            merge_internal(&mut entries, internal_sector(n, labels.basis.internal, -labels.kappa));
            merge_base(&mut entries, qha_base(n, labels));
            (true, true)
        }
        Family::Hamilton => {
            rotations(n, labels, true, false, &mut entries)?;
            merge_internal(&mut entries, internal_sector(n, labels.basis.internal, labels.kappa));
            (true, false)
        }
        Family::Galilei => {
            rotations(n, labels, false, true, &mut entries)?;
            merge_base(&mut entries, galilei_base(n, labels.mu, labels.epsilon, GenKind::G, GenKind::P, Gen::M));
            (false, false)
        }
        Family::GalileiConjugate => {
            rotations(n, labels, false, true, &mut entries)?;
            merge_base(&mut entries, galilei_base(n, labels.alpha, labels.epsilon, GenKind::F, GenKind::Q, Gen::A));
            (false, false)
        }
        Family::WeylHeisenberg => {
            let lam = labels.lambda / labels.hbar;
            for i in 0..n {
                entries.insert(Gen::G(i), GeneratorRep::base(DiffOp::coordinate(n, i).scale_re(lam)));
                entries.insert(Gen::F(i), GeneratorRep::base(DiffOp::partial(n, i).scale(-I)));
            }
            entries.insert(Gen::R, GeneratorRep::base(DiffOp::constant(n, lam.into())));
            (false, false)
        }
        Family::InhomHamilton | Family::Euclidean => {
            return Err(Error::DegenerateLabels(format!("no nondegenerate representation builder for {family}")));
        }
    };
    let expected = basis_generators(family.kinds(), n);
    debug_assert!(expected.iter().all(|g| entries.contains_key(g)));
    Ok(Catalog { family, n, labels: labels.clone(), has_internal, base_time, entries })
}

/// The quantum Hamilton generator catalog (ℏ-algebra operators).
pub fn algebra_rep(labels: &RepLabels, n: usize) -> Result<Catalog> {
    catalog(Family::QuantumHamilton, n, labels)
}
