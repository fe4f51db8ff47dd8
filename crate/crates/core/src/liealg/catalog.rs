//! Kernels of the homomorphisms of H(n), Ha(n), Ga(n) and QHa(n) with their
//! expected quotient algebras.

use serde::Serialize;

use super::{
    basis_generators, builtin_algebra, jacobi_check, Family, Gen, GenKind, LieAlgebraSpec, SubspaceSpec,
};
use crate::error::Result;

/// Classes of nonzero brackets of the quantum Hamilton algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[allow(non_camel_case_types)]
pub enum BracketClass {
    JJ,
    JV,
    GF_R,
    GQ_T,
    GE_P,
    FP_T,
    FE_Q,
    RE_T,
    PQ_I,
    ET_I,
    GP_M,
    FQ_A,
}

impl BracketClass {
    pub const ALL: [BracketClass; 12] = [
        BracketClass::JJ,
        BracketClass::JV,
        BracketClass::GF_R,
        BracketClass::GQ_T,
        BracketClass::GE_P,
        BracketClass::FP_T,
        BracketClass::FE_Q,
        BracketClass::RE_T,
        BracketClass::PQ_I,
        BracketClass::ET_I,
        BracketClass::GP_M,
        BracketClass::FQ_A,
    ];

    /// Class of the (unordered) pair; `None` when the pair commutes.
    pub fn of(a: Gen, b: Gen) -> Option<BracketClass> {
        use GenKind::*;
        let (x, y) = if a.kind() <= b.kind() { (a.kind(), b.kind()) } else { (b.kind(), a.kind()) };
        let class = match (x, y) {
            (J, J) => BracketClass::JJ,
            (J, k) if k.is_vector() => BracketClass::JV,
            (G, F) => BracketClass::GF_R,
            (G, Q) => BracketClass::GQ_T,
            (G, E) => BracketClass::GE_P,
            (F, P) => BracketClass::FP_T,
            (F, E) => BracketClass::FE_Q,
            (R, E) => BracketClass::RE_T,
            (Q, P) => BracketClass::PQ_I,
            (T, E) => BracketClass::ET_I,
            (G, P) => BracketClass::GP_M,
            (F, Q) => BracketClass::FQ_A,
            _ => return None,
        };
        Some(class)
    }
}

/// Expected quotient algebra.
#[derive(Clone, Debug, PartialEq)]
pub enum Target {
    /// A builtin family, optionally with one vector kind renamed to another.
    Builtin { family: Family, rename: Option<(GenKind, GenKind)> },
    /// The complement generators with only the listed bracket classes.
    Classes(Vec<BracketClass>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuotientRow {
    pub parent: Family,
    pub members: Vec<GenKind>,
    pub kernel_name: &'static str,
    pub target_name: &'static str,
    pub target: Target,
}

impl QuotientRow {
    pub fn members_label(&self) -> String {
        let names: Vec<String> = self.members.iter().map(|k| format!("{k:?}")).collect();
        format!("{{{}}}", names.join(","))
    }
}

fn row(parent: Family, members: &[GenKind], kernel: &'static str, target_name: &'static str, target: Target) -> QuotientRow {
    QuotientRow { parent, members: members.to_vec(), kernel_name: kernel, target_name, target }
}

fn classes(list: &[BracketClass]) -> Target {
    Target::Classes(list.to_vec())
}

fn all_except(skip: &[BracketClass]) -> Target {
    Target::Classes(BracketClass::ALL.iter().copied().filter(|c| !skip.contains(c)).collect())
}

/// Every tabulated homomorphism, subgroup tables first.
pub fn quotient_rows() -> Vec<QuotientRow> {
    use BracketClass::*;
    use Family::*;
    use GenKind as K;
    let builtin = |family| Target::Builtin { family, rename: None };
    vec![
        row(WeylHeisenberg, &[K::R], "A(1)", "A(2n)", classes(&[])),
        row(Hamilton, &[K::R], "A(1)", "SO(n) x A(2n)", classes(&[JJ, JV])),
        row(Hamilton, &[K::G, K::R], "A(n+1)", "SO(n) x A(n)", classes(&[JJ, JV])),
        row(Hamilton, &[K::F, K::R], "A(n+1)", "SO(n) x A(n)", classes(&[JJ, JV])),
        row(Hamilton, &[K::G, K::F, K::R], "H(n)", "SO(n)", classes(&[JJ])),
        row(Galilei, &[K::M], "A(1)", "E(n) x A(n+1)", classes(&[JJ, JV, GE_P])),
        row(Galilei, &[K::P, K::M], "A(n+1)", "(SO(n) x A(1)) x A(n)", classes(&[JJ, JV])),
        row(Galilei, &[K::E, K::P, K::M], "A(n+2)", "E(n)", builtin(Euclidean)),
        row(Galilei, &[K::G, K::P, K::M], "H(n)", "SO(n) x A(1)", classes(&[JJ])),
        row(Galilei, &[K::E, K::G, K::P, K::M], "A(1) x H(n)", "SO(n)", classes(&[JJ])),
        row(QuantumHamilton, &[K::A], "A(1)", "Ha(n) x H(n+1)", all_except(&[FQ_A])),
        row(QuantumHamilton, &[K::M], "A(1)", "Ha(n) x H(n+1)", all_except(&[GP_M])),
        row(QuantumHamilton, &[K::I], "A(1)", "Ha(n) x A(2n+2)", all_except(&[PQ_I, ET_I])),
        row(QuantumHamilton, &[K::A, K::M], "A(2)", "Ha(n) x H(n+1)", all_except(&[FQ_A, GP_M])),
        row(QuantumHamilton, &[K::A, K::I], "A(2)", "Ha(n) x A(2n+1)", all_except(&[FQ_A, PQ_I, ET_I])),
        row(QuantumHamilton, &[K::M, K::I], "A(2)", "Ha(n) x A(2n+1)", all_except(&[GP_M, PQ_I, ET_I])),
        row(QuantumHamilton, &[K::I, K::A, K::M], "A(3)", "Ha(n) x A(2n)", all_except(&[PQ_I, ET_I, GP_M, FQ_A])),
        row(QuantumHamilton, &[K::P, K::T, K::M, K::I], "A(n+3)", "Ha(n) x A(n+1)", classes(&[JJ, JV, GF_R, FE_Q, FQ_A])),
        row(QuantumHamilton, &[K::Q, K::T, K::A, K::I], "A(n+3)", "Ha(n) x A(n+1)", classes(&[JJ, JV, GF_R, GE_P, GP_M])),
        row(QuantumHamilton, &[K::P, K::G, K::R, K::T, K::M, K::I], "H(n) x A(2)", "Ga(n)", builtin(GalileiConjugate)),
        row(QuantumHamilton, &[K::Q, K::F, K::R, K::T, K::A, K::I], "H(n) x A(2)", "Ga(n)", builtin(Galilei)),
        row(QuantumHamilton, &[K::P, K::T, K::M, K::A, K::I], "A(n+4)", "Ha(n) x A(n)", classes(&[JJ, JV, GF_R, FE_Q])),
        row(QuantumHamilton, &[K::Q, K::T, K::A, K::M, K::I], "A(n+4)", "Ha(n) x A(n)", classes(&[JJ, JV, GF_R, GE_P])),
        row(QuantumHamilton, &[K::I, K::P, K::Q, K::E, K::T], "H(n+1)", "Ha(n) x A(2)", classes(&[JJ, JV, GF_R])),
        row(QuantumHamilton, &[K::I, K::P, K::Q, K::E, K::T, K::A, K::M], "H(n+1) x A(2)", "Ha(n)", builtin(Hamilton)),
        row(
            QuantumHamilton,
            &[K::I, K::P, K::Q, K::E, K::T, K::A, K::M, K::R],
            "H(n+1) x A(3)",
            "SO(n) x A(2n)",
            classes(&[JJ, JV]),
        ),
        row(
            QuantumHamilton,
            &[K::I, K::P, K::Q, K::E, K::T, K::A, K::M, K::F, K::R],
            "H(n+1) x A(n+3)",
            "E(n)",
            builtin(Euclidean),
        ),
        row(
            QuantumHamilton,
            &[K::I, K::P, K::Q, K::E, K::T, K::A, K::M, K::G, K::R],
            "H(n+1) x A(n+3)",
            "E(n)",
            Target::Builtin { family: Euclidean, rename: Some((K::G, K::F)) },
        ),
        row(
            QuantumHamilton,
            &[K::I, K::P, K::Q, K::E, K::T, K::A, K::M, K::F, K::G, K::R],
            "H(n+1) x H(n) x A(2)",
            "SO(n)",
            classes(&[JJ]),
        ),
    ]
}

fn rename_gen(g: Gen, from: GenKind, to: GenKind) -> Gen {
    match g.component() {
        Some(i) if g.kind() == from => Gen::vector(to, i),
        _ => g,
    }
}

/// The target algebra over the generators it is expected to live on.
pub fn target_algebra(target: &Target, complement: &[Gen], n: usize) -> Result<LieAlgebraSpec> {
    match target {
        Target::Builtin { family, rename } => {
            let base = builtin_algebra(*family, n)?;
            match rename {
                None => Ok(base),
                Some((from, to)) => {
                    let gens: Vec<Gen> =
                        base.gens.as_ref().unwrap().iter().map(|g| rename_gen(*g, *from, *to)).collect();
                    let mut out = base.clone();
                    out.basis = gens.iter().map(|g| g.label()).collect();
                    out.gens = Some(gens);
                    Ok(out)
                }
            }
        }
        Target::Classes(allowed) => {
            let mut alg = LieAlgebraSpec::from_generators("target", complement.to_vec());
            for (a, ga) in complement.iter().enumerate() {
                for (b, gb) in complement.iter().enumerate() {
                    let keep = BracketClass::of(*ga, *gb).is_some_and(|c| allowed.contains(&c));
                    if !keep {
                        alg.c[a][b].iter_mut().for_each(|v| *v = num_traits::Zero::zero());
                    }
                }
            }
            Ok(alg)
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RowReport {
    pub parent: String,
    pub members: String,
    pub kernel: String,
    pub target: String,
    pub is_ideal: bool,
    /// First `[X, Y]` leaving the kernel, when it is not an ideal.
    pub violation: Option<(String, String)>,
    pub quotient_jacobi: bool,
    pub matches_target: bool,
}

impl RowReport {
    pub fn pass(&self) -> bool {
        self.is_ideal && self.quotient_jacobi && self.matches_target
    }
}

/// Checks one row at dimension n: ideal property, Jacobi of the quotient and
/// agreement with the target under the complement-basis identification.
pub fn check_row(row: &QuotientRow, n: usize) -> Result<RowReport> {
    let parent = builtin_algebra(row.parent, n)?;
    let member_gens = basis_generators(&row.members, n);
    let sub = SubspaceSpec::from_gens(&parent, &member_gens)?;
    let violation = sub.ideal_violation();
    let mut report = RowReport {
        parent: parent.name.clone(),
        members: row.members_label(),
        kernel: row.kernel_name.to_string(),
        target: row.target_name.to_string(),
        is_ideal: violation.is_none(),
        violation: violation.map(|(a, m)| (parent.basis[a].clone(), parent.basis[m].clone())),
        quotient_jacobi: false,
        matches_target: false,
    };
    if !report.is_ideal {
        return Ok(report);
    }
    let quot = sub.quotient()?;
    report.quotient_jacobi = jacobi_check(&quot).pass;
    let complement = quot.gens.clone().unwrap_or_default();
    let target = target_algebra(&row.target, &complement, n)?;
    report.matches_target = jacobi_check(&target).pass && target.basis == quot.basis && target.c == quot.c;
    Ok(report)
}
