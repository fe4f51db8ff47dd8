//! Lie algebras given by exact rational structure constants.
//!
//! Basis order is fixed for every family: `J_{i<j}, G_i, F_i, R, Q_i, P_i, T, E, M, A, I`.
//! Structure constants are stored with ℏ = 1.

pub mod catalog;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Generator kinds in basis order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    J,
    G,
    F,
    R,
    Q,
    P,
    T,
    E,
    M,
    A,
    I,
}

impl GenKind {
    pub const ALL: [GenKind; 11] = [
        GenKind::J,
        GenKind::G,
        GenKind::F,
        GenKind::R,
        GenKind::Q,
        GenKind::P,
        GenKind::T,
        GenKind::E,
        GenKind::M,
        GenKind::A,
        GenKind::I,
    ];

    pub fn is_vector(self) -> bool {
        matches!(self, GenKind::G | GenKind::F | GenKind::Q | GenKind::P)
    }
}

/// A single basis generator. Indices are zero-based; labels are one-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    J(usize, usize),
    G(usize),
    F(usize),
    R,
    Q(usize),
    P(usize),
    T,
    E,
    M,
    A,
    I,
}

impl Gen {
    pub fn kind(self) -> GenKind {
        match self {
            Gen::J(..) => GenKind::J,
            Gen::G(_) => GenKind::G,
            Gen::F(_) => GenKind::F,
            Gen::R => GenKind::R,
            Gen::Q(_) => GenKind::Q,
            Gen::P(_) => GenKind::P,
            Gen::T => GenKind::T,
            Gen::E => GenKind::E,
            Gen::M => GenKind::M,
            Gen::A => GenKind::A,
            Gen::I => GenKind::I,
        }
    }

    pub fn vector(kind: GenKind, i: usize) -> Gen {
        match kind {
            GenKind::G => Gen::G(i),
            GenKind::F => Gen::F(i),
            GenKind::Q => Gen::Q(i),
            GenKind::P => Gen::P(i),
            _ => panic!("{kind:?} is not a vector generator"),
        }
    }

    pub fn component(self) -> Option<usize> {
        match self {
            Gen::G(i) | Gen::F(i) | Gen::Q(i) | Gen::P(i) => Some(i),
            _ => None,
        }
    }

    /// Rotation generator `J_ab` as a signed basis element; `None` when a = b.
    pub fn rotation(a: usize, b: usize) -> Option<(Gen, i64)> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some((Gen::J(a, b), 1)),
            std::cmp::Ordering::Greater => Some((Gen::J(b, a), -1)),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn label(self) -> String {
        let idx = |i: usize| (i + 1).to_string();
        match self {
            Gen::J(i, j) if i < 9 && j < 9 => format!("J_{}{}", i + 1, j + 1),
            Gen::J(i, j) => format!("J_{},{}", i + 1, j + 1),
            Gen::G(i) => format!("G_{}", idx(i)),
            Gen::F(i) => format!("F_{}", idx(i)),
            Gen::Q(i) => format!("Q_{}", idx(i)),
            Gen::P(i) => format!("P_{}", idx(i)),
            Gen::R => "R".into(),
            Gen::T => "T".into(),
            Gen::E => "E".into(),
            Gen::M => "M".into(),
            Gen::A => "A".into(),
            Gen::I => "I".into(),
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn delta(a: usize, b: usize) -> i64 {
    i64::from(a == b)
}

/// Bracket of two basis generators of the full quantum Hamilton algebra (ℏ = 1).
pub fn qha_bracket(a: Gen, b: Gen) -> Vec<(Gen, i64)> {
    let direct = raw_bracket(a, b);
    if !direct.is_empty() {
        return direct;
    }
    raw_bracket(b, a).into_iter().map(|(g, c)| (g, -c)).collect()
}

fn raw_bracket(a: Gen, b: Gen) -> Vec<(Gen, i64)> {
    let mut out: Vec<(Gen, i64)> = Vec::new();
    let mut push = |g: Option<(Gen, i64)>, c: i64| {
        if c == 0 {
            return;
        }
        if let Some((g, s)) = g {
            match out.iter_mut().find(|(h, _)| *h == g) {
                Some(entry) => entry.1 += s * c,
                None => out.push((g, s * c)),
            }
        }
    };
    match (a, b) {
        (Gen::J(i, j), Gen::J(k, l)) => {
            push(Gen::rotation(j, k), delta(i, l));
            push(Gen::rotation(i, l), delta(j, k));
            push(Gen::rotation(i, k), -delta(j, l));
            push(Gen::rotation(j, l), -delta(i, k));
        }
        (Gen::J(i, j), v) if v.kind().is_vector() => {
            let k = v.component().unwrap();
            let kind = v.kind();
            push(Some((Gen::vector(kind, i), 1)), delta(j, k));
            push(Some((Gen::vector(kind, j), 1)), -delta(i, k));
        }
        (Gen::G(i), Gen::F(k)) => push(Some((Gen::R, 1)), delta(i, k)),
        (Gen::G(i), Gen::Q(k)) => push(Some((Gen::T, 1)), delta(i, k)),
        (Gen::G(i), Gen::E) => push(Some((Gen::P(i), 1)), 1),
        (Gen::F(i), Gen::P(k)) => push(Some((Gen::T, 1)), -delta(i, k)),
        (Gen::F(i), Gen::E) => push(Some((Gen::Q(i), 1)), 1),
        (Gen::R, Gen::E) => push(Some((Gen::T, 1)), 2),
        (Gen::P(i), Gen::Q(k)) => push(Some((Gen::I, 1)), delta(i, k)),
        (Gen::E, Gen::T) => push(Some((Gen::I, 1)), -1),
        (Gen::G(i), Gen::P(k)) => push(Some((Gen::M, 1)), delta(i, k)),
        (Gen::F(i), Gen::Q(k)) => push(Some((Gen::A, 1)), delta(i, k)),
        _ => {}
    }
    out.retain(|(_, c)| *c != 0);
    out
}

/// Pairs whose bracket carries a factor ℏ before normalization.
fn carries_hbar(a: Gen, b: Gen) -> bool {
    matches!(
        (a.kind(), b.kind()),
        (GenKind::P, GenKind::Q) | (GenKind::Q, GenKind::P) | (GenKind::E, GenKind::T) | (GenKind::T, GenKind::E)
    )
}

/// The builtin algebra families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    WeylHeisenberg,
    Hamilton,
    InhomHamilton,
    QuantumHamilton,
    Galilei,
    GalileiConjugate,
    Euclidean,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::WeylHeisenberg,
        Family::Hamilton,
        Family::InhomHamilton,
        Family::QuantumHamilton,
        Family::Galilei,
        Family::GalileiConjugate,
        Family::Euclidean,
    ];

    pub fn kinds(self) -> &'static [GenKind] {
        use GenKind::*;
        match self {
            Family::WeylHeisenberg => &[G, F, R],
            Family::Hamilton => &[J, G, F, R],
            Family::InhomHamilton => &[J, G, F, R, Q, P, T, E],
            Family::QuantumHamilton => &[J, G, F, R, Q, P, T, E, M, A, I],
            Family::Galilei => &[J, G, P, E, M],
            Family::GalileiConjugate => &[J, F, Q, E, A],
            Family::Euclidean => &[J, G],
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            Family::WeylHeisenberg => "H",
            Family::Hamilton => "Ha",
            Family::InhomHamilton => "IHa",
            Family::QuantumHamilton => "QHa",
            Family::Galilei => "Ga",
            Family::GalileiConjugate => "Ga*",
            Family::Euclidean => "E",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| c.is_alphanumeric() || *c == '*').collect();
        match key.to_ascii_lowercase().as_str() {
            "h" | "wh" | "weylheisenberg" | "heisenberg" => Ok(Family::WeylHeisenberg),
            "ha" | "hamilton" => Ok(Family::Hamilton),
            "iha" | "inhomhamilton" => Ok(Family::InhomHamilton),
            "qha" | "quantumhamilton" => Ok(Family::QuantumHamilton),
            "ga" | "galilei" => Ok(Family::Galilei),
            "ga*" | "gac" | "galileiconjugate" => Ok(Family::GalileiConjugate),
            "e" | "euclidean" => Ok(Family::Euclidean),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

/// Generators of the given kinds for dimension n, in basis order.
pub fn basis_generators(kinds: &[GenKind], n: usize) -> Vec<Gen> {
    let mut out = Vec::new();
    for kind in GenKind::ALL {
        if !kinds.contains(&kind) {
            continue;
        }
        match kind {
            GenKind::J => {
                for i in 0..n {
                    for j in i + 1..n {
                        out.push(Gen::J(i, j));
                    }
                }
            }
            GenKind::G | GenKind::F | GenKind::Q | GenKind::P => {
                out.extend((0..n).map(|i| Gen::vector(kind, i)));
            }
            GenKind::R => out.push(Gen::R),
            GenKind::T => out.push(Gen::T),
            GenKind::E => out.push(Gen::E),
            GenKind::M => out.push(Gen::M),
            GenKind::A => out.push(Gen::A),
            GenKind::I => out.push(Gen::I),
        }
    }
    out
}

/// A Lie algebra over the rationals: `c[a][b][k]` is the coefficient of `X_k` in `[X_a, X_b]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebraSpec {
    pub name: String,
    pub basis: Vec<String>,
    /// Structured generators, when the basis comes from the builtin catalog.
    pub gens: Option<Vec<Gen>>,
    pub c: Vec<Vec<Vec<Rational>>>,
    /// Basis pairs `(a, b)` whose bracket carries ℏ (stored here with ℏ = 1).
    pub hbar_pairs: Vec<(usize, usize)>,
}

impl LieAlgebraSpec {
    /// Builds an algebra from raw constants; `c` must be dim × dim × dim.
    pub fn from_constants(name: &str, basis: Vec<String>, c: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let dim = basis.len();
        if c.len() != dim {
            return Err(Error::LengthMismatch { expected: dim, got: c.len() });
        }
        for row in &c {
            if row.len() != dim {
                return Err(Error::LengthMismatch { expected: dim, got: row.len() });
            }
            for v in row {
                if v.len() != dim {
                    return Err(Error::LengthMismatch { expected: dim, got: v.len() });
                }
            }
        }
        Ok(LieAlgebraSpec { name: name.to_string(), basis, gens: None, c, hbar_pairs: Vec::new() })
    }

    pub fn abelian(dim: usize) -> Self {
        let basis = (0..dim).map(|i| format!("X_{}", i + 1)).collect();
        let c = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
        LieAlgebraSpec { name: format!("A({dim})"), basis, gens: None, c, hbar_pairs: Vec::new() }
    }

    /// Algebra spanned by `gens` with the quantum Hamilton brackets; brackets leaving the
    /// span are dropped (the inhomogeneous Hamilton algebra is the quotient by I, M, A).
    pub fn from_generators(name: &str, gens: Vec<Gen>) -> Self {
        let dim = gens.len();
        let index: BTreeMap<Gen, usize> = gens.iter().enumerate().map(|(k, g)| (*g, k)).collect();
        let mut c = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
        let mut hbar_pairs = Vec::new();
        for (a, ga) in gens.iter().enumerate() {
            for (b, gb) in gens.iter().enumerate() {
                let mut any = false;
                for (g, coef) in qha_bracket(*ga, *gb) {
                    if let Some(&k) = index.get(&g) {
                        c[a][b][k] += rat(coef);
                        any = true;
                    }
                }
                if any && carries_hbar(*ga, *gb) {
                    hbar_pairs.push((a, b));
                }
            }
        }
        LieAlgebraSpec {
            name: name.to_string(),
            basis: gens.iter().map(|g| g.label()).collect(),
            gens: Some(gens),
            c,
            hbar_pairs,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == label)
    }

    pub fn index_gen(&self, g: Gen) -> Option<usize> {
        self.gens.as_ref()?.iter().position(|h| *h == g)
    }

    pub fn unit(&self, a: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[a] = Rational::one();
        v
    }

    /// Nonzero entries of `[X_a, X_b]`.
    pub fn bracket_basis(&self, a: usize, b: usize) -> Vec<(usize, Rational)> {
        self.c[a][b]
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k, v.clone()))
            .collect()
    }

    /// Sparse copy of the structure constants, indexed `[a][b] -> [(k, c)]`.
    pub fn sparse(&self) -> Vec<Vec<Vec<(usize, Rational)>>> {
        let d = self.dim();
        (0..d).map(|a| (0..d).map(|b| self.bracket_basis(a, b)).collect()).collect()
    }
}

/// The algebra of a builtin family in dimension n.
pub fn builtin_algebra(family: Family, n: usize) -> Result<LieAlgebraSpec> {
    if n == 0 {
        return Err(Error::InvalidDimension(n));
    }
    let gens = basis_generators(family.kinds(), n);
    Ok(LieAlgebraSpec::from_generators(&format!("{family}({n})"), gens))
}

/// Bilinear extension of the structure constants.
pub fn bracket(alg: &LieAlgebraSpec, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
    let d = alg.dim();
    for v in [x, y] {
        if v.len() != d {
            return Err(Error::LengthMismatch { expected: d, got: v.len() });
        }
    }
    let mut out = vec![Rational::zero(); d];
    for a in 0..d {
        if x[a].is_zero() {
            continue;
        }
        for b in 0..d {
            if y[b].is_zero() {
                continue;
            }
            let w = &x[a] * &y[b];
            for (k, c) in alg.c[a][b].iter().enumerate() {
                if !c.is_zero() {
                    out[k] += &w * c;
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct JacobiReport {
    pub pass: bool,
    /// Ordered basis triples whose Jacobi sum is nonzero.
    pub violations: Vec<(usize, usize, usize)>,
}

/// Exact Jacobi identity over every ordered basis triple.
pub fn jacobi_check(alg: &LieAlgebraSpec) -> JacobiReport {
    let d = alg.dim();
    let sp = alg.sparse();
    let mut violations = Vec::new();
    let mut acc: Vec<Rational> = vec![Rational::zero(); d];
    for a in 0..d {
        for b in 0..d {
            for e in 0..d {
                acc.iter_mut().for_each(|v| v.set_zero());
                for (x, y, z) in [(a, b, e), (b, e, a), (e, a, b)] {
                    for (m, c1) in &sp[x][y] {
                        for (k, c2) in &sp[*m][z] {
                            acc[*k] += c1 * c2;
                        }
                    }
                }
                if acc.iter().any(|v| !v.is_zero()) {
                    violations.push((a, b, e));
                }
            }
        }
    }
    JacobiReport { pass: violations.is_empty(), violations }
}

/// Basis pairs violating `c[a][b][k] = -c[b][a][k]`.
pub fn antisymmetry_violations(alg: &LieAlgebraSpec) -> Vec<(usize, usize)> {
    let d = alg.dim();
    let mut out = Vec::new();
    for a in 0..d {
        for b in a..d {
            if (0..d).any(|k| alg.c[a][b][k] != -alg.c[b][a][k].clone()) {
                out.push((a, b));
            }
        }
    }
    out
}

/// A subset of basis vectors of a parent algebra.
#[derive(Clone, Debug)]
pub struct SubspaceSpec<'a> {
    pub parent: &'a LieAlgebraSpec,
    pub members: Vec<usize>,
}

impl<'a> SubspaceSpec<'a> {
    pub fn new(parent: &'a LieAlgebraSpec, members: &[usize]) -> Result<Self> {
        let mut m = members.to_vec();
        m.sort_unstable();
        m.dedup();
        if m.len() != members.len() {
            return Err(Error::Config("subspace members must be distinct".into()));
        }
        if let Some(&bad) = m.iter().find(|&&k| k >= parent.dim()) {
            return Err(Error::LengthMismatch { expected: parent.dim(), got: bad });
        }
        Ok(SubspaceSpec { parent, members: m })
    }

    pub fn from_gens(parent: &'a LieAlgebraSpec, gens: &[Gen]) -> Result<Self> {
        let idx: Option<Vec<usize>> = gens.iter().map(|g| parent.index_gen(*g)).collect();
        let idx = idx.ok_or_else(|| Error::Config("generator outside the parent basis".into()))?;
        Self::new(parent, &idx)
    }

    pub fn complement(&self) -> Vec<usize> {
        (0..self.parent.dim()).filter(|k| !self.members.contains(k)).collect()
    }

    /// First `(a, m)` with `[X_a, X_m]` outside the span of the members.
    pub fn ideal_violation(&self) -> Option<(usize, usize)> {
        let alg = self.parent;
        for a in 0..alg.dim() {
            for &m in &self.members {
                let leaves = alg.c[a][m]
                    .iter()
                    .enumerate()
                    .any(|(k, v)| !v.is_zero() && !self.members.contains(&k));
                if leaves {
                    return Some((a, m));
                }
            }
        }
        None
    }

    pub fn is_ideal(&self) -> bool {
        self.ideal_violation().is_none()
    }

    /// Structure constants of the quotient in the complement basis.
    pub fn quotient(&self) -> Result<LieAlgebraSpec> {
        if let Some((a, m)) = self.ideal_violation() {
            return Err(Error::NotAnIdeal {
                generator: self.parent.basis[a].clone(),
                member: self.parent.basis[m].clone(),
            });
        }
        let keep = self.complement();
        let c = keep
            .iter()
            .map(|&a| keep.iter().map(|&b| keep.iter().map(|&k| self.parent.c[a][b][k].clone()).collect()).collect())
            .collect();
        let hbar_pairs = self
            .parent
            .hbar_pairs
            .iter()
            .filter_map(|(a, b)| Some((keep.iter().position(|k| k == a)?, keep.iter().position(|k| k == b)?)))
            .collect();
        let gens = self.parent.gens.as_ref().map(|g| keep.iter().map(|&k| g[k]).collect());
        Ok(LieAlgebraSpec {
            name: format!("{}/{}", self.parent.name, self.members.len()),
            basis: keep.iter().map(|&k| self.parent.basis[k].clone()).collect(),
            gens,
            c,
            hbar_pairs,
        })
    }
}

pub fn is_ideal(s: &SubspaceSpec<'_>) -> bool {
    s.is_ideal()
}

pub fn quotient(s: &SubspaceSpec<'_>) -> Result<LieAlgebraSpec> {
    s.quotient()
}

/// Exact rank by Gaussian elimination.
pub fn rational_rank(mut m: Vec<Vec<Rational>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].recip();
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let factor = &m[r][col] * &inv;
                for c in col..cols {
                    let sub = &factor * &m[rank][c];
                    m[r][c] -= sub;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Exact rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn integer_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col].set_zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Random rational with numerator in [-1000, 1000] and denominator in [1, 1000].
fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num: i64 = rng.gen_range(-1000..=1000);
    let den: i64 = rng.gen_range(1..=1000);
    ratio(num, den)
}

/// Number of functionally independent invariants: dim minus the generic rank of
/// `K(x)[a][b] = Σ_k c[a][b][k] x_k`, maximized over seeded random rational points.
///
/// `K` is linear in `x`, so the rank is computed on the integer matrix obtained by
/// clearing all denominators of `x` and of the structure constants.
pub fn invariant_count(alg: &LieAlgebraSpec, trials: usize, seed: u64) -> usize {
    use num_integer::Integer;
    let d = alg.dim();
    if d == 0 {
        return 0;
    }
    let sp = alg.sparse();
    let cden = alg.c.iter().flatten().flatten().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    let mut best = 0;
    for trial in 0..trials.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let x: Vec<Rational> = (0..d).map(|_| random_rational(&mut rng)).collect();
        let den = x.iter().fold(cden.clone(), |l, v| l.lcm(v.denom()));
        let scale = Rational::from_integer(den);
        let k: Vec<Vec<BigInt>> = (0..d)
            .map(|a| {
                (0..d)
                    .map(|b| {
                        let v = sp[a][b].iter().fold(Rational::zero(), |acc, (k, c)| acc + c * &x[*k]) * &scale;
                        debug_assert!(v.is_integer());
                        v.to_integer()
                    })
                    .collect()
            })
            .collect();
        best = best.max(integer_rank(k));
        if best == d {
            break;
        }
    }
    d - best
}

/// Largest absolute numerator among the structure constants (used in reports).
pub fn max_constant(alg: &LieAlgebraSpec) -> Rational {
    alg.c
        .iter()
        .flatten()
        .flatten()
        .fold(Rational::zero(), |m, v| if v.abs() > m { v.abs() } else { m })
}
