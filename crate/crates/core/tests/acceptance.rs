//! Acceptance criteria, one line per criterion.
//!
//! Criteria whose tabulated targets cannot be met print FAIL; the run still
//! succeeds as long as their partial results are exactly the documented ones.
//! Any other deviation makes the process exit non-zero.

use std::process::{Command, ExitCode};
use std::time::Instant;

use hamrep::enveloping::{casimir_catalog, casimir_element, is_central};
use hamrep::groups::cover::{random_su2, su2_project};
use hamrep::groups::{cocycle_defect, generator_bracket_mismatches, product, to_matrix, wigner_d, GroupParams};
use hamrep::liealg::catalog::{check_row, quotient_rows};
use hamrep::liealg::{builtin_algebra, invariant_count, jacobi_check, Family, Gen};
use hamrep::repops::{diff_commutator, DiffOp};
use hamrep::uir::{
    algebra_rep, casimir_eigenvalue, verify_homomorphism, BaseBasis, BasisChoice, InternalBasis, RepLabels, HOMOMORPHISM_TOL,
    SCALARITY_TOL,
};
use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Outcome of one criterion.
struct Outcome {
    pass: bool,
    /// Whether the observed result is the expected one (a documented partial
    /// result counts as expected).
    expected: bool,
    detail: String,
}

impl Outcome {
    fn check(ok: bool, detail: impl Into<String>) -> Self {
        Outcome { pass: ok, expected: ok, detail: detail.into() }
    }

    fn documented_failure(as_documented: bool, detail: impl Into<String>) -> Self {
        Outcome { pass: false, expected: as_documented, detail: detail.into() }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn algebra_integrity() -> Outcome {
    let mut bad = Vec::new();
    for family in Family::ALL {
        for n in 1..=4 {
            match builtin_algebra(family, n) {
                Ok(alg) if jacobi_check(&alg).pass => {}
                _ => bad.push(format!("{family}({n})")),
            }
        }
    }
    Outcome::check(bad.is_empty(), format!("7 families x n=1..4, failures {bad:?}"))
}

fn matrix_oracle() -> Outcome {
    let mut dev: f64 = 0.0;
    let mut brackets = Vec::new();
    for n in 1..=3 {
        let mut r = rng(1000 + n as u64);
        for _ in 0..1000 {
            let a = GroupParams::random(n, &mut r);
            let b = GroupParams::random(n, &mut r);
            let ab = product(&a, &b).expect("product");
            dev = dev.max((to_matrix(&ab) - to_matrix(&a) * to_matrix(&b)).amax());
        }
        let bad = generator_bracket_mismatches(n).expect("generators");
        if !bad.is_empty() {
            brackets.push(n);
        }
    }
    Outcome::check(dev <= 1e-10 && brackets.is_empty(), format!("3000 pairs max dev {dev:.2e}, bracket mismatches at n={brackets:?}"))
}

const TABULATED: [(Family, [usize; 4]); 4] = [
    (Family::WeylHeisenberg, [1, 1, 1, 1]),
    (Family::Hamilton, [1, 2, 2, 3]),
    (Family::Galilei, [2, 2, 3, 3]),
    (Family::QuantumHamilton, [4, 4, 5, 5]),
];

/// Cells that contradict the even rank of the antisymmetric commutator matrix.
const IMPOSSIBLE_CELLS: [(Family, usize); 4] =
    [(Family::Galilei, 2), (Family::Galilei, 4), (Family::QuantumHamilton, 2), (Family::QuantumHamilton, 4)];

fn casimir_counts() -> Outcome {
    let mut matched = 0;
    let mut as_documented = true;
    let mut mismatches = Vec::new();
    for (family, row) in TABULATED {
        for n in 1..=4 {
            let alg = builtin_algebra(family, n).expect("algebra");
            let got = invariant_count(&alg, 8, 42);
            let want = row[n - 1];
            let impossible = IMPOSSIBLE_CELLS.contains(&(family, n));
            if got == want {
                matched += 1;
                as_documented &= !impossible;
            } else {
                mismatches.push(format!("{family} n={n}: {got} vs {want}"));
                as_documented &= impossible && got == want + 1 && (alg.dim() - got) % 2 == 0;
            }
        }
    }
    let detail = format!("{matched}/16 cells match; {}", mismatches.join(", "));
    if matched == 16 {
        Outcome::check(true, detail)
    } else {
        Outcome::documented_failure(as_documented && matched == 12, detail)
    }
}

fn casimir_centrality() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (family, n, count) in casimir_catalog() {
        let alg = builtin_algebra(family, n).expect("algebra");
        for k in 1..=count {
            checked += 1;
            let c = casimir_element(family, n, k).expect("casimir");
            if !is_central(&alg, &c).pass {
                bad.push(format!("{family}({n}) C{k}"));
            }
        }
    }
    let covered = (1..=4).all(|n| casimir_catalog().iter().any(|&(f, m, _)| f == Family::WeylHeisenberg && m == n))
        && [Family::Hamilton, Family::Galilei, Family::GalileiConjugate, Family::QuantumHamilton]
            .iter()
            .all(|f| casimir_catalog().iter().any(|&(g, m, _)| g == *f && m == 3));
    Outcome::check(bad.is_empty() && covered, format!("{checked} cataloged invariants, non-central {bad:?}, coverage {covered}"))
}

fn heisenberg_relations() -> Outcome {
    let i = Complex64::new(0.0, 1.0);
    let mut exact = true;
    for base in [BaseBasis::MomentumTime, BaseBasis::PositionTime] {
        for hbar in [1.0, 0.5] {
            let labels = RepLabels { lambda: 1.0, hbar, j: 0.0, ..Default::default() }
                .with_basis(BasisChoice { base, internal: InternalBasis::ForceDiag });
            let n = 3;
            let cat = algebra_rep(&labels, n).expect("catalog");
            let op = |g: Gen| cat.get(g).and_then(|r| r.base.clone()).expect("base operator");
            let mut expect = |a: Gen, b: Gen, want: Complex64| {
                exact &= diff_commutator(&op(a), &op(b)).map(|c| c == DiffOp::constant(n, want)).unwrap_or(false);
            };
            for a in 0..n {
                for b in 0..n {
                    expect(Gen::P(a), Gen::Q(b), if a == b { i * hbar } else { Complex64::new(0.0, 0.0) });
                }
            }
            expect(Gen::T, Gen::E, i * hbar);
        }
    }
    Outcome::check(exact, "[P_i, Q_j] = i hbar delta_ij and [T, E] = i hbar, both bases, hbar in {1, 1/2}")
}

fn uir_homomorphism() -> Outcome {
    let base = RepLabels { lambda: 1.3, mu: 0.9, alpha: -0.7, kappa: 1.1, j: 0.0, hbar: 1.0, ..Default::default() };
    let mut cases: Vec<(Family, RepLabels)> = vec![(Family::WeylHeisenberg, base.clone()), (Family::Galilei, base.clone())];
    for j in [0.0, 0.5, 1.0] {
        cases.push((Family::Hamilton, base.clone().with_spin(j)));
    }
    for basis in BasisChoice::ALL {
        cases.push((Family::QuantumHamilton, base.clone().with_spin(0.5).with_basis(basis)));
    }
    let mut worst: f64 = 0.0;
    let mut notes = 0;
    let mut ok = true;
    for (family, labels) in &cases {
        let r = verify_homomorphism(*family, 3, labels, 500, 6).expect("homomorphism");
        worst = worst.max(r.max_dev.max());
        ok &= r.pass;
        notes += r.notes.len();
        if *family != Family::WeylHeisenberg {
            ok &= !r.notes.is_empty();
        }
    }
    Outcome::check(
        ok && worst <= HOMOMORPHISM_TOL,
        format!("{} cases x 500 trials, max dev {worst:.2e}, {notes} convention notes", cases.len()),
    )
}

fn label_sets(count: usize, seed: u64) -> Vec<RepLabels> {
    let mut r = rng(seed);
    let nz = |r: &mut ChaCha8Rng| {
        let x: f64 = r.gen_range(0.3..2.0);
        if r.gen_bool(0.5) {
            x
        } else {
            -x
        }
    };
    (0..count)
        .map(|k| RepLabels {
            lambda: nz(&mut r),
            mu: nz(&mut r),
            alpha: nz(&mut r),
            kappa: nz(&mut r),
            j: (k % 3 + 1) as f64 / 2.0,
            hbar: r.gen_range(0.5..2.0),
            epsilon: r.gen_range(-1.0..1.0),
            basis: BasisChoice::ALL[k % 4],
        })
        .collect()
}

fn casimir_eigenvalues() -> Outcome {
    let counts = [
        (Family::Hamilton, 2),
        (Family::Galilei, 3),
        (Family::GalileiConjugate, 3),
        (Family::QuantumHamilton, 5),
    ];
    let mut residual: f64 = 0.0;
    let mut unexpected = Vec::new();
    let mut c5_failures = 0;
    let mut c5_as_derived = true;
    for labels in label_sets(20, 7) {
        for (family, count) in counts {
            for k in 1..=count {
                let v = casimir_eigenvalue(family, 3, k, &labels).expect("eigenvalue");
                residual = residual.max(v.residual);
                if family == Family::QuantumHamilton && k == 5 {
                    let c = |k| casimir_eigenvalue(family, 3, k, &labels).expect("eigenvalue").value;
                    let coef = c(4) + c(2) * c(3);
                    let derived = coef * coef * labels.j * (labels.j + 1.0);
                    c5_as_derived &= (v.value - derived).abs() <= SCALARITY_TOL * (1.0 + derived.abs());
                    if !v.pass() {
                        c5_failures += 1;
                    }
                } else if !v.pass() {
                    unexpected.push(format!("{family} C{k}"));
                }
            }
        }
    }
    let detail = format!(
        "20 label sets, max scalarity residual {residual:.2e}, QHa C5 off the tabulated value in {c5_failures}/20 sets, other failures {unexpected:?}"
    );
    let rest = unexpected.is_empty() && residual <= SCALARITY_TOL;
    if c5_failures == 0 {
        Outcome::check(rest, detail)
    } else {
        Outcome::documented_failure(rest && c5_as_derived && c5_failures == 20, detail)
    }
}

fn double_cover() -> Outcome {
    let minus = -Matrix2::<Complex64>::identity();
    let mut dev: f64 = 0.0;
    for twice in 0..=6usize {
        let sign = if twice % 2 == 0 { 1.0 } else { -1.0 };
        let d = wigner_d(twice as f64 / 2.0, &minus).expect("wigner");
        let want = DMatrix::<Complex64>::identity(twice + 1, twice + 1) * Complex64::from(sign);
        dev = dev.max((d - want).iter().map(|z| z.norm()).fold(0.0, f64::max));
    }
    let mut r = rng(8);
    let mut hom: f64 = 0.0;
    for _ in 0..200 {
        let a = random_su2(&mut r);
        let b = random_su2(&mut r);
        let p = |m: Matrix2<Complex64>| su2_project(&m).expect("projection");
        hom = hom.max((p(a * b) - p(a) * p(b)).amax()).max((p(-a) - p(a)).amax());
    }
    Outcome::check(dev <= 1e-10 && hom <= 1e-10, format!("D^j(-1) dev {dev:.2e}, 200 pairs projection dev {hom:.2e}"))
}

fn cocycle_identity() -> Outcome {
    let mut dev: f64 = 0.0;
    for n in 1..=3 {
        let mut r = rng(900 + n as u64);
        for _ in 0..200 {
            let g: Vec<GroupParams> = (0..3).map(|_| GroupParams::random(n, &mut r)).collect();
            dev = dev.max(cocycle_defect(&g[0], &g[1], &g[2]).expect("cocycle"));
        }
    }
    Outcome::check(dev <= 1e-10, format!("200 triples at n=1..3, max dev {dev:.2e}"))
}

const NOT_AN_IDEAL: &str = "{I,P,Q,E,T}";

fn quotients() -> Outcome {
    let mut total = 0;
    let mut passed = 0;
    let mut as_documented = true;
    let mut failing = Vec::new();
    for n in 1..=4 {
        for row in quotient_rows() {
            total += 1;
            let r = check_row(&row, n).expect("row");
            let label = row.members_label();
            if r.pass() {
                passed += 1;
                as_documented &= label != NOT_AN_IDEAL;
            } else {
                failing.push(format!("{}/{label} n={n}", row.parent));
                as_documented &= label == NOT_AN_IDEAL && !r.is_ideal;
            }
        }
    }
    let detail = format!("{passed}/{total} rows over n=1..4; failing {failing:?}");
    if passed == total {
        Outcome::check(true, detail)
    } else {
        Outcome::documented_failure(as_documented && failing.len() == 4, detail)
    }
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_hamrep")).args(["verify", "--format", "json"]).output().expect("spawn hamrep")
    };
    let a = run();
    let b = run();
    let same = a.stdout == b.stdout && !a.stdout.is_empty();
    let schema = serde_json::from_slice::<serde_json::Value>(&a.stdout).map(|v| v["schema"] == "hamrep/1").unwrap_or(false);
    Outcome::check(same && schema, format!("{} bytes, identical {same}, schema ok {schema}", a.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("algebra integrity", algebra_integrity),
        ("matrix-oracle agreement", matrix_oracle),
        ("Casimir counts", casimir_counts),
        ("Casimir centrality", casimir_centrality),
        ("Heisenberg relations", heisenberg_relations),
        ("UIR homomorphism", uir_homomorphism),
        ("Casimir eigenvalues", casimir_eigenvalues),
        ("double cover", double_cover),
        ("cocycle identity", cocycle_identity),
        ("quotients", quotients),
        ("determinism", determinism),
    ];
    let mut unexpected = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        let status = if o.pass { "PASS" } else { "FAIL" };
        let flag = if o.expected { "" } else { " [UNEXPECTED]" };
        println!("criterion {:>2} {status} {name} ({:.1}s): {}{flag}", k + 1, start.elapsed().as_secs_f64(), o.detail);
        if !o.expected {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria deviate from their expected outcome");
        ExitCode::FAILURE
    }
}
