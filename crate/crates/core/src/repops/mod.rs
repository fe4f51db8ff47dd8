//! Exact operator algebra for representation values.
//!
//! A [`QuadPhaseOperator`] acts on functions of `(x, t̃) ∈ R^n × R` as
//! `(Uψ)(x, t̃) = e^{iP(x, t̃)} ψ(rotᵀx + a + b t̃, t̃ + τ)` with `P` in the
//! [`PhasePoly`] family. A [`DiffOp`] is a first-order differential operator
//! `A + v(x, t̃)·∂_x + w ∂_t̃` whose multiplier is in the same family and whose
//! vector field is affine. Both families are closed under the operations below.

pub mod weyl;

use nalgebra::{ComplexField, DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::orthogonality_defect;

pub use weyl::TensorOp;

/// Scalar type of phase and operator coefficients (`f64` or `Complex64`).
pub trait Coef: ComplexField<RealField = f64> + Copy {}
impl<T: ComplexField<RealField = f64> + Copy> Coef for T {}

fn lift_mat<T: Coef>(m: &DMatrix<f64>) -> DMatrix<T> {
    m.map(T::from_real)
}

fn lift_vec<T: Coef>(v: &DVector<f64>) -> DVector<T> {
    v.map(T::from_real)
}

fn vec_dev<T: Coef>(a: &DVector<T>, b: &DVector<T>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (*x - *y).modulus()).fold(0.0, f64::max)
}

fn vec_max<T: Coef>(a: &DVector<T>) -> f64 {
    a.iter().map(|x| x.modulus()).fold(0.0, f64::max)
}

/// `c0 + c1·x + c2 t̃ + c3 t̃² + (c4·x) t̃ + c5 |x|²`.
///
/// `c5` only appears in the Galilei sector, where the free-particle energy is
/// quadratic in momentum.
#[derive(Clone, Debug, PartialEq)]
pub struct PhasePoly<T: Coef> {
    pub c0: T,
    pub c1: DVector<T>,
    pub c2: T,
    pub c3: T,
    pub c4: DVector<T>,
    pub c5: T,
}

impl<T: Coef> PhasePoly<T> {
    pub fn zero(n: usize) -> Self {
        PhasePoly {
            c0: T::zero(),
            c1: DVector::zeros(n),
            c2: T::zero(),
            c3: T::zero(),
            c4: DVector::zeros(n),
            c5: T::zero(),
        }
    }

    pub fn constant(n: usize, c: T) -> Self {
        PhasePoly { c0: c, ..Self::zero(n) }
    }

    pub fn n(&self) -> usize {
        self.c1.len()
    }

    pub fn eval(&self, x: &[f64], t: f64) -> T {
        let tt = T::from_real(t);
        let mut out = self.c0 + self.c2 * tt + self.c3 * tt * tt;
        let mut r2 = 0.0;
        for (i, xi) in x.iter().enumerate() {
            let xv = T::from_real(*xi);
            out += self.c1[i] * xv + self.c4[i] * xv * tt;
            r2 += xi * xi;
        }
        out + self.c5 * T::from_real(r2)
    }

    pub fn add(&self, o: &Self) -> Self {
        PhasePoly {
            c0: self.c0 + o.c0,
            c1: &self.c1 + &o.c1,
            c2: self.c2 + o.c2,
            c3: self.c3 + o.c3,
            c4: &self.c4 + &o.c4,
            c5: self.c5 + o.c5,
        }
    }

    pub fn scale(&self, s: T) -> Self {
        PhasePoly {
            c0: self.c0 * s,
            c1: &self.c1 * s,
            c2: self.c2 * s,
            c3: self.c3 * s,
            c4: &self.c4 * s,
            c5: self.c5 * s,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-T::one()))
    }

    /// `P(rotᵀx + a + b t̃, t̃ + τ)`, again in the family.
    pub fn substitute(&self, rot: &DMatrix<f64>, a: &DVector<f64>, b: &DVector<f64>, tau: f64) -> Self {
        let r: DMatrix<T> = lift_mat(rot);
        let (a, b): (DVector<T>, DVector<T>) = (lift_vec(a), lift_vec(b));
        let tau = T::from_real(tau);
        let two = T::from_real(2.0);
        let (c1a, c1b, c4a, c4b) = (self.c1.dot(&a), self.c1.dot(&b), self.c4.dot(&a), self.c4.dot(&b));
        PhasePoly {
            c0: self.c0 + c1a + self.c2 * tau + self.c3 * tau * tau + tau * c4a + self.c5 * a.dot(&a),
            c1: &r * (&self.c1 + &self.c4 * tau + &a * (two * self.c5)),
            c2: c1b + self.c2 + two * self.c3 * tau + c4a + tau * c4b + two * self.c5 * a.dot(&b),
            c3: self.c3 + c4b + self.c5 * b.dot(&b),
            c4: &r * (&self.c4 + &b * (two * self.c5)),
            c5: self.c5,
        }
    }

    pub fn max_abs(&self) -> f64 {
        [self.c0, self.c2, self.c3, self.c5]
            .iter()
            .map(|c| c.modulus())
            .fold(vec_max(&self.c1).max(vec_max(&self.c4)), f64::max)
    }

    /// Largest coefficient deviation; `c0` is excluded when `skip_c0`.
    pub fn max_deviation(&self, o: &Self, skip_c0: bool) -> f64 {
        let c0 = if skip_c0 { 0.0 } else { (self.c0 - o.c0).modulus() };
        [(self.c2 - o.c2), (self.c3 - o.c3), (self.c5 - o.c5)]
            .iter()
            .map(|c| c.modulus())
            .fold(c0.max(vec_dev(&self.c1, &o.c1)).max(vec_dev(&self.c4, &o.c4)), f64::max)
    }

    /// True when only `c0` and `c1`, `c5` (the x-only part) are nonzero.
    pub fn is_space_only(&self) -> bool {
        self.c2.is_zero() && self.c3.is_zero() && self.c4.iter().all(|c| c.is_zero())
    }
}

impl PhasePoly<f64> {
    pub fn to_complex(&self) -> PhasePoly<Complex64> {
        PhasePoly {
            c0: self.c0.into(),
            c1: lift_vec(&self.c1),
            c2: self.c2.into(),
            c3: self.c3.into(),
            c4: lift_vec(&self.c4),
            c5: self.c5.into(),
        }
    }
}

impl PhasePoly<Complex64> {
    pub fn real_part(&self) -> PhasePoly<f64> {
        PhasePoly {
            c0: self.c0.re,
            c1: self.c1.map(|c| c.re),
            c2: self.c2.re,
            c3: self.c3.re,
            c4: self.c4.map(|c| c.re),
            c5: self.c5.re,
        }
    }

    pub fn imag_part(&self) -> PhasePoly<f64> {
        PhasePoly {
            c0: self.c0.im,
            c1: self.c1.map(|c| c.im),
            c2: self.c2.im,
            c3: self.c3.im,
            c4: self.c4.map(|c| c.im),
            c5: self.c5.im,
        }
    }
}

/// Difference of two phases reduced to (-π, π].
pub fn wrap_phase(d: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let r = d.rem_euclid(tau);
    if r > std::f64::consts::PI {
        r - tau
    } else {
        r
    }
}

/// `(Uψ)(x, t̃) = e^{iP(x,t̃)} ψ(rotᵀx + shift_a + shift_b t̃, t̃ + tau)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadPhaseOperator {
    pub rot: DMatrix<f64>,
    pub shift_a: DVector<f64>,
    pub shift_b: DVector<f64>,
    pub tau: f64,
    pub phase: PhasePoly<f64>,
}

/// Quadratic-phase operator acting on functions of x alone.
pub type SpaceOnlyOperator = QuadPhaseOperator;

impl QuadPhaseOperator {
    pub fn identity(n: usize) -> Self {
        QuadPhaseOperator {
            rot: DMatrix::identity(n, n),
            shift_a: DVector::zeros(n),
            shift_b: DVector::zeros(n),
            tau: 0.0,
            phase: PhasePoly::zero(n),
        }
    }

    pub fn pure_phase(n: usize, c0: f64) -> Self {
        let mut u = Self::identity(n);
        u.phase.c0 = c0;
        u
    }

    pub fn translation(a: DVector<f64>) -> Self {
        let n = a.len();
        QuadPhaseOperator { shift_a: a, ..Self::identity(n) }
    }

    pub fn rotation(rot: DMatrix<f64>) -> Self {
        let n = rot.nrows();
        QuadPhaseOperator { rot, ..Self::identity(n) }
    }

    pub fn n(&self) -> usize {
        self.shift_a.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if self.rot.shape() != (n, n) || self.shift_b.len() != n || self.phase.n() != n {
            return Err(Error::LengthMismatch { expected: n, got: self.rot.nrows() });
        }
        let dev = orthogonality_defect(&self.rot);
        if dev > 1e-12 {
            return Err(Error::NotUnitary(dev));
        }
        Ok(())
    }

    pub fn is_space_only(&self) -> bool {
        self.tau == 0.0 && self.shift_b.iter().all(|b| *b == 0.0) && self.phase.is_space_only()
    }

    /// The argument map `(x, t̃) ↦ (rotᵀx + a + b t̃, t̃ + τ)`.
    pub fn argument(&self, x: &[f64], t: f64) -> (Vec<f64>, f64) {
        let xv = DVector::from_column_slice(x);
        let y = self.rot.transpose() * xv + &self.shift_a + &self.shift_b * t;
        (y.iter().copied().collect(), t + self.tau)
    }

    pub fn apply<F: Fn(&[f64], f64) -> Complex64>(&self, f: &F, x: &[f64], t: f64) -> Complex64 {
        let (y, s) = self.argument(x, t);
        Complex64::from_polar(1.0, self.phase.eval(x, t)) * f(&y, s)
    }

    /// Pointwise `e^{iP} f(argument map)` on a grid of `(x, t̃)` points.
    pub fn apply_to_samples<F: Fn(&[f64], f64) -> Complex64>(&self, f: F, grid: &[(Vec<f64>, f64)]) -> Vec<Complex64> {
        grid.iter().map(|(x, t)| self.apply(&f, x, *t)).collect()
    }

    pub fn max_deviation(&self, o: &Self) -> f64 {
        let rot = (&self.rot - &o.rot).amax();
        let a = (&self.shift_a - &o.shift_a).amax();
        let b = (&self.shift_b - &o.shift_b).amax();
        let c0 = wrap_phase(self.phase.c0 - o.phase.c0).abs();
        [rot, a, b, (self.tau - o.tau).abs(), c0, self.phase.max_deviation(&o.phase, true)]
            .into_iter()
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&QuadPhaseJson::from(self))?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: QuadPhaseJson = serde_json::from_str(s)?;
        Self::try_from(j)
    }
}

/// `(u1 ∘ u2)ψ = u1(u2 ψ)`.
pub fn compose(u1: &QuadPhaseOperator, u2: &QuadPhaseOperator) -> Result<QuadPhaseOperator> {
    if u1.n() != u2.n() {
        return Err(Error::LengthMismatch { expected: u1.n(), got: u2.n() });
    }
    let r2t = u2.rot.transpose();
    let phase = u1.phase.add(&u2.phase.substitute(&u1.rot, &u1.shift_a, &u1.shift_b, u1.tau));
    Ok(QuadPhaseOperator {
        rot: &u1.rot * &u2.rot,
        shift_a: &r2t * &u1.shift_a + &u2.shift_a + &u2.shift_b * u1.tau,
        shift_b: &r2t * &u1.shift_b + &u2.shift_b,
        tau: u1.tau + u2.tau,
        phase,
    })
}

pub fn invert(u: &QuadPhaseOperator) -> QuadPhaseOperator {
    let rot = u.rot.transpose();
    let shift_a = -(&u.rot * (&u.shift_a - &u.shift_b * u.tau));
    let shift_b = -(&u.rot * &u.shift_b);
    let tau = -u.tau;
    let phase = u.phase.substitute(&rot, &shift_a, &shift_b, tau).scale(-1.0);
    QuadPhaseOperator { rot, shift_a, shift_b, tau, phase }
}

/// Flat JSON record of a [`QuadPhaseOperator`]; `rot` is row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadPhaseJson {
    pub n: usize,
    pub rot: Vec<f64>,
    pub shift_a: Vec<f64>,
    pub shift_b: Vec<f64>,
    pub tau: f64,
    pub c0: f64,
    pub c1: Vec<f64>,
    pub c2: f64,
    pub c3: f64,
    pub c4: Vec<f64>,
    pub c5: f64,
}

impl From<&QuadPhaseOperator> for QuadPhaseJson {
    fn from(u: &QuadPhaseOperator) -> Self {
        let n = u.n();
        QuadPhaseJson {
            n,
            rot: (0..n * n).map(|k| u.rot[(k / n, k % n)]).collect(),
            shift_a: u.shift_a.iter().copied().collect(),
            shift_b: u.shift_b.iter().copied().collect(),
            tau: u.tau,
            c0: u.phase.c0,
            c1: u.phase.c1.iter().copied().collect(),
            c2: u.phase.c2,
            c3: u.phase.c3,
            c4: u.phase.c4.iter().copied().collect(),
            c5: u.phase.c5,
        }
    }
}

impl TryFrom<QuadPhaseJson> for QuadPhaseOperator {
    type Error = Error;

    fn try_from(j: QuadPhaseJson) -> Result<Self> {
        let n = j.n;
        for len in [j.shift_a.len(), j.shift_b.len(), j.c1.len(), j.c4.len()] {
            if len != n {
                return Err(Error::LengthMismatch { expected: n, got: len });
            }
        }
        if j.rot.len() != n * n {
            return Err(Error::LengthMismatch { expected: n * n, got: j.rot.len() });
        }
        let u = QuadPhaseOperator {
            rot: DMatrix::from_row_slice(n, n, &j.rot),
            shift_a: DVector::from_vec(j.shift_a),
            shift_b: DVector::from_vec(j.shift_b),
            tau: j.tau,
            phase: PhasePoly {
                c0: j.c0,
                c1: DVector::from_vec(j.c1),
                c2: j.c2,
                c3: j.c3,
                c4: DVector::from_vec(j.c4),
                c5: j.c5,
            },
        };
        u.validate()?;
        Ok(u)
    }
}

/// `A(x, t̃) + (dx_const + dx_linear_t t̃ + dx_linear_x x)·∂_x + dt ∂_t̃`.
///
/// `dx_linear_x` carries the rotation generators; its symmetric part must be a
/// multiple of the identity for the family to stay closed.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOp {
    pub mult: PhasePoly<Complex64>,
    pub dx_const: DVector<Complex64>,
    pub dx_linear_t: DVector<Complex64>,
    pub dx_linear_x: DMatrix<Complex64>,
    pub dt: Complex64,
}

const I: Complex64 = Complex64::new(0.0, 1.0);

impl DiffOp {
    pub fn zero(n: usize) -> Self {
        DiffOp {
            mult: PhasePoly::zero(n),
            dx_const: DVector::zeros(n),
            dx_linear_t: DVector::zeros(n),
            dx_linear_x: DMatrix::zeros(n, n),
            dt: Complex64::new(0.0, 0.0),
        }
    }

    pub fn n(&self) -> usize {
        self.dx_const.len()
    }

    pub fn multiplier(mult: PhasePoly<Complex64>) -> Self {
        DiffOp { mult: mult.clone(), ..Self::zero(mult.n()) }
    }

    pub fn constant(n: usize, c: Complex64) -> Self {
        Self::multiplier(PhasePoly::constant(n, c))
    }

    /// The multiplication operator by `x_i`.
    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut m = PhasePoly::zero(n);
        m.c1[i] = 1.0.into();
        Self::multiplier(m)
    }

    /// The multiplication operator by `t̃`.
    pub fn time(n: usize) -> Self {
        let mut m = PhasePoly::zero(n);
        m.c2 = 1.0.into();
        Self::multiplier(m)
    }

    /// The multiplication operator by `t̃ x_i`.
    pub fn time_coordinate(n: usize, i: usize) -> Self {
        let mut m = PhasePoly::zero(n);
        m.c4[i] = 1.0.into();
        Self::multiplier(m)
    }

    /// `∂/∂x_i`.
    pub fn partial(n: usize, i: usize) -> Self {
        let mut d = Self::zero(n);
        d.dx_const[i] = 1.0.into();
        d
    }

    /// `∂/∂t̃`.
    pub fn partial_t(n: usize) -> Self {
        DiffOp { dt: 1.0.into(), ..Self::zero(n) }
    }

    /// `t̃ ∂/∂x_i`.
    pub fn time_partial(n: usize, i: usize) -> Self {
        let mut d = Self::zero(n);
        d.dx_linear_t[i] = 1.0.into();
        d
    }

    /// `x_i ∂_j − x_j ∂_i`.
    pub fn angular(n: usize, i: usize, j: usize) -> Self {
        let mut d = Self::zero(n);
        d.dx_linear_x[(j, i)] = 1.0.into();
        d.dx_linear_x[(i, j)] = (-1.0).into();
        d
    }

    pub fn add(&self, o: &Self) -> Self {
        DiffOp {
            mult: self.mult.add(&o.mult),
            dx_const: &self.dx_const + &o.dx_const,
            dx_linear_t: &self.dx_linear_t + &o.dx_linear_t,
            dx_linear_x: &self.dx_linear_x + &o.dx_linear_x,
            dt: self.dt + o.dt,
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        DiffOp {
            mult: self.mult.scale(s),
            dx_const: &self.dx_const * s,
            dx_linear_t: &self.dx_linear_t * s,
            dx_linear_x: &self.dx_linear_x * s,
            dt: self.dt * s,
        }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(s.into())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale_re(-1.0))
    }

    pub fn max_abs(&self) -> f64 {
        [self.mult.max_abs(), vec_max(&self.dx_const), vec_max(&self.dx_linear_t), self.dt.norm()]
            .into_iter()
            .fold(self.dx_linear_x.iter().map(|c| c.norm()).fold(0.0, f64::max), f64::max)
    }

    pub fn max_deviation(&self, o: &Self) -> f64 {
        self.sub(o).max_abs()
    }

    pub fn is_multiplier(&self) -> bool {
        self.dt == Complex64::new(0.0, 0.0)
            && [&self.dx_const, &self.dx_linear_t].iter().all(|v| v.iter().all(|c| c.norm() == 0.0))
            && self.dx_linear_x.iter().all(|c| c.norm() == 0.0)
    }

    /// Flat coefficient vector (real and imaginary parts), for linear-span tests.
    pub fn coefficients(&self) -> Vec<f64> {
        let m = &self.mult;
        let mut out = Vec::new();
        let mut push = |c: Complex64| {
            out.push(c.re);
            out.push(c.im);
        };
        for c in [m.c0, m.c2, m.c3, m.c5, self.dt] {
            push(c);
        }
        for c in m.c1.iter().chain(m.c4.iter()).chain(self.dx_const.iter()).chain(self.dx_linear_t.iter()) {
            push(*c);
        }
        for c in self.dx_linear_x.iter() {
            push(*c);
        }
        out
    }

    /// Value of `Dψ` at a point given ψ, its x-gradient and its t̃-derivative there.
    pub fn apply_at(&self, x: &[f64], t: f64, psi: Complex64, grad: &[Complex64], dpsi_dt: Complex64) -> Complex64 {
        let xv: DVector<Complex64> = DVector::from_iterator(x.len(), x.iter().map(|v| Complex64::from(*v)));
        let v = &self.dx_const + &self.dx_linear_t * Complex64::from(t) + &self.dx_linear_x * xv;
        let mut out = self.mult.eval(x, t) * psi + self.dt * dpsi_dt;
        for (vi, gi) in v.iter().zip(grad) {
            out += vi * gi;
        }
        out
    }
}

/// Affine vector field `(a + b t̃ + L x)·∂_x + w ∂_t̃`.
struct Field<'a> {
    a: &'a DVector<Complex64>,
    b: &'a DVector<Complex64>,
    l: &'a DMatrix<Complex64>,
    w: Complex64,
}

impl<'a> Field<'a> {
    fn of(d: &'a DiffOp) -> Self {
        Field { a: &d.dx_const, b: &d.dx_linear_t, l: &d.dx_linear_x, w: d.dt }
    }
}

/// Scalar `s` with `L + Lᵀ = 2 s·1`, if it exists.
fn symmetric_scalar(l: &DMatrix<Complex64>, tol: f64) -> Option<Complex64> {
    let n = l.nrows();
    if n == 0 {
        return Some(0.0.into());
    }
    let sym = (l + l.transpose()) * Complex64::from(0.5);
    let s = sym.trace() / Complex64::from(n as f64);
    let off = (sym - DMatrix::identity(n, n) * s).iter().map(|c| c.norm()).fold(0.0, f64::max);
    (off <= tol).then_some(s)
}

/// `V·∇A` inside the family.
fn directional(v: &Field<'_>, p: &PhasePoly<Complex64>) -> Result<PhasePoly<Complex64>> {
    let two = Complex64::from(2.0);
    let quad = if p.c5.norm() == 0.0 {
        Complex64::from(0.0)
    } else {
        let scale = 1.0 + v.l.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let s = symmetric_scalar(v.l, 1e-12 * scale)
            .ok_or_else(|| Error::ClosureViolation("non-conformal linear field on |x|^2".into()))?;
        two * p.c5 * s
    };
    let lt = v.l.transpose();
    Ok(PhasePoly {
        c0: v.a.dot(&p.c1) + v.w * p.c2,
        c1: v.a * (two * p.c5) + &lt * &p.c1 + &p.c4 * v.w,
        c2: v.a.dot(&p.c4) + v.b.dot(&p.c1) + two * v.w * p.c3,
        c3: v.b.dot(&p.c4),
        c4: v.b * (two * p.c5) + &lt * &p.c4,
        c5: quad,
    })
}

/// `d1 d2 − d2 d1`, computed inside the family.
pub fn diff_commutator(d1: &DiffOp, d2: &DiffOp) -> Result<DiffOp> {
    if d1.n() != d2.n() {
        return Err(Error::LengthMismatch { expected: d1.n(), got: d2.n() });
    }
    let (f1, f2) = (Field::of(d1), Field::of(d2));
    let mult = directional(&f1, &d2.mult)?.sub(&directional(&f2, &d1.mult)?);
    let (l1, l2) = (&d1.dx_linear_x, &d2.dx_linear_x);
    Ok(DiffOp {
        mult,
        dx_const: l2 * &d1.dx_const - l1 * &d2.dx_const + &d2.dx_linear_t * d1.dt - &d1.dx_linear_t * d2.dt,
        dx_linear_t: l2 * &d1.dx_linear_t - l1 * &d2.dx_linear_t,
        dx_linear_x: l2 * l1 - l1 * l2,
        dt: 0.0.into(),
    })
}

const REAL_TOL: f64 = 1e-12;

fn real_vec(v: &DVector<Complex64>, what: &str) -> Result<DVector<f64>> {
    if v.iter().any(|c| c.im.abs() > REAL_TOL) {
        return Err(Error::UnsupportedGeneratorShape(format!("{what} is not real")));
    }
    Ok(v.map(|c| c.re))
}

/// `e^{iD}`: the time-1 flow of the real vector field `iV` with the multiplier
/// integrated along it.
///
/// A rotation part (`dx_linear_x ≠ 0`) is accepted when the translation parts of
/// the field vanish and the multiplier is rotation invariant.
pub fn exponentiate(d: &DiffOp) -> Result<QuadPhaseOperator> {
    let n = d.n();
    let m = &d.mult;
    let im = m.imag_part();
    if im.max_abs() > REAL_TOL {
        return Err(Error::UnsupportedGeneratorShape("multiplier is not real".into()));
    }
    let p = m.real_part();
    let alpha = real_vec(&d.dx_const.map(|c| I * c), "constant field")?;
    let beta = real_vec(&d.dx_linear_t.map(|c| I * c), "time-linear field")?;
    let w = I * d.dt;
    if w.im.abs() > REAL_TOL {
        return Err(Error::UnsupportedGeneratorShape("time field is not real".into()));
    }
    let w = w.re;
    let lam = d.dx_linear_x.map(|c| I * c);
    if lam.iter().any(|c| c.im.abs() > REAL_TOL) {
        return Err(Error::UnsupportedGeneratorShape("rotation field is not real".into()));
    }
    let lam = lam.map(|c| c.re);

    if lam.amax() > 0.0 {
        if (&lam + lam.transpose()).amax() > REAL_TOL {
            return Err(Error::UnsupportedGeneratorShape("linear field is not a rotation".into()));
        }
        if alpha.amax() > 0.0 || beta.amax() > 0.0 || p.c1.amax() > 0.0 || p.c4.amax() > 0.0 {
            return Err(Error::UnsupportedGeneratorShape("rotation mixed with translations".into()));
        }
        let phase = PhasePoly {
            c0: p.c0 + p.c2 * w / 2.0 + p.c3 * w * w / 3.0,
            c1: DVector::zeros(n),
            c2: p.c2 + p.c3 * w,
            c3: p.c3,
            c4: DVector::zeros(n),
            c5: p.c5,
        };
        return Ok(QuadPhaseOperator {
            rot: lam.exp().transpose(),
            shift_a: DVector::zeros(n),
            shift_b: DVector::zeros(n),
            tau: w,
            phase,
        });
    }

    // x(s) = x + s(α + β t̃) + s² h with h = βW/2, t(s) = t̃ + sW
    let h = &beta * (w / 2.0);
    let (c1, c4, c5) = (&p.c1, &p.c4, p.c5);
    let phase = PhasePoly {
        c0: p.c0
            + c1.dot(&alpha) / 2.0
            + c1.dot(&h) / 3.0
            + p.c2 * w / 2.0
            + p.c3 * w * w / 3.0
            + c4.dot(&alpha) * w / 3.0
            + c4.dot(&h) * w / 4.0
            + c5 * (alpha.dot(&alpha) / 3.0 + alpha.dot(&h) / 2.0 + h.dot(&h) / 5.0),
        c1: c1 + c4 * (w / 2.0) + (&alpha + &h * (2.0 / 3.0)) * c5,
        c2: c1.dot(&beta) / 2.0
            + p.c2
            + p.c3 * w
            + c4.dot(&alpha) / 2.0
            + c4.dot(&beta) * w / 3.0
            + c4.dot(&h) / 3.0
            + c5 * (2.0 * alpha.dot(&beta) / 3.0 + beta.dot(&h) / 2.0),
        c3: p.c3 + c4.dot(&beta) / 2.0 + c5 * beta.dot(&beta) / 3.0,
        c4: c4 + &beta * c5,
        c5,
    };
    Ok(QuadPhaseOperator {
        rot: DMatrix::identity(n, n),
        shift_a: &alpha + &h,
        shift_b: beta,
        tau: w,
        phase,
    })
}

/// `U D U⁻¹`, again a [`DiffOp`].
pub fn conjugate(u: &QuadPhaseOperator, d: &DiffOp) -> Result<DiffOp> {
    if u.n() != d.n() {
        return Err(Error::LengthMismatch { expected: u.n(), got: d.n() });
    }
    let r: DMatrix<Complex64> = lift_mat(&u.rot);
    let (ua, ub): (DVector<Complex64>, DVector<Complex64>) = (lift_vec(&u.shift_a), lift_vec(&u.shift_b));
    let tau = Complex64::from(u.tau);
    let rl = &r * &d.dx_linear_x;
    let dx_const = &r * &d.dx_const + &r * &d.dx_linear_t * tau + &rl * &ua - &r * &ub * d.dt;
    let dx_linear_t = &r * &d.dx_linear_t + &rl * &ub;
    let dx_linear_x = &rl * r.transpose();
    let moved = DiffOp { mult: PhasePoly::zero(d.n()), dx_const, dx_linear_t, dx_linear_x, dt: d.dt };
    let grad = directional(&Field::of(&moved), &u.phase.to_complex())?.scale(-I);
    let mult = d.mult.substitute(&u.rot, &u.shift_a, &u.shift_b, u.tau).add(&grad);
    Ok(DiffOp { mult, ..moved })
}
