//! SU(2) double cover of the n = 3 rotations and the spin-j matrices.

use nalgebra::{DMatrix, Matrix2, Matrix3};
use num_complex::Complex64;
use rand::Rng;

use super::{product, random_unit_quaternion, GroupParams, ORTHO_TOL};
use crate::error::{Error, Result};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn pauli() -> [Matrix2<Complex64>; 3] {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    [Matrix2::new(z, o, o, z), Matrix2::new(z, -i, i, z), Matrix2::new(o, z, z, -o)]
}

/// `a·1 - i(b σ1 + c σ2 + d σ3)` for a unit quaternion (a, b, c, d).
pub fn su2_from_quaternion(a: f64, b: f64, cc: f64, d: f64) -> Matrix2<Complex64> {
    let s = pauli();
    let mut m = Matrix2::identity() * c(a, 0.0);
    for (k, w) in [b, cc, d].into_iter().enumerate() {
        m -= s[k] * c(0.0, w);
    }
    m
}

pub fn random_su2<R: Rng>(rng: &mut R) -> Matrix2<Complex64> {
    let q = random_unit_quaternion(rng);
    su2_from_quaternion(q.w, q.i, q.j, q.k)
}

/// `exp(-i θ n·σ / 2)` for a unit axis.
pub fn su2_axis_angle(axis: [f64; 3], theta: f64) -> Matrix2<Complex64> {
    let (sn, cs) = (0.5 * theta).sin_cos();
    su2_from_quaternion(cs, sn * axis[0], sn * axis[1], sn * axis[2])
}

pub fn su2_defect(rbar: &Matrix2<Complex64>) -> f64 {
    let unit = (rbar.adjoint() * rbar - Matrix2::identity()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    unit.max((rbar.determinant() - c(1.0, 0.0)).norm())
}

/// Rotation with `Rbar σ_j Rbar† = Σ_i R_ij σ_i`.
pub fn su2_project(rbar: &Matrix2<Complex64>) -> Result<Matrix3<f64>> {
    let dev = su2_defect(rbar);
    if dev > ORTHO_TOL {
        return Err(Error::NotUnitary(dev));
    }
    let s = pauli();
    Ok(Matrix3::from_fn(|i, j| 0.5 * (s[i] * rbar * s[j] * rbar.adjoint()).trace().re))
}

pub fn su2_project_dyn(rbar: &Matrix2<Complex64>) -> Result<DMatrix<f64>> {
    let m = su2_project(rbar)?;
    Ok(DMatrix::from_fn(3, 3, |i, j| m[(i, j)]))
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|x| x as f64).product()
}

fn binomial(n: usize, k: usize) -> f64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn two_j(j: f64) -> Result<usize> {
    let tj = 2.0 * j;
    if !(tj >= 0.0) || (tj - tj.round()).abs() > 1e-12 {
        return Err(Error::InvalidSpin(j));
    }
    Ok(tj.round() as usize)
}

/// Spin-j matrix on the normalized monomials `x^{j+m} y^{j-m}`, m = j, j-1, ..., -j,
/// with `x -> a x + c y`, `y -> b x + d y` for `Rbar = [[a, b], [c, d]]`.
pub fn wigner_d(j: f64, rbar: &Matrix2<Complex64>) -> Result<DMatrix<Complex64>> {
    let tj = two_j(j)?;
    let (a, b, cc, d) = (rbar[(0, 0)], rbar[(0, 1)], rbar[(1, 0)], rbar[(1, 1)]);
    let dim = tj + 1;
    let mut out = DMatrix::from_element(dim, dim, c(0.0, 0.0));
    // column `col` is the image of x^{px} y^{py}, px = tj - col
    for col in 0..dim {
        let (px, py) = (tj - col, col);
        for k in 0..=px {
            for l in 0..=py {
                let coef = a.powu(k as u32) * cc.powu((px - k) as u32) * b.powu(l as u32) * d.powu((py - l) as u32)
                    * (binomial(px, k) * binomial(py, l));
                let row = tj - (k + l);
                out[(row, col)] += coef;
            }
        }
        for row in 0..dim {
            let norm = (factorial(tj - row) * factorial(row) / (factorial(px) * factorial(py))).sqrt();
            out[(row, col)] *= norm;
        }
    }
    Ok(out)
}

/// Derivative of `wigner_d(j, exp(θ X))` at θ = 0 for a traceless 2×2 `X`.
pub fn spin_generator(j: f64, x: &Matrix2<Complex64>) -> Result<DMatrix<Complex64>> {
    let tj = two_j(j)?;
    let dim = tj + 1;
    let mut out = DMatrix::from_element(dim, dim, c(0.0, 0.0));
    // d/dθ of x^{px} y^{py} with x' = X00 x + X10 y, y' = X01 x + X11 y
    for col in 0..dim {
        let (px, py) = (tj - col, col);
        let mut add = |dx: i64, coef: Complex64| {
            let row = (col as i64 - dx) as usize;
            let norm = (factorial(tj - row) * factorial(row) / (factorial(px) * factorial(py))).sqrt();
            out[(row, col)] += coef * norm;
        };
        if px > 0 {
            add(0, x[(0, 0)] * px as f64);
            add(-1, x[(1, 0)] * px as f64);
        }
        if py > 0 {
            add(1, x[(0, 1)] * py as f64);
            add(0, x[(1, 1)] * py as f64);
        }
    }
    Ok(out)
}

/// Hermitian spin matrices `S_k` with `wigner_d(j, exp(-i θ σ_k / 2)) = exp(-i θ S_k)`.
pub fn spin_matrices(j: f64) -> Result<[DMatrix<Complex64>; 3]> {
    let s = pauli();
    let half = c(0.5, 0.0);
    Ok([
        spin_generator(j, &(s[0] * half))?,
        spin_generator(j, &(s[1] * half))?,
        spin_generator(j, &(s[2] * half))?,
    ])
}

/// Element of the cover: an SU(2) matrix in place of the rotation (n = 3).
#[derive(Clone, Debug, PartialEq)]
pub struct CoverParams {
    pub rbar: Matrix2<Complex64>,
    /// The remaining parameters; `params.rot` is the projection of `rbar`.
    pub params: GroupParams,
}

impl CoverParams {
    pub fn new(rbar: Matrix2<Complex64>, mut params: GroupParams) -> Result<Self> {
        if params.n() != 3 {
            return Err(Error::SpinNeedsThreeDimensions(params.n()));
        }
        params.rot = su2_project_dyn(&rbar)?;
        Ok(CoverParams { rbar, params })
    }

    /// Lifts an element whose rotation is given, picking one of the two preimages.
    pub fn lift(params: &GroupParams) -> Result<Self> {
        let m: Matrix3<f64> = Matrix3::from_fn(|i, j| params.rot[(i, j)]);
        let rot = nalgebra::Rotation3::from_matrix_unchecked(m);
        let q = nalgebra::UnitQuaternion::from_rotation_matrix(&rot);
        let rbar = su2_from_quaternion(q.w, q.i, q.j, q.k);
        Self::new(rbar, params.clone())
    }

    pub fn random<R: Rng>(rng: &mut R) -> Self {
        let rbar = random_su2(rng);
        let params = GroupParams::random(3, rng);
        Self::new(rbar, params).expect("random SU(2) element is valid")
    }

    /// The other preimage of the same rotation.
    pub fn negated(&self) -> Self {
        CoverParams { rbar: -self.rbar, params: self.params.clone() }
    }

    pub fn identity() -> Self {
        CoverParams { rbar: Matrix2::identity(), params: GroupParams::identity(3) }
    }
}

pub fn cover_product(a: &CoverParams, b: &CoverParams) -> Result<CoverParams> {
    let rbar = a.rbar * b.rbar;
    let mut params = product(&a.params, &b.params)?;
    params.rot = su2_project_dyn(&rbar)?;
    Ok(CoverParams { rbar, params })
}
