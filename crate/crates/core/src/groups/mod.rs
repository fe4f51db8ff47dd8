//! Closed-form group law of QHa(n), its (2n+6)-dimensional matrix realization and
//! the subgroup embeddings used by the representation builders.

pub mod cover;

use nalgebra::{DMatrix, DVector, Matrix3, UnitQuaternion, Vector3};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealg::{basis_generators, Family, Gen, Rational};

pub use cover::{random_su2, spin_generator, su2_from_quaternion, su2_project, wigner_d, CoverParams};

pub const ORTHO_TOL: f64 = 1e-12;

/// An element Γ(R, v, f, r, q, t, p, ε, ι, s, u) of QHa(n).
#[derive(Clone, Debug, PartialEq)]
pub struct GroupParams {
    pub rot: DMatrix<f64>,
    pub v: DVector<f64>,
    pub f: DVector<f64>,
    pub r: f64,
    pub q: DVector<f64>,
    pub t: f64,
    pub p: DVector<f64>,
    pub eps: f64,
    pub iota: f64,
    pub s: f64,
    pub u: f64,
}

impl GroupParams {
    pub fn identity(n: usize) -> Self {
        let z = DVector::zeros(n);
        GroupParams {
            rot: DMatrix::identity(n, n),
            v: z.clone(),
            f: z.clone(),
            r: 0.0,
            q: z.clone(),
            t: 0.0,
            p: z,
            eps: 0.0,
            iota: 0.0,
            s: 0.0,
            u: 0.0,
        }
    }

    pub fn n(&self) -> usize {
        self.v.len()
    }

    /// Checks shapes and that R is special orthogonal.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if n == 0 {
            return Err(Error::InvalidDimension(0));
        }
        for len in [self.f.len(), self.q.len(), self.p.len(), self.rot.nrows(), self.rot.ncols()] {
            if len != n {
                return Err(Error::LengthMismatch { expected: n, got: len });
            }
        }
        let dev = orthogonality_defect(&self.rot);
        if dev > ORTHO_TOL || self.rot.determinant() <= 0.0 {
            return Err(Error::NotUnitary(dev));
        }
        Ok(())
    }

    pub fn with_rotation(mut self, rot: DMatrix<f64>) -> Self {
        self.rot = rot;
        self
    }

    /// Hamilton subgroup element K(R, v, f, r).
    pub fn hamilton(rot: DMatrix<f64>, v: DVector<f64>, f: DVector<f64>, r: f64) -> Self {
        let mut g = Self::identity(v.len());
        g.rot = rot;
        g.v = v;
        g.f = f;
        g.r = r;
        g
    }

    /// Galilei subgroup element Γ(R, t, v, q, s).
    pub fn galilei(rot: DMatrix<f64>, t: f64, v: DVector<f64>, q: DVector<f64>, s: f64) -> Self {
        let mut g = Self::identity(v.len());
        g.rot = rot;
        g.t = t;
        g.v = v;
        g.q = q;
        g.s = s;
        g
    }

    /// Υ(q, t, p, ε, ι) in H(n+1).
    pub fn upsilon(q: DVector<f64>, t: f64, p: DVector<f64>, eps: f64, iota: f64) -> Self {
        let mut g = Self::identity(q.len());
        g.q = q;
        g.t = t;
        g.p = p;
        g.eps = eps;
        g.iota = iota;
        g
    }

    /// A(s, u) in the central A(2).
    pub fn central(n: usize, iota: f64, s: f64, u: f64) -> Self {
        let mut g = Self::identity(n);
        g.iota = iota;
        g.s = s;
        g.u = u;
        g
    }

    /// Same element with ι, s, u set to zero.
    pub fn without_center(&self) -> Self {
        let mut g = self.clone();
        g.iota = 0.0;
        g.s = 0.0;
        g.u = 0.0;
        g
    }

    /// Maximum componentwise deviation (rotation entries included).
    pub fn max_deviation(&self, other: &GroupParams) -> f64 {
        let vecs = [(&self.v, &other.v), (&self.f, &other.f), (&self.q, &other.q), (&self.p, &other.p)];
        let mut dev = (&self.rot - &other.rot).amax();
        for (a, b) in vecs {
            dev = dev.max((a - b).amax());
        }
        let scalars = [
            (self.r, other.r),
            (self.t, other.t),
            (self.eps, other.eps),
            (self.iota, other.iota),
            (self.s, other.s),
            (self.u, other.u),
        ];
        scalars.iter().fold(dev, |d, (a, b)| d.max((a - b).abs()))
    }

    /// Random element: rotation from a normalized quaternion (n = 3) or an
    /// orthonormalized random matrix, other parameters uniform in [-2, 2].
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        let rot = random_rotation(n, rng);
        let mut vec = || DVector::from_fn(n, |_, _| rng.gen_range(-2.0..=2.0));
        let (v, f, q, p) = (vec(), vec(), vec(), vec());
        let mut sc = || rng.gen_range(-2.0..=2.0);
        GroupParams { rot, v, f, r: sc(), q, t: sc(), p, eps: sc(), iota: sc(), s: sc(), u: sc() }
    }

    /// Restricts a random element to the parameters of a subgroup family.
    pub fn restrict(&self, family: Family) -> Self {
        let n = self.n();
        let mut g = self.clone();
        match family {
            Family::WeylHeisenberg => {
                g = GroupParams::upsilon(self.q.clone(), 0.0, self.p.clone(), 0.0, self.iota);
            }
            Family::Hamilton => g = GroupParams::hamilton(self.rot.clone(), self.v.clone(), self.f.clone(), self.r),
            Family::Galilei => {
                g = GroupParams::galilei(self.rot.clone(), self.t, self.v.clone(), self.q.clone(), self.s);
            }
            Family::GalileiConjugate => {
                g = GroupParams::identity(n);
                g.rot = self.rot.clone();
                g.t = self.t;
                g.f = self.f.clone();
                g.p = self.p.clone();
                g.u = self.u;
            }
            Family::Euclidean => {
                g = GroupParams::identity(n);
                g.rot = self.rot.clone();
                g.v = self.v.clone();
            }
            Family::InhomHamilton => g = self.without_center(),
            Family::QuantumHamilton => {}
        }
        g
    }
}

pub fn orthogonality_defect(rot: &DMatrix<f64>) -> f64 {
    let n = rot.nrows();
    (rot.transpose() * rot - DMatrix::<f64>::identity(n, n)).amax()
}

pub fn random_rotation<R: Rng>(n: usize, rng: &mut R) -> DMatrix<f64> {
    match n {
        3 => {
            let q = random_unit_quaternion(rng);
            let m: Matrix3<f64> = q.to_rotation_matrix().into_inner();
            DMatrix::from_fn(3, 3, |i, j| m[(i, j)])
        }
        _ => {
            let a = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..=1.0));
            let qr = a.qr();
            let (mut q, r) = (qr.q(), qr.r());
            for j in 0..n {
                if r[(j, j)] < 0.0 {
                    q.column_mut(j).neg_mut();
                }
            }
            if q.determinant() < 0.0 {
                q.column_mut(0).neg_mut();
            }
            q
        }
    }
}

/// Uniform random unit quaternion (normalized Gaussian-free 4-vector by rejection).
pub fn random_unit_quaternion<R: Rng>(rng: &mut R) -> UnitQuaternion<f64> {
    loop {
        let w: [f64; 4] = [
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
        ];
        let norm2: f64 = w.iter().map(|x| x * x).sum();
        if norm2 > 1e-6 && norm2 <= 1.0 {
            let q = nalgebra::Quaternion::new(w[0], w[1], w[2], w[3]);
            return UnitQuaternion::from_quaternion(q);
        }
    }
}

/// Rotation by `angle` about a coordinate axis (n = 3).
pub fn axis_rotation(axis: usize, angle: f64) -> DMatrix<f64> {
    let mut a = Vector3::zeros();
    a[axis] = 1.0;
    let m = nalgebra::Rotation3::from_axis_angle(&nalgebra::Unit::new_normalize(a), angle).into_inner();
    DMatrix::from_fn(3, 3, |i, j| m[(i, j)])
}

fn check_same_n(a: &GroupParams, b: &GroupParams) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::LengthMismatch { expected: a.n(), got: b.n() });
    }
    Ok(())
}

/// Closed-form product `a * b` (a is the primed factor).
pub fn product(a: &GroupParams, b: &GroupParams) -> Result<GroupParams> {
    check_same_n(a, b)?;
    let rp = &a.rot;
    let rv = rp * &b.v;
    let rf = rp * &b.f;
    let rq = rp * &b.q;
    let rpp = rp * &b.p;
    let (t, tp) = (b.t, a.t);
    let iota = b.iota
        + a.iota
        + 0.5
            * ((a.eps + a.q.dot(&a.f) - a.p.dot(&a.v) - a.r * tp) * t - b.eps * tp - (&a.p - &a.f * tp).dot(&rq)
                + (&a.q - &a.v * tp).dot(&rpp));
    Ok(GroupParams {
        rot: rp * &b.rot,
        v: &a.v + &rv,
        f: &a.f + &rf,
        r: a.r + b.r + a.v.dot(&rf) - a.f.dot(&rv),
        q: &a.q + &rq + &a.v * t,
        t: tp + t,
        p: &a.p + &rpp + &a.f * t,
        eps: a.eps + b.eps + a.v.dot(&rpp) - a.f.dot(&rq) + a.r * t,
        iota,
        s: b.s + a.s + a.v.dot(&rq) + 0.5 * t * a.v.norm_squared(),
        u: b.u + a.u + a.f.dot(&rpp) + 0.5 * t * a.f.norm_squared(),
    })
}

/// Closed-form inverse.
pub fn inverse(a: &GroupParams) -> GroupParams {
    let ri = a.rot.transpose();
    GroupParams {
        rot: ri.clone(),
        v: -(&ri * &a.v),
        f: -(&ri * &a.f),
        r: -a.r,
        q: -(&ri * &a.q) + (&ri * &a.v) * a.t,
        t: -a.t,
        p: -(&ri * &a.p) + (&ri * &a.f) * a.t,
        eps: -a.eps + a.v.dot(&a.p) - a.f.dot(&a.q) + a.r * a.t,
        iota: -a.iota,
        s: -a.s + a.v.dot(&a.q) - 0.5 * a.t * a.v.norm_squared(),
        u: -a.u + a.f.dot(&a.p) - 0.5 * a.t * a.f.norm_squared(),
    }
}

/// Row/column offsets of the realization: rotation blocks, then e, t, s, u, ι rows.
struct Layout {
    n: usize,
}

impl Layout {
    fn size(&self) -> usize {
        2 * self.n + 6
    }
    fn e(&self) -> usize {
        2 * self.n
    }
    fn t(&self) -> usize {
        2 * self.n + 1
    }
    fn s(&self) -> usize {
        2 * self.n + 2
    }
    fn u(&self) -> usize {
        2 * self.n + 3
    }
    fn iota(&self) -> usize {
        2 * self.n + 4
    }
    fn last(&self) -> usize {
        2 * self.n + 5
    }
}

/// The (2n+6)-dimensional matrix realization.
///
/// The ι-row energy entry is `ε - r t + q·f - p·v`; with this entry the map is a
/// homomorphism of the closed-form product for every rotation.
pub fn to_matrix(a: &GroupParams) -> DMatrix<f64> {
    let n = a.n();
    let l = Layout { n };
    let mut m = DMatrix::zeros(l.size(), l.size());
    let vr = a.rot.tr_mul(&a.v);
    let fr = a.rot.tr_mul(&a.f);
    let qr = a.rot.tr_mul(&(&a.q - &a.v * a.t));
    let pr = a.rot.tr_mul(&(&a.p - &a.f * a.t));
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = a.rot[(i, j)];
            m[(n + i, n + j)] = a.rot[(i, j)];
        }
        m[(i, l.t())] = a.f[i];
        m[(i, l.last())] = a.p[i];
        m[(n + i, l.t())] = a.v[i];
        m[(n + i, l.last())] = a.q[i];
        m[(l.e(), i)] = vr[i];
        m[(l.e(), n + i)] = -fr[i];
        m[(l.s(), n + i)] = vr[i];
        m[(l.u(), i)] = fr[i];
        m[(l.iota(), i)] = qr[i];
        m[(l.iota(), n + i)] = -pr[i];
    }
    m[(l.e(), l.e())] = 1.0;
    m[(l.e(), l.t())] = a.r;
    m[(l.e(), l.last())] = a.eps;
    m[(l.t(), l.t())] = 1.0;
    m[(l.t(), l.last())] = a.t;
    m[(l.s(), l.t())] = 0.5 * a.v.norm_squared();
    m[(l.s(), l.s())] = 1.0;
    m[(l.s(), l.last())] = a.s;
    m[(l.u(), l.t())] = 0.5 * a.f.norm_squared();
    m[(l.u(), l.u())] = 1.0;
    m[(l.u(), l.last())] = a.u;
    m[(l.iota(), l.e())] = -a.t;
    m[(l.iota(), l.t())] = a.eps - a.r * a.t + a.q.dot(&a.f) - a.p.dot(&a.v);
    m[(l.iota(), l.iota())] = 1.0;
    m[(l.iota(), l.last())] = 2.0 * a.iota;
    m[(l.last(), l.last())] = 1.0;
    m
}

/// Reads the parameters back from a realization matrix.
pub fn from_matrix(m: &DMatrix<f64>) -> Result<GroupParams> {
    let size = m.nrows();
    if size < 8 || size % 2 != 0 || m.ncols() != size {
        return Err(Error::LengthMismatch { expected: 8, got: size });
    }
    let n = (size - 6) / 2;
    let l = Layout { n };
    Ok(GroupParams {
        rot: m.view((0, 0), (n, n)).into_owned(),
        v: DVector::from_fn(n, |i, _| m[(n + i, l.t())]),
        f: DVector::from_fn(n, |i, _| m[(i, l.t())]),
        r: m[(l.e(), l.t())],
        q: DVector::from_fn(n, |i, _| m[(n + i, l.last())]),
        t: m[(l.t(), l.last())],
        p: DVector::from_fn(n, |i, _| m[(i, l.last())]),
        eps: m[(l.e(), l.last())],
        iota: 0.5 * m[(l.iota(), l.last())],
        s: m[(l.s(), l.last())],
        u: m[(l.u(), l.last())],
    })
}

/// Exact generator matrix in the realization, indexed like the matrix rows.
pub type RationalMatrix = Vec<Vec<Rational>>;

/// Derivatives at the identity of the realization, one per QHa(n) basis generator
/// in basis order. `R` is normalized as twice the r-derivative so that the
/// commutators reproduce the structure constants; `J_ij` is the derivative along
/// the rotation `exp(θ(E_ij - E_ji))`; P, Q, T, E pair with q, p, ε, t.
pub fn matrix_log_generators(n: usize) -> Result<Vec<(Gen, RationalMatrix)>> {
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let l = Layout { n };
    let gens = basis_generators(Family::QuantumHamilton.kinds(), n);
    let out = gens
        .into_iter()
        .map(|g| {
            let mut m: Vec<Vec<i64>> = vec![vec![0; l.size()]; l.size()];
            match g {
                Gen::J(i, j) => {
                    for off in [0, n] {
                        m[off + i][off + j] = 1;
                        m[off + j][off + i] = -1;
                    }
                }
                Gen::G(i) => {
                    m[n + i][l.t()] = 1;
                    m[l.e()][i] = 1;
                    m[l.s()][n + i] = 1;
                }
                Gen::F(i) => {
                    m[i][l.t()] = 1;
                    m[l.e()][n + i] = -1;
                    m[l.u()][i] = 1;
                }
                Gen::R => m[l.e()][l.t()] = 2,
                Gen::P(i) => {
                    m[n + i][l.last()] = 1;
                    m[l.iota()][i] = 1;
                }
                Gen::Q(i) => {
                    m[i][l.last()] = 1;
                    m[l.iota()][n + i] = -1;
                }
                Gen::T => {
                    m[l.e()][l.last()] = 1;
                    m[l.iota()][l.t()] = 1;
                }
                Gen::E => {
                    m[l.t()][l.last()] = 1;
                    m[l.iota()][l.e()] = -1;
                }
                Gen::M => m[l.s()][l.last()] = 1,
                Gen::A => m[l.u()][l.last()] = 1,
                Gen::I => m[l.iota()][l.last()] = 2,
            }
            let m = m.into_iter().map(|row| row.into_iter().map(crate::liealg::rat).collect()).collect();
            (g, m)
        })
        .collect();
    Ok(out)
}

/// Generator pairs whose matrix commutator differs from the structure constants
/// of QHa(n), compared exactly.
pub fn generator_bracket_mismatches(n: usize) -> Result<Vec<(Gen, Gen)>> {
    let gens = matrix_log_generators(n)?;
    let alg = crate::liealg::builtin_algebra(Family::QuantumHamilton, n)?;
    let size = gens[0].1.len();
    let mut bad = Vec::new();
    for a in 0..gens.len() {
        for b in 0..gens.len() {
            let ab = rational_matmul(&gens[a].1, &gens[b].1);
            let ba = rational_matmul(&gens[b].1, &gens[a].1);
            let mut diff: RationalMatrix = (0..size).map(|i| (0..size).map(|j| &ab[i][j] - &ba[i][j]).collect()).collect();
            for (k, c) in alg.bracket_basis(a, b) {
                for (i, row) in diff.iter_mut().enumerate() {
                    for (j, x) in row.iter_mut().enumerate() {
                        *x -= &c * &gens[k].1[i][j];
                    }
                }
            }
            if diff.iter().flatten().any(|x| *x != Rational::from_integer(0.into())) {
                bad.push((gens[a].0, gens[b].0));
            }
        }
    }
    Ok(bad)
}

pub fn rational_matmul(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
    use num_traits::Zero;
    let n = a.len();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += aik * &b[k][j];
                }
            }
        }
    }
    out
}

/// The four factors Υ(q,t,p,ε,ι), A(s,u), Υ̃(v,f,r) and R.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub upsilon: GroupParams,
    pub a2: GroupParams,
    pub upsilon_tilde: GroupParams,
    pub rotation: GroupParams,
}

impl Factorization {
    pub fn reassemble(&self) -> Result<GroupParams> {
        let x = product(&self.upsilon, &self.a2)?;
        let x = product(&x, &self.upsilon_tilde)?;
        product(&x, &self.rotation)
    }
}

/// Splits an element as Υ(q,t,p,ε,ι) A(s,u) Υ̃(v,f,r) R with the element's own parameters.
pub fn factorize(a: &GroupParams) -> Factorization {
    let n = a.n();
    let mut rotation = GroupParams::identity(n);
    rotation.rot = a.rot.clone();
    Factorization {
        upsilon: GroupParams::upsilon(a.q.clone(), a.t, a.p.clone(), a.eps, a.iota),
        a2: GroupParams::central(n, 0.0, a.s, a.u),
        upsilon_tilde: GroupParams::hamilton(DMatrix::identity(n, n), a.v.clone(), a.f.clone(), a.r),
        rotation,
    }
}

/// Central part (ι, s, u) of the product of two central-free elements.
pub fn cocycle(x1: &GroupParams, x2: &GroupParams) -> Result<[f64; 3]> {
    let g = product(&x1.without_center(), &x2.without_center())?;
    Ok([g.iota, g.s, g.u])
}

/// Left side minus right side of the 2-cocycle identity on a triple.
pub fn cocycle_defect(x1: &GroupParams, x2: &GroupParams, x3: &GroupParams) -> Result<f64> {
    let x12 = product(x1, x2)?.without_center();
    let x23 = product(x2, x3)?.without_center();
    let a = cocycle(x1, x2)?;
    let b = cocycle(&x12, x3)?;
    let c = cocycle(x2, x3)?;
    let d = cocycle(x1, &x23)?;
    Ok((0..3).map(|k| (a[k] + b[k] - c[k] - d[k]).abs()).fold(0.0, f64::max))
}

/// Weyl-Heisenberg element Υ(a, b, ι), embedded as Γ(q = a, p = b, ι).
#[derive(Clone, Debug, PartialEq)]
pub struct WhElement {
    pub a: DVector<f64>,
    pub b: DVector<f64>,
    pub iota: f64,
}

impl WhElement {
    pub fn identity(n: usize) -> Self {
        WhElement { a: DVector::zeros(n), b: DVector::zeros(n), iota: 0.0 }
    }

    pub fn product(&self, other: &WhElement) -> WhElement {
        WhElement {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            iota: self.iota + other.iota + 0.5 * (self.a.dot(&other.b) - self.b.dot(&other.a)),
        }
    }

    pub fn embed(&self) -> GroupParams {
        GroupParams::upsilon(self.a.clone(), 0.0, self.b.clone(), 0.0, self.iota)
    }

    pub fn from_params(g: &GroupParams) -> WhElement {
        WhElement { a: g.q.clone(), b: g.p.clone(), iota: g.iota }
    }
}

/// Flat JSON form of a group element.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupParamsJson {
    pub n: usize,
    #[serde(rename = "R")]
    pub rot: Vec<f64>,
    pub v: Vec<f64>,
    pub f: Vec<f64>,
    pub r: f64,
    pub q: Vec<f64>,
    pub t: f64,
    pub p: Vec<f64>,
    pub eps: f64,
    pub iota: f64,
    pub s: f64,
    pub u: f64,
}

impl From<&GroupParams> for GroupParamsJson {
    fn from(g: &GroupParams) -> Self {
        let n = g.n();
        GroupParamsJson {
            n,
            rot: (0..n * n).map(|k| g.rot[(k / n, k % n)]).collect(),
            v: g.v.iter().copied().collect(),
            f: g.f.iter().copied().collect(),
            r: g.r,
            q: g.q.iter().copied().collect(),
            t: g.t,
            p: g.p.iter().copied().collect(),
            eps: g.eps,
            iota: g.iota,
            s: g.s,
            u: g.u,
        }
    }
}

impl TryFrom<GroupParamsJson> for GroupParams {
    type Error = Error;

    fn try_from(j: GroupParamsJson) -> Result<Self> {
        let n = j.n;
        if j.rot.len() != n * n {
            return Err(Error::LengthMismatch { expected: n * n, got: j.rot.len() });
        }
        let g = GroupParams {
            rot: DMatrix::from_row_slice(n, n, &j.rot),
            v: DVector::from_vec(j.v),
            f: DVector::from_vec(j.f),
            r: j.r,
            q: DVector::from_vec(j.q),
            t: j.t,
            p: DVector::from_vec(j.p),
            eps: j.eps,
            iota: j.iota,
            s: j.s,
            u: j.u,
        };
        g.validate()?;
        Ok(g)
    }
}

impl GroupParams {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&GroupParamsJson::from(self))?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: GroupParamsJson = serde_json::from_str(s)?;
        j.try_into()
    }
}
