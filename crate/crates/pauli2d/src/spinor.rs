//! Exact 2x2 complex matrix algebra, Pauli matrices, spinor values and
//! closed-form spinor functions with analytic-derivative slots.

use crate::{C64, Error, Result};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Levi-Civita symbol on spatial spin indices `0,1,2` (meaning 1,2,3),
/// with `eps(0,1,2) = +1`.
pub fn eps3(a: usize, b: usize, c: usize) -> f64 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Planar Levi-Civita, `eps2(0,1) = +1`.
pub fn eps2(a: usize, b: usize) -> f64 {
    match (a, b) {
        (0, 1) => 1.0,
        (1, 0) => -1.0,
        _ => 0.0,
    }
}

/// 2x2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

impl Mat2 {
    pub fn zero() -> Self {
        Mat2([[ZERO; 2]; 2])
    }

    pub fn identity() -> Self {
        Mat2([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn from_real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2::new(a.into(), b.into(), c.into(), d.into())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Mat2([
            [self.0[0][0].conj(), self.0[1][0].conj()],
            [self.0[0][1].conj(), self.0[1][1].conj()],
        ])
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn commutator(a: &Mat2, b: &Mat2) -> Mat2 {
        *a * *b - *b * *a
    }

    pub fn anticommutator(a: &Mat2, b: &Mat2) -> Mat2 {
        *a * *b + *b * *a
    }

    pub fn scale(&self, s: C64) -> Mat2 {
        let mut m = *self;
        for r in &mut m.0 {
            for e in r {
                *e *= s;
            }
        }
        m
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let d = *self - self.adjoint();
        d.max_abs() <= tol
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|e| e.norm())
            .fold(0.0, f64::max)
    }

    /// Eigenvalues of a Hermitian matrix, ascending. Uses the closed form
    /// tr/2 ± sqrt(Δ² + |b|²).
    pub fn hermitian_eigenvalues(&self) -> Result<[f64; 2]> {
        if !self.is_hermitian(1e-12 * (1.0 + self.max_abs())) {
            return Err(Error::InvalidParam("matrix is not Hermitian".into()));
        }
        let t = 0.5 * self.trace().re;
        let delta = 0.5 * (self.0[0][0].re - self.0[1][1].re);
        let r = (delta * delta + self.0[0][1].norm_sqr()).sqrt();
        Ok([t - r, t + r])
    }

    pub fn apply(&self, s: &Spinor) -> Spinor {
        Spinor([
            self.0[0][0] * s.0[0] + self.0[0][1] * s.0[1],
            self.0[1][0] * s.0[0] + self.0[1][1] * s.0[1],
        ])
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let mut m = self;
        for (r, ro) in m.0.iter_mut().zip(o.0.iter()) {
            for (e, eo) in r.iter_mut().zip(ro.iter()) {
                *e += *eo;
            }
        }
        m
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self + o.neg()
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let mut m = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = self.0[i][0] * o.0[0][j] + self.0[i][1] * o.0[1][j];
            }
        }
        m
    }
}

impl Mul<C64> for Mat2 {
    type Output = Mat2;
    fn mul(self, s: C64) -> Mat2 {
        self.scale(s)
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;
    fn mul(self, s: f64) -> Mat2 {
        self.scale(s.into())
    }
}

/// Standard Pauli matrix `sigma^mu`, `mu = 0..3` (`sigma^0` is the identity).
pub fn pauli(mu: usize) -> Result<Mat2> {
    let i = C64::new(0.0, 1.0);
    match mu {
        0 => Ok(Mat2::identity()),
        1 => Ok(Mat2::new(ZERO, ONE, ONE, ZERO)),
        2 => Ok(Mat2::new(ZERO, -i, i, ZERO)),
        3 => Ok(Mat2::new(ONE, ZERO, ZERO, -ONE)),
        _ => Err(Error::Domain(format!("pauli index {mu} out of range 0..=3"))),
    }
}

/// `v . sigma = v1 sigma1 + v2 sigma2 + v3 sigma3`. Hermitian for real `v`,
/// eigenvalues ±|v|.
pub fn sigma_dot(v: [f64; 3]) -> Mat2 {
    Mat2::new(
        C64::new(v[2], 0.0),
        C64::new(v[0], -v[1]),
        C64::new(v[0], v[1]),
        C64::new(-v[2], 0.0),
    )
}

/// Two-component complex spinor value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor(pub [C64; 2]);

impl Spinor {
    pub fn zero() -> Self {
        Spinor([ZERO; 2])
    }

    pub fn new(a: C64, b: C64) -> Self {
        Spinor([a, b])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0[0].norm_sqr() + self.0[1].norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `<self, other> = conj(self) . other`.
    pub fn inner(&self, other: &Spinor) -> C64 {
        self.0[0].conj() * other.0[0] + self.0[1].conj() * other.0[1]
    }

    pub fn scale(&self, s: C64) -> Spinor {
        Spinor([self.0[0] * s, self.0[1] * s])
    }

    pub fn max_abs(&self) -> f64 {
        self.0[0].norm().max(self.0[1].norm())
    }
}

impl Add for Spinor {
    type Output = Spinor;
    fn add(self, o: Spinor) -> Spinor {
        Spinor([self.0[0] + o.0[0], self.0[1] + o.0[1]])
    }
}

impl Sub for Spinor {
    type Output = Spinor;
    fn sub(self, o: Spinor) -> Spinor {
        Spinor([self.0[0] - o.0[0], self.0[1] - o.0[1]])
    }
}

impl Neg for Spinor {
    type Output = Spinor;
    fn neg(self) -> Spinor {
        self.scale(C64::new(-1.0, 0.0))
    }
}

/// Domain descriptor for closed-form functions on the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    FullPlane,
    /// Half plane x2 >= 0.
    HalfPlane,
    /// Plane with a disk of radius `r_min` around the origin removed.
    Punctured { r_min: f64 },
}

impl Domain {
    pub fn contains(&self, x: [f64; 2]) -> bool {
        match self {
            Domain::FullPlane => true,
            Domain::HalfPlane => x[1] >= 0.0,
            Domain::Punctured { r_min } => x[0].hypot(x[1]) > *r_min,
        }
    }
}

/// First-order jet of a spinor function at a point: value and gradient.
#[derive(Debug, Clone, Copy)]
pub struct SpinorJet1 {
    pub v: Spinor,
    pub d: [Spinor; 2],
}

/// Second-order jet; `dd` holds (xx, xy, yy).
#[derive(Debug, Clone, Copy)]
pub struct SpinorJet2 {
    pub v: Spinor,
    pub d: [Spinor; 2],
    pub dd: [Spinor; 3],
}

impl SpinorJet2 {
    pub fn dd_at(&self, a: usize, b: usize) -> Spinor {
        self.dd[a + b]
    }

    pub fn laplacian(&self) -> Spinor {
        self.dd[0] + self.dd[2]
    }

    pub fn jet1(&self) -> SpinorJet1 {
        SpinorJet1 { v: self.v, d: self.d }
    }
}

/// Third-order jet; `ddd` holds (xxx, xxy, xyy, yyy).
#[derive(Debug, Clone, Copy)]
pub struct SpinorJet3 {
    pub v: Spinor,
    pub d: [Spinor; 2],
    pub dd: [Spinor; 3],
    pub ddd: [Spinor; 4],
}

impl SpinorJet3 {
    pub fn jet2(&self) -> SpinorJet2 {
        SpinorJet2 { v: self.v, d: self.d, dd: self.dd }
    }

    pub fn dd_at(&self, a: usize, b: usize) -> Spinor {
        self.dd[a + b]
    }

    pub fn ddd_at(&self, a: usize, b: usize, c: usize) -> Spinor {
        self.ddd[a + b + c]
    }
}

type ValueFn = Arc<dyn Fn([f64; 2]) -> Spinor + Send + Sync>;
type GradFn = Arc<dyn Fn([f64; 2]) -> [Spinor; 2] + Send + Sync>;
type HessFn = Arc<dyn Fn([f64; 2]) -> [Spinor; 3] + Send + Sync>;

/// A closed-form spinor function with optional analytic derivative slots.
/// Missing slots fall back to 4th-order central differences with step 1e-4.
#[derive(Clone)]
pub struct ClosedFormSpinorFn {
    value: ValueFn,
    grad: Option<GradFn>,
    hess: Option<HessFn>,
    domain: Domain,
}

pub const FD_STEP: f64 = 1e-4;

/// 4th-order central first derivative.
pub fn fd_d1<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}

impl ClosedFormSpinorFn {
    pub fn new<F>(domain: Domain, value: F) -> Self
    where
        F: Fn([f64; 2]) -> Spinor + Send + Sync + 'static,
    {
        ClosedFormSpinorFn { value: Arc::new(value), grad: None, hess: None, domain }
    }

    pub fn with_grad<G>(mut self, grad: G) -> Self
    where
        G: Fn([f64; 2]) -> [Spinor; 2] + Send + Sync + 'static,
    {
        self.grad = Some(Arc::new(grad));
        self
    }

    pub fn with_hess<H>(mut self, hess: H) -> Self
    where
        H: Fn([f64; 2]) -> [Spinor; 3] + Send + Sync + 'static,
    {
        self.hess = Some(Arc::new(hess));
        self
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn has_analytic_grad(&self) -> bool {
        self.grad.is_some()
    }

    pub fn value(&self, x: [f64; 2]) -> Result<Spinor> {
        if !self.domain.contains(x) {
            return Err(Error::Domain(format!("point ({}, {}) outside domain", x[0], x[1])));
        }
        Ok((self.value)(x))
    }

    fn fd_check_room(&self, x: [f64; 2], h: f64) -> Result<()> {
        for sa in [-2.0, 2.0] {
            for axis in 0..2 {
                let mut y = x;
                y[axis] += sa * h;
                if !self.domain.contains(y) {
                    return Err(Error::Domain(
                        "no stencil room for finite differences at boundary point".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn grad(&self, x: [f64; 2]) -> Result<[Spinor; 2]> {
        if let Some(g) = &self.grad {
            return Ok(g(x));
        }
        self.fd_check_room(x, FD_STEP)?;
        let mut out = [Spinor::zero(); 2];
        for (axis, slot) in out.iter_mut().enumerate() {
            for c in 0..2 {
                let f = |t: f64| {
                    let mut y = x;
                    y[axis] = t;
                    (self.value)(y).0[c]
                };
                let re = fd_d1(|t| f(t).re, x[axis], FD_STEP);
                let im = fd_d1(|t| f(t).im, x[axis], FD_STEP);
                slot.0[c] = C64::new(re, im);
            }
        }
        Ok(out)
    }

    pub fn jet2(&self, x: [f64; 2]) -> Result<SpinorJet2> {
        let v = self.value(x)?;
        let d = self.grad(x)?;
        let dd = if let Some(hf) = &self.hess {
            hf(x)
        } else {
            self.fd_check_room(x, FD_STEP)?;
            // second derivatives of the (possibly analytic) gradient
            let mut dd = [Spinor::zero(); 3];
            let h = FD_STEP;
            for (ax, bx, slot) in [(0usize, 0usize, 0usize), (0, 1, 1), (1, 1, 2)] {
                for c in 0..2 {
                    let g = |t: f64| -> C64 {
                        let mut y = x;
                        y[bx] = t;
                        self.grad(y).map(|gr| gr[ax].0[c]).unwrap_or(C64::new(f64::NAN, 0.0))
                    };
                    let re = fd_d1(|t| g(t).re, x[bx], h);
                    let im = fd_d1(|t| g(t).im, x[bx], h);
                    dd[slot].0[c] = C64::new(re, im);
                }
            }
            dd
        };
        Ok(SpinorJet2 { v, d, dd })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: C64, b: C64, tol: f64) {
        assert!((a - b).norm() <= tol, "{a} vs {b}");
    }

    #[test]
    fn pauli_identity_and_squares() {
        let s0 = pauli(0).unwrap();
        assert_eq!(s0, Mat2::identity());
        for mu in 1..4 {
            let s = pauli(mu).unwrap();
            assert_eq!(s * s, Mat2::identity());
            assert!(s.is_hermitian(0.0));
            assert_close(s.det(), C64::new(-1.0, 0.0), 0.0);
        }
        assert!(pauli(4).is_err());
    }

    #[test]
    fn pauli_multiplication_table() {
        // sigma^a sigma^b = delta^{ab} I + i eps^{abc} sigma^c, all 16 products
        for a in 0..4 {
            for b in 0..4 {
                let lhs = pauli(a).unwrap() * pauli(b).unwrap();
                let mut rhs = Mat2::zero();
                if a == 0 {
                    rhs = pauli(b).unwrap();
                } else if b == 0 {
                    rhs = pauli(a).unwrap();
                } else if a == b {
                    rhs = Mat2::identity();
                } else {
                    for c in 1..4 {
                        let e = eps3(a - 1, b - 1, c - 1);
                        if e != 0.0 {
                            rhs = rhs + pauli(c).unwrap().scale(C64::new(0.0, e));
                        }
                    }
                }
                assert!((lhs - rhs).max_abs() == 0.0, "product table at ({a},{b})");
            }
        }
    }

    #[test]
    fn anticommutators_and_commutators() {
        for a in 1..4 {
            for b in 1..4 {
                let ac = Mat2::anticommutator(&pauli(a).unwrap(), &pauli(b).unwrap());
                let expect = if a == b { Mat2::identity().scale(C64::new(2.0, 0.0)) } else { Mat2::zero() };
                assert!((ac - expect).max_abs() == 0.0);
            }
        }
        // [s1, s2] = 2i s3
        let c = Mat2::commutator(&pauli(1).unwrap(), &pauli(2).unwrap());
        assert!((c - pauli(3).unwrap().scale(C64::new(0.0, 2.0))).max_abs() == 0.0);
        // [s0, A] = 0
        let a = sigma_dot([0.3, -1.2, 0.7]);
        assert!(Mat2::commutator(&pauli(0).unwrap(), &a).max_abs() == 0.0);
    }

    #[test]
    fn sigma_dot_examples() {
        let m = sigma_dot([0.0, 0.0, 1.0]);
        assert_eq!(m, pauli(3).unwrap());
        let (mu, nu) = (0.8, -0.4);
        let m = sigma_dot([mu, 0.0, nu]);
        assert_close(m.0[0][0], C64::new(nu, 0.0), 0.0);
        assert_close(m.0[0][1], C64::new(mu, 0.0), 0.0);
        assert_close(m.0[1][0], C64::new(mu, 0.0), 0.0);
        assert_close(m.0[1][1], C64::new(-nu, 0.0), 0.0);
        // eigenvalues of sigma.(3,4,0) are +-5 (|v| = 5)
        let ev = sigma_dot([3.0, 4.0, 0.0]).hermitian_eigenvalues().unwrap();
        assert!((ev[0] + 5.0).abs() < 1e-14 && (ev[1] - 5.0).abs() < 1e-14);
        // Hermiticity of sigma_dot for real v
        let v = sigma_dot([1.1, 2.2, -0.3]);
        assert!((v.adjoint() - v).max_abs() == 0.0);
    }

    #[test]
    fn closed_form_fd_gradient_matches_analytic() {
        let f = ClosedFormSpinorFn::new(Domain::FullPlane, |x| {
            Spinor::new(
                C64::new((x[0] * x[1]).sin(), x[0] * x[0]),
                C64::new(x[1].cos(), -x[0] * x[1] * x[1]),
            )
        });
        let g = f.grad([0.7, -0.3]).unwrap();
        // analytic: d/dx of sin(xy) = y cos(xy), etc.
        let (x, y) = (0.7, -0.3);
        assert_close(g[0].0[0], C64::new(y * (x * y).cos(), 2.0 * x), 1e-10);
        assert_close(g[1].0[0], C64::new(x * (x * y).cos(), 0.0), 1e-10);
        assert_close(g[1].0[1], C64::new(-y.sin(), -2.0 * x * y), 1e-10);
    }

    #[test]
    fn domain_guard() {
        let f = ClosedFormSpinorFn::new(Domain::Punctured { r_min: 1e-6 }, |_| Spinor::zero());
        assert!(f.value([0.0, 0.0]).is_err());
        assert!(f.value([1.0, 0.0]).is_ok());
        // boundary point without stencil room
        let g = ClosedFormSpinorFn::new(Domain::HalfPlane, |_| Spinor::zero());
        assert!(g.grad([0.0, 0.0]).is_err());
        assert!(g.grad([0.0, 1.0]).is_ok());
    }
}
