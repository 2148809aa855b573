use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

pub type C = Complex64;

pub(crate) fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// A 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[C; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        Mat2::real([[1.0, 0.0], [0.0, 1.0]])
    }

    pub fn real(m: [[f64; 2]; 2]) -> Self {
        Mat2([
            [c(m[0][0], 0.0), c(m[0][1], 0.0)],
            [c(m[1][0], 0.0), c(m[1][1], 0.0)],
        ])
    }

    pub fn pauli_x() -> Self {
        Mat2::real([[0.0, 1.0], [1.0, 0.0]])
    }

    pub fn pauli_y() -> Self {
        Mat2([[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]])
    }

    pub fn pauli_z() -> Self {
        Mat2::real([[1.0, 0.0], [0.0, -1.0]])
    }

    pub fn scale(self, s: f64) -> Self {
        let m = self.0;
        Mat2([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn adjoint(self) -> Self {
        let m = self.0;
        Mat2([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn trace(self) -> C {
        self.0[0][0] + self.0[1][1]
    }

    /// Largest entrywise modulus.
    pub fn max_abs(self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Eigenvalues `(λ_min, λ_max)` of a Hermitian matrix, in closed form.
    pub fn hermitian_eigenvalues(self) -> (f64, f64) {
        let a = self.0[0][0].re;
        let d = self.0[1][1].re;
        let b = self.0[0][1];
        let mean = 0.5 * (a + d);
        let radius = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        (mean - radius, mean + radius)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let (a, b) = (self.0, o.0);
        Mat2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self + o.scale(-1.0)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let (a, b) = (self.0, o.0);
        let mut out = [[c(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(out)
    }
}

/// `⟨ψ| A ⊗ B |ψ⟩` for a two-qubit vector in the basis `|00⟩, |01⟩, |10⟩, |11⟩`.
pub fn expectation(psi: &[C; 4], a: &Mat2, b: &Mat2) -> C {
    let mut acc = c(0.0, 0.0);
    for i in 0..2 {
        for k in 0..2 {
            let bra = psi[2 * i + k].conj();
            for j in 0..2 {
                for l in 0..2 {
                    acc += bra * a.0[i][j] * b.0[k][l] * psi[2 * j + l];
                }
            }
        }
    }
    acc
}
