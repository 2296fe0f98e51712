use crate::geometry::C64;
use nalgebra::{Matrix3, SymmetricEigen};

pub type Mat3 = [[C64; 3]; 3];
pub type Vec3 = [C64; 3];

pub const ZERO3: Mat3 = [[C64 { re: 0.0, im: 0.0 }; 3]; 3];

/// h_M(u, v) = uᵗ M v̄.
pub fn h_form(m: &Mat3, u: &Vec3, v: &Vec3) -> C64 {
    let mut s = C64::new(0.0, 0.0);
    for j in 0..3 {
        for k in 0..3 {
            s += u[j] * m[j][k] * v[k].conj();
        }
    }
    s
}

pub fn add(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut c = ZERO3;
    for j in 0..3 {
        for k in 0..3 {
            c[j][k] = a[j][k] + b[j][k];
        }
    }
    c
}

pub fn scale(a: &Mat3, s: C64) -> Mat3 {
    let mut c = *a;
    c.iter_mut().flatten().for_each(|x| *x *= s);
    c
}

pub fn frobenius(a: &Mat3) -> f64 {
    a.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// max |a_jk − conj(a_kj)|.
pub fn hermitian_defect(a: &Mat3) -> f64 {
    let mut d: f64 = 0.0;
    for j in 0..3 {
        for k in 0..3 {
            d = d.max((a[j][k] - a[k][j].conj()).norm());
        }
    }
    d
}

/// Mat3 · v̄, i.e. the vector whose pairing with any u gives h_M(u, v).
pub fn mul_conj(a: &Mat3, v: &Vec3) -> Vec3 {
    let mut r = [C64::new(0.0, 0.0); 3];
    for j in 0..3 {
        for k in 0..3 {
            r[j] += a[j][k] * v[k].conj();
        }
    }
    r
}

/// Ascending eigenvalues of a Hermitian 3×3 matrix.
pub fn eigvals3(a: &Mat3) -> [f64; 3] {
    let m = Matrix3::from_fn(|j, k| 0.5 * (a[j][k] + a[k][j].conj()));
    let mut e: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    e.sort_by(|x, y| x.total_cmp(y));
    [e[0], e[1], e[2]]
}

/// Positive semidefiniteness through all principal minors, each compared
/// against −tol·‖A‖^size.
pub fn is_psd3(a: &Mat3, tol: f64) -> bool {
    let n = frobenius(a);
    let re = |j: usize, k: usize| a[j][k];
    for j in 0..3 {
        if re(j, j).re < -tol * n {
            return false;
        }
    }
    for (j, k) in [(0, 1), (0, 2), (1, 2)] {
        let m2 = re(j, j).re * re(k, k).re - re(j, k).norm_sqr();
        if m2 < -tol * n * n {
            return false;
        }
    }
    let det = det3(a).re;
    det >= -tol * n * n * n
}

pub fn det3(a: &Mat3) -> C64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

/// Hermitian 2×2 matrix [[a, b], [b̄, d]].
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct Herm2 {
    pub a: f64,
    pub b: C64,
    pub d: f64,
}

impl Herm2 {
    pub fn frobenius(&self) -> f64 {
        (self.a * self.a + 2.0 * self.b.norm_sqr() + self.d * self.d).sqrt()
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b.norm_sqr()
    }

    /// Ascending eigenvalues; the small one is recovered from det/λ_big
    /// to avoid cancellation.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let m = 0.5 * (self.a + self.d);
        let r = (0.5 * (self.a - self.d)).hypot(self.b.norm());
        if m >= 0.0 {
            let big = m + r;
            let small = if big != 0.0 { self.det() / big } else { 0.0 };
            [small.min(big), big]
        } else {
            let big = m - r;
            let other = self.det() / big;
            [big, other.max(big)]
        }
    }
}
