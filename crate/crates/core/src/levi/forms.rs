use super::hermitian::{add, h_form, Herm2, Mat3, ZERO3};
use crate::error::{Error, Result};
use crate::geometry::{tangent_frame, Point3, C64, I};
use crate::profiles::{EtaProfile, Jet};
use serde::Serialize;

/// Left-hand sides of the two pseudoconvexity inequalities together with
/// the magnitude of the terms entering each (for relative tolerances).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IneqValues {
    pub ineq1: f64,
    pub ineq3: f64,
    pub scale1: f64,
    pub scale3: f64,
}

impl IneqValues {
    pub fn holds(&self, tol: f64) -> bool {
        self.ineq1 >= -tol * self.scale1 && self.ineq3 >= -tol * self.scale3
    }
}

pub fn ineq_from_jet(j: &Jet) -> IneqValues {
    let g = j.d2 - j.d3;
    let ineq1 = j.value + j.d22;
    let ineq3 = j.d22 * j.d33 - j.d23 * j.d23 + j.value * (j.d22 + j.d33 - 2.0 * j.d23) - g * g;
    IneqValues {
        ineq1,
        ineq3,
        scale1: j.value.abs() + j.d22.abs(),
        scale3: (j.d22 * j.d33).abs()
            + j.d23 * j.d23
            + j.value.abs() * (j.d22.abs() + j.d33.abs() + 2.0 * j.d23.abs())
            + g * g,
    }
}

pub fn ineq_values(eta: &dyn EtaProfile, t2: f64, t3: f64) -> Result<IneqValues> {
    if !eta.is_smooth_at(t2, t3) {
        return Err(Error::NonSmoothPoint { t2, t3 });
    }
    Ok(ineq_from_jet(&eta.jet(t2, t3)))
}

/// The 2×2 block C of M + N in the (n₂, n₃) directions; det C = ineq3.
pub fn c_block(j: &Jet) -> Herm2 {
    Herm2 {
        a: j.value + j.d22,
        b: C64::new(j.value + j.d23, j.d2 - j.d3),
        d: j.value + j.d33,
    }
}

/// The z₁-part of the complex Hessian of ρ̃ = e^{arg(z₂z₃)²}ρ, divided by
/// e^{arg(z₂z₃)²}; entry (j, k) is ∂²/∂z_j∂z̄_k.
pub fn m_matrix(p: &Point3) -> Mat3 {
    let (z1, z2, z3) = (p.z1, p.z2, p.z3);
    let a = z1.norm_sqr();
    let one = C64::new(1.0, 0.0);
    [
        [one, I * z1.conj() / z2.conj(), I * z1.conj() / z3.conj()],
        [-I * z1 / z2, C64::from(a / z2.norm_sqr()), a / (z2 * z3.conj())],
        [-I * z1 / z3, a / (z2.conj() * z3), C64::from(a / z3.norm_sqr())],
    ]
}

/// The η-part of the same Hessian.
pub fn n_matrix(p: &Point3, j: &Jet) -> Mat3 {
    let (z2, z3) = (p.z2, p.z3);
    let e = j.value;
    let mut n = ZERO3;
    n[1][1] = C64::from((e + j.d22) / z2.norm_sqr());
    n[1][2] = C64::new(e + j.d23, j.d2 - j.d3) / (z2 * z3.conj());
    n[2][1] = C64::new(e + j.d23, j.d3 - j.d2) / (z2.conj() * z3);
    n[2][2] = C64::from((e + j.d33) / z3.norm_sqr());
    n
}

pub fn hessian_matrices(p: &Point3, eta: &dyn EtaProfile) -> Result<(Mat3, Mat3)> {
    let (t2, t3) = (p.t2(), p.t3());
    if !eta.is_smooth_at(t2, t3) {
        return Err(Error::NonSmoothPoint { t2, t3 });
    }
    Ok((m_matrix(p), n_matrix(p, &eta.jet(t2, t3))))
}

/// ρ̃ = e^{A}ρ with A a branch of arg((z₂z₃)²) taken within π of `anchor`.
pub fn rho_tilde(p: &Point3, eta: &dyn EtaProfile, anchor: f64) -> f64 {
    let w = (p.z2 * p.z3).powi(2) * C64::from_polar(1.0, -anchor);
    let a = anchor + w.arg();
    a.exp() * crate::geometry::eval_rho(p, eta)
}

/// Central-difference complex Hessian ∂²f/∂z_j∂z̄_k of a real function on ℂ³.
pub fn fd_complex_hessian(f: &dyn Fn(&[C64; 3]) -> f64, z: &[C64; 3], h: f64) -> Mat3 {
    // real coordinates x_0..x_5 = (Re z1, Im z1, Re z2, ...)
    let eval = |da: usize, sa: f64, db: usize, sb: f64| {
        let mut w = *z;
        let bump = |w: &mut [C64; 3], d: usize, s: f64| {
            let k = d / 2;
            if d.is_multiple_of(2) {
                w[k].re += s * h;
            } else {
                w[k].im += s * h;
            }
        };
        bump(&mut w, da, sa);
        bump(&mut w, db, sb);
        f(&w)
    };
    let mut hr = [[0.0f64; 6]; 6];
    let f0 = f(z);
    for a in 0..6 {
        for b in a..6 {
            let v = if a == b {
                let mut w = *z;
                let k = a / 2;
                let (mut wp, mut wm) = (w, w);
                if a % 2 == 0 {
                    wp[k].re += h;
                    wm[k].re -= h;
                } else {
                    wp[k].im += h;
                    wm[k].im -= h;
                }
                w = wp;
                (f(&w) - 2.0 * f0 + f(&wm)) / (h * h)
            } else {
                (eval(a, 1.0, b, 1.0) - eval(a, 1.0, b, -1.0) - eval(a, -1.0, b, 1.0) + eval(a, -1.0, b, -1.0))
                    / (4.0 * h * h)
            };
            hr[a][b] = v;
            hr[b][a] = v;
        }
    }
    let mut out = ZERO3;
    for j in 0..3 {
        for k in 0..3 {
            let (xj, yj, xk, yk) = (2 * j, 2 * j + 1, 2 * k, 2 * k + 1);
            out[j][k] = C64::new(hr[xj][xk] + hr[yj][yk], hr[xj][yk] - hr[yj][xk]) * 0.25;
        }
    }
    out
}

/// Steps h and h/2 combined as (4H(h/2) − H(h))/3, cancelling the h² error.
pub fn fd_complex_hessian_richardson(f: &dyn Fn(&[C64; 3]) -> f64, z: &[C64; 3], h: f64) -> Mat3 {
    let a = fd_complex_hessian(f, z, h);
    let b = fd_complex_hessian(f, z, 0.5 * h);
    let mut out = ZERO3;
    for j in 0..3 {
        for k in 0..3 {
            out[j][k] = (b[j][k] * 4.0 - a[j][k]) / 3.0;
        }
    }
    out
}

/// The Levi form restricted to the tangent frame (v, w).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RestrictedLevi {
    pub matrix: Herm2,
    pub eigenvalues: [f64; 2],
    pub norm: f64,
}

impl RestrictedLevi {
    pub fn is_psd(&self, tol: f64) -> bool {
        self.eigenvalues[0] >= -tol * self.norm
    }

    /// λ_min / ‖·‖, or 0 for the zero matrix.
    pub fn relative_min(&self) -> f64 {
        if self.norm > 0.0 {
            self.eigenvalues[0] / self.norm
        } else {
            0.0
        }
    }
}

pub fn restricted_levi(p: &Point3, eta: &dyn EtaProfile) -> Result<RestrictedLevi> {
    let (m, n) = hessian_matrices(p, eta)?;
    let mn = add(&m, &n);
    let [v, w] = tangent_frame(p, eta)?;
    let matrix = Herm2 { a: h_form(&mn, &v, &v).re, b: h_form(&mn, &v, &w), d: h_form(&mn, &w, &w).re };
    Ok(RestrictedLevi { eigenvalues: matrix.eigenvalues(), norm: matrix.frobenius(), matrix })
}

/// The two quantities whose nonnegativity is equivalent to the
/// inequalities when η = e^f on its support.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LogForm {
    /// (f′₂)² + f″₂₂ + 1
    pub ineq4: f64,
    /// h_{H_f}(v, v) + det H_f + h_{H_f}(u, u), v = (f′₃, −f′₂), u = (1, −1)
    pub ineq6: f64,
    pub h_vv: f64,
    pub det_hf: f64,
    pub h_uu: f64,
}

pub fn logform_from_f(f: &Jet) -> LogForm {
    let h = |a: f64, b: f64| f.d22 * a * a + 2.0 * f.d23 * a * b + f.d33 * b * b;
    let h_vv = h(f.d3, -f.d2);
    let det_hf = f.hess_det();
    let h_uu = h(1.0, -1.0);
    LogForm { ineq4: f.d2 * f.d2 + f.d22 + 1.0, ineq6: h_vv + det_hf + h_uu, h_vv, det_hf, h_uu }
}

/// Something of the form η = χ_U e^f.
pub trait LogSupported {
    fn f_jet_at(&self, t2: f64, t3: f64) -> Option<Jet>;
}

impl LogSupported for crate::profiles::TwoSidedSummand {
    fn f_jet_at(&self, t2: f64, t3: f64) -> Option<Jet> {
        self.f_jet(t2, t3)
    }
}

pub fn logform_check(f: &dyn LogSupported, t2: f64, t3: f64) -> Result<LogForm> {
    f.f_jet_at(t2, t3).map(|j| logform_from_f(&j)).ok_or(Error::OutsideSupport { t2, t3 })
}

/// 𝒫(η) = det H_η + η°·h_{H_η}(u, u) − (η′₂ − η′₃)², which equals ineq3.
pub fn p_of(j: &Jet) -> f64 {
    let g = j.d2 - j.d3;
    j.hess_det() + j.value * (j.d22 + j.d33 - 2.0 * j.d23) - g * g
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Decomposition {
    pub p_total: f64,
    pub p0: f64,
    pub p1: f64,
    /// η₀°·h_{H_{η₁}}(u, u)
    pub eta0_huu1: f64,
    /// η₁°·h_{H_{η₀}}(u, u)
    pub eta1_huu0: f64,
    pub mixed_hessian: f64,
    pub mixed_gradient: f64,
    pub residual: f64,
}

pub fn decompose(j0: &Jet, j1: &Jet) -> Result<Decomposition> {
    let p_total = p_of(&(*j0 + *j1));
    let p0 = p_of(j0);
    let p1 = p_of(j1);
    let huu = |j: &Jet| j.d22 - 2.0 * j.d23 + j.d33;
    let eta0_huu1 = j0.value * huu(j1);
    let eta1_huu0 = j1.value * huu(j0);
    let mixed_hessian = j0.d22 * j1.d33 + j1.d22 * j0.d33 - 2.0 * j0.d23 * j1.d23;
    let mixed_gradient = -2.0 * (j0.d2 - j0.d3) * (j1.d2 - j1.d3);
    let rhs = p0 + p1 + eta0_huu1 + eta1_huu0 + mixed_hessian + mixed_gradient;
    let scale = [p0, p1, eta0_huu1, eta1_huu0, mixed_hessian, mixed_gradient, p_total]
        .iter()
        .map(|x| x.abs())
        .fold(0.0, f64::max);
    let residual = (p_total - rhs).abs();
    if residual > 1e-10 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::IdentityViolation(format!(
            "P(eta0+eta1) - expansion = {residual:e} (scale {scale:e})"
        )));
    }
    Ok(Decomposition { p_total, p0, p1, eta0_huu1, eta1_huu0, mixed_hessian, mixed_gradient, residual })
}

pub fn p_functional(eta0: &dyn EtaProfile, eta1: &dyn EtaProfile, t2: f64, t3: f64) -> Result<Decomposition> {
    decompose(&eta0.jet(t2, t3), &eta1.jet(t2, t3))
}
