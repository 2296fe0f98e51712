//! ℓ(z) = Log(z₁e^{−iL}) + iL, its inverse, and E_κ = exp(κℓ).

use crate::error::{Error, Result};
use crate::geometry::{Point3, C64, I};

/// Image of p under the unwinding map: (ℓ(p), z₂, z₃).
pub fn unwind(p: &Point3) -> Result<(C64, C64, C64)> {
    Ok((ell(p)?, p.z2, p.z3))
}

pub fn wind(w1: C64, w2: C64, w3: C64) -> Point3 {
    Point3 { z1: w1.exp(), z2: w2, z3: w3 }
}

pub fn ell(p: &Point3) -> Result<C64> {
    if p.z2.norm_sqr() == 0.0 || p.z3.norm_sqr() == 0.0 {
        return Err(Error::InvalidPoint("z2 z3 must be nonzero".into()));
    }
    let l = p.log_mod();
    let u = p.z1 * (-I * l).exp();
    // the principal Log is cut along (−∞, 0]
    if u.im == 0.0 && u.re <= 0.0 {
        return Err(Error::BranchViolation);
    }
    Ok(u.ln() + I * l)
}

pub fn eval_e(kappa: C64, p: &Point3) -> Result<C64> {
    Ok((kappa * ell(p)?).exp())
}

/// Re(z₁e^{−iL}) > 0 and both log-moduli in (−μ, μ).
pub fn in_d_mu(p: &Point3, mu: f64) -> bool {
    if p.z2.norm_sqr() == 0.0 || p.z3.norm_sqr() == 0.0 {
        return false;
    }
    let (t2, t3) = (p.t2(), p.t3());
    (p.z1 * (-I * (t2 + t3)).exp()).re > 0.0 && t2.abs() < mu && t3.abs() < mu
}
