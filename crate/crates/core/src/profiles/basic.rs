use super::{EtaProfile, Jet, ProfileFlags, TBox};
use crate::error::{Error, Result};
use std::sync::Arc;

/// Exponents below this are treated as an exact zero.
pub(crate) const UNDERFLOW_EXPONENT: f64 = -700.0;

#[derive(Clone, Copy, Debug, Default)]
pub struct ZeroProfile;

impl EtaProfile for ZeroProfile {
    fn jet(&self, _t2: f64, _t3: f64) -> Jet {
        Jet::ZERO
    }
    fn flags(&self) -> ProfileFlags {
        ProfileFlags { smooth: true, regular_level_one: true, compact_sublevel: false }
    }
    fn attains_one(&self) -> bool {
        false
    }
    fn name(&self) -> String {
        "zero".into()
    }
}

/// Indicator of the closed complement of the open square (−μ, μ)².
#[derive(Clone, Copy, Debug)]
pub struct CharSquareProfile {
    pub mu: f64,
}

impl CharSquareProfile {
    pub fn new(mu: f64) -> Result<Self> {
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::OutOfRange(format!("mu = {mu} must be positive")));
        }
        Ok(Self { mu })
    }
}

impl EtaProfile for CharSquareProfile {
    fn jet(&self, t2: f64, t3: f64) -> Jet {
        let inside = t2.abs() < self.mu && t3.abs() < self.mu;
        Jet { value: if inside { 0.0 } else { 1.0 }, ..Jet::ZERO }
    }
    fn is_smooth_at(&self, t2: f64, t3: f64) -> bool {
        let on_edge = (t2.abs() == self.mu && t3.abs() <= self.mu)
            || (t3.abs() == self.mu && t2.abs() <= self.mu);
        !on_edge
    }
    fn flags(&self) -> ProfileFlags {
        ProfileFlags { smooth: false, regular_level_one: false, compact_sublevel: false }
    }
    fn attains_one(&self) -> bool {
        true
    }
    fn name(&self) -> String {
        format!("char_square(mu={})", self.mu)
    }
}

/// Even one-variable profile with value, first and second derivative.
pub trait Profile1d: Send + Sync {
    fn eval(&self, t: f64) -> (f64, f64, f64);
}

/// φ(t) = exp(c/(μ′²−μ²) − c/(t²−μ²)) for |t| > μ, and 0 otherwise.
///
/// φ vanishes exactly on [−μ, μ], increases for t > μ and φ(±μ′) = 1.
/// `c` defaults to the smallest value ≥ μ′² that keeps φ convex on
/// [−μ′, μ′].
#[derive(Clone, Copy, Debug)]
pub struct BumpProfile1d {
    pub mu: f64,
    pub mu_prime: f64,
    pub c: f64,
}

impl BumpProfile1d {
    pub fn new(mu: f64, mu_prime: f64) -> Result<Self> {
        if !(mu > 0.0 && mu_prime > mu && mu_prime.is_finite()) {
            return Err(Error::OutOfRange(format!(
                "need 0 < mu < mu_prime, got mu = {mu}, mu_prime = {mu_prime}"
            )));
        }
        let (m2, p2) = (mu * mu, mu_prime * mu_prime);
        // φ'' ≥ 0 on (μ, t] iff 2ct² ≥ (3t²+μ²)(t²−μ²); the right side over 2t² increases in t.
        let convex_floor = (3.0 * p2 + m2) * (p2 - m2) / (2.0 * p2);
        Ok(Self { mu, mu_prime, c: p2.max(convex_floor) })
    }

    pub fn with_c(mu: f64, mu_prime: f64, c: f64) -> Result<Self> {
        let mut p = Self::new(mu, mu_prime)?;
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::OutOfRange(format!("c = {c} must be positive")));
        }
        p.c = c;
        Ok(p)
    }
}

impl Profile1d for BumpProfile1d {
    fn eval(&self, t: f64) -> (f64, f64, f64) {
        let m2 = self.mu * self.mu;
        let q = t * t - m2;
        if q <= 0.0 {
            return (0.0, 0.0, 0.0);
        }
        let c = self.c;
        let g = c / (self.mu_prime * self.mu_prime - m2) - c / q;
        if g < UNDERFLOW_EXPONENT {
            return (0.0, 0.0, 0.0);
        }
        let v = g.exp();
        let g1 = 2.0 * c * t / (q * q);
        let g2 = -2.0 * c * (3.0 * t * t + m2) / (q * q * q);
        (v, v * g1, v * (g1 * g1 + g2))
    }
}

/// η(t₂, t₃) = φ(t₂ + t₃).
#[derive(Clone)]
pub struct ConvexSumProfile {
    pub phi: Arc<dyn Profile1d>,
    pub mu: f64,
    pub mu_prime: f64,
}

impl ConvexSumProfile {
    pub fn new(phi: Arc<dyn Profile1d>, mu: f64, mu_prime: f64) -> Self {
        Self { phi, mu, mu_prime }
    }

    pub fn with_default_phi(mu: f64, mu_prime: f64) -> Result<Self> {
        Ok(Self::new(Arc::new(BumpProfile1d::new(mu, mu_prime)?), mu, mu_prime))
    }
}

impl EtaProfile for ConvexSumProfile {
    fn jet(&self, t2: f64, t3: f64) -> Jet {
        let (v, d1, d2) = self.phi.eval(t2 + t3);
        Jet { value: v, d2: d1, d3: d1, d22: d2, d23: d2, d33: d2 }
    }
    fn flags(&self) -> ProfileFlags {
        ProfileFlags { smooth: true, regular_level_one: true, compact_sublevel: false }
    }
    fn attains_one(&self) -> bool {
        true
    }
    fn name(&self) -> String {
        format!("convex_sum(mu={}, mu_prime={})", self.mu, self.mu_prime)
    }
}

/// η(t₂, t₃) = φ(t₂) + ψ(t₃).
#[derive(Clone)]
pub struct SeparableProfile {
    pub phi: Arc<dyn Profile1d>,
    pub psi: Arc<dyn Profile1d>,
    pub mu: f64,
    pub mu_prime: f64,
}

impl SeparableProfile {
    pub fn new(phi: Arc<dyn Profile1d>, psi: Arc<dyn Profile1d>, mu: f64, mu_prime: f64) -> Self {
        Self { phi, psi, mu, mu_prime }
    }

    pub fn with_default_phi(mu: f64, mu_prime: f64) -> Result<Self> {
        let phi: Arc<dyn Profile1d> = Arc::new(BumpProfile1d::new(mu, mu_prime)?);
        Ok(Self::new(phi.clone(), phi, mu, mu_prime))
    }
}

impl EtaProfile for SeparableProfile {
    fn jet(&self, t2: f64, t3: f64) -> Jet {
        let (a, a1, a2) = self.phi.eval(t2);
        let (b, b1, b2) = self.psi.eval(t3);
        Jet { value: a + b, d2: a1, d3: b1, d22: a2, d23: 0.0, d33: b2 }
    }
    fn flags(&self) -> ProfileFlags {
        ProfileFlags { smooth: true, regular_level_one: true, compact_sublevel: true }
    }
    fn attains_one(&self) -> bool {
        true
    }
    fn sublevel_box(&self) -> Option<TBox> {
        Some(TBox::square(self.mu_prime))
    }
    fn name(&self) -> String {
        format!("separable(mu={}, mu_prime={})", self.mu, self.mu_prime)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profiles::fd_jet;

    fn rel(a: f64, b: f64, scale: f64) -> f64 {
        (a - b).abs() / scale.max(1e-300)
    }

    #[test]
    fn zero_profile_is_zero() {
        let z = ZeroProfile;
        assert_eq!(z.value(0.0, 0.0), 0.0);
        let j = z.jet(5.0, -3.0);
        assert_eq!((j.d2, j.d3), (0.0, 0.0));
        assert_eq!(z.jet(1.0, 1.0), Jet::ZERO);
    }

    #[test]
    fn char_square_boundary_convention() {
        let p = CharSquareProfile::new(3.2).unwrap();
        assert_eq!(p.value(0.0, 0.0), 0.0);
        assert_eq!(p.value(3.3, 0.0), 1.0);
        assert_eq!(p.value(3.2, 0.0), 1.0);
        assert!(!p.flags().smooth);
        assert!(!p.is_smooth_at(3.2, 0.0));
        assert!(CharSquareProfile::new(0.0).is_err());
    }

    #[test]
    fn bump_hits_one_at_mu_prime() {
        let b = BumpProfile1d::new(3.2, 4.0).unwrap();
        assert!((b.eval(4.0).0 - 1.0).abs() < 1e-15);
        assert!((b.eval(-4.0).0 - 1.0).abs() < 1e-15);
        assert_eq!(b.eval(3.2), (0.0, 0.0, 0.0));
        assert_eq!(b.eval(1.0), (0.0, 0.0, 0.0));
        // barely outside the flat part the exponent underflows
        assert_eq!(b.eval(3.2 + 1e-9).0, 0.0);
    }

    #[test]
    fn bump_derivatives_match_differences() {
        let b = BumpProfile1d::new(3.2, 4.0).unwrap();
        let h = 1e-5;
        for &t in &[3.5, 3.8, 4.0, 4.3, -3.9] {
            let (v, d1, d2) = b.eval(t);
            let fd1 = (b.eval(t + h).0 - b.eval(t - h).0) / (2.0 * h);
            let fd2 = (b.eval(t + h).0 - 2.0 * v + b.eval(t - h).0) / (h * h);
            assert!(rel(d1, fd1, d1.abs()) < 1e-6, "t={t}");
            assert!(rel(d2, fd2, d2.abs()) < 1e-4, "t={t}");
        }
    }

    #[test]
    fn bump_is_convex_up_to_mu_prime() {
        for &(mu, mp) in &[(3.2, 4.0), (3.2, 6.0), (1.0, 3.0)] {
            let b = BumpProfile1d::new(mu, mp).unwrap();
            for i in 1..=400 {
                let t = mu + (mp - mu) * i as f64 / 400.0;
                assert!(b.eval(t).2 >= 0.0, "mu={mu} mp={mp} t={t}");
            }
        }
    }

    #[test]
    fn convex_sum_jet() {
        let p = ConvexSumProfile::with_default_phi(3.2, 4.0).unwrap();
        let j = p.jet(1.7, -1.7);
        assert_eq!((j.d2, j.d3), (0.0, 0.0));
        let (t2, t3) = (3.6, 0.4);
        let j = p.jet(t2, t3);
        let f = fd_jet(&p, t2, t3, 1e-5);
        assert!(rel(j.d2, f.d2, j.d2.abs()) < 1e-6);
        assert!(rel(j.d22, f.d22, j.d22.abs()) < 1e-4);
        assert!(rel(j.d23, f.d23, j.d23.abs()) < 1e-4);
        assert_eq!(j.d22, j.d23);
    }

    #[test]
    fn separable_has_no_cross_term() {
        let p = SeparableProfile::with_default_phi(3.2, 4.0).unwrap();
        assert_eq!(p.value(0.0, 0.0), 0.0);
        for &(a, b) in &[(3.5, 3.9), (-3.7, 0.0), (4.1, -4.2)] {
            assert_eq!(p.jet(a, b).d23, 0.0);
        }
    }
}
