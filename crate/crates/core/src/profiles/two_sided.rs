//! The two-sided family η = η₊ + η₋ with
//! η± = χ(s± > B±²)·exp(c±/(A±²−B±²) − c±/(s± − B±²)), s± = e^{±t₂} + e^{±t₃}.

use super::basic::UNDERFLOW_EXPONENT;
use super::{EtaProfile, Jet, ProfileFlags, TBox};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Parameters (A, B, c) of one summand.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SideParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoSidedParams {
    pub mu: f64,
    pub plus: SideParams,
    pub minus: SideParams,
}

impl TwoSidedParams {
    /// The symmetric configuration B±² = b_factor·2e^μ, A± = a_factor·B±.
    pub fn symmetric(mu: f64, b_factor: f64, a_factor: f64, c_plus: f64, c_minus: f64) -> Self {
        let b = (b_factor * 2.0 * mu.exp()).sqrt();
        let a = a_factor * b;
        Self {
            mu,
            plus: SideParams { a, b, c: c_plus },
            minus: SideParams { a, b, c: c_minus },
        }
    }

    /// Checks A± > B± ≥ √(2e^μ). With `need_c` also c± > 0.
    pub fn validate(&self, need_c: bool) -> Result<()> {
        if !(self.mu > 0.0 && self.mu.is_finite()) {
            return Err(Error::OutOfRange(format!("mu = {} must be positive", self.mu)));
        }
        let floor = 2.0 * self.mu.exp();
        for (name, s) in [("plus", &self.plus), ("minus", &self.minus)] {
            if !(s.b * s.b >= floor * (1.0 - 1e-14)) {
                return Err(Error::OutOfRange(format!(
                    "B_{name}^2 = {} is below 2e^mu = {floor}",
                    s.b * s.b
                )));
            }
            if !(s.a > s.b && s.a.is_finite()) {
                return Err(Error::OutOfRange(format!("need A_{name} > B_{name}")));
            }
            if need_c && !(s.c > 0.0 && s.c.is_finite()) {
                return Err(Error::OutOfRange(format!("c_{name} = {} must be positive", s.c)));
            }
        }
        Ok(())
    }

    /// The box [−2 log A₋, 2 log A₊]² containing {η ≤ 1}.
    pub fn enclosing_box(&self) -> TBox {
        let lo = -2.0 * self.minus.a.ln();
        let hi = 2.0 * self.plus.a.ln();
        TBox { t2_min: lo, t2_max: hi, t3_min: lo, t3_max: hi }
    }
}

/// One summand η₊ (sign = +1) or η₋ (sign = −1).
#[derive(Clone, Copy, Debug)]
pub struct TwoSidedSummand {
    pub sign: f64,
    pub side: SideParams,
}

impl TwoSidedSummand {
    pub fn plus(side: SideParams) -> Self {
        Self { sign: 1.0, side }
    }

    pub fn minus(side: SideParams) -> Self {
        Self { sign: -1.0, side }
    }

    /// s = e^{±t₂} + e^{±t₃}.
    pub fn s(&self, t2: f64, t3: f64) -> f64 {
        (self.sign * t2).exp() + (self.sign * t3).exp()
    }

    /// Jet of f = log η on the open support {s > B²}; `None` outside.
    pub fn f_jet(&self, t2: f64, t3: f64) -> Option<Jet> {
        let SideParams { a, b, c } = self.side;
        let (b2, a2) = (b * b, a * a);
        let e2 = (self.sign * t2).exp();
        let e3 = (self.sign * t3).exp();
        let q = e2 + e3 - b2;
        if !(q > 0.0) {
            return None;
        }
        let q2 = q * q;
        let q3 = q2 * q;
        Some(Jet {
            value: c / (a2 - b2) - c / q,
            d2: self.sign * c * e2 / q2,
            d3: self.sign * c * e3 / q2,
            d22: c * e2 * (-e2 + e3 - b2) / q3,
            d23: -2.0 * c * e2 * e3 / q3,
            d33: c * e3 * (e2 - e3 - b2) / q3,
        })
    }
}

impl EtaProfile for TwoSidedSummand {
    fn jet(&self, t2: f64, t3: f64) -> Jet {
        match self.f_jet(t2, t3) {
            Some(f) if f.value >= UNDERFLOW_EXPONENT => Jet::exp_of(&f),
            _ => Jet::ZERO,
        }
    }
    fn flags(&self) -> ProfileFlags {
        ProfileFlags { smooth: true, regular_level_one: true, compact_sublevel: false }
    }
    fn attains_one(&self) -> bool {
        true
    }
    fn name(&self) -> String {
        let s = if self.sign > 0.0 { "plus" } else { "minus" };
        format!("two_sided_{s}(A={}, B={}, c={})", self.side.a, self.side.b, self.side.c)
    }
}

/// Totals together with the per-summand pieces.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DerivBundle {
    pub total: Jet,
    pub plus: Jet,
    pub minus: Jet,
    pub f_plus: Option<Jet>,
    pub f_minus: Option<Jet>,
}

#[derive(Clone, Copy, Debug)]
pub struct TwoSidedProfile {
    pub params: TwoSidedParams,
    pub plus: TwoSidedSummand,
    pub minus: TwoSidedSummand,
}

impl TwoSidedProfile {
    pub fn new(params: TwoSidedParams) -> Result<Self> {
        params.validate(true)?;
        Ok(Self {
            params,
            plus: TwoSidedSummand::plus(params.plus),
            minus: TwoSidedSummand::minus(params.minus),
        })
    }

    pub fn bundle(&self, t2: f64, t3: f64) -> DerivBundle {
        let plus = self.plus.jet(t2, t3);
        let minus = self.minus.jet(t2, t3);
        DerivBundle {
            total: plus + minus,
            plus,
            minus,
            f_plus: self.plus.f_jet(t2, t3),
            f_minus: self.minus.f_jet(t2, t3),
        }
    }
}

impl EtaProfile for TwoSidedProfile {
    fn jet(&self, t2: f64, t3: f64) -> Jet {
        self.plus.jet(t2, t3) + self.minus.jet(t2, t3)
    }
    fn flags(&self) -> ProfileFlags {
        ProfileFlags { smooth: true, regular_level_one: true, compact_sublevel: true }
    }
    fn attains_one(&self) -> bool {
        true
    }
    fn sublevel_box(&self) -> Option<TBox> {
        Some(self.params.enclosing_box())
    }
    fn name(&self) -> String {
        let p = &self.params;
        format!(
            "two_sided(mu={}, A+={}, B+={}, c+={}, A-={}, B-={}, c-={})",
            p.mu, p.plus.a, p.plus.b, p.plus.c, p.minus.a, p.minus.b, p.minus.c
        )
    }
}

/// K = {η ≤ 1} with its enclosing box.
#[derive(Clone, Copy, Debug)]
pub struct LevelSet {
    pub bbox: TBox,
    pub profile: TwoSidedProfile,
}

impl LevelSet {
    pub fn contains(&self, t2: f64, t3: f64) -> bool {
        self.bbox.contains(t2, t3) && self.profile.value(t2, t3) <= 1.0
    }
}

pub fn level_set_compact(params: &TwoSidedParams) -> Result<LevelSet> {
    let profile = TwoSidedProfile::new(*params)?;
    Ok(LevelSet { bbox: params.enclosing_box(), profile })
}
