//! Profiles η(t₂, t₃) with t_j = log|z_j|², and their 2-jets.

mod basic;
mod two_sided;

pub use basic::{
    BumpProfile1d, CharSquareProfile, ConvexSumProfile, Profile1d, SeparableProfile, ZeroProfile,
};
pub use two_sided::{
    level_set_compact, LevelSet, SideParams, TwoSidedParams, TwoSidedProfile, TwoSidedSummand,
};

use serde::Serialize;
use std::ops::{Add, Mul};

/// Value, gradient and Hessian of a function of (t₂, t₃).
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Jet {
    pub value: f64,
    pub d2: f64,
    pub d3: f64,
    pub d22: f64,
    pub d23: f64,
    pub d33: f64,
}

impl Jet {
    pub const ZERO: Jet = Jet { value: 0.0, d2: 0.0, d3: 0.0, d22: 0.0, d23: 0.0, d33: 0.0 };

    /// Jet of exp(f) given the jet of f.
    pub fn exp_of(f: &Jet) -> Jet {
        let e = f.value.exp();
        Jet {
            value: e,
            d2: e * f.d2,
            d3: e * f.d3,
            d22: e * (f.d2 * f.d2 + f.d22),
            d23: e * (f.d2 * f.d3 + f.d23),
            d33: e * (f.d3 * f.d3 + f.d33),
        }
    }

    pub fn hess_det(&self) -> f64 {
        self.d22 * self.d33 - self.d23 * self.d23
    }

    pub fn is_finite(&self) -> bool {
        [self.value, self.d2, self.d3, self.d22, self.d23, self.d33].iter().all(|x| x.is_finite())
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet {
            value: self.value + o.value,
            d2: self.d2 + o.d2,
            d3: self.d3 + o.d3,
            d22: self.d22 + o.d22,
            d23: self.d23 + o.d23,
            d33: self.d33 + o.d33,
        }
    }
}

impl Mul<Jet> for f64 {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet {
            value: self * o.value,
            d2: self * o.d2,
            d3: self * o.d3,
            d22: self * o.d22,
            d23: self * o.d23,
            d33: self * o.d33,
        }
    }
}

/// Which of the standing conditions a profile satisfies.
///
/// (I) C² and nonnegative; (II) nonvanishing gradient on {η = 1};
/// (III) {η ≤ 1} is compact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileFlags {
    pub smooth: bool,
    pub regular_level_one: bool,
    pub compact_sublevel: bool,
}

/// Axis-aligned box [t2_min, t2_max] × [t3_min, t3_max].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TBox {
    pub t2_min: f64,
    pub t2_max: f64,
    pub t3_min: f64,
    pub t3_max: f64,
}

impl TBox {
    pub fn square(half: f64) -> TBox {
        TBox { t2_min: -half, t2_max: half, t3_min: -half, t3_max: half }
    }

    pub fn intersect(&self, o: &TBox) -> TBox {
        TBox {
            t2_min: self.t2_min.max(o.t2_min),
            t2_max: self.t2_max.min(o.t2_max),
            t3_min: self.t3_min.max(o.t3_min),
            t3_max: self.t3_max.min(o.t3_max),
        }
    }

    /// Grow each side by `frac` of its width.
    pub fn dilate(&self, frac: f64) -> TBox {
        let w2 = (self.t2_max - self.t2_min) * frac;
        let w3 = (self.t3_max - self.t3_min) * frac;
        TBox {
            t2_min: self.t2_min - w2,
            t2_max: self.t2_max + w2,
            t3_min: self.t3_min - w3,
            t3_max: self.t3_max + w3,
        }
    }

    pub fn contains(&self, t2: f64, t3: f64) -> bool {
        t2 >= self.t2_min && t2 <= self.t2_max && t3 >= self.t3_min && t3 <= self.t3_max
    }

    pub fn is_empty(&self) -> bool {
        !(self.t2_min < self.t2_max && self.t3_min < self.t3_max)
    }
}

pub trait EtaProfile: Send + Sync {
    fn jet(&self, t2: f64, t3: f64) -> Jet;

    fn value(&self, t2: f64, t3: f64) -> f64 {
        self.jet(t2, t3).value
    }

    /// False on the set where the profile fails to be C².
    fn is_smooth_at(&self, _t2: f64, _t3: f64) -> bool {
        true
    }

    fn flags(&self) -> ProfileFlags;

    /// Whether the profile reaches the value 1 somewhere.
    fn attains_one(&self) -> bool;

    /// A box containing {η ≤ 1}, when that set is bounded.
    fn sublevel_box(&self) -> Option<TBox> {
        None
    }

    fn name(&self) -> String;
}

/// Numerical 2-jet by central differences, used by tests and by the
/// C² smoothness probe.
/// Richardson combination (4·J(h/2) − J(h))/3 of two central-difference jets.
pub fn fd_jet_richardson(eta: &dyn EtaProfile, t2: f64, t3: f64, h: f64) -> Jet {
    let a = fd_jet(eta, t2, t3, h);
    let b = fd_jet(eta, t2, t3, 0.5 * h);
    (4.0 / 3.0) * b + (-1.0 / 3.0) * a
}

pub fn fd_jet(eta: &dyn EtaProfile, t2: f64, t3: f64, h: f64) -> Jet {
    let f = |a: f64, b: f64| eta.value(a, b);
    let v = f(t2, t3);
    Jet {
        value: v,
        d2: (f(t2 + h, t3) - f(t2 - h, t3)) / (2.0 * h),
        d3: (f(t2, t3 + h) - f(t2, t3 - h)) / (2.0 * h),
        d22: (f(t2 + h, t3) - 2.0 * v + f(t2 - h, t3)) / (h * h),
        d33: (f(t2, t3 + h) - 2.0 * v + f(t2, t3 - h)) / (h * h),
        d23: (f(t2 + h, t3 + h) - f(t2 + h, t3 - h) - f(t2 - h, t3 + h) + f(t2 - h, t3 - h))
            / (4.0 * h * h),
    }
}
