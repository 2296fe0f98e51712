#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use worm3::profiles::{EtaProfile, TwoSidedParams, TwoSidedProfile};
use worm3::{Point3, C64};

pub const MU: f64 = 3.2;

/// The two-sided profile with a fixed pair of constants comfortably above the selected ones.
pub fn main_profile() -> TwoSidedProfile {
    TwoSidedProfile::new(TwoSidedParams::symmetric(MU, 1.01, 1.2, 1300.0, 1300.0)).unwrap()
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

/// A point with η(t₂, t₃) < 1 and z₁ inside the fiber disc.
pub fn interior_point(eta: &dyn EtaProfile, rng: &mut ChaCha8Rng, half: f64) -> Point3 {
    loop {
        let (t2, t3) = (rng.gen_range(-half..half), rng.gen_range(-half..half));
        let v = eta.value(t2, t3);
        if v >= 1.0 {
            continue;
        }
        let r = (1.0 - v).sqrt() * rng.gen_range(0.0..0.95);
        let z1 = C64::from_polar(1.0, t2 + t3) + C64::from_polar(r, rng.gen_range(0.0..6.3));
        return Point3::from_polar(z1, t2, rng.gen_range(0.0..6.3), t3, rng.gen_range(0.0..6.3));
    }
}

pub fn pass_line(name: &str, ok: bool, detail: &str) {
    println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
}
