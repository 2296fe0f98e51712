//! Projections onto the rotation sectors ℋ^{j,k} by trapezoid averages over
//! the torus orbit (z₁, e^{iθ₂}z₂, e^{iθ₃}z₃).

use crate::geometry::{Point3, C64, I};
use std::f64::consts::TAU;

pub const DEFAULT_NODES: usize = 64;

/// Q_{j,k}F(p) with n×n nodes; exact for trigonometric polynomials of degree < n.
pub fn sector_project<F: Fn(&Point3) -> C64>(f: &F, j: i32, k: i32, p: &Point3, n: usize) -> C64 {
    let mut s = C64::new(0.0, 0.0);
    for a in 0..n {
        let t2 = TAU * a as f64 / n as f64;
        let r2 = (I * t2).exp();
        let c2 = (-I * (j as f64) * t2).exp();
        for b in 0..n {
            let t3 = TAU * b as f64 / n as f64;
            let q = Point3 { z2: p.z2 * r2, z3: p.z3 * (I * t3).exp(), ..*p };
            s += f(&q) * c2 * (-I * (k as f64) * t3).exp();
        }
    }
    s / (n * n) as f64
}

/// The one-variable projection in z₂ (var = 2) or z₃ (var = 3).
pub fn rotation_average<F: Fn(&Point3) -> C64>(f: &F, var: u8, k: i32, p: &Point3, n: usize) -> C64 {
    let mut s = C64::new(0.0, 0.0);
    for a in 0..n {
        let t = TAU * a as f64 / n as f64;
        let r = (I * t).exp();
        let q = match var {
            2 => Point3 { z2: p.z2 * r, ..*p },
            _ => Point3 { z3: p.z3 * r, ..*p },
        };
        s += f(&q) * (-I * (k as f64) * t).exp();
    }
    s / n as f64
}
