//! C ABI over worm3. Profiles are opaque handles; every call returns a
//! `Worm3Status`, and the message of the last failure on the calling thread
//! is available from `worm3_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, c_void, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};


use worm3::bergman::{cauchy_extend, norm_integral, AnnulusContour, NormIntegralSpec, NormValue};
use worm3::geometry::{eval_rho, Point3};
use worm3::kernels::{kernel_asymptotic, kernel_quadrature};
use worm3::levi::{restricted_levi, select_constants, SelectionSettings};
use worm3::profiles::{
    CharSquareProfile, ConvexSumProfile, EtaProfile, SeparableProfile, SideParams, TwoSidedParams, TwoSidedProfile,
    ZeroProfile,
};
use worm3::{Error, C64};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Worm3Status {
    Ok = 0,
    NullPointer = 1,
    InvalidPoint = 2,
    OutOfRange = 3,
    BranchViolation = 4,
    NonConvergent = 5,
    GridTooCoarse = 6,
    TooCloseToContour = 7,
    OnWall = 8,
    DegenerateFrame = 9,
    NotOnBoundary = 10,
    Other = 11,
    Panic = 12,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Worm3Complex {
    pub re: f64,
    pub im: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Worm3Point {
    pub z1: Worm3Complex,
    pub z2: Worm3Complex,
    pub z3: Worm3Complex,
}

/// (A, B, c) of one summand of the two-sided profile.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Worm3Side {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// Eigenvalues (ascending) and Frobenius norm of the restricted Levi form.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Worm3Levi {
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub norm: f64,
}

/// Opaque profile handle.
pub struct Worm3Profile {
    inner: Box<dyn EtaProfile>,
}

/// f(z1, z2, z3, user_data). May be called concurrently from several threads.
pub type Worm3HolomorphicFn =
    Option<unsafe extern "C" fn(z1: Worm3Complex, z2: Worm3Complex, z3: Worm3Complex, user_data: *mut c_void) -> Worm3Complex>;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> Worm3Status {
    match e {
        Error::InvalidPoint(_) => Worm3Status::InvalidPoint,
        Error::OutOfRange(_) | Error::Config(_) => Worm3Status::OutOfRange,
        Error::BranchViolation => Worm3Status::BranchViolation,
        Error::NonConvergent(_) => Worm3Status::NonConvergent,
        Error::GridTooCoarse { .. } => Worm3Status::GridTooCoarse,
        Error::TooCloseToContour { .. } => Worm3Status::TooCloseToContour,
        Error::OnWall => Worm3Status::OnWall,
        Error::DegenerateFrame => Worm3Status::DegenerateFrame,
        Error::NotOnBoundary { .. } => Worm3Status::NotOnBoundary,
        _ => Worm3Status::Other,
    }
}

/// Runs `f`, recording errors and panics.
fn guard<F: FnOnce() -> Result<(), Error>>(f: F) -> Worm3Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            Worm3Status::Ok
        }
        Ok(Err(e)) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            Worm3Status::Panic
        }
    }
}

fn null(what: &str) -> Worm3Status {
    set_error(&format!("{what} is null"));
    Worm3Status::NullPointer
}

fn c64(z: Worm3Complex) -> C64 {
    C64::new(z.re, z.im)
}

fn wc(z: C64) -> Worm3Complex {
    Worm3Complex { re: z.re, im: z.im }
}

fn point(p: &Worm3Point) -> Result<Point3, Error> {
    Point3::new(c64(p.z1), c64(p.z2), c64(p.z3))
}

fn side(s: Worm3Side) -> SideParams {
    SideParams { a: s.a, b: s.b, c: s.c }
}

unsafe fn emit_profile(out: *mut *mut Worm3Profile, build: impl FnOnce() -> Result<Box<dyn EtaProfile>, Error>) -> Worm3Status {
    if out.is_null() {
        return null("out");
    }
    guard(|| {
        let inner = build()?;
        *out = Box::into_raw(Box::new(Worm3Profile { inner }));
        Ok(())
    })
}

/// The message of the last failed call on this thread ("" after a success).
/// Valid until the next worm3 call on the same thread.
#[no_mangle]
pub extern "C" fn worm3_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn worm3_profile_zero(out: *mut *mut Worm3Profile) -> Worm3Status {
    emit_profile(out, || Ok(Box::new(ZeroProfile)))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn worm3_profile_char_square(mu: f64, out: *mut *mut Worm3Profile) -> Worm3Status {
    emit_profile(out, || Ok(Box::new(CharSquareProfile::new(mu)?)))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn worm3_profile_convex_sum(mu: f64, mu_prime: f64, out: *mut *mut Worm3Profile) -> Worm3Status {
    emit_profile(out, || Ok(Box::new(ConvexSumProfile::with_default_phi(mu, mu_prime)?)))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn worm3_profile_separable(mu: f64, mu_prime: f64, out: *mut *mut Worm3Profile) -> Worm3Status {
    emit_profile(out, || Ok(Box::new(SeparableProfile::with_default_phi(mu, mu_prime)?)))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn worm3_profile_two_sided(
    mu: f64,
    plus: Worm3Side,
    minus: Worm3Side,
    out: *mut *mut Worm3Profile,
) -> Worm3Status {
    emit_profile(out, || {
        let p = TwoSidedParams { mu, plus: side(plus), minus: side(minus) };
        Ok(Box::new(TwoSidedProfile::new(p)?))
    })
}

/// # Safety
/// `profile` must come from a worm3_profile_* constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn worm3_profile_free(profile: *mut Worm3Profile) {
    if !profile.is_null() {
        drop(Box::from_raw(profile));
    }
}

/// ρ(p) for the given profile.
///
/// # Safety
/// `profile` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn worm3_eval_rho(profile: *const Worm3Profile, p: Worm3Point, out: *mut f64) -> Worm3Status {
    if profile.is_null() {
        return null("profile");
    }
    if out.is_null() {
        return null("out");
    }
    guard(|| {
        let q = point(&p)?;
        *out = eval_rho(&q, (*profile).inner.as_ref());
        Ok(())
    })
}

/// # Safety
/// `profile` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn worm3_restricted_levi(
    profile: *const Worm3Profile,
    p: Worm3Point,
    out: *mut Worm3Levi,
) -> Worm3Status {
    if profile.is_null() {
        return null("profile");
    }
    if out.is_null() {
        return null("out");
    }
    guard(|| {
        let l = restricted_levi(&point(&p)?, (*profile).inner.as_ref())?;
        *out = Worm3Levi { lambda_min: l.eigenvalues[0], lambda_max: l.eigenvalues[1], norm: l.norm };
        Ok(())
    })
}

/// Selects c± for the symmetric shape B±² = b_factor·2e^μ, A± = a_factor·B±.
/// `grid` of 0 uses the default resolution.
///
/// # Safety
/// `plus` and `minus` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn worm3_select_constants(
    mu: f64,
    b_factor: f64,
    a_factor: f64,
    grid: u32,
    plus: *mut Worm3Side,
    minus: *mut Worm3Side,
) -> Worm3Status {
    if plus.is_null() || minus.is_null() {
        return null("output side");
    }
    guard(|| {
        let mut s = SelectionSettings::default();
        if grid != 0 {
            s.grid = grid as usize;
        }
        let r = select_constants(&TwoSidedParams::symmetric(mu, b_factor, a_factor, 0.0, 0.0), &s)?;
        let conv = |s: SideParams| Worm3Side { a: s.a, b: s.b, c: s.c };
        *plus = conv(r.params.plus);
        *minus = conv(r.params.minus);
        Ok(())
    })
}

/// K(ζ, ζ′) by quadrature; `error_estimate` may be null.
///
/// # Safety
/// `out` must be valid for writes; `error_estimate` null or valid.
#[no_mangle]
pub unsafe extern "C" fn worm3_kernel_quadrature(
    mu: f64,
    zeta: Worm3Complex,
    zeta_prime: Worm3Complex,
    out: *mut Worm3Complex,
    error_estimate: *mut f64,
) -> Worm3Status {
    if out.is_null() {
        return null("out");
    }
    guard(|| {
        let k = kernel_quadrature(mu, c64(zeta), c64(zeta_prime))?;
        *out = wc(k.value);
        if !error_estimate.is_null() {
            *error_estimate = k.quad_error_estimate;
        }
        Ok(())
    })
}

/// The two-term asymptotic form of K(ζ, ζ′).
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn worm3_kernel_asymptotic(
    mu: f64,
    zeta: Worm3Complex,
    zeta_prime: Worm3Complex,
    out: *mut Worm3Complex,
) -> Worm3Status {
    if out.is_null() {
        return null("out");
    }
    guard(|| {
        *out = wc(kernel_asymptotic(mu, c64(zeta), c64(zeta_prime))?);
        Ok(())
    })
}

/// ‖E_{a+ib}z₂ʲz₃ᵏ‖². On divergence `*divergent` is set to 1 and `*value` to +inf.
///
/// # Safety
/// `value` and `divergent` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn worm3_norm_integral(
    a: f64,
    b: f64,
    j: i32,
    k: i32,
    mu: f64,
    value: *mut f64,
    divergent: *mut i32,
) -> Worm3Status {
    if value.is_null() || divergent.is_null() {
        return null("output");
    }
    guard(|| {
        match norm_integral(&NormIntegralSpec { a, b, j, k, mu })? {
            NormValue::Finite(v) => {
                *value = v;
                *divergent = 0;
            }
            NormValue::Divergent => {
                *value = f64::INFINITY;
                *divergent = 1;
            }
        }
        Ok(())
    })
}

struct Callback {
    f: unsafe extern "C" fn(Worm3Complex, Worm3Complex, Worm3Complex, *mut c_void) -> Worm3Complex,
    user: *mut c_void,
}

// the caller promises a thread-safe callback
unsafe impl Sync for Callback {}

impl Callback {
    fn call(&self, z1: C64, z2: C64, z3: C64) -> C64 {
        c64(unsafe { (self.f)(wc(z1), wc(z2), wc(z3), self.user) })
    }
}

/// F_a(p) over 𝒜_a × 𝒜_a with `nodes` points per circle (0 for the default).
///
/// # Safety
/// `f` must be safe to call concurrently with `user_data`; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn worm3_cauchy_extend(
    f: Worm3HolomorphicFn,
    user_data: *mut c_void,
    a: f64,
    p: Worm3Point,
    nodes: u32,
    out: *mut Worm3Complex,
) -> Worm3Status {
    let Some(f) = f else { return null("f") };
    if out.is_null() {
        return null("out");
    }
    guard(|| {
        let n = if nodes == 0 { worm3::bergman::DEFAULT_CONTOUR_NODES } else { nodes as usize };
        let contour = AnnulusContour::new(a, n)?;
        let cb = Callback { f, user: user_data };
        let cb = &cb;
        let g = |z1: C64, z2: C64, z3: C64| cb.call(z1, z2, z3);
        *out = wc(cauchy_extend(&g, &contour, &point(&p)?)?);
        Ok(())
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn worm3_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

