//! C ABI over the frameshift library.
//!
//! Objects are opaque handles created by `fs_*_new` style functions and
//! released with the matching `fs_*_free`. Every fallible call returns an
//! [`FsStatus`]; on failure the message is available from
//! [`fs_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use frameshift::numerics::{distance_up_to_phase, gaussian_packet, l2_distance, make_grid};
use frameshift::propagator::propagate;
use frameshift::{
    transformed_hamiltonian, AffineHamiltonian, Cubic, Error, FrameTransform, GaussianSpec, Grid1D,
    TransformKind, WaveFunction,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidGrid = 3,
    GridMismatch = 4,
    NonIntegralSteps = 5,
    BufferTooSmall = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FsTransformKind {
    SpatialTranslation = 0,
    MomentumTranslation = 1,
    GalileanBoost = 2,
    ConstantAcceleration = 3,
}

pub struct FsGrid(Grid1D);
pub struct FsWaveFunction(WaveFunction);
pub struct FsTransform(FrameTransform);
pub struct FsHamiltonian(AffineHamiltonian);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(err: &Error) -> FsStatus {
    match err {
        Error::InvalidGrid(_) => FsStatus::InvalidGrid,
        Error::GridMismatch => FsStatus::GridMismatch,
        Error::NonIntegralSteps { .. } => FsStatus::NonIntegralSteps,
        Error::InvalidArgument(_) | Error::Config(_) => FsStatus::InvalidArgument,
        Error::DegreeOverflow(_) | Error::Io(_) => FsStatus::Internal,
    }
}

fn guard(f: impl FnOnce() -> Result<(), FsStatus>) -> FsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FsStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            FsStatus::Internal
        }
    }
}

fn lib<T>(r: frameshift::Result<T>) -> Result<T, FsStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

unsafe fn get<'a, T>(p: *const T) -> Result<&'a T, FsStatus> {
    p.as_ref().ok_or_else(|| {
        set_error("null pointer argument".into());
        FsStatus::NullPointer
    })
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), FsStatus> {
    if out.is_null() {
        set_error("null output pointer".into());
        return Err(FsStatus::NullPointer);
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_f64(out: *mut f64, value: f64) -> Result<(), FsStatus> {
    if out.is_null() {
        set_error("null output pointer".into());
        return Err(FsStatus::NullPointer);
    }
    *out = value;
    Ok(())
}

unsafe fn cubic(coeffs: *const f64) -> Cubic {
    if coeffs.is_null() {
        Cubic::ZERO
    } else {
        let c = std::slice::from_raw_parts(coeffs, 4);
        Cubic::new(c[0], c[1], c[2], c[3])
    }
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length in bytes.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn fs_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn fs_grid_new(
    n_points: usize,
    length: f64,
    x_min: f64,
    hbar: f64,
    out: *mut *mut FsGrid,
) -> FsStatus {
    guard(|| put(out, FsGrid(lib(make_grid(n_points, length, x_min, hbar))?)))
}

/// # Safety
/// `grid` must be null or a handle from `fs_grid_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fs_grid_free(grid: *mut FsGrid) {
    if !grid.is_null() {
        drop(Box::from_raw(grid));
    }
}

/// Returns NaN for a null handle.
///
/// # Safety
/// `grid` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fs_grid_dx(grid: *const FsGrid) -> f64 {
    grid.as_ref().map_or(f64::NAN, |g| g.0.dx())
}

/// Returns NaN for a null handle.
///
/// # Safety
/// `grid` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fs_grid_dp(grid: *const FsGrid) -> f64 {
    grid.as_ref().map_or(f64::NAN, |g| g.0.dp())
}

/// Normalized Gaussian packet at time 0.
///
/// # Safety
/// `grid` must be a live handle and `out` a valid handle slot.
#[no_mangle]
pub unsafe extern "C" fn fs_gaussian_packet(
    grid: *const FsGrid,
    x0: f64,
    p0: f64,
    sigma: f64,
    out: *mut *mut FsWaveFunction,
) -> FsStatus {
    guard(|| {
        let g = get(grid)?;
        let spec = lib(GaussianSpec::new(x0, p0, sigma))?;
        put(out, FsWaveFunction(lib(gaussian_packet(&g.0, &spec))?))
    })
}

/// # Safety
/// `psi` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fs_wavefunction_free(psi: *mut FsWaveFunction) {
    if !psi.is_null() {
        drop(Box::from_raw(psi));
    }
}

/// Number of samples; 0 for a null handle.
///
/// # Safety
/// `psi` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fs_wavefunction_len(psi: *const FsWaveFunction) -> usize {
    psi.as_ref().map_or(0, |p| p.0.samples.len())
}

/// Returns NaN for a null handle.
///
/// # Safety
/// `psi` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fs_wavefunction_time(psi: *const FsWaveFunction) -> f64 {
    psi.as_ref().map_or(f64::NAN, |p| p.0.time)
}

/// Returns NaN for a null handle.
///
/// # Safety
/// `psi` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fs_wavefunction_norm(psi: *const FsWaveFunction) -> f64 {
    psi.as_ref().map_or(f64::NAN, |p| p.0.norm())
}

/// Copies real and imaginary parts into `re` and `im`, each of length `len`.
///
/// # Safety
/// `re` and `im` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn fs_wavefunction_samples(
    psi: *const FsWaveFunction,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> FsStatus {
    guard(|| {
        let p = get(psi)?;
        if re.is_null() || im.is_null() {
            set_error("null output buffer".into());
            return Err(FsStatus::NullPointer);
        }
        let n = p.0.samples.len();
        if len < n {
            set_error(format!("buffer holds {len} values, need {n}"));
            return Err(FsStatus::BufferTooSmall);
        }
        let re = std::slice::from_raw_parts_mut(re, n);
        let im = std::slice::from_raw_parts_mut(im, n);
        for (i, c) in p.0.samples.iter().enumerate() {
            re[i] = c.re;
            im[i] = c.im;
        }
        Ok(())
    })
}

/// `param` is `a`, `b`, the velocity or the acceleration according to `kind`;
/// `mass` is ignored by the translations. `chi` points to four coefficients
/// `c0..c3` or is null for `chi = 0`.
///
/// # Safety
/// `chi` must be null or point to four doubles; `out` must be a valid handle slot.
#[no_mangle]
pub unsafe extern "C" fn fs_transform_new(
    kind: FsTransformKind,
    param: f64,
    mass: f64,
    chi: *const f64,
    out: *mut *mut FsTransform,
) -> FsStatus {
    guard(|| {
        let kind = match kind {
            FsTransformKind::SpatialTranslation => TransformKind::SpatialTranslation { a: param },
            FsTransformKind::MomentumTranslation => TransformKind::MomentumTranslation { b: param },
            FsTransformKind::GalileanBoost => TransformKind::GalileanBoost {
                velocity: param,
                mass,
            },
            FsTransformKind::ConstantAcceleration => TransformKind::ConstantAcceleration {
                acceleration: param,
                mass,
            },
        };
        put(
            out,
            FsTransform(lib(FrameTransform::new(kind, cubic(chi)))?),
        )
    })
}

/// # Safety
/// `tr` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fs_transform_free(tr: *mut FsTransform) {
    if !tr.is_null() {
        drop(Box::from_raw(tr));
    }
}

/// # Safety
/// `tr` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fs_transform_alpha(
    tr: *const FsTransform,
    x: f64,
    t: f64,
    out: *mut f64,
) -> FsStatus {
    guard(|| put_f64(out, get(tr)?.0.alpha(x, t)))
}

/// # Safety
/// `tr` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fs_transform_beta(
    tr: *const FsTransform,
    p: f64,
    t: f64,
    out: *mut f64,
) -> FsStatus {
    guard(|| put_f64(out, get(tr)?.0.beta(p, t)))
}

/// # Safety
/// `tr` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fs_transform_coord_map(
    tr: *const FsTransform,
    x: f64,
    t: f64,
    out: *mut f64,
) -> FsStatus {
    guard(|| put_f64(out, get(tr)?.0.coord_map(x, t)))
}

/// # Safety
/// `tr` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fs_transform_momentum_map(
    tr: *const FsTransform,
    p: f64,
    t: f64,
    out: *mut f64,
) -> FsStatus {
    guard(|| put_f64(out, get(tr)?.0.momentum_map(p, t)))
}

/// `p x - [beta - alpha + P X]`.
///
/// # Safety
/// `tr` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fs_transform_bas_residual(
    tr: *const FsTransform,
    x: f64,
    p: f64,
    t: f64,
    out: *mut f64,
) -> FsStatus {
    guard(|| put_f64(out, get(tr)?.0.bas_residual(x, p, t)))
}

/// `psi'(x) = e^{-i alpha(x, t)/hbar} psi(X(x, t))` at the state's own time.
///
/// # Safety
/// `tr` and `psi` must be live handles; `out` a valid handle slot.
#[no_mangle]
pub unsafe extern "C" fn fs_apply_position(
    tr: *const FsTransform,
    psi: *const FsWaveFunction,
    out: *mut *mut FsWaveFunction,
) -> FsStatus {
    guard(|| {
        let tr = get(tr)?;
        let psi = get(psi)?;
        put(out, FsWaveFunction(tr.0.apply_position(&psi.0)))
    })
}

/// `H = (p - A)^2 / 2m - F x + e(t)` with `scalar` pointing to the four
/// coefficients of `e` or null for `e = 0`.
///
/// # Safety
/// `scalar` must be null or point to four doubles; `out` a valid handle slot.
#[no_mangle]
pub unsafe extern "C" fn fs_hamiltonian_new(
    mass: f64,
    momentum_offset: f64,
    force: f64,
    scalar: *const f64,
    out: *mut *mut FsHamiltonian,
) -> FsStatus {
    guard(|| {
        let h = lib(AffineHamiltonian::new(
            mass,
            momentum_offset,
            force,
            cubic(scalar),
        ))?;
        put(out, FsHamiltonian(h))
    })
}

/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fs_hamiltonian_free(h: *mut FsHamiltonian) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Reads back `m`, `A`, `F` and the four coefficients of `e(t)`.
///
/// # Safety
/// All output pointers must be writable; `scalar` must hold four doubles.
#[no_mangle]
pub unsafe extern "C" fn fs_hamiltonian_coefficients(
    h: *const FsHamiltonian,
    mass: *mut f64,
    momentum_offset: *mut f64,
    force: *mut f64,
    scalar: *mut f64,
) -> FsStatus {
    guard(|| {
        let h = get(h)?.0;
        put_f64(mass, h.mass)?;
        put_f64(momentum_offset, h.momentum_offset)?;
        put_f64(force, h.force)?;
        if scalar.is_null() {
            set_error("null output pointer".into());
            return Err(FsStatus::NullPointer);
        }
        std::slice::from_raw_parts_mut(scalar, 4).copy_from_slice(&h.scalar.coeffs());
        Ok(())
    })
}

/// `K = U H U^-1 + i hbar (dU/dt) U^-1`.
///
/// # Safety
/// `tr` and `h` must be live handles; `out` a valid handle slot.
#[no_mangle]
pub unsafe extern "C" fn fs_transformed_hamiltonian(
    tr: *const FsTransform,
    h: *const FsHamiltonian,
    out: *mut *mut FsHamiltonian,
) -> FsStatus {
    guard(|| {
        let k = lib(transformed_hamiltonian(&get(tr)?.0, &get(h)?.0))?;
        put(out, FsHamiltonian(k))
    })
}

/// Split-step evolution from the state's time to `t_end`.
///
/// # Safety
/// `psi` and `h` must be live handles; `out` a valid handle slot.
#[no_mangle]
pub unsafe extern "C" fn fs_propagate(
    psi: *const FsWaveFunction,
    h: *const FsHamiltonian,
    t_end: f64,
    dt: f64,
    out: *mut *mut FsWaveFunction,
) -> FsStatus {
    guard(|| {
        let next = lib(propagate(&get(psi)?.0, &get(h)?.0, t_end, dt))?;
        put(out, FsWaveFunction(next))
    })
}

/// # Safety
/// `a` and `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fs_l2_distance(
    a: *const FsWaveFunction,
    b: *const FsWaveFunction,
    out: *mut f64,
) -> FsStatus {
    guard(|| put_f64(out, lib(l2_distance(&get(a)?.0, &get(b)?.0))?))
}

/// # Safety
/// `a` and `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fs_distance_up_to_phase(
    a: *const FsWaveFunction,
    b: *const FsWaveFunction,
    out: *mut f64,
) -> FsStatus {
    guard(|| put_f64(out, lib(distance_up_to_phase(&get(a)?.0, &get(b)?.0))?))
}
