//! C ABI for hypcat.
//!
//! Every entry point returns a [`HypcatStatus`] and writes its result through
//! an out-pointer. On failure, [`hypcat_last_error`] returns a description
//! valid until the next call on the same thread. Meshes are opaque
//! [`HypcatMesh`] handles released with [`hypcat_mesh_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use hypcat::catenary::{rho, varrho, varrho_prime, varrho_second, x_of, y_of};
use hypcat::helicoid::{classify_helicoid, critical_pitch, HelicoidStability};
use hypcat::jacobi::{classify_catenoid, find_a_c, find_z, xi, zeta, CatenoidStability};
use hypcat::leastarea::{a_l_const, compare_areas, k_const};
use hypcat::surface::{catenoid_mesh_in, export_obj, helicoid_mesh, Model, SurfaceMesh};
use hypcat::{CatenoidParam, HelicoidPitch, HypError};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypcatStatus {
    Ok = 0,
    Domain = 1,
    Quadrature = 2,
    Bracket = 3,
    Degenerate = 4,
    Resolution = 5,
    Io = 6,
    NullPointer = 7,
    InvalidString = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypcatModel {
    Ball = 0,
    UpperHalf = 1,
    Hyperboloid = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct HypcatAreaComparison {
    pub a: f64,
    pub y1: f64,
    pub x1: f64,
    pub band_area: f64,
    pub disks_area: f64,
    pub band_smaller: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct HypcatCatenoidClass {
    pub a: f64,
    /// True for the index-one unstable class.
    pub unstable: bool,
    pub least_area: bool,
    /// z is meaningful only when `has_z` is true.
    pub has_z: bool,
    pub z: f64,
    pub e: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct HypcatHelicoidClass {
    pub pitch: f64,
    /// True for the unstable, infinite-index class.
    pub unstable: bool,
    pub threshold: f64,
}

/// Opaque surface mesh.
pub struct HypcatMesh {
    inner: SurfaceMesh,
    faces: Vec<u64>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &HypError) -> HypcatStatus {
    match err {
        HypError::Domain(_) => HypcatStatus::Domain,
        HypError::Quadrature(_) => HypcatStatus::Quadrature,
        HypError::Bracket(_) => HypcatStatus::Bracket,
        HypError::Degenerate(_) => HypcatStatus::Degenerate,
        HypError::Resolution(_) => HypcatStatus::Resolution,
        HypError::Io { .. } | HypError::Csv { .. } => HypcatStatus::Io,
    }
}

enum Failure {
    Hyp(HypError),
    Null,
    BadString,
}

impl From<HypError> for Failure {
    fn from(e: HypError) -> Self {
        Failure::Hyp(e)
    }
}

/// Runs `body`, catching panics and recording the error message.
fn guard<F>(body: F) -> HypcatStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => HypcatStatus::Ok,
        Ok(Err(Failure::Hyp(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null)) => {
            set_last_error("null pointer argument".into());
            HypcatStatus::NullPointer
        }
        Ok(Err(Failure::BadString)) => {
            set_last_error("string argument is not valid UTF-8".into());
            HypcatStatus::InvalidString
        }
        Err(_) => {
            set_last_error("internal panic".into());
            HypcatStatus::Panic
        }
    }
}

fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null);
    }
    // SAFETY: non-null and, by the API contract, valid for writes.
    unsafe { out.write(value) };
    Ok(())
}

fn scalar<F>(out: *mut f64, f: F) -> HypcatStatus
where
    F: FnOnce() -> hypcat::Result<f64>,
{
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null);
        }
        let v = f()?;
        write_out(out, v)
    })
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next hypcat call on the same thread.
#[no_mangle]
pub extern "C" fn hypcat_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn hypcat_rho(a: f64, t: f64, out: *mut f64) -> HypcatStatus {
    scalar(out, || rho(CatenoidParam::new(a)?, t))
}

#[no_mangle]
pub extern "C" fn hypcat_varrho(a: f64, out: *mut f64) -> HypcatStatus {
    scalar(out, || varrho(CatenoidParam::new(a)?))
}

#[no_mangle]
pub extern "C" fn hypcat_varrho_prime(a: f64, out: *mut f64) -> HypcatStatus {
    scalar(out, || varrho_prime(CatenoidParam::new(a)?))
}

#[no_mangle]
pub extern "C" fn hypcat_varrho_second(a: f64, out: *mut f64) -> HypcatStatus {
    scalar(out, || varrho_second(CatenoidParam::new(a)?))
}

/// Catenary chart point (x(a,s), y(a,s)).
#[no_mangle]
pub extern "C" fn hypcat_catenary_point(a: f64, s: f64, x: *mut f64, y: *mut f64) -> HypcatStatus {
    guard(|| {
        if x.is_null() || y.is_null() {
            return Err(Failure::Null);
        }
        let p = CatenoidParam::new(a)?;
        let xv = x_of(p, s)?;
        write_out(x, xv)?;
        write_out(y, y_of(p, s))
    })
}

#[no_mangle]
pub extern "C" fn hypcat_zeta(a: f64, s: f64, out: *mut f64) -> HypcatStatus {
    scalar(out, || Ok(zeta(CatenoidParam::new(a)?, s)))
}

#[no_mangle]
pub extern "C" fn hypcat_xi(a: f64, s: f64, out: *mut f64) -> HypcatStatus {
    scalar(out, || xi(CatenoidParam::new(a)?, s))
}

#[no_mangle]
pub extern "C" fn hypcat_find_z(a: f64, out: *mut f64) -> HypcatStatus {
    scalar(out, || find_z(CatenoidParam::new(a)?))
}

#[no_mangle]
pub extern "C" fn hypcat_critical_a(out: *mut f64) -> HypcatStatus {
    scalar(out, find_a_c)
}

#[no_mangle]
pub extern "C" fn hypcat_critical_pitch(out: *mut f64) -> HypcatStatus {
    scalar(out, critical_pitch)
}

#[no_mangle]
pub extern "C" fn hypcat_least_area_constant(out: *mut f64) -> HypcatStatus {
    scalar(out, k_const)
}

#[no_mangle]
pub extern "C" fn hypcat_least_area_threshold(out: *mut f64) -> HypcatStatus {
    scalar(out, a_l_const)
}

#[no_mangle]
pub extern "C" fn hypcat_compare_areas(a: f64, y1: f64, out: *mut HypcatAreaComparison) -> HypcatStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null);
        }
        let c = compare_areas(CatenoidParam::new(a)?, y1)?;
        write_out(
            out,
            HypcatAreaComparison {
                a: c.a,
                y1: c.y1,
                x1: c.x1,
                band_area: c.band_area,
                disks_area: c.disks_area,
                band_smaller: c.band_smaller,
            },
        )
    })
}

#[no_mangle]
pub extern "C" fn hypcat_classify_catenoid(a: f64, out: *mut HypcatCatenoidClass) -> HypcatStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null);
        }
        let c = classify_catenoid(CatenoidParam::new(a)?)?;
        write_out(
            out,
            HypcatCatenoidClass {
                a: c.a,
                unstable: c.kind == CatenoidStability::UnstableIndexOne,
                least_area: c.least_area,
                has_z: c.z.is_some(),
                z: c.z.unwrap_or(f64::NAN),
                e: c.e,
            },
        )
    })
}

#[no_mangle]
pub extern "C" fn hypcat_classify_helicoid(pitch: f64, out: *mut HypcatHelicoidClass) -> HypcatStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null);
        }
        let c = classify_helicoid(HelicoidPitch::new(pitch)?)?;
        write_out(
            out,
            HypcatHelicoidClass {
                pitch: c.pitch,
                unstable: c.kind == HelicoidStability::UnstableInfiniteIndex,
                threshold: c.threshold,
            },
        )
    })
}

/// Models arrive as plain integers so that out-of-range values from C are
/// an error rather than undefined behaviour.
fn model_of(m: i32) -> Result<Model, Failure> {
    match m {
        x if x == HypcatModel::Ball as i32 => Ok(Model::Ball),
        x if x == HypcatModel::UpperHalf as i32 => Ok(Model::UpperHalf),
        x if x == HypcatModel::Hyperboloid as i32 => Ok(Model::Hyperboloid),
        other => Err(Failure::Hyp(HypError::Domain(format!("unknown model {other}")))),
    }
}

fn emit_mesh(mesh: SurfaceMesh, out: *mut *mut HypcatMesh) -> Result<(), Failure> {
    let faces = mesh.faces.iter().flatten().map(|&i| i as u64).collect();
    let boxed = Box::new(HypcatMesh { inner: mesh, faces });
    write_out(out, Box::into_raw(boxed))
}

/// Catenoid C_a over s in [-s_max, s_max] with n_s x n_theta vertices;
/// `model` is a HypcatModel value.
#[no_mangle]
pub extern "C" fn hypcat_catenoid_mesh(
    a: f64,
    model: i32,
    s_max: f64,
    n_s: usize,
    n_theta: usize,
    out: *mut *mut HypcatMesh,
) -> HypcatStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null);
        }
        let m = catenoid_mesh_in(CatenoidParam::new(a)?, model_of(model)?, s_max, n_s, n_theta)?;
        emit_mesh(m, out)
    })
}

/// Helicoid of pitch ā over [-u_max, u_max] x [-v_max, v_max]; `model` is
/// a HypcatModel value.
#[no_mangle]
pub extern "C" fn hypcat_helicoid_mesh(
    pitch: f64,
    model: i32,
    u_max: f64,
    v_max: f64,
    n_u: usize,
    n_v: usize,
    out: *mut *mut HypcatMesh,
) -> HypcatStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null);
        }
        let m = helicoid_mesh(HelicoidPitch::new(pitch)?, model_of(model)?, u_max, v_max, n_u, n_v)?;
        emit_mesh(m, out)
    })
}

/// # Safety
/// `mesh` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn hypcat_mesh_vertex_count(mesh: *const HypcatMesh) -> usize {
    mesh.as_ref().map_or(0, |m| m.inner.vertices.len())
}

/// # Safety
/// `mesh` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn hypcat_mesh_face_count(mesh: *const HypcatMesh) -> usize {
    mesh.as_ref().map_or(0, |m| m.inner.faces.len())
}

/// Vertex coordinates, 3 per vertex; owned by the mesh.
///
/// # Safety
/// `mesh` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn hypcat_mesh_vertices(mesh: *const HypcatMesh) -> *const f64 {
    mesh.as_ref().map_or(ptr::null(), |m| m.inner.vertices.as_ptr().cast())
}

/// Unit normals, 3 per vertex; owned by the mesh.
///
/// # Safety
/// `mesh` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn hypcat_mesh_normals(mesh: *const HypcatMesh) -> *const f64 {
    mesh.as_ref().map_or(ptr::null(), |m| m.inner.normals.as_ptr().cast())
}

/// Zero-based vertex indices, 3 per triangle; owned by the mesh.
///
/// # Safety
/// `mesh` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn hypcat_mesh_faces(mesh: *const HypcatMesh) -> *const u64 {
    mesh.as_ref().map_or(ptr::null(), |m| m.faces.as_ptr())
}

/// # Safety
/// `mesh` must be a live handle; `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn hypcat_mesh_write_obj(mesh: *const HypcatMesh, path: *const c_char) -> HypcatStatus {
    guard(|| {
        let m = mesh.as_ref().ok_or(Failure::Null)?;
        if path.is_null() {
            return Err(Failure::Null);
        }
        let p = CStr::from_ptr(path).to_str().map_err(|_| Failure::BadString)?;
        export_obj(&m.inner, Path::new(p))?;
        Ok(())
    })
}

/// # Safety
/// `mesh` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hypcat_mesh_free(mesh: *mut HypcatMesh) {
    if !mesh.is_null() {
        drop(Box::from_raw(mesh));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_codes_cover_errors() {
        assert_eq!(status_of(&HypError::Domain("x".into())), HypcatStatus::Domain);
        assert_eq!(status_of(&HypError::Bracket("x".into())), HypcatStatus::Bracket);
    }

    #[test]
    fn panics_are_contained() {
        let s = guard(|| panic!("boom"));
        assert_eq!(s, HypcatStatus::Panic);
        assert!(!hypcat_last_error().is_null());
    }
}
