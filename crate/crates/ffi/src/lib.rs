//! C interface to `orient3`.
//!
//! All objects are opaque handles created by `o3_*_new`/`o3_*_from_*` and
//! released with the matching `o3_*_free`. Every fallible call returns an
//! [`O3Status`]; the message of the last failure on the calling thread is
//! available from [`o3_last_error`]. Strings handed out by the library must
//! be released with [`o3_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use orient3::chain_fixed::FixedChain;
use orient3::chain_flip::FlipState;
use orient3::dyck::{dyck_to_orientation, orientation_to_dyck, pair_count, DyckPair};
use orient3::orientation::{Orientation3, SchnyderWood};
use orient3::rng::{self, ChaCha8Rng};
use orient3::triangulation::{build_slow_gadget, Triangulation, TriangulationJson};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum O3Status {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Overflow = 5,
    Panic = 6,
}

/// An embedded triangulation.
pub struct O3Triangulation(Triangulation);

/// `M_TR` or `M_CR` running on a fixed triangulation.
pub struct O3FixedChain {
    chain: FixedChain,
    state: Orientation3,
    tower: bool,
    rng: ChaCha8Rng,
}

/// `M_EF` running on states with `n` internal vertices.
pub struct O3FlipChain {
    state: FlipState,
    rng: ChaCha8Rng,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl ToString) {
    let msg = CString::new(msg.to_string().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: O3Status, msg: impl ToString) -> O3Status {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> O3Status) -> O3Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(O3Status::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, O3Status> {
    if s.is_null() {
        return Err(fail(O3Status::NullPointer, "null string"));
    }
    CStr::from_ptr(s).to_str().map_err(|e| fail(O3Status::InvalidUtf8, e))
}

unsafe fn give<T>(out: *mut *mut T, value: T) -> O3Status {
    *out = Box::into_raw(Box::new(value));
    O3Status::Ok
}

unsafe fn give_string(out: *mut *mut c_char, s: String) -> O3Status {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            O3Status::Ok
        }
        Err(e) => fail(O3Status::Parse, e),
    }
}

/// Library version, a static nul-terminated string.
#[no_mangle]
pub extern "C" fn o3_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message of the last failed call on this thread. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn o3_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn o3_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a triangulation from its JSON form.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn o3_triangulation_from_json(json: *const c_char, out: *mut *mut O3Triangulation) -> O3Status {
    guard(|| {
        if out.is_null() {
            return fail(O3Status::NullPointer, "null out pointer");
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let parsed: TriangulationJson = match serde_json::from_str(text) {
            Ok(j) => j,
            Err(e) => return fail(O3Status::Parse, e),
        };
        match parsed.build() {
            Ok(t) => give(out, O3Triangulation(t)),
            Err(e) => fail(O3Status::InvalidArgument, e),
        }
    })
}

/// The slow-mixing gadget with parameter `t >= 2`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn o3_triangulation_gadget(t: usize, out: *mut *mut O3Triangulation) -> O3Status {
    guard(|| {
        if out.is_null() {
            return fail(O3Status::NullPointer, "null out pointer");
        }
        match build_slow_gadget(t) {
            Ok((tri, _)) => give(out, O3Triangulation(tri)),
            Err(e) => fail(O3Status::InvalidArgument, e),
        }
    })
}

/// Number of internal vertices, or 0 for a null handle.
///
/// # Safety
/// `tri` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn o3_triangulation_n_internal(tri: *const O3Triangulation) -> usize {
    tri.as_ref().map_or(0, |t| t.0.n_internal())
}

/// # Safety
/// `tri` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn o3_triangulation_free(tri: *mut O3Triangulation) {
    if !tri.is_null() {
        drop(Box::from_raw(tri));
    }
}

/// Starts `M_TR` (`tower == false`) or `M_CR` from the initial orientation
/// of a copy of `tri`.
///
/// # Safety
/// `tri` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn o3_fixed_chain_new(
    tri: *const O3Triangulation,
    tower: bool,
    seed: u64,
    out: *mut *mut O3FixedChain,
) -> O3Status {
    guard(|| {
        let Some(tri) = tri.as_ref() else {
            return fail(O3Status::NullPointer, "null triangulation");
        };
        if out.is_null() {
            return fail(O3Status::NullPointer, "null out pointer");
        }
        let state = match Orientation3::initial(&tri.0) {
            Ok(o) => o,
            Err(e) => return fail(O3Status::InvalidArgument, e),
        };
        let chain = FixedChain::new(tri.0.clone());
        give(out, O3FixedChain { chain, state, tower, rng: rng::stream(seed, 0) })
    })
}

/// Runs `steps` steps; the number of accepted moves goes to `accepted`
/// when it is not null.
///
/// # Safety
/// `chain` must be a live handle; `accepted` null or valid.
#[no_mangle]
pub unsafe extern "C" fn o3_fixed_chain_step(chain: *mut O3FixedChain, steps: u64, accepted: *mut u64) -> O3Status {
    guard(|| {
        let Some(c) = chain.as_mut() else {
            return fail(O3Status::NullPointer, "null chain");
        };
        let mut n = 0;
        for _ in 0..steps {
            let moved = if c.tower {
                c.chain.mcr_step(&mut c.state, &mut c.rng)
            } else {
                c.chain.mtr_step(&mut c.state, &mut c.rng)
            };
            n += moved.is_some() as u64;
        }
        if !accepted.is_null() {
            *accepted = n;
        }
        O3Status::Ok
    })
}

/// Current coloured orientation as JSON.
///
/// # Safety
/// `chain` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn o3_fixed_chain_state_json(chain: *const O3FixedChain, out: *mut *mut c_char) -> O3Status {
    guard(|| {
        let Some(c) = chain.as_ref() else {
            return fail(O3Status::NullPointer, "null chain");
        };
        if out.is_null() {
            return fail(O3Status::NullPointer, "null out pointer");
        }
        let t = c.chain.triangulation();
        let wood = SchnyderWood::derive(t, &c.state).expect("chain states are 3-orientations");
        give_string(out, serde_json::to_string(&wood.to_json(t, None)).expect("serializes"))
    })
}

/// # Safety
/// `chain` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn o3_fixed_chain_free(chain: *mut O3FixedChain) {
    if !chain.is_null() {
        drop(Box::from_raw(chain));
    }
}

/// Starts `M_EF` on `n >= 1` internal vertices from the state of the pair
/// `+^n -^n` over `(+-)^n`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn o3_flip_chain_new(n: usize, seed: u64, out: *mut *mut O3FlipChain) -> O3Status {
    guard(|| {
        if out.is_null() {
            return fail(O3Status::NullPointer, "null out pointer");
        }
        if n == 0 {
            return fail(O3Status::InvalidArgument, "n must be at least 1");
        }
        let top = [vec![1; n], vec![-1; n]].concat();
        let bottom = (0..2 * n).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
        let pair = DyckPair::from_steps(top, bottom).expect("valid pair");
        let state = dyck_to_orientation(&pair).expect("every pair decodes");
        give(out, O3FlipChain { state, rng: rng::stream(seed, 0) })
    })
}

/// # Safety
/// `chain` must be a live handle; `accepted` null or valid.
#[no_mangle]
pub unsafe extern "C" fn o3_flip_chain_step(chain: *mut O3FlipChain, steps: u64, accepted: *mut u64) -> O3Status {
    guard(|| {
        let Some(c) = chain.as_mut() else {
            return fail(O3Status::NullPointer, "null chain");
        };
        let mut n = 0;
        for _ in 0..steps {
            n += c.state.mef_step(&mut c.rng).is_some() as u64;
        }
        if !accepted.is_null() {
            *accepted = n;
        }
        O3Status::Ok
    })
}

/// Current state as its Dyck pair key, `top|bottom` in `+`/`-`.
///
/// # Safety
/// `chain` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn o3_flip_chain_dyck_key(chain: *const O3FlipChain, out: *mut *mut c_char) -> O3Status {
    guard(|| {
        let Some(c) = chain.as_ref() else {
            return fail(O3Status::NullPointer, "null chain");
        };
        if out.is_null() {
            return fail(O3Status::NullPointer, "null out pointer");
        }
        give_string(out, orientation_to_dyck(&c.state).key())
    })
}

/// Current triangulation and orientation as JSON.
///
/// # Safety
/// `chain` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn o3_flip_chain_state_json(chain: *const O3FlipChain, out: *mut *mut c_char) -> O3Status {
    guard(|| {
        let Some(c) = chain.as_ref() else {
            return fail(O3Status::NullPointer, "null chain");
        };
        if out.is_null() {
            return fail(O3Status::NullPointer, "null out pointer");
        }
        give_string(out, serde_json::to_string(&c.state.to_json()).expect("serializes"))
    })
}

/// # Safety
/// `chain` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn o3_flip_chain_free(chain: *mut O3FlipChain) {
    if !chain.is_null() {
        drop(Box::from_raw(chain));
    }
}

/// Number of pairs of non-crossing Dyck paths of semilength `n`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn o3_dyck_pair_count(n: u64, out: *mut u64) -> O3Status {
    guard(|| {
        if out.is_null() {
            return fail(O3Status::NullPointer, "null out pointer");
        }
        if n > 30 {
            return fail(O3Status::Overflow, "count does not fit in 64 bits");
        }
        match u64::try_from(pair_count(n)) {
            Ok(c) => {
                *out = c;
                O3Status::Ok
            }
            Err(e) => fail(O3Status::Overflow, e),
        }
    })
}

/// The state of a pair key, as JSON.
///
/// # Safety
/// `key` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn o3_dyck_decode(key: *const c_char, out: *mut *mut c_char) -> O3Status {
    guard(|| {
        if out.is_null() {
            return fail(O3Status::NullPointer, "null out pointer");
        }
        let key = match read_str(key) {
            Ok(k) => k,
            Err(s) => return s,
        };
        let pair = match DyckPair::from_key(key) {
            Ok(p) => p,
            Err(e) => return fail(O3Status::Parse, e),
        };
        match dyck_to_orientation(&pair) {
            Ok(s) => give_string(out, serde_json::to_string(&s.to_json()).expect("serializes")),
            Err(e) => fail(O3Status::InvalidArgument, e),
        }
    })
}
