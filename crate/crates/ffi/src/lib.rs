//! C ABI for hubnet.
//!
//! Objects are opaque handles created by `*_new`/`*_generate` functions and
//! released with the matching `*_free`. Every fallible call returns a
//! [`HubnetStatus`]; on failure the message is available from
//! [`hubnet_last_error`] on the same thread. Matrices are row-major.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hubnet::netmetrics::{measure, node_degrees, VisitOrder};
use hubnet::reservoir::{
    fit_readout, Esn, EsnConfig, Injection, Readout, ReadoutOptions, StateMatrix,
};
use hubnet::seed::rng_from_seed;
use hubnet::tasks::{mackey_glass, narma10, MackeyGlassConfig, NarmaConfig};
use hubnet::topology::{ConstraintScaling, Network, PruneMode, TopologyConfig};
use hubnet::Error;
use nalgebra::{DMatrix, DVector};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HubnetStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidConfig = 2,
    DimensionMismatch = 3,
    /// Pruning mass, spectrum or another quantity was degenerate.
    Numerical = 4,
    Io = 5,
    Parse = 6,
    Panic = 7,
    Other = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HubnetPruneMode {
    Hub = 0,
    Random = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HubnetInjection {
    Hub = 0,
    Random = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HubnetConstraintScaling {
    Raw = 0,
    Max = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct HubnetTopologyConfig {
    pub n: usize,
    pub density: f64,
    pub alpha: f64,
    pub beta: f64,
    pub lambda_dc: f64,
    pub lambda_nc: f64,
    pub lambda_reg: f64,
    pub weight_sigma2: f64,
    pub mode: HubnetPruneMode,
    pub constraint_scaling: HubnetConstraintScaling,
    pub seed: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct HubnetEsnConfig {
    pub topology: HubnetTopologyConfig,
    pub input_dim: usize,
    pub output_dim: usize,
    pub spec_rad: f64,
    pub r_sig: f64,
    pub injection: HubnetInjection,
    pub washout: usize,
    pub bias: bool,
    pub seed: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct HubnetMetrics {
    pub cv: f64,
    pub modularity: f64,
    pub clustering: f64,
    pub unconnected: usize,
}

/// Opaque network handle.
pub struct HubnetNetwork {
    inner: Network,
}

/// Opaque echo state network handle.
pub struct HubnetEsn {
    inner: Esn,
}

/// Opaque readout handle.
pub struct HubnetReadout {
    inner: Readout,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> HubnetStatus {
    match e {
        Error::InvalidConfig(_) => HubnetStatus::InvalidConfig,
        Error::DimensionMismatch(_)
        | Error::EmptySubset
        | Error::EmptyInput
        | Error::InsufficientLength { .. }
        | Error::IndexOutOfRange { .. }
        | Error::CountMismatch { .. } => HubnetStatus::DimensionMismatch,
        Error::AllMassZero
        | Error::ZeroMeanDegree
        | Error::ZeroTotalWeight
        | Error::ZeroSpectrum(_)
        | Error::ConstantVector
        | Error::RegenerationExhausted(_)
        | Error::NonFiniteScore(_) => HubnetStatus::Numerical,
        Error::Io(_) | Error::TruncatedFile(_) => HubnetStatus::Io,
        Error::Json(_) | Error::Csv(_) | Error::BadMagic { .. } => HubnetStatus::Parse,
    }
}

struct Fail(HubnetStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(HubnetStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> HubnetStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            HubnetStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            HubnetStatus::Panic
        }
    }
}

unsafe fn out_slice<'a, T>(p: *mut T, len: usize, what: &str) -> Result<&'a mut [T], Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts_mut(p, len))
}

unsafe fn in_slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn check_len(given: usize, needed: usize, what: &str) -> Result<(), Fail> {
    if given < needed {
        return Err(Fail(
            HubnetStatus::DimensionMismatch,
            format!("{what} holds {given} values, {needed} needed"),
        ));
    }
    Ok(())
}

fn topology_to_rust(c: &HubnetTopologyConfig) -> TopologyConfig {
    TopologyConfig {
        n: c.n,
        density: c.density,
        alpha: c.alpha,
        beta: c.beta,
        lambda_dc: c.lambda_dc,
        lambda_nc: c.lambda_nc,
        lambda_reg: c.lambda_reg,
        mode: match c.mode {
            HubnetPruneMode::Hub => PruneMode::Hub,
            HubnetPruneMode::Random => PruneMode::Random,
        },
        weight_sigma2: c.weight_sigma2,
        seed: c.seed,
        constraint_scaling: match c.constraint_scaling {
            HubnetConstraintScaling::Raw => ConstraintScaling::Raw,
            HubnetConstraintScaling::Max => ConstraintScaling::Max,
        },
    }
}

fn topology_from_rust(c: &TopologyConfig) -> HubnetTopologyConfig {
    HubnetTopologyConfig {
        n: c.n,
        density: c.density,
        alpha: c.alpha,
        beta: c.beta,
        lambda_dc: c.lambda_dc,
        lambda_nc: c.lambda_nc,
        lambda_reg: c.lambda_reg,
        weight_sigma2: c.weight_sigma2,
        mode: match c.mode {
            PruneMode::Hub => HubnetPruneMode::Hub,
            PruneMode::Random => HubnetPruneMode::Random,
        },
        constraint_scaling: match c.constraint_scaling {
            ConstraintScaling::Raw => HubnetConstraintScaling::Raw,
            ConstraintScaling::Max => HubnetConstraintScaling::Max,
        },
        seed: c.seed,
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hubnet_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next hubnet call on the same thread.
#[no_mangle]
pub extern "C" fn hubnet_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn hubnet_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Fills `out` with the default pruning parameters for `n` nodes.
#[no_mangle]
pub unsafe extern "C" fn hubnet_topology_config_default(
    n: usize,
    out: *mut HubnetTopologyConfig,
) -> HubnetStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = topology_from_rust(&TopologyConfig::with_n(n));
        Ok(())
    })
}

/// Generates a network. Release it with [`hubnet_network_free`].
#[no_mangle]
pub unsafe extern "C" fn hubnet_network_generate(
    config: *const HubnetTopologyConfig,
    out: *mut *mut HubnetNetwork,
) -> HubnetStatus {
    guard(|| {
        let cfg = config.as_ref().ok_or_else(|| null("config"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let net = Network::generate(&topology_to_rust(cfg))?;
        *out = Box::into_raw(Box::new(HubnetNetwork { inner: net }));
        Ok(())
    })
}

/// Parses network JSON as written by [`hubnet_network_to_json`].
#[no_mangle]
pub unsafe extern "C" fn hubnet_network_from_json(
    json: *const c_char,
    out: *mut *mut HubnetNetwork,
) -> HubnetStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Fail(HubnetStatus::Parse, e.to_string()))?;
        let net = Network::from_json_str(text)?;
        *out = Box::into_raw(Box::new(HubnetNetwork { inner: net }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn hubnet_network_free(net: *mut HubnetNetwork) {
    if !net.is_null() {
        drop(Box::from_raw(net));
    }
}

/// Node count, or 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn hubnet_network_size(net: *const HubnetNetwork) -> usize {
    net.as_ref().map_or(0, |n| n.inner.n())
}

/// Nonzero off-diagonal weights, or 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn hubnet_network_edge_count(net: *const HubnetNetwork) -> usize {
    net.as_ref().map_or(0, |n| n.inner.edge_count())
}

/// Copies the n×n weight matrix (row i holds edges into node i).
#[no_mangle]
pub unsafe extern "C" fn hubnet_network_weights(
    net: *const HubnetNetwork,
    out: *mut f64,
    len: usize,
) -> HubnetStatus {
    guard(|| {
        let net = &net.as_ref().ok_or_else(|| null("network"))?.inner;
        let n = net.n();
        check_len(len, n * n, "out")?;
        let out = out_slice(out, n * n, "out")?;
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = net.weights[(i, j)];
            }
        }
        Ok(())
    })
}

/// Copies the total (in + out) degree of each node.
#[no_mangle]
pub unsafe extern "C" fn hubnet_network_degrees(
    net: *const HubnetNetwork,
    out: *mut usize,
    len: usize,
) -> HubnetStatus {
    guard(|| {
        let net = &net.as_ref().ok_or_else(|| null("network"))?.inner;
        check_len(len, net.n(), "out")?;
        out_slice(out, net.n(), "out")?.copy_from_slice(&node_degrees(net).0);
        Ok(())
    })
}

/// CV, Louvain modularity (ascending visit order), clustering and
/// unconnected count. Undefined values are NaN.
#[no_mangle]
pub unsafe extern "C" fn hubnet_network_metrics(
    net: *const HubnetNetwork,
    out: *mut HubnetMetrics,
) -> HubnetStatus {
    guard(|| {
        let net = &net.as_ref().ok_or_else(|| null("network"))?.inner;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let m = measure(net, VisitOrder::Ascending)?;
        *out = HubnetMetrics {
            cv: m.cv,
            modularity: m.modularity,
            clustering: m.clustering,
            unconnected: m.unconnected,
        };
        Ok(())
    })
}

/// Serializes to JSON. Free the string with [`hubnet_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hubnet_network_to_json(
    net: *const HubnetNetwork,
    out: *mut *mut c_char,
) -> HubnetStatus {
    guard(|| {
        let net = &net.as_ref().ok_or_else(|| null("network"))?.inner;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let text = net.to_json_string()?;
        *out = CString::new(text)
            .map_err(|e| Fail(HubnetStatus::Other, e.to_string()))?
            .into_raw();
        Ok(())
    })
}

/// Fills `out` with the default reservoir settings for `n` neurons and
/// scalar input and output.
#[no_mangle]
pub unsafe extern "C" fn hubnet_esn_config_default(
    n: usize,
    out: *mut HubnetEsnConfig,
) -> HubnetStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let d = EsnConfig::default();
        *out = HubnetEsnConfig {
            topology: topology_from_rust(&TopologyConfig::with_n(n)),
            input_dim: d.input_dim,
            output_dim: d.output_dim,
            spec_rad: d.spec_rad,
            r_sig: d.r_sig,
            injection: HubnetInjection::Hub,
            washout: d.washout,
            bias: d.bias,
            seed: d.seed,
        };
        Ok(())
    })
}

/// Builds a reservoir from `config->seed`. Release with [`hubnet_esn_free`].
#[no_mangle]
pub unsafe extern "C" fn hubnet_esn_new(
    config: *const HubnetEsnConfig,
    out: *mut *mut HubnetEsn,
) -> HubnetStatus {
    guard(|| {
        let c = config.as_ref().ok_or_else(|| null("config"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let cfg = EsnConfig {
            input_dim: c.input_dim,
            output_dim: c.output_dim,
            spec_rad: c.spec_rad,
            r_sig: c.r_sig,
            injection: match c.injection {
                HubnetInjection::Hub => Injection::Hub,
                HubnetInjection::Random => Injection::Random,
            },
            washout: c.washout,
            bias: c.bias,
            topology: topology_to_rust(&c.topology),
            seed: c.seed,
        };
        let esn = Esn::new(&cfg)?;
        *out = Box::into_raw(Box::new(HubnetEsn { inner: esn }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn hubnet_esn_free(esn: *mut HubnetEsn) {
    if !esn.is_null() {
        drop(Box::from_raw(esn));
    }
}

/// Neuron count, or 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn hubnet_esn_size(esn: *const HubnetEsn) -> usize {
    esn.as_ref().map_or(0, |e| e.inner.n())
}

/// Writes 1 for neurons that receive input and 0 otherwise.
#[no_mangle]
pub unsafe extern "C" fn hubnet_esn_input_mask(
    esn: *const HubnetEsn,
    out: *mut u8,
    len: usize,
) -> HubnetStatus {
    guard(|| {
        let esn = &esn.as_ref().ok_or_else(|| null("esn"))?.inner;
        check_len(len, esn.n(), "out")?;
        let out = out_slice(out, esn.n(), "out")?;
        for (o, &m) in out.iter_mut().zip(&esn.input_mask) {
            *o = u8::from(m);
        }
        Ok(())
    })
}

/// Copies the total degree of each neuron in the unscaled topology.
#[no_mangle]
pub unsafe extern "C" fn hubnet_esn_degrees(
    esn: *const HubnetEsn,
    out: *mut usize,
    len: usize,
) -> HubnetStatus {
    guard(|| {
        let esn = &esn.as_ref().ok_or_else(|| null("esn"))?.inner;
        check_len(len, esn.n(), "out")?;
        out_slice(out, esn.n(), "out")?.copy_from_slice(&esn.degrees().0);
        Ok(())
    })
}

/// Runs `steps` inputs (`steps × input_dim`) from `s0` (length n, or NULL
/// for zeros) and writes the `steps × n` states.
#[no_mangle]
pub unsafe extern "C" fn hubnet_esn_harvest(
    esn: *const HubnetEsn,
    inputs: *const f64,
    steps: usize,
    s0: *const f64,
    states_out: *mut f64,
) -> HubnetStatus {
    guard(|| {
        let esn = &esn.as_ref().ok_or_else(|| null("esn"))?.inner;
        let n = esn.n();
        let d = esn.w_in.ncols();
        let u = DMatrix::from_row_slice(steps, d, in_slice(inputs, steps * d, "inputs")?);
        let start = if s0.is_null() {
            DVector::zeros(n)
        } else {
            DVector::from_column_slice(std::slice::from_raw_parts(s0, n))
        };
        let s = esn.harvest(&u, &start)?;
        let out = out_slice(states_out, steps * n, "states_out")?;
        for t in 0..steps {
            for i in 0..n {
                out[t * n + i] = s.0[(t, i)];
            }
        }
        Ok(())
    })
}

/// Fits the minimum-norm least-squares readout of `targets` (`rows ×
/// outputs`) on `states` (`rows × cols`). Release with
/// [`hubnet_readout_free`].
#[no_mangle]
pub unsafe extern "C" fn hubnet_readout_fit(
    states: *const f64,
    rows: usize,
    cols: usize,
    targets: *const f64,
    outputs: usize,
    washout: usize,
    bias: bool,
    out: *mut *mut HubnetReadout,
) -> HubnetStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let s = DMatrix::from_row_slice(rows, cols, in_slice(states, rows * cols, "states")?);
        let y =
            DMatrix::from_row_slice(rows, outputs, in_slice(targets, rows * outputs, "targets")?);
        let r = fit_readout(&StateMatrix(s), &y, ReadoutOptions { washout, bias })?;
        *out = Box::into_raw(Box::new(HubnetReadout { inner: r }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn hubnet_readout_free(r: *mut HubnetReadout) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Copies `W_out` (`cols × outputs`) and, when `bias_out` is not NULL and the
/// readout has an intercept, the `outputs` bias values.
#[no_mangle]
pub unsafe extern "C" fn hubnet_readout_weights(
    r: *const HubnetReadout,
    out: *mut f64,
    len: usize,
    bias_out: *mut f64,
) -> HubnetStatus {
    guard(|| {
        let r = &r.as_ref().ok_or_else(|| null("readout"))?.inner;
        let (rows, cols) = r.w_out.shape();
        check_len(len, rows * cols, "out")?;
        let o = out_slice(out, rows * cols, "out")?;
        for i in 0..rows {
            for j in 0..cols {
                o[i * cols + j] = r.w_out[(i, j)];
            }
        }
        if let (Some(b), false) = (&r.bias, bias_out.is_null()) {
            std::slice::from_raw_parts_mut(bias_out, cols).copy_from_slice(b.as_slice());
        }
        Ok(())
    })
}

/// Applies the readout to `rows` state rows and writes `rows × outputs`.
#[no_mangle]
pub unsafe extern "C" fn hubnet_readout_predict(
    r: *const HubnetReadout,
    states: *const f64,
    rows: usize,
    out: *mut f64,
) -> HubnetStatus {
    guard(|| {
        let r = &r.as_ref().ok_or_else(|| null("readout"))?.inner;
        let (cols, outputs) = r.w_out.shape();
        let s = DMatrix::from_row_slice(rows, cols, in_slice(states, rows * cols, "states")?);
        let p = r.apply(&s);
        let o = out_slice(out, rows * outputs, "out")?;
        for t in 0..rows {
            for k in 0..outputs {
                o[t * outputs + k] = p[(t, k)];
            }
        }
        Ok(())
    })
}

/// Mackey-Glass with the standard parameters. Either output may be NULL.
#[no_mangle]
pub unsafe extern "C" fn hubnet_mackey_glass(
    length: usize,
    transient: usize,
    x0: f64,
    raw_out: *mut f64,
    normalized_out: *mut f64,
) -> HubnetStatus {
    guard(|| {
        let s = mackey_glass(&MackeyGlassConfig {
            length,
            transient,
            x0,
            ..Default::default()
        });
        if !raw_out.is_null() {
            std::slice::from_raw_parts_mut(raw_out, length).copy_from_slice(&s.raw);
        }
        if !normalized_out.is_null() {
            std::slice::from_raw_parts_mut(normalized_out, length).copy_from_slice(&s.normalized);
        }
        Ok(())
    })
}

/// NARMA10 with the standard parameters: `length` inputs into `u_out` and
/// `length + 1` states into `x_out`.
#[no_mangle]
pub unsafe extern "C" fn hubnet_narma10(
    length: usize,
    seed: u64,
    u_out: *mut f64,
    x_out: *mut f64,
) -> HubnetStatus {
    guard(|| {
        let cfg = NarmaConfig {
            length,
            seed,
            ..Default::default()
        };
        let s = narma10(&cfg, &mut rng_from_seed(seed))?;
        out_slice(u_out, length, "u_out")?.copy_from_slice(&s.u);
        out_slice(x_out, length + 1, "x_out")?.copy_from_slice(&s.x);
        Ok(())
    })
}
