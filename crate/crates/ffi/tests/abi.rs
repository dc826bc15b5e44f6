use std::ffi::{CStr, CString};
use std::ptr;

use hubnet_ffi::*;

fn last_error() -> String {
    let p = hubnet_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn topology(n: usize, seed: u64) -> HubnetTopologyConfig {
    let mut cfg = std::mem::MaybeUninit::uninit();
    assert_eq!(
        unsafe { hubnet_topology_config_default(n, cfg.as_mut_ptr()) },
        HubnetStatus::Ok
    );
    let mut cfg = unsafe { cfg.assume_init() };
    cfg.seed = seed;
    cfg
}

#[test]
fn version_is_set() {
    let v = unsafe { CStr::from_ptr(hubnet_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn network_lifecycle() {
    let cfg = topology(40, 3);
    assert_eq!(cfg.density, 0.2);
    assert_eq!(cfg.mode, HubnetPruneMode::Hub);
    let mut net = ptr::null_mut();
    unsafe {
        assert_eq!(hubnet_network_generate(&cfg, &mut net), HubnetStatus::Ok);
        assert_eq!(hubnet_network_size(net), 40);
        assert_eq!(hubnet_network_edge_count(net), 312);

        let mut w = vec![0.0; 1600];
        assert_eq!(
            hubnet_network_weights(net, w.as_mut_ptr(), w.len()),
            HubnetStatus::Ok
        );
        assert_eq!(w.iter().filter(|&&v| v != 0.0).count(), 312);
        assert!((0..40).all(|i| w[i * 40 + i] == 0.0));

        let mut deg = vec![0usize; 40];
        assert_eq!(
            hubnet_network_degrees(net, deg.as_mut_ptr(), 40),
            HubnetStatus::Ok
        );
        assert_eq!(deg.iter().sum::<usize>(), 2 * 312);

        let mut m = HubnetMetrics {
            cv: 0.0,
            modularity: 0.0,
            clustering: 0.0,
            unconnected: 99,
        };
        assert_eq!(hubnet_network_metrics(net, &mut m), HubnetStatus::Ok);
        assert!(m.cv > 0.0 && m.clustering > 0.0);

        let mut json = ptr::null_mut();
        assert_eq!(hubnet_network_to_json(net, &mut json), HubnetStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(hubnet_network_from_json(json, &mut back), HubnetStatus::Ok);
        let mut w2 = vec![0.0; 1600];
        hubnet_network_weights(back, w2.as_mut_ptr(), w2.len());
        assert_eq!(w, w2);
        hubnet_string_free(json);
        hubnet_network_free(back);
        hubnet_network_free(net);
    }
}

#[test]
fn errors_report_status_and_message() {
    unsafe {
        let mut cfg = topology(10, 0);
        cfg.density = 1.5;
        let mut net = ptr::null_mut();
        assert_eq!(
            hubnet_network_generate(&cfg, &mut net),
            HubnetStatus::InvalidConfig
        );
        assert!(net.is_null());
        assert!(last_error().contains("density"));

        assert_eq!(
            hubnet_network_generate(ptr::null(), &mut net),
            HubnetStatus::NullPointer
        );
        let bad = CString::new("{").unwrap();
        assert_eq!(
            hubnet_network_from_json(bad.as_ptr(), &mut net),
            HubnetStatus::Parse
        );

        let cfg = topology(10, 0);
        hubnet_network_generate(&cfg, &mut net);
        let mut small = [0.0; 10];
        assert_eq!(
            hubnet_network_weights(net, small.as_mut_ptr(), small.len()),
            HubnetStatus::DimensionMismatch
        );
        assert_eq!(hubnet_network_size(ptr::null()), 0);
        hubnet_network_free(net);
        hubnet_network_free(ptr::null_mut());
    }
}

#[test]
fn esn_harvest_and_readout() {
    unsafe {
        let mut cfg = std::mem::MaybeUninit::uninit();
        assert_eq!(
            hubnet_esn_config_default(60, cfg.as_mut_ptr()),
            HubnetStatus::Ok
        );
        let mut cfg = cfg.assume_init();
        cfg.seed = 4;
        let mut esn = ptr::null_mut();
        assert_eq!(hubnet_esn_new(&cfg, &mut esn), HubnetStatus::Ok);
        let n = hubnet_esn_size(esn);
        assert_eq!(n, 60);

        let mut mask = vec![0u8; n];
        hubnet_esn_input_mask(esn, mask.as_mut_ptr(), n);
        assert_eq!(mask.iter().map(|&m| m as usize).sum::<usize>(), 6);

        let steps = 301;
        let mut series = vec![0.0; steps + 1];
        assert_eq!(
            hubnet_mackey_glass(steps + 1, 1000, 1.2, ptr::null_mut(), series.as_mut_ptr()),
            HubnetStatus::Ok
        );
        let mut states = vec![0.0; steps * n];
        assert_eq!(
            hubnet_esn_harvest(
                esn,
                series.as_ptr(),
                steps,
                ptr::null(),
                states.as_mut_ptr()
            ),
            HubnetStatus::Ok
        );
        assert!(states.iter().all(|v| v.abs() < 1.0));

        let mut r = ptr::null_mut();
        let targets = &series[1..];
        assert_eq!(
            hubnet_readout_fit(
                states.as_ptr(),
                steps,
                n,
                targets.as_ptr(),
                1,
                0,
                false,
                &mut r
            ),
            HubnetStatus::Ok
        );
        let mut pred = vec![0.0; steps];
        hubnet_readout_predict(r, states.as_ptr(), steps, pred.as_mut_ptr());
        let err = pred
            .iter()
            .zip(targets)
            .map(|(p, t)| (p - t).powi(2))
            .sum::<f64>()
            / steps as f64;
        assert!(err.sqrt() < 1e-2, "{}", err.sqrt());

        let mut w = vec![0.0; n];
        assert_eq!(
            hubnet_readout_weights(r, w.as_mut_ptr(), n, ptr::null_mut()),
            HubnetStatus::Ok
        );
        let manual: f64 = (0..n).map(|i| states[i] * w[i]).sum();
        assert!((manual - pred[0]).abs() < 1e-12);

        hubnet_readout_free(r);
        hubnet_esn_free(esn);
    }
}

#[test]
fn readout_shape_errors() {
    unsafe {
        let mut r = ptr::null_mut();
        let s = [1.0, 2.0];
        let y = [1.0, 2.0];
        assert_eq!(
            hubnet_readout_fit(s.as_ptr(), 2, 1, y.as_ptr(), 1, 2, false, &mut r),
            HubnetStatus::DimensionMismatch
        );
        assert_eq!(
            hubnet_readout_fit(ptr::null(), 2, 1, y.as_ptr(), 1, 0, false, &mut r),
            HubnetStatus::NullPointer
        );
    }
}

#[test]
fn narma_series() {
    let mut u = vec![0.0; 500];
    let mut x = vec![0.0; 501];
    unsafe {
        assert_eq!(
            hubnet_narma10(500, 9, u.as_mut_ptr(), x.as_mut_ptr()),
            HubnetStatus::Ok
        );
    }
    assert!(u.iter().all(|&v| (0.0..=0.5).contains(&v)));
    assert!(x[..10].iter().all(|&v| v == 0.0));
    assert!(x[10] > 0.0);
}
