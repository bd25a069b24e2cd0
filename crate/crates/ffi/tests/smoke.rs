//! Exercise the C surface end to end from Rust.

use antiflag_ffi::*;
use std::ffi::CStr;

#[test]
fn version_is_a_c_string() {
    let v = unsafe { CStr::from_ptr(af_version()) };
    assert!(!v.to_bytes().is_empty());
}

#[test]
fn construct_verify_and_free() {
    unsafe {
        let g = af_construct_c2(5, 2, 2, 1, 0, 1);
        assert!(!g.is_null());
        assert_eq!(af_digraph_order(g), 10);
        let mut params = AfDsrgParams::default();
        assert_eq!(af_verify_dsrg(g, &mut params), AfStatus::AfOk);
        assert_eq!(
            (params.v, params.k, params.t, params.lambda, params.mu),
            (10, 4, 2, 1, 2)
        );
        af_digraph_free(g);
    }
}

#[test]
fn construction_errors_set_messages() {
    unsafe {
        let g = af_construct_c1_general(2, 5, 3, 2); // 3*2 != q-1
        assert!(g.is_null());
        let mut buf = vec![0i8; 256];
        let len = af_last_error_message(buf.as_mut_ptr() as *mut _, buf.len());
        assert!(len > 1);
        let msg = CStr::from_ptr(buf.as_ptr() as *const _).to_str().unwrap();
        assert!(msg.contains("a·b"), "message was {msg:?}");
    }
}

#[test]
fn verification_failure_reports_witness() {
    unsafe {
        // 4-cycle: regular but not strongly regular
        let entries: Vec<u8> = vec![
            0, 1, 0, 0, //
            0, 0, 1, 0, //
            0, 0, 0, 1, //
            1, 0, 0, 0,
        ];
        let g = af_digraph_from_matrix(4, entries.as_ptr());
        assert!(!g.is_null());
        let status = af_verify_dsrg(g, std::ptr::null_mut());
        assert_eq!(status, AfStatus::AfNotDsrg);
        let mut buf = vec![0i8; 256];
        assert!(af_last_error_message(buf.as_mut_ptr() as *mut _, buf.len()) > 1);
        af_digraph_free(g);
    }
}

#[test]
fn certificates_detect_isomorphism() {
    unsafe {
        let g = af_construct_c1_b1(3, 2);
        let h = af_digraph_transpose(g);
        assert!(!g.is_null() && !h.is_null());

        let len = af_certificate_len(g);
        assert!(len > 0);
        let mut cg = vec![0u8; len];
        let mut ch = vec![0u8; len];
        assert_eq!(af_certificate(g, cg.as_mut_ptr(), len), AfStatus::AfOk);
        assert_eq!(af_certificate(h, ch.as_mut_ptr(), len), AfStatus::AfOk);

        let mut iso = 2u8;
        assert_eq!(af_is_isomorphic(g, h, &mut iso), AfStatus::AfOk);
        assert_eq!(iso == 1, cg == ch);

        let mut with_self = 0u8;
        assert_eq!(af_is_isomorphic(g, g, &mut with_self), AfStatus::AfOk);
        assert_eq!(with_self, 1);

        af_digraph_free(g);
        af_digraph_free(h);
    }
}

#[test]
fn automorphisms_over_ffi() {
    unsafe {
        // the 12-vertex graph whose automorphism group is S4
        let text = std::ffi::CString::new(
            "12\n\
             001110101010\n001110101010\n110001010101\n110001010101\n\
             101000110110\n101000110110\n010111001001\n010111001001\n\
             011001100011\n011001100011\n100110011100\n100110011100\n",
        )
        .unwrap();
        let g = af_digraph_parse01(text.as_ptr());
        assert!(!g.is_null());
        let mut order = 0u64;
        assert_eq!(af_automorphism_order(g, &mut order), AfStatus::AfOk);
        assert_eq!(order, 24);
        let mut buf = vec![0i8; 64];
        let needed = af_automorphism_name(g, buf.as_mut_ptr() as *mut _, buf.len());
        assert!(needed <= buf.len());
        let name = CStr::from_ptr(buf.as_ptr() as *const _).to_str().unwrap();
        assert_eq!(name, "S4");
        af_digraph_free(g);
    }
}

#[test]
fn symmetrize_and_srg_over_ffi() {
    unsafe {
        let g = af_construct_c2_plane(2, 0, 1);
        assert!(!g.is_null());
        let mut params = AfDsrgParams::default();
        assert_eq!(af_verify_dsrg(g, &mut params), AfStatus::AfOk);
        assert_eq!(
            (params.v, params.k, params.t, params.lambda, params.mu),
            (21, 6, 2, 1, 2)
        );
        let s = af_digraph_symmetrize(g);
        let mut srg = AfSrgParams::default();
        // the symmetrization of this graph is regular but need not be an SRG;
        // just exercise the call and the status contract
        let status = af_verify_srg(s, &mut srg);
        assert!(status == AfStatus::AfOk || status == AfStatus::AfNotSrg);
        af_digraph_free(s);
        af_digraph_free(g);
    }
}

#[test]
fn null_handles_are_harmless() {
    unsafe {
        af_digraph_free(std::ptr::null_mut());
        assert_eq!(af_digraph_order(std::ptr::null()), 0);
        assert_eq!(
            af_verify_dsrg(std::ptr::null(), std::ptr::null_mut()),
            AfStatus::AfNullPointer
        );
        assert_eq!(af_certificate_len(std::ptr::null()), 0);
        assert!(af_digraph_transpose(std::ptr::null()).is_null());
    }
}
