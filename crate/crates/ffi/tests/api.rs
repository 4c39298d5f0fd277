use std::ffi::{CStr, CString};
use std::ptr;

use equivch_ffi::*;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    equivch_string_free(p);
    s
}

unsafe fn last_error() -> String {
    let p = equivch_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

const WORKED: &str = r#"{"corners":[["0","10"],["9/25","31/4"],["9/10","1"]],"plateau":"1"}"#;

#[test]
fn profile_round_trip_and_orbits() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(equivch_profile_from_json(cs(WORKED).as_ptr(), &mut p), EquivchStatus::Ok);
        assert!(equivch_last_error().is_null());
        let mut out = ptr::null_mut();
        assert_eq!(equivch_profile_to_json(p, &mut out), EquivchStatus::Ok);
        assert_eq!(take_string(out), WORKED);
        assert_eq!(equivch_orbits_json(p, cs("2/5").as_ptr(), ptr::null(), &mut out), EquivchStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 5);
        equivch_profile_free(p);
    }
}

#[test]
fn standard_profile_homology() {
    unsafe {
        let mut p = ptr::null_mut();
        let status = equivch_profile_standard(cs("2/5").as_ptr(), cs("5/8").as_ptr(), cs("10").as_ptr(), &mut p);
        assert_eq!(status, EquivchStatus::Ok);
        let mut h = ptr::null_mut();
        let status =
            equivch_homology_compute(p, 1, 7, cs("2/5").as_ptr(), cs("1/8").as_ptr(), 1, 0, false, &mut h);
        assert_eq!(status, EquivchStatus::Ok);
        let (mut lo, mut hi) = (0i64, 0i64);
        assert_eq!(equivch_homology_window(h, &mut lo, &mut hi), EquivchStatus::Ok);
        assert_eq!((lo, hi), (-7, 0));
        for m in lo..=hi {
            let mut d = 9usize;
            assert_eq!(equivch_homology_dim(h, m, &mut d), EquivchStatus::Ok);
            assert_eq!(d, usize::from(m == -5));
        }
        equivch_homology_free(h);
        equivch_profile_free(p);
    }
}

#[test]
fn error_statuses() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(equivch_profile_from_json(cs("{").as_ptr(), &mut p), EquivchStatus::InvalidInput);
        assert!(!last_error().is_empty());
        assert_eq!(equivch_profile_from_json(ptr::null(), &mut p), EquivchStatus::NullPointer);
        assert_eq!(equivch_profile_from_json(cs(WORKED).as_ptr(), ptr::null_mut()), EquivchStatus::NullPointer);

        let degenerate = r#"{"corners":[["0","3"],["1","1"]],"plateau":"1"}"#;
        assert_eq!(equivch_profile_from_json(cs(degenerate).as_ptr(), &mut p), EquivchStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(equivch_orbits_json(p, cs("2/3").as_ptr(), ptr::null(), &mut out), EquivchStatus::Degenerate);
        assert!(last_error().contains("degenerate"));
        equivch_profile_free(p);

        let mut h = ptr::null_mut();
        let status = equivch_homology_compute(ptr::null(), 1, 7, cs("2/5").as_ptr(), cs("1/8").as_ptr(), 0, -1, true, &mut h);
        assert_eq!(status, EquivchStatus::NullPointer);
        let mut d = 0i64;
        assert_eq!(equivch_predicted_degree(1, cs("x/y").as_ptr(), &mut d), EquivchStatus::InvalidInput);
        equivch_profile_free(ptr::null_mut());
        equivch_homology_free(ptr::null_mut());
        equivch_string_free(ptr::null_mut());
    }
}

#[test]
fn reports_as_json() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(equivch_room_json(3, 8, 2, &mut out), EquivchStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(v["gap"], serde_json::json!(["1/2", "3/5"]));

        assert_eq!(equivch_certify_json(2, cs("3").as_ptr(), cs("2").as_ptr(), 0, &mut out), EquivchStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!((v["k"].as_u64(), v["l"].as_u64(), v["p"].as_i64()), (Some(5), Some(2), Some(-10)));
        assert_eq!(
            equivch_certify_json(1, cs("21/20").as_ptr(), cs("6/5").as_ptr(), 0, &mut out),
            EquivchStatus::InvalidInput
        );
    }
}

#[test]
fn ladder_check() {
    let ladder = |a1: &str| {
        format!(
            r#"{{"modulus":3,"direction":"top_to_bottom","top":{{"free_len":2,"coefficients":[[1,0,0]]}},"bottom":{{"free_len":1,"coefficients":[[1,0,0]]}},"a0":2,"verticals":[{a1}]}}"#
        )
    };
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(equivch_ladder_check_json(cs(&ladder("[1,1,0]")).as_ptr(), &mut out), EquivchStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(v["units"]["verdict"], "all_units");
        assert_eq!(equivch_ladder_check_json(cs(&ladder("[2,1,0]")).as_ptr(), &mut out), EquivchStatus::Mismatch);
        let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(v["commutativity"]["verdict"], "failing_square");
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(equivch_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
