use std::ffi::{CStr, CString};
use std::ptr;

use autoconvex_ffi::*;

fn last_error() -> String {
    let p = ac_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn matrix(re: &[f64], im: Option<&[f64]>, n: usize) -> *mut AcMatrix {
    let mut m = ptr::null_mut();
    let st = unsafe { ac_matrix_new(n, re.as_ptr(), im.map_or(ptr::null(), |v| v.as_ptr()), &mut m) };
    assert_eq!(st, AcStatus::Ok);
    m
}

#[test]
fn diagonal_support_points() {
    let m = matrix(&[2.0, 0.0, 0.0, -1.0], Some(&[0.0, 0.0, 0.0, 1.0]), 2);
    assert_eq!(unsafe { ac_matrix_dim(m) }, 2);
    let mut sp = AcSupportPoint::default();
    // W(diag(2, -1+i)) is a segment; at θ = 0 the support value is 2
    assert_eq!(unsafe { ac_support_point(m, 1, ptr::null(), 0.0, &mut sp) }, AcStatus::Ok);
    assert!((sp.h - 2.0).abs() < 1e-14 && (sp.x - 2.0).abs() < 1e-14 && sp.y.abs() < 1e-14);
    // c = (1, -1): h(π/2) = 1·1 + (−1)·0
    let c = [-1.0, 1.0];
    assert_eq!(unsafe { ac_support_point(m, 0, c.as_ptr(), std::f64::consts::FRAC_PI_2, &mut sp) }, AcStatus::Ok);
    assert!((sp.h - 1.0).abs() < 1e-14);
    unsafe { ac_matrix_free(m) };
}

#[test]
fn curve_sampling_and_certificate() {
    let json = CString::new(r#"{"n":3,"re":[[1,2,0],[0,0,1],[0.5,0,-1]],"im":[[0,0,1],[0,1,0],[0,0,0]]}"#).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { ac_matrix_from_json(json.as_ptr(), &mut m) }, AcStatus::Ok);
    let mut curve = ptr::null_mut();
    assert_eq!(unsafe { ac_boundary(m, 2, ptr::null(), 360, &mut curve) }, AcStatus::Ok);
    assert_eq!(unsafe { ac_curve_len(curve) }, 360);
    let mut p = AcSupportPoint::default();
    assert_eq!(unsafe { ac_curve_get(curve, 359, &mut p) }, AcStatus::Ok);
    assert_eq!(unsafe { ac_curve_get(curve, 360, &mut p) }, AcStatus::InvalidArgument);
    let mut ok = false;
    assert_eq!(unsafe { ac_curve_attainment(curve, &mut ok) }, AcStatus::Ok);
    assert!(ok);

    let n = 5000;
    let mut xy = vec![0.0; 2 * n];
    assert_eq!(unsafe { ac_sample_range(m, 2, ptr::null(), n, 8, xy.as_mut_ptr()) }, AcStatus::Ok);
    let mut rep = AcRegionReport::default();
    assert_eq!(unsafe { ac_certify(curve, xy.as_ptr(), n, 1e-8, &mut rep) }, AcStatus::Ok);
    assert!(rep.passed && rep.n_samples == n && rep.n_outside == 0);
    unsafe {
        ac_curve_free(curve);
        ac_matrix_free(m);
    }
}

#[test]
fn errors_set_status_and_message() {
    let mut m = ptr::null_mut();
    let bad = CString::new(r#"{"n":2,"re":[[1"#).unwrap();
    assert_eq!(unsafe { ac_matrix_from_json(bad.as_ptr(), &mut m) }, AcStatus::InvalidInput);
    assert!(m.is_null());
    assert!(last_error().contains("invalid input"));

    assert_eq!(unsafe { ac_matrix_from_json(ptr::null(), &mut m) }, AcStatus::NullPointer);
    let mut sp = AcSupportPoint::default();
    assert_eq!(unsafe { ac_support_point(ptr::null(), 1, ptr::null(), 0.0, &mut sp) }, AcStatus::NullPointer);

    let m = matrix(&[1.0, 0.0, 0.0, 1.0], None, 2);
    assert_eq!(unsafe { ac_support_point(m, 3, ptr::null(), 0.0, &mut sp) }, AcStatus::InvalidArgument);
    assert!(last_error().contains("rank"));
    // success clears the message
    assert_eq!(unsafe { ac_support_point(m, 1, ptr::null(), 0.0, &mut sp) }, AcStatus::Ok);
    assert!(ac_last_error().is_null());
    unsafe { ac_matrix_free(m) };

    // freeing NULL is a no-op
    unsafe {
        ac_matrix_free(ptr::null_mut());
        ac_curve_free(ptr::null_mut());
        ac_polytope_free(ptr::null_mut());
        ac_subspace_free(ptr::null_mut());
        ac_measure_free(ptr::null_mut());
    }
}

#[test]
fn majorization_calls() {
    let c = [4.0, 2.0, 0.0];
    let b = [3.0, 2.0, 1.0];
    let mut yes = false;
    assert_eq!(unsafe { ac_majorizes(b.as_ptr(), c.as_ptr(), 3, &mut yes) }, AcStatus::Ok);
    assert!(yes);
    let mut len = 0;
    assert_eq!(
        unsafe { ac_pinching_sequence(c.as_ptr(), b.as_ptr(), 3, ptr::null_mut(), 0, &mut len) },
        AcStatus::BufferTooSmall
    );
    assert_eq!(len, 1);
    let mut steps = [AcPinch::default(); 2];
    assert_eq!(unsafe { ac_pinching_sequence(c.as_ptr(), b.as_ptr(), 3, steps.as_mut_ptr(), 2, &mut len) }, AcStatus::Ok);
    assert!(steps[0].i != steps[0].j && (0.0..=1.0).contains(&steps[0].lambda));
    assert_eq!(
        unsafe { ac_pinching_sequence(b.as_ptr(), c.as_ptr(), 3, steps.as_mut_ptr(), 2, &mut len) },
        AcStatus::NotMajorized
    );
}

#[test]
fn qk_face() {
    // diag(1, 1/2, 1/2, 0) has trace 2 and a rank-2 middle block
    let re = [1.0, 0.0, 0.0, 0.0, 0.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0];
    let m = matrix(&re, None, 4);
    let mut r = AcQkReport::default();
    assert_eq!(unsafe { ac_qk_face(m, 2, &mut r) }, AcStatus::Ok);
    assert!(!r.extreme && r.face_dim == 3 && r.rank_r == 2 && r.rank_p == 1);
    assert_eq!(unsafe { ac_qk_face(m, 1, &mut r) }, AcStatus::NotInSet);
    unsafe { ac_matrix_free(m) };
}

#[test]
fn polytope_calls() {
    let k = CString::new(r#"{"d":3,"vertices":[["0","0","0"],["1","0","0"],["0","1","0"],["1","1","0"],["0","0","1"],["1","0","1"],["0","1","1"],["1","1","1"]]}"#).unwrap();
    let h = CString::new(r#"{"A":[["1","1","1"]],"b":["3/2"]}"#).unwrap();
    let (mut kp, mut hp) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { ac_polytope_from_json(k.as_ptr(), &mut kp) }, AcStatus::Ok);
    assert_eq!(unsafe { ac_subspace_from_json(h.as_ptr(), &mut hp) }, AcStatus::Ok);
    assert_eq!(unsafe { ac_polytope_vertex_count(kp) }, 8);
    let mut dim = 0;
    assert_eq!(unsafe { ac_polytope_facial_dimension(kp, &mut dim) }, AcStatus::Ok);
    assert_eq!(dim, 1);
    let mut s = AcTheoremSummary::default();
    assert_eq!(unsafe { ac_check_intersection(kp, hp, &mut s) }, AcStatus::Ok);
    assert_eq!((s.n_faces, s.n_fail), (13, 0));
    unsafe {
        ac_subspace_free(hp);
        ac_polytope_free(kp);
    }
}

#[test]
fn measure_calls() {
    let json = CString::new(r#"{"masses":[1,1,1],"target":[[1,0,0.5],[0,1,0.5]],"constraints":[[1,-1,1]],"z":[0.5]}"#).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { ac_measure_from_json(json.as_ptr(), &mut m) }, AcStatus::Ok);
    let (mut d0, mut d2) = (0.0, 0.0);
    assert_eq!(unsafe { ac_measure_defect(m, 0, 500, 1, &mut d0) }, AcStatus::Ok);
    assert_eq!(unsafe { ac_measure_defect(m, 2, 500, 1, &mut d2) }, AcStatus::Ok);
    assert!(d2 <= d0);
    let (mut nv, mut frac) = (0, 0);
    assert_eq!(unsafe { ac_measure_vertices(m, 1_000_000, &mut nv, &mut frac) }, AcStatus::Ok);
    assert!(nv > 0 && frac <= 1);
    unsafe { ac_measure_free(m) };
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(ac_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
