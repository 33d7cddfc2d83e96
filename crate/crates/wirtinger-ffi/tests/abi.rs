//! Round trips through the C ABI exactly as a foreign caller would use it:
//! raw pointers, status codes, and caller-owned buffers.

use std::f64::consts::FRAC_PI_6;
use std::ffi::CStr;
use std::ptr;

use wirtinger_ffi::{
    wirtinger_angle, wirtinger_classification_name, wirtinger_random_structure,
    wirtinger_s6_structure, wirtinger_standard_structure, wirtinger_status_name,
    wirtinger_structure_dim, wirtinger_structure_free, wirtinger_structure_from_parts,
    wirtinger_structure_validate, wirtinger_verify, WirtingerAngleReport, WirtingerCheck,
    WirtingerClassification, WirtingerDiagnostics, WirtingerStatus, WirtingerStructure,
};

/// Builds a structure through the ABI, panicking on failure.
unsafe fn standard(dim: usize) -> *mut WirtingerStructure {
    let mut handle = ptr::null_mut();
    assert_eq!(
        wirtinger_standard_structure(dim, &mut handle),
        WirtingerStatus::Ok
    );
    assert!(!handle.is_null());
    handle
}

unsafe fn empty_report() -> WirtingerAngleReport {
    WirtingerAngleReport {
        cos_alpha: f64::NAN,
        alpha: f64::NAN,
        complexity_residual: f64::NAN,
        classification: WirtingerClassification::Generic,
    }
}

#[test]
fn standard_structure_round_trip() {
    unsafe {
        let s = standard(4);
        assert_eq!(wirtinger_structure_dim(s), 4);

        let mut diag = WirtingerDiagnostics {
            dim: 0,
            square_residual: f64::NAN,
            compatibility_residual: f64::NAN,
            metric_asymmetry: f64::NAN,
            metric_eigen_min: f64::NAN,
            metric_eigen_max: f64::NAN,
            normal_image_residual: f64::NAN,
            passes: false,
        };
        assert_eq!(
            wirtinger_structure_validate(s, &mut diag),
            WirtingerStatus::Ok
        );
        assert_eq!(diag.dim, 4);
        assert!(diag.passes);
        assert_eq!(diag.square_residual, 0.0);
        assert_eq!(diag.metric_eigen_min, 1.0);

        wirtinger_structure_free(s);
    }
}

#[test]
fn holomorphic_plane_is_complex() {
    unsafe {
        let s = standard(4);
        let frame = [1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0];
        let mut lambdas = [f64::NAN];
        let mut report = empty_report();
        assert_eq!(
            wirtinger_angle(
                s,
                frame.as_ptr(),
                2,
                0.0,
                lambdas.as_mut_ptr(),
                1,
                &mut report
            ),
            WirtingerStatus::Ok
        );
        assert!((report.cos_alpha - 1.0).abs() <= 1e-12);
        assert!(report.alpha.abs() <= 1e-6);
        assert!(report.complexity_residual <= 1e-12);
        assert_eq!(report.classification, WirtingerClassification::Complex);
        assert!((lambdas[0] - 1.0).abs() <= 1e-12);
        wirtinger_structure_free(s);
    }
}

#[test]
fn slant_plane_matches_the_closed_form() {
    unsafe {
        let s = standard(4);
        let theta = FRAC_PI_6;
        let frame = [1.0, 0.0, 0.0, 0.0, 0.0, theta.cos(), theta.sin(), 0.0];
        let mut report = empty_report();
        assert_eq!(
            wirtinger_angle(s, frame.as_ptr(), 2, 0.0, ptr::null_mut(), 0, &mut report),
            WirtingerStatus::Ok
        );
        assert!((report.cos_alpha - theta.cos()).abs() <= 1e-12);
        assert!((report.complexity_residual - theta.sin()).abs() <= 1e-9);
        assert_eq!(report.classification, WirtingerClassification::Generic);
        wirtinger_structure_free(s);
    }
}

#[test]
fn random_structure_respects_the_bound() {
    unsafe {
        let mut handle = ptr::null_mut();
        assert_eq!(
            wirtinger_random_structure(8, 7, &mut handle),
            WirtingerStatus::Ok
        );
        assert_eq!(wirtinger_structure_dim(handle), 8);

        // A fixed, well-conditioned 4-frame in ℝ⁸.
        #[rustfmt::skip]
        let frame = [
            1.0, 0.0, 0.0, 0.1, 0.0, 0.0, 0.0, 0.0,
            0.0, 1.0, 0.0, 0.0, -0.2, 0.0, 0.0, 0.0,
            0.0, 0.0, 1.0, 0.0, 0.0, 0.3, 0.0, 0.0,
            0.2, 0.0, 0.0, 1.0, 0.0, 0.0, 0.4, 0.0,
        ];
        let mut lambdas = [f64::NAN, f64::NAN];
        let mut report = empty_report();
        assert_eq!(
            wirtinger_angle(
                handle,
                frame.as_ptr(),
                4,
                0.0,
                lambdas.as_mut_ptr(),
                2,
                &mut report
            ),
            WirtingerStatus::Ok
        );
        assert!(report.cos_alpha.abs() <= 1.0 + 1e-9);
        assert!(lambdas[0].abs() >= lambdas[1].abs());
        assert!(lambdas.iter().all(|l| l.abs() <= 1.0 + 1e-9));
        let product: f64 = lambdas.iter().product();
        assert!((product - report.cos_alpha).abs() <= 1e-9);

        let mut check = WirtingerCheck {
            cos_alpha: f64::NAN,
            bound_margin: f64::NAN,
            complexity_residual: f64::NAN,
            equality_consistent: false,
        };
        assert_eq!(
            wirtinger_verify(handle, frame.as_ptr(), 4, &mut check),
            WirtingerStatus::Ok
        );
        assert_eq!(check.cos_alpha, report.cos_alpha);
        assert!(check.bound_margin >= -1e-9);
        assert!(check.equality_consistent);

        wirtinger_structure_free(handle);
    }
}

#[test]
fn s6_structure_validates_at_a_pole() {
    unsafe {
        let pole = [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        let mut handle = ptr::null_mut();
        assert_eq!(
            wirtinger_s6_structure(pole.as_ptr(), 7, &mut handle),
            WirtingerStatus::Ok
        );
        assert_eq!(wirtinger_structure_dim(handle), 7);

        let mut diag = WirtingerDiagnostics {
            dim: 0,
            square_residual: f64::NAN,
            compatibility_residual: f64::NAN,
            metric_asymmetry: f64::NAN,
            metric_eigen_min: f64::NAN,
            metric_eigen_max: f64::NAN,
            normal_image_residual: f64::NAN,
            passes: false,
        };
        assert_eq!(
            wirtinger_structure_validate(handle, &mut diag),
            WirtingerStatus::Ok
        );
        assert!(diag.passes);
        assert_eq!(diag.normal_image_residual, 0.0);

        wirtinger_structure_free(handle);
    }
}

#[test]
fn from_parts_rebuilds_the_flat_model() {
    unsafe {
        #[rustfmt::skip]
        let metric = [
            1.0, 0.0, 0.0, 0.0,
            0.0, 1.0, 0.0, 0.0,
            0.0, 0.0, 1.0, 0.0,
            0.0, 0.0, 0.0, 1.0,
        ];
        // J e₀ = e₁, J e₁ = −e₀ on each pair, laid out row-major.
        #[rustfmt::skip]
        let jop = [
            0.0, -1.0, 0.0, 0.0,
            1.0, 0.0, 0.0, 0.0,
            0.0, 0.0, 0.0, -1.0,
            0.0, 0.0, 1.0, 0.0,
        ];
        let mut handle = ptr::null_mut();
        assert_eq!(
            wirtinger_structure_from_parts(4, metric.as_ptr(), jop.as_ptr(), &mut handle),
            WirtingerStatus::Ok
        );

        let frame = [1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0];
        let mut report = empty_report();
        assert_eq!(
            wirtinger_angle(
                handle,
                frame.as_ptr(),
                2,
                0.0,
                ptr::null_mut(),
                0,
                &mut report
            ),
            WirtingerStatus::Ok
        );
        assert!((report.cos_alpha - 1.0).abs() <= 1e-12);

        wirtinger_structure_free(handle);
    }
}

#[test]
fn error_paths_report_precise_statuses() {
    unsafe {
        let mut handle = ptr::null_mut();
        assert_eq!(
            wirtinger_standard_structure(4, ptr::null_mut()),
            WirtingerStatus::NullPointer
        );
        assert_eq!(
            wirtinger_standard_structure(3, &mut handle),
            WirtingerStatus::InvalidArgument
        );
        assert_eq!(
            wirtinger_standard_structure(0, &mut handle),
            WirtingerStatus::InvalidArgument
        );

        let short = [1.0, 0.0, 0.0];
        assert_eq!(
            wirtinger_s6_structure(short.as_ptr(), 3, &mut handle),
            WirtingerStatus::InvalidArgument
        );
        let far = [2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        assert_eq!(
            wirtinger_s6_structure(far.as_ptr(), 7, &mut handle),
            WirtingerStatus::InvalidArgument
        );

        // J = I fails the involution identity J² = −I.
        #[rustfmt::skip]
        let metric = [1.0, 0.0, 0.0, 1.0];
        assert_eq!(
            wirtinger_structure_from_parts(2, metric.as_ptr(), metric.as_ptr(), &mut handle),
            WirtingerStatus::IncompatibleStructure
        );

        let s = standard(4);
        let frame = [1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0];
        let mut report = empty_report();
        assert_eq!(
            wirtinger_angle(s, frame.as_ptr(), 3, 0.0, ptr::null_mut(), 0, &mut report),
            WirtingerStatus::InvalidArgument
        );
        assert_eq!(
            wirtinger_angle(s, frame.as_ptr(), 0, 0.0, ptr::null_mut(), 0, &mut report),
            WirtingerStatus::InvalidArgument
        );

        let mut lambdas = [f64::NAN];
        let four = [
            1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0,
        ];
        assert_eq!(
            wirtinger_angle(
                s,
                four.as_ptr(),
                4,
                0.0,
                lambdas.as_mut_ptr(),
                1,
                &mut report
            ),
            WirtingerStatus::InvalidArgument
        );

        let dependent = [1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0];
        assert_eq!(
            wirtinger_angle(
                s,
                dependent.as_ptr(),
                2,
                0.0,
                ptr::null_mut(),
                0,
                &mut report
            ),
            WirtingerStatus::RankDeficient
        );

        let mut check = WirtingerCheck {
            cos_alpha: f64::NAN,
            bound_margin: f64::NAN,
            complexity_residual: f64::NAN,
            equality_consistent: false,
        };
        assert_eq!(
            wirtinger_verify(s, dependent.as_ptr(), 2, &mut check),
            WirtingerStatus::RankDeficient
        );

        wirtinger_structure_free(s);
        wirtinger_structure_free(ptr::null_mut());
        assert_eq!(wirtinger_structure_dim(ptr::null()), 0);
    }
}

#[test]
fn names_are_stable_c_strings() {
    unsafe {
        let ok = CStr::from_ptr(wirtinger_status_name(WirtingerStatus::Ok));
        assert_eq!(ok.to_str().unwrap(), "ok");
        let rank = CStr::from_ptr(wirtinger_status_name(WirtingerStatus::RankDeficient));
        assert_eq!(rank.to_str().unwrap(), "rank-deficient span");
        let anti = CStr::from_ptr(wirtinger_classification_name(
            WirtingerClassification::AntiComplex,
        ));
        assert_eq!(anti.to_str().unwrap(), "anti-complex");
    }
}

#[test]
fn committed_header_is_current() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/wirtinger.h"))
            .expect("include/wirtinger.h is committed and regenerated by build.rs");
    for symbol in [
        "WIRTINGER_H",
        "WirtingerStructure",
        "WIRTINGER_STATUS_OK",
        "WIRTINGER_CLASSIFICATION_COMPLEX",
        "wirtinger_angle",
        "wirtinger_structure_free",
        "wirtinger_verify",
    ] {
        assert!(header.contains(symbol), "header lost `{symbol}`");
    }
}
