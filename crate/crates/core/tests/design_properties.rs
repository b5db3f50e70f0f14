use magbb::beamform::*;
use magbb::fieldcore::*;
use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use proptest::prelude::*;

fn complex_matrix() -> impl Strategy<Value = Matrix3<Complex64>> {
    prop::collection::vec(-2.0f64..2.0, 18)
        .prop_map(|v| Matrix3::from_fn(|r, c| Complex64::new(v[3 * r + c], v[9 + 3 * r + c])))
}

fn complex_vector() -> impl Strategy<Value = Vector3<Complex64>> {
    prop::array::uniform6(-2.0f64..2.0)
        .prop_map(|a| Vector3::from_fn(|k, _| Complex64::new(a[k], a[k + 3])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn embedding_is_a_homomorphism(a in complex_matrix(), b in complex_matrix(), x in complex_vector()) {
        prop_assert!((embed_matrix(&(a * b)) - embed_matrix(&a) * embed_matrix(&b)).amax() < 1e-12);
        prop_assert!((embed_vector(&(a * x)) - embed_matrix(&a) * embed_vector(&x)).amax() < 1e-12);
        prop_assert_eq!(reassemble(&embed_vector(&x)), x);
    }

    #[test]
    fn quadratic_form_is_the_alignment_residual(
        h in complex_matrix(),
        i in complex_vector(),
        t in -3.0f64..3.0,
        polar in 0.0f64..3.1,
        azimuth in 0.0f64..6.2,
    ) {
        let u = Orientation::new(polar, azimuth);
        let dec = decompose(&h, &u, 1.0);
        let p = build_problem(&dec, 50.0, 0.2, &CoilSpec::reference_receiver(), &Medium::reference_air()).unwrap();
        let ei = embed_vector(&i);
        let x = Vector7::from_fn(|k, _| if k < 6 { ei[k] } else { t });
        let uc = u.unit_vector().map(|c| Complex64::new(c * t, 0.0));
        let direct = (uc - h * i).norm_squared();
        prop_assert!((p.quadratic_form(&x) - direct).abs() <= 1e-9 * (1.0 + direct));
    }

    #[test]
    fn grid_directions_are_unit_and_upper(n in 1usize..120) {
        let g = direction_grid(n).unwrap();
        prop_assert_eq!(g.len(), n);
        for o in &g {
            prop_assert!((o.unit_vector().norm() - 1.0).abs() < 1e-12);
            prop_assert!(o.unit_vector().z >= 0.0);
        }
    }

    #[test]
    fn gram_schmidt_output_is_orthonormal(v in prop::array::uniform9(-1.0f64..1.0)) {
        let a = Vector3::new(v[0], v[1], v[2]);
        let b = Vector3::new(v[3], v[4], v[5]);
        let c = Vector3::new(v[6], v[7], v[8]);
        prop_assume!(a.cross(&b).dot(&c).abs() > 1e-3);
        let e = orthonormal_triple(&a, &b, &c).unwrap();
        for p in 0..3 {
            for q in 0..3 {
                let expected = if p == q { 1.0 } else { 0.0 };
                prop_assert!((e[p].dot(&e[q]) - expected).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn every_scheme_respects_the_power_budget() {
    let params = DesignParams::default();
    let loc = SphericalLocation::from_degrees(1.2, 180.0, 0.0).unwrap();
    for scheme in [
        Scheme::Constant,
        Scheme::Orthonormal3,
        Scheme::Grid { n_cv: 8 },
        Scheme::Grid { n_cv: 36 },
    ] {
        let set = design_set(&loc, scheme, &params, 11).unwrap();
        assert_eq!(set.n_cv(), scheme.n_cv());
        for v in &set.vectors {
            assert!(v.power(params.tx.resistance) <= 2.0 * params.p_max * (1.0 + 1e-6));
        }
    }
}

#[test]
fn designs_at_the_optimized_location_are_rank_one_and_aligned() {
    let params = DesignParams::default();
    let loc = SphericalLocation::from_degrees(1.2, 180.0, 0.0).unwrap();
    let set = design_set(&loc, Scheme::Grid { n_cv: 36 }, &params, 0).unwrap();
    let channel = channel_matrix(&params.tx, &params.medium, &loc).unwrap();
    for v in &set.vectors {
        let d = v.diagnostics.unwrap();
        assert!(d.feasible_voltage);
        assert!(d.rank1_ratio >= 0.999, "{}", d.rank1_ratio);
        assert!(d.alignment_error < 1e-4, "{}", d.alignment_error);
        assert!(d.target_voltage > params.v_th);
        let (err, volts) = recompute_diagnostics(&channel, v, &params);
        assert!((err - d.alignment_error).abs() < 1e-9);
        assert!((volts - d.target_voltage).abs() < 1e-9);
    }
}

#[test]
fn design_is_parallel_deterministic() {
    let params = DesignParams::default();
    let loc = SphericalLocation::from_degrees(1.2, 33.53, 124.4).unwrap();
    let a = design_set(&loc, Scheme::Grid { n_cv: 16 }, &params, 3).unwrap();
    let b = design_set(&loc, Scheme::Grid { n_cv: 16 }, &params, 3).unwrap();
    assert_eq!(a, b);
}
