use num_complex::Complex64 as C64;
use proptest::prelude::*;

use nlts::dynamics::{evolve, ts_step, ModelConfig, NonlinearityKind, NonlinearitySpec, Pauli};
use nlts::linalg::{expm_hermitian, CMatrix};
use nlts::quantum::{
    apply_on_link, apply_on_site, expectation, reduced_density, state_distance, trace_distance,
    DensityMatrix, SiteOperator, StateVector, TwoSiteOperator,
};
use nlts::spacetime::{initial_surface, random_foliation};

fn state(n: usize) -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n)
        .prop_filter("non-zero", |v| v.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 1e-3)
        .prop_map(|v| StateVector::normalized(v.into_iter().map(|(a, b)| C64::new(a, b)).collect()).unwrap())
}

fn hermitian(dim: usize) -> impl Strategy<Value = CMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim * dim).prop_map(move |v| {
        let m = CMatrix::from_rows(
            &v.chunks(dim)
                .map(|r| r.iter().map(|&(a, b)| C64::new(a, b)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        );
        m.add(&m.adjoint()).scale_real(0.5)
    })
}

fn unitary(dim: usize) -> impl Strategy<Value = CMatrix> {
    hermitian(dim).prop_map(|h| expm_hermitian(&h, 1.3).unwrap())
}

fn qubit() -> impl Strategy<Value = DensityMatrix> {
    ((-1.0f64..1.0, -1.0f64..1.0), (-1.0f64..1.0, -1.0f64..1.0), 0.0f64..1.0).prop_map(
        |((a, b), (c, d), w)| {
            let v = [C64::new(a, b), C64::new(c, d)];
            let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt().max(1e-9);
            let pure = DensityMatrix::pure([v[0] / norm, v[1] / norm]).unwrap();
            let mixed = DensityMatrix::new(CMatrix::identity(2).scale_real(0.5)).unwrap();
            DensityMatrix::mixture(&[(w, pure), (1.0 - w, mixed)]).unwrap()
        },
    )
}

fn model() -> impl Strategy<Value = ModelConfig> {
    (
        -2.0f64..2.0,
        -2.0f64..2.0,
        -1.0f64..1.0,
        -1.5f64..1.5,
        0.01f64..0.5,
        prop_oneof![Just(Pauli::X), Just(Pauli::Y), Just(Pauli::Z)],
    )
        .prop_map(|(omega, mu, link_coupling, lambda, dt, base_operator)| ModelConfig {
            n_sites: 4,
            horizon: 3,
            omega,
            mu,
            link_coupling,
            dt,
            base_operator,
            nonlinearity: NonlinearitySpec::new(NonlinearityKind::Local, lambda),
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn local_gates_preserve_norm(psi in state(4), u in unitary(2), v in unitary(4), site in 0usize..4, link in 0usize..3) {
        let a = apply_on_site(&psi, &SiteOperator::new(u, site)).unwrap();
        let b = apply_on_link(&a, &TwoSiteOperator::new(v, (link, link + 1))).unwrap();
        prop_assert!((b.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gates_leave_distant_marginals_alone(psi in state(4), u in unitary(4), v in unitary(2)) {
        // Acting on sites 0, 1 cannot change the reduced state of site 3.
        let before = reduced_density(&psi, 3).unwrap();
        let a = apply_on_link(&psi, &TwoSiteOperator::new(u, (0, 1))).unwrap();
        let b = apply_on_site(&a, &SiteOperator::new(v, 1)).unwrap();
        let after = reduced_density(&b, 3).unwrap();
        prop_assert!(before.matrix().max_abs_diff(after.matrix()) < 1e-13);
    }

    #[test]
    fn disjoint_applications_commute(psi in state(4), u in unitary(4), v in unitary(2), w in unitary(2)) {
        let gate = TwoSiteOperator::new(u, (1, 2));
        let one = SiteOperator::new(v, 0);
        let other = SiteOperator::new(w, 3);
        let ab = apply_on_site(&apply_on_link(&psi, &gate).unwrap(), &one).unwrap();
        let ba = apply_on_link(&apply_on_site(&psi, &one).unwrap(), &gate).unwrap();
        prop_assert!(state_distance(&ab, &ba).unwrap() < 1e-13);
        let xy = apply_on_site(&apply_on_site(&psi, &other).unwrap(), &one).unwrap();
        let yx = apply_on_site(&apply_on_site(&psi, &one).unwrap(), &other).unwrap();
        prop_assert!(state_distance(&xy, &yx).unwrap() < 1e-13);
    }

    #[test]
    fn expectations_are_real_and_phase_blind(psi in state(3), h in hermitian(2), site in 0usize..3, theta in -3.0f64..3.0) {
        let op = SiteOperator::new(h.clone(), site);
        let e = expectation(&psi, &op).unwrap();
        prop_assert!(e.is_finite());
        let bound = h.as_slice().iter().map(|z| z.norm()).sum::<f64>();
        prop_assert!(e.abs() <= bound + 1e-12);
        let e2 = expectation(&psi.with_global_phase(theta), &op).unwrap();
        prop_assert!((e - e2).abs() < 1e-13);
    }

    #[test]
    fn trace_distance_is_a_metric(a in qubit(), b in qubit(), c in qubit()) {
        let ab = trace_distance(&a, &b);
        prop_assert!((ab - trace_distance(&b, &a)).abs() < 1e-15);
        prop_assert!(trace_distance(&a, &a) < 1e-15);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&ab));
        prop_assert!(ab <= trace_distance(&a, &c) + trace_distance(&c, &b) + 1e-12);
    }

    #[test]
    fn enabled_pairs_form_diamonds(seed in any::<u64>(), prefix in 0usize..20) {
        let f = random_foliation(4, 3, seed).unwrap();
        let mut s = initial_surface(4, 3).unwrap();
        for d in f.steps.iter().take(prefix) {
            s = s.apply(d).unwrap();
        }
        let enabled = s.enabled_deformations();
        for (i, a) in enabled.iter().enumerate() {
            for b in &enabled[i + 1..] {
                prop_assert!(a.is_disjoint_from(b));
                let ab = s.apply(a).unwrap().apply(b).unwrap();
                let ba = s.apply(b).unwrap().apply(a).unwrap();
                prop_assert_eq!(ab, ba);
            }
        }
    }

    #[test]
    fn local_nonlinear_steps_commute(config in model(), psi in state(4), seed in any::<u64>(), prefix in 0usize..20) {
        let f = random_foliation(4, 3, seed).unwrap();
        let mut s = initial_surface(4, 3).unwrap();
        let mut state = psi;
        for d in f.steps.iter().take(prefix) {
            let (next, surf, _) = ts_step(&state, &s, d, &config).unwrap();
            state = next;
            s = surf;
        }
        let enabled = s.enabled_deformations();
        for (i, a) in enabled.iter().enumerate() {
            for b in &enabled[i + 1..] {
                let (sa, surf_a, _) = ts_step(&state, &s, a, &config).unwrap();
                let (sab, _, _) = ts_step(&sa, &surf_a, b, &config).unwrap();
                let (sb, surf_b, _) = ts_step(&state, &s, b, &config).unwrap();
                let (sba, _, _) = ts_step(&sb, &surf_b, a, &config).unwrap();
                prop_assert!(state_distance(&sab, &sba).unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn local_nonlinearity_is_foliation_independent(config in model(), psi in state(4), s1 in any::<u64>(), s2 in any::<u64>()) {
        let (a, _) = evolve(&psi, &random_foliation(4, 3, s1).unwrap(), &config).unwrap();
        let (b, _) = evolve(&psi, &random_foliation(4, 3, s2).unwrap(), &config).unwrap();
        prop_assert!(state_distance(&a, &b).unwrap() < 1e-10);
        prop_assert!((a.norm() - 1.0).abs() < 1e-12);
    }
}
