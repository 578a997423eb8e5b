use std::sync::Arc;

use filtcat_core::complex::{self, Cat, Complex, ComplexMor};
use filtcat_core::filtered::{self, FiltOpKind};
use filtcat_core::functor::{self, FctMor, FctObj};
use filtcat_core::generate::{self, trial_rng};
use filtcat_core::io::Instance;
use filtcat_core::linalg::Matrix;
use filtcat_core::poset::IndexPoset;
use filtcat_core::rees;
use filtcat_core::Rat;
use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;

fn small_matrix() -> impl Strategy<Value = Matrix<Rat>> {
    (0usize..5, 0usize..5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-3i64..=3, r * c).prop_map(move |v| {
            Matrix::from_vec(r, c, v.into_iter().map(|x| Rat::from_integer(x.into())).collect()).unwrap()
        })
    })
}


fn setup(seed: u64) -> (ChaCha8Rng, Arc<IndexPoset>) {
    let mut rng = trial_rng(seed, 0);
    let p = generate::random_poset(&mut rng, 6);
    (rng, p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in small_matrix()) {
        prop_assert_eq!(m.rank() + m.kernel_basis().cols(), m.cols());
        prop_assert!(m.compose(&m.kernel_basis()).is_zero());
        prop_assert_eq!(m.image_basis().cols(), m.rank());
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn composition_is_associative(a in small_matrix(), seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let b: Matrix<Rat> = generate::random_matrix(&mut rng, a.cols(), 3);
        let c: Matrix<Rat> = generate::random_matrix(&mut rng, 3, 2);
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn functor_laws_hold_for_generated_functors(seed in any::<u64>()) {
        let (mut rng, p) = setup(seed);
        let m: FctObj<Rat> = generate::random_functor(&mut rng, &p, 3);
        prop_assert!(m.functor_law_violations().is_empty());
        let n: FctObj<Rat> = generate::random_functor(&mut rng, &p, 3);
        let f = generate::random_morphism(&mut rng, &m, &n);
        prop_assert_eq!(FctMor::identity(&n).after(&f), f.clone());
        prop_assert_eq!(f.after(&FctMor::identity(&m)), f.clone());
        let basis = functor::hom_space(&m, &n);
        prop_assert!(functor::coordinates(&basis, &f).is_some());
    }

    #[test]
    fn pointwise_kernel_and_cokernel_are_exact(seed in any::<u64>()) {
        let (mut rng, p) = setup(seed);
        let m: FctObj<Rat> = generate::random_functor(&mut rng, &p, 3);
        let n: FctObj<Rat> = generate::random_functor(&mut rng, &p, 3);
        let f = generate::random_morphism(&mut rng, &m, &n);
        let k = f.kernel();
        let q = f.cokernel();
        prop_assert!(functor::is_exact_at(&k.incl, &f));
        prop_assert!(functor::is_exact_at(&f, &q.proj));
        prop_assert!(f.coim_to_im().is_iso());
    }

    #[test]
    fn kappa_is_a_reflection(seed in any::<u64>()) {
        let (mut rng, p) = setup(seed);
        let m: FctObj<Rat> = generate::random_functor(&mut rng, &p, 3);
        let k = filtered::kappa(&m);
        prop_assert!(filtered::is_filtered(k.obj.underlying()));
        prop_assert!(k.unit.is_pointwise_surjective());
        prop_assert!(filtered::kappa(k.obj.underlying()).unit.is_iso());
        let e = generate::random_filtered::<Rat>(&mut rng, &p, 3);
        prop_assert!(filtered::kappa(e.underlying()).unit.is_iso());
        prop_assert_eq!(filtered::is_filtered(&m), k.unit.is_iso());
    }

    #[test]
    fn filtered_operations_stay_filtered(seed in any::<u64>()) {
        let (mut rng, p) = setup(seed);
        let a = generate::random_filtered::<Rat>(&mut rng, &p, 3);
        let b = generate::random_filtered::<Rat>(&mut rng, &p, 3);
        let f = generate::random_morphism(&mut rng, a.underlying(), b.underlying());
        for kind in [FiltOpKind::Ker, FiltOpKind::Coker, FiltOpKind::Im, FiltOpKind::Coim] {
            let op = filtered::filt_op(kind, &f).unwrap();
            prop_assert!(filtered::is_filtered(op.obj.underlying()));
            match kind {
                FiltOpKind::Ker => prop_assert!(f.after(&op.structural).is_zero()),
                FiltOpKind::Coker => prop_assert!(op.structural.after(&f).is_zero()),
                FiltOpKind::Im => prop_assert!(op.structural.is_pointwise_injective()),
                FiltOpKind::Coim => prop_assert!(op.structural.is_pointwise_surjective()),
            }
        }
        let s = filtered::strictness(&f).unwrap();
        prop_assert!(s.coim_to_im.is_pointwise_injective());
        prop_assert_eq!(s.is_strict, s.coim_to_im.is_iso());
        prop_assert_eq!(s.is_strict, s.cartesian_ok.iter().all(|&ok| ok));
    }

    #[test]
    fn rees_splitting_identities(seed in any::<u64>()) {
        let (mut rng, p) = setup(seed);
        let m: FctObj<Rat> = generate::random_functor(&mut rng, &p, 3);
        let r = rees::rees(&m);
        prop_assert!(r.check_identities().is_ok());
        prop_assert!(r.epsilon.is_pointwise_surjective());
        let res = rees::rees_resolution(&m);
        prop_assert!(filtered::is_filtered(res.kernel.underlying()));
        prop_assert!(functor::is_exact_at(&res.incl, &res.eps));
    }

    #[test]
    fn adjoint_transposition_is_bijective(seed in any::<u64>()) {
        let (mut rng, p) = setup(seed);
        let m: FctObj<Rat> = generate::random_functor(&mut rng, &p, 2);
        let e = generate::random_filtered::<Rat>(&mut rng, &p, 2);
        let f = generate::random_morphism(&mut rng, &m, e.underlying());
        let t = rees::adjoint_transpose(&f).unwrap();
        prop_assert_eq!(rees::adjoint_transpose_inv(&m, &t).unwrap(), f);
    }

    #[test]
    fn cone_of_identity_is_acyclic(seed in any::<u64>()) {
        let (mut rng, p) = setup(seed);
        let x: Complex<Rat> = generate::random_complex(&mut rng, &p, 3, 2);
        let c = complex::mapping_cone(&ComplexMor::identity(&x));
        for n in c.complex.lo() - 1..=c.complex.hi() + 1 {
            prop_assert!(c.complex.cohomology_dims(n).iter().all(|&d| d == 0));
        }
    }

    #[test]
    fn truncations_keep_cohomology(seed in any::<u64>(), n in 0i64..3) {
        let (mut rng, p) = setup(seed);
        let x: Complex<Rat> = generate::random_complex(&mut rng, &p, 3, 2);
        let le = complex::truncate_le(&x, n, Cat::Fct).unwrap().complex;
        let ge = complex::truncate_ge(&x, n, Cat::Fct).unwrap().complex;
        for k in x.lo() - 1..=x.hi() + 1 {
            let h = x.cohomology_dims(k);
            let zero = vec![0; p.len()];
            prop_assert_eq!(le.cohomology_dims(k), if k <= n { h.clone() } else { zero.clone() });
            prop_assert_eq!(ge.cohomology_dims(k), if k >= n { h } else { zero });
        }
    }

    #[test]
    fn instances_round_trip_through_json(seed in any::<u64>()) {
        let (mut rng, p) = setup(seed);
        let mut inst = Instance::new(p.clone());
        let m: FctObj<Rat> = generate::random_functor(&mut rng, &p, 3);
        let n: FctObj<Rat> = generate::random_functor(&mut rng, &p, 3);
        let f = generate::random_morphism(&mut rng, &m, &n);
        inst.add_morphism("f", f, "M", "N").unwrap();
        inst.add_complex("X", generate::random_complex(&mut rng, &p, 3, 2)).unwrap();
        let text = inst.to_json();
        let back = Instance::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
        prop_assert_eq!(back.morphism("f").unwrap(), inst.morphism("f").unwrap());
    }
}

#[test]
fn lkappa_of_filtered_complex_is_quasi_isomorphic() {
    for i in 0..20 {
        let (mut rng, p) = setup(1000 + i);
        let x: Complex<Rat> = generate::random_complex(&mut rng, &p, 3, 2);
        let lk = complex::lkappa(&x).unwrap();
        assert!(lk.total.is_filtered());
        assert!(complex::qis_check(&lk.augmentation), "seed {}", 1000 + i);
    }
}
