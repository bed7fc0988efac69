use num::complex::Complex64;
use num::BigRational;
use proptest::prelude::*;

use clifford_codes::chartab::{isotypic_decomposition, DecompositionOptions};
use clifford_codes::group::DEFAULT_NORMAL_CAP;
use clifford_codes::rep::{builtin_group, tensor_factorization};
use clifford_codes::{CycNum, UnitaryRep};

const CONDUCTORS: [u32; 6] = [1, 2, 3, 4, 8, 12];

/// Random element of `Q(ζ_m)` for `m` in [`CONDUCTORS`], as a sum of small
/// rational multiples of powers of `ζ_m`.
fn cyc() -> impl Strategy<Value = CycNum> {
    (0..CONDUCTORS.len()).prop_flat_map(|k| {
        let m = CONDUCTORS[k];
        prop::collection::vec((-6i64..=6, 1i64..=4, 0..m as u64), 0..5).prop_map(move |terms| {
            terms
                .into_iter()
                .map(|(n, d, e)| CycNum::zeta(m, e).scale(&BigRational::new(n.into(), d.into())))
                .sum()
        })
    })
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < 1e-9 * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #[test]
    fn ring_axioms(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &CycNum::one(), a.clone());
        prop_assert_eq!(&a + &(-&a), CycNum::zero());
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism(a in cyc(), b in cyc()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        let n = a.norm_sqr().embed();
        prop_assert!(n.im.abs() < 1e-9 && n.re > -1e-9);
    }

    #[test]
    fn embedding_is_a_homomorphism(a in cyc(), b in cyc()) {
        prop_assert!(close((&a * &b).embed(), a.embed() * b.embed()));
        prop_assert!(close((&a + &b).embed(), a.embed() + b.embed()));
        prop_assert!(close(a.conj().embed(), a.embed().conj()));
    }

    #[test]
    fn canonical_form_is_minimal(a in cyc()) {
        let m = a.conductor();
        prop_assert!(m % 4 != 2);
        let lifted = CycNum::from_representative(
            24,
            a.to_terms(24).unwrap().iter().fold(vec![BigRational::from_integer(0.into()); 24], |mut v, t| {
                v[t.2 as usize] += BigRational::new(t.0.into(), t.1.into());
                v
            }),
        );
        prop_assert_eq!(lifted, a);
    }

    #[test]
    fn galois_automorphisms_compose(a in cyc(), b in cyc()) {
        for k in [1u64, 5, 7, 11] {
            prop_assert_eq!((&a * &b).galois(k), &a.galois(k) * &b.galois(k));
        }
        prop_assert_eq!(a.galois(23), a.conj());
    }
}

fn pauli2() -> &'static UnitaryRep {
    use std::sync::OnceLock;
    static REP: OnceLock<UnitaryRep> = OnceLock::new();
    REP.get_or_init(|| builtin_group("pauli:2").unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn character_is_a_class_function(g in 0u32..64, h in 0u32..64) {
        let rep = pauli2();
        let grp = rep.group();
        prop_assert_eq!(rep.trace(grp.conjugate(h, g)), rep.trace(g));
        prop_assert_eq!(rep.trace(grp.inv(g)), &rep.trace(g).conj());
        prop_assert_eq!(grp.inv(grp.mul(g, h)), grp.mul(grp.inv(h), grp.inv(g)));
    }

    #[test]
    fn elements_are_phased_tensor_products(g in 0u32..64) {
        let rep = pauli2();
        let f = tensor_factorization(rep.matrix(g), &[2, 2]).unwrap();
        prop_assert_eq!(f.reconstruct(), rep.matrix(g).scale(&f.scale));
        prop_assert_eq!(Some(f.weight()), rep.weight(g));
    }

    #[test]
    fn decomposition_is_seed_independent(k in 0usize..375, seed in 0u64..1000) {
        let rep = pauli2();
        let subs = rep.group().normal_subgroups(DEFAULT_NORMAL_CAP).unwrap();
        let n = &subs[k];
        let base = isotypic_decomposition(rep, n, &DecompositionOptions::default()).unwrap();
        let other = isotypic_decomposition(rep, n, &DecompositionOptions { seed, ..Default::default() }).unwrap();
        prop_assert_eq!(base.components, other.components);
    }
}
