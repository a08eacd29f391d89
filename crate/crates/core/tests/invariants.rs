use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use unimod::arf::{self, OddConstruction};
use unimod::classify::{self, reference_form};
use unimod::forms::{GramForm, ModTwoFunctional, Parity};
use unimod::oracle::{self, OracleVerdict};
use unimod::sample;

fn parity_of(flag: bool) -> Parity {
    if flag {
        Parity::Odd
    } else {
        Parity::Even
    }
}

fn all_functionals(n: usize) -> impl Iterator<Item = ModTwoFunctional> {
    (0..1u64 << n).map(move |m| ModTwoFunctional::from_mask(m, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn classification_reproduces_reference(seed in any::<u64>(), odd in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let parity = parity_of(odd);
        let (form, _, _) = sample::random_conjugated(&mut rng, parity, 3);
        let t = classify::reference_basis(&form).unwrap();
        prop_assert!(t.matrix.determinant().magnitude() == &num_bigint::BigUint::from(1u8));
        prop_assert_eq!(form.restrict(&t.matrix), reference_form(parity, form.rank()));
    }

    #[test]
    fn xi_survives_change_of_basis(seed in any::<u64>(), odd in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let parity = parity_of(odd);
        let half = rand::Rng::gen_range(&mut rng, 1..=3usize);
        let reference = reference_form(parity, 2 * half);
        let g = sample::random_functional(&mut rng, 2 * half);
        let u = sample::random_unimodular(&mut rng, 2 * half);
        let (form, h) = sample::conjugate(&reference, &g, &u);
        prop_assert_eq!(arf::xi(&form, &h).unwrap(), arf::xi(&reference, &g).unwrap());
    }

    #[test]
    fn constructors_agree_with_xi_on_conjugates(seed in any::<u64>(), odd in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (form, g, _) = sample::random_conjugated(&mut rng, parity_of(odd), 2);
        let xi = arf::xi(&form, &g).unwrap();
        match form.parity() {
            Parity::Even => match arf::lagrangian_in_kernel_even(&form, &g) {
                Ok(w) => {
                    prop_assert_eq!(xi, 0);
                    prop_assert!(arf::verify_lagrangian(&form, &g, w.matrix()));
                }
                Err(unimod::Error::InvariantNonzero) => prop_assert_eq!(xi, 1),
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            },
            Parity::Odd => match arf::lagrangian_in_kernel_odd(&form, &g) {
                Ok(OddConstruction::Witness(w)) => {
                    prop_assert_eq!(xi, 0);
                    prop_assert!(arf::verify_lagrangian(&form, &g, w.matrix()));
                }
                Ok(OddConstruction::PairingObstruction(_)) => prop_assert_eq!(xi, 0),
                Err(unimod::Error::InvariantNonzero) => prop_assert_eq!(xi, 1),
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            },
        }
    }
}

#[test]
fn oracle_found_implies_xi_zero_on_small_references() {
    for parity in [Parity::Odd, Parity::Even] {
        for half in 1..=2 {
            let form = reference_form(parity, 2 * half);
            for g in all_functionals(2 * half) {
                let verdict = oracle::lagrangian_oracle(&form, &g, 2).unwrap();
                let xi = arf::xi(&form, &g).unwrap();
                if let OracleVerdict::Found { witness } = &verdict {
                    assert_eq!(xi, 0, "{parity} rank {} g {:?}", 2 * half, g.bits());
                    assert!(arf::verify_lagrangian(&form, &g, witness.matrix()));
                }
                if let OracleVerdict::Refuted { certificate } = &verdict {
                    oracle::replay_certificate(&form, &g, certificate).unwrap();
                }
            }
        }
    }
}

#[test]
fn even_sufficiency_exhaustive() {
    for half in 1..=3 {
        let form = GramForm::hyperbolic(half);
        for g in all_functionals(2 * half) {
            if arf::xi_even(&form, &g).unwrap() == 0 {
                let w = arf::lagrangian_in_kernel_even(&form, &g).unwrap();
                assert!(arf::verify_lagrangian(&form, &g, w.matrix()));
            }
        }
    }
}

#[test]
fn direct_sum_formulas() {
    let d = GramForm::standard_odd(1);
    let h = GramForm::hyperbolic(1);
    let summands = [d.clone(), h.clone(), GramForm::standard_odd(2), GramForm::hyperbolic(2)];
    for a in &summands {
        for b in &summands {
            if a.rank() + b.rank() > 6 {
                continue;
            }
            let sum = a.direct_sum(b);
            for ga in all_functionals(a.rank()) {
                for gb in all_functionals(b.rank()) {
                    let gs = ga.direct_sum(&gb);
                    match (a.parity(), b.parity()) {
                        (Parity::Odd, Parity::Even) => {
                            assert_eq!(arf::xi_odd(&sum, &gs).unwrap(), arf::xi_odd(a, &ga).unwrap())
                        }
                        (Parity::Odd, Parity::Odd) => assert_eq!(
                            arf::xi_odd(&sum, &gs).unwrap(),
                            arf::xi_odd(a, &ga).unwrap() ^ arf::xi_odd(b, &gb).unwrap()
                        ),
                        (Parity::Even, Parity::Even) => assert_eq!(
                            arf::xi_even(&sum, &gs).unwrap(),
                            arf::xi_even(a, &ga).unwrap() ^ arf::xi_even(b, &gb).unwrap()
                        ),
                        (Parity::Even, Parity::Odd) => assert_eq!(
                            arf::xi_odd(&sum, &gs).unwrap(),
                            arf::xi_odd(b, &gb).unwrap()
                        ),
                    }
                }
            }
        }
    }
}
