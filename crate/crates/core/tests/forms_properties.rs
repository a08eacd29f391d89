use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use unimod::classify::reference_form;
use unimod::forms::{self, GramForm, ModTwoFunctional, Parity};
use unimod::sample;

fn reference_forms(max_rank: usize) -> Vec<GramForm> {
    let mut out = Vec::new();
    for rank in (2..=max_rank).step_by(2) {
        out.push(reference_form(Parity::Odd, rank));
        out.push(reference_form(Parity::Even, rank));
    }
    out
}

#[test]
fn direct_sum_parity_is_even_iff_both_even() {
    let forms = reference_forms(6);
    for a in &forms {
        for b in &forms {
            if a.rank() + b.rank() > 6 {
                continue;
            }
            let expect = if a.parity() == Parity::Even && b.parity() == Parity::Even {
                Parity::Even
            } else {
                Parity::Odd
            };
            assert_eq!(a.direct_sum(b).parity(), expect);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn signature_adds_over_direct_sums(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let diag = |rng: &mut ChaCha8Rng| {
            let n = rand::Rng::gen_range(rng, 1..=3usize);
            let entries: Vec<i64> = (0..n).map(|_| if rand::Rng::gen_bool(rng, 0.5) { 1 } else { -1 }).collect();
            let u = sample::random_unimodular(rng, n);
            GramForm::new(unimod::IntMatrix::diagonal(&entries)).unwrap().restrict(&u)
        };
        let a = diag(&mut rng);
        let b = diag(&mut rng);
        prop_assert_eq!(a.direct_sum(&b).signature(), a.signature() + b.signature());
        prop_assert_eq!(a.direct_sum(&b).rank(), a.rank() + b.rank());
    }

    #[test]
    fn dual_vector_represents_g(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let parity = if rand::Rng::gen_bool(&mut rng, 0.5) { Parity::Odd } else { Parity::Even };
        let (form, g, _) = sample::random_conjugated(&mut rng, parity, 3);
        let w: Vec<BigInt> = forms::mod2_dual_vector(&form, &g).unwrap().into_iter().map(BigInt::from).collect();
        for i in 0..form.rank() {
            let mut x = vec![BigInt::from(0); form.rank()];
            x[i] = BigInt::from(1);
            let value = form.evaluate(&x, &w).unwrap().mod_floor(&BigInt::from(2));
            prop_assert_eq!(value, BigInt::from(g.bits()[i]));
        }
    }
}

#[test]
fn dual_vector_examples() {
    let d2 = GramForm::standard_odd(2);
    let g = ModTwoFunctional::new(vec![1, 1, 0, 0]).unwrap();
    assert_eq!(forms::mod2_dual_vector(&d2, &g).unwrap(), vec![1, 1, 0, 0]);
    let h = GramForm::hyperbolic(1);
    let g = ModTwoFunctional::new(vec![1, 1]).unwrap();
    assert_eq!(forms::mod2_dual_vector(&h, &g).unwrap(), vec![1, 1]);
    assert_eq!(forms::mod2_dual_vector(&h, &ModTwoFunctional::zero(2)).unwrap(), vec![0, 0]);
}
