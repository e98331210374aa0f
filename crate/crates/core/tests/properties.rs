use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trinom::{
    base_p_digits, exact_terms, is_palindrome, lucas_condition, lucas_eval, mirror_check,
    primes_in_range, table_via_poly_pow, table_via_recurrence, zero_pattern, DensePoly, Modulus,
    QuadraticSpec, Residue,
};

const SMALL_PRIMES: &[u64] = &[
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 97, 101, 65537,
];

fn modulus_strategy() -> impl Strategy<Value = Modulus> {
    prop_oneof![
        prop::sample::select(SMALL_PRIMES).prop_map(|p| Modulus::new(p).unwrap()),
        prop::sample::select(&[998244353u64, 1_000_000_007, (1 << 61) - 1, (1 << 62) - 57][..])
            .prop_map(|p| Modulus::new(p).unwrap()),
    ]
}

fn poly_strategy(m: Modulus, max_len: usize) -> impl Strategy<Value = DensePoly> {
    prop::collection::vec(any::<u64>(), 1..max_len).prop_map(move |c| DensePoly::new(c, m))
}

fn poly_triple() -> impl Strategy<Value = (DensePoly, DensePoly, DensePoly)> {
    prop::sample::select(&[3u64, 5, 7, 11, 13, 31, 97][..]).prop_flat_map(|p| {
        let m = Modulus::new(p).unwrap();
        (
            poly_strategy(m, 80),
            poly_strategy(m, 80),
            poly_strategy(m, 80),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn inverse_times_value_is_one(m in modulus_strategy(), x in any::<u64>()) {
        let r = Residue::new(x, m);
        prop_assume!(!r.is_zero());
        prop_assert_eq!(r.mul(r.inv().unwrap()).unwrap(), Residue::one(m));
    }

    #[test]
    fn digits_reconstruct(n in any::<u64>().prop_map(|n| n % 1_000_000_000_000_000_001), p in prop::sample::select(SMALL_PRIMES)) {
        let m = Modulus::new(p).unwrap();
        let n = BigUint::from(n);
        let d = base_p_digits(&n, m);
        prop_assert!(d.digits.iter().all(|&x| x < p));
        prop_assert!(d.digits.len() == 1 || *d.digits.last().unwrap() != 0);
        prop_assert_eq!(d.to_biguint(), n);
    }

    #[test]
    fn long_decimal_digits_reconstruct(s in "[1-9][0-9]{199}", p in prop::sample::select(SMALL_PRIMES)) {
        let m = Modulus::new(p).unwrap();
        let n = trinom::lucas::parse_decimal(&s).unwrap();
        let d = base_p_digits(&n, m);
        prop_assert_ne!(*d.digits.last().unwrap(), 0);
        prop_assert_eq!(d.to_biguint().to_string(), s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn poly_mul_commutative_and_associative((f, g, h) in poly_triple()) {
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        let left = f.mul(&g).unwrap().mul(&h).unwrap();
        let right = f.mul(&g.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn poly_pow_matches_chained_mul(p in prop::sample::select(&[3u64, 5, 7, 13, 101, 998244353][..]), a in any::<i64>(), b in any::<i64>(), k in 0u64..=8) {
        let m = Modulus::new(p).unwrap();
        let f = DensePoly::from_quadratic(a, b, m);
        let mut chained = DensePoly::one(m);
        for _ in 0..k {
            chained = chained.mul(&f).unwrap();
        }
        let power = f.pow(k);
        prop_assert_eq!(&power, &chained);
        if let Some(d) = f.degree() {
            prop_assert_eq!(power.degree(), Some(k as usize * d));
        }
    }

    #[test]
    fn lucas_digit_blocks_multiply(p in prop::sample::select(&[3u64, 5, 7, 11, 13, 17][..]), a in -20i64..20, b in (1i64..20).prop_flat_map(|b| prop_oneof![Just(b), Just(-b)]), n in any::<u64>().prop_map(|n| n >> 8), d in any::<u64>()) {
        let m = Modulus::new(p).unwrap();
        let spec = QuadraticSpec::new(a, b).unwrap();
        let table = table_via_recurrence(spec, m).unwrap();
        let d = d % p;
        let n_big = BigUint::from(n);
        let shifted = &n_big * p + d;
        let lhs = lucas_eval(&table, &shifted).unwrap();
        let rhs = lucas_eval(&table, &n_big).unwrap().mul(table.get(d as usize)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

/// `a = 2c`, `b = c^2 + 4d`, `b != 0`: exactly the integer-valued specs.
fn random_integer_spec(rng: &mut ChaCha8Rng) -> QuadraticSpec {
    loop {
        let c: i64 = rng.gen_range(-30..=30);
        let d: i64 = rng.gen_range(-30..=30);
        let b = c * c + 4 * d;
        if b != 0 {
            let spec = QuadraticSpec::new(2 * c, b).unwrap();
            assert!(spec.is_integer_valued());
            return spec;
        }
    }
}

#[test]
fn generalized_palindromes_for_random_specs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let primes = primes_in_range(3, 199);
    let mut asserted = 0;
    for _ in 0..60 {
        let a: i64 = rng.gen_range(-1000..=1000);
        let b: i64 = loop {
            let b = rng.gen_range(-1000..=1000);
            if b != 0 {
                break b;
            }
        };
        let spec = QuadraticSpec::new(a, b).unwrap();
        for &p in &primes {
            let m = Modulus::new(p).unwrap();
            let cond = lucas_condition(spec, m).unwrap();
            let table = table_via_poly_pow(spec, m).unwrap();
            let pattern = zero_pattern(&table);
            if !cond.is_zero() {
                assert!(
                    is_palindrome(&pattern),
                    "a={a} b={b} p={p} pattern={pattern}"
                );
                asserted += 1;
            }
        }
    }
    assert!(asserted > 2000);
}

#[test]
fn condition_equals_b() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let primes = primes_in_range(3, 1000);
    for _ in 0..100 {
        let a = 2 * rng.gen_range(-5000i64..=5000);
        let b = loop {
            let b = rng.gen_range(-5000i64..=5000);
            if b != 0 {
                break b;
            }
        };
        let p = primes[rng.gen_range(0..primes.len())];
        let m = Modulus::new(p).unwrap();
        let spec = QuadraticSpec::new(a, b).unwrap();
        assert_eq!(lucas_condition(spec, m).unwrap(), Residue::from_i64(b, m));
    }
}

#[test]
fn mirror_identity_random_specs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    for p in primes_in_range(3, 31) {
        let m = Modulus::new(p).unwrap();
        for _ in 0..20 {
            let a = rng.gen_range(-100i64..=100);
            let b = loop {
                let b = rng.gen_range(-100i64..=100);
                if m.reduce_i64(b) != 0 {
                    break b;
                }
            };
            let base = DensePoly::from_quadratic(a, b, m);
            for k in 0..=(p - 1) / 2 {
                assert!(mirror_check(&base.pow(k), Residue::from_i64(b, m), k).unwrap());
            }
        }
    }
}

#[test]
fn delannoy_residues_are_full_palindromes() {
    for p in primes_in_range(3, 499) {
        let m = Modulus::new(p).unwrap();
        let t = table_via_poly_pow(QuadraticSpec::delannoy(), m).unwrap();
        let r = t.residues();
        assert!(r.iter().eq(r.iter().rev()), "p={p}");
    }
}

#[test]
fn exact_reduction_is_table_prefix_for_random_integer_specs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    for _ in 0..20 {
        let spec = random_integer_spec(&mut rng);
        for p in [5u64, 7, 11, 13] {
            let m = Modulus::new(p).unwrap();
            let exact = exact_terms(spec, p as usize).unwrap().reduce(m);
            assert_eq!(
                exact.as_slice(),
                table_via_recurrence(spec, m).unwrap().residues()
            );
        }
    }
}

#[test]
fn lucas_property_for_random_integer_specs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for _ in 0..10 {
        let spec = random_integer_spec(&mut rng);
        for p in [3u64, 5, 7, 11] {
            let m = Modulus::new(p).unwrap();
            let report = trinom::verify_lucas(spec, m, 600).unwrap();
            assert!(report.holds, "{spec} p={p}: {:?}", report.counterexample);
        }
    }
}
