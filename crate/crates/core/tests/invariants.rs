use dmv_core::bounds::{clg_lower_bound, genus_upper_from_classnumber};
use dmv_core::extension::{class_number, splitting, Extension, ExtensionSpec};
use dmv_core::ffpoly::prime::{count_irreducible, primes_of_degree};
use dmv_core::ffpoly::text::parse_poly;
use dmv_core::ffpoly::{factor, FiniteField, Poly};
use dmv_core::goodprime::{shrink_level, DatumSpec, LevelMap, SubvarietyDatum};
use dmv_core::localfield::count_matrix_group;
use dmv_core::oracle;
use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use proptest::prelude::*;

const FIELDS: [(u64, u32); 7] = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)];

fn mobius(n: u32) -> i64 {
    let (mut n, mut m, mut p) = (n, 1, 2);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            m = -m;
        }
        p += 1;
    }
    if n > 1 {
        -m
    } else {
        m
    }
}

#[test]
fn prime_counts_follow_the_necklace_formula() {
    for (p, e) in FIELDS {
        let k = FiniteField::new(p, e).unwrap();
        let q = k.size() as i64;
        for d in 1..=4u32 {
            let sum: i64 = (1..=d).filter(|e| d % e == 0).map(|e| mobius(e) * q.pow(d / e)).sum();
            let expected = (sum / d as i64) as usize;
            assert_eq!(primes_of_degree(&k, d as usize).unwrap().len(), expected, "q={q} d={d}");
            assert_eq!(count_irreducible(q as u64, d), expected as u64);
        }
    }
}

#[test]
fn frobenius_fixes_every_element() {
    for (p, e) in FIELDS.iter().copied().chain([(3, 4), (3, 3), (2, 6)]) {
        let k = FiniteField::new(p, e).unwrap();
        if k.size() > 81 {
            continue;
        }
        for x in k.elements() {
            assert_eq!(k.pow(x, k.size()), x);
        }
    }
}

#[test]
fn shrink_index_is_the_order_of_gl() {
    let k = FiniteField::prime(3).unwrap();
    for src in ["t", "t^2+1", "t^3+2*t+1"] {
        let prime = dmv_core::json::parse_prime(src, &k).unwrap();
        for r in 1..=3usize {
            let (_, index) = shrink_level(&LevelMap::maximal(&k, r, 8), &prime).unwrap();
            let kp = prime.residue_size();
            assert_eq!(index, count_matrix_group(r, kp, 1).0);
            assert!(index < BigUint::from(kp).pow((r * r) as u32));
        }
    }
}

#[test]
fn class_numbers_satisfy_both_bounds() {
    let cases = [(3u64, "t^3-t"), (3, "t^3+2*t+1"), (5, "t^3+t"), (5, "t^5+2*t+1"), (7, "t^3+3")];
    for (q, a) in cases {
        let k = FiniteField::prime(q).unwrap();
        let e = Extension::kummer(&k, 2, parse_poly(a, &k).unwrap()).unwrap();
        let h = class_number(&e, 1 << 16).unwrap();
        assert_eq!(h, oracle::class_number_from_divisors(&e, 1 << 16).unwrap());
        let lower = clg_lower_bound(q, e.genus()).unwrap();
        assert!(Ratio::from_integer(BigInt::from(h.clone())) >= lower, "{a} over F_{q}");
        assert!(e.genus() as f64 <= genus_upper_from_classnumber(q, &h) + 1e-9);
    }
}

#[test]
fn splitting_degrees_sum_to_the_extension_degree() {
    let k = FiniteField::prime(5).unwrap();
    let exts = [
        Extension::constant(&k, 3).unwrap(),
        Extension::kummer(&k, 2, parse_poly("t^3+t+1", &k).unwrap()).unwrap(),
        Extension::kummer(&k, 3, parse_poly("t^2+2", &k).unwrap()).unwrap(),
        Extension::artin_schreier(&k, parse_poly("t^2", &k).unwrap()).unwrap(),
    ];
    for e in &exts {
        for d in 1..=2 {
            for p in primes_of_degree(&k, d).unwrap() {
                if let Ok(s) = splitting(e, &p) {
                    assert_eq!(s.total_degree() as usize, e.degree(), "{p}");
                }
            }
        }
    }
}

#[test]
fn datum_spec_round_trips() {
    let src = r#"{"extension": {"kind": "kummer", "n": 2, "a": "t^3-t", "base": "3"}, "r": 2,
        "twists": [{"prime": "t^2+1", "matrix": [["1", "1/(t^2+1)"], ["0", "1"]]}],
        "level": [{"prime": "t", "kind": "congruence", "depth": 2}]}"#;
    let spec: DatumSpec = serde_json::from_str(src).unwrap();
    let once = SubvarietyDatum::from_spec(&spec, 10).unwrap().to_spec();
    let printed = serde_json::to_string(&once).unwrap();
    let twice = SubvarietyDatum::from_spec(&serde_json::from_str(&printed).unwrap(), 10).unwrap().to_spec();
    assert_eq!(once, twice);
}

fn field_strategy() -> impl Strategy<Value = (u64, u32)> {
    prop::sample::select(FIELDS.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn factorization_round_trip((p, e) in field_strategy(), coeffs in prop::collection::vec(any::<u64>(), 1..10)) {
        let k = FiniteField::new(p, e).unwrap();
        let f = Poly::new(&k, coeffs.iter().map(|c| c % k.size()).collect());
        prop_assume!(!f.is_zero());
        let fac = factor(&f).unwrap();
        prop_assert_eq!(fac.expand(&k), f.clone());
        for (g, _) in &fac.factors {
            prop_assert!(oracle::is_irreducible_by_trial(g, 1 << 20).unwrap_or(true));
        }
    }

    #[test]
    fn extension_spec_round_trips(n in 2u32..4, a in "t\\^[1-5]\\+[12]\\*t\\+[1-4]") {
        let spec = ExtensionSpec::Kummer { n, a, base: "5".into() };
        if let Ok(e) = Extension::from_spec(&spec) {
            let printed = serde_json::to_string(&e.to_spec()).unwrap();
            let back: ExtensionSpec = serde_json::from_str(&printed).unwrap();
            prop_assert_eq!(Extension::from_spec(&back).unwrap().to_spec(), e.to_spec());
        }
    }
}
