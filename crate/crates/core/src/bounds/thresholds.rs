use num_bigint::BigUint;

/// `|k(℘)|^{(r−1)(2^s−1)}·deg(Z)^{2^s}`.
pub fn induction_threshold(kp: &BigUint, r: u32, s: u32, deg_z: &BigUint) -> BigUint {
    let e = 1u32 << s;
    kp.pow((r - 1) * (e - 1)) * deg_z.pow(e)
}

/// `2(r−1)(2^s−1) + r²·2^{s+1}`.
pub fn separable_n(r: u32, s: u32) -> BigUint {
    let e = BigUint::from(1u32) << s;
    BigUint::from(2 * (r - 1)) * (&e - 1u32) + BigUint::from(r * r) * (e << 1)
}

pub fn bezout(deg_v: &BigUint, deg_w: &BigUint) -> BigUint {
    deg_v * deg_w
}

/// `[g^{-1}Kg : K′]·deg X`.
pub fn hecke_pullback(deg: &BigUint, index: &BigUint) -> BigUint {
    deg * index
}

/// `bezout(deg Z, hecke_pullback(deg Z, |k(℘)|^{r−1})) ≤ deg(Z)²·|k(℘)|^{r−1}`.
pub fn intersection_ledger_holds(deg_z: &BigUint, kp: &BigUint, r: u32) -> bool {
    let index = kp.pow(r - 1);
    bezout(deg_z, &hecke_pullback(deg_z, &index)) <= deg_z * deg_z * index
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(separable_n(2, 1), b(18));
        assert_eq!(separable_n(2, 0), b(8));
        assert_eq!(separable_n(3, 2), b(84));
        assert_eq!(induction_threshold(&b(2), 3, 2, &b(3)), b(5184));
        assert_eq!(induction_threshold(&b(2), 2, 1, &b(1)), b(2));
        assert_eq!(bezout(&b(3), &b(5)), b(15));
        assert_eq!(hecke_pullback(&b(4), &b(6)), b(24));
    }

    proptest! {
        #[test]
        fn threshold_recursion(kp in 2u64..10, r in 2u32..5, s in 2u32..5, d in 1u64..10) {
            let prev = induction_threshold(&b(kp), r, s - 1, &b(d));
            prop_assert_eq!(induction_threshold(&b(kp), r, s, &b(d)), b(kp).pow(r - 1) * &prev * &prev);
        }

        #[test]
        fn threshold_is_monotone(kp in 2u64..10, r in 2u32..5, s in 1u32..4, d in 1u64..10) {
            let t = induction_threshold(&b(kp), r, s, &b(d));
            prop_assert!(induction_threshold(&b(kp + 1), r, s, &b(d)) >= t);
            prop_assert!(induction_threshold(&b(kp), r + 1, s, &b(d)) >= t);
            prop_assert!(induction_threshold(&b(kp), r, s + 1, &b(d)) >= t);
            prop_assert!(induction_threshold(&b(kp), r, s, &b(d + 1)) >= t);
        }

        #[test]
        fn separable_n_lower_bound(r in 1u32..20, s in 0u32..20) {
            let rhs = b(2 * (r as u64 - 1) * ((1u64 << s) - 1)) + b(2 * (r * r) as u64 * (1u64 << s));
            prop_assert!(separable_n(r, s) >= rhs);
        }

        #[test]
        fn ledger(d in 1u64..1000, kp in 2u64..64, r in 2u32..6) {
            prop_assert!(intersection_ledger_holds(&b(d), &b(kp), r));
        }
    }
}
