use std::sync::OnceLock;

use cubic_hecke::analytic::{digamma, gamma, Bump};
use cubic_hecke::eisenstein::EisensteinInt;
use cubic_hecke::gauss::{e_k, e_k_complex, gauss_sum, to_complex};
use cubic_hecke::lfunctions::{completed_l_split, LSeriesHandle, Side};
use cubic_hecke::moments::{first_moment, ratios_sum, MomentOptions};
use cubic_hecke::primes::{primary_primes, sieve_family, PrimaryPrime};
use cubic_hecke::symbols::{cubic_symbol, cubic_symbol_prime, CubicValue};
use cubic_hecke::{Eisenstein, C64};
use proptest::prelude::*;

fn primes() -> &'static [PrimaryPrime] {
    static P: OnceLock<Vec<PrimaryPrime>> = OnceLock::new();
    P.get_or_init(|| primary_primes(1_000_000).unwrap())
}

fn family() -> &'static [PrimaryPrime] {
    static F: OnceLock<Vec<PrimaryPrime>> = OnceLock::new();
    F.get_or_init(|| sieve_family(5000, false).unwrap())
}

fn element(bound: i128) -> impl Strategy<Value = Eisenstein> {
    (-bound..=bound, -bound..=bound).prop_map(|(a, b)| Eisenstein::new(a, b))
}

fn nonzero(bound: i128) -> impl Strategy<Value = Eisenstein> {
    element(bound).prop_filter("nonzero", |z| !z.is_zero())
}

fn prime_index() -> impl Strategy<Value = usize> {
    any::<prop::sample::Index>().prop_map(|i| i.index(primes().len()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn ring_axioms(x in element(1 << 20), y in element(1 << 20), z in element(1 << 20)) {
        prop_assert_eq!(x + y, y + x);
        prop_assert_eq!(x * y, y * x);
        prop_assert_eq!((x * y) * z, x * (y * z));
        prop_assert_eq!(x * (y + z), x * y + x * z);
        prop_assert_eq!(x - x, Eisenstein::zero());
        prop_assert_eq!(x * Eisenstein::one(), x);
    }

    #[test]
    fn norm_is_multiplicative(x in element(1 << 30), y in element(1 << 30)) {
        prop_assert_eq!((x * y).norm().unwrap(), x.norm().unwrap() * y.norm().unwrap());
    }

    #[test]
    fn div_rem_reconstructs_with_smaller_remainder(x in element(1 << 40), y in nonzero(1 << 20)) {
        let (q, r) = x.div_rem(&y).unwrap();
        prop_assert_eq!(q * y + r, x);
        prop_assert!(r.norm().unwrap() < y.norm().unwrap());
    }

    #[test]
    fn exactly_one_primary_associate(z in nonzero(1 << 30)) {
        if z.is_coprime_to_three() {
            let primary = Eisenstein::units().iter().filter(|&&u| (u * z).is_primary()).count();
            prop_assert_eq!(primary, 1);
            let p = z.primary_associate().unwrap();
            prop_assert!(p.is_primary());
            prop_assert_eq!(p.primary_associate().unwrap(), p);
            prop_assert!(Eisenstein::is_associate(&p, &z).unwrap());
        } else {
            prop_assert!(z.primary_associate().is_err());
        }
    }

    #[test]
    fn narrow_scalars_agree_with_wide(a in -1000i32..1000, b in -1000i32..1000, c in -1000i32..1000, d in -1000i32..1000) {
        let narrow = EisensteinInt::<i64>::new(a.into(), b.into()) * EisensteinInt::new(c.into(), d.into());
        let wide = Eisenstein::new(a.into(), b.into()) * Eisenstein::new(c.into(), d.into());
        prop_assert_eq!(narrow.cast::<i128>().unwrap(), wide);
    }

    #[test]
    fn reciprocity_matches_exponentiation(a in element(1 << 40), i in prime_index()) {
        let pi = primes()[i].pi;
        prop_assert_eq!(cubic_symbol(&a, &pi).unwrap(), cubic_symbol_prime(&a, &pi).unwrap());
    }

    #[test]
    fn symbol_is_multiplicative_in_both_arguments(a in element(1 << 30), b in element(1 << 30), i in prime_index(), j in prime_index()) {
        let (p, q) = (primes()[i].pi, primes()[j].pi);
        let sa = cubic_symbol(&a, &p).unwrap();
        let sb = cubic_symbol(&b, &p).unwrap();
        prop_assert_eq!(cubic_symbol(&(a * b), &p).unwrap(), sa.mul(&sb));
        let pq = p * q;
        prop_assert_eq!(cubic_symbol(&a, &pq).unwrap(), sa.mul(&cubic_symbol(&a, &q).unwrap()));
    }

    #[test]
    fn symbol_values_are_cube_roots(a in element(1 << 30), i in prime_index()) {
        let pi = primes()[i].pi;
        let s = cubic_symbol(&a, &pi).unwrap();
        let cube = s.mul(&cubic_symbol(&(a * a), &pi).unwrap());
        prop_assert!(cube == CubicValue::ONE || cube == CubicValue::Zero);
    }

    #[test]
    fn e_k_two_paths(y in element(1 << 20), n in nonzero(1000)) {
        let exact = e_k(&y, &n).unwrap();
        let z = to_complex(&y) / to_complex(&n);
        prop_assert!((exact - e_k_complex(z)).norm() < 1e-9);
    }

    #[test]
    fn gauss_sum_depends_on_k_mod_n(k in element(200), t in element(50), i in 0usize..40) {
        let n = family()[i].pi;
        let shifted = k + t * n;
        let a = gauss_sum(&k, &n).unwrap();
        let b = gauss_sum(&shifted, &n).unwrap();
        prop_assert!((a - b).norm() < 1e-9 * (n.norm().unwrap() as f64).sqrt());
    }

    #[test]
    fn gamma_recurrence(re in -6.0f64..8.0, im in -30.0f64..30.0) {
        let s = C64::new(re, im);
        prop_assume!((s - s.re.round()).norm() > 1e-3 || s.re > 0.5);
        let lhs = gamma(s + 1.0).unwrap();
        let rhs = s * gamma(s).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * lhs.norm().max(1e-300));
        let d = digamma(s + 1.0).unwrap() - digamma(s).unwrap() - s.inv();
        prop_assert!(d.norm() < 1e-10 * (1.0 + s.inv().norm()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn functional_equation_and_unit_root_numbers(i in 0usize..60, re in -0.5f64..1.5, im in -15.0f64..15.0, q_side in any::<bool>()) {
        let fam = family();
        let p = &fam[i % fam.len()];
        prop_assume!(!q_side || p.splitting == cubic_hecke::primes::Splitting::Split);
        let side = if q_side { Side::Dirichlet } else { Side::Hecke };
        let cut = LSeriesHandle::required_cutoff(side, p.norm, 20.0).max(20_000);
        let h = if q_side { LSeriesHandle::dirichlet(&p.pi, cut) } else { LSeriesHandle::hecke(&p.pi, cut) }.unwrap();
        prop_assert!((h.root_number.norm() - 1.0).abs() < 1e-8);
        let s = C64::new(re, im);
        let a = completed_l_split(&h, s, 1.0).unwrap();
        let b = completed_l_split(&h.conj(), C64::new(1.0, 0.0) - s, 1.1).unwrap();
        prop_assert!((a - h.root_number * b).norm() < 1e-6 * a.norm());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn moment_ratios_ignore_weight_scale(scale in 0.01f64..100.0, re in 0.05f64..0.4, im in -3.0f64..3.0) {
        let alpha = C64::new(re, im);
        let unit = Bump::new();
        let scaled = Bump::scaled(scale);
        let base = first_moment(3000.0, alpha, MomentOptions { weight: &unit, split_only: false }).unwrap();
        let other = first_moment(3000.0, alpha, MomentOptions { weight: &scaled, split_only: false }).unwrap();
        let (r1, r2) = (base.ratio.unwrap(), other.ratio.unwrap());
        prop_assert!((r1 - r2).norm() < 1e-10 * r1.norm());
    }

    #[test]
    fn equal_shifts_reduce_to_the_prime_sum(re in 0.0f64..0.5, im in -4.0f64..4.0) {
        let a = C64::new(re, im);
        let r = ratios_sum(3000.0, a, a, MomentOptions::default()).unwrap();
        let plain: f64 = r.terms.iter().map(|t| t.lambda * t.weight).sum();
        prop_assert!((r.lhs - plain).norm() <= 1e-12 * plain);
    }
}
