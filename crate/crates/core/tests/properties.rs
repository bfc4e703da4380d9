use grs_core::bounds::{
    entry_index, lily_predict, lody_entry_index, nestor_cecilia_check, standard_shift, ShiftSeq,
};
use grs_core::correlation::{self, crosscorr, spectrum};
use grs_core::fast::{coeff_by_iteration, level_pair, streaming_peaks, LevelSpectrum};
use grs_core::scalar::{conj, crat, rat, CRational};
use grs_core::seq::{grs_pair, validate_seed};
use grs_core::{Budget, SeedPair, Sequence};
use num_complex::Complex;
use proptest::prelude::*;

fn complex_seed() -> SeedPair {
    let i = Complex::new(rat(0), rat(1));
    validate_seed(&Sequence::new(vec![crat(1), i.clone()]), &Sequence::new(vec![crat(1), -i]), 2).unwrap()
}

fn all_seeds() -> Vec<SeedPair> {
    let mut v = SeedPair::corpus();
    v.push(complex_seed());
    v
}

fn small_int_seq(max_len: usize) -> impl Strategy<Value = Sequence> {
    prop::collection::vec(-3i64..=3, 1..=max_len).prop_map(|v| Sequence::from_integers(&v))
}

fn sign_seq(max_len: usize) -> impl Strategy<Value = Sequence> {
    prop::collection::vec(any::<bool>(), 1..=max_len).prop_map(Sequence::from_signs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bit_parallel_matches_exact(f in sign_seq(150), g in sign_seq(150)) {
        let fe = Sequence::new(f.coeffs());
        let ge = Sequence::new(g.coeffs());
        let fast = spectrum(&f, &g);
        for s in fast.shifts() {
            let slow: CRational = (0..g.len() as i64).fold(crat(0), |acc, j| {
                acc + fe.coeff(j + s) * conj(&ge.coeff(j))
            });
            prop_assert_eq!(fast.get(s), slow);
        }
    }

    #[test]
    fn conjugate_symmetry(f in small_int_seq(20), g in small_int_seq(20), s in -25i64..25) {
        prop_assert_eq!(crosscorr(&f, &g, -s), conj(&crosscorr(&g, &f, s)));
    }

    #[test]
    fn golay_pairs_at_every_level(which in 0usize..4, n in 0u32..=7) {
        let seed = &all_seeds()[which];
        let p = grs_pair(seed, n, &Budget::default()).unwrap();
        let ax = spectrum(&p.x, &p.x);
        let ay = spectrum(&p.y, &p.y);
        for s in 1..p.ell() as i64 {
            prop_assert_eq!(ax.get(s) + ay.get(s), crat(0));
        }
        prop_assert_eq!(ax.get(0), ay.get(0));
    }

    #[test]
    fn psl_is_previous_pcc(which in 0usize..4, n in 1u32..=8) {
        let seed = &all_seeds()[which];
        let b = Budget::default();
        let p = grs_pair(seed, n, &b).unwrap();
        let q = grs_pair(seed, n - 1, &b).unwrap();
        prop_assert_eq!(correlation::psl(&p.x).unwrap().magnitude, correlation::pcc(&q.x, &q.y).magnitude);
        prop_assert_eq!(correlation::psl(&p.y).unwrap().magnitude, correlation::psl(&p.x).unwrap().magnitude);
    }

    #[test]
    fn iteration_matches_oracle(which in 0usize..4, n in 2u32..=8, t_frac in 0.0f64..1.0, s_frac in -1.0f64..1.0) {
        let seed = &all_seeds()[which];
        let t = 1 + ((n - 1) as f64 * t_frac) as u32;
        let t = t.min(n - 1);
        let b = Budget::default();
        let p = grs_pair(seed, n, &b).unwrap();
        let ell = p.ell() as i64;
        let s = (s_frac * (ell + 3) as f64) as i64;
        prop_assert_eq!(coeff_by_iteration(seed, n, t, s, &b).unwrap(), crosscorr(&p.x, &p.y, s));
    }

    #[test]
    fn streaming_is_split_independent(which in 0usize..4, n in 3u32..=8, t_frac in 0.0f64..1.0) {
        let seed = &all_seeds()[which];
        let t = (1 + ((n - 1) as f64 * t_frac) as u32).min(n - 1);
        let b = Budget::default();
        let a = streaming_peaks(seed, n, None, &b).unwrap();
        let c = streaming_peaks(seed, n, Some(t), &b).unwrap();
        prop_assert_eq!(&a, &c);
        let p = grs_pair(seed, n, &b).unwrap();
        let oracle = correlation::pcc(&p.x, &p.y);
        prop_assert_eq!(&a.pcc.value, &oracle.magnitude);
        prop_assert_eq!(a.pcc.shifts(), oracle.shifts());
    }

    #[test]
    fn shift_sign_pattern(s0 in -100_000i64..100_000, ell0 in 1i64..500) {
        let seq = ShiftSeq::new(s0, ell0);
        let m = entry_index(s0, ell0);
        prop_assert_eq!(m, lody_entry_index(s0, ell0));
        let terms = seq.terms(m + 8);
        for (n, &s) in terms.iter().enumerate() {
            let n = n as u32;
            let sign = if n % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(s, standard_shift(n, ell0) + sign * s0 as i128);
            let ell = seq.ell(n);
            if n > m {
                prop_assert!(-ell < s && s < 0);
            }
            if n == m && (m > 0 || ell0 == 1) {
                prop_assert!(0 <= s && s < ell);
            }
            if n < m {
                prop_assert!(s.abs() >= ell);
            }
        }
    }

    #[test]
    fn lily_matches_oracle(which in 0usize..3, s_frac in -1.0f64..1.0, n in 0u32..=10) {
        let seed = &SeedPair::corpus()[which];
        let ell0 = seed.ell0 as i64;
        let s0 = ((s_frac * ell0 as f64) as i64).clamp(-ell0 + 1, ell0 - 1);
        let sn = ShiftSeq::new(s0, ell0).term(n) as i64;
        let p = grs_pair(seed, n, &Budget::default()).unwrap();
        let oracle = crosscorr(&p.x, &p.y, sn);
        prop_assert_eq!(crat(0) + Complex::new(lily_predict(seed, s0, n).unwrap(), rat(0)), oracle);
    }

    #[test]
    fn nestor_cecilia_hold(which in 0usize..4, s0 in -20i64..20) {
        let seed = &all_seeds()[which];
        let vs = nestor_cecilia_check(seed, s0, 9, &Budget::default()).unwrap();
        for v in vs {
            prop_assert!(v.holds, "{}", v.claim_id);
        }
    }

    #[test]
    fn sequence_file_round_trip(f in small_int_seq(40), bits in sign_seq(200)) {
        prop_assert_eq!(Sequence::parse(&f.to_file_string()).unwrap(), f);
        let back = Sequence::parse(&bits.to_file_string()).unwrap();
        prop_assert!(back.is_binary());
        prop_assert_eq!(back, bits);
    }
}

#[test]
fn descended_levels_match_oracle() {
    let b = Budget::default();
    for seed in all_seeds() {
        for k in 1..=9 {
            let (hi, lo): (LevelSpectrum<CRational>, LevelSpectrum<CRational>) = level_pair(&seed, k, &b).unwrap();
            for (level, got) in [(k, hi), (k - 1, lo)] {
                let p = grs_pair(&seed, level, &b).unwrap();
                let want = spectrum(&p.x, &p.y);
                let got = got.to_spectrum();
                assert_eq!(got.support(), want.support());
                for s in want.shifts() {
                    assert_eq!(got.get(s), want.get(s), "level {level} shift {s}");
                }
            }
        }
    }
}

#[test]
fn rudin_shapiro_even_shifts_vanish() {
    let b = Budget::default();
    for n in 1..=12 {
        let p = grs_pair(&SeedPair::rudin_shapiro(), n, &b).unwrap();
        let sp = spectrum(&p.x, &p.y);
        for s in sp.shifts().filter(|s| s % 2 == 0) {
            assert_eq!(sp.get_int(s), Some(0), "n={n} s={s}");
        }
    }
}

#[test]
fn lily_zero_when_seed_correlations_vanish() {
    // (1,1)/(1,-1): C(0) = 0, so s0 = 0 predicts zero at every level.
    let seed = &SeedPair::corpus()[1];
    for n in 0..=10 {
        assert_eq!(lily_predict(seed, 0, n).unwrap(), rat(0));
    }
}
