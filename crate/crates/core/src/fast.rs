//! Crosscorrelation values of `(x_n, y_n)` from lower levels: the
//! coefficient tables `A, B, Γ, Δ`, single-coefficient evaluation, and the
//! low-memory peak scan.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::correlation::{self, Spectrum, Witness};
use crate::error::{Error, Result};
use crate::scalar::{rat, CRational, CorrScalar, Magnitude};
use crate::seq::{grs_pair, rudin_shapiro, Budget, SeedPair};

/// Shifts shown for each level `n = 0..=10` in the reference crosscorrelation
/// sample table.
pub const TABLE1_SHIFTS: &[&[i64]] = &[
    &[0],
    &[-1, 1],
    &[-3, -1, 1, 3],
    &[-5, -3, -1, 1, 3, 5],
    &[-11, -7, -5, -3, 3, 5, 7, 11],
    &[-21, -13, -11, -9, -5, 5, 9, 11, 13, 21],
    &[-43, -41, -27, -23, -21, -11, 11, 19, 21, 27, 41, 43],
    &[-85, -53, -45, -43, -23, -21, 21, 23, 37, 43, 53, 85],
    &[-107, -105, -91, -85, -43, 43, 75, 85, 105, 107, 171],
    &[-181, -171, 85, 149, 151, 171, 213],
    &[-363, -361, -341, 299],
];

/// Indices `j` shown for each `t = 1..=10` in the reference coefficient table.
pub const TABLE2_INDICES: &[&[i64]] = &[
    &[-1, 0],
    &[-1, 0],
    &[-2, -1, 0, 1],
    &[-4, -3, 1, 2],
    &[-6, 2, 4, 5],
    &[-12, -11, 5, 9, 10],
    &[-23, -22, 10, 11, 18, 21],
    &[-46, -43, 21, 37, 42],
    &[-91, -86, 42, 74],
    &[-182, -181, -171, 149],
];

/// `A_t, B_t, Γ_t, Δ_t` over `j ∈ [−2^{t−1}, 2^{t−1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbgdTable {
    pub t: u32,
    a: Vec<i64>,
    b: Vec<i64>,
    g: Vec<i64>,
    d: Vec<i64>,
}

/// One `(A, B, Γ, Δ)` entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Abgd {
    pub a: i64,
    pub b: i64,
    pub g: i64,
    pub d: i64,
}

impl Abgd {
    pub fn is_zero(&self) -> bool {
        *self == Self::default()
    }
}

impl AbgdTable {
    fn half(&self) -> i64 {
        1i64 << (self.t - 1)
    }

    /// Index range `[−2^{t−1}, 2^{t−1})`.
    pub fn range(&self) -> std::ops::Range<i64> {
        -self.half()..self.half()
    }

    /// Entry at `j`, zero outside the support.
    pub fn get(&self, j: i64) -> Abgd {
        if !self.range().contains(&j) {
            return Abgd::default();
        }
        let i = (j + self.half()) as usize;
        Abgd { a: self.a[i], b: self.b[i], g: self.g[i], d: self.d[i] }
    }

    fn next(&self) -> Self {
        let size = 1usize << (self.t + 1);
        let half = (size / 2) as i64;
        let mut out = Self { t: self.t + 1, a: vec![0; size], b: vec![0; size], g: vec![0; size], d: vec![0; size] };
        for j in -half..half {
            let i = (j + half) as usize;
            if j % 2 == 0 {
                let e = self.get(j / 2);
                out.a[i] = e.b - e.a;
                out.b[i] = e.d;
                out.g[i] = 2 * e.a + 2 * e.b;
            } else {
                let e = self.get((j - 1) / 2);
                out.a[i] = e.g;
                out.b[i] = e.a - e.b;
                out.d[i] = 2 * e.a + 2 * e.b;
            }
        }
        out
    }
}

/// The table for `t ≥ 1`.
pub fn abgd(t: u32) -> AbgdTable {
    assert!(t >= 1, "coefficient tables start at t = 1");
    let mut table = AbgdTable { t: 1, a: vec![-1, 0], b: vec![0, 1], g: vec![2, 0], d: vec![0, 2] };
    while table.t < t {
        table = table.next();
    }
    table
}

/// A correlation type that level spectra can be stored in.
pub trait LevelScalar: CorrScalar {
    fn dense(sp: &Spectrum) -> Option<Vec<Self>>;
}

impl LevelScalar for i64 {
    fn dense(sp: &Spectrum) -> Option<Vec<i64>> {
        sp.ints().map(<[i64]>::to_vec)
    }
}

impl LevelScalar for CRational {
    fn dense(sp: &Spectrum) -> Option<Vec<CRational>> {
        Some(sp.shifts().map(|s| sp.get(s)).collect())
    }
}

/// Dense `C_{x_k,y_k}` over `(−ℓ_k, ℓ_k)`.
#[derive(Debug, Clone)]
pub struct LevelSpectrum<T> {
    pub level: u32,
    pub ell: i64,
    pub values: Vec<T>,
}

impl<T: CorrScalar> LevelSpectrum<T> {
    #[inline]
    pub fn get(&self, s: i64) -> T {
        if s.abs() < self.ell {
            self.values[(s + self.ell - 1) as usize].clone()
        } else {
            T::zero()
        }
    }

    pub fn to_spectrum(&self) -> Spectrum {
        Spectrum::from_exact(self.ell, self.values.iter().map(CorrScalar::to_exact).collect())
    }
}

/// Level `n` from levels `n−1` and `n−2`, valid for `n ≥ 2`. Shift 0 is zero
/// because the seed energies agree.
fn geoff_level<T: CorrScalar>(prev: &LevelSpectrum<T>, prev2: &LevelSpectrum<T>) -> LevelSpectrum<T> {
    let ell = 2 * prev.ell;
    let values = ((1 - ell)..ell)
        .map(|s| match s.signum() {
            1 => prev.get(prev.ell - s).conj().add(&prev2.get(prev2.ell - s).conj().scale(2)),
            -1 => prev.get(prev.ell + s).scale(-1).add(&prev2.get(prev2.ell + s).scale(2)),
            _ => T::zero(),
        })
        .collect();
    LevelSpectrum { level: prev.level + 1, ell, values }
}

fn cells(ell0: usize, k: u32) -> u128 {
    (ell0 as u128) << k
}

/// Spectra of levels `k` and `k − 1` (`k ≥ 1`), by descent from the oracle
/// spectra of levels 0 and 1.
pub fn level_pair<T: LevelScalar>(
    seed: &SeedPair,
    k: u32,
    budget: &Budget,
) -> Result<(LevelSpectrum<T>, LevelSpectrum<T>)> {
    assert!(k >= 1);
    budget.check(2 * cells(seed.ell0, k) + 2 * cells(seed.ell0, k - 1))?;
    let base = |level: u32| -> Result<LevelSpectrum<T>> {
        let p = grs_pair(seed, level, budget)?;
        let sp = correlation::spectrum(&p.x, &p.y);
        let values = T::dense(&sp).ok_or(Error::NotRational)?;
        Ok(LevelSpectrum { level, ell: p.ell() as i64, values })
    };
    let mut lo = base(0)?;
    let mut hi = base(1)?;
    while hi.level < k {
        let next = geoff_level(&hi, &lo);
        lo = std::mem::replace(&mut hi, next);
    }
    Ok((hi, lo))
}

/// Everything needed to evaluate `C_{x_n,y_n}(s)` by iterating `t` levels down.
#[derive(Debug, Clone)]
pub struct IterationContext<T> {
    pub n: u32,
    pub t: u32,
    table: AbgdTable,
    hi: LevelSpectrum<T>,
    lo: LevelSpectrum<T>,
}

impl<T: LevelScalar> IterationContext<T> {
    pub fn new(seed: &SeedPair, n: u32, t: u32, budget: &Budget) -> Result<Self> {
        if t == 0 || t >= n {
            return Err(Error::LevelTooSmall { n, t });
        }
        budget.check(4u128 << t)?;
        let (hi, lo) = level_pair(seed, n - t, budget)?;
        Ok(Self::from_parts(n, t, abgd(t), hi, lo))
    }
}

impl<T: CorrScalar> IterationContext<T> {
    /// From precomputed pieces: `hi` at level `n−t`, `lo` at level `n−t−1`.
    pub fn from_parts(n: u32, t: u32, table: AbgdTable, hi: LevelSpectrum<T>, lo: LevelSpectrum<T>) -> Self {
        debug_assert_eq!(table.t, t);
        debug_assert_eq!(hi.level + t, n);
        debug_assert_eq!(lo.level + 1, hi.level);
        Self { n, t, table, hi, lo }
    }

    /// `ℓ_{n−t+1}`, the block length of the `(q, r)` split.
    pub fn period(&self) -> i64 {
        2 * self.hi.ell
    }

    /// `(q, r)` with `s = q·ℓ_{n−t+1} + r`, `0 ≤ r < ℓ_{n−t+1}`.
    pub fn split(&self, s: i64) -> (i64, i64) {
        (s.div_euclid(self.period()), s.rem_euclid(self.period()))
    }

    pub fn eval(&self, s: i64) -> T {
        let (q, r) = self.split(s);
        self.eval_qr(self.table.get(q), r)
    }

    #[inline]
    fn eval_qr(&self, e: Abgd, r: i64) -> T {
        if r == 0 {
            return T::zero();
        }
        let l1 = self.hi.ell;
        let l0 = self.lo.ell;
        let mut v = self.hi.get(r - l1).scale(e.a).add(&self.hi.get(l1 - r).conj().scale(e.b));
        if r > l1 && e.g != 0 {
            v = v.add(&self.lo.get(r - 3 * l0).scale(e.g));
        }
        if r < l1 && e.d != 0 {
            v = v.add(&self.lo.get(l0 - r).conj().scale(e.d));
        }
        v
    }

    /// Best magnitude with witnesses, over all shifts in `(−ℓ_n, ℓ_n)`.
    fn scan(&self, odd_only: bool) -> (T::Norm, Vec<(i64, T)>) {
        let period = self.period();
        let zero_norm = T::zero().norm_sqr();
        self.table
            .range()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|q| {
                let e = self.table.get(q);
                let mut best = zero_norm.clone();
                let mut wit = Vec::new();
                if e.is_zero() {
                    return (best, wit);
                }
                let (start, step) = if odd_only { (1, 2) } else { (1, 1) };
                let mut r = start;
                while r < period {
                    let v = self.eval_qr(e, r);
                    let m = v.norm_sqr();
                    if m > best {
                        best = m.clone();
                        wit.clear();
                    }
                    if m == best && !v.is_zero() {
                        wit.push((q * period + r, v));
                    }
                    r += step;
                }
                (best, wit)
            })
            .reduce(|| (zero_norm.clone(), Vec::new()), merge_best)
    }
}

fn merge_best<N: Ord, W>(a: (N, Vec<W>), b: (N, Vec<W>)) -> (N, Vec<W>) {
    match a.0.cmp(&b.0) {
        std::cmp::Ordering::Greater => a,
        std::cmp::Ordering::Less => b,
        std::cmp::Ordering::Equal => {
            let mut w = a.1;
            w.extend(b.1);
            (a.0, w)
        }
    }
}

/// `C_{x_n,y_n}(s)` via `t` iterations of the coefficient recursion.
pub fn coeff_by_iteration(seed: &SeedPair, n: u32, t: u32, s: i64, budget: &Budget) -> Result<CRational> {
    if seed.is_binary() {
        Ok(IterationContext::<i64>::new(seed, n, t, budget)?.eval(s).to_exact())
    } else {
        Ok(IterationContext::<CRational>::new(seed, n, t, budget)?.eval(s))
    }
}

/// `C_{x_n,y_n}(s)` for `s ≠ 0`, `n ≥ 2`, from the level `n−1` and `n−2`
/// spectra.
pub fn coeff_by_geoff(n: u32, s: i64, prev: &Spectrum, prev2: &Spectrum) -> Result<CRational> {
    if n < 2 {
        return Err(Error::LevelTooSmall { n, t: 2 });
    }
    if s == 0 {
        return Err(Error::ShiftZero);
    }
    let conj = crate::scalar::conj;
    let two = crate::scalar::crat(2);
    Ok(if s > 0 {
        conj(&prev.get(prev.support() - s)) + two * conj(&prev2.get(prev2.support() - s))
    } else {
        -prev.get(prev.support() + s) + two * prev2.get(prev2.support() + s)
    })
}

/// Rudin–Shapiro `C_{x_n,y_n}(s)` by the two-level rule alone, with zero
/// outside the support, at even shifts, and at shift 0 for `n ≥ 1`. Levels
/// 0 and 1 come from the oracle.
#[derive(Debug, Default)]
pub struct GeoffEvaluator {
    memo: HashMap<(u32, i64), i64>,
    base: Option<[Spectrum; 2]>,
}

impl GeoffEvaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn value(&mut self, n: u32, s: i64) -> i64 {
        let ell = 1i64 << n;
        if s.abs() >= ell || (n >= 1 && s % 2 == 0) {
            return 0;
        }
        if n <= 1 {
            let base = self.base.get_or_insert_with(|| {
                let b = Budget::default();
                [0, 1].map(|k| {
                    let p = rudin_shapiro(k, &b).expect("tiny level fits");
                    correlation::spectrum(&p.x, &p.y)
                })
            });
            return base[n as usize].get_int(s).expect("binary spectrum");
        }
        if let Some(&v) = self.memo.get(&(n, s)) {
            return v;
        }
        let (l1, l2) = (ell / 2, ell / 4);
        let v = if s > 0 {
            self.value(n - 1, l1 - s) + 2 * self.value(n - 2, l2 - s)
        } else {
            -self.value(n - 1, l1 + s) + 2 * self.value(n - 2, l2 + s)
        };
        self.memo.insert((n, s), v);
        v
    }
}

/// A peak with every attaining shift, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct PeakReport {
    pub n: u32,
    pub value: Magnitude,
    pub witnesses: Vec<Witness>,
}

impl PeakReport {
    pub fn shifts(&self) -> Vec<i64> {
        self.witnesses.iter().map(|w| w.shift).collect()
    }

    /// `{"n": n, "<key>": "...", "witnesses": [{"shift": "...", "value": "..."}]}`.
    pub fn to_json(&self, key: &str) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        obj.insert("n".into(), self.n.into());
        obj.insert(key.into(), self.value.to_string().into());
        obj.insert(
            "witnesses".into(),
            self.witnesses
                .iter()
                .map(|w| {
                    serde_json::json!({
                        "shift": w.shift.to_string(),
                        "value": crate::scalar::display_complex(&w.value),
                    })
                })
                .collect::<Vec<_>>()
                .into(),
        );
        serde_json::Value::Object(obj)
    }

    /// The PSL report of `x_{n+1}` from the PCC report of `(x_n, y_n)`:
    /// `C_{x_{n+1},x_{n+1}}(s) = conj(C_{x_n,y_n}(ℓ_n − s))` for `s > 0`.
    pub fn to_next_psl(&self, ell_n: i64) -> PeakReport {
        let mut witnesses: Vec<Witness> = self
            .witnesses
            .iter()
            .map(|w| Witness { shift: ell_n - w.shift, value: crate::scalar::conj(&w.value) })
            .collect();
        witnesses.sort_by_key(|w| w.shift);
        PeakReport { n: self.n + 1, value: self.value.clone(), witnesses }
    }
}

/// PCC of `(x_n, y_n)` and PSL of `x_{n+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub pcc: PeakReport,
    pub psl_next: PeakReport,
}

fn magnitude_of<T: CorrScalar>(n: &T::Norm) -> Magnitude {
    Magnitude::from_squared(T::norm_to_rational(n))
}

fn scan_typed<T: LevelScalar>(seed: &SeedPair, n: u32, t: u32, budget: &Budget) -> Result<PeakReport> {
    let ctx = IterationContext::<T>::new(seed, n, t, budget)?;
    let (best, mut wit) = ctx.scan(seed.is_rudin_shapiro());
    wit.sort_by_key(|w| w.0);
    Ok(PeakReport {
        n,
        value: magnitude_of::<T>(&best),
        witnesses: wit.into_iter().map(|(shift, v)| Witness { shift, value: v.to_exact() }).collect(),
    })
}

/// Scans every shift of `(x_n, y_n)` through the level-`n − t_split`
/// spectra. `n ≤ 2` uses the oracle directly; `t_split` defaults to `n/2`.
pub fn streaming_peaks(seed: &SeedPair, n: u32, t_split: Option<u32>, budget: &Budget) -> Result<ScanResult> {
    let pcc = if n <= 2 {
        let p = grs_pair(seed, n, budget)?;
        let peak = correlation::checked_spectrum(&p.x, &p.y, budget)?.peak();
        PeakReport { n, value: peak.magnitude, witnesses: peak.witnesses }
    } else {
        let t = t_split.unwrap_or(n / 2);
        if seed.is_binary() {
            scan_typed::<i64>(seed, n, t, budget)?
        } else {
            scan_typed::<CRational>(seed, n, t, budget)?
        }
    };
    let ell = (seed.ell0 as i64) << n;
    let psl_next = pcc.to_next_psl(ell);
    Ok(ScanResult { pcc, psl_next })
}

/// `|C_{n,s}|` bound for `s = q·ℓ_{n−t+1} + r`, given peak values
/// `m_hi = M_{n−t}` and `m_lo = M_{n−t−1}` and `ell = ℓ_{n−t}`.
pub fn nellie_bound(
    table: &AbgdTable,
    q: i64,
    r: i64,
    ell: i64,
    m_hi: &BigRational,
    m_lo: &BigRational,
) -> Result<BigRational> {
    if !(0..2 * ell).contains(&r) {
        return Err(Error::ShiftOutOfRange { shift: r, period: 2 * ell });
    }
    let e = table.get(q);
    let ab = rat(e.a.abs() + e.b.abs());
    Ok(match r.cmp(&ell) {
        _ if r == 0 => BigRational::zero(),
        std::cmp::Ordering::Less => ab * m_hi + rat(e.d.abs()) * m_lo,
        std::cmp::Ordering::Equal => ab * m_hi,
        std::cmp::Ordering::Greater => ab * m_hi + rat(e.g.abs()) * m_lo,
    })
}

/// `PCC(x0, y0)` and `PSL(x0)` of a seed whose correlation magnitudes are
/// rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedStats {
    pub pcc0: BigRational,
    pub psl0: BigRational,
}

impl SeedStats {
    pub fn of(seed: &SeedPair) -> Result<Self> {
        let pcc0 = correlation::pcc(&seed.x0, &seed.y0).magnitude.as_rational();
        let psl0 = correlation::psl(&seed.x0)?.magnitude.as_rational();
        match (pcc0, psl0) {
            (Some(pcc0), Some(psl0)) => Ok(Self { pcc0, psl0 }),
            _ => Err(Error::NotRational),
        }
    }
}

/// Bound on `|C_{x_n,y_n}(s)|` with `q = ⌊s/ℓ_2⌋`, from the seed statistics
/// and the table at `t = n − 1`. For `n = 1` this is `2·PSL0 + PCC0`.
pub fn derrel_bound(stats: &SeedStats, n: u32, q: i64) -> Result<BigRational> {
    match n {
        0 => Err(Error::LevelTooSmall { n, t: 1 }),
        1 => Ok(rat(2) * &stats.psl0 + &stats.pcc0),
        _ => {
            let e = abgd(n - 1).get(q);
            let all = rat(e.a.abs() + e.b.abs() + e.g.abs() + e.d.abs());
            let ab = rat(e.a.abs() + e.b.abs());
            Ok(all * &stats.pcc0 + ab * rat(2) * &stats.psl0)
        }
    }
}
