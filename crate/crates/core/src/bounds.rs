//! Shift sequences, the closed form for `C_{x_n,y_n}(s_n)`, and exact
//! verdicts on the bounds for peak correlations.
//!
//! Every verdict is data. `holds` comes from [`compare`] (or from componentwise
//! [`compare`] for complex equalities), never from floating point.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::json;

use crate::correlation;
use crate::error::{Error, Result};
use crate::exactnum::{alpha_pow, compare, k_div, KElem, QAlpha};
use crate::fast::{abgd, streaming_peaks, ScanResult, SeedStats};
use crate::scalar::{conj, display_complex, display_rational, rat, CRational, Magnitude};
use crate::seq::{grs_pair, Budget, SeedPair};

/// Rudin–Shapiro `(s, C_{x_n,y_n}(s))` at the first PCC witness, `n = 0..=50`.
pub const TABLE3_PCC: &[(i64, i64)] = &[
    (0, 1),
    (-1, -1),
    (1, 3),
    (-3, -5),
    (3, 7),
    (-11, -13),
    (13, 19),
    (-45, -33),
    (-107, 53),
    (-179, -85),
    (-341, 153),
    (-717, -217),
    (-1451, 373),
    (-2867, -557),
    (-5453, 961),
    (-10923, -1717),
    (-22955, 2445),
    (-43691, -4285),
    (-91733, 6257),
    (-174765, -11153),
    (-349525, 19041),
    (-699059, -28293),
    (-1398101, 53321),
    (-2796237, -72905),
    (-5592403, 129485),
    (-11184811, -214365),
    (-22369613, 342769),
    (-44739243, -640933),
    (-89478451, 860709),
    (-178956971, -1624877),
    (-357913941, 2490985),
    (-715827885, -4188609),
    (-1431655765, 7618449),
    (-2863311539, -10688117),
    (-5726623061, 20617465),
    (-11453246123, -29999429),
    (-22906492245, 51521697),
    (-45812984491, -90947021),
    (-91625968979, 133991557),
    (-183251937963, -255886741),
    (-366503875925, 372089521),
    (-733007751851, -668060317),
    (-1466015503701, 1099665689),
    (-2932031007403, -1724813029),
    (-5864062014805, 3146759617),
    (-11728124029611, -4701529197),
    (-23456248059221, 8491242153),
    (-46912496118443, -13498854709),
    (-93824992236885, 22289746385),
    (-187649984473771, -38672931645),
    (-375299968947541, 59901979961),
];

/// The PCC value at which the lower bound is attained (`n = 38`).
pub const VANESSA_PEAK: i64 = 133991557;

// ---------------------------------------------------------------------------
// Shift sequences

/// `s_0, s_1, …` with `s_{n+1} = −s_n − ℓ_n` and `ℓ_n = 2^n·ℓ0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftSeq {
    pub s0: i64,
    pub ell0: i64,
}

impl ShiftSeq {
    pub fn new(s0: i64, ell0: i64) -> Self {
        assert!(ell0 > 0, "ell0 must be positive");
        Self { s0, ell0 }
    }

    pub fn ell(&self, n: u32) -> i128 {
        (self.ell0 as i128) << n
    }

    pub fn term(&self, n: u32) -> i128 {
        let mut s = self.s0 as i128;
        for k in 0..n {
            s = -s - self.ell(k);
        }
        s
    }

    /// `s_0..=s_n`.
    pub fn terms(&self, n: u32) -> Vec<i128> {
        let mut out = Vec::with_capacity(n as usize + 1);
        let mut s = self.s0 as i128;
        out.push(s);
        for k in 0..n {
            s = -s - self.ell(k);
            out.push(s);
        }
        out
    }

    /// Least `m` with `|s_m| < ℓ_m`.
    pub fn entry_index(&self) -> u32 {
        let mut s = self.s0 as i128;
        let mut m = 0;
        while s.abs() >= self.ell(m) {
            s = -s - self.ell(m);
            m += 1;
        }
        m
    }
}

/// `t_n = ((−1)^n − 2^n)·ℓ0 / 3`.
pub fn standard_shift(n: u32, ell0: i64) -> i128 {
    let sign: i128 = if n % 2 == 0 { 1 } else { -1 };
    let num = (sign - (1i128 << n)) * ell0 as i128;
    assert_eq!(num % 3, 0, "(-1)^n - 2^n is divisible by 3");
    num / 3
}

/// Least `m` with `|s_m| < ℓ_m`, by iterating the shift rule.
pub fn entry_index(s0: i64, ell0: i64) -> u32 {
    ShiftSeq::new(s0, ell0).entry_index()
}

/// The same index from its closed characterization: 0 inside the support,
/// otherwise the least `m` of the parity of `s0 < 0` with
/// `(−1)^m (3s0 + ℓ0) < 2^{m+2} ℓ0`.
pub fn lody_entry_index(s0: i64, ell0: i64) -> u32 {
    if s0.abs() < ell0 {
        return 0;
    }
    let v = 3 * s0 as i128 + ell0 as i128;
    let (mut m, target) = if s0 > 0 { (0u32, v) } else { (1u32, -v) };
    while (ell0 as i128) << (m + 2) <= target {
        m += 2;
    }
    m
}

// ---------------------------------------------------------------------------
// Generating-function constants

/// `E_{j,v}` for `j ∈ Z/3`, `v ∈ {0, 1}`, and the coefficients `H_j` of the
/// level-one correction (see [`lily_correction`]).
#[derive(Debug, Clone, PartialEq)]
pub struct EConstants {
    e: [[KElem; 2]; 3],
    h: [KElem; 3],
}

impl EConstants {
    pub fn get(&self, j: i64, v: usize) -> &KElem {
        &self.e[j.rem_euclid(3) as usize][v]
    }

    /// `H_j = (α_{j+1} + α_{j+2} − 1) / ((α_j − α_{j+1})(α_j − α_{j+2}))`.
    pub fn h(&self, j: i64) -> &KElem {
        &self.h[j.rem_euclid(3) as usize]
    }

    /// `E_j = E_{j,0} + E_{j,1}`.
    pub fn e(&self, j: i64) -> KElem {
        self.get(j, 0) + self.get(j, 1)
    }

    /// `G_{j,u} = E_{j,0} + (−1)^u E_{j,1}`.
    pub fn g(&self, j: i64, u: u32) -> KElem {
        if u % 2 == 0 {
            self.e(j)
        } else {
            self.get(j, 0) - self.get(j, 1)
        }
    }
}

/// `E_{j,0} = (2 + α_{j+1}α_{j+2}) / ((α_j − α_{j+1})(α_j − α_{j+2}))` and
/// `E_{j,1} = −(1 + α_{j+1} + α_{j+2}) / (same)`.
pub fn e_constants() -> EConstants {
    let one = |j: i64| -> [KElem; 3] {
        let (a, b, c) = (KElem::root(j), KElem::root(j + 1), KElem::root(j + 2));
        let den = &(&a - &b) * &(&a - &c);
        let n0 = &KElem::int(2) + &(&b * &c);
        let n1 = -&(&(&KElem::int(1) + &b) + &c);
        let nh = &(&b + &c) - &KElem::int(1);
        let d = |num: &KElem| k_div(num, &den).expect("distinct roots");
        [d(&n0), d(&n1), d(&nh)]
    };
    let [a0, b0, h0] = one(0);
    let [a1, b1, h1] = one(1);
    let [a2, b2, h2] = one(2);
    EConstants { e: [[a0, b0], [a1, b1], [a2, b2]], h: [h0, h1, h2] }
}

fn real_rational(v: &CRational) -> Result<BigRational> {
    if v.im.is_zero() {
        Ok(v.re.clone())
    } else {
        Err(Error::SeedNotRational)
    }
}

/// `δ = C_{x0,x0}(s_1) − C_{y0,y0}(s_1)` with `s_1 = −s0 − ℓ0`.
///
/// The level-one values are `f_{0,1} = δ − f_{1,0}` and
/// `f_{1,1} = δ + f_{1,0}`; the form without `H_j` assumes `δ = 0`, which
/// holds whenever `s0 ≥ 0` (then `|s_1| ≥ ℓ0`) and for every seed with
/// `ℓ0 = 1`.
pub fn lily_correction(seed: &SeedPair, s0: i64) -> Result<BigRational> {
    let s1 = -s0 - seed.ell0 as i64;
    let ax = correlation::crosscorr(&seed.x0, &seed.x0, s1);
    let ay = correlation::crosscorr(&seed.y0, &seed.y0, s1);
    real_rational(&(ax - ay))
}

/// `σ^n(C_{x_n,y_n}(s_n))` from the closed form
/// `Σ_j (Σ_v E_{j,v} f_{v,0} + H_j δ) (−α_j)^n`, for a rational seed and
/// `|s0| < ℓ0`. Since `σ^n` fixes rationals this is `C_{x_n,y_n}(s_n)`.
pub fn lily_predict(seed: &SeedPair, s0: i64, n: u32) -> Result<BigRational> {
    if !seed.is_real() {
        return Err(Error::SeedNotRational);
    }
    let ell0 = seed.ell0 as i64;
    if s0.abs() >= ell0 {
        return Err(Error::ShiftNotEntered { s0, ell0 });
    }
    let f0 = real_rational(&correlation::crosscorr(&seed.x0, &seed.y0, s0))?;
    let f1 = real_rational(&conj(&correlation::crosscorr(&seed.x0, &seed.y0, -s0)))?;
    let delta = lily_correction(seed, s0)?;
    let e = e_constants();
    let k = |r: BigRational| KElem::real(QAlpha::rational(r));
    let (f0, f1, delta) = (k(f0), k(f1), k(delta));
    let mut total = KElem::int(0);
    for j in 0..3 {
        let weight = &(&(e.get(j, 0) * &f0) + &(e.get(j, 1) * &f1)) + &(e.h(j) * &delta);
        let power = (-&KElem::root(j)).pow(n);
        total = &total + &(&weight * &power);
    }
    total.as_real().and_then(|r| r.as_rational().cloned()).ok_or(Error::NotRational)
}

// ---------------------------------------------------------------------------
// Verdicts

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Lt,
    Eq,
    Ge,
    Gt,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Eq => "=",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }

    pub fn accepts(self, ord: Ordering) -> bool {
        match self {
            Relation::Le => ord != Ordering::Greater,
            Relation::Lt => ord == Ordering::Less,
            Relation::Eq => ord == Ordering::Equal,
            Relation::Ge => ord != Ordering::Less,
            Relation::Gt => ord == Ordering::Greater,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// One side of a verdict.
#[derive(Debug, Clone, PartialEq)]
pub enum Operand {
    Integer(BigInt),
    Rational(BigRational),
    Alpha(QAlpha),
    Complex(CRational),
}

impl Operand {
    pub fn int(n: i64) -> Self {
        Operand::Integer(n.into())
    }

    fn as_alpha(&self) -> Option<QAlpha> {
        match self {
            Operand::Integer(n) => Some(QAlpha::rational(BigRational::from_integer(n.clone()))),
            Operand::Rational(r) => Some(QAlpha::rational(r.clone())),
            Operand::Alpha(a) => Some(a.clone()),
            Operand::Complex(c) => c.im.is_zero().then(|| QAlpha::rational(c.re.clone())),
        }
    }

    /// Integers and rationals print as numbers; `Q(α0)` elements print in
    /// their serialized `p q r` form.
    pub fn render(&self) -> String {
        match self {
            Operand::Integer(n) => n.to_string(),
            Operand::Rational(r) => display_rational(r),
            Operand::Alpha(a) => a.serialize(),
            Operand::Complex(c) => display_complex(c),
        }
    }
}

impl From<QAlpha> for Operand {
    fn from(a: QAlpha) -> Self {
        Operand::Alpha(a)
    }
}

fn complex_parts(op: &Operand) -> (QAlpha, QAlpha) {
    match op {
        Operand::Complex(c) => (QAlpha::rational(c.re.clone()), QAlpha::rational(c.im.clone())),
        other => (other.as_alpha().expect("real operand"), QAlpha::int(0)),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundVerdict {
    pub claim_id: String,
    pub relation: Relation,
    pub lhs: Operand,
    pub rhs: Operand,
    /// `None` when a complex operand makes only equality meaningful and the
    /// two sides differ.
    pub ordering: Option<Ordering>,
    pub holds: bool,
    pub witness: Option<String>,
}

impl BoundVerdict {
    pub fn new(claim_id: impl Into<String>, lhs: Operand, relation: Relation, rhs: Operand) -> Self {
        let ordering = match (lhs.as_alpha(), rhs.as_alpha()) {
            (Some(a), Some(b)) => Some(compare(&a, &b)),
            _ => {
                let (lr, li) = complex_parts(&lhs);
                let (rr, ri) = complex_parts(&rhs);
                let same = compare(&lr, &rr) == Ordering::Equal && compare(&li, &ri) == Ordering::Equal;
                same.then_some(Ordering::Equal)
            }
        };
        let holds = ordering.is_some_and(|o| relation.accepts(o));
        Self { claim_id: claim_id.into(), relation, lhs, rhs, ordering, holds, witness: None }
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "claim_id": self.claim_id,
            "relation": self.relation.symbol(),
            "lhs": self.lhs.render(),
            "rhs": self.rhs.render(),
            "holds": self.holds,
            "witness": self.witness,
        })
    }
}

/// JSON array of verdicts in the given order.
pub fn report_json(verdicts: &[BoundVerdict]) -> serde_json::Value {
    verdicts.iter().map(BoundVerdict::to_json).collect::<Vec<_>>().into()
}

fn check(id: impl Into<String>, lhs: impl Into<Operand>, rel: Relation, rhs: impl Into<Operand>) -> BoundVerdict {
    BoundVerdict::new(id, lhs.into(), rel, rhs.into())
}

fn q(p: i64, qq: i64, r: i64) -> QAlpha {
    QAlpha::from_ints(p, qq, r)
}

fn qd(p: i64, qq: i64, r: i64, den: i64) -> QAlpha {
    QAlpha::from_ints_over(p, qq, r, den)
}

fn int(n: i64) -> QAlpha {
    QAlpha::int(n)
}

fn times_alpha_pow(c: i64, e: i64) -> QAlpha {
    &int(c) * &alpha_pow(e)
}

fn magnitude_operand(m: &Magnitude) -> Result<QAlpha> {
    m.as_rational().map(QAlpha::rational).ok_or(Error::NotRational)
}

// ---------------------------------------------------------------------------
// Closed-form recursions against the oracle

/// Checks the two-step and three-step recursions for `C_{x_n,y_n}(±s_n)`
/// against oracle spectra at every applicable `n ≤ n_max`.
pub fn nestor_cecilia_check(seed: &SeedPair, s0: i64, n_max: u32, budget: &Budget) -> Result<Vec<BoundVerdict>> {
    let shifts = ShiftSeq::new(s0, seed.ell0 as i64).terms(n_max);
    let mut spectra = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let p = grs_pair(seed, n, budget)?;
        spectra.push(correlation::checked_spectrum(&p.x, &p.y, budget)?);
    }
    let c = |k: usize, s: i128| -> CRational { spectra[k].get(s as i64) };
    let mut out = Vec::new();
    for n in 2..=n_max as usize {
        let (sn, s1, s2) = (shifts[n], shifts[n - 1], shifts[n - 2]);
        if sn >= 0 {
            continue;
        }
        let w = format!("n={n} s_n={sn}");
        let rhs = -c(n - 1, -s1) + c(n - 2, s2) * rat(2);
        out.push(
            check(format!("nestor-plus-n{n}"), Operand::Complex(c(n, sn)), Relation::Eq, Operand::Complex(rhs))
                .with_witness(w.clone()),
        );
        let rhs = conj(&c(n - 1, -s1)) + conj(&c(n - 2, s2)) * rat(2);
        out.push(
            check(format!("nestor-minus-n{n}"), Operand::Complex(c(n, -sn)), Relation::Eq, Operand::Complex(rhs))
                .with_witness(w.clone()),
        );
        if n >= 3 && s1 < 0 {
            let s3 = shifts[n - 3];
            let rhs = conj(&c(n - 1, s1)) + c(n - 2, s2) * rat(2) - conj(&c(n - 3, s3)) * rat(4);
            out.push(
                check(format!("cecilia-n{n}"), Operand::Complex(c(n, sn)), Relation::Eq, Operand::Complex(rhs))
                    .with_witness(w),
            );
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Peaks over a range of levels

/// PCC of `(x_n, y_n)` and PSL of `x_n` for `n = 0..=n_max`.
#[derive(Debug, Clone)]
pub struct PeakSeries {
    pub scans: Vec<ScanResult>,
    psl0: Magnitude,
}

impl PeakSeries {
    pub fn compute(seed: &SeedPair, n_max: u32, budget: &Budget) -> Result<Self> {
        let scans = (0..=n_max).map(|n| streaming_peaks(seed, n, None, budget)).collect::<Result<Vec<_>>>()?;
        let psl0 = correlation::psl(&seed.x0)?.magnitude;
        Ok(Self { scans, psl0 })
    }

    pub fn n_max(&self) -> u32 {
        self.scans.len() as u32 - 1
    }

    pub fn pcc(&self, n: u32) -> &Magnitude {
        &self.scans[n as usize].pcc.value
    }

    pub fn psl(&self, n: u32) -> &Magnitude {
        if n == 0 {
            &self.psl0
        } else {
            &self.scans[n as usize - 1].psl_next.value
        }
    }
}

fn pcc_witness(series: &PeakSeries, n: u32) -> String {
    let shifts: Vec<String> = series.scans[n as usize].pcc.shifts().iter().map(i64::to_string).collect();
    format!("n={n} s={}", shifts.join(","))
}

fn psl_witness(series: &PeakSeries, n: u32) -> String {
    if n == 0 {
        return "n=0".into();
    }
    let shifts: Vec<String> = series.scans[n as usize - 1].psl_next.shifts().iter().map(i64::to_string).collect();
    format!("n={n} s={}", shifts.join(","))
}

// ---------------------------------------------------------------------------
// Rudin–Shapiro bounds

/// `PCC(x_n, y_n) ≤ 5·α0^{n−3}` and `PSL(x_n) ≤ 5·α0^{n−4}`. The relation is
/// `=` at `n = 3` (PCC) and `n = 4` (PSL) and strict everywhere else.
pub fn verify_rs_bounds_from(series: &PeakSeries) -> Result<Vec<BoundVerdict>> {
    let mut out = Vec::new();
    for n in 0..=series.n_max() {
        let rel = if n == 3 { Relation::Eq } else { Relation::Lt };
        let pcc = magnitude_operand(series.pcc(n))?;
        out.push(
            check(format!("rs-pcc-upper-n{n}"), pcc, rel, times_alpha_pow(5, n as i64 - 3))
                .with_witness(pcc_witness(series, n)),
        );
        let rel = if n == 4 { Relation::Eq } else { Relation::Lt };
        let psl = magnitude_operand(series.psl(n))?;
        out.push(
            check(format!("rs-psl-upper-n{n}"), psl, rel, times_alpha_pow(5, n as i64 - 4))
                .with_witness(psl_witness(series, n)),
        );
    }
    Ok(out)
}

pub fn verify_rs_bounds(n_max: u32, budget: &Budget) -> Result<Vec<BoundVerdict>> {
    verify_rs_bounds_from(&PeakSeries::compute(&SeedPair::rudin_shapiro(), n_max, budget)?)
}

/// `A`, `B`, `C` of the lower envelope `PCC ≥ (A − √(B·C^n))·α0^n`.
pub fn george_constants() -> (QAlpha, QAlpha, QAlpha) {
    (qd(6, 4, 9, 59), qd(56, 8, -16, 59), qd(-1, 0, 1, 2))
}

/// `A'`, `B'` of the PSL envelope `PSL ≥ (A' − √(B'·C^n))·α0^n`.
pub fn george_psl_constants() -> (QAlpha, QAlpha) {
    (qd(2, 21, 3, 118), qd(-16, 6, 6, 59))
}

/// `|ratio − a| ≤ √(b·c^n)` style claim `ratio ≥ a − √(b·c^n)`, in squared
/// form. When `ratio ≥ a` the claim holds outright and that is the verdict.
fn envelope(id: String, ratio: QAlpha, a: &QAlpha, b: &QAlpha, c_pow: &QAlpha) -> BoundVerdict {
    let gap = a - &ratio;
    if compare(&gap, &int(0)) == Ordering::Greater {
        check(format!("{id}-squared"), &gap * &gap, Relation::Le, b * c_pow)
    } else {
        check(format!("{id}-above-center"), ratio, Relation::Ge, a.clone())
    }
}

/// `|C(t_n)/(−α0)^n − A|² ≤ B·C^n`.
fn envelope_two_sided(id: String, ratio: QAlpha, a: &QAlpha, b: &QAlpha, c_pow: &QAlpha) -> BoundVerdict {
    let gap = &ratio - a;
    check(id, &gap * &gap, Relation::Le, b * c_pow)
}

/// Lower bounds for the Rudin–Shapiro pairs: `PCC ≥ 133991557·α0^{n−38}`
/// (`n ≤ 41`), `PSL ≥ 133991557·α0^{n−39}` (`n ≥ 1`), and the squared
/// envelopes for PCC, PSL and `C_{x_n,y_n}(t_n)` itself.
pub fn verify_rs_lower_bounds_from(series: &PeakSeries) -> Result<Vec<BoundVerdict>> {
    let (a, b, c) = george_constants();
    let (a1, b1) = george_psl_constants();
    let mut out = Vec::new();
    let mut c_pow = int(1);
    let mut geoff = crate::fast::GeoffEvaluator::new();
    for n in 0..=series.n_max() {
        let ni = n as i64;
        let pcc = magnitude_operand(series.pcc(n))?;
        let pw = pcc_witness(series, n);
        if n <= 41 {
            let rel = if n == 38 { Relation::Eq } else { Relation::Gt };
            out.push(
                check(format!("rs-pcc-lower-n{n}"), pcc.clone(), rel, times_alpha_pow(VANESSA_PEAK, ni - 38))
                    .with_witness(pw.clone()),
            );
        }
        let ratio = &pcc * &alpha_pow(-ni);
        out.push(envelope(format!("rs-george-pcc-n{n}"), ratio, &a, &b, &c_pow).with_witness(pw));

        let tn = standard_shift(n, 1) as i64;
        let ctn = geoff.value(n, tn);
        let ratio = &int(ctn) * &(-&alpha_pow(1)).pow(-ni)?;
        out.push(
            envelope_two_sided(format!("rs-george-tn-n{n}"), ratio, &a, &b, &c_pow)
                .with_witness(format!("n={n} t_n={tn} C={ctn}")),
        );

        if n >= 1 {
            let psl = magnitude_operand(series.psl(n))?;
            let sw = psl_witness(series, n);
            let rel = if n == 39 { Relation::Eq } else { Relation::Gt };
            out.push(
                check(format!("rs-psl-lower-n{n}"), psl.clone(), rel, times_alpha_pow(VANESSA_PEAK, ni - 39))
                    .with_witness(sw.clone()),
            );
            let ratio = &psl * &alpha_pow(-ni);
            out.push(envelope(format!("rs-george-psl-n{n}"), ratio, &a1, &b1, &c_pow).with_witness(sw));
        }
        c_pow = &c_pow * &c;
    }
    out.push(check("rs-george-vacuous-n0", &a * &a, Relation::Lt, b.clone()));
    Ok(out)
}

pub fn verify_rs_lower_bounds(n_max: u32, budget: &Budget) -> Result<Vec<BoundVerdict>> {
    verify_rs_lower_bounds_from(&PeakSeries::compute(&SeedPair::rudin_shapiro(), n_max, budget)?)
}

// ---------------------------------------------------------------------------
// Generic seeds

/// `K = 9·α0^{−4}·PCC0 + 18·α0^{−5}·PSL0`.
pub fn generic_prefactor(stats: &SeedStats) -> QAlpha {
    let pcc = QAlpha::rational(stats.pcc0.clone());
    let psl = QAlpha::rational(stats.psl0.clone());
    &(&times_alpha_pow(9, -4) * &pcc) + &(&times_alpha_pow(18, -5) * &psl)
}

/// `|v| ≤ bound` for a magnitude that may be irrational; irrational values
/// are compared in squared form (`bound` is positive).
fn magnitude_le(id: String, m: &Magnitude, bound: QAlpha) -> BoundVerdict {
    match m.as_rational() {
        Some(r) => check(id, Operand::Rational(r), Relation::Le, bound),
        None => check(format!("{id}-squared"), Operand::Rational(m.squared().clone()), Relation::Le, &bound * &bound),
    }
}

/// `PCC(x_n, y_n) ≤ K·α0^n` for `n ≤ n_max` and `PSL(x_n) ≤ K·α0^{n−1}` for
/// `1 ≤ n ≤ n_max`.
pub fn verify_generic_bound(seed: &SeedPair, n_max: u32, budget: &Budget) -> Result<Vec<BoundVerdict>> {
    let stats = SeedStats::of(seed)?;
    let k = generic_prefactor(&stats);
    let series = PeakSeries::compute(seed, n_max, budget)?;
    let mut out = Vec::new();
    for n in 0..=n_max {
        let ni = n as i64;
        out.push(
            magnitude_le(format!("generic-pcc-n{n}"), series.pcc(n), &k * &alpha_pow(ni))
                .with_witness(pcc_witness(&series, n)),
        );
        if n >= 1 {
            out.push(
                magnitude_le(format!("generic-psl-n{n}"), series.psl(n), &k * &alpha_pow(ni - 1))
                    .with_witness(psl_witness(&series, n)),
            );
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Inequalities asserted in the proofs

/// Per `t`: the stated bounds `(c_hi, c_lo)` on `|C_{n,s}|` in units of
/// `(M_{n−t}, M_{n−t−1})`, each with the `q` and the part of the `r` range
/// (`Lo`: `0 < r ≤ ℓ`, `Hi`: `ℓ ≤ r`, `Both`) it covers.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Span {
    Lo,
    Hi,
    Both,
}

const VELMA_SUBCASES: &[(u32, &[(i64, Span, i64, i64)])] = &[
    (1, &[(-1, Span::Lo, 1, 0), (0, Span::Hi, 1, 0)]),
    (3, &[(-1, Span::Lo, 3, 2), (1, Span::Hi, 3, 0)]),
    (4, &[(-4, Span::Both, 1, 10), (-3, Span::Hi, 3, 0), (1, Span::Hi, 7, 0)]),
    (5, &[(2, Span::Lo, 7, 0), (4, Span::Lo, 9, 0), (5, Span::Hi, 11, 0)]),
    (6, &[(-12, Span::Lo, 7, 0), (-11, Span::Hi, 9, 0), (9, Span::Hi, 15, 0), (10, Span::Lo, 17, 0)]),
    (
        7,
        &[
            (-23, Span::Hi, 33, 0),
            (-22, Span::Lo, 31, 0),
            (10, Span::Lo, 27, 0),
            (11, Span::Both, 21, 14),
            (18, Span::Lo, 21, 0),
            (21, Span::Hi, 31, 0),
        ],
    ),
    (
        8,
        &[
            (-46, Span::Lo, 33, 0),
            (-43, Span::Hi, 49, 0),
            (21, Span::Hi, 29, 0),
            (37, Span::Hi, 45, 0),
            (42, Span::Both, 13, 62),
        ],
    ),
    (9, &[(-86, Span::Lo, 55, 0), (42, Span::Both, 83, 2), (74, Span::Lo, 87, 0)]),
    (10, &[(-182, Span::Both, 109, 66), (-181, Span::Both, 99, 66), (-171, Span::Hi, 153, 0), (149, Span::Both, 117, 6)]),
];

/// The inequalities `c_hi·α0 + c_lo ≤ α0^{t+1}` that close the induction,
/// as stated per `t`.
const VELMA_INEQUALITIES: &[(u32, &[(i64, i64)])] = &[
    (1, &[(1, 0)]),
    (3, &[(3, 2), (3, 0)]),
    (4, &[(1, 10), (3, 0), (7, 0)]),
    (5, &[(7, 0), (9, 0), (11, 0)]),
    (6, &[(7, 0), (9, 0), (15, 0), (17, 0)]),
    (7, &[(33, 0), (31, 0), (27, 0), (21, 14), (21, 0), (31, 0)]),
    (8, &[(33, 0), (49, 0), (29, 0), (45, 0), (13, 62)]),
    (9, &[(55, 0), (83, 2), (87, 0)]),
    (10, &[(109, 66), (99, 66), (153, 0), (117, 6)]),
];

/// `q` values whose `ℓ_2`-blocks are handled in each case of the generic
/// bound (tables at `t = n − 1`).
const GENERIC_BLOCKS: &[(u32, &[i64])] = &[
    (2, &[-1, 0]),
    (3, &[-1, 0]),
    (4, &[-2, -1, 0, 1]),
    (5, &[-3, 1, 2]),
    (6, &[-6, 2, 4, 5]),
    (7, &[-12, -11, 5, 9, 10]),
    (8, &[-23, -22, 10, 18, 21]),
    (9, &[-46, -43, 21, 37, 42]),
    (10, &[-91, -86, 42, 74]),
];

/// `(c, e)` pairs `c ≤ 9·α0^e` and `(c, e)` pairs `c ≤ 18·α0^e` stated in
/// the cases of the generic bound.
const GENERIC_NINE: &[(i64, i64)] =
    &[(1, -4), (1, -3), (3, -2), (5, -1), (13, 1), (21, 2), (35, 3), (51, 4), (99, 5), (153, 6)];
const GENERIC_EIGHTEEN: &[(i64, i64)] =
    &[(2, -4), (2, -3), (6, -2), (10, -1), (26, 1), (42, 2), (66, 3), (98, 4), (198, 5)];

/// Per `n`: the shifts left to inspect after the reduction, and the stated
/// maximum of `|C_{n,s}|` over them, which must be `≤ 5·α0^{n−3}`.
const DESTINY_CASES: &[(&[i64], i64)] = &[
    (&[0], 1),
    (&[-1, 1], 1),
    (&[-1, 1], 3),
    (&[-3, -1, 1, 3], 5),
    (&[-7, -5, 3, 5], 7),
    (&[-11, 5, 9, 11], 13),
    (&[-23, -21, 11, 19, 21], 15),
    (&[-45, -43, 21, 23, 37, 43], 33),
    (&[-91, -85, 43, 75, 85], 49),
    (&[-181, -171, 85, 149], 83),
    (&[-363, -361, -341, 299], 153),
];

fn lower_bracket(id: &str, value: &QAlpha, lo: &str, hi: &str, squared: bool) -> Vec<BoundVerdict> {
    let parse = |s: &str| -> QAlpha {
        let (whole, frac) = s.split_once('.').unwrap_or((s, ""));
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let num: BigInt = format!("{whole}{frac}").parse().expect("decimal literal");
        QAlpha::rational(BigRational::new(num, den))
    };
    let sq = |v: QAlpha| if squared { &v * &v } else { v };
    vec![
        check(format!("{id}-lower"), sq(parse(lo)), Relation::Lt, value.clone()),
        check(format!("{id}-upper"), value.clone(), Relation::Lt, sq(parse(hi))),
    ]
}

/// Every `α0`-inequality asserted in the proofs, plus the coefficient bounds
/// behind them recomputed from the `A, B, Γ, Δ` tables.
pub fn inequality_suite() -> Vec<BoundVerdict> {
    let mut out = vec![check("trivial-alpha-le-alpha", QAlpha::alpha(), Relation::Le, QAlpha::alpha())];

    for &(t, cases) in VELMA_SUBCASES {
        let table = abgd(t);
        for &(qq, span, hi, lo) in cases {
            let e = table.get(qq);
            let got_hi = e.a.abs() + e.b.abs();
            let got_lo = match span {
                Span::Lo => e.d.abs(),
                Span::Hi => e.g.abs(),
                Span::Both => e.d.abs().max(e.g.abs()),
            };
            let id = format!("velma-coeff-t{t}-q{qq}");
            out.push(check(format!("{id}-hi"), Operand::int(got_hi), Relation::Eq, Operand::int(hi)));
            out.push(check(format!("{id}-lo"), Operand::int(got_lo), Relation::Eq, Operand::int(lo)));
        }
    }
    for &(t, list) in VELMA_INEQUALITIES {
        for (k, &(c1, c0)) in list.iter().enumerate() {
            out.push(
                check(format!("velma-t{t}-{k}"), q(c0, c1, 0), Relation::Le, alpha_pow(t as i64 + 1))
                    .with_witness(format!("t={t}")),
            );
        }
    }

    let mut geoff = crate::fast::GeoffEvaluator::new();
    for (n, &(shifts, stated)) in DESTINY_CASES.iter().enumerate() {
        let n32 = n as u32;
        let max = shifts.iter().map(|&s| geoff.value(n32, s).abs()).max().unwrap_or(0);
        out.push(check(format!("destiny-max-n{n}"), Operand::int(max), Relation::Eq, Operand::int(stated)));
        out.push(check(format!("destiny-n{n}"), Operand::int(stated), Relation::Le, times_alpha_pow(5, n as i64 - 3)));
    }
    out.push(check("destiny-psl-n0", int(0), Relation::Lt, times_alpha_pow(5, -4)));

    for &(c, e) in GENERIC_NINE {
        out.push(check(format!("generic-nine-{c}-e{e}"), Operand::int(c), Relation::Le, times_alpha_pow(9, e)));
    }
    for &(c, e) in GENERIC_EIGHTEEN {
        out.push(check(format!("generic-eighteen-{c}-e{e}"), Operand::int(c), Relation::Le, times_alpha_pow(18, e)));
    }
    for &(n, blocks) in GENERIC_BLOCKS {
        let table = abgd(n - 1);
        let (mut c_all, mut c_ab) = (0, 0);
        for &qq in blocks {
            let e = table.get(qq);
            c_all = c_all.max(e.a.abs() + e.b.abs() + e.g.abs() + e.d.abs());
            c_ab = c_ab.max(e.a.abs() + e.b.abs());
        }
        let ni = n as i64;
        out.push(check(format!("generic-derrel-n{n}-pcc0"), Operand::int(c_all), Relation::Le, times_alpha_pow(9, ni - 4)));
        out.push(check(
            format!("generic-derrel-n{n}-psl0"),
            Operand::int(2 * c_ab),
            Relation::Le,
            times_alpha_pow(18, ni - 5),
        ));
    }

    let e = e_constants();
    let a12 = (&KElem::root(1) * &KElem::root(2)).as_real().cloned().expect("α1α2 is real");
    for u in 0..2 {
        let g0 = e.g(0, u).as_real().cloned().expect("G_{0,u} is real");
        let g12 = (&e.g(1, u) * &e.g(2, u)).as_real().cloned().expect("G_{1,u}G_{2,u} is real");
        out.push(check(format!("mark-g0-u{u}-positive"), int(0), Relation::Lt, g0.clone()));
        out.push(check(format!("mark-g0-u{u}-below-one"), g0.clone(), Relation::Lt, int(1)));
        let lhs = &a12.pow(9).expect("power") * &alpha_pow(-18);
        let one_minus = &int(1) - &g0;
        let rhs = (&(&one_minus * &one_minus) / &(&int(4) * &g12)).expect("nonzero");
        out.push(check(format!("mark-rho-u{u}"), lhs, Relation::Le, rhs));
    }

    let (a, b, c) = george_constants();
    let (a1, b1) = george_psl_constants();
    let d = times_alpha_pow(VANESSA_PEAK, -38);
    let amd = &a - &d;
    out.push(check("vanessa-a-minus-d-positive", amd.clone(), Relation::Gt, int(0)));
    let amd2 = &amd * &amd;
    out.push(check("vanessa-stronger-n41", amd2.clone(), Relation::Lt, &b * &c.pow(41).expect("power")));
    out.push(check("vanessa-weaker-n42", amd2, Relation::Gt, &b * &c.pow(42).expect("power")));
    out.push(check("george-c-below-one", c.clone(), Relation::Lt, int(1)));
    for (n, &(_, v)) in TABLE3_PCC.iter().enumerate().take(42) {
        let rel = if n == 38 { Relation::Eq } else { Relation::Gt };
        out.push(
            check(format!("vanessa-table-n{n}"), Operand::int(v.abs()), rel, times_alpha_pow(VANESSA_PEAK, n as i64 - 38))
                .with_witness(format!("n={n}")),
        );
    }

    out.extend(lower_bracket("decimal-gilda", &c, "0.935994", "0.935995", true));
    out.extend(lower_bracket("decimal-george-b", &b, "0.654022", "0.654023", true));
    out.extend(lower_bracket("decimal-george-psl-b", &b1, "0.421193", "0.421194", true));
    out.extend(lower_bracket("decimal-george-a", &a, "0.633990", "0.633991", false));
    out.extend(lower_bracket("decimal-george-psl-a", &a1, "0.382159", "0.382160", false));
    out.extend(lower_bracket("decimal-destiny-pcc", &times_alpha_pow(5, -3), "1.095107", "1.095108", false));
    out.extend(lower_bracket("decimal-destiny-psl", &times_alpha_pow(5, -4), "0.660113", "0.660114", false));
    out.extend(lower_bracket("decimal-vanessa-pcc", &d, "0.593256", "0.593257", false));
    out.extend(lower_bracket("decimal-vanessa-psl", &times_alpha_pow(VANESSA_PEAK, -39), "0.357605", "0.357606", false));
    out.extend(lower_bracket("decimal-alpha", &QAlpha::alpha(), "1.658967", "1.658968", false));
    out
}

/// Exact identities among the constants.
pub fn identities_suite() -> Vec<BoundVerdict> {
    let e = e_constants();
    let real = |k: &KElem| k.as_real().cloned();
    let mut out = Vec::new();
    let eq_k = |id: &str, got: KElem, want: QAlpha| -> BoundVerdict {
        match got.as_real() {
            Some(r) => check(id, r.clone(), Relation::Eq, want),
            None => check(format!("{id}-real"), int(1), Relation::Eq, int(0)).with_witness(got.serialize()),
        }
    };
    out.push(eq_k("e00", e.get(0, 0).clone(), qd(40, 7, 1, 118)));
    out.push(eq_k("e01", e.get(0, 1).clone(), qd(-28, 1, 17, 118)));
    out.push(eq_k("e0-sum", e.e(0), qd(6, 4, 9, 59)));
    out.push(eq_k("e1e2", &e.e(1) * &e.e(2), qd(14, 2, -4, 59)));
    out.push(eq_k("four-e10-e20", &(&KElem::int(4) * e.get(1, 0)) * e.get(2, 0), qd(24, -4, 0, 59)));
    out.push(eq_k("four-e11-e21", &(&KElem::int(4) * e.get(1, 1)) * e.get(2, 1), qd(12, 10, -2, 59)));
    let a12 = &KElem::root(1) * &KElem::root(2);
    out.push(eq_k("alpha1-alpha2", a12.clone(), q(-2, 1, 1)));
    let a12 = real(&a12).expect("real");
    out.push(check("alpha1-alpha2-over-alpha0-sq", &a12 * &alpha_pow(-2), Relation::Eq, qd(-1, 0, 1, 2)));
    let e0 = real(&e.e(0)).expect("real");
    out.push(check("e0-over-alpha0", &e0 * &alpha_pow(-1), Relation::Eq, qd(2, 21, 3, 118)));
    let e1e2 = real(&(&e.e(1) * &e.e(2))).expect("real");
    let b1 = (&(&int(4) * &e1e2) / &a12).expect("nonzero");
    out.push(check("four-e1e2-over-alpha1-alpha2", b1, Relation::Eq, qd(-16, 6, 6, 59)));
    let sum_roots = &(&KElem::root(0) + &KElem::root(1)) + &KElem::root(2);
    out.push(eq_k("root-sum", sum_roots, int(-1)));
    out.push(eq_k("e10-conj-e20", &e.get(1, 0).conj() - e.get(2, 0), int(0)));
    out.push(eq_k("e11-conj-e21", &e.get(1, 1).conj() - e.get(2, 1), int(0)));
    let approx = crate::exactnum::decimal_approx(&QAlpha::alpha(), 12);
    out.extend(lower_bracket("alpha-12-digits", &QAlpha::alpha(), "1.658967081916", "1.658967081917", false));
    out.push(
        check("alpha-12-digits-interval", Operand::int(approx.contains("1.658967081916") as i64), Relation::Eq, Operand::int(1))
            .with_witness(approx),
    );
    out
}
