//! Brute-force aperiodic correlation: the oracle everything else is checked
//! against.

use std::io::Write;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{conj, crat, display_complex, norm_sqr, CRational, Magnitude};
use crate::seq::{Budget, Sequence};

#[derive(Debug, Clone, PartialEq)]
enum Values {
    Int(Vec<i64>),
    Exact(Vec<CRational>),
}

/// Dense correlation values over `(−L, L)`; zero outside.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    support: i64,
    values: Values,
}

impl Spectrum {
    /// Integer spectrum from values at shifts `−L+1 ..= L−1`.
    pub fn from_ints(support: i64, values: Vec<i64>) -> Self {
        assert_eq!(values.len() as i64, (2 * support - 1).max(0));
        Self { support, values: Values::Int(values) }
    }

    pub fn from_exact(support: i64, values: Vec<CRational>) -> Self {
        assert_eq!(values.len() as i64, (2 * support - 1).max(0));
        Self { support, values: Values::Exact(values) }
    }

    /// `L`: every entry vanishes outside `(−L, L)`.
    pub fn support(&self) -> i64 {
        self.support
    }

    fn index(&self, s: i64) -> Option<usize> {
        (s.abs() < self.support).then(|| (s + self.support - 1) as usize)
    }

    pub fn get(&self, s: i64) -> CRational {
        match (self.index(s), &self.values) {
            (None, _) => Complex::zero(),
            (Some(i), Values::Int(v)) => crat(v[i]),
            (Some(i), Values::Exact(v)) => v[i].clone(),
        }
    }

    /// The value as an integer, when the spectrum is stored on the integer path.
    pub fn get_int(&self, s: i64) -> Option<i64> {
        match &self.values {
            Values::Int(v) => Some(self.index(s).map_or(0, |i| v[i])),
            Values::Exact(_) => None,
        }
    }

    pub fn ints(&self) -> Option<&[i64]> {
        match &self.values {
            Values::Int(v) => Some(v),
            Values::Exact(_) => None,
        }
    }

    pub fn shifts(&self) -> std::ops::Range<i64> {
        (1 - self.support)..self.support
    }

    /// All `(shift, value)` pairs in ascending shift order, zeros included.
    pub fn iter(&self) -> impl Iterator<Item = (i64, CRational)> + '_ {
        self.shifts().map(move |s| (s, self.get(s)))
    }

    /// Largest magnitude over all shifts, with every attaining shift.
    pub fn peak(&self) -> Peak {
        self.peak_over(self.shifts())
    }

    /// Largest magnitude over `s > 0`.
    pub fn peak_positive(&self) -> Peak {
        self.peak_over(1..self.support.max(1))
    }

    fn peak_over(&self, range: std::ops::Range<i64>) -> Peak {
        if let Values::Int(v) = &self.values {
            let mut best = 0u64;
            let mut wit = Vec::new();
            for s in range {
                let c = v[(s + self.support - 1) as usize];
                let a = c.unsigned_abs();
                if a > best {
                    best = a;
                    wit.clear();
                }
                if a == best && a != 0 {
                    wit.push(Witness { shift: s, value: crat(c) });
                }
            }
            let m = BigInt::from(best);
            return Peak { magnitude: Magnitude::from_squared(BigRational::from_integer(&m * &m)), witnesses: wit };
        }
        let mut best = BigRational::zero();
        let mut wit = Vec::new();
        for s in range {
            let c = self.get(s);
            let a = norm_sqr(&c);
            if a > best {
                best = a.clone();
                wit.clear();
            }
            if a == best && !a.is_zero() {
                wit.push(Witness { shift: s, value: c });
            }
        }
        Peak { magnitude: Magnitude::from_squared(best), witnesses: wit }
    }

    /// `Σ_{s∈S} |C(s)|²` over the given shifts.
    fn energy<I: Iterator<Item = i64>>(&self, shifts: I) -> BigRational {
        match &self.values {
            Values::Int(v) => {
                let mut acc = BigInt::zero();
                for s in shifts {
                    if let Some(i) = self.index(s) {
                        acc += BigInt::from(v[i]) * BigInt::from(v[i]);
                    }
                }
                BigRational::from_integer(acc)
            }
            Values::Exact(_) => shifts.map(|s| norm_sqr(&self.get(s))).fold(BigRational::zero(), |a, b| a + b),
        }
    }

    fn export_rows(&self) -> Vec<SpectrumRow> {
        self.iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(s, v)| SpectrumRow {
                shift: s.to_string(),
                re_num: v.re.numer().to_string(),
                re_den: v.re.denom().to_string(),
                im_num: v.im.numer().to_string(),
                im_den: v.im.denom().to_string(),
            })
            .collect()
    }

    /// CSV with header `shift,re_num,re_den,im_num,im_den`; nonzero entries only.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["shift", "re_num", "re_den", "im_num", "im_den"]).map_err(csv_err)?;
        for row in self.export_rows() {
            w.write_record([row.shift, row.re_num, row.re_den, row.im_num, row.im_den]).map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }

    /// JSON object `{"support": "L", "entries": [...]}` with the CSV fields.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "support": self.support.to_string(),
            "entries": self.export_rows(),
        })
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

#[derive(Serialize)]
struct SpectrumRow {
    shift: String,
    re_num: String,
    re_den: String,
    im_num: String,
    im_den: String,
}

/// A shift attaining a peak, with its signed value.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub shift: i64,
    pub value: CRational,
}

/// A peak magnitude and every shift attaining it, ascending. A zero peak has
/// no witnesses.
#[derive(Debug, Clone, PartialEq)]
pub struct Peak {
    pub magnitude: Magnitude,
    pub witnesses: Vec<Witness>,
}

impl Peak {
    pub fn shifts(&self) -> Vec<i64> {
        self.witnesses.iter().map(|w| w.shift).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "value": self.magnitude.to_string(),
            "witnesses": self.witnesses.iter().map(|w| serde_json::json!({
                "shift": w.shift.to_string(),
                "value": display_complex(&w.value),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Bits `[off + 64k, off + 64k + 64)` of a packed word array.
#[inline]
fn window(words: &[u64], off: usize, k: usize) -> u64 {
    let w = off / 64 + k;
    let b = off % 64;
    let lo = words.get(w).copied().unwrap_or(0) >> b;
    if b == 0 {
        lo
    } else {
        lo | (words.get(w + 1).copied().unwrap_or(0) << (64 - b))
    }
}

/// `Σ_j a_{j+off}·b_j` over `len` terms of two packed sign arrays.
fn binary_overlap(a: &[u64], off: usize, b: &[u64], len: usize) -> i64 {
    let full = len / 64;
    let mut mism = 0u64;
    for k in 0..full {
        mism += (window(a, off, k) ^ b[k]).count_ones() as u64;
    }
    let rem = len % 64;
    if rem != 0 {
        let mask = (1u64 << rem) - 1;
        mism += ((window(a, off, full) ^ b[full]) & mask).count_ones() as u64;
    }
    len as i64 - 2 * mism as i64
}

fn binary_corr(f: &Sequence, g: &Sequence, s: i64) -> i64 {
    let (fw, gw) = (f.sign_words().unwrap(), g.sign_words().unwrap());
    let (lf, lg) = (f.len() as i64, g.len() as i64);
    if s >= 0 {
        let len = (lf - s).min(lg);
        if len <= 0 {
            return 0;
        }
        binary_overlap(fw, s as usize, gw, len as usize)
    } else {
        let len = (lg + s).min(lf);
        if len <= 0 {
            return 0;
        }
        binary_overlap(gw, (-s) as usize, fw, len as usize)
    }
}

fn exact_corr(f: &[CRational], g: &[CRational], s: i64) -> CRational {
    let (lf, lg) = (f.len() as i64, g.len() as i64);
    let lo = 0.max(-s);
    let hi = lg.min(lf - s);
    let mut acc = CRational::zero();
    for j in lo..hi {
        let a = &f[(j + s) as usize];
        let b = &g[j as usize];
        if a.is_zero() || b.is_zero() {
            continue;
        }
        acc = acc + a * conj(b);
    }
    acc
}

/// `C_{f,g}(s) = Σ_j f_{j+s}·conj(g_j)`.
pub fn crosscorr(f: &Sequence, g: &Sequence, s: i64) -> CRational {
    if f.is_binary() && g.is_binary() {
        crat(binary_corr(f, g, s))
    } else {
        exact_corr(&f.coeffs(), &g.coeffs(), s)
    }
}

/// The full product `f·conj(g)` as a spectrum over `(−L, L)`,
/// `L = max(len f, len g)`. Binary inputs stay on the integer path.
pub fn spectrum(f: &Sequence, g: &Sequence) -> Spectrum {
    let support = f.len().max(g.len()) as i64;
    let shifts: Vec<i64> = ((1 - support)..support).collect();
    if f.is_binary() && g.is_binary() {
        let v = shifts.par_iter().map(|&s| binary_corr(f, g, s)).collect();
        Spectrum::from_ints(support, v)
    } else {
        let (fc, gc) = (f.coeffs(), g.coeffs());
        let v = shifts.par_iter().map(|&s| exact_corr(&fc, &gc, s)).collect();
        Spectrum::from_exact(support, v)
    }
}

/// [`spectrum`] after checking that `2L − 1` cells fit the budget.
pub fn checked_spectrum(f: &Sequence, g: &Sequence, budget: &Budget) -> Result<Spectrum> {
    let support = f.len().max(g.len()) as u128;
    budget.check((2 * support).saturating_sub(1))?;
    Ok(spectrum(f, g))
}

/// Peak crosscorrelation over all shifts.
pub fn pcc(f: &Sequence, g: &Sequence) -> Peak {
    spectrum(f, g).peak()
}

/// Peak sidelobe level; witnesses are the positive attaining shifts.
pub fn psl(f: &Sequence) -> Result<Peak> {
    if f.is_empty() {
        return Err(Error::ZeroLength);
    }
    Ok(spectrum(f, f).peak_positive())
}

/// Period-`k` correlation `C(s) + C(s − k)` for `0 ≤ s < k`.
pub fn periodic_corr(f: &Sequence, g: &Sequence, k: i64, s: i64) -> Result<CRational> {
    if !(0..k).contains(&s) {
        return Err(Error::ShiftOutOfRange { shift: s, period: k });
    }
    Ok(crosscorr(f, g, s) + crosscorr(f, g, s - k))
}

/// `Σ_{s≠0} |C_{f,f}(s)|² / C_{f,f}(0)²`.
pub fn demerit_auto(f: &Sequence) -> Result<BigRational> {
    let sp = spectrum(f, f);
    let e0 = sp.get(0).re;
    if e0.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let side = sp.energy(sp.shifts().filter(|&s| s != 0));
    Ok(side / (&e0 * &e0))
}

/// `Σ_s |C_{f,g}(s)|² / (C_{f,f}(0)·C_{g,g}(0))`.
pub fn demerit_cross(f: &Sequence, g: &Sequence) -> Result<BigRational> {
    let ef = crosscorr(f, f, 0).re;
    let eg = crosscorr(g, g, 0).re;
    if ef.is_zero() || eg.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let sp = spectrum(f, g);
    Ok(sp.energy(sp.shifts()) / (ef * eg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::seq::{rudin_shapiro, Budget};

    fn seq(v: &[i64]) -> Sequence {
        Sequence::from_integers(v)
    }

    fn rs(n: u32) -> (Sequence, Sequence) {
        let p = rudin_shapiro(n, &Budget::default()).unwrap();
        (p.x, p.y)
    }

    #[test]
    fn crosscorr_small() {
        assert_eq!(crosscorr(&seq(&[1]), &seq(&[1]), 0), crat(1));
        let (x1, y1) = rs(1);
        assert_eq!(crosscorr(&x1, &y1, -1), crat(-1));
        assert_eq!(crosscorr(&x1, &y1, 4), crat(0));
        assert_eq!(crosscorr(&x1, &y1, -4), crat(0));
    }

    #[test]
    fn spectrum_level_two() {
        let (x2, y2) = rs(2);
        let sp = spectrum(&x2, &y2);
        let got: Vec<_> = [-3, -1, 1, 3].iter().map(|&s| sp.get(s)).collect();
        assert_eq!(got, vec![crat(1), crat(1), crat(3), crat(-1)]);
        let (x3, y3) = rs(3);
        assert_eq!(spectrum(&x3, &y3).get(-3), crat(-5));
    }

    #[test]
    fn single_term_spectrum() {
        let c = Complex::new(rat(2), rat(-3));
        let f = Sequence::new(vec![crat(0), crat(0), c]);
        let sp = spectrum(&f, &f);
        for (s, v) in sp.iter() {
            assert_eq!(v, if s == 0 { crat(13) } else { crat(0) });
        }
    }

    #[test]
    fn binary_matches_exact_path() {
        let a = Sequence::from_signs((0..150).map(|i| (i * 7 + i / 3) % 5 < 2));
        let b = Sequence::from_signs((0..97).map(|i| (i * 11) % 7 < 3));
        let (ac, bc) = (a.coeffs(), b.coeffs());
        for s in -160..160 {
            assert_eq!(crosscorr(&a, &b, s), exact_corr(&ac, &bc, s), "s={s}");
        }
    }

    #[test]
    fn pcc_and_psl() {
        let (x1, y1) = rs(1);
        let p = pcc(&x1, &y1);
        assert_eq!(p.magnitude.to_string(), "1");
        assert_eq!(p.shifts(), vec![-1, 1]);

        let (x10, y10) = rs(10);
        let p = pcc(&x10, &y10);
        assert_eq!(p.magnitude.as_integer(), Some(153.into()));
        assert_eq!(p.shifts(), vec![-341]);

        let one = seq(&[1]);
        assert_eq!(pcc(&one, &one).shifts(), vec![0]);

        let (x2, _) = rs(2);
        let p = psl(&x2).unwrap();
        assert_eq!(p.shifts(), vec![1, 3]);
        assert_eq!(p.witnesses[1].value, crat(-1));

        let (x4, _) = rs(4);
        let p = psl(&x4).unwrap();
        assert_eq!(p.magnitude.to_string(), "5");
        assert_eq!(p.witnesses, vec![Witness { shift: 11, value: crat(-5) }]);

        let p = psl(&one).unwrap();
        assert!(p.magnitude.squared().is_zero() && p.witnesses.is_empty());
        assert!(matches!(psl(&seq(&[])), Err(Error::ZeroLength)));
    }

    #[test]
    fn periodic() {
        let (x1, y1) = rs(1);
        assert_eq!(periodic_corr(&x1, &y1, 2, 1).unwrap(), crat(0));
        let (x2, y2) = rs(2);
        assert_eq!(periodic_corr(&x2, &y2, 4, 1).unwrap(), crat(4));
        assert_eq!(periodic_corr(&x2, &x2, 4, 0).unwrap(), crat(4));
        assert!(matches!(periodic_corr(&x2, &y2, 4, 4), Err(Error::ShiftOutOfRange { .. })));
    }

    #[test]
    fn demerits() {
        let (x2, _) = rs(2);
        assert_eq!(demerit_auto(&x2).unwrap(), BigRational::new(1.into(), 4.into()));
        let (x1, y1) = rs(1);
        assert_eq!(demerit_cross(&x1, &y1).unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(demerit_auto(&seq(&[-1])).unwrap(), rat(0));
    }

    #[test]
    fn csv_export() {
        let (x1, y1) = rs(1);
        let mut buf = Vec::new();
        spectrum(&x1, &y1).write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "shift,re_num,re_den,im_num,im_den\n-1,-1,1,0,1\n1,1,1,0,1\n");
        let j = spectrum(&x1, &y1).to_json();
        assert_eq!(j["entries"][0]["shift"], "-1");
    }
}
