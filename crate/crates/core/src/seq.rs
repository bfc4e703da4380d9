//! Sequences as finitely supported polynomials, and the pair-doubling
//! recursion that produces Golay complementary pairs.

use std::fmt::Write as _;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::correlation;
use crate::error::{Error, Result, SeedError};
use crate::scalar::{crat, format_rational, parse_rational, CRational};

/// Environment variable holding the memory cap in bytes.
pub const BUDGET_ENV: &str = "GRS_BUDGET_BYTES";

/// Cap on materialized coefficients and cached spectrum entries ("cells").
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_cells: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_cells: 1 << 31 }
    }
}

impl Budget {
    pub fn new(max_cells: u64) -> Self {
        Self { max_cells }
    }

    /// A byte budget, charged at eight bytes per cell.
    pub fn from_bytes(bytes: u64) -> Self {
        Self { max_cells: bytes / 8 }
    }

    /// Reads [`BUDGET_ENV`], falling back to the default.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
            .map(Self::from_bytes)
            .unwrap_or_default()
    }

    pub fn check(&self, required: u128) -> Result<()> {
        if required > self.max_cells as u128 {
            Err(Error::BudgetExceeded { required, budget: self.max_cells })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone)]
enum Repr {
    /// Packed signs, bit set means −1. Bits past `len` are zero.
    Binary(Vec<u64>),
    Exact(Vec<CRational>),
}

/// A sequence `(f_0, …, f_{len−1})`, read as the polynomial `Σ f_j z^j`.
/// Coefficients outside `0..len` are zero.
#[derive(Debug, Clone)]
pub struct Sequence {
    len: usize,
    repr: Repr,
}

fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

impl Sequence {
    /// Builds a sequence from exact coefficients. An all-±1 list is stored on
    /// the packed binary path.
    pub fn new(coeffs: Vec<CRational>) -> Self {
        let plus = crat(1);
        let minus = crat(-1);
        if !coeffs.is_empty() && coeffs.iter().all(|c| *c == plus || *c == minus) {
            return Self::from_signs(coeffs.iter().map(|c| *c == minus));
        }
        Self { len: coeffs.len(), repr: Repr::Exact(coeffs) }
    }

    /// Binary sequence from an iterator of "is negative" flags.
    pub fn from_signs<I: IntoIterator<Item = bool>>(negative: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0usize;
        for neg in negative {
            if len % 64 == 0 {
                words.push(0u64);
            }
            if neg {
                *words.last_mut().unwrap() |= 1 << (len % 64);
            }
            len += 1;
        }
        Self { len, repr: Repr::Binary(words) }
    }

    /// Binary sequence from `+`/`-` characters.
    pub fn from_sign_str(s: &str) -> Result<Self> {
        let signs = s
            .chars()
            .map(|c| match c {
                '+' => Ok(false),
                '-' => Ok(true),
                other => Err(Error::Parse(format!("unexpected sign character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_signs(signs))
    }

    pub fn from_integers(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| crat(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_binary(&self) -> bool {
        matches!(self.repr, Repr::Binary(_))
    }

    /// Packed sign words of a binary sequence.
    pub fn sign_words(&self) -> Option<&[u64]> {
        match &self.repr {
            Repr::Binary(w) => Some(w),
            Repr::Exact(_) => None,
        }
    }

    /// `f_j`, zero outside the declared support.
    pub fn coeff(&self, j: i64) -> CRational {
        if j < 0 || j as usize >= self.len {
            return Complex::zero();
        }
        let j = j as usize;
        match &self.repr {
            Repr::Binary(w) => crat(if (w[j / 64] >> (j % 64)) & 1 == 1 { -1 } else { 1 }),
            Repr::Exact(c) => c[j].clone(),
        }
    }

    pub fn coeffs(&self) -> Vec<CRational> {
        (0..self.len as i64).map(|j| self.coeff(j)).collect()
    }

    /// Whether every coefficient is real.
    pub fn is_real(&self) -> bool {
        match &self.repr {
            Repr::Binary(_) => true,
            Repr::Exact(c) => c.iter().all(|v| v.im.is_zero()),
        }
    }

    /// Polynomial degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        match &self.repr {
            Repr::Binary(_) => self.len.checked_sub(1),
            Repr::Exact(c) => c.iter().rposition(|v| !v.is_zero()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    /// The same polynomial with declared support `len`.
    pub fn with_len(&self, len: usize) -> Self {
        if len == self.len {
            return self.clone();
        }
        let mut c = self.coeffs();
        c.resize(len, Complex::zero());
        Self::new(c)
    }

    pub fn negated(&self) -> Self {
        match &self.repr {
            Repr::Binary(w) => {
                let mut w: Vec<u64> = w.iter().map(|x| !x).collect();
                mask_tail(&mut w, self.len);
                Self { len: self.len, repr: Repr::Binary(w) }
            }
            Repr::Exact(c) => Self::new(c.iter().map(|v| -v.clone()).collect()),
        }
    }

    /// `self + z^{len(self)}·other`.
    pub fn concat(&self, other: &Sequence) -> Self {
        match (&self.repr, &other.repr) {
            (Repr::Binary(a), Repr::Binary(b)) => {
                let len = self.len + other.len;
                let mut w = a.clone();
                w.resize(words_for(len), 0);
                let shift = self.len % 64;
                let base = self.len / 64;
                for (i, &word) in b.iter().enumerate() {
                    w[base + i] |= word << shift;
                    if shift != 0 && base + i + 1 < w.len() {
                        w[base + i + 1] |= word >> (64 - shift);
                    }
                }
                Self { len, repr: Repr::Binary(w) }
            }
            _ => {
                let mut c = self.coeffs();
                c.extend(other.coeffs());
                Self::new(c)
            }
        }
    }

    /// Serializes in the sequence file format: a `len=<ℓ> kind=…` header line,
    /// then either one line of `+`/`-` or one `re im` rational pair per line.
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        match &self.repr {
            Repr::Binary(_) => {
                writeln!(out, "len={} kind=binary", self.len).unwrap();
                for j in 0..self.len as i64 {
                    out.push(if self.coeff(j).re.is_one() { '+' } else { '-' });
                }
                out.push('\n');
            }
            Repr::Exact(c) => {
                writeln!(out, "len={} kind=rational", self.len).unwrap();
                for v in c {
                    writeln!(out, "{} {}", format_rational(&v.re), format_rational(&v.im)).unwrap();
                }
            }
        }
        out
    }

    /// Parses one sequence record, returning it and the unconsumed lines.
    pub fn parse_record<'a, I: Iterator<Item = &'a str>>(lines: &mut std::iter::Peekable<I>) -> Result<Self> {
        let header = loop {
            match lines.next() {
                Some(l) if l.trim().is_empty() => continue,
                Some(l) => break l,
                None => return Err(Error::Parse("missing sequence header".into())),
            }
        };
        let mut len = None;
        let mut kind = None;
        for field in header.split_whitespace() {
            match field.split_once('=') {
                Some(("len", v)) => {
                    len = Some(v.parse::<usize>().map_err(|_| Error::Parse(format!("bad length {v:?}")))?)
                }
                Some(("kind", v)) => kind = Some(v.to_string()),
                _ => return Err(Error::Parse(format!("bad header field {field:?}"))),
            }
        }
        let len = len.ok_or_else(|| Error::Parse("header lacks len=".into()))?;
        match kind.as_deref() {
            Some("binary") => {
                let body = if len == 0 { "" } else { lines.next().unwrap_or("") };
                let seq = Self::from_sign_str(body.trim())?;
                if seq.len != len {
                    return Err(Error::Parse(format!("declared len={len}, found {} signs", seq.len)));
                }
                Ok(seq)
            }
            Some("rational") => {
                let mut coeffs = Vec::with_capacity(len);
                for _ in 0..len {
                    let line = lines.next().ok_or_else(|| Error::Parse("truncated rational body".into()))?;
                    let mut parts = line.split_whitespace();
                    let (Some(re), Some(im), None) = (parts.next(), parts.next(), parts.next()) else {
                        return Err(Error::Parse(format!("bad coefficient line {line:?}")));
                    };
                    coeffs.push(Complex::new(parse_rational(re)?, parse_rational(im)?));
                }
                Ok(Self { len, repr: Repr::Exact(coeffs) })
            }
            _ => Err(Error::Parse("kind must be binary or rational".into())),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().peekable();
        Self::parse_record(&mut lines)
    }
}

fn mask_tail(words: &mut [u64], len: usize) {
    if len % 64 != 0 {
        if let Some(last) = words.last_mut() {
            *last &= (1u64 << (len % 64)) - 1;
        }
    }
}

impl PartialEq for Sequence {
    /// Polynomial equality: padding past the degree is ignored.
    fn eq(&self, other: &Self) -> bool {
        let d = self.degree();
        d == other.degree() && d.map_or(true, |d| (0..=d as i64).all(|j| self.coeff(j) == other.coeff(j)))
    }
}

/// A validated seed `(x0, y0)` of declared length `ell0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedPair {
    pub x0: Sequence,
    pub y0: Sequence,
    pub ell0: usize,
}

impl SeedPair {
    /// `ℓ0 = 1`, `x0 = y0 = 1`.
    pub fn rudin_shapiro() -> Self {
        let one = Sequence::from_signs([false]);
        Self { x0: one.clone(), y0: one, ell0: 1 }
    }

    /// Rudin–Shapiro, `(1,1)/(1,−1)` and `(1,1,1,−1)/(1,1,−1,1)`.
    pub fn corpus() -> Vec<Self> {
        let pair = |x: &[i64], y: &[i64]| {
            validate_seed(&Sequence::from_integers(x), &Sequence::from_integers(y), x.len()).expect("corpus seed")
        };
        vec![Self::rudin_shapiro(), pair(&[1, 1], &[1, -1]), pair(&[1, 1, 1, -1], &[1, 1, -1, 1])]
    }

    pub fn is_rudin_shapiro(&self) -> bool {
        *self == Self::rudin_shapiro() && self.ell0 == 1
    }

    pub fn is_binary(&self) -> bool {
        self.x0.is_binary() && self.y0.is_binary()
    }

    pub fn is_real(&self) -> bool {
        self.x0.is_real() && self.y0.is_real()
    }

    pub fn as_pair(&self) -> GolayPair {
        GolayPair { x: self.x0.clone(), y: self.y0.clone(), level: 0, ell0: self.ell0 }
    }

    /// Serialized as two sequence records, `x0` then `y0`.
    pub fn to_file_string(&self) -> String {
        self.x0.to_file_string() + &self.y0.to_file_string()
    }

    /// Parses two records; `ell0` is the larger declared length.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().peekable();
        let x0 = Sequence::parse_record(&mut lines)?;
        let y0 = Sequence::parse_record(&mut lines)?;
        let ell0 = x0.len().max(y0.len());
        Ok(validate_seed(&x0, &y0, ell0)?)
    }
}

/// The level-`n` pair of the recursion, each sequence of length `ℓ_n = 2^n·ℓ0`.
#[derive(Debug, Clone, PartialEq)]
pub struct GolayPair {
    pub x: Sequence,
    pub y: Sequence,
    pub level: u32,
    pub ell0: usize,
}

impl GolayPair {
    /// `ℓ_n`.
    pub fn ell(&self) -> usize {
        self.ell0 << self.level
    }
}

/// One doubling step: `x_n = x + z^ℓ·y`, `y_n = x − z^ℓ·y`.
pub fn grs_step(pair: &GolayPair) -> GolayPair {
    let ell = pair.ell();
    let x = pair.x.with_len(ell);
    let y = pair.y.with_len(ell);
    GolayPair { x: x.concat(&y), y: x.concat(&y.negated()), level: pair.level + 1, ell0: pair.ell0 }
}

/// Length of a level-`n` sequence, if it fits in memory addressing at all.
pub fn level_len(ell0: usize, n: u32) -> Option<u128> {
    (n < 100).then(|| (ell0 as u128) << n)
}

/// Materializes the level-`n` pair; `2·ℓ_n` coefficients must fit the budget.
pub fn grs_pair(seed: &SeedPair, n: u32, budget: &Budget) -> Result<GolayPair> {
    let required = level_len(seed.ell0, n).map_or(u128::MAX, |l| 2 * l);
    budget.check(required)?;
    let mut pair = seed.as_pair();
    for _ in 0..n {
        pair = grs_step(&pair);
    }
    Ok(pair)
}

/// The `n`th Rudin–Shapiro pair.
pub fn rudin_shapiro(n: u32, budget: &Budget) -> Result<GolayPair> {
    grs_pair(&SeedPair::rudin_shapiro(), n, budget)
}

/// Checks the seed conditions in order: nonzero, degree, complementarity,
/// equal energy. The returned seed has both sequences padded to `ell0`.
pub fn validate_seed(x0: &Sequence, y0: &Sequence, ell0: usize) -> Result<SeedPair, SeedError> {
    if x0.is_zero() || y0.is_zero() || ell0 == 0 {
        return Err(SeedError::ZeroSequence);
    }
    if x0.degree().unwrap() >= ell0 || y0.degree().unwrap() >= ell0 {
        return Err(SeedError::DegreeTooLarge);
    }
    let x0 = x0.with_len(ell0);
    let y0 = y0.with_len(ell0);
    let ax = correlation::spectrum(&x0, &x0);
    let ay = correlation::spectrum(&y0, &y0);
    for s in 1..ell0 as i64 {
        if !(ax.get(s) + ay.get(s)).is_zero() {
            return Err(SeedError::NotGolay(s));
        }
    }
    if ax.get(0) != ay.get(0) {
        return Err(SeedError::EnergyMismatch);
    }
    Ok(SeedPair { x0, y0, ell0 })
}
