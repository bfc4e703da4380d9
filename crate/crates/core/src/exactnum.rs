//! Exact arithmetic in `Q(α0)` and in the splitting field `K = Q(α0, α1, α2)`
//! of `m(X) = X³ + X² − 2X − 4`.
//!
//! `α0 ≈ 1.658967` is the real root and `α1, α2` the complex pair. Elements of
//! `Q(α0)` are `p + q·α0 + r·α0²`; elements of `K` are `u + v·α1` with
//! `u, v ∈ Q(α0)`. Order comparisons go through the signifier, which is the
//! field norm and has the same sign as the element.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, rat};

/// Total degree cap for [`reduce_poly`] inputs.
pub const DEGREE_CAP: u32 = 24;

/// `p + q·α0 + r·α0²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QAlpha {
    pub p: BigRational,
    pub q: BigRational,
    pub r: BigRational,
}

impl QAlpha {
    pub fn new(p: BigRational, q: BigRational, r: BigRational) -> Self {
        Self { p, q, r }
    }

    pub fn from_ints(p: i64, q: i64, r: i64) -> Self {
        Self::new(rat(p), rat(q), rat(r))
    }

    /// `(p + q·α0 + r·α0²) / den`.
    pub fn from_ints_over(p: i64, q: i64, r: i64, den: i64) -> Self {
        let d = rat(den);
        Self::new(rat(p) / &d, rat(q) / &d, rat(r) / &d)
    }

    pub fn rational(x: BigRational) -> Self {
        Self::new(x, BigRational::zero(), BigRational::zero())
    }

    pub fn int(n: i64) -> Self {
        Self::rational(rat(n))
    }

    pub fn alpha() -> Self {
        Self::from_ints(0, 1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero() && self.r.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.q.is_zero() && self.r.is_zero()).then_some(&self.p)
    }

    pub fn coeffs(&self) -> [&BigRational; 3] {
        [&self.p, &self.q, &self.r]
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `m`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let v = QPoly::new(vec![self.p.clone(), self.q.clone(), self.r.clone()]);
        let (g, s, _) = v.ext_gcd(&QPoly::minimal());
        // m is irreducible, so the gcd is a nonzero constant.
        debug_assert_eq!(g.degree(), Some(0));
        let s = s.scale(&(BigRational::one() / g.coeff(0)));
        Ok(Self::from_poly(&s))
    }

    /// Reduces an arbitrary polynomial in `α0` modulo `m`.
    pub fn from_poly(poly: &QPoly) -> Self {
        let r = poly.rem(&QPoly::minimal());
        Self::new(r.coeff(0), r.coeff(1), r.coeff(2))
    }

    /// `self^n` for any integer `n`; negative powers need a nonzero base.
    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::int(1);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Sign as an ordering against zero.
    pub fn signum(&self) -> Ordering {
        signifier(self).cmp(&BigRational::zero())
    }

    /// Serialized as `p_num/p_den q_num/q_den r_num/r_den`.
    pub fn serialize(&self) -> String {
        format!("{} {} {}", format_rational(&self.p), format_rational(&self.q), format_rational(&self.r))
    }

    /// Parses three whitespace-separated rationals (`num/den` or integers).
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected three rationals, got {:?}", s)));
        }
        Ok(Self::new(parse_rational(parts[0])?, parse_rational(parts[1])?, parse_rational(parts[2])?))
    }
}

impl fmt::Display for QAlpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl PartialOrd for QAlpha {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QAlpha {
    fn cmp(&self, other: &Self) -> Ordering {
        compare(self, other)
    }
}

impl From<i64> for QAlpha {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

impl<'a> Add<&'a QAlpha> for &'a QAlpha {
    type Output = QAlpha;
    fn add(self, o: &QAlpha) -> QAlpha {
        QAlpha::new(&self.p + &o.p, &self.q + &o.q, &self.r + &o.r)
    }
}

impl<'a> Sub<&'a QAlpha> for &'a QAlpha {
    type Output = QAlpha;
    fn sub(self, o: &QAlpha) -> QAlpha {
        QAlpha::new(&self.p - &o.p, &self.q - &o.q, &self.r - &o.r)
    }
}

impl Neg for &QAlpha {
    type Output = QAlpha;
    fn neg(self) -> QAlpha {
        QAlpha::new(-&self.p, -&self.q, -&self.r)
    }
}

impl<'a> Mul<&'a QAlpha> for &'a QAlpha {
    type Output = QAlpha;
    fn mul(self, o: &QAlpha) -> QAlpha {
        let c0 = &self.p * &o.p;
        let c1 = &self.p * &o.q + &self.q * &o.p;
        let c2 = &self.p * &o.r + &self.q * &o.q + &self.r * &o.p;
        let c3 = &self.q * &o.r + &self.r * &o.q;
        let c4 = &self.r * &o.r;
        // α³ = −α² + 2α + 4, α⁴ = 3α² + 2α − 4
        let two = rat(2);
        let p = c0 + rat(4) * &c3 - rat(4) * &c4;
        let q = c1 + &two * &c3 + &two * &c4;
        let r = c2 - &c3 + rat(3) * &c4;
        QAlpha::new(p, q, r)
    }
}

impl<'a> Div<&'a QAlpha> for &'a QAlpha {
    type Output = Result<QAlpha>;
    fn div(self, o: &QAlpha) -> Result<QAlpha> {
        Ok(self * &o.inverse()?)
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = <&'static $t as $tr<&'static $t>>::Output;
            fn $m(self, o: $t) -> Self::Output { (&self).$m(&o) }
        }
    )*};
}
forward_owned!(QAlpha, Add add, Sub sub, Mul mul);

/// The signifier: `p³ − p²q − 2pq² + 4q³ + 5p²r − 10pqr − 4q²r + 12pr²
/// − 8qr² + 16r³`. Its sign is the sign of `v`.
pub fn signifier(v: &QAlpha) -> BigRational {
    let (p, q, r) = (&v.p, &v.q, &v.r);
    let c = |k: i64| rat(k);
    p * p * p - p * p * q - c(2) * p * q * q + c(4) * q * q * q + c(5) * p * p * r
        - c(10) * p * q * r
        - c(4) * q * q * r
        + c(12) * p * r * r
        - c(8) * q * r * r
        + c(16) * r * r * r
}

/// Exact order on `Q(α0) ⊂ ℝ`.
pub fn compare(v: &QAlpha, w: &QAlpha) -> Ordering {
    (v - w).signum()
}

/// `(s, t, u)` with `X³ + sX² + tX + u` the minimal polynomial of an
/// irrational `v`.
pub fn min_poly_of(v: &QAlpha) -> Result<(BigRational, BigRational, BigRational)> {
    if v.as_rational().is_some() {
        return Err(Error::RationalInput);
    }
    let (p, q, r) = (&v.p, &v.q, &v.r);
    let c = |k: i64| rat(k);
    let s = c(-3) * p + q - c(5) * r;
    let t = c(3) * p * p - c(2) * p * q - c(2) * q * q + c(10) * p * r - c(10) * q * r + c(12) * r * r;
    Ok((s, t, -signifier(v)))
}

/// `α0^n`.
pub fn alpha_pow(n: i64) -> QAlpha {
    QAlpha::alpha().pow(n).expect("α0 is nonzero")
}

/// Interval `[k/10^d, (k+1)/10^d]` containing `v`, or `[v, v]` when `v` is
/// exactly a `d`-digit decimal.
pub fn decimal_approx(v: &QAlpha, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scale_q = BigRational::from_integer(scale.clone());
    let bound: BigRational = v
        .coeffs()
        .iter()
        .zip([1i64, 3, 9])
        .map(|(c, w)| c.abs() * rat(w))
        .fold(BigRational::one(), |a, b| a + b);
    let n = (bound * &scale_q).ceil().to_integer();
    // Largest k in [−n, n] with k/10^d ≤ v.
    let le = |k: &BigInt| compare(&QAlpha::rational(BigRational::new(k.clone(), scale.clone())), v) != Ordering::Greater;
    let mut lo = -n.clone();
    let mut hi = n;
    debug_assert!(le(&lo) && !le(&hi));
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
        if le(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if QAlpha::rational(BigRational::new(lo.clone(), scale.clone())) == *v {
        let s = trim_decimal(&fixed_point(&lo, digits));
        return format!("[{s}, {s}]");
    }
    format!("[{}, {}]", fixed_point(&lo, digits), fixed_point(&hi, digits))
}

fn fixed_point(k: &BigInt, digits: u32) -> String {
    let sign = if k.is_negative() { "-" } else { "" };
    let mut s = k.abs().to_string();
    let d = digits as usize;
    if d == 0 {
        return format!("{sign}{s}");
    }
    if s.len() <= d {
        s = "0".repeat(d + 1 - s.len()) + &s;
    }
    let (int, frac) = s.split_at(s.len() - d);
    format!("{sign}{int}.{frac}")
}

fn trim_decimal(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// Dense univariate polynomial over `Q`, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoly(Vec<BigRational>);

impl QPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Self(c)
    }

    /// `m(X) = X³ + X² − 2X − 4`.
    pub fn minimal() -> Self {
        Self::new(vec![rat(-4), rat(-2), rat(1), rat(1)])
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.0.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.0.iter().map(|c| c * k).collect())
    }

    fn sub(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    fn mul(&self, o: &Self) -> Self {
        if self.0.is_empty() || o.0.is_empty() {
            return Self(vec![]);
        }
        let mut c = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    /// Quotient and remainder; `d` must be nonzero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.0[dd].clone();
        let mut r = self.clone();
        let mut q = vec![BigRational::zero(); self.0.len().saturating_sub(dd).max(1)];
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let k = &r.0[rd] / &lead;
            let mut shifted = vec![BigRational::zero(); rd - dd];
            shifted.extend(d.0.iter().map(|c| c * &k));
            q[rd - dd] = k;
            r = r.sub(&Self::new(shifted));
        }
        (Self::new(q), r)
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// `(g, s, t)` with `g = s·self + t·other`.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::new(vec![BigRational::one()]), Self(vec![]));
        let (mut t0, mut t1) = (Self(vec![]), Self::new(vec![BigRational::one()]));
        while r1.degree().is_some() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        (r0, s0, t0)
    }
}

/// `u + v·α1` with `u, v ∈ Q(α0)`; coefficient `c[i][j]` of `α0^i·α1^j` is
/// component `i` of `u` (`j = 0`) or `v` (`j = 1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KElem {
    pub u: QAlpha,
    pub v: QAlpha,
}

impl KElem {
    pub fn new(u: QAlpha, v: QAlpha) -> Self {
        Self { u, v }
    }

    pub fn real(u: QAlpha) -> Self {
        Self::new(u, QAlpha::int(0))
    }

    pub fn int(n: i64) -> Self {
        Self::real(QAlpha::int(n))
    }

    /// `α_j` for `j ∈ Z/3`.
    pub fn root(j: i64) -> Self {
        match j.rem_euclid(3) {
            0 => Self::real(QAlpha::alpha()),
            1 => Self::new(QAlpha::int(0), QAlpha::int(1)),
            _ => Self::new(QAlpha::from_ints(-1, -1, 0), QAlpha::int(-1)),
        }
    }

    pub fn coeff(&self, i: usize, j: usize) -> &BigRational {
        let part = if j == 0 { &self.u } else { &self.v };
        part.coeffs()[i]
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// Real exactly when `α1` does not appear.
    pub fn is_real(&self) -> bool {
        self.v.is_zero()
    }

    pub fn as_real(&self) -> Option<&QAlpha> {
        self.is_real().then_some(&self.u)
    }

    /// The automorphism swapping `α1` and `α2` (complex conjugation).
    pub fn conj(&self) -> Self {
        let one_plus_x = QAlpha::from_ints(1, 1, 0);
        Self::new(&self.u - &(&self.v * &one_plus_x), -&self.v)
    }

    /// Row-major `c[0][0] c[0][1] c[1][0] c[1][1] c[2][0] c[2][1]`.
    pub fn serialize(&self) -> String {
        let mut parts = Vec::with_capacity(6);
        for i in 0..3 {
            for j in 0..2 {
                parts.push(format_rational(self.coeff(i, j)));
            }
        }
        parts.join(" ")
    }

    pub fn parse(s: &str) -> Result<Self> {
        let parts = s.split_whitespace().map(parse_rational).collect::<Result<Vec<_>>>()?;
        if parts.len() != 6 {
            return Err(Error::Parse(format!("expected six rationals, got {}", parts.len())));
        }
        let u = QAlpha::new(parts[0].clone(), parts[2].clone(), parts[4].clone());
        let v = QAlpha::new(parts[1].clone(), parts[3].clone(), parts[5].clone());
        Ok(Self::new(u, v))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::int(1);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl<'a> Add<&'a KElem> for &'a KElem {
    type Output = KElem;
    fn add(self, o: &KElem) -> KElem {
        KElem::new(&self.u + &o.u, &self.v + &o.v)
    }
}

impl<'a> Sub<&'a KElem> for &'a KElem {
    type Output = KElem;
    fn sub(self, o: &KElem) -> KElem {
        KElem::new(&self.u - &o.u, &self.v - &o.v)
    }
}

impl Neg for &KElem {
    type Output = KElem;
    fn neg(self) -> KElem {
        KElem::new(-&self.u, -&self.v)
    }
}

impl<'a> Mul<&'a KElem> for &'a KElem {
    type Output = KElem;
    fn mul(self, o: &KElem) -> KElem {
        // α1² = (2 − α0 − α0²) − (1 + α0)·α1
        let vv = &self.v * &o.v;
        let u = &(&self.u * &o.u) + &(&vv * &QAlpha::from_ints(2, -1, -1));
        let v = &(&(&self.u * &o.v) + &(&o.u * &self.v)) - &(&vv * &QAlpha::from_ints(1, 1, 0));
        KElem::new(u, v)
    }
}

forward_owned!(KElem, Add add, Sub sub, Mul mul);

/// `num / den` in `K`: multiply through by the conjugate of `den`, then invert
/// the real norm `den·conj(den)` in `Q(α0)`.
pub fn k_div(num: &KElem, den: &KElem) -> Result<KElem> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let c = den.conj();
    let n = den * &c;
    debug_assert!(n.is_real());
    let inv = n.u.inverse()?;
    let top = num * &c;
    Ok(KElem::new(&top.u * &inv, &top.v * &inv))
}

/// A polynomial in `X, Y, Z` with rational coefficients, keyed by exponents.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TriPoly {
    terms: BTreeMap<[u32; 3], BigRational>,
}

impl TriPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn monomial(c: BigRational, exps: [u32; 3]) -> Self {
        let mut p = Self::zero();
        p.add_term(exps, c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(BigRational::one(), [1, 0, 0])
    }

    pub fn y() -> Self {
        Self::monomial(BigRational::one(), [0, 1, 0])
    }

    pub fn z() -> Self {
        Self::monomial(BigRational::one(), [0, 0, 1])
    }

    fn add_term(&mut self, exps: [u32; 3], c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exps).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &BigRational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(BigRational::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl<'a> Add<&'a TriPoly> for &'a TriPoly {
    type Output = TriPoly;
    fn add(self, o: &TriPoly) -> TriPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }
}

impl<'a> Sub<&'a TriPoly> for &'a TriPoly {
    type Output = TriPoly;
    fn sub(self, o: &TriPoly) -> TriPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, -c.clone());
        }
        r
    }
}

impl<'a> Mul<&'a TriPoly> for &'a TriPoly {
    type Output = TriPoly;
    fn mul(self, o: &TriPoly) -> TriPoly {
        let mut r = TriPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                r.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca * cb);
            }
        }
        r
    }
}

forward_owned!(TriPoly, Add add, Sub sub, Mul mul);

/// Standard reduction of a polynomial in `X = α0, Y = α1, Z = α2`:
/// (i) `Z → −X − Y − 1`, (ii) `Y² → −XY − Y − X² − X + 2`,
/// (iii) `X³ → −X² + 2X + 4`, applied until none fires.
pub fn reduce_poly(a: &TriPoly) -> Result<KElem> {
    let deg = a.total_degree();
    if deg > DEGREE_CAP {
        return Err(Error::DegreeCapExceeded(deg));
    }
    let c = |k: i64| rat(k);

    // (i) expand every Z^k as (−X − Y − 1)^k
    let z_sub = TriPoly::monomial(c(-1), [1, 0, 0]) + TriPoly::monomial(c(-1), [0, 1, 0]) + TriPoly::constant(c(-1));
    let mut p = TriPoly::zero();
    for (e, coef) in a.terms() {
        let head = TriPoly::monomial(coef.clone(), [e[0], e[1], 0]);
        p = &p + &(&head * &z_sub.pow(e[2]));
    }

    // (ii) Y^b with b ≥ 2
    let y2 = [([1u32, 1u32], -1i64), ([0, 1], -1), ([2, 0], -1), ([1, 0], -1), ([0, 0], 2)];
    let mut xy: BTreeMap<[u32; 2], BigRational> = BTreeMap::new();
    let mut work: Vec<([u32; 2], BigRational)> = p.terms().map(|(e, c)| ([e[0], e[1]], c.clone())).collect();
    while let Some((e, coef)) = work.pop() {
        if e[1] >= 2 {
            for (de, k) in y2 {
                work.push(([e[0] + de[0], e[1] - 2 + de[1]], &coef * rat(k)));
            }
        } else {
            *xy.entry(e).or_insert_with(BigRational::zero) += coef;
        }
    }

    // (iii) X^a with a ≥ 3, per power of Y
    let x3 = [(2u32, -1i64), (1, 2), (0, 4)];
    let mut out = [[BigRational::zero(), BigRational::zero(), BigRational::zero()], [
        BigRational::zero(),
        BigRational::zero(),
        BigRational::zero(),
    ]];
    let mut work: Vec<([u32; 2], BigRational)> = xy.into_iter().collect();
    while let Some((e, coef)) = work.pop() {
        if e[0] >= 3 {
            for (dx, k) in x3 {
                work.push(([e[0] - 3 + dx, e[1]], &coef * rat(k)));
            }
        } else {
            out[e[1] as usize][e[0] as usize] += coef;
        }
    }
    let [u, v] = out;
    let [u0, u1, u2] = u;
    let [v0, v1, v2] = v;
    Ok(KElem::new(QAlpha::new(u0, u1, u2), QAlpha::new(v0, v1, v2)))
}
