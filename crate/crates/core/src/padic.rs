//! Capped-precision p-adic numbers and evaluation of multiple polylogarithms
//! inside the open unit disc.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lincomb::{parse_rational, Rational};
use crate::mpl::{classify_sigma, SigmaTermForm};
use crate::shuffle::enumerate_quasi_shuffles;
use crate::words::Index;

/// Absolute precision used for values known exactly.
const EXACT: i64 = i64::MAX / 8;

#[derive(Clone, PartialEq, Eq, Debug)]
enum Repr {
    /// Indistinguishable from zero modulo `p^abs_prec`.
    Zero { abs_prec: i64 },
    /// `p^valuation · unit`, unit known modulo `p^rel_prec` and prime to `p`.
    Unit { valuation: i64, unit: BigInt, rel_prec: u32 },
}

/// Element of `Q_p` known to a finite absolute precision.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PadicNumber {
    p: u64,
    repr: Repr,
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn p_pow(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// `v_p(n)` and the part of `n` prime to `p`; `n` must be nonzero.
fn split_valuation(n: &BigInt, p: u64) -> (i64, BigInt) {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    (v, n)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one(), "unit must be invertible");
    e.x.mod_floor(m)
}

impl PadicNumber {
    /// Zero known to absolute precision `abs_prec`.
    pub fn zero(p: u64, abs_prec: i64) -> Result<Self> {
        check_prime(p)?;
        Ok(PadicNumber { p, repr: Repr::Zero { abs_prec } })
    }

    /// The image of a rational, known modulo `p^abs_prec`.
    pub fn from_rational(q: &Rational, p: u64, abs_prec: i64) -> Result<Self> {
        check_prime(p)?;
        if q.is_zero() {
            return Ok(PadicNumber { p, repr: Repr::Zero { abs_prec } });
        }
        let (vn, un) = split_valuation(q.numer(), p);
        let (vd, ud) = split_valuation(q.denom(), p);
        let v = vn - vd;
        if v >= abs_prec {
            return Ok(PadicNumber { p, repr: Repr::Zero { abs_prec } });
        }
        let rel = u32::try_from(abs_prec - v).map_err(|_| Error::InvalidParameter("precision too large".into()))?;
        let m = p_pow(p, rel);
        let unit = (un * mod_inverse(&ud, &m)).mod_floor(&m);
        Ok(PadicNumber { p, repr: Repr::Unit { valuation: v, unit, rel_prec: rel } })
    }

    /// The image of a rational with `rel_prec` significant digits.
    pub fn from_rational_relative(q: &Rational, p: u64, rel_prec: u32) -> Result<Self> {
        if q.is_zero() {
            return PadicNumber::zero(p, EXACT);
        }
        check_prime(p)?;
        let v = split_valuation(q.numer(), p).0 - split_valuation(q.denom(), p).0;
        PadicNumber::from_rational(q, p, v + rel_prec as i64)
    }

    pub fn from_integer(n: i64, p: u64, abs_prec: i64) -> Result<Self> {
        PadicNumber::from_rational(&Rational::from_integer(n.into()), p, abs_prec)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// `None` for an element indistinguishable from zero.
    pub fn valuation(&self) -> Option<i64> {
        match &self.repr {
            Repr::Zero { .. } => None,
            Repr::Unit { valuation, .. } => Some(*valuation),
        }
    }

    pub fn unit(&self) -> Option<&BigInt> {
        match &self.repr {
            Repr::Zero { .. } => None,
            Repr::Unit { unit, .. } => Some(unit),
        }
    }

    /// Known modulo `p^abs_precision`.
    pub fn abs_precision(&self) -> i64 {
        match &self.repr {
            Repr::Zero { abs_prec } => *abs_prec,
            Repr::Unit { valuation, rel_prec, .. } => valuation + *rel_prec as i64,
        }
    }

    /// Number of significant digits; zero for the zero element.
    pub fn rel_precision(&self) -> u32 {
        match &self.repr {
            Repr::Zero { .. } => 0,
            Repr::Unit { rel_prec, .. } => *rel_prec,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero { .. })
    }

    /// The same element, forgetting digits at or beyond `p^abs_prec`.
    pub fn truncate(&self, abs_prec: i64) -> PadicNumber {
        let target = abs_prec.min(self.abs_precision());
        match &self.repr {
            Repr::Zero { .. } => PadicNumber { p: self.p, repr: Repr::Zero { abs_prec: target } },
            Repr::Unit { valuation, unit, .. } => {
                if target <= *valuation {
                    return PadicNumber { p: self.p, repr: Repr::Zero { abs_prec: target } };
                }
                let rel = (target - valuation) as u32;
                let unit = unit.mod_floor(&p_pow(self.p, rel));
                PadicNumber { p: self.p, repr: Repr::Unit { valuation: *valuation, unit, rel_prec: rel } }
            }
        }
    }

    fn same_prime(&self, other: &PadicNumber) -> Result<()> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn add(&self, other: &PadicNumber) -> Result<PadicNumber> {
        self.same_prime(other)?;
        let abs = self.abs_precision().min(other.abs_precision());
        let (v1, u1, v2, u2) = match (&self.repr, &other.repr) {
            (Repr::Zero { .. }, _) => return Ok(other.truncate(abs)),
            (_, Repr::Zero { .. }) => return Ok(self.truncate(abs)),
            (Repr::Unit { valuation: v1, unit: u1, .. }, Repr::Unit { valuation: v2, unit: u2, .. }) => {
                (*v1, u1, *v2, u2)
            }
        };
        let m = v1.min(v2);
        if abs <= m {
            return Ok(PadicNumber { p: self.p, repr: Repr::Zero { abs_prec: abs } });
        }
        let modulus = p_pow(self.p, (abs - m) as u32);
        let sum = (u1 * p_pow(self.p, (v1 - m) as u32) + u2 * p_pow(self.p, (v2 - m) as u32)).mod_floor(&modulus);
        if sum.is_zero() {
            return Ok(PadicNumber { p: self.p, repr: Repr::Zero { abs_prec: abs } });
        }
        let (k, unit) = split_valuation(&sum, self.p);
        let valuation = m + k;
        let rel = (abs - valuation) as u32;
        let unit = unit.mod_floor(&p_pow(self.p, rel));
        Ok(PadicNumber { p: self.p, repr: Repr::Unit { valuation, unit, rel_prec: rel } })
    }

    pub fn neg(&self) -> PadicNumber {
        match &self.repr {
            Repr::Zero { .. } => self.clone(),
            Repr::Unit { valuation, unit, rel_prec } => {
                let unit = (-unit).mod_floor(&p_pow(self.p, *rel_prec));
                PadicNumber { p: self.p, repr: Repr::Unit { valuation: *valuation, unit, rel_prec: *rel_prec } }
            }
        }
    }

    pub fn sub(&self, other: &PadicNumber) -> Result<PadicNumber> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PadicNumber) -> Result<PadicNumber> {
        self.same_prime(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Zero { abs_prec: a }, Repr::Zero { abs_prec: b }) => Repr::Zero { abs_prec: a.saturating_add(*b).min(EXACT) },
            (Repr::Zero { abs_prec }, Repr::Unit { valuation, .. })
            | (Repr::Unit { valuation, .. }, Repr::Zero { abs_prec }) => {
                Repr::Zero { abs_prec: abs_prec.saturating_add(*valuation).min(EXACT) }
            }
            (
                Repr::Unit { valuation: v1, unit: u1, rel_prec: r1 },
                Repr::Unit { valuation: v2, unit: u2, rel_prec: r2 },
            ) => {
                let rel = *r1.min(r2);
                Repr::Unit { valuation: v1 + v2, unit: (u1 * u2).mod_floor(&p_pow(self.p, rel)), rel_prec: rel }
            }
        };
        Ok(PadicNumber { p: self.p, repr })
    }

    pub fn div(&self, other: &PadicNumber) -> Result<PadicNumber> {
        self.same_prime(other)?;
        let (v2, u2, r2) = match &other.repr {
            Repr::Zero { .. } => return Err(Error::DivisionByZero),
            Repr::Unit { valuation, unit, rel_prec } => (*valuation, unit, *rel_prec),
        };
        let repr = match &self.repr {
            Repr::Zero { abs_prec } => Repr::Zero { abs_prec: abs_prec - v2 },
            Repr::Unit { valuation: v1, unit: u1, rel_prec: r1 } => {
                let rel = (*r1).min(r2);
                let m = p_pow(self.p, rel);
                Repr::Unit { valuation: v1 - v2, unit: (u1 * mod_inverse(u2, &m)).mod_floor(&m), rel_prec: rel }
            }
        };
        Ok(PadicNumber { p: self.p, repr })
    }

    /// True when the two agree modulo the smaller of their precisions.
    pub fn agrees_with(&self, other: &PadicNumber) -> Result<bool> {
        Ok(self.sub(other)?.is_zero())
    }

    /// Exact rational `p^v · unit`, the canonical representative.
    pub fn to_rational(&self) -> Rational {
        match &self.repr {
            Repr::Zero { .. } => Rational::zero(),
            Repr::Unit { valuation, unit, .. } => {
                let scale = p_pow(self.p, valuation.unsigned_abs() as u32);
                if *valuation >= 0 {
                    Rational::from_integer(unit * scale)
                } else {
                    Rational::new(unit.clone(), scale)
                }
            }
        }
    }

    /// Digit expansion `d*p^k + … + O(p^n)`, lowest power first.
    pub fn to_digit_string(&self) -> String {
        let p = self.p;
        let mut parts = Vec::new();
        if let Repr::Unit { valuation, unit, .. } = &self.repr {
            let base = BigInt::from(p);
            let mut rest = unit.clone();
            let mut k = *valuation;
            while !rest.is_zero() {
                let (q, d) = rest.div_mod_floor(&base);
                if !d.is_zero() {
                    parts.push(match k {
                        0 => d.to_string(),
                        1 => format!("{d}*{p}"),
                        _ => format!("{d}*{p}^{k}"),
                    });
                }
                rest = q;
                k += 1;
            }
        }
        parts.push(format!("O({p}^{})", self.abs_precision()));
        parts.join(" + ")
    }

    /// Parses the form produced by [`PadicNumber::to_digit_string`].
    pub fn parse_digits(s: &str) -> Result<PadicNumber> {
        let bad = || Error::Parse(format!("bad p-adic digit expansion {s:?}"));
        let terms: Vec<&str> = s.split('+').map(str::trim).collect();
        let last = terms.last().ok_or_else(bad)?;
        let inner = last.strip_prefix("O(").and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
        let (p, n) = inner.split_once('^').ok_or_else(bad)?;
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let mut value = Rational::zero();
        for term in &terms[..terms.len() - 1] {
            let (d, power) = match term.split_once('*') {
                None => (*term, 0),
                Some((d, rest)) => {
                    let k = match rest.split_once('^') {
                        None => 1,
                        Some((_, k)) => k.trim().parse().map_err(|_| bad())?,
                    };
                    let base = rest.split('^').next().unwrap_or_default().trim();
                    if base.parse::<u64>().map_err(|_| bad())? != p {
                        return Err(bad());
                    }
                    (d, k)
                }
            };
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            let scale = Rational::from_integer(BigInt::from(p)).pow(power);
            value += Rational::from_integer(d) * scale;
        }
        PadicNumber::from_rational(&value, p, n)
    }
}

impl fmt::Display for PadicNumber {
    /// `p^v * u mod p^N`, or `0 mod p^N`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.p;
        match &self.repr {
            Repr::Zero { abs_prec } => write!(f, "0 mod {p}^{abs_prec}"),
            Repr::Unit { valuation, unit, .. } => write!(f, "{p}^{valuation} * {unit} mod {p}^{}", self.abs_precision()),
        }
    }
}

impl FromStr for PadicNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad p-adic number {s:?}"));
        let (value, modulus) = s.split_once(" mod ").ok_or_else(bad)?;
        let (p, n) = modulus.trim().split_once('^').ok_or_else(bad)?;
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let value = value.trim();
        if value == "0" {
            return PadicNumber::zero(p, n);
        }
        let (power, unit) = value.split_once('*').ok_or_else(bad)?;
        let (base, v) = power.trim().split_once('^').ok_or_else(bad)?;
        if base.trim().parse::<u64>().map_err(|_| bad())? != p {
            return Err(bad());
        }
        let v: i64 = v.trim().parse().map_err(|_| bad())?;
        let unit: BigInt = unit.trim().parse().map_err(|_| bad())?;
        if unit.is_negative() || (&unit % BigInt::from(p)).is_zero() {
            return Err(bad());
        }
        let scale = Rational::from_integer(BigInt::from(p)).pow(v.to_i32().ok_or_else(bad)?);
        PadicNumber::from_rational(&(Rational::from_integer(unit) * scale), p, n)
    }
}

/// `⌊log_p n⌋` for `n ≥ 1`.
fn floor_log(p: u64, n: u64) -> i64 {
    let mut e = 0;
    let mut q = n;
    while q >= p {
        q /= p;
        e += 1;
    }
    e
}

/// Lower bound on the valuation of a degree-`n` term of a weight-`w` series
/// evaluated at points of positive valuation: every denominator value is at
/// most `n`, so `v_p(1/∏ m^e) ≥ -w ⌊log_p n⌋`.
fn term_valuation_floor(p: u64, w: u32, n: u64) -> i64 {
    n as i64 - w as i64 * floor_log(p, n)
}

/// Powers `p^e` past which the floor increases for good: within a block
/// `[p^e, p^{e+1})` it increases, and block minima `p^e - w e` increase once
/// `p^e (p - 1) ≥ w`.
fn monotone_from(p: u64, w: u32, target: i64) -> u64 {
    let mut pe: u64 = 1;
    let mut e: i64 = 0;
    loop {
        if pe.saturating_mul(p - 1) >= w as u64 && pe as i64 - w as i64 * e >= target {
            return pe;
        }
        pe = pe.saturating_mul(p);
        e += 1;
    }
}

/// Smallest `M` such that every term of total degree `n > M` has valuation at
/// least `prec`, by the bound `n - w ⌊log_p n⌋`.
pub fn required_terms(p: u64, weight: u32, prec: i64) -> u64 {
    let stop = monotone_from(p, weight, prec);
    (1..stop).filter(|&n| term_valuation_floor(p, weight, n) < prec).max().unwrap_or(0)
}

/// Smallest possible term valuation for a weight-`w` series on the disc.
pub fn min_term_valuation(p: u64, weight: u32) -> i64 {
    let stop = monotone_from(p, weight, 1);
    (1..=stop).map(|n| term_valuation_floor(p, weight, n)).min().unwrap_or(1)
}

/// Digits carried by coefficients and required of inputs so that a sum
/// truncated at [`required_terms`] is right to `prec` digits.
pub fn working_precision(p: u64, weight: u32, prec: i64) -> i64 {
    let m = required_terms(p, weight, prec).max(1);
    prec + weight as i64 * floor_log(p, m)
}

/// Extra digits needed so products of two series values keep `prec` digits.
fn product_guard(p: u64, weight: u32) -> i64 {
    (-min_term_valuation(p, weight)).max(0)
}

/// Relative precision to give evaluation points so that
/// [`verify_stuffle_padic`] can reach `prec` digits for total weight `weight`.
pub fn input_precision(p: u64, weight: u32, prec: i64) -> u32 {
    working_precision(p, weight, prec + product_guard(p, weight)).max(1) as u32
}

fn check_point(t: &PadicNumber, p: u64, needed: i64) -> Result<()> {
    if t.p != p {
        return Err(Error::PrimeMismatch(p, t.p));
    }
    match t.valuation() {
        Some(v) if v < 1 => Err(Error::OutsideDisc(v)),
        Some(_) if (t.rel_precision() as i64) < needed => {
            Err(Error::InsufficientPrecision { available: t.rel_precision() as i64, requested: needed })
        }
        None if t.abs_precision() < needed => {
            Err(Error::InsufficientPrecision { available: t.abs_precision(), requested: needed })
        }
        _ => Ok(()),
    }
}

fn finish(value: PadicNumber, prec: i64) -> Result<PadicNumber> {
    if value.abs_precision() < prec {
        return Err(Error::InsufficientPrecision { available: value.abs_precision(), requested: prec });
    }
    Ok(value.truncate(prec))
}

/// Runs one nested-sum chain: stage `k` maps `cur` to
/// `next[n] = Σ_{m ≤ n} cur[m - 1] / m^{e_k}`, and the last stage also
/// weights each `m` by `top^m`. Seeding with ones gives `Li` partial sums.
fn padic_chain(
    exponents: &[u32],
    max: u64,
    seed: Vec<PadicNumber>,
    top: &PadicNumber,
    coeff_prec: i64,
) -> Result<Vec<PadicNumber>> {
    let p = top.p;
    let mut cur = seed;
    let last = exponents.len() - 1;
    for (k, &e) in exponents.iter().enumerate() {
        let mut next = vec![PadicNumber::zero(p, EXACT)?; max as usize + 1];
        let mut power: Option<PadicNumber> = None;
        for n in 1..=max {
            let coeff = PadicNumber::from_rational(
                &Rational::new(BigInt::one(), num_traits::pow(BigInt::from(n), e as usize)),
                p,
                coeff_prec,
            )?;
            let mut term = cur[(n - 1) as usize].mul(&coeff)?;
            if k == last {
                let next_power = match power {
                    None => top.clone(),
                    Some(q) => q.mul(top)?,
                };
                term = term.mul(&next_power)?;
                power = Some(next_power);
            }
            next[n as usize] = next[(n - 1) as usize].add(&term)?;
        }
        cur = next;
    }
    Ok(cur)
}

fn ones(p: u64, len: u64, prec: i64) -> Result<Vec<PadicNumber>> {
    (0..=len).map(|_| PadicNumber::from_integer(1, p, prec)).collect()
}

/// `Li_c(t)` for `v_p(t) ≥ 1`, right to `prec` digits.
pub fn eval_li1_padic(c: &Index, t: &PadicNumber, prec: i64) -> Result<PadicNumber> {
    let p = t.p;
    let w = c.weight();
    let r = working_precision(p, w, prec);
    check_point(t, p, r)?;
    let m = required_terms(p, w, prec).max(1);
    let sums = padic_chain(c.parts(), m, ones(p, m, r)?, t, r)?;
    finish(sums[m as usize].clone(), prec)
}

/// `Li_{a,b}(x, y)` for `v_p(x), v_p(y) ≥ 1`, right to `prec` digits.
pub fn eval_li2_padic(a: &Index, b: &Index, x: &PadicNumber, y: &PadicNumber, prec: i64) -> Result<PadicNumber> {
    let p = x.p;
    x.same_prime(y)?;
    let w = a.weight() + b.weight();
    let r = working_precision(p, w, prec);
    check_point(x, p, r)?;
    check_point(y, p, r)?;
    let m = required_terms(p, w, prec).max(1);
    // the a-chain carries x^{m_k}; the b-chain continues from it and carries y^{n_l}
    let inner = padic_chain(a.parts(), m, ones(p, m, r)?, x, r)?;
    let outer = padic_chain(b.parts(), m, inner, y, r)?;
    finish(outer[m as usize].clone(), prec)
}

/// Evaluates one term `Li^σ` through its classified form.
fn eval_sigma_form(form: &SigmaTermForm, x: &PadicNumber, y: &PadicNumber, prec: i64) -> Result<PadicNumber> {
    match form {
        SigmaTermForm::XY { first, second } => eval_li2_padic(first, second, x, y, prec),
        SigmaTermForm::YX { first, second } => eval_li2_padic(first, second, y, x, prec),
        SigmaTermForm::Diagonal { c } => eval_li1_padic(c, &x.mul(y)?, prec),
    }
}

/// `Li_a(x) Li_b(y) - Σ_σ Li^σ_{a,b}(x, y)` to `prec` digits.
pub fn stuffle_padic_defect(a: &Index, b: &Index, x: &PadicNumber, y: &PadicNumber, prec: i64) -> Result<PadicNumber> {
    x.same_prime(y)?;
    let p = x.p;
    let guard = product_guard(p, a.weight() + b.weight());
    let lhs = eval_li1_padic(a, x, prec + guard)?.mul(&eval_li1_padic(b, y, prec + guard)?)?;
    let mut rhs = PadicNumber::zero(p, EXACT)?;
    for sigma in enumerate_quasi_shuffles(a.depth(), b.depth()) {
        rhs = rhs.add(&eval_sigma_form(&classify_sigma(&sigma, a, b)?, x, y, prec)?)?;
    }
    finish(lhs.sub(&rhs)?, prec)
}

/// True when the stuffle identity holds at `(x, y)` to `prec` digits.
pub fn verify_stuffle_padic(a: &Index, b: &Index, x: &PadicNumber, y: &PadicNumber, prec: i64) -> Result<bool> {
    Ok(stuffle_padic_defect(a, b, x, y, prec)?.is_zero())
}

/// Evaluation point `q ∈ Q` with enough digits for [`verify_stuffle_padic`].
pub fn point(q: &Rational, p: u64, weight: u32, prec: i64) -> Result<PadicNumber> {
    PadicNumber::from_rational_relative(q, p, input_precision(p, weight, prec))
}

/// Parses a rational such as `5`, `-3/7`.
pub fn parse_point(s: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| Error::Parse(format!("bad rational {s:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincomb::{int, rat};
    use crate::mpl::{li1_coeffs, li2_coeffs};
    use crate::words::indices_up_to;
    use proptest::prelude::*;

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    #[test]
    fn construction_examples() {
        let half = PadicNumber::from_rational(&rat(1, 2), 5, 3).unwrap();
        assert_eq!(half.unit(), Some(&BigInt::from(63)));
        assert_eq!(half.valuation(), Some(0));
        assert_eq!(PadicNumber::from_integer(50, 5, 10).unwrap().valuation(), Some(2));
        let u = PadicNumber::from_rational(&rat(-7, 3), 5, 6).unwrap();
        assert!(u.add(&u.neg()).unwrap().is_zero());
        assert_eq!(PadicNumber::from_integer(3, 4, 5), Err(Error::NotPrime(4)));
        assert!(PadicNumber::from_integer(125, 5, 3).unwrap().is_zero());
        let q = PadicNumber::from_rational(&rat(1, 25), 5, 4).unwrap();
        assert_eq!((q.valuation(), q.rel_precision()), (Some(-2), 6));
    }

    #[test]
    fn arithmetic_errors() {
        let a = PadicNumber::from_integer(2, 5, 4).unwrap();
        let b = PadicNumber::from_integer(2, 7, 4).unwrap();
        assert_eq!(a.add(&b), Err(Error::PrimeMismatch(5, 7)));
        assert_eq!(a.div(&PadicNumber::zero(5, 3).unwrap()), Err(Error::DivisionByZero));
    }

    #[test]
    fn precision_tracking() {
        let a = PadicNumber::from_integer(1, 5, 10).unwrap();
        let b = PadicNumber::from_integer(4, 5, 3).unwrap();
        let s = a.add(&b).unwrap();
        assert_eq!((s.valuation(), s.abs_precision()), (Some(1), 3));
        let five = PadicNumber::from_integer(5, 5, 6).unwrap();
        let prod = five.mul(&five).unwrap();
        assert_eq!((prod.valuation(), prod.rel_precision(), prod.abs_precision()), (Some(2), 5, 7));
        let quo = PadicNumber::from_integer(1, 5, 4).unwrap().div(&five).unwrap();
        assert_eq!((quo.valuation(), quo.abs_precision()), (Some(-1), 3));
        assert_eq!(PadicNumber::zero(5, 4).unwrap().mul(&five).unwrap().abs_precision(), 5);
    }

    #[test]
    fn text_forms_roundtrip() {
        for (q, p, n) in [(rat(1, 2), 5, 3), (rat(-50, 3), 5, 6), (rat(7, 9), 3, 4), (int(0), 7, 5), (rat(2, 7), 7, 3)] {
            let x = PadicNumber::from_rational(&q, p, n).unwrap();
            assert_eq!(x.to_string().parse::<PadicNumber>().unwrap(), x, "{x}");
            assert_eq!(PadicNumber::parse_digits(&x.to_digit_string()).unwrap(), x, "{}", x.to_digit_string());
        }
        let half = PadicNumber::from_rational(&rat(1, 2), 5, 3).unwrap();
        assert_eq!(half.to_string(), "5^0 * 63 mod 5^3");
        assert_eq!(half.to_digit_string(), "3 + 2*5 + 2*5^2 + O(5^3)");
        assert_eq!(PadicNumber::zero(3, 4).unwrap().to_digit_string(), "O(3^4)");
        assert!("5^0 * 10 mod 5^3".parse::<PadicNumber>().is_err());
        assert!("junk".parse::<PadicNumber>().is_err());
        assert!(PadicNumber::parse_digits("3 + 2*7 + O(5^3)").is_err());
    }

    #[test]
    fn required_terms_examples() {
        let m = required_terms(5, 2, 10);
        assert!(m <= 14);
        assert_eq!(m, 11);
        assert!(required_terms(5, 2, 1) <= 1);
        for (p, w) in [(3, 5), (5, 2), (7, 5), (2, 3)] {
            let mut prev = 0;
            for prec in 1..30 {
                let m = required_terms(p, w, prec);
                assert!(m >= prev);
                prev = m;
                // soundness against a brute-force scan far past M
                for n in m + 1..m + 2000 {
                    assert!(term_valuation_floor(p, w, n) >= prec, "p={p} w={w} prec={prec} n={n}");
                }
            }
        }
    }

    #[test]
    fn zero_point_gives_zero() {
        let z = PadicNumber::zero(5, 40).unwrap();
        let x = point(&int(5), 5, 3, 10).unwrap();
        assert!(eval_li2_padic(&idx("1"), &idx("1"), &z, &x, 10).unwrap().is_zero());
        assert!(eval_li2_padic(&idx("1"), &idx("1"), &x, &z, 10).unwrap().is_zero());
        assert!(verify_stuffle_padic(&idx("1"), &idx("2"), &z, &x, 10).unwrap());
    }

    #[test]
    fn leading_term_example() {
        // Li_{(1),(1)}(5, 5) ≡ 5^3/2 mod 5^4: next term has degree 4
        let x = point(&int(5), 5, 2, 4).unwrap();
        let v = eval_li2_padic(&idx("1"), &idx("1"), &x, &x, 4).unwrap();
        let want = PadicNumber::from_rational(&rat(125, 2), 5, 4).unwrap();
        assert!(v.agrees_with(&want).unwrap());
        assert_eq!(v.valuation(), Some(3));
    }

    #[test]
    fn outside_disc_rejected() {
        let one = PadicNumber::from_integer(1, 5, 30).unwrap();
        let x = point(&int(5), 5, 2, 5).unwrap();
        assert_eq!(eval_li2_padic(&idx("1"), &idx("1"), &one, &x, 5), Err(Error::OutsideDisc(0)));
        let coarse = PadicNumber::from_integer(5, 5, 3).unwrap();
        assert!(matches!(eval_li1_padic(&idx("2"), &coarse, 8), Err(Error::InsufficientPrecision { .. })));
    }

    // exact rational truncation embedded into Q_p
    fn embedded_li2(a: &Index, b: &Index, x: &Rational, y: &Rational, p: u64, prec: i64) -> PadicNumber {
        let cap = 2 * required_terms(p, a.weight() + b.weight(), prec) as u32 + 2;
        let series = li2_coeffs(a, b, cap);
        let mut total = Rational::zero();
        for ((i, j), c) in series.terms() {
            total += c * x.pow(i as i32) * y.pow(j as i32);
        }
        PadicNumber::from_rational(&total, p, prec).unwrap()
    }

    #[test]
    fn agrees_with_exact_rational_evaluation() {
        for (a, b, x, y, p) in [("1", "1", 5, 5, 5), ("2", "3", 7, 14, 7), ("1,2", "1", 3, 9, 3), ("1", "2,1", 6, 3, 3)] {
            let (a, b) = (idx(a), idx(b));
            let w = a.weight() + b.weight();
            let (xq, yq) = (int(x), int(y));
            let prec = 8;
            let got = eval_li2_padic(&a, &b, &point(&xq, p, w, prec).unwrap(), &point(&yq, p, w, prec).unwrap(), prec).unwrap();
            let want = embedded_li2(&a, &b, &xq, &yq, p, prec);
            assert!(got.agrees_with(&want).unwrap(), "{a:?} {b:?}: {got} vs {want}");
            assert_eq!(got.abs_precision(), prec);
        }
        let c = idx("2,1");
        let t = int(3);
        let got = eval_li1_padic(&c, &point(&t, 3, 3, 9).unwrap(), 9).unwrap();
        let series = li1_coeffs(&c, 60);
        let exact: Rational = series.terms().map(|(n, q)| q * t.pow(n as i32)).sum();
        assert!(got.agrees_with(&PadicNumber::from_rational(&exact, 3, 9).unwrap()).unwrap());
    }

    #[test]
    fn stuffle_examples() {
        let x = point(&int(5), 5, 2, 10).unwrap();
        assert!(verify_stuffle_padic(&idx("1"), &idx("1"), &x, &x, 10).unwrap());
        let x = point(&int(7), 7, 5, 12).unwrap();
        let y = point(&int(14), 7, 5, 12).unwrap();
        assert!(verify_stuffle_padic(&idx("2"), &idx("3"), &x, &y, 12).unwrap());
    }

    #[test]
    fn stuffle_small_sweep() {
        for p in [3u64, 5] {
            for a in indices_up_to(2) {
                for b in indices_up_to(2) {
                    let w = a.weight() + b.weight();
                    let x = point(&int(p as i64), p, w, 6).unwrap();
                    let y = point(&int(2 * p as i64), p, w, 6).unwrap();
                    assert!(verify_stuffle_padic(&a, &b, &x, &y, 6).unwrap(), "{a:?} {b:?} p={p}");
                }
            }
        }
    }

    #[test]
    fn a_wrong_identity_is_detected() {
        // dropping the diagonal term leaves a defect of valuation 2
        let (a, b) = (idx("1"), idx("1"));
        let x = point(&int(5), 5, 2, 8).unwrap();
        let lhs = eval_li1_padic(&a, &x, 8).unwrap().mul(&eval_li1_padic(&b, &x, 8).unwrap()).unwrap();
        let off = eval_li2_padic(&a, &b, &x, &x, 8).unwrap().add(&eval_li2_padic(&b, &a, &x, &x, 8).unwrap()).unwrap();
        assert_eq!(lhs.sub(&off).unwrap().valuation(), Some(2));
    }

    fn padic_strategy() -> impl Strategy<Value = Rational> {
        (-400i64..400, 1i64..50).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in padic_strategy(), b in padic_strategy(), c in padic_strategy(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
            let emb = |q: &Rational| PadicNumber::from_rational(q, p, 12).unwrap();
            let (x, y, z) = (emb(&a), emb(&b), emb(&c));
            prop_assert!(x.add(&y).unwrap().add(&z).unwrap().agrees_with(&x.add(&y.add(&z).unwrap()).unwrap()).unwrap());
            prop_assert!(x.mul(&y).unwrap().agrees_with(&y.mul(&x).unwrap()).unwrap());
            prop_assert!(x.mul(&y).unwrap().mul(&z).unwrap().agrees_with(&x.mul(&y.mul(&z).unwrap()).unwrap()).unwrap());
            let lhs = x.mul(&y.add(&z).unwrap()).unwrap();
            let rhs = x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap();
            prop_assert!(lhs.agrees_with(&rhs).unwrap());
        }

        #[test]
        fn embedding_is_a_homomorphism(a in padic_strategy(), b in padic_strategy(), p in prop::sample::select(vec![3u64, 5, 7, 11])) {
            let emb = |q: &Rational| PadicNumber::from_rational(q, p, 10).unwrap();
            prop_assert!(emb(&(&a + &b)).agrees_with(&emb(&a).add(&emb(&b)).unwrap()).unwrap());
            prop_assert!(emb(&(&a * &b)).agrees_with(&emb(&a).mul(&emb(&b)).unwrap()).unwrap());
            if !b.is_zero() {
                prop_assert!(emb(&(&a / &b)).agrees_with(&emb(&a).div(&emb(&b)).unwrap()).unwrap());
            }
        }
    }
}
