//! Truncated power series in one and two variables over exact rationals.
//!
//! Truncation is by total degree: a [`PowerSeries2`] with cap `N` knows every
//! coefficient of `x^i y^j` with `i + j <= N`, and nothing beyond.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lincomb::{format_rational, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Var {
    X,
    Y,
}

impl Var {
    fn symbol(self) -> char {
        match self {
            Var::X => 'x',
            Var::Y => 'y',
        }
    }
}

/// Denominators that get expanded as geometric series.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Geometric {
    /// `1 / (1 - x)`
    OneMinusX,
    /// `1 / (1 - y)`
    OneMinusY,
    /// `1 / (1 - xy)`
    OneMinusXY,
}

/// Univariate truncated series `Σ_{i <= cap} c_i t^i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PowerSeries1 {
    cap: u32,
    coeffs: BTreeMap<u32, Rational>,
}

impl PowerSeries1 {
    pub fn zero(cap: u32) -> Self {
        PowerSeries1 { cap, coeffs: BTreeMap::new() }
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn coeff(&self, i: u32) -> Rational {
        self.coeffs.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c t^i`; terms beyond the cap are dropped.
    pub fn add_term(&mut self, i: u32, c: Rational) {
        if i > self.cap || c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(i).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cap != other.cap {
            return Err(Error::CapMismatch(self.cap, other.cap));
        }
        let mut out = Self::zero(self.cap);
        for (&i, a) in &self.coeffs {
            for (&j, b) in &other.coeffs {
                if i + j > self.cap {
                    break;
                }
                out.add_term(i + j, a * b);
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.cap != other.cap {
            return Err(Error::CapMismatch(self.cap, other.cap));
        }
        let mut out = self.clone();
        for (&i, c) in &other.coeffs {
            out.add_term(i, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.cap);
        for (&i, a) in &self.coeffs {
            out.add_term(i, a * c);
        }
        out
    }

    /// Lines `i num/den`, increasing `i`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (i, c) in &self.coeffs {
            let _ = writeln!(s, "{i} {}", format_rational(c));
        }
        s
    }
}

/// Bivariate series truncated at total degree `cap`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PowerSeries2 {
    cap: u32,
    coeffs: BTreeMap<(u32, u32), Rational>,
}

impl PowerSeries2 {
    pub fn zero(cap: u32) -> Self {
        PowerSeries2 { cap, coeffs: BTreeMap::new() }
    }

    pub fn one(cap: u32) -> Self {
        Self::monomial(0, 0, Rational::one(), cap)
    }

    pub fn monomial(i: u32, j: u32, c: Rational, cap: u32) -> Self {
        let mut s = Self::zero(cap);
        s.add_term(i, j, c);
        s
    }

    /// `x` or `y` as a series.
    pub fn variable(var: Var, cap: u32) -> Self {
        match var {
            Var::X => Self::monomial(1, 0, Rational::one(), cap),
            Var::Y => Self::monomial(0, 1, Rational::one(), cap),
        }
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds `c x^i y^j`; terms beyond the cap are dropped.
    pub fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if i + j > self.cap || c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry((i, j)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    fn same_cap(&self, other: &Self) -> Result<()> {
        if self.cap == other.cap {
            Ok(())
        } else {
            Err(Error::CapMismatch(self.cap, other.cap))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_cap(other)?;
        let mut out = self.clone();
        for (&(i, j), c) in &other.coeffs {
            out.add_term(i, j, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_cap(other)?;
        let mut out = self.clone();
        for (&(i, j), c) in &other.coeffs {
            out.add_term(i, j, -c.clone());
        }
        Ok(out)
    }

    /// Product with every term of total degree above the cap discarded.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_cap(other)?;
        let mut out = Self::zero(self.cap);
        for (&(i1, j1), a) in &self.coeffs {
            for (&(i2, j2), b) in &other.coeffs {
                if i1 + j1 + i2 + j2 <= self.cap {
                    out.add_term(i1 + i2, j1 + j2, a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.cap);
        for (&(i, j), a) in &self.coeffs {
            out.add_term(i, j, a * c);
        }
        out
    }

    /// Restriction to a smaller cap; a larger `cap` leaves the series unchanged.
    pub fn truncate(&self, cap: u32) -> Self {
        let cap = cap.min(self.cap);
        PowerSeries2 {
            cap,
            coeffs: self.coeffs.iter().filter(|(&(i, j), _)| i + j <= cap).map(|(&e, c)| (e, c.clone())).collect(),
        }
    }

    /// Coefficientwise derivative; the result is only known up to `cap - 1`.
    pub fn partial_derivative(&self, var: Var) -> Result<Self> {
        let cap = self.cap.checked_sub(1).ok_or(Error::CapExhausted)?;
        let mut out = Self::zero(cap);
        for (&(i, j), c) in &self.coeffs {
            match var {
                Var::X if i > 0 => out.add_term(i - 1, j, c * BigInt::from(i)),
                Var::Y if j > 0 => out.add_term(i, j - 1, c * BigInt::from(j)),
                _ => {}
            }
        }
        Ok(out)
    }

    /// Exponent shift `s / var`, valid only when every term contains `var`.
    pub fn divide_by_monomial(&self, var: Var) -> Result<Self> {
        let cap = self.cap.checked_sub(1).ok_or(Error::CapExhausted)?;
        let mut out = Self::zero(cap);
        for (&(i, j), c) in &self.coeffs {
            match var {
                Var::X if i > 0 => out.add_term(i - 1, j, c.clone()),
                Var::Y if j > 0 => out.add_term(i, j - 1, c.clone()),
                _ => return Err(Error::NotDivisible(var.symbol())),
            }
        }
        Ok(out)
    }

    /// Truncated expansion of `1/(1-x)`, `1/(1-y)` or `1/(1-xy)`.
    pub fn geometric(kind: Geometric, cap: u32) -> Self {
        let mut s = Self::zero(cap);
        for n in 0..=cap {
            match kind {
                Geometric::OneMinusX => s.add_term(n, 0, Rational::one()),
                Geometric::OneMinusY => s.add_term(0, n, Rational::one()),
                Geometric::OneMinusXY => s.add_term(n, n, Rational::one()),
            }
        }
        s
    }

    /// The series with `x` and `y` exchanged.
    pub fn transpose(&self) -> Self {
        PowerSeries2 { cap: self.cap, coeffs: self.coeffs.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect() }
    }

    /// A one-variable series viewed as a series in `var`; same cap.
    pub fn embed(s: &PowerSeries1, var: Var) -> Self {
        let mut out = Self::zero(s.cap());
        for (i, c) in s.terms() {
            match var {
                Var::X => out.add_term(i, 0, c.clone()),
                Var::Y => out.add_term(0, i, c.clone()),
            }
        }
        out
    }

    /// `t ↦ xy`: `t^k` becomes `x^k y^k`. The cap becomes `2N`, clipped to
    /// `ambient_cap`.
    pub fn substitute_xy(s: &PowerSeries1, ambient_cap: u32) -> Self {
        let cap = s.cap().saturating_mul(2).min(ambient_cap);
        let mut out = Self::zero(cap);
        for (k, c) in s.terms() {
            out.add_term(k, k, c.clone());
        }
        out
    }

    /// Lines `i j num/den`, sorted lexicographically by `(i, j)`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for ((i, j), c) in &self.coeffs {
            let _ = writeln!(s, "{i} {j} {}", format_rational(c));
        }
        s
    }

    /// First coefficient (in `(i, j)` order) where the two series differ,
    /// compared up to the smaller cap.
    pub fn first_difference(&self, other: &Self) -> Option<((u32, u32), Rational, Rational)> {
        let cap = self.cap.min(other.cap);
        let a = self.truncate(cap);
        let b = other.truncate(cap);
        let keys: std::collections::BTreeSet<_> = a.coeffs.keys().chain(b.coeffs.keys()).copied().collect();
        keys.into_iter().find_map(|(i, j)| {
            let (p, q) = (a.coeff(i, j), b.coeff(i, j));
            (p != q).then_some(((i, j), p, q))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincomb::{int, rat};
    use proptest::prelude::*;

    fn x(cap: u32) -> PowerSeries2 {
        PowerSeries2::variable(Var::X, cap)
    }

    fn random_series(cap: u32, seeds: &[(u32, u32, i64, i64)]) -> PowerSeries2 {
        let mut s = PowerSeries2::zero(cap);
        for &(i, j, n, d) in seeds {
            s.add_term(i % (cap + 1), j % (cap + 1), rat(n, d));
        }
        s
    }

    #[test]
    fn ring_examples() {
        let one = PowerSeries2::one(2);
        let p = one.checked_add(&x(2)).unwrap();
        let m = one.checked_sub(&x(2)).unwrap();
        let prod = p.checked_mul(&m).unwrap();
        let mut want = PowerSeries2::one(2);
        want.add_term(2, 0, int(-1));
        assert_eq!(prod, want);
        assert_eq!(p.checked_add(&PowerSeries2::zero(2)).unwrap(), p);

        let s = random_series(6, &[(0, 0, 3, 1), (2, 1, -1, 2), (0, 3, 5, 7)]);
        let xs = x(6).checked_mul(&s).unwrap();
        assert!(xs.terms().all(|((i, _), _)| i >= 1));
        assert_eq!(s.checked_add(&PowerSeries2::zero(5)), Err(Error::CapMismatch(6, 5)));
    }

    #[test]
    fn derivative_examples() {
        let s = PowerSeries2::monomial(2, 1, int(1), 5);
        assert_eq!(s.partial_derivative(Var::X).unwrap(), PowerSeries2::monomial(1, 1, int(2), 4));
        let c = PowerSeries2::monomial(0, 0, int(7), 5);
        assert!(c.partial_derivative(Var::Y).unwrap().is_zero());
        assert_eq!(PowerSeries2::one(0).partial_derivative(Var::X), Err(Error::CapExhausted));
    }

    #[test]
    fn geometric_examples() {
        let g = PowerSeries2::geometric(Geometric::OneMinusX, 3);
        assert_eq!(g.nnz(), 4);
        assert!((0..=3).all(|n| g.coeff(n, 0) == int(1)));
        let g = PowerSeries2::geometric(Geometric::OneMinusXY, 4);
        assert_eq!(g.nnz(), 3);
        assert_eq!(g.coeff(2, 2), int(1));
        assert_eq!(g.coeff(3, 3), int(0));
    }

    #[test]
    fn geometric_inverts_its_denominator() {
        let cap = 12;
        let one = PowerSeries2::one(cap);
        let cases = [
            (Geometric::OneMinusX, PowerSeries2::monomial(1, 0, int(1), cap)),
            (Geometric::OneMinusY, PowerSeries2::monomial(0, 1, int(1), cap)),
            (Geometric::OneMinusXY, PowerSeries2::monomial(1, 1, int(1), cap)),
        ];
        for (kind, u) in cases {
            let denom = one.checked_sub(&u).unwrap();
            assert_eq!(denom.checked_mul(&PowerSeries2::geometric(kind, cap)).unwrap(), one);
        }
    }

    #[test]
    fn division_examples() {
        let s = PowerSeries2::monomial(2, 1, int(1), 5);
        assert_eq!(s.divide_by_monomial(Var::X).unwrap(), PowerSeries2::monomial(1, 1, int(1), 4));
        let y = PowerSeries2::variable(Var::Y, 5);
        assert_eq!(y.divide_by_monomial(Var::X), Err(Error::NotDivisible('x')));
    }

    #[test]
    fn substitution_examples() {
        let mut t = PowerSeries1::zero(5);
        t.add_term(1, int(1));
        let s = PowerSeries2::substitute_xy(&t, 20);
        assert_eq!(s.cap(), 10);
        assert_eq!(s, PowerSeries2::monomial(1, 1, int(1), 10));
        assert_eq!(PowerSeries2::substitute_xy(&t, 7).cap(), 7);

        let mut li2 = PowerSeries1::zero(6);
        for n in 1..=6 {
            li2.add_term(n, rat(1, (n * n) as i64));
        }
        let s = PowerSeries2::substitute_xy(&li2, 12);
        for n in 1..=6 {
            assert_eq!(s.coeff(n, n), rat(1, (n * n) as i64));
        }
        let mut c = PowerSeries1::zero(4);
        c.add_term(0, rat(3, 2));
        assert_eq!(PowerSeries2::substitute_xy(&c, 8), PowerSeries2::monomial(0, 0, rat(3, 2), 8));
    }

    #[test]
    fn dump_format() {
        let mut s = PowerSeries2::zero(4);
        s.add_term(1, 2, rat(1, 2));
        s.add_term(0, 1, int(-3));
        assert_eq!(s.dump(), "0 1 -3/1\n1 2 1/2\n");
    }

    fn arb_series(cap: u32) -> impl Strategy<Value = PowerSeries2> {
        prop::collection::vec((0..=cap, 0..=cap, -5i64..=5, 1i64..=4), 0..8)
            .prop_map(move |seeds| random_series(cap, &seeds))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_series(12), b in arb_series(12), c in arb_series(12)) {
            let ab_c = a.checked_mul(&b).unwrap().checked_mul(&c).unwrap();
            let a_bc = a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            prop_assert_eq!(a.checked_mul(&b).unwrap(), b.checked_mul(&a).unwrap());
            let left = a.checked_mul(&b.checked_add(&c).unwrap()).unwrap();
            let right = a.checked_mul(&b).unwrap().checked_add(&a.checked_mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            prop_assert_eq!(a.checked_add(&b).unwrap().checked_add(&c).unwrap(),
                            a.checked_add(&b.checked_add(&c).unwrap()).unwrap());
        }

        #[test]
        fn derivative_rules(a in arb_series(10), b in arb_series(10)) {
            for var in [Var::X, Var::Y] {
                let d_sum = a.checked_add(&b).unwrap().partial_derivative(var).unwrap();
                let sum_d = a.partial_derivative(var).unwrap().checked_add(&b.partial_derivative(var).unwrap()).unwrap();
                prop_assert_eq!(d_sum, sum_d);
                let leibniz_left = a.checked_mul(&b).unwrap().partial_derivative(var).unwrap();
                let da_b = a.partial_derivative(var).unwrap().checked_mul(&b.truncate(9)).unwrap();
                let a_db = a.truncate(9).checked_mul(&b.partial_derivative(var).unwrap()).unwrap();
                prop_assert_eq!(leibniz_left, da_b.checked_add(&a_db).unwrap());
            }
            let dxy = a.partial_derivative(Var::X).unwrap().partial_derivative(Var::Y).unwrap();
            let dyx = a.partial_derivative(Var::Y).unwrap().partial_derivative(Var::X).unwrap();
            prop_assert_eq!(dxy, dyx);
        }
    }
}
