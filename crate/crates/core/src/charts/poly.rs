//! Univariate and bivariate polynomials over the rationals, with exact gcd.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::lincomb::{format_rational, Rational};

/// Polynomial in one variable, coefficients from degree 0 upward, no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UPoly(Vec<Rational>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        UPoly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let n = self.0.len().max(other.0.len());
        let zero = Rational::zero();
        UPoly::new((0..n).map(|i| self.0.get(i).unwrap_or(&zero) + other.0.get(i).unwrap_or(&zero)).collect())
    }

    pub fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> UPoly {
        UPoly::new(self.0.iter().map(|a| a * c).collect())
    }

    /// Quotient and remainder over the field of rationals.
    pub fn div_rem(&self, divisor: &UPoly) -> (UPoly, UPoly) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.lead().recip();
        let mut rem = self.0.clone();
        let mut quot = vec![Rational::zero(); self.0.len().saturating_sub(d)];
        while rem.len() > d {
            let top = rem.len() - 1;
            let q = &rem[top] * &lead_inv;
            if !q.is_zero() {
                for (i, c) in divisor.0.iter().enumerate() {
                    rem[top - d + i] -= &q * c;
                }
                quot[top - d] = q;
            }
            rem.pop();
        }
        (UPoly::new(quot), UPoly::new(rem))
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        self.scale(&self.lead().recip())
    }
}

/// Bivariate polynomial `Σ c_{ij} u^i v^j` over the rationals.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Rational>,
}

/// Graded lexicographic order with `u < v`.
pub fn grlex(a: &(u32, u32), b: &(u32, u32)) -> Ordering {
    (a.0 + a.1).cmp(&(b.0 + b.1)).then(a.1.cmp(&b.1))
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn constant(c: Rational) -> Self {
        Poly2::monomial(0, 0, c)
    }

    pub fn one() -> Self {
        Poly2::constant(Rational::one())
    }

    pub fn monomial(i: u32, j: u32, c: Rational) -> Self {
        let mut p = Poly2::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// Leading monomial and coefficient under [`grlex`].
    pub fn leading(&self) -> Option<((u32, u32), &Rational)> {
        self.terms.iter().max_by(|a, b| grlex(a.0, b.0)).map(|(m, c)| (*m, c))
    }

    pub fn degree_in(&self, second: bool) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| if second { j } else { i }).max()
    }

    /// Smallest exponent of `v` among the terms.
    pub fn order_in_second(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).min()
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly2 {
        Poly2 { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn sub(&self, other: &Poly2) -> Poly2 {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &other.terms {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Poly2 {
        if c.is_zero() {
            return Poly2::zero();
        }
        Poly2 { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    /// Partial derivative in `u` (`second = false`) or `v`.
    pub fn derivative(&self, second: bool) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i, j), c) in &self.terms {
            let e = if second { j } else { i };
            if e > 0 {
                let (ni, nj) = if second { (i, j - 1) } else { (i - 1, j) };
                out.add_term(ni, nj, c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Terms with `v^0`, as a polynomial in `u` only.
    pub fn at_second_zero(&self) -> Poly2 {
        Poly2 { terms: self.terms.iter().filter(|((_, j), _)| *j == 0).map(|(m, c)| (*m, c.clone())).collect() }
    }

    /// Divides by `v^k`; every term must carry at least that power.
    pub fn shift_second_down(&self, k: u32) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i, j.checked_sub(k).expect("exponent underflow")), c.clone()))
                .collect(),
        }
    }

    /// Coefficients in `Q[u]` of successive powers of `v`.
    fn to_nested(&self) -> Vec<UPoly> {
        let dv = self.degree_in(true).map_or(0, |d| d as usize + 1);
        let du = self.degree_in(false).map_or(0, |d| d as usize + 1);
        let mut rows = vec![vec![Rational::zero(); du]; dv];
        for (&(i, j), c) in &self.terms {
            rows[j as usize][i as usize] = c.clone();
        }
        rows.into_iter().map(UPoly::new).collect()
    }

    fn from_nested(rows: &[UPoly]) -> Poly2 {
        let mut out = Poly2::zero();
        for (j, row) in rows.iter().enumerate() {
            for (i, c) in row.coeffs().iter().enumerate() {
                out.add_term(i as u32, j as u32, c.clone());
            }
        }
        out
    }

    /// Exact quotient; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly2) -> Option<Poly2> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let d = nested_trim(divisor.to_nested());
        let dl = d.len() - 1;
        let mut rem = nested_trim(self.to_nested());
        let mut quot = vec![UPoly::zero(); rem.len().saturating_sub(dl)];
        while !rem.is_empty() && rem.len() > dl {
            let top = rem.len() - 1;
            let (q, r) = rem[top].div_rem(&d[dl]);
            if !r.is_zero() {
                return None;
            }
            for (k, c) in d.iter().enumerate() {
                rem[top - dl + k] = rem[top - dl + k].sub(&q.mul(c));
            }
            quot[top - dl] = q;
            rem = nested_trim(rem);
        }
        rem.is_empty().then(|| Poly2::from_nested(&quot))
    }

    /// Greatest common divisor, normalized to leading coefficient 1.
    pub fn gcd(&self, other: &Poly2) -> Poly2 {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let a = nested_trim(self.to_nested());
        let b = nested_trim(other.to_nested());
        let (ca, pa) = content_primitive(&a);
        let (cb, pb) = content_primitive(&b);
        let content = ca.gcd(&cb);
        let (mut p, mut q) = if pa.len() >= pb.len() { (pa, pb) } else { (pb, pa) };
        // primitive remainder sequence in v over Q[u]
        while q.len() > 1 {
            let r = pseudo_remainder(&p, &q);
            p = q;
            if r.is_empty() {
                q = Vec::new();
                break;
            }
            q = content_primitive(&r).1;
        }
        let g = if q.len() == 1 { vec![UPoly::constant(Rational::one())] } else { p };
        let scaled: Vec<UPoly> = g.iter().map(|c| c.mul(&content)).collect();
        Poly2::from_nested(&scaled).normalized()
    }

    /// `self` scaled so its [`grlex`] leading coefficient is 1.
    pub fn normalized(&self) -> Poly2 {
        match self.leading() {
            None => Poly2::zero(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Terms in descending [`grlex`] order.
    pub fn sorted_terms(&self) -> Vec<((u32, u32), Rational)> {
        let mut terms: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        terms.sort_by(|a, b| grlex(&b.0, &a.0));
        terms
    }

    pub fn eval(&self, u: &Rational, v: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c * num_traits::pow(u.clone(), i as usize) * num_traits::pow(v.clone(), j as usize))
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    /// Renders with the given variable names, e.g. `-x*y^2 + 1/2*x + 3`.
    pub fn render(&self, names: (&str, &str)) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, ((i, j), c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c < Rational::zero();
            let magnitude = if negative { -c } else { c };
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            if !magnitude.is_one() || (i == 0 && j == 0) {
                factors.push(if magnitude.is_integer() { magnitude.to_string() } else { format_rational(&magnitude) });
            }
            for (name, e) in [(names.0, i), (names.1, j)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(("x", "y")))
    }
}

fn nested_trim(mut rows: Vec<UPoly>) -> Vec<UPoly> {
    while rows.last().is_some_and(UPoly::is_zero) {
        rows.pop();
    }
    rows
}

/// Content in `Q[u]` (monic) and the primitive part.
fn content_primitive(rows: &[UPoly]) -> (UPoly, Vec<UPoly>) {
    let content = rows.iter().fold(UPoly::zero(), |g, c| g.gcd(c));
    let primitive = rows.iter().map(|c| c.div_rem(&content).0).collect();
    (content, primitive)
}

/// `lc(b)^(deg a - deg b + 1) · a mod b` in `Q[u][v]`.
fn pseudo_remainder(a: &[UPoly], b: &[UPoly]) -> Vec<UPoly> {
    let db = b.len() - 1;
    let lead = &b[db];
    let mut rem = a.to_vec();
    while rem.len() > db {
        let top = rem.len() - 1;
        let t = rem[top].clone();
        rem = rem.iter().map(|c| c.mul(lead)).collect();
        for (k, c) in b.iter().enumerate() {
            rem[top - db + k] = rem[top - db + k].sub(&t.mul(c));
        }
        rem = nested_trim(rem);
        if rem.len() > top {
            unreachable!("leading term must cancel");
        }
    }
    rem
}
