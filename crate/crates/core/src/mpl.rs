//! Coefficients of one- and two-variable multiple polylogarithms and exact
//! verification of their product formulas and differential equations.
//!
//! Conventions, for `a = (a_1..a_k)`, `b = (b_1..b_l)`, `c = (c_1..c_h)`:
//!
//! ```text
//! Li_c(t)      = Σ_{0<m_1<..<m_h} t^{m_h} / (m_1^c_1 .. m_h^c_h)
//! Li_{a,b}(x,y) = Σ_{0<m_1<..<m_k<n_1<..<n_l} x^{m_k} y^{n_l} / (Π m_i^a_i Π n_j^b_j)
//! ```

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::lincomb::Rational;
use crate::series::{Geometric, PowerSeries1, PowerSeries2, Var};
use crate::shuffle::{check_arity, enumerate_quasi_shuffles, merge_index, shuffle, QuasiShuffle};
use crate::words::{index_of_word, Index, Word};

fn inv_pow(n: u32, e: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(n).pow(e))
}

/// Nested prefix sums `S(n) = Σ_{m_1<..<m_r<=n} Π m_i^{-e_i}` for `n` in
/// `start..=end`, with every `m_i > start`. Returns values indexed by `n - start`.
fn nested_prefix_sums(exponents: &[u32], start: u32, end: u32) -> Vec<Rational> {
    let len = (end - start + 1) as usize;
    let mut cur = vec![Rational::one(); len];
    for &e in exponents {
        let mut next = vec![Rational::zero(); len];
        for off in 1..len {
            let n = start + off as u32;
            next[off] = &next[off - 1] + &cur[off - 1] * inv_pow(n, e);
        }
        cur = next;
    }
    cur
}

/// `Li_c(t)` up to `t^cap`.
pub fn li1_coeffs(c: &Index, cap: u32) -> PowerSeries1 {
    let mut out = PowerSeries1::zero(cap);
    if cap == 0 {
        return out;
    }
    let (inner, top) = c.parts().split_at(c.depth() - 1);
    let prefix = nested_prefix_sums(inner, 0, cap - 1);
    for n in 1..=cap {
        out.add_term(n, &prefix[(n - 1) as usize] * inv_pow(n, top[0]));
    }
    out
}

/// `Li_{a,b}(x,y)` up to total degree `cap`.
pub fn li2_coeffs(a: &Index, b: &Index, cap: u32) -> PowerSeries2 {
    let mut out = PowerSeries2::zero(cap);
    let alpha = li1_coeffs(a, cap);
    let (inner_b, top_b) = b.parts().split_at(b.depth() - 1);
    // x^i y^j needs j > i and i + j <= cap
    for i in 1..=cap.saturating_sub(1) / 2 {
        let ai = alpha.coeff(i);
        if ai.is_zero() {
            continue;
        }
        let jmax = cap - i;
        let prefix = nested_prefix_sums(inner_b, i, jmax - 1);
        for j in i + 1..=jmax {
            let beta = &prefix[(j - 1 - i) as usize] * inv_pow(j, top_b[0]);
            out.add_term(i, j, &ai * beta);
        }
    }
    out
}

/// `Li^σ_{a,b}(x,y)`: the sum over chains whose order pattern is fixed by
/// `σ`, enumerated lattice point by lattice point.
pub fn li_sigma_coeffs(sigma: &QuasiShuffle, a: &Index, b: &Index, cap: u32) -> Result<PowerSeries2> {
    check_arity(sigma, a, b)?;
    let merged = merge_index(sigma, a, b)?;
    let px = sigma.top_of_first().expect("a is nonempty");
    let py = sigma.top_of_second().expect("b is nonempty");
    // Every value is at most cap, so L^w / Π v^e is an integer for L = lcm(1..=cap).
    let lcm = (1..=cap.max(1)).fold(BigUint::one(), |acc, v| acc.lcm(&BigUint::from(v)));
    let mut walk = LatticeWalk {
        exps: merged.parts(),
        px,
        py,
        cap,
        lcm: &lcm,
        values: vec![0; merged.depth()],
        buckets: BTreeMap::new(),
    };
    walk.descend(0, 0, BigUint::one());
    let buckets = walk.buckets;
    let denom = BigInt::from(lcm.pow(merged.weight()));
    let mut out = PowerSeries2::zero(cap);
    for ((i, j), num) in buckets {
        out.add_term(i, j, Rational::new(BigInt::from(num), denom.clone()));
    }
    Ok(out)
}

struct LatticeWalk<'a> {
    exps: &'a [u32],
    px: usize,
    py: usize,
    cap: u32,
    lcm: &'a BigUint,
    values: Vec<u32>,
    buckets: BTreeMap<(u32, u32), BigUint>,
}

impl LatticeWalk<'_> {
    // Smallest possible x- plus y-exponent once positions 0..=pos are fixed.
    fn degree_floor(&self, pos: usize) -> u32 {
        let at = |q: usize| {
            if q <= pos {
                self.values[q]
            } else {
                self.values[pos] + (q - pos) as u32
            }
        };
        at(self.px) + at(self.py)
    }

    fn descend(&mut self, pos: usize, prev: u32, weight: BigUint) {
        if pos == self.exps.len() {
            let key = (self.values[self.px], self.values[self.py]);
            *self.buckets.entry(key).or_insert_with(BigUint::zero) += weight;
            return;
        }
        let mut v = prev + 1;
        loop {
            self.values[pos] = v;
            if self.degree_floor(pos) > self.cap {
                break;
            }
            let factor = (self.lcm / BigUint::from(v)).pow(self.exps[pos]);
            self.descend(pos + 1, v, &weight * factor);
            v += 1;
        }
    }
}

/// Which series `Li^σ_{a,b}` is, read off from where the two top variables land.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum SigmaTermForm {
    /// `Li_{first, second}(x, y)`: the top of `a` sits strictly below the top of `b`.
    XY { first: Index, second: Index },
    /// `Li_{first, second}(y, x)`: the top of `b` sits strictly below the top of `a`.
    YX { first: Index, second: Index },
    /// `Li_c(xy)`: the two tops are merged.
    Diagonal { c: Index },
}

impl SigmaTermForm {
    pub fn indices(&self) -> Vec<&Index> {
        match self {
            SigmaTermForm::XY { first, second } | SigmaTermForm::YX { first, second } => vec![first, second],
            SigmaTermForm::Diagonal { c } => vec![c],
        }
    }

    pub fn series(&self, cap: u32) -> PowerSeries2 {
        match self {
            SigmaTermForm::XY { first, second } => li2_coeffs(first, second, cap),
            SigmaTermForm::YX { first, second } => li2_coeffs(first, second, cap).transpose(),
            SigmaTermForm::Diagonal { c } => PowerSeries2::substitute_xy(&li1_coeffs(c, cap.div_ceil(2)), cap),
        }
    }
}

pub fn classify_sigma(sigma: &QuasiShuffle, a: &Index, b: &Index) -> Result<SigmaTermForm> {
    let merged = merge_index(sigma, a, b)?;
    let px = sigma.top_of_first().expect("a is nonempty");
    let py = sigma.top_of_second().expect("b is nonempty");
    let split = |at: usize| -> Result<(Index, Index)> {
        let parts = merged.parts();
        Ok((Index::new(parts[..=at].to_vec())?, Index::new(parts[at + 1..].to_vec())?))
    };
    Ok(match px.cmp(&py) {
        std::cmp::Ordering::Equal => SigmaTermForm::Diagonal { c: merged },
        std::cmp::Ordering::Less => {
            let (first, second) = split(px)?;
            SigmaTermForm::XY { first, second }
        }
        std::cmp::Ordering::Greater => {
            let (first, second) = split(py)?;
            SigmaTermForm::YX { first, second }
        }
    })
}

/// Monomial exponents and the two differing coefficients.
pub type Mismatch = ((u32, u32), Rational, Rational);

/// First coefficient where `Li_a(x) Li_b(y)` and `Σ_σ Li^σ_{a,b}(x,y)` differ.
pub fn stuffle_series_difference(
    a: &Index,
    b: &Index,
    cap: u32,
) -> Result<Option<Mismatch>> {
    let lhs = PowerSeries2::embed(&li1_coeffs(a, cap), Var::X)
        .checked_mul(&PowerSeries2::embed(&li1_coeffs(b, cap), Var::Y))?;
    let mut rhs = PowerSeries2::zero(cap);
    for sigma in enumerate_quasi_shuffles(a.depth(), b.depth()) {
        rhs = rhs.checked_add(&li_sigma_coeffs(&sigma, a, b, cap)?)?;
    }
    Ok(lhs.first_difference(&rhs))
}

/// `Li_a(x) Li_b(y) = Σ_σ Li^σ_{a,b}(x,y)` coefficientwise up to `cap`.
pub fn verify_stuffle_series(a: &Index, b: &Index, cap: u32) -> bool {
    matches!(stuffle_series_difference(a, b, cap), Ok(None))
}

/// First coefficient where `Li_{I_w}(t) Li_{I_w'}(t)` and the shuffle
/// expansion `Σ_τ Li_{I_τ(w,w')}(t)` differ.
pub fn shuffle_series_difference(w: &Word, w2: &Word, cap: u32) -> Result<Option<(u32, Rational, Rational)>> {
    let a = index_of_word(w)?;
    let b = index_of_word(w2)?;
    let lhs = li1_coeffs(&a, cap).checked_mul(&li1_coeffs(&b, cap))?;
    let mut rhs = PowerSeries1::zero(cap);
    for (word, mult) in shuffle(w, w2).iter() {
        rhs = rhs.checked_add(&li1_coeffs(&index_of_word(word)?, cap).scale(mult))?;
    }
    Ok((0..=cap).find_map(|n| {
        let (p, q) = (lhs.coeff(n), rhs.coeff(n));
        (p != q).then_some((n, p, q))
    }))
}

/// One-variable shuffle identity as formal power series up to `cap`.
pub fn verify_shuffle_series(w: &Word, w2: &Word, cap: u32) -> Result<bool> {
    Ok(shuffle_series_difference(w, w2, cap)?.is_none())
}

/// The three families of functions on the `(x, y)` plane.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum MplFunction {
    /// `Li_{a,b}(x, y)`
    TwoVariable { a: Index, b: Index },
    /// `Li_c(xy)`
    Product { c: Index },
    /// `Li_c(y)`
    OneVariable { c: Index },
}

impl MplFunction {
    pub fn series(&self, cap: u32) -> PowerSeries2 {
        match self {
            MplFunction::TwoVariable { a, b } => li2_coeffs(a, b, cap),
            MplFunction::Product { c } => PowerSeries2::substitute_xy(&li1_coeffs(c, cap.div_ceil(2)), cap),
            MplFunction::OneVariable { c } => PowerSeries2::embed(&li1_coeffs(c, cap), Var::Y),
        }
    }

    pub fn weight(&self) -> u32 {
        match self {
            MplFunction::TwoVariable { a, b } => a.weight() + b.weight(),
            MplFunction::Product { c } | MplFunction::OneVariable { c } => c.weight(),
        }
    }
}

impl fmt::Display for MplFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MplFunction::TwoVariable { a, b } => write!(f, "Li_({a});({b})(x,y)"),
            MplFunction::Product { c } => write!(f, "Li_({c})(xy)"),
            MplFunction::OneVariable { c } => write!(f, "Li_({c})(y)"),
        }
    }
}

/// Branches keyed on the last part of an index and its depth.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TailCase {
    /// last part ≠ 1
    LastAboveOne,
    /// last part = 1, depth ≠ 1
    LastOneDeep,
    /// last part = 1, depth = 1
    LastOneSingle,
}

impl TailCase {
    pub fn of(idx: &Index) -> Self {
        match (idx.last(), idx.depth()) {
            (l, _) if l != 1 => TailCase::LastAboveOne,
            (_, 1) => TailCase::LastOneSingle,
            _ => TailCase::LastOneDeep,
        }
    }

    pub const ALL: [TailCase; 3] = [TailCase::LastAboveOne, TailCase::LastOneDeep, TailCase::LastOneSingle];
}

/// Branches of `∂/∂x Li_{a,b}(x,y)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TwoVarDxCase {
    /// `a_k ≠ 1`
    LastAboveOne,
    /// `a_k = 1`, split on whether `k = 1` and whether `l = 1`
    LastOne { a_single: bool, b_single: bool },
}

/// One branch of the differential equations satisfied by the three families.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum OdeCase {
    TwoVarDx(TwoVarDxCase),
    TwoVarDy(TailCase),
    ProductDx(TailCase),
    ProductDy(TailCase),
    OneVarDx,
    OneVarDy(TailCase),
}

impl OdeCase {
    pub fn all() -> Vec<OdeCase> {
        let mut out = vec![OdeCase::TwoVarDx(TwoVarDxCase::LastAboveOne)];
        for a_single in [false, true] {
            for b_single in [false, true] {
                out.push(OdeCase::TwoVarDx(TwoVarDxCase::LastOne { a_single, b_single }));
            }
        }
        for t in TailCase::ALL {
            out.push(OdeCase::TwoVarDy(t));
        }
        for t in TailCase::ALL {
            out.push(OdeCase::ProductDx(t));
        }
        for t in TailCase::ALL {
            out.push(OdeCase::ProductDy(t));
        }
        out.push(OdeCase::OneVarDx);
        for t in TailCase::ALL {
            out.push(OdeCase::OneVarDy(t));
        }
        out
    }

    /// The branch that applies to `func` when differentiating in `var`.
    pub fn classify(func: &MplFunction, var: Var) -> OdeCase {
        match (func, var) {
            (MplFunction::TwoVariable { a, b }, Var::X) => OdeCase::TwoVarDx(if a.last() != 1 {
                TwoVarDxCase::LastAboveOne
            } else {
                TwoVarDxCase::LastOne { a_single: a.depth() == 1, b_single: b.depth() == 1 }
            }),
            (MplFunction::TwoVariable { b, .. }, Var::Y) => OdeCase::TwoVarDy(TailCase::of(b)),
            (MplFunction::Product { c }, Var::X) => OdeCase::ProductDx(TailCase::of(c)),
            (MplFunction::Product { c }, Var::Y) => OdeCase::ProductDy(TailCase::of(c)),
            (MplFunction::OneVariable { .. }, Var::X) => OdeCase::OneVarDx,
            (MplFunction::OneVariable { c }, Var::Y) => OdeCase::OneVarDy(TailCase::of(c)),
        }
    }

    pub fn variable(&self) -> Var {
        match self {
            OdeCase::TwoVarDx(_) | OdeCase::ProductDx(_) | OdeCase::OneVarDx => Var::X,
            _ => Var::Y,
        }
    }
}

impl fmt::Display for OdeCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Rational-function coefficients that occur on the right-hand sides.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum OdeCoefficient {
    InvX,
    InvOneMinusX,
    InvY,
    InvOneMinusY,
    YOverOneMinusXY,
    XOverOneMinusXY,
}

/// `sign · coefficient · child`, where a missing child is the constant 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OdeTerm {
    pub sign: i8,
    pub coefficient: OdeCoefficient,
    pub child: Option<MplFunction>,
}

fn term(sign: i8, coefficient: OdeCoefficient, child: Option<MplFunction>) -> OdeTerm {
    OdeTerm { sign, coefficient, child }
}

/// Right-hand side of the derivative selected by `case`, as a list of terms.
pub fn ode_rhs(case: OdeCase, func: &MplFunction) -> Result<Vec<OdeTerm>> {
    let actual = OdeCase::classify(func, case.variable());
    if actual != case {
        return Err(Error::OdeCaseMismatch { case: case.to_string(), function: func.to_string() });
    }
    use MplFunction::*;
    use OdeCoefficient::*;
    let two = |a: Index, b: Index| Some(TwoVariable { a, b });
    let prod = |c: Index| Some(Product { c });
    let one = |c: Index| Some(OneVariable { c });
    Ok(match (case, func) {
        (OdeCase::TwoVarDx(TwoVarDxCase::LastAboveOne), TwoVariable { a, b }) => {
            vec![term(1, InvX, two(a.lower_last().unwrap(), b.clone()))]
        }
        (OdeCase::TwoVarDx(TwoVarDxCase::LastOne { a_single, b_single }), TwoVariable { a, b }) => {
            let (b1, b_rest) = b.split_first();
            let b1 = Index::single(b1)?;
            let first = if a_single { one(b.clone()) } else { two(a.drop_last().unwrap(), b.clone()) };
            let lifted = match a.drop_last() {
                Some(prefix) => prefix.concat(&b1)?,
                None => b1,
            };
            let second = if b_single { prod(lifted) } else { two(lifted, b_rest.unwrap()) };
            vec![term(1, InvOneMinusX, first), term(-1, InvX, second.clone()), term(-1, InvOneMinusX, second)]
        }
        (OdeCase::TwoVarDy(t), TwoVariable { a, b }) => match t {
            TailCase::LastAboveOne => vec![term(1, InvY, two(a.clone(), b.lower_last().unwrap()))],
            TailCase::LastOneDeep => vec![term(1, InvOneMinusY, two(a.clone(), b.drop_last().unwrap()))],
            TailCase::LastOneSingle => vec![term(1, InvOneMinusY, prod(a.clone()))],
        },
        (OdeCase::ProductDx(t), Product { c }) => match t {
            TailCase::LastAboveOne => vec![term(1, InvX, prod(c.lower_last().unwrap()))],
            TailCase::LastOneDeep => vec![term(1, YOverOneMinusXY, prod(c.drop_last().unwrap()))],
            TailCase::LastOneSingle => vec![term(1, YOverOneMinusXY, None)],
        },
        (OdeCase::ProductDy(t), Product { c }) => match t {
            TailCase::LastAboveOne => vec![term(1, InvY, prod(c.lower_last().unwrap()))],
            TailCase::LastOneDeep => vec![term(1, XOverOneMinusXY, prod(c.drop_last().unwrap()))],
            TailCase::LastOneSingle => vec![term(1, XOverOneMinusXY, None)],
        },
        (OdeCase::OneVarDx, OneVariable { .. }) => vec![],
        (OdeCase::OneVarDy(t), OneVariable { c }) => match t {
            TailCase::LastAboveOne => vec![term(1, InvY, one(c.lower_last().unwrap()))],
            TailCase::LastOneDeep => vec![term(1, InvOneMinusY, one(c.drop_last().unwrap()))],
            TailCase::LastOneSingle => vec![term(1, InvOneMinusY, None)],
        },
        _ => unreachable!("classification matched above"),
    })
}

/// `coefficient · s`, realized with monomial division or a geometric
/// expansion; the result has cap `s.cap() - 1`.
fn apply_coefficient(coefficient: OdeCoefficient, s: &PowerSeries2) -> Result<PowerSeries2> {
    let cap = s.cap().checked_sub(1).ok_or(Error::CapExhausted)?;
    let times = |kind, numerator: Option<Var>| -> Result<PowerSeries2> {
        let mut factor = PowerSeries2::geometric(kind, cap);
        if let Some(v) = numerator {
            factor = factor.checked_mul(&PowerSeries2::variable(v, cap))?;
        }
        factor.checked_mul(&s.truncate(cap))
    };
    match coefficient {
        OdeCoefficient::InvX => s.divide_by_monomial(Var::X),
        OdeCoefficient::InvY => s.divide_by_monomial(Var::Y),
        OdeCoefficient::InvOneMinusX => times(Geometric::OneMinusX, None),
        OdeCoefficient::InvOneMinusY => times(Geometric::OneMinusY, None),
        OdeCoefficient::YOverOneMinusXY => times(Geometric::OneMinusXY, Some(Var::Y)),
        OdeCoefficient::XOverOneMinusXY => times(Geometric::OneMinusXY, Some(Var::X)),
    }
}

/// First coefficient where the derivative and the right-hand side differ.
pub fn ode_difference(
    case: OdeCase,
    func: &MplFunction,
    cap: u32,
) -> Result<Option<Mismatch>> {
    let rhs_terms = ode_rhs(case, func)?;
    if cap == 0 {
        return Ok(None);
    }
    let lhs = func.series(cap).partial_derivative(case.variable())?;
    let mut rhs = PowerSeries2::zero(cap - 1);
    for t in rhs_terms {
        let child = match &t.child {
            Some(f) => f.series(cap),
            None => PowerSeries2::one(cap),
        };
        let contribution = apply_coefficient(t.coefficient, &child)?;
        rhs = if t.sign > 0 { rhs.checked_add(&contribution)? } else { rhs.checked_sub(&contribution)? };
    }
    Ok(lhs.first_difference(&rhs))
}

/// Checks the branch `case` of the differential equations for `func` up to
/// total degree `cap - 1`.
pub fn verify_ode(case: OdeCase, func: &MplFunction, cap: u32) -> Result<bool> {
    Ok(ode_difference(case, func, cap)?.is_none())
}
