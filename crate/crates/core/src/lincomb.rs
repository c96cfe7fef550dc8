use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rationals used throughout the crate.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num/den` with the sign on the numerator and no decimal point.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Finite formal sum of symbols with nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<T: Ord> {
    terms: BTreeMap<T, Rational>,
}

impl<T: Ord> Default for LinComb<T> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<T: Ord + Clone> LinComb<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_symbol(sym: T) -> Self {
        let mut lc = Self::zero();
        lc.add_term(sym, Rational::one());
        lc
    }

    pub fn add_term(&mut self, sym: T, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(sym);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, sym: &T) -> Rational {
        self.terms.get(sym).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, &Rational)> {
        self.terms.iter()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &T> {
        self.terms.keys()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (s, q) in &self.terms {
            out.add_term(s.clone(), q * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, q) in &other.terms {
            out.add_term(s.clone(), q.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, q) in &other.terms {
            out.add_term(s.clone(), -q.clone());
        }
        out
    }

    /// Sum of all coefficients.
    pub fn mass(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, q| acc + q)
    }

    /// Sum of absolute values of coefficients.
    pub fn l1_norm(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, q| acc + q.abs())
    }

    /// Bilinear extension of a product defined on symbols.
    pub fn bilinear<E, F>(&self, other: &Self, mut product: F) -> Result<Self, E>
    where
        F: FnMut(&T, &T) -> Result<Self, E>,
    {
        let mut out = Self::zero();
        for (s, p) in &self.terms {
            for (t, q) in &other.terms {
                let pq = p * q;
                for (u, r) in product(s, t)?.terms {
                    out.add_term(u, r * &pq);
                }
            }
        }
        Ok(out)
    }

    pub fn map_symbols<U: Ord + Clone, E>(
        &self,
        mut f: impl FnMut(&T) -> Result<U, E>,
    ) -> Result<LinComb<U>, E> {
        let mut out = LinComb::zero();
        for (s, q) in &self.terms {
            out.add_term(f(s)?, q.clone());
        }
        Ok(out)
    }
}

impl<T: Ord + Clone> FromIterator<(T, Rational)> for LinComb<T> {
    fn from_iter<I: IntoIterator<Item = (T, Rational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (s, q) in iter {
            out.add_term(s, q);
        }
        out
    }
}

impl<T: Ord + fmt::Debug> fmt::Debug for LinComb<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (s, q)) in self.terms.iter().enumerate() {
            let neg = q.is_negative();
            let mag = q.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}·")?;
            }
            write!(f, "{s:?}")?;
        }
        Ok(())
    }
}

impl<T: Ord + fmt::Debug> fmt::Display for LinComb<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
