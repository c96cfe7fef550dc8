//! Reduced bivariate rational functions over the rationals.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::poly::Poly2;
use crate::error::{Error, Result};
use crate::lincomb::{parse_rational, Rational};

/// `num / den` with `gcd(num, den) = 1` and the denominator's graded
/// lexicographic leading coefficient equal to 1, so equal functions have equal
/// representations. The two variables are positional: `(x, y)` on the base
/// chart, `(z, w)` on the others.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFun2 {
    num: Poly2,
    den: Poly2,
}

impl RatFun2 {
    pub fn new(num: Poly2, den: Poly2) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFun2::zero());
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        let lead = den.leading().expect("nonzero").1.recip();
        Ok(RatFun2 { num: num.scale(&lead), den: den.scale(&lead) })
    }

    pub fn from_poly(p: Poly2) -> Self {
        RatFun2 { num: p, den: Poly2::one() }
    }

    pub fn zero() -> Self {
        RatFun2::from_poly(Poly2::zero())
    }

    pub fn one() -> Self {
        RatFun2::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RatFun2::from_poly(Poly2::constant(c))
    }

    /// The first (`second = false`) or second coordinate function.
    pub fn variable(second: bool) -> Self {
        let (i, j) = if second { (0, 1) } else { (1, 0) };
        RatFun2::from_poly(Poly2::monomial(i, j, Rational::one()))
    }

    pub fn numerator(&self) -> &Poly2 {
        &self.num
    }

    pub fn denominator(&self) -> &Poly2 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        Some(self.num.constant_value()? / self.den.constant_value()?)
    }

    pub fn add(&self, other: &RatFun2) -> RatFun2 {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        RatFun2::new(num, self.den.mul(&other.den)).expect("nonzero denominators")
    }

    pub fn neg(&self) -> RatFun2 {
        RatFun2 { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &RatFun2) -> RatFun2 {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFun2) -> RatFun2 {
        RatFun2::new(self.num.mul(&other.num), self.den.mul(&other.den)).expect("nonzero denominators")
    }

    pub fn div(&self, other: &RatFun2) -> Result<RatFun2> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFun2::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn recip(&self) -> Result<RatFun2> {
        RatFun2::one().div(self)
    }

    pub fn pow(&self, e: i32) -> Result<RatFun2> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        Ok((0..e.unsigned_abs()).fold(RatFun2::one(), |acc, _| acc.mul(&base)))
    }

    pub fn scale(&self, c: &Rational) -> RatFun2 {
        if c.is_zero() {
            return RatFun2::zero();
        }
        RatFun2 { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Partial derivative in the first (`second = false`) or second variable.
    pub fn derivative(&self, second: bool) -> RatFun2 {
        let num = self.num.derivative(second).mul(&self.den).sub(&self.num.mul(&self.den.derivative(second)));
        RatFun2::new(num, self.den.mul(&self.den)).expect("nonzero denominator")
    }

    /// Substitutes `(first, second) := (sub.0, sub.1)`.
    pub fn compose(&self, sub: (&RatFun2, &RatFun2)) -> Result<RatFun2> {
        let num = compose_poly(&self.num, sub);
        let den = compose_poly(&self.den, sub);
        if den.is_zero() {
            return Err(Error::DegenerateSubstitution);
        }
        num.div(&den)
    }

    /// Order of vanishing along `second = 0` (negative for a pole).
    pub fn order_in_second(&self) -> Option<i64> {
        let n = self.num.order_in_second()?;
        let d = self.den.order_in_second().expect("nonzero denominator");
        Some(n as i64 - d as i64)
    }

    /// Restriction to `second = 0`; a function of the first variable only.
    pub fn restrict_second_zero(&self) -> Result<RatFun2> {
        let den = self.den.at_second_zero();
        if den.is_zero() {
            return Err(Error::NonLogarithmicPole);
        }
        RatFun2::new(self.num.at_second_zero(), den)
    }

    /// Multiplies by the second variable.
    pub fn times_second(&self) -> RatFun2 {
        self.mul(&RatFun2::variable(true))
    }

    pub fn eval(&self, u: &Rational, v: &Rational) -> Result<Rational> {
        let d = self.den.eval(u, v);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(u, v) / d)
    }

    /// Text form `(num) / (den)` with the given variable names.
    pub fn render(&self, names: (&str, &str)) -> String {
        format!("({}) / ({})", self.num.render(names), self.den.render(names))
    }
}

fn compose_poly(p: &Poly2, sub: (&RatFun2, &RatFun2)) -> RatFun2 {
    let mut out = RatFun2::zero();
    for (&(i, j), c) in p.terms() {
        let term = sub.0.pow(i as i32).expect("nonnegative power").mul(&sub.1.pow(j as i32).expect("nonnegative power"));
        out = out.add(&term.scale(c));
    }
    out
}

impl fmt::Display for RatFun2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(("x", "y")))
    }
}

impl FromStr for RatFun2 {
    type Err = Error;

    /// Parses arithmetic in `+ - * / ^`, parentheses, integers, `p/q` via
    /// division, and variables `x`/`z` (first) and `y`/`w` (second).
    fn from_str(s: &str) -> Result<Self> {
        let tokens = tokenize(s)?;
        let mut parser = Parser { tokens, pos: 0 };
        let value = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(Error::Parse(format!("trailing input in {s:?}")));
        }
        Ok(value)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(Rational),
    Var(bool),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => {}
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..=i].iter().collect();
                out.push(Token::Num(parse_rational(&text).ok_or_else(|| Error::Parse(format!("bad number {text:?}")))?));
            }
            'x' | 'z' => out.push(Token::Var(false)),
            'y' | 'w' => out.push(Token::Var(true)),
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => out.push(Token::Op(c)),
            _ => return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<RatFun2> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFun2> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == '*' { acc.mul(&rhs) } else { acc.div(&rhs)? };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFun2> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFun2> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            let negative = self.peek_op() == Some('-');
            if negative {
                self.pos += 1;
            }
            let e = match self.tokens.get(self.pos) {
                Some(Token::Num(n)) if n.is_integer() => n.to_integer(),
                _ => return Err(Error::Parse("exponent must be an integer".into())),
            };
            self.pos += 1;
            let e: i32 = e.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
            return base.pow(if negative { -e } else { e });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFun2> {
        let token = self.tokens.get(self.pos).cloned().ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match token {
            Token::Num(n) => Ok(RatFun2::constant(n)),
            Token::Var(second) => Ok(RatFun2::variable(second)),
            Token::Op('(') => {
                let inner = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Token::Op(c) => Err(Error::Parse(format!("unexpected {c:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincomb::{int, rat};

    fn rf(s: &str) -> RatFun2 {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(rf("(1 - x*y) / (2 - 2*x*y)"), rf("1/2"));
        assert_eq!(rf("(x^2 - 1) / (x + 1)"), rf("x - 1"));
        // leading denominator coefficient under grlex is 1
        let f = rf("1 / (1 - x*y)");
        assert_eq!(f.denominator().leading().unwrap(), ((1, 1), &int(1)));
        assert_eq!(f.numerator().constant_value(), Some(int(-1)));
        assert_eq!(rf("z*w"), rf("x*y"));
    }

    #[test]
    fn text_roundtrip() {
        for s in ["(1 - y) / (1 - x*y)", "x*y*(1 - y)/((x - 1)*(x*y - 1)) + (y - 1)/(x - 1)", "3/7", "0", "x^-2 + y"] {
            let f = rf(s);
            let text = f.to_string();
            assert!(text.contains(" / "), "{text}");
            assert_eq!(rf(&text), f, "{text}");
            assert_eq!(rf(&f.render(("z", "w"))), f);
        }
        assert_eq!(rf("(1 - y) / (1 - x*y)").to_string(), "(y - 1) / (x*y - 1)");
    }

    #[test]
    fn parse_errors() {
        assert!("x +".parse::<RatFun2>().is_err());
        assert!("(x".parse::<RatFun2>().is_err());
        assert!("q".parse::<RatFun2>().is_err());
        assert_eq!("1/(x - x)".parse::<RatFun2>(), Err(Error::DivisionByZero));
        assert!("x^y".parse::<RatFun2>().is_err());
    }

    #[test]
    fn calculus() {
        let f = rf("1/(1 - x*y)");
        assert_eq!(f.derivative(false), rf("y/(1 - x*y)^2"));
        assert_eq!(rf("x^3*y").derivative(true), rf("x^3"));
        let g = f.compose((&rf("y"), &rf("x"))).unwrap();
        assert_eq!(g, f);
        assert!(rf("x - y").compose((&rf("y"), &rf("y"))).unwrap().is_zero());
        assert_eq!(rf("1/(x - y)").compose((&rf("y"), &rf("y"))).unwrap_err(), Error::DegenerateSubstitution);
    }

    #[test]
    fn restriction_and_order() {
        let f = rf("(x + y)/(y*(1 - x))");
        assert_eq!(f.order_in_second(), Some(-1));
        assert_eq!(f.times_second().restrict_second_zero().unwrap(), rf("x/(1 - x)"));
        assert_eq!(f.restrict_second_zero(), Err(Error::NonLogarithmicPole));
        assert_eq!(rf("y^2/(1+y)").order_in_second(), Some(2));
        assert_eq!(RatFun2::zero().order_in_second(), None);
        assert_eq!(rf("(x + y)/(2 - y)").eval(&int(1), &int(1)).unwrap(), int(2));
        assert_eq!(rf("x/3").eval(&rat(1, 2), &int(0)).unwrap(), rat(1, 6));
    }
}
