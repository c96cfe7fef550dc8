//! The five affine charts of the compactified moduli space of five marked
//! points, the order-five cycle acting on it, 1-forms, and residues along the
//! boundary divisors.
//!
//! Chart `U_i` has coordinates `(z_i, w_i)`, with `U_1` the base chart
//! `(x, y)`, and the boundary divisor `D_i` is `{w_i = 0}` in `U_i`:
//! `D_1 = {y = 0}`, `D_2 = {x = 1}`, `D_3` the exceptional curve over
//! `(1, 1)`, `D_4 = {y = 1}`, `D_5 = {x = 0}`. Neighbouring divisors meet at
//! `P_i = D_i ∩ D_{i+1}` (indices mod 5), so `P_5` is the origin.

mod chart_ode;
pub mod poly;
pub mod ratfun;

use std::fmt;

use crate::error::{Error, Result};

pub use chart_ode::{chart_ode_check, verify_chart_ode, ChartFamily, ChartOdeCase, ChartOdeCheck};
pub use ratfun::RatFun2;

pub const CHART_COUNT: u8 = 5;

fn parse(s: &str) -> RatFun2 {
    s.parse().expect("built-in expression parses")
}

fn check_chart(i: u8) -> Result<u8> {
    if (1..=CHART_COUNT).contains(&i) {
        Ok(i)
    } else {
        Err(Error::InvalidChart(i))
    }
}

/// Coordinates of one chart: the forward map expresses `(z, w)` in terms of
/// `(x, y)`, and the inverse expresses `(x, y)` in terms of `(z, w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub id: u8,
    pub forward: (RatFun2, RatFun2),
    pub inverse: (RatFun2, RatFun2),
}

pub fn chart(i: u8) -> Result<Chart> {
    let (forward, inverse) = match check_chart(i)? {
        1 => (("x", "y"), ("z", "w")),
        2 => (("y", "(1 - x)/(1 - x*y)"), ("(1 - w)/(1 - z*w)", "z")),
        3 => (("(1 - x)/(1 - x*y)", "1 - x*y"), ("1 - z*w", "(1 - w)/(1 - z*w)")),
        4 => (("1 - x*y", "(1 - y)/(1 - x*y)"), ("(1 - z)/(1 - z*w)", "1 - z*w")),
        _ => (("(1 - y)/(1 - x*y)", "x"), ("w", "(1 - z)/(1 - z*w)")),
    };
    Ok(Chart {
        id: i,
        forward: (parse(forward.0), parse(forward.1)),
        inverse: (parse(inverse.0), parse(inverse.1)),
    })
}

/// The cycle generator acting on functions of `(x, y)`:
/// `x ↦ (1 - y)/(1 - xy)`, `y ↦ x`.
pub fn c_action(f: &RatFun2) -> Result<RatFun2> {
    f.compose((&parse("(1 - y)/(1 - x*y)"), &parse("x")))
}

/// Boundary divisor index in `1..=5` for any integer label, so `D_0` is `D_5`.
pub fn divisor_index(label: i64) -> u8 {
    ((label - 1).rem_euclid(CHART_COUNT as i64) + 1) as u8
}

/// The two divisors through the point `P_i`.
pub fn point_divisors(i: i64) -> (u8, u8) {
    (divisor_index(i), divisor_index(i + 1))
}

/// `f dz + g dw` in the coordinates of one chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm {
    pub chart: u8,
    pub dz: RatFun2,
    pub dw: RatFun2,
}

impl OneForm {
    pub fn new(chart: u8, dz: RatFun2, dw: RatFun2) -> Result<Self> {
        Ok(OneForm { chart: check_chart(chart)?, dz, dw })
    }

    pub fn zero(chart: u8) -> Result<Self> {
        OneForm::new(chart, RatFun2::zero(), RatFun2::zero())
    }

    /// A form on the base chart from its `dx` and `dy` coefficients.
    pub fn base(dx: RatFun2, dy: RatFun2) -> Self {
        OneForm { chart: 1, dz: dx, dw: dy }
    }

    pub fn parse_base(dx: &str, dy: &str) -> Result<Self> {
        Ok(OneForm::base(dx.parse()?, dy.parse()?))
    }

    fn same_chart(&self, other: &OneForm) -> Result<()> {
        if self.chart != other.chart {
            return Err(Error::ChartMismatch { expected: self.chart, found: other.chart });
        }
        Ok(())
    }

    pub fn add(&self, other: &OneForm) -> Result<OneForm> {
        self.same_chart(other)?;
        Ok(OneForm { chart: self.chart, dz: self.dz.add(&other.dz), dw: self.dw.add(&other.dw) })
    }

    pub fn sub(&self, other: &OneForm) -> Result<OneForm> {
        self.same_chart(other)?;
        Ok(OneForm { chart: self.chart, dz: self.dz.sub(&other.dz), dw: self.dw.sub(&other.dw) })
    }

    pub fn scale(&self, f: &RatFun2) -> OneForm {
        OneForm { chart: self.chart, dz: self.dz.mul(f), dw: self.dw.mul(f) }
    }

    pub fn is_zero(&self) -> bool {
        self.dz.is_zero() && self.dw.is_zero()
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = if self.chart == 1 { ("x", "y") } else { ("z", "w") };
        write!(
            f,
            "[U{}] {} d{} + {} d{}",
            self.chart,
            self.dz.render(names),
            names.0,
            self.dw.render(names),
            names.1
        )
    }
}

/// Rewrites `ω` in the coordinates of chart `target` by substitution and the
/// chain rule.
pub fn transition_form(omega: &OneForm, target: u8) -> Result<OneForm> {
    let source = chart(omega.chart)?;
    let dest = chart(check_chart(target)?)?;
    // source coordinates as functions of the target coordinates
    let z = source.forward.0.compose((&dest.inverse.0, &dest.inverse.1))?;
    let w = source.forward.1.compose((&dest.inverse.0, &dest.inverse.1))?;
    let f = omega.dz.compose((&z, &w))?;
    let g = omega.dw.compose((&z, &w))?;
    let dz = f.mul(&z.derivative(false)).add(&g.mul(&w.derivative(false)));
    let dw = f.mul(&z.derivative(true)).add(&g.mul(&w.derivative(true)));
    Ok(OneForm { chart: target, dz, dw })
}

/// Pulls a base-chart form back to chart `target`.
pub fn pullback_form(omega: &OneForm, target: u8) -> Result<OneForm> {
    if omega.chart != 1 {
        return Err(Error::ChartMismatch { expected: 1, found: omega.chart });
    }
    transition_form(omega, target)
}

/// Decomposition of a form with at most a logarithmic pole along `w = 0` as
/// `ω' + h dlog(w)`, restricted to the divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residue {
    /// Coefficient of `dz̄` in `ω'|_{w=0}`; a function of `z̄` alone.
    pub regular: RatFun2,
    /// `h|_{w=0}`.
    pub dlog: RatFun2,
}

/// Residue along the divisor `{w = 0}` of the form's own chart.
pub fn residue_along(omega: &OneForm) -> Result<Residue> {
    if omega.dz.order_in_second().is_some_and(|o| o < 0) {
        return Err(Error::NonLogarithmicPole);
    }
    let h = omega.dw.times_second();
    if h.order_in_second().is_some_and(|o| o < 0) {
        return Err(Error::NonLogarithmicPole);
    }
    Ok(Residue { regular: omega.dz.restrict_second_zero()?, dlog: h.restrict_second_zero()? })
}

/// The five logarithmic forms on the base chart, with display names.
pub fn standard_forms() -> Vec<(&'static str, OneForm)> {
    let form = |dx: &str, dy: &str| OneForm::parse_base(dx, dy).expect("built-in form parses");
    vec![
        ("dx/x", form("1/x", "0")),
        ("dx/(1-x)", form("1/(1 - x)", "0")),
        ("dy/y", form("0", "1/y")),
        ("dy/(1-y)", form("0", "1/(1 - y)")),
        ("(x dy + y dx)/(1-xy)", form("y/(1 - x*y)", "x/(1 - x*y)")),
    ]
}
