//! The polylogarithm differential equations rewritten in the charts adjacent
//! to `D_2` and `D_3`, and their residues along those divisors.

use std::collections::BTreeMap;

use super::{pullback_form, residue_along, OneForm, RatFun2};
use crate::error::{Error, Result};
use crate::mpl::{ode_rhs, MplFunction, OdeCase, OdeCoefficient, TailCase};
use crate::series::Var;
use crate::words::Index;

/// Which family of function a chart case is about.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ChartFamily {
    /// `Li_{a,b}(x, y)` with `a` admissible; the tail case refers to `b`.
    TwoVariable,
    /// `Li_c(xy)`
    Product,
    /// `Li_c(y)`
    OneVariable,
}

/// One displayed case of the chart equations: on `U_2` every tail case of the
/// three families; on `U_3` only the admissible ones.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ChartOdeCase {
    pub chart: u8,
    pub family: ChartFamily,
    pub tail: TailCase,
}

impl ChartOdeCase {
    pub fn all() -> Vec<ChartOdeCase> {
        let families = [ChartFamily::TwoVariable, ChartFamily::Product, ChartFamily::OneVariable];
        let mut out = Vec::new();
        for family in families {
            for tail in TailCase::ALL {
                out.push(ChartOdeCase { chart: 2, family, tail });
            }
        }
        for family in families {
            out.push(ChartOdeCase { chart: 3, family, tail: TailCase::LastAboveOne });
        }
        out
    }

    /// The case covering `func` on `chart`, if there is one.
    pub fn for_function(chart: u8, func: &MplFunction) -> Option<ChartOdeCase> {
        let (family, tail, admissible_a) = match func {
            MplFunction::TwoVariable { a, b } => (ChartFamily::TwoVariable, TailCase::of(b), a.is_admissible()),
            MplFunction::Product { c } => (ChartFamily::Product, TailCase::of(c), true),
            MplFunction::OneVariable { c } => (ChartFamily::OneVariable, TailCase::of(c), true),
        };
        let case = ChartOdeCase { chart, family, tail };
        (admissible_a && ChartOdeCase::all().contains(&case)).then_some(case)
    }

    /// A small function falling under this case.
    pub fn representative(&self) -> MplFunction {
        let c = match self.tail {
            TailCase::LastAboveOne => "2",
            TailCase::LastOneDeep => "2,1",
            TailCase::LastOneSingle => "1",
        };
        let c: Index = c.parse().expect("valid index");
        match self.family {
            ChartFamily::TwoVariable => MplFunction::TwoVariable { a: Index::single(2).expect("valid"), b: c },
            ChartFamily::Product => MplFunction::Product { c },
            ChartFamily::OneVariable => MplFunction::OneVariable { c },
        }
    }
}

/// The expected `dz` coefficient and `dz̄` residue for each child function.
fn expected(case: ChartOdeCase, func: &MplFunction) -> Vec<(Option<MplFunction>, &'static str, &'static str)> {
    use ChartFamily::*;
    use TailCase::*;
    let lowered = |i: &Index| i.lower_last().expect("last part above one");
    let dropped = |i: &Index| i.drop_last().expect("depth above one");
    let product_one = "z*w*(1 - w)/((z - 1)*(z*w - 1)) + (w - 1)/(z - 1)";
    match (case.chart, case.family, case.tail, func) {
        (2, TwoVariable, tail, MplFunction::TwoVariable { a, b }) => {
            let from_a = MplFunction::TwoVariable { a: lowered(a), b: b.clone() };
            let from_b = match tail {
                LastAboveOne => MplFunction::TwoVariable { a: a.clone(), b: lowered(b) },
                LastOneDeep => MplFunction::TwoVariable { a: a.clone(), b: dropped(b) },
                LastOneSingle => MplFunction::Product { c: a.clone() },
            };
            let b_coeff = if tail == LastAboveOne { "1/z" } else { "1/(1 - z)" };
            vec![(Some(from_a), "w/(1 - z*w)", "0"), (Some(from_b), b_coeff, b_coeff)]
        }
        (2, Product, tail, MplFunction::Product { c }) => match tail {
            LastAboveOne => vec![(Some(MplFunction::Product { c: lowered(c) }), "w/(1 - z*w) + 1/z", "1/z")],
            LastOneDeep => vec![(Some(MplFunction::Product { c: dropped(c) }), product_one, "1/(1 - z)")],
            LastOneSingle => vec![(None, product_one, "1/(1 - z)")],
        },
        (2, OneVariable, tail, MplFunction::OneVariable { c }) => match tail {
            LastAboveOne => vec![(Some(MplFunction::OneVariable { c: lowered(c) }), "1/z", "1/z")],
            LastOneDeep => vec![(Some(MplFunction::OneVariable { c: dropped(c) }), "1/(1 - z)", "1/(1 - z)")],
            LastOneSingle => vec![(None, "1/(1 - z)", "1/(1 - z)")],
        },
        (3, TwoVariable, _, MplFunction::TwoVariable { a, b }) => vec![
            (Some(MplFunction::TwoVariable { a: lowered(a), b: b.clone() }), "w/(z*w - 1)", "0"),
            (Some(MplFunction::TwoVariable { a: a.clone(), b: lowered(b) }), "w/(1 - z*w)", "0"),
        ],
        (3, Product, _, MplFunction::Product { c }) => {
            vec![(Some(MplFunction::Product { c: lowered(c) }), "0", "0")]
        }
        (3, OneVariable, _, MplFunction::OneVariable { c }) => {
            vec![(Some(MplFunction::OneVariable { c: lowered(c) }), "w/(1 - z*w)", "0")]
        }
        _ => unreachable!("case was derived from the function"),
    }
}

fn coefficient_function(c: OdeCoefficient) -> RatFun2 {
    let text = match c {
        OdeCoefficient::InvX => "1/x",
        OdeCoefficient::InvOneMinusX => "1/(1 - x)",
        OdeCoefficient::InvY => "1/y",
        OdeCoefficient::InvOneMinusY => "1/(1 - y)",
        OdeCoefficient::YOverOneMinusXY => "y/(1 - x*y)",
        OdeCoefficient::XOverOneMinusXY => "x/(1 - x*y)",
    };
    text.parse().expect("built-in expression parses")
}

/// The differential of `func`, grouped by child function: the 1-form on the
/// base chart multiplying each child (`None` for the constant 1).
pub fn differential_by_child(func: &MplFunction) -> Result<BTreeMap<Option<MplFunction>, OneForm>> {
    let mut out: BTreeMap<Option<MplFunction>, OneForm> = BTreeMap::new();
    for var in [Var::X, Var::Y] {
        for term in ode_rhs(OdeCase::classify(func, var), func)? {
            let mut coeff = coefficient_function(term.coefficient);
            if term.sign < 0 {
                coeff = coeff.neg();
            }
            let form = match var {
                Var::X => OneForm::base(coeff, RatFun2::zero()),
                Var::Y => OneForm::base(RatFun2::zero(), coeff),
            };
            let slot = out.entry(term.child).or_insert_with(|| OneForm::base(RatFun2::zero(), RatFun2::zero()));
            *slot = slot.add(&form)?;
        }
    }
    Ok(out)
}

/// Outcome of checking one function against its chart case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartOdeCheck {
    pub case: ChartOdeCase,
    pub function: MplFunction,
    /// Every child's `dz` coefficient matched.
    pub coefficients_ok: bool,
    /// Restricted `dz̄` coefficients matched.
    pub residues_ok: bool,
    /// Every `dlog(w̄)` coefficient vanished.
    pub dlog_vanishes: bool,
}

impl ChartOdeCheck {
    pub fn passed(&self) -> bool {
        self.coefficients_ok && self.residues_ok && self.dlog_vanishes
    }
}

/// Pulls the differential of `func` back to `chart` and compares every
/// coefficient and residue with the expected table.
pub fn chart_ode_check(chart: u8, func: &MplFunction) -> Result<ChartOdeCheck> {
    let case = ChartOdeCase::for_function(chart, func)
        .ok_or_else(|| Error::InvalidParameter(format!("no chart {chart} case covers {func}")))?;
    let computed = differential_by_child(func)?;
    let want = expected(case, func);
    let mut coefficients_ok = true;
    let mut residues_ok = true;
    let mut dlog_vanishes = true;
    // every computed child must be expected or have a vanishing coefficient
    for (child, form) in &computed {
        if !want.iter().any(|(c, _, _)| c == child) {
            let local = pullback_form(form, chart)?;
            coefficients_ok &= local.dz.is_zero();
        }
    }
    for (child, coeff, residue) in want {
        let form = match computed.get(&child) {
            Some(f) => pullback_form(f, chart)?,
            None => OneForm::zero(chart)?,
        };
        coefficients_ok &= form.dz == coeff.parse::<RatFun2>()?;
        let res = residue_along(&form)?;
        residues_ok &= res.regular == residue.parse::<RatFun2>()?;
        dlog_vanishes &= res.dlog.is_zero();
    }
    Ok(ChartOdeCheck { case, function: func.clone(), coefficients_ok, residues_ok, dlog_vanishes })
}

/// Checks one chart case on its representative function.
pub fn verify_chart_ode(case: ChartOdeCase) -> Result<bool> {
    Ok(chart_ode_check(case.chart, &case.representative())?.passed())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charts::transition_form;
    use crate::words::indices_up_to;

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    #[test]
    fn twelve_cases_all_hold() {
        let cases = ChartOdeCase::all();
        assert_eq!(cases.len(), 12);
        for case in cases {
            assert!(verify_chart_ode(case).unwrap(), "{case:?}");
        }
    }

    #[test]
    fn spec_examples() {
        let f = MplFunction::TwoVariable { a: idx("2"), b: idx("3") };
        let check = chart_ode_check(2, &f).unwrap();
        assert!(check.passed());
        let g = MplFunction::Product { c: idx("1,3") };
        assert!(chart_ode_check(3, &g).unwrap().passed());
        let h = MplFunction::Product { c: idx("1") };
        let check = chart_ode_check(2, &h).unwrap();
        assert_eq!(check.case.tail, TailCase::LastOneSingle);
        assert!(check.passed());
    }

    #[test]
    fn every_small_function_passes() {
        let all = indices_up_to(4);
        for chart in [2, 3] {
            let mut checked = 0;
            for c in &all {
                for func in [MplFunction::Product { c: c.clone() }, MplFunction::OneVariable { c: c.clone() }] {
                    if ChartOdeCase::for_function(chart, &func).is_some() {
                        assert!(chart_ode_check(chart, &func).unwrap().passed(), "{func} on U{chart}");
                        checked += 1;
                    }
                }
                for b in &all {
                    let func = MplFunction::TwoVariable { a: c.clone(), b: b.clone() };
                    if ChartOdeCase::for_function(chart, &func).is_some() {
                        assert!(chart_ode_check(chart, &func).unwrap().passed(), "{func} on U{chart}");
                        checked += 1;
                    }
                }
            }
            assert!(checked > 20);
        }
    }

    #[test]
    fn uncovered_functions_are_rejected() {
        let f = MplFunction::TwoVariable { a: idx("1"), b: idx("2") };
        assert!(chart_ode_check(2, &f).is_err());
        let g = MplFunction::Product { c: idx("2,1") };
        assert!(chart_ode_check(3, &g).is_err());
        assert!(chart_ode_check(4, &MplFunction::Product { c: idx("2") }).is_err());
    }

    #[test]
    fn non_admissible_product_has_a_log_pole_on_the_exceptional_divisor() {
        let f = MplFunction::Product { c: idx("1") };
        let parts = differential_by_child(&f).unwrap();
        let form = pullback_form(&parts[&None], 3).unwrap();
        let r = residue_along(&form).unwrap();
        assert_eq!(r.dlog, "-1".parse().unwrap());
        assert!(r.regular.is_zero());
    }

    #[test]
    fn wrong_tables_are_detected() {
        // the chart 2 coefficient fails on chart 3
        let f = MplFunction::OneVariable { c: idx("3") };
        let parts = differential_by_child(&f).unwrap();
        let child = Some(MplFunction::OneVariable { c: idx("2") });
        let on3 = pullback_form(&parts[&child], 3).unwrap();
        assert_ne!(on3.dz, "1/z".parse().unwrap());
        // and chart transitions agree with direct pullback
        let on2 = pullback_form(&parts[&child], 2).unwrap();
        assert_eq!(transition_form(&on2, 3).unwrap(), on3);
    }
}
