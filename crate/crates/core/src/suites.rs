//! Exhaustive verification sweeps over bounded families of indices. Each
//! check reports how many items passed and the first counterexample.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::charts::{
    c_action, chart, chart_ode_check, pullback_form, residue_along, standard_forms, verify_chart_ode,
    ChartOdeCase, OneForm, RatFun2, CHART_COUNT,
};
use crate::error::{Error, Result};
use crate::lincomb::{format_rational, int, Rational};
use crate::mpl::{ode_difference, shuffle_series_difference, stuffle_series_difference, MplFunction, OdeCase};
use crate::numeric::{mzv_truncated, mzv_truncated_prefix, verify_double_shuffle_numeric};
use crate::padic::{point, stuffle_padic_defect};
use crate::relations::admissible_pairs;
use crate::series::Var;
use crate::shuffle::{enumerate_quasi_shuffles, enumerate_shuffles, stuffle};
use crate::words::{index_of_word, indices_up_to, word_of_index, Index};

/// Outcome of one family of checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: usize,
    pub total: usize,
    pub first_failure: Option<String>,
}

impl Check {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }

    /// Collects per-item outcomes, keeping the first failure in item order.
    fn from_outcomes(name: impl Into<String>, outcomes: Vec<std::result::Result<(), String>>) -> Check {
        let total = outcomes.len();
        let passed = outcomes.iter().filter(|o| o.is_ok()).count();
        let first_failure = outcomes.into_iter().find_map(|o| o.err());
        Check { name: name.into(), passed, total, first_failure }
    }

    fn single(name: impl Into<String>, outcome: std::result::Result<(), String>) -> Check {
        Check::from_outcomes(name, vec![outcome])
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.ok() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({}/{})", self.name, self.passed, self.total)?;
        if let Some(detail) = &self.first_failure {
            write!(f, ": {detail}")?;
        }
        Ok(())
    }
}

fn pairs_up_to(max_weight: u32) -> Vec<(Index, Index)> {
    let all = indices_up_to(max_weight);
    let mut out = Vec::new();
    for a in &all {
        for b in &all {
            if a.weight() + b.weight() <= max_weight {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

fn admissible_pairs_up_to(max_weight: u32) -> Vec<(Index, Index)> {
    pairs_up_to(max_weight).into_iter().filter(|(a, b)| a.is_admissible() && b.is_admissible()).collect()
}

fn err_text(e: Error) -> String {
    e.to_string()
}

fn r(q: &Rational) -> String {
    format_rational(q)
}

/// `Li_a(x) Li_b(y) = Σ_σ Li^σ_{a,b}(x, y)` for all pairs up to `max_weight`.
pub fn stuffle_series(max_weight: u32, cap: u32) -> Vec<Check> {
    let outcomes = pairs_up_to(max_weight)
        .par_iter()
        .map(|(a, b)| match stuffle_series_difference(a, b, cap) {
            Ok(None) => Ok(()),
            Ok(Some(((i, j), l, rr))) => Err(format!("a={a:?} b={b:?} x^{i} y^{j}: {} != {}", r(&l), r(&rr))),
            Err(e) => Err(err_text(e)),
        })
        .collect();
    vec![Check::from_outcomes(format!("stuffle series, weight <= {max_weight}, cap {cap}"), outcomes)]
}

/// Shuffle identity of one-variable series for admissible pairs.
pub fn shuffle_series(max_weight: u32, cap: u32) -> Vec<Check> {
    let run = |pairs: Vec<(Index, Index)>| -> Vec<std::result::Result<(), String>> {
        pairs
            .par_iter()
            .map(|(a, b)| {
                let (w, w2) = (word_of_index(a), word_of_index(b));
                match shuffle_series_difference(&w, &w2, cap) {
                    Ok(None) => Ok(()),
                    Ok(Some((n, l, rr))) => Err(format!("{w} x {w2} t^{n}: {} != {}", r(&l), r(&rr))),
                    Err(e) => Err(err_text(e)),
                }
            })
            .collect()
    };
    let pinned = vec![("2".parse().expect("index"), "3".parse().expect("index"))];
    vec![
        Check::from_outcomes(format!("shuffle series, admissible, weight <= {max_weight}, cap {cap}"), run(admissible_pairs_up_to(max_weight))),
        Check::from_outcomes("shuffle series for (2) x (3)", run(pinned)),
    ]
}

/// Every functions of weight at most `max_weight` in all three families.
fn functions_up_to(max_weight: u32) -> Vec<MplFunction> {
    let all = indices_up_to(max_weight);
    let mut out: Vec<MplFunction> =
        pairs_up_to(max_weight).into_iter().map(|(a, b)| MplFunction::TwoVariable { a, b }).collect();
    out.extend(all.iter().map(|c| MplFunction::Product { c: c.clone() }));
    out.extend(all.into_iter().map(|c| MplFunction::OneVariable { c }));
    out
}

/// Differential equations of the three families, both variables.
pub fn ode(max_weight: u32, cap: u32) -> Vec<Check> {
    let items: Vec<(MplFunction, Var)> =
        functions_up_to(max_weight).into_iter().flat_map(|f| [(f.clone(), Var::X), (f, Var::Y)]).collect();
    let outcomes = items
        .par_iter()
        .map(|(f, var)| {
            let case = OdeCase::classify(f, *var);
            match ode_difference(case, f, cap) {
                Ok(None) => Ok(()),
                Ok(Some(((i, j), l, rr))) => Err(format!("{case} for {f} at x^{i} y^{j}: {} != {}", r(&l), r(&rr))),
                Err(e) => Err(err_text(e)),
            }
        })
        .collect();
    let seen: BTreeSet<String> = items.iter().map(|(f, v)| OdeCase::classify(f, *v).to_string()).collect();
    let every: BTreeSet<String> = OdeCase::all().iter().map(ToString::to_string).collect();
    let missing: Vec<_> = every.difference(&seen).cloned().collect();
    vec![
        Check::from_outcomes(format!("differential equations, weight <= {max_weight}, cap {cap}"), outcomes),
        Check::single(
            "every branch exercised",
            if missing.is_empty() { Ok(()) } else { Err(format!("no function for {}", missing.join(", "))) },
        ),
    ]
}

fn rf(s: &str) -> RatFun2 {
    s.parse().expect("built-in expression parses")
}

fn expect_eq(what: &str, got: &RatFun2, want: &RatFun2) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {} want {}", got.render(("z", "w")), want.render(("z", "w"))))
    }
}

/// Charts, the cycle, pullback formulas, residues and the chart equations.
pub fn charts(max_weight: u32) -> Vec<Check> {
    let inverses = (1..=CHART_COUNT)
        .map(|i| {
            let c = chart(i).map_err(err_text)?;
            let back0 = c.forward.0.compose((&c.inverse.0, &c.inverse.1)).map_err(err_text)?;
            let back1 = c.forward.1.compose((&c.inverse.0, &c.inverse.1)).map_err(err_text)?;
            expect_eq(&format!("U{i} z"), &back0, &rf("z"))?;
            expect_eq(&format!("U{i} w"), &back1, &rf("w"))?;
            let fwd0 = c.inverse.0.compose((&c.forward.0, &c.forward.1)).map_err(err_text)?;
            let fwd1 = c.inverse.1.compose((&c.forward.0, &c.forward.1)).map_err(err_text)?;
            expect_eq(&format!("U{i} x"), &fwd0, &rf("x"))?;
            expect_eq(&format!("U{i} y"), &fwd1, &rf("y"))
        })
        .collect();

    let order = ["x", "y"]
        .iter()
        .map(|g| {
            let start = rf(g);
            let mut f = start.clone();
            for step in 1..=5 {
                f = c_action(&f).map_err(err_text)?;
                if (f == start) != (step == 5) {
                    return Err(format!("c^{step}({g}) = {f}"));
                }
            }
            Ok(())
        })
        .collect();

    let dx = OneForm::parse_base("1", "0").expect("form");
    let dy = OneForm::parse_base("0", "1").expect("form");
    let displays = [
        (&dx, 2, "w*(1 - w)/(z*w - 1)^2", "(z - 1)/(z*w - 1)^2"),
        (&dy, 2, "1", "0"),
        (&dx, 3, "-w", "-z"),
        (&dy, 3, "w*(1 - w)/(z*w - 1)^2", "(z - 1)/(z*w - 1)^2"),
    ];
    let pullbacks = displays
        .iter()
        .map(|(form, target, fz, fw)| {
            let got = pullback_form(form, *target).map_err(err_text)?;
            expect_eq(&format!("U{target} dz"), &got.dz, &rf(fz))?;
            expect_eq(&format!("U{target} dw"), &got.dw, &rf(fw))
        })
        .collect();

    let mut logarithmic = Vec::new();
    for (name, form) in standard_forms() {
        for i in 1..=CHART_COUNT {
            logarithmic.push(
                pullback_form(&form, i)
                    .and_then(|local| residue_along(&local))
                    .map(|_| ())
                    .map_err(|e| format!("{name} on D{i}: {e}")),
            );
        }
    }

    let cases = ChartOdeCase::all()
        .iter()
        .map(|case| match verify_chart_ode(*case) {
            Ok(true) => Ok(()),
            Ok(false) => Err(format!("{case:?}")),
            Err(e) => Err(format!("{case:?}: {e}")),
        })
        .collect();

    let covered: Vec<(u8, MplFunction)> = [2u8, 3]
        .iter()
        .flat_map(|&ch| {
            functions_up_to(max_weight)
                .into_iter()
                .filter(move |f| ChartOdeCase::for_function(ch, f).is_some())
                .map(move |f| (ch, f))
        })
        .collect();
    let sweep = covered
        .par_iter()
        .map(|(ch, f)| match chart_ode_check(*ch, f) {
            Ok(c) if c.passed() => Ok(()),
            Ok(c) => Err(format!("{f} on U{ch}: {c:?}")),
            Err(e) => Err(format!("{f} on U{ch}: {e}")),
        })
        .collect();

    vec![
        Check::from_outcomes("chart inverses", inverses),
        Check::from_outcomes("cycle has order five", order),
        Check::from_outcomes("dx, dy pullbacks to U2 and U3", pullbacks),
        Check::from_outcomes("five forms logarithmic on D1..D5", logarithmic),
        Check::from_outcomes("chart equations, all displayed cases", cases),
        Check::from_outcomes(format!("chart equations, weight <= {max_weight}"), sweep),
    ]
}

/// Stuffle identity at p-adic points `x, y ∈ {p, 2p, p²}`.
pub fn padic(max_weight: u32, primes: &[u64], prec: i64) -> Vec<Check> {
    let mut items = Vec::new();
    for &p in primes {
        let pts = [p as i64, 2 * p as i64, (p * p) as i64];
        for (a, b) in pairs_up_to(max_weight) {
            for &x in &pts {
                for &y in &pts {
                    items.push((p, a.clone(), b.clone(), x, y));
                }
            }
        }
    }
    let outcomes = items
        .par_iter()
        .map(|(p, a, b, x, y)| {
            let w = a.weight() + b.weight();
            let run = || -> Result<_> {
                let xp = point(&int(*x), *p, w, prec)?;
                let yp = point(&int(*y), *p, w, prec)?;
                stuffle_padic_defect(a, b, &xp, &yp, prec)
            };
            match run() {
                Ok(d) if d.is_zero() => Ok(()),
                Ok(d) => Err(format!("p={p} a={a:?} b={b:?} x={x} y={y}: defect {d}")),
                Err(e) => Err(format!("p={p} a={a:?} b={b:?} x={x} y={y}: {e}")),
            }
        })
        .collect();
    let label = primes.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    vec![Check::from_outcomes(format!("p-adic stuffle, p in {{{label}}}, weight <= {max_weight}, {prec} digits"), outcomes)]
}

/// Exact box decomposition of truncated sums for every `N ≤ n_max`.
pub fn truncated(max_weight: u32, n_max: u32) -> Vec<Check> {
    let outcomes = pairs_up_to(max_weight)
        .par_iter()
        .map(|(a, b)| {
            let pa = mzv_truncated_prefix(a, n_max);
            let pb = mzv_truncated_prefix(b, n_max);
            let expansion = stuffle(a, b).map_err(err_text)?;
            let parts: Vec<(Rational, Vec<Rational>)> =
                expansion.iter().map(|(idx, c)| (c.clone(), mzv_truncated_prefix(idx, n_max))).collect();
            for n in 1..=n_max as usize {
                let lhs = &pa[n] * &pb[n];
                let rhs: Rational = parts.iter().map(|(c, pre)| c * &pre[n]).sum();
                if lhs != rhs {
                    return Err(format!("a={a:?} b={b:?} N={n}: {} != {}", r(&lhs), r(&rhs)));
                }
            }
            Ok(())
        })
        .collect();
    let one: Index = "1".parse().expect("index");
    let worked = {
        let lhs = mzv_truncated(&one, 2) * mzv_truncated(&one, 2);
        let rhs: Rational = stuffle(&one, &one).expect("arity").iter().map(|(i, c)| c * mzv_truncated(i, 2)).sum();
        if lhs == Rational::new(9.into(), 4.into()) && rhs == lhs {
            Ok(())
        } else {
            Err(format!("{} vs {}", r(&lhs), r(&rhs)))
        }
    };
    vec![
        Check::from_outcomes(format!("truncated stuffle, weight <= {max_weight}, N <= {n_max}"), outcomes),
        Check::single("N=2, a=b=(1) gives 9/4", worked),
    ]
}

/// Floating evaluation of every double shuffle relation of weight 4..=max.
pub fn numeric(max_weight: u32, n: u32, tol: f64) -> Vec<Check> {
    let pairs: Vec<(Index, Index)> =
        (4..=max_weight).flat_map(|w| admissible_pairs(w).unwrap_or_default()).collect();
    let outcomes = pairs
        .par_iter()
        .map(|(a, b)| match verify_double_shuffle_numeric(a, b, n, tol) {
            Ok(true) => Ok(()),
            Ok(false) => Err(format!("a={a:?} b={b:?}")),
            Err(e) => Err(err_text(e)),
        })
        .collect();
    vec![Check::from_outcomes(format!("numeric double shuffle, weight <= {max_weight}, N={n}, tol {tol:e}"), outcomes)]
}

/// Shuffle and quasi-shuffle counts for `k, l ≤ max_len`, and the
/// word/index round trip up to `max_weight`.
pub fn counts(max_len: usize, max_weight: u32) -> Vec<Check> {
    let binom = |n: usize, k: usize| (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128);
    let mut shuffles = Vec::new();
    let mut quasi = Vec::new();
    let table: Vec<Vec<usize>> =
        (0..=max_len).map(|k| (0..=max_len).map(|l| enumerate_quasi_shuffles(k, l).len()).collect()).collect();
    for k in 0..=max_len {
        for l in 0..=max_len {
            let got = enumerate_shuffles(k, l).len() as u128;
            shuffles.push(if got == binom(k + l, k) { Ok(()) } else { Err(format!("|Sh({k},{l})| = {got}")) });
        }
    }
    for k in 1..=max_len {
        for l in 1..=max_len {
            let want = table[k - 1][l] + table[k][l - 1] + table[k - 1][l - 1];
            quasi.push(if table[k][l] == want { Ok(()) } else { Err(format!("N({k},{l}) = {} != {want}", table[k][l])) });
        }
    }
    let roundtrip = indices_up_to(max_weight)
        .par_iter()
        .map(|c| match index_of_word(&word_of_index(c)) {
            Ok(back) if &back == c => Ok(()),
            Ok(back) => Err(format!("{c:?} came back as {back:?}")),
            Err(e) => Err(err_text(e)),
        })
        .collect();
    vec![
        Check::from_outcomes(format!("shuffle counts, k,l <= {max_len}"), shuffles),
        Check::from_outcomes(format!("quasi-shuffle recurrence, k,l <= {max_len}"), quasi),
        Check::from_outcomes(format!("word/index round trip, weight <= {max_weight}"), roundtrip),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_ok(checks: &[Check]) -> bool {
        checks.iter().all(Check::ok)
    }

    #[test]
    fn small_sweeps_pass() {
        assert!(all_ok(&stuffle_series(3, 10)));
        assert!(all_ok(&shuffle_series(5, 12)));
        let o = ode(4, 8);
        assert!(all_ok(&o), "{o:?}");
        assert!(all_ok(&truncated(4, 8)));
        assert!(all_ok(&padic(2, &[3], 6)));
        assert!(all_ok(&numeric(5, 10_000, 1e-3)));
        assert!(all_ok(&counts(4, 8)));
    }

    #[test]
    fn check_rendering() {
        let c = Check::from_outcomes("demo", vec![Ok(()), Err("bad".into()), Err("worse".into())]);
        assert!(!c.ok());
        assert_eq!(c.to_string(), "FAIL demo (1/3): bad");
        assert_eq!(Check::single("one", Ok(())).to_string(), "PASS one (1/1)");
    }

    #[test]
    fn pair_enumeration() {
        assert_eq!(pairs_up_to(2).len(), 1);
        // (s - 1) 2^(s - 2) pairs of total weight s
        assert_eq!(pairs_up_to(5).len(), 1 + 4 + 12 + 32);
        assert_eq!(admissible_pairs_up_to(4).len(), 1);
    }
}
