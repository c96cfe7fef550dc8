//! Double shuffle relations of a fixed weight, their matrix, and export.

use std::io::Write;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::lincomb::{format_rational, LinComb, Rational};
use crate::shuffle::double_shuffle_relation;
use crate::words::{admissible_indices, Index};

/// One relation `stuffle(a, b) - shuffle(a, b) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub a: Index,
    pub b: Index,
    pub terms: LinComb<Index>,
}

/// Ordered pairs of admissible indices with the given total weight; each
/// weight split in increasing order, then canonical order on `a`, then `b`.
pub fn admissible_pairs(weight: u32) -> Result<Vec<(Index, Index)>> {
    if weight < 4 {
        return Err(Error::WeightTooSmall(weight));
    }
    let mut pairs = Vec::new();
    for wa in 2..=weight - 2 {
        for a in admissible_indices(wa) {
            for b in admissible_indices(weight - wa) {
                pairs.push((a.clone(), b));
            }
        }
    }
    Ok(pairs)
}

/// All convergent double shuffle relations of the given weight. Pairs
/// `(a, b)` and `(b, a)` both appear.
pub fn relations_of_weight(weight: u32) -> Result<Vec<Relation>> {
    admissible_pairs(weight)?
        .into_par_iter()
        .map(|(a, b)| {
            let terms = double_shuffle_relation(&a, &b)?;
            Ok(Relation { a, b, terms })
        })
        .collect()
}

/// Relation rows over the admissible indices of one weight.
#[derive(Clone, Debug)]
pub struct RelationMatrix {
    pub weight: u32,
    pub columns: Vec<Index>,
    pub provenance: Vec<(Index, Index)>,
    pub matrix: RationalMatrix,
}

impl RelationMatrix {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

pub fn relation_matrix(weight: u32) -> Result<RelationMatrix> {
    let relations = relations_of_weight(weight)?;
    let columns = admissible_indices(weight);
    let rows = relations
        .iter()
        .map(|rel| columns.iter().map(|c| rel.terms.coeff(c)).collect())
        .collect();
    Ok(RelationMatrix {
        weight,
        provenance: relations.into_iter().map(|r| (r.a, r.b)).collect(),
        matrix: RationalMatrix::new(rows, columns.len()),
        columns,
    })
}

#[derive(Serialize)]
struct JsonTerm<'a> {
    index: &'a Index,
    num: i64,
    den: i64,
}

#[derive(Serialize)]
struct JsonRelation<'a> {
    a: &'a Index,
    b: &'a Index,
    terms: Vec<JsonTerm<'a>>,
}

fn small(n: &BigInt) -> Result<i64> {
    n.to_i64()
        .ok_or_else(|| Error::InvalidParameter(format!("coefficient {n} does not fit in 64 bits")))
}

/// One JSON object per line:
/// `{"a":[..],"b":[..],"terms":[{"index":[..],"num":n,"den":d}]}`,
/// terms in canonical index order.
pub fn write_jsonl<W: Write>(relations: &[Relation], mut out: W) -> Result<()> {
    for rel in relations {
        let terms = rel
            .terms
            .iter()
            .map(|(index, q)| Ok(JsonTerm { index, num: small(q.numer())?, den: small(q.denom())? }))
            .collect::<Result<Vec<_>>>()?;
        let line = serde_json::to_string(&JsonRelation { a: &rel.a, b: &rel.b, terms })
            .map_err(|e| Error::Parse(e.to_string()))?;
        writeln!(out, "{line}").map_err(io_err)?;
    }
    Ok(())
}

/// One CSV row per term: `a,b,index,coeff` with `coeff` written as `num/den`.
/// Indices use `;` between parts so fields need no quoting.
pub fn write_csv<W: Write>(relations: &[Relation], mut out: W) -> Result<()> {
    let join = |i: &Index| i.parts().iter().map(u32::to_string).collect::<Vec<_>>().join(";");
    writeln!(out, "a,b,index,coeff").map_err(io_err)?;
    for rel in relations {
        for (index, q) in rel.terms.iter() {
            writeln!(out, "{},{},{},{}", join(&rel.a), join(&rel.b), join(index), format_rational(q))
                .map_err(io_err)?;
        }
    }
    Ok(())
}

fn io_err(e: std::io::Error) -> Error {
    Error::InvalidParameter(format!("write failed: {e}"))
}

/// Reads back a JSONL export; used to check that exports are self-describing.
pub fn read_jsonl(text: &str) -> Result<Vec<Relation>> {
    #[derive(serde::Deserialize)]
    struct Term {
        index: Index,
        num: i64,
        den: i64,
    }
    #[derive(serde::Deserialize)]
    struct Rel {
        a: Index,
        b: Index,
        terms: Vec<Term>,
    }
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let rel: Rel = serde_json::from_str(line).map_err(|e| Error::Parse(e.to_string()))?;
            let mut terms = LinComb::zero();
            for t in rel.terms {
                if t.den == 0 {
                    return Err(Error::Parse("zero denominator".into()));
                }
                terms.add_term(t.index, Rational::new(t.num.into(), t.den.into()));
            }
            Ok(Relation { a: rel.a, b: rel.b, terms })
        })
        .collect()
}

/// True when every term of the relation is one of the listed columns.
pub fn is_supported_on(rel: &Relation, columns: &[Index]) -> bool {
    rel.terms.symbols().all(|s| columns.contains(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincomb::int;

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    #[test]
    fn weight_four_has_one_relation_of_rank_one() {
        let m = relation_matrix(4).unwrap();
        assert_eq!(m.columns.len(), 4);
        assert_eq!(m.matrix.nrows(), 1);
        assert_eq!(m.matrix.rows[0], vec![int(1), int(-4), int(0), int(0)]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn weight_five_pairs() {
        let pairs = admissible_pairs(5).unwrap();
        assert_eq!(
            pairs,
            vec![(idx("2"), idx("3")), (idx("2"), idx("1,2")), (idx("3"), idx("2")), (idx("1,2"), idx("2"))]
        );
        let m = relation_matrix(5).unwrap();
        assert_eq!(m.columns.len(), 8);
        // (a,b) and (b,a) give the same relation
        assert_eq!(m.matrix.rows[0], m.matrix.rows[2]);
        assert_eq!(m.matrix.rows[1], m.matrix.rows[3]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn small_weights_are_rejected() {
        assert_eq!(relations_of_weight(3), Err(Error::WeightTooSmall(3)));
        assert!(relation_matrix(2).is_err());
    }

    #[test]
    fn relations_live_on_admissible_columns() {
        for w in 4..=8 {
            let cols = admissible_indices(w);
            for rel in relations_of_weight(w).unwrap() {
                assert!(is_supported_on(&rel, &cols));
            }
        }
    }

    #[test]
    fn jsonl_format_and_roundtrip() {
        let rels = relations_of_weight(4).unwrap();
        let mut buf = Vec::new();
        write_jsonl(&rels, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "{\"a\":[2],\"b\":[2],\"terms\":[{\"index\":[4],\"num\":1,\"den\":1},{\"index\":[1,3],\"num\":-4,\"den\":1}]}\n"
        );
        assert_eq!(read_jsonl(&text).unwrap(), rels);
    }

    #[test]
    fn csv_format() {
        let rels = relations_of_weight(4).unwrap();
        let mut buf = Vec::new();
        write_csv(&rels, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a,b,index,coeff\n2,2,4,1/1\n2,2,1;3,-4/1\n");
    }

    #[test]
    fn generation_is_deterministic() {
        let render = || {
            let mut buf = Vec::new();
            write_jsonl(&relations_of_weight(7).unwrap(), &mut buf).unwrap();
            buf
        };
        assert_eq!(render(), render());
    }
}
