use dshuffle::relations::{read_jsonl, relation_matrix, relations_of_weight, write_csv, write_jsonl};
use dshuffle::words::admissible_indices;

#[test]
fn jsonl_round_trips() {
    for w in 4..=7 {
        let rels = relations_of_weight(w).unwrap();
        let mut buf = Vec::new();
        write_jsonl(&rels, &mut buf).unwrap();
        assert_eq!(read_jsonl(std::str::from_utf8(&buf).unwrap()).unwrap(), rels, "weight {w}");
    }
}

#[test]
fn csv_has_one_row_per_term() {
    let rels = relations_of_weight(6).unwrap();
    let mut buf = Vec::new();
    write_csv(&rels, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let terms: usize = rels.iter().map(|r| r.terms.len()).sum();
    assert_eq!(text.lines().count(), terms + 1);
    assert_eq!(text.lines().next(), Some("a,b,index,coeff"));
}

#[test]
fn matrix_rows_match_relations() {
    for w in 4..=7 {
        let m = relation_matrix(w).unwrap();
        assert_eq!(m.columns, admissible_indices(w));
        assert_eq!(m.columns.len(), 1 << (w - 2));
        assert_eq!(m.matrix.nrows(), m.provenance.len());
        assert!(m.rank() <= m.matrix.nrows().min(m.columns.len()));
    }
    assert_eq!(relation_matrix(4).unwrap().rank(), 1);
}
