//! Shuffle product on words, stuffle (quasi-shuffle) product on indices,
//! and the double shuffle relation that equates the two expansions.

use num_traits::One;

use crate::error::{Error, Result};
use crate::lincomb::{LinComb, Rational};
use crate::words::{index_of_word, word_of_index, Index, Word};

/// A shuffle `τ ∈ Sh(k, l)`: a permutation of `0..k+l` increasing on
/// `0..k` and on `k..k+l`. `image[i]` is the slot receiving letter `i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Shuffle {
    k: usize,
    image: Vec<usize>,
}

impl Shuffle {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.image.len() - self.k
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `τ(W, W')`: the word `Z` with `Z[τ(i)] = X[i]` where `X = W W'`.
    pub fn apply(&self, w: &Word, w2: &Word) -> Word {
        assert_eq!(w.len(), self.k, "first word length must match k");
        assert_eq!(w2.len(), self.l(), "second word length must match l");
        let mut z = vec![None; self.image.len()];
        for (i, &letter) in w.letters().iter().chain(w2.letters()).enumerate() {
            z[self.image[i]] = Some(letter);
        }
        Word::new(z.into_iter().map(|l| l.expect("shuffle is a bijection")).collect())
    }
}

/// All of `Sh(k, l)`, `binomial(k + l, k)` of them, ordered by the slots
/// taken by the first block.
pub fn enumerate_shuffles(k: usize, l: usize) -> Vec<Shuffle> {
    let n = k + l;
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(k);
    choose(n, k, 0, &mut chosen, &mut |first| {
        let mut image = first.to_vec();
        image.extend((0..n).filter(|s| !first.contains(s)));
        out.push(Shuffle { k, image });
    });
    out
}

fn choose(n: usize, k: usize, start: usize, chosen: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    if chosen.len() == k {
        emit(chosen);
        return;
    }
    let remaining = k - chosen.len();
    for s in start..=n - remaining {
        chosen.push(s);
        choose(n, k, s + 1, chosen, emit);
        chosen.pop();
    }
}

/// Shuffle product of two words with multiplicities.
pub fn shuffle(w: &Word, w2: &Word) -> LinComb<Word> {
    enumerate_shuffles(w.len(), w2.len())
        .iter()
        .map(|t| (t.apply(w, w2), Rational::one()))
        .collect()
}

/// A surjection `σ: {0..k+l} → {0..n}` strictly increasing on `0..k` and on
/// `k..k+l`. Fibers have one or two elements; a two-element fiber merges one
/// position of each block.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuasiShuffle {
    k: usize,
    l: usize,
    sigma: Vec<usize>,
    image_len: usize,
}

impl QuasiShuffle {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// `sigma()[i]` is the 0-based image of position `i`.
    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    /// Cardinality `N` of the image.
    pub fn image_len(&self) -> usize {
        self.image_len
    }

    /// Image of the last position of the first block (`σ(k)` in 1-based terms).
    pub fn top_of_first(&self) -> Option<usize> {
        self.k.checked_sub(1).map(|i| self.sigma[i])
    }

    /// Image of the last position of the second block (`σ(k+l)`).
    pub fn top_of_second(&self) -> Option<usize> {
        self.l.checked_sub(1).map(|j| self.sigma[self.k + j])
    }

    /// The fiber over each image point, in increasing order.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut fibers = vec![Vec::new(); self.image_len];
        for (i, &s) in self.sigma.iter().enumerate() {
            fibers[s].push(i);
        }
        fibers
    }

    /// Builds a surjection from raw images, validating every defining property.
    pub fn from_images(k: usize, l: usize, sigma: Vec<usize>) -> Option<Self> {
        if sigma.len() != k + l {
            return None;
        }
        let monotone = |s: &[usize]| s.windows(2).all(|w| w[0] < w[1]);
        if !monotone(&sigma[..k]) || !monotone(&sigma[k..]) {
            return None;
        }
        let image_len = sigma.iter().max().map_or(0, |m| m + 1);
        let mut hit = vec![false; image_len];
        for &s in &sigma {
            hit[s] = true;
        }
        if hit.iter().any(|h| !h) {
            return None;
        }
        Some(QuasiShuffle { k, l, sigma, image_len })
    }
}

/// All of `Sh^≤(k, l)`, generated by merge patterns: each output slot takes
/// the next element of the first block, of the second, or of both.
pub fn enumerate_quasi_shuffles(k: usize, l: usize) -> Vec<QuasiShuffle> {
    let mut out = Vec::new();
    let mut sigma = vec![0; k + l];
    merge_patterns(k, l, 0, 0, 0, &mut sigma, &mut out);
    out
}

fn merge_patterns(
    k: usize,
    l: usize,
    i: usize,
    j: usize,
    slot: usize,
    sigma: &mut Vec<usize>,
    out: &mut Vec<QuasiShuffle>,
) {
    if i == k && j == l {
        out.push(QuasiShuffle { k, l, sigma: sigma.clone(), image_len: slot });
        return;
    }
    if i < k {
        sigma[i] = slot;
        merge_patterns(k, l, i + 1, j, slot + 1, sigma, out);
    }
    if j < l {
        sigma[k + j] = slot;
        merge_patterns(k, l, i, j + 1, slot + 1, sigma, out);
    }
    if i < k && j < l {
        sigma[i] = slot;
        sigma[k + j] = slot;
        merge_patterns(k, l, i + 1, j + 1, slot + 1, sigma, out);
    }
}

/// `σ(a, b)`: part `i` is the sum of the parts of `a` and `b` sent to `i`.
pub fn merge_index(sigma: &QuasiShuffle, a: &Index, b: &Index) -> Result<Index> {
    check_arity(sigma, a, b)?;
    let mut parts = vec![0u32; sigma.image_len];
    for (s, &p) in a.parts().iter().enumerate() {
        parts[sigma.sigma[s]] += p;
    }
    for (t, &p) in b.parts().iter().enumerate() {
        parts[sigma.sigma[sigma.k + t]] += p;
    }
    Index::new(parts)
}

pub(crate) fn check_arity(sigma: &QuasiShuffle, a: &Index, b: &Index) -> Result<()> {
    if a.depth() != sigma.k || b.depth() != sigma.l {
        return Err(Error::ArityMismatch {
            expected_k: sigma.k,
            expected_l: sigma.l,
            k: a.depth(),
            l: b.depth(),
        });
    }
    Ok(())
}

/// Series shuffle (stuffle, harmonic) product `Σ_{σ ∈ Sh^≤} σ(a, b)`.
pub fn stuffle(a: &Index, b: &Index) -> Result<LinComb<Index>> {
    let mut out = LinComb::zero();
    for sigma in enumerate_quasi_shuffles(a.depth(), b.depth()) {
        out.add_term(merge_index(&sigma, a, b)?, Rational::one());
    }
    Ok(out)
}

/// Word shuffle transported to indices, without an admissibility check.
/// Every resulting word ends in `B`, so the map back to indices is total.
pub fn shuffle_indices_formal(a: &Index, b: &Index) -> Result<LinComb<Index>> {
    shuffle(&word_of_index(a), &word_of_index(b)).map_symbols(index_of_word)
}

/// Iterated-integral shuffle product `Σ_{τ ∈ Sh(N_a, N_b)} I_{τ(W_a, W_b)}`
/// of two admissible indices.
pub fn shuffle_on_indices(a: &Index, b: &Index) -> Result<LinComb<Index>> {
    require_admissible(a)?;
    require_admissible(b)?;
    shuffle_indices_formal(a, b)
}

/// `stuffle(a, b) - shuffle_on_indices(a, b)`, a formal relation whose MZV
/// evaluation vanishes.
pub fn double_shuffle_relation(a: &Index, b: &Index) -> Result<LinComb<Index>> {
    let sh = shuffle_on_indices(a, b)?;
    Ok(stuffle(a, b)?.sub(&sh))
}

pub(crate) fn require_admissible(idx: &Index) -> Result<()> {
    if idx.is_admissible() {
        Ok(())
    } else {
        Err(Error::NotAdmissible(idx.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincomb::int;
    use crate::words::{indices_up_to, Letter};
    use std::collections::BTreeMap;

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    fn word(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    // Recursive shuffle: (u x) ш (v y) = (u ш v y) x + (u x ш v) y.
    fn shuffle_oracle(u: &[Letter], v: &[Letter]) -> BTreeMap<Vec<Letter>, u64> {
        let mut out = BTreeMap::new();
        if u.is_empty() || v.is_empty() {
            out.insert([u, v].concat(), 1);
            return out;
        }
        for (w, c) in shuffle_oracle(&u[..u.len() - 1], v) {
            let mut w = w;
            w.push(*u.last().unwrap());
            *out.entry(w).or_insert(0) += c;
        }
        for (w, c) in shuffle_oracle(u, &v[..v.len() - 1]) {
            let mut w = w;
            w.push(*v.last().unwrap());
            *out.entry(w).or_insert(0) += c;
        }
        out
    }

    // Brute force over all maps {0..k+l} -> {0..n}, filtered by the definition.
    fn quasi_shuffle_count_oracle(k: usize, l: usize) -> usize {
        let total = k + l;
        let mut count = 0;
        for n in k.max(l)..=total {
            if n == 0 {
                count += usize::from(total == 0);
                continue;
            }
            let mut images = vec![0usize; total];
            loop {
                if QuasiShuffle::from_images(k, l, images.clone()).is_some_and(|q| q.image_len() == n) {
                    count += 1;
                }
                let mut pos = 0;
                while pos < total {
                    images[pos] += 1;
                    if images[pos] < n {
                        break;
                    }
                    images[pos] = 0;
                    pos += 1;
                }
                if pos == total {
                    break;
                }
            }
        }
        count
    }

    #[test]
    fn shuffle_counts() {
        assert_eq!(enumerate_shuffles(1, 1).len(), 2);
        assert_eq!(enumerate_shuffles(2, 2).len(), 6);
        let id = enumerate_shuffles(0, 3);
        assert_eq!(id.len(), 1);
        assert_eq!(id[0].image(), &[0, 1, 2]);
        for k in 0..=6 {
            for l in 0..=6 {
                assert_eq!(enumerate_shuffles(k, l).len() as u64, binomial((k + l) as u64, k as u64));
            }
        }
    }

    #[test]
    fn shuffles_are_valid_and_distinct() {
        let all = enumerate_shuffles(3, 3);
        let set: std::collections::HashSet<_> = all.iter().map(|s| s.image().to_vec()).collect();
        assert_eq!(set.len(), all.len());
        for s in &all {
            let mut sorted = s.image().to_vec();
            sorted.sort();
            assert_eq!(sorted, (0..6).collect::<Vec<_>>());
            assert!(s.image()[..3].windows(2).all(|w| w[0] < w[1]));
            assert!(s.image()[3..].windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn shuffle_examples() {
        let bb = shuffle(&word("B"), &word("B"));
        assert_eq!(bb.len(), 1);
        assert_eq!(bb.coeff(&word("BB")), int(2));

        let abab = shuffle(&word("AB"), &word("AB"));
        assert_eq!(abab.len(), 2);
        assert_eq!(abab.coeff(&word("ABAB")), int(2));
        assert_eq!(abab.coeff(&word("AABB")), int(4));

        let unit = shuffle(&Word::empty(), &word("AAB"));
        assert_eq!(unit, LinComb::from_symbol(word("AAB")));
    }

    #[test]
    fn shuffle_matches_recursive_oracle() {
        let words = ["B", "AB", "BB", "AAB", "ABB", "BAB", "AABAB", "BBA"];
        for u in words {
            for v in words {
                let got = shuffle(&word(u), &word(v));
                let want = shuffle_oracle(word(u).letters(), word(v).letters());
                assert_eq!(got.len(), want.len(), "{u} ш {v}");
                for (w, c) in want {
                    assert_eq!(got.coeff(&Word::new(w)), int(c as i64));
                }
            }
        }
    }

    #[test]
    fn quasi_shuffle_counts() {
        assert_eq!(enumerate_quasi_shuffles(1, 1).len(), 3);
        assert_eq!(enumerate_quasi_shuffles(2, 1).len(), 5);
        assert_eq!(enumerate_quasi_shuffles(2, 2).len(), 13);
        for k in 0..=4 {
            for l in 0..=3 {
                assert_eq!(enumerate_quasi_shuffles(k, l).len(), quasi_shuffle_count_oracle(k, l), "({k},{l})");
            }
        }
    }

    #[test]
    fn quasi_shuffle_recurrence() {
        let n = |k, l| enumerate_quasi_shuffles(k, l).len();
        for k in 0..=6 {
            assert_eq!(n(k, 0), 1);
            assert_eq!(n(0, k), 1);
        }
        for k in 1..=6 {
            for l in 1..=6 {
                assert_eq!(n(k, l), n(k - 1, l) + n(k, l - 1) + n(k - 1, l - 1));
            }
        }
    }

    #[test]
    fn quasi_shuffles_satisfy_definition() {
        for sigma in enumerate_quasi_shuffles(3, 2) {
            let n = sigma.image_len();
            assert!((3..=5).contains(&n));
            assert!(QuasiShuffle::from_images(3, 2, sigma.sigma().to_vec()).is_some());
            for fiber in sigma.fibers() {
                match fiber.as_slice() {
                    [_] => {}
                    [s, t] => assert!(*s < 3 && *t >= 3),
                    other => panic!("bad fiber {other:?}"),
                }
            }
        }
    }

    #[test]
    fn merge_examples() {
        let qs = enumerate_quasi_shuffles(1, 1);
        let merged = qs.iter().find(|q| q.image_len() == 1).unwrap();
        assert_eq!(merge_index(merged, &idx("2"), &idx("5")).unwrap(), idx("7"));
        let a_first = qs.iter().find(|q| q.sigma() == [0, 1]).unwrap();
        assert_eq!(merge_index(a_first, &idx("2"), &idx("3")).unwrap(), idx("2,3"));
        assert!(matches!(
            merge_index(a_first, &idx("2,2"), &idx("3")),
            Err(Error::ArityMismatch { .. })
        ));
        for q in enumerate_quasi_shuffles(2, 2) {
            assert_eq!(merge_index(&q, &idx("1,4"), &idx("2,3")).unwrap().weight(), 10);
        }
    }

    #[test]
    fn stuffle_examples() {
        let s = stuffle(&idx("2"), &idx("5")).unwrap();
        let want: LinComb<Index> =
            [(idx("2,5"), int(1)), (idx("5,2"), int(1)), (idx("7"), int(1))].into_iter().collect();
        assert_eq!(s, want);

        let s = stuffle(&idx("1"), &idx("1")).unwrap();
        assert_eq!(s, [(idx("1,1"), int(2)), (idx("2"), int(1))].into_iter().collect());

        let s = stuffle(&idx("2"), &idx("2")).unwrap();
        assert_eq!(s, [(idx("2,2"), int(2)), (idx("4"), int(1))].into_iter().collect());
    }

    #[test]
    fn shuffle_on_indices_examples() {
        let s = shuffle_on_indices(&idx("2"), &idx("2")).unwrap();
        assert_eq!(s, [(idx("2,2"), int(2)), (idx("1,3"), int(4))].into_iter().collect());
        assert!(matches!(shuffle_on_indices(&idx("1"), &idx("2")), Err(Error::NotAdmissible(_))));
    }

    // Two-single-part formula: sum_i C(k2-1+i, i) (k1-i, k2+i) + sum_j C(k1-1+j, j) (k2-j, k1+j).
    #[test]
    fn shuffle_of_single_parts_matches_binomial_formula() {
        for k1 in 2..=6u32 {
            for k2 in 2..=6u32 {
                let mut want = LinComb::zero();
                for i in 0..k1 {
                    let c = binomial((k2 - 1 + i) as u64, i as u64) as i64;
                    want.add_term(Index::new(vec![k1 - i, k2 + i]).unwrap(), int(c));
                }
                for j in 0..k2 {
                    let c = binomial((k1 - 1 + j) as u64, j as u64) as i64;
                    want.add_term(Index::new(vec![k2 - j, k1 + j]).unwrap(), int(c));
                }
                let got = shuffle_on_indices(&Index::single(k1).unwrap(), &Index::single(k2).unwrap()).unwrap();
                assert_eq!(got, want, "k1={k1} k2={k2}");
            }
        }
    }

    #[test]
    fn double_shuffle_examples() {
        let r = double_shuffle_relation(&idx("2"), &idx("2")).unwrap();
        assert_eq!(r, [(idx("4"), int(1)), (idx("1,3"), int(-4))].into_iter().collect());

        let r = double_shuffle_relation(&idx("2"), &idx("3")).unwrap();
        let mut want: LinComb<Index> =
            [(idx("2,3"), int(1)), (idx("3,2"), int(1)), (idx("5"), int(1))].into_iter().collect();
        // k1 = 2, k2 = 3 expansion: (2,3) + 3(1,4) + (3,2) + 2(2,3) + 3(1,4)
        want = want.sub(
            &[(idx("2,3"), int(3)), (idx("1,4"), int(6)), (idx("3,2"), int(1))].into_iter().collect(),
        );
        assert_eq!(r, want);
        assert!(double_shuffle_relation(&idx("2,1"), &idx("2")).is_err());
    }

    #[test]
    fn products_preserve_weight_and_admissibility() {
        let all = indices_up_to(5);
        for a in &all {
            for b in &all {
                if a.weight() + b.weight() > 6 {
                    continue;
                }
                let w = a.weight() + b.weight();
                let st = stuffle(a, b).unwrap();
                let sh = shuffle_indices_formal(a, b).unwrap();
                assert!(st.symbols().chain(sh.symbols()).all(|c| c.weight() == w));
                if a.is_admissible() && b.is_admissible() {
                    assert!(st.symbols().chain(sh.symbols()).all(Index::is_admissible));
                }
                let n = binomial(w as u64, a.weight() as u64) as i64;
                assert_eq!(sh.mass(), int(n));
            }
        }
    }

    fn assoc_check(
        product: impl Fn(&Index, &Index) -> Result<LinComb<Index>> + Copy,
        max_weight: u32,
    ) {
        let all = indices_up_to(max_weight);
        for a in &all {
            for b in &all {
                for c in &all {
                    if a.weight() + b.weight() + c.weight() > max_weight {
                        continue;
                    }
                    let la = LinComb::from_symbol(a.clone());
                    let lb = LinComb::from_symbol(b.clone());
                    let lc = LinComb::from_symbol(c.clone());
                    let left = la.bilinear(&lb, product).unwrap().bilinear(&lc, product).unwrap();
                    let right = la.bilinear(&lb.bilinear(&lc, product).unwrap(), product).unwrap();
                    assert_eq!(left, right, "{a:?} {b:?} {c:?}");
                    assert_eq!(product(a, b).unwrap(), product(b, a).unwrap());
                }
            }
        }
    }

    #[test]
    fn stuffle_is_commutative_and_associative() {
        assoc_check(stuffle, 6);
    }

    #[test]
    fn shuffle_is_commutative_and_associative() {
        assoc_check(shuffle_indices_formal, 6);
    }
}
