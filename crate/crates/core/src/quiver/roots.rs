use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::{DimVector, Quiver};

/// A word `s_{i_1} s_{i_2} ... s_{i_m}` in the simple reflections.
///
/// The leftmost letter acts last: applying the word to `v` computes
/// `s_{i_1}(s_{i_2}(...s_{i_m}(v)))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ReflectionWord(Vec<usize>);

impl ReflectionWord {
    pub fn new(letters: Vec<usize>) -> Self {
        ReflectionWord(letters)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Self {
        ReflectionWord(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for ReflectionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("s{i}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for ReflectionWord {
    type Err = String;

    /// Accepts letters separated by commas or whitespace, each optionally
    /// prefixed with `s` (`8,7,5` or `s8 s7 s5`).
    fn from_str(s: &str) -> Result<Self, String> {
        s.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.trim_start_matches('s')
                    .parse::<usize>()
                    .map_err(|_| format!("invalid reflection letter `{t}`"))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(ReflectionWord)
    }
}

impl Quiver {
    /// `s_i(a) = a - (a, e_i) e_i`.
    pub fn simple_reflection(&self, vertex: usize, a: &DimVector) -> Result<DimVector> {
        self.check_vertex(vertex)?;
        self.check_len(a)?;
        let pairing = self.sym_form_with_simple(a, vertex);
        let mut out = a.clone();
        out.add_scaled(vertex, -pairing);
        Ok(out)
    }

    /// `(a, e_i)` without allocating `e_i`.
    fn sym_form_with_simple(&self, a: &DimVector, vertex: usize) -> i64 {
        let mut value = 2 * a.at(vertex);
        for arr in self.arrows() {
            if arr.tail == vertex {
                value -= a.at(arr.head);
            }
            if arr.head == vertex {
                value -= a.at(arr.tail);
            }
        }
        value
    }

    /// Applies the letters right to left.
    pub fn apply_word(&self, word: &ReflectionWord, a: &DimVector) -> Result<DimVector> {
        self.check_len(a)?;
        for &letter in word.letters() {
            self.check_vertex(letter)?;
        }
        let mut v = a.clone();
        for &letter in word.letters().iter().rev() {
            let pairing = self.sym_form_with_simple(&v, letter);
            v.add_scaled(letter, -pairing);
        }
        Ok(v)
    }

    /// Decides `a ∈ W(Π)` with `a > 0` by reflection descent.
    ///
    /// Repeatedly reflects at the smallest vertex `i` with `(a, e_i) > 0`.
    /// A simple root ends the descent successfully; reaching a vector with no
    /// such vertex (the fundamental region) or with a negative coordinate
    /// means `a` is not a positive real root.
    pub fn is_positive_real_root(&self, a: &DimVector) -> Result<bool> {
        self.check_len(a)?;
        if !a.is_positive() || self.euler_form(a, a)? != 1 {
            return Ok(false);
        }
        Ok(self.descent(a).is_some())
    }

    /// The descent path `(i_1, ..., i_k)` and terminal simple vertex `j` with
    /// `s_{i_k} ... s_{i_1}(a) = e_j`, using the smallest descending vertex at
    /// every step. `None` if `a` is not a positive real root.
    fn descent(&self, a: &DimVector) -> Option<(Vec<usize>, usize)> {
        let mut v = a.clone();
        let mut path = Vec::new();
        loop {
            if let Some(j) = v.as_simple() {
                return Some((path, j));
            }
            let i = (1..=self.vertex_count()).find(|&i| self.sym_form_with_simple(&v, i) > 0)?;
            let pairing = self.sym_form_with_simple(&v, i);
            v.add_scaled(i, -pairing);
            if v.has_negative() {
                return None;
            }
            path.push(i);
        }
    }

    /// A word for the reflection `s_a` of a positive real root.
    ///
    /// Uses `s_a = s_i s_{a'} s_i` for `a' = s_i(a) < a` with the smallest
    /// such `i`, bottoming out at `s_{e_j} = s_j`.
    pub fn reflection_word_for_root(&self, a: &DimVector) -> Result<ReflectionWord> {
        self.check_len(a)?;
        if !self.is_positive_real_root(a)? {
            return Err(Error::NotPositiveRealRoot(a.to_string()));
        }
        let (path, j) = self.descent(a).expect("descent succeeds for real roots");
        let mut letters = path.clone();
        letters.push(j);
        letters.extend(path.iter().rev());
        Ok(ReflectionWord(letters))
    }

    /// Real roots `b` that could serve as a reflection for `a`: those with
    /// `b < a`, `<a,b> >= 0` and `<b,a> >= 0`. Sorted lexicographically.
    ///
    /// This is the union of the two parts of [`CandidateRoutes`].
    pub fn reflection_candidates(&self, a: &DimVector) -> Result<Vec<DimVector>> {
        let routes = self.candidate_routes(a)?;
        let all: BTreeSet<DimVector> = routes
            .from_word
            .into_iter()
            .chain(routes.orthogonal)
            .collect();
        Ok(all.into_iter().collect())
    }

    /// Reflection candidates split by how they are found.
    pub fn candidate_routes(&self, a: &DimVector) -> Result<CandidateRoutes> {
        let word = self.reflection_word_for_root(a)?;
        let mut from_word = BTreeSet::new();
        for root in self.inversion_roots(&word)? {
            if self.passes_candidate_filter(a, &root)? {
                from_word.insert(root);
            }
        }
        let mut orthogonal = BTreeSet::new();
        for root in self.real_roots_below(a)? {
            if root.strictly_below(a)
                && self.euler_form(a, &root)? == 0
                && self.euler_form(&root, a)? == 0
            {
                orthogonal.insert(root);
            }
        }
        Ok(CandidateRoutes {
            word,
            from_word: from_word.into_iter().collect(),
            orthogonal: orthogonal.into_iter().collect(),
        })
    }

    fn passes_candidate_filter(&self, a: &DimVector, b: &DimVector) -> Result<bool> {
        Ok(b.strictly_below(a) && self.euler_form(a, b)? >= 0 && self.euler_form(b, a)? >= 0)
    }

    /// Every positive real root `b <= bound`, sorted lexicographically.
    ///
    /// Reversing a reflection descent climbs from a simple root through
    /// strictly increasing roots, so the closure of the simple roots under
    /// increasing reflections that stay below `bound` reaches all of them.
    pub fn real_roots_below(&self, bound: &DimVector) -> Result<Vec<DimVector>> {
        self.check_len(bound)?;
        let mut seen = BTreeSet::new();
        let mut frontier: Vec<DimVector> = (1..=self.vertex_count())
            .filter(|&i| bound.at(i) >= 1)
            .map(|i| DimVector::unit(self.vertex_count(), i))
            .collect();
        seen.extend(frontier.iter().cloned());
        while let Some(root) = frontier.pop() {
            for i in 1..=self.vertex_count() {
                let pairing = self.sym_form_with_simple(&root, i);
                if pairing >= 0 {
                    continue;
                }
                let mut up = root.clone();
                up.add_scaled(i, -pairing);
                if bound.dominates(&up) && seen.insert(up.clone()) {
                    frontier.push(up);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// All `s_{i_n} ... s_{i_{m+1}}(e_{i_m})` for `m = 1..n`, unfiltered.
    pub fn inversion_roots(&self, word: &ReflectionWord) -> Result<Vec<DimVector>> {
        let letters = word.letters();
        let n = letters.len();
        (0..n)
            .map(|m| {
                let suffix = ReflectionWord(letters[m + 1..].iter().rev().copied().collect());
                let start = self.simple_root(letters[m])?;
                self.apply_word(&suffix, &start)
            })
            .collect()
    }
}

/// The two ways reflection candidates arise.
///
/// A candidate `b` with `(a,b) > 0` satisfies `s_a(b) = b - (a,b)a < 0`, so it
/// is one of the roots `s_{i_n} ... s_{i_{m+1}}(e_{i_m})` read off a word
/// `s_{i_1} ... s_{i_n}` for `s_a`. A candidate with both pairings zero is
/// fixed by `s_a` and never appears there; those are found among the real
/// roots below `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateRoutes {
    pub word: ReflectionWord,
    pub from_word: Vec<DimVector>,
    pub orthogonal: Vec<DimVector>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paper_quiver() -> Quiver {
        Quiver::from_triples(
            8,
            &[
                ("a", 1, 4),
                ("b", 2, 4),
                ("c", 3, 4),
                ("d", 4, 5),
                ("e", 5, 6),
                ("f", 5, 7),
                ("g", 5, 8),
            ],
        )
        .unwrap()
    }

    #[test]
    fn reflection_examples() {
        let q = paper_quiver();
        let e4 = q.simple_root(4).unwrap();
        assert_eq!(q.simple_reflection(4, &e4).unwrap(), -&e4);
        let e3 = q.simple_root(3).unwrap();
        assert_eq!(q.simple_reflection(3, &e4).unwrap(), &e3 + &e4);
        assert!(matches!(
            q.simple_reflection(9, &e4),
            Err(Error::VertexOutOfRange { vertex: 9, .. })
        ));
    }

    #[test]
    fn kronecker_word_and_candidates() {
        let k2 = Quiver::kronecker(2);
        let a = DimVector::from([1, 2]);
        let w = q_word(&k2, &a);
        assert_eq!(w.letters(), &[2, 1, 2]);
        let raw = k2.inversion_roots(&w).unwrap();
        assert_eq!(
            raw,
            vec![
                DimVector::from([2, 3]),
                DimVector::from([1, 2]),
                DimVector::from([0, 1])
            ]
        );
        assert_eq!(k2.reflection_candidates(&a).unwrap(), vec![DimVector::from([0, 1])]);
    }

    fn q_word(q: &Quiver, a: &DimVector) -> ReflectionWord {
        q.reflection_word_for_root(a).unwrap()
    }

    #[test]
    fn paper_root_word_and_candidates() {
        let q = paper_quiver();
        let word: ReflectionWord = "8 7 5 4 8 7 5 8 7 5 6 4 5 4 1 2 3".parse().unwrap();
        let alpha = q.apply_word(&word, &q.simple_root(4).unwrap()).unwrap();
        assert_eq!(alpha, DimVector::from([1, 1, 1, 8, 12, 2, 7, 7]));
        assert!(q.is_positive_real_root(&alpha).unwrap());
        let s_alpha = q_word(&q, &alpha);
        assert_eq!(q.apply_word(&s_alpha, &alpha).unwrap(), -&alpha);
        assert_eq!(
            q.reflection_candidates(&alpha).unwrap(),
            vec![
                DimVector::from([0, 0, 0, 1, 2, 0, 1, 1]),
                DimVector::from([0, 1, 1, 4, 7, 1, 4, 4]),
                DimVector::from([1, 0, 1, 4, 7, 1, 4, 4]),
                DimVector::from([1, 1, 0, 4, 7, 1, 4, 4]),
            ]
        );
    }

    #[test]
    fn paper_candidates_split_by_route() {
        let q = paper_quiver();
        let alpha = DimVector::from([1, 1, 1, 8, 12, 2, 7, 7]);
        let routes = q.candidate_routes(&alpha).unwrap();
        assert_eq!(routes.from_word, vec![DimVector::from([0, 0, 0, 1, 2, 0, 1, 1])]);
        assert_eq!(routes.orthogonal.len(), 3);
    }

    #[test]
    fn real_roots_below_kronecker() {
        let k2 = Quiver::kronecker(2);
        let roots = k2.real_roots_below(&DimVector::from([2, 3])).unwrap();
        assert_eq!(
            roots,
            vec![
                DimVector::from([0, 1]),
                DimVector::from([1, 0]),
                DimVector::from([1, 2]),
                DimVector::from([2, 1]),
                DimVector::from([2, 3]),
            ]
        );
    }

    #[test]
    fn simple_root_base_case() {
        let q = paper_quiver();
        let e4 = q.simple_root(4).unwrap();
        assert_eq!(q_word(&q, &e4).letters(), &[4]);
        assert!(q.reflection_candidates(&e4).unwrap().is_empty());
    }

    #[test]
    fn isotropic_kronecker_vector_is_not_real() {
        let k2 = Quiver::kronecker(2);
        assert!(!k2.is_positive_real_root(&DimVector::from([1, 1])).unwrap());
        assert!(!k2.is_positive_real_root(&DimVector::from([0, 0])).unwrap());
        assert!(!k2.is_positive_real_root(&DimVector::from([-1, 0])).unwrap());
        assert!(matches!(
            k2.reflection_word_for_root(&DimVector::from([1, 1])),
            Err(Error::NotPositiveRealRoot(_))
        ));
    }

    #[test]
    fn empty_word_is_identity() {
        let q = paper_quiver();
        let v = DimVector::from([3, -1, 0, 2, 5, 1, 0, 4]);
        assert_eq!(q.apply_word(&ReflectionWord::default(), &v).unwrap(), v);
    }

    #[test]
    fn word_text_forms() {
        let w: ReflectionWord = "s8 s7 s5".parse().unwrap();
        assert_eq!(w.letters(), &[8, 7, 5]);
        assert_eq!("8,7,5".parse::<ReflectionWord>().unwrap(), w);
        assert_eq!(w.to_string(), "s8 s7 s5");
        assert!("s8 sx".parse::<ReflectionWord>().is_err());
    }
}
