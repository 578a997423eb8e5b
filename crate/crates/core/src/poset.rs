//! Finite directed posets used as filtration indices, and the truncated
//! additive monoid `{0..N}` with `a ⊕ b = min(N, a + b)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A finite directed poset. Elements are addressed by their position in
/// declaration order, which is also the total order used to lay out direct
/// sums.
#[derive(Clone, PartialEq, Eq)]
pub struct IndexPoset {
    elements: Vec<String>,
    leq: Vec<bool>,
    aliases: BTreeMap<String, usize>,
    topo: Vec<usize>,
    top: usize,
}

/// Result of collapsing a preorder to its poset of equivalence classes.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub poset: IndexPoset,
    /// Input element index to class index.
    pub class_map: Vec<usize>,
}

impl IndexPoset {
    /// Builds a poset from generating relations. Equivalent elements
    /// (`a <= b <= a`) are collapsed into one class named by its first member.
    pub fn reduce_preorder<S: AsRef<str>>(elements: &[S], relation: &[(S, S)]) -> Result<Reduction> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::EmptyPoset);
        }
        let names: Vec<String> = elements.iter().map(|e| e.as_ref().to_string()).collect();
        let index: BTreeMap<&str, usize> =
            names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if index.len() != n {
            return Err(Error::Parse("duplicate poset element".into()));
        }
        let mut rel = vec![false; n * n];
        for i in 0..n {
            rel[i * n + i] = true;
        }
        for (a, b) in relation {
            let ia = *index.get(a.as_ref()).ok_or_else(|| Error::UnknownElement(a.as_ref().into()))?;
            let ib = *index.get(b.as_ref()).ok_or_else(|| Error::UnknownElement(b.as_ref().into()))?;
            rel[ia * n + ib] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if rel[i * n + k] {
                    for j in 0..n {
                        if rel[k * n + j] {
                            rel[i * n + j] = true;
                        }
                    }
                }
            }
        }
        let mut class_map = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for i in 0..n {
            if class_map[i] != usize::MAX {
                continue;
            }
            let class = reps.len();
            reps.push(i);
            for j in i..n {
                if rel[i * n + j] && rel[j * n + i] {
                    class_map[j] = class;
                }
            }
        }
        let m = reps.len();
        let mut leq = vec![false; m * m];
        for a in 0..m {
            for b in 0..m {
                leq[a * m + b] = rel[reps[a] * n + reps[b]];
            }
        }
        let aliases = names.iter().enumerate().map(|(i, s)| (s.clone(), class_map[i])).collect();
        let class_names = reps.iter().map(|&i| names[i].clone()).collect();
        let poset = Self::from_closed(class_names, leq, aliases)?;
        Ok(Reduction { poset, class_map })
    }

    /// Convenience wrapper around [`Self::reduce_preorder`] that keeps only the poset.
    pub fn new<S: AsRef<str>>(elements: &[S], relation: &[(S, S)]) -> Result<Self> {
        Ok(Self::reduce_preorder(elements, relation)?.poset)
    }

    fn from_closed(elements: Vec<String>, leq: Vec<bool>, aliases: BTreeMap<String, usize>) -> Result<Self> {
        let n = elements.len();
        for a in 0..n {
            for b in (a + 1)..n {
                if !(0..n).any(|c| leq[a * n + c] && leq[b * n + c]) {
                    return Err(Error::NotDirected(elements[a].clone(), elements[b].clone()));
                }
            }
        }
        // A finite directed poset has a unique maximum.
        let top = (0..n)
            .find(|&t| (0..n).all(|x| leq[x * n + t]))
            .expect("finite directed poset has a maximum");
        let down = |x: usize| (0..n).filter(|&y| leq[y * n + x]).count();
        let mut topo: Vec<usize> = (0..n).collect();
        topo.sort_by_key(|&x| (down(x), x));
        Ok(IndexPoset { elements, leq, aliases, topo, top })
    }

    /// The chain `0 <= 1 <= ... <= n-1` with ids `"0".."n-1"`.
    pub fn chain(n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        Self::named_chain(&names)
    }

    pub fn named_chain<S: AsRef<str>>(names: &[S]) -> Self {
        let rel: Vec<(&str, &str)> =
            names.windows(2).map(|w| (w[0].as_ref(), w[1].as_ref())).collect();
        let names: Vec<&str> = names.iter().map(|s| s.as_ref()).collect();
        Self::new(&names, &rel).expect("a nonempty chain is directed")
    }

    /// `⊥ <= x, y <= ⊤`.
    pub fn diamond() -> Self {
        Self::new(&["⊥", "x", "y", "⊤"], &[("⊥", "x"), ("⊥", "y"), ("x", "⊤"), ("y", "⊤")])
            .expect("diamond is directed")
    }

    pub fn singleton() -> Self {
        Self::chain(1)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.aliases.get(name).copied().ok_or_else(|| Error::UnknownElement(name.into()))
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn top_name(&self) -> &str {
        &self.elements[self.top]
    }

    /// Elements in a linear extension of the order.
    pub fn topological(&self) -> &[usize] {
        &self.topo
    }

    /// All `(a, b)` with `a <= b`, including `a == b`.
    pub fn comparable_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.leq(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// All `(a, b)` with `a < b` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// `{a' : a' <= a}` in declaration order.
    pub fn down_set(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.leq(x, a)).collect()
    }

    pub fn strict_down_set(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.lt(x, a)).collect()
    }

    /// Generating relation of the closed order, as written in instance files.
    pub fn cover_names(&self) -> Vec<(String, String)> {
        self.covers()
            .into_iter()
            .map(|(a, b)| (self.elements[a].clone(), self.elements[b].clone()))
            .collect()
    }

    pub fn pair_label(&self, a: usize, b: usize) -> String {
        format!("{}<={}", self.elements[a], self.elements[b])
    }
}

impl fmt::Debug for IndexPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IndexPoset{{{:?}, covers: {:?}}}", self.elements, self.cover_names())
    }
}

/// `{0..N}` with saturating addition, viewed as a chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexMonoid {
    base: Arc<IndexPoset>,
    bound: usize,
    table: Vec<usize>,
}

impl IndexMonoid {
    pub fn truncated_nat(bound: usize) -> Self {
        let n = bound + 1;
        let table = (0..n * n).map(|k| bound.min(k / n + k % n)).collect();
        IndexMonoid { base: Arc::new(IndexPoset::chain(n)), bound, table }
    }

    /// A monoid with an explicit addition table, indexed `a * (N+1) + b`.
    /// Used to feed arbitrary tables to [`Self::validate`].
    pub fn from_table(bound: usize, table: Vec<usize>) -> Result<Self> {
        let n = bound + 1;
        if table.len() != n * n || table.iter().any(|&v| v > bound) {
            return Err(Error::DimensionMismatch(format!("addition table for bound {bound}")));
        }
        Ok(IndexMonoid { base: Arc::new(IndexPoset::chain(n)), bound, table })
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn poset(&self) -> &Arc<IndexPoset> {
        &self.base
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.table[a * (self.bound + 1) + b]
    }

    /// Exhaustive check of the monoid axioms over all pairs and triples.
    pub fn validate(&self) -> Result<()> {
        let n = self.bound + 1;
        let fail = |law: &str, w: String| Err(Error::AxiomFailure { law: law.into(), witness: w });
        for a in 0..n {
            if self.add(0, a) != a || self.add(a, 0) != a {
                return fail("unit law", format!("({a})"));
            }
            for b in 0..n {
                let s = self.add(a, b);
                if s != self.add(b, a) {
                    return fail("commutativity", format!("({a},{b})"));
                }
                if s < a.max(b) {
                    return fail("a+b >= max(a,b)", format!("({a},{b})"));
                }
                if a + 1 < n && self.add(a + 1, b) < s {
                    return fail("monotonicity", format!("({a},{b})"));
                }
                for c in 0..n {
                    if self.add(s, c) != self.add(a, self.add(b, c)) {
                        return fail("associativity", format!("({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_top() {
        let p = IndexPoset::chain(3);
        assert_eq!(p.top_name(), "2");
        assert_eq!(p.covers(), vec![(0, 1), (1, 2)]);
        assert!(p.leq(0, 2));
        assert_eq!(IndexPoset::singleton().top_name(), "0");
    }

    #[test]
    fn preorder_collapse() {
        let r = IndexPoset::reduce_preorder(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap();
        assert_eq!(r.poset.len(), 1);
        assert_eq!(r.class_map, vec![0, 0]);
        assert_eq!(r.poset.index_of("b").unwrap(), 0);
    }

    #[test]
    fn diamond_is_directed() {
        let d = IndexPoset::diamond();
        assert_eq!(d.top_name(), "⊤");
        // Upper bound enumeration: every pair has ⊤ above it, x and y only ⊤.
        let x = d.index_of("x").unwrap();
        let y = d.index_of("y").unwrap();
        let ubs: Vec<_> = (0..4).filter(|&c| d.leq(x, c) && d.leq(y, c)).collect();
        assert_eq!(ubs, vec![d.top()]);
        assert_eq!(d.covers().len(), 4);
    }

    #[test]
    fn not_directed() {
        let e = IndexPoset::new(&["a", "b"], &[]).unwrap_err();
        assert_eq!(e, Error::NotDirected("a".into(), "b".into()));
        assert_eq!(IndexPoset::new::<&str>(&[], &[]).unwrap_err(), Error::EmptyPoset);
    }

    #[test]
    fn reduce_is_idempotent() {
        let r = IndexPoset::reduce_preorder(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "a"), ("b", "c"), ("d", "c")],
        )
        .unwrap();
        let p = r.poset;
        let names = p.elements().to_vec();
        let rel: Vec<(String, String)> = p.cover_names();
        let again = IndexPoset::new(&names, &rel).unwrap();
        assert_eq!(again.elements(), p.elements());
        assert_eq!(again.comparable_pairs(), p.comparable_pairs());
    }

    #[test]
    fn truncated_addition() {
        let m = IndexMonoid::truncated_nat(2);
        assert_eq!(m.add(1, 1), 2);
        assert_eq!(m.add(2, 2), 2);
        let m3 = IndexMonoid::truncated_nat(3);
        assert_eq!(m3.add(m3.add(2, 2), 3), 3);
        assert_eq!(m3.add(2, m3.add(2, 3)), 3);
        for n in 0..5 {
            let m = IndexMonoid::truncated_nat(n);
            m.validate().unwrap();
            for a in 0..=n {
                assert_eq!(m.add(0, a), a);
                for b in 0..=n {
                    let expect = if a + b <= n { a + b } else { n };
                    assert_eq!(m.add(a, b), expect);
                }
            }
        }
    }

    #[test]
    fn bad_table_is_reported() {
        // Wrapping addition mod 3 is not monotone and fails a+b >= max.
        let table = (0..9).map(|k| (k / 3 + k % 3) % 3).collect();
        let m = IndexMonoid::from_table(2, table).unwrap();
        assert!(matches!(m.validate(), Err(Error::AxiomFailure { .. })));
    }
}
