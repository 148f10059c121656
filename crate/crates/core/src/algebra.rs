//! Quivers and bound quiver algebras with a confluent rewriting system.
//!
//! Paths are stored in traversal order: `[a, b]` walks `a` then `b`. In the
//! text notation this path is written `b*a`, the composite of `a` followed by
//! `b`.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, OnceLock};

use crate::error::{invalid, Error, Result};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return invalid(format!("duplicate vertex `{v}`"));
            }
        }
        let find = |v: &str| {
            vertices
                .iter()
                .position(|x| x == v)
                .ok_or_else(|| Error::Invalid(format!("unknown vertex `{v}`")))
        };
        let mut out = Vec::with_capacity(arrows.len());
        for (name, s, t) in arrows {
            let name = name.as_ref().to_string();
            if out.iter().any(|a: &Arrow| a.name == name) {
                return invalid(format!("duplicate arrow `{name}`"));
            }
            if vertices.contains(&name) {
                return invalid(format!("arrow `{name}` shares its name with a vertex"));
            }
            out.push(Arrow { name, source: find(s.as_ref())?, target: find(t.as_ref())? });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    /// Linearly oriented `A_n`: `1 -> 2 -> ... -> n` with arrows `a1, a2, ...`.
    pub fn linear_a(n: usize) -> Self {
        let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows: Vec<(String, String, String)> =
            (1..n).map(|i| (format!("a{i}"), i.to_string(), (i + 1).to_string())).collect();
        Quiver::new(&vertices, &arrows).expect("linear quiver is valid")
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn opposite(&self) -> Self {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
            .collect();
        Quiver { vertices: self.vertices.clone(), arrows }
    }

    pub fn is_acyclic(&self) -> bool {
        let n = self.num_vertices();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    queue.push(a.target);
                }
            }
        }
        seen == n
    }

    /// Euler form `<x, y>` of the quiver.
    pub fn euler_form(&self, x: &[usize], y: &[usize]) -> i64 {
        let diag: i64 = x.iter().zip(y).map(|(&a, &b)| (a * b) as i64).sum();
        let off: i64 = self.arrows.iter().map(|a| (x[a.source] * y[a.target]) as i64).sum();
        diag - off
    }

    /// Checks that consecutive arrows of a traversal-order word compose.
    pub fn word_endpoints(&self, word: &[usize]) -> Result<(usize, usize)> {
        let first = word.first().ok_or_else(|| Error::Invalid("empty word".into()))?;
        let mut end = self.arrows[*first].source;
        for &a in word {
            let arrow = &self.arrows[a];
            if arrow.source != end {
                return invalid(format!("arrow `{}` does not start where the path ends", arrow.name));
            }
            end = arrow.target;
        }
        Ok((self.arrows[*first].source, end))
    }
}

/// A path in the quiver: start vertex plus arrows in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub end: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Linear combination of words in traversal order.
pub type WordCombination<F> = Vec<(F, Vec<usize>)>;

/// Sparse element of the algebra in path-basis coordinates, sorted by index.
pub type Element<F> = Vec<(usize, F)>;

#[derive(Clone, Debug)]
struct Rule<F: Field> {
    lhs: Vec<usize>,
    rhs: WordCombination<F>,
}

pub struct Algebra<F: Field> {
    quiver: Quiver,
    relations: Vec<WordCombination<F>>,
    reversed_order: bool,
    rules: Vec<Rule<F>>,
    basis: Vec<Path>,
    index: HashMap<(usize, Vec<usize>), usize>,
    between: Vec<Vec<Vec<usize>>>,
    pub(crate) gldim_cache: OnceLock<Option<usize>>,
    opposite_cache: OnceLock<Arc<Algebra<F>>>,
}

impl<F: Field> PartialEq for Algebra<F> {
    fn eq(&self, other: &Self) -> bool {
        self.quiver == other.quiver
            && self.relations == other.relations
            && self.reversed_order == other.reversed_order
    }
}

impl<F: Field> Eq for Algebra<F> {}

impl<F: Field> std::fmt::Debug for Algebra<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Algebra")
            .field("quiver", &self.quiver)
            .field("relations", &self.relations)
            .field("dimension", &self.basis.len())
            .finish()
    }
}

const MAX_BASIS: usize = 20_000;

impl<F: Field> Algebra<F> {
    pub fn path_algebra(quiver: Quiver) -> Result<Self> {
        Self::new(quiver, Vec::new())
    }

    /// Bound quiver algebra `KQ / (relations)`. Each relation is a linear
    /// combination of parallel words of length at least 2, in traversal order.
    pub fn new(quiver: Quiver, relations: Vec<WordCombination<F>>) -> Result<Self> {
        Self::build(quiver, relations, false)
    }

    fn build(quiver: Quiver, relations: Vec<WordCombination<F>>, reversed_order: bool) -> Result<Self> {
        let mut cleaned = Vec::new();
        for rel in relations {
            let rel = combine_words(rel);
            if rel.is_empty() {
                continue;
            }
            let (s, e) = quiver.word_endpoints(&rel[0].1)?;
            for (_, w) in &rel {
                if w.len() < 2 {
                    return invalid("relations must be combinations of paths of length at least 2");
                }
                if quiver.word_endpoints(w)? != (s, e) {
                    return invalid("relation terms are not parallel paths");
                }
            }
            cleaned.push(rel);
        }
        let mut alg = Algebra {
            quiver,
            relations: cleaned,
            reversed_order,
            rules: Vec::new(),
            basis: Vec::new(),
            index: HashMap::new(),
            between: Vec::new(),
            gldim_cache: OnceLock::new(),
            opposite_cache: OnceLock::new(),
        };
        alg.rules = alg.relations.iter().map(|r| alg.make_rule(r)).collect();
        alg.check_confluence()?;
        alg.compute_basis()?;
        Ok(alg)
    }

    fn compare_words(&self, a: &[usize], b: &[usize]) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            if self.reversed_order {
                a.iter().rev().cmp(b.iter().rev())
            } else {
                a.cmp(b)
            }
        })
    }

    fn make_rule(&self, rel: &WordCombination<F>) -> Rule<F> {
        let lead = (0..rel.len())
            .max_by(|&i, &j| self.compare_words(&rel[i].1, &rel[j].1))
            .expect("nonempty relation");
        let c = rel[lead].0.inv().expect("nonzero coefficient");
        let rhs = rel
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != lead)
            .map(|(_, (k, w))| (k.mul(&c).neg(), w.clone()))
            .collect();
        Rule { lhs: rel[lead].1.clone(), rhs }
    }

    /// Rewrites a combination of words until every word is irreducible.
    pub fn normal_form(&self, combo: WordCombination<F>) -> WordCombination<F> {
        let mut pending: HashMap<Vec<usize>, F> = HashMap::new();
        for (c, w) in combo {
            add_into(&mut pending, w, c);
        }
        let mut done: HashMap<Vec<usize>, F> = HashMap::new();
        while let Some(w) = pending.keys().next().cloned() {
            let c = pending.remove(&w).expect("present");
            match self.find_rule(&w) {
                None => add_into(&mut done, w, c),
                Some((r, pos)) => {
                    let rule = &self.rules[r];
                    for (k, rw) in &rule.rhs {
                        let mut nw = w[..pos].to_vec();
                        nw.extend_from_slice(rw);
                        nw.extend_from_slice(&w[pos + rule.lhs.len()..]);
                        add_into(&mut pending, nw, c.mul(k));
                    }
                }
            }
        }
        let mut out: WordCombination<F> = done.into_iter().map(|(w, c)| (c, w)).collect();
        out.sort_by(|a, b| self.compare_words(&a.1, &b.1));
        out
    }

    fn find_rule(&self, w: &[usize]) -> Option<(usize, usize)> {
        for (r, rule) in self.rules.iter().enumerate() {
            let l = rule.lhs.len();
            if l > w.len() {
                continue;
            }
            if let Some(pos) = (0..=w.len() - l).find(|&p| w[p..p + l] == rule.lhs[..]) {
                return Some((r, pos));
            }
        }
        None
    }

    fn check_confluence(&self) -> Result<()> {
        for (i, ri) in self.rules.iter().enumerate() {
            for (j, rj) in self.rules.iter().enumerate() {
                let (li, lj) = (&ri.lhs, &rj.lhs);
                // Overlaps: a proper suffix of li equals a proper prefix of lj.
                for k in 1..li.len().min(lj.len()) {
                    if li[li.len() - k..] != lj[..k] {
                        continue;
                    }
                    let tail = &lj[k..];
                    let head = &li[..li.len() - k];
                    let left: WordCombination<F> = ri
                        .rhs
                        .iter()
                        .map(|(c, w)| (c.clone(), [w.as_slice(), tail].concat()))
                        .collect();
                    let right: WordCombination<F> = rj
                        .rhs
                        .iter()
                        .map(|(c, w)| (c.clone(), [head, w.as_slice()].concat()))
                        .collect();
                    self.require_joinable(left, right, i, j)?;
                }
                // Inclusions: lj occurs inside li.
                if i != j && lj.len() <= li.len() {
                    for p in 0..=li.len() - lj.len() {
                        if li[p..p + lj.len()] != lj[..] {
                            continue;
                        }
                        let left = ri.rhs.clone();
                        let right: WordCombination<F> = rj
                            .rhs
                            .iter()
                            .map(|(c, w)| (c.clone(), [&li[..p], w.as_slice(), &li[p + lj.len()..]].concat()))
                            .collect();
                        self.require_joinable(left, right, i, j)?;
                    }
                }
            }
        }
        Ok(())
    }

    fn require_joinable(&self, a: WordCombination<F>, b: WordCombination<F>, i: usize, j: usize) -> Result<()> {
        let mut diff = a;
        diff.extend(b.into_iter().map(|(c, w)| (c.neg(), w)));
        if self.normal_form(diff).is_empty() {
            Ok(())
        } else {
            Err(Error::Unsupported(format!(
                "relations {} and {} do not form a confluent rewriting system",
                i + 1,
                j + 1
            )))
        }
    }

    fn compute_basis(&mut self) -> Result<()> {
        let n = self.quiver.num_vertices();
        let mut basis = Vec::new();
        let mut queue: VecDeque<Path> = (0..n).map(|v| Path { start: v, end: v, arrows: vec![] }).collect();
        while let Some(p) = queue.pop_front() {
            if basis.len() >= MAX_BASIS {
                return Err(Error::Unsupported(format!(
                    "algebra has more than {MAX_BASIS} basis paths; the ideal is not admissible or the algebra is infinite-dimensional"
                )));
            }
            for (ai, a) in self.quiver.arrows.iter().enumerate() {
                if a.source != p.end {
                    continue;
                }
                let mut w = p.arrows.clone();
                w.push(ai);
                let reducible = self.rules.iter().any(|r| w.ends_with(&r.lhs));
                if !reducible {
                    queue.push_back(Path { start: p.start, end: a.target, arrows: w });
                }
            }
            basis.push(p);
        }
        basis.sort_by(|a, b| a.start.cmp(&b.start).then_with(|| self.compare_words(&a.arrows, &b.arrows)));
        let mut between = vec![vec![Vec::new(); n]; n];
        for (i, p) in basis.iter().enumerate() {
            self.index.insert((p.start, p.arrows.clone()), i);
            between[p.start][p.end].push(i);
        }
        self.basis = basis;
        self.between = between;
        Ok(())
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    pub fn num_arrows(&self) -> usize {
        self.quiver.arrows.len()
    }

    pub fn relations(&self) -> &[WordCombination<F>] {
        &self.relations
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn path(&self, i: usize) -> &Path {
        &self.basis[i]
    }

    pub fn is_monomial(&self) -> bool {
        self.relations.iter().all(|r| r.len() == 1)
    }

    /// Basis indices of the irreducible paths from `i` to `j`.
    pub fn paths_between(&self, i: usize, j: usize) -> &[usize] {
        &self.between[i][j]
    }

    pub fn trivial_path(&self, v: usize) -> usize {
        self.index[&(v, Vec::new())]
    }

    pub fn arrow_path(&self, a: usize) -> Option<usize> {
        self.index.get(&(self.quiver.arrows[a].source, vec![a])).copied()
    }

    /// Element of the algebra represented by a word starting at `start`.
    pub fn word_element(&self, start: usize, word: &[usize]) -> Element<F> {
        if word.is_empty() {
            return vec![(self.trivial_path(start), F::one())];
        }
        let mut out: Element<F> = self
            .normal_form(vec![(F::one(), word.to_vec())])
            .into_iter()
            .map(|(c, w)| (self.index[&(start, w)], c))
            .collect();
        out.sort_by_key(|x| x.0);
        out
    }

    /// The path `p` followed by the path `q`, reduced; zero unless they meet.
    pub fn concat(&self, p: usize, q: usize) -> Element<F> {
        let (pp, qq) = (&self.basis[p], &self.basis[q]);
        if pp.end != qq.start {
            return Vec::new();
        }
        let word = [pp.arrows.as_slice(), qq.arrows.as_slice()].concat();
        self.word_element(pp.start, &word)
    }

    /// Human-readable name of a basis path in composition notation.
    pub fn path_name(&self, i: usize) -> String {
        let p = &self.basis[i];
        if p.arrows.is_empty() {
            return format!("e{}", self.quiver.vertices[p.start]);
        }
        p.arrows.iter().rev().map(|&a| self.quiver.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
    }

    /// The opposite algebra, on the opposite quiver with reversed words.
    pub fn opposite(&self) -> Self {
        let relations = self
            .relations
            .iter()
            .map(|r| r.iter().map(|(c, w)| (c.clone(), w.iter().rev().copied().collect())).collect())
            .collect();
        Self::build(self.quiver.opposite(), relations, !self.reversed_order)
            .expect("opposite of a confluent system is confluent")
    }

    /// Shared opposite algebra. The opposite of the result is `self` again, so
    /// double duals land over the original algebra.
    pub fn opposite_arc(self: &Arc<Self>) -> Arc<Self> {
        self.opposite_cache
            .get_or_init(|| {
                let op = Arc::new(self.opposite());
                let _ = op.opposite_cache.set(Arc::clone(self));
                op
            })
            .clone()
    }

    /// Index in the opposite algebra of the reversed basis path.
    pub fn opposite_index(&self, op: &Algebra<F>, i: usize) -> usize {
        let p = &self.basis[i];
        let rev: Vec<usize> = p.arrows.iter().rev().copied().collect();
        op.index[&(p.end, rev)]
    }
}

fn add_into<F: Field>(map: &mut HashMap<Vec<usize>, F>, w: Vec<usize>, c: F) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&w) {
        Some(v) => {
            *v = v.add(&c);
            if v.is_zero() {
                map.remove(&w);
            }
        }
        None => {
            map.insert(w, c);
        }
    }
}

fn combine_words<F: Field>(combo: WordCombination<F>) -> WordCombination<F> {
    let mut out: WordCombination<F> = Vec::new();
    for (c, w) in combo {
        match out.iter_mut().find(|(_, x)| *x == w) {
            Some(entry) => entry.0 = entry.0.add(&c),
            None => out.push((c, w)),
        }
    }
    out.retain(|(c, _)| !c.is_zero());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    #[test]
    fn path_algebra_dimensions() {
        let a: Algebra<Rational> = Algebra::path_algebra(Quiver::linear_a(3)).unwrap();
        assert_eq!(a.dimension(), 6);
        let rad2 = Algebra::new(Quiver::linear_a(3), vec![vec![(q(1), vec![0, 1])]]).unwrap();
        assert_eq!(rad2.dimension(), 5);
        assert!(rad2.is_monomial());
    }

    #[test]
    fn commutative_square() {
        let quiver = Quiver::new(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "1", "3"), ("c", "2", "4"), ("d", "3", "4")],
        )
        .unwrap();
        // c*a - d*b
        let alg: Algebra<Rational> = Algebra::new(quiver, vec![vec![(q(1), vec![0, 2]), (q(-1), vec![1, 3])]]).unwrap();
        assert_eq!(alg.dimension(), 9);
        assert_eq!(alg.paths_between(0, 3).len(), 1);
        let x = alg.word_element(0, &[0, 2]);
        let y = alg.word_element(0, &[1, 3]);
        assert_eq!(x, y);
        let op = alg.opposite();
        assert_eq!(op.dimension(), 9);
    }

    #[test]
    fn rejects_non_composable_and_non_confluent() {
        assert!(Algebra::<Rational>::new(Quiver::linear_a(3), vec![vec![(q(1), vec![1, 0])]]).is_err());
        let loops = Quiver::new(&["1"], &[("x", "1", "1")]).unwrap();
        assert!(matches!(Algebra::<Rational>::path_algebra(loops), Err(Error::Unsupported(_))));
        // a b and c d both rewrite to e f, leaving a b - c d unresolved.
        let quiver = Quiver::new(
            &["1", "2", "3"],
            &[("a", "1", "2"), ("b", "2", "3"), ("c", "1", "2"), ("d", "2", "3"), ("e", "1", "2"), ("f", "2", "3")],
        )
        .unwrap();
        let rels = vec![vec![(q(1), vec![0, 1]), (q(-1), vec![4, 5])], vec![(q(1), vec![2, 3]), (q(-1), vec![4, 5])]];
        assert!(matches!(Algebra::<Rational>::new(quiver, rels), Err(Error::Unsupported(_))));
    }
}
