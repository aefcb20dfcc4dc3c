//! Closed sets of pairs, the canonical order on them, chains, and the spec-file format.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::gf::{FieldElem, GaloisField};
use crate::text::{content_lines, emit_header, parse_header, parse_int, syntax};

/// A pair (i, j) with 1 ≤ i < j ≤ n.
pub type Pair = (usize, usize);

/// Compares pairs in the canonical total order: (r,s) < (i,j) iff r > i, or r = i and s > j.
pub fn canonical_cmp(a: Pair, b: Pair) -> Ordering {
    b.0.cmp(&a.0).then(b.1.cmp(&a.1))
}

/// A closed set J of pairs on {1..n}, with its canonical indexing and chain caches.
#[derive(Clone, Debug)]
pub struct ClosedSet {
    n: usize,
    order: Vec<Pair>,
    /// `slot[i * (n + 1) + j]` is the canonical index of (i, j), or `usize::MAX`.
    slot: Vec<usize>,
    chains3: Vec<(usize, usize, usize)>,
    chains4: Vec<(usize, usize, usize, usize)>,
    tri: Vec<[usize; 3]>,
    quad: Vec<[usize; 4]>,
}

impl PartialEq for ClosedSet {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.order == other.order
    }
}

impl Eq for ClosedSet {}

fn check_range(n: usize, pairs: &[Pair]) -> Result<()> {
    match pairs.iter().find(|&&(i, j)| i < 1 || i >= j || j > n) {
        Some(&(i, j)) => Err(Error::PairOutOfRange { i, j, n }),
        None => Ok(()),
    }
}

impl ClosedSet {
    /// Validates closure and builds the caches; every missing composite is reported.
    pub fn validate_closed(n: usize, pairs: &[Pair]) -> Result<Self> {
        check_range(n, pairs)?;
        let set: BTreeSet<Pair> = pairs.iter().copied().collect();
        let mut missing = Vec::new();
        for &(i, j) in &set {
            for &(_, k) in set.range((j, 0)..(j + 1, 0)) {
                if !set.contains(&(i, k)) {
                    missing.push((i, j, k));
                }
            }
        }
        if !missing.is_empty() {
            return Err(Error::NotClosed(missing));
        }
        Ok(Self::build(n, set))
    }

    /// The transitive closure of a cover relation.
    pub fn close_covers(n: usize, covers: &[Pair]) -> Result<Self> {
        check_range(n, covers)?;
        let mut rel = vec![vec![false; n + 1]; n + 1];
        for &(i, j) in covers {
            rel[i][j] = true;
        }
        for k in 1..=n {
            for i in 1..=n {
                if rel[i][k] {
                    for j in 1..=n {
                        if rel[k][j] {
                            rel[i][j] = true;
                        }
                    }
                }
            }
        }
        let set = (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .filter(|&(i, j)| rel[i][j])
            .collect();
        Ok(Self::build(n, set))
    }

    /// All pairs i < j ≤ n, i.e. the full upper-triangular group.
    pub fn full(n: usize) -> Self {
        let set = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        Self::build(n, set)
    }

    /// The Heisenberg shape {(1,j)} ∪ {(j,n)} for n ≥ 3.
    pub fn heisenberg(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::ShapeMismatch(format!("Heisenberg shape needs n ≥ 3, got {n}")));
        }
        let set = (2..=n).map(|j| (1, j)).chain((2..n).map(|j| (j, n))).collect();
        Ok(Self::build(n, set))
    }

    fn build(n: usize, set: BTreeSet<Pair>) -> Self {
        let mut order: Vec<Pair> = set.iter().copied().collect();
        order.sort_by(|&a, &b| canonical_cmp(a, b));
        let mut slot = vec![usize::MAX; (n + 1) * (n + 1)];
        for (idx, &(i, j)) in order.iter().enumerate() {
            slot[i * (n + 1) + j] = idx;
        }
        let mut chains3 = Vec::new();
        for &(i, j) in &set {
            for &(_, k) in set.range((j, 0)..(j + 1, 0)) {
                chains3.push((i, j, k));
            }
        }
        let mut chains4 = Vec::new();
        for &(i, j, k) in &chains3 {
            for &(_, l) in set.range((k, 0)..(k + 1, 0)) {
                chains4.push((i, j, k, l));
            }
        }
        let mut cs = ClosedSet { n, order, slot, chains3, chains4, tri: Vec::new(), quad: Vec::new() };
        cs.tri = cs
            .chains3
            .iter()
            .map(|&(i, j, k)| [cs.idx(i, j), cs.idx(j, k), cs.idx(i, k)])
            .collect();
        cs.quad = cs
            .chains4
            .iter()
            .map(|&(i, j, k, l)| [cs.idx(i, j), cs.idx(j, k), cs.idx(k, l), cs.idx(i, l)])
            .collect();
        cs
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        self.index_of(i, j).expect("pair in closed set")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// |J|.
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Pairs in canonical order; position is the pair's index everywhere.
    pub fn pairs(&self) -> &[Pair] {
        &self.order
    }

    pub fn index_of(&self, i: usize, j: usize) -> Option<usize> {
        if i > self.n || j > self.n {
            return None;
        }
        let s = self.slot[i * (self.n + 1) + j];
        (s != usize::MAX).then_some(s)
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.index_of(i, j).is_some()
    }

    /// All (i,j,k) with (i,j),(j,k) ∈ J, lexicographically.
    pub fn chains3(&self) -> &[(usize, usize, usize)] {
        &self.chains3
    }

    /// All (i,j,k,l) with consecutive pairs in J, lexicographically.
    pub fn chains4(&self) -> &[(usize, usize, usize, usize)] {
        &self.chains4
    }

    /// Index form of `chains3`: [ij, jk, ik].
    pub fn chains3_idx(&self) -> &[[usize; 3]] {
        &self.tri
    }

    /// Index form of `chains4`: [ij, jk, kl, il].
    pub fn chains4_idx(&self) -> &[[usize; 4]] {
        &self.quad
    }

    pub fn has_4chain(&self) -> bool {
        !self.chains4.is_empty()
    }

    /// J′ = {(i,k) : (i,j),(j,k) ∈ J for some j}.
    pub fn derived_subgroup(&self) -> ClosedSet {
        let set = self.chains3.iter().map(|&(i, _, k)| (i, k)).collect();
        Self::build(self.n, set)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_heisenberg(&self) -> bool {
        Self::heisenberg(self.n).is_ok_and(|h| &h == self)
    }

    /// Support of a functional as pairs, in canonical order.
    pub fn support(&self, values: &[FieldElem]) -> Vec<Pair> {
        self.order.iter().zip(values).filter(|(_, v)| !v.is_zero()).map(|(&p, _)| p).collect()
    }

    /// Parses "i,j=v;..." into a dense functional. Absent pairs are zero.
    pub fn parse_functional(&self, f: &GaloisField, text: &str) -> Result<Vec<FieldElem>> {
        let mut values = vec![FieldElem::ZERO; self.len()];
        for item in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let (pair, value) =
                item.split_once('=').ok_or_else(|| syntax(1, format!("expected 'i,j=v', found '{item}'")))?;
            let (i, j) = pair
                .split_once(',')
                .ok_or_else(|| syntax(1, format!("expected 'i,j', found '{pair}'")))?;
            let i: usize = parse_int(1, i.trim(), "a row index")?;
            let j: usize = parse_int(1, j.trim(), "a column index")?;
            check_range(self.n, &[(i, j)])?;
            let idx = self
                .index_of(i, j)
                .ok_or_else(|| syntax(1, format!("pair ({i},{j}) is not in J")))?;
            values[idx] = f.parse_elem(value)?;
        }
        Ok(values)
    }

    /// Nonzero entries as ("i,j", value) in canonical order.
    pub fn functional_entries(&self, f: &GaloisField, values: &[FieldElem]) -> Vec<(String, String)> {
        self.order
            .iter()
            .zip(values)
            .filter(|(_, v)| !v.is_zero())
            .map(|(&(i, j), &v)| (format!("{i},{j}"), f.format_elem(v)))
            .collect()
    }

    /// Inverse of [`parse_functional`](Self::parse_functional).
    pub fn format_functional(&self, f: &GaloisField, values: &[FieldElem]) -> String {
        self.functional_entries(f, values)
            .into_iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// A parsed poset spec file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetSpec {
    pub set: ClosedSet,
    pub field: GaloisField,
}

/// Parses the poset spec format: `n`, `q`, optional `modulus`, then `pairs` or `covers`
/// followed by one "i j" per line.
pub fn parse_spec(text: &str) -> Result<PosetSpec> {
    let lines = content_lines(text);
    let header = parse_header(&lines, "n")?;
    let mode_line = lines
        .get(header.next)
        .ok_or_else(|| syntax(lines.last().map_or(1, |l| l.number), "missing 'pairs' or 'covers' line"))?;
    let mode = mode_line.tokens[0];
    if mode_line.tokens.len() != 1 || (mode != "pairs" && mode != "covers") {
        return Err(syntax(mode_line.number, format!("expected 'pairs' or 'covers', found '{}'", mode_line.tokens.join(" "))));
    }
    let mut pairs = Vec::new();
    for line in &lines[header.next + 1..] {
        if line.tokens.len() != 2 {
            return Err(syntax(line.number, "expected a pair 'i j'"));
        }
        let i = parse_int(line.number, line.tokens[0], "an integer")?;
        let j = parse_int(line.number, line.tokens[1], "an integer")?;
        pairs.push((i, j));
    }
    let set = if mode == "pairs" {
        ClosedSet::validate_closed(header.size, &pairs)?
    } else {
        ClosedSet::close_covers(header.size, &pairs)?
    };
    Ok(PosetSpec { set, field: header.field })
}

/// Canonical text form in `pairs` mode, pairs in lexicographic order.
pub fn emit_spec(set: &ClosedSet, field: &GaloisField) -> String {
    let mut out = emit_header("n", set.n(), field);
    out.push_str("pairs\n");
    let mut pairs = set.pairs().to_vec();
    pairs.sort();
    for (i, j) in pairs {
        out.push_str(&format!("{i} {j}\n"));
    }
    out
}
