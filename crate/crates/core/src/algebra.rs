//! Algebra groups 1 + n presented by structure constants.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::formula::{meshed_value, mesh_outcome, pairing, MeshData};
use crate::gf::{span_rank, CharValue, FieldElem, FqMatrix, GaloisField};
use crate::oracle::NilpotentAlgebra;
use crate::pattern::{OrbitKind, OrbitPartition};
use crate::poset::ClosedSet;
use crate::text::{content_lines, emit_header, parse_header, parse_int, syntax};

/// A sparse strictly upper-triangular matrix: 1-based (row, column, value) entries.
pub type SparseUpper = Vec<(usize, usize, FieldElem)>;

/// Basis matrices realizing the algebra inside n×n upper-triangular matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub n: usize,
    pub basis: Vec<SparseUpper>,
}

/// A nilpotent associative algebra with basis v_1..v_d and v_i v_j = Σ_k c_ij^k v_k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureAlgebra {
    field: GaloisField,
    d: usize,
    c: Vec<FieldElem>,
    embedding: Option<Embedding>,
}

impl StructureAlgebra {
    /// Builds from 0-based (i, j, k, c_ij^k) entries and validates the result.
    pub fn new(field: GaloisField, d: usize, entries: &[(usize, usize, usize, FieldElem)]) -> Result<Self> {
        let mut c = vec![FieldElem::ZERO; d * d * d];
        for &(i, j, k, v) in entries {
            if i >= d || j >= d || k >= d {
                return Err(Error::ShapeMismatch(format!(
                    "constant index ({},{},{}) exceeds d = {d}",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            c[(i * d + j) * d + k] = v;
        }
        let alg = StructureAlgebra { field, d, c, embedding: None };
        alg.check_associative()?;
        alg.check_nilpotent()?;
        Ok(alg)
    }

    /// Structure constants of the span of the given basis matrices, which must be
    /// linearly independent and closed under multiplication.
    pub fn from_embedding(field: GaloisField, n: usize, basis: Vec<SparseUpper>) -> Result<Self> {
        let d = basis.len();
        let mut dense = Vec::with_capacity(d);
        for (b, entries) in basis.iter().enumerate() {
            let mut m = vec![vec![FieldElem::ZERO; n + 1]; n + 1];
            for &(i, j, v) in entries {
                if i < 1 || i >= j || j > n {
                    return Err(Error::PairOutOfRange { i, j, n });
                }
                m[i][j] = field.add(m[i][j], v);
            }
            if entries.is_empty() {
                return Err(Error::ShapeMismatch(format!("basis matrix {} is empty", b + 1)));
            }
            dense.push(m);
        }
        let positions: Vec<(usize, usize)> =
            (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        // columns are the flattened basis matrices
        let system = FqMatrix::from_rows(
            positions.iter().map(|&(i, j)| dense.iter().map(|m| m[i][j]).collect()).collect(),
        );
        if d > 0 && system.rank(&field) < d {
            return Err(Error::ShapeMismatch("basis matrices are linearly dependent".into()));
        }
        let mut entries = Vec::new();
        for a in 0..d {
            for b in 0..d {
                let prod: Vec<FieldElem> = positions
                    .iter()
                    .map(|&(i, j)| {
                        (i + 1..j).fold(FieldElem::ZERO, |acc, m| field.mul_add(acc, dense[a][i][m], dense[b][m][j]))
                    })
                    .collect();
                if prod.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let coords = system.solve(&field, &prod).ok_or_else(|| {
                    Error::ShapeMismatch(format!("product of basis matrices {} and {} leaves the span", a + 1, b + 1))
                })?;
                for (k, v) in coords.into_iter().enumerate() {
                    if !v.is_zero() {
                        entries.push((a, b, k, v));
                    }
                }
            }
        }
        let mut alg = Self::new(field, d, &entries)?;
        alg.embedding = Some(Embedding { n, basis });
        Ok(alg)
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn embedding(&self) -> Option<&Embedding> {
        self.embedding.as_ref()
    }

    /// c_ij^k, 0-based.
    #[inline]
    pub fn constant(&self, i: usize, j: usize, k: usize) -> FieldElem {
        self.c[(i * self.d + j) * self.d + k]
    }

    /// Nonzero constants as 0-based (i, j, k, value), lexicographically.
    pub fn nonzero_constants(&self) -> Vec<(usize, usize, usize, FieldElem)> {
        let d = self.d;
        (0..d * d * d)
            .filter(|&x| !self.c[x].is_zero())
            .map(|x| (x / (d * d), x / d % d, x % d, self.c[x]))
            .collect()
    }

    /// Parses "i=v;..." (1-based basis indices) into coordinates. Absent indices are zero.
    pub fn parse_functional(&self, text: &str) -> Result<Vec<FieldElem>> {
        let mut values = self.zero();
        for item in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let (index, value) =
                item.split_once('=').ok_or_else(|| syntax(1, format!("expected 'i=v', found '{item}'")))?;
            let i: usize = parse_int(1, index.trim(), "a basis index")?;
            if i < 1 || i > self.d {
                return Err(syntax(1, format!("basis index {i} outside 1..{}", self.d)));
            }
            values[i - 1] = self.field.parse_elem(value.trim())?;
        }
        Ok(values)
    }

    /// Nonzero coordinates as ("i", value).
    pub fn functional_entries(&self, values: &[FieldElem]) -> Vec<(String, String)> {
        values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, &v)| ((i + 1).to_string(), self.field.format_elem(v)))
            .collect()
    }

    pub fn format_functional(&self, values: &[FieldElem]) -> String {
        self.functional_entries(values)
            .into_iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn zero(&self) -> Vec<FieldElem> {
        vec![FieldElem::ZERO; self.d]
    }

    pub fn multiply(&self, x: &[FieldElem], y: &[FieldElem]) -> Vec<FieldElem> {
        let f = &self.field;
        let d = self.d;
        let mut out = self.zero();
        for i in (0..d).filter(|&i| !x[i].is_zero()) {
            for j in (0..d).filter(|&j| !y[j].is_zero()) {
                let xy = f.mul(x[i], y[j]);
                for k in 0..d {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        out[k] = f.mul_add(out[k], xy, c);
                    }
                }
            }
        }
        out
    }

    fn check_associative(&self) -> Result<()> {
        let f = &self.field;
        let d = self.d;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let lhs = (0..d).fold(FieldElem::ZERO, |acc, m| {
                            f.mul_add(acc, self.constant(i, j, m), self.constant(m, k, l))
                        });
                        let rhs = (0..d).fold(FieldElem::ZERO, |acc, m| {
                            f.mul_add(acc, self.constant(j, k, m), self.constant(i, m, l))
                        });
                        if lhs != rhs {
                            return Err(Error::NotAssociative { i: i + 1, j: j + 1, k: k + 1, l: l + 1 });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// n^{d+1} = 0, witnessed by products of basis vectors spanning each power.
    fn check_nilpotent(&self) -> Result<()> {
        let d = self.d;
        let mut span: Vec<(Vec<FieldElem>, Vec<usize>)> = (0..d)
            .map(|i| {
                let mut v = self.zero();
                v[i] = FieldElem::ONE;
                (v, vec![i + 1])
            })
            .collect();
        for _ in 0..d {
            let mut next: Vec<(Vec<FieldElem>, Vec<usize>)> = Vec::new();
            let mut rows: Vec<Vec<FieldElem>> = Vec::new();
            for (v, w) in &span {
                for j in 0..d {
                    let mut e = self.zero();
                    e[j] = FieldElem::ONE;
                    let prod = self.multiply(v, &e);
                    if prod.iter().all(|x| x.is_zero()) {
                        continue;
                    }
                    rows.push(prod.clone());
                    if span_rank(&self.field, &rows, d) > next.len() {
                        let mut witness = w.clone();
                        witness.push(j + 1);
                        next.push((prod, witness));
                    } else {
                        rows.pop();
                    }
                }
            }
            span = next;
            if span.is_empty() {
                return Ok(());
            }
        }
        Err(Error::NotNilpotent(span.swap_remove(0).1))
    }
}

impl NilpotentAlgebra for StructureAlgebra {
    fn field(&self) -> &GaloisField {
        &self.field
    }

    fn dim(&self) -> usize {
        self.d
    }

    fn mul(&self, x: &[FieldElem], y: &[FieldElem]) -> Vec<FieldElem> {
        self.multiply(x, y)
    }
}

/// The algebra of n_J with basis X_α, α ∈ J in canonical order.
pub fn pattern_to_algebra(set: &ClosedSet, field: &GaloisField) -> StructureAlgebra {
    let entries: Vec<(usize, usize, usize, FieldElem)> = set
        .chains3_idx()
        .iter()
        .map(|&[ij, jk, ik]| (ij, jk, ik, FieldElem::ONE))
        .collect();
    let basis = set.pairs().iter().map(|&(i, j)| vec![(i, j, FieldElem::ONE)]).collect();
    let mut alg = StructureAlgebra::new(field.clone(), set.len(), &entries).expect("pattern algebras are valid");
    alg.embedding = Some(Embedding { n: set.n(), basis });
    alg
}

/// The smallest closed set whose pattern algebra contains the given matrices.
pub fn pattern_envelope(n: usize, basis: &[SparseUpper]) -> Result<ClosedSet> {
    let positions: Vec<(usize, usize)> = basis
        .iter()
        .flatten()
        .filter(|(_, _, v)| !v.is_zero())
        .map(|&(i, j, _)| (i, j))
        .collect();
    ClosedSet::close_covers(n, &positions)
}

/// The envelope of an algebra's embedding.
pub fn algebra_envelope(alg: &StructureAlgebra) -> Result<ClosedSet> {
    let emb = alg
        .embedding()
        .ok_or_else(|| Error::ShapeMismatch("algebra has no embedding".into()))?;
    pattern_envelope(emb.n, &emb.basis)
}

/// M_ij = φ C_i C^j η, a_i = φ C_i η, b_j = φ C^j η.
pub fn alg_mesh_data(alg: &StructureAlgebra, phi: &[FieldElem], eta: &[FieldElem]) -> MeshData {
    let f = alg.field();
    let d = alg.dim();
    // u[k][j] = Σ_l c_kj^l η_l, so that b_j = Σ_i φ_i u[i][j] and a_i = Σ_j φ_j u[i][j]
    let u: Vec<Vec<FieldElem>> = (0..d)
        .map(|k| {
            (0..d)
                .map(|j| (0..d).fold(FieldElem::ZERO, |acc, l| f.mul_add(acc, alg.constant(k, j, l), eta[l])))
                .collect()
        })
        .collect();
    // w[i][k] = Σ_m φ_m c_im^k
    let w: Vec<Vec<FieldElem>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|k| (0..d).fold(FieldElem::ZERO, |acc, m| f.mul_add(acc, phi[m], alg.constant(i, m, k))))
                .collect()
        })
        .collect();
    let mut m = FqMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            m.set(i, j, (0..d).fold(FieldElem::ZERO, |acc, k| f.mul_add(acc, w[i][k], u[k][j])));
        }
    }
    let a = (0..d).map(|i| (0..d).fold(FieldElem::ZERO, |acc, j| f.mul_add(acc, phi[j], u[i][j]))).collect();
    let b = (0..d).map(|j| (0..d).fold(FieldElem::ZERO, |acc, i| f.mul_add(acc, phi[i], u[i][j]))).collect();
    MeshData { m, a, b }
}

fn pack(q: u64, v: &[FieldElem]) -> u64 {
    v.iter().fold(0, |acc, x| acc * q + x.packed() as u64)
}

fn unpack(q: u64, d: usize, mut code: u64) -> Vec<FieldElem> {
    let mut v = vec![FieldElem::ZERO; d];
    for slot in v.iter_mut().rev() {
        *slot = FieldElem((code % q) as u32);
        code /= q;
    }
    v
}

fn check_cap(alg: &StructureAlgebra, cap: u64) -> Result<u64> {
    let required = (alg.field().q() as u128).saturating_pow(alg.dim() as u32);
    if required > cap as u128 {
        Err(Error::SizeCapExceeded { required, cap })
    } else {
        Ok(required as u64)
    }
}

/// log_q of the right co-orbit {λ_η x_ρ^{-1}}, enumerated over every ρ.
pub fn alg_corank(alg: &StructureAlgebra, eta: &[FieldElem], cap: u64) -> Result<usize> {
    let total = check_cap(alg, cap)?;
    let f = alg.field();
    let q = f.q() as u64;
    let d = alg.dim();
    // η'_m = η_m + Σ_l ρ_l Σ_k c_ml^k η_k
    let r: Vec<Vec<FieldElem>> = (0..d)
        .map(|m| {
            (0..d)
                .map(|l| (0..d).fold(FieldElem::ZERO, |acc, k| f.mul_add(acc, alg.constant(m, l, k), eta[k])))
                .collect()
        })
        .collect();
    let mut seen = HashSet::new();
    for code in 0..total {
        let rho = unpack(q, d, code);
        let image: Vec<FieldElem> = (0..d)
            .map(|m| (0..d).fold(eta[m], |acc, l| f.mul_add(acc, rho[l], r[m][l])))
            .collect();
        seen.insert(pack(q, &image));
    }
    let size = seen.len() as u64;
    let mut exp = 0;
    let mut power = 1u64;
    while power < size {
        power *= q;
        exp += 1;
    }
    if power != size {
        return Err(Error::InternalInvariantViolation(format!("right co-orbit size {size} is not a power of {q}")));
    }
    Ok(exp)
}

/// χ^η(x_φ) for an algebra group.
pub fn alg_value(alg: &StructureAlgebra, eta: &[FieldElem], phi: &[FieldElem], cap: u64) -> Result<CharValue> {
    alg_value_with_corank(alg, eta, phi, alg_corank(alg, eta, cap)?)
}

pub fn alg_value_with_corank(
    alg: &StructureAlgebra,
    eta: &[FieldElem],
    phi: &[FieldElem],
    corank: usize,
) -> Result<CharValue> {
    let f = alg.field();
    let data = alg_mesh_data(alg, phi, eta);
    let Some((b0, rank)) = mesh_outcome(f, &data) else {
        return Ok(CharValue::Zero);
    };
    let t = f.add(pairing(f, &b0, &data.b), pairing(f, phi, eta));
    meshed_value(f, corank, rank, t)
}

/// Bases of ann_R(η) and ann_L(η).
pub fn alg_ann_spaces(alg: &StructureAlgebra, eta: &[FieldElem]) -> (Vec<Vec<FieldElem>>, Vec<Vec<FieldElem>>) {
    let f = alg.field();
    let d = alg.dim();
    let build = |right: bool| {
        FqMatrix::from_rows(
            (0..d)
                .map(|i| {
                    (0..d)
                        .map(|l| {
                            (0..d).fold(FieldElem::ZERO, |acc, k| {
                                let c = if right { alg.constant(i, l, k) } else { alg.constant(l, i, k) };
                                f.mul_add(acc, c, eta[k])
                            })
                        })
                        .collect()
                })
                .collect(),
        )
    };
    if d == 0 {
        return (Vec::new(), Vec::new());
    }
    (build(true).nullspace_basis(f), build(false).nullspace_basis(f))
}

pub fn alg_is_irreducible(alg: &StructureAlgebra, eta: &[FieldElem]) -> bool {
    let (r, l) = alg_ann_spaces(alg, eta);
    let stacked: Vec<Vec<FieldElem>> = r.into_iter().chain(l).collect();
    span_rank(alg.field(), &stacked, alg.dim()) == alg.dim()
}

/// `dst += coef·x[src]` updates for one group generator.
type Moves = Vec<(usize, usize, FieldElem)>;

/// Two-sided orbits of the algebra group on n or n^*, with lexicographically
/// minimal representatives.
pub fn alg_orbit_partition(alg: &StructureAlgebra, kind: OrbitKind, cap: u64) -> Result<OrbitPartition> {
    let total = check_cap(alg, cap)?;
    let f = alg.field();
    let q = f.q() as u64;
    let d = alg.dim();
    let gens = generators(alg, total);
    let mut moves: Vec<Moves> = Vec::new();
    for g in &gens {
        let mut left = Moves::new();
        let mut right = Moves::new();
        for j in 0..d {
            let mut e = alg.zero();
            e[j] = FieldElem::ONE;
            let ge = alg.multiply(g, &e);
            let eg = alg.multiply(&e, g);
            for k in 0..d {
                match kind {
                    OrbitKind::Class => {
                        left.push((k, j, ge[k]));
                        right.push((k, j, eg[k]));
                    }
                    OrbitKind::Character => {
                        left.push((j, k, ge[k]));
                        right.push((j, k, eg[k]));
                    }
                }
            }
        }
        left.retain(|m| !m.2.is_zero());
        right.retain(|m| !m.2.is_zero());
        moves.push(left);
        moves.push(right);
    }
    moves.retain(|m| !m.is_empty());
    let mut orbit_of = vec![u32::MAX; total as usize];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for seed in 0..total {
        if orbit_of[seed as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        orbit_of[seed as usize] = id;
        queue.push_back(seed);
        let mut size = 0;
        while let Some(code) = queue.pop_front() {
            size += 1;
            let x = unpack(q, d, code);
            for mv in &moves {
                let mut y = x.clone();
                for &(dst, src, c) in mv {
                    y[dst] = f.mul_add(y[dst], c, x[src]);
                }
                let c = pack(q, &y) as usize;
                if orbit_of[c] == u32::MAX {
                    orbit_of[c] = id;
                    queue.push_back(c as u64);
                }
            }
        }
        reps.push(unpack(q, d, seed));
        sizes.push(size);
    }
    Ok(OrbitPartition { reps, sizes, orbit_of })
}

/// {t·v_i}, extended greedily until the elements generate the whole group.
fn generators(alg: &StructureAlgebra, total: u64) -> Vec<Vec<FieldElem>> {
    let f = alg.field();
    let q = f.q() as u64;
    let d = alg.dim();
    let mut gens: Vec<Vec<FieldElem>> = Vec::new();
    for i in 0..d {
        for t in f.units() {
            let mut g = alg.zero();
            g[i] = t;
            gens.push(g);
        }
    }
    loop {
        let mut seen = vec![false; total as usize];
        seen[0] = true;
        let mut queue = VecDeque::from([alg.zero()]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let xg = alg.multiply(&x, g);
                let y: Vec<FieldElem> = (0..d).map(|k| f.add(f.add(x[k], g[k]), xg[k])).collect();
                let c = pack(q, &y) as usize;
                if !seen[c] {
                    seen[c] = true;
                    queue.push_back(y);
                }
            }
        }
        match seen.iter().position(|&s| !s) {
            None => return gens,
            Some(code) => gens.push(unpack(q, d, code as u64)),
        }
    }
}

/// Parses the algebra spec format: `d`, `q`, optional `modulus`, then a `constants`
/// section of "i j k v" lines and/or an `embed n <n>` section of "b i j v" lines.
pub fn parse_algebra(text: &str) -> Result<StructureAlgebra> {
    let lines = content_lines(text);
    let header = parse_header(&lines, "d")?;
    let field = header.field;
    let d = header.size;
    let mut constants: Option<Vec<(usize, usize, usize, FieldElem)>> = None;
    let mut embed: Option<(usize, Vec<SparseUpper>)> = None;
    let mut section = "";
    for line in &lines[header.next..] {
        let t = &line.tokens;
        match t[0] {
            "constants" if t.len() == 1 => {
                section = "constants";
                constants.get_or_insert_with(Vec::new);
                continue;
            }
            "embed" => {
                if t.len() != 3 || t[1] != "n" {
                    return Err(syntax(line.number, "expected 'embed n <int>'"));
                }
                let n = parse_int(line.number, t[2], "an integer")?;
                embed = Some((n, vec![Vec::new(); d]));
                section = "embed";
                continue;
            }
            _ => {}
        }
        if t.len() != 4 {
            return Err(syntax(line.number, "expected four fields"));
        }
        let nums: Vec<usize> = t[..3]
            .iter()
            .map(|s| parse_int(line.number, s, "an index"))
            .collect::<Result<_>>()?;
        let v = field.parse_elem(t[3]).map_err(|_| syntax(line.number, format!("bad field element '{}'", t[3])))?;
        match section {
            "constants" => {
                if nums.iter().any(|&x| x < 1 || x > d) {
                    return Err(syntax(line.number, format!("indices must lie in 1..{d}")));
                }
                constants.as_mut().expect("section open").push((nums[0] - 1, nums[1] - 1, nums[2] - 1, v));
            }
            "embed" => {
                let (n, basis) = embed.as_mut().expect("section open");
                let (b, i, j) = (nums[0], nums[1], nums[2]);
                if b < 1 || b > d {
                    return Err(syntax(line.number, format!("basis index must lie in 1..{d}")));
                }
                if i < 1 || i >= j || j > *n {
                    return Err(Error::PairOutOfRange { i, j, n: *n });
                }
                basis[b - 1].push((i, j, v));
            }
            _ => return Err(syntax(line.number, "expected 'constants' or 'embed n <int>'")),
        }
    }
    match (constants, embed) {
        (None, None) => Err(syntax(lines.last().map_or(1, |l| l.number), "missing 'constants' section")),
        (Some(c), None) => StructureAlgebra::new(field, d, &c),
        (c, Some((n, basis))) => {
            let from_basis = StructureAlgebra::from_embedding(field.clone(), n, basis)?;
            if let Some(c) = c {
                let given = StructureAlgebra::new(field, d, &c)?;
                if given.c != from_basis.c {
                    return Err(Error::SpecMismatch("constants disagree with the embedded basis".into()));
                }
            }
            Ok(from_basis)
        }
    }
}

/// Canonical text form: header, every nonzero constant, and the embedding if any.
pub fn emit_algebra(alg: &StructureAlgebra) -> String {
    let f = alg.field();
    let mut out = emit_header("d", alg.dim(), f);
    out.push_str("constants\n");
    for (i, j, k, v) in alg.nonzero_constants() {
        out.push_str(&format!("{} {} {} {}\n", i + 1, j + 1, k + 1, f.format_elem(v)));
    }
    if let Some(emb) = alg.embedding() {
        out.push_str(&format!("embed n {}\n", emb.n));
        for (b, entries) in emb.basis.iter().enumerate() {
            for &(i, j, v) in entries {
                out.push_str(&format!("{} {i} {j} {}\n", b + 1, f.format_elem(v)));
            }
        }
    }
    out
}
