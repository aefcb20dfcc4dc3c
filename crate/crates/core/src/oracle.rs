//! Brute-force supercharacter theory of a fully enumerated algebra group 1 + n.
//!
//! Everything here is computed from the multiplication of n alone, without the
//! update formulas used elsewhere in the crate.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{CharValue, CycInt, FieldElem, GaloisField};
use crate::pattern::PatternGroup;

/// Default bound on the group order for oracle runs.
pub const DEFAULT_ORACLE_CAP: u64 = 1 << 12;

/// A finite-dimensional nilpotent associative algebra with a fixed basis.
pub trait NilpotentAlgebra: Sync {
    fn field(&self) -> &GaloisField;
    fn dim(&self) -> usize;
    /// The product of two coordinate vectors.
    fn mul(&self, x: &[FieldElem], y: &[FieldElem]) -> Vec<FieldElem>;
}

/// n_J realized as strictly upper-triangular n×n matrices.
pub struct DensePattern<'a> {
    group: &'a PatternGroup,
}

impl<'a> DensePattern<'a> {
    pub fn new(group: &'a PatternGroup) -> Self {
        DensePattern { group }
    }
}

impl NilpotentAlgebra for DensePattern<'_> {
    fn field(&self) -> &GaloisField {
        self.group.field()
    }

    fn dim(&self) -> usize {
        self.group.dim()
    }

    fn mul(&self, x: &[FieldElem], y: &[FieldElem]) -> Vec<FieldElem> {
        let set = self.group.set();
        let f = self.group.field();
        let n = set.n();
        let mut a = vec![vec![FieldElem::ZERO; n + 1]; n + 1];
        let mut b = vec![vec![FieldElem::ZERO; n + 1]; n + 1];
        for (k, &(i, j)) in set.pairs().iter().enumerate() {
            a[i][j] = x[k];
            b[i][j] = y[k];
        }
        set.pairs()
            .iter()
            .map(|&(i, j)| (1..=n).fold(FieldElem::ZERO, |acc, m| f.mul_add(acc, a[i][m], b[m][j])))
            .collect()
    }
}

/// `x ↦ x + Σ coef·x[src]` into `dst`, for each (dst, src, coef).
type SparseMap = Vec<(usize, usize, FieldElem)>;

fn basis(d: usize, i: usize) -> Vec<FieldElem> {
    let mut v = vec![FieldElem::ZERO; d];
    v[i] = FieldElem::ONE;
    v
}

/// A partition of an enumerated space into orbits.
#[derive(Clone, Debug)]
pub struct Partition {
    /// Smallest packed member of each orbit.
    pub reps: Vec<u64>,
    pub sizes: Vec<u64>,
    pub orbit_of: Vec<u32>,
}

/// The full oracle supercharacter table.
#[derive(Clone, Debug)]
pub struct OracleTable {
    pub classes: Partition,
    pub chars: Partition,
    /// One-sided (right) co-orbit size of each character orbit.
    pub right_sizes: Vec<u64>,
    /// `values[c][k]`: character orbit c on superclass k.
    pub values: Vec<Vec<CycInt>>,
}

/// Pass/fail results of the supercharacter-theory axioms.
#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub identity_singleton: bool,
    pub counts_equal: bool,
    pub constant_on_superclasses: bool,
    pub unions_of_classes: bool,
    /// Human-readable witnesses for failures.
    pub witnesses: Vec<String>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.identity_singleton && self.counts_equal && self.constant_on_superclasses && self.unions_of_classes
    }
}

/// An enumerated algebra group with precomputed generator actions.
pub struct Oracle<'a, A: NilpotentAlgebra> {
    alg: &'a A,
    q: u64,
    d: usize,
    size: u64,
    generators: Vec<Vec<FieldElem>>,
    left: Vec<SparseMap>,
    right: Vec<SparseMap>,
    co_left: Vec<SparseMap>,
    co_right: Vec<SparseMap>,
}

impl<'a, A: NilpotentAlgebra> Oracle<'a, A> {
    pub fn new(alg: &'a A, cap: u64) -> Result<Self> {
        let q = alg.field().q() as u64;
        let d = alg.dim();
        let required = (q as u128).saturating_pow(d as u32);
        if required > cap as u128 {
            return Err(Error::SizeCapExceeded { required, cap });
        }
        let mut oracle = Oracle {
            alg,
            q,
            d,
            size: required as u64,
            generators: Vec::new(),
            left: Vec::new(),
            right: Vec::new(),
            co_left: Vec::new(),
            co_right: Vec::new(),
        };
        let f = alg.field();
        for i in 0..d {
            for t in f.units() {
                let mut g = vec![FieldElem::ZERO; d];
                g[i] = t;
                oracle.push_generator(g);
            }
        }
        oracle.complete_generators();
        Ok(oracle)
    }

    fn push_generator(&mut self, g: Vec<FieldElem>) {
        let d = self.d;
        let mut left = SparseMap::new();
        let mut right = SparseMap::new();
        let mut co_left = SparseMap::new();
        let mut co_right = SparseMap::new();
        for j in 0..d {
            let e = basis(d, j);
            for (k, &c) in self.alg.mul(&g, &e).iter().enumerate() {
                if !c.is_zero() {
                    left.push((k, j, c));
                    co_left.push((j, k, c));
                }
            }
            for (k, &c) in self.alg.mul(&e, &g).iter().enumerate() {
                if !c.is_zero() {
                    right.push((k, j, c));
                    co_right.push((j, k, c));
                }
            }
        }
        self.generators.push(g);
        self.left.push(left);
        self.right.push(right);
        self.co_left.push(co_left);
        self.co_right.push(co_right);
    }

    /// Adds group elements until the generator set generates 1 + n.
    fn complete_generators(&mut self) {
        loop {
            let reached = self.generated_subgroup();
            match reached.iter().position(|&r| !r) {
                None => return,
                Some(code) => {
                    let g = self.unpack(code as u64);
                    self.push_generator(g);
                }
            }
        }
    }

    /// Membership flags of the subgroup generated by the current generators.
    fn generated_subgroup(&self) -> Vec<bool> {
        let f = self.alg.field();
        let mut seen = vec![false; self.size as usize];
        let mut queue = VecDeque::from([0u64]);
        seen[0] = true;
        while let Some(code) = queue.pop_front() {
            let x = self.unpack(code);
            for (g, right) in self.generators.iter().zip(&self.right) {
                // (1 + X)(1 + G) = 1 + X + G + XG
                let mut y = apply(f, right, &x);
                for (yi, &gi) in y.iter_mut().zip(g) {
                    *yi = f.add(*yi, gi);
                }
                let c = self.pack(&y);
                if !seen[c as usize] {
                    seen[c as usize] = true;
                    queue.push_back(c);
                }
            }
        }
        seen
    }

    pub fn order(&self) -> u64 {
        self.size
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn pack(&self, v: &[FieldElem]) -> u64 {
        v.iter().fold(0, |acc, x| acc * self.q + x.packed() as u64)
    }

    pub fn unpack(&self, mut code: u64) -> Vec<FieldElem> {
        let mut v = vec![FieldElem::ZERO; self.d];
        for slot in v.iter_mut().rev() {
            *slot = FieldElem((code % self.q) as u32);
            code /= self.q;
        }
        v
    }

    fn partition(&self, maps: &[&SparseMap]) -> Partition {
        let f = self.alg.field();
        let mut orbit_of = vec![u32::MAX; self.size as usize];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        let mut queue = VecDeque::new();
        for seed in 0..self.size {
            if orbit_of[seed as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            orbit_of[seed as usize] = id;
            queue.push_back(seed);
            let mut count = 0u64;
            while let Some(code) = queue.pop_front() {
                count += 1;
                let x = self.unpack(code);
                for map in maps {
                    let c = self.pack(&apply(f, map, &x));
                    if orbit_of[c as usize] == u32::MAX {
                        orbit_of[c as usize] = id;
                        queue.push_back(c);
                    }
                }
            }
            reps.push(seed);
            sizes.push(count);
        }
        Partition { reps, sizes, orbit_of }
    }

    fn orbit_size(&self, start: u64, maps: &[SparseMap]) -> u64 {
        let f = self.alg.field();
        let mut seen = std::collections::HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(code) = queue.pop_front() {
            let x = self.unpack(code);
            for map in maps {
                let c = self.pack(&apply(f, map, &x));
                if seen.insert(c) {
                    queue.push_back(c);
                }
            }
        }
        seen.len() as u64
    }

    /// Two-sided orbits of n: the superclasses.
    pub fn superclasses(&self) -> Partition {
        let maps: Vec<&SparseMap> = self.left.iter().chain(&self.right).collect();
        self.partition(&maps)
    }

    /// Two-sided orbits of n^*.
    pub fn coorbits(&self) -> Partition {
        let maps: Vec<&SparseMap> = self.co_left.iter().chain(&self.co_right).collect();
        self.partition(&maps)
    }

    /// Size of the right co-orbit λ_η·(1 + n).
    pub fn right_coorbit_size(&self, eta: &[FieldElem]) -> u64 {
        self.orbit_size(self.pack(eta), &self.co_right)
    }

    /// Orbits of the conjugation action.
    pub fn conjugacy_classes(&self) -> Partition {
        let f = self.alg.field();
        let d = self.d;
        let maps: Vec<SparseMap> = self
            .generators
            .iter()
            .map(|g| {
                let h = algebra_inverse(self.alg, g);
                let mut map = SparseMap::new();
                for j in 0..d {
                    let e = basis(d, j);
                    // g X g^{-1} − X = GX + XH + GXH with g^{-1} = 1 + H
                    let ge = self.alg.mul(g, &e);
                    let eh = self.alg.mul(&e, &h);
                    let geh = self.alg.mul(&ge, &h);
                    for k in 0..d {
                        let c = f.add(f.add(ge[k], eh[k]), geh[k]);
                        if !c.is_zero() {
                            map.push((k, j, c));
                        }
                    }
                }
                map
            })
            .collect();
        let refs: Vec<&SparseMap> = maps.iter().collect();
        self.partition(&refs)
    }

    /// Counts of Tr(μ·φ) over all μ, bucketed by the character orbit of μ.
    fn trace_counts(&self, chars: &Partition, phi: &[FieldElem]) -> Vec<u64> {
        let f = self.alg.field();
        let p = f.p() as usize;
        let q = self.q as usize;
        let d = self.d;
        let table: Vec<Vec<u32>> = phi
            .iter()
            .map(|&x| (0..q as u32).map(|t| f.trace(f.mul(FieldElem(t), x))).collect())
            .collect();
        let mut counts = vec![0u64; chars.reps.len() * p];
        if d == 0 {
            counts[chars.orbit_of[0] as usize * p] += 1;
            return counts;
        }
        let mut digits = vec![0usize; d];
        let mut partial = vec![0u32; d + 1];
        for m in 0..d {
            partial[m + 1] = (partial[m] + table[m][0]) % p as u32;
        }
        for code in 0..self.size as usize {
            counts[chars.orbit_of[code] as usize * p + partial[d] as usize] += 1;
            let mut i = d;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < q {
                    break;
                }
                digits[i] = 0;
            }
            for m in i..d {
                partial[m + 1] = (partial[m] + table[m][digits[m]]) % p as u32;
            }
        }
        counts
    }

    /// Scaled orbit sums (|λU|/|UλU|)·Σ θ(μ(X_φ)) for every character orbit.
    fn supercharacter_column(
        &self,
        chars: &Partition,
        right_sizes: &[u64],
        phi: &[FieldElem],
    ) -> Result<Vec<CycInt>> {
        let p = self.alg.field().p();
        let counts = self.trace_counts(chars, phi);
        (0..chars.reps.len())
            .map(|c| {
                let row: Vec<i64> = counts[c * p as usize..(c + 1) * p as usize]
                    .iter()
                    .map(|&x| x as i64)
                    .collect();
                let sum = CycInt::from_exponent_counts(p, &row)?;
                let scaled = sum.checked_scale(right_sizes[c] as i64)?;
                scaled.div_exact(chars.sizes[c] as i64).ok_or(Error::NonIntegralScaling {
                    numerator: right_sizes[c],
                    denominator: chars.sizes[c],
                })
            })
            .collect()
    }

    /// The supercharacter of η on every superclass.
    pub fn supercharacter(&self, eta: &[FieldElem]) -> Result<(Partition, Vec<CycInt>)> {
        let table = self.table()?;
        let c = table.chars.orbit_of[self.pack(eta) as usize] as usize;
        Ok((table.classes, table.values[c].clone()))
    }

    /// All supercharacters on all superclasses.
    pub fn table(&self) -> Result<OracleTable> {
        let (classes, chars) = rayon::join(|| self.superclasses(), || self.coorbits());
        let right_sizes: Vec<u64> = chars
            .reps
            .par_iter()
            .map(|&r| self.right_coorbit_size(&self.unpack(r)))
            .collect();
        let columns: Vec<Vec<CycInt>> = classes
            .reps
            .par_iter()
            .map(|&r| self.supercharacter_column(&chars, &right_sizes, &self.unpack(r)))
            .collect::<Result<_>>()?;
        let values = (0..chars.reps.len())
            .map(|c| columns.iter().map(|col| col[c].clone()).collect())
            .collect();
        Ok(OracleTable { classes, chars, right_sizes, values })
    }

    /// Σ_{η ∈ n^*} θ(λ_η(X_φ)).
    pub fn fourier_sum(&self, phi: &[FieldElem]) -> Result<CycInt> {
        let p = self.alg.field().p() as usize;
        let all = Partition { reps: vec![0], sizes: vec![self.size], orbit_of: vec![0; self.size as usize] };
        let counts = self.trace_counts(&all, phi);
        let row: Vec<i64> = counts[..p].iter().map(|&x| x as i64).collect();
        CycInt::from_exponent_counts(p as u32, &row)
    }

    /// Checks the supercharacter-theory axioms; constancy is checked on every
    /// element of every superclass.
    pub fn verify_axioms(&self, table: &OracleTable) -> Result<AxiomReport> {
        let mut report = AxiomReport::default();
        let zero_class = table.classes.orbit_of[0] as usize;
        report.identity_singleton = table.classes.sizes[zero_class] == 1;
        if !report.identity_singleton {
            report.witnesses.push(format!("identity superclass has size {}", table.classes.sizes[zero_class]));
        }
        report.counts_equal = table.classes.reps.len() == table.chars.reps.len();
        if !report.counts_equal {
            report.witnesses.push(format!(
                "{} superclasses but {} co-orbits",
                table.classes.reps.len(),
                table.chars.reps.len()
            ));
        }
        let mismatch = (0..self.size).into_par_iter().find_map_first(|code| {
            let k = table.classes.orbit_of[code as usize] as usize;
            let col = match self.supercharacter_column(&table.chars, &table.right_sizes, &self.unpack(code)) {
                Ok(col) => col,
                Err(e) => return Some(format!("element {code}: {e}")),
            };
            (0..col.len())
                .find(|&c| col[c] != table.values[c][k])
                .map(|c| format!("character orbit {c} differs on element {code} of superclass {k}"))
        });
        report.constant_on_superclasses = mismatch.is_none();
        report.witnesses.extend(mismatch);
        let conj = self.conjugacy_classes();
        let mut owner = vec![u32::MAX; conj.reps.len()];
        report.unions_of_classes = true;
        for code in 0..self.size as usize {
            let c = conj.orbit_of[code] as usize;
            let s = table.classes.orbit_of[code];
            if owner[c] == u32::MAX {
                owner[c] = s;
            } else if owner[c] != s {
                report.unions_of_classes = false;
                report.witnesses.push(format!("conjugacy class of {} meets two superclasses", conj.reps[c]));
                break;
            }
        }
        Ok(report)
    }
}

fn apply(f: &GaloisField, map: &SparseMap, x: &[FieldElem]) -> Vec<FieldElem> {
    let mut y = x.to_vec();
    for &(dst, src, c) in map {
        if !x[src].is_zero() {
            y[dst] = f.mul_add(y[dst], c, x[src]);
        }
    }
    y
}

/// H with (1 + G)^{-1} = 1 + H.
fn algebra_inverse<A: NilpotentAlgebra>(alg: &A, g: &[FieldElem]) -> Vec<FieldElem> {
    let f = alg.field();
    let neg: Vec<FieldElem> = g.iter().map(|&x| f.neg(x)).collect();
    let mut term = neg.clone();
    let mut total = vec![FieldElem::ZERO; g.len()];
    while term.iter().any(|x| !x.is_zero()) {
        total = total.iter().zip(&term).map(|(&a, &b)| f.add(a, b)).collect();
        term = alg.mul(&term, &neg);
    }
    total
}

/// |G|·⟨f, g⟩ for functions constant on the given classes, with |G|.
pub fn inner_product(sizes: &[u64], f: &[CycInt], g: &[CycInt]) -> Result<(CycInt, u64)> {
    let order: u64 = sizes.iter().sum();
    let p = f.first().map_or(2, CycInt::p);
    let mut total = CycInt::zero(p);
    for ((&s, a), b) in sizes.iter().zip(f).zip(g) {
        let term = a.checked_mul(&b.conjugate())?.checked_scale(s as i64)?;
        total = total.checked_add(&term)?;
    }
    Ok((total, order))
}

/// |G|·⟨f, g⟩ for class functions whose values are all 0 or q^m·ζ^k, with |G|.
pub fn inner_product_values(q: u32, p: u32, sizes: &[u64], f: &[CharValue], g: &[CharValue]) -> Result<(CycInt, u64)> {
    let order: u64 = sizes.iter().sum();
    let mut counts = vec![0i128; p as usize];
    for ((&s, a), b) in sizes.iter().zip(f).zip(g) {
        if let (CharValue::Unit { q_exp: m1, zeta_exp: z1 }, CharValue::Unit { q_exp: m2, zeta_exp: z2 }) = (a, b) {
            let mag = (q as i128).checked_pow(m1 + m2).ok_or(Error::Overflow)?;
            let k = ((z1 + p - z2 % p) % p) as usize;
            counts[k] = mag.checked_mul(s as i128).and_then(|t| counts[k].checked_add(t)).ok_or(Error::Overflow)?;
        }
    }
    let counts: Vec<i64> = counts.into_iter().map(|c| i64::try_from(c).map_err(|_| Error::Overflow)).collect::<Result<_>>()?;
    Ok((CycInt::from_exponent_counts(p, &counts)?, order))
}
