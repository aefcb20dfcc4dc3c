//! Formula-versus-oracle comparison for a single spec.

use std::fmt;

use superchar_core::oracle::{AxiomReport, DensePattern, NilpotentAlgebra, Oracle, OracleTable, Partition};
use superchar_core::pattern::OrbitPartition;
use superchar_core::Result;

use crate::spec::Spec;

#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    /// Cap on the formula-side enumeration.
    pub cap: u64,
    /// Cap on the group order the oracle will enumerate.
    pub oracle_cap: u64,
    /// Largest order for which the axioms are checked element by element.
    pub axiom_cap: u64,
}

/// The first disagreeing (η, φ) pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub eta: String,
    pub phi: String,
    pub formula: String,
    pub oracle: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "eta [{}], phi [{}]: formula {}, oracle {}", self.eta, self.phi, self.formula, self.oracle)
    }
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub order: u64,
    pub classes: usize,
    pub chars: usize,
    pub pairs_compared: usize,
    /// None when the order exceeds the axiom cap.
    pub axioms: Option<AxiomReport>,
    pub failures: Vec<String>,
    pub witness: Option<Witness>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.witness.is_none() && self.axioms.as_ref().is_none_or(AxiomReport::all_pass)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        writeln!(f, "order: {}", self.order)?;
        writeln!(f, "superclasses: {}", self.classes)?;
        writeln!(f, "supercharacters: {}", self.chars)?;
        writeln!(f, "pairs compared: {}", self.pairs_compared)?;
        match &self.axioms {
            Some(a) => writeln!(f, "axioms: {}", if a.all_pass() { "pass" } else { "FAIL" })?,
            None => writeln!(f, "axioms: skipped (order above the axiom cap)")?,
        }
        for failure in &self.failures {
            writeln!(f, "failure: {failure}")?;
        }
        if let Some(w) = &self.witness {
            writeln!(f, "mismatch: {w}")?;
        }
        write!(f, "result: {}", if self.passed() { "pass" } else { "FAIL" })
    }
}

/// Compares the closed-form table with the definitional one.
pub fn run(spec: &Spec, opts: CheckOptions) -> Result<CheckReport> {
    match spec {
        Spec::Pattern(g) => compare(spec, &DensePattern::new(g), opts),
        Spec::Algebra(a) => compare(spec, a, opts),
    }
}

fn compare<A: NilpotentAlgebra>(spec: &Spec, alg: &A, opts: CheckOptions) -> Result<CheckReport> {
    let oracle = Oracle::new(alg, opts.oracle_cap)?;
    let table = oracle.table()?;
    compare_with(spec, &oracle, &table, opts)
}

/// Compares against an already enumerated oracle table of the same group.
pub fn compare_with<A: NilpotentAlgebra>(
    spec: &Spec,
    oracle: &Oracle<'_, A>,
    table: &OracleTable,
    opts: CheckOptions,
) -> Result<CheckReport> {
    let (classes, chars) = spec.partitions(opts.cap)?;
    let mut report = CheckReport {
        order: oracle.order(),
        classes: classes.reps.len(),
        chars: chars.reps.len(),
        pairs_compared: 0,
        axioms: None,
        failures: Vec::new(),
        witness: None,
    };
    if !same_partition(spec, oracle, &classes, &table.classes) {
        report.failures.push("superclasses differ from the enumerated two-sided orbits".into());
    }
    if !same_partition(spec, oracle, &chars, &table.chars) {
        report.failures.push("co-orbits differ from the enumerated two-sided co-orbits".into());
    }
    if report.failures.is_empty() {
        report.witness = compare_values(spec, oracle, table, &classes, &chars, opts.cap, &mut report.failures)?;
        report.pairs_compared = classes.reps.len() * chars.reps.len();
    }
    if oracle.order() <= opts.axiom_cap {
        report.axioms = Some(oracle.verify_axioms(table)?);
    }
    Ok(report)
}

/// Whether two partitions of the same space coincide as set partitions.
fn same_partition<A: NilpotentAlgebra>(
    spec: &Spec,
    oracle: &Oracle<'_, A>,
    ours: &OrbitPartition,
    theirs: &Partition,
) -> bool {
    if ours.reps.len() != theirs.reps.len() {
        return false;
    }
    let mut map = vec![u32::MAX; ours.reps.len()];
    for code in 0..oracle.order() {
        let v = oracle.unpack(code);
        let mine = ours.orbit_of[spec.pack(&v) as usize] as usize;
        let other = theirs.orbit_of[code as usize];
        if map[mine] == u32::MAX {
            map[mine] = other;
        } else if map[mine] != other {
            return false;
        }
    }
    true
}

fn compare_values<A: NilpotentAlgebra>(
    spec: &Spec,
    oracle: &Oracle<'_, A>,
    table: &OracleTable,
    classes: &OrbitPartition,
    chars: &OrbitPartition,
    cap: u64,
    failures: &mut Vec<String>,
) -> Result<Option<Witness>> {
    let q = spec.field().q();
    let p = spec.field().p();
    for eta in &chars.reps {
        let c = table.chars.orbit_of[oracle.pack(eta) as usize] as usize;
        let corank = spec.corank(eta, cap)?;
        if (q as u64).pow(corank as u32) != table.right_sizes[c] {
            failures.push(format!(
                "eta [{}]: degree q^{corank} but the right co-orbit has {} elements",
                spec.format_functional(eta),
                table.right_sizes[c]
            ));
        }
        for phi in &classes.reps {
            let k = table.classes.orbit_of[oracle.pack(phi) as usize] as usize;
            let value = spec.value_with_corank(eta, phi, corank)?;
            let expected = &table.values[c][k];
            if value.to_cyc(q, p)? != *expected {
                return Ok(Some(Witness {
                    eta: spec.format_functional(eta),
                    phi: spec.format_functional(phi),
                    formula: value.to_power_string(),
                    oracle: expected.to_string(),
                }));
            }
        }
    }
    Ok(None)
}
