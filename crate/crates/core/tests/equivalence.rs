mod common;

use superchar_core::formula;
use superchar_core::oracle::{DensePattern, Oracle};
use superchar_core::pattern::DEFAULT_CAP;

#[test]
fn formula_matches_oracle_on_small_corpus() {
    for (name, set) in common::corpus() {
        for q in [2, 3] {
            let g = common::group(set.clone(), q);
            if g.order() > 1 << 15 {
                continue;
            }
            let alg = DensePattern::new(&g);
            let oracle = Oracle::new(&alg, 1 << 20).unwrap();
            let table = oracle.table().unwrap();
            let (classes, chars) = g.both_partitions(DEFAULT_CAP).unwrap();
            assert_eq!(classes.reps.len(), table.classes.reps.len(), "{name} q={q}");
            assert_eq!(chars.reps.len(), table.chars.reps.len(), "{name} q={q}");
            let p = g.field().p();
            for eta in &chars.reps {
                let c = table.chars.orbit_of[oracle.pack(eta) as usize] as usize;
                let corank = g.corank(eta).unwrap();
                for phi in &classes.reps {
                    let k = table.classes.orbit_of[oracle.pack(phi) as usize] as usize;
                    let v = formula::value_with_corank(&g, eta, phi, corank).unwrap();
                    assert_eq!(
                        v.to_cyc(q, p).unwrap(),
                        table.values[c][k],
                        "{name} q={q} eta={eta:?} phi={phi:?}"
                    );
                }
            }
        }
    }
}
