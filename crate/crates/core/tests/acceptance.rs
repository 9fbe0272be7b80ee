//! The nine acceptance criteria, run against the builtin corpus. Prints one
//! PASS/FAIL line per criterion and exits nonzero if any fails.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use rotorgraph::corpus::builtins;
use rotorgraph::corpus::rotations::{all_rotation_systems, sample_rotation_systems};
use rotorgraph::corpus::{unicycles_for_checks, CorpusSpec};
use rotorgraph::ribbon::{all_cycles, is_planar, separation, spanning_trees, DirectedCycle, RibbonGraph, Vertex};
use rotorgraph::rotor::{all_unicycles, is_reversible, is_reversible_from, run_cycle_period};
use rotorgraph::sandpile::{
    basepoint_counterexample, check_geodesic_identities, divisors_equivalent, group_structure, verify_torsor, Divisor,
    TorsorTable,
};

use common::{edge_indices, generator_oracle, sim_step, tree_count_oracle};

struct Corpus {
    graphs: Vec<(String, RibbonGraph)>,
    tables: Vec<TorsorTable>,
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&Corpus) -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn periodicity(c: &Corpus) -> Outcome {
    let mut runs = 0;
    for (name, g) in &c.graphs {
        let m2 = g.num_darts();
        for u in unicycles_for_checks(g, 1)? {
            run_cycle_period(g, &u).map_err(|e| format!("{name}: {e}"))?;
            // replay by hand on the rotation tables
            let mut rotor: Vec<_> = u.config().rotors().to_vec();
            let mut chip = u.chip();
            let mut darts = vec![0usize; m2];
            let mut turns = vec![0usize; g.num_vertices()];
            for _ in 0..m2 {
                turns[chip.0] += 1;
                let next = sim_step(g, &mut rotor, chip);
                darts[rotor[chip.0].unwrap().0] += 1;
                chip = next;
            }
            ensure(chip == u.chip() && rotor == u.config().rotors(), || format!("{name}: state not restored"))?;
            ensure(darts.iter().all(|&k| k == 1), || format!("{name}: dart not traversed once"))?;
            ensure(g.vertices().all(|v| turns[v.0] == g.degree(v)), || format!("{name}: rotor turn count"))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} unicycles over {} graphs", c.graphs.len()))
}

fn matrix_tree(_: &Corpus) -> Outcome {
    for base in builtins::all_bases() {
        let g = &base.graph;
        let order = group_structure(g).order() as i128;
        let trees = spanning_trees(g).map_err(|e| e.to_string())?.len() as i128;
        let oracle = tree_count_oracle(g);
        ensure(order == trees && trees == oracle, || {
            format!("{}: group order {order}, {trees} trees, determinant {oracle}", base.name)
        })?;
    }
    for n in 2..=6u64 {
        let s = group_structure(&builtins::banana(n as usize, true));
        ensure(s.invariant_factors == vec![n], || format!("B{n}: {:?}", s.invariant_factors))?;
    }
    let k4 = group_structure(&builtins::complete(4));
    ensure(k4.order() == 16 && k4.invariant_factors == vec![4, 4], || format!("K4: {k4:?}"))?;
    Ok("P2, B2..B6, C3, theta, K4, K5".into())
}

fn torsor(c: &Corpus) -> Outcome {
    let mut checked = 0;
    for ((name, g), table) in c.graphs.iter().zip(&c.tables) {
        for r in g.vertices() {
            let rep = verify_torsor(g, table, r).map_err(|e| e.to_string())?;
            ensure(rep.pass(), || format!("{name}: {rep:?}"))?;
            // each generator permutation agrees with direct simulation
            for v in g.vertices() {
                for (i, t) in table.trees().iter().enumerate() {
                    let j = table.generator(r, v)[i] as usize;
                    ensure(edge_indices(&table.trees()[j]) == generator_oracle(g, r, v, t), || {
                        format!("{name}: generator ({}-{}) disagrees", g.vertex_id(v), g.vertex_id(r))
                    })?;
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (graph, root) pairs"))
}

fn welldef(c: &Corpus) -> Outcome {
    let mut cycles = 0;
    let mut unicycles = 0;
    for (name, g) in &c.graphs {
        let mut seen: BTreeMap<DirectedCycle, bool> = BTreeMap::new();
        for u in all_unicycles(g).map_err(|e| e.to_string())? {
            let r = is_reversible_from(g, &u).map_err(|e| e.to_string())?;
            unicycles += 1;
            match seen.get(u.cycle()) {
                Some(&prev) => ensure(prev == r, || format!("{name}: cycle {:?} disagrees", u.cycle().display(g)))?,
                None => {
                    seen.insert(u.cycle().clone(), r);
                }
            }
        }
        cycles += seen.len();
    }
    Ok(format!("{cycles} cycles, {unicycles} unicycles"))
}

fn separating(c: &Corpus) -> Outcome {
    let mut seps = 0;
    let mut nonsep_rev = 0;
    for (name, g) in &c.graphs {
        for cyc in all_cycles(g) {
            let sep = separation(g, &cyc).map_err(|e| e.to_string())?;
            let rev = is_reversible(g, &cyc).map_err(|e| e.to_string())?;
            if sep.is_separating() {
                seps += 1;
                ensure(rev, || format!("{name}: separating {:?} not reversible", cyc.display(g)))?;
            } else if rev {
                nonsep_rev += 1;
                ensure(sep.long_witness.is_none() && sep.short_witnesses.iter().all(|w| w.len() == 1), || {
                    format!("{name}: reversible {:?} has a long witness", cyc.display(g))
                })?;
            }
        }
    }
    Ok(format!("{seps} separating, {nonsep_rev} reversible nonseparating"))
}

fn planar_iff_reversible(_: &Corpus) -> Outcome {
    let mut graphs: Vec<RibbonGraph> = Vec::new();
    for base in [builtins::banana(3, true), builtins::theta(), builtins::complete(4)] {
        graphs.extend(all_rotation_systems(&base, 100).map_err(|e| e.to_string())?);
    }
    graphs.extend(sample_rotation_systems(&builtins::complete(5), 50, 1).map_err(|e| e.to_string())?);
    let mut planar_count = 0;
    for g in &graphs {
        let planar = is_planar(g).map_err(|e| e.to_string())?;
        let mut all_rev = true;
        for cyc in all_cycles(g) {
            all_rev &= is_reversible(g, &cyc).map_err(|e| e.to_string())?;
        }
        ensure(planar == all_rev, || format!("planar {planar}, all reversible {all_rev}"))?;
        planar_count += planar as usize;
    }
    Ok(format!("{} rotation systems, {planar_count} planar", graphs.len()))
}

fn geodesic(c: &Corpus) -> Outcome {
    let mut instances = 0;
    for ((name, g), table) in c.graphs.iter().zip(&c.tables) {
        let rep = check_geodesic_identities(g, table).map_err(|e| e.to_string())?;
        ensure(rep.pass(), || format!("{name}: {}", serde_json::to_string(&rep).unwrap()))?;
        ensure(!rep.planar || rep.eq1_fails == 0, || format!("{name}: planar graph breaks the equation"))?;
        instances += rep.both_reversible.checked
            + rep.equation_transfers.checked
            + rep.run_until.checked
            + rep.adjacent_on_geodesic.checked
            + rep.adjacent_roots.checked;
    }
    Ok(format!("{instances} instances, zero violations"))
}

fn basepoint(c: &Corpus) -> Outcome {
    let mut nonplanar = 0;
    let mut k4 = 0;
    let mut b3 = 0;
    for ((name, g), table) in c.graphs.iter().zip(&c.tables) {
        let planar = is_planar(g).map_err(|e| e.to_string())?;
        let cx = basepoint_counterexample(g, table);
        ensure(planar == cx.is_none(), || format!("{name}: planar {planar}, counterexample {cx:?}"))?;
        if let Some(cx) = cx {
            nonplanar += 1;
            // at_r = (v - v0)_r(T), so (v0 - r)_r(at_r) = (v - r)_r(T)
            let v0 = Vertex(0);
            let t = &table.trees()[cx.tree];
            for (root, image) in [(cx.r, cx.at_r), (cx.s, cx.at_s)] {
                let lhs = generator_oracle(g, root, v0, &table.trees()[image]);
                ensure(lhs == generator_oracle(g, root, cx.v, t), || format!("{name}: counterexample does not replay"))?;
            }
            ensure(cx.at_r != cx.at_s, || format!("{name}: counterexample images agree"))?;
        }
        k4 += name.starts_with("K4[") as usize;
        b3 += name.starts_with("B3[") as usize;
    }
    ensure(k4 == 16 && b3 == 4, || format!("corpus has {k4} K4 and {b3} B3 systems"))?;
    Ok(format!("{} graphs, {nonplanar} nonplanar with counterexamples", c.graphs.len()))
}

fn degree_zero_vectors(n: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-2..=2).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().sum::<i64>() == 0);
    out
}

fn oracles(c: &Corpus) -> Outcome {
    let mut pairs = 0;
    for ((name, g), table) in c.graphs.iter().zip(&c.tables) {
        if g.num_vertices() > 4 {
            continue;
        }
        let divisors: Vec<Divisor> = degree_zero_vectors(g.num_vertices()).iter().map(|v| Divisor::from_dense(v)).collect();
        for d1 in &divisors {
            for d2 in &divisors {
                let a = divisors_equivalent(g, d1, d2).map_err(|e| e.to_string())?;
                let b = table.equivalent(d1, d2).map_err(|e| e.to_string())?;
                ensure(a == b, || format!("{name}: oracles disagree on {d1:?} vs {d2:?}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} divisor pairs"))
}

fn main() -> ExitCode {
    let graphs = CorpusSpec::builtin(1).expand().expect("builtin corpus expands");
    let tables = graphs
        .iter()
        .map(|(_, g)| TorsorTable::new(g).expect("tables build"))
        .collect();
    let corpus = Corpus { graphs, tables };
    let criteria: [Criterion; 9] = [
        ("periodicity", periodicity),
        ("matrix-tree", matrix_tree),
        ("torsor", torsor),
        ("reversibility well-defined", welldef),
        ("separating implies reversible", separating),
        ("planar iff all reversible", planar_iff_reversible),
        ("geodesic identities", geodesic),
        ("basepoint independence iff planar", basepoint),
        ("divisor equivalence oracles", oracles),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run(&corpus);
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why}; {secs:.1}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
