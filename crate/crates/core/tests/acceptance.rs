//! Acceptance criteria, one PASS/FAIL line each. Runs without the test
//! harness so the lines always reach the output.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use crazyfrog::board::{verify, Cell, CfpInstance, SignVector};
use crazyfrog::gadgets::{
    binary_fixture, binary_rev_fixture, four_way_fixture, gen_fill, gen_hole,
    strip_cleanup_fixture, strip_line_fixture, StripParams,
};
use crazyfrog::generate::make_instance;
use crazyfrog::io::{self, InstanceBundle, Payload, UiInstance, Witness};
use crazyfrog::prd::{
    cfp1d_to_prd, prd_to_cfp1d, solve_prd, verify_prd, Permutation, PrdInstance, PrdOutcome,
};
use crazyfrog::reduce::{
    extract_ham_path, ham_oracle, normalize_start_leftmost, reduce_1d_to_empty, reduce_2d_to_1d,
    reduce_ham_to_cfp, witness_from_ham_path, GridGraphInstance,
};
use crazyfrog::solver::{oracle_enumerate, solve, solve_1d, SearchLimits, SolveResult};

struct Report {
    name: &'static str,
    limit: Duration,
    outcome: Result<String, String>,
    elapsed: Duration,
}

fn run(name: &'static str, limit: Duration, f: impl FnOnce() -> Result<String, String>) -> Report {
    let t = Instant::now();
    let outcome = f();
    Report {
        name,
        limit,
        outcome,
        elapsed: t.elapsed(),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------------------

fn worked_prd() -> Result<String, String> {
    let inst = PrdInstance::new(vec![2, 1, 2, 1, 5, 3, 1, 1]);
    let found = match solve_prd(&inst, SearchLimits::UNLIMITED) {
        PrdOutcome::Solved(p) => p,
        other => return Err(format!("solver returned {other:?}")),
    };
    ensure(verify_prd(&inst, &found).unwrap(), || {
        format!("solver output {found} does not verify")
    })?;
    for p in [[5, 7, 6, 8, 9, 4, 1, 2, 3], [5, 3, 4, 2, 1, 6, 9, 8, 7]] {
        let p = Permutation(p.to_vec());
        ensure(verify_prd(&inst, &p).unwrap(), || {
            format!("{p} does not verify")
        })?;
    }
    Ok(format!("solver found {found}"))
}

fn gadget_suites() -> Result<String, String> {
    let mut checked = 0;
    // Binary and reverse sequences.
    for k in [2u32, 3, 4] {
        let p = StripParams::new(k).unwrap();
        let evens: BTreeSet<i64> = p.even_cells().collect();
        let fx = common::lift(&binary_fixture(k).unwrap());
        let oracle: BTreeSet<i64> = common::all_solutions(&fx, usize::MAX)
            .iter()
            .map(|s| common::replay(&fx, s).unwrap().last().unwrap().0)
            .collect();
        ensure(oracle == evens, || {
            format!("binary k={k}: endpoints {oracle:?}")
        })?;
        if fx.jumps.len() <= 20 {
            let lib: BTreeSet<i64> = oracle_enumerate(&fx, 20)
                .unwrap()
                .iter()
                .map(|s| verify(&fx, s).unwrap().last().x)
                .collect();
            ensure(lib == evens, || {
                format!("binary k={k}: library oracle {lib:?}")
            })?;
        }
        for start in p.even_cells() {
            let fx = common::lift(&binary_rev_fixture(k, start as usize).unwrap());
            let ends: BTreeSet<i64> = common::all_solutions(&fx, usize::MAX)
                .iter()
                .map(|s| common::replay(&fx, s).unwrap().last().unwrap().0)
                .collect();
            ensure(ends == BTreeSet::from([p.v - 1]), || {
                format!("reverse k={k} start {start}: endpoints {ends:?}")
            })?;
        }
        checked += 1;
    }
    // Fill and hole sequences on E^w B^w E^w F E.
    for k in [2u32, 3] {
        let p = StripParams::new(k).unwrap();
        let w = p.w;
        let fill = common::lift(&strip_line_fixture(p, gen_fill(p)));
        let sols = common::all_solutions(&fill, usize::MAX);
        ensure(!sols.is_empty(), || format!("fill k={k}: no traversal"))?;
        for s in &sols {
            let end = common::replay(&fill, s).unwrap().last().unwrap().0;
            ensure(end == 3 * w + 1, || {
                format!("fill k={k}: traversal ends at {end}")
            })?;
        }
        let hole = common::lift(&strip_line_fixture(p, gen_hole(p)));
        let mut missing = BTreeSet::new();
        for s in common::all_solutions(&hole, usize::MAX) {
            let path = common::replay(&hole, &s).unwrap();
            let gaps: Vec<i64> = (0..w).filter(|x| !path.contains(&(*x, 0))).collect();
            ensure(gaps.len() == 1, || {
                format!("hole k={k}: left block gaps {gaps:?}")
            })?;
            missing.insert(gaps[0]);
        }
        let evens: BTreeSet<i64> = p.even_cells().collect();
        ensure(missing == evens, || {
            format!("hole k={k}: hole positions {missing:?}")
        })?;
    }
    // Selector coverage, on the strip with a fill sequence in every slot.
    for k in [2u32, 3] {
        let p = StripParams::new(k).unwrap();
        let fx = strip_cleanup_fixture(p, &[]).unwrap();
        let exit = Cell::new(3 * p.w, p.w + 1);
        let slots: Vec<usize> = fx
            .jumps
            .iter()
            .enumerate()
            .filter(|(_, j)| j.dy == 0 && j.dx >= 3 * p.w)
            .map(|(i, _)| i)
            .collect();
        ensure(slots.len() == p.v as usize, || {
            format!("selector k={k}: {} slots", slots.len())
        })?;
        let sols = common::all_solutions(&fx, 1_000_000);
        let mut orders = BTreeSet::new();
        for s in &sols {
            let path = common::replay(&fx, s).unwrap();
            let rows: Vec<i64> = slots.iter().map(|&i| path[i].1 - 1).collect();
            let distinct: BTreeSet<i64> = rows.iter().copied().collect();
            let evens: BTreeSet<i64> = p.even_cells().collect();
            ensure(distinct == evens, || {
                format!("selector k={k}: rows {rows:?}")
            })?;
            let end = *path.last().unwrap();
            ensure(end == (exit.x, exit.y), || {
                format!("selector k={k}: exits at {end:?}")
            })?;
            orders.insert(rows);
        }
        let fact: usize = (1..=p.v as usize).product();
        ensure(orders.len() == fact, || {
            format!(
                "selector k={k}: {} row orders, expected {fact}",
                orders.len()
            )
        })?;
    }
    // Strip cleanup with two holes.
    for k in [2u32, 3] {
        let p = StripParams::new(k).unwrap();
        let cols: Vec<i64> = p.even_cells().collect();
        for (i, &r1) in cols.iter().enumerate() {
            for &r2 in &cols[i + 1..] {
                let holes = [(r1, cols[0]), (r2, *cols.last().unwrap())];
                let fx = strip_cleanup_fixture(p, &holes).unwrap();
                ensure(fx.counting_invariant_holds(), || {
                    format!("cleanup k={k}: counting")
                })?;
                ensure(common::solvable(&fx), || {
                    format!("cleanup k={k} holes {holes:?}: no traversal")
                })?;
            }
        }
    }
    Ok(format!(
        "binary/reverse k=2..4 ({checked}), fill/hole/selector/cleanup k=2,3"
    ))
}

fn framing() -> Result<String, String> {
    let g = four_way_fixture().map_err(|e| e.to_string())?;
    let sols = oracle_enumerate(&g.instance, 20).map_err(|e| e.to_string())?;
    let indep = common::all_solutions(&g.instance, usize::MAX);
    ensure(sols.len() == 4 && indep.len() == 4, || {
        format!("{} / {} traversals", sols.len(), indep.len())
    })?;
    for s in &sols {
        ensure(verify(&g.instance, s).unwrap().last() == g.exit, || {
            "traversal misses the exit".into()
        })?;
    }
    Ok(format!(
        "4 traversals, {}x{} frame",
        g.frame_width, g.frame_height
    ))
}

/// Every vertex set in the 3x3 box, up to translation, with 2..=5 vertices.
fn small_graphs() -> Vec<Vec<(i64, i64)>> {
    let cells: Vec<(i64, i64)> = (0..3).flat_map(|y| (0..3).map(move |x| (x, y))).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << 9) {
        let n = mask.count_ones();
        if !(2..=5).contains(&n) {
            continue;
        }
        let vs: Vec<(i64, i64)> = (0..9)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| cells[i])
            .collect();
        if vs.iter().any(|v| v.0 == 0) && vs.iter().any(|v| v.1 == 0) {
            out.push(vs);
        }
    }
    out
}

fn end_to_end() -> Result<String, String> {
    let budget = SearchLimits::with_budget(100_000_000);
    let (mut cases, mut sat, mut fallbacks) = (0, 0, 0);
    for vs in small_graphs() {
        for &s in &vs {
            for &t in &vs {
                if s == t {
                    continue;
                }
                cases += 1;
                let g = GridGraphInstance::new(vs.iter().copied(), s, t).unwrap();
                let expected = ham_oracle(&g).unwrap();
                ensure(
                    expected.is_some() == common::ham_by_permutations(&vs, s, t),
                    || format!("oracles disagree on {vs:?} {s:?}->{t:?}"),
                )?;
                let (inst, layout) = reduce_ham_to_cfp(&g).map_err(|e| e.to_string())?;
                ensure(inst.counting_invariant_holds(), || {
                    format!("counting on {vs:?}")
                })?;
                if let Some(path) = &expected {
                    sat += 1;
                    let w = witness_from_ham_path(&g, &layout, path).map_err(|e| e.to_string())?;
                    ensure(common::replay(&inst, &w).is_some(), || {
                        format!("witness fails on {vs:?}")
                    })?;
                    let back = extract_ham_path(&inst, &layout, &w).map_err(|e| e.to_string())?;
                    ensure(&back == path, || format!("round trip differs on {vs:?}"))?;
                }
                match solve(&inst, budget) {
                    SolveResult::Solved(signs) => {
                        let path =
                            extract_ham_path(&inst, &layout, &signs).map_err(|e| e.to_string())?;
                        ensure(g.is_hamiltonian_path(&path), || {
                            format!("bad path on {vs:?}")
                        })?;
                        ensure(expected.is_some(), || {
                            format!("solver SAT, oracle UNSAT on {vs:?} {s:?}->{t:?}")
                        })?;
                    }
                    SolveResult::Unsolvable => {
                        ensure(expected.is_none(), || {
                            format!("solver UNSAT, oracle SAT on {vs:?} {s:?}->{t:?}")
                        })?;
                    }
                    SolveResult::Inconclusive(_) => {
                        // Forward direction already witnessed above.
                        fallbacks += 1;
                        ensure(expected.is_some(), || {
                            format!("inconclusive on UNSAT {vs:?} {s:?}->{t:?}")
                        })?;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{cases} (graph, s, t) cases, {sat} with a path, {fallbacks} inconclusive fell back to witnesses"
    ))
}

fn stage_equisat() -> Result<String, String> {
    let mut r = common::rng(11);
    // 2-D -> 1-D: identical solution sets.
    let mut solvable = 0;
    for i in 0..100 {
        let inst = if i % 2 == 0 {
            regen(&mut r, i)
        } else {
            common::random_cfp(&mut r, 4, 12, 2)
        };
        let out = reduce_2d_to_1d(&inst).map_err(|e| e.to_string())?;
        let lhs: BTreeSet<SignVector> = common::all_solutions(&inst, usize::MAX)
            .into_iter()
            .collect();
        if out.diagnostic.is_some() {
            ensure(lhs.is_empty(), || "refused a solvable instance".into())?;
            ensure(!common::solvable_1d(&out.instance), || {
                "canonical instance solvable".into()
            })?;
            continue;
        }
        let rhs: BTreeSet<SignVector> =
            common::all_solutions(&common::lift(&out.instance), usize::MAX)
                .into_iter()
                .collect();
        ensure(lhs == rhs, || {
            format!("2-D/1-D solution sets differ on instance {i}")
        })?;
        solvable += usize::from(!lhs.is_empty());
    }
    // Start normalization and 1-D -> empty.
    let mut solvable_1d = 0;
    for i in 0..100 {
        let inst = if i % 2 == 0 {
            common::walk_1d(&mut r, 12, false)
        } else {
            common::random_1d(&mut r, 12, false, false)
        };
        let before = common::solvable_1d(&inst);
        let left = normalize_start_leftmost(&inst);
        ensure(common::solvable_1d(&left) == before, || {
            format!("normalize changed 1-D instance {i}")
        })?;
        let empty = reduce_1d_to_empty(&left)
            .map_err(|e| e.to_string())?
            .instance;
        ensure(
            empty.blocked_count() == 0 && empty.counting_invariant_holds(),
            || "bad empty board".into(),
        )?;
        ensure(common::solvable_1d(&empty) == before, || {
            format!("1-D/empty differ on instance {i}")
        })?;
        solvable_1d += usize::from(before);
    }
    // Empty board <-> PRD, both directions.
    let mut prd_sat = 0;
    for i in 0..100 {
        let inst = if i % 2 == 0 {
            common::walk_1d(&mut r, 9, true)
        } else {
            common::random_1d(&mut r, 9, true, true)
        };
        let inst =
            crazyfrog::board::Cfp1dInstance::empty(inst.length, 0, full_jumps(&mut r, &inst));
        let prd = cfp1d_to_prd(&inst).map_err(|e| e.to_string())?;
        let sat = !common::prd_solutions(&prd).is_empty();
        ensure(sat == common::solvable_1d(&inst), || {
            format!("empty/PRD differ on instance {i}")
        })?;

        let p = random_prd(&mut r, 2 + i as usize % 9);
        let cfp = prd_to_cfp1d(&p).map_err(|e| e.to_string())?;
        let sat_p = !common::prd_solutions(&p).is_empty();
        ensure(
            sat_p == solve_1d(&cfp, SearchLimits::UNLIMITED).unwrap().is_solved(),
            || format!("PRD/1-D differ on {:?}", p.differences),
        )?;
        prd_sat += usize::from(sat) + usize::from(sat_p);
    }
    Ok(format!(
        "2-D/1-D {solvable}/100 solvable, 1-D/empty {solvable_1d}/100, empty/PRD {prd_sat}/200"
    ))
}

fn r_side(r: &mut rand_chacha::ChaCha8Rng) -> usize {
    use rand::Rng;
    r.gen_range(2..=4)
}

/// A solvable puzzle from the generator with 2..=12 jumps.
fn regen(r: &mut rand_chacha::ChaCha8Rng, seed: u64) -> CfpInstance {
    use rand::Rng;
    let (w, h) = (r_side(r), r_side(r));
    let m = r.gen_range(1..=(w * h - 1).min(12));
    make_instance(w, h, m, seed).unwrap().instance
}

/// Jumps for an empty board: a walk's steps, or random magnitudes.
fn full_jumps(r: &mut rand_chacha::ChaCha8Rng, inst: &crazyfrog::board::Cfp1dInstance) -> Vec<i64> {
    use rand::Rng;
    let n = inst.length;
    if r.gen_bool(0.5) {
        let mut order: Vec<i64> = (1..n as i64).collect();
        for i in (1..order.len()).rev() {
            order.swap(i, r.gen_range(0..=i));
        }
        let mut at = 0;
        order
            .into_iter()
            .map(|x| {
                let d = x - at;
                at = x;
                d
            })
            .collect()
    } else {
        (1..n).map(|_| r.gen_range(1..n as i64)).collect()
    }
}

fn random_prd(r: &mut rand_chacha::ChaCha8Rng, n: usize) -> PrdInstance {
    use rand::Rng;
    if r.gen_bool(0.5) {
        let mut p: Vec<u64> = (1..=n as u64).collect();
        for i in (1..n).rev() {
            p.swap(i, r.gen_range(0..=i));
        }
        PrdInstance::new(p.windows(2).map(|w| w[0].abs_diff(w[1])).collect())
    } else {
        PrdInstance::new((1..n).map(|_| r.gen_range(1..n as u64)).collect())
    }
}

fn fuzz() -> Result<String, String> {
    let mut r = common::rng(23);
    let mut sat = 0;
    for i in 0..200 {
        let inst = if i % 3 == 0 {
            regen(&mut r, 1000 + i)
        } else {
            common::random_cfp(&mut r, 5, 14, 3)
        };
        let oracle = oracle_enumerate(&inst, 20).map_err(|e| e.to_string())?;
        let indep = common::solvable(&inst);
        let got = solve(&inst, SearchLimits::UNLIMITED);
        ensure(
            got.is_solved() == !oracle.is_empty() && indep == !oracle.is_empty(),
            || format!("CFP instance {i}: solver {got:?}, oracle {}", oracle.len()),
        )?;
        if let SolveResult::Solved(s) = &got {
            ensure(Some(s) == oracle.iter().next(), || {
                format!("CFP instance {i}: not the first solution")
            })?;
        }
        sat += usize::from(indep);
    }
    let mut prd_sat = 0;
    for i in 0..200 {
        let p = random_prd(&mut r, 1 + i % 8);
        let oracle = common::prd_solutions(&p);
        match solve_prd(&p, SearchLimits::UNLIMITED) {
            PrdOutcome::Solved(perm) => {
                ensure(oracle.contains(&perm), || {
                    format!("PRD {:?}: {perm} not a solution", p.differences)
                })?;
                prd_sat += 1;
            }
            PrdOutcome::Unsat => ensure(oracle.is_empty(), || {
                format!("PRD {:?}: missed a solution", p.differences)
            })?,
            PrdOutcome::Inconclusive(_) => {
                return Err("unbounded PRD search was inconclusive".into())
            }
        }
    }
    Ok(format!(
        "CFP {sat}/200 solvable, PRD {prd_sat}/200 solvable"
    ))
}

fn generator() -> Result<String, String> {
    let mut r = common::rng(5);
    for seed in 0..500u64 {
        use rand::Rng;
        let (w, h) = (r.gen_range(1..=8), r.gen_range(1..=8));
        let len = r.gen_range(0..w * h);
        let g = make_instance(w, h, len, seed).map_err(|e| e.to_string())?;
        ensure(
            verify(&g.instance, &g.witness).unwrap().is_complete(),
            || format!("seed {seed}: witness fails"),
        )?;
        ensure(common::replay(&g.instance, &g.witness).is_some(), || {
            format!("seed {seed}: replay fails")
        })?;
        ensure(g == make_instance(w, h, len, seed).unwrap(), || {
            format!("seed {seed}: not deterministic")
        })?;

        let board = io::serialize_board(&g.instance.board);
        let jumps = io::serialize_jumps(&g.instance.jumps);
        let parsed = io::parse_cfp(&board, &jumps).map_err(|e| e.to_string())?;
        ensure(parsed == g.instance, || {
            format!("seed {seed}: text round trip")
        })?;
        ensure(
            io::serialize_board(&parsed.board) == board
                && io::serialize_jumps(&parsed.jumps) == jumps,
            || format!("seed {seed}: text not bit-identical"),
        )?;

        let bundle = InstanceBundle {
            payload: Payload::Cfp2d(g.instance.clone()),
            provenance: vec![format!("seed={seed}")],
            witness: Some(Witness::Signs(g.witness.clone())),
        };
        let text = io::serialize_bundle(&bundle);
        let back = io::parse_bundle(&text).map_err(|e| e.to_string())?;
        ensure(
            back == bundle && io::serialize_bundle(&back) == text,
            || format!("seed {seed}: bundle round trip"),
        )?;

        let ui = UiInstance::from_cfp(&g.instance);
        let json = serde_json::to_string(&ui).unwrap();
        let ui_back = io::parse_ui(&json).map_err(|e| e.to_string())?;
        ensure(
            ui_back == ui && serde_json::to_string(&ui_back).unwrap() == json,
            || format!("seed {seed}: interchange round trip"),
        )?;
        ensure(ui_back.to_cfp().unwrap() == g.instance, || {
            format!("seed {seed}: interchange fields")
        })?;
    }
    Ok("500 puzzles".into())
}

fn main() {
    let reports = vec![
        run("Worked PRD example", Duration::from_secs(1), worked_prd),
        run("Gadget suites", Duration::from_secs(60), gadget_suites),
        run("Framed gadget", Duration::from_secs(1), framing),
        run(
            "End-to-end hardness reduction",
            Duration::from_secs(30 * 60),
            end_to_end,
        ),
        run(
            "Stage equisatisfiability",
            Duration::from_secs(5 * 60),
            stage_equisat,
        ),
        run("Solver-vs-oracle fuzz", Duration::from_secs(5 * 60), fuzz),
        run("Generator soundness", Duration::from_secs(60), generator),
    ];
    let mut failed = 0;
    for r in &reports {
        let within = r.elapsed <= r.limit;
        match (&r.outcome, within) {
            (Ok(detail), true) => println!("PASS {} ({:.2?}): {detail}", r.name, r.elapsed),
            (Ok(detail), false) => {
                failed += 1;
                println!(
                    "FAIL {} ({:.2?}, limit {:?}): {detail}",
                    r.name, r.elapsed, r.limit
                )
            }
            (Err(e), _) => {
                failed += 1;
                println!("FAIL {} ({:.2?}): {e}", r.name, r.elapsed)
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all {} acceptance criteria passed", reports.len());
}
