//! End-to-end acceptance run: one line per criterion.
//!
//! Runs without the libtest harness so the report is always printed. The
//! process fails if any criterion fails, except the ones listed in
//! `EXPECTED_FAILURES`, which must fail in exactly the documented way.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zerotemp_core::planar::{
    check_zero_bounds, collapse, lifts, occupancy, sample_mosaic, vertical_alignment_forbidden,
    MosaicShape,
};
use zerotemp_core::symbolic::{format::write_pattern, Pattern};
use zerotemp_core::thermo::{
    beta_sweep, exact_gibbs_torus_2d, transfer_pressure, PotentialSpec, TransferOptions,
};
use zerotemp_core::tower::{
    build_tower, closed_form_frequency, enumeration_cost, forbidden_oracle, forbidden_words,
    frequency_checks, schedule, verify_overlap_lemmas, BuildLimits, Side, TowerParams, WordTower,
};
use zerotemp_core::turing::{
    builtin, check_diagram, compile_tileset, enumerate, head_window, mutation_check,
    render_diagram, run_bounded, space_time_diagram, Outcome,
};

struct Outcome_ {
    id: &'static str,
    pass: bool,
    detail: String,
}

fn outcome(id: &'static str, pass: bool, detail: impl Into<String>) -> Outcome_ {
    Outcome_ {
        id,
        pass,
        detail: detail.into(),
    }
}

/// Criteria that cannot hold for the construction as stated, with the
/// detail text their failure must contain.
const EXPECTED_FAILURES: [(&str, &str); 1] = [("2d", "a'' self-overlap of length 1")];

fn toy(n: &[u64], np: &[u64]) -> WordTower {
    build_tower(
        &TowerParams::toy(n.to_vec(), np.to_vec()).unwrap(),
        BuildLimits::default(),
    )
    .unwrap()
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn oracle_equivalence() -> Outcome_ {
    let start = Instant::now();
    let t = toy(&[4, 4, 4], &[4, 4, 4]);
    let mut bad = Vec::new();
    for n in 1..=12 {
        let ours: BTreeSet<Vec<u8>> = forbidden_words(&t, n).unwrap().words.into_iter().collect();
        let oracle: BTreeSet<Vec<u8>> = forbidden_oracle(&t, n).unwrap().into_iter().collect();
        if ours != oracle {
            bad.push(n);
        }
    }
    let f2 = forbidden_words(&t, 2).unwrap().words;
    let elapsed = start.elapsed();
    let pass = bad.is_empty() && f2 == [vec![0, 0]] && elapsed < Duration::from_secs(60);
    outcome(
        "1",
        pass,
        format!(
            "n <= 12 mismatches {bad:?}, F(2) = {f2:?}, {}",
            secs(elapsed)
        ),
    )
}

fn overlap_suite() -> Vec<Outcome_> {
    let t = toy(&[4, 4, 4], &[4, 4, 4]);
    let reports: Vec<_> = (1..=3)
        .map(|k| verify_overlap_lemmas(&t, k).unwrap())
        .collect();
    ['a', 'b', 'c', 'd']
        .into_iter()
        .zip(["2a", "2b", "2c", "2d"])
        .map(|(label, id)| {
            let mut examples = Vec::new();
            for r in &reports {
                let c = r.check(label).unwrap();
                examples.extend(c.counterexamples.iter().map(|e| format!("k={}: {e}", r.k)));
            }
            let detail = if examples.is_empty() {
                "k = 1..3, zero counterexamples".to_owned()
            } else {
                format!(
                    "{} counterexamples, first: {}",
                    examples.len(),
                    examples[0..examples.len().min(2)].join("; ")
                )
            };
            outcome(id, examples.is_empty(), detail)
        })
        .collect()
}

/// Largest share of zeros among the given words, counted directly.
fn zero_share(words: &[Vec<u8>]) -> BigRational {
    words
        .iter()
        .map(|w| {
            BigRational::new(
                (w.iter().filter(|&&c| c == 0).count() as i64).into(),
                (w.len() as i64).into(),
            )
        })
        .max()
        .unwrap()
}

fn frequency_recursion() -> Outcome_ {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (n, np) in [
        (&[4u64, 4, 4][..], &[4u64, 4, 4][..]),
        (&[4, 8, 12, 4], &[4, 4, 6, 4]),
    ] {
        let t = toy(n, np);
        let counts = t.block_counts();
        for k in 0..=t.depth() {
            let l = t.level(k).unwrap();
            let (a, b) = if k == 0 {
                (vec![l.a.clone()], vec![l.b.clone()])
            } else {
                (l.tilde_a().to_vec(), l.tilde_b().to_vec())
            };
            for (side, words) in [(Side::A, a), (Side::B, b)] {
                checked += 1;
                if closed_form_frequency(&counts, k, side) != zero_share(&words) {
                    bad.push(format!("{n:?} k={k} {side:?}"));
                }
            }
            if k > 0 {
                for c in frequency_checks(&t, k).unwrap() {
                    checked += 1;
                    if !c.holds {
                        bad.push(format!("{n:?} k={k} {}", c.relation));
                    }
                }
            }
        }
    }
    outcome(
        "3",
        bad.is_empty(),
        format!("{checked} rational identities, failures {bad:?}"),
    )
}

fn schedule_reproduction() -> Outcome_ {
    let s = schedule(2).unwrap();
    let l1 = &s[1];
    let got: Vec<String> = [
        &l1.n_prime,
        &l1.len_prime,
        &l1.beta,
        &l1.n,
        &l1.len,
        &l1.rho_a,
        &l1.rho_b,
    ]
    .iter()
    .map(|v| v.to_string())
    .collect();
    let want = ["1", "2", "16", "16", "32", "16", "2"];
    let beta2 = (BigUint::from(1024u32) * (BigUint::from(1u8) << 1024u32) + 3u32) / 4u32;
    let pass =
        got == want && l1.n_prime_below_four() && !l1.violations().is_empty() && s[2].beta == beta2;
    outcome(
        "4",
        pass,
        format!(
            "level 1 = ({}), N'_1 < 4 flagged: {}, beta_2 exact: {} ({} bits)",
            got.join(","),
            l1.n_prime_below_four(),
            s[2].beta == beta2,
            s[2].beta.bits()
        ),
    )
}

fn turing_corpus() -> Outcome_ {
    let start = Instant::now();
    let dec = builtin("anbn_dec").unwrap();
    let (a, b) = (
        dec.symbol_index("a").unwrap(),
        dec.symbol_index("b").unwrap(),
    );
    let expected: BTreeSet<Vec<usize>> =
        (1..=6).map(|n| [vec![a; n], vec![b; n]].concat()).collect();
    let mut accepted = BTreeSet::new();
    let mut words = vec![vec![]];
    let mut total = 0;
    for _ in 0..12 {
        words = words
            .iter()
            .flat_map(|w: &Vec<usize>| [a, b].map(|s| [w.clone(), vec![s]].concat()))
            .collect();
        for w in &words {
            total += 1;
            if run_bounded(&dec, w, 10_000).0 == Outcome::Accept {
                accepted.insert(w.clone());
            }
        }
    }
    let decider_ok = accepted == expected;

    let en = builtin("anbn_enum").unwrap();
    let first: Vec<String> = enumerate(&en, 500)
        .words
        .iter()
        .take(3)
        .map(|w| w.iter().map(|&s| en.tape_symbols()[s].as_str()).collect())
        .collect();
    let enum_ok = first == ["ab", "aabb", "aaabbb"];

    let d = space_time_diagram(&en, &[], 1, 0..=1).unwrap();
    let rows = render_diagram(&en, &d).rows().unwrap();
    let table_ok = rows[0] == ["(q0,♯)", "♯"] && rows[1] == ["a", "(qb+,♯)"];

    // every diagram: the enumerator, and the decider on all inputs of length <= 6
    let mut diagrams = vec![(
        en.clone(),
        space_time_diagram(&en, &[], 200, head_window(&en, &[], 200)).unwrap(),
    )];
    let mut inputs = vec![vec![]];
    for _ in 0..6 {
        inputs = inputs
            .iter()
            .flat_map(|w: &Vec<usize>| [a, b].map(|s| [w.clone(), vec![s]].concat()))
            .collect();
        for w in &inputs {
            diagrams.push((
                dec.clone(),
                space_time_diagram(&dec, w, 400, head_window(&dec, w, 400)).unwrap(),
            ));
        }
    }
    let (mut rejected, mut accepted_mutations, mut tried) = (0, 0, 0);
    let tiles_en = compile_tileset(&en);
    let tiles_dec = compile_tileset(&dec);
    for (m, d) in &diagrams {
        let ts = if m == &en { &tiles_en } else { &tiles_dec };
        rejected += usize::from(!check_diagram(ts, d).unwrap().ok());
        let mu = mutation_check(ts, d).unwrap();
        tried += mu.tried;
        accepted_mutations += mu.accepted.len();
    }
    let elapsed = start.elapsed();
    let pass = decider_ok
        && enum_ok
        && table_ok
        && rejected == 0
        && accepted_mutations == 0
        && elapsed < Duration::from_secs(30);
    outcome(
        "5",
        pass,
        format!(
            "decider accepts {} of {total} words (exact: {decider_ok}), first prints {first:?}, rows 0-1 match: {table_ok}, \
             {} diagrams rejected {rejected}, {tried} mutations accepted {accepted_mutations}, {}",
            accepted.len(),
            diagrams.len(),
            secs(elapsed)
        ),
    )
}

fn transfer_numerics() -> Outcome_ {
    let opts = TransferOptions::default();
    let free = transfer_pressure(&PotentialSpec::new(2, vec![]).unwrap(), 1.0, opts).unwrap();
    let free_err = (free.pressure - 2f64.ln()).abs();
    let gm = PotentialSpec::new(2, vec![vec![1, 1]]).unwrap();
    let golden = ((1.0 + 5f64.sqrt()) / 2.0).ln();
    let gm_err = (transfer_pressure(&gm, 50.0, opts).unwrap().pressure - golden).abs();
    // 2x2 closed form at beta = 1: largest eigenvalue of [[1, 1], [1, e^-1]]
    let e = (-1f64).exp();
    let lambda = (1.0 + e + ((1.0 - e).powi(2) + 4.0).sqrt()) / 2.0;
    let gm1_err = (transfer_pressure(&gm, 1.0, opts).unwrap().pressure - lambda.ln()).abs();

    let t = toy(&[4, 4, 4], &[4, 4, 4]);
    let betas: Vec<f64> = (0..=50).map(f64::from).collect();
    let sweep = beta_sweep(&t, 8, &betas, opts).unwrap();
    let ln3 = 3f64.ln();
    let bound_rows = sweep
        .rows
        .iter()
        .filter(|r| r.result.mu_f * r.result.beta <= ln3)
        .count();
    let (rise, bend) = sweep.shape_defects();
    let pass = free_err <= 1e-9
        && gm_err <= 1e-6
        && gm1_err <= 1e-10
        && bound_rows == sweep.rows.len()
        && rise <= 1e-8
        && bend >= -1e-8;
    outcome(
        "6",
        pass,
        format!(
            "|P - ln2| = {free_err:.1e}, golden at beta=50 off by {gm_err:.1e}, 2x2 closed form off by {gm1_err:.1e}, \
             muF*beta <= ln3 on {bound_rows}/{} rows, max rise {rise:.1e}, min second difference {bend:.1e}",
            sweep.rows.len()
        ),
    )
}

fn torus() -> Outcome_ {
    let v = vertical_alignment_forbidden(&[0u8, 1]);
    let r0 = exact_gibbs_torus_2d(2, &v, 0.0, 3).unwrap();
    let uniform = r0.marginals.iter().all(|m| (m - 0.5).abs() <= 1e-12);
    let energies: Vec<f64> = [0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 40.0]
        .iter()
        .map(|&b| exact_gibbs_torus_2d(2, &v, b, 3).unwrap().expected_energy)
        .collect();
    let decreasing = energies.windows(2).all(|w| w[1] <= w[0] + 1e-12);
    let inf = exact_gibbs_torus_2d(2, &v, f64::INFINITY, 3).unwrap();
    // independent count: configurations whose three columns are each constant
    let direct = (0u32..512)
        .filter(|c| (0..3).all(|x| (0..3).all(|y| (c >> (3 * y + x)) & 1 == c >> x & 1)))
        .count();
    let pass = uniform
        && decreasing
        && *energies.last().unwrap() < 1e-6
        && inf.expected_energy == 0.0
        && inf.ground_states == 8
        && direct == 8
        && inf.configurations == 512;
    outcome(
        "7",
        pass,
        format!(
            "beta=0 marginals {:?}, E(beta=40) = {:.1e}, ground states {} (direct count {direct}) of {}",
            r0.marginals,
            energies.last().unwrap(),
            inf.ground_states,
            inf.configurations
        ),
    )
}

fn occupancy_suite() -> Outcome_ {
    let t = toy(&[4, 8], &[4, 4]);
    let mut failures = Vec::new();
    let mut cells = 0;
    for seed in 0..20u64 {
        let shape = if seed % 2 == 0 {
            MosaicShape::Columns
        } else {
            MosaicShape::Blocks
        };
        let p = sample_mosaic(&t, 2, 128, shape, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let r = occupancy(&p, &t, 2).unwrap();
        let z = check_zero_bounds(&r, &t).unwrap();
        cells += r.i.len();
        if !(r.disjoint() && r.uncovered_targets().is_empty() && z.holds()) {
            failures.push(seed);
        }
    }
    outcome(
        "8",
        failures.is_empty(),
        format!("20 mosaics, {cells} offsets in I, failing seeds {failures:?}"),
    )
}

fn lift_counting() -> Outcome_ {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut bad = 0;
    let mut total = 0usize;
    for _ in 0..200 {
        let len = rng.gen_range(1..=16);
        let w: Vec<u8> = (0..len).map(|_| rng.gen_range(0..3)).collect();
        let p = Pattern::word(w.iter().copied());
        let all: Vec<_> = lifts(&p).collect();
        let distinct: BTreeSet<String> = all.iter().map(write_pattern).collect();
        let zeros = w.iter().filter(|&&c| c == 0).count();
        total += all.len();
        if all.len() != 1 << zeros
            || distinct.len() != all.len()
            || all.iter().any(|l| collapse(l) != p)
        {
            bad += 1;
        }
    }
    outcome(
        "9",
        bad == 0,
        format!("200 words, {total} lifts enumerated, {bad} mismatches"),
    )
}

fn cost_growth() -> Outcome_ {
    let t = toy(&[4, 4, 4], &[4, 4, 4]);
    let tau: Vec<f64> = (1..=12)
        .map(|n| enumeration_cost(&t, n).unwrap().total() as f64)
        .collect();
    let scale = |n: usize| (n as f64).powi(3) * 3f64.powi(n as i32);
    // fit on the first half, then check the whole range against it
    let c = (1..=6).map(|n| tau[n - 1] / scale(n)).fold(0.0, f64::max);
    let over: Vec<usize> = (1..=12).filter(|&n| tau[n - 1] > c * scale(n)).collect();
    outcome(
        "10",
        over.is_empty(),
        format!(
            "fitted c = {c:.4} on n <= 6, tau(12) = {}, exceeding n {over:?}",
            tau[11]
        ),
    )
}

fn main() {
    let mut results = vec![oracle_equivalence()];
    results.extend(overlap_suite());
    results.extend([
        frequency_recursion(),
        schedule_reproduction(),
        turing_corpus(),
        transfer_numerics(),
        torus(),
        occupancy_suite(),
        lift_counting(),
        cost_growth(),
    ]);
    let mut unexpected = Vec::new();
    for r in &results {
        println!(
            "criterion {}: {} ({})",
            r.id,
            if r.pass { "PASS" } else { "FAIL" },
            r.detail
        );
        let expected = EXPECTED_FAILURES.iter().find(|(id, _)| *id == r.id);
        match (r.pass, expected) {
            (true, None) => {}
            (false, Some((_, needle))) if r.detail.contains(needle) => {
                println!(
                    "  known: this criterion does not hold for the construction; see the README"
                );
            }
            _ => unexpected.push(r.id),
        }
    }
    let passed = results.iter().filter(|r| r.pass).count();
    println!("{passed}/{} criteria pass", results.len());
    if !unexpected.is_empty() {
        eprintln!("unexpected acceptance results: {unexpected:?}");
        std::process::exit(1);
    }
}
