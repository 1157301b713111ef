use std::path::PathBuf;

use clap::{Subcommand, ValueEnum};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zerotemp_core::planar::{
    check_zero_bounds, duplicate_extension, lift_count, lifts, occupancy, sample_mosaic,
    MosaicShape,
};
use zerotemp_core::symbolic::format::parse_char_patterns;
use zerotemp_core::symbolic::Pattern;
use zerotemp_core::tower::{parse_word, ratio_string, word_string};

use crate::report::{json, usage, Failure, Report};
use crate::tower_cmd::TowerArgs;

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Shape {
    Columns,
    Blocks,
}

#[derive(Subcommand, Debug)]
pub enum PlanarCmd {
    /// Occupied offsets and zero-count bounds on sampled mosaics or a given pattern
    Occupancy {
        #[command(flatten)]
        tower: TowerArgs,
        #[arg(long, default_value_t = 2)]
        k: u32,
        /// Side of the sampled square
        #[arg(long, default_value_t = 128)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        mosaics: u64,
        #[arg(long, value_enum, default_value = "columns")]
        shape: Shape,
        /// Analyse this square pattern (digits 0-2) instead of sampling
        #[arg(long, conflicts_with = "mosaics")]
        pattern: Option<PathBuf>,
        /// Emit the full offset sets as JSON
        #[arg(long)]
        json: bool,
    },
    /// Count lifts of words (0 splits into two lifted zeros) by enumeration
    Lifts {
        /// One word over 0,1,2
        #[arg(long, conflicts_with = "random")]
        word: Option<String>,
        /// Height of the duplicated extension of --word
        #[arg(long, default_value_t = 1)]
        height: usize,
        /// Print every lift of --word
        #[arg(long)]
        list: bool,
        /// Check this many random words instead
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 16)]
        max_len: usize,
    },
}

pub const PLANAR_N: [u64; 2] = [4, 8];
pub const PLANAR_NPRIME: [u64; 2] = [4, 4];

pub fn run(cmd: &PlanarCmd, seed: u64) -> Result<Report, Failure> {
    match cmd {
        PlanarCmd::Occupancy {
            tower,
            k,
            n,
            mosaics,
            shape,
            pattern,
            json: as_json,
        } => {
            let t = tower.build(&PLANAR_N, &PLANAR_NPRIME)?;
            let shape = match shape {
                Shape::Columns => MosaicShape::Columns,
                Shape::Blocks => MosaicShape::Blocks,
            };
            let inputs: Vec<(String, Pattern<u8>)> = match pattern {
                Some(path) => {
                    let ps = parse_char_patterns(&std::fs::read_to_string(path)?)?;
                    let [p] = &ps[..] else {
                        return Err(usage("pattern file must hold exactly one pattern"));
                    };
                    let digits = p.map(|c| c.to_digit(3).map(|d| d as u8));
                    if digits.cells().any(|(_, d)| d.is_none()) {
                        return Err(usage("pattern symbols must be 0, 1 or 2"));
                    }
                    vec![("pattern".into(), digits.map(|d| d.expect("checked")))]
                }
                None => (0..*mosaics)
                    .map(|i| {
                        let s = seed.wrapping_add(i);
                        let mut rng = ChaCha8Rng::seed_from_u64(s);
                        Ok((
                            format!("seed {s}"),
                            sample_mosaic(&t, *k, *n, shape, &mut rng)?,
                        ))
                    })
                    .collect::<Result<_, Failure>>()?,
            };
            let mut r = Report::new(String::new());
            let mut docs = Vec::new();
            let mut failed = 0;
            for (name, p) in &inputs {
                let rep = occupancy(p, &t, *k)?;
                let bounds = check_zero_bounds(&rep, &t)?;
                let uncovered = rep.uncovered_targets().len();
                let line = format!(
                    "{name}: |I|={} |J^A|={} |J^B|={} disjoint={} uncovered={} power {}<={} marker {}<={}",
                    rep.i.len(),
                    rep.j_a.len(),
                    rep.j_b.len(),
                    rep.disjoint(),
                    uncovered,
                    bounds.power.count,
                    ratio_string(&bounds.power.bound),
                    bounds.marker.count,
                    ratio_string(&bounds.marker.bound),
                );
                let holds = rep.disjoint() && uncovered == 0 && bounds.holds();
                failed += usize::from(!holds);
                if *as_json {
                    docs.push(serde_json::json!({
                        "input": name,
                        "report": rep.to_json(),
                        "bounds": bounds.to_json(),
                    }));
                } else {
                    r.payload
                        .push_str(&format!("{line} {}\n", if holds { "ok" } else { "FAIL" }));
                }
            }
            r.check(
                format!("{} inputs, {failed} failing", inputs.len()),
                failed == 0,
            );
            if *as_json {
                r.payload = json(&docs)?;
            }
            Ok(r)
        }
        PlanarCmd::Lifts {
            word,
            height,
            list,
            random,
            max_len,
        } => match (word, random) {
            (Some(w), _) => {
                let w = parse_word(w)?;
                if *height == 0 {
                    return Err(usage("--height must be positive"));
                }
                let p = duplicate_extension(&w, *height);
                let mut r = Report::new(String::new());
                let mut count = BigUint::from(0u8);
                for l in lifts(&p) {
                    count += 1u8;
                    if *list {
                        let cells: Vec<String> =
                            l.symbols().iter().map(|c| c.to_string()).collect();
                        r.payload.push_str(&cells.join(" "));
                        r.payload.push('\n');
                    }
                }
                r.payload.push_str(&format!("lifts: {count}\n"));
                r.check(
                    format!("count equals 2^zeros = {}", lift_count(&p)),
                    count == lift_count(&p),
                );
                Ok(r)
            }
            (None, Some(trials)) => {
                if *max_len == 0 {
                    return Err(usage("--max-len must be positive"));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut r = Report::new(String::new());
                let mut bad = 0;
                for _ in 0..*trials {
                    let len = rng.gen_range(1..=*max_len);
                    let w: Vec<u8> = (0..len).map(|_| rng.gen_range(0..3)).collect();
                    let p = Pattern::word(w.iter().copied());
                    let enumerated = lifts(&p).count();
                    let zeros = w.iter().filter(|&&c| c == 0).count();
                    let ok = enumerated == 1usize << zeros;
                    bad += usize::from(!ok);
                    r.payload.push_str(&format!(
                        "{} {enumerated} {}\n",
                        word_string(&w),
                        if ok { "ok" } else { "FAIL" }
                    ));
                }
                r.check(format!("{trials} random words, {bad} mismatches"), bad == 0);
                Ok(r)
            }
            (None, None) => Err(usage("one of --word or --random is required")),
        },
    }
}
