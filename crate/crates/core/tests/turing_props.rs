use proptest::prelude::*;
use zerotemp_core::turing::{
    builtin, check_diagram, compile_tileset, config_row, head_window, run_bounded,
    space_time_diagram, step, MachineConfig, Outcome, Step, TuringMachine,
};

fn decider() -> TuringMachine {
    builtin("anbn_dec").unwrap()
}

fn ab_word(max: usize) -> impl Strategy<Value = Vec<bool>> {
    prop::collection::vec(any::<bool>(), 0..=max)
}

fn encode(m: &TuringMachine, w: &[bool]) -> Vec<usize> {
    let (a, b) = (m.symbol_index("a").unwrap(), m.symbol_index("b").unwrap());
    w.iter().map(|&x| if x { b } else { a }).collect()
}

fn is_anbn(w: &[bool]) -> bool {
    let n = w.len() / 2;
    n >= 1 && w.len() == 2 * n && w[..n].iter().all(|x| !x) && w[n..].iter().all(|&x| x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn runs_are_deterministic(w in ab_word(10), fuel in 0u64..300) {
        let m = decider();
        let input = encode(&m, &w);
        prop_assert_eq!(run_bounded(&m, &input, fuel), run_bounded(&m, &input, fuel));
    }

    #[test]
    fn decider_accepts_exactly_anbn(w in ab_word(20)) {
        let m = decider();
        let (outcome, _) = run_bounded(&m, &encode(&m, &w), 100_000);
        prop_assert_ne!(outcome, Outcome::Timeout);
        prop_assert_eq!(outcome == Outcome::Accept, is_anbn(&w));
    }

    #[test]
    fn diagram_rows_follow_single_steps(w in ab_word(8), machine in prop::sample::select(vec!["anbn_dec", "anbn_enum"]), steps in 1usize..80) {
        let m = builtin(machine).unwrap();
        let input = if machine == "anbn_enum" { vec![] } else { encode(&m, &w) };
        let window = head_window(&m, &input, steps);
        let rows = space_time_diagram(&m, &input, steps, window.clone()).unwrap().rows().unwrap();
        let mut c = MachineConfig::initial(&m, &input);
        prop_assert_eq!(&rows[0], &config_row(&m, &c, &window));
        for row in &rows[1..] {
            c = match step(&m, &c) {
                Step::Running(next) | Step::Halted(_, next) => next,
            };
            prop_assert_eq!(row, &config_row(&m, &c, &window));
        }
    }

    #[test]
    fn tiles_accept_generated_diagrams(w in ab_word(8), steps in 1usize..120) {
        for m in [decider(), builtin("anbn_enum").unwrap()] {
            let input = if m.print_events().is_empty() { encode(&m, &w) } else { vec![] };
            let window = head_window(&m, &input, steps);
            let d = space_time_diagram(&m, &input, steps, window).unwrap();
            if d.height() < 2 {
                // stuck at once (the empty input), nothing to tile
                continue;
            }
            prop_assert!(check_diagram(&compile_tileset(&m), &d).unwrap().ok());
        }
    }
}
