use octobil::builtin;
use octobil::verify::{rank_profile, Side};

fn main() {
    for id in ["main_f", "f1", "f2", "f3", "commutator_map"] {
        let f = builtin(id).unwrap();
        for side in [Side::Left, Side::Right] {
            let rep = rank_profile(&f, side, 25, 0xC0DA, 5).unwrap();
            println!(
                "{id:<16} {side:<5?} min rank {:>2} / {:>2}  {}",
                rep.min_rank_observed.unwrap(),
                rep.expected_rank.unwrap(),
                if rep.passed { "full" } else { "deficient" }
            );
        }
    }
}
