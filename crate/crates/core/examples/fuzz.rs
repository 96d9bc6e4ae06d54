use octobil::builtin;
use octobil::scalar::format_vector;
use octobil::verify::fuzz_nonsingularity;

fn main() {
    let trials = std::env::args().nth(1).and_then(|t| t.parse().ok()).unwrap_or(2_000);
    for id in ["main_f", "f1", "f2", "f3", "lam_map", "adem_map", "octonion_mul", "commutator_map"] {
        let f = builtin(id).unwrap();
        let rep = fuzz_nonsingularity(&f, trials, 0xC0DA, 5).unwrap();
        println!("{id:<16} {:<5} failures {:>6}  {}", if rep.passed { "ok" } else { "FAIL" }, rep.failure_count, rep.claim);
        if let Some(w) = rep.failures.first() {
            println!("  witness x = {}", format_vector(&w.x));
            println!("          y = {}", format_vector(&w.y));
        }
    }
}
