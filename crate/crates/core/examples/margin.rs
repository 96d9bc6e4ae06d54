use octobil::builtin;
use octobil::verify::margin_estimate;

fn main() {
    for (id, restarts, iters) in [("octonion_mul", 8, 200), ("commutator_map", 8, 200), ("f1", 16, 300), ("main_f", 32, 500)] {
        let f = builtin(id).unwrap();
        let rep = margin_estimate(&f, restarts, iters, 1e-12, 0xC0DA).unwrap();
        println!("{id:<16} margin {:.9}", rep.margin_value.unwrap());
        if let Some(w) = rep.failures.first() {
            println!("  exact kernel pair recovered: x = {}, y = {}", octobil::scalar::format_vector(&w.x), octobil::scalar::format_vector(&w.y));
        }
    }
}
