use octobil::bounds::{bounds_table, corollary_sections, format_bounds, format_sections, Registry, VerifyPolicy};

fn main() {
    let max = std::env::args().nth(1).and_then(|m| m.parse().ok()).unwrap_or(10);
    let registry = Registry::verified(VerifyPolicy::default()).unwrap();
    print!("{}", format_bounds(&bounds_table(&registry, max).unwrap()));

    let e = registry.best_upper_bound(29, 29).unwrap();
    println!("\n29#29 <= {} via {}", e.k, e.source);
    for n in &e.notes {
        println!("  {n}");
    }
    println!();
    print!("{}", format_sections(&corollary_sections(&registry).unwrap()));
}
