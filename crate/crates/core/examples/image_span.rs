use std::sync::Arc;

use octobil::builtin;
use octobil::restriction::{image_span, restrict};

fn main() {
    for id in ["octonion_mul", "commutator_map", "lam_map", "f1", "main_f"] {
        let f = builtin(id).unwrap();
        let span = image_span(&f);
        println!("{id:<16} raw k = {:>2}, span = {:>2}", f.dims().2, span.dimension);
    }

    let f = Arc::new(builtin("main_f").unwrap());
    let rm = restrict(&f, &"rq,o,o,o".parse().unwrap(), &"rq,o,o,o".parse().unwrap()).unwrap();
    println!("\n{} -> {:?}", rm.map().id(), rm.dims());
    let raw = rm.evaluate_raw(&octobil::scalar::unit(29, 0), &octobil::scalar::unit(29, 5)).unwrap();
    let c = rm.compress(&raw).unwrap();
    assert_eq!(rm.expand(&c), raw);
    println!("compress/expand round trip ok ({} -> {} coordinates)", raw.len(), c.len());
}
