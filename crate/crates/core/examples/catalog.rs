use octobil::scalar::{format_vector, ints};
use octobil::{builtin, Construction};

fn main() {
    for c in Construction::FIXED {
        let f = octobil::BilinearMap::from_construction(c).unwrap();
        let (r, s, k) = f.dims();
        println!("{:<16} {r:>3} x {s:>3} -> {k:>3}  {}", c.id(), c.description());
    }

    let c = builtin("complex_mul").unwrap();
    println!("\n1 * i = {}", format_vector(&c.evaluate(&ints(&[1, 0]), &ints(&[0, 1])).unwrap()));

    let p = builtin("poly_mul(3,2)").unwrap();
    let v = p.evaluate(&ints(&[1, 2, 1]), &ints(&[1, -1])).unwrap();
    println!("(1 + 2t + t^2)(1 - t) = {}", format_vector(&v));

    let f = builtin("main_f").unwrap();
    let mut x = vec![0; 32];
    x[0] = 1;
    let v = f.evaluate(&ints(&x), &ints(&x)).unwrap();
    println!("main_f(e0, e0) = {}", format_vector(&v));
}
