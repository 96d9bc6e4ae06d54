use octobil::{builtin, BilinearMap, Tensor};

fn main() {
    let id = std::env::args().nth(1).unwrap_or_else(|| "quaternion_mul".into());
    let f = builtin(&id).unwrap();
    let t = f.as_tensor();
    let json = t.to_json().unwrap();
    let (r, s, k) = t.dims();
    println!("{id}: {r} x {s} -> {k}, {} nonzero structure constants", t.entries().len());

    let back = BilinearMap::from_tensor(Tensor::from_json(&json).unwrap());
    assert_eq!(back.as_tensor(), t);
    for e in t.entries().iter().take(8) {
        println!("  f(e{}, e{})_{} = {}", e.i, e.j, e.t, e.value);
    }
    if json.len() < 4000 {
        println!("{json}");
    }
}
