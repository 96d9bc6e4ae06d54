use octobil::scalar::ratio;
use octobil::{Element, Level};

fn main() {
    let e = |i| Element::basis(Level::Octonion, i);
    println!("e1 e2 = {:?}", (&e(1) * &e(2)).coords().iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("[e1, e2] = {:?}", e(1).commutator(&e(2)).unwrap().coords().iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("(e1, e2, e4) zero? {}", e(1).associator(&e(2), &e(4)).unwrap().is_zero());

    let x = Element::new(Level::Octonion, (1..=8).map(|i| ratio(i, 3)).collect()).unwrap();
    let y = Element::from_ints(Level::Octonion, &[2, -1, 0, 3, 1, 1, -4, 5]).unwrap();
    let xy = &x * &y;
    println!("N(x) = {}, N(y) = {}, N(xy) = {}", x.norm(), y.norm(), xy.norm());
    assert_eq!(xy.norm(), x.norm() * y.norm());
    assert_eq!(&x * &(&x * &y), &(&x * &x) * &y);
    assert_eq!(xy.conj(), &y.conj() * &x.conj());

    let q = Element::from_ints(Level::Quaternion, &[1, 2, 3, 4]).unwrap();
    println!("embedded into K: {:?}", q.embed(Level::Octonion).unwrap().coords().iter().map(ToString::to_string).collect::<Vec<_>>());
}
