#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use octobil::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Q = [i128; 4];
pub type O = [i128; 8];

pub fn qmul(a: &Q, b: &Q) -> Q {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

pub fn qconj(a: &Q) -> Q {
    [a[0], -a[1], -a[2], -a[3]]
}

fn qadd(a: &Q, b: &Q) -> Q {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

fn qsub(a: &Q, b: &Q) -> Q {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]]
}

/// Octonions as quaternion pairs, (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c)).
pub fn omul(x: &O, y: &O) -> O {
    let (a, b): (Q, Q) = ([x[0], x[1], x[2], x[3]], [x[4], x[5], x[6], x[7]]);
    let (c, d): (Q, Q) = ([y[0], y[1], y[2], y[3]], [y[4], y[5], y[6], y[7]]);
    let lo = qsub(&qmul(&a, &c), &qmul(&qconj(&d), &b));
    let hi = qadd(&qmul(&d, &a), &qmul(&b, &qconj(&c)));
    [lo[0], lo[1], lo[2], lo[3], hi[0], hi[1], hi[2], hi[3]]
}

pub fn oconj(a: &O) -> O {
    let mut c = a.map(|v| -v);
    c[0] = a[0];
    c
}

pub fn oadd(a: &O, b: &O) -> O {
    std::array::from_fn(|i| a[i] + b[i])
}

pub fn osub(a: &O, b: &O) -> O {
    std::array::from_fn(|i| a[i] - b[i])
}

pub fn blocks(v: &[i128]) -> Vec<O> {
    v.chunks(8).map(|c| c.try_into().unwrap()).collect()
}

/// The seven-block main map, written out over integer octonions.
pub fn main_f_oracle(x: &[i128], y: &[i128]) -> Vec<i128> {
    let a = blocks(x);
    let b = blocks(y);
    let cb: Vec<O> = b.iter().map(oconj).collect();
    let m = omul;
    let parts = [
        osub(&m(&a[0], &b[0]), &m(&b[0], &a[0])),
        oadd(&m(&cb[0], &a[1]), &m(&a[0], &cb[1])),
        oadd(&oadd(&m(&cb[0], &a[2]), &m(&a[1], &b[1])), &m(&a[0], &cb[2])),
        oadd(
            &oadd(&osub(&m(&oconj(&a[0]), &b[3]), &m(&cb[2], &a[1])), &m(&a[2], &cb[1])),
            &m(&b[0], &a[3]),
        ),
        osub(
            &oadd(&oadd(&m(&b[3], &oconj(&a[1])).map(|v| -v), &m(&a[2], &b[2])), &m(&a[3], &b[1])),
            &m(&a[0], &b[0]),
        ),
        oadd(&m(&a[3], &b[2]), &m(&a[2], &b[3])),
        m(&a[3], &b[3]),
    ];
    parts.iter().flatten().copied().collect()
}

pub fn to_scalars(v: &[i128]) -> Vec<Scalar> {
    v.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ints(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<i128> {
    (0..n).map(|_| rng.gen_range(-bound..=bound) as i128).collect()
}

pub fn rationals(rng: &mut ChaCha8Rng, n: usize) -> Vec<Scalar> {
    (0..n)
        .map(|_| {
            let p: i64 = rng.gen_range(-9..=9);
            let q: i64 = rng.gen_range(1..=6);
            BigRational::new(p.into(), q.into())
        })
        .collect()
}

/// Plain Gaussian elimination over the rationals.
pub fn rank_oracle(rows: &[Vec<Scalar>]) -> usize {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = BigRational::one() / m[rank][c].clone();
        let pivot: Vec<Scalar> = m[rank].iter().map(|v| v * &inv).collect();
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = &f * &pivot[j];
                    m[i][j] -= d;
                }
            }
        }
        m[rank] = pivot;
        rank += 1;
    }
    rank
}
