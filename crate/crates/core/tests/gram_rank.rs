use axial_core::catalog::NsType;
use axial_core::forms::gram_from_shape;
use axial_core::groups::{fixtures, involution_classes, shape_diagram};

const P: u64 = 1_000_000_007;

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

/// Rank over `F_P` of a matrix given by residues; a lower bound for the
/// rational rank, equal to it unless `P` divides a minor.
fn rank_mod_p(mut m: Vec<Vec<u64>>) -> usize {
    let (rows, cols) = (m.len(), m[0].len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, p);
        let inv = pow_mod(m[rank][c], P - 2);
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c] * inv % P;
                for k in c..cols {
                    m[r][k] = (m[r][k] + P - f * m[rank][k] % P) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn residue(t: NsType) -> u64 {
    let v = t.axis_product_value();
    let r = v.as_rational().unwrap();
    let num: i64 = r.numer().try_into().unwrap();
    let den: u64 = r.denom().try_into().unwrap();
    (num as u64 % P) * pow_mod(den, P - 2) % P
}

#[test]
fn m11_gram_rank_for_the_forced_shape() {
    let g = fixtures::m11();
    let class = involution_classes(&g).into_iter().find(|c| c.len() == 165).unwrap();
    let d = shape_diagram(&g, &class).unwrap();
    let letter = |order: usize| match order {
        2 => NsType::A2,
        3 => NsType::A3,
        4 => NsType::B4,
        5 => NsType::A5,
        6 => NsType::A6,
        _ => unreachable!(),
    };
    let types: Vec<NsType> = d.nodes.iter().map(|n| letter(n.order)).collect();
    let pair = |i: usize, j: usize| types[d.node_of(i, j)];
    let gram = gram_from_shape(165, |i, j| Some(pair(i, j))).unwrap();
    let exact = gram.rank();
    let modular: Vec<Vec<u64>> =
        (0..165).map(|i| (0..165).map(|j| if i == j { 1 } else { residue(pair(i, j)) }).collect()).collect();
    assert_eq!(exact, rank_mod_p(modular));
    assert_eq!(exact, 165);
}
