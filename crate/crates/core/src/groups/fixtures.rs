//! Named permutation groups used throughout the tests and the CLI.
//!
//! Each one is an explicit construction; orders and involution class sizes
//! are checked by the test suite.

use alloc::vec::Vec;

use super::{GroupError, PermGroup, Permutation};

fn perm(images: Vec<usize>) -> Permutation {
    Permutation::from_images(images).expect("fixture generators are bijections")
}

fn group(degree: usize, gens: Vec<Permutation>) -> PermGroup {
    PermGroup::new(degree, gens).expect("fixture degrees agree")
}

/// Mathieu group on 11 points.
pub fn m11() -> PermGroup {
    let a = perm((0..11).map(|i| (i + 1) % 11).collect());
    let b = Permutation::from_cycles(11, &[&[2, 6, 10, 7], &[3, 9, 4, 5]]).expect("cycles");
    group(11, alloc::vec![a, b])
}

/// The point stabilizer in [`m11`] of the point 10, still acting on 11
/// points.
pub fn m10() -> PermGroup {
    m11().stabilizer(10)
}

/// `L_2(11)` on the projective line over `F_11`; point 11 is infinity.
pub fn l2_11() -> PermGroup {
    let inf = 11;
    let shift = perm((0..12).map(|x| if x == inf { inf } else { (x + 1) % 11 }).collect());
    let inv = |x: usize| (1..11).find(|y| x * y % 11 == 1).unwrap();
    let flip = perm(
        (0..12)
            .map(|x| match x {
                0 => inf,
                11 => 0,
                _ => (11 - inv(x)) % 11,
            })
            .collect(),
    );
    group(12, alloc::vec![shift, flip])
}

/// Symmetric group on `n` points.
pub fn symmetric(n: usize) -> PermGroup {
    let cyc: Vec<usize> = (0..n).collect();
    let mut gens = Vec::new();
    if n > 1 {
        gens.push(Permutation::from_cycles(n, &[&cyc]).expect("cycle"));
        gens.push(Permutation::from_cycles(n, &[&[0, 1]]).expect("cycle"));
    }
    group(n, gens)
}

/// Dihedral group of order `2n` on the vertices of an `n`-gon.
pub fn dihedral(n: usize) -> PermGroup {
    let rot = perm((0..n).map(|i| (i + 1) % n).collect());
    let refl = perm((0..n).map(|i| (n - i) % n).collect());
    group(n, alloc::vec![rot, refl])
}

type Mat2 = [[i64; 2]; 2];

fn mod3(x: i64) -> usize {
    x.rem_euclid(3) as usize
}

/// `x -> m x` on the nonzero vectors of `F_3^2`.
fn linear_on_nonzero(m: Mat2) -> Permutation {
    let pts: Vec<(i64, i64)> = (0..9).map(|p| (p % 3, p / 3)).filter(|&v| v != (0, 0)).collect();
    let images = pts
        .iter()
        .map(|&(x, y)| {
            let img = (mod3(m[0][0] * x + m[0][1] * y) as i64, mod3(m[1][0] * x + m[1][1] * y) as i64);
            pts.iter().position(|&q| q == img).unwrap()
        })
        .collect();
    perm(images)
}

/// `x -> m x + b` on the nine points of `AG(2, 3)`, point `x + 3y`.
fn affine(m: Mat2, b: (i64, i64)) -> Permutation {
    perm(
        (0..9)
            .map(|p| {
                let (x, y) = ((p % 3) as i64, (p / 3) as i64);
                mod3(m[0][0] * x + m[0][1] * y + b.0) + 3 * mod3(m[1][0] * x + m[1][1] * y + b.1)
            })
            .collect(),
    )
}

const ID: Mat2 = [[1, 0], [0, 1]];
/// Multiplication by `1 + i` in `F_9 = F_3[i]`, an element of order 8.
const ZETA: Mat2 = [[1, -1], [1, 1]];
/// The Frobenius automorphism of `F_9`.
const CONJ: Mat2 = [[1, 0], [0, -1]];
const TRANSVECTION: Mat2 = [[1, 1], [0, 1]];

fn translations() -> Vec<Permutation> {
    alloc::vec![affine(ID, (1, 0)), affine(ID, (0, 1))]
}

/// `GL(2, 3)`, a double cover of `S_4`, on the eight nonzero vectors.
pub fn gl2_3() -> PermGroup {
    group(
        8,
        alloc::vec![
            linear_on_nonzero(TRANSVECTION),
            linear_on_nonzero([[0, -1], [1, 0]]),
            linear_on_nonzero([[-1, 0], [0, 1]]),
        ],
    )
}

/// `3^2 : SD_16`, isomorphic to `U_3(2):2`, on the points of `AG(2, 3)`.
pub fn u3_2_2() -> PermGroup {
    let mut gens = translations();
    gens.push(affine(ZETA, (0, 0)));
    gens.push(affine(CONJ, (0, 0)));
    group(9, gens)
}

/// `3^2 : 2`, generated by the point reflections of `AG(2, 3)`.
pub fn affine_3_2_2() -> PermGroup {
    let mut gens = translations();
    gens.push(affine([[-1, 0], [0, -1]], (0, 0)));
    group(9, gens)
}

/// The full affine group `AGL(2, 3)`.
pub fn agl2_3() -> PermGroup {
    let mut gens = translations();
    gens.push(affine(ZETA, (0, 0)));
    gens.push(affine(CONJ, (0, 0)));
    gens.push(affine(TRANSVECTION, (0, 0)));
    group(9, gens)
}

/// Canonical fixture names.
pub const NAMES: &[&str] = &["M11", "M10", "L2(11)", "S5", "2.S4", "U3(2):2", "3^2:2", "AGL(2,3)", "S3", "D14"];

/// Looks up a fixture by name; a few filename-friendly spellings are
/// accepted as well.
pub fn fixture(name: &str) -> Result<PermGroup, GroupError> {
    Ok(match name {
        "M11" => m11(),
        "M10" => m10(),
        "L2(11)" | "L2_11" => l2_11(),
        "S5" => symmetric(5),
        "2.S4" | "2S4" | "GL(2,3)" => gl2_3(),
        "U3(2):2" | "U3_2_2" => u3_2_2(),
        "3^2:2" | "3_2_2" => affine_3_2_2(),
        "AGL(2,3)" | "AGL2_3" => agl2_3(),
        "S3" => symmetric(3),
        "D14" => dihedral(7),
        _ => return Err(GroupError::UnknownFixture(name.into())),
    })
}
