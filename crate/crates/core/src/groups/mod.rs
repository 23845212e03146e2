//! Permutation groups: stabilizer chains, involution classes, pair orbits
//! and folded shape diagrams.

mod chain;
pub mod fixtures;
mod perm;
mod shape;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::cell::OnceCell;

use num_bigint::BigUint;
use num_traits::One;

pub use perm::Permutation;
pub use shape::{enumerate_shapes, shape_diagram, shape_label, Edge, Node, Shape, ShapeDiagram};

use chain::Chain;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("images do not form a bijection")]
    NotBijection,
    #[error("permutation of degree {found} in a group of degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("element is not in the group")]
    NotMember,
    #[error("element is not an involution")]
    NotInvolution,
    #[error("set is not invariant under conjugation by the group")]
    NotInvariant,
    #[error("pair ({0}, {1}) is not a 3-transposition pair")]
    NotThreeTransposition(usize, usize),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(alloc::string::String),
}

/// A permutation group given by generators; the stabilizer chain is built
/// on first use.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    chain: OnceCell<Chain>,
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self, GroupError> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch { expected: degree, found: g.degree() });
        }
        Ok(PermGroup { degree, gens, chain: OnceCell::new() })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, gens: Vec::new(), chain: OnceCell::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    fn chain(&self) -> &Chain {
        self.chain.get_or_init(|| Chain::build(self.degree, &self.gens))
    }

    /// Exact order, the product of the basic orbit lengths.
    pub fn order(&self) -> BigUint {
        self.chain().levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain().levels.iter().map(|l| l.base).collect()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    /// Every element, as products of transversal elements (deepest level
    /// first). Only sensible for small groups.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = alloc::vec![Permutation::identity(self.degree)];
        for lv in self.chain().levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * lv.orbit.len());
            for &p in &lv.orbit {
                let t = lv.transversal[p].as_ref().unwrap();
                for h in &out {
                    next.push(h.then(t));
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    /// Orbit of a point, in discovery order.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = alloc::vec![false; self.degree];
        seen[point] = true;
        let mut orbit = alloc::vec![point];
        let mut k = 0;
        while k < orbit.len() {
            for g in &self.gens {
                let q = g.apply(orbit[k]);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
            k += 1;
        }
        orbit
    }

    /// Stabilizer of a point, generated by its Schreier generators.
    pub fn stabilizer(&self, point: usize) -> PermGroup {
        let n = self.degree;
        let mut tr: Vec<Option<Permutation>> = alloc::vec![None; n];
        tr[point] = Some(Permutation::identity(n));
        let mut orbit = alloc::vec![point];
        let mut k = 0;
        while k < orbit.len() {
            let p = orbit[k];
            for s in &self.gens {
                let q = s.apply(p);
                if tr[q].is_none() {
                    tr[q] = Some(tr[p].as_ref().unwrap().then(s));
                    orbit.push(q);
                }
            }
            k += 1;
        }
        let mut gens: BTreeSet<Permutation> = BTreeSet::new();
        for &p in &orbit {
            for s in &self.gens {
                let q = s.apply(p);
                let h = tr[p].as_ref().unwrap().then(s).then(&tr[q].as_ref().unwrap().inverse());
                if !h.is_identity() {
                    gens.insert(h);
                }
            }
        }
        PermGroup { degree: n, gens: gens.into_iter().collect(), chain: OnceCell::new() }
    }

    fn check_degree(&self, x: &Permutation) -> Result<(), GroupError> {
        if x.degree() != self.degree {
            return Err(GroupError::DegreeMismatch { expected: self.degree, found: x.degree() });
        }
        Ok(())
    }
}

/// The conjugacy class of `x`, sorted.
pub fn conjugacy_class(g: &PermGroup, x: &Permutation) -> Result<Vec<Permutation>, GroupError> {
    g.check_degree(x)?;
    if !g.contains(x) {
        return Err(GroupError::NotMember);
    }
    Ok(conjugation_orbit(g.generators(), x))
}

/// Orbit of `x` under conjugation by the group generated by `gens`, sorted.
fn conjugation_orbit(gens: &[Permutation], x: &Permutation) -> Vec<Permutation> {
    let mut seen: BTreeSet<Permutation> = BTreeSet::new();
    seen.insert(x.clone());
    let mut queue = alloc::vec![x.clone()];
    while let Some(y) = queue.pop() {
        for s in gens {
            let z = y.conjugate_by(s);
            if seen.insert(z.clone()) {
                queue.push(z);
            }
        }
    }
    seen.into_iter().collect()
}

pub fn group_order(g: &PermGroup) -> BigUint {
    g.order()
}

/// The group generated by `set`; for a set of axis involutions this is the
/// group shape diagrams are folded over.
pub fn miyamoto_group(degree: usize, set: &[Permutation]) -> Result<PermGroup, GroupError> {
    PermGroup::new(degree, set.to_vec())
}

/// All conjugacy classes of involutions, ordered by size and then by their
/// least element.
pub fn involution_classes(g: &PermGroup) -> Vec<Vec<Permutation>> {
    let mut remaining: BTreeSet<Permutation> = g.elements().into_iter().filter(Permutation::is_involution).collect();
    let mut classes = Vec::new();
    while let Some(x) = remaining.iter().next().cloned() {
        let c = conjugation_orbit(g.generators(), &x);
        for y in &c {
            remaining.remove(y);
        }
        classes.push(c);
    }
    classes.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a[0].cmp(&b[0])));
    classes
}

/// `a^D` together with `b^D` for the dihedral group `D = <a, b>`, sorted.
pub fn dihedral_closure(a: &Permutation, b: &Permutation) -> Result<Vec<Permutation>, GroupError> {
    if a.degree() != b.degree() {
        return Err(GroupError::DegreeMismatch { expected: a.degree(), found: b.degree() });
    }
    if !a.is_involution() || !b.is_involution() {
        return Err(GroupError::NotInvolution);
    }
    let gens = [a.clone(), b.clone()];
    let mut all: BTreeSet<Permutation> = conjugation_orbit(&gens, a).into_iter().collect();
    all.extend(conjugation_orbit(&gens, b));
    Ok(all.into_iter().collect())
}

/// Orbit of unordered pairs from a conjugation-invariant set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairOrbit {
    /// Lexicographically least pair of indices into the set.
    pub rep: (usize, usize),
    pub size: usize,
    /// `|ab|` for the representative pair.
    pub order: usize,
}

/// Pair orbits with the pair-to-orbit table backing them.
#[derive(Clone, Debug)]
pub struct PairOrbits {
    pub orbits: Vec<PairOrbit>,
    n: usize,
    label: Vec<u32>,
}

impl PairOrbits {
    /// Orbit index of the pair `{i, j}`, `i != j`.
    pub fn orbit_of(&self, i: usize, j: usize) -> usize {
        self.label[pair_index(self.n, i, j)] as usize
    }
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    debug_assert!(i != j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let p = parent[x as usize];
        parent[x as usize] = parent[p as usize];
        x = p;
    }
    x
}

/// The action of each generator on `set` by conjugation, as index maps.
fn conjugation_action(g: &PermGroup, set: &[Permutation]) -> Result<Vec<Vec<usize>>, GroupError> {
    let index: BTreeMap<&Permutation, usize> = set.iter().enumerate().map(|(i, x)| (x, i)).collect();
    g.generators()
        .iter()
        .map(|s| set.iter().map(|x| index.get(&x.conjugate_by(s)).copied().ok_or(GroupError::NotInvariant)).collect())
        .collect()
}

/// Orbits of the group on unordered pairs of `set`, by union-find over the
/// generator action on pair indices. Orbits are listed by representative.
pub fn pair_orbits(g: &PermGroup, set: &[Permutation]) -> Result<PairOrbits, GroupError> {
    for x in set {
        g.check_degree(x)?;
    }
    let action = conjugation_action(g, set)?;
    let n = set.len();
    let m = n * n.saturating_sub(1) / 2;
    let mut parent: Vec<u32> = (0..m as u32).collect();
    for i in 0..n {
        for j in i + 1..n {
            let p = pair_index(n, i, j) as u32;
            for act in &action {
                let q = pair_index(n, act[i], act[j]) as u32;
                let (a, b) = (find(&mut parent, p), find(&mut parent, q));
                if a != b {
                    // keep the smaller index as root so roots are orbit minima
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[hi as usize] = lo;
                }
            }
        }
    }
    let mut roots: BTreeMap<u32, usize> = BTreeMap::new();
    let mut label = alloc::vec![0u32; m];
    let mut sizes: Vec<usize> = Vec::new();
    let mut reps: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let p = pair_index(n, i, j);
            let r = find(&mut parent, p as u32);
            let id = *roots.entry(r).or_insert_with(|| {
                reps.push((i, j));
                sizes.push(0);
                reps.len() - 1
            });
            sizes[id] += 1;
            label[p] = id as u32;
        }
    }
    let orbits = reps
        .into_iter()
        .zip(sizes)
        .map(|((i, j), size)| PairOrbit { rep: (i, j), size, order: set[i].then(&set[j]).order() })
        .collect();
    Ok(PairOrbits { orbits, n, label })
}

/// Largest order of a product of two members of `set`; the set is a class
/// of 6-transpositions when this is at most 6.
pub fn six_transposition_check(set: &[Permutation]) -> Result<(bool, usize), GroupError> {
    if !set.iter().all(Permutation::is_involution) {
        return Err(GroupError::NotInvolution);
    }
    let mut max = if set.is_empty() { 0 } else { 1 };
    for i in 0..set.len() {
        for j in i + 1..set.len() {
            max = max.max(set[i].then(&set[j]).order());
        }
    }
    Ok((max <= 6, max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> PermGroup {
        let cyc: Vec<usize> = (0..n).collect();
        PermGroup::new(
            n,
            alloc::vec![
                Permutation::from_cycles(n, &[&cyc]).unwrap(),
                Permutation::from_cycles(n, &[&[0, 1]]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn symmetric_group_orders() {
        assert_eq!(sym(3).order(), 6u32.into());
        assert_eq!(sym(5).order(), 120u32.into());
        assert_eq!(sym(7).order(), 5040u32.into());
        assert_eq!(PermGroup::trivial(4).order(), 1u32.into());
    }

    #[test]
    fn elements_enumerate_the_group() {
        let g = sym(4);
        let els = g.elements();
        assert_eq!(els.len(), 24);
        assert!(els.iter().all(|x| g.contains(x)));
    }

    #[test]
    fn membership() {
        let g = PermGroup::new(4, alloc::vec![Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap()]).unwrap();
        assert!(g.contains(&Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap()));
        assert!(!g.contains(&Permutation::from_cycles(4, &[&[0, 1]]).unwrap()));
        let t = Permutation::from_cycles(4, &[&[0, 1]]).unwrap();
        assert_eq!(conjugacy_class(&g, &t).unwrap_err(), GroupError::NotMember);
    }

    #[test]
    fn identity_class_is_a_singleton() {
        let g = sym(4);
        assert_eq!(conjugacy_class(&g, &Permutation::identity(4)).unwrap().len(), 1);
    }

    #[test]
    fn dihedral_closures() {
        let a = Permutation::from_cycles(4, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(4, &[&[2, 3]]).unwrap();
        assert_eq!(dihedral_closure(&a, &a).unwrap(), alloc::vec![a.clone()]);
        assert_eq!(dihedral_closure(&a, &b).unwrap().len(), 2);
        // reflections of a hexagon through a vertex and an adjacent edge midpoint
        let r = Permutation::from_cycles(6, &[&[1, 5], &[2, 4]]).unwrap();
        let s = Permutation::from_cycles(6, &[&[0, 1], &[2, 5], &[3, 4]]).unwrap();
        assert_eq!(r.then(&s).order(), 6);
        assert_eq!(dihedral_closure(&r, &s).unwrap().len(), 6);
        assert_eq!(dihedral_closure(&a, &Permutation::from_cycles(4, &[&[0, 1, 2]]).unwrap()).unwrap_err(), GroupError::NotInvolution);
    }

    #[test]
    fn pair_orbits_of_transpositions() {
        let g = sym(5);
        let t = Permutation::from_cycles(5, &[&[0, 1]]).unwrap();
        let class = conjugacy_class(&g, &t).unwrap();
        let po = pair_orbits(&g, &class).unwrap();
        let mut got: Vec<(usize, usize)> = po.orbits.iter().map(|o| (o.order, o.size)).collect();
        got.sort();
        assert_eq!(got, alloc::vec![(2, 15), (3, 30)]);
        let singleton = pair_orbits(&PermGroup::trivial(5), &class[..1]).unwrap();
        assert!(singleton.orbits.is_empty());
    }

    #[test]
    fn non_invariant_set_rejected() {
        let g = sym(3);
        let t = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        assert_eq!(pair_orbits(&g, &[t]).unwrap_err(), GroupError::NotInvariant);
    }
}
