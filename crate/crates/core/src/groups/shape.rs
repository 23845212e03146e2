//! Folded shape diagrams: pair orbits of a set of involutions, ordered by
//! containment of dihedral closures, with the possible Norton-Sakuma types
//! of each orbit.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use super::{dihedral_closure, pair_orbits, GroupError, PairOrbits, PermGroup, Permutation};
use crate::catalog::NsType;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub rep: (usize, usize),
    pub size: usize,
    pub order: usize,
    /// Types compatible with the order alone.
    pub options: Vec<NsType>,
}

/// Arc from a pair orbit to an orbit of larger order whose dihedral
/// closure contains it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub contained: usize,
    pub container: usize,
}

#[derive(Clone, Debug)]
pub struct ShapeDiagram {
    pub set: Vec<Permutation>,
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    /// Distinct orbits of equal order inside one closure; their types
    /// coincide.
    pub links: Vec<(usize, usize)>,
    orbits: PairOrbits,
}

impl ShapeDiagram {
    pub fn node_of(&self, i: usize, j: usize) -> usize {
        self.orbits.orbit_of(i, j)
    }

    pub fn set_len(&self) -> usize {
        self.set.len()
    }

    /// Nodes touched by no edge.
    pub fn isolated(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&n| self.edges.iter().all(|e| e.contained != n && e.container != n))
            .collect()
    }
}

/// One type per node.
pub type Shape = Vec<NsType>;

pub fn shape_diagram(g: &PermGroup, set: &[Permutation]) -> Result<ShapeDiagram, GroupError> {
    let orbits = pair_orbits(g, set)?;
    let index: BTreeMap<&Permutation, usize> = set.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let nodes: Vec<Node> = orbits
        .orbits
        .iter()
        .map(|o| Node { rep: o.rep, size: o.size, order: o.order, options: NsType::with_number(o.order) })
        .collect();
    let mut edges = BTreeSet::new();
    let mut links = BTreeSet::new();
    for (n, node) in nodes.iter().enumerate() {
        let (c, d) = node.rep;
        let closure = dihedral_closure(&set[c], &set[d])?;
        let ids: Vec<usize> =
            closure.iter().map(|x| index.get(x).copied().ok_or(GroupError::NotInvariant)).collect::<Result<_, _>>()?;
        for (k, &x) in ids.iter().enumerate() {
            for &y in &ids[k + 1..] {
                let m = orbits.orbit_of(x, y);
                if m == n {
                    continue;
                }
                let other = nodes[m].order;
                if other < node.order {
                    edges.insert(Edge { contained: m, container: n });
                } else if other == node.order {
                    links.insert((m.min(n), m.max(n)));
                }
            }
        }
    }
    Ok(ShapeDiagram {
        set: set.to_vec(),
        nodes,
        edges: edges.into_iter().collect(),
        links: links.into_iter().collect(),
        orbits,
    })
}

fn consistent(d: &ShapeDiagram, s: &[NsType]) -> bool {
    d.edges.iter().all(|e| s[e.container].contained_type(d.nodes[e.contained].order) == Some(s[e.contained]))
        && d.links.iter().all(|&(a, b)| s[a] == s[b])
}

/// Node permutations induced by an outer group acting on the same points
/// and normalizing the set.
fn node_action(d: &ShapeDiagram, outer: &PermGroup) -> Result<Vec<Permutation>, GroupError> {
    let index: BTreeMap<&Permutation, usize> = d.set.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut perms = Vec::new();
    for h in outer.generators() {
        let images: Vec<usize> = d
            .nodes
            .iter()
            .map(|node| {
                let img = |k: usize| index.get(&d.set[k].conjugate_by(h)).copied().ok_or(GroupError::NotInvariant);
                Ok(d.node_of(img(node.rep.0)?, img(node.rep.1)?))
            })
            .collect::<Result<_, GroupError>>()?;
        perms.push(Permutation::from_images(images)?);
    }
    Ok(perms)
}

/// Every type assignment consistent with the inclusions along edges and
/// with equal-order links. With `up_to`, one representative (the least
/// under the induced node action) per orbit.
pub fn enumerate_shapes(d: &ShapeDiagram, up_to: Option<&PermGroup>) -> Result<Vec<Shape>, GroupError> {
    let mut shapes = Vec::new();
    let k = d.nodes.len();
    if d.nodes.iter().all(|n| !n.options.is_empty()) {
        let mut digits = alloc::vec![0usize; k];
        loop {
            let s: Shape = (0..k).map(|i| d.nodes[i].options[digits[i]]).collect();
            if consistent(d, &s) {
                shapes.push(s);
            }
            let mut i = 0;
            while i < k {
                digits[i] += 1;
                if digits[i] < d.nodes[i].options.len() {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
        }
    }
    let Some(outer) = up_to else {
        return Ok(shapes);
    };
    let gens = node_action(d, outer)?;
    let action = PermGroup::new(k, gens)?.elements();
    let mut reps = BTreeSet::new();
    for s in &shapes {
        let best = action
            .iter()
            .map(|p| {
                // node i carries the type of the node it comes from
                let inv = p.inverse();
                (0..k).map(|i| s[inv.apply(i)]).collect::<Shape>()
            })
            .min()
            .expect("identity is present");
        reps.insert(best);
    }
    Ok(reps.into_iter().collect())
}

/// Compact text: a bullet followed by the types of the nodes that vary
/// across `all` and are not determined by a varying container.
pub fn shape_label(d: &ShapeDiagram, shape: &[NsType], all: &[Shape]) -> String {
    let varies = |n: usize| all.iter().any(|s| s[n] != all[0][n]);
    let mut out = String::from("\u{2022}");
    let mut essential: Vec<usize> = (0..d.nodes.len())
        .filter(|&n| varies(n))
        .filter(|&n| !d.edges.iter().any(|e| e.contained == n && varies(e.container)))
        .collect();
    essential.sort_by_key(|&n| (d.nodes[n].order, n));
    let mut seen_links: BTreeSet<usize> = BTreeSet::new();
    for n in essential {
        if d.links.iter().any(|&(a, b)| b == n && seen_links.contains(&a)) {
            continue;
        }
        seen_links.insert(n);
        out.push_str(shape[n].name());
    }
    out
}
