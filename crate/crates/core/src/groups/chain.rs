//! Deterministic Schreier-Sims.

use alloc::vec::Vec;

use super::Permutation;

/// One level of a stabilizer chain: base point, strong generators that
/// fix all earlier base points, and a transversal of the basic orbit.
#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base: usize,
    pub gens: Vec<Permutation>,
    /// `transversal[p]` maps the base point to `p`.
    pub transversal: Vec<Option<Permutation>>,
    pub orbit: Vec<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct Chain {
    pub degree: usize,
    pub levels: Vec<Level>,
}

impl Chain {
    pub fn build(degree: usize, gens: &[Permutation]) -> Chain {
        let mut chain = Chain { degree, levels: Vec::new() };
        for g in gens {
            if !chain.sift(g, 0).0.is_identity() {
                chain.add_at(0, g.clone());
                chain.complete();
            }
        }
        chain
    }

    /// Generators of the stabilizer at `level`: everything stored at this
    /// level or below.
    fn gens_from(&self, level: usize) -> Vec<Permutation> {
        self.levels[level..].iter().flat_map(|l| l.gens.iter().cloned()).collect()
    }

    fn add_at(&mut self, level: usize, g: Permutation) {
        if level == self.levels.len() {
            let base = g.first_moved().expect("non-identity");
            self.levels.push(Level { base, gens: Vec::new(), transversal: Vec::new(), orbit: Vec::new() });
        }
        self.levels[level].gens.push(g);
        for l in (0..=level).rev() {
            self.rebuild_orbit(l);
        }
    }

    fn rebuild_orbit(&mut self, level: usize) {
        let gens = self.gens_from(level);
        let n = self.degree;
        let lv = &mut self.levels[level];
        let mut tr: Vec<Option<Permutation>> = alloc::vec![None; n];
        tr[lv.base] = Some(Permutation::identity(n));
        let mut orbit = alloc::vec![lv.base];
        let mut k = 0;
        while k < orbit.len() {
            let p = orbit[k];
            for s in &gens {
                let q = s.apply(p);
                if tr[q].is_none() {
                    tr[q] = Some(tr[p].as_ref().unwrap().then(s));
                    orbit.push(q);
                }
            }
            k += 1;
        }
        lv.transversal = tr;
        lv.orbit = orbit;
    }

    /// Strips `g` through the chain from `level`; returns the residue and
    /// the level where stripping stopped.
    pub fn sift(&self, g: &Permutation, level: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (l, lv) in self.levels.iter().enumerate().skip(level) {
            let p = h.apply(lv.base);
            match &lv.transversal[p] {
                Some(t) => h = h.then(&t.inverse()),
                None => return (h, l),
            }
        }
        (h, self.levels.len())
    }

    /// Adds sifted Schreier generators until every level is complete.
    fn complete(&mut self) {
        'outer: loop {
            for level in (0..self.levels.len()).rev() {
                let gens = self.gens_from(level);
                let orbit = self.levels[level].orbit.clone();
                for &p in &orbit {
                    let tp = self.levels[level].transversal[p].clone().unwrap();
                    for s in &gens {
                        let q = s.apply(p);
                        let tq = self.levels[level].transversal[q].as_ref().unwrap();
                        let schreier = tp.then(s).then(&tq.inverse());
                        let (res, at) = self.sift(&schreier, level + 1);
                        if !res.is_identity() {
                            self.add_at(at, res);
                            continue 'outer;
                        }
                    }
                }
            }
            break;
        }
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g, 0).0.is_identity()
    }
}
