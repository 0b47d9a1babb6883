use super::Permutation;

const NOT_IN_ORBIT: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

/// One level of a stabilizer chain: the basic orbit of `base_point` under the
/// strong generators fixing all earlier base points, stored as a Schreier vector.
#[derive(Debug, Clone)]
struct Level {
    base_point: usize,
    gens: Vec<usize>,
    orbit: Vec<u32>,
    // edge label per point: strong generator index that reached it, ROOT, or NOT_IN_ORBIT
    schreier: Vec<u32>,
}

/// Base and strong generating set, built with deterministic Schreier–Sims.
///
/// Base points are the smallest moved point of whichever generator first
/// needs a new level; transversals are BFS trees in generator order.
#[derive(Debug, Clone)]
pub struct Bsgs {
    degree: usize,
    strong: Vec<Permutation>,
    strong_inv: Vec<Permutation>,
    levels: Vec<Level>,
}

impl Bsgs {
    /// Runs Schreier–Sims on `gens`, starting the base with `prefix`.
    pub fn build(degree: usize, gens: &[Permutation], prefix: &[usize]) -> Bsgs {
        let mut strong: Vec<Permutation> = Vec::new();
        for g in gens {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        let strong_inv = strong.iter().map(Permutation::inverse).collect();
        let mut bsgs = Bsgs {
            degree,
            strong,
            strong_inv,
            levels: Vec::new(),
        };
        let mut base: Vec<usize> = prefix.to_vec();
        for s in &bsgs.strong {
            if base.iter().all(|&b| s.apply(b) == b) {
                base.push(s.smallest_moved_point().expect("non-identity"));
            }
        }
        for b in base {
            bsgs.push_level(b);
        }
        bsgs.schreier_sims();
        bsgs
    }

    fn push_level(&mut self, base_point: usize) {
        self.levels.push(Level {
            base_point,
            gens: Vec::new(),
            orbit: Vec::new(),
            schreier: Vec::new(),
        });
        let l = self.levels.len() - 1;
        self.refresh_level(l);
    }

    fn refresh_level(&mut self, l: usize) {
        let fixed: Vec<usize> = self.levels[..l].iter().map(|lv| lv.base_point).collect();
        let gens: Vec<usize> = (0..self.strong.len())
            .filter(|&k| fixed.iter().all(|&b| self.strong[k].apply(b) == b))
            .collect();
        let root = self.levels[l].base_point;
        let mut schreier = vec![NOT_IN_ORBIT; self.degree];
        schreier[root] = ROOT;
        let mut orbit = vec![root as u32];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head] as usize;
            head += 1;
            for &k in &gens {
                let y = self.strong[k].apply(x);
                if schreier[y] == NOT_IN_ORBIT {
                    schreier[y] = k as u32;
                    orbit.push(y as u32);
                }
            }
        }
        let level = &mut self.levels[l];
        level.gens = gens;
        level.orbit = orbit;
        level.schreier = schreier;
    }

    fn schreier_sims(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let l = i as usize;
            let orbit = self.levels[l].orbit.clone();
            let gens = self.levels[l].gens.clone();
            for &beta in &orbit {
                let u = self.transversal(l, beta as usize);
                for &k in &gens {
                    let g = u.then(&self.strong[k]);
                    let (h, j) = self.strip(g, l);
                    if j < self.levels.len() || !h.is_identity() {
                        let new_base = if j == self.levels.len() {
                            Some(h.smallest_moved_point().expect("non-identity residue"))
                        } else {
                            None
                        };
                        self.strong_inv.push(h.inverse());
                        self.strong.push(h);
                        if let Some(b) = new_base {
                            self.levels.push(Level {
                                base_point: b,
                                gens: Vec::new(),
                                orbit: Vec::new(),
                                schreier: Vec::new(),
                            });
                        }
                        for m in (l + 1)..=j.min(self.levels.len() - 1) {
                            self.refresh_level(m);
                        }
                        i = j.min(self.levels.len() - 1) as isize;
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }
    }

    /// Inverse of the transversal element carrying the level's base point to `beta`.
    fn transversal_inverse(&self, l: usize, beta: usize) -> Permutation {
        let level = &self.levels[l];
        let mut acc = Permutation::identity(self.degree);
        let mut x = beta;
        while x != level.base_point {
            let k = level.schreier[x] as usize;
            acc = acc.then(&self.strong_inv[k]);
            x = self.strong_inv[k].apply(x);
        }
        acc
    }

    /// Coset representative mapping the base point of level `l` to `beta`.
    pub fn transversal(&self, l: usize, beta: usize) -> Permutation {
        self.transversal_inverse(l, beta).inverse()
    }

    /// Sifts `g` starting at level `from`. Returns the residue and the level
    /// where sifting stopped (`levels()` when it went all the way through).
    pub fn strip(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for l in from..self.levels.len() {
            let level = &self.levels[l];
            let mut x = g.apply(level.base_point);
            if level.schreier[x] == NOT_IN_ORBIT {
                return (g, l);
            }
            while x != level.base_point {
                let k = level.schreier[x] as usize;
                g = g.then(&self.strong_inv[k]);
                x = self.strong_inv[k].apply(x);
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        let (h, j) = self.strip(p.clone(), 0);
        j == self.levels.len() && h.is_identity()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().fold(1u128, |acc, lv| {
            acc.checked_mul(lv.orbit.len() as u128)
                .expect("group order overflows u128")
        })
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn levels(&self) -> usize {
        self.levels.len()
    }

    pub fn basic_orbit(&self, l: usize) -> &[u32] {
        &self.levels[l].orbit
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    /// Strong generators fixing the first `l` base points.
    pub fn level_generators(&self, l: usize) -> Vec<Permutation> {
        if l < self.levels.len() {
            self.levels[l]
                .gens
                .iter()
                .map(|&k| self.strong[k].clone())
                .collect()
        } else {
            let fixed = self.base();
            self.strong
                .iter()
                .filter(|s| fixed.iter().all(|&b| s.apply(b) == b))
                .cloned()
                .collect()
        }
    }
}
