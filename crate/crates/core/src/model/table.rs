use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::perm::{conjugacy_classes, ConjClass, ElementList, Permutation, PermutationGroup};

/// A finite group with canonical element indices `0..|T|`.
///
/// Elements are enumerated by BFS from the identity over the defining
/// generators, so index 0 is the identity and every other element's BFS
/// parent has a smaller index. Products are computed on the underlying
/// permutations and re-indexed.
#[derive(Debug, Clone)]
pub struct GroupTable {
    name: String,
    rep: PermutationGroup,
    list: ElementList,
    gens: Vec<usize>,
    // (parent index, generator position) for every non-identity element
    parent: Vec<(u32, u32)>,
    right_gen: Vec<Vec<u32>>,
    inverses: Vec<u32>,
    classes: Vec<ConjClass>,
    class_of: Vec<u32>,
    class_orders: Vec<u64>,
    class_labels: Vec<String>,
}

impl GroupTable {
    /// Enumerates `rep` (at most `cap` elements) and builds the indexed table.
    pub fn build(name: &str, rep: &PermutationGroup, cap: usize) -> Result<GroupTable> {
        if rep.order() > cap as u128 {
            return Err(Error::CapExceeded {
                what: "group order",
                cap,
            });
        }
        let degree = rep.degree();
        let gen_perms: Vec<Permutation> = rep.generators().to_vec();
        let id = Permutation::identity(degree);
        let mut index: HashMap<Permutation, usize> = HashMap::new();
        index.insert(id.clone(), 0);
        let mut elements = vec![id];
        let mut parent = vec![(0u32, 0u32)];
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            for (k, g) in gen_perms.iter().enumerate() {
                let y = x.then(g);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                    parent.push((head as u32, k as u32));
                }
            }
            head += 1;
        }
        let list = ElementList { elements, index };
        let n = list.len();
        let gens: Vec<usize> = gen_perms.iter().map(|g| list.index[g]).collect();
        let right_gen: Vec<Vec<u32>> = gen_perms
            .iter()
            .map(|g| {
                list.elements
                    .iter()
                    .map(|x| list.index[&x.then(g)] as u32)
                    .collect()
            })
            .collect();
        let inverses: Vec<u32> = list
            .elements
            .iter()
            .map(|x| list.index[&x.inverse()] as u32)
            .collect();
        let classes = conjugacy_classes(&list, &gens);
        let mut class_of = vec![0u32; n];
        for (c, cls) in classes.iter().enumerate() {
            for &m in &cls.members {
                class_of[m] = c as u32;
            }
        }
        let class_orders: Vec<u64> = classes
            .iter()
            .map(|c| list.elements[c.representative].order())
            .collect();
        let class_labels = label_classes(&class_orders);
        Ok(GroupTable {
            name: name.to_string(),
            rep: rep.clone(),
            list,
            gens,
            parent,
            right_gen,
            inverses,
            classes,
            class_of,
            class_orders,
            class_labels,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.list.len()
    }

    /// The defining permutation representation.
    pub fn representation(&self) -> &PermutationGroup {
        &self.rep
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.list.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.list.index_of(p)
    }

    /// Indices of the defining generators.
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    #[inline]
    pub fn multiply(&self, i: usize, j: usize) -> usize {
        if i == 0 {
            return j;
        }
        if j == 0 {
            return i;
        }
        self.list.index[&self.list.elements[i].then(&self.list.elements[j])]
    }

    /// `x * g_k` for the `k`-th defining generator.
    #[inline]
    pub fn multiply_by_generator(&self, x: usize, k: usize) -> usize {
        self.right_gen[k][x] as usize
    }

    #[inline]
    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i] as usize
    }

    pub fn inverses(&self) -> &[u32] {
        &self.inverses
    }

    /// `t^-1 x t`.
    pub fn conjugate(&self, x: usize, t: usize) -> usize {
        if t == 0 {
            return x;
        }
        let p = self
            .element(self.inverse(t))
            .then(self.element(x))
            .then(self.element(t));
        self.list.index[&p]
    }

    pub fn pow(&self, x: usize, e: u64) -> usize {
        self.list.index[&self.element(x).pow(e)]
    }

    /// `(parent, generator position)` of `x` in the BFS tree; `None` for the identity.
    pub fn bfs_parent(&self, x: usize) -> Option<(usize, usize)> {
        if x == 0 {
            None
        } else {
            let (p, k) = self.parent[x];
            Some((p as usize, k as usize))
        }
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x] as usize
    }

    pub fn class_order(&self, c: usize) -> u64 {
        self.class_orders[c]
    }

    pub fn class_label(&self, c: usize) -> &str {
        &self.class_labels[c]
    }

    pub fn class_by_label(&self, label: &str) -> Option<usize> {
        self.class_labels.iter().position(|l| l == label)
    }

    pub fn element_order(&self, x: usize) -> u64 {
        self.class_orders[self.class_of(x)]
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.class_orders
            .iter()
            .fold(1, |acc, &o| crate::perm::lcm(acc, o))
    }

    /// Class of `g^k` for `g` in class `c`.
    pub fn power_class(&self, c: usize, k: u64) -> usize {
        self.class_of(self.pow(self.classes[c].representative, k))
    }

    /// Size of the center, read off the singleton classes.
    pub fn center_size(&self) -> usize {
        self.classes.iter().filter(|c| c.size == 1).count()
    }
}

/// Labels classes as element order plus a letter, letters assigned in class
/// order among classes of equal element order.
fn label_classes(orders: &[u64]) -> Vec<String> {
    let mut seen: HashMap<u64, usize> = HashMap::new();
    orders
        .iter()
        .map(|&o| {
            let k = seen.entry(o).or_insert(0);
            let label = format!("{o}{}", letter_suffix(*k));
            *k += 1;
            label
        })
        .collect()
}

fn letter_suffix(mut k: usize) -> String {
    let mut s = Vec::new();
    loop {
        s.push(b'A' + (k % 26) as u8);
        if k < 26 {
            break;
        }
        k = k / 26 - 1;
    }
    s.reverse();
    String::from_utf8(s).expect("ascii")
}
