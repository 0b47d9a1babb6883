use std::collections::HashMap;

use serde::Serialize;

use super::{Permutation, PermutationGroup};
use crate::error::Result;

/// Explicitly enumerated group elements with a reverse index.
#[derive(Debug, Clone)]
pub struct ElementList {
    pub elements: Vec<Permutation>,
    pub index: HashMap<Permutation, usize>,
}

impl ElementList {
    pub fn new(elements: Vec<Permutation>) -> Self {
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        ElementList { elements, index }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }
}

/// A conjugacy class; `members` are sorted element indices and
/// `representative` is the member of smallest index.
#[derive(Debug, Clone, Serialize)]
pub struct ConjClass {
    pub representative: usize,
    pub members: Vec<usize>,
    pub size: usize,
}

/// Partitions the elements into conjugation orbits under `gens`.
///
/// `gens` are given as element indices; classes come back sorted by size,
/// then by smallest member index.
pub fn conjugacy_classes(list: &ElementList, gens: &[usize]) -> Vec<ConjClass> {
    let n = list.len();
    // conj[g][x] = index of g^-1 x g
    let conj: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let gp = &list.elements[g];
            let gi = gp.inverse();
            list.elements
                .iter()
                .map(|x| list.index[&gi.then(x).then(gp)])
                .collect()
        })
        .collect();
    let mut visited = vec![false; n];
    let mut classes = Vec::new();
    for start in 0..n {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        let mut members = vec![start];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for table in &conj {
                let y = table[x];
                if !visited[y] {
                    visited[y] = true;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        classes.push(ConjClass {
            representative: members[0],
            size: members.len(),
            members,
        });
    }
    classes.sort_by_key(|c| (c.size, c.representative));
    classes
}

impl PermutationGroup {
    /// Conjugacy classes over an explicit enumeration capped at `cap` elements.
    pub fn conjugacy_classes(&self, cap: usize) -> Result<(ElementList, Vec<ConjClass>)> {
        let list = ElementList::new(self.elements(cap)?);
        let gens: Vec<usize> = self.generators().iter().map(|g| list.index[g]).collect();
        let classes = conjugacy_classes(&list, &gens);
        Ok((list, classes))
    }
}
