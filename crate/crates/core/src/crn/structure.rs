use std::collections::VecDeque;

use super::network::{stoichiometric_rank, ReactionNetwork};
use crate::toricity::MatroidPartition;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkStructure {
    /// Complex indices of each linkage class, in order of first complex.
    pub linkage_classes: Vec<Vec<usize>>,
    /// Reaction indices of each linkage class.
    pub reaction_classes: Vec<Vec<usize>>,
    pub complexes: usize,
    pub rank: usize,
    pub deficiency: i64,
    pub weakly_reversible: bool,
}

impl NetworkStructure {
    pub fn linkage_count(&self) -> usize {
        self.linkage_classes.len()
    }

    /// Every block of `partition` lies inside one linkage class.
    pub fn refined_by(&self, partition: &MatroidPartition) -> bool {
        let coarse = MatroidPartition {
            blocks: self.reaction_classes.clone(),
        };
        partition.refines(&coarse)
    }

    /// Weakly reversible with deficiency zero.
    pub fn deficiency_zero_certificate(&self) -> bool {
        self.deficiency == 0 && self.weakly_reversible
    }
}

pub fn network_structure(net: &ReactionNetwork) -> NetworkStructure {
    let r = net.complexes().len();
    let mut parent: Vec<usize> = (0..r).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut out = vec![Vec::new(); r];
    for rx in net.reactions() {
        let (a, b) = (find(&mut parent, rx.source), find(&mut parent, rx.target));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
        out[rx.source].push(rx.target);
    }
    let mut class_of = vec![usize::MAX; r];
    let mut linkage_classes: Vec<Vec<usize>> = Vec::new();
    for c in 0..r {
        let root = find(&mut parent, c);
        if class_of[root] == usize::MAX {
            class_of[root] = linkage_classes.len();
            linkage_classes.push(Vec::new());
        }
        class_of[c] = class_of[root];
        linkage_classes[class_of[c]].push(c);
    }
    let mut reaction_classes = vec![Vec::new(); linkage_classes.len()];
    for (j, rx) in net.reactions().iter().enumerate() {
        reaction_classes[class_of[rx.source]].push(j);
    }
    let reaches = |from: usize, to: usize| {
        let mut seen = vec![false; r];
        seen[from] = true;
        let mut q = VecDeque::from([from]);
        while let Some(v) = q.pop_front() {
            if v == to {
                return true;
            }
            for &w in &out[v] {
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
        false
    };
    let weakly_reversible = net.reactions().iter().all(|rx| reaches(rx.target, rx.source));
    let rank = stoichiometric_rank(&net.stoichiometric_matrix());
    let deficiency = r as i64 - rank as i64 - linkage_classes.len() as i64;
    NetworkStructure {
        linkage_classes,
        reaction_classes,
        complexes: r,
        rank,
        deficiency,
        weakly_reversible,
    }
}
