use std::collections::BTreeSet;

use super::network::ReactionNetwork;
use crate::error::{Error, Result};
use crate::exactalg::IntegerMatrix;
use crate::polyhedra::nonnegative_row_vector_in;
use crate::toricity::BoundaryCondition;

pub const SIPHON_STATE_LIMIT: usize = 1 << 20;

/// Minimal siphons: nonempty species sets `Z` such that every reaction with
/// a product in `Z` has a reactant in `Z`.
pub fn minimal_siphons(net: &ReactionNetwork, limit: usize) -> Result<Vec<BTreeSet<usize>>> {
    let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut states = 0;
    for start in 0..net.n() {
        let mut stack = vec![BTreeSet::from([start])];
        while let Some(z) = stack.pop() {
            states += 1;
            if states > limit {
                return Err(Error::SearchBudgetExceeded(limit));
            }
            if found.iter().any(|f| f.is_subset(&z)) {
                continue;
            }
            let violated = (0..net.m()).find(|&j| {
                let produces = net.target(j).iter().enumerate().any(|(i, &k)| k > 0 && z.contains(&i));
                let consumes = net.source(j).iter().enumerate().any(|(i, &k)| k > 0 && z.contains(&i));
                produces && !consumes
            });
            match violated {
                None => {
                    found.retain(|f| !z.is_subset(f));
                    found.insert(z);
                }
                Some(j) => {
                    for (i, &k) in net.source(j).iter().enumerate() {
                        if k > 0 {
                            let mut next = z.clone();
                            next.insert(i);
                            stack.push(next);
                        }
                    }
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// `Yes` when every minimal siphon contains the support of a nonzero
/// nonnegative vector in the row space of `a`. Such a vector pins a positive
/// value on the slice `Ax = b`, so no zero on the slice can vanish on the
/// siphon.
pub fn siphon_boundary_check(net: &ReactionNetwork, a: &IntegerMatrix) -> BoundaryCondition {
    let Ok(siphons) = minimal_siphons(net, SIPHON_STATE_LIMIT) else {
        return BoundaryCondition::Unknown;
    };
    if a.cols() != net.n() {
        return BoundaryCondition::Unknown;
    }
    let a = a.to_rational();
    let covered = siphons.iter().all(|z| {
        let allowed: Vec<bool> = (0..net.n()).map(|i| z.contains(&i)).collect();
        a.rows() > 0 && nonnegative_row_vector_in(&a, &allowed).is_some()
    });
    if covered {
        BoundaryCondition::Yes
    } else {
        BoundaryCondition::Unknown
    }
}
