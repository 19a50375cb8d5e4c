use std::collections::{BTreeSet, VecDeque};

use super::network::ReactionNetwork;
use crate::error::{Error, Result};
use crate::exactalg::IntegerMatrix;

/// Whether the map from original to reduced rate constants is known to be
/// onto.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Surjectivity {
    Yes,
    Conjectural,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntermediateChoice {
    /// Species indices of the intermediates, increasing.
    pub intermediates: Vec<usize>,
    /// Species indices of the remaining species, increasing.
    pub non_intermediates: Vec<usize>,
    /// Input complex of each intermediate, over the non-intermediates.
    pub inputs: Vec<Vec<u32>>,
}

impl IntermediateChoice {
    pub fn is_empty(&self) -> bool {
        self.intermediates.is_empty()
    }

    /// `B`: column `i` is the input complex of the `i`-th intermediate.
    pub fn input_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::from_fn(self.non_intermediates.len(), self.intermediates.len(), |r, c| {
            self.inputs[c][r].into()
        })
    }

    /// Reorders columns given in the order (non-intermediates, intermediates)
    /// back to the original species order.
    pub fn to_species_order(&self, a: &IntegerMatrix) -> IntegerMatrix {
        let order: Vec<usize> = self.non_intermediates.iter().chain(&self.intermediates).copied().collect();
        let mut position = vec![0; order.len()];
        for (col, &species) in order.iter().enumerate() {
            position[species] = col;
        }
        a.select_columns(&position)
    }
}

/// Species whose only complex is the species itself with coefficient one.
fn candidates(net: &ReactionNetwork) -> Vec<usize> {
    (0..net.n())
        .filter(|&i| {
            let mut appears = false;
            for c in net.complexes() {
                if c[i] > 0 {
                    appears = true;
                    if c.iter().sum::<u32>() != 1 {
                        return false;
                    }
                }
            }
            appears
        })
        .collect()
}

/// The complex that consists of a single intermediate, if any.
fn intermediate_of(c: &[u32], set: &BTreeSet<usize>) -> Option<usize> {
    let i = c.iter().position(|&k| k > 0)?;
    (set.contains(&i) && c.iter().sum::<u32>() == 1).then_some(i)
}

struct Motif {
    /// `inputs[y]`: non-intermediate complexes reaching `y` through intermediates.
    inputs: Vec<BTreeSet<usize>>,
    /// `outputs[y]`: non-intermediate complexes reached from `y` through intermediates.
    outputs: Vec<BTreeSet<usize>>,
}

fn motif(net: &ReactionNetwork, set: &BTreeSet<usize>) -> Motif {
    let n = net.n();
    let mut succ = vec![Vec::new(); n];
    let mut pred = vec![Vec::new(); n];
    let mut entry: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut exit: Vec<Vec<usize>> = vec![Vec::new(); n];
    for r in net.reactions() {
        let s = intermediate_of(&net.complexes()[r.source], set);
        let t = intermediate_of(&net.complexes()[r.target], set);
        match (s, t) {
            (Some(a), Some(b)) => {
                succ[a].push(b);
                pred[b].push(a);
            }
            (None, Some(b)) => entry[b].push(r.source),
            (Some(a), None) => exit[a].push(r.target),
            (None, None) => {}
        }
    }
    let reach = |start: usize, edges: &Vec<Vec<usize>>| {
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &edges[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    };
    let mut inputs = vec![BTreeSet::new(); n];
    let mut outputs = vec![BTreeSet::new(); n];
    for &y in set {
        let back = reach(y, &pred);
        let fwd = reach(y, &succ);
        for v in 0..n {
            if back[v] {
                inputs[y].extend(&entry[v]);
            }
            if fwd[v] {
                outputs[y].extend(&exit[v]);
            }
        }
    }
    Motif { inputs, outputs }
}

fn is_valid(net: &ReactionNetwork, set: &BTreeSet<usize>, cands: &[usize]) -> bool {
    if !set.iter().all(|y| cands.contains(y)) {
        return false;
    }
    let mo = motif(net, set);
    set.iter().all(|&y| mo.inputs[y].len() == 1 && !mo.outputs[y].is_empty())
}

fn choice_from(net: &ReactionNetwork, set: &BTreeSet<usize>) -> IntermediateChoice {
    let mo = motif(net, set);
    let non_intermediates: Vec<usize> = (0..net.n()).filter(|i| !set.contains(i)).collect();
    let inputs = set
        .iter()
        .map(|&y| {
            let c = &net.complexes()[*mo.inputs[y].iter().next().expect("validated")];
            non_intermediates.iter().map(|&i| c[i]).collect()
        })
        .collect();
    IntermediateChoice {
        intermediates: set.iter().copied().collect(),
        non_intermediates,
        inputs,
    }
}

/// A maximal choice of single-input intermediates, grown greedily by species
/// index and repeated until no candidate can be added.
pub fn find_intermediates(net: &ReactionNetwork) -> IntermediateChoice {
    let cands = candidates(net);
    let mut set = BTreeSet::new();
    loop {
        let before = set.len();
        for &y in &cands {
            if set.insert(y) && !is_valid(net, &set, &cands) {
                set.remove(&y);
            }
        }
        if set.len() == before {
            return choice_from(net, &set);
        }
    }
}

/// Checks a user-supplied set of intermediates and completes its metadata.
pub fn intermediate_choice(net: &ReactionNetwork, intermediates: &[usize]) -> Result<IntermediateChoice> {
    let set: BTreeSet<usize> = intermediates.iter().copied().collect();
    if set.iter().any(|&i| i >= net.n()) {
        return Err(Error::InvalidChoice("species index out of range".into()));
    }
    if !is_valid(net, &set, &candidates(net)) {
        return Err(Error::InvalidChoice(
            "every intermediate must occur only as a lone species, lie on an input-to-output path, and have a unique input".into(),
        ));
    }
    Ok(choice_from(net, &set))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub network: ReactionNetwork,
    pub b: IntegerMatrix,
    pub surjectivity: Surjectivity,
}

/// Removes the intermediates and adds `c -> c'` for every input `c` and
/// output `c'` joined through intermediates. Reactions keep their original
/// order; new reactions appear where their input first enters the motif.
pub fn reduce_network(net: &ReactionNetwork, choice: &IntermediateChoice) -> Result<Reduction> {
    let set: BTreeSet<usize> = choice.intermediates.iter().copied().collect();
    if choice.non_intermediates.len() + set.len() != net.n() || !is_valid(net, &set, &candidates(net)) {
        return Err(Error::InvalidChoice("not a valid choice of single-input intermediates".into()));
    }
    let mo = motif(net, &set);
    let project = |c: &[u32]| -> Vec<u32> { choice.non_intermediates.iter().map(|&i| c[i]).collect() };
    let mut reactions: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    let mut added: BTreeSet<(usize, usize)> = BTreeSet::new();
    for r in net.reactions() {
        let s = intermediate_of(&net.complexes()[r.source], &set);
        let t = intermediate_of(&net.complexes()[r.target], &set);
        match (s, t) {
            (None, None) => reactions.push((project(&net.complexes()[r.source]), project(&net.complexes()[r.target]))),
            (None, Some(y)) => {
                for &out in &mo.outputs[y] {
                    if out != r.source && added.insert((r.source, out)) {
                        reactions.push((project(&net.complexes()[r.source]), project(&net.complexes()[out])));
                    }
                }
            }
            _ => {}
        }
    }
    let species = choice.non_intermediates.iter().map(|&i| net.species()[i].clone()).collect();
    let network = ReactionNetwork::from_reactions(species, &reactions)?;
    Ok(Reduction {
        network,
        b: choice.input_matrix(),
        surjectivity: surjectivity(net, &set),
    })
}

/// `Yes` when every connected group of intermediates is a chain
/// `c <-> Y1 <-> ... <-> Yk -> c'` whose only outside contacts are `c`
/// (into and optionally out of `Y1`) and `c'` (out of `Yk`).
fn surjectivity(net: &ReactionNetwork, set: &BTreeSet<usize>) -> Surjectivity {
    let n = net.n();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let mut arcs: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut entries: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for r in net.reactions() {
        let s = intermediate_of(&net.complexes()[r.source], set);
        let t = intermediate_of(&net.complexes()[r.target], set);
        match (s, t) {
            (Some(a), Some(b)) => {
                adj[a].insert(b);
                adj[b].insert(a);
                arcs.insert((a, b));
            }
            (None, Some(b)) => entries[b].push((r.source, true)),
            (Some(a), None) => entries[a].push((r.target, false)),
            (None, None) => {}
        }
    }
    let mut seen = BTreeSet::new();
    for &start in set {
        if seen.contains(&start) {
            continue;
        }
        let mut comp = Vec::new();
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &w in &adj[v] {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        if !is_chain_motif(&comp, &adj, &arcs, &entries) {
            return Surjectivity::Conjectural;
        }
    }
    Surjectivity::Yes
}

fn is_chain_motif(
    comp: &[usize],
    adj: &[BTreeSet<usize>],
    arcs: &BTreeSet<(usize, usize)>,
    entries: &[Vec<(usize, bool)>],
) -> bool {
    if comp.iter().any(|&v| adj[v].len() > 2) {
        return false;
    }
    let ends: Vec<usize> = comp.iter().copied().filter(|&v| adj[v].len() < 2).collect();
    ends.iter().any(|&first| {
        let mut order = vec![first];
        let mut prev = usize::MAX;
        let mut cur = first;
        while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
            order.push(next);
            prev = cur;
            cur = next;
        }
        if order.len() != comp.len() || !order.windows(2).all(|w| arcs.contains(&(w[0], w[1]))) {
            return false;
        }
        let last = order[order.len() - 1];
        if order.len() > 2 && order[1..order.len() - 1].iter().any(|&v| !entries[v].is_empty()) {
            return false;
        }
        let inputs: BTreeSet<usize> = entries[first].iter().filter(|e| e.1).map(|e| e.0).collect();
        let [c] = inputs.iter().copied().collect::<Vec<_>>()[..] else { return false };
        let back_to_c = |v: usize| entries[v].iter().filter(|e| !e.1).all(|e| e.0 == c);
        let exits: BTreeSet<usize> = entries[last]
            .iter()
            .filter(|e| !e.1 && e.0 != c)
            .map(|e| e.0)
            .collect();
        let clean_first = order.len() == 1 || back_to_c(first);
        let clean_last = order.len() == 1 || entries[last].iter().all(|e| !e.1 && e.0 != c);
        clean_first && clean_last && exits.len() == 1
    })
}

/// `[Ã | Ã B]`.
pub fn lift_invariance(a_reduced: &IntegerMatrix, b: &IntegerMatrix) -> Result<IntegerMatrix> {
    if a_reduced.cols() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "Ã has {} columns but B has {} rows",
            a_reduced.cols(),
            b.rows()
        )));
    }
    let ab = a_reduced.mul(b)?;
    a_reduced.hstack(&ab)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::crn::parse_network;

    #[test]
    fn idh_intermediate() {
        let net = parse_network("X1 + X2 <=> X3 -> X1 + X4 ; X3 + X4 <=> X5 -> X2 + X3").unwrap();
        let choice = find_intermediates(&net);
        assert_eq!(choice.intermediates, vec![4]);
        assert_eq!(choice.input_matrix(), IntegerMatrix::from_i64(&[&[0], &[0], &[1], &[1]]));
        let red = reduce_network(&net, &choice).unwrap();
        assert_eq!(red.surjectivity, Surjectivity::Yes);
        assert_eq!(red.network.to_string(), "X1 + X2 -> X3\nX3 -> X1 + X2\nX3 -> X1 + X4\nX3 + X4 -> X2 + X3");
        let lifted = lift_invariance(&IntegerMatrix::from_i64(&[&[1, 0, 1, 0], &[0, 1, 1, 0]]), &red.b).unwrap();
        assert_eq!(lifted, IntegerMatrix::from_i64(&[&[1, 0, 1, 0, 1], &[0, 1, 1, 0, 1]]));
    }

    #[test]
    fn no_candidates() {
        let net = parse_network("A + B -> 2C ; 2C -> A + B").unwrap();
        assert!(find_intermediates(&net).is_empty());
        let red = reduce_network(&net, &find_intermediates(&net)).unwrap();
        assert_eq!(red.network, net);
    }

    #[test]
    fn two_inputs_rejected() {
        let net = parse_network("A + B -> Y -> C ; D -> Y").unwrap();
        assert!(find_intermediates(&net).is_empty());
        let y = net.species_index("Y").unwrap();
        assert!(matches!(intermediate_choice(&net, &[y]), Err(Error::InvalidChoice(_))));
    }

    #[test]
    fn branching_motif_is_conjectural() {
        let net = parse_network("A + B <=> Y -> C ; Y -> D").unwrap();
        let choice = find_intermediates(&net);
        assert_eq!(choice.intermediates, vec![net.species_index("Y").unwrap()]);
        let red = reduce_network(&net, &choice).unwrap();
        assert_eq!(red.surjectivity, Surjectivity::Conjectural);
        assert_eq!(red.network.m(), 2);
    }

    #[test]
    fn chain_of_two() {
        let net = parse_network("A + B <=> Y1 <=> Y2 -> C").unwrap();
        let choice = find_intermediates(&net);
        assert_eq!(choice.intermediates.len(), 2);
        let red = reduce_network(&net, &choice).unwrap();
        assert_eq!(red.surjectivity, Surjectivity::Yes);
        assert_eq!(red.network.to_string(), "A + B -> C");
        assert_eq!(choice.inputs, vec![vec![1, 1, 0], vec![1, 1, 0]]);
    }
}
