use num::{One, Zero};
use serde::{Deserialize, Serialize};

use super::system::VerticalSystem;
use crate::error::{Error, Result};
use crate::exactalg::{
    hermite_normal_form, integer_kernel_basis, kernel_circuit_basis, same_row_lattice, Integer, IntegerMatrix,
    LatticeMode,
};
use crate::polyhedra::strictly_positive_kernel;

/// The group over which zeros are considered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupMode {
    Positive,
    RealStar,
    ComplexStar,
}

impl GroupMode {
    pub fn lattice_mode(self) -> LatticeMode {
        match self {
            GroupMode::RealStar => LatticeMode::IntegerLattice,
            GroupMode::Positive | GroupMode::ComplexStar => LatticeMode::RationalSaturated,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GroupMode::Positive => "positive",
            GroupMode::RealStar => "real-star",
            GroupMode::ComplexStar => "complex-star",
        }
    }
}

/// Partition of the column indices `0..m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl MatroidPartition {
    /// Blocks of the finest partition in which every given set lies in one block.
    pub fn from_sets(m: usize, sets: &[Vec<usize>]) -> Self {
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for set in sets {
            for w in set.windows(2) {
                let a = find(&mut parent, w[0]);
                let b = find(&mut parent, w[1]);
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut index_of_root = vec![usize::MAX; m];
        for j in 0..m {
            let r = find(&mut parent, j);
            if index_of_root[r] == usize::MAX {
                index_of_root[r] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[index_of_root[r]].push(j);
        }
        Self { blocks }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Whether every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &MatroidPartition) -> bool {
        self.blocks
            .iter()
            .all(|b| coarser.blocks.iter().any(|c| b.iter().all(|x| c.contains(x))))
    }
}

/// Partition of the columns of `C` by the supports of its kernel circuits.
pub fn matroid_partition(sys: &VerticalSystem) -> MatroidPartition {
    let basis = kernel_circuit_basis(sys.c());
    MatroidPartition::from_sets(sys.m(), &basis.supports)
}

/// Whether the zero set can be nonempty for some parameters.
pub fn positive_locus_nonempty(sys: &VerticalSystem, mode: GroupMode) -> bool {
    match mode {
        GroupMode::Positive => sys.m() > 0 && strictly_positive_kernel(sys.c()).is_witness(),
        GroupMode::RealStar | GroupMode::ComplexStar => {
            let basis = kernel_circuit_basis(sys.c());
            let mut covered = vec![false; sys.m()];
            for s in &basis.supports {
                for &j in s {
                    covered[j] = true;
                }
            }
            sys.m() > 0 && covered.iter().all(|&c| c)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceResult {
    /// Rows span the invariance lattice; Hermite normal form.
    pub a: IntegerMatrix,
    pub d: usize,
    pub mode: GroupMode,
    pub partition: MatroidPartition,
}

/// `M` with one indicator row appended per block.
pub fn cayley_matrix(m: &IntegerMatrix, partition: &MatroidPartition) -> IntegerMatrix {
    let n = m.rows();
    IntegerMatrix::from_fn(n + partition.len(), m.cols(), |i, j| {
        if i < n {
            m.get(i, j).clone()
        } else if partition.blocks[i - n].contains(&j) {
            Integer::one()
        } else {
            Integer::zero()
        }
    })
}

fn lattice_from_partition(m: &IntegerMatrix, partition: &MatroidPartition, mode: LatticeMode) -> IntegerMatrix {
    let n = m.rows();
    let k = integer_kernel_basis(&cayley_matrix(m, partition), mode);
    let a = k.select_columns(&(0..n).collect::<Vec<_>>());
    hermite_normal_form(&a)
}

/// The lattice `A` with `a·(M_i − M_j) = 0` for all `i, j` in one block.
pub fn invariance_group(sys: &VerticalSystem, mode: GroupMode) -> Result<InvarianceResult> {
    if !positive_locus_nonempty(sys, mode) {
        return Err(Error::EmptyLocus);
    }
    let partition = matroid_partition(sys);
    let a = lattice_from_partition(sys.exponents(), &partition, mode.lattice_mode());
    Ok(InvarianceResult {
        d: a.rows(),
        a,
        mode,
        partition,
    })
}

/// Weights for which every polynomial of `F` is quasihomogeneous, i.e. the
/// same construction with blocks given by overlapping row supports of `C`.
pub fn quasihomogeneity_weights(sys: &VerticalSystem) -> IntegerMatrix {
    let supports: Vec<Vec<usize>> = (0..sys.s()).map(|i| sys.c().row_support(i)).collect();
    let partition = MatroidPartition::from_sets(sys.m(), &supports);
    lattice_from_partition(sys.exponents(), &partition, LatticeMode::RationalSaturated)
}

/// Whether the quasihomogeneity lattice equals the invariance lattice.
pub fn invariance_agrees_with_quasihomogeneity(sys: &VerticalSystem, inv: &InvarianceResult) -> bool {
    same_row_lattice(&quasihomogeneity_weights(sys), &inv.a)
}
