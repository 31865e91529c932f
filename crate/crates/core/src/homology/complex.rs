use serde::{Deserialize, Serialize};

use super::linalg::{rank_mod_p, rank_rational, IntMatrix};
use crate::bits::VarSet;
use crate::error::{Error, Result};

/// Coefficient field for homology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    /// Characteristic zero, via integer Smith normal form.
    Rationals,
    /// `GF(p)`.
    Prime(u32),
}

impl Field {
    pub const DEFAULT_PRIME: Field = Field::Prime(32003);

    pub(crate) fn rank(self, m: &IntMatrix) -> Result<usize> {
        match self {
            Field::Rationals => rank_rational(m),
            Field::Prime(p) => Ok(rank_mod_p(m, p)),
        }
    }
}

/// A finite simplicial complex on vertices `0..ground`, stored as the full
/// list of faces (sorted by size, then by bit pattern).
///
/// The *void* complex has no faces at all; the *empty* complex `{∅}` has
/// only the empty face. They differ in reduced homology: `{∅}` has
/// `H̃_{-1}` of rank one, the void complex has nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    ground: usize,
    faces: Vec<VarSet>,
}

impl SimplicialComplex {
    pub fn void(ground: usize) -> Self {
        SimplicialComplex {
            ground,
            faces: Vec::new(),
        }
    }

    /// Checks subset-closure.
    pub fn from_faces(ground: usize, mut faces: Vec<VarSet>) -> Result<Self> {
        faces.sort_by_key(|f| (f.len(), f.bits()));
        faces.dedup();
        let all = VarSet::full(ground);
        for f in &faces {
            if !f.is_subset(all) {
                return Err(Error::input("face outside the ground set"));
            }
            for v in f.iter() {
                if faces.binary_search_by_key(&(f.len() - 1, f.without(v).bits()), |g| (g.len(), g.bits())).is_err() {
                    return Err(Error::input(format!("{f:?} present without {:?}", f.without(v))));
                }
            }
        }
        Ok(SimplicialComplex { ground, faces })
    }

    /// All subsets of `vertices` accepted by `is_face`. The predicate must be
    /// closed under taking subsets.
    pub fn from_predicate(
        ground: usize,
        vertices: VarSet,
        mut is_face: impl FnMut(VarSet) -> bool,
    ) -> Self {
        let mut faces: Vec<VarSet> = vertices.subsets().filter(|&s| is_face(s)).collect();
        faces.sort_by_key(|f| (f.len(), f.bits()));
        SimplicialComplex { ground, faces }
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn faces(&self) -> &[VarSet] {
        &self.faces
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, face: VarSet) -> bool {
        self.faces
            .binary_search_by_key(&(face.len(), face.bits()), |g| (g.len(), g.bits()))
            .is_ok()
    }

    /// Maximal faces.
    pub fn facets(&self) -> Vec<VarSet> {
        self.faces
            .iter()
            .copied()
            .filter(|f| !self.faces.iter().any(|g| g.len() > f.len() && f.is_subset(*g)))
            .collect()
    }

    /// `None` for the void complex, `Some(-1)` for `{∅}`.
    pub fn dimension(&self) -> Option<isize> {
        self.faces.last().map(|f| f.len() as isize - 1)
    }

    /// Ranks of reduced homology: entry `d + 1` is `dim H̃_d`, for
    /// `d = -1 ..= dim`. Empty for the void complex.
    pub fn reduced_homology(&self, field: Field) -> Result<Vec<usize>> {
        let Some(dim) = self.dimension() else {
            return Ok(Vec::new());
        };
        let top = (dim + 1) as usize;
        // faces grouped by size: by_size[s] = faces with s vertices (dimension s - 1)
        let mut by_size: Vec<Vec<VarSet>> = vec![Vec::new(); top + 1];
        for &f in &self.faces {
            by_size[f.len()].push(f);
        }
        // rank of ∂ from size s to size s - 1, for s = 1..=top
        let mut ranks = vec![0usize; top + 2];
        for s in 1..=top {
            let (hi, lo) = (&by_size[s], &by_size[s - 1]);
            if hi.is_empty() || lo.is_empty() {
                continue;
            }
            let mut m = IntMatrix::zeros(lo.len(), hi.len());
            for (c, &f) in hi.iter().enumerate() {
                for (pos, v) in f.iter().enumerate() {
                    let r = lo
                        .binary_search_by_key(&f.without(v).bits(), |g| g.bits())
                        .expect("complex is subset-closed");
                    m.set(r, c, if pos % 2 == 0 { 1 } else { -1 });
                }
            }
            ranks[s] = field.rank(&m)?;
        }
        Ok((0..=top)
            .map(|s| by_size[s].len() - ranks[s] - ranks[s + 1])
            .collect())
    }
}
