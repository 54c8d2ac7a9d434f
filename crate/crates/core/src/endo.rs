//! Endomorphisms with image inside the distinguished range subalgebra,
//! plus the per-map invariants the characterisations consume: image,
//! kernel, rank, their restrictions to the range, and membership in the
//! regular part Q.
//!
//! Maps act on the right throughout: `x.apply(alpha)` then `beta` equals
//! applying `alpha.compose(beta)?`, and in the vector model composition
//! is the matrix product `M_alpha * M_beta` in row-vector convention.

use crate::algebra::{gf, AlgebraInstance, ElemId, Model, Subalgebra};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// Concrete representation of an endomorphism.
///
/// Set model: the image list indexed by element; every entry must lie in
/// the range. Vector model: a dim x dim matrix whose row `i` is the image
/// of the standard basis vector `e_i`, each row lying in the range.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EndoRepr {
    Map(Vec<ElemId>),
    Matrix(Vec<Vec<u8>>),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum EndoJson {
    Map { img: Vec<ElemId> },
    Matrix { rows: Vec<Vec<u8>> },
}

#[derive(Clone)]
pub struct Endo {
    instance: Arc<AlgebraInstance>,
    repr: EndoRepr,
    /// Evaluation table over the whole universe: `eval[x]` is the image of x.
    eval: Vec<ElemId>,
}

impl PartialEq for Endo {
    fn eq(&self, other: &Self) -> bool {
        self.same_instance(other) && self.repr == other.repr
    }
}

impl Eq for Endo {}

impl fmt::Debug for Endo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Endo({})", self.label())
    }
}

/// Canonical form of a kernel congruence.
///
/// Set model: the partition of the universe into fibers, blocks sorted by
/// least element. Vector model: the RREF basis of the null space, where
/// `(a, b)` is in the kernel iff `a - b` lies in the null space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum KernelRepr {
    Partition(Vec<Vec<ElemId>>),
    Nullspace(Vec<Vec<u8>>),
}

impl Endo {
    /// Set-model constructor from the full image list.
    pub fn from_map(instance: &Arc<AlgebraInstance>, img: Vec<ElemId>) -> Result<Endo> {
        if !instance.is_set_model() {
            return Err(Error::Malformed(
                "map representation on a vector-space model".into(),
            ));
        }
        if img.len() != instance.universe_size() {
            return Err(Error::Malformed(format!(
                "image list has length {}, expected {}",
                img.len(),
                instance.universe_size()
            )));
        }
        for &v in &img {
            if v as usize >= instance.universe_size() || !instance.in_range(v) {
                return Err(Error::Malformed(format!(
                    "image value {v} is not in the range"
                )));
            }
        }
        Ok(Endo {
            instance: Arc::clone(instance),
            eval: img.clone(),
            repr: EndoRepr::Map(img),
        })
    }

    /// Vector-model constructor from the matrix rows.
    pub fn from_matrix(instance: &Arc<AlgebraInstance>, rows: Vec<Vec<u8>>) -> Result<Endo> {
        let Model::VectorSpace { prime, dim } = *instance.model() else {
            return Err(Error::Malformed(
                "matrix representation on a set model".into(),
            ));
        };
        if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Malformed(format!("matrix must be {dim}x{dim}")));
        }
        if rows.iter().any(|r| r.iter().any(|&x| x >= prime)) {
            return Err(Error::Malformed("matrix entry not reduced mod p".into()));
        }
        for r in &rows {
            if !instance.in_range(instance.vector_id(r)) {
                return Err(Error::Malformed(format!(
                    "matrix row {r:?} is not in the range"
                )));
            }
        }
        let eval = (0..instance.universe_size() as ElemId)
            .map(|id| instance.vector_id(&gf::row_times_matrix(prime, instance.vector(id), &rows)))
            .collect();
        Ok(Endo {
            instance: Arc::clone(instance),
            repr: EndoRepr::Matrix(rows),
            eval,
        })
    }

    pub fn from_repr(instance: &Arc<AlgebraInstance>, repr: EndoRepr) -> Result<Endo> {
        match repr {
            EndoRepr::Map(img) => Self::from_map(instance, img),
            EndoRepr::Matrix(rows) => Self::from_matrix(instance, rows),
        }
    }

    pub fn from_json(instance: &Arc<AlgebraInstance>, text: &str) -> Result<Endo> {
        let parsed: EndoJson =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        match parsed {
            EndoJson::Map { img } => Self::from_map(instance, img),
            EndoJson::Matrix { rows } => Self::from_matrix(instance, rows),
        }
    }

    pub fn to_json(&self) -> String {
        let j = match &self.repr {
            EndoRepr::Map(img) => EndoJson::Map { img: img.clone() },
            EndoRepr::Matrix(rows) => EndoJson::Matrix { rows: rows.clone() },
        };
        serde_json::to_string(&j).expect("endo serialization cannot fail")
    }

    /// Builds the endomorphism determined by `basis[i] -> targets[i]`.
    ///
    /// The basis must be a basis of the whole algebra (for the set model,
    /// a permutation of all elements) and every target must lie in the
    /// range. This is the workhorse behind the constructive witnesses.
    pub fn from_basis_map(
        instance: &Arc<AlgebraInstance>,
        basis: &[ElemId],
        targets: &[ElemId],
    ) -> Result<Endo> {
        if basis.len() != targets.len() {
            return Err(Error::Precondition(
                "basis and target lists differ in length".into(),
            ));
        }
        match *instance.model() {
            Model::Set { size } => {
                if basis.len() != size || !instance.is_independent(basis) {
                    return Err(Error::Precondition("not a basis of the whole set".into()));
                }
                let mut img = vec![0; size];
                for (&b, &t) in basis.iter().zip(targets) {
                    img[b as usize] = t;
                }
                Self::from_map(instance, img)
            }
            Model::VectorSpace { prime, dim } => {
                if basis.len() != dim || !instance.is_independent(basis) {
                    return Err(Error::Precondition("not a basis of the whole space".into()));
                }
                let basis_rows: Vec<Vec<u8>> =
                    basis.iter().map(|&b| instance.vector(b).to_vec()).collect();
                let target_rows: Vec<Vec<u8>> = targets
                    .iter()
                    .map(|&t| instance.vector(t).to_vec())
                    .collect();
                let rows = gf::solve_matrix(prime, &basis_rows, &target_rows);
                Self::from_matrix(instance, rows)
            }
        }
    }

    pub fn instance(&self) -> &Arc<AlgebraInstance> {
        &self.instance
    }

    pub fn same_instance(&self, other: &Endo) -> bool {
        Arc::ptr_eq(&self.instance, &other.instance) || *self.instance == *other.instance
    }

    pub fn repr(&self) -> &EndoRepr {
        &self.repr
    }

    pub fn apply(&self, x: ElemId) -> ElemId {
        self.eval[x as usize]
    }

    pub fn eval_table(&self) -> &[ElemId] {
        &self.eval
    }

    /// `x (self compose other) = (x self) other`.
    pub fn compose(&self, other: &Endo) -> Result<Endo> {
        if !self.same_instance(other) {
            return Err(Error::InstanceMismatch);
        }
        let eval: Vec<ElemId> = self.eval.iter().map(|&m| other.eval[m as usize]).collect();
        let repr = match &self.repr {
            EndoRepr::Map(_) => EndoRepr::Map(eval.clone()),
            EndoRepr::Matrix(rows) => {
                let p = self.instance.prime().unwrap();
                let EndoRepr::Matrix(other_rows) = &other.repr else {
                    unreachable!()
                };
                EndoRepr::Matrix(gf::mat_mul(p, rows, other_rows))
            }
        };
        Ok(Endo {
            instance: Arc::clone(&self.instance),
            repr,
            eval,
        })
    }

    /// The image subalgebra of the whole algebra.
    pub fn image(&self) -> Subalgebra {
        let mut vals: Vec<ElemId> = self.eval.clone();
        vals.sort_unstable();
        vals.dedup();
        self.instance.span_of(&vals)
    }

    /// The image of the range subalgebra.
    pub fn image_on_range(&self) -> Subalgebra {
        let mut vals: Vec<ElemId> = self
            .instance
            .range()
            .elems()
            .iter()
            .map(|&b| self.eval[b as usize])
            .collect();
        vals.sort_unstable();
        vals.dedup();
        self.instance.span_of(&vals)
    }

    pub fn rank(&self) -> usize {
        self.image().dim()
    }

    pub fn rank_on_range(&self) -> usize {
        self.image_on_range().dim()
    }

    /// Membership in Q: the image of the range covers the whole image.
    /// These are exactly the regular elements of the semigroup.
    pub fn is_in_q(&self) -> bool {
        self.image() == self.image_on_range()
    }

    pub fn is_idempotent(&self) -> bool {
        self.eval
            .iter()
            .enumerate()
            .all(|(x, &fx)| self.eval[fx as usize] == self.eval[x])
    }

    /// Canonical kernel congruence over the whole algebra.
    pub fn kernel(&self) -> KernelRepr {
        match &self.repr {
            EndoRepr::Map(_) => KernelRepr::Partition(partition_by_fiber(
                (0..self.eval.len() as ElemId)
                    .collect::<Vec<_>>()
                    .as_slice(),
                &self.eval,
            )),
            EndoRepr::Matrix(rows) => {
                KernelRepr::Nullspace(gf::nullspace(self.instance.prime().unwrap(), rows))
            }
        }
    }

    /// Kernel congruence restricted to the range, ker ∩ (B × B).
    pub fn kernel_on_range(&self) -> KernelRepr {
        match &self.repr {
            EndoRepr::Map(_) => KernelRepr::Partition(partition_by_fiber(
                self.instance.range().elems(),
                &self.eval,
            )),
            EndoRepr::Matrix(rows) => {
                // Null space of the restriction to the range: solve within
                // range coordinates, then map back to ambient vectors.
                let p = self.instance.prime().unwrap();
                let range_basis = match self.instance.range().basis() {
                    crate::algebra::SubalgebraBasis::Linear(b) => b.clone(),
                    crate::algebra::SubalgebraBasis::Set(_) => unreachable!(),
                };
                let restricted = gf::mat_mul(p, &range_basis, rows);
                let local = gf::nullspace(p, &restricted);
                let ambient: Vec<Vec<u8>> = local
                    .iter()
                    .map(|c| gf::row_times_matrix(p, c, &range_basis))
                    .collect();
                KernelRepr::Nullspace(gf::rref(p, &ambient))
            }
        }
    }

    /// First-occurrence fiber key over the whole universe; two maps have
    /// equal kernels iff their keys are equal. Cheap stand-in for the
    /// canonical `KernelRepr` in bulk computations.
    pub fn kernel_key(&self) -> Vec<u32> {
        fiber_key(
            &self.eval,
            (0..self.eval.len() as ElemId)
                .collect::<Vec<_>>()
                .as_slice(),
        )
    }

    /// Fiber key restricted to the range elements.
    pub fn kernel_on_range_key(&self) -> Vec<u32> {
        fiber_key(&self.eval, self.instance.range().elems())
    }

    pub fn label(&self) -> String {
        match &self.repr {
            EndoRepr::Map(img) => {
                let parts: Vec<String> = img.iter().map(|v| v.to_string()).collect();
                format!("({})", parts.join(","))
            }
            EndoRepr::Matrix(rows) => {
                let parts: Vec<String> = rows
                    .iter()
                    .map(|r| {
                        let inner: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                        format!("({})", inner.join(","))
                    })
                    .collect();
                format!("[{}]", parts.join(";"))
            }
        }
    }
}

/// True iff ker(a) is contained in ker(b), i.e. b factors through a on
/// every fiber. Works uniformly for both models because the universes
/// are fully enumerated.
pub fn kernel_subset(a: &Endo, b: &Endo) -> bool {
    let mut image_of: Vec<Option<ElemId>> = vec![None; a.eval.len()];
    for (x, &ax) in a.eval.iter().enumerate() {
        match image_of[ax as usize] {
            None => image_of[ax as usize] = Some(b.eval[x]),
            Some(v) => {
                if v != b.eval[x] {
                    return false;
                }
            }
        }
    }
    true
}

fn fiber_key(eval: &[ElemId], domain: &[ElemId]) -> Vec<u32> {
    let mut seen: Vec<u32> = vec![u32::MAX; eval.len()];
    let mut key = Vec::with_capacity(domain.len());
    let mut next = 0u32;
    for &x in domain {
        let v = eval[x as usize] as usize;
        if seen[v] == u32::MAX {
            seen[v] = next;
            next += 1;
        }
        key.push(seen[v]);
    }
    key
}

fn partition_by_fiber(domain: &[ElemId], eval: &[ElemId]) -> Vec<Vec<ElemId>> {
    let mut blocks: Vec<Vec<ElemId>> = Vec::new();
    let mut slot: Vec<Option<usize>> = vec![None; eval.len()];
    for &x in domain {
        let v = eval[x as usize] as usize;
        match slot[v] {
            Some(i) => blocks[i].push(x),
            None => {
                slot[v] = Some(blocks.len());
                blocks.push(vec![x]);
            }
        }
    }
    // Domains are scanned in ascending order, so blocks are already
    // sorted internally and ordered by least element.
    blocks
}
