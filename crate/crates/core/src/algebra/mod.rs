//! Finite independence-algebra models and their subalgebra machinery.
//!
//! Two models are supported: plain finite sets (no operations, every
//! subset is a subalgebra, no constants) and finite vector spaces over a
//! prime field GF(p) (subspaces as subalgebras, `{0}` as the constant
//! subalgebra). Both satisfy the exchange property and the free basis
//! property, which is what the rest of the crate relies on.
//!
//! Elements are addressed by `ElemId`, an index into a fixed enumeration
//! of the universe. For the set model the id of an element is the element
//! itself; for the vector model the id of a vector `v` is
//! `sum v[i] * p^i`, so the standard basis vector `e_i` has id `p^i` and
//! the zero vector has id 0.

mod cardinal;
pub mod gf;

pub use cardinal::{Aleph, Cardinal, Finite, ALEPH_0};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Index of an element in the instance's universe enumeration.
pub type ElemId = u32;

/// Universe size guard; instances are meant to stay at desk scale.
pub const MAX_UNIVERSE: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    Set { size: usize },
    VectorSpace { prime: u8, dim: usize },
}

/// A finite independence algebra together with its distinguished
/// subalgebra, the range all endomorphisms are restricted to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraInstance {
    model: Model,
    /// Vector model only: `universe[id]` is the coordinate vector.
    universe: Vec<Vec<u8>>,
    universe_size: usize,
    range: Subalgebra,
    range_member: Vec<bool>,
}

/// A subalgebra in canonical form. Equality of the canonical forms is the
/// equality notion used everywhere downstream.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subalgebra {
    /// All member element ids, sorted ascending.
    elems: Vec<ElemId>,
    basis: SubalgebraBasis,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SubalgebraBasis {
    /// Set model: the sorted member list is its own basis.
    Set(Vec<ElemId>),
    /// Vector model: RREF basis rows of the subspace.
    Linear(Vec<Vec<u8>>),
}

impl Subalgebra {
    pub fn dim(&self) -> usize {
        match &self.basis {
            SubalgebraBasis::Set(b) => b.len(),
            SubalgebraBasis::Linear(b) => b.len(),
        }
    }

    pub fn elems(&self) -> &[ElemId] {
        &self.elems
    }

    pub fn contains(&self, id: ElemId) -> bool {
        self.elems.binary_search(&id).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subalgebra) -> bool {
        self.elems.iter().all(|&e| other.contains(e))
    }

    pub fn basis(&self) -> &SubalgebraBasis {
        &self.basis
    }

    /// Basis as element ids, in canonical order.
    pub fn basis_ids(&self, instance: &AlgebraInstance) -> Vec<ElemId> {
        match &self.basis {
            SubalgebraBasis::Set(b) => b.clone(),
            SubalgebraBasis::Linear(rows) => rows.iter().map(|r| instance.vector_id(r)).collect(),
        }
    }
}

/// JSON form of an instance, the on-disk interchange format.
#[derive(Serialize, Deserialize)]
#[serde(tag = "model", deny_unknown_fields)]
enum InstanceJson {
    #[serde(rename = "set")]
    Set {
        universe_size: usize,
        range: Vec<ElemId>,
    },
    #[serde(rename = "vector_space")]
    VectorSpace {
        prime: u8,
        dim: usize,
        range_basis: Vec<Vec<u8>>,
    },
}

impl AlgebraInstance {
    /// A finite set of `size` points with the subalgebra given by `range`.
    pub fn set(size: usize, range: &[ElemId]) -> Result<AlgebraInstance> {
        if size == 0 || size > MAX_UNIVERSE {
            return Err(Error::Malformed(format!(
                "set universe size {size} out of range 1..={MAX_UNIVERSE}"
            )));
        }
        let mut elems: Vec<ElemId> = range.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if elems.is_empty() {
            return Err(Error::Malformed("range must be nonempty".into()));
        }
        if elems.last().copied().unwrap() as usize >= size {
            return Err(Error::Malformed(format!(
                "range element {} outside universe 0..{}",
                elems.last().unwrap(),
                size
            )));
        }
        let mut range_member = vec![false; size];
        for &e in &elems {
            range_member[e as usize] = true;
        }
        Ok(AlgebraInstance {
            model: Model::Set { size },
            universe: Vec::new(),
            universe_size: size,
            range: Subalgebra {
                elems: elems.clone(),
                basis: SubalgebraBasis::Set(elems),
            },
            range_member,
        })
    }

    /// GF(p)^dim with the subspace spanned by `range_gens` as the range.
    /// The generators need not be independent; the stored basis is their RREF.
    pub fn vector_space(prime: u8, dim: usize, range_gens: &[Vec<u8>]) -> Result<AlgebraInstance> {
        if ![2, 3, 5].contains(&prime) {
            return Err(Error::Malformed(format!(
                "unsupported prime {prime}; expected 2, 3 or 5"
            )));
        }
        if dim == 0 {
            return Err(Error::Malformed(
                "vector space dimension must be at least 1".into(),
            ));
        }
        let size = (prime as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
        if size > MAX_UNIVERSE as u128 {
            return Err(Error::Malformed(format!(
                "universe p^dim = {size} exceeds the limit {MAX_UNIVERSE}"
            )));
        }
        let size = size as usize;
        for v in range_gens {
            if v.len() != dim {
                return Err(Error::Malformed(format!(
                    "range basis vector has length {}, expected {dim}",
                    v.len()
                )));
            }
            if v.iter().any(|&x| x >= prime) {
                return Err(Error::Malformed("vector entry not reduced mod p".into()));
            }
        }
        let basis = gf::rref(prime, range_gens);
        let mut universe = Vec::with_capacity(size);
        for id in 0..size {
            let mut v = vec![0u8; dim];
            let mut rest = id;
            for slot in v.iter_mut() {
                *slot = (rest % prime as usize) as u8;
                rest /= prime as usize;
            }
            universe.push(v);
        }
        let mut elems = Vec::new();
        let mut range_member = vec![false; size];
        for (id, v) in universe.iter().enumerate() {
            if gf::in_span(prime, &basis, v) {
                elems.push(id as ElemId);
                range_member[id] = true;
            }
        }
        Ok(AlgebraInstance {
            model: Model::VectorSpace { prime, dim },
            universe,
            universe_size: size,
            range: Subalgebra {
                elems,
                basis: SubalgebraBasis::Linear(basis),
            },
            range_member,
        })
    }

    pub fn from_json(text: &str) -> Result<AlgebraInstance> {
        let parsed: InstanceJson =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        match parsed {
            InstanceJson::Set {
                universe_size,
                range,
            } => Self::set(universe_size, &range),
            InstanceJson::VectorSpace {
                prime,
                dim,
                range_basis,
            } => Self::vector_space(prime, dim, &range_basis),
        }
    }

    pub fn to_json(&self) -> String {
        let j = match &self.model {
            Model::Set { size } => InstanceJson::Set {
                universe_size: *size,
                range: self.range.elems.clone(),
            },
            Model::VectorSpace { prime, dim } => InstanceJson::VectorSpace {
                prime: *prime,
                dim: *dim,
                range_basis: match &self.range.basis {
                    SubalgebraBasis::Linear(rows) => rows.clone(),
                    SubalgebraBasis::Set(_) => unreachable!(),
                },
            },
        };
        serde_json::to_string(&j).expect("instance serialization cannot fail")
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn is_set_model(&self) -> bool {
        matches!(self.model, Model::Set { .. })
    }

    pub fn prime(&self) -> Option<u8> {
        match self.model {
            Model::VectorSpace { prime, .. } => Some(prime),
            Model::Set { .. } => None,
        }
    }

    /// Number of elements of the whole algebra.
    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn elem_ids(&self) -> impl Iterator<Item = ElemId> {
        0..self.universe_size as ElemId
    }

    /// Dimension of the whole algebra: the set size, or the linear dimension.
    pub fn dim(&self) -> usize {
        match self.model {
            Model::Set { size } => size,
            Model::VectorSpace { dim, .. } => dim,
        }
    }

    /// The distinguished subalgebra.
    pub fn range(&self) -> &Subalgebra {
        &self.range
    }

    pub fn in_range(&self, id: ElemId) -> bool {
        self.range_member[id as usize]
    }

    pub fn range_dim(&self) -> usize {
        self.range.dim()
    }

    pub fn codim(&self) -> usize {
        self.dim() - self.range_dim()
    }

    /// Whether the empty set generates a nonempty subalgebra.
    pub fn has_constants(&self) -> bool {
        matches!(self.model, Model::VectorSpace { .. })
    }

    /// Minimal rank of a nonempty subalgebra: 0 with constants, 1 without.
    pub fn min_rank(&self) -> usize {
        if self.has_constants() {
            0
        } else {
            1
        }
    }

    /// Coordinate vector of an element (vector model only).
    pub fn vector(&self, id: ElemId) -> &[u8] {
        &self.universe[id as usize]
    }

    pub fn vector_id(&self, v: &[u8]) -> ElemId {
        let Model::VectorSpace { prime, .. } = self.model else {
            panic!("vector_id on a set model");
        };
        let mut id = 0usize;
        let mut weight = 1usize;
        for &x in v {
            id += x as usize * weight;
            weight *= prime as usize;
        }
        id as ElemId
    }

    pub fn elem_label(&self, id: ElemId) -> String {
        match self.model {
            Model::Set { .. } => id.to_string(),
            Model::VectorSpace { .. } => {
                let v = self.vector(id);
                let body: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("({})", body.join(","))
            }
        }
    }

    fn check_ids(&self, ids: &[ElemId]) -> Result<()> {
        if let Some(&bad) = ids.iter().find(|&&e| e as usize >= self.universe_size) {
            return Err(Error::Malformed(format!(
                "element id {bad} outside the universe"
            )));
        }
        Ok(())
    }

    /// Smallest subalgebra containing the generators. For sets this is
    /// the generator set itself; for vector spaces, the span (always
    /// containing 0).
    pub fn closure(&self, generators: &[ElemId]) -> Result<Subalgebra> {
        self.check_ids(generators)?;
        match self.model {
            Model::Set { .. } => {
                let mut elems = generators.to_vec();
                elems.sort_unstable();
                elems.dedup();
                Ok(Subalgebra {
                    basis: SubalgebraBasis::Set(elems.clone()),
                    elems,
                })
            }
            Model::VectorSpace { prime, .. } => {
                let rows: Vec<Vec<u8>> = generators
                    .iter()
                    .map(|&g| self.universe[g as usize].clone())
                    .collect();
                let basis = gf::rref(prime, &rows);
                Ok(self.subspace_from_basis(prime, basis))
            }
        }
    }

    fn subspace_from_basis(&self, prime: u8, basis: Vec<Vec<u8>>) -> Subalgebra {
        let mut elems = Vec::with_capacity((prime as usize).pow(basis.len() as u32));
        for (id, v) in self.universe.iter().enumerate() {
            if gf::in_span(prime, &basis, v) {
                elems.push(id as ElemId);
            }
        }
        Subalgebra {
            elems,
            basis: SubalgebraBasis::Linear(basis),
        }
    }

    /// Subalgebra generated by an arbitrary element set, given by ids.
    /// Unchecked variant of [`closure`](Self::closure): panics on
    /// out-of-range ids.
    pub fn span_of(&self, ids: &[ElemId]) -> Subalgebra {
        self.closure(ids).expect("ids validated by caller")
    }

    pub fn is_independent(&self, ids: &[ElemId]) -> bool {
        if self.check_ids(ids).is_err() {
            return false;
        }
        match self.model {
            Model::Set { .. } => {
                let mut sorted = ids.to_vec();
                sorted.sort_unstable();
                sorted.dedup();
                sorted.len() == ids.len()
            }
            Model::VectorSpace { prime, .. } => {
                let rows: Vec<Vec<u8>> = ids
                    .iter()
                    .map(|&i| self.universe[i as usize].clone())
                    .collect();
                gf::rank(prime, &rows) == ids.len()
            }
        }
    }

    /// Extends an independent set to a basis of `ambient`, scanning
    /// eligible elements in canonical id order. The given elements come
    /// first in the result, in their given order.
    pub fn extend_to_basis(
        &self,
        independent: &[ElemId],
        ambient: &Subalgebra,
    ) -> Result<Vec<ElemId>> {
        if !self.is_independent(independent) {
            return Err(Error::Precondition(
                "input elements are not independent".into(),
            ));
        }
        if independent.iter().any(|&e| !ambient.contains(e)) {
            return Err(Error::Precondition(
                "input elements lie outside the ambient subalgebra".into(),
            ));
        }
        let mut basis = independent.to_vec();
        let mut span = self.span_of(&basis);
        for &cand in ambient.elems() {
            if basis.len() == ambient.dim() {
                break;
            }
            if !span.contains(cand) {
                basis.push(cand);
                span = self.span_of(&basis);
            }
        }
        debug_assert_eq!(basis.len(), ambient.dim());
        Ok(basis)
    }

    /// Extends an independent set to a basis of the whole algebra.
    pub fn extend_to_full_basis(&self, independent: &[ElemId]) -> Result<Vec<ElemId>> {
        let whole = match self.model {
            Model::Set { size } => {
                let elems: Vec<ElemId> = (0..size as ElemId).collect();
                Subalgebra {
                    basis: SubalgebraBasis::Set(elems.clone()),
                    elems,
                }
            }
            Model::VectorSpace { prime, dim } => {
                let mut rows = vec![vec![0u8; dim]; dim];
                for (i, row) in rows.iter_mut().enumerate() {
                    row[i] = 1;
                }
                self.subspace_from_basis(prime, rows)
            }
        };
        self.extend_to_basis(independent, &whole)
    }
}

impl fmt::Display for AlgebraInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.model {
            Model::Set { size } => {
                write!(f, "set(|A|={size}, |B|={})", self.range_dim())
            }
            Model::VectorSpace { prime, dim } => {
                write!(f, "gf{prime}(dim A={dim}, dim B={})", self.range_dim())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_closure_is_identity_on_subsets() {
        let a = AlgebraInstance::set(3, &[0, 1, 2]).unwrap();
        let s = a.closure(&[0, 2]).unwrap();
        assert_eq!(s.elems(), &[0, 2]);
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn vec_closure_of_line_over_gf2() {
        let a = AlgebraInstance::vector_space(2, 2, &[vec![1, 0]]).unwrap();
        let e1 = a.vector_id(&[1, 0]);
        let s = a.closure(&[e1]).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.elems().len(), 2); // {(0,0), (1,0)}
    }

    #[test]
    fn vec_closure_of_nothing_is_zero_space() {
        let a = AlgebraInstance::vector_space(2, 2, &[vec![1, 0]]).unwrap();
        let s = a.closure(&[]).unwrap();
        assert_eq!(s.dim(), 0);
        assert_eq!(s.elems(), &[0]);
    }

    #[test]
    fn extend_to_basis_set_model() {
        let a = AlgebraInstance::set(3, &[0, 1, 2]).unwrap();
        let whole = a.closure(&[0, 1, 2]).unwrap();
        let b = a.extend_to_basis(&[1], &whole).unwrap();
        assert_eq!(b, vec![1, 0, 2]);
    }

    #[test]
    fn extend_to_basis_prefers_smallest_id() {
        // Ambient is the full plane over GF(2); starting from (1,1), the
        // smallest-id vector outside its span is e1 = (1,0) with id 1.
        let a = AlgebraInstance::vector_space(2, 2, &[vec![1, 0], vec![0, 1]]).unwrap();
        let whole = a.closure(&[1, 2]).unwrap();
        let v11 = a.vector_id(&[1, 1]);
        let b = a.extend_to_basis(&[v11], &whole).unwrap();
        assert_eq!(b, vec![v11, a.vector_id(&[1, 0])]);
        assert!(a.is_independent(&b));
    }

    #[test]
    fn extend_empty_basis_of_zero_space() {
        let a = AlgebraInstance::vector_space(2, 2, &[vec![1, 0]]).unwrap();
        let zero = a.closure(&[]).unwrap();
        assert_eq!(a.extend_to_basis(&[], &zero).unwrap(), Vec::<ElemId>::new());
    }

    #[test]
    fn dependent_input_is_rejected() {
        let a = AlgebraInstance::vector_space(2, 2, &[vec![1, 0], vec![0, 1]]).unwrap();
        let whole = a.closure(&[1, 2]).unwrap();
        let v11 = a.vector_id(&[1, 1]);
        let err = a.extend_to_basis(&[1, 2, v11], &whole);
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn malformed_inputs() {
        assert!(AlgebraInstance::set(3, &[]).is_err());
        assert!(AlgebraInstance::set(3, &[3]).is_err());
        assert!(AlgebraInstance::vector_space(4, 2, &[vec![1, 0]]).is_err());
        assert!(AlgebraInstance::vector_space(2, 2, &[vec![1, 0, 0]]).is_err());
        assert!(AlgebraInstance::vector_space(2, 2, &[vec![3, 0]]).is_err());
    }

    #[test]
    fn instance_json_roundtrip() {
        let a = AlgebraInstance::set(4, &[0, 2]).unwrap();
        let b = AlgebraInstance::from_json(&a.to_json()).unwrap();
        assert_eq!(a, b);
        let v = AlgebraInstance::vector_space(3, 2, &[vec![1, 2]]).unwrap();
        let w = AlgebraInstance::from_json(&v.to_json()).unwrap();
        assert_eq!(v, w);
    }

    #[test]
    fn exchange_property_exhaustive_gf2_up_to_dim3() {
        // For all X, a, b: b in <X + a> and b not in <X> implies a in <X + b>.
        for dim in 1..=3 {
            let alg = AlgebraInstance::vector_space(2, dim, &[]).unwrap();
            let n = alg.universe_size() as ElemId;
            let subsets: Vec<Vec<ElemId>> = (0..1u32 << n)
                .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
                .collect();
            for xs in &subsets {
                let span_x = alg.span_of(xs);
                for a in 0..n {
                    let mut xa = xs.clone();
                    xa.push(a);
                    let span_xa = alg.span_of(&xa);
                    for b in 0..n {
                        if span_xa.contains(b) && !span_x.contains(b) {
                            let mut xb = xs.clone();
                            xb.push(b);
                            assert!(alg.span_of(&xb).contains(a));
                        }
                    }
                }
            }
        }
    }
}
