//! Enumeration of the full semigroup of range-restricted endomorphisms,
//! its product table, and the structural checks on the regular part Q.

use crate::algebra::{AlgebraInstance, ElemId, Model};
use crate::endo::{Endo, EndoRepr};
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Arc;

pub const DEFAULT_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceClass {
    /// The semigroup has a two-sided identity: the range is the whole
    /// algebra, or it is a singleton.
    Monoid,
    /// Regular but not a monoid (possible in general, not realised by the
    /// two bundled models).
    Regular,
    /// The standing case for the structural theory: not regular.
    NonRegular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub monoid: bool,
    pub regular: bool,
    pub class: InstanceClass,
}

/// Monoid and regularity criteria, decided from the instance parameters
/// alone. The enumerated table lets both be cross-checked by brute force.
pub fn classify_instance(instance: &AlgebraInstance) -> Classification {
    let range_is_all = instance.range().elems().len() == instance.universe_size();
    let monoid = range_is_all || instance.range().elems().len() == 1;
    let non_regular = !range_is_all
        && (instance.range_dim() >= 2 || (instance.has_constants() && instance.range_dim() == 1));
    let regular = !non_regular;
    let class = if monoid {
        InstanceClass::Monoid
    } else if regular {
        InstanceClass::Regular
    } else {
        InstanceClass::NonRegular
    };
    Classification {
        monoid,
        regular,
        class,
    }
}

/// The fully enumerated semigroup: indexed element list, product lookup,
/// per-element flags and the cached invariants relation computations use.
pub struct SemigroupTable {
    pub instance: Arc<AlgebraInstance>,
    pub elements: Vec<Endo>,
    pub classification: Classification,
    pub q_mask: Vec<bool>,
    pub idem_mask: Vec<bool>,
    /// rank and rank of the restriction to the range, per element
    pub ranks: Vec<usize>,
    pub range_ranks: Vec<usize>,
    /// deduplicated invariant ids: equal id iff equal invariant
    pub image_ids: Vec<u32>,
    pub kernel_ids: Vec<u32>,
    pub range_kernel_ids: Vec<u32>,
    product: Vec<u32>,
    index: HashMap<EndoRepr, u32>,
    n: usize,
}

impl SemigroupTable {
    /// Number of elements the enumeration of `instance` would produce.
    pub fn element_count(instance: &AlgebraInstance) -> u128 {
        let choices = instance.range().elems().len() as u128;
        let slots = match *instance.model() {
            Model::Set { size } => size,
            Model::VectorSpace { dim, .. } => dim,
        };
        choices.pow(slots as u32)
    }

    /// Enumerates every endomorphism with image in the range, in
    /// lexicographic order of representation (image tuples for the set
    /// model; matrices with earlier rows more significant, each row
    /// running over the range in canonical element order).
    pub fn enumerate(instance: Arc<AlgebraInstance>, cap: usize) -> Result<SemigroupTable> {
        let count = Self::element_count(&instance);
        if count > cap as u128 {
            return Err(Error::CapExceeded { count, cap });
        }
        let range_elems = instance.range().elems().to_vec();
        let slots = match *instance.model() {
            Model::Set { size } => size,
            Model::VectorSpace { dim, .. } => dim,
        };

        let mut elements: Vec<Endo> = Vec::with_capacity(count as usize);
        let mut choice = vec![0usize; slots];
        loop {
            let endo = match *instance.model() {
                Model::Set { .. } => {
                    let img: Vec<ElemId> = choice.iter().map(|&c| range_elems[c]).collect();
                    Endo::from_map(&instance, img)?
                }
                Model::VectorSpace { .. } => {
                    let rows: Vec<Vec<u8>> = choice
                        .iter()
                        .map(|&c| instance.vector(range_elems[c]).to_vec())
                        .collect();
                    Endo::from_matrix(&instance, rows)?
                }
            };
            elements.push(endo);
            // odometer with the last slot fastest: lexicographic order
            let mut pos = slots;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                choice[pos] += 1;
                if choice[pos] < range_elems.len() {
                    break;
                }
                choice[pos] = 0;
            }
            if choice.iter().all(|&c| c == 0) {
                break;
            }
        }
        debug_assert_eq!(elements.len() as u128, count);

        let n = elements.len();
        let mut index = HashMap::with_capacity(n);
        for (i, e) in elements.iter().enumerate() {
            index.insert(e.repr().clone(), i as u32);
        }

        let mut product = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let composed = compose_repr(&instance, &elements[i], &elements[j]);
                product[i * n + j] = index[&composed];
            }
        }

        let q_mask: Vec<bool> = elements.iter().map(Endo::is_in_q).collect();
        let idem_mask: Vec<bool> = elements.iter().map(Endo::is_idempotent).collect();
        let ranks: Vec<usize> = elements.iter().map(Endo::rank).collect();
        let range_ranks: Vec<usize> = elements.iter().map(Endo::rank_on_range).collect();
        let image_ids = dedup_ids(elements.iter().map(|e| e.image().elems().to_vec()));
        let kernel_ids = dedup_ids(elements.iter().map(Endo::kernel_key));
        let range_kernel_ids = dedup_ids(elements.iter().map(Endo::kernel_on_range_key));

        Ok(SemigroupTable {
            classification: classify_instance(&instance),
            instance,
            elements,
            q_mask,
            idem_mask,
            ranks,
            range_ranks,
            image_ids,
            kernel_ids,
            range_kernel_ids,
            product,
            index,
            n,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn product(&self, i: u32, j: u32) -> u32 {
        self.product[i as usize * self.n + j as usize]
    }

    /// Index playing the role of the adjoined identity in S^1.
    pub fn identity_index(&self) -> u32 {
        self.n as u32
    }

    /// Product over S^1; the virtual identity short-circuits.
    pub fn product1(&self, i: u32, j: u32) -> u32 {
        let id = self.identity_index();
        if i == id {
            j
        } else if j == id {
            i
        } else {
            self.product(i, j)
        }
    }

    pub fn find(&self, endo: &Endo) -> Option<u32> {
        self.index.get(endo.repr()).copied()
    }

    pub fn q_indices(&self) -> Vec<u32> {
        (0..self.n as u32)
            .filter(|&i| self.q_mask[i as usize])
            .collect()
    }

    pub fn idempotent_indices(&self) -> Vec<u32> {
        (0..self.n as u32)
            .filter(|&i| self.idem_mask[i as usize])
            .collect()
    }

    /// Element indices of rank equal to the minimal rank e; this is the
    /// minimal ideal.
    pub fn min_rank_indices(&self) -> Vec<u32> {
        let e = self.instance.min_rank();
        (0..self.n as u32)
            .filter(|&i| self.ranks[i as usize] == e)
            .collect()
    }

    /// Brute-force monoid test: some element is a two-sided identity.
    pub fn has_identity_element(&self) -> bool {
        (0..self.n as u32)
            .any(|c| (0..self.n as u32).all(|x| self.product(c, x) == x && self.product(x, c) == x))
    }

    /// Brute-force regularity of a single element.
    pub fn is_regular_element(&self, i: u32) -> bool {
        (0..self.n as u32).any(|g| self.product(self.product(i, g), i) == i)
    }

    /// Associativity of the product table: exhaustive up to
    /// `exhaustive_limit` elements, seeded random triples above.
    pub fn check_associativity(
        &self,
        exhaustive_limit: usize,
        samples: usize,
        seed: u64,
    ) -> Result<()> {
        let n = self.n as u32;
        let check = |a: u32, b: u32, c: u32| -> Result<()> {
            if self.product(self.product(a, b), c) != self.product(a, self.product(b, c)) {
                return Err(Error::CheckFailed(format!(
                    "associativity fails on triple ({a}, {b}, {c}) = ({}, {}, {})",
                    self.elements[a as usize].label(),
                    self.elements[b as usize].label(),
                    self.elements[c as usize].label(),
                )));
            }
            Ok(())
        };
        if self.n <= exhaustive_limit {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = crate::verify::SplitMix64::new(seed);
            for _ in 0..samples {
                check(rng.below(n), rng.below(n), rng.below(n))?;
            }
        }
        Ok(())
    }
}

fn compose_repr(instance: &AlgebraInstance, a: &Endo, b: &Endo) -> EndoRepr {
    match *instance.model() {
        Model::Set { .. } => EndoRepr::Map(a.eval_table().iter().map(|&m| b.apply(m)).collect()),
        Model::VectorSpace { dim, .. } => {
            // Row i of the product is the image of e_i, read off the
            // composed evaluation tables.
            let rows: Vec<Vec<u8>> = (0..dim)
                .map(|i| {
                    let ei = instance
                        .vector_id(&(0..dim).map(|j| u8::from(i == j)).collect::<Vec<u8>>());
                    instance.vector(b.apply(a.apply(ei))).to_vec()
                })
                .collect();
            EndoRepr::Matrix(rows)
        }
    }
}

fn dedup_ids<K: std::hash::Hash + Eq>(keys: impl Iterator<Item = K>) -> Vec<u32> {
    let mut seen: HashMap<K, u32> = HashMap::new();
    let mut out = Vec::new();
    for k in keys {
        let next = seen.len() as u32;
        out.push(*seen.entry(k).or_insert(next));
    }
    out
}

/// Report from the exhaustive checks on the structure of Q.
#[derive(Debug, Clone, Serialize)]
pub struct QStructureReport {
    pub q_size: usize,
    /// For each element of Q, an inner inverse found inside Q.
    pub inner_inverses: Vec<(u32, u32)>,
    /// A pair (lambda, beta) with beta in Q but lambda*beta outside Q,
    /// witnessing that Q is not a left ideal. Absent when the instance
    /// admits none.
    pub left_ideal_failure: Option<(u32, u32)>,
}

/// Verifies that Q is a right ideal, that every element of Q is regular
/// with an inner inverse inside Q, that no element outside Q is regular,
/// and reports a left-ideal failure witness when one exists.
pub fn check_q_structure(table: &SemigroupTable) -> Result<QStructureReport> {
    let n = table.len() as u32;
    for a in 0..n {
        if !table.q_mask[a as usize] {
            continue;
        }
        for b in 0..n {
            let ab = table.product(a, b);
            if !table.q_mask[ab as usize] {
                return Err(Error::CheckFailed(format!(
                    "Q is not a right ideal: {a} = {} in Q, {a}*{b} = {} not in Q",
                    table.elements[a as usize].label(),
                    table.elements[ab as usize].label(),
                )));
            }
        }
    }

    let mut inner_inverses = Vec::new();
    for a in 0..n {
        if table.q_mask[a as usize] {
            let witness = (0..n)
                .filter(|&g| table.q_mask[g as usize])
                .find(|&g| table.product(table.product(a, g), a) == a);
            match witness {
                Some(g) => inner_inverses.push((a, g)),
                None => {
                    return Err(Error::CheckFailed(format!(
                        "element {a} = {} lies in Q but has no inner inverse in Q",
                        table.elements[a as usize].label(),
                    )))
                }
            }
        } else if table.is_regular_element(a) {
            return Err(Error::CheckFailed(format!(
                "element {a} = {} outside Q is regular in the semigroup",
                table.elements[a as usize].label(),
            )));
        }
    }

    let mut left_ideal_failure = None;
    'outer: for b in 0..n {
        if !table.q_mask[b as usize] {
            continue;
        }
        for l in 0..n {
            let lb = table.product(l, b);
            if !table.q_mask[lb as usize] {
                left_ideal_failure = Some((l, b));
                break 'outer;
            }
        }
    }

    Ok(QStructureReport {
        q_size: table.q_indices().len(),
        inner_inverses,
        left_ideal_failure,
    })
}

/// Computes the three characterisations of Q independently and checks
/// they coincide: the image condition, semigroup regularity, and the
/// existence of a left identity.
pub fn check_q_three_definitions(table: &SemigroupTable) -> Result<()> {
    let n = table.len() as u32;
    for a in 0..n {
        let by_image = table.q_mask[a as usize];
        let by_regularity = table.is_regular_element(a);
        let by_left_identity = (0..n).any(|g| table.product(g, a) == a);
        if by_image != by_regularity || by_image != by_left_identity {
            return Err(Error::CheckFailed(format!(
                "Q characterisations disagree on element {a} = {}: image {by_image}, regular {by_regularity}, left identity {by_left_identity}",
                table.elements[a as usize].label(),
            )));
        }
    }
    Ok(())
}

/// The kernel-based product regularity criterion: `a*b` lies in Q iff
/// every image point of `a` is kernel-equivalent (within the range) to
/// the image of some range point.
pub fn product_regularity_criterion(table: &SemigroupTable, a: u32, b: u32) -> bool {
    let alpha = &table.elements[a as usize];
    let beta = &table.elements[b as usize];
    let inst = &table.instance;
    inst.elem_ids().all(|x| {
        let xa = alpha.apply(x);
        inst.range()
            .elems()
            .iter()
            .any(|&y| beta.apply(alpha.apply(y)) == beta.apply(xa))
    })
}

/// Asserts the criterion matches direct Q membership of the product, for
/// every pair.
pub fn check_product_regularity(table: &SemigroupTable) -> Result<()> {
    let n = table.len() as u32;
    for a in 0..n {
        for b in 0..n {
            let predicted = product_regularity_criterion(table, a, b);
            let actual = table.q_mask[table.product(a, b) as usize];
            if predicted != actual {
                return Err(Error::CheckFailed(format!(
                    "product regularity criterion disagrees on pair ({a}, {b}) = ({}, {}): criterion {predicted}, membership {actual}",
                    table.elements[a as usize].label(),
                    table.elements[b as usize].label(),
                )));
            }
        }
    }
    Ok(())
}

/// rank(a*b) <= min(rank a, rank b) over all pairs.
pub fn check_rank_inequality(table: &SemigroupTable) -> Result<()> {
    let n = table.len() as u32;
    for a in 0..n {
        for b in 0..n {
            let ab = table.product(a, b) as usize;
            let bound = table.ranks[a as usize].min(table.ranks[b as usize]);
            if table.ranks[ab] > bound {
                return Err(Error::CheckFailed(format!(
                    "rank inequality fails on pair ({a}, {b}) = ({}, {})",
                    table.elements[a as usize].label(),
                    table.elements[b as usize].label(),
                )));
            }
        }
    }
    Ok(())
}

/// Table JSON emitted by the CLI.
#[derive(Serialize)]
pub struct TableJson {
    pub schema: &'static str,
    pub instance: String,
    pub element_count: usize,
    pub classification: Classification,
    pub elements: Vec<String>,
    pub q_mask: Vec<bool>,
    pub idem_mask: Vec<bool>,
}

impl SemigroupTable {
    pub fn to_json(&self) -> TableJson {
        TableJson {
            schema: crate::SCHEMA,
            instance: self.instance.to_json(),
            element_count: self.len(),
            classification: self.classification,
            elements: self.elements.iter().map(Endo::label).collect(),
            q_mask: self.q_mask.clone(),
            idem_mask: self.idem_mask.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(inst: AlgebraInstance) -> SemigroupTable {
        SemigroupTable::enumerate(Arc::new(inst), DEFAULT_CAP).unwrap()
    }

    #[test]
    fn set_3_2_has_eight_elements() {
        let t = table(AlgebraInstance::set(3, &[0, 1]).unwrap());
        assert_eq!(t.len(), 8);
        assert_eq!(t.q_indices().len(), 6);
        assert_eq!(t.len() - t.q_indices().len(), 2);
    }

    #[test]
    fn vec_2_2_counts() {
        let t = table(AlgebraInstance::vector_space(2, 2, &[vec![1, 0]]).unwrap());
        assert_eq!(t.len(), 4);
        assert_eq!(t.q_indices().len(), 3);
        // the unique non-regular element sends e1 to 0 and e2 to e1
        let qc: Vec<u32> = (0..t.len() as u32)
            .filter(|&i| !t.q_mask[i as usize])
            .collect();
        assert_eq!(qc.len(), 1);
        assert_eq!(
            t.elements[qc[0] as usize].repr(),
            &EndoRepr::Matrix(vec![vec![0, 0], vec![1, 0]])
        );
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let t = table(AlgebraInstance::set(3, &[0, 1]).unwrap());
        let reprs: Vec<Vec<u32>> = t
            .elements
            .iter()
            .map(|e| match e.repr() {
                EndoRepr::Map(m) => m.clone(),
                EndoRepr::Matrix(_) => unreachable!(),
            })
            .collect();
        let mut sorted = reprs.clone();
        sorted.sort();
        assert_eq!(reprs, sorted);
        assert_eq!(reprs[0], vec![0, 0, 0]);
        assert_eq!(reprs[7], vec![1, 1, 1]);
    }

    #[test]
    fn cap_is_enforced_with_exact_count() {
        let inst = Arc::new(AlgebraInstance::set(5, &[0, 1, 2]).unwrap());
        match SemigroupTable::enumerate(inst, 100) {
            Err(Error::CapExceeded { count, cap }) => {
                assert_eq!(count, 243);
                assert_eq!(cap, 100);
            }
            other => panic!("expected cap error, got {:?}", other.map(|t| t.len())),
        }
    }

    #[test]
    fn classification_criteria() {
        let full = classify_instance(&AlgebraInstance::set(3, &[0, 1, 2]).unwrap());
        assert!(full.monoid && full.regular);
        assert_eq!(full.class, InstanceClass::Monoid);

        let singleton = classify_instance(&AlgebraInstance::set(4, &[0]).unwrap());
        assert!(singleton.monoid && singleton.regular);

        let standing = classify_instance(&AlgebraInstance::set(3, &[0, 1]).unwrap());
        assert!(!standing.monoid && !standing.regular);
        assert_eq!(standing.class, InstanceClass::NonRegular);

        let vec_line =
            classify_instance(&AlgebraInstance::vector_space(2, 2, &[vec![1, 0]]).unwrap());
        assert_eq!(vec_line.class, InstanceClass::NonRegular);

        let vec_zero = classify_instance(&AlgebraInstance::vector_space(2, 2, &[]).unwrap());
        assert!(vec_zero.monoid && vec_zero.regular);
    }

    #[test]
    fn monoid_criterion_matches_brute_force() {
        for inst in [
            AlgebraInstance::set(3, &[0, 1, 2]).unwrap(),
            AlgebraInstance::set(4, &[0]).unwrap(),
            AlgebraInstance::set(3, &[0, 1]).unwrap(),
            AlgebraInstance::vector_space(2, 2, &[vec![1, 0]]).unwrap(),
        ] {
            let predicted = classify_instance(&inst).monoid;
            let t = table(inst);
            assert_eq!(t.has_identity_element(), predicted);
        }
    }

    #[test]
    fn q_structure_on_set_3_2() {
        let t = table(AlgebraInstance::set(3, &[0, 1]).unwrap());
        let report = check_q_structure(&t).unwrap();
        assert_eq!(report.q_size, 6);
        assert_eq!(report.inner_inverses.len(), 6);
        // with three elements and a 2-element range, collapsing the range
        // through an outside point already exists: (1,1,0) * (0,1,0)-like
        assert!(report.left_ideal_failure.is_some());
        check_q_three_definitions(&t).unwrap();
    }

    #[test]
    fn left_ideal_failure_found_on_codim_two() {
        let t = table(AlgebraInstance::set(4, &[0, 1]).unwrap());
        let report = check_q_structure(&t).unwrap();
        let (l, b) = report.left_ideal_failure.expect("witness expected");
        assert!(t.q_mask[b as usize]);
        assert!(!t.q_mask[t.product(l, b) as usize]);
    }

    #[test]
    fn product_regularity_exhaustive() {
        for inst in [
            AlgebraInstance::set(3, &[0, 1]).unwrap(),
            AlgebraInstance::vector_space(2, 2, &[vec![1, 0]]).unwrap(),
        ] {
            check_product_regularity(&table(inst)).unwrap();
        }
    }

    #[test]
    fn associativity_and_rank_inequality() {
        let t = table(AlgebraInstance::set(3, &[0, 1]).unwrap());
        t.check_associativity(100, 0, 0).unwrap();
        check_rank_inequality(&t).unwrap();
    }

    #[test]
    fn every_idempotent_is_in_q() {
        for inst in [
            AlgebraInstance::set(4, &[0, 1]).unwrap(),
            AlgebraInstance::vector_space(2, 3, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap(),
        ] {
            let t = table(inst);
            for i in 0..t.len() {
                if t.idem_mask[i] {
                    assert!(t.q_mask[i]);
                }
            }
        }
    }
}
