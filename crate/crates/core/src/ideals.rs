//! The ideal calculus: rank-bounded ideals T_k, the kernel-containment
//! right ideal K(S), the least strict rank bound r(S), the two-form
//! ideal theorem checker, the ideal chain of the regular part Q, and the
//! incomparable-pair construction.

use crate::algebra::{Cardinal, ElemId, Finite};
use crate::endo::{kernel_subset, Endo};
use crate::error::{Error, Result};
use crate::oracle;
use crate::semigroup::SemigroupTable;
use serde::Serialize;

/// Descriptor of an ideal given by one of the structured recipes; the
/// extension is checked to be two-sided closed on construction.
#[derive(Debug, Clone, Serialize)]
pub struct IdealDescriptor {
    pub kind: IdealKind,
    pub extension: Vec<u32>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum IdealKind {
    /// All maps of rank strictly below k.
    Tk { k: Cardinal },
    /// All maps of Q with rank strictly below r.
    Qr { r: Cardinal },
    /// The theorem form T_{r(S)} ∪ K(S), or its successor variant.
    Form { s: Vec<u32>, successor: bool },
}

impl IdealDescriptor {
    pub fn new(table: &SemigroupTable, kind: IdealKind) -> Result<IdealDescriptor> {
        let extension = match &kind {
            IdealKind::Tk { k } => t_k(table, *k),
            IdealKind::Qr { r } => q_r(table, *r),
            IdealKind::Form { s, successor } => {
                let r = r_of_s(table, s)?;
                let bound = if *successor { r.succ() } else { r };
                union_sorted(&t_k(table, bound), &k_of_s(table, s))
            }
        };
        // Q_r is an ideal of the subsemigroup Q, not of the whole table.
        let closed = match &kind {
            IdealKind::Qr { .. } => is_ideal_of_q(table, &extension),
            _ => oracle::is_ideal(table, &extension),
        };
        if !closed {
            return Err(Error::CheckFailed(format!(
                "descriptor {kind:?} produced a set that is not closed: {extension:?}"
            )));
        }
        Ok(IdealDescriptor { kind, extension })
    }
}

/// All elements of rank strictly below `k`.
pub fn t_k(table: &SemigroupTable, k: Cardinal) -> Vec<u32> {
    (0..table.len() as u32)
        .filter(|&i| Finite(table.ranks[i as usize] as u64) < k)
        .collect()
}

/// All elements of Q of rank strictly below `r`.
pub fn q_r(table: &SemigroupTable, r: Cardinal) -> Vec<u32> {
    (0..table.len() as u32)
        .filter(|&i| table.q_mask[i as usize] && Finite(table.ranks[i as usize] as u64) < r)
        .collect()
}

/// Least cardinal strictly above the range-restricted rank of every
/// element of `s`; finite instances give max + 1.
pub fn r_of_s(table: &SemigroupTable, s: &[u32]) -> Result<Cardinal> {
    if s.is_empty() {
        return Err(Error::Precondition("r(S) needs a nonempty S".into()));
    }
    let max = s
        .iter()
        .map(|&i| table.range_ranks[i as usize])
        .max()
        .unwrap();
    Ok(Finite(max as u64 + 1))
}

/// K(S) by kernel containment: all maps whose kernel contains the kernel
/// of some member of `s`. The right-divisibility route (products of
/// members with arbitrary elements) must produce the same set, and does;
/// the two routes are compared on every call.
pub fn k_of_s(table: &SemigroupTable, s: &[u32]) -> Vec<u32> {
    let by_kernel: Vec<u32> = (0..table.len() as u32)
        .filter(|&b| {
            s.iter()
                .any(|&a| kernel_subset(&table.elements[a as usize], &table.elements[b as usize]))
        })
        .collect();
    let mut by_products: Vec<u32> = Vec::new();
    for &a in s {
        for m in 0..table.len() as u32 {
            by_products.push(table.product(a, m));
        }
        by_products.push(a);
    }
    by_products.sort_unstable();
    by_products.dedup();
    assert_eq!(
        by_kernel, by_products,
        "kernel-containment and product routes disagree"
    );
    by_kernel
}

fn union_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = a.to_vec();
    out.extend_from_slice(b);
    out.sort_unstable();
    out.dedup();
    out
}

fn is_ideal_of_q(table: &SemigroupTable, set: &[u32]) -> bool {
    if set.is_empty() || set.iter().any(|&i| !table.q_mask[i as usize]) {
        return false;
    }
    set.iter().all(|&a| {
        table.q_indices().iter().all(|&x| {
            set.binary_search(&table.product(a, x)).is_ok()
                && set.binary_search(&table.product(x, a)).is_ok()
        })
    })
}

/// Which of the two theorem forms an ideal matches.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremFormReport {
    /// The generating set used: the non-regular part of the ideal, or
    /// the whole ideal when it has no non-regular part.
    pub s: Vec<u32>,
    pub r: Cardinal,
    pub matches_r_form: bool,
    pub matches_r_succ_form: bool,
}

/// Tests an ideal against the two closed forms T_{r(S)} ∪ K(S) and
/// T_{r(S)^+} ∪ K(S). Reports every form that matches; failing both
/// would falsify the ideal theorem at this scale and is an error.
pub fn theorem_form_check(table: &SemigroupTable, ideal: &[u32]) -> Result<TheoremFormReport> {
    if !oracle::is_ideal(table, ideal) {
        return Err(Error::Precondition(
            "theorem_form_check input is not an ideal".into(),
        ));
    }
    let non_regular: Vec<u32> = ideal
        .iter()
        .copied()
        .filter(|&i| !table.q_mask[i as usize])
        .collect();
    // An ideal inside Q is the minimal ideal; the theorem's proof then
    // takes S to be the ideal itself.
    let s = if non_regular.is_empty() {
        ideal.to_vec()
    } else {
        non_regular
    };
    let r = r_of_s(table, &s)?;
    let k = k_of_s(table, &s);
    let candidate_r = union_sorted(&t_k(table, r), &k);
    let candidate_succ = union_sorted(&t_k(table, r.succ()), &k);
    let sorted_ideal = {
        let mut v = ideal.to_vec();
        v.sort_unstable();
        v
    };
    let matches_r_form = candidate_r == sorted_ideal;
    let matches_r_succ_form = candidate_succ == sorted_ideal;
    if !matches_r_form && !matches_r_succ_form {
        return Err(Error::CheckFailed(format!(
            "ideal {sorted_ideal:?} matches neither form: T_r∪K = {candidate_r:?}, T_r+∪K = {candidate_succ:?} (r = {r})"
        )));
    }
    Ok(TheoremFormReport {
        s,
        r,
        matches_r_form,
        matches_r_succ_form,
    })
}

/// One step of the ideal chain of Q.
#[derive(Debug, Clone, Serialize)]
pub struct QChainStep {
    pub r: Cardinal,
    pub elements: Vec<u32>,
}

/// Enumerates all ideals of the subsemigroup Q by closing its principal
/// ideals under union, and checks they are exactly the rank-bounded sets
/// Q_r, forming a chain.
pub fn q_ideal_chain(table: &SemigroupTable) -> Result<Vec<QChainStep>> {
    let q = table.q_indices();
    let mut principal: Vec<Vec<u32>> = Vec::new();
    for &a in &q {
        let mut p = vec![a];
        for &x in &q {
            p.push(table.product(a, x));
            p.push(table.product(x, a));
            for &y in &q {
                p.push(table.product(table.product(x, a), y));
            }
        }
        p.sort_unstable();
        p.dedup();
        if !principal.contains(&p) {
            principal.push(p);
        }
    }
    if principal.len() > 20 {
        return Err(Error::TooManyPrincipalIdeals {
            count: principal.len(),
            max: 20,
        });
    }
    let mut ideals: Vec<Vec<u32>> = Vec::new();
    for mask in 1u64..(1 << principal.len()) {
        let mut u: Vec<u32> = Vec::new();
        for (i, p) in principal.iter().enumerate() {
            if mask >> i & 1 == 1 {
                u.extend_from_slice(p);
            }
        }
        u.sort_unstable();
        u.dedup();
        if !ideals.contains(&u) {
            ideals.push(u);
        }
    }
    ideals.sort_by_key(Vec::len);

    let e = table.instance.min_rank() as u64;
    let dim_b = table.instance.range_dim() as u64;
    let mut steps = Vec::new();
    for ideal in &ideals {
        let r = (e + 1..=dim_b + 1)
            .map(Finite)
            .find(|&r| q_r(table, r) == *ideal)
            .ok_or_else(|| {
                Error::CheckFailed(format!("ideal of Q is not of the form Q_r: {ideal:?}"))
            })?;
        steps.push(QChainStep {
            r,
            elements: ideal.clone(),
        });
    }
    for w in steps.windows(2) {
        if !w[0]
            .elements
            .iter()
            .all(|x| w[1].elements.binary_search(x).is_ok())
        {
            return Err(Error::CheckFailed("ideals of Q do not form a chain".into()));
        }
    }
    Ok(steps)
}

/// Outcome of the incomparable-pair construction.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum IncomparableOutcome {
    Pair {
        alpha: u32,
        beta: u32,
        ideal_alpha: Vec<u32>,
        ideal_beta: Vec<u32>,
    },
    NotApplicable {
        reason: String,
    },
}

/// Builds two incomparable ideals when the instance allows it.
///
/// With codimension at least 2, two maps singling out distinct outside
/// basis elements (everything else collapsed to a fixed range point, or
/// to zero) have incomparable kernels and equal rank data. With
/// codimension 1 the same effect needs a larger range: collapse one
/// range basis element and reinstate it through the outside basis
/// element, which requires three independent range elements in the set
/// model or two plus the zero constant in the vector model. Outside
/// these cases the ideal lattice is a chain and the construction is not
/// applicable.
pub fn incomparable_pair(table: &SemigroupTable) -> Result<IncomparableOutcome> {
    let inst = &table.instance;
    let range_basis = inst.range().basis_ids(inst);
    let k = inst.range_dim();
    let codim = inst.codim();
    let full = inst.extend_to_full_basis(&range_basis)?;
    let outside: Vec<ElemId> = full[range_basis.len()..].to_vec();

    let two_outside_applies = codim >= 2 && if inst.is_set_model() { k >= 2 } else { k >= 1 };
    let collapse_applies = codim >= 1 && if inst.is_set_model() { k >= 3 } else { k >= 2 };

    let (alpha, beta) = if two_outside_applies {
        let (b1, b2) = if inst.is_set_model() {
            (range_basis[0], range_basis[1])
        } else {
            (range_basis[0], 0) // the zero constant absorbs the rest
        };
        let build = |special: ElemId| -> Result<u32> {
            let targets: Vec<ElemId> = full
                .iter()
                .map(|&v| if v == special { b1 } else { b2 })
                .collect();
            let endo = Endo::from_basis_map(inst, &full, &targets)?;
            table
                .find(&endo)
                .ok_or_else(|| Error::CheckFailed("constructed map missing".into()))
        };
        (build(outside[0])?, build(outside[1])?)
    } else if collapse_applies {
        // collapse the chosen range basis element (into the first one,
        // or to zero), keep the rest of the range basis fixed, and remap
        // the first outside element onto the collapsed one
        let collapse_target = if inst.is_set_model() {
            range_basis[0]
        } else {
            0
        };
        let filler = collapse_target;
        let x1 = outside[0];
        let build = |collapsed: ElemId| -> Result<u32> {
            let targets: Vec<ElemId> = full
                .iter()
                .map(|&v| {
                    if v == collapsed {
                        collapse_target
                    } else if v == x1 {
                        collapsed
                    } else if range_basis.contains(&v) {
                        v
                    } else {
                        filler
                    }
                })
                .collect();
            let endo = Endo::from_basis_map(inst, &full, &targets)?;
            table
                .find(&endo)
                .ok_or_else(|| Error::CheckFailed("constructed map missing".into()))
        };
        if inst.is_set_model() {
            (build(range_basis[1])?, build(range_basis[2])?)
        } else {
            (build(range_basis[1])?, build(range_basis[0])?)
        }
    } else {
        return Ok(IncomparableOutcome::NotApplicable {
            reason: "the range is too small for either construction; the lattice is a chain".into(),
        });
    };

    let ideal_of = |gen: u32| -> Result<Vec<u32>> {
        let desc = IdealDescriptor::new(
            table,
            IdealKind::Form {
                s: vec![gen],
                successor: false,
            },
        )?;
        Ok(desc.extension)
    };
    let ideal_alpha = ideal_of(alpha)?;
    let ideal_beta = ideal_of(beta)?;

    let a_in_a = ideal_alpha.binary_search(&alpha).is_ok();
    let a_in_b = ideal_beta.binary_search(&alpha).is_ok();
    let b_in_b = ideal_beta.binary_search(&beta).is_ok();
    let b_in_a = ideal_alpha.binary_search(&beta).is_ok();
    if !(a_in_a && b_in_b && !a_in_b && !b_in_a) {
        return Err(Error::CheckFailed(format!(
            "constructed ideals are comparable: alpha {alpha}, beta {beta}"
        )));
    }
    Ok(IncomparableOutcome::Pair {
        alpha,
        beta,
        ideal_alpha,
        ideal_beta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraInstance;
    use crate::semigroup::DEFAULT_CAP;
    use std::sync::Arc;

    fn table(inst: AlgebraInstance) -> SemigroupTable {
        SemigroupTable::enumerate(Arc::new(inst), DEFAULT_CAP).unwrap()
    }

    fn t_set_3_2() -> SemigroupTable {
        table(AlgebraInstance::set(3, &[0, 1]).unwrap())
    }

    fn idx(t: &SemigroupTable, img: &[u32]) -> u32 {
        let e = Endo::from_map(&t.instance, img.to_vec()).unwrap();
        t.find(&e).unwrap()
    }

    #[test]
    fn r_of_s_examples() {
        let t = t_set_3_2();
        assert_eq!(r_of_s(&t, &[idx(&t, &[0, 0, 1])]).unwrap(), Finite(2));
        let whole: Vec<u32> = (0..t.len() as u32).collect();
        assert_eq!(r_of_s(&t, &whole).unwrap(), Finite(3));
        assert!(r_of_s(&t, &[]).is_err());

        let tv = table(AlgebraInstance::vector_space(2, 2, &[vec![1, 0]]).unwrap());
        assert_eq!(r_of_s(&tv, &[0]).unwrap(), Finite(1)); // the zero map
    }

    #[test]
    fn t_k_is_self_describing() {
        // r(T_k) recovers k: idempotents of every smaller rank exist
        let t = t_set_3_2();
        for k in 2..=3u64 {
            let tk = t_k(&t, Finite(k));
            assert_eq!(r_of_s(&t, &tk).unwrap(), Finite(k));
        }
    }

    #[test]
    fn k_of_s_examples() {
        let t = t_set_3_2();
        let s = vec![idx(&t, &[0, 0, 1])];
        let k = k_of_s(&t, &s);
        let expected: Vec<u32> = {
            let mut v: Vec<u32> = [[0, 0, 0], [0, 0, 1], [1, 1, 0], [1, 1, 1]]
                .iter()
                .map(|i| idx(&t, i))
                .collect();
            v.sort_unstable();
            v
        };
        assert_eq!(k, expected);
        // whole semigroup is reproduced
        let whole: Vec<u32> = (0..t.len() as u32).collect();
        assert_eq!(k_of_s(&t, &whole), whole);
        // right ideal: closed under right multiplication
        for &b in &k {
            for x in 0..t.len() as u32 {
                assert!(k.binary_search(&t.product(b, x)).is_ok());
            }
        }
    }

    #[test]
    fn theorem_form_on_the_three_ideals_of_set_3_2() {
        let t = t_set_3_2();
        let ideals = oracle::oracle_ideals(&t, 16).unwrap();
        assert_eq!(ideals.len(), 3);
        // the 4-element ideal matches T_2 ∪ K(S) with S its non-regular part
        let four = &ideals[1];
        let report = theorem_form_check(&t, four).unwrap();
        assert_eq!(report.r, Finite(2));
        assert!(report.matches_r_form);
        let mut s_expected = vec![idx(&t, &[0, 0, 1]), idx(&t, &[1, 1, 0])];
        s_expected.sort_unstable();
        assert_eq!(report.s, s_expected);
        // the minimal ideal goes through the S = I fallback
        let minimal = &ideals[0];
        let rep = theorem_form_check(&t, minimal).unwrap();
        assert_eq!(rep.s, *minimal);
        assert!(rep.matches_r_form || rep.matches_r_succ_form);
        // the whole semigroup matches one form or the other
        let whole = theorem_form_check(&t, &ideals[2]).unwrap();
        assert!(whole.matches_r_form || whole.matches_r_succ_form);
    }

    #[test]
    fn non_ideal_input_is_rejected() {
        let t = t_set_3_2();
        let err = theorem_form_check(&t, &[idx(&t, &[0, 1, 0])]);
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn q_chain_on_set_3_2() {
        let t = t_set_3_2();
        let steps = q_ideal_chain(&t).unwrap();
        assert_eq!(steps.len(), 2);
        assert_eq!(steps[0].r, Finite(2));
        assert_eq!(steps[0].elements, t.min_rank_indices());
        assert_eq!(steps[1].r, Finite(3));
        assert_eq!(steps[1].elements, t.q_indices());
    }

    #[test]
    fn q_chain_on_vec_2_2() {
        let t = table(AlgebraInstance::vector_space(2, 2, &[vec![1, 0]]).unwrap());
        let steps = q_ideal_chain(&t).unwrap();
        assert_eq!(steps.len(), 2);
        assert_eq!(steps[0].elements, vec![0]); // the zero map
        assert_eq!(steps[1].elements, t.q_indices());
    }

    #[test]
    fn every_q_r_is_an_ideal_of_q() {
        let t = t_set_3_2();
        let e = t.instance.min_rank() as u64;
        for r in e + 1..=t.instance.range_dim() as u64 + 1 {
            IdealDescriptor::new(&t, IdealKind::Qr { r: Finite(r) }).unwrap();
        }
    }

    #[test]
    fn incomparable_pair_on_set_4_2() {
        let t = table(AlgebraInstance::set(4, &[0, 1]).unwrap());
        match incomparable_pair(&t).unwrap() {
            IncomparableOutcome::Pair {
                alpha,
                beta,
                ideal_alpha,
                ideal_beta,
            } => {
                assert!(ideal_alpha.binary_search(&alpha).is_ok());
                assert!(ideal_beta.binary_search(&beta).is_ok());
                assert!(ideal_alpha.binary_search(&beta).is_err());
                assert!(ideal_beta.binary_search(&alpha).is_err());
                // both pass the theorem checker
                theorem_form_check(&t, &ideal_alpha).unwrap();
                theorem_form_check(&t, &ideal_beta).unwrap();
            }
            IncomparableOutcome::NotApplicable { reason } => {
                panic!("expected a pair, got not-applicable: {reason}")
            }
        }
    }

    #[test]
    fn incomparable_pair_not_applicable_on_set_3_2() {
        let t = t_set_3_2();
        assert!(matches!(
            incomparable_pair(&t).unwrap(),
            IncomparableOutcome::NotApplicable { .. }
        ));
    }

    #[test]
    fn incomparable_pair_on_vec_2_3_1() {
        let t = table(AlgebraInstance::vector_space(2, 3, &[vec![1, 0, 0]]).unwrap());
        assert!(matches!(
            incomparable_pair(&t).unwrap(),
            IncomparableOutcome::Pair { .. }
        ));
    }
}
