//! Constructive witnesses: each operation builds an explicit map (or
//! pair of maps) realising an existence statement, resolves every free
//! choice through the canonical element order so outputs are
//! reproducible, and machine-checks its own postcondition before
//! returning.

use crate::algebra::ElemId;
use crate::endo::{kernel_subset, Endo};
use crate::error::{Error, Result};
use crate::exgreens;
use crate::semigroup::SemigroupTable;

/// Greedy preimage basis: elements of `domain`, scanned in order, whose
/// images are independent and span the image of the domain.
fn preimage_basis(endo: &Endo, domain: &[ElemId]) -> Vec<ElemId> {
    let inst = endo.instance();
    let mut picked: Vec<ElemId> = Vec::new();
    let mut picked_images: Vec<ElemId> = Vec::new();
    let mut span = inst.span_of(&[]);
    for &x in domain {
        let fx = endo.apply(x);
        if !span.contains(fx) {
            picked.push(x);
            picked_images.push(fx);
            span = inst.span_of(&picked_images);
        }
    }
    picked
}

fn postcondition(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::CheckFailed(format!(
            "witness postcondition failed: {what}"
        )))
    }
}

/// For a non-regular map, a regular map with the same image. The range
/// basis is rerouted so that its leading elements hit a full preimage
/// basis of the image, and the outside basis keeps its original images.
pub fn regularize(table: &SemigroupTable, alpha: u32) -> Result<Endo> {
    let a = &table.elements[alpha as usize];
    if table.q_mask[alpha as usize] {
        return Err(Error::Precondition(
            "regularize needs a map outside Q".into(),
        ));
    }
    let inst = a.instance().clone();

    // preimage basis of the restriction to the range, then its extension
    // to a preimage basis of the whole image
    let range_part = preimage_basis(a, inst.range().elems());
    let mut full_part = range_part.clone();
    let mut images: Vec<ElemId> = full_part.iter().map(|&x| a.apply(x)).collect();
    let mut span = inst.span_of(&images);
    for x in inst.elem_ids() {
        let fx = a.apply(x);
        if !span.contains(fx) {
            full_part.push(x);
            images.push(fx);
            span = inst.span_of(&images);
        }
    }
    let extra = &full_part[range_part.len()..];

    let range_basis = inst.range().basis_ids(&inst);
    let needed = range_part.len() + extra.len();
    debug_assert!(needed <= range_basis.len());
    let outside = inst.extend_to_full_basis(&range_basis)?;
    let outside = &outside[range_basis.len()..];

    let mut basis: Vec<ElemId> = Vec::new();
    let mut targets: Vec<ElemId> = Vec::new();
    for (i, &rb) in range_basis.iter().enumerate() {
        basis.push(rb);
        if i < range_part.len() {
            targets.push(a.apply(range_part[i]));
        } else if i < needed {
            targets.push(a.apply(extra[i - range_part.len()]));
        } else {
            targets.push(a.apply(rb));
        }
    }
    for &z in outside {
        basis.push(z);
        targets.push(a.apply(z));
    }
    let out = Endo::from_basis_map(&inst, &basis, &targets)?;
    postcondition(out.is_in_q() && out.image() == a.image(), "regularize")?;
    Ok(out)
}

/// For a regular map of non-minimal rank, a non-regular map with the
/// same image: collapse the first preimage basis element into the
/// second's image (or to zero at rank one) and reinstate the missing
/// image point through the first outside basis element.
pub fn deregularize(table: &SemigroupTable, beta: u32) -> Result<Endo> {
    let b = &table.elements[beta as usize];
    if !table.q_mask[beta as usize] {
        return Err(Error::Precondition("deregularize needs a map in Q".into()));
    }
    let e = table.instance.min_rank();
    let r = table.ranks[beta as usize];
    if r <= e {
        return Err(Error::Precondition(
            "deregularize needs rank above the minimal rank".into(),
        ));
    }
    let inst = b.instance().clone();

    // a preimage basis inside the range exists because beta is regular
    let pre = preimage_basis(b, inst.range().elems());
    debug_assert_eq!(pre.len(), r);
    let values: Vec<ElemId> = pre.iter().map(|&x| b.apply(x)).collect();

    let range_basis = inst.extend_to_basis(&pre, inst.range())?;
    let full = inst.extend_to_full_basis(&range_basis)?;
    let outside = &full[range_basis.len()..];

    // fill target for collapsed positions: the second basis image, or
    // the zero constant when the rank is one (constants exist then)
    let filler = if r >= 2 { values[1] } else { 0 };

    let mut basis: Vec<ElemId> = Vec::new();
    let mut targets: Vec<ElemId> = Vec::new();
    for (i, &p) in range_basis.iter().enumerate() {
        basis.push(p);
        if i == 0 {
            targets.push(filler);
        } else if i < r {
            targets.push(values[i]);
        } else {
            targets.push(filler);
        }
    }
    for (i, &z) in outside.iter().enumerate() {
        basis.push(z);
        targets.push(if i == 0 { values[0] } else { filler });
    }
    let out = Endo::from_basis_map(&inst, &basis, &targets)?;
    postcondition(!out.is_in_q() && out.image() == b.image(), "deregularize")?;
    Ok(out)
}

/// Right divisor: mu with beta * mu = alpha, existing exactly when the
/// kernel of beta is contained in the kernel of alpha.
pub fn divide_right(table: &SemigroupTable, alpha: u32, beta: u32) -> Result<Endo> {
    let a = &table.elements[alpha as usize];
    let b = &table.elements[beta as usize];
    if !kernel_subset(b, a) {
        return Err(Error::Precondition(
            "divide_right needs ker(beta) contained in ker(alpha)".into(),
        ));
    }
    let inst = a.instance().clone();
    let all: Vec<ElemId> = inst.elem_ids().collect();
    let pre = preimage_basis(b, &all);
    let pre_images: Vec<ElemId> = pre.iter().map(|&x| b.apply(x)).collect();
    let rest = inst.extend_to_full_basis(&pre_images)?;
    let rest = &rest[pre_images.len()..];

    let mut basis: Vec<ElemId> = pre_images.clone();
    let mut targets: Vec<ElemId> = pre.iter().map(|&x| a.apply(x)).collect();
    for &x in rest {
        basis.push(x);
        targets.push(b.apply(x));
    }
    let out = Endo::from_basis_map(&inst, &basis, &targets)?;
    postcondition(b.compose(&out)? == *a, "divide_right")?;
    Ok(out)
}

/// Left divisor: lambda with lambda * beta = alpha, for beta in Q whose
/// image contains the image of alpha. Each preimage-basis element of
/// alpha is routed to the first range element beta sends to its image.
pub fn divide_left(table: &SemigroupTable, alpha: u32, beta: u32) -> Result<Endo> {
    let a = &table.elements[alpha as usize];
    let b = &table.elements[beta as usize];
    if !table.q_mask[beta as usize] {
        return Err(Error::Precondition("divide_left needs beta in Q".into()));
    }
    if !a.image().is_subset_of(&b.image()) {
        return Err(Error::Precondition(
            "divide_left needs im(alpha) contained in im(beta)".into(),
        ));
    }
    let inst = a.instance().clone();
    let all: Vec<ElemId> = inst.elem_ids().collect();
    let pre = preimage_basis(a, &all);

    // beta is in Q, so every image point of alpha has a range preimage
    let lift = |v: ElemId| -> Result<ElemId> {
        inst.range()
            .elems()
            .iter()
            .copied()
            .find(|&f| b.apply(f) == v)
            .ok_or_else(|| Error::CheckFailed("image point without range preimage".into()))
    };

    let full = inst.extend_to_full_basis(&pre)?;
    let mut targets: Vec<ElemId> = Vec::with_capacity(full.len());
    for (i, &x) in full.iter().enumerate() {
        if i < pre.len() {
            targets.push(lift(a.apply(x))?);
        } else {
            // express the image of x through the preimage basis and push
            // the same combination of the lifted elements
            let fx = a.apply(x);
            let lifted = lift_through_basis(a, &pre, fx, &targets[..pre.len()])?;
            targets.push(lifted);
        }
    }
    let out = Endo::from_basis_map(&inst, &full, &targets)?;
    postcondition(out.compose(b)? == *a, "divide_left")?;
    Ok(out)
}

/// Writes `value` as a term in the images of `pre` under `endo` and
/// evaluates the same term on `replacements`.
fn lift_through_basis(
    endo: &Endo,
    pre: &[ElemId],
    value: ElemId,
    replacements: &[ElemId],
) -> Result<ElemId> {
    let inst = endo.instance();
    if inst.is_set_model() {
        let i = pre
            .iter()
            .position(|&x| endo.apply(x) == value)
            .ok_or_else(|| Error::CheckFailed("value outside the preimage basis image".into()))?;
        Ok(replacements[i])
    } else {
        let p = inst.prime().unwrap();
        let basis_vecs: Vec<Vec<u8>> = pre
            .iter()
            .map(|&x| inst.vector(endo.apply(x)).to_vec())
            .collect();
        let coords = crate::algebra::gf::coords_in_basis(p, &basis_vecs, inst.vector(value))
            .ok_or_else(|| Error::CheckFailed("value outside the preimage basis span".into()))?;
        let mut acc = vec![0u8; inst.dim()];
        for (c, &r) in coords.iter().zip(replacements) {
            acc =
                crate::algebra::gf::add(p, &acc, &crate::algebra::gf::scale(p, *c, inst.vector(r)));
        }
        Ok(inst.vector_id(&acc))
    }
}

/// Two-sided factorisation: (lambda, mu) with lambda * beta * mu =
/// alpha, existing exactly when rank(alpha) is at most the restricted
/// rank of beta. `mu` is `None` when the identity suffices; a returned
/// mu always lies in Q.
pub fn factorize_through(
    table: &SemigroupTable,
    alpha: u32,
    beta: u32,
) -> Result<(Endo, Option<Endo>)> {
    let a = &table.elements[alpha as usize];
    let b = &table.elements[beta as usize];
    if table.ranks[alpha as usize] > table.range_ranks[beta as usize] {
        return Err(Error::Precondition(
            "factorize_through needs rank(alpha) <= rank(beta|range)".into(),
        ));
    }
    let inst = a.instance().clone();

    if table.ranks[alpha as usize] == 0 {
        // the zero map factors as alpha * beta with no right factor
        let out = (a.clone(), None);
        postcondition(a.compose(b)? == *a, "factorize_through rank zero")?;
        return Ok(out);
    }

    let all: Vec<ElemId> = inst.elem_ids().collect();
    // preimage basis of alpha over the whole algebra
    let pre_a = preimage_basis(a, &all);
    // matching count of range elements with independent beta-images
    let mut chosen: Vec<ElemId> = Vec::new();
    let mut chosen_images: Vec<ElemId> = Vec::new();
    let mut span = inst.span_of(&[]);
    for &f in inst.range().elems() {
        if chosen.len() == pre_a.len() {
            break;
        }
        let fb = b.apply(f);
        if !span.contains(fb) {
            chosen.push(f);
            chosen_images.push(fb);
            span = inst.span_of(&chosen_images);
        }
    }
    debug_assert_eq!(chosen.len(), pre_a.len());

    // lambda: preimage basis of alpha onto the chosen range elements,
    // other basis elements via the same term combination
    let full_a = inst.extend_to_full_basis(&pre_a)?;
    let mut lambda_targets: Vec<ElemId> = Vec::with_capacity(full_a.len());
    for (i, &x) in full_a.iter().enumerate() {
        if i < pre_a.len() {
            lambda_targets.push(chosen[i]);
        } else {
            lambda_targets.push(lift_through_basis(a, &pre_a, a.apply(x), &chosen)?);
        }
    }
    let lambda = Endo::from_basis_map(&inst, &full_a, &lambda_targets)?;

    // mu: the beta-images of the chosen elements back onto the images of
    // alpha, everything else to the first image point
    let alpha_images: Vec<ElemId> = pre_a.iter().map(|&x| a.apply(x)).collect();
    let full_m = inst.extend_to_full_basis(&chosen_images)?;
    let mut mu_targets: Vec<ElemId> = Vec::with_capacity(full_m.len());
    for (i, _) in full_m.iter().enumerate() {
        if i < chosen_images.len() {
            mu_targets.push(alpha_images[i]);
        } else {
            mu_targets.push(alpha_images[0]);
        }
    }
    let mu = Endo::from_basis_map(&inst, &full_m, &mu_targets)?;

    let product = lambda.compose(b)?.compose(&mu)?;
    postcondition(product == *a, "factorize_through")?;
    postcondition(mu.is_in_q(), "factorize_through mu in Q")?;
    Ok((lambda, Some(mu)))
}

/// Transfer along an image isomorphism: for maps of equal rank, returns
/// (gamma, mu) with im(gamma) = im(beta), ker(gamma) = ker(alpha) and
/// the dual for mu. The isomorphism matches canonical image bases in
/// order.
pub fn iso_transfer(table: &SemigroupTable, alpha: u32, beta: u32) -> Result<(Endo, Endo)> {
    let a = &table.elements[alpha as usize];
    let b = &table.elements[beta as usize];
    if table.ranks[alpha as usize] != table.ranks[beta as usize] {
        return Err(Error::Precondition("iso_transfer needs equal ranks".into()));
    }
    let inst = a.instance().clone();
    let im_a = a.image();
    let im_b = b.image();
    let basis_a = im_a.basis_ids(&inst);
    let basis_b = im_b.basis_ids(&inst);

    // gamma = alpha followed by the basis-matching isomorphism, built by
    // evaluating that composite on a full basis
    let transport = |src: &Endo, from: &[ElemId], to: &[ElemId]| -> Result<Endo> {
        let full = inst.extend_to_full_basis(&[])?;
        let mut tgt = Vec::with_capacity(full.len());
        for &x in &full {
            tgt.push(lift_between_bases(&inst, from, to, src.apply(x))?);
        }
        Endo::from_basis_map(&inst, &full, &tgt)
    };

    let gamma = transport(a, &basis_a, &basis_b)?;
    let mu = transport(b, &basis_b, &basis_a)?;

    postcondition(
        gamma.image() == im_b && gamma.kernel() == a.kernel(),
        "iso_transfer gamma",
    )?;
    postcondition(
        mu.image() == im_a && mu.kernel() == b.kernel(),
        "iso_transfer mu",
    )?;
    Ok((gamma, mu))
}

/// Image of `v` under the isomorphism sending the i-th `from` basis
/// element to the i-th `to` basis element.
fn lift_between_bases(
    inst: &std::sync::Arc<crate::algebra::AlgebraInstance>,
    from: &[ElemId],
    to: &[ElemId],
    v: ElemId,
) -> Result<ElemId> {
    if inst.is_set_model() {
        let i = from
            .iter()
            .position(|&x| x == v)
            .ok_or_else(|| Error::CheckFailed("element outside the source image".into()))?;
        Ok(to[i])
    } else {
        let p = inst.prime().unwrap();
        let basis_vecs: Vec<Vec<u8>> = from.iter().map(|&x| inst.vector(x).to_vec()).collect();
        let coords = crate::algebra::gf::coords_in_basis(p, &basis_vecs, inst.vector(v))
            .ok_or_else(|| Error::CheckFailed("vector outside the source image".into()))?;
        let mut acc = vec![0u8; inst.dim()];
        for (c, &r) in coords.iter().zip(to) {
            acc =
                crate::algebra::gf::add(p, &acc, &crate::algebra::gf::scale(p, *c, inst.vector(r)));
        }
        Ok(inst.vector_id(&acc))
    }
}

/// Left multiplier dropping the restricted rank: for alpha in Q and
/// e <= s < rank(alpha), a lambda with lambda * alpha outside Q and
/// restricted rank exactly s. Keeps s preimage basis elements fixed and
/// routes one more through the first outside basis element.
pub fn rank_drop_multiplier(table: &SemigroupTable, alpha: u32, s: usize) -> Result<Endo> {
    let a = &table.elements[alpha as usize];
    let inst = a.instance().clone();
    if !table.q_mask[alpha as usize] {
        return Err(Error::Precondition(
            "rank_drop_multiplier needs alpha in Q".into(),
        ));
    }
    let e = inst.min_rank();
    let r = table.ranks[alpha as usize];
    if s < e || s >= r {
        return Err(Error::Precondition(format!(
            "rank_drop_multiplier needs {e} <= s < {r}, got s = {s}"
        )));
    }
    if inst.codim() == 0 {
        return Err(Error::Precondition(
            "the range must be a proper subalgebra".into(),
        ));
    }

    let pre = preimage_basis(a, inst.range().elems());
    debug_assert_eq!(pre.len(), r);
    let kept = &pre[..s];
    let routed = pre[s];

    // kept elements extended to a range basis first, so no range element
    // picks up a component on the outside basis element
    let range_basis = inst.extend_to_basis(kept, inst.range())?;
    let full = inst.extend_to_full_basis(&range_basis)?;
    let z = full[range_basis.len()];
    let filler = if inst.has_constants() {
        0
    } else {
        kept[0] // s >= e = 1 in the set model
    };

    let mut targets: Vec<ElemId> = Vec::with_capacity(full.len());
    for (i, &x) in full.iter().enumerate() {
        if i < s {
            targets.push(x); // kept range elements fixed
        } else if x == z {
            targets.push(routed);
        } else {
            targets.push(filler);
        }
    }
    let lambda = Endo::from_basis_map(&inst, &full, &targets)?;
    let product = lambda.compose(a)?;
    postcondition(
        !product.is_in_q() && product.rank_on_range() == s,
        "rank_drop_multiplier",
    )?;
    Ok(lambda)
}

/// Exhaustive search for a middle map gamma with im(gamma) = im(a) and
/// gamma R*-related to b, i.e. a witness for `a L*∘R* b`.
pub fn composite_witness_search(table: &SemigroupTable, a: u32, b: u32) -> Option<u32> {
    // the left argument itself is tried first, so a reflexive query
    // returns its own witness
    std::iter::once(a).chain(0..table.len() as u32).find(|&g| {
        table.image_ids[g as usize] == table.image_ids[a as usize]
            && exgreens::rstar_related(table, g, b)
    })
}

/// Dual search for `a R*∘L* b`: a middle map delta R*-related to a with
/// im(delta) = im(b).
pub fn composite_witness_search_reversed(table: &SemigroupTable, a: u32, b: u32) -> Option<u32> {
    std::iter::once(b).chain(0..table.len() as u32).find(|&g| {
        exgreens::rstar_related(table, a, g)
            && table.image_ids[g as usize] == table.image_ids[b as usize]
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraInstance;
    use crate::semigroup::{SemigroupTable, DEFAULT_CAP};
    use std::sync::Arc;

    fn table(inst: AlgebraInstance) -> SemigroupTable {
        SemigroupTable::enumerate(Arc::new(inst), DEFAULT_CAP).unwrap()
    }

    fn t_set_3_2() -> SemigroupTable {
        table(AlgebraInstance::set(3, &[0, 1]).unwrap())
    }

    fn idx(t: &SemigroupTable, img: &[u32]) -> u32 {
        t.find(&Endo::from_map(&t.instance, img.to_vec()).unwrap())
            .unwrap()
    }

    fn midx(t: &SemigroupTable, rows: &[Vec<u8>]) -> u32 {
        t.find(&Endo::from_matrix(&t.instance, rows.to_vec()).unwrap())
            .unwrap()
    }

    #[test]
    fn regularize_fixed_output() {
        let t = t_set_3_2();
        let out = regularize(&t, idx(&t, &[0, 0, 1])).unwrap();
        assert_eq!(out, Endo::from_map(&t.instance, vec![0, 1, 1]).unwrap());
        assert!(matches!(
            regularize(&t, idx(&t, &[0, 1, 1])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn regularize_vector_model() {
        let t = table(AlgebraInstance::vector_space(2, 2, &[vec![1, 0]]).unwrap());
        let qc = midx(&t, &[vec![0, 0], vec![1, 0]]);
        let out = regularize(&t, qc).unwrap();
        assert!(out.is_in_q());
        assert_eq!(out.image(), t.elements[qc as usize].image());
    }

    #[test]
    fn deregularize_fixed_output() {
        let t = t_set_3_2();
        let out = deregularize(&t, idx(&t, &[0, 1, 1])).unwrap();
        assert!(!out.is_in_q());
        assert_eq!(out.image().elems(), &[0, 1]);
        // constants have minimal rank
        assert!(matches!(
            deregularize(&t, idx(&t, &[0, 0, 0])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn deregularize_vector_model_unique_target() {
        let t = table(AlgebraInstance::vector_space(2, 2, &[vec![1, 0]]).unwrap());
        let b = midx(&t, &[vec![1, 0], vec![0, 0]]);
        let out = deregularize(&t, b).unwrap();
        assert_eq!(
            out,
            Endo::from_matrix(&t.instance, vec![vec![0, 0], vec![1, 0]]).unwrap()
        );
    }

    #[test]
    fn divide_right_examples() {
        let t = t_set_3_2();
        // same kernel: a swap of the range values
        let beta = idx(&t, &[0, 1, 0]);
        let alpha = idx(&t, &[1, 0, 1]);
        let mu = divide_right(&t, alpha, beta).unwrap();
        assert_eq!(
            t.elements[beta as usize].compose(&mu).unwrap(),
            t.elements[alpha as usize]
        );
        // self-division always works
        divide_right(&t, beta, beta).unwrap();
        // incomparable kernels rejected
        assert!(matches!(
            divide_right(&t, idx(&t, &[0, 0, 1]), beta),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn divide_left_examples() {
        let t = t_set_3_2();
        let beta = idx(&t, &[0, 1, 1]);
        let alpha = idx(&t, &[0, 0, 0]);
        let lambda = divide_left(&t, alpha, beta).unwrap();
        assert_eq!(
            lambda.compose(&t.elements[beta as usize]).unwrap(),
            t.elements[alpha as usize]
        );
        divide_left(&t, beta, beta).unwrap();
        // beta outside Q rejected
        assert!(matches!(
            divide_left(&t, alpha, idx(&t, &[0, 0, 1])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn factorize_through_examples() {
        let t = t_set_3_2();
        let alpha = idx(&t, &[0, 1, 0]);
        let beta = idx(&t, &[0, 1, 1]);
        let (lambda, mu) = factorize_through(&t, alpha, beta).unwrap();
        let mu = mu.expect("rank above zero keeps a right factor");
        let product = lambda
            .compose(&t.elements[beta as usize])
            .unwrap()
            .compose(&mu)
            .unwrap();
        assert_eq!(product, t.elements[alpha as usize]);
        assert!(mu.is_in_q());
        // rank(alpha) above the restricted rank of beta
        assert!(matches!(
            factorize_through(&t, alpha, idx(&t, &[0, 0, 1])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn factorize_zero_rank_uses_identity_factor() {
        let t = table(AlgebraInstance::vector_space(2, 2, &[vec![1, 0]]).unwrap());
        let zero = midx(&t, &[vec![0, 0], vec![0, 0]]);
        let other = midx(&t, &[vec![1, 0], vec![0, 0]]);
        let (lambda, mu) = factorize_through(&t, zero, other).unwrap();
        assert!(mu.is_none());
        assert_eq!(lambda, t.elements[zero as usize]);
    }

    #[test]
    fn iso_transfer_examples() {
        let t = t_set_3_2();
        let alpha = idx(&t, &[0, 1, 0]);
        let beta = idx(&t, &[1, 1, 0]);
        let (gamma, mu) = iso_transfer(&t, alpha, beta).unwrap();
        assert_eq!(gamma.kernel(), t.elements[alpha as usize].kernel());
        assert_eq!(gamma.image(), t.elements[beta as usize].image());
        assert_eq!(mu.kernel(), t.elements[beta as usize].kernel());
        assert_eq!(mu.image(), t.elements[alpha as usize].image());
        // identity transfer
        let (g2, m2) = iso_transfer(&t, alpha, alpha).unwrap();
        assert_eq!(g2, t.elements[alpha as usize]);
        assert_eq!(m2, t.elements[alpha as usize]);
        assert!(matches!(
            iso_transfer(&t, alpha, idx(&t, &[0, 0, 0])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn rank_drop_examples() {
        let t = table(AlgebraInstance::set(4, &[0, 1]).unwrap());
        let alpha = t
            .find(&Endo::from_map(&t.instance, vec![0, 1, 1, 1]).unwrap())
            .unwrap();
        let lambda = rank_drop_multiplier(&t, alpha, 1).unwrap();
        let la = lambda.compose(&t.elements[alpha as usize]).unwrap();
        assert!(!la.is_in_q());
        assert_eq!(la.rank_on_range(), 1);
        // s = rank(alpha) out of range
        assert!(matches!(
            rank_drop_multiplier(&t, alpha, 2),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn rank_drop_vector_model() {
        let t = table(AlgebraInstance::vector_space(2, 2, &[vec![1, 0]]).unwrap());
        let alpha = midx(&t, &[vec![1, 0], vec![0, 0]]);
        let lambda = rank_drop_multiplier(&t, alpha, 0).unwrap();
        let la = lambda.compose(&t.elements[alpha as usize]).unwrap();
        assert!(!la.is_in_q());
        assert_eq!(la.rank_on_range(), 0);
    }

    #[test]
    fn regularize_deregularize_round_trip_preserves_image() {
        for inst in [
            AlgebraInstance::set(4, &[0, 1]).unwrap(),
            AlgebraInstance::vector_space(2, 3, &[vec![1, 0, 0]]).unwrap(),
        ] {
            let t = table(inst);
            for a in 0..t.len() as u32 {
                if t.q_mask[a as usize] {
                    continue;
                }
                let image = t.elements[a as usize].image();
                let reg = regularize(&t, a).unwrap();
                let reg_idx = t.find(&reg).unwrap();
                assert_eq!(reg.image(), image);
                let back = deregularize(&t, reg_idx).unwrap();
                assert_eq!(back.image(), image);
            }
        }
    }

    #[test]
    fn composite_search_reflexive() {
        let t = t_set_3_2();
        for a in 0..t.len() as u32 {
            // a itself witnesses a L*∘R* a and is returned as such
            assert_eq!(composite_witness_search(&t, a, a), Some(a));
        }
    }
}
