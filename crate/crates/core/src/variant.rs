//! The variant T_V^θ: T_V with the sandwich product `α ∗ β = α θ β`, its
//! regular part, the carrier semigroups and categories attached to θ, and
//! the representation `α ↦ (θα, αθ)`.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use crate::crossconn::{check_local_isomorphism, AxiomFailure, CrossConn, LinkedPair, SubspaceFunctor};
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::semigroup::{all_endos, Endo};
use crate::subspace::{enumerate_subspaces_on, Side, Subspace, SubspaceFilter};
use crate::table::{endo_table, find_isomorphism, EndoProduct, SemigroupTable};

/// A sandwich element θ with its null space, image, and the complement W of
/// the null space used for the image-side carrier.
#[derive(Debug, Clone)]
pub struct VariantContext {
    theta: Endo,
    complement: Subspace,
    complement_is_image: bool,
    all: Vec<Endo>,
}

impl VariantContext {
    pub fn new(theta: &Endo) -> Result<VariantContext> {
        let (n, p) = (theta.n(), theta.prime());
        if n > 3 || p.get() > 3 {
            return Err(Error::TooLarge(format!("variant of T_V over GF({p})^{n}")));
        }
        let complement_is_image = theta.kernel().is_complement_of(theta.image());
        let complement = if complement_is_image { theta.image().clone() } else { theta.kernel().canonical_complement() };
        Ok(VariantContext { theta: theta.clone(), complement, complement_is_image, all: all_endos(n, p)? })
    }

    pub fn theta(&self) -> &Endo {
        &self.theta
    }

    /// W, with `N_θ ⊕ W = V`.
    pub fn complement(&self) -> &Subspace {
        &self.complement
    }

    /// True when W is the image of θ.
    pub fn complement_is_image(&self) -> bool {
        self.complement_is_image
    }

    pub fn elements(&self) -> &[Endo] {
        &self.all
    }

    /// `α ∗ β = α θ β`.
    pub fn sandwich(&self, a: &Endo, b: &Endo) -> Endo {
        a.mul(&self.theta).mul(b)
    }

    /// The regular elements of the variant, each with the first `β` in
    /// element order such that `α ∗ β ∗ α = α`.
    pub fn reg_variant(&self) -> Vec<(Endo, Endo)> {
        let theta = self.theta.mat();
        // α θ β θ α only depends on β through θ β θ; keep the first β for each
        let mut middles: Vec<(Mat, usize)> = Vec::new();
        let mut seen = HashSet::new();
        for (i, b) in self.all.iter().enumerate() {
            let m = theta.mul_unchecked(b.mat()).mul_unchecked(theta);
            if seen.insert(m.clone()) {
                middles.push((m, i));
            }
        }
        self.all
            .par_iter()
            .filter_map(|a| {
                let x = a.mat();
                middles
                    .iter()
                    .filter(|(m, _)| &x.mul_unchecked(m).mul_unchecked(x) == x)
                    .map(|&(_, i)| i)
                    .min()
                    .map(|i| (a.clone(), self.all[i].clone()))
            })
            .collect()
    }

    /// `φ(α) = (θα, αθ)`.
    pub fn phi(&self, a: &Endo) -> LinkedPair {
        LinkedPair { first: self.theta.mul(a), second: a.mul(&self.theta) }
    }

    /// `Im(αθ) ⊆ Im θ` and `N_θ ⊆ N_{θα}` for every α.
    pub fn membership_laws(&self) -> bool {
        self.all.iter().all(|a| {
            let pair = self.phi(a);
            pair.second.image().is_subspace_of(self.theta.image()) && self.theta.kernel().is_subspace_of(pair.first.kernel())
        })
    }

    /// The image-side carrier `{f : Im f ⊆ W}`.
    pub fn image_carrier(&self) -> Vec<Endo> {
        self.all.iter().filter(|f| f.image().is_subspace_of(&self.complement)).cloned().collect()
    }

    /// The kernel-side carrier `{f : N_θ ⊆ N_f}`.
    pub fn kernel_carrier(&self) -> Vec<Endo> {
        self.all.iter().filter(|f| self.theta.kernel().is_subspace_of(f.kernel())).cloned().collect()
    }

    /// Objects of R(V): the proper subspaces of W.
    pub fn r_objects(&self) -> Result<Vec<Subspace>> {
        let (n, p) = (self.theta.n(), self.theta.prime());
        Ok(enumerate_subspaces_on(n, p, Side::Primal, SubspaceFilter::Proper)?
            .into_iter()
            .filter(|a| a.is_subspace_of(&self.complement))
            .collect())
    }

    /// Objects of B(V): the proper annihilators of the subspaces containing
    /// N_θ.
    pub fn b_objects(&self) -> Result<Vec<Subspace>> {
        let (n, p) = (self.theta.n(), self.theta.prime());
        let mut objs: Vec<Subspace> = enumerate_subspaces_on(n, p, Side::Primal, SubspaceFilter::All)?
            .into_iter()
            .filter(|a| self.theta.kernel().is_subspace_of(a))
            .map(|a| a.annihilator())
            .filter(Subspace::is_proper)
            .collect();
        objs.sort();
        Ok(objs)
    }

    pub fn variant_categories(&self) -> Result<VariantCategories> {
        let image_carrier = self.image_carrier();
        let kernel_carrier = self.kernel_carrier();
        let image_table = endo_table(&image_carrier, &EndoProduct::Plain)?;
        let kernel_table = endo_table(&kernel_carrier, &EndoProduct::Reversed)?;
        Ok(VariantCategories {
            r_objects: self.r_objects()?,
            b_objects: self.b_objects()?,
            image_regular: image_table.regular_elements().into_iter().map(|(i, _)| image_carrier[i].clone()).collect(),
            kernel_regular: kernel_table.regular_elements().into_iter().map(|(i, _)| kernel_carrier[i].clone()).collect(),
            image_carrier,
            kernel_carrier,
            image_table,
            kernel_table,
        })
    }

    /// The functors `A ↦ Aθ` on R(V) and `A° ↦ A° θᵀ` on B(V), the
    /// semigroup φ(Reg) and its comparison with (Reg, ∗).
    pub fn variant_crossconnection(&self) -> Result<VariantCrossConn> {
        let (n, p) = (self.theta.n(), self.theta.prime());
        let reg: Vec<Endo> = self.reg_variant().into_iter().map(|(a, _)| a).collect();
        let reg_table = endo_table(&reg, &EndoProduct::Sandwich(self.theta.mat().clone()));
        let reg_closed = reg_table.is_ok();
        let reg_table = reg_table?;

        let pairs: Vec<LinkedPair> = reg.iter().map(|a| self.phi(a)).collect();
        let phi_injective = pairs.iter().collect::<HashSet<_>>().len() == pairs.len();
        let phi_homomorphism = self.all.par_iter().all(|a| {
            self.all.iter().all(|b| {
                let (x, y) = (self.phi(a), self.phi(b));
                self.phi(&self.sandwich(a, b)) == LinkedPair { first: x.first.mul(&y.first), second: x.second.mul(&y.second) }
            })
        });
        let labels = pairs.iter().map(|x| format!("({} | {})", x.first, x.second)).collect();
        let pair_table = SemigroupTable::from_product(&pairs, labels, |x, y| LinkedPair {
            first: x.first.mul(&y.first),
            second: x.second.mul(&y.second),
        })?;
        let identity: Vec<usize> = (0..reg.len()).collect();
        let phi_isomorphism = phi_injective && reg_table.is_isomorphism(&pair_table, &identity);
        let isomorphism = find_isomorphism(&reg_table, &pair_table);

        let primal = enumerate_subspaces_on(n, p, Side::Primal, SubspaceFilter::Proper)?;
        let dual = enumerate_subspaces_on(n, p, Side::Dual, SubspaceFilter::Proper)?;
        let delta = CrossConn::induced(self.r_objects()?, primal, self.theta.mat().clone(), Some(self.theta.clone()));
        let gamma = CrossConn::induced(self.b_objects()?, dual, self.theta.mat().transpose(), Some(self.theta.clone()));
        let surjective = |f: &CrossConn| -> Result<bool> {
            let hit: HashSet<Subspace> = f.source().iter().map(|a| f.object(a)).collect::<Result<_>>()?;
            Ok(f.target().iter().all(|b| hit.contains(b)))
        };

        Ok(VariantCrossConn {
            reg_size: reg.len(),
            reg_closed,
            phi_injective,
            phi_homomorphism,
            phi_isomorphism,
            isomorphism,
            delta_failure: check_local_isomorphism(&delta)?,
            gamma_failure: check_local_isomorphism(&gamma)?,
            delta_object_surjective: surjective(&delta)?,
            gamma_object_surjective: surjective(&gamma)?,
        })
    }

    /// Carrier elements that are not images of regular elements: on the image
    /// side `{αθ}`, on the kernel side `{θα}`.
    pub fn nonprincipal_cones(&self) -> NonPrincipal {
        let reg: Vec<Endo> = self.reg_variant().into_iter().map(|(a, _)| a).collect();
        let excess = |carrier: Vec<Endo>, principal: Vec<Endo>| {
            let mut principal: Vec<Endo> = principal.into_iter().collect::<HashSet<_>>().into_iter().collect();
            principal.sort();
            let set: HashSet<&Endo> = principal.iter().collect();
            let carrier_set: HashSet<&Endo> = carrier.iter().collect();
            Excess {
                principal_in_carrier: principal.iter().all(|x| carrier_set.contains(x)),
                excess: carrier.iter().filter(|x| !set.contains(x)).cloned().collect(),
                carrier_size: carrier.len(),
                principal,
            }
        };
        NonPrincipal {
            image_side: excess(self.image_carrier(), reg.iter().map(|a| a.mul(&self.theta)).collect()),
            kernel_side: excess(self.kernel_carrier(), reg.iter().map(|a| self.theta.mul(a)).collect()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VariantCategories {
    pub r_objects: Vec<Subspace>,
    pub b_objects: Vec<Subspace>,
    pub image_carrier: Vec<Endo>,
    pub kernel_carrier: Vec<Endo>,
    /// Plain product on the image-side carrier.
    pub image_table: SemigroupTable,
    /// Reversed product on the kernel-side carrier.
    pub kernel_table: SemigroupTable,
    /// Elements regular inside the image-side carrier.
    pub image_regular: Vec<Endo>,
    pub kernel_regular: Vec<Endo>,
}

#[derive(Debug, Clone)]
pub struct VariantCrossConn {
    pub reg_size: usize,
    pub reg_closed: bool,
    pub phi_injective: bool,
    pub phi_homomorphism: bool,
    /// φ itself is an isomorphism of (Reg, ∗) onto φ(Reg).
    pub phi_isomorphism: bool,
    /// An isomorphism found by search between the two tables.
    pub isomorphism: Option<Vec<usize>>,
    pub delta_failure: Option<AxiomFailure>,
    pub gamma_failure: Option<AxiomFailure>,
    pub delta_object_surjective: bool,
    pub gamma_object_surjective: bool,
}

#[derive(Debug, Clone)]
pub struct Excess {
    pub carrier_size: usize,
    pub principal: Vec<Endo>,
    pub excess: Vec<Endo>,
    pub principal_in_carrier: bool,
}

#[derive(Debug, Clone)]
pub struct NonPrincipal {
    pub image_side: Excess,
    pub kernel_side: Excess,
}

/// Reference regularity search straight from the definition, used to check
/// [`VariantContext::reg_variant`].
pub fn reg_by_definition(ctx: &VariantContext) -> Vec<(usize, usize)> {
    let mats: Vec<Mat> = ctx.elements().iter().map(|e| e.mat().clone()).collect();
    let theta = ctx.theta.mat();
    crate::semigroup::regular_elements(&mats, |a, b| a.mul_unchecked(theta).mul_unchecked(b))
}

/// Index of each element of `elems` in T_V order.
pub fn positions(ctx: &VariantContext, elems: &[Endo]) -> Vec<usize> {
    let index: HashMap<&Endo, usize> = ctx.elements().iter().enumerate().map(|(i, e)| (e, i)).collect();
    elems.iter().map(|e| index[e]).collect()
}
