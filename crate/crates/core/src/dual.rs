//! H-functors of the subspace category, natural transformations between
//! them, and their realization by annihilators in V*.

use std::collections::HashSet;

use crate::cones::{SubspaceCategory, MAX_CONE_TABLE};
use crate::error::{Error, Result};
use crate::field::Prime;
use crate::matrix::Mat;
use crate::semigroup::{idempotent_from, singular_endos, Endo};
use crate::subspace::{enumerate_subspaces_on, Morphism, Side, Subspace, SubspaceFilter};
use crate::table::{endo_table, EndoProduct, SemigroupTable};

/// The functor `H(e;-)`, stored by the null space of `e` together with a
/// canonical idempotent having that null space.
#[derive(Debug, Clone)]
pub struct HFunctor {
    key: Subspace,
    witness: Endo,
}

impl PartialEq for HFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for HFunctor {}

impl HFunctor {
    /// The H-functor with null space `key`, which must be nonzero.
    pub fn new(key: &Subspace) -> Result<HFunctor> {
        if key.side() != Side::Primal || key.is_zero() {
            return Err(Error::NotSingular);
        }
        let witness = idempotent_from(key, &key.canonical_complement())?;
        Ok(HFunctor { key: key.clone(), witness })
    }

    pub fn from_idempotent(e: &Endo) -> Result<HFunctor> {
        check_singular_idempotent(e)?;
        HFunctor::new(e.kernel())
    }

    pub fn key(&self) -> &Subspace {
        &self.key
    }

    pub fn witness(&self) -> &Endo {
        &self.witness
    }

    /// Image under P: the annihilator of the key.
    pub fn annihilator(&self) -> Subspace {
        self.key.annihilator()
    }

    /// Proper subspaces A with `A ⊕ N_e = V`.
    pub fn m_set(&self) -> Result<Vec<Subspace>> {
        Ok(self.key.all_complements()?.into_iter().filter(Subspace::is_proper).collect())
    }
}

fn check_singular_idempotent(e: &Endo) -> Result<()> {
    if !e.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    if !e.is_singular() {
        return Err(Error::NotSingular);
    }
    Ok(())
}

/// `H(e;A) = {a ∈ Sing(V) : N_a ⊇ N_e, Va ⊆ A}`, filtered from `sing`.
pub fn h_set(e: &Endo, a: &Subspace, sing: &[Endo]) -> Result<Vec<Endo>> {
    check_singular_idempotent(e)?;
    Ok(sing
        .iter()
        .filter(|x| e.kernel().is_subspace_of(x.kernel()) && x.image().is_subspace_of(a))
        .cloned()
        .collect())
}

/// `H(e;A) = {e h : h: Im e -> A}`, built from the morphisms out of Im e.
pub fn h_set_by_factoring(e: &Endo, a: &Subspace) -> Result<Vec<Endo>> {
    check_singular_idempotent(e)?;
    let mut out: Vec<Endo> = Morphism::all_between(e.image(), a)?.iter().map(|h| through(e, h)).collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// The transformation `v ↦ h(v x)` for a morphism `h` defined on Im x.
fn through(x: &Endo, h: &Morphism) -> Result<Endo> {
    let rows: Vec<Vec<u8>> = x.mat().row_iter().map(|r| h.apply(r)).collect::<Result<_>>()?;
    Endo::new(Mat::from_row_slices(x.prime(), x.n(), rows.iter().map(|r| r.as_slice())))
}

/// `H(e;g)`: `a ↦ a g` for a morphism `g: A -> B` and `a ∈ H(e;A)`.
pub fn h_map(a: &Endo, g: &Morphism) -> Result<Endo> {
    if !a.image().is_subspace_of(g.dom()) {
        return Err(Error::NotIncluded);
    }
    through(a, g)
}

/// A morphism of the normal dual: the natural transformation
/// `H(e;-) -> H(f;-)` given by a carrier `u = f u e`, together with its
/// transpose `u*: (N_e)° -> (N_f)°`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualMorphism {
    pub e: Endo,
    pub f: Endo,
    pub carrier: Endo,
    pub transpose: Morphism,
}

impl DualMorphism {
    /// Component at A: `a ↦ u a` on `H(e;A)`.
    pub fn component(&self, a: &Endo) -> Endo {
        self.carrier.mul(a)
    }
}

pub fn nat_trans(u: &Endo, e: &Endo, f: &Endo) -> Result<DualMorphism> {
    check_singular_idempotent(e)?;
    check_singular_idempotent(f)?;
    if &f.mul(u).mul(e) != u {
        return Err(Error::NotInSandwich);
    }
    let transpose = transpose_map(u, &e.kernel().annihilator(), &f.kernel().annihilator())?;
    Ok(DualMorphism { e: e.clone(), f: f.clone(), carrier: u.clone(), transpose })
}

/// `u*: w ↦ w uᵀ` between dual subspaces.
pub fn transpose_map(u: &Endo, dom: &Subspace, cod: &Subspace) -> Result<Morphism> {
    Morphism::restrict(&u.mat().transpose(), dom, cod)
}

/// The functor P on objects.
pub fn functor_p(h: &HFunctor) -> Subspace {
    h.annihilator()
}

/// Summary of the normal dual of the subspace category and its comparison
/// with the annihilator category.
#[derive(Debug, Clone)]
pub struct NormalDual {
    pub functors: Vec<HFunctor>,
    pub objects: Vec<Subspace>,
    pub p_injective: bool,
    pub p_onto_proper_dual: bool,
    pub inclusions_match: bool,
    pub faithful: bool,
    pub full: bool,
}

impl NormalDual {
    pub fn all_pass(&self) -> bool {
        self.p_injective && self.p_onto_proper_dual && self.inclusions_match && self.faithful && self.full
    }
}

/// Builds every H-functor, applies P, and checks P against the proper
/// subspaces of V*. Inclusions are compared through h-sets and morphisms
/// through the carriers `f x e`, both by enumeration of Sing(V).
pub fn build_normal_dual(n: usize, p: Prime) -> Result<NormalDual> {
    let keys = enumerate_subspaces_on(n, p, Side::Primal, SubspaceFilter::Nonzero)?;
    let functors: Vec<HFunctor> = keys.iter().map(HFunctor::new).collect::<Result<_>>()?;
    let objects: Vec<Subspace> = functors.iter().map(functor_p).collect();

    let distinct: HashSet<&Subspace> = objects.iter().collect();
    let p_injective = distinct.len() == objects.len();
    let proper_dual: HashSet<Subspace> = enumerate_subspaces_on(n, p, Side::Dual, SubspaceFilter::Proper)?.into_iter().collect();
    let p_onto_proper_dual = objects.iter().cloned().collect::<HashSet<_>>() == proper_dual;

    let sing = singular_endos(n, p)?;
    let lattice = enumerate_subspaces_on(n, p, Side::Primal, SubspaceFilter::All)?;
    // H(e;-) ⊆ H(f;-) objectwise iff P(H(e;-)) ⊆ P(H(f;-))
    let hsets: Vec<Vec<HashSet<Endo>>> = functors
        .iter()
        .map(|h| lattice.iter().map(|a| h_set(h.witness(), a, &sing).map(|s| s.into_iter().collect())).collect())
        .collect::<Result<_>>()?;
    let mut inclusions_match = true;
    for (i, x) in functors.iter().enumerate() {
        for (k, y) in functors.iter().enumerate() {
            let included = hsets[i].iter().zip(&hsets[k]).all(|(s, t)| s.is_subset(t));
            inclusions_match &= included == functor_p(x).is_subspace_of(&functor_p(y));
        }
    }

    let (mut faithful, mut full) = (true, true);
    for x in &functors {
        for y in &functors {
            let (e, f) = (x.witness(), y.witness());
            let carriers: HashSet<Endo> = sing.iter().map(|s| f.mul(s).mul(e)).collect();
            let transposes: HashSet<Morphism> = carriers
                .iter()
                .map(|u| nat_trans(u, e, f).map(|d| d.transpose))
                .collect::<Result<_>>()?;
            let (dom, cod) = (functor_p(x), functor_p(y));
            faithful &= transposes.len() == carriers.len();
            full &= transposes.len() as u64 == (p.get() as u64).pow((dom.dim() * cod.dim()) as u32);
        }
    }

    Ok(NormalDual { functors, objects, p_injective, p_onto_proper_dual, inclusions_match, faithful, full })
}

/// The cone semigroup of the annihilator category, labelled by the elements
/// α of Sing(V) whose transposes induce the cones. Small cases build genuine
/// cones over the subspaces of V*; larger ones multiply the transposes.
pub fn annihilator_cone_table(n: usize, p: Prime) -> Result<SemigroupTable> {
    let sing = singular_endos(n, p)?;
    let transposes: Vec<Endo> = sing.iter().map(Endo::transpose).collect();
    let table = if sing.len() <= MAX_CONE_TABLE {
        let cat = SubspaceCategory::new(n, p, Side::Dual)?;
        cat.cone_table(&transposes.iter().map(|t| t.mat().clone()).collect::<Vec<_>>())?
    } else {
        endo_table(&transposes, &EndoProduct::Plain)?
    };
    table.with_labels(sing.iter().map(|a| a.to_string()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::idempotents;
    use crate::table::find_isomorphism;

    fn gf(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    fn sub(p: u32, n: usize, side: Side, vs: &[&[u32]]) -> Subspace {
        let rows: Vec<Vec<u32>> = vs.iter().map(|v| v.to_vec()).collect();
        Subspace::canonical(&rows, n, gf(p), side).unwrap()
    }

    fn e(s: &str) -> Endo {
        Endo::parse(s, gf(2)).unwrap()
    }

    #[test]
    fn h_set_examples() {
        let sing = singular_endos(2, gf(2)).unwrap();
        let idem = e("1,0;0,0");
        let line = sub(2, 2, Side::Primal, &[&[1, 0]]);
        let set = h_set(&idem, &line, &sing).unwrap();
        assert_eq!(set, vec![e("0,0;0,0"), idem.clone()]);
        let zero = Subspace::zero(2, gf(2), Side::Primal);
        assert_eq!(h_set(&idem, &zero, &sing).unwrap(), vec![e("0,0;0,0")]);
        assert_eq!(h_set(&e("0,1;0,0"), &line, &sing), Err(Error::NotIdempotent));
    }

    #[test]
    fn h_sets_agree_and_depend_only_on_the_kernel() {
        for (p, n) in [(2u32, 2usize), (3, 2), (2, 3)] {
            let sing = singular_endos(n, gf(p)).unwrap();
            let lattice = enumerate_subspaces_on(n, gf(p), Side::Primal, SubspaceFilter::All).unwrap();
            let idem = idempotents(n, gf(p), true).unwrap();
            for x in &idem {
                let canon = HFunctor::from_idempotent(x).unwrap();
                for a in &lattice {
                    let by_filter = h_set(x, a, &sing).unwrap();
                    assert_eq!(by_filter, h_set_by_factoring(x, a).unwrap());
                    assert_eq!(by_filter, h_set(canon.witness(), a, &sing).unwrap());
                }
            }
        }
    }

    #[test]
    fn h_map_along_inclusion_keeps_representatives() {
        let sing = singular_endos(2, gf(2)).unwrap();
        let idem = e("1,0;1,0");
        let line = sub(2, 2, Side::Primal, &[&[1, 0]]);
        let v = Subspace::full(2, gf(2), Side::Primal);
        let j = crate::subspace::inclusion(&line, &v).unwrap().j;
        for a in h_set(&idem, &line, &sing).unwrap() {
            let b = h_map(&a, &j).unwrap();
            assert_eq!(b, a);
            assert!(h_set(&idem, &v, &sing).unwrap().contains(&b));
        }
    }

    #[test]
    fn natural_transformation_examples() {
        let idem = e("1,0;0,0");
        let id = nat_trans(&idem, &idem, &idem).unwrap();
        assert!(id.transpose.is_identity());
        let f = e("0,0;0,1");
        let u = f.mul(&e("0,1;0,0")).mul(&idem);
        assert_eq!(u, e("0,0;0,0"));
        let zero = nat_trans(&u, &idem, &f).unwrap();
        assert_eq!(zero.transpose.rank(), 0);
        assert_eq!(nat_trans(&e("0,1;0,0"), &idem, &f), Err(Error::NotInSandwich));
    }

    #[test]
    fn components_match_factored_form_and_are_natural() {
        let (p, n) = (gf(2), 2);
        let sing = singular_endos(n, p).unwrap();
        let lattice = enumerate_subspaces_on(n, p, Side::Primal, SubspaceFilter::All).unwrap();
        let idem = idempotents(n, p, true).unwrap();
        for ei in &idem {
            for fi in &idem {
                let carriers: HashSet<Endo> = sing.iter().map(|s| fi.mul(s).mul(ei)).collect();
                for u in &carriers {
                    let sigma = nat_trans(u, ei, fi).unwrap();
                    for a in &lattice {
                        // eh ↦ f u h, computed from the morphisms h: Im e -> A
                        for h in Morphism::all_between(ei.image(), a).unwrap() {
                            let eh = through(ei, &h).unwrap();
                            let fuh = through(&fi.mul(u), &h).unwrap();
                            assert_eq!(sigma.component(&eh), fuh);
                        }
                        for b in &lattice {
                            for g in Morphism::all_between(a, b).unwrap() {
                                for x in h_set(ei, a, &sing).unwrap() {
                                    let lhs = sigma.component(&h_map(&x, &g).unwrap());
                                    let rhs = h_map(&sigma.component(&x), &g).unwrap();
                                    assert_eq!(lhs, rhs);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn functor_p_examples() {
        let key = sub(2, 2, Side::Primal, &[&[0, 1]]);
        let h = HFunctor::new(&key).unwrap();
        assert_eq!(functor_p(&h), sub(2, 2, Side::Dual, &[&[1, 0]]));
        assert_eq!(HFunctor::new(&Subspace::zero(2, gf(2), Side::Primal)), Err(Error::NotSingular));
    }

    #[test]
    fn normal_dual_is_the_annihilator_category() {
        for (p, n) in [(2u32, 1usize), (2, 2), (3, 2), (2, 3)] {
            let nd = build_normal_dual(n, gf(p)).unwrap();
            assert!(nd.all_pass(), "{nd:?}");
            let proper = enumerate_subspaces_on(n, gf(p), Side::Dual, SubspaceFilter::Proper).unwrap();
            assert_eq!(nd.objects.len(), proper.len());
        }
        assert_eq!(build_normal_dual(2, gf(2)).unwrap().objects.len(), 4);
    }

    #[test]
    fn m_sets_agree() {
        for (p, n) in [(2u32, 2usize), (2, 3), (3, 2)] {
            let cat = SubspaceCategory::new(n, gf(p), Side::Primal).unwrap();
            for x in idempotents(n, gf(p), true).unwrap() {
                let mut by_cone = cat.m_set(&cat.principal(x.mat()).unwrap());
                let mut by_complement = HFunctor::from_idempotent(&x).unwrap().m_set().unwrap();
                by_cone.sort();
                by_complement.sort();
                assert_eq!(by_cone, by_complement);
                let k = x.kernel().dim() as u32;
                assert_eq!(by_cone.len() as u64, (p as u64).pow(k * (n as u32 - k)));
            }
        }
        let x = e("1,0;0,0");
        let m = HFunctor::from_idempotent(&x).unwrap().m_set().unwrap();
        assert_eq!(m, vec![sub(2, 2, Side::Primal, &[&[1, 0]]), sub(2, 2, Side::Primal, &[&[1, 1]])]);
        let zero = HFunctor::from_idempotent(&e("0,0;0,0")).unwrap().m_set().unwrap();
        assert_eq!(zero, vec![Subspace::zero(2, gf(2), Side::Primal)]);
    }

    #[test]
    fn annihilator_cones_are_opposite_to_sing() {
        for (p, n) in [(2u32, 2usize), (3, 2)] {
            let sing = singular_endos(n, gf(p)).unwrap();
            let table = annihilator_cone_table(n, gf(p)).unwrap();
            let op = endo_table(&sing, &EndoProduct::Reversed).unwrap();
            assert_eq!(table, op);
            let plain = endo_table(&sing, &EndoProduct::Plain).unwrap();
            assert!(find_isomorphism(&table, &plain.opposite()).is_some());
        }
        let dual = SubspaceCategory::new(2, gf(2), Side::Dual).unwrap();
        assert_eq!(dual.census().unwrap().len(), 10);
    }
}
