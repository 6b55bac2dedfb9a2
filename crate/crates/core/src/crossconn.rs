//! Cross-connections between the subspace category of V and the
//! annihilator category in V*: the functors induced by automorphisms, the
//! local-isomorphism and cross-connection axioms, the two bifunctors and the
//! duality between them, the resulting semigroup of linked pairs, and the
//! classification of all cross-connections for small V.

use std::collections::HashSet;

use rayon::prelude::*;
use thiserror::Error as ThisError;

use crate::dual::{nat_trans, transpose_map};
use crate::error::{Error, Result};
use crate::field::Prime;
use crate::matrix::Mat;
use crate::semigroup::{idempotent_from, invertible_endos, singular_endos, Endo};
use crate::subspace::{enumerate_subspaces_on, inclusion, Morphism, Side, Subspace, SubspaceFilter};
use crate::table::{endo_table, find_isomorphism, EndoProduct, SemigroupTable};

/// Bound on composable morphism pairs examined by the functoriality check.
pub const MAX_COMPOSABLE: u64 = 5_000_000;

/// A functor between two full subcategories of subspaces of one space.
pub trait SubspaceFunctor: Sync {
    fn source(&self) -> &[Subspace];
    fn target(&self) -> &[Subspace];
    fn object(&self, a: &Subspace) -> Result<Subspace>;
    fn morphism(&self, f: &Morphism) -> Result<Morphism>;
}

/// The functor `A ↦ A t`, `f ↦ (t|A)⁻¹ f t` of an ambient map `t`. With
/// `t = θ` on V this is Δ_θ; with `t = θᵀ` on V* it is Γ_θ.
#[derive(Debug, Clone)]
pub struct CrossConn {
    source: Vec<Subspace>,
    target: Vec<Subspace>,
    transform: Mat,
    theta: Option<Endo>,
}

impl CrossConn {
    pub fn induced(source: Vec<Subspace>, target: Vec<Subspace>, transform: Mat, theta: Option<Endo>) -> CrossConn {
        CrossConn { source, target, transform, theta }
    }

    /// Δ_θ on the proper subspaces of V.
    pub fn delta(theta: &Endo) -> Result<CrossConn> {
        theta.invert()?;
        let objs = enumerate_subspaces_on(theta.n(), theta.prime(), Side::Primal, SubspaceFilter::Proper)?;
        Ok(CrossConn::induced(objs.clone(), objs, theta.mat().clone(), Some(theta.clone())))
    }

    /// Γ_θ on the proper subspaces of V*, acting through the transpose of θ.
    pub fn gamma(theta: &Endo) -> Result<CrossConn> {
        theta.invert()?;
        let objs = enumerate_subspaces_on(theta.n(), theta.prime(), Side::Dual, SubspaceFilter::Proper)?;
        Ok(CrossConn::induced(objs.clone(), objs, theta.mat().transpose(), Some(theta.clone())))
    }

    pub fn theta(&self) -> Option<&Endo> {
        self.theta.as_ref()
    }

    pub fn transform(&self) -> &Mat {
        &self.transform
    }
}

impl SubspaceFunctor for CrossConn {
    fn source(&self) -> &[Subspace] {
        &self.source
    }

    fn target(&self) -> &[Subspace] {
        &self.target
    }

    fn object(&self, a: &Subspace) -> Result<Subspace> {
        Ok(a.image_under(&self.transform))
    }

    fn morphism(&self, f: &Morphism) -> Result<Morphism> {
        let on = |a: &Subspace| Morphism::restrict(&self.transform, a, &a.image_under(&self.transform));
        on(f.dom())?.inverse()?.compose(f)?.compose(&on(f.cod())?)
    }
}

/// Δ_θ and Γ_θ for an automorphism θ.
pub fn gamma_delta_theta(theta: &Endo) -> Result<(CrossConn, CrossConn)> {
    Ok((CrossConn::gamma(theta)?, CrossConn::delta(theta)?))
}

/// The first axiom a functor fails.
#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum AxiomFailure {
    #[error("{0} is sent outside the target category")]
    OutsideTarget(String),
    #[error("undefined on {0}")]
    Undefined(String),
    #[error("not functorial at {0}")]
    NotFunctorial(String),
    #[error("inclusion {0} is not preserved")]
    NotInclusionPreserving(String),
    #[error("not fully faithful on {0}")]
    NotFullyFaithful(String),
    #[error("the ideal of {0} is not mapped isomorphically")]
    IdealNotIsomorphic(String),
    #[error("{0} lies in no M-set of the image")]
    Uncovered(String),
}

/// All morphisms between the given objects, grouped by (domain, codomain).
pub fn hom_sets(objects: &[Subspace]) -> Result<Vec<Vec<Vec<Morphism>>>> {
    objects.iter().map(|a| objects.iter().map(|b| Morphism::all_between(a, b)).collect()).collect()
}

/// Checks that `f` is an inclusion-preserving, fully faithful functor that
/// maps every principal ideal isomorphically; `None` means all axioms hold.
pub fn check_local_isomorphism(f: &dyn SubspaceFunctor) -> Result<Option<AxiomFailure>> {
    let src = f.source();
    let target: HashSet<&Subspace> = f.target().iter().collect();
    let images: Vec<Subspace> = src.iter().map(|a| f.object(a)).collect::<Result<_>>()?;
    if let Some((a, _)) = src.iter().zip(&images).find(|(_, b)| !target.contains(b)) {
        return Ok(Some(AxiomFailure::OutsideTarget(a.to_string())));
    }

    let p = src.first().map_or(2, |a| a.prime().get() as u64);
    let size = |a: &Subspace, b: &Subspace| p.saturating_pow((a.dim() * b.dim()) as u32);
    let composable: u64 = src
        .iter()
        .flat_map(|a| src.iter().flat_map(move |b| src.iter().map(move |c| size(a, b).saturating_mul(size(b, c)))))
        .fold(0u64, u64::saturating_add);
    if composable > MAX_COMPOSABLE {
        return Err(Error::TooLarge(format!("{composable} composable pairs")));
    }

    let homs = hom_sets(src)?;
    let mut mapped = Vec::with_capacity(src.len());
    for row in &homs {
        let mut out = Vec::with_capacity(src.len());
        for set in row {
            let m: Vec<Morphism> = match set.iter().map(|g| f.morphism(g)).collect::<Result<_>>() {
                Ok(m) => m,
                Err(_) => return Ok(Some(AxiomFailure::Undefined(format!("{} -> {}", set[0].dom(), set[0].cod())))),
            };
            out.push(m);
        }
        mapped.push(out);
    }

    for (i, a) in src.iter().enumerate() {
        if !f.morphism(&Morphism::identity(a))?.is_identity() {
            return Ok(Some(AxiomFailure::NotFunctorial(format!("identity of {a}"))));
        }
        for k in 0..src.len() {
            for (g, fg) in homs[i][k].iter().zip(&mapped[i][k]) {
                if fg.dom() != &images[i] || fg.cod() != &images[k] {
                    return Ok(Some(AxiomFailure::NotFunctorial(g.to_string())));
                }
            }
        }
    }
    let failure = (0..src.len()).into_par_iter().find_map_first(|i| {
        for k in 0..src.len() {
            for l in 0..src.len() {
                for (g, fg) in homs[i][k].iter().zip(&mapped[i][k]) {
                    for (h, fh) in homs[k][l].iter().zip(&mapped[k][l]) {
                        let lhs = f.morphism(&g.compose(h).ok()?).ok()?;
                        if lhs != fg.compose(fh).ok()? {
                            return Some(AxiomFailure::NotFunctorial(format!("{g} then {h}")));
                        }
                    }
                }
            }
        }
        None
    });
    if failure.is_some() {
        return Ok(failure);
    }

    for (i, a) in src.iter().enumerate() {
        for (k, b) in src.iter().enumerate() {
            if a.is_subspace_of(b) {
                let preserved = images[i].is_subspace_of(&images[k])
                    && f.morphism(&inclusion(a, b)?.j)? == inclusion(&images[i], &images[k])?.j;
                if !preserved {
                    return Ok(Some(AxiomFailure::NotInclusionPreserving(format!("{a} <= {b}"))));
                }
            }
            let distinct: HashSet<&Morphism> = mapped[i][k].iter().collect();
            if distinct.len() != homs[i][k].len() || distinct.len() as u64 != size(&images[i], &images[k]) {
                return Ok(Some(AxiomFailure::NotFullyFaithful(format!("hom({a}, {b})"))));
            }
        }
    }

    for (i, c) in src.iter().enumerate() {
        let below: Vec<&Subspace> = images.iter().zip(src).filter(|(_, a)| a.is_subspace_of(c)).map(|(b, _)| b).collect();
        let distinct: HashSet<&Subspace> = below.iter().copied().collect();
        let expected: HashSet<&Subspace> = f.target().iter().filter(|b| b.is_subspace_of(&images[i])).collect();
        if distinct.len() != below.len() || distinct != expected {
            return Ok(Some(AxiomFailure::IdealNotIsomorphic(c.to_string())));
        }
    }
    Ok(None)
}

pub fn is_local_isomorphism(f: &dyn SubspaceFunctor) -> Result<bool> {
    Ok(check_local_isomorphism(f)?.is_none())
}

/// Cross-connection check: a local isomorphism such that every proper
/// subspace X on the other side lies in the M-set of some image object,
/// that is `X ⊕ F(d)° = whole space`. Returns one witness per X.
#[derive(Debug, Clone)]
pub struct CrossConnCheck {
    pub failure: Option<AxiomFailure>,
    pub witnesses: Vec<(Subspace, Subspace)>,
}

pub fn check_crossconnection(f: &dyn SubspaceFunctor) -> Result<CrossConnCheck> {
    let mut check = CrossConnCheck { failure: check_local_isomorphism(f)?, witnesses: Vec::new() };
    if check.failure.is_some() {
        return Ok(check);
    }
    let Some(first) = f.source().first() else {
        return Ok(check);
    };
    let (n, p) = (first.ambient_dim(), first.prime());
    let annihilated: Vec<(Subspace, Subspace)> =
        f.source().iter().map(|d| Ok((d.clone(), f.object(d)?.annihilator()))).collect::<Result<_>>()?;
    for x in enumerate_subspaces_on(n, p, first.side().flip(), SubspaceFilter::Proper)? {
        match annihilated.iter().find(|(_, k)| x.is_complement_of(k)) {
            Some((d, _)) => check.witnesses.push((x, d.clone())),
            None => {
                check.failure = Some(AxiomFailure::Uncovered(x.to_string()));
                break;
            }
        }
    }
    Ok(check)
}

pub fn is_crossconnection(f: &dyn SubspaceFunctor) -> Result<bool> {
    Ok(check_crossconnection(f)?.failure.is_none())
}

/// True when two functors with the same source agree on every object and
/// every morphism.
pub fn functors_equal(f: &dyn SubspaceFunctor, g: &dyn SubspaceFunctor) -> Result<bool> {
    if f.source() != g.source() {
        return Ok(false);
    }
    for a in f.source() {
        if f.object(a)? != g.object(a)? {
            return Ok(false);
        }
    }
    for row in hom_sets(f.source())? {
        for set in row {
            for m in &set {
                if f.morphism(m)? != g.morphism(m)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// A morphism `w*: Y -> Z` of the annihilator category with its carrier
/// `w = f' x e'`, where `Y = (N_e')°` and `Z = (N_f')°`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DualArrow {
    pub carrier: Endo,
    pub map: Morphism,
}

/// Every morphism of the annihilator category, one carrier each.
pub fn dual_arrows(n: usize, p: Prime, sing: &[Endo]) -> Result<Vec<DualArrow>> {
    let objs = enumerate_subspaces_on(n, p, Side::Dual, SubspaceFilter::Proper)?;
    let witness = |y: &Subspace| {
        let key = y.annihilator();
        idempotent_from(&key, &key.canonical_complement())
    };
    let mut out = Vec::new();
    for y in &objs {
        let e = witness(y)?;
        for z in &objs {
            let f = witness(z)?;
            let mut carriers: Vec<Endo> = sing.iter().map(|x| f.mul(x).mul(&e)).collect();
            carriers.sort();
            carriers.dedup();
            for w in carriers {
                let map = nat_trans(&w, &e, &f)?.transpose;
                out.push(DualArrow { carrier: w, map });
            }
        }
    }
    Ok(out)
}

/// The bifunctors Γ(−,−) and Δ(−,−) of the cross-connection pair induced by
/// an automorphism θ, and the duality χ between them.
#[derive(Debug, Clone)]
pub struct Bifunctors {
    theta: Endo,
    theta_inv: Endo,
    gamma: CrossConn,
    delta: CrossConn,
    sing: Vec<Endo>,
}

impl Bifunctors {
    pub fn new(theta: &Endo) -> Result<Bifunctors> {
        let (gamma, delta) = gamma_delta_theta(theta)?;
        Ok(Bifunctors {
            theta: theta.clone(),
            theta_inv: theta.invert()?,
            gamma,
            delta,
            sing: singular_endos(theta.n(), theta.prime())?,
        })
    }

    pub fn gamma(&self) -> &CrossConn {
        &self.gamma
    }

    pub fn delta(&self) -> &CrossConn {
        &self.delta
    }

    pub fn sing(&self) -> &[Endo] {
        &self.sing
    }

    /// `Γ(A,Y) = {α : Vα ⊆ A, (N_α)° ⊆ Γ(Y)}`.
    pub fn gamma_set(&self, a: &Subspace, y: &Subspace) -> Result<Vec<Endo>> {
        let gy = self.gamma.object(y)?;
        Ok(self.sing.iter().filter(|x| x.image().is_subspace_of(a) && x.kernel().annihilator().is_subspace_of(&gy)).cloned().collect())
    }

    /// `Δ(A,Y) = {α : Vα ⊆ Δ(A), (N_α)° ⊆ Y}`.
    pub fn delta_set(&self, a: &Subspace, y: &Subspace) -> Result<Vec<Endo>> {
        let da = self.delta.object(a)?;
        Ok(self.sing.iter().filter(|x| x.image().is_subspace_of(&da) && x.kernel().annihilator().is_subspace_of(y)).cloned().collect())
    }

    /// `Γ(f,w*): α ↦ y(αf)` where `y* = Γ(w*)`, that is `y = θ w θ⁻¹`.
    pub fn gamma_map(&self, f: &Morphism, w: &DualArrow, alpha: &Endo) -> Result<Endo> {
        let y = self.theta.mul(&w.carrier).mul(&self.theta_inv);
        Ok(y.mul(&then(alpha, f)?))
    }

    /// `Δ(f,w*): α ↦ w(αg)` where `g = Δ(f)`.
    pub fn delta_map(&self, f: &Morphism, w: &DualArrow, alpha: &Endo) -> Result<Endo> {
        let g = self.delta.morphism(f)?;
        Ok(w.carrier.mul(&then(alpha, &g)?))
    }

    /// `χ(A,Y): α ↦ θ⁻¹ α θ`.
    pub fn chi(&self, alpha: &Endo) -> Endo {
        self.theta_inv.mul(alpha).mul(&self.theta)
    }
}

/// `α` followed by a morphism defined on a subspace containing Im α.
fn then(alpha: &Endo, f: &Morphism) -> Result<Endo> {
    let rows: Vec<Vec<u8>> = alpha.mat().row_iter().map(|r| f.apply(r)).collect::<Result<_>>()?;
    Endo::new(Mat::from_row_slices(alpha.prime(), alpha.n(), rows.iter().map(|r| r.as_slice())))
}

/// An element of the cross-connection semigroup: a cone of the subspace
/// category and the cone of the annihilator category linked to it, both
/// given by their transformations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkedPair {
    pub first: Endo,
    pub second: Endo,
}

/// The semigroup of linked pairs of an automorphism, with the checks made
/// while building it.
#[derive(Debug, Clone)]
pub struct LinkedSemigroup {
    pub pairs: Vec<LinkedPair>,
    pub table: SemigroupTable,
    /// χ(A,Y) maps Γ(A,Y) bijectively onto Δ(A,Y) for every (A,Y).
    pub chi_bijective: bool,
    /// Every naturality square of χ commutes.
    pub natural: bool,
    /// Γ_θ(w*) is the transpose of θ w θ⁻¹ for every w*.
    pub carriers_match: bool,
    /// The pairs are exactly {(α, θ⁻¹αθ)}.
    pub matches_formula: bool,
    /// (α, β) ↦ α is an isomorphism onto Sing(V).
    pub projection_isomorphism: bool,
    /// An isomorphism onto Sing(V) found by search, if any.
    pub isomorphism: Option<Vec<usize>>,
}

impl LinkedSemigroup {
    pub fn all_pass(&self) -> bool {
        self.chi_bijective
            && self.natural
            && self.carriers_match
            && self.matches_formula
            && self.projection_isomorphism
            && self.isomorphism.is_some()
    }
}

/// Builds the linked pairs of Γ_θ through the bifunctors and χ, verifies the
/// duality, and compares the resulting semigroup with Sing(V).
pub fn chi_and_semigroup(theta: &Endo) -> Result<LinkedSemigroup> {
    let bf = Bifunctors::new(theta)?;
    let (n, p) = (theta.n(), theta.prime());
    let primal = enumerate_subspaces_on(n, p, Side::Primal, SubspaceFilter::Proper)?;
    let dual = bf.gamma.source().to_vec();
    let arrows = dual_arrows(n, p, &bf.sing)?;
    let homs: Vec<Morphism> = hom_sets(&primal)?.into_iter().flatten().flatten().collect();

    let mut chi_bijective = true;
    let mut gamma_sets = std::collections::HashMap::new();
    for a in &primal {
        for y in &dual {
            let gs = bf.gamma_set(a, y)?;
            let mut mapped: Vec<Endo> = gs.iter().map(|x| bf.chi(x)).collect();
            mapped.sort();
            chi_bijective &= mapped == bf.delta_set(a, y)?;
            gamma_sets.insert((a.clone(), y.clone()), gs);
        }
    }

    let mut carriers_match = true;
    for w in &arrows {
        let y = theta.mul(&w.carrier).mul(&bf.theta_inv);
        let expected = transpose_map(&y, &bf.gamma.object(w.map.dom())?, &bf.gamma.object(w.map.cod())?)?;
        carriers_match &= bf.gamma.morphism(&w.map)? == expected;
    }

    let natural = homs.par_iter().map(|f| -> Result<bool> {
        for w in &arrows {
            let (z, b) = (w.map.cod(), f.cod());
            let target = &gamma_sets[&(b.clone(), z.clone())];
            for alpha in &gamma_sets[&(f.dom().clone(), w.map.dom().clone())] {
                let moved = bf.gamma_map(f, w, alpha)?;
                if !target.contains(&moved) || bf.chi(&moved) != bf.delta_map(f, w, &bf.chi(alpha))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    });
    let natural = natural.collect::<Result<Vec<bool>>>()?.into_iter().all(|ok| ok);

    // α is linked to χ(α) through the pair (Im α, Y) with Γ(Y) = (N_α)°
    let pullback = theta.invert()?.mat().transpose();
    let mut pairs = Vec::with_capacity(bf.sing.len());
    for alpha in &bf.sing {
        let a = alpha.image().clone();
        let y = alpha.kernel().annihilator().image_under(&pullback);
        if !gamma_sets[&(a.clone(), y.clone())].contains(alpha) {
            return Err(Error::NotInduced(format!("{alpha} is not in its own bifunctor set")));
        }
        pairs.push(LinkedPair { first: alpha.clone(), second: bf.chi(alpha) });
    }
    let formula: HashSet<LinkedPair> = bf
        .sing
        .iter()
        .map(|x| LinkedPair { first: x.clone(), second: bf.theta_inv.mul(x).mul(theta) })
        .collect();
    let matches_formula = pairs.iter().cloned().collect::<HashSet<_>>() == formula && formula.len() == pairs.len();

    let (table, projection_isomorphism, isomorphism) = compare_with_sing(&pairs, &bf.sing)?;
    Ok(LinkedSemigroup { pairs, table, chi_bijective, natural, carriers_match, matches_formula, projection_isomorphism, isomorphism })
}

/// Tabulates pairs listed in the order of Sing(V) under the componentwise
/// product and compares the table with Sing(V).
fn compare_with_sing(pairs: &[LinkedPair], sing: &[Endo]) -> Result<(SemigroupTable, bool, Option<Vec<usize>>)> {
    let labels = pairs.iter().map(|x| format!("({} | {})", x.first, x.second)).collect();
    let table = SemigroupTable::from_product(pairs, labels, |x, y| LinkedPair {
        first: x.first.mul(&y.first),
        second: x.second.mul(&y.second),
    })?;
    let sing_table = endo_table(sing, &EndoProduct::Plain)?;
    let identity: Vec<usize> = (0..pairs.len()).collect();
    let projection_isomorphism = table.is_isomorphism(&sing_table, &identity);
    let isomorphism = find_isomorphism(&table, &sing_table);
    Ok((table, projection_isomorphism, isomorphism))
}

/// The linked pairs `(α, θ⁻¹αθ)` taken straight from the closed form,
/// without building the bifunctors. Cheap enough for n = 3, where the
/// exhaustive naturality check of [`chi_and_semigroup`] is not.
#[derive(Debug, Clone)]
pub struct FormulaSemigroup {
    pub pairs: Vec<LinkedPair>,
    pub table: SemigroupTable,
    pub projection_isomorphism: bool,
    pub isomorphism: Option<Vec<usize>>,
}

pub fn formula_semigroup(theta: &Endo) -> Result<FormulaSemigroup> {
    let inv = theta.invert()?;
    let sing = singular_endos(theta.n(), theta.prime())?;
    let pairs: Vec<LinkedPair> =
        sing.iter().map(|x| LinkedPair { first: x.clone(), second: inv.mul(x).mul(theta) }).collect();
    let (table, projection_isomorphism, isomorphism) = compare_with_sing(&pairs, &sing)?;
    Ok(FormulaSemigroup { pairs, table, projection_isomorphism, isomorphism })
}

/// Reads an automorphism off the object map of a functor on the subspaces
/// of V: `Δ(⟨e_i⟩) = ⟨x_i⟩`, with the scalars fixed by `Δ(⟨e_1 + e_i⟩)` and
/// the first row normalized to have leading entry 1.
pub fn theta_from_objects(n: usize, p: Prime, object: impl Fn(&Subspace) -> Result<Subspace>) -> Result<Endo> {
    if n <= 1 {
        return Ok(Endo::identity(n.max(1), p));
    }
    let unit = |i: usize| {
        let mut v = vec![0u32; n];
        v[i] = 1;
        v
    };
    let line_image = |v: Vec<u32>| -> Result<Vec<u8>> {
        let img = object(&Subspace::canonical(&[v.clone()], n, p, Side::Primal)?)?;
        if img.dim() != 1 {
            return Err(Error::NotInduced(format!("a line is sent to {img}")));
        }
        Ok(img.basis().row(0).to_vec())
    };
    let xs: Vec<Vec<u8>> = (0..n).map(|i| line_image(unit(i))).collect::<Result<_>>()?;
    let mut rows = vec![xs[0].clone()];
    for i in 1..n {
        let mut v = unit(0);
        v[i] = 1;
        let z = line_image(v)?;
        let pair = Mat::from_row_slices(p, n, [xs[0].as_slice(), xs[i].as_slice()]);
        let target = Mat::from_row_slices(p, n, [z.as_slice()]);
        let coeffs = pair.solve_left(&target).ok_or_else(|| Error::NotInduced(format!("image of <e1 + e{}> is off the plane", i + 1)))?;
        let (a, b) = (coeffs.get(0, 0), coeffs.get(0, 1));
        let Some(a_inv) = p.inv(a) else {
            return Err(Error::NotInduced(format!("inconsistent scalars at e{}", i + 1)));
        };
        if b == 0 {
            return Err(Error::NotInduced(format!("inconsistent scalars at e{}", i + 1)));
        }
        let c = p.mul(b, a_inv);
        rows.push(xs[i].iter().map(|&x| p.mul(c, x)).collect());
    }
    let theta = Mat::from_row_slices(p, n, rows.iter().map(|r| r.as_slice()));
    if !theta.is_invertible() {
        return Err(Error::NotInduced("recovered matrix is singular".into()));
    }
    Endo::new(theta)
}

/// The automorphism inducing `delta`, normalized as in
/// [`theta_from_objects`], after checking that `delta = Δ_θ` exactly.
pub fn recover_theta(delta: &dyn SubspaceFunctor) -> Result<Endo> {
    let first = delta.source().first().ok_or_else(|| Error::NotInduced("empty category".into()))?;
    let (n, p) = (first.ambient_dim(), first.prime());
    let theta = theta_from_objects(n, p, |a| delta.object(a))?;
    let induced = CrossConn::delta(&theta)?;
    if !functors_equal(delta, &induced)? {
        return Err(Error::NotInduced(format!("functor differs from the one induced by {theta}")));
    }
    Ok(theta)
}

/// Γ_θ = Γ_{cθ} for every nonzero scalar c.
pub fn scalar_invariant(theta: &Endo) -> Result<bool> {
    let base = CrossConn::gamma(theta)?;
    for c in 2..theta.prime().get() {
        if !functors_equal(&base, &CrossConn::gamma(&theta.scale(c))?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One cross-connection found by the census.
#[derive(Debug, Clone)]
pub struct CensusMember {
    /// Image index of each proper subspace, in lattice order.
    pub object_map: Vec<usize>,
    pub theta: Endo,
    pub local_isomorphism: bool,
    pub crossconnection: bool,
    pub round_trip: bool,
    pub scalar_invariant: bool,
    pub sing_isomorphic: bool,
}

impl CensusMember {
    pub fn all_pass(&self) -> bool {
        self.local_isomorphism && self.crossconnection && self.round_trip && self.scalar_invariant && self.sing_isomorphic
    }
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub n: usize,
    pub p: Prime,
    pub bijections_tried: usize,
    pub members: Vec<CensusMember>,
    pub gl_order: usize,
    /// Number of distinct functors Δ_θ as θ runs over GL(V).
    pub distinct_induced: usize,
    /// The census and the induced functors have the same object maps.
    pub matches_induced: bool,
}

/// All cross-connections of a plane over GF(2) or GF(3). Every
/// inclusion-preserving bijection of the proper subspaces is tried; those
/// extending to some Δ_θ are checked against the axioms and compared with
/// the functors induced by all of GL(V).
pub fn classify_crossconnections(n: usize, p: Prime) -> Result<Classification> {
    if n != 2 || p.get() > 3 {
        return Err(Error::TooLarge(format!("cross-connection census over GF({p})^{n}")));
    }
    let objs = enumerate_subspaces_on(n, p, Side::Primal, SubspaceFilter::Proper)?;
    let index_of = |a: &Subspace| objs.iter().position(|b| b == a).expect("proper subspace");
    let lines: Vec<usize> = (0..objs.len()).filter(|&i| objs[i].dim() == 1).collect();

    let mut members = Vec::new();
    let mut tried = 0;
    let mut perm = lines.clone();
    loop {
        tried += 1;
        let mut object_map: Vec<usize> = (0..objs.len()).collect();
        for (src, dst) in lines.iter().zip(&perm) {
            object_map[*src] = *dst;
        }
        let lookup = |a: &Subspace| Ok(objs[object_map[index_of(a)]].clone());
        if let Ok(theta) = theta_from_objects(n, p, lookup) {
            let (gamma, delta) = gamma_delta_theta(&theta)?;
            let induced_map: Vec<usize> = objs.iter().map(|a| delta.object(a).map(|b| index_of(&b))).collect::<Result<_>>()?;
            if induced_map == object_map {
                let round_trip = recover_theta(&delta).is_ok_and(|t| t == theta);
                members.push(CensusMember {
                    object_map,
                    local_isomorphism: is_local_isomorphism(&delta)? && is_local_isomorphism(&gamma)?,
                    crossconnection: is_crossconnection(&gamma)? && is_crossconnection(&delta)?,
                    round_trip,
                    scalar_invariant: scalar_invariant(&theta)?,
                    sing_isomorphic: chi_and_semigroup(&theta)?.all_pass(),
                    theta,
                });
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }

    let gl = invertible_endos(n, p)?;
    let homs: Vec<Morphism> = hom_sets(&objs)?.into_iter().flatten().flatten().collect();
    let mut signatures = HashSet::new();
    let mut induced_maps = HashSet::new();
    for theta in &gl {
        let delta = CrossConn::delta(theta)?;
        let object_map: Vec<usize> = objs.iter().map(|a| delta.object(a).map(|b| index_of(&b))).collect::<Result<_>>()?;
        let arrows: Vec<Morphism> = homs.iter().map(|f| delta.morphism(f)).collect::<Result<_>>()?;
        signatures.insert((object_map.clone(), arrows));
        induced_maps.insert(object_map);
    }
    let census_maps: HashSet<Vec<usize>> = members.iter().map(|m| m.object_map.clone()).collect();

    Ok(Classification {
        n,
        p,
        bijections_tried: tried,
        gl_order: gl.len(),
        distinct_induced: signatures.len(),
        matches_induced: census_maps == induced_maps && census_maps.len() == members.len(),
        members,
    })
}

/// Advances to the next permutation in lexicographic order.
fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("a larger element exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    fn sub(p: u32, side: Side, vs: &[&[u32]]) -> Subspace {
        let rows: Vec<Vec<u32>> = vs.iter().map(|v| v.to_vec()).collect();
        Subspace::canonical(&rows, vs.first().map_or(2, |v| v.len()), gf(p), side).unwrap()
    }

    /// Sends everything to the zero subspace.
    struct Collapse {
        objs: Vec<Subspace>,
    }

    impl SubspaceFunctor for Collapse {
        fn source(&self) -> &[Subspace] {
            &self.objs
        }
        fn target(&self) -> &[Subspace] {
            &self.objs
        }
        fn object(&self, a: &Subspace) -> Result<Subspace> {
            Ok(Subspace::zero(a.ambient_dim(), a.prime(), a.side()))
        }
        fn morphism(&self, f: &Morphism) -> Result<Morphism> {
            let z = self.object(f.dom())?;
            Ok(Morphism::zero(&z, &z))
        }
    }

    #[test]
    fn induced_functor_examples() {
        let swap = Endo::parse("0,1;1,0", gf(2)).unwrap();
        let (gamma, delta) = gamma_delta_theta(&swap).unwrap();
        assert_eq!(delta.object(&sub(2, Side::Primal, &[&[1, 0]])).unwrap(), sub(2, Side::Primal, &[&[0, 1]]));
        let id = Endo::identity(2, gf(2));
        let (gi, di) = gamma_delta_theta(&id).unwrap();
        for a in di.source() {
            assert_eq!(&di.object(a).unwrap(), a);
        }
        for row in hom_sets(gi.source()).unwrap() {
            for set in row {
                for m in set {
                    assert_eq!(gi.morphism(&m).unwrap(), m);
                }
            }
        }
        assert!(is_local_isomorphism(&gamma).unwrap());
        let singular = Endo::parse("1,0;0,0", gf(2)).unwrap();
        assert_eq!(gamma_delta_theta(&singular).err(), Some(Error::NotInvertible));
    }

    #[test]
    fn gamma_commutes_with_annihilators() {
        for p in [2u32, 3] {
            for theta in invertible_endos(2, gf(p)).unwrap() {
                let (gamma, _) = gamma_delta_theta(&theta).unwrap();
                let inv = theta.invert().unwrap();
                for a in enumerate_subspaces_on(2, gf(p), Side::Primal, SubspaceFilter::Nonzero).unwrap() {
                    let lhs = gamma.object(&a.annihilator()).unwrap();
                    assert_eq!(lhs, a.image_under(inv.mat()).annihilator());
                }
            }
        }
    }

    #[test]
    fn collapsing_functor_is_rejected() {
        let objs = enumerate_subspaces_on(2, gf(2), Side::Primal, SubspaceFilter::Proper).unwrap();
        let f = Collapse { objs };
        assert!(matches!(check_local_isomorphism(&f).unwrap(), Some(AxiomFailure::NotInclusionPreserving(_) | AxiomFailure::NotFullyFaithful(_))));
        assert!(!is_crossconnection(&f).unwrap());
    }

    #[test]
    fn identity_crossconnection_witnesses() {
        let id = Endo::identity(2, gf(2));
        let check = check_crossconnection(&CrossConn::gamma(&id).unwrap()).unwrap();
        assert!(check.failure.is_none());
        for (a, y) in &check.witnesses {
            assert!(a.is_complement_of(&y.annihilator()));
        }
        let a = sub(2, Side::Primal, &[&[1, 0]]);
        assert!(a.is_complement_of(&a.canonical_complement()));
    }

    #[test]
    fn bifunctor_examples() {
        let id = Endo::identity(2, gf(2));
        let bf = Bifunctors::new(&id).unwrap();
        let a = sub(2, Side::Primal, &[&[1, 0]]);
        let y = sub(2, Side::Primal, &[&[0, 1]]).annihilator();
        let set = bf.gamma_set(&a, &y).unwrap();
        assert_eq!(set, vec![Endo::zero(2, gf(2)), Endo::parse("1,0;0,0", gf(2)).unwrap()]);
        let zero = Subspace::zero(2, gf(2), Side::Primal);
        assert_eq!(bf.gamma_set(&zero, &y).unwrap(), vec![Endo::zero(2, gf(2))]);
        assert_eq!(bf.delta_set(&zero, &y).unwrap(), vec![Endo::zero(2, gf(2))]);

        let swap = Endo::parse("0,1;1,0", gf(2)).unwrap();
        let bf = Bifunctors::new(&swap).unwrap();
        let primal = enumerate_subspaces_on(2, gf(2), Side::Primal, SubspaceFilter::Proper).unwrap();
        for a in &primal {
            for y in bf.gamma().source() {
                assert_eq!(bf.gamma_set(a, y).unwrap().len(), bf.delta_set(a, y).unwrap().len());
            }
        }
    }

    #[test]
    fn linked_semigroup_for_swap_and_identity() {
        for s in ["1,0;0,1", "0,1;1,0"] {
            let theta = Endo::parse(s, gf(2)).unwrap();
            let linked = chi_and_semigroup(&theta).unwrap();
            assert!(linked.all_pass(), "{s}");
            assert_eq!(linked.pairs.len(), 10);
            if s == "1,0;0,1" {
                assert!(linked.pairs.iter().all(|x| x.first == x.second));
            }
        }
    }

    #[test]
    fn recovery_round_trips() {
        let swap = Endo::parse("0,1;1,0", gf(2)).unwrap();
        assert_eq!(recover_theta(&CrossConn::delta(&swap).unwrap()).unwrap(), swap);
        let id = Endo::identity(2, gf(3));
        assert_eq!(recover_theta(&CrossConn::delta(&id).unwrap()).unwrap(), id);
        for theta in invertible_endos(2, gf(3)).unwrap() {
            let r1 = recover_theta(&CrossConn::delta(&theta).unwrap()).unwrap();
            let r2 = recover_theta(&CrossConn::delta(&theta.scale(2)).unwrap()).unwrap();
            assert_eq!(r1, r2);
            assert!(r1 == theta || r1 == theta.scale(2));
            assert!(functors_equal(&CrossConn::delta(&theta).unwrap(), &CrossConn::delta(&theta.scale(2)).unwrap()).unwrap());
        }
        for theta in invertible_endos(3, gf(2)).unwrap().iter().step_by(17) {
            assert_eq!(&recover_theta(&CrossConn::delta(theta).unwrap()).unwrap(), theta);
        }
    }

    #[test]
    fn non_induced_functors_are_detected() {
        let objs = enumerate_subspaces_on(2, gf(2), Side::Primal, SubspaceFilter::Proper).unwrap();
        assert!(matches!(recover_theta(&Collapse { objs }), Err(Error::NotInduced(_))));
    }

    #[test]
    fn permutations_are_lexicographic() {
        let mut v = vec![0, 1, 2];
        let mut seen = vec![v.clone()];
        while next_permutation(&mut v) {
            seen.push(v.clone());
        }
        assert_eq!(seen.len(), 6);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn census_over_gf2() {
        let c = classify_crossconnections(2, gf(2)).unwrap();
        assert_eq!(c.members.len(), 6);
        assert_eq!(c.distinct_induced, 6);
        assert!(c.matches_induced);
        assert!(c.members.iter().all(CensusMember::all_pass));
        assert!(matches!(classify_crossconnections(3, gf(2)), Err(Error::TooLarge(_))));
    }
}
