//! Subspaces of GF(p)^n and of its dual, linear maps between them, and the
//! lattice enumeration that provides the object sets of the subspace and
//! annihilator categories.
//!
//! A subspace is stored by its reduced row-echelon basis, so two subspaces are
//! equal exactly when their stored bases are equal. Functionals on V are
//! encoded as coordinate row vectors `w` acting by `v -> v . w^T`; subspaces of
//! V* are tagged [`Side::Dual`].

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Prime;
use crate::matrix::Mat;

/// Largest ambient dimension accepted by the enumerations.
pub const MAX_DIM: usize = 5;
/// Upper bound on the number of subspaces a single enumeration may produce.
pub const MAX_SUBSPACES: u64 = 1 << 19;
/// Upper bound on the size of a single hom-set enumeration.
pub const MAX_HOM: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Primal,
    Dual,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Primal => Side::Dual,
            Side::Dual => Side::Primal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubspaceFilter {
    All,
    Proper,
    Nonzero,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    side: Side,
    basis: Mat,
}

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ShapeError("ambient dimension must be positive".into()));
    }
    if n > MAX_DIM {
        return Err(Error::TooLarge(format!("ambient dimension {n} exceeds {MAX_DIM}")));
    }
    Ok(())
}

impl Subspace {
    /// Span of `vectors` in canonical form.
    pub fn canonical(vectors: &[Vec<u32>], n: usize, p: Prime, side: Side) -> Result<Subspace> {
        let m = Mat::from_rows(p, n, vectors)?;
        Ok(Subspace::span(&m, side))
    }

    /// Row space of `m`.
    pub fn span(m: &Mat, side: Side) -> Subspace {
        Subspace { side, basis: m.row_space_basis() }
    }

    pub fn zero(n: usize, p: Prime, side: Side) -> Subspace {
        Subspace { side, basis: Mat::zeros(p, 0, n) }
    }

    pub fn full(n: usize, p: Prime, side: Side) -> Subspace {
        Subspace { side, basis: Mat::identity(p, n) }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn prime(&self) -> Prime {
        self.basis.prime()
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    pub fn is_proper(&self) -> bool {
        !self.is_full()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .row_iter()
            .map(|r| r.iter().position(|&v| v != 0).expect("basis rows are nonzero"))
            .collect()
    }

    fn same_space(&self, other: &Subspace) -> Result<()> {
        if self.side != other.side || self.ambient_dim() != other.ambient_dim() || self.prime() != other.prime() {
            return Err(Error::ShapeError("subspaces live in different ambient spaces".into()));
        }
        Ok(())
    }

    /// Coordinates of `v` with respect to the canonical basis, if `v` lies in
    /// the subspace. In RREF the coordinates are read off the pivot columns.
    pub fn coords(&self, v: &[u8]) -> Option<Vec<u8>> {
        let c: Vec<u8> = self.pivots().iter().map(|&pc| v[pc]).collect();
        if self.basis.apply(&c) == v {
            Some(c)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.coords(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.same_space(other).is_ok() && self.basis.row_iter().all(|r| other.contains(r))
    }

    pub fn join(&self, other: &Subspace) -> Subspace {
        let stacked = self.basis.vstack(&other.basis).expect("same ambient space");
        Subspace::span(&stacked, self.side)
    }

    /// Intersection, via the annihilator of the sum of annihilators.
    pub fn meet(&self, other: &Subspace) -> Subspace {
        self.annihilator().join(&other.annihilator()).annihilator()
    }

    /// True when `self ⊕ other = whole`.
    pub fn is_direct_sum_in(&self, other: &Subspace, whole: &Subspace) -> bool {
        self.is_subspace_of(whole)
            && other.is_subspace_of(whole)
            && self.dim() + other.dim() == whole.dim()
            && self.join(other).dim() == whole.dim()
    }

    /// True when `self ⊕ other = V`.
    pub fn is_complement_of(&self, other: &Subspace) -> bool {
        let whole = Subspace::full(self.ambient_dim(), self.prime(), self.side);
        self.is_direct_sum_in(other, &whole)
    }

    /// Image of the subspace under the ambient linear map `t` (row action).
    pub fn image_under(&self, t: &Mat) -> Subspace {
        Subspace::span(&self.basis.mul_unchecked(t), self.side)
    }

    /// Preimage `{v : v t ∈ self}` for a square ambient map `t`.
    pub fn preimage_under(&self, t: &Mat) -> Subspace {
        // v t ∈ A  <=>  v t w^T = 0 for all w ∈ A°  <=>  v ∈ (A° t^T)°
        self.annihilator().image_under(&t.transpose()).annihilator()
    }

    /// The annihilator on the opposite side; applied to a dual subspace it
    /// returns the pre-annihilator.
    pub fn annihilator(&self) -> Subspace {
        let n = self.ambient_dim();
        let kernel = if self.dim() == 0 {
            Mat::identity(self.prime(), n)
        } else {
            self.basis.transpose().left_kernel_basis()
        };
        Subspace::span(&kernel, self.side.flip())
    }

    /// Complement spanned by the standard basis vectors at non-pivot positions.
    pub fn canonical_complement(&self) -> Subspace {
        let n = self.ambient_dim();
        let pivots = self.pivots();
        let rows: Vec<Vec<u8>> = (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|c| {
                let mut v = vec![0u8; n];
                v[c] = 1;
                v
            })
            .collect();
        Subspace::span(&Mat::from_row_slices(self.prime(), n, rows.iter().map(|r| r.as_slice())), self.side)
    }

    /// Canonical complement of `self` inside `container`, computed in the
    /// canonical coordinates of `container`.
    pub fn canonical_complement_in(&self, container: &Subspace) -> Result<Subspace> {
        if !self.is_subspace_of(container) {
            return Err(Error::NotIncluded);
        }
        let p = self.prime();
        let m = container.dim();
        let coords: Vec<Vec<u8>> = self.basis.row_iter().map(|r| container.coords(r).expect("included")).collect();
        let local = Subspace::span(&Mat::from_row_slices(p, m, coords.iter().map(|c| c.as_slice())), self.side);
        let comp_local = local.canonical_complement();
        Ok(Subspace::span(&comp_local.basis.mul_unchecked(&container.basis), self.side))
    }

    /// Every complement of `self` in V.
    pub fn all_complements(&self) -> Result<Vec<Subspace>> {
        let n = self.ambient_dim();
        let k = n - self.dim();
        Ok(subspaces_of_dim(n, self.prime(), self.side, k)?
            .into_iter()
            .filter(|w| self.join(w).is_full())
            .collect())
    }

    fn sort_key(&self) -> (Side, usize, u8, usize, &[u8]) {
        (self.side, self.ambient_dim(), self.prime().get(), self.dim(), self.basis.entries())
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dimension-major, then lexicographic on the flattened canonical basis.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl std::fmt::Display for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = match self.side {
            Side::Primal => "",
            Side::Dual => "*",
        };
        if self.is_zero() {
            write!(f, "{{0}}{tag}")
        } else {
            write!(f, "<{}>{tag}", self.basis)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SubspaceRepr {
    n: usize,
    p: Prime,
    side: Side,
    basis: Vec<Vec<u32>>,
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SubspaceRepr { n: self.ambient_dim(), p: self.prime(), side: self.side, basis: self.basis.to_rows() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = SubspaceRepr::deserialize(d)?;
        Subspace::canonical(&r.basis, r.n, r.p, r.side).map_err(serde::de::Error::custom)
    }
}

/// Gaussian binomial coefficient: the number of k-dimensional subspaces of GF(q)^n.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= (q as u128).pow((n - i) as u32) - 1;
        den *= (q as u128).pow((i + 1) as u32) - 1;
    }
    (num / den) as u64
}

/// All k-dimensional subspaces in canonical order.
pub fn subspaces_of_dim(n: usize, p: Prime, side: Side, k: usize) -> Result<Vec<Subspace>> {
    check_dim(n)?;
    let count = gaussian_binomial(n, k, p.get() as u64);
    if count > MAX_SUBSPACES {
        return Err(Error::TooLarge(format!("{count} subspaces of dimension {k}")));
    }
    let mut out = Vec::with_capacity(count as usize);
    for pivots in combinations(n, k) {
        // free positions: (row, col) with col > pivot[row] and col not a pivot
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| ((pc + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let mut values = vec![0u8; free.len()];
        loop {
            let mut data = vec![0u8; k * n];
            for (r, &pc) in pivots.iter().enumerate() {
                data[r * n + pc] = 1;
            }
            for (&(r, c), &v) in free.iter().zip(&values) {
                data[r * n + c] = v;
            }
            out.push(Subspace { side, basis: Mat::from_raw(p, k, n, data) });
            if !odometer(&mut values, p.get()) {
                break;
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Enumerates subspaces of V (primal side).
pub fn enumerate_subspaces(n: usize, p: Prime, filter: SubspaceFilter) -> Result<Vec<Subspace>> {
    enumerate_subspaces_on(n, p, Side::Primal, filter)
}

pub fn enumerate_subspaces_on(n: usize, p: Prime, side: Side, filter: SubspaceFilter) -> Result<Vec<Subspace>> {
    check_dim(n)?;
    let total: u64 = (0..=n).map(|k| gaussian_binomial(n, k, p.get() as u64)).sum();
    if total > MAX_SUBSPACES {
        return Err(Error::TooLarge(format!("{total} subspaces of GF({p})^{n}")));
    }
    let dims = match filter {
        SubspaceFilter::All => 0..=n,
        SubspaceFilter::Proper => 0..=n - 1,
        SubspaceFilter::Nonzero => 1..=n,
    };
    let mut out = Vec::new();
    for k in dims {
        out.extend(subspaces_of_dim(n, p, side, k)?);
    }
    Ok(out)
}

/// Increments `digits` as a base-`base` counter (last digit fastest).
/// Returns false once the counter wraps around to all zeros.
pub(crate) fn odometer(digits: &mut [u8], base: u8) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// A fixed, ordered family of subspaces of one ambient space.
#[derive(Debug, Clone)]
pub struct Lattice {
    n: usize,
    p: Prime,
    side: Side,
    objects: Vec<Subspace>,
    index: HashMap<Subspace, usize>,
}

impl Lattice {
    pub fn new(n: usize, p: Prime, side: Side, filter: SubspaceFilter) -> Result<Lattice> {
        let objects = enumerate_subspaces_on(n, p, side, filter)?;
        Ok(Lattice::from_objects(n, p, side, objects))
    }

    /// A sub-family, e.g. the subspaces of a fixed complement. Sorted into
    /// canonical order.
    pub fn from_objects(n: usize, p: Prime, side: Side, mut objects: Vec<Subspace>) -> Lattice {
        objects.sort();
        objects.dedup();
        let index = objects.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Lattice { n, p, side, objects, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn objects(&self) -> &[Subspace] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn get(&self, i: usize) -> &Subspace {
        &self.objects[i]
    }

    pub fn index_of(&self, s: &Subspace) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn contains(&self, s: &Subspace) -> bool {
        self.index.contains_key(s)
    }

    /// Objects of the principal ideal generated by `c`: the subobjects of `c`.
    pub fn ideal(&self, c: &Subspace) -> Vec<&Subspace> {
        self.objects.iter().filter(|a| a.is_subspace_of(c)).collect()
    }

    /// Total number of morphisms between all ordered pairs of objects.
    pub fn hom_count(&self) -> u64 {
        let p = self.p.get() as u64;
        let mut total = 0u64;
        for a in &self.objects {
            for b in &self.objects {
                total = total.saturating_add(p.saturating_pow((a.dim() * b.dim()) as u32));
            }
        }
        total
    }
}

/// A linear map between two subspaces of the same ambient space, written in
/// the canonical bases of its domain and codomain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    dom: Subspace,
    cod: Subspace,
    map: Mat,
}

impl Morphism {
    pub fn new(dom: Subspace, cod: Subspace, map: Mat) -> Result<Morphism> {
        dom.same_space(&cod)?;
        if map.rows() != dom.dim() || map.cols() != cod.dim() || map.prime() != dom.prime() {
            return Err(Error::ShapeError(format!(
                "a {}x{} matrix cannot map a {}-dimensional space into a {}-dimensional one",
                map.rows(),
                map.cols(),
                dom.dim(),
                cod.dim()
            )));
        }
        Ok(Morphism { dom, cod, map })
    }

    pub fn identity(a: &Subspace) -> Morphism {
        Morphism { dom: a.clone(), cod: a.clone(), map: Mat::identity(a.prime(), a.dim()) }
    }

    pub fn zero(a: &Subspace, b: &Subspace) -> Morphism {
        Morphism { dom: a.clone(), cod: b.clone(), map: Mat::zeros(a.prime(), a.dim(), b.dim()) }
    }

    /// The morphism sending the i-th basis vector of `dom` to the i-th row of
    /// `images` (ambient coordinates). Fails if some image lies outside `cod`.
    pub fn from_images(dom: &Subspace, cod: &Subspace, images: &Mat) -> Result<Morphism> {
        dom.same_space(cod)?;
        if images.rows() != dom.dim() || images.cols() != dom.ambient_dim() {
            return Err(Error::ShapeError("one ambient image per basis vector expected".into()));
        }
        let mut data = Vec::with_capacity(dom.dim() * cod.dim());
        for r in images.row_iter() {
            data.extend(cod.coords(r).ok_or(Error::NotIncluded)?);
        }
        Ok(Morphism {
            dom: dom.clone(),
            cod: cod.clone(),
            map: Mat::from_raw(dom.prime(), dom.dim(), cod.dim(), data),
        })
    }

    /// Restriction of the ambient map `t` to `dom`, corestricted to `cod`.
    pub fn restrict(t: &Mat, dom: &Subspace, cod: &Subspace) -> Result<Morphism> {
        if t.rows() != dom.ambient_dim() || t.cols() != dom.ambient_dim() {
            return Err(Error::ShapeError("ambient map has the wrong size".into()));
        }
        Morphism::from_images(dom, cod, &dom.basis.mul_unchecked(t))
    }

    /// All linear maps `a -> b`.
    pub fn all_between(a: &Subspace, b: &Subspace) -> Result<Vec<Morphism>> {
        let p = a.prime();
        let cells = a.dim() * b.dim();
        let count = (p.get() as u64).saturating_pow(cells as u32);
        if count > MAX_HOM {
            return Err(Error::TooLarge(format!("{count} morphisms {a} -> {b}")));
        }
        let mut out = Vec::with_capacity(count as usize);
        let mut digits = vec![0u8; cells];
        loop {
            out.push(Morphism {
                dom: a.clone(),
                cod: b.clone(),
                map: Mat::from_raw(p, a.dim(), b.dim(), digits.clone()),
            });
            if !odometer(&mut digits, p.get()) {
                break;
            }
        }
        Ok(out)
    }

    pub fn dom(&self) -> &Subspace {
        &self.dom
    }

    pub fn cod(&self) -> &Subspace {
        &self.cod
    }

    pub fn map(&self) -> &Mat {
        &self.map
    }

    /// Ambient images of the domain's basis vectors.
    pub fn images(&self) -> Mat {
        self.map.mul_unchecked(&self.cod.basis)
    }

    /// Applies the morphism to an ambient vector of the domain.
    pub fn apply(&self, v: &[u8]) -> Result<Vec<u8>> {
        let c = self.dom.coords(v).ok_or(Error::NotIncluded)?;
        Ok(self.cod.basis.apply(&self.map.apply(&c)))
    }

    /// `self` followed by `g`.
    pub fn compose(&self, g: &Morphism) -> Result<Morphism> {
        if self.cod != g.dom {
            return Err(Error::ShapeError(format!("codomain {} is not the domain {}", self.cod, g.dom)));
        }
        Ok(Morphism { dom: self.dom.clone(), cod: g.cod.clone(), map: self.map.mul_unchecked(&g.map) })
    }

    /// Null space, as a subspace of the domain.
    pub fn kernel(&self) -> Subspace {
        let k = self.map.left_kernel_basis();
        Subspace::span(&k.mul_unchecked(&self.dom.basis), self.dom.side)
    }

    /// Image, as a subspace of the codomain.
    pub fn image(&self) -> Subspace {
        Subspace::span(&self.images(), self.dom.side)
    }

    pub fn rank(&self) -> usize {
        self.map.rank()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.dom.dim() == self.cod.dim() && self.rank() == self.dom.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.cod.dim()
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.map == Mat::identity(self.map.prime(), self.dom.dim())
    }

    pub fn inverse(&self) -> Result<Morphism> {
        if !self.is_isomorphism() {
            return Err(Error::NotInvertible);
        }
        Ok(Morphism { dom: self.cod.clone(), cod: self.dom.clone(), map: self.map.invert()? })
    }

    /// Same map, viewed with a larger (or smaller) codomain containing its image.
    pub fn with_codomain(&self, cod: &Subspace) -> Result<Morphism> {
        Morphism::from_images(&self.dom, cod, &self.images())
    }
}

impl std::fmt::Display for Morphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} -[{}]-> {}", self.dom, self.map, self.cod)
    }
}

/// Inclusion `j: A -> B` with the retraction `q: B -> A` along the canonical
/// complement of A in B, so that `j q = 1_A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inclusion {
    pub j: Morphism,
    pub q: Morphism,
}

pub fn inclusion(a: &Subspace, b: &Subspace) -> Result<Inclusion> {
    a.same_space(b)?;
    if !a.is_subspace_of(b) {
        return Err(Error::NotIncluded);
    }
    let j = Morphism::from_images(a, b, a.basis())?;
    let along = a.canonical_complement_in(b)?;
    let q = projection(b, a, &along)?;
    Ok(Inclusion { j, q })
}

/// Projection of `dom` onto `onto` along `along`, where `onto ⊕ along = dom`.
pub fn projection(dom: &Subspace, onto: &Subspace, along: &Subspace) -> Result<Morphism> {
    if !onto.is_direct_sum_in(along, dom) {
        return Err(Error::NotADirectSum);
    }
    let stacked = onto.basis.vstack(&along.basis)?;
    let x = stacked.solve_left(&dom.basis).ok_or(Error::NotADirectSum)?;
    let coeffs = x.columns(0..onto.dim());
    Morphism::new(dom.clone(), onto.clone(), coeffs)
}

/// Row-reduced form, rank, kernel `{v : v A = 0}` and row space of `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelImage {
    pub rref: Mat,
    pub rank: usize,
    pub kernel: Subspace,
    pub image: Subspace,
}

pub fn rref_kernel_image(a: &Mat) -> KernelImage {
    let r = a.rref();
    KernelImage {
        rank: r.rank(),
        rref: r.matrix,
        kernel: Subspace::span(&a.left_kernel_basis(), Side::Primal),
        image: Subspace::span(a, Side::Primal),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    fn sub(p: u32, n: usize, vs: &[&[u32]]) -> Subspace {
        let rows: Vec<Vec<u32>> = vs.iter().map(|v| v.to_vec()).collect();
        Subspace::canonical(&rows, n, gf(p), Side::Primal).unwrap()
    }

    #[test]
    fn canonical_examples() {
        let a = sub(2, 2, &[&[1, 1], &[0, 0]]);
        assert_eq!(a.dim(), 1);
        assert_eq!(a.basis().to_rows(), vec![vec![1, 1]]);
        assert!(sub(2, 2, &[]).is_zero());
        assert_eq!(sub(2, 2, &[&[0, 1], &[1, 0]]).basis(), &Mat::identity(gf(2), 2));
        assert!(matches!(
            Subspace::canonical(&[vec![1, 0, 1]], 2, gf(2), Side::Primal),
            Err(Error::ShapeError(_))
        ));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_subspaces(2, gf(2), SubspaceFilter::All).unwrap().len(), 5);
        assert_eq!(enumerate_subspaces(2, gf(2), SubspaceFilter::Proper).unwrap().len(), 4);
        assert_eq!(enumerate_subspaces(3, gf(2), SubspaceFilter::All).unwrap().len(), 16);
        let one = enumerate_subspaces(1, gf(2), SubspaceFilter::Proper).unwrap();
        assert_eq!(one.len(), 1);
        assert!(one[0].is_zero());
        assert_eq!(gaussian_binomial(2, 1, 2), 3);
    }

    #[test]
    fn enumeration_matches_brute_force_spans() {
        // oracle: span every set of up to n vectors and collect the distinct results
        for (p, n) in [(2u32, 3usize), (3, 2)] {
            let prime = gf(p);
            let vectors: Vec<Vec<u32>> = (0..(p as usize).pow(n as u32))
                .map(|mut code| {
                    let mut v = vec![0u32; n];
                    for x in v.iter_mut().rev() {
                        *x = (code % p as usize) as u32;
                        code /= p as usize;
                    }
                    v
                })
                .collect();
            let mut seen = std::collections::BTreeSet::new();
            seen.insert(Subspace::zero(n, prime, Side::Primal));
            let mut frontier: Vec<Vec<Vec<u32>>> = vec![vec![]];
            for _ in 0..n {
                let mut next = Vec::new();
                for set in &frontier {
                    for v in &vectors {
                        let mut s = set.clone();
                        s.push(v.clone());
                        seen.insert(Subspace::canonical(&s, n, prime, Side::Primal).unwrap());
                        next.push(s);
                    }
                }
                frontier = next;
            }
            let listed = enumerate_subspaces(n, prime, SubspaceFilter::All).unwrap();
            assert_eq!(listed, seen.into_iter().collect::<Vec<_>>());
        }
    }

    #[test]
    fn enumeration_is_dimension_major() {
        let all = enumerate_subspaces(3, gf(3), SubspaceFilter::All).unwrap();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.windows(2).all(|w| w[0].dim() <= w[1].dim()));
    }

    #[test]
    fn too_large_is_reported() {
        assert!(matches!(enumerate_subspaces(6, gf(2), SubspaceFilter::All), Err(Error::TooLarge(_))));
    }

    #[test]
    fn complement_examples() {
        let a = sub(2, 2, &[&[0, 1]]);
        let all = a.all_complements().unwrap();
        assert_eq!(all, vec![sub(2, 2, &[&[1, 0]]), sub(2, 2, &[&[1, 1]])]);
        let z = Subspace::zero(2, gf(2), Side::Primal);
        assert_eq!(z.all_complements().unwrap(), vec![Subspace::full(2, gf(2), Side::Primal)]);
        assert_eq!(z.canonical_complement(), Subspace::full(2, gf(2), Side::Primal));
        assert_eq!(sub(2, 2, &[&[1, 0]]).canonical_complement(), sub(2, 2, &[&[0, 1]]));
    }

    #[test]
    fn complement_counts_match_formula() {
        for (p, n) in [(2u32, 1usize), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)] {
            for a in enumerate_subspaces(n, gf(p), SubspaceFilter::All).unwrap() {
                let k = a.dim();
                let comps = a.all_complements().unwrap();
                assert_eq!(comps.len() as u64, (p as u64).pow((k * (n - k)) as u32));
                assert!(comps.iter().all(|w| a.meet(w).is_zero() && a.join(w).is_full()));
                assert!(comps.contains(&a.canonical_complement()));
            }
        }
    }

    #[test]
    fn annihilator_examples() {
        let a = sub(2, 2, &[&[1, 0]]);
        let ann = a.annihilator();
        assert_eq!(ann.side(), Side::Dual);
        assert_eq!(ann.basis().to_rows(), vec![vec![0, 1]]);
        let z = Subspace::zero(2, gf(2), Side::Primal);
        assert_eq!(z.annihilator(), Subspace::full(2, gf(2), Side::Dual));
        assert_eq!(Subspace::full(2, gf(2), Side::Primal).annihilator(), Subspace::zero(2, gf(2), Side::Dual));
    }

    #[test]
    fn annihilator_duality_laws() {
        for (p, n) in [(2u32, 1usize), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)] {
            let all = enumerate_subspaces(n, gf(p), SubspaceFilter::All).unwrap();
            for a in &all {
                let ann = a.annihilator();
                assert_eq!(ann.dim(), n - a.dim());
                assert_eq!(&ann.annihilator(), a);
                for b in &all {
                    assert_eq!(a.is_subspace_of(b), b.annihilator().is_subspace_of(&ann));
                }
            }
        }
    }

    #[test]
    fn inclusion_examples() {
        let p = gf(2);
        let z = Subspace::zero(2, p, Side::Primal);
        let l = sub(2, 2, &[&[1, 0]]);
        let inc = inclusion(&z, &l).unwrap();
        assert_eq!(inc.j.map().rows(), 0);

        let v = Subspace::full(2, p, Side::Primal);
        let inc = inclusion(&l, &v).unwrap();
        assert!(inc.j.compose(&inc.q).unwrap().is_identity());

        let diag = sub(2, 2, &[&[1, 1]]);
        let inc = inclusion(&diag, &v).unwrap();
        assert_eq!(inc.j.map().to_rows(), vec![vec![1, 1]]);
        assert!(inc.j.compose(&inc.q).unwrap().is_identity());

        assert_eq!(inclusion(&l, &diag), Err(Error::NotIncluded));
    }

    #[test]
    fn inclusions_split_everywhere() {
        for (p, n) in [(2u32, 3usize), (3, 2), (3, 3)] {
            let all = enumerate_subspaces(n, gf(p), SubspaceFilter::All).unwrap();
            for a in &all {
                for b in all.iter().filter(|b| a.is_subspace_of(b)) {
                    let inc = inclusion(a, b).unwrap();
                    assert!(inc.j.compose(&inc.q).unwrap().is_identity());
                    assert_eq!(inc.j.image(), *a);
                }
            }
        }
    }

    #[test]
    fn kernel_image_of_all_ones() {
        let a = Mat::parse("1,1;1,1", gf(2)).unwrap();
        let ki = rref_kernel_image(&a);
        assert_eq!(ki.rank, 1);
        assert_eq!(ki.image, sub(2, 2, &[&[1, 1]]));
        assert_eq!(ki.kernel, sub(2, 2, &[&[1, 1]]));
        let z = rref_kernel_image(&Mat::zeros(gf(3), 2, 2));
        assert!(z.kernel.is_full());
        let i = rref_kernel_image(&Mat::identity(gf(3), 3));
        assert!(i.kernel.is_zero());
        assert_eq!(i.rank, 3);
    }

    #[test]
    fn subspace_json_round_trip() {
        let a = sub(3, 3, &[&[1, 2, 0], &[0, 0, 1]]).annihilator();
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"{"n":3,"p":3,"side":"dual","basis":[[1,1,0]]}"#);
        let back: Subspace = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<Subspace>(r#"{"n":2,"p":4,"side":"primal","basis":[]}"#).is_err());
    }

    #[test]
    fn preimage_and_image_under_invertible_map() {
        let t = Mat::parse("1,1,0;0,1,2;2,0,1", gf(3)).unwrap();
        assert!(t.is_invertible());
        for a in enumerate_subspaces(3, gf(3), SubspaceFilter::All).unwrap() {
            assert_eq!(a.image_under(&t).preimage_under(&t), a);
        }
    }
}
