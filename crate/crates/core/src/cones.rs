//! The normal category of subspaces of V: normal factorizations, normal
//! cones, their composition, and the principal cones of Sing(V).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Prime;
use crate::matrix::Mat;
use crate::semigroup::Endo;
use crate::subspace::{inclusion, projection, Lattice, Morphism, Side, Subspace, SubspaceFilter};
use crate::table::SemigroupTable;

/// Largest semigroup for which cone tables are built component by component.
pub const MAX_CONE_TABLE: usize = 1000;

/// `f = q u j`: a retraction onto a complement of the kernel, an isomorphism
/// onto the image, and the inclusion of the image into the codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub q: Morphism,
    pub u: Morphism,
    pub j: Morphism,
}

impl Factorization {
    pub fn compose(&self) -> Morphism {
        self.q.compose(&self.u).and_then(|qu| qu.compose(&self.j)).expect("factors are composable")
    }
}

pub fn normal_factorization(f: &Morphism) -> Result<Factorization> {
    let kernel = f.kernel();
    let complement = kernel.canonical_complement_in(f.dom())?;
    let q = projection(f.dom(), &complement, &kernel)?;
    let image = f.image();
    let rows: Vec<Vec<u8>> = complement.basis().row_iter().map(|r| f.apply(r)).collect::<Result<_>>()?;
    let images = Mat::from_row_slices(f.dom().prime(), f.dom().ambient_dim(), rows.iter().map(|r| r.as_slice()));
    let u = Morphism::from_images(&complement, &image, &images)?;
    let j = inclusion(&image, f.cod())?.j;
    Ok(Factorization { q, u, j })
}

/// `f° = q u`, the surjection of the domain onto the image of `f`.
pub fn epimorphic_component(f: &Morphism) -> Result<Morphism> {
    let fac = normal_factorization(f)?;
    fac.q.compose(&fac.u)
}

/// A normal cone: one morphism into the vertex per subspace of V, listed in
/// the lattice order of the category that built it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalCone {
    vertex: Subspace,
    components: Vec<Morphism>,
}

#[derive(Serialize)]
struct ConeJson<'a> {
    vertex: &'a Subspace,
    components: Vec<Vec<Vec<u32>>>,
}

impl NormalCone {
    pub fn vertex(&self) -> &Subspace {
        &self.vertex
    }

    pub fn components(&self) -> &[Morphism] {
        &self.components
    }

    pub fn component(&self, a: &Subspace) -> Option<&Morphism> {
        self.components.binary_search_by(|m| m.dom().cmp(a)).ok().map(|i| &self.components[i])
    }

    /// An idempotent cone has the identity as its component at the vertex.
    pub fn is_idempotent(&self) -> bool {
        self.component(&self.vertex).is_some_and(Morphism::is_identity)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let components = self.components.iter().map(|m| m.map().to_rows()).collect();
        serde_json::to_value(ConeJson { vertex: &self.vertex, components }).expect("serializable")
    }
}

/// Subspaces of V (or of V*) with their linear maps. Cones are indexed by
/// every subspace, V included, so that inclusions into V tie the
/// components together; vertices and M-sets range over proper subspaces.
#[derive(Debug, Clone)]
pub struct SubspaceCategory {
    lattice: Lattice,
    inclusions: Vec<(usize, usize, Morphism)>,
}

impl SubspaceCategory {
    pub fn new(n: usize, p: Prime, side: Side) -> Result<SubspaceCategory> {
        let lattice = Lattice::new(n, p, side, SubspaceFilter::All)?;
        let objs = lattice.objects();
        let mut inclusions = Vec::new();
        for (i, a) in objs.iter().enumerate() {
            for (k, b) in objs.iter().enumerate() {
                if i != k && a.is_subspace_of(b) {
                    inclusions.push((i, k, inclusion(a, b)?.j));
                }
            }
        }
        Ok(SubspaceCategory { lattice, inclusions })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn n(&self) -> usize {
        self.lattice.n()
    }

    pub fn prime(&self) -> Prime {
        self.lattice.prime()
    }

    pub fn side(&self) -> Side {
        self.lattice.side()
    }

    /// Objects of the category: the proper subspaces.
    pub fn objects(&self) -> impl Iterator<Item = &Subspace> + '_ {
        self.lattice.objects().iter().filter(|a| a.is_proper())
    }

    /// Checks both cone axioms and builds the cone.
    pub fn cone(&self, vertex: Subspace, components: Vec<Morphism>) -> Result<NormalCone> {
        self.validate(&vertex, &components)?;
        Ok(NormalCone { vertex, components })
    }

    pub fn validate(&self, vertex: &Subspace, components: &[Morphism]) -> Result<()> {
        let objs = self.lattice.objects();
        if !self.lattice.contains(vertex) || !vertex.is_proper() {
            return Err(Error::NotACone(format!("vertex {vertex} is not a proper subspace")));
        }
        if components.len() != objs.len() {
            return Err(Error::NotACone(format!("{} components for {} objects", components.len(), objs.len())));
        }
        for (a, m) in objs.iter().zip(components) {
            if m.dom() != a || m.cod() != vertex {
                return Err(Error::NotACone(format!("component {m} is not a map {a} -> {vertex}")));
            }
        }
        for (i, k, j) in &self.inclusions {
            if j.compose(&components[*k])? != components[*i] {
                return Err(Error::NotACone(format!("incompatible at {} <= {}", objs[*i], objs[*k])));
            }
        }
        if !components.iter().any(|m| m.dom().is_proper() && m.is_isomorphism()) {
            return Err(Error::NotACone("no component is an isomorphism".into()));
        }
        Ok(())
    }

    /// The principal cone of a singular transformation: its restrictions.
    pub fn principal(&self, alpha: &Mat) -> Result<NormalCone> {
        let n = self.n();
        if alpha.rows() != n || alpha.cols() != n || alpha.prime() != self.prime() {
            return Err(Error::ShapeError(format!("expected a {n}x{n} matrix over GF({})", self.prime())));
        }
        let vertex = Subspace::span(alpha, self.side());
        if !vertex.is_proper() {
            return Err(Error::NotSingular);
        }
        let components = self
            .lattice
            .objects()
            .iter()
            .map(|a| Morphism::restrict(alpha, a, &vertex))
            .collect::<Result<_>>()?;
        Ok(NormalCone { vertex, components })
    }

    /// The transformation whose principal cone is `cone`, read off the
    /// components at the coordinate lines.
    pub fn cone_to_map(&self, cone: &NormalCone) -> Result<Mat> {
        self.validate(&cone.vertex, &cone.components)?;
        let (n, p) = (self.n(), self.prime());
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut e = vec![0u32; n];
            e[i] = 1;
            let line = Subspace::canonical(&[e.clone()], n, p, self.side())?;
            let unit: Vec<u8> = e.iter().map(|&x| x as u8).collect();
            let image = cone.component(&line).expect("every line is indexed").apply(&unit)?;
            rows.push(image.into_iter().map(u32::from).collect());
        }
        Mat::from_rows(p, n, &rows)
    }

    /// `γ·δ`: the components of γ followed by the epimorphic component of
    /// δ at the vertex of γ.
    pub fn compose(&self, gamma: &NormalCone, delta: &NormalCone) -> Result<NormalCone> {
        let at_vertex = delta
            .component(&gamma.vertex)
            .ok_or_else(|| Error::NotACone(format!("no component at {}", gamma.vertex)))?;
        let epi = epimorphic_component(at_vertex)?;
        let components = gamma.components.iter().map(|c| c.compose(&epi)).collect::<Result<_>>()?;
        Ok(NormalCone { vertex: epi.cod().clone(), components })
    }

    /// Proper objects at which the cone's component is an isomorphism.
    pub fn m_set(&self, cone: &NormalCone) -> Vec<Subspace> {
        cone.components.iter().filter(|m| m.dom().is_proper() && m.is_isomorphism()).map(|m| m.dom().clone()).collect()
    }

    /// Every normal cone, found by trying every assignment of morphisms to
    /// objects for every vertex. Only feasible for GF(2) and n <= 2.
    pub fn census(&self) -> Result<Vec<NormalCone>> {
        if self.prime().get() != 2 || self.n() > 2 {
            return Err(Error::TooLarge(format!("cone census over GF({})^{}", self.prime(), self.n())));
        }
        let objs = self.lattice.objects();
        let mut found = Vec::new();
        for vertex in self.objects() {
            let homs: Vec<Vec<Morphism>> =
                objs.iter().map(|a| Morphism::all_between(a, vertex)).collect::<Result<_>>()?;
            let mut choice = vec![0u8; objs.len()];
            // mixed-radix odometer over the hom-set sizes
            loop {
                let comps: Vec<Morphism> = homs.iter().zip(&choice).map(|(h, &c)| h[c as usize].clone()).collect();
                if self.validate(vertex, &comps).is_ok() {
                    found.push(NormalCone { vertex: vertex.clone(), components: comps });
                }
                let mut pos = 0;
                while pos < choice.len() {
                    choice[pos] += 1;
                    if (choice[pos] as usize) < homs[pos].len() {
                        break;
                    }
                    choice[pos] = 0;
                    pos += 1;
                }
                if pos == choice.len() {
                    break;
                }
            }
        }
        Ok(found)
    }

    /// Principal cones of the given transformations tabulated under cone
    /// composition.
    pub fn cone_table(&self, elems: &[Mat]) -> Result<SemigroupTable> {
        if elems.len() > MAX_CONE_TABLE {
            return Err(Error::TooLarge(format!("cone table of order {}", elems.len())));
        }
        let cones: Vec<NormalCone> = elems.iter().map(|a| self.principal(a)).collect::<Result<_>>()?;
        let labels = elems.iter().map(|a| a.to_string()).collect();
        SemigroupTable::from_product(&cones, labels, |g, d| self.compose(g, d).expect("cones of one category"))
    }
}

/// The semigroup of principal cones of Sing(V) with cone composition,
/// labelled by the inducing transformations.
pub fn build_cone_semigroup(n: usize, p: Prime) -> Result<SemigroupTable> {
    let cat = SubspaceCategory::new(n, p, Side::Primal)?;
    let sing = crate::semigroup::singular_endos(n, p)?;
    let mats: Vec<Mat> = sing.iter().map(|e| e.mat().clone()).collect();
    cat.cone_table(&mats)
}

/// Principal cone of an element of Sing(V).
pub fn principal_cone(cat: &SubspaceCategory, alpha: &Endo) -> Result<NormalCone> {
    cat.principal(alpha.mat())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{idempotents, singular_endos};
    use crate::table::{endo_table, find_isomorphism, EndoProduct};

    fn gf(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    fn sub(p: u32, n: usize, vs: &[&[u32]]) -> Subspace {
        let rows: Vec<Vec<u32>> = vs.iter().map(|v| v.to_vec()).collect();
        Subspace::canonical(&rows, n, gf(p), Side::Primal).unwrap()
    }

    fn cat(p: u32, n: usize) -> SubspaceCategory {
        SubspaceCategory::new(n, gf(p), Side::Primal).unwrap()
    }

    #[test]
    fn factorization_example() {
        let a = sub(2, 3, &[&[1, 0, 0], &[0, 1, 0]]);
        let b = sub(2, 3, &[&[0, 0, 1]]);
        let f = Morphism::from_images(&a, &b, &Mat::parse("0,0,1;0,0,0", gf(2)).unwrap()).unwrap();
        let fac = normal_factorization(&f).unwrap();
        assert_eq!(fac.q.cod(), &sub(2, 3, &[&[1, 0, 0]]));
        assert_eq!(fac.u.images(), Mat::parse("0,0,1", gf(2)).unwrap());
        assert!(fac.j.is_identity());
        assert_eq!(fac.compose(), f);
        let epi = epimorphic_component(&f).unwrap();
        assert_eq!(epi.images(), f.images());
        assert!(epi.is_surjective());
    }

    #[test]
    fn degenerate_factorizations() {
        let v = Subspace::full(2, gf(3), Side::Primal);
        let iso = Morphism::identity(&v);
        let fac = normal_factorization(&iso).unwrap();
        assert!(fac.q.is_identity() && fac.j.is_identity());
        let line = sub(3, 2, &[&[1, 2]]);
        let zero = Morphism::zero(&line, &v);
        let fac = normal_factorization(&zero).unwrap();
        assert!(fac.u.dom().is_zero() && fac.u.cod().is_zero());
        assert_eq!(fac.compose(), zero);
    }

    #[test]
    fn factorization_identity_everywhere() {
        for (p, n) in [(2u32, 2usize), (2, 3), (3, 2), (3, 3)] {
            let objs = crate::subspace::enumerate_subspaces(n, gf(p), SubspaceFilter::All).unwrap();
            for a in &objs {
                for b in &objs {
                    let homs = match Morphism::all_between(a, b) {
                        Ok(h) => h,
                        Err(_) => continue,
                    };
                    for f in homs.iter().step_by(1 + homs.len() / 64) {
                        let fac = normal_factorization(f).unwrap();
                        assert_eq!(&fac.compose(), f);
                        assert!(fac.u.is_isomorphism());
                        let split = inclusion(fac.q.cod(), a).unwrap().j.compose(&fac.q).unwrap();
                        assert!(split.is_identity());
                    }
                }
            }
        }
    }

    #[test]
    fn principal_cone_examples() {
        let c = cat(2, 2);
        let zero = c.principal(&Mat::zeros(gf(2), 2, 2)).unwrap();
        assert!(zero.vertex().is_zero());
        assert!(zero.components().iter().all(|m| m.rank() == 0));
        let e = Mat::parse("1,0;0,0", gf(2)).unwrap();
        let cone = c.principal(&e).unwrap();
        let diag = sub(2, 2, &[&[1, 1]]);
        assert_eq!(cone.component(&diag).unwrap().apply(&[1, 1]).unwrap(), vec![1, 0]);
        assert!(cone.is_idempotent());
        assert_eq!(c.principal(&Mat::identity(gf(2), 2)), Err(Error::NotSingular));
    }

    #[test]
    fn incompatible_components_are_rejected() {
        let c = cat(2, 2);
        let cone = c.principal(&Mat::parse("1,0;0,0", gf(2)).unwrap()).unwrap();
        let mut comps = cone.components().to_vec();
        let line = sub(2, 2, &[&[0, 1]]);
        let i = comps.iter().position(|m| m.dom() == &line).unwrap();
        comps[i] = Morphism::identity(&line).with_codomain(&line).unwrap();
        assert!(matches!(c.validate(cone.vertex(), &comps), Err(Error::NotACone(_))));
        let zero_comps: Vec<Morphism> = c.lattice().objects().iter().map(|a| Morphism::zero(a, cone.vertex())).collect();
        assert!(matches!(c.validate(cone.vertex(), &zero_comps), Err(Error::NotACone(_))));
    }

    #[test]
    fn census_matches_sing() {
        for n in [1usize, 2] {
            let c = cat(2, n);
            let census = c.census().unwrap();
            let sing = singular_endos(n, gf(2)).unwrap();
            assert_eq!(census.len(), sing.len());
            for cone in &census {
                let alpha = c.cone_to_map(cone).unwrap();
                assert_eq!(&c.principal(&alpha).unwrap(), cone);
                if cone.is_idempotent() {
                    let e = Endo::new(alpha).unwrap();
                    assert!(e.is_idempotent());
                    assert_eq!(e.image(), cone.vertex());
                }
            }
        }
        assert!(matches!(cat(3, 2).census(), Err(Error::TooLarge(_))));
    }

    #[test]
    fn composition_matches_matrix_product() {
        for (p, n) in [(2u32, 2usize), (3, 2)] {
            let c = cat(p, n);
            let sing = singular_endos(n, gf(p)).unwrap();
            for a in &sing {
                let ca = c.principal(a.mat()).unwrap();
                assert_eq!(&c.cone_to_map(&ca).unwrap(), a.mat());
                for b in &sing {
                    let cb = c.principal(b.mat()).unwrap();
                    let prod = c.compose(&ca, &cb).unwrap();
                    c.validate(prod.vertex(), prod.components()).unwrap();
                    assert_eq!(prod, c.principal(a.mul(b).mat()).unwrap());
                }
            }
        }
    }

    #[test]
    fn cone_semigroup_is_sing() {
        let sing = singular_endos(2, gf(2)).unwrap();
        let cones = build_cone_semigroup(2, gf(2)).unwrap();
        let plain = endo_table(&sing, &EndoProduct::Plain).unwrap();
        let map = find_isomorphism(&cones, &plain).unwrap();
        assert!(cones.is_isomorphism(&plain, &map));
    }

    #[test]
    fn idempotent_cones_fix_their_vertex() {
        let c = cat(2, 3);
        for e in idempotents(3, gf(2), true).unwrap() {
            let cone = c.principal(e.mat()).unwrap();
            assert!(cone.is_idempotent());
            let m = c.m_set(&cone);
            assert!(m.iter().all(|a| a.is_complement_of(e.kernel())));
        }
    }

    #[test]
    fn cone_json_lists_components_in_lattice_order() {
        let c = cat(2, 1);
        let cone = c.principal(&Mat::zeros(gf(2), 1, 1)).unwrap();
        assert_eq!(
            cone.to_json().to_string(),
            r#"{"components":[[],[[]]],"vertex":{"basis":[],"n":1,"p":2,"side":"primal"}}"#
        );
    }
}
