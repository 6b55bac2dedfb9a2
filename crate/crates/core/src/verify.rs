//! The verification suite behind the command-line checks: each function
//! returns named checks for one area at a given field and dimension.

use std::collections::HashSet;

use crate::cones::{normal_factorization, SubspaceCategory, MAX_CONE_TABLE};
use crate::crossconn::{
    chi_and_semigroup, check_crossconnection, formula_semigroup, check_local_isomorphism, classify_crossconnections, functors_equal,
    recover_theta, scalar_invariant, Classification, CrossConn,
};
use crate::dual::{annihilator_cone_table, build_normal_dual, h_set, h_set_by_factoring};
use crate::error::{Error, Result};
use crate::field::Prime;
use crate::matrix::Mat;
use crate::report::Check;
use crate::semigroup::{
    all_endos, general_linear_order, green, idempotent_from, idempotents, invertible_endos, singular_endos, Endo,
    GreenOracle,
};
use crate::subspace::{enumerate_subspaces_on, gaussian_binomial, Morphism, Side, Subspace, SubspaceFilter};
use crate::table::{endo_table, find_isomorphism, EndoProduct, SemigroupTable};
use crate::variant::{positions, reg_by_definition, VariantContext};

/// Automorphism groups up to this order are checked element by element;
/// larger ones through [`automorphism_sample`].
pub const MAX_FULL_GL: usize = 48;

/// Largest T_V for which every sandwich element is checked.
pub const MAX_FULL_SANDWICH: usize = 16;

/// Field and dimension accepted by [`verify_all`]: Sing(V) must be small
/// enough for its cone table.
pub fn check_size(n: usize, p: Prime) -> Result<()> {
    let sing = (p.get() as u64).pow((n * n) as u32) - general_linear_order(n, p.get() as u64);
    if n == 0 || sing as usize > MAX_CONE_TABLE {
        return Err(Error::TooLarge(format!("verification over GF({p})^{n}")));
    }
    Ok(())
}

fn count(n: usize, k: usize, p: Prime) -> u64 {
    gaussian_binomial(n, k, p.get() as u64)
}

fn complement_count(n: usize, k: usize, p: Prime) -> u64 {
    (p.get() as u64).pow((k * (n - k)) as u32)
}

fn same_cells(a: &SemigroupTable, b: &SemigroupTable) -> bool {
    a.order() == b.order() && (0..a.order()).all(|i| a.row(i) == b.row(i))
}

fn sing_table(sing: &[Endo]) -> Result<SemigroupTable> {
    endo_table(sing, &EndoProduct::Plain)
}

pub fn lattice_checks(n: usize, p: Prime) -> Result<Vec<Check>> {
    let all = enumerate_subspaces_on(n, p, Side::Primal, SubspaceFilter::All)?;
    let expected: u64 = (0..=n).map(|k| count(n, k, p)).sum();
    let by_dim = (0..=n).map(|k| (k, all.iter().filter(|a| a.dim() == k).count() as u64 == count(n, k, p)));
    Ok(vec![
        Check::new("lattice.subspace_count", all.len() as u64 == expected, format!("{} subspaces", all.len())),
        Check::all("lattice.count_by_dimension", by_dim),
        Check::all(
            "lattice.dimension_formula",
            all.iter().flat_map(|a| all.iter().map(move |b| (a, b))).map(|(a, b)| {
                (format!("{a} and {b}"), a.join(b).dim() + a.meet(b).dim() == a.dim() + b.dim())
            }),
        ),
        Check::run("lattice.complements", || {
            for a in &all {
                let comps = a.all_complements()?;
                let ok = comps.len() as u64 == complement_count(n, a.dim(), p)
                    && comps.iter().all(|c| c.is_complement_of(a))
                    && comps.contains(&a.canonical_complement());
                if !ok {
                    return Ok((false, a.to_string()));
                }
            }
            Ok((true, format!("{} subspaces", all.len())))
        }),
    ])
}

pub fn semigroup_checks(n: usize, p: Prime) -> Result<Vec<Check>> {
    let sing = singular_endos(n, p)?;
    let table = sing_table(&sing)?;
    let expected = (p.get() as u64).pow((n * n) as u32) - general_linear_order(n, p.get() as u64);
    let oracle = GreenOracle::new(&table);
    let idem = idempotents(n, p, true)?;
    let expected_idem: u64 = (0..n).map(|k| count(n, k, p) * complement_count(n, k, p)).sum();
    let lattice = enumerate_subspaces_on(n, p, Side::Primal, SubspaceFilter::All)?;
    Ok(vec![
        Check::new("semigroup.sing_order", sing.len() as u64 == expected, format!("{} elements", sing.len())),
        Check::all(
            "semigroup.green_oracle",
            (0..sing.len()).flat_map(|i| (0..sing.len()).map(move |j| (i, j))).map(|(i, j)| {
                (format!("{} and {}", sing[i], sing[j]), green(&sing[i], &sing[j]) == oracle.flags(i, j))
            }),
        ),
        Check::new(
            "semigroup.idempotent_count",
            idem.len() as u64 == expected_idem,
            format!("{} idempotents", idem.len()),
        ),
        Check::run("semigroup.idempotent_from_splitting", || {
            let mut built = HashSet::new();
            for k in &lattice {
                for w in k.all_complements()? {
                    let e = idempotent_from(k, &w)?;
                    if !(e.is_idempotent() && e.kernel() == k && e.image() == &w) {
                        return Ok((false, e.to_string()));
                    }
                    if !k.is_zero() {
                        built.insert(e);
                    }
                }
            }
            Ok((built == idem.iter().cloned().collect(), format!("{} splittings", built.len())))
        }),
        Check::new(
            "semigroup.sing_regular",
            table.regular_elements().len() == sing.len(),
            format!("{} regular", table.regular_elements().len()),
        ),
    ])
}

pub fn cone_checks(n: usize, p: Prime) -> Result<Vec<Check>> {
    let cat = SubspaceCategory::new(n, p, Side::Primal)?;
    let sing = singular_endos(n, p)?;
    let lattice = cat.lattice().objects().to_vec();
    let full = Subspace::full(n, p, Side::Primal);
    let mut checks = vec![
        Check::run("cones.factorization", || {
            for a in &sing {
                for dom in &lattice {
                    let f = Morphism::restrict(a.mat(), dom, &full)?;
                    let fac = normal_factorization(&f)?;
                    if fac.compose() != f || !fac.u.is_isomorphism() || !fac.q.is_surjective() {
                        return Ok((false, format!("{a} on {dom}")));
                    }
                }
            }
            Ok((true, format!("{} restrictions", sing.len() * lattice.len())))
        }),
        Check::run("cones.principal_round_trip", || {
            for a in &sing {
                if &cat.cone_to_map(&cat.principal(a.mat())?)? != a.mat() {
                    return Ok((false, a.to_string()));
                }
            }
            Ok((true, format!("{} elements", sing.len())))
        }),
    ];
    let mats: Vec<Mat> = sing.iter().map(|a| a.mat().clone()).collect();
    let cones = cat.cone_table(&mats)?;
    let plain = sing_table(&sing)?;
    checks.push(Check::new("cones.composition_is_product", same_cells(&cones, &plain), format!("order {}", cones.order())));
    checks.push(match find_isomorphism(&cones, &plain) {
        Some(map) => Check::new("cones.isomorphic_to_sing", true, format!("order {}", map.len())),
        None => Check::new("cones.isomorphic_to_sing", false, "no isomorphism"),
    });
    if p.get() == 2 && n <= 2 {
        checks.push(Check::run("cones.census", || {
            let found = cat.census()?;
            let maps: HashSet<Mat> = found.iter().map(|c| cat.cone_to_map(c)).collect::<Result<_>>()?;
            let ok = found.len() == sing.len() && maps == mats.iter().cloned().collect();
            Ok((ok, format!("{} cones", found.len())))
        }));
    }
    checks.push(Check::run("cones.m_sets", || {
        for e in idempotents(n, p, true)? {
            let m: Vec<Subspace> = cat.m_set(&cat.principal(e.mat())?);
            let by_complement: Vec<Subspace> =
                e.kernel().all_complements()?.into_iter().filter(Subspace::is_proper).collect();
            let size = complement_count(n, e.kernel().dim(), p);
            if m != by_complement || m.len() as u64 != size {
                return Ok((false, e.to_string()));
            }
        }
        Ok((true, "component and complement characterizations agree".into()))
    }));
    Ok(checks)
}

pub fn dual_checks(n: usize, p: Prime) -> Result<Vec<Check>> {
    let primal = enumerate_subspaces_on(n, p, Side::Primal, SubspaceFilter::All)?;
    let dual = enumerate_subspaces_on(n, p, Side::Dual, SubspaceFilter::All)?;
    let both: Vec<&Subspace> = primal.iter().chain(&dual).collect();
    let nd = build_normal_dual(n, p)?;
    let proper_dual: u64 = (1..n).map(|k| count(n, k, p)).sum::<u64>() + 1;
    let mut checks = vec![
        Check::all("dual.annihilator_dimension", both.iter().map(|a| (a, a.annihilator().dim() == n - a.dim()))),
        Check::all("dual.double_annihilator", both.iter().map(|a| (a, &a.annihilator().annihilator() == *a))),
        Check::all(
            "dual.inclusion_reversing",
            primal.iter().flat_map(|a| primal.iter().map(move |b| (a, b))).map(|(a, b)| {
                (format!("{a} and {b}"), a.is_subspace_of(b) == b.annihilator().is_subspace_of(&a.annihilator()))
            }),
        ),
        Check::new(
            "dual.objects",
            nd.p_injective && nd.p_onto_proper_dual && nd.objects.len() as u64 == proper_dual,
            format!("{} objects", nd.objects.len()),
        ),
        Check::new("dual.inclusions", nd.inclusions_match, "inclusions of functors match inclusions of annihilators"),
        Check::new("dual.morphisms", nd.faithful && nd.full, format!("faithful {}, full {}", nd.faithful, nd.full)),
    ];
    let sing = singular_endos(n, p)?;
    checks.push(Check::run("dual.h_sets", || {
        for e in idempotents(n, p, true)? {
            for a in &primal {
                if h_set(&e, a, &sing)? != h_set_by_factoring(&e, a)? {
                    return Ok((false, format!("{e} at {a}")));
                }
            }
        }
        Ok((true, "filter and factoring agree".into()))
    }));
    checks.push(Check::run("dual.m_sets", || {
        for h in &nd.functors {
            if h.m_set()?.len() as u64 != complement_count(n, h.key().dim(), p) {
                return Ok((false, h.key().to_string()));
            }
        }
        Ok((true, format!("{} functors", nd.functors.len())))
    }));
    checks.push(Check::run("dual.cone_table_is_opposite", || {
        let table = annihilator_cone_table(n, p)?;
        let reversed = endo_table(&sing, &EndoProduct::Reversed)?;
        let iso = find_isomorphism(&table, &sing_table(&sing)?.opposite());
        Ok((same_cells(&table, &reversed) && iso.is_some(), format!("order {}", table.order())))
    }));
    Ok(checks)
}

/// All of GL(V) when small, otherwise a fixed set of generators and
/// representatives.
pub fn automorphism_sample(n: usize, p: Prime) -> Result<Vec<Endo>> {
    if general_linear_order(n, p.get() as u64) <= MAX_FULL_GL as u64 {
        return invertible_endos(n, p);
    }
    let mut out = vec![Endo::identity(n, p)];
    let unit = |f: &dyn Fn(usize, usize) -> u32| -> Result<Endo> {
        let rows: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        Endo::new(Mat::from_rows(p, n, &rows)?)
    };
    out.push(unit(&|i, j| u32::from(j == (i + 1) % n))?);
    out.push(unit(&|i, j| u32::from(i == j || (i == 0 && j == 1)))?);
    if p.get() > 2 {
        out.push(unit(&|i, j| if i != j { 0 } else if i == 0 { 2 } else { 1 })?);
    }
    out.dedup();
    Ok(out)
}

/// All of T_V when small, otherwise one representative of each kind of
/// sandwich element.
pub fn sandwich_sample(n: usize, p: Prime) -> Result<Vec<Endo>> {
    if (p.get() as usize).pow((n * n) as u32) <= MAX_FULL_SANDWICH {
        return all_endos(n, p);
    }
    let from = |f: &dyn Fn(usize, usize) -> u32| -> Result<Endo> {
        let rows: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        Endo::new(Mat::from_rows(p, n, &rows)?)
    };
    let mut out = vec![
        Endo::zero(n, p),
        Endo::identity(n, p),
        from(&|i, j| u32::from(i == 0 && j == 0))?,
        from(&|i, _| u32::from(i == 0))?,
        from(&|i, j| u32::from(i == 0 && j == 1))?,
    ];
    if n >= 3 {
        out.push(from(&|i, j| u32::from(i == j && i < 2))?);
    }
    Ok(out)
}

pub fn crossconn_checks(n: usize, p: Prime, thetas: &[Endo]) -> Result<Vec<Check>> {
    let sing_order = singular_endos(n, p)?.len();
    let run_all = |name: &str, f: &dyn Fn(&Endo) -> Result<bool>| {
        Check::run(name, || {
            for theta in thetas {
                if !f(theta)? {
                    return Ok((false, theta.to_string()));
                }
            }
            Ok((true, format!("{} automorphisms", thetas.len())))
        })
    };
    let mut checks = vec![
        run_all("crossconn.gamma_is_crossconnection", &|t| {
            let c = check_crossconnection(&CrossConn::gamma(t)?)?;
            Ok(c.failure.is_none())
        }),
        run_all("crossconn.delta_is_crossconnection", &|t| {
            let c = check_crossconnection(&CrossConn::delta(t)?)?;
            Ok(c.failure.is_none())
        }),
        run_all("crossconn.local_isomorphisms", &|t| {
            Ok(check_local_isomorphism(&CrossConn::gamma(t)?)?.is_none()
                && check_local_isomorphism(&CrossConn::delta(t)?)?.is_none())
        }),
    ];
    if n <= 2 {
        let linked: Vec<_> = thetas.iter().map(chi_and_semigroup).collect::<Result<_>>()?;
        let per_theta = |name: &str, ok: &dyn Fn(usize) -> bool| {
            Check::all(name, thetas.iter().enumerate().map(|(i, t)| (t, ok(i))))
        };
        checks.push(per_theta("crossconn.chi_natural", &|i| linked[i].natural && linked[i].chi_bijective));
        checks.push(per_theta("crossconn.transpose_carriers", &|i| linked[i].carriers_match));
        checks.push(per_theta("crossconn.linked_pairs_formula", &|i| linked[i].matches_formula));
        checks.push(per_theta("crossconn.linked_semigroup_order", &|i| linked[i].pairs.len() == sing_order));
        checks.push(per_theta("crossconn.linked_semigroup_isomorphic", &|i| {
            linked[i].projection_isomorphism && linked[i].isomorphism.is_some()
        }));
    } else {
        // the bifunctor construction is exhaustive and only run for planes
        checks.push(run_all("crossconn.linked_semigroup_isomorphic", &|t| {
            let s = formula_semigroup(t)?;
            Ok(s.pairs.len() == sing_order && s.projection_isomorphism && s.isomorphism.is_some())
        }));
    }
    checks.push(run_all("crossconn.recover_theta", &|t| {
        let delta = CrossConn::delta(t)?;
        let found = recover_theta(&delta)?;
        let scalar = (1..p.get()).any(|c| t.scale(c) == found);
        Ok(scalar && functors_equal(&delta, &CrossConn::delta(&found)?)?)
    }));
    checks.push(run_all("crossconn.scalar_invariance", &|t| scalar_invariant(t)));
    Ok(checks)
}

/// The census of all cross-connections of a plane over GF(2) or GF(3).
pub fn census_check(c: &Classification) -> Check {
    let projective = c.gl_order / (c.p.get() as usize - 1);
    let ok = c.members.len() == projective
        && c.distinct_induced == projective
        && c.matches_induced
        && c.members.iter().all(|m| m.all_pass());
    Check::new("crossconn.census", ok, format!("{} cross-connections", c.members.len()))
}

pub fn variant_checks(thetas: &[Endo]) -> Result<Vec<Check>> {
    let ctxs: Vec<VariantContext> = thetas.iter().map(VariantContext::new).collect::<Result<_>>()?;
    let results: Vec<_> = ctxs.iter().map(|c| c.variant_crossconnection()).collect::<Result<_>>()?;
    let per_theta = |name: &str, ok: &dyn Fn(usize) -> bool| {
        Check::all(name, thetas.iter().enumerate().map(|(i, t)| (t, ok(i))))
    };
    let mut checks = vec![per_theta("variant.reg_matches_definition", &|i| {
        let fast: Vec<(usize, usize)> = ctxs[i]
            .reg_variant()
            .into_iter()
            .map(|(a, w)| (positions(&ctxs[i], &[a])[0], positions(&ctxs[i], &[w])[0]))
            .collect();
        fast == reg_by_definition(&ctxs[i])
    })];
    checks.push(per_theta("variant.reg_closed", &|i| results[i].reg_closed));
    checks.push(per_theta("variant.phi_injective_on_reg", &|i| results[i].phi_injective));
    checks.push(per_theta("variant.phi_homomorphism", &|i| results[i].phi_homomorphism));
    checks.push(per_theta("variant.phi_isomorphism", &|i| {
        results[i].phi_isomorphism && results[i].isomorphism.is_some()
    }));
    checks.push(per_theta("variant.membership", &|i| ctxs[i].membership_laws()));
    checks.push(per_theta("variant.delta_local_isomorphism", &|i| results[i].delta_failure.is_none()));
    checks.push(per_theta("variant.nonprincipal_excess", &|i| {
        let theta = &thetas[i];
        let excess = ctxs[i].nonprincipal_cones().image_side.excess.len();
        if theta.is_singular() && theta.rank() > 0 {
            excess > 0
        } else {
            excess == 0
        }
    }));
    checks.push(Check::run("variant.carrier_regular_part", || {
        for (ctx, theta) in ctxs.iter().zip(thetas) {
            if !ctx.complement_is_image() {
                continue;
            }
            let cats = ctx.variant_categories()?;
            let np = ctx.nonprincipal_cones();
            if cats.image_regular != np.image_side.principal || cats.kernel_regular != np.kernel_side.principal {
                return Ok((false, theta.to_string()));
            }
        }
        Ok((true, "regular part of each carrier is the principal part".into()))
    }));
    Ok(checks)
}

/// Every area of the suite at one field and dimension.
pub fn verify_all(n: usize, p: Prime) -> Result<Vec<Check>> {
    check_size(n, p)?;
    let mut checks = lattice_checks(n, p)?;
    checks.extend(semigroup_checks(n, p)?);
    checks.extend(cone_checks(n, p)?);
    checks.extend(dual_checks(n, p)?);
    checks.extend(crossconn_checks(n, p, &automorphism_sample(n, p)?)?);
    if n == 2 && p.get() <= 3 {
        checks.push(census_check(&classify_crossconnections(n, p)?));
    }
    if n <= 3 && p.get() <= 3 {
        checks.extend(variant_checks(&sandwich_sample(n, p)?)?);
    }
    Ok(checks)
}
