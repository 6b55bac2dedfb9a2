//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use singcxn::cli;
use singcxn::cones::SubspaceCategory;
use singcxn::crossconn::{chi_and_semigroup, classify_crossconnections, is_crossconnection, scalar_invariant, CrossConn};
use singcxn::dual::{annihilator_cone_table, functor_p, HFunctor};
use singcxn::semigroup::{green, idempotents, invertible_endos, singular_endos, all_endos, GreenOracle};
use singcxn::subspace::enumerate_subspaces_on;
use singcxn::table::{endo_table, find_isomorphism, EndoProduct};
use singcxn::variant::VariantContext;
use singcxn::{Endo, Mat, Prime, Result, Side, Subspace, SubspaceFilter};

type Outcome = Result<(bool, String)>;

fn gf(p: u32) -> Prime {
    Prime::new(p).expect("prime")
}

fn green_oracle() -> Outcome {
    for n in [2, 3] {
        let sing = singular_endos(n, gf(2))?;
        let oracle = GreenOracle::new(&endo_table(&sing, &EndoProduct::Plain)?);
        for (i, a) in sing.iter().enumerate() {
            for (j, b) in sing.iter().enumerate() {
                if green(a, b) != oracle.flags(i, j) {
                    return Ok((false, format!("n={n}: {a} and {b}")));
                }
            }
        }
    }
    Ok((true, "every pair agrees for n=2 (10 elements) and n=3 (344 elements)".into()))
}

fn cone_semigroup() -> Outcome {
    let p = gf(2);
    let cat = SubspaceCategory::new(2, p, Side::Primal)?;
    let census = cat.census()?;
    if census.len() != 10 {
        return Ok((false, format!("census found {} cones", census.len())));
    }
    let sing = singular_endos(2, p)?;
    let mats: Vec<Mat> = sing.iter().map(|a| a.mat().clone()).collect();
    for m in &mats {
        if &cat.cone_to_map(&cat.principal(m)?)? != m {
            return Ok((false, format!("round trip fails at {m}")));
        }
    }
    let found: HashSet<Mat> = census.iter().map(|c| cat.cone_to_map(c)).collect::<Result<_>>()?;
    if found != mats.iter().cloned().collect() {
        return Ok((false, "census cones are not the principal cones".into()));
    }
    let cones = cat.cone_table(&mats)?;
    let plain = endo_table(&sing, &EndoProduct::Plain)?;
    Ok(match find_isomorphism(&cones, &plain) {
        Some(_) => (true, "10 cones, table isomorphic to Sing(V), round trip on all 10".into()),
        None => (false, "no isomorphism between cone table and Sing(V)".into()),
    })
}

fn duality() -> Outcome {
    let mut largest = 0;
    for p in [2, 3] {
        for n in 1..=3 {
            let q = gf(p);
            let primal = enumerate_subspaces_on(n, q, Side::Primal, SubspaceFilter::All)?;
            for a in &primal {
                let ann = a.annihilator();
                if ann.dim() != n - a.dim() || &ann.annihilator() != a {
                    return Ok((false, format!("GF({p})^{n}: annihilator of {a}")));
                }
                for b in &primal {
                    if a.is_subspace_of(b) != b.annihilator().is_subspace_of(&ann) {
                        return Ok((false, format!("GF({p})^{n}: {a} and {b}")));
                    }
                }
            }
            let keys = enumerate_subspaces_on(n, q, Side::Primal, SubspaceFilter::Nonzero)?;
            let objects: HashSet<Subspace> =
                keys.iter().map(|k| HFunctor::new(k).map(|h| functor_p(&h))).collect::<Result<_>>()?;
            let proper_dual: HashSet<Subspace> =
                enumerate_subspaces_on(n, q, Side::Dual, SubspaceFilter::Proper)?.into_iter().collect();
            if objects != proper_dual || objects.len() != keys.len() {
                return Ok((false, format!("GF({p})^{n}: dual objects")));
            }
            let sing = singular_endos(n, q)?;
            let table = annihilator_cone_table(n, q)?;
            let opposite = endo_table(&sing, &EndoProduct::Plain)?.opposite();
            if find_isomorphism(&table, &opposite).is_none() {
                return Ok((false, format!("GF({p})^{n}: no isomorphism with Sing(V)^op")));
            }
            largest = largest.max(sing.len());
        }
    }
    Ok((true, format!("p in {{2,3}}, n <= 3; largest table of order {largest}")))
}

fn m_sets() -> Outcome {
    let mut count = 0;
    for n in 1..=3 {
        let p = gf(2);
        let cat = SubspaceCategory::new(n, p, Side::Primal)?;
        for e in idempotents(n, p, true)? {
            let by_cone = cat.m_set(&cat.principal(e.mat())?);
            let by_complement: Vec<Subspace> =
                e.kernel().all_complements()?.into_iter().filter(Subspace::is_proper).collect();
            let k = e.kernel().dim();
            if by_cone != by_complement || by_cone.len() != 1 << (k * (n - k)) {
                return Ok((false, format!("{e}")));
            }
            count += 1;
        }
    }
    Ok((true, format!("{count} singular idempotents over GF(2), n <= 3")))
}

fn crossconnections() -> Outcome {
    let mut count = 0;
    for p in [2, 3] {
        let q = gf(p);
        let order = singular_endos(2, q)?.len();
        for theta in invertible_endos(2, q)? {
            if !is_crossconnection(&CrossConn::gamma(&theta)?)? {
                return Ok((false, format!("Γ for {theta} over GF({p})")));
            }
            let linked = chi_and_semigroup(&theta)?;
            if !(linked.natural && linked.chi_bijective) {
                return Ok((false, format!("χ for {theta} over GF({p})")));
            }
            if linked.pairs.len() != order || linked.isomorphism.is_none() {
                return Ok((false, format!("linked semigroup for {theta} over GF({p})")));
            }
            count += 1;
        }
    }
    Ok((true, format!("{count} automorphisms (GL(2,2) and GL(2,3))")))
}

fn classification() -> Outcome {
    let mut counts = Vec::new();
    for (p, expected) in [(2u32, 6usize), (3, 24)] {
        let c = classify_crossconnections(2, gf(p))?;
        if c.members.len() != expected {
            return Ok((false, format!("GF({p}): {} cross-connections", c.members.len())));
        }
        if let Some(m) = c.members.iter().find(|m| !m.all_pass()) {
            return Ok((false, format!("GF({p}): census member {}", m.theta)));
        }
        counts.push(c.members.len());
    }
    for theta in invertible_endos(2, gf(3))? {
        if !scalar_invariant(&theta)? {
            return Ok((false, format!("Γ differs for {theta} and its double")));
        }
    }
    Ok((true, format!("{} and {} cross-connections, each recovered exactly", counts[0], counts[1])))
}

fn variant_laws(theta: &Endo) -> Result<Option<String>> {
    let ctx = VariantContext::new(theta)?;
    let v = ctx.variant_crossconnection()?;
    let ok = v.reg_closed && v.phi_injective && v.phi_homomorphism && v.phi_isomorphism && v.isomorphism.is_some();
    Ok((!ok).then(|| theta.to_string()))
}

fn variants() -> Outcome {
    let p = gf(2);
    let theta = Endo::parse("1,0;0,0", p)?;
    let ctx = VariantContext::new(&theta)?;
    let reg: Vec<Endo> = ctx.reg_variant().into_iter().map(|(a, _)| a).collect();
    let mut expected: Vec<Endo> =
        ["0,0;0,0", "1,0;0,0", "1,1;0,0", "1,0;1,0", "1,1;1,1"].iter().map(|s| Endo::parse(s, p)).collect::<Result<_>>()?;
    expected.sort();
    if reg != expected {
        return Ok((false, format!("Reg has {} elements", reg.len())));
    }
    let excess = ctx.nonprincipal_cones().image_side.excess;
    if excess.is_empty() {
        return Ok((false, "no non-principal cone".into()));
    }
    let mut thetas = all_endos(2, p)?;
    thetas.push(Endo::parse("0,0,0;0,1,0;0,0,0", p)?);
    for t in &thetas {
        if let Some(bad) = variant_laws(t)? {
            return Ok((false, format!("closure or φ fails for {bad}")));
        }
    }
    Ok((true, format!("Reg of 5, non-principal {}, laws hold for {} sandwich elements", excess[0], thetas.len())))
}

fn determinism() -> Outcome {
    let run = |extra: &[&str]| {
        let mut args = vec!["singcxn", "verify-all", "--p", "2", "--n", "2"];
        args.extend_from_slice(extra);
        cli::run(args)
    };
    for format in [&[][..], &["--json"][..]] {
        let first = run(format);
        if first.code != 0 {
            return Ok((false, format!("verify-all exited with {}", first.code)));
        }
        for threads in ["1", "4"] {
            let extra: Vec<&str> = format.iter().copied().chain(["--threads", threads]).collect();
            if run(&extra).stdout != first.stdout {
                return Ok((false, format!("output changes with {threads} threads")));
            }
        }
        if run(format).stdout != first.stdout {
            return Ok((false, "output changes between runs".into()));
        }
    }
    Ok((true, "text and JSON identical across runs and thread counts".into()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("green relations match the principal-ideal oracle", green_oracle),
        ("cone census and cone semigroup", cone_semigroup),
        ("annihilators and the normal dual", duality),
        ("M-sets of idempotent cones", m_sets),
        ("cross-connections of automorphisms", crossconnections),
        ("classification of cross-connections", classification),
        ("variant regular part and representation", variants),
        ("deterministic verify-all output", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (pass, detail) = check().unwrap_or_else(|e| (false, format!("error: {e}")));
        let secs = start.elapsed().as_secs_f64();
        println!("{} {}. {name}: {detail} ({secs:.1}s)", if pass { "PASS" } else { "FAIL" }, i + 1);
        failed += usize::from(!pass);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
