//! The ten acceptance criteria, run exactly and reported one line each.
//! Runs as a plain binary (`harness = false`) and exits nonzero if any
//! criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use celldual::cellcomplex::Region;
use celldual::classify::{
    is_buchsbaum, is_cohen_macaulay, is_gorenstein_star, mobius_hat, omega_concentration,
};
use celldual::dualize::{
    build_omega, cellular_compact_cohomology, cellular_sheaf_cohomology, compact_cohomology,
    dualize_complex, dualize_module, ext_against_omega, local_cohomology, open_cohomology,
    sheaf_cohomology,
};
use celldual::fixtures::{self, Named};
use celldual::koszul::{df, dg, koszul_certificate, quadratic_dual_check};
use celldual::repalg::{random_module, u_ext, RModule, Route, RANDOM_MAX_DIM};
use celldual::{Betti, Field, PrimeField, Rationals, EMPTY};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn get(b: &Betti, d: i32) -> usize {
    b.get(&d).copied().unwrap_or(0)
}

fn betti(pairs: &[(i32, usize)]) -> Betti {
    pairs.iter().copied().collect()
}

/// The population shared by criteria 1, 2, 3 and 9.
fn population(n: u64) -> Vec<(Named, Vec<RModule<Rationals>>)> {
    fixtures::all()
        .into_iter()
        .map(|named| {
            let mods = (0..n)
                .map(|seed| {
                    random_module(&Rationals, named.complex.poset_arc(), seed, RANDOM_MAX_DIM)
                })
                .collect();
            (named, mods)
        })
        .collect()
}

fn double_duality(pop: &[(Named, Vec<RModule<Rationals>>)]) -> Outcome {
    let mut count = 0;
    for (named, mods) in pop {
        let c = &named.complex;
        for (seed, m) in mods.iter().enumerate() {
            let dd = dualize_complex(
                c,
                &dualize_module(c, m)
                    .map_err(|e| e.to_string())?
                    .materialize(),
            )
            .map_err(|e| e.to_string())?;
            let table = dd.cohomology_table();
            // {0: dims(M)} read straight off the module
            for s in 0..c.len() {
                for i in table.degrees() {
                    let expect = if i == 0 { m.dim(s) } else { 0 };
                    ensure(table.get(i, s) == expect, || {
                        format!(
                            "{} seed {seed}: H^{i}(DD(M)) at {} is {}",
                            named.name,
                            c.label(s),
                            table.get(i, s)
                        )
                    })?;
                }
                ensure(m.dim(s) == 0 || table.get(0, s) == m.dim(s), || {
                    format!(
                        "{} seed {seed}: H^0(DD(M)) at {} lost dimension",
                        named.name,
                        c.label(s)
                    )
                })?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} modules"))
}

fn serre_duality(pop: &[(Named, Vec<RModule<Rationals>>)]) -> Outcome {
    let mut count = 0;
    for (named, mods) in pop {
        let c = &named.complex;
        for (seed, m) in mods.iter().enumerate() {
            let ext = ext_against_omega(c, m)
                .map_err(|e| e.to_string())?
                .column(EMPTY);
            let local = local_cohomology(m);
            let lo = -c.max_dim() - 2;
            let hi = c.max_dim() + 3;
            for i in lo..=hi {
                ensure(get(&ext, i) == get(&local, 1 - i), || {
                    format!(
                        "{} seed {seed}: Ext^{i}(M,ω)_∅ = {}, H^{}_∅(M) = {}",
                        named.name,
                        get(&ext, i),
                        1 - i,
                        get(&local, 1 - i)
                    )
                })?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} modules"))
}

fn open_set_lemma(pop: &[(Named, Vec<RModule<Rationals>>)]) -> Outcome {
    let mut count = 0;
    for (named, mods) in pop {
        let c = &named.complex;
        let stars: Vec<_> = (1..c.len())
            .map(|s| (s, c.open_star(s).expect("nonempty cell")))
            .collect();
        for (seed, m) in mods.iter().enumerate() {
            let ext = ext_against_omega(c, m).map_err(|e| e.to_string())?;
            for (s, star) in &stars {
                let lhs = ext.column(*s);
                let hc = compact_cohomology(m, star).map_err(|e| e.to_string())?;
                let cell = cellular_compact_cohomology(c, m, star);
                ensure(hc == cell, || {
                    format!(
                        "{} seed {seed}: compact routes differ at {}",
                        named.name,
                        c.label(*s)
                    )
                })?;
                let rhs: Betti = hc.iter().map(|(&d, &v)| (-d, v)).collect();
                ensure(lhs == rhs, || {
                    format!(
                        "{} seed {seed} at {}: Ext {lhs:?}, H_c {hc:?}",
                        named.name,
                        c.label(*s)
                    )
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} (module, cell) pairs"))
}

fn mobius() -> Outcome {
    for named in fixtures::all() {
        let t = mobius_hat(&Rationals, &named.complex).map_err(|e| e.to_string())?;
        ensure(t.agree, || format!("{}: routes disagree", named.name))?;
    }
    let t = fixtures::triangle_boundary();
    let tab = mobius_hat(&Rationals, &t)
        .map_err(|e| e.to_string())?
        .cohomological;
    for s in 0..t.len() {
        let expect = match t.dim(s) {
            -1 => -1,
            0 => 1,
            _ => -1,
        };
        ensure(tab[t.label(s)] == expect, || {
            format!("triangle {}: {}", t.label(s), tab[t.label(s)])
        })?;
    }
    let d = fixtures::disc2();
    let tab = mobius_hat(&Rationals, &d)
        .map_err(|e| e.to_string())?
        .cohomological;
    for s in 1..d.len() {
        // boundary cells give 0, the interior cell (-1)^{d - dim σ + 1}
        let expect = if d.label(s) == "sigma" { -1 } else { 0 };
        ensure(tab[d.label(s)] == expect, || {
            format!("disc {}: {}", d.label(s), tab[d.label(s)])
        })?;
    }
    Ok("5 complexes agree, pins hold".into())
}

fn disc_counterexample() -> Outcome {
    let d = fixtures::disc2();
    let p = d.poset_arc();
    let rho1 = d.require("rho1").unwrap();
    let rho2 = d.require("rho2").unwrap();
    let sigma = d.require("sigma").unwrap();
    let m = RModule::projective(&Rationals, p, rho1);
    let n = RModule::simple(&Rationals, p, sigma);
    let inj = u_ext(&m, &n, Route::Injective, false).map_err(|e| e.to_string())?;
    ensure(inj.get(1, rho2) == 1, || {
        format!("injective route gives {}", inj.get(1, rho2))
    })?;
    ensure(u_ext(&m, &n, Route::Projective, false).is_err(), || {
        "projective route ran without the override".into()
    })?;
    let proj = u_ext(&m, &n, Route::Projective, true).map_err(|e| e.to_string())?;
    ensure(proj.get(1, rho2) == 0, || {
        format!("projective route gives {}", proj.get(1, rho2))
    })?;
    ensure(!d.poset().is_meet_semilattice(), || {
        "disc poset reported as a semilattice".into()
    })?;
    let w = d.poset().meet_semilattice_witness();
    ensure(w == Some((rho1, rho2)), || format!("witness {w:?}"))?;
    Ok("injective 1, projective 0, witness (rho1, rho2)".into())
}

fn classification() -> Outcome {
    let e = |e: celldual::Error| e.to_string();
    let f2 = PrimeField::new(2).unwrap();
    let t = fixtures::triangle_boundary();
    ensure(is_gorenstein_star(&Rationals, &t).map_err(e)?.holds, || {
        "circle not Gorenstein*".into()
    })?;
    let s = fixtures::simplex2();
    ensure(is_cohen_macaulay(&Rationals, &s).map_err(e)?.holds, || {
        "simplex not CM".into()
    })?;
    ensure(
        !is_gorenstein_star(&Rationals, &s).map_err(e)?.holds,
        || "simplex Gorenstein*".into(),
    )?;
    let r = fixtures::rp2();
    ensure(is_cohen_macaulay(&Rationals, &r).map_err(e)?.holds, || {
        "RP2 not CM over Q".into()
    })?;
    ensure(!is_cohen_macaulay(&f2, &r).map_err(e)?.holds, || {
        "RP2 CM over GF(2)".into()
    })?;
    ensure(is_buchsbaum(&f2, &r).map_err(e)?.holds, || {
        "RP2 not Buchsbaum over GF(2)".into()
    })?;
    let d = fixtures::disc2();
    ensure(is_cohen_macaulay(&Rationals, &d).map_err(e)?.holds, || {
        "disc not CM".into()
    })?;
    let (r1, r2) = (d.require("rho1").unwrap(), d.require("rho2").unwrap());
    let h = build_omega(&Rationals, &d).cohomology_at(r1, r2);
    ensure(get(&h, -1) != 0, || format!("H(ω)^rho1_rho2 = {h:?}"))?;
    ensure(!omega_concentration(&Rationals, &d).module_level, || {
        "disc ω concentrated".into()
    })?;
    Ok("all verdicts as pinned".into())
}

fn omega_simplex() -> Outcome {
    let s = fixtures::simplex2();
    let w = build_omega(&Rationals, &s);
    let all: Vec<usize> = s.cells_of_dim(0).to_vec();
    for tau in 0..s.len() {
        for rho in 0..s.len() {
            let mut union: Vec<usize> = s.vertex_set(tau).unwrap().to_vec();
            union.extend_from_slice(s.vertex_set(rho).unwrap());
            union.sort_unstable();
            union.dedup();
            let full = union.len() == all.len();
            let h = get(&w.cohomology_at(tau, rho), -2);
            ensure(h == usize::from(full), || {
                format!("H^-2(ω) at ({}, {}) = {h}", s.label(tau), s.label(rho))
            })?;
        }
    }
    Ok(format!("{} components", s.len() * s.len()))
}

fn koszul() -> Outcome {
    fn per_field<F: Field>(field: &F) -> Result<(), String> {
        for named in fixtures::all() {
            let c = &named.complex;
            ensure(koszul_certificate(field, c).koszul, || {
                format!("{} over {}: not Koszul", named.name, field.spec())
            })?;
            ensure(quadratic_dual_check(field, c).holds, || {
                format!("{} over {}: quadratic dual", named.name, field.spec())
            })?;
        }
        Ok(())
    }
    per_field(&Rationals)?;
    per_field(&PrimeField::new(2).unwrap())?;
    per_field(&PrimeField::new(3).unwrap())?;
    let mut count = 0;
    for named in fixtures::all() {
        let c = &named.complex;
        for seed in 0..20 {
            let m = random_module(&Rationals, c.poset_arc(), 1000 + seed, RANDOM_MAX_DIM);
            let f = df(c, &m).map_err(|e| e.to_string())?.materialize();
            let round = dg(c, &f).map_err(|e| e.to_string())?;
            ensure(round.cohomology_table() == m.dims_table(0), || {
                format!("{} seed {seed}: DG(DF(M)) ≠ M", named.name)
            })?;
            count += 1;
        }
    }
    Ok(format!("3 fields, {count} round trips"))
}

fn sheaf_consistency(pop: &[(Named, Vec<RModule<Rationals>>)]) -> Outcome {
    let mut count = 0;
    for (named, mods) in pop {
        let c = &named.complex;
        for (seed, m) in mods.iter().enumerate() {
            let route = sheaf_cohomology(m);
            let cell = cellular_sheaf_cohomology(c, m);
            ensure(route == cell, || {
                format!(
                    "{} seed {seed}: Γ_∅ {route:?}, cellular {cell:?}",
                    named.name
                )
            })?;
            // 0 -> H^0_∅ -> M_∅ -> H^0(X) -> H^1_∅ -> 0
            let h = local_cohomology(m);
            let alt =
                get(&h, 0) as i64 - m.dim(EMPTY) as i64 + get(&cell, 0) as i64 - get(&h, 1) as i64;
            ensure(alt == 0, || {
                format!("{} seed {seed}: alternating sum {alt}", named.name)
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} modules"))
}

fn open_cohomology_of_stars() -> Outcome {
    let simplicial = [
        fixtures::triangle_boundary(),
        fixtures::simplex2(),
        fixtures::rp2(),
        fixtures::wedge(),
    ];
    let mut count = 0;
    for c in &simplicial {
        let r = RModule::projective(&Rationals, c.poset_arc(), EMPTY);
        for s in 1..c.len() {
            // the closed star is a cone, so the open star is contractible
            let star = c.star(s).map_err(|e| e.to_string())?;
            let cone = c
                .cellular_homology(&Rationals, &Region::Closed(star), false)
                .map_err(|e| e.to_string())?;
            ensure(cone.reduced.is_empty(), || {
                format!("closed star of {} not acyclic", c.label(s))
            })?;
            let h = open_cohomology(c, &r, &c.open_star(s).unwrap()).map_err(|e| e.to_string())?;
            ensure(h == betti(&[(0, 1)]), || {
                format!("open star of {}: {h:?}", c.label(s))
            })?;
            count += 1;
        }
    }
    let t = fixtures::triangle_boundary();
    let r = RModule::projective(&Rationals, t.poset_arc(), EMPTY);
    let h = open_cohomology(&t, &r, &t.punctured()).map_err(|e| e.to_string())?;
    ensure(h == betti(&[(0, 1), (1, 1)]), || {
        format!("whole circle: {h:?}")
    })?;
    Ok(format!("{count} open stars, circle {{0:1,1:1}}"))
}

fn main() {
    let start = Instant::now();
    let pop = population(50);
    let criteria: Vec<Criterion> = vec![
        ("double duality", Box::new(|| double_duality(&pop))),
        ("Serre duality", Box::new(|| serre_duality(&pop))),
        ("open set lemma", Box::new(|| open_set_lemma(&pop))),
        ("Möbius", Box::new(mobius)),
        ("2-disc counterexample", Box::new(disc_counterexample)),
        ("classification", Box::new(classification)),
        ("ω on the 2-simplex", Box::new(omega_simplex)),
        ("Koszul", Box::new(koszul)),
        (
            "sheaf cohomology consistency",
            Box::new(|| sheaf_consistency(&pop)),
        ),
        ("open-set cohomology", Box::new(open_cohomology_of_stars)),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} ({secs:.2}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why} ({secs:.2}s)", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} passed in {:.2}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
