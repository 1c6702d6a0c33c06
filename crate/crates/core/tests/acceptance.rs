//! Acceptance criteria 1-12. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::time::Instant;

use catenary::configuration::{catenary_from_config, configuration_of};
use catenary::constructions::{cat_qcone, cat_relax, free_product_rank_sequence, g_free_extension, g_free_product, g_relax};
use catenary::corpus::{self, small_corpus};
use catenary::freeproduct::detect_free_product;
use catenary::ginvariant::{
    catenary, catenary_by_copoint_recursion, g_brute_force, g_from_catenary, g_invariant,
    gamma_expand, tutte_brute_force, tutte_from_g, DEFAULT_ORACLE_LIMIT,
};
use catenary::parameters::has_spanning_circuit;
use catenary::verify::verify;
use catenary::{CatenaryData, Composition, ElementSet, GInvariant, Matroid};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn g(s: &str) -> GInvariant {
    s.parse().expect("invariant literal")
}

fn cat(terms: &[(&[usize], i64)]) -> CatenaryData {
    CatenaryData::from_counts(terms.iter().map(|&(p, k)| (p, k))).expect("catenary literal")
}

fn eq<T: PartialEq + std::fmt::Display>(what: &str, got: &T, want: &T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, expected {want}"))
    }
}

fn k4_values() -> Outcome {
    let k4 = corpus::k4();
    eq("G(M(K4))", &g_invariant(&k4), &g("576[111000]+144[110100]"))?;
    eq("catenary(M(K4))", &catenary(&k4), &cat(&[(&[0, 1, 1, 4], 6), (&[0, 1, 2, 3], 12)]))?;
    eq("oracle", &g_brute_force(&k4).map_err(|e| e.to_string())?, &g("576[111000]+144[110100]"))?;
    Ok("G and catenary data of M(K4)".into())
}

fn twin_pair() -> Outcome {
    let want_cat = cat(&[(&[0, 1, 2, 3], 6), (&[0, 1, 1, 4], 18)]);
    let want_g = g("648[111000]+72[110100]");
    let (m, n) = (corpus::twin_m(), corpus::twin_n());
    ensure!(m.bases() != n.bases(), "M and N coincide");
    for (name, x) in [("M", &m), ("N", &n)] {
        eq(&format!("catenary({name})"), &catenary(x), &want_cat)?;
        eq(&format!("G({name})"), &g_invariant(x), &want_g)?;
    }
    let (cm, cn) = (configuration_of(&m).map_err(|e| e.to_string())?, configuration_of(&n).map_err(|e| e.to_string())?);
    ensure!(cm == cn, "configurations differ");
    ensure!(cm.len() == 4, "expected 4 cyclic flats, got {}", cm.len());
    eq("catenary from configuration", &catenary_from_config(&cm).map_err(|e| e.to_string())?, &want_cat)?;
    Ok("same catenary data, G and configuration; configuration reproduces the catenary data".into())
}

fn tutte_twin_pair() -> Outcome {
    let (m1, m2) = (corpus::tutte_twin_m1(), corpus::tutte_twin_m2());
    let (t1, t2) = (
        tutte_from_g(&g_invariant(&m1)).map_err(|e| e.to_string())?,
        tutte_from_g(&g_invariant(&m2)).map_err(|e| e.to_string())?,
    );
    eq("T(M1) vs T(M2)", &t1, &t2)?;
    eq("T(M1) vs oracle", &t1, &tutte_brute_force(&m1).map_err(|e| e.to_string())?)?;
    let c1 = cat(&[(&[0, 1, 1, 5], 4), (&[0, 1, 2, 4], 7), (&[0, 1, 3, 3], 4), (&[0, 2, 1, 4], 1), (&[0, 2, 2, 3], 2)]);
    let c2 = cat(&[(&[0, 1, 1, 5], 6), (&[0, 1, 2, 4], 3), (&[0, 1, 3, 3], 6), (&[0, 2, 1, 4], 3), (&[0, 2, 2, 3], 1)]);
    eq("catenary(M1)", &catenary(&m1), &c1)?;
    eq("catenary(M2)", &catenary(&m2), &c2)?;
    ensure!(g_invariant(&m1) != g_invariant(&m2), "G-invariants coincide");
    Ok(format!("equal Tutte polynomial {t1}; catenary tables differ as displayed"))
}

fn gamma_displays() -> Outcome {
    let cases = [
        (vec![0, 1, 1, 4], "24[111000]"),
        (vec![0, 1, 2, 3], "36[111000]+12[110100]"),
        (vec![0, 1, 3, 2], "36[111000]+24[110100]+12[110010]"),
        (vec![0, 1, 4, 1], "24[111000]+24[110100]+24[110010]+24[110001]"),
    ];
    for (parts, want) in cases {
        let a = Composition::new(parts.clone()).map_err(|e| e.to_string())?;
        eq(&format!("gamma{parts:?}"), &gamma_expand(&a), &g(want))?;
    }
    Ok("four expansions of rank 3 on 6 elements".into())
}

fn k5_catenary() -> Outcome {
    let k5 = corpus::k5();
    let want = cat(&[
        (&[0, 1, 2, 3, 4], 60),
        (&[0, 1, 1, 4, 4], 30),
        (&[0, 1, 1, 2, 6], 60),
        (&[0, 1, 2, 1, 6], 30),
    ]);
    eq("flag enumeration", &catenary(&k5), &want)?;
    eq("copoint recursion", &catenary_by_copoint_recursion(&k5), &want)?;
    Ok("flag enumeration and copoint recursion agree".into())
}

fn free_extension_example() -> Outcome {
    let input = g("96[11100]+24[11010]");
    let want = g("648[111000]+72[110100]");
    eq("G-level free extension", &g_free_extension(&input), &want)?;
    let base = corpus::twin_n_minus_x();
    eq("G(N minus x)", &g_invariant(&base), &input)?;
    eq("G(free extension)", &g_invariant(&base.free_extension()), &want)?;
    eq("oracle", &g_brute_force(&base.free_extension()).map_err(|e| e.to_string())?, &want)?;
    Ok("96[11100]+24[11010] -> 648[111000]+72[110100], matroid-level cross-check".into())
}

fn free_product_table() -> Outcome {
    let w = free_product_rank_sequence(
        "101".parse().unwrap(),
        "10010".parse().unwrap(),
        ElementSet::from_elements([2, 3, 4]),
    );
    ensure!(w.to_string() == "11100010", "rank sequence {w}");
    let m1 = Matroid::uniform(1, 2).direct_sum(&Matroid::uniform(1, 1));
    let m2 = Matroid::uniform(1, 3).direct_sum(&Matroid::uniform(1, 2));
    let derived = g_free_product(&g_invariant(&m1), &g_invariant(&m2));
    let built = m1.free_product(&m2);
    ensure!(built.size() == 8, "built free product has {} elements", built.size());
    eq("G of free product", &derived, &g_brute_force(&built).map_err(|e| e.to_string())?)?;
    Ok("rank sequence 11100010; G-level product equals the n=8 oracle".into())
}

fn qcone_values() -> Outcome {
    let c = cat_qcone(&catenary(&corpus::twin_m()), 5).map_err(|e| e.to_string())?;
    let q: i64 = 5;
    let want = cat(&[
        (&[0, 1, 5, 10, 15], 6 * (1 + q)),
        (&[0, 1, 5, 5, 20], 18 * (1 + q)),
        (&[0, 1, 2, 13, 15], 6 * q * q),
        (&[0, 1, 1, 9, 20], 18 * q * q),
        (&[0, 1, 2, 3, 25], 6 * q * q * q),
        (&[0, 1, 1, 4, 25], 18 * q * q * q),
    ]);
    eq("q-cone catenary", &c, &want)?;
    Ok("values 36, 108, 150, 450, 750, 2250".into())
}

fn relaxation() -> Outcome {
    let base = g_invariant(&Matroid::uniform(1, 2).direct_sum(&Matroid::uniform(1, 1)));
    let delta = &g("2[110]") - &g("2[101]");
    eq("G(U12+U11) + 2([110]-[101])", &(&base + &delta), &g_invariant(&Matroid::uniform(2, 3)))?;
    eq("g_relax", &g_relax(&base).map_err(|e| e.to_string())?, &g_invariant(&Matroid::uniform(2, 3)))?;
    let mut instances = 0;
    for nm in small_corpus() {
        let m = &nm.matroid;
        let gm = g_invariant(m);
        for x in m.circuits().into_iter().filter(|x| x.len() == m.rank() && m.is_flat(*x)) {
            let relaxed = m.relax(x).map_err(|e| e.to_string())?;
            eq(&format!("{} relaxed at {:?}", nm.name, x.to_vec()), &g_relax(&gm).map_err(|e| e.to_string())?, &g_invariant(&relaxed))?;
            eq(
                &format!("{} relaxed (catenary)", nm.name),
                &cat_relax(&catenary(m)).map_err(|e| e.to_string())?,
                &catenary(&relaxed),
            )?;
            instances += 1;
        }
    }
    ensure!(instances >= 10, "only {instances} circuit-hyperplane instances");
    Ok(format!("{instances} circuit-hyperplane instances checked"))
}

fn dowling() -> Outcome {
    let a = corpus::dowling3(corpus::cyclic_group_table(4));
    let b = corpus::dowling3(corpus::klein_four_table());
    ensure!(a.size() == 15 && b.size() == 15 && a.rank() == 3, "unexpected Dowling shapes");
    eq("G(Q3(Z4)) vs G(Q3(Z2xZ2))", &g_invariant(&a), &g_invariant(&b))?;
    Ok("equal G-invariants on 15 elements".into())
}

fn property_suite() -> Outcome {
    let corpus = small_corpus();
    ensure!(corpus.len() >= 60, "corpus has {} matroids", corpus.len());
    let mut checks = 0;
    for nm in &corpus {
        let m = &nm.matroid;
        ensure!(m.size() <= 8, "{} has {} elements", nm.name, m.size());
        let gm = g_from_catenary(&catenary(m));
        eq(&format!("{}: oracle", nm.name), &gm, &g_brute_force(m).map_err(|e| e.to_string())?)?;
        eq(
            &format!("{}: Tutte", nm.name),
            &tutte_from_g(&gm).map_err(|e| e.to_string())?,
            &tutte_brute_force(m).map_err(|e| e.to_string())?,
        )?;
        let rep = verify(m, true, DEFAULT_ORACLE_LIMIT);
        if let Some(f) = rep.failures().next() {
            return Err(format!("{}: {} ({})", nm.name, f.name, f.detail.clone().unwrap_or_default()));
        }
        checks += rep.passed;
    }
    let mut sharp = 0;
    for (name, m1, m2) in corpus::free_product_pairs() {
        let is_sharp = m1.coloops().is_empty()
            && m2.loops().is_empty()
            && m1.cyclic_flats().len() >= 2
            && m2.cyclic_flats().len() >= 2;
        if !is_sharp {
            continue;
        }
        sharp += 1;
        let rep = detect_free_product(&g_invariant(&m1.free_product(&m2))).map_err(|e| e.to_string())?;
        let pair = (g_invariant(&m1), g_invariant(&m2));
        ensure!(
            rep.is_proper && rep.factors.iter().any(|f| (f.left.clone(), f.right.clone()) == pair),
            "{name}: factor pair not detected"
        );
    }
    ensure!(sharp >= 5, "only {sharp} sharp free products");
    Ok(format!("{} matroids, {checks} identity checks, {sharp} sharp free products", corpus.len()))
}

fn hamiltonicity() -> Outcome {
    ensure!(has_spanning_circuit(&g_invariant(&corpus::k4())).unwrap(), "M(K4)");
    ensure!(has_spanning_circuit(&g_invariant(&corpus::k5())).unwrap(), "M(K5)");
    ensure!(!has_spanning_circuit(&g_invariant(&corpus::bowtie())).unwrap(), "bowtie");
    Ok("K4 and K5 yes, two triangles sharing a vertex no".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("M(K4) G-invariant and catenary data", k4_values),
        ("twin pair M, N", twin_pair),
        ("Tutte-twin pair M1, M2", tutte_twin_pair),
        ("gamma expansions", gamma_displays),
        ("M(K5) catenary data", k5_catenary),
        ("free extension", free_extension_example),
        ("free product", free_product_table),
        ("q-cone at q = 5", qcone_values),
        ("circuit-hyperplane relaxation", relaxation),
        ("Dowling invariance", dowling),
        ("oracle-equivalence property suite", property_suite),
        ("spanning circuits", hamiltonicity),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
