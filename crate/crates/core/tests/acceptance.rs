//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use cycres::cli::{cmd_resolve, exit_code, RunConfig, EXIT_CLASS};
use cycres::cyc::{build_complex, expected_rank, CycComplex};
use cycres::graph::{classify, digraph_from_matrix, laplacian, omega_delta_enumeration, prepare, MatrixClass};
use cycres::poly::{parse_poly, Monomial, Poly};
use cycres::random::random_icb;
use cycres::verify::{check_d_squared, check_leading_terms, full_verify, graded_homology_oracle, monomials_by_degree, standard_monomial_count, VerifyOptions};
use num_bigint::BigInt;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

fn complex_of(rows: &[Vec<i64>]) -> std::result::Result<CycComplex, String> {
    let g = digraph_from_matrix(rows).map_err(|e| e.to_string())?;
    let p = prepare(&g, g.n() - 1).map_err(|e| e.to_string())?;
    build_complex(&p.matrix).map_err(|e| e.to_string())
}

fn polys(c: &CycComplex, texts: &[&str]) -> std::result::Result<Vec<Poly>, String> {
    texts.iter().map(|t| parse_poly(&c.ctx, t).map_err(|e| e.to_string())).collect()
}

fn all_checks_pass(c: &CycComplex, name: &str, opts: &VerifyOptions) -> std::result::Result<(), String> {
    let r = full_verify(c, name, opts);
    ensure(r.all_passed(), r.to_text())
}

fn k4_rows() -> Vec<Vec<i64>> {
    (0..4).map(|i| (0..4).map(|j| if i == j { 3 } else { -1 }).collect()).collect()
}

/// Variables x, y, z, t are x1..x4.
fn k4_golden() -> Check {
    let start = Instant::now();
    let c = complex_of(&k4_rows())?;
    ensure(c.ranks() == [1, 7, 12, 6], format!("ranks {:?}", c.ranks()))?;
    let expected = polys(
        &c,
        &[
            "x1*x2*x3 - x4^3",
            "x2^2*x3^2 - x1^2*x4^2",
            "x1^2*x3^2 - x2^2*x4^2",
            "x1^2*x2^2 - x3^2*x4^2",
            "x3^3 - x1*x2*x4",
            "x2^3 - x1*x3*x4",
            "x1^3 - x2*x3*x4",
        ],
    )?;
    let got: Vec<Poly> = (0..c.bases[1].len()).map(|j| c.image_poly(j)).collect();
    ensure(got == expected, format!("degree-0 basis {:?}", got.iter().map(|p| p.to_text()).collect::<Vec<_>>()))?;
    ensure(c.minimality_check().0, "not minimal")?;
    all_checks_pass(&c, "k4", &VerifyOptions::default())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), format!("took {elapsed:?}"))?;
    Ok(format!("ranks (1,7,12,6), 7 binomials in order, minimal, all checks pass in {:.2} s", elapsed.as_secs_f64()))
}

fn echelon_pair() -> Check {
    let l_rows = vec![vec![2, -2, 0, 0], vec![0, 3, -3, 0], vec![-1, 0, 5, -4], vec![0, 0, -4, 4]];
    let l_prime_rows = vec![vec![3, 0, -3, 0], vec![-2, 2, 0, 0], vec![0, -1, 5, -4], vec![0, 0, -4, 4]];
    let g = digraph_from_matrix(&l_rows).map_err(|e| e.to_string())?;
    let l = laplacian(&g);
    ensure(classify(&l) == MatrixClass::ICB && l.echelon.is_none(), "L should be ICB and not in echelon form")?;
    ensure(l.mu() == ints(&[12, 8, 24, 24]), format!("mu {:?}", l.mu()))?;
    ensure(l.nu().map_err(|e| e.to_string())? == ints(&[3, 2, 6, 6]), "nu of L")?;
    let perm = omega_delta_enumeration(&g, 3).map_err(|e| e.to_string())?;
    let relabeled = laplacian(&g.relabel(&perm));
    ensure(relabeled.to_rows() == l_prime_rows, format!("enumeration gives {:?}", relabeled.to_rows()))?;
    let ech = relabeled.echelon.clone().ok_or("L' not in echelon form")?;
    ensure(ech.delta == 3, format!("delta {}", ech.delta))?;
    ensure(relabeled.nu().map_err(|e| e.to_string())? == ints(&[2, 3, 6, 6]), "nu of L'")?;
    Ok("L is ICB, mu=(12,8,24,24), nu=(3,2,6,6); enumeration gives L' with delta=3, nu=(2,3,6,6)".into())
}

fn four_cycle() -> Check {
    let rows = vec![vec![1, 0, 0, -1], vec![-1, 1, 0, 0], vec![0, -1, 1, 0], vec![0, 0, -1, 1]];
    let c = complex_of(&rows)?;
    all_checks_pass(&c, "cycle", &VerifyOptions::default())?;
    // x, y, z, t are x1..x4
    let expected: HashSet<Poly> = polys(&c, &["x1 - x4", "x2 - x4", "x1*x3 - x2*x4", "x1 - x3", "x3 - x4", "x2 - x3", "x1 - x2"])?.into_iter().collect();
    let got: HashSet<Poly> = (0..c.bases[1].len()).map(|j| c.image_poly(j)).collect();
    ensure(got == expected, "degree-0 images differ")?;
    let (minimal, witness) = c.minimality_check();
    ensure(!minimal, "reported minimal")?;
    let w = witness.ok_or("no witness")?;
    let entry = c.diffs[w.k][w.source].component(w.target).ok_or("witness entry is zero")?;
    let one = Monomial::one(c.n);
    let unit = entry.terms().iter().any(|(coef, m)| *m == one && (coef.is_one() || (-coef.clone()).is_one()));
    ensure(unit, "witness entry has no unit coefficient")?;
    Ok(format!("7 expected images, not minimal: unit in d_{} from {} to {}", w.k, w.source_partition, w.target_partition))
}

fn reducible_rejection() -> Check {
    let text = std::fs::read_to_string(fixture("not_icb.json")).map_err(|e| e.to_string())?;
    let rows: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let rows: Vec<Vec<i64>> = serde_json::from_value(rows["matrix"].clone()).map_err(|e| e.to_string())?;
    let l = laplacian(&digraph_from_matrix(&rows).map_err(|e| e.to_string())?);
    ensure(classify(&l) == MatrixClass::CB, "not classified CB")?;
    let err = cmd_resolve(&text, &RunConfig::default()).err().ok_or("resolve succeeded")?;
    ensure(exit_code(&err) == EXIT_CLASS, format!("library exit code {}", exit_code(&err)))?;
    let status = Command::new(env!("CARGO_BIN_EXE_cycres")).arg("resolve").arg(fixture("not_icb.json")).output().map_err(|e| e.to_string())?.status;
    ensure(status.code() == Some(3), format!("binary exit {:?}", status.code()))?;
    Ok("classified CB (reducible); resolve exits 3".into())
}

fn property_suite() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut complete = 0;
    let mut degrees = 0u128;
    for n in [4usize, 5] {
        for t in 0..20 {
            let extra = [0.2, 0.5, 0.8, 1.0][t % 4];
            let g = random_icb(n, extra, &mut rng);
            let p = prepare(&g, n - 1).map_err(|e| e.to_string())?;
            let c = build_complex(&p.matrix).map_err(|e| e.to_string())?;
            let ranks = c.ranks();
            ensure(ranks.iter().enumerate().all(|(k, &r)| r as u128 == expected_rank(n, k)), format!("n={n} #{t}: ranks {ranks:?}"))?;
            let euler: i64 = ranks.iter().enumerate().map(|(k, &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) }).sum();
            ensure(euler == 0, format!("n={n} #{t}: Euler characteristic {euler}"))?;
            let r = full_verify(&c, &format!("n={n} #{t}"), &VerifyOptions { seed: t as u64, ..Default::default() });
            ensure(r.all_passed(), r.to_text())?;
            complete += c.minimality_check().0 as usize;
            degrees += r.d_max;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), format!("took {elapsed:?}"))?;
    ensure(complete > 0 && complete < 40, format!("{complete} of 40 instances complete; both cases must occur"))?;
    Ok(format!("40 instances ({complete} complete), mean homology bound {}, {:.1} s", degrees / 40, elapsed.as_secs_f64()))
}

fn n6_smoke() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let g = random_icb(6, 0.3, &mut rng);
    let p = prepare(&g, 5).map_err(|e| e.to_string())?;
    let c = build_complex(&p.matrix).map_err(|e| e.to_string())?;
    ensure(c.ranks() == [1, 31, 180, 390, 360, 120], format!("ranks {:?}", c.ranks()))?;
    let d2 = check_d_squared(&c);
    ensure(d2.passed(), d2.witness.unwrap_or_default())?;
    let lt = check_leading_terms(&c);
    ensure(lt.passed(), lt.witness.unwrap_or_default())?;
    let h = graded_homology_oracle(&c, 8);
    ensure(h.passed(), h.witness.unwrap_or_default())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), format!("took {elapsed:?}"))?;
    Ok(format!("ranks (1,31,180,390,360,120), d^2=0, leading terms, homology d<=8 in {:.2} s", elapsed.as_secs_f64()))
}

fn k4_hilbert_tail() -> Check {
    let c = complex_of(&k4_rows())?;
    let by_degree = monomials_by_degree(&c.ctx.nu, 12);
    let counts: Vec<usize> = (6..=12).map(|d| standard_monomial_count(&c, &by_degree, d)).collect();
    ensure(counts.iter().all(|&x| x == 16), format!("counts {counts:?}"))?;
    Ok("16 standard monomials in each degree 6..=12".into())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 7] = [
        ("k4_golden_run", k4_golden),
        ("echelon_example_pair", echelon_pair),
        ("four_cycle_non_minimal", four_cycle),
        ("reducible_rejection", reducible_rejection),
        ("random_property_suite", property_suite),
        ("n6_smoke", n6_smoke),
        ("k4_hilbert_tail", k4_hilbert_tail),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
