//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use codeg::catalog::{build, build_group, list_catalog, BuildOptions, GroupId};
use codeg::chartab::{character_table, CharacterTable};
use codeg::formulas::{
    camina_profile, cod_abelian, cod_camina, cod_vz_case, cod_vz_general, codegrees_formula, is_vz,
    within_envelope, CaminaProfile,
};
use codeg::pc::{PcGroup, PcPresentation};
use codeg::Error;

const GUARD: u64 = 20_000;

type Outcome = Result<String, String>;

type Criterion = (&'static str, fn() -> Outcome);

fn powers(p: u32, exps: &[u32]) -> Vec<u64> {
    exps.iter().map(|&e| (p as u64).pow(e)).collect()
}

fn group(family: &str, p: u32, allow_p3: bool) -> Result<PcGroup, String> {
    let id = GroupId::parse(family, p).map_err(|e| e.to_string())?;
    build_group(&id, BuildOptions { allow_p3 }, GUARD).map_err(|e| format!("{family}@{p}: {e}"))
}

fn table(g: &PcGroup) -> Result<CharacterTable, String> {
    character_table(g, 0).map_err(|e| e.to_string())
}

fn fmt(v: &[u64]) -> String {
    let items: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("{{{}}}", items.join(","))
}

/// Both methods on one group against `expected`, within `limit`.
fn both_methods(family: &str, p: u32, expected: &[u64], limit: Duration, formula: bool) -> Result<Duration, String> {
    let start = Instant::now();
    let g = group(family, p, false)?;
    let brute = table(&g)?.codegree_set();
    if brute != expected {
        return Err(format!("{family}@{p}: brute force {} != {}", fmt(&brute), fmt(expected)));
    }
    if formula {
        let f = codegrees_formula(&g).map_err(|e| format!("{family}@{p}: {e}"))?;
        if f.cod != expected {
            return Err(format!("{family}@{p}: formula {} != {}", fmt(&f.cod), fmt(expected)));
        }
    }
    let took = start.elapsed();
    if took > limit {
        return Err(format!("{family}@{p}: took {took:?}, limit {limit:?}"));
    }
    Ok(took)
}

fn rows(cases: &[(&str, u32, &[u32], bool)], limit: Duration) -> Outcome {
    let mut slowest = Duration::ZERO;
    for &(family, p, exps, formula) in cases {
        slowest = slowest.max(both_methods(family, p, &powers(p, exps), limit, formula)?);
    }
    Ok(format!("{} groups, slowest {slowest:.2?}", cases.len()))
}

fn order_p3() -> Outcome {
    let mut cases = Vec::new();
    for p in [3, 5, 7] {
        for fam in ["extraspecial_exp_p:1", "extraspecial_exp_p2:1"] {
            cases.push((fam, p, &[0, 1, 2][..], true));
        }
    }
    rows(&cases, Duration::from_secs(1))
}

fn table1() -> Outcome {
    let mut cases = Vec::new();
    for p in [5, 7] {
        cases.push(("phi2_31", p, &[0, 1, 2, 3][..], true));
        cases.push(("phi2_211b", p, &[0, 1, 3][..], true));
    }
    rows(&cases, Duration::from_secs(30))
}

fn table3() -> Outcome {
    // No closed form covers these non-VZ, non-Camina groups.
    let cases: [(&str, u32, &[u32], bool); 4] = [
        ("phi3_2111c", 5, &[0, 1, 2, 4], false),
        ("phi4_221a", 5, &[0, 1, 2, 3], false),
        ("phi4_221c", 5, &[0, 1, 2], false),
        ("phi4_221f0", 5, &[0, 1, 3], false),
    ];
    rows(&cases, Duration::from_secs(600))
}

fn table4() -> Outcome {
    let cases: [(&str, u32, &[u32], bool); 4] = [
        ("extraspecial_exp_p:1", 3, &[0, 1, 2], true),
        ("extraspecial_exp_p2:1", 3, &[0, 1, 2], true),
        ("extraspecial_exp_p:2", 3, &[0, 1, 3], true),
        ("extraspecial_exp_p2:2", 3, &[0, 1, 3], true),
    ];
    rows(&cases, Duration::from_secs(5))
}

/// A random partition of total at most `max`.
fn random_partition(rng: &mut ChaCha8Rng, max: u32) -> Vec<u32> {
    let mut left = rng.gen_range(1..=max);
    let mut parts = Vec::new();
    while left > 0 {
        let cap = parts.last().copied().unwrap_or(left).min(left);
        let part = rng.gen_range(1..=cap);
        parts.push(part);
        left -= part;
    }
    parts
}

fn abelian_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut seen = Vec::new();
    for _ in 0..20 {
        let (p, max) = if rng.gen_bool(0.5) { (3, 6) } else { (5, 4) };
        let parts = random_partition(&mut rng, max);
        let joined: Vec<String> = parts.iter().map(u32::to_string).collect();
        let family = format!("abelian:{}", joined.join(","));
        let g = group(&family, p, false)?;
        let expected = powers(p, &(0..=parts[0]).collect::<Vec<_>>());
        let formula = cod_abelian(p, &parts).map_err(|e| e.to_string())?.cod;
        let brute = table(&g)?.codegree_set();
        if formula != expected || brute != expected {
            return Err(format!(
                "{family}@{p}: formula {} brute {} expected {}",
                fmt(&formula),
                fmt(&brute),
                fmt(&expected)
            ));
        }
        seen.push(format!("{family}@{p}"));
    }
    Ok(format!("20 partitions, e.g. {}", seen[..3].join(" ")))
}

/// Every buildable catalog group at p = 3, 5, 7, the φ families at 3 included.
fn catalog_groups() -> Result<Vec<(String, u32, PcGroup)>, String> {
    let mut templates: Vec<String> = list_catalog()
        .into_iter()
        .filter(|e| e.constructible && !e.template.starts_with("abelian"))
        .map(|e| e.template)
        .collect();
    templates.sort();
    templates.dedup();
    templates.extend(["abelian:1", "abelian:2,1", "abelian:1,1,1"].map(String::from));
    let mut out = Vec::new();
    for t in &templates {
        for p in [3, 5, 7] {
            let id = GroupId::parse(t, p).map_err(|e| e.to_string())?;
            match build_group(&id, BuildOptions { allow_p3: true }, GUARD) {
                Ok(g) => out.push((t.clone(), p, g)),
                Err(Error::OrderGuard { .. }) => {}
                Err(e) => return Err(format!("{t}@{p}: {e}")),
            }
        }
    }
    Ok(out)
}

/// Class-2 group of order 3^7 with `G/Z ≅ F_9²` and `Z ≅ C_9 × C_3 ≥ G' ≅ C_3²`.
fn equal_rank_group() -> Result<PcGroup, String> {
    let pres = PcPresentation::new(3, 7)
        .and_then(|x| x.with_power(4, &[(5, 1)]))
        .and_then(|x| x.with_commutator(2, 0, &[(5, 1)]))
        .and_then(|x| x.with_commutator(3, 0, &[(6, 1)]))
        .and_then(|x| x.with_commutator(2, 1, &[(6, 1)]))
        .and_then(|x| x.with_commutator(3, 1, &[(5, 2)]))
        .map_err(|e| e.to_string())?;
    PcGroup::new(pres, 1 << 20).map_err(|e| e.to_string())
}

fn case_groups() -> Result<Vec<(String, PcGroup)>, String> {
    let pres = |f: &str| {
        build(&GroupId::parse(f, 3).map_err(|e| e.to_string())?, BuildOptions { allow_p3: true })
            .map_err(|e| e.to_string())
    };
    let product = |a: &str, b: &str| -> Result<(String, PcGroup), String> {
        let joined = pres(a)?.direct_product(&pres(b)?).map_err(|e| e.to_string())?;
        let g = PcGroup::new(joined, 1 << 20).map_err(|e| e.to_string())?;
        Ok((format!("{a} x {b}@3"), g))
    };
    Ok(vec![
        product("heisenberg", "abelian:1")?,
        product("heisenberg", "abelian:2")?,
        product("phi2_31", "abelian:1")?,
        ("equal-rank group of order 3^7".into(), equal_rank_group()?),
    ])
}

fn vz_consistency() -> Outcome {
    let mut checked = 0;
    let mut by_case = 0;
    let mut groups: Vec<(String, PcGroup)> = catalog_groups()?
        .into_iter()
        .map(|(t, p, g)| (format!("{t}@{p}"), g))
        .collect();
    groups.extend(case_groups()?);
    for (name, g) in &groups {
        if !is_vz(g, None) {
            continue;
        }
        let t = table(g)?;
        if !is_vz(g, Some(&t)) {
            return Err(format!("{name}: class count and degrees disagree on VZ"));
        }
        let brute = t.codegree_set();
        let general = cod_vz_general(g).map_err(|e| format!("{name}: {e}"))?.cod;
        if general != brute {
            return Err(format!("{name}: general {} brute {}", fmt(&general), fmt(&brute)));
        }
        match cod_vz_case(g) {
            Ok(r) if r.cod != brute => {
                return Err(format!("{name}: case {} brute {}", fmt(&r.cod), fmt(&brute)));
            }
            Ok(_) => by_case += 1,
            Err(Error::NoCaseApplies { .. }) => {}
            Err(e) => return Err(format!("{name}: {e}")),
        }
        checked += 1;
    }
    Ok(format!("{checked} VZ groups, {by_case} covered by a case formula"))
}

fn camina() -> Outcome {
    for p in [3, 5, 7] {
        let g = group("heisenberg", p, false)?;
        let profile = camina_profile(&g);
        if !profile.is_camina || profile.class != Some(2) {
            return Err(format!("heisenberg@{p}: profile {profile:?}"));
        }
        let order = g.order() as u64;
        let d = g.derived_subgroup().order() as u64;
        let z = g.center().order() as u64;
        let formula = cod_camina(&profile, p, order, d, z).map_err(|e| e.to_string())?.cod;
        let brute = table(&g)?.codegree_set();
        let expected = powers(p, &[0, 1, 2]);
        if formula != expected || brute != expected {
            return Err(format!("heisenberg@{p}: formula {} brute {}", fmt(&formula), fmt(&brute)));
        }
    }
    // Class 3 needs order at least p^7, so the formula is checked symbolically:
    // |G/G'| = p^{2n}, |G/Z| = p^{3n}, and |Z| = p.
    for (p, n) in [(3u32, 2u32), (5, 2), (7, 4)] {
        let profile = CaminaProfile {
            is_camina: true,
            class: Some(3),
            n: Some(n),
        };
        let pp = p as u64;
        let order = pp.pow(3 * n + 1);
        let derived = order / pp.pow(2 * n);
        let formula = cod_camina(&profile, p, order, derived, pp).map_err(|e| e.to_string())?.cod;
        let expected = powers(p, &[0, 1, n + 1, 3 * n / 2 + 1]);
        if formula != expected {
            return Err(format!("class 3 ({p},{n}): {} != {}", fmt(&formula), fmt(&expected)));
        }
    }
    Ok("heisenberg at 3,5,7 by both methods; class 3 at (3,2),(5,2),(7,4)".into())
}

fn properties() -> Outcome {
    let groups = catalog_groups()?;
    let mut violations = Vec::new();
    for (t, p, g) in &groups {
        let name = format!("{t}@{p}");
        let tab = table(g)?;
        let order = g.order() as u64;
        let squares: u64 = tab.degrees().iter().map(|d| d * d).sum();
        if squares != order {
            violations.push(format!("{name}: sum of squared degrees {squares}"));
        }
        if let Some(pair) = tab.check_orthogonality() {
            violations.push(format!("{name}: rows {pair:?} not orthogonal"));
        }
        let cod = tab.codegree_set();
        if !cod.iter().all(|&c| is_power(*p, c)) {
            violations.push(format!("{name}: codegree not a p-power"));
        }
        let elementary = g.is_abelian() && g.exponent() == *p as u64;
        if cod.len() == 2 && !elementary {
            violations.push(format!("{name}: |cod| = 2 but not elementary abelian"));
        }
        if g.nilpotency_class() >= 3 && cod.len() < 4 {
            violations.push(format!("{name}: class >= 3 with |cod| = {}", cod.len()));
        }
        let n = order.ilog(*p as u64);
        if !g.is_abelian() && n <= 5 && !within_envelope(*p, n, &cod) {
            violations.push(format!("{name}: {} outside the envelope", fmt(&cod)));
        }
    }
    if violations.is_empty() {
        Ok(format!("{} catalog groups, zero violations", groups.len()))
    } else {
        Err(violations.join("; "))
    }
}

fn is_power(p: u32, mut c: u64) -> bool {
    while c > 1 && c.is_multiple_of(p as u64) {
        c /= p as u64;
    }
    c == 1
}

fn determinism() -> Outcome {
    let run = || -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_codeg"))
            .args(["verify", "all", "--seed", "7"])
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!(
                "exit {:?}: {}",
                out.status.code(),
                String::from_utf8_lossy(&out.stderr)
            ));
        }
        Ok(out.stdout)
    };
    let (a, b) = (run()?, run()?);
    serde_json::from_slice::<serde_json::Value>(&a).map_err(|e| format!("not JSON: {e}"))?;
    if a != b {
        return Err("outputs differ".into());
    }
    Ok(format!("{} identical bytes", a.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("order p^3 groups", order_p3),
        ("Table 1 order p^4 rows", table1),
        ("Table 3 order 5^5 rows", table3),
        ("Table 4 order 3^n rows", table4),
        ("abelian oracle equivalence", abelian_oracle),
        ("VZ consistency", vz_consistency),
        ("Camina groups", camina),
        ("property suite", properties),
        ("determinism of verify all", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {}. {name}: {detail} [{took:.1?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why} [{took:.1?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
