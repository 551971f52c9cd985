//! The twelve acceptance criteria, each reported as one PASS/FAIL line.

use std::sync::OnceLock;

use berger_g2::report::{CheckEntry, Config, Status};
use berger_g2::suite::{cohom1_checks, flag_checks, g2_checks, structure_checks};

struct Criterion {
    number: usize,
    title: &'static str,
    prefixes: &'static [&'static str],
    /// Seconds.
    budget: f64,
    extra: fn(&[&CheckEntry]) -> Result<(), String>,
}

fn none(_: &[&CheckEntry]) -> Result<(), String> {
    Ok(())
}

fn find<'a>(entries: &[&'a CheckEntry], id: &str) -> Result<&'a CheckEntry, String> {
    entries.iter().copied().find(|e| e.check_id == id).ok_or_else(|| format!("missing {id}"))
}

fn detail_u64(e: &CheckEntry, key: &str) -> Option<u64> {
    e.details.get(key).and_then(|v| v.as_u64())
}

fn exact_zero(entries: &[&CheckEntry]) -> Result<(), String> {
    match entries.iter().find(|e| e.residual != 0.0) {
        Some(e) => Err(format!("{} residual {}", e.check_id, e.residual)),
        None => Ok(()),
    }
}

fn classification(entries: &[&CheckEntry]) -> Result<(), String> {
    for id in ["planes.Q5_family", "planes.Q4a_family", "planes.Q3_family"] {
        let e = find(entries, id)?;
        if detail_u64(e, "samples").unwrap_or(0) < 50 || e.residual >= 1e-10 {
            return Err(format!("{id}: {e:?}"));
        }
    }
    let grid = find(entries, "planes.Q4b_grid")?;
    if detail_u64(grid, "grid_points").unwrap_or(0) < 400 {
        return Err("Q4b grid below 400 points".into());
    }
    let roots = find(entries, "planes.P_theta_roots")?;
    if roots.residual >= 1e-9 {
        return Err(format!("P_theta roots off by {}", roots.residual));
    }
    Ok(())
}

fn group_orders(entries: &[&CheckEntry]) -> Result<(), String> {
    for (id, n) in [("groups.order_Ico", 60), ("groups.order_Oct", 24)] {
        if detail_u64(find(entries, id)?, "order") != Some(n) {
            return Err(format!("{id} is not {n}"));
        }
    }
    Ok(())
}

fn homogeneous(entries: &[&CheckEntry]) -> Result<(), String> {
    for case in ["o123a", "o123b", "o145", "o167"] {
        let e = find(entries, &format!("orbit.{case}"))?;
        if detail_u64(e, "lie_stabilizer_dim") != Some(1) {
            return Err(format!("{case} stabilizer is not one-dimensional"));
        }
    }
    Ok(())
}

fn dodecahedron(entries: &[&CheckEntry]) -> Result<(), String> {
    let count = find(entries, "veronese.intersection_count")?;
    let points = count.details.get("points").and_then(|v| v.as_array()).map_or(0, Vec::len);
    if points != 20 {
        return Err(format!("{points} intersection points"));
    }
    if find(entries, "veronese.dodecahedron")?.residual >= 1e-8 {
        return Err("coordinates do not match the dodecahedron".into());
    }
    Ok(())
}

fn intersections(entries: &[&CheckEntry]) -> Result<(), String> {
    for (id, n) in [("intersect.Ico", 60), ("intersect.Oct", 4)] {
        if detail_u64(find(entries, id)?, "order") != Some(n) {
            return Err(format!("{id} is not {n}"));
        }
    }
    Ok(())
}

fn flag_identities(entries: &[&CheckEntry]) -> Result<(), String> {
    let rows = entries.iter().filter(|e| e.check_id.starts_with("flag.structflag.d") && e.check_id != "flag.structflag.d_squared").count();
    if rows != 6 {
        return Err(format!("{rows} structure equation rows"));
    }
    exact_zero(&entries.iter().copied().filter(|e| !e.check_id.contains("negative control")).collect::<Vec<_>>())
}

fn cohomogeneity_one(entries: &[&CheckEntry]) -> Result<(), String> {
    let pullback = find(entries, "cohom1.pullback")?;
    if detail_u64(pullback, "samples").unwrap_or(0) < 100 || pullback.residual >= 1e-12 {
        return Err(format!("pullback: {pullback:?}"));
    }
    if detail_u64(find(entries, "cohom1.half_flat")?, "samples").unwrap_or(0) < 20 {
        return Err("half-flat sampled at fewer than 20 parameters".into());
    }
    let nk = find(entries, "cohom1.never_nearly_kahler")?;
    if detail_u64(nk, "sweep").unwrap_or(0) < 50 || nk.residual <= 0.0 {
        return Err(format!("nearly Kähler defect: {nk:?}"));
    }
    Ok(())
}

fn c_curves(entries: &[&CheckEntry]) -> Result<(), String> {
    if find(entries, "ccurve.circle_12_fixes")?.residual != 0.0 {
        return Err("circle (1,2) moves the base point".into());
    }
    for id in ["ccurve.tangent_in_cone", "ccurve.gamma_fiber"] {
        if find(entries, id)?.residual >= 1e-8 {
            return Err(format!("{id} residual too large"));
        }
    }
    Ok(())
}

fn immersion(entries: &[&CheckEntry]) -> Result<(), String> {
    let grid = detail_u64(find(entries, "flag.immersion.normal_lift")?, "grid").unwrap_or(0);
    if grid < 100 {
        return Err(format!("normal lift grid has {grid} points"));
    }
    Ok(())
}

const CRITERIA: [Criterion; 12] = [
    Criterion { number: 1, title: "structure equations and d² = 0", prefixes: &["structure."], budget: 5.0, extra: exact_zero },
    Criterion { number: 2, title: "nearly parallel identity dφ = 4∗φ", prefixes: &["g2."], budget: 1.0, extra: exact_zero },
    Criterion { number: 3, title: "classification of special 3-planes", prefixes: &["planes.", "classify."], budget: 30.0, extra: classification },
    Criterion { number: 4, title: "group orders", prefixes: &["groups."], budget: 2.0, extra: group_orders },
    Criterion { number: 5, title: "isotypic decompositions", prefixes: &["isotypic."], budget: 2.0, extra: none },
    Criterion { number: 6, title: "homogeneous associatives", prefixes: &["orbit."], budget: 30.0, extra: homogeneous },
    Criterion { number: 7, title: "dodecahedron intersection", prefixes: &["veronese."], budget: 60.0, extra: dodecahedron },
    Criterion { number: 8, title: "group intersections", prefixes: &["intersect."], budget: 30.0, extra: intersections },
    Criterion { number: 9, title: "flag manifold identities", prefixes: &["flag.jstruct", "flag.omegazeta", "flag.coframe", "flag.structflag", "flag.nk"], budget: 5.0, extra: flag_identities },
    Criterion { number: 10, title: "cohomogeneity-one family", prefixes: &["cohom1."], budget: 30.0, extra: cohomogeneity_one },
    Criterion { number: 11, title: "C-curves and Γ-fibres", prefixes: &["ccurve."], budget: 30.0, extra: c_curves },
    Criterion { number: 12, title: "immersion criterion", prefixes: &["flag.immersion"], budget: 1.0, extra: immersion },
];

fn entries() -> &'static [CheckEntry] {
    static ENTRIES: OnceLock<Vec<CheckEntry>> = OnceLock::new();
    ENTRIES.get_or_init(|| {
        let cfg = Config::default();
        let mut v = structure_checks(&cfg);
        v.extend(g2_checks(&cfg));
        v.extend(flag_checks(&cfg));
        v.extend(cohom1_checks(&cfg));
        v
    })
}

fn evaluate(c: &Criterion) -> (bool, String) {
    let selected: Vec<&CheckEntry> = entries()
        .iter()
        .filter(|e| c.prefixes.iter().any(|p| e.check_id.starts_with(p)))
        .collect();
    let seconds = selected.iter().map(|e| e.runtime_ms).sum::<f64>() / 1e3;
    let failed: Vec<&str> = selected.iter().filter(|e| e.status == Status::Fail).map(|e| e.check_id.as_str()).collect();
    let verdict = if selected.is_empty() {
        Err("no checks ran".to_string())
    } else if !failed.is_empty() {
        Err(format!("failed: {}", failed.join(", ")))
    } else if seconds > c.budget {
        Err(format!("{seconds:.2} s exceeds {} s", c.budget))
    } else {
        (c.extra)(&selected)
    };
    let line = format!(
        "criterion {:>2} {} {:<40} {:>3} checks {:>9.1} ms{}",
        c.number,
        if verdict.is_ok() { "PASS" } else { "FAIL" },
        c.title,
        selected.len(),
        seconds * 1e3,
        verdict.as_ref().err().map_or(String::new(), |e| format!("  ({e})")),
    );
    (verdict.is_ok(), line)
}

fn float_mode_agrees() -> bool {
    let cfg = Config {
        mode: berger_g2::scalar::ScalarMode::Float { tol: 1e-9 },
        ..Config::default()
    };
    let mut v = structure_checks(&cfg);
    v.extend(flag_checks(&cfg));
    v.iter().all(|e| e.status != Status::Fail)
}

fn main() {
    let mut passed = 0;
    for c in &CRITERIA {
        let (ok, line) = evaluate(c);
        println!("{line}");
        passed += usize::from(ok);
    }
    let float = float_mode_agrees();
    println!("float-mode rerun of the algebraic checks: {}", if float { "PASS" } else { "FAIL" });
    println!("{passed}/{} acceptance criteria passed", CRITERIA.len());
    if passed != CRITERIA.len() || !float {
        std::process::exit(1);
    }
}
