use crate::golden::{self, Check};
use crate::{cache, Failure, Format, RunConfig};
use conekit::blowup::{
    chamber_consistency, check_range, dk_halfspaces, verify_strong_duality, x48_weyl_curve_classes,
    ChamberReport, DualityReport, Verdict,
};
use conekit::cone::{ConeDocument, LatticeVec, PolyCone};
use conekit::picard::{replay, weyl_orbit_search, CurveClass, DivisorClass};
use conekit::toric::{self, verify_lm};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

type Outcome = Result<(), Failure>;

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn strings(v: &LatticeVec) -> Vec<String> {
    v.coords().iter().map(ToString::to_string).collect()
}

/// Runs the golden comparison if requested, then prints `json` or `text`.
/// `passed` is the command's own verdict.
fn emit(
    config: &RunConfig,
    command: &str,
    name: &str,
    json: &str,
    text: &str,
    passed: bool,
) -> Outcome {
    let golden_ok = match &config.golden {
        None => true,
        Some(dir) => match golden::check(dir, command, name, json, config.update_golden) {
            Ok(Check::Match | Check::Written) => true,
            Ok(Check::Drift | Check::Missing) => false,
            Err(e) => return Err(Failure::Usage(format!("golden directory: {e}"))),
        },
    };
    match config.format {
        Format::Json => print!("{json}"),
        Format::Text => print!("{text}"),
    }
    if passed && golden_ok {
        Ok(())
    } else {
        Err(Failure::Verdict)
    }
}

#[derive(Serialize)]
struct Inequality {
    label: String,
    normal: Vec<String>,
}

/// The cone without facet labels, so equal cones print identically.
#[derive(Serialize)]
struct ConeSection {
    dim: usize,
    rays: Vec<Vec<String>>,
    facets: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct DkOutput {
    n: usize,
    s: usize,
    k: usize,
    halfspaces: Vec<Inequality>,
    cone: ConeSection,
}

pub fn dk(config: &RunConfig, n: usize, s: usize, k: usize) -> Outcome {
    check_range(n, s, k)?;
    let rows = dk_halfspaces(n, s, k)?;
    let cone = PolyCone::from_halfspaces(s + 1, &rows)?;
    let out = DkOutput {
        n,
        s,
        k,
        halfspaces: rows
            .iter()
            .map(|h| Inequality {
                label: h.label.clone().unwrap_or_default(),
                normal: strings(&h.normal),
            })
            .collect(),
        cone: ConeSection {
            dim: cone.dim(),
            rays: cone.rays().iter().map(strings).collect(),
            facets: cone.facets().iter().map(|h| strings(&h.normal)).collect(),
        },
    };

    let mut text = String::new();
    let _ = writeln!(
        text,
        "D_{k} on X^{n}_{s}: {} inequalities, coordinates (d, m_1, ..., m_s)",
        rows.len()
    );
    for h in &out.halfspaces {
        let _ = writeln!(text, "  {:<40} ({})", h.label, h.normal.join(", "));
    }
    let _ = writeln!(text, "cone:");
    let _ = writeln!(text, "  {} extremal rays", cone.rays().len());
    for r in cone.rays() {
        let _ = writeln!(text, "    {}", DivisorClass::from_lattice(n, r));
    }
    let _ = writeln!(text, "  {} facets", cone.facets().len());
    for f in cone.facets() {
        let _ = writeln!(text, "    {}", f.normal);
    }
    emit(
        config,
        "dk",
        &format!("n{n}_s{s}_k{k}"),
        &to_json(&out),
        &text,
        true,
    )
}

fn duality_report(
    config: &RunConfig,
    n: usize,
    s: usize,
    k: usize,
) -> Result<DualityReport, Failure> {
    check_range(n, s, k)?;
    let key = match &config.cache_dir {
        Some(_) => Some(cache::duality_key(n, s, k)?),
        None => None,
    };
    if let (Some(dir), Some(key)) = (&config.cache_dir, &key) {
        if let Some(r) = cache::load(dir, key, n, s, k) {
            log::info!("cache hit for X^{n}_{s}, k={k}");
            return Ok(r);
        }
    }
    let mut report = verify_strong_duality(n, s, k)?;
    let elapsed = report.wallclock_ms.take();
    if let (Some(dir), Some(key)) = (&config.cache_dir, &key) {
        cache::store(dir, key, &report);
    }
    if config.timing {
        report.wallclock_ms = elapsed;
    }
    Ok(report)
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Equal => "equal",
        Verdict::StrictInclusion => "strict inclusion",
        Verdict::NotContained => "not contained",
    }
}

fn summary_line(r: &DualityReport) -> String {
    let mut line = format!(
        "X^{}_{} k={}: {} ({} inequalities, {} dual rays, {} generators)",
        r.n,
        r.s,
        r.k,
        verdict_word(r.verdict),
        r.halfspaces.len(),
        r.dual_rays.len(),
        r.generators.len()
    );
    if let Some(ms) = r.wallclock_ms {
        let _ = write!(line, " {ms} ms");
    }
    if let Some(w) = &r.witness {
        let _ = write!(line, " witness ({})", w.join(", "));
    }
    line
}

fn golden_name(r: &DualityReport) -> String {
    format!("n{}_s{}_k{}", r.n, r.s, r.k)
}

pub fn duality(config: &RunConfig, n: usize, s: usize, k: usize) -> Outcome {
    let r = duality_report(config, n, s, k)?;
    let mut text = summary_line(&r);
    text.push('\n');
    let _ = writeln!(text, "generators (delta, mu_1, ..., mu_s):");
    for g in &r.generators {
        let mark = if g.extremal { "extremal" } else { "" };
        let _ = writeln!(text, "  {:<40} {:<36} {mark}", g.label, g.class);
    }
    let _ = writeln!(text, "extremal rays of the dual of D_k:");
    for w in &r.dual_rays {
        let _ = writeln!(text, "  ({})", w.join(", "));
    }
    let passed = r.verdict == Verdict::Equal;
    emit(
        config,
        "duality",
        &golden_name(&r),
        &to_json(&r),
        &text,
        passed,
    )
}

pub fn duality_all(config: &RunConfig, max_n: usize) -> Outcome {
    if max_n < 2 {
        return Err(Failure::Usage(format!(
            "--max-n {max_n} must be at least 2"
        )));
    }
    let jobs: Vec<(usize, usize, usize)> = (2..=max_n)
        .flat_map(|n| (1..=n + 3).flat_map(move |s| (0..n).map(move |k| (n, s, k))))
        .collect();
    // rayon keeps the input order when collecting
    let reports = jobs
        .par_iter()
        .map(|&(n, s, k)| duality_report(config, n, s, k))
        .collect::<Result<Vec<_>, _>>()?;

    let mut golden_ok = true;
    if let Some(dir) = &config.golden {
        for r in &reports {
            match golden::check(
                dir,
                "duality",
                &golden_name(r),
                &to_json(r),
                config.update_golden,
            ) {
                Ok(Check::Match | Check::Written) => {}
                Ok(Check::Drift | Check::Missing) => golden_ok = false,
                Err(e) => return Err(Failure::Usage(format!("golden directory: {e}"))),
            }
        }
    }
    let equal = reports
        .iter()
        .filter(|r| r.verdict == Verdict::Equal)
        .count();
    match config.format {
        Format::Json => print!("{}", to_json(&reports)),
        Format::Text => {
            for r in &reports {
                println!("{}", summary_line(r));
            }
            println!("{equal} of {} instances equal", reports.len());
        }
    }
    if equal == reports.len() && golden_ok {
        Ok(())
    } else {
        Err(Failure::Verdict)
    }
}

pub fn chambers(config: &RunConfig, n: usize, s: usize) -> Outcome {
    check_range(n, s, 0)?;
    let r: ChamberReport = chamber_consistency(n, s)?;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "X^{n}_{s}: {} chambers cut by {} hyperplanes",
        r.chambers.len(),
        r.hyperplanes
    );
    for c in &r.chambers {
        let label = match c.base_locus_dim {
            None => "empty base locus".to_string(),
            Some(d) => format!("base locus dim {d}"),
        };
        let inside: String = c
            .inside
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect();
        let _ = writeln!(
            text,
            "  {}  {:<18} in D_0..D_{}: {inside}",
            c.signs,
            label,
            n - 1
        );
    }
    for k in 0..n {
        let _ = writeln!(
            text,
            "D_{k}: single-valued {}, labels match {}, union equals D_{k} {}",
            r.single_valued[k], r.label_matches[k], r.union_equals[k]
        );
    }
    let _ = writeln!(text, "consistent: {}", r.consistent());
    emit(
        config,
        "chambers",
        &format!("n{n}_s{s}"),
        &to_json(&r),
        &text,
        r.consistent(),
    )
}

fn parse_ints(raw: &str) -> Result<Vec<i64>, Failure> {
    raw.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|e| Failure::Usage(format!("bad integer {x:?} in {raw:?}: {e}")))
        })
        .collect()
}

fn explicit_class(n: usize, s: usize, raw: &str) -> Result<CurveClass, Failure> {
    let v = parse_ints(raw)?;
    if v.len() != s + 1 {
        return Err(Failure::Usage(format!(
            "class {raw:?} needs {} entries (delta, mu_1, ..., mu_{s})",
            s + 1
        )));
    }
    Ok(CurveClass::from_ints(n, v[0], &v[1..]))
}

fn parse_class(n: usize, s: usize, raw: &str) -> Result<CurveClass, Failure> {
    let Some((family, indices)) = raw.split_once(':') else {
        return explicit_class(n, s, raw);
    };
    if (n, s) != (4, 8) {
        return Err(Failure::Usage(
            "family classes are defined on X^4_8 only".into(),
        ));
    }
    let indices: Vec<usize> = parse_ints(indices)?
        .into_iter()
        .map(|i| usize::try_from(i).unwrap_or(0))
        .collect();
    x48_weyl_curve_classes()
        .into_iter()
        .find(|w| w.family == family && w.indices == indices)
        .map(|w| w.class)
        .ok_or_else(|| Failure::Usage(format!("no class {raw:?} on X^4_8")))
}

#[derive(Serialize)]
struct WeylOutput {
    n: usize,
    s: usize,
    class: String,
    target: String,
    max_depth: usize,
    found: bool,
    path: Option<Vec<Vec<usize>>>,
    endpoint: Option<String>,
}

pub fn weyl(
    config: &RunConfig,
    n: usize,
    s: usize,
    class: &str,
    target: &str,
    max_depth: usize,
) -> Outcome {
    if n < 2 || s == 0 {
        return Err(Failure::Usage(format!("X^{n}_{s} is not supported")));
    }
    let c = parse_class(n, s, class)?;
    let path = if target == "conic" {
        weyl_orbit_search(&c, CurveClass::is_conic_through_three_points, max_depth)
    } else {
        let goal = explicit_class(n, s, target)?;
        weyl_orbit_search(&c, |x| *x == goal, max_depth)
    };
    let endpoint = path.as_ref().map(|p| replay(&c, p)).transpose()?;
    let out = WeylOutput {
        n,
        s,
        class: c.to_string(),
        target: target.to_string(),
        max_depth,
        found: path.is_some(),
        path: path
            .as_ref()
            .map(|p| p.iter().map(|g| g.as_slice().to_vec()).collect()),
        endpoint: endpoint.as_ref().map(ToString::to_string),
    };

    let mut text = String::new();
    match (&path, &endpoint) {
        (Some(p), Some(end)) => {
            let _ = writeln!(text, "{c} reaches {end} in {} moves", p.len());
            let mut cur = c.clone();
            for g in p {
                cur = replay(&cur, std::slice::from_ref(g))?;
                let _ = writeln!(text, "  Cr{g} -> {cur}");
            }
        }
        _ => {
            let _ = writeln!(text, "{c}: target not found within depth {max_depth}");
        }
    }
    let name = format!("n{n}_s{s}_{}", class.replace([':', ','], "_"));
    emit(config, "weyl", &name, &to_json(&out), &text, out.found)
}

pub fn lm_verify(config: &RunConfig) -> Outcome {
    let r = verify_lm()?;
    let mut text = String::new();
    for (name, ok) in r.checks() {
        let _ = writeln!(text, "{}  {name}", if ok { "PASS" } else { "FAIL" });
    }
    let _ = writeln!(text, "fan: {} rays, {} maximal cones", r.rays, r.max_cones);
    let _ = writeln!(
        text,
        "dual of Mov: {} extremal rays (unexpected {}, missing {})",
        r.movable_dual_rays,
        r.unexpected.len(),
        r.missing.len()
    );
    let _ = writeln!(
        text,
        "flopped curve {} becomes {}",
        r.flopped_class, r.flopped_image
    );
    let _ = writeln!(
        text,
        "gamma = {}: gamma.E_1 = {}, gamma.E_123 = {}, E_1 meets E_123 on X {}, on Y {}",
        r.gamma.gamma, r.gamma.pair_e1, r.gamma.pair_e123, r.gamma.meet_in_x, r.gamma.meet_in_y
    );
    emit(config, "lm", "verify", &to_json(&r), &text, r.all_pass())
}

pub fn lm_fan(config: &RunConfig) -> Outcome {
    let fan = toric::lm_fan();
    let json = to_json(&fan.to_document());
    let mut text = String::new();
    for (label, r) in fan.labels().iter().zip(fan.rays()) {
        let _ = writeln!(text, "{label:>4}  ({}, {}, {})", r[0], r[1], r[2]);
    }
    for cone in fan.max_cones() {
        let labels: Vec<&str> = cone.iter().map(|&i| fan.labels()[i].as_str()).collect();
        let _ = writeln!(text, "  [{}]", labels.join(", "));
    }
    emit(config, "lm", "fan", &json, &text, true)
}

pub fn dual(config: &RunConfig, input: &Path) -> Outcome {
    let text = if input == Path::new("-") {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(input)
            .map_err(|e| Failure::Usage(format!("{}: {e}", input.display())))?
    };
    let doc: ConeDocument = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", input.display())))?;
    let d = doc.to_cone()?.dualize();
    let out = ConeDocument::from_cone(&d);
    let mut text = String::new();
    let _ = writeln!(text, "dual cone in dimension {}", d.dim());
    let _ = writeln!(text, "  {} rays", d.rays().len());
    for r in d.rays() {
        let _ = writeln!(text, "    {r}");
    }
    if !d.lineality().is_empty() {
        let _ = writeln!(text, "  lineality");
        for r in d.lineality() {
            let _ = writeln!(text, "    {r}");
        }
    }
    let _ = writeln!(text, "  {} facets", d.facets().len());
    for f in d.facets() {
        let _ = writeln!(text, "    {}", f.normal);
    }
    if !d.equations().is_empty() {
        let _ = writeln!(text, "  equations");
        for e in d.equations() {
            let _ = writeln!(text, "    {e}");
        }
    }
    let name = input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "stdin".into());
    emit(config, "dual", &name, &to_json(&out), &text, true)
}
