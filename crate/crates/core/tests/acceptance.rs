//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

mod common;

use common::*;
use conekit::blowup::{
    chamber_consistency, check_range, ck_cone, dk_cone, dk_halfspaces, join_halfspaces,
    kappa_chambers, orbit_entry, x48_weyl_curve_classes,
};
use conekit::cone::sign_vector_census;
use conekit::cone::{cone_equal, cone_subset, PolyCone};
use conekit::picard::{replay, weyl_orbit_search, CurveClass};
use conekit::toric::verify_lm;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

const CHAMBER_GOLDEN_X25: usize = 393;
const CENSUS_SAMPLES: usize = 100_000;
const CENSUS_MEMBERSHIP: usize = 2_000;

struct Instance {
    dk: PolyCone,
    gen: PolyCone,
}

type Suite = BTreeMap<(usize, usize, usize), Instance>;

fn suite() -> Suite {
    let mut out = Suite::new();
    for n in 2..=6 {
        for s in 1..=n + 3 {
            for k in 0..n {
                check_range(n, s, k).expect("suite instance in range");
                let dk = dk_cone(n, s, k).expect("builds");
                let gen = ck_cone(n, s, k).expect("builds");
                out.insert((n, s, k), Instance { dk, gen });
            }
        }
    }
    out
}

fn report(name: &str, failures: &[String], started: Instant) -> bool {
    let ok = failures.is_empty();
    let secs = started.elapsed().as_secs_f64();
    if ok {
        println!("PASS  {name}  ({secs:.1}s)");
    } else {
        println!("FAIL  {name}  ({secs:.1}s)");
        for f in failures.iter().take(10) {
            println!("      {f}");
        }
        if failures.len() > 10 {
            println!("      ... {} more", failures.len() - 10);
        }
    }
    ok
}

fn duality(suite: &Suite) -> Vec<String> {
    suite
        .iter()
        .filter(|(_, inst)| !cone_equal(&inst.dk.dualize(), &inst.gen).expect("same ambient"))
        .map(|((n, s, k), _)| format!("X^{n}_{s}, k={k}: dual of D_k differs from cone(C_k)"))
        .collect()
}

fn filtration(suite: &Suite) -> Vec<String> {
    let mut out = Vec::new();
    for (&(n, s, k), inst) in suite {
        let Some(next) = suite.get(&(n, s, k + 1)) else {
            continue;
        };
        if !cone_subset(&next.dk, &inst.dk).expect("same ambient") {
            out.push(format!("X^{n}_{s}: D_{} not in D_{k}", k + 1));
        }
        if !cone_subset(&inst.gen, &next.gen).expect("same ambient") {
            out.push(format!("X^{n}_{s}: C_{k} not in C_{}", k + 1));
        }
    }
    out
}

fn degeneration(suite: &Suite) -> Vec<String> {
    let mut out = Vec::new();
    for (n, s) in [(5, 3), (6, 4)] {
        for k in (1..n - s + 1).filter(|k| k + 1 < n) {
            let a = &suite[&(n, s, k)].dk;
            let b = &suite[&(n, s, k + 1)].dk;
            if !cone_equal(a, b).expect("same ambient") {
                out.push(format!("X^{n}_{s}: D_{k} != D_{}", k + 1));
            }
        }
    }
    out
}

fn redundancy(suite: &Suite) -> Vec<String> {
    let mut out = Vec::new();
    for (&(n, s, k), inst) in suite.iter().filter(|((_, _, k), _)| *k >= 1) {
        let mut rows = dk_halfspaces(n, s, k).expect("builds");
        rows.extend(join_halfspaces(n, s, k - 1).expect("builds"));
        let with_previous = PolyCone::from_halfspaces(s + 1, &rows).expect("same ambient");
        if !cone_equal(&with_previous, &inst.dk).expect("same ambient") {
            out.push(format!("X^{n}_{s}, k={k}: (III_{}) rows cut D_k", k - 1));
        }
    }
    out
}

fn chambers() -> Vec<String> {
    let mut out = Vec::new();
    let r = chamber_consistency(2, 5).expect("runs");
    if !r.consistent() {
        out.push(format!(
            "inconsistent: single-valued {:?}, labels {:?}, unions {:?}",
            r.single_valued, r.label_matches, r.union_equals
        ));
    }
    if r.chambers.len() != CHAMBER_GOLDEN_X25 {
        out.push(format!(
            "{} chambers, golden {CHAMBER_GOLDEN_X25}",
            r.chambers.len()
        ));
    }
    let (_, normals, cells) = kappa_chambers(2, 5).expect("runs");
    let eff = dk_cone(2, 5, 0).expect("builds");
    let census = sign_vector_census(&eff, &normals, &cells, CENSUS_SAMPLES, CENSUS_MEMBERSHIP, 1);
    if !census.unlisted.is_empty() {
        out.push(format!(
            "census found {} unlisted sign vectors",
            census.unlisted.len()
        ));
    }
    if census.uncovered > 0 || census.multiply_covered > 0 {
        out.push(format!(
            "census membership: {} uncovered, {} multiply covered",
            census.uncovered, census.multiply_covered
        ));
    }
    out
}

fn losev_manin() -> Vec<String> {
    let r = verify_lm().expect("runs");
    let mut out: Vec<String> = r
        .checks()
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| format!("{name} fails"))
        .collect();
    if r.gamma.pair_e1 != -1 || r.gamma.pair_e123 != 1 || r.gamma.meet_in_y {
        out.push(format!(
            "gamma: pair with E_1 {}, with E_123 {}, meet on Y {}",
            r.gamma.pair_e1, r.gamma.pair_e123, r.gamma.meet_in_y
        ));
    }
    out
}

/// `2h - e_i - e_j - e_k` for distinct `i, j, k`, read off the coordinates.
fn is_conic_form(c: &CurveClass) -> bool {
    let one = BigRational::one();
    c.delta == one.clone() + one.clone()
        && c.mu.iter().filter(|m| **m == one).count() == 3
        && c.mu.iter().filter(|m| m.is_zero()).count() == c.mu.len() - 3
}

fn weyl_orbits() -> Vec<String> {
    let mut out = Vec::new();
    let classes = x48_weyl_curve_classes();
    for family in ["mu3", "mu6", "mu10", "mu15"] {
        let w = classes
            .iter()
            .find(|w| w.family == family)
            .expect("family listed");
        let Some(path) = weyl_orbit_search(&w.class, CurveClass::is_conic_through_three_points, 6)
        else {
            out.push(format!("{family}: no path within depth 6"));
            continue;
        };
        let end = replay(&w.class, &path).expect("valid moves");
        if !is_conic_form(&end) {
            out.push(format!(
                "{family}: endpoint {end} is not a conic through three points"
            ));
        }
        let entry = orbit_entry(w, 6);
        if entry.endpoint.as_deref() != Some(end.to_string().as_str()) {
            out.push(format!(
                "{family}: reported endpoint {:?} differs from replay {end}",
                entry.endpoint
            ));
        }
    }
    out
}

fn properties() -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    for _ in 0..200 {
        let dim = rng.gen_range(1..=5);
        let count = rng.gen_range(1..=8);
        let g = random_vectors(&mut rng, dim, count, 3);
        let c = cone_of(dim, &g);
        out.extend(check_cone(&c).err());
        out.extend(check_cone(&c.dualize()).err());
    }
    for _ in 0..200 {
        let dim = rng.gen_range(1..=4);
        let count = rng.gen_range(1..=6);
        let g = random_vectors(&mut rng, dim, count, 3);
        out.extend(check_extremal(dim, &g).err());
    }
    for _ in 0..1000 {
        let n = rng.gen_range(2..=5);
        let s = rng.gen_range(n + 1..=n + 4);
        let d = random_divisor(&mut rng, n, s);
        let c = random_curve(&mut rng, n, s);
        let gamma = random_subset(&mut rng, s, n + 1);
        out.extend(check_cremona(&d, &c, &gamma).err());
    }
    for _ in 0..1000 {
        let n = rng.gen_range(2..=6);
        let s = rng.gen_range(1..=n + 3);
        let d = random_divisor(&mut rng, n, s);
        let join = random_join(&mut rng, n, s);
        out.extend(check_wall_class(&d, &join).err());
    }
    out
}

fn main() -> ExitCode {
    let mut all = true;

    let t = Instant::now();
    let suite = suite();
    println!(
        "      built {} suite instances ({:.1}s)",
        suite.len(),
        t.elapsed().as_secs_f64()
    );

    let t = Instant::now();
    all &= report("1 strong duality, 2 <= n <= 6", &duality(&suite), t);
    let t = Instant::now();
    all &= report("2 filtration of D_k and C_k", &filtration(&suite), t);
    let t = Instant::now();
    all &= report(
        "3 D_k = D_(k+1) for k < n-s+1 on X^5_3, X^6_4",
        &degeneration(&suite),
        t,
    );
    let t = Instant::now();
    all &= report(
        "4 (III_(k-1)) rows redundant given D_k rows",
        &redundancy(&suite),
        t,
    );
    let t = Instant::now();
    all &= report("5 chamber consistency and census on X^2_5", &chambers(), t);
    let t = Instant::now();
    all &= report("6 Losev-Manin fan, movable dual, flop", &losev_manin(), t);
    let t = Instant::now();
    all &= report("7 X^4_8 Weyl orbits reach conics", &weyl_orbits(), t);
    let t = Instant::now();
    all &= report("8 seeded property loops", &properties(), t);

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
