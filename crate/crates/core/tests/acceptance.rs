//! Exit criteria. Prints one PASS/FAIL line per criterion and exits non-zero
//! when any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{cds_components_match_regions, knot_reassembles, net, window_components, CDS, TWO_VERTEX};
use netiso::enumeration::{
    canonicalize_lattice_word, cross_check, double_lattice_census, lattice_census, reference_rows, EdgeWord,
    CONNECTED_LATTICE_CLASSES, DISCONNECTED_LATTICE_CLASSES,
};
use netiso::freespace::{count_components, scan_free_region, Adjacency};
use netiso::geometry::is_proper;
use netiso::invariants::coordination_sequence;
use netiso::lqg::{component_structure, is_indivisible, Multiplicity};
use netiso::orbits::{
    act, alpha, alpha_closed_form, beta, beta_t, burnside_fixed_total, count_orbits, factorial, GridGroup,
    GridSymmetry, Pattern,
};
use netiso::superlattices::beta_tt;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn within(pass: bool, elapsed: Duration, budget: Duration, detail: String) -> Verdict {
    let in_time = elapsed <= budget;
    let timing = format!("{:.2}s of {}s", elapsed.as_secs_f64(), budget.as_secs());
    let timing = if in_time { format!(" [{timing}]") } else { format!(" [too slow: {timing}]") };
    let mut detail = detail;
    detail.insert_str(detail.find('\n').unwrap_or(detail.len()), &timing);
    verdict(pass && in_time, detail)
}

fn alpha_counts() -> Verdict {
    let expected: [u64; 6] = [1, 4, 12, 128, 2424, 74088];
    let t = Instant::now();
    let closed: Vec<BigUint> = (2..=7).map(alpha_closed_form).collect();
    let closed_time = t.elapsed();
    let closed_ok = closed.iter().zip(expected).all(|(a, e)| *a == BigUint::from(e));

    let t = Instant::now();
    let direct: Vec<usize> = (2..=6).map(alpha).collect();
    let direct_time = t.elapsed();
    let agree = direct.iter().zip(&closed).all(|(&d, c)| BigUint::from(d) == *c);

    let pass = closed_ok && agree && closed_time < Duration::from_secs(1) && direct_time < Duration::from_secs(120);
    verdict(
        pass,
        format!(
            "closed form {:?} in {:.3}s (budget 1s); direct n<=6 {:?} in {:.2}s (budget 120s)",
            closed.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            closed_time.as_secs_f64(),
            direct,
            direct_time.as_secs_f64()
        ),
    )
}

fn beta_counts() -> Verdict {
    let t = Instant::now();
    let got: Vec<usize> = (2..=6).map(beta).collect();
    within(got == [1, 1, 3, 9, 89], t.elapsed(), Duration::from_secs(600), format!("beta(2..6) = {got:?}"))
}

fn rho_counts() -> Verdict {
    let t = Instant::now();
    let got: Vec<usize> = (2..=4).map(netiso::orbits::rho).collect();
    within(got == [1, 4, 33], t.elapsed(), Duration::from_secs(60), format!("rho(2..4) = {got:?}"))
}

fn beta_tt_counts() -> Verdict {
    let t = Instant::now();
    let got: Vec<usize> = (2..=7).map(|n| beta_tt(n).beta_tt()).collect();
    within(got == [1, 1, 1, 2, 1, 4], t.elapsed(), Duration::from_secs(60), format!("beta_tt(2..7) = {got:?}"))
}

fn beta_t_counts() -> Verdict {
    let expected = [1, 1, 3, 2, 7, 4];
    let mut got = Vec::new();
    let mut dump = String::new();
    for (n, want) in (2..=7).zip(expected) {
        let t = beta_t(n);
        got.push(t.transitive.len());
        if t.transitive.len() != want {
            for p in &t.transitive {
                dump += &format!("\n    n={n} class {} points {:?}", p.index(), p.points());
            }
        }
    }
    verdict(got == expected, format!("beta_t(2..7) = {got:?}{dump}"))
}

fn lattice_table() -> Verdict {
    let t = Instant::now();
    let census = match lattice_census() {
        Ok(c) => c,
        Err(e) => return verdict(false, e.to_string()),
    };
    let mismatches = cross_check(&census);
    let counts_ok = census.connected.len() == CONNECTED_LATTICE_CLASSES
        && census.disconnected.len() == DISCONNECTED_LATTICE_CLASSES
        && census.connected.len() == 19
        && census.disconnected.len() == 6;
    let rows = reference_rows();
    let named: [(&str, u64); 10] = [
        ("pcu", 1561),
        ("bcu", 2331),
        ("hex", 2331),
        ("ilc", 3321),
        ("8T17", 4497),
        ("8T21", 4041),
        ("bct", 3101),
        ("fcu", 3871),
        ("bcu-x", 4641),
        ("14T957", 6621),
    ];
    let named_ok = named.iter().all(|&(topology, td)| {
        rows.iter()
            .find(|r| r.topology == topology)
            .is_some_and(|r| census.class_of(r.word).is_some_and(|c| c.fingerprint.td10 == td))
    });
    let mut detail = format!(
        "{} connected, {} disconnected; {} of {} table rows match; named td10 {}",
        census.connected.len(),
        census.disconnected.len(),
        rows.len() - mismatches.iter().map(|m| m.word).collect::<std::collections::BTreeSet<_>>().len(),
        rows.len(),
        if named_ok { "ok" } else { "mismatch" },
    );
    for m in &mismatches {
        detail += &format!("\n    {} {}: table {}, computed {}", m.word, m.field, m.expected, m.got);
    }
    within(counts_ok && named_ok && mismatches.is_empty(), t.elapsed(), Duration::from_secs(300), detail)
}

fn coordination_prefixes() -> Verdict {
    let cases: [(&str, &str, &[u64]); 3] = [
        ("bcu", "a_x a_y a_z d_1", &[8, 26, 56, 98, 152]),
        ("8T17", "a_x g_x g_y d_1", &[8, 32, 88]),
        ("8T21", "a_x g_y g_z d_1", &[8, 32, 80]),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, word, want) in cases {
        let g = word.parse::<EdgeWord>().expect("valid word").model_net().graph;
        let got = coordination_sequence(&g, 0, want.len());
        pass &= got.as_slice() == want;
        parts.push(format!("{name} {got:?}"));
    }
    verdict(pass, parts.join("; "))
}

fn double_lattice_counts() -> Verdict {
    let t = Instant::now();
    let census = double_lattice_census();
    let got: Vec<usize> = (4..=8).map(|m| census.count(m)).collect();
    let total: usize = got.iter().sum();
    let below: usize = (1..=3).map(|m| census.count(m)).sum();
    within(
        got == [1, 11, 31, 40, 34] && total == 117 && below == 0,
        t.elapsed(),
        Duration::from_secs(1800),
        format!("m=4..8 {got:?}, total {total}"),
    )
}

fn free_space() -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, text) in [("two-vertex", TWO_VERTEX), ("cds", CDS)] {
        let p = net(text);
        let mobile = p.graph.vertex_index("v2").expect("v2");
        for r in [32, 64] {
            let t = Instant::now();
            let scan = match scan_free_region(&p.graph, &p.positions, mobile, r) {
                Ok(s) => s,
                Err(e) => return verdict(false, format!("{name}: {e}")),
            };
            let comps = count_components(&scan, Adjacency::Cube);
            let mut ok = comps.count() == 5;
            let mut note = String::new();
            if name == "cds" {
                let regions = cds_components_match_regions(&scan, &comps.labels, comps.count());
                ok &= regions;
                note = format!(", regions {}", if regions { "match" } else { "differ" });
            }
            let elapsed = t.elapsed();
            ok &= elapsed <= Duration::from_secs(120);
            pass &= ok;
            parts.push(format!("{name} R={r}: {}{note} ({:.1}s)", comps.count(), elapsed.as_secs_f64()));
        }
    }
    verdict(pass, parts.join("; "))
}

fn property_summary() -> Verdict {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    let groups = [GridGroup::Shifts, GridGroup::Rotations, GridGroup::ShiftsRotations, GridGroup::ShiftsPointGroup];
    'laws: for _ in 0..500 {
        let n = rng.gen_range(2..=6);
        let els = groups[rng.gen_range(0..4)].elements(n);
        let (g, h) = (els[rng.gen_range(0..els.len())], els[rng.gen_range(0..els.len())]);
        let p = Pattern::from_index(n, rng.gen_range(0..factorial(n).pow(2)));
        if act(&g.compose(&h, n), &p) != act(&g, &act(&h, &p)) || act(&GridSymmetry::identity(), &p) != p {
            failures.push(format!("group action law at n={n}"));
            break 'laws;
        }
    }

    for n in 1..=6 {
        for group in groups {
            let order = group.elements(n).len();
            if burnside_fixed_total(n, group) != BigUint::from(count_orbits(n, group) * order) {
                failures.push(format!("Burnside n={n} {group:?}"));
            }
        }
    }

    for mask in 1u16..(1 << 13) {
        let w = EdgeWord::from_mask(mask).expect("mask in range");
        let m = w.model_net();
        if is_proper(&m) && !is_indivisible(&m.graph).is_indivisible() {
            failures.push(format!("proper but divisible: {w}"));
        }
        let c = canonicalize_lattice_word(w);
        if canonicalize_lattice_word(c) != c {
            failures.push(format!("canonical form not idempotent: {w}"));
        }
    }

    for (word, k) in [("f_x f_y f_z", 2), ("g_x g_y d_1", 3), ("g_x g_y g_z d_1", 3)] {
        let m = word.parse::<EdgeWord>().expect("valid word").model_net();
        let snf = component_structure(&m.graph).total_multiplicity();
        let window = window_components(&m, 2);
        if snf != Multiplicity::Finite(k) || window != k as usize {
            failures.push(format!("{word}: multiplicity {snf}, window components {window}, expected {k}"));
        }
    }

    match lattice_census() {
        Ok(census) => {
            for class in census.connected.iter().chain(&census.disconnected) {
                for &w in &class.members {
                    if !knot_reassembles(&w.model_net()) {
                        failures.push(format!("knot piece sum: {w}"));
                    }
                }
            }
        }
        Err(e) => failures.push(e.to_string()),
    }

    let detail = if failures.is_empty() {
        "group laws, Burnside n<=6, indivisibility, multiplicity, knot sums, canonical forms".to_string()
    } else {
        failures.join("; ")
    };
    verdict(failures.is_empty(), detail)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("alpha(2..7) closed form and direct", alpha_counts),
        ("beta(2..6)", beta_counts),
        ("rho(2..4)", rho_counts),
        ("beta_tt(2..7) via HNF", beta_tt_counts),
        ("beta_t(2..7)", beta_t_counts),
        ("lattice census and reference table", lattice_table),
        ("coordination sequence prefixes", coordination_prefixes),
        ("double-lattice census", double_lattice_counts),
        ("free-space components", free_space),
        ("property suites", property_summary),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        if !v.pass {
            failed += 1;
        }
        println!("{} criterion {:>2} {name}: {}", if v.pass { "PASS" } else { "FAIL" }, i + 1, v.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
