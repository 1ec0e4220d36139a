//! Sixteen acceptance criteria, one `PASS`/`FAIL` line each.
//!
//! Each criterion is a selection of checks from the named experiments, so the
//! numbers printed here are the same ones `hg experiment` reports. The circle
//! grid size comes from `HG_GRID_M` (default 4096). Exits 1 if any criterion
//! fails.

use std::collections::HashMap;
use std::time::Instant;

use homotopy_gaps::experiments::{self, Check, Context, Params};

struct Criterion {
    id: u32,
    title: &'static str,
    experiment: &'static str,
    /// Case-name prefixes to include; empty means every check.
    cases: &'static [&'static str],
    /// Extra checks from a second experiment.
    also: Option<(&'static str, &'static [&'static str])>,
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        title: "zigzag W^{1,1} distance = 4|d1-d2|",
        experiment: "w11-zigzag",
        cases: &[],
        also: None,
    },
    Criterion {
        id: 2,
        title: "phase deflation W^{1,1} distance = 2π|d|",
        experiment: "dist-w11-hausdorff",
        cases: &[],
        also: None,
    },
    Criterion {
        id: 3,
        title: "class minimum ∫|v'|^p = 2|d|^p π",
        experiment: "w1p-formula",
        cases: &["class-min"],
        also: None,
    },
    Criterion {
        id: 4,
        title: "optimised W^{1,p} distance E_0 → E_1",
        experiment: "w1p-formula",
        cases: &["optimised"],
        also: None,
    },
    Criterion {
        id: 5,
        title: "attainment for p = 1, 1.5; non-attainment signature at p = 2",
        experiment: "attainment",
        cases: &[],
        also: None,
    },
    Criterion {
        id: 6,
        title: "H^{1/2} Fourier identities",
        experiment: "h-half-blaschke",
        cases: &["|z^", "parseval", "fourier degree"],
        also: None,
    },
    Criterion {
        id: 7,
        title: "Blaschke bubble excess positive, decreasing, final < 5%",
        experiment: "h-half-blaschke",
        cases: &["excess delta", "closed form", "|excess|", "final |excess|"],
        also: None,
    },
    Criterion {
        id: 8,
        title: "H^{1/2} lower bound over random maps",
        experiment: "h-half-blaschke",
        cases: &["lower bound"],
        also: None,
    },
    Criterion {
        id: 9,
        title: "capacity profile decay, final < 0.5 × initial",
        experiment: "capacity-decay",
        cases: &[],
        also: None,
    },
    Criterion {
        id: 10,
        title: "critical bump pair: degrees (1, 0), distance decreasing",
        experiment: "eps-bump-critical",
        cases: &[],
        also: Some(("degree-stability", &["N=1 degree", "N=2 degree"])),
    },
    Criterion {
        id: 11,
        title: "stereographic z^d: degree d, energy 8π|d|",
        experiment: "s2-energy",
        cases: &[],
        also: None,
    },
    Criterion {
        id: 12,
        title: "suspension degree parity table",
        experiment: "degree-stability",
        cases: &["suspension"],
        also: None,
    },
    Criterion {
        id: 13,
        title: "S² pair difference independent of d1",
        experiment: "s2-vo1",
        cases: &[],
        also: None,
    },
    Criterion {
        id: 14,
        title: "multi-bump |h|² linear in d",
        experiment: "multibump-scaling",
        cases: &[],
        also: None,
    },
    Criterion {
        id: 15,
        title: "oscillator distance to E_0 nondecreasing, final ≥ 2π - 0.3",
        experiment: "oscillator-lb",
        cases: &[],
        also: None,
    },
    Criterion {
        id: 16,
        title: "degrees stay (1, 0) while the critical distance shrinks",
        experiment: "degree-stability",
        cases: &["N=1 degree", "N=2 degree", "N=1 |f-g|", "stability ratio"],
        also: None,
    },
];

fn select<'a>(checks: &'a [Check], prefixes: &[&str]) -> Vec<&'a Check> {
    checks
        .iter()
        .filter(|c| prefixes.is_empty() || prefixes.iter().any(|p| c.case.starts_with(p)))
        .collect()
}

fn main() {
    let ctx = match Context::from_env() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("acceptance: {e}");
            std::process::exit(2);
        }
    };
    println!("acceptance: circle grid M = {} (S² grids are fixed per experiment)", ctx.m);

    let mut cache: HashMap<&str, Vec<Check>> = HashMap::new();
    let mut run = |name: &'static str| -> Result<(), String> {
        if !cache.contains_key(name) {
            let start = Instant::now();
            let out = experiments::find(name)
                .and_then(|e| e.run(&Params::new(), &ctx))
                .map_err(|e| format!("{name}: {e}"))?;
            println!("  ran {name} in {:.1} s", start.elapsed().as_secs_f64());
            cache.insert(name, out.checks);
        }
        Ok(())
    };
    let mut errors = HashMap::new();
    for c in CRITERIA {
        for name in std::iter::once(c.experiment).chain(c.also.map(|a| a.0)) {
            if let Err(e) = run(name) {
                errors.insert(c.id, e);
            }
        }
    }

    let mut failed = 0;
    for c in CRITERIA {
        if let Some(e) = errors.get(&c.id) {
            println!("FAIL {:>2} {} (M={}): error: {e}", c.id, c.title, ctx.m);
            failed += 1;
            continue;
        }
        let mut checks = select(&cache[c.experiment], c.cases);
        if let Some((name, prefixes)) = c.also {
            checks.extend(select(&cache[name], prefixes));
        }
        let graded: Vec<_> = checks.iter().filter_map(|k| k.passed().map(|p| (k, p))).collect();
        let ok = !graded.is_empty() && graded.iter().all(|(_, p)| *p);
        println!(
            "{} {:>2} {} (M={}, {} checks)",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            ctx.m,
            graded.len()
        );
        if !ok {
            failed += 1;
        }
        for k in &checks {
            let status = match k.passed() {
                Some(true) => "ok  ",
                Some(false) => "FAIL",
                None => "info",
            };
            println!("       {status} {} = {:.6e}", k.case, k.value);
        }
    }
    println!("acceptance: {} of {} criteria pass", CRITERIA.len() - failed, CRITERIA.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
