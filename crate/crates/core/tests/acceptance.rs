//! Acceptance criteria, one line per criterion.

use std::process::ExitCode;
use weylcheck::catalog::{find, CatalogEntry, CATALOG};
use weylcheck::config::Geometry;
use weylcheck::connection::equal_trace_check;
use weylcheck::curvature::{gauduchon_tod_check, gt_connection_curvature};
use weylcheck::expr::Expression;
use weylcheck::geometry::{halton, Chart};
use weylcheck::hermitian::{hermitian_weyl_check, lemma34_check, prop311_report};
use weylcheck::morphism::{chain_rule_check, fuglede_ishihara, theorem23_report};
use weylcheck::report::{Tolerance, Verdict, VerdictReport};
use weylcheck::runner::{run, run_task, sample, RunOptions};
use weylcheck::twistor::{extract_k, lemma55_check, prop56_report, ricci_horizontal_tracefree, thm44a_report, thm44a_report_with};

type Outcome = Result<String, String>;

fn entry(name: &str) -> &'static CatalogEntry {
    find(name).unwrap_or_else(|| panic!("catalog entry {name}"))
}

fn geometry(name: &str) -> Geometry {
    entry(name).geometry().expect("catalog geometry parses")
}

fn points(g: &Geometry, n: usize) -> Vec<Vec<f64>> {
    sample(g, n, 0).expect("sampling succeeds").accepted
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(r: &VerdictReport, rel: f64) -> bool {
    r.max_residual.is_finite() && r.max_residual < rel * (1.0 + r.scale)
}

fn expressions(g: &Geometry) -> Vec<(Chart, Expression)> {
    let mut out = Vec::new();
    let dom = g.domain.chart().clone();
    let mut push_all = |c: &Chart, es: &[Expression]| out.extend(es.iter().map(|e| (c.clone(), e.clone())));
    push_all(&dom, g.domain.metric_upper());
    push_all(&dom, g.domain.lee_form());
    if let Some(m) = &g.map {
        push_all(&dom, m.components());
        let cod = m.codomain().chart().clone();
        push_all(&cod, m.codomain().metric_upper());
        push_all(&cod, m.codomain().lee_form());
        if let Some(j) = &g.codomain_complex_structure {
            for row in j.rows() {
                push_all(&cod, row);
            }
        }
    }
    if let Some(j) = &g.complex_structure {
        for row in j.rows() {
            push_all(&dom, row);
        }
    }
    if let Some(k) = &g.gt_k {
        push_all(&dom, std::slice::from_ref(k));
    }
    out
}

fn c1_ad_soundness() -> Outcome {
    let h = 1e-5;
    let (mut worst, mut count) = (0.0_f64, 0usize);
    for e in CATALOG {
        let g = e.geometry().map_err(|x| x.to_string())?;
        for (chart, expr) in expressions(&g) {
            let m = chart.dim();
            for i in 0..50u64 {
                let x: Vec<f64> = halton(i + 1, m)
                    .iter()
                    .zip(chart.sample_box())
                    .map(|(t, (lo, hi))| lo + t * (hi - lo))
                    .collect();
                let Ok(jet) = expr.eval_jet2::<f64>(&x) else { continue };
                for a in 0..m {
                    let (mut xp, mut xm) = (x.clone(), x.clone());
                    xp[a] += h;
                    xm[a] -= h;
                    let (fp, fm) = (expr.eval::<f64>(&xp).map_err(|e| e.to_string())?, expr.eval::<f64>(&xm).map_err(|e| e.to_string())?);
                    let fd = (fp - fm) / (2.0 * h);
                    worst = worst.max((fd - jet.grad(a)).abs() / (1.0 + jet.grad(a).abs()));
                    let (jp, jm) = (expr.eval_jet2::<f64>(&xp).map_err(|e| e.to_string())?, expr.eval_jet2::<f64>(&xm).map_err(|e| e.to_string())?);
                    for b in 0..m {
                        let fd2 = (jp.grad(b) - jm.grad(b)) / (2.0 * h);
                        worst = worst.max((fd2 - jet.hess(a, b)).abs() / (1.0 + jet.hess(a, b).abs()));
                    }
                }
                count += 1;
            }
        }
    }
    ensure(worst < 1e-6, format!("max relative error {worst:.2e}"))?;
    Ok(format!("{count} expression evaluations, max relative error {worst:.2e}"))
}

fn c2_equal_trace() -> Outcome {
    let mut worst = 0.0_f64;
    for name in ["gibbons_hawking", "constant_curvature_3", "flat_with_curl_lee"] {
        let g = geometry(name);
        let pts = points(&g, 20);
        let r = equal_trace_check(&g.domain, &pts, 0, 10, Tolerance::new(1e-8)).map_err(|e| e.to_string())?;
        ensure(within(&r, 1e-8) && r.passed(), format!("{name}: residual {:.2e}", r.max_residual))?;
        worst = worst.max(r.max_residual);
    }
    Ok(format!("3 geometries x 20 points x 10 cubics, max residual {worst:.2e}"))
}

fn c3_chain_rule() -> Outcome {
    let mut n = 0;
    let mut worst = 0.0_f64;
    let shifts = [None, Some(["0.2", "-0.1*x2"])];
    for e in CATALOG {
        let g = e.geometry().map_err(|x| x.to_string())?;
        let Some(map) = &g.map else { continue };
        let pts = points(&g, 16);
        for shift in shifts {
            let map = match shift {
                None => map.clone(),
                Some([a, b]) => {
                    let c = g.domain.chart();
                    let mut lee = g.domain.lee_form().to_vec();
                    let second = c.coords()[1].clone();
                    lee[0] = Expression::combine(weylcheck::expr::BinOp::Add, &lee[0], &c.parse(a).unwrap());
                    lee[1] = Expression::combine(weylcheck::expr::BinOp::Add, &lee[1], &c.parse(&b.replace("x2", &second)).unwrap());
                    map.with_domain(g.domain.with_lee_form(lee).map_err(|x| x.to_string())?)
                }
            };
            let r = chain_rule_check(&map, &pts, Tolerance::new(1e-8)).map_err(|x| x.to_string())?;
            ensure(r.passed(), format!("{}: residual {:.2e}", e.name, r.max_residual))?;
            worst = worst.max(r.max_residual);
            n += 1;
        }
    }
    Ok(format!("{n} (map, D^M, D^N) cases incl. non-harmonic maps, max residual {worst:.2e}"))
}

fn c4_trace_b_and_fundamental() -> Outcome {
    let mut worst = 0.0_f64;
    for name in ["gibbons_hawking", "killing_rotation", "hopf_type", "product_planes", "product_s2_line"] {
        let g = geometry(name);
        let pts = points(&g, 32);
        for task in ["trace-b", "fundamental"] {
            let r = run_task(task, &g, &pts, 0, Tolerance::new(1e-8)).map_err(|e| e.to_string())?;
            ensure(within(&r, 1e-8), format!("{name}/{task}: residual {:.2e}", r.max_residual))?;
            worst = worst.max(r.max_residual);
        }
    }
    Ok(format!("5 maps, max residual {worst:.2e}"))
}

fn c5_fuglede() -> Outcome {
    let g = geometry("gibbons_hawking");
    let r = fuglede_ishihara(g.map.as_ref().unwrap(), &points(&g, 32), Tolerance::new(1e-8)).map_err(|e| e.to_string())?;
    ensure(r.passed() && r.max_residual < 1e-8, format!("residual {:.2e}", r.max_residual))?;
    Ok(format!("5 harmonic polynomials through Gibbons-Hawking, max residual {:.2e}", r.max_residual))
}

fn c6_theorem23() -> Outcome {
    let tol = Tolerance::default();
    let mut n = 0;
    for e in CATALOG {
        let g = e.geometry().map_err(|x| x.to_string())?;
        let Some(map) = &g.map else { continue };
        let r = theorem23_report(map, &points(&g, 32), tol).map_err(|x| format!("{}: {x}", e.name))?;
        ensure(r.flag("two_of_three") == Some(true), format!("{}: flag violated", e.name))?;
        n += 1;
    }
    let g = geometry("killing_rotation");
    let r = theorem23_report(g.map.as_ref().unwrap(), &points(&g, 32), tol).map_err(|e| e.to_string())?;
    let v = |m: &str| r.measure(m).map(|x| x.verdict);
    ensure(
        v("harmonic_morphism") == Some(Verdict::Pass) && v("minimal_fibres") == Some(Verdict::Fail) && v("connection") == Some(Verdict::Fail),
        "killing_rotation is not the (pass, fail, fail) case",
    )?;
    Ok(format!("flag holds on {n} catalog maps; killing_rotation gives (i) pass, (ii) fail, (iii) fail"))
}

fn c7_hermitian_weyl() -> Outcome {
    let mut n = 0;
    let (mut tr, mut an) = (0.0_f64, 0.0_f64);
    for e in CATALOG {
        let g = e.geometry().map_err(|x| x.to_string())?;
        let Some(j) = &g.complex_structure else { continue };
        if g.domain.dim() != 4 {
            continue;
        }
        let r = hermitian_weyl_check(&g.domain, j, &points(&g, 24), Tolerance::new(1e-9)).map_err(|x| x.to_string())?;
        let (t, a) = (r.measure("trace").unwrap(), r.measure("anticommutation").unwrap());
        ensure(t.max_residual < 1e-9 && a.max_residual < 1e-8, format!("{}: trace {:.2e}, anticommutation {:.2e}", e.name, t.max_residual, a.max_residual))?;
        tr = tr.max(t.max_residual);
        an = an.max(a.max_residual);
        n += 1;
    }
    Ok(format!("{n} Hermitian geometries, trace {tr:.2e}, anticommutation {an:.2e}"))
}

fn c8_lemma34() -> Outcome {
    let mut worst = 0.0_f64;
    for name in ["product_planes", "holomorphic_square", "holomorphic_weighted", "gibbons_hawking_2d"] {
        let g = geometry(name);
        let (map, jm, jn) = (g.map.as_ref().unwrap(), g.complex_structure.as_ref().unwrap(), g.codomain_complex_structure.as_ref().unwrap());
        let r = lemma34_check(map, jm, jn, &points(&g, 32), Tolerance::new(1e-8)).map_err(|e| e.to_string())?;
        ensure(within(&r, 1e-8), format!("{name}: residual {:.2e}", r.max_residual))?;
        worst = worst.max(r.max_residual);
    }
    Ok(format!("4 holomorphic maps, max residual {worst:.2e}"))
}

fn c9_prop311() -> Outcome {
    let mut names = Vec::new();
    for e in CATALOG {
        let g = e.geometry().map_err(|x| x.to_string())?;
        let (Some(map), Some(j)) = (&g.map, &g.complex_structure) else { continue };
        if map.m() != 4 || map.n() != 2 {
            continue;
        }
        let r = prop311_report(map, j, &points(&g, 32), Tolerance::default()).map_err(|x| x.to_string())?;
        ensure(r.flag("equivalence") == Some(true), format!("{}: equivalence violated", e.name))?;
        names.push(e.name);
    }
    ensure(names.len() >= 4, "too few 4 -> 2 cases")?;
    Ok(format!("equivalence holds on {}", names.join(", ")))
}

fn c10_thm44a() -> Outcome {
    let tol = Tolerance::default();
    for name in ["gibbons_hawking", "gibbons_hawking_lee", "gibbons_hawking_colee"] {
        let g = geometry(name);
        let r = thm44a_report(g.map.as_ref().unwrap(), &points(&g, 32), tol).map_err(|e| e.to_string())?;
        ensure(r.flag("two_of_three") == Some(true), format!("{name}: flag violated"))?;
    }
    let g = geometry("gibbons_hawking");
    let pts = points(&g, 32);
    let r = thm44a_report_with(g.map.as_ref().unwrap(), &pts, tol, 1.0).map_err(|e| e.to_string())?;
    let a3 = r.measure("eq41").unwrap();
    ensure(a3.verdict == Verdict::Fail && a3.max_residual >= 1e-3, format!("coefficient 1 leaves (a3) at {:.2e}", a3.max_residual))?;
    Ok(format!("flag holds on 3 variants; coefficient 1 breaks (a3) by {:.3}", a3.max_residual))
}

fn c11_extract_k() -> Outcome {
    let g = geometry("gibbons_hawking");
    let r = extract_k(g.map.as_ref().unwrap(), &points(&g, 32), Tolerance::default()).map_err(|e| e.to_string())?;
    let basic = r.measure("k_basic").ok_or("k basic-ness not reported")?;
    ensure(r.max_residual < 1e-8, format!("horizontal residual {:.2e}", r.max_residual))?;
    Ok(format!("horizontal residual {:.2e}, k basic-ness residual {:.2e}", r.max_residual, basic.max_residual))
}

fn c12_lemma55() -> Outcome {
    let mut parts = Vec::new();
    for name in ["gibbons_hawking", "killing_rotation"] {
        let g = geometry(name);
        let r = lemma55_check(g.map.as_ref().unwrap(), &points(&g, 32), Tolerance::default()).map_err(|e| e.to_string())?;
        ensure(within(&r, 1e-7), format!("{name}: residual {:.2e}", r.max_residual))?;
        parts.push(format!("{name} {:.2e}", r.max_residual));
    }
    Ok(parts.join(", "))
}

fn c13_ricci_agreement() -> Outcome {
    let tol = Tolerance::default();
    let (mut three, mut four) = (0, 0);
    for e in CATALOG {
        let g = e.geometry().map_err(|x| x.to_string())?;
        let Some(map) = &g.map else { continue };
        let pts = points(&g, 24);
        if map.m() == 3 && map.n() == 2 {
            let r = ricci_horizontal_tracefree(map, &pts, tol).map_err(|x| x.to_string())?;
            ensure(r.flag("three_way_agreement") == Some(true), format!("{}: three verdicts disagree", e.name))?;
            three += 1;
        }
        if map.m() == 4 && (2..=3).contains(&map.n()) {
            let hm = weylcheck::morphism::harmonic_morphism_verdict(map, &pts, tol).map_err(|x| x.to_string())?;
            if !hm.passed() {
                continue;
            }
            let r = prop56_report(map, &pts, tol).map_err(|x| x.to_string())?;
            ensure(r.flag("agrees_with_twistoriality") == Some(true), format!("{}: prop56 disagrees with twistoriality", e.name))?;
            four += 1;
        }
    }
    Ok(format!("{three} three-dimensional and {four} four-dimensional cases agree"))
}

fn c14_gauge_invariance() -> Outcome {
    let mut n = 0;
    let mut fmax = 0.0_f64;
    for e in CATALOG {
        let g = e.geometry().map_err(|x| x.to_string())?;
        let chart = g.domain.chart();
        let lambda = chart.parse(&format!("1 + 0.3*{}", chart.coords()[0])).unwrap();
        let h = g.gauge_transformed(&lambda);
        let pts = points(&g, 24);
        for (task, _) in e.expected {
            let a = run_task(task, &g, &pts, 0, Tolerance::default()).map_err(|x| x.to_string())?;
            let b = run_task(task, &h, &pts, 0, Tolerance::default()).map_err(|x| x.to_string())?;
            ensure(a.verdict == b.verdict, format!("{}/{task}: {} vs {}", e.name, a.verdict, b.verdict))?;
            n += 1;
        }
        for x in &pts {
            let (fa, fb) = (g.domain.lee_at(x).unwrap().faraday(), h.domain.lee_at(x).unwrap().faraday());
            fmax = fmax.max((fa - fb).abs().max());
        }
    }
    ensure(fmax < 1e-9, format!("Faraday difference {fmax:.2e}"))?;
    Ok(format!("{n} verdicts unchanged, Faraday difference {fmax:.2e}"))
}

fn c15_gauduchon_tod() -> Outcome {
    let g = geometry("constant_curvature_3");
    let pts = points(&g, 24);
    let tol = Tolerance::default();
    let check = |k: &str| -> Result<(bool, bool), String> {
        let k = g.domain.chart().parse(k).unwrap();
        let a = gauduchon_tod_check(&g.domain, &k, &pts, tol).map_err(|e| e.to_string())?;
        let b = gt_connection_curvature(&g.domain, &k, &pts, tol).map_err(|e| e.to_string())?;
        Ok((a.passed(), b.passed()))
    };
    ensure(check("2")? == (true, true), "k = 2 must pass both")?;
    ensure(check("2.1")? == (false, false), "k = 2.1 must fail both")?;
    Ok("s = 6 with k = 2 passes and the connection is flat; k = 2.1 fails both".into())
}

fn c16_determinism() -> Outcome {
    let g = geometry("gibbons_hawking");
    let opts = |jobs| RunOptions { jobs: Some(jobs), ..RunOptions::default() };
    let serial = run(&g, &opts(1)).map_err(|e| e.to_string())?.to_json();
    let parallel = run(&g, &opts(4)).map_err(|e| e.to_string())?.to_json();
    let again = run(&g, &opts(4)).map_err(|e| e.to_string())?.to_json();
    ensure(serial == parallel && parallel == again, "reports differ")?;
    Ok(format!("serial and parallel JSON identical ({} bytes)", serial.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 16] = [
        ("AD soundness", c1_ad_soundness),
        ("equal-trace Weyl connection", c2_equal_trace),
        ("chain rule identity", c3_chain_rule),
        ("vertical trace and fundamental equation", c4_trace_b_and_fundamental),
        ("harmonic polynomial pullbacks", c5_fuglede),
        ("harmonic morphism / minimal fibres / connection flag", c6_theorem23),
        ("Hermitian Weyl connection", c7_hermitian_weyl),
        ("holomorphic Laplacian identity", c8_lemma34),
        ("J parallel along fibres equivalence", c9_prop311),
        ("twistorial two-of-three flag", c10_thm44a),
        ("k extraction", c11_extract_k),
        ("null Ricci identity", c12_lemma55),
        ("Ricci verdict agreement", c13_ricci_agreement),
        ("gauge invariance", c14_gauge_invariance),
        ("Gauduchon-Tod instance", c15_gauduchon_tod),
        ("determinism", c16_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("[PASS] {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} acceptance criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
