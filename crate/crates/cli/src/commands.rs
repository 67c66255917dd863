use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use flatfold_core::conn::{connectivity, three_point_separator_search};
use flatfold_core::fixtures::{fixture, FixtureDoc, FIXTURE_NAMES};
use flatfold_core::foldcheck::{build_fold_map, convexity_check, kawasaki_check, maekawa_check};
use flatfold_core::io::{parse_document, parse_orthotree, parse_tree, to_json, write_document, Document};
use flatfold_core::layers::{plan_to_layering, search_layering, validate_layering, FoldPlan, LayerError, Layering, SearchOutcome};
use flatfold_core::orthotree::realize_dual_orthotree;
use flatfold_core::outer::{
    disk_fold_plan, is_safe_crease, outer_sheet, random_outer_pattern, realize_tree_on_square, square_fold_plan,
    validate_outer, OuterPattern, Region,
};
use flatfold_core::pattern::{folding_graph, validate_pattern, CreasePattern};
use flatfold_core::render::{layer_labels, render_outer, render_pattern, wide_gap_wedges, Overlay};
use flatfold_core::sheet::FoldedSheet;
use flatfold_core::treefold::{realize_tree, verify_realization};

use crate::report::{read_input, Failure, OutDir, Report};
use crate::{fail_input, Cli, Command};

/// Folding points and chords drawn for `random` inputs.
const RANDOM_POINTS: usize = 12;
const RANDOM_CHORDS: usize = 8;

pub fn run(cli: &Cli) -> Result<(), Failure> {
    let out = OutDir(cli.output.clone());
    let report = match &cli.command {
        Command::Validate { input, global } => validate(cli, input, *global)?,
        Command::FoldTree { input } => fold_tree(input, &out)?,
        Command::FoldDisk { input } => {
            let p = load_outer(input, cli.seed, Region::Disk { center: Default::default(), radius: 1.0 })?;
            fold_disk(cli, p, &out)?
        }
        Command::FoldSquare { input } => fold_square(cli, input, &out)?,
        Command::Orthotree { input } => orthotree(cli, input, &out)?,
        Command::Render { input, wedges, layering } => return render(cli, input, *wedges, layering.as_deref()),
        Command::Fixtures { name } => return fixtures(cli, name.as_deref(), &out),
        Command::Connectivity { input } => {
            let p = match parse_document(&read_input(input)?).map_err(fail_input)? {
                Document::Pattern(p) => p,
                other => return Err(Failure::Input(format!("expected a pattern document, found {}", other.kind()))),
            };
            let mut r = Report::new("connectivity");
            connectivity_checks(&p, &mut r);
            r
        }
    };
    print!("{}", report.render(cli.format));
    out.write("report.json", &to_json(&report.to_value()))?;
    if report.pass() {
        Ok(())
    } else {
        Err(Failure::Semantic(report.diagnostics().join("\n")))
    }
}

fn vertices(vs: Vec<usize>) -> Vec<String> {
    vs.into_iter().map(|v| format!("vertex {v}")).collect()
}

fn connectivity_checks(p: &CreasePattern, r: &mut Report) {
    let fg = match folding_graph(p) {
        Ok(fg) => fg,
        Err(e) => return r.check("connectivity", vec![e.to_string()]),
    };
    match connectivity(&fg) {
        Ok(c) => {
            let mut bad = vec![];
            if let Some(k) = c.vertex_connectivity.filter(|&k| k < 2) {
                bad.push(format!("vertex connectivity {k} < 2"));
            }
            if let Some(k) = c.edge_connectivity.filter(|&k| k < 4) {
                bad.push(format!("edge connectivity {k} < 4"));
            }
            if c.infinity_articulation == Some(true) {
                bad.push("infinity is an articulation vertex".into());
            }
            r.check("connectivity", bad);
            r.set("connectivity", &c);
        }
        Err(e) => r.check("connectivity", vec![e.to_string()]),
    }
    match three_point_separator_search(p) {
        Ok(None) => r.check("separator", vec![]),
        Ok(Some(s)) => r.check("separator", vec![format!("vertices {s:?} separate the graph")]),
        Err(e) => r.check("separator", vec![e.to_string()]),
    }
}

/// Exhaustive layer-order search, skipped on sheets above the face limit.
fn global_check(cli: &Cli, sheet: &FoldedSheet, r: &mut Report) -> Option<Layering> {
    match search_layering(sheet, cli.limit_faces) {
        Ok(SearchOutcome::Found(l)) => {
            r.check("layering", vec![]);
            Some(l)
        }
        Ok(SearchOutcome::NoneFound) => {
            r.check("layering", vec!["none found".into()]);
            None
        }
        Err(e @ LayerError::TooManyFaces { .. }) => {
            r.set("layering", format!("skipped: {e}"));
            None
        }
        Err(e) => {
            r.check("layering", vec![e.to_string()]);
            None
        }
    }
}

fn validate(cli: &Cli, input: &Path, global: bool) -> Result<Report, Failure> {
    let mut r = Report::new("validate");
    match parse_document(&read_input(input)?).map_err(fail_input)? {
        Document::Pattern(p) => {
            let v = validate_pattern(&p);
            r.check("structure", v.violations.iter().map(|x| x.to_string()).collect());
            if !v.is_valid() {
                return Ok(r);
            }
            r.check("maekawa", vertices(maekawa_check(&p).failures()));
            match kawasaki_check(&p) {
                Ok(k) => r.check("kawasaki", vertices(k.failures())),
                Err(e) => r.check("kawasaki", vec![e.to_string()]),
            }
            r.check("convexity", vertices(convexity_check(&p).failures()));
            connectivity_checks(&p, &mut r);
            if global && r.pass() {
                match build_fold_map(&p, None) {
                    Ok(m) => {
                        global_check(cli, &m.to_sheet(), &mut r);
                    }
                    Err(e) => r.check("fold-map", vec![e.to_string()]),
                }
            }
        }
        Document::Outer(p) => {
            let v = validate_outer(&p);
            r.check("structure", v.violations.iter().map(|x| format!("{x:?}")).collect());
            if !v.is_valid() {
                return Ok(r);
            }
            let safe: Vec<usize> = (0..p.chords.len())
                .filter(|&c| is_safe_crease(&p, c).is_ok_and(|s| s.safe))
                .collect();
            r.set("safe_creases", safe);
            if global {
                match outer_sheet(&p) {
                    Ok(os) => {
                        global_check(cli, &os.sheet, &mut r);
                    }
                    Err(e) => r.check("sheet", vec![e.to_string()]),
                }
            }
        }
        other => {
            return Err(Failure::Input(format!(
                "expected a pattern or outer-pattern document, found {}",
                other.kind()
            )))
        }
    }
    Ok(r)
}

fn write_results(out: &OutDir, pattern: Document, plan: Option<&FoldPlan>, layering: Option<&Layering>) -> Result<(), Failure> {
    out.write("pattern.json", &write_document(&pattern))?;
    if let Some(plan) = plan {
        out.write("plan.json", &write_document(&Document::Plan(plan.clone())))?;
    }
    if let Some(l) = layering {
        out.write("layering.json", &write_document(&Document::Layering(l.clone())))?;
    }
    Ok(())
}

fn fold_tree(input: &Path, out: &OutDir) -> Result<Report, Failure> {
    let t = parse_tree(&read_input(input)?).map_err(fail_input)?;
    let real = realize_tree(&t).map_err(|e| Failure::Semantic(e.to_string()))?;
    let v = verify_realization(&t, &real).map_err(|e| Failure::Semantic(e.to_string()))?;
    let mut r = Report::new("fold-tree");
    for (name, ok) in [
        ("maekawa", v.maekawa),
        ("kawasaki", v.kawasaki_exact),
        ("convexity", v.convex),
        ("wedges", v.wedges),
        ("protected-wedges", v.protected_wedges),
        ("layering", v.layering),
        ("isomorphic", v.isomorphic),
    ] {
        r.check(name, if ok { vec![] } else { vec!["failed".into()] });
    }
    r.set("vertices", real.pattern.vertices.len());
    r.set("segments", real.pattern.segments.len());
    r.set("rays", real.pattern.rays.len());
    if !v.notes.is_empty() {
        r.set("notes", &v.notes);
    }
    let layering = real.layering().ok();
    write_results(out, Document::Pattern(real.pattern.clone()), Some(&real.plan), layering.as_ref())?;
    Ok(r)
}

fn load_outer(input: &str, seed: u64, region: Region) -> Result<OuterPattern, Failure> {
    if input == "random" {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        return Ok(random_outer_pattern(region, RANDOM_POINTS, RANDOM_CHORDS, &mut rng));
    }
    match parse_document(&read_input(Path::new(input))?).map_err(fail_input)? {
        Document::Outer(p) => Ok(p),
        other => Err(Failure::Input(format!("expected an outer-pattern document, found {}", other.kind()))),
    }
}

/// Turn a plan into a layering, validate it, and cross-check with search.
fn check_plan(cli: &Cli, p: &OuterPattern, plan: &FoldPlan, r: &mut Report) -> Result<Option<Layering>, Failure> {
    let os = outer_sheet(p).map_err(|e| Failure::Semantic(e.to_string()))?;
    r.set("faces", os.sheet.faces.len());
    let layering = match plan_to_layering(plan, &os.sheet) {
        Ok(l) => l,
        Err(e) => {
            r.check("plan", vec![e.to_string()]);
            return Ok(None);
        }
    };
    match validate_layering(&os.sheet, &layering) {
        Ok(v) => r.check("plan", v.violations.iter().map(|x| format!("{x:?}")).collect()),
        Err(e) => r.check("plan", vec![e.to_string()]),
    }
    global_check(cli, &os.sheet, r);
    Ok(Some(layering))
}

fn fold_disk(cli: &Cli, p: OuterPattern, out: &OutDir) -> Result<Report, Failure> {
    let plan = disk_fold_plan(&p).map_err(|e| Failure::Semantic(e.to_string()))?;
    let mut r = Report::new("fold-disk");
    r.set("chords", p.chords.len());
    r.set("steps", plan.steps.len());
    let layering = check_plan(cli, &p, &plan, &mut r)?;
    write_results(out, Document::Outer(p), Some(&plan), layering.as_ref())?;
    Ok(r)
}

fn fold_square(cli: &Cli, input: &str, out: &OutDir) -> Result<Report, Failure> {
    let p = if input == "random" {
        load_outer(input, cli.seed, Region::unit_square())?
    } else {
        match parse_document(&read_input(Path::new(input))?).map_err(fail_input)? {
            Document::Outer(p) => p,
            Document::Tree(t) => realize_tree_on_square(&t.graph()).map_err(|e| Failure::Semantic(e.to_string()))?,
            other => {
                return Err(Failure::Input(format!(
                    "expected an outer-pattern or tree document, found {}",
                    other.kind()
                )))
            }
        }
    };
    let sp = square_fold_plan(&p).map_err(|e| Failure::Semantic(e.to_string()))?;
    let mut r = Report::new("fold-square");
    r.set("chords", p.chords.len());
    r.set("case", sp.case);
    r.set("labels", &sp.labels);
    r.set("frame", &sp.frame);
    r.set("steps", sp.plan.steps.len());
    let layering = check_plan(cli, &p, &sp.plan, &mut r)?;
    write_results(out, Document::Outer(p), Some(&sp.plan), layering.as_ref())?;
    Ok(r)
}

fn orthotree(cli: &Cli, input: &Path, out: &OutDir) -> Result<Report, Failure> {
    let spec = parse_orthotree(&read_input(input)?).map_err(fail_input)?;
    let o = realize_dual_orthotree(&spec).map_err(|e| Failure::Semantic(e.to_string()))?;
    let mut r = Report::new("orthotree");
    r.set("steps", spec.steps.len());
    r.set("vertices", o.pattern.vertices.len());
    r.set("segments", o.pattern.segments.len());
    r.set("rays", o.pattern.rays.len());
    r.set("deltas", &o.deltas);
    r.check("maekawa", vertices(maekawa_check(&o.pattern).failures()));
    connectivity_checks(&o.pattern, &mut r);
    let layering = match build_fold_map(&o.pattern, None) {
        Ok(m) => global_check(cli, &m.to_sheet(), &mut r),
        Err(e) => {
            r.check("fold-map", vec![e.to_string()]);
            None
        }
    };
    write_results(out, Document::Pattern(o.pattern), None, layering.as_ref())?;
    Ok(r)
}

fn render(cli: &Cli, input: &Path, wedges: bool, layering: Option<&Path>) -> Result<(), Failure> {
    let doc = parse_document(&read_input(input)?).map_err(fail_input)?;
    let sheet = |doc: &Document| -> Result<FoldedSheet, Failure> {
        match doc {
            Document::Pattern(p) => Ok(build_fold_map(p, None).map_err(|e| Failure::Semantic(e.to_string()))?.to_sheet()),
            Document::Outer(p) => Ok(outer_sheet(p).map_err(|e| Failure::Semantic(e.to_string()))?.sheet),
            _ => unreachable!("checked below"),
        }
    };
    if !matches!(doc, Document::Pattern(_) | Document::Outer(_)) {
        return Err(Failure::Input(format!(
            "expected a pattern or outer-pattern document, found {}",
            doc.kind()
        )));
    }
    let mut overlay = Overlay::default();
    if let Some(path) = layering {
        let s = sheet(&doc)?;
        let l = match parse_document(&read_input(path)?).map_err(fail_input)? {
            Document::Layering(l) => l,
            Document::Plan(plan) => plan_to_layering(&plan, &s).map_err(|e| Failure::Semantic(e.to_string()))?,
            other => return Err(Failure::Input(format!("expected a layering or plan document, found {}", other.kind()))),
        };
        overlay.labels = layer_labels(&s, &l);
    }
    let svg = match &doc {
        Document::Pattern(p) => {
            if wedges {
                overlay.wedges = wide_gap_wedges(p);
            }
            render_pattern(p, &overlay)
        }
        Document::Outer(p) => render_outer(p, &overlay),
        _ => unreachable!("checked above"),
    };
    match &cli.output {
        Some(path) => std::fs::write(path, svg).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{svg}");
            Ok(())
        }
    }
}

fn fixtures(cli: &Cli, name: Option<&str>, out: &OutDir) -> Result<(), Failure> {
    let Some(name) = name else {
        match cli.format {
            crate::report::Format::Json => print!("{}", to_json(&json!(FIXTURE_NAMES))),
            crate::report::Format::Text => FIXTURE_NAMES.iter().for_each(|n| println!("{n}")),
        }
        return Ok(());
    };
    let fx = fixture(name).map_err(fail_input)?;
    let doc = match fx.doc {
        FixtureDoc::Pattern(p) => Document::Pattern(p),
        FixtureDoc::Outer(p) => Document::Outer(p),
    };
    let text = write_document(&doc);
    if out.0.is_none() {
        print!("{text}");
        return Ok(());
    }
    out.write(&format!("{name}.json"), &text)?;
    out.write(&format!("{name}.manifest.json"), &to_json(&fx.manifest))?;
    println!("{name}.json");
    println!("{name}.manifest.json");
    Ok(())
}
