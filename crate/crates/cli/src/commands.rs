//! One function per subcommand. Each returns the full stdout text for the
//! requested format; nothing here depends on the clock or on hash order,
//! so equal arguments give byte-identical output.

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Map, Value};

use pocset::chain::{all_signatures, class_codim, class_leq, ChainFamily, ChainUltrafilter, Signature};
use pocset::cubing::{build_cubing, duality_roundtrip, extract_halfspaces, CubeComplex};
use pocset::euclid::{
    classify_direction, closure_check, is_single_cycle, line_end_incomparability, restrict_to_line, rho_image,
    safe_components, DirectionPoint, Line, WallGeometry,
};
use pocset::exact::Exact;
use pocset::io::{Input, PocSetFile};
use pocset::poc::{random_pocset, FinitePocSet};
use pocset::shadows::{escaping_ray, shadow_report, surjectivity_report, ConsistencyOracle};
use pocset::svg;

use crate::input::{self, domain, Fail, SCHEMA};
use crate::{Command, Common, Format};

type Render<'a> = Box<dyn FnOnce() -> Result<String, Fail> + 'a>;

/// The renderings a command offers; `json` is wrapped with the schema.
struct Out<'a> {
    text: String,
    json: Value,
    dot: Option<Render<'a>>,
    svg: Option<Render<'a>>,
}

impl<'a> Out<'a> {
    fn new(text: String, json: Value) -> Self {
        Out { text, json, dot: None, svg: None }
    }

    fn dot(mut self, f: impl FnOnce() -> Result<String, Fail> + 'a) -> Self {
        self.dot = Some(Box::new(f));
        self
    }

    fn svg(mut self, f: impl FnOnce() -> Result<String, Fail> + 'a) -> Self {
        self.svg = Some(Box::new(f));
        self
    }

    fn render(self, command: &str, format: Format) -> Result<String, Fail> {
        let unsupported = || Fail::Usage(format!("`{command}` does not support --format {format:?}").to_lowercase());
        match format {
            Format::Text => Ok(self.text),
            Format::Json => Ok(pretty(&wrap(command, self.json))),
            Format::Dot => self.dot.ok_or_else(unsupported)?(),
            Format::Svg => self.svg.ok_or_else(unsupported)?(),
        }
    }
}

fn wrap(command: &str, result: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(command));
    match result {
        Value::Object(o) => m.extend(o),
        other => {
            m.insert("result".into(), other);
        }
    }
    Value::Object(m)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialise");
    s.push('\n');
    s
}

fn to_value<T: Serialize + ?Sized>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialise")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

pub fn run(command: &Command, common: &Common) -> Result<String, Fail> {
    if let Some(w) = common.window {
        if w < 1 {
            return Err(Fail::Usage(format!("--window must be positive, got {w}")));
        }
    }
    let (name, out) = match command {
        Command::Validate { input } => ("validate", validate(input)?),
        Command::Ultrafilters { input } => ("ultrafilters", ultrafilters(input)?),
        Command::Cubing { input } => {
            let p = input::load_pocset(input)?;
            return cubing_output(build_cubing(&p), common.format);
        }
        Command::Dual { input, random, max_pairs } => ("dual", dual(input.as_deref(), *random, *max_pairs, common.seed)?),
        Command::Boundary { input } => ("boundary", boundary(input)?),
        Command::Rho { input, direction } => ("rho", rho(input, direction)?),
        Command::Image { input } => ("image", image(input)?),
        Command::Safe { input } => ("safe", safe(input)?),
        Command::Closure { input } => ("closure", closure(input)?),
        Command::Restrict { input, direction, base } => {
            ("restrict", restrict(input, direction, base.as_deref(), common.window.unwrap_or(10))?)
        }
        Command::Shadows { input, cuts, ultrafilter } => {
            ("shadows", shadows(input, cuts.as_deref(), ultrafilter.as_deref(), common.window)?)
        }
        Command::Escape { input, signature, length } => ("escape", escape(input, signature, *length, common.window)?),
        Command::Report { input } => ("report", report(input, common.window.unwrap_or(10))?),
    };
    out.render(name, common.format)
}

fn pocset_summary(p: &FinitePocSet) -> Result<(String, Value), Fail> {
    let dim = p.dimension().map_err(domain)?;
    let file = PocSetFile::from_pocset(p);
    let text = format!(
        "valid poc-set: {} proper pairs, dimension {dim}\ncovering relations: {}\n",
        p.pairs(),
        if file.order.is_empty() {
            "none".to_string()
        } else {
            join(file.order.iter().map(|[a, b]| format!("{a} <= {b}")), ", ")
        }
    );
    let json = json!({ "kind": "pocset", "pairs": file.pairs, "order": file.order, "dimension": dim });
    Ok((text, json))
}

fn validate(arg: &str) -> Result<Out<'static>, Fail> {
    let (text, json) = match input::load(arg)? {
        Input::PocSet(p) => pocset_summary(&p)?,
        Input::Chains(f) => {
            let mut text = format!("valid chain family: {} chains ({})\n", f.chains(), f.names.join(", "));
            let mut json = json!({ "kind": "chains", "chains": f.names });
            if let Some(g) = &f.geometry {
                let route = ConsistencyOracle::new(g).route();
                let _ = writeln!(
                    text,
                    "geometry: dimension {}, uniform: {}, consistency route: {route:?}",
                    g.dim(),
                    yes(g.is_uniform())
                );
                json["geometry"] = to_value(g.families());
                json["dimension"] = json!(g.dim());
                json["uniform"] = json!(g.is_uniform());
                json["route"] = to_value(&route);
            } else {
                text.push_str("geometry: none\n");
            }
            (text, json)
        }
        Input::Cubing(c) => {
            let text = format!(
                "valid cube complex: {} vertices, {} edges, cubes by dimension {:?}, dimension {}\n",
                c.vertices.len(),
                c.edges.len(),
                c.cube_counts(),
                c.dimension()
            );
            let json = json!({
                "kind": "cubing",
                "vertices": c.vertices.len(),
                "edges": c.edges.len(),
                "cube_counts": c.cube_counts(),
                "dimension": c.dimension(),
            });
            (text, json)
        }
    };
    Ok(Out::new(text, json))
}

fn ultrafilters(arg: &str) -> Result<Out<'static>, Fail> {
    let p = input::load_pocset(arg)?;
    let ufs = p.enumerate_ultrafilters();
    let mut text = format!("{} ultrafilters\n", ufs.len());
    for u in &ufs {
        let _ = writeln!(text, "{u}");
    }
    let list: Vec<Vec<String>> = ufs.iter().map(|u| u.proper_members().map(|e| e.to_string()).collect()).collect();
    Ok(Out::new(text, json!({ "count": ufs.len(), "ultrafilters": list })))
}

/// The cubing's structured form is its own re-loadable file format, which
/// carries the versioned schema `pocset.cubing/1`.
fn cubing_output(c: CubeComplex, format: Format) -> Result<String, Fail> {
    match format {
        Format::Json => Ok(pretty(&to_value(&c.to_file()))),
        Format::Dot => Ok(c.to_dot()),
        Format::Svg => Ok(svg::cubing_svg(&c)),
        Format::Text => {
            let mut text = format!(
                "cube complex: {} vertices, {} edges, cubes by dimension {:?}, dimension {}\n",
                c.vertices.len(),
                c.edges.len(),
                c.cube_counts(),
                c.dimension()
            );
            for (i, v) in c.vertices.iter().enumerate() {
                let _ = writeln!(text, "v{i} {v}");
            }
            for e in &c.edges {
                let _ = writeln!(text, "v{} -- v{} [h{}]", e.a, e.b, e.wall() + 1);
            }
            Ok(text)
        }
    }
}

fn bijection_text(pairs: &[(String, String)]) -> String {
    join(pairs.iter().map(|(h, s)| format!("{h}↔{s}")), ", ")
}

fn dual(arg: Option<&str>, random: Option<usize>, max_pairs: usize, seed: u64) -> Result<Out<'static>, Fail> {
    match (arg, random) {
        (Some(_), Some(_)) => Err(Fail::Usage("give either an input file or --random, not both".into())),
        (None, None) => Err(Fail::Usage("`dual` needs an input file or --random N".into())),
        (None, Some(n)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut text = String::new();
            let mut runs = Vec::new();
            for i in 0..n {
                let p = random_pocset(&mut rng, max_pairs);
                let r = duality_roundtrip(&p).map_err(domain)?;
                let _ = writeln!(
                    text,
                    "#{i}: {} pairs, {} vertices, {} edges: isomorphic; {}",
                    p.pairs(),
                    r.vertices,
                    r.edges,
                    bijection_text(&r.bijection)
                );
                let mut run = to_value(&r);
                run["pocset"] = to_value(&PocSetFile::from_pocset(&p));
                runs.push(run);
            }
            let _ = writeln!(text, "{n}/{n} round trips isomorphic (seed {seed})");
            Ok(Out::new(text, json!({ "seed": seed, "count": n, "isomorphic": n, "runs": runs })))
        }
        (Some(arg), None) => match input::load_pocset_or_cubing(arg)? {
            Ok(p) => {
                let r = duality_roundtrip(&p).map_err(domain)?;
                let mut text = format!(
                    "isomorphic: yes ({} vertices, {} edges)\nbijection: {}\n",
                    r.vertices,
                    r.edges,
                    bijection_text(&r.bijection)
                );
                let _ = writeln!(
                    text,
                    "vertex map: {}",
                    join(r.vertex_map.iter().enumerate().map(|(v, u)| format!("v{v}↦π{u}")), ", ")
                );
                Ok(Out::new(text, to_value(&r)))
            }
            Err(c) => {
                let (q, walls) = extract_halfspaces(&c).map_err(domain)?;
                let (mut text, mut json) = pocset_summary(&q)?;
                for w in &walls {
                    let _ = writeln!(text, "wall h{}: plain side {:?}, star side {:?}", w.wall + 1, w.plain, w.star);
                }
                json["walls"] = to_value(&walls);
                Ok(Out::new(text, json))
            }
        },
    }
}

/// Largest chain count for which the `3^k` boundary classes are listed.
const MAX_BOUNDARY_CHAINS: usize = 6;

fn boundary(arg: &str) -> Result<Out<'static>, Fail> {
    let f = input::load_chains(arg)?;
    let k = f.chains();
    if k > MAX_BOUNDARY_CHAINS {
        return Err(Fail::domain_code(
            "TooManyChains",
            format!("{k} chains give 3^{k} classes; at most {MAX_BOUNDARY_CHAINS} chains are listed"),
        ));
    }
    let sigs = all_signatures(k);
    let leq = |a: &Signature, b: &Signature| class_leq(a, b).expect("equal chain counts");
    let mut covers = Vec::new();
    for (i, a) in sigs.iter().enumerate() {
        for (j, b) in sigs.iter().enumerate() {
            if i != j && leq(a, b) && !sigs.iter().any(|c| c != a && c != b && leq(a, c) && leq(c, b)) {
                covers.push((i, j));
            }
        }
    }
    let mut text = format!(
        "Roller boundary of {k} chains ({}): {} classes, minimum Π = {}\n",
        f.names.join(", "),
        sigs.len(),
        Signature::principal(k)
    );
    for c in 0..=k {
        let row: Vec<&Signature> = sigs.iter().filter(|s| class_codim(s).0 == c).collect();
        let _ = writeln!(text, "codim {c} ({}): {}", row.len(), join(row, " "));
    }
    let _ = writeln!(text, "covering relations: {}", covers.len());
    for &(a, b) in &covers {
        let _ = writeln!(text, "  {} < {}", sigs[a], sigs[b]);
    }
    let classes: Vec<Value> = sigs
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let above: Vec<&Signature> = covers.iter().filter(|c| c.0 == i).map(|c| &sigs[c.1]).collect();
            json!({ "signature": s, "codim": class_codim(s).0, "covered_by": above })
        })
        .collect();
    let json = json!({ "chains": f.names, "count": sigs.len(), "classes": classes });
    let (dot_sigs, dot_covers) = (sigs.clone(), covers.clone());
    Ok(Out::new(text, json)
        .dot(move || {
            let mut s = String::from("digraph boundary {\n  rankdir=BT;\n  node [shape=plaintext, fontname=\"monospace\"];\n");
            for (i, sig) in dot_sigs.iter().enumerate() {
                let _ = writeln!(s, "  c{i} [label=\"{sig}\"];");
            }
            for (a, b) in &dot_covers {
                let _ = writeln!(s, "  c{a} -> c{b};");
            }
            s.push_str("}\n");
            Ok(s)
        })
        .svg(move || Ok(svg::boundary_svg(&sigs, &covers))))
}

fn parse_direction(s: &str) -> Result<DirectionPoint, Fail> {
    s.parse::<DirectionPoint>().map_err(domain)
}

fn rho(arg: &str, direction: &str) -> Result<Out<'static>, Fail> {
    let (_, g) = input::load_geometry(arg)?;
    let xi = parse_direction(direction)?;
    let r = classify_direction(&g, &xi).map_err(domain)?;
    let text = format!("{}\n", r.signature);
    Ok(Out::new(text, json!({ "direction": xi, "signature": r.signature, "chains": r.chains })))
}

fn image(arg: &str) -> Result<Out<'static>, Fail> {
    let (_, g) = input::load_geometry(arg)?;
    let classes = rho_image(&g).map_err(domain)?;
    let mut text = format!("{} classes in the image of ρ\n", classes.len());
    for c in &classes {
        let _ = writeln!(text, "{}  codim {}  {}", c.signature, c.codim, join(&c.fibers, "; "));
    }
    Ok(Out::new(text, json!({ "count": classes.len(), "classes": classes }))
        .svg(move || svg::rho_image_svg(&g).map_err(domain)))
}

fn safe(arg: &str) -> Result<Out<'static>, Fail> {
    let (_, g) = input::load_geometry(arg)?;
    let sigs: Vec<Signature> = rho_image(&g).map_err(domain)?.into_iter().map(|c| c.signature).collect();
    let comps = safe_components(&sigs);
    let cycle = is_single_cycle(&sigs);
    let mut text = format!("{} safe component(s) among {} image classes\n", comps.len(), sigs.len());
    for (i, c) in comps.iter().enumerate() {
        let _ = writeln!(text, "component {}: {}", i + 1, join(c, " "));
    }
    let _ = writeln!(text, "comparability graph is a single cycle: {}", yes(cycle));
    Ok(Out::new(text, json!({ "components": comps, "single_cycle": cycle })))
}

fn closure(arg: &str) -> Result<Out<'static>, Fail> {
    let (_, g) = input::load_geometry(arg)?;
    let r = closure_check(&g).map_err(domain)?;
    let mut text = String::new();
    for e in &r.entries {
        let _ = write!(
            text,
            "{} codim {}: closure {{{}}} vs lower {{{}}}: {}",
            e.signature,
            e.codim,
            join(&e.closure_classes, ", "),
            join(&e.lower_classes, ", "),
            if e.ff_holds { "holds" } else { "FAILS" }
        );
        if let Some(closed) = e.ff0_closed {
            let _ = write!(text, "; fiber closed: {}", yes(closed));
        }
        text.push('\n');
    }
    let _ = writeln!(text, "closure formula: {}", if r.holds() { "holds" } else { "fails" });
    let mut json = to_value(&r);
    json["holds"] = json!(r.holds());
    Ok(Out::new(text, json))
}

fn parse_point(s: &str) -> Result<Vec<Exact>, Fail> {
    let body = s.trim();
    let body = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(body);
    body.split(',')
        .map(|t| t.trim().parse::<Exact>().map_err(domain))
        .collect()
}

fn restrict(arg: &str, direction: &str, base: Option<&str>, window: i64) -> Result<Out<'static>, Fail> {
    let (family, g) = input::load_geometry(arg)?;
    let dir = parse_direction(direction)?;
    let base = match base {
        Some(b) => parse_point(b)?,
        None => vec![Exact::zero(); g.dim()],
    };
    let line = Line::new(base, dir.clone()).map_err(domain)?;
    let r = restrict_to_line(&g, &line, window).map_err(domain)?;
    let ends = line_end_incomparability(&g, &dir).map_err(domain)?;
    let name = |i: usize| family.names[i].clone();
    let mut text = format!(
        "line {} + t·{} (window {window})\n",
        DirectionLike(&line.base),
        line.dir
    );
    for f in &r.families {
        match f {
            pocset::euclid::RestrictedFamily::Perpendicular { chain, state } => {
                let _ = writeln!(text, "{}: parallel to the line, fixed state {state}", name(*chain));
            }
            pocset::euclid::RestrictedFamily::Crossing { chain, first, step, end } => {
                let _ = writeln!(
                    text,
                    "{}: crosses at t = {first} + {step}·n, h(n) ∩ L towards {}∞",
                    name(*chain),
                    end_symbol(*end)
                );
            }
        }
    }
    let _ = writeln!(text, "coinciding restricted walls in window: {}", r.collapses.len());
    for c in &r.collapses {
        let _ = writeln!(
            text,
            "  {} {} {} at t = {}",
            c.a,
            if c.complementary { "= complement of" } else { "=" },
            c.b,
            c.position
        );
    }
    for (label, e) in [("+∞", &r.plus_end), ("-∞", &r.minus_end)] {
        let _ = writeln!(
            text,
            "{label} end: ρ = {}, pulled back = {}, commutes: {}",
            e.rho,
            e.pulled_back,
            yes(e.commutes)
        );
    }
    let _ = writeln!(text, "ends incomparable: {}", yes(ends.incomparable));
    let json = json!({ "restriction": r, "ends": ends, "commutes": r.commutes() });
    Ok(Out::new(text, json))
}

fn end_symbol(e: pocset::chain::End) -> &'static str {
    match e {
        pocset::chain::End::Plus => "+",
        pocset::chain::End::Minus => "-",
        pocset::chain::End::Fin => "0",
    }
}

/// Displays a point like a direction, including the origin.
struct DirectionLike<'a>(&'a [Exact]);

impl std::fmt::Display for DirectionLike<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", join(self.0, ","))
    }
}

fn principal_from_args(family: &ChainFamily, cuts: Option<&str>, literal: Option<&str>) -> Result<ChainUltrafilter, Fail> {
    let pi = match (cuts, literal) {
        (Some(c), None) => {
            let cuts = c
                .trim_matches(|ch| ch == '(' || ch == ')')
                .split(',')
                .map(|t| t.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Fail::Usage(format!("bad --cuts {c:?}: {e}")))?;
            ChainUltrafilter::principal(&cuts)
        }
        (None, Some(l)) => ChainUltrafilter::parse_literal(l, &family.names).map_err(domain)?,
        _ => return Err(Fail::Usage("`shadows` needs --cuts or --ultrafilter".into())),
    };
    if pi.chains() != family.chains() {
        return Err(Fail::domain_code(
            "ChainCountMismatch",
            format!("{} cuts for {} chains", pi.chains(), family.chains()),
        ));
    }
    Ok(pi)
}

fn shadows(arg: &str, cuts: Option<&str>, literal: Option<&str>, window: Option<i64>) -> Result<Out<'static>, Fail> {
    let (family, g) = input::load_geometry(arg)?;
    let pi = principal_from_args(&family, cuts, literal)?;
    let largest = pi.cuts().map_err(domain)?.iter().map(|c| c.abs()).max().unwrap_or(0);
    let window = window.unwrap_or((2 * largest + 2).max(12));
    let r = shadow_report(&g, &pi, window).map_err(domain)?;
    let hs = |v: &[pocset::chain::ChainHalfspace]| if v.is_empty() { "none".to_string() } else { join(v, " ") };
    let mut text = format!("π = {} [{}]\n", pi, pi.to_literal(&family.names));
    let _ = writeln!(text, "window: {window}");
    let _ = writeln!(text, "consistent: {}", yes(r.consistent));
    let _ = writeln!(text, "Δ(π, Π₀) = {}", r.dist);
    let _ = writeln!(text, "min+ (flips away from Π₀): {}", hs(&r.min_plus));
    let _ = writeln!(text, "min- (flips towards Π₀): {}", hs(&r.min_minus));
    let _ = writeln!(text, "min0: {}", hs(&r.min_neutral));
    let _ = writeln!(text, "shadow: {} nearest consistent tuples", r.shadow.len());
    for s in &r.shadow {
        let _ = writeln!(text, "  ({})", join(s, ","));
    }
    let _ = writeln!(text, "dual shadow:");
    for d in &r.dual_shadow {
        let _ = writeln!(text, "  {}: {d}", family.names[d.chain]);
    }
    let _ = writeln!(
        text,
        "min+ ⊆ dual shadow: {}; dual shadow ⊆ π: {}",
        yes(r.min_plus_in_dual()),
        yes(r.dual_within_pi())
    );
    let json = to_value(&r);
    Ok(Out::new(text, json).svg(move || svg::shadow_svg(&g, &r).map_err(domain)))
}

fn escape(arg: &str, signature: &str, length: usize, window: Option<i64>) -> Result<Out<'static>, Fail> {
    let (family, g) = input::load_geometry(arg)?;
    let sig: Signature = signature.parse().map_err(domain)?;
    if sig.chains() != family.chains() {
        return Err(Fail::domain_code(
            "ChainCountMismatch",
            format!("signature has {} chains, family has {}", sig.chains(), family.chains()),
        ));
    }
    let window = window.unwrap_or(length as i64 + 5);
    let r = escaping_ray(&g, &sig, length, window).map_err(domain)?;
    let mut text = format!("target class {} (window {window}, length {length})\n", r.signature);
    match r.exit_step {
        Some(s) => {
            let _ = writeln!(text, "flow leaves Π₀ at step {s}");
        }
        None => text.push_str("flow never leaves Π₀ in the window\n"),
    }
    for (t, v) in r.ray.iter().enumerate() {
        let moved = if t == 0 { String::new() } else { format!("  flip {}", r.moves[t - 1]) };
        let shrink = if t == 0 { "" } else if r.dual_shrinks[t - 1] { "  dual shadow shrinks" } else { "  dual shadow does not shrink" };
        let _ = writeln!(text, "{t:>3}: ({})  Δ = {}{moved}{shrink}", join(v, ","), r.distances[t]);
    }
    match (r.success, r.failed_at) {
        (true, _) => text.push_str("escaping ray: yes\n"),
        (false, Some(i)) => {
            let _ = writeln!(text, "escaping ray: no (fails at step {i})");
        }
        (false, None) => text.push_str("escaping ray: no\n"),
    }
    Ok(Out::new(text, to_value(&r)))
}

fn report(arg: &str, window: i64) -> Result<Out<'static>, Fail> {
    let (_, g) = input::load_geometry(arg)?;
    let r = surjectivity_report(&g, window).map_err(domain)?;
    let text = report_text(&g, &r);
    Ok(Out::new(text, to_value(&r)))
}

fn report_text(g: &WallGeometry, r: &pocset::shadows::SurjectivityReport) -> String {
    let mut text = format!("surjectivity report (window {})\n", r.window);
    let _ = writeln!(
        text,
        "chains: {}, dimension {}, uniform: {}, consistency route: {:?}",
        g.chains(),
        g.dim(),
        yes(r.uniform),
        r.route
    );
    let _ = writeln!(
        text,
        "non-principal classes: {}, in image of ρ: {}",
        r.non_principal, r.non_principal_in_image
    );
    for c in &r.classes {
        let escape = match &c.escape {
            None => String::new(),
            Some(e) if e.success => "  escapes".to_string(),
            Some(e) => format!("  no escape (fails at step {})", e.failed_at.map_or("-".into(), |s| s.to_string())),
        };
        let _ = writeln!(
            text,
            "  {}  codim {}  {}{escape}",
            c.signature,
            c.codim,
            if c.signature.is_principal() {
                "principal"
            } else if c.in_image {
                "in image"
            } else {
                "not in image"
            }
        );
    }
    for s in &r.sweep {
        let _ = writeln!(
            text,
            "W = {:>3}: max Δ(−,Π₀) = {} at ({})",
            s.window,
            s.max_delta,
            join(&s.argmax, ",")
        );
    }
    let _ = writeln!(text, "max Δ: {}; grows with W: {}", r.max_delta, yes(r.delta_grows));
    let _ = writeln!(
        text,
        "escaping ray: {} (length {}, window {})",
        yes(r.escaping_ray),
        r.escape_length,
        r.escape_window
    );
    let _ = writeln!(text, "dichotomy consistent: {}", yes(r.dichotomy_consistent));
    text
}
