//! Static SVG figures. Geometry is decided exactly elsewhere; this module
//! only converts to floating point for drawing.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::chain::{class_codim, Signature};
use crate::cubing::CubeComplex;
use crate::euclid::{rho, CircleDecomposition, EuclidError, Fiber, WallGeometry};
use crate::shadows::ShadowReport;

const SIZE: f64 = 480.0;

fn header(s: &mut String, title: &str) {
    let _ = write!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {SIZE} {SIZE}\" width=\"{SIZE}\" height=\"{SIZE}\" font-family=\"monospace\" font-size=\"11\">\n<title>{}</title>\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
        escape(title)
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn codim_colour(codim: usize) -> &'static str {
    match codim {
        0 => "#888888",
        1 => "#1f77b4",
        2 => "#d62728",
        3 => "#2ca02c",
        _ => "#9467bd",
    }
}

fn angle(v: &[f64]) -> f64 {
    v[1].atan2(v[0])
}

/// The circle of directions decomposed by `ρ`: arcs and critical points
/// coloured by codimension and labelled with their classes.
pub fn rho_image_svg(g: &WallGeometry) -> Result<String, EuclidError> {
    let circle = CircleDecomposition::new(g)?;
    let (cx, cy, r) = (SIZE / 2.0, SIZE / 2.0, SIZE * 0.32);
    let pt = |a: f64, rad: f64| (cx + rad * a.cos(), cy - rad * a.sin());
    let mut s = String::new();
    header(&mut s, "image of the boundary decomposition map");
    for cell in &circle.cells {
        let sig = rho(g, cell.sample())?;
        let colour = codim_colour(class_codim(&sig).0);
        let label_angle = angle(&cell.sample().to_f64());
        match cell {
            Fiber::Circle { .. } => {
                let _ = writeln!(s, "<circle cx=\"{cx}\" cy=\"{cy}\" r=\"{r}\" fill=\"none\" stroke=\"{colour}\" stroke-width=\"6\"/>");
            }
            Fiber::Arc { from, to, .. } => {
                let (a0, mut a1) = (angle(&from.to_f64()), angle(&to.to_f64()));
                while a1 <= a0 {
                    a1 += 2.0 * PI;
                }
                let (x0, y0) = pt(a0, r);
                let (x1, y1) = pt(a1, r);
                let large = if a1 - a0 > PI { 1 } else { 0 };
                let _ = writeln!(
                    s,
                    "<path d=\"M {x0:.2} {y0:.2} A {r} {r} 0 {large} 0 {x1:.2} {y1:.2}\" fill=\"none\" stroke=\"{colour}\" stroke-width=\"6\"><title>{sig}</title></path>"
                );
            }
            Fiber::Point { .. } => {
                let (x, y) = pt(label_angle, r);
                let _ = writeln!(s, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"6\" fill=\"{colour}\" stroke=\"black\"><title>{sig}</title></circle>");
            }
        }
        let (lx, ly) = pt(label_angle, r + if matches!(cell, Fiber::Point { .. }) { 22.0 } else { 44.0 });
        let _ = writeln!(s, "<text x=\"{lx:.2}\" y=\"{ly:.2}\" text-anchor=\"middle\" fill=\"{colour}\">{sig}</text>");
    }
    let _ = writeln!(s, "<text x=\"8\" y=\"16\">codim: <tspan fill=\"{}\">1</tspan> <tspan fill=\"{}\">2</tspan> <tspan fill=\"{}\">3</tspan></text>", codim_colour(1), codim_colour(2), codim_colour(3));
    s.push_str("</svg>\n");
    Ok(s)
}

/// Sutherland–Hodgman clip of a polygon by `n·p <= b`.
fn clip(poly: &[(f64, f64)], n: (f64, f64), b: f64) -> Vec<(f64, f64)> {
    let inside = |p: &(f64, f64)| n.0 * p.0 + n.1 * p.1 <= b + 1e-9;
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
        let (ip, iq) = (inside(&p), inside(&q));
        if ip {
            out.push(p);
        }
        if ip != iq {
            let fp = n.0 * p.0 + n.1 * p.1 - b;
            let fq = n.0 * q.0 + n.1 * q.1 - b;
            let t = fp / (fp - fq);
            out.push((p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1)));
        }
    }
    out
}

/// The chamber of a cut tuple as a polygon, clipped to `[-ext, ext]^2`.
fn chamber(g: &WallGeometry, cuts: &[i64], ext: f64) -> Vec<(f64, f64)> {
    let mut poly = vec![(-ext, -ext), (ext, -ext), (ext, ext), (-ext, ext)];
    for (f, &c) in g.families().iter().zip(cuts) {
        let n = (f.normal[0].to_f64(), f.normal[1].to_f64());
        poly = clip(&poly, n, f.wall_level(c).to_f64());
        poly = clip(&poly, (-n.0, -n.1), -f.wall_level(c - 1).to_f64());
    }
    poly
}

/// The wall arrangement with the chambers of the shadow of `π` shaded, as
/// in the paper's shadow figures.
pub fn shadow_svg(g: &WallGeometry, report: &ShadowReport) -> Result<String, EuclidError> {
    if g.dim() != 2 {
        return Err(EuclidError::NotPlanar(g.dim()));
    }
    let polys: Vec<Vec<(f64, f64)>> = report.shadow.iter().map(|c| chamber(g, c, 1e6)).collect();
    let extent = polys
        .iter()
        .flatten()
        .fold(2.0f64, |m, (x, y)| m.max(x.abs()).max(y.abs()))
        + 1.5;
    let scale = SIZE / (2.0 * extent);
    let to_screen = |(x, y): (f64, f64)| (SIZE / 2.0 + x * scale, SIZE / 2.0 - y * scale);
    let mut s = String::new();
    header(
        &mut s,
        &format!("shadow of {:?}: distance {}, {} chambers", report.pi, report.dist, report.shadow.len()),
    );
    for (poly, cuts) in polys.iter().zip(&report.shadow) {
        let pts: Vec<String> = poly
            .iter()
            .map(|p| {
                let (x, y) = to_screen(*p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let fill = if report.consistent { "#ff7f0e" } else { "#9ecae1" };
        let _ = writeln!(
            s,
            "<polygon points=\"{}\" fill=\"{fill}\" stroke=\"none\"><title>{cuts:?}</title></polygon>",
            pts.join(" ")
        );
    }
    // Walls crossing the view.
    let ext = extent.ceil() as i64 + 1;
    for (i, f) in g.families().iter().enumerate() {
        let n = (f.normal[0].to_f64(), f.normal[1].to_f64());
        let len = (n.0 * n.0 + n.1 * n.1).sqrt();
        let range = ((2.0 * extent * len / f.spacing.to_f64()).ceil() as i64).max(ext);
        for k in -range..=range {
            let level = f.wall_level(k).to_f64();
            let p0 = (n.0 * level / (len * len), n.1 * level / (len * len));
            let d = (-n.1 / len * 4.0 * extent, n.0 / len * 4.0 * extent);
            let (x0, y0) = to_screen((p0.0 - d.0, p0.1 - d.1));
            let (x1, y1) = to_screen((p0.0 + d.0, p0.1 + d.1));
            let width = if k == 0 { 1.4 } else { 0.6 };
            let _ = writeln!(
                s,
                "<line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x1:.2}\" y2=\"{y1:.2}\" stroke=\"{}\" stroke-width=\"{width}\"><title>h_{}({k})</title></line>",
                ["#333333", "#7f3c8d", "#11a579", "#3969ac"][i % 4],
                i + 1
            );
        }
    }
    let _ = writeln!(
        s,
        "<text x=\"8\" y=\"16\">π = {:?}  Δ(π,Π₀) = {}  |shadow| = {}</text>",
        report.pi,
        report.dist,
        report.shadow.len()
    );
    s.push_str("</svg>\n");
    Ok(s)
}

/// A projection of the 1-skeleton of a cube complex: wall `j` moves a
/// vertex along the unit vector at angle `πj/n`.
pub fn cubing_svg(c: &CubeComplex) -> String {
    let n = c.pairs.max(1) as f64;
    let coords: Vec<(f64, f64)> = c
        .vertices
        .iter()
        .map(|v| {
            v.choices().iter().enumerate().fold((0.0, 0.0), |(x, y), (j, &star)| {
                let a = PI * j as f64 / n + 0.3;
                let sgn = if star { -1.0 } else { 1.0 };
                (x + sgn * a.cos(), y + sgn * a.sin())
            })
        })
        .collect();
    let extent = coords
        .iter()
        .fold(1.0f64, |m, (x, y)| m.max(x.abs()).max(y.abs()))
        + 0.8;
    let scale = SIZE / (2.0 * extent);
    let to_screen = |(x, y): (f64, f64)| (SIZE / 2.0 + x * scale, SIZE / 2.0 - y * scale);
    let mut s = String::new();
    header(
        &mut s,
        &format!("cubing: {} vertices, {} edges, {} higher cubes", c.vertices.len(), c.edges.len(), c.cubes.len()),
    );
    for cube in c.cubes.iter().filter(|q| q.dim() == 2) {
        let pairs: Vec<usize> = cube.directions.iter().filter_map(|d| d.pair()).collect();
        let base = c.vertices[cube.base].choices().to_vec();
        let corner = |mask: [bool; 2]| {
            let mut ch = base.clone();
            for (k, &m) in mask.iter().enumerate() {
                if m {
                    ch[pairs[k]] = !ch[pairs[k]];
                }
            }
            c.vertices.iter().position(|v| v.choices() == ch.as_slice())
        };
        let idx: Vec<usize> = [[false, false], [true, false], [true, true], [false, true]]
            .iter()
            .filter_map(|m| corner(*m))
            .collect();
        if idx.len() == 4 {
            let pts: Vec<String> = idx
                .iter()
                .map(|&i| {
                    let (x, y) = to_screen(coords[i]);
                    format!("{x:.2},{y:.2}")
                })
                .collect();
            let _ = writeln!(s, "<polygon points=\"{}\" fill=\"#e5f0fa\" stroke=\"none\"/>", pts.join(" "));
        }
    }
    for e in &c.edges {
        let (x0, y0) = to_screen(coords[e.a]);
        let (x1, y1) = to_screen(coords[e.b]);
        let _ = writeln!(
            s,
            "<line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x1:.2}\" y2=\"{y1:.2}\" stroke=\"#444\" stroke-width=\"1.5\"/>"
        );
        let _ = writeln!(
            s,
            "<text x=\"{:.2}\" y=\"{:.2}\" fill=\"#d62728\" text-anchor=\"middle\">h{}</text>",
            (x0 + x1) / 2.0,
            (y0 + y1) / 2.0 - 3.0,
            e.wall() + 1
        );
    }
    for (i, v) in c.vertices.iter().enumerate() {
        let (x, y) = to_screen(coords[i]);
        let _ = writeln!(
            s,
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"5\" fill=\"#1f77b4\"><title>v{i} {}</title></circle>",
            escape(&v.to_string())
        );
    }
    s.push_str("</svg>\n");
    s
}

/// The Roller boundary poset as a Hasse diagram, one row per codimension.
pub fn boundary_svg(sigs: &[Signature], covers: &[(usize, usize)]) -> String {
    let max_codim = sigs.iter().map(|s| class_codim(s).0).max().unwrap_or(0);
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); max_codim + 1];
    for (i, s) in sigs.iter().enumerate() {
        rows[class_codim(s).0].push(i);
    }
    let mut pos = vec![(0.0, 0.0); sigs.len()];
    for (c, row) in rows.iter().enumerate() {
        let y = SIZE - 30.0 - (SIZE - 60.0) * c as f64 / (max_codim.max(1) as f64);
        for (k, &i) in row.iter().enumerate() {
            pos[i] = ((k as f64 + 0.5) * SIZE / row.len() as f64, y);
        }
    }
    let mut s = String::new();
    header(&mut s, "Roller boundary");
    for &(a, b) in covers {
        let _ = writeln!(
            s,
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#999\"/>",
            pos[a].0, pos[a].1, pos[b].0, pos[b].1
        );
    }
    for (i, sig) in sigs.iter().enumerate() {
        let _ = writeln!(
            s,
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" fill=\"{}\">{sig}</text>",
            pos[i].0,
            pos[i].1,
            codim_colour(class_codim(sig).0)
        );
    }
    s.push_str("</svg>\n");
    s
}
