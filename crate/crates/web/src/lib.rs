//! Browser bindings for the static demo in `www/`.
//!
//! Three operations, each returning a JSON envelope `{"svg": ..., "text":
//! ...}` (or a plain string) so the page needs no JS-side model:
//!
//! * [`boundary_image`]: the image of ρ for FIX-Z2 / FIX-HEX, as a circle
//!   diagram, plus [`classify`] for a single direction;
//! * [`hex_shadow`]: the shadow report of a FIX-HEX cut tuple over the
//!   wall arrangement;
//! * [`cubing_from_pocset`]: the dual cube complex of a poc-set JSON file.

use pocset::chain::ChainUltrafilter;
use pocset::cubing::build_cubing;
use pocset::euclid::{rho, rho_image, DirectionPoint, WallGeometry};
use pocset::io::load_pocset;
use pocset::shadows::shadow_report;
use pocset::{fixtures, svg};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest window the demo accepts; shadow search grows as `W^3`.
const MAX_WINDOW: i32 = 20;

fn model(name: &str) -> Result<WallGeometry, String> {
    match name {
        "FIX-Z2" | "z2" => Ok(fixtures::z2_geometry()),
        "FIX-HEX" | "hex" => Ok(fixtures::hex_geometry()),
        other => Err(format!("unknown model {other:?}; expected FIX-Z2 or FIX-HEX")),
    }
}

/// The image of ρ for a planar fixture: `{"svg", "text"}`.
#[wasm_bindgen]
pub fn boundary_image(name: &str) -> Result<String, String> {
    let g = model(name)?;
    let classes = rho_image(&g).map_err(|e| e.to_string())?;
    let svg = svg::rho_image_svg(&g).map_err(|e| e.to_string())?;
    let mut text = format!("{} classes in the image of ρ\n", classes.len());
    for c in &classes {
        let fibers: Vec<String> = c.fibers.iter().map(|f| f.to_string()).collect();
        text.push_str(&format!("{}  codim {}  {}\n", c.signature, c.codim, fibers.join("; ")));
    }
    Ok(json!({ "svg": svg, "text": text }).to_string())
}

/// `ρ(ξ)` for an exact direction such as `1,0` or `√3/2,-1/2`.
#[wasm_bindgen]
pub fn classify(name: &str, direction: &str) -> Result<String, String> {
    let g = model(name)?;
    let xi: DirectionPoint = direction.parse().map_err(|e: pocset::euclid::EuclidError| e.to_string())?;
    rho(&g, &xi).map(|s| s.to_string()).map_err(|e| e.to_string())
}

/// Shadow report of the FIX-HEX tuple `(r, s, t)`: `{"svg", "text"}`.
#[wasm_bindgen]
pub fn hex_shadow(r: i32, s: i32, t: i32, window: i32) -> Result<String, String> {
    if !(1..=MAX_WINDOW).contains(&window) {
        return Err(format!("window must be between 1 and {MAX_WINDOW}"));
    }
    let g = fixtures::hex_geometry();
    let pi = ChainUltrafilter::principal(&[r as i64, s as i64, t as i64]);
    let report = shadow_report(&g, &pi, window as i64).map_err(|e| e.to_string())?;
    let svg = svg::shadow_svg(&g, &report).map_err(|e| e.to_string())?;
    let join = |v: &[pocset::chain::ChainHalfspace]| v.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(" ");
    let text = format!(
        "π = ({r},{s},{t})\nconsistent: {}\nΔ(π, Π₀) = {}\n|shadow| = {}\nmin+: {}\nmin-: {}\n",
        if report.consistent { "yes" } else { "no" },
        report.dist,
        report.shadow.len(),
        join(&report.min_plus),
        join(&report.min_minus),
    );
    Ok(json!({ "svg": svg, "text": text }).to_string())
}

/// The dual cube complex of a poc-set given in the file format:
/// `{"svg", "text"}`.
#[wasm_bindgen]
pub fn cubing_from_pocset(pocset_json: &str) -> Result<String, String> {
    let p = load_pocset(pocset_json).map_err(|e| e.to_string())?;
    if p.pairs() > 8 {
        return Err("the demo draws poc-sets with at most 8 pairs".into());
    }
    let c = build_cubing(&p);
    let mut text = format!(
        "{} vertices, {} edges, cubes by dimension {:?}, dimension {}\n",
        c.vertices.len(),
        c.edges.len(),
        c.cube_counts(),
        c.dimension()
    );
    for (i, v) in c.vertices.iter().enumerate() {
        text.push_str(&format!("v{i} {v}\n"));
    }
    Ok(json!({ "svg": svg::cubing_svg(&c), "text": text }).to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(envelope: &str, key: &str) -> String {
        let v: serde_json::Value = serde_json::from_str(envelope).unwrap();
        v[key].as_str().unwrap().to_string()
    }

    #[test]
    fn image_of_both_models() {
        let z2 = boundary_image("FIX-Z2").unwrap();
        assert!(field(&z2, "text").starts_with("8 classes"));
        assert!(field(&z2, "svg").starts_with("<svg"));
        let hex = boundary_image("hex").unwrap();
        assert!(field(&hex, "text").starts_with("12 classes"));
        assert!(boundary_image("FIX-SQ").is_err());
    }

    #[test]
    fn classify_directions() {
        assert_eq!(classify("FIX-Z2", "1,0").unwrap(), "(+,0)");
        assert_eq!(classify("FIX-HEX", "0,1").unwrap(), "(+,-,-)");
        assert!(classify("FIX-Z2", "0,0").is_err());
        assert!(classify("FIX-Z2", "x").is_err());
    }

    #[test]
    fn shadow_of_555() {
        let out = hex_shadow(5, 5, 5, 12).unwrap();
        let text = field(&out, "text");
        assert!(text.contains("Δ(π, Π₀) = 12"), "{text}");
        assert!(text.contains("|shadow| = 91"), "{text}");
        assert!(field(&out, "svg").contains("<svg"));
        assert!(hex_shadow(5, 5, 5, 6).is_err());
        assert!(hex_shadow(0, 0, 0, 99).is_err());
    }

    #[test]
    fn cubing_of_square() {
        let out = cubing_from_pocset(r#"{"pairs": 2, "order": []}"#).unwrap();
        assert!(field(&out, "text").starts_with("4 vertices, 4 edges"));
        assert!(cubing_from_pocset(r#"{"pairs": 1, "order": [["h1","h1*"]]}"#).is_err());
    }
}
