//! The canonical fixtures of the specification, built in code. The same
//! data ships as JSON under `fixtures/` at the repository root.

use crate::chain::ChainFamily;
use crate::euclid::{WallFamily, WallGeometry};
use crate::exact::Exact;
use crate::poc::{Element, FinitePocSet, RawPocSet};

fn pocset(pairs: usize, order: &[(&str, &str)]) -> FinitePocSet {
    let order = order
        .iter()
        .map(|(a, b)| {
            (
                a.parse::<Element>().expect("fixture names parse"),
                b.parse::<Element>().expect("fixture names parse"),
            )
        })
        .collect();
    FinitePocSet::validate(&RawPocSet { pairs, order }).expect("fixtures are valid")
}

/// FIX-LINE3: `h3 <= h2 <= h1`.
pub fn line3() -> FinitePocSet {
    pocset(3, &[("h3", "h2"), ("h2", "h1")])
}

/// FIX-SQ: two transverse pairs.
pub fn square() -> FinitePocSet {
    pocset(2, &[])
}

/// FIX-TRIPOD: `h1 <= h2*`, `h1 <= h3*`, `h2 <= h3*`.
pub fn tripod() -> FinitePocSet {
    pocset(3, &[("h1", "h2*"), ("h1", "h3*"), ("h2", "h3*")])
}

fn unit_family(normal: Vec<Exact>) -> WallFamily {
    WallFamily::new(normal, Exact::one(), Exact::zero())
}

/// FIX-ZD geometry: coordinate normals in `𝔼^d`.
pub fn zd_geometry(d: usize) -> WallGeometry {
    WallGeometry::new(
        (0..d)
            .map(|i| unit_family((0..d).map(|j| Exact::int((i == j) as i64)).collect()))
            .collect(),
    )
    .expect("coordinate normals are valid")
}

pub fn z2_geometry() -> WallGeometry {
    zd_geometry(2)
}

/// FIX-HEX geometry: normals `(0,1)`, `(-√3/2,-1/2)`, `(√3/2,-1/2)`.
pub fn hex_geometry() -> WallGeometry {
    let h = Exact::ratio(1, 2);
    let r = Exact::sqrt3() * h;
    WallGeometry::new(vec![
        unit_family(vec![Exact::zero(), Exact::one()]),
        unit_family(vec![-r, -h]),
        unit_family(vec![r, -h]),
    ])
    .expect("hex normals are valid")
}

/// A single horizontal family in the plane; not uniform.
pub fn single_family_geometry() -> WallGeometry {
    WallGeometry::new(vec![unit_family(vec![Exact::zero(), Exact::one()])])
        .expect("one family is valid")
}

fn family(names: &[&str], geometry: WallGeometry) -> ChainFamily {
    ChainFamily {
        names: names.iter().map(|s| s.to_string()).collect(),
        geometry: Some(geometry),
    }
}

/// FIX-ZD as a chain family with chains `x1..xd`.
pub fn zd(d: usize) -> ChainFamily {
    let names: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
    ChainFamily {
        names,
        geometry: Some(zd_geometry(d)),
    }
}

/// FIX-Z2 with chains `x`, `y`.
pub fn z2() -> ChainFamily {
    family(&["x", "y"], z2_geometry())
}

/// FIX-HEX with chains `r`, `s`, `t` as in the paper's Figure 1.
pub fn hex() -> ChainFamily {
    family(&["r", "s", "t"], hex_geometry())
}

pub fn single_family() -> ChainFamily {
    family(&["h"], single_family_geometry())
}
