//! Small complexes used throughout the tests, the acceptance suite and the
//! CLI self-test. The same inputs ship as files under `data/`.

use crate::cellcomplex::CellComplex;
use crate::io::parse_complex;

pub const TRIANGLE_BOUNDARY: &str = "# boundary of a triangle, a circle\n1 2\n2 3\n1 3\n";

pub const SIMPLEX2: &str = "# the full 2-simplex, a disc\n1 2 3\n";

/// A 6-vertex triangulation of the real projective plane.
pub const RP2: &str = "# six-vertex real projective plane\n\
1 2 3\n1 3 4\n1 4 5\n1 5 6\n1 6 2\n2 3 5\n3 4 6\n4 5 2\n5 6 3\n6 2 4\n";

/// Two hollow triangles sharing the vertex 1.
pub const WEDGE: &str = "# two circles glued at a point\n1 2\n2 3\n1 3\n1 4\n4 5\n1 5\n";

/// A disc made of one 2-cell, two edges and two vertices, with hand-picked
/// signs. Not a meet-semilattice: the two vertices have two minimal upper
/// bounds.
pub const DISC2: &str = r#"{
  "cells": [
    {"id": "rho1", "dim": 0},
    {"id": "rho2", "dim": 0},
    {"id": "tau1", "dim": 1},
    {"id": "tau2", "dim": 1},
    {"id": "sigma", "dim": 2}
  ],
  "covers": [
    ["rho1", "tau1"], ["rho2", "tau1"],
    ["rho1", "tau2"], ["rho2", "tau2"],
    ["tau1", "sigma"], ["tau2", "sigma"]
  ],
  "epsilon": [
    {"upper": "tau1", "lower": "rho1", "sign": -1},
    {"upper": "tau1", "lower": "rho2", "sign": 1},
    {"upper": "tau2", "lower": "rho1", "sign": -1},
    {"upper": "tau2", "lower": "rho2", "sign": 1},
    {"upper": "sigma", "lower": "tau1", "sign": 1},
    {"upper": "sigma", "lower": "tau2", "sign": -1}
  ]
}
"#;

/// Boundary of a square given as a poset; signs are solved for.
pub const SQUARE_BOUNDARY: &str = r#"{
  "cells": [
    {"id": "a", "dim": 0}, {"id": "b", "dim": 0},
    {"id": "c", "dim": 0}, {"id": "d", "dim": 0},
    {"id": "ab", "dim": 1}, {"id": "bc", "dim": 1},
    {"id": "cd", "dim": 1}, {"id": "da", "dim": 1}
  ],
  "covers": [
    ["a", "ab"], ["b", "ab"], ["b", "bc"], ["c", "bc"],
    ["c", "cd"], ["d", "cd"], ["d", "da"], ["a", "da"]
  ]
}
"#;

fn load(text: &str) -> CellComplex {
    parse_complex(text).expect("built-in complex is valid")
}

pub fn triangle_boundary() -> CellComplex {
    load(TRIANGLE_BOUNDARY)
}

pub fn simplex2() -> CellComplex {
    load(SIMPLEX2)
}

pub fn rp2() -> CellComplex {
    load(RP2)
}

pub fn wedge() -> CellComplex {
    load(WEDGE)
}

pub fn disc2() -> CellComplex {
    load(DISC2)
}

pub fn square_boundary() -> CellComplex {
    load(SQUARE_BOUNDARY)
}

pub struct Named {
    pub name: &'static str,
    pub complex: CellComplex,
}

/// The five reference complexes: triangle boundary, full 2-simplex, 2-disc,
/// square boundary and the projective plane.
pub fn all() -> Vec<Named> {
    vec![
        Named {
            name: "triangle_boundary",
            complex: triangle_boundary(),
        },
        Named {
            name: "simplex2",
            complex: simplex2(),
        },
        Named {
            name: "disc2",
            complex: disc2(),
        },
        Named {
            name: "square_boundary",
            complex: square_boundary(),
        },
        Named {
            name: "rp2",
            complex: rp2(),
        },
    ]
}
