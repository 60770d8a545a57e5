//! Fixtures shared by the kernel benchmarks.

use desing_core::{parse_poly, Ideal, Poly, ResolutionTree, Transform};

pub struct Fixture {
    pub name: &'static str,
    pub vars: &'static [&'static str],
    pub poly: &'static str,
}

pub const CURVES: [Fixture; 4] = [
    Fixture { name: "node", vars: &["x", "y"], poly: "x*y" },
    Fixture { name: "cusp", vars: &["x", "y"], poly: "y^2 - x^3" },
    Fixture { name: "tacnode", vars: &["x", "y"], poly: "y^2 - x^4" },
    Fixture { name: "higher_cusp", vars: &["x", "y"], poly: "y^2 - x^5" },
];

pub const UMBRELLA: Fixture = Fixture { name: "umbrella", vars: &["x", "y", "z"], poly: "x^2 - y^2*z" };

impl Fixture {
    pub fn poly(&self) -> Poly {
        parse_poly(self.poly, self.vars).expect("fixture parses")
    }

    pub fn root_tree(&self) -> ResolutionTree {
        let g = self.poly();
        let n = g.nvars();
        ResolutionTree::new(Transform::Hypersurface(g), n, 0, desing_core::Mode::Hypersurface).expect("fixture tree")
    }
}

/// The three-variable Gröbner workload: a cyclic-style system with finitely many roots.
pub fn cyclic3() -> Ideal {
    let v = ["x", "y", "z"];
    let gens = ["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"].iter().map(|s| parse_poly(s, &v).unwrap()).collect();
    Ideal::new(gens).unwrap()
}

/// Derivative ideal workload used by the stratum computations.
pub fn umbrella_singular_locus() -> Ideal {
    desing_core::ideal::derivative_ideal(&UMBRELLA.poly(), 2)
}
