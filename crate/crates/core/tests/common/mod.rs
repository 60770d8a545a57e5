#![allow(dead_code)]

use desing_core::resolver::{resolve_hypersurface, Certificate, ResolutionTree, ResolverConfig};
use desing_core::{parse_poly, Poly};

pub struct Case {
    pub name: &'static str,
    pub vars: &'static [&'static str],
    pub poly: &'static str,
}

pub const NODE: Case = Case { name: "node", vars: &["x", "y"], poly: "x*y" };
pub const CUSP: Case = Case { name: "cusp", vars: &["x", "y"], poly: "y^2 - x^3" };
pub const TACNODE: Case = Case { name: "tacnode", vars: &["x", "y"], poly: "y^2 - x^4" };
pub const HIGHER_CUSP: Case = Case { name: "higher cusp", vars: &["x", "y"], poly: "y^2 - x^5" };
pub const UMBRELLA: Case = Case { name: "umbrella", vars: &["x", "y", "z"], poly: "x^2 - y^2*z" };

pub const CORPUS: [Case; 5] = [NODE, CUSP, TACNODE, HIGHER_CUSP, UMBRELLA];

impl Case {
    pub fn poly(&self) -> Poly {
        parse_poly(self.poly, self.vars).unwrap()
    }

    pub fn resolve(&self, cfg: &ResolverConfig) -> (ResolutionTree, Certificate) {
        let g = self.poly();
        resolve_hypersurface(&g, self.vars.len(), 0, cfg).unwrap()
    }
}

/// Equality up to a nonzero constant factor.
pub fn same_up_to_scalar(a: &Poly, b: &Poly) -> bool {
    a.monic() == b.monic()
}
