mod common;

use std::cmp::Ordering;

use common::{Case, CUSP, HIGHER_CUSP, NODE, TACNODE};
use desing_core::resolver::{extended_compare, resolve_ideal_to_nc, verify_tree};
use desing_core::{parse_poly, resolve_hypersurface, Ideal, ResolutionTree, ResolverConfig, Status};

fn words(tree: &ResolutionTree) -> Vec<String> {
    tree.years.iter().map(|y| y.word.to_string()).collect()
}

fn resolved(case: &Case) -> ResolutionTree {
    let (tree, cert) = case.resolve(&ResolverConfig::default());
    assert!(cert.passed(), "{}: {:?} {:?}", case.name, cert.status, cert.failures);
    assert!(cert.s1_zero && cert.e_bounds && cert.violations.is_empty());
    tree
}

#[test]
fn cusp_words() {
    let tree = resolved(&CUSP);
    assert_eq!(words(&tree), ["(2,0; 3/2,0; inf)", "(1,1; 2,0; inf)", "(1,1; 0)"]);
    for y in &tree.years {
        assert_eq!(y.locus.len(), 1, "one point center per year");
    }
}

#[test]
fn tacnode_words() {
    let tree = resolved(&TACNODE);
    assert_eq!(words(&tree), ["(2,0; 2,0; inf)", "(2,0; 0)", "(1,1; 1,0; inf)"]);
    assert_eq!(tree.years[1].j, vec![0]);
    // the two branches separate and meet the last divisor at two points
    assert_eq!(tree.years[2].locus.values().map(|c| c.len()).sum::<usize>(), 4);
}

#[test]
fn higher_cusp_and_node() {
    let tree = resolved(&HIGHER_CUSP);
    assert_eq!(words(&tree)[0], "(2,0; 5/2,0; inf)");
    assert_eq!(tree.year(), 4);

    let tree = resolved(&NODE);
    assert_eq!(words(&tree)[0], "(2,0; 1,0; inf)");
}

#[test]
fn smooth_input_needs_nothing() {
    let g = parse_poly("x", &["x", "y"]).unwrap();
    let (tree, cert) = resolve_hypersurface(&g, 2, 0, &ResolverConfig::default()).unwrap();
    assert_eq!(tree.year(), 0);
    assert!(cert.passed());
}

#[test]
fn input_is_reduced_first() {
    let g = parse_poly("(y^2 - x^3)^2", &["x", "y"]).unwrap();
    let (tree, cert) = resolve_hypersurface(&g, 2, 0, &ResolverConfig::default()).unwrap();
    assert!(cert.passed());
    assert_eq!(words(&tree), words(&resolved(&CUSP)));
}

#[test]
fn yearly_words_decrease() {
    for case in [CUSP, TACNODE, HIGHER_CUSP] {
        let tree = resolved(&case);
        for w in tree.years.windows(2) {
            assert_eq!(extended_compare(&w[1], &w[0], &tree), Ordering::Less, "{}: year {}", case.name, w[1].year);
        }
    }
}

#[test]
fn year_budget_is_reported() {
    let cfg = ResolverConfig { max_years: 1, ..Default::default() };
    let (tree, cert) = CUSP.resolve(&cfg);
    assert_eq!(tree.year(), 1);
    assert_eq!(cert.status, Status::YearBudget);
    assert!(!cert.passed());
}

#[test]
fn ideal_principalization() {
    let v = ["x", "y"];
    let i = Ideal::new(vec![parse_poly("x^2", &v).unwrap(), parse_poly("x*y", &v).unwrap()]).unwrap();
    let (tree, cert) = resolve_ideal_to_nc(&i, 2, 0, &ResolverConfig::default()).unwrap();
    assert!(cert.passed(), "{:?}", cert.failures);
    assert!(cert.charts.iter().all(|c| c.transform_identity && c.nc_exponents.is_some()));
    let first = tree.years[0].locus.values().next().unwrap();
    assert!(first.iter().all(|g| g.total_degree() == Some(1)) && first.len() == 2, "origin first");
}

#[test]
fn tree_round_trip_verifies() {
    let tree = resolved(&TACNODE);
    let json = tree.to_json();
    let back = ResolutionTree::from_json(&json).unwrap();
    assert_eq!(back, tree);
    assert_eq!(back.to_json(), json);
    let cert = verify_tree(&back, &ResolverConfig::default());
    assert!(cert.passed(), "{:?}", cert.failures);

    let dot = tree.to_dot(12);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("label=\"chart ").count(), tree.charts.len());
}

#[test]
fn tampered_tree_fails_verification() {
    let mut tree = resolved(&CUSP);
    tree.years.swap(0, 1);
    let cert = verify_tree(&tree, &ResolverConfig::default());
    assert!(!cert.passed());
}
