mod common;

use osforge::constructions::{
    build_gm, build_mn, build_mn_prime, build_pn, contains_seed, cycle_matroid, direct_sum, graphic_matroid, isthmus,
    merged_label, parallel_connection, Graph,
};
use osforge::io::{GraphJson, MatroidJson};
use osforge::isomorphism::are_isomorphic;
use osforge::tutte::{closed_form_mn, pn_closed, pn_recursive, tutte};
use osforge::{Error, Matroid};

use common::*;

#[test]
fn family_sizes_and_ranks() {
    for (_, seed, bp) in seeds() {
        for n in 2..=5 {
            let s = spec(&seed, bp, n);
            let (mn, pn, mp) = (build_mn(&s).unwrap(), build_pn(&s).unwrap(), build_mn_prime(&s).unwrap());
            assert_eq!(mn.len(), n + seed.len());
            assert_eq!(pn.len(), n + seed.len() - 1);
            assert_eq!(mp.len(), mn.len());
            assert_eq!(mn.rank(), mp.rank());
            assert!(pn.is_connected().unwrap());
            assert!(!mn.is_connected().unwrap());
            assert!(mp.is_isthmus(mp.require_id("p").unwrap()).unwrap());
            assert!(mp.id_of(&s.merged_label()).is_some());
        }
    }
}

#[test]
fn parallel_connection_ground_order() {
    let a = c3();
    let b = c4();
    let p = parallel_connection(&a, "a2", &b, "b3").unwrap();
    let labels: Vec<&str> = p.labels().collect();
    assert_eq!(labels, ["a1", &merged_label("a2", "b3"), "a3", "b1", "b2", "b4"]);
    // Circuits: both cycles through the merged point plus their sum.
    assert_eq!(p.circuits().len(), 3);
    assert_eq!(p.longest_circuit().unwrap(), 5);
}

#[test]
fn parallel_connection_rejects_loops_and_collisions() {
    let lp = Matroid::from_labeled(&["l", "m"], &[vec!["l"]]).unwrap();
    assert!(parallel_connection(&lp, "l", &c3(), "a1").is_err());
    assert!(matches!(parallel_connection(&c3(), "a1", &c3(), "a2"), Err(Error::LabelCollision(_))));
    assert!(direct_sum(&c3(), &c3()).is_err());
}

#[test]
fn pn_closed_form_equals_recursion() {
    for (_, seed, bp) in seeds() {
        let (t0, t0c) = (tutte(&seed), tutte(&seed.contract_label(bp).unwrap()));
        for n in 2..=7 {
            assert_eq!(pn_closed(&t0, &t0c, n), pn_recursive(&t0, &t0c, n));
        }
    }
}

#[test]
fn mn_closed_form_for_larger_n() {
    let s = spec(&c3(), "a1", 7);
    assert_eq!(tutte(&build_mn(&s).unwrap()), closed_form_mn(&tutte(&c3()), 7));
}

#[test]
fn gm_graph_shape() {
    for m in 2..=4 {
        let g = build_gm(m).unwrap();
        assert_eq!(g.vertices().len(), 2 * m);
        assert_eq!(g.edges().len(), (2 * m - 2) + (2 * m - 1));
        let mm = graphic_matroid(&g).unwrap();
        assert!(mm.is_connected().unwrap() && mm.is_simple());
        assert_eq!(mm.rank(), 2 * m - 1);
    }
}

#[test]
fn graphic_matroids_of_small_graphs() {
    let triangle = Graph::from_edges(["u", "v", "w"], &[("a", "u", "v"), ("b", "v", "w"), ("c", "w", "u")]).unwrap();
    let m = graphic_matroid(&triangle).unwrap();
    assert!(are_isomorphic(&m, &cycle_matroid(3).unwrap()).unwrap().is_some());

    let multi = Graph::from_edges(["u", "v"], &[("a", "u", "v"), ("b", "u", "v"), ("l", "u", "u")]).unwrap();
    let m = graphic_matroid(&multi).unwrap();
    assert!(m.is_loop(m.require_id("l").unwrap()).unwrap());
    assert_eq!(m.circuits().len(), 2);
    assert!(m.validate().passed());
}

#[test]
fn json_round_trips() {
    for (name, m) in corpus() {
        let text = serde_json::to_string(&MatroidJson::from_matroid(&m)).unwrap();
        let back: MatroidJson = serde_json::from_str(&text).unwrap();
        assert!(back.to_matroid().unwrap().same_labeled(&m), "{name}");
    }
    let g = build_gm(3).unwrap();
    let back = GraphJson::from_graph(&g).to_graph().unwrap();
    assert!(graphic_matroid(&back).unwrap().same_labeled(&graphic_matroid(&g).unwrap()));
}

#[test]
fn malformed_matroid_json_is_rejected() {
    let dup = r#"{"ground":["a","b"],"circuits":[["a","b"],["b","a"]]}"#;
    assert!(serde_json::from_str::<MatroidJson>(dup).unwrap().to_matroid().is_err());
    let unknown = r#"{"ground":["a","b"],"circuits":[["a","c"]]}"#;
    assert!(serde_json::from_str::<MatroidJson>(unknown).unwrap().to_matroid().is_err());
    // Two circuits violating elimination: {a,b} and {b,c} force {a,c}.
    let bad = Matroid::from_labeled(&["a", "b", "c"], &[vec!["a", "b"], vec!["b", "c"]]).unwrap();
    assert!(!bad.validate().passed());
}

#[test]
fn isomorphism_search() {
    let a = c3();
    let b = cycle_matroid(3).unwrap();
    let map = are_isomorphic(&a, &b).unwrap().unwrap();
    assert_eq!(map.len(), 3);
    assert!(are_isomorphic(&c4(), &uniform(2, 4)).unwrap().is_none());
    assert!(are_isomorphic(&isthmus(), &Matroid::free(["q"]).unwrap()).unwrap().is_some());
}

#[test]
fn seed_is_a_restriction_of_both_family_members() {
    for (_, seed, bp) in seeds() {
        for n in 2..=5 {
            let s = spec(&seed, bp, n);
            assert!(contains_seed(&s, &build_mn(&s).unwrap()).unwrap());
            assert!(contains_seed(&s, &build_pn(&s).unwrap()).unwrap());
            assert!(contains_seed(&s, &build_mn_prime(&s).unwrap()).unwrap());
        }
    }
    let s = spec(&c4(), "b1", 3);
    assert!(!contains_seed(&s, &build_mn(&spec(&c3(), "a1", 3)).unwrap()).unwrap());
    assert!(!contains_seed(&s, &uniform(2, 4).relabel(|l| l.replace('u', "b")).unwrap()).unwrap());
}
