mod common;

use common::*;
use proptest::prelude::*;
use troppca::treespace::*;
use troppca::trop::{trop_combine, trop_dist, TorusPoint};

fn tp(v: &[f64]) -> TorusPoint {
    TorusPoint::new(v.to_vec()).unwrap()
}

#[test]
fn projection_examples_against_enumeration() {
    let x = tp(&[1.0, 3.0, 2.0]);
    let expected = clade_span_projection(&x).unwrap();
    assert_eq!(expected, vec![1.0, 2.0, 2.0]);
    assert_eq!(project_to_treespace(&x).unwrap().coords(), expected.as_slice());

    let x = tp(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
    let expected = cut_enumeration(x.coords());
    assert_eq!(expected, vec![1.0, 2.0, 3.0, 2.0, 3.0, 3.0]);
    assert_eq!(clade_span_projection(&x).unwrap(), expected);
    assert_eq!(project_to_treespace(&x).unwrap().coords(), expected.as_slice());
}

#[test]
fn single_linkage_matches_cut_enumeration() {
    let mut r = rng(11);
    for m in 3..=6 {
        for _ in 0..1000 {
            let x = uniform_point(pair_count(m), &mut r);
            let p = project_to_treespace(&x).unwrap();
            assert!(max_abs_diff(p.coords(), &cut_enumeration(x.coords())) <= 1e-12);
        }
    }
}

#[test]
fn single_linkage_matches_floyd_minimax() {
    let mut r = rng(12);
    for m in 3..=10 {
        for _ in 0..200 {
            let x = uniform_point(pair_count(m), &mut r);
            let p = project_to_treespace(&x).unwrap();
            assert_eq!(p.coords(), minimax_floyd(x.coords()).as_slice());
        }
    }
}

#[test]
fn clade_span_agrees_on_three_leaves() {
    let mut r = rng(13);
    for _ in 0..500 {
        let x = uniform_point(3, &mut r);
        let p = project_to_treespace(&x).unwrap();
        assert!(max_abs_diff(p.coords(), &clade_span_projection(&x).unwrap()) <= 1e-12);
    }
}

#[test]
fn projection_is_idempotent_and_below_input() {
    let mut r = rng(14);
    for m in 3..=10 {
        for _ in 0..200 {
            let x = uniform_point(pair_count(m), &mut r);
            let p = project_to_treespace(&x).unwrap();
            assert!(is_ultrametric(p.coords(), 0.0).unwrap());
            assert!(p.coords().iter().zip(x.coords()).all(|(a, b)| a <= b));
            let pp = project_to_treespace(p.point()).unwrap();
            assert_eq!(pp, p);
        }
    }
}

#[test]
fn projection_is_non_expansive() {
    let mut r = rng(15);
    for _ in 0..1000 {
        let u = uniform_point(pair_count(8), &mut r);
        let v = uniform_point(pair_count(8), &mut r);
        let pu = project_to_treespace(&u).unwrap();
        let pv = project_to_treespace(&v).unwrap();
        assert!(trop_dist(pu.point(), pv.point()).unwrap() <= trop_dist(&u, &v).unwrap() + 1e-9);
    }
}

#[test]
fn projection_is_closest_ultrametric() {
    let mut r = rng(16);
    for _ in 0..30 {
        let m = 6;
        let x = uniform_point(pair_count(m), &mut r);
        let px = project_to_treespace(&x).unwrap();
        let best = trop_dist(&x, px.point()).unwrap();
        for _ in 0..100 {
            let y = random_ultrametric_with(m, &mut r).unwrap();
            assert!(best <= trop_dist(&x, y.point()).unwrap() + 1e-9);
        }
        // nearby ultrametrics too
        for _ in 0..100 {
            let noise = uniform_point(pair_count(m), &mut r);
            let near: Vec<f64> = px.coords().iter().zip(noise.coords()).map(|(a, b)| a + 0.05 * b).collect();
            let y = project_to_treespace(&tp(&near)).unwrap();
            assert!(best <= trop_dist(&x, y.point()).unwrap() + 1e-9);
        }
    }
}

#[test]
fn tropical_hull_of_ultrametrics_is_ultrametric() {
    let mut r = rng(17);
    for _ in 0..300 {
        let vertices: Vec<TorusPoint> = random_sample(6, 3, &mut r).into_iter().map(|v| v.into_point()).collect();
        let scalars: Vec<f64> = (0..3).map(|_| 2.0 * rand::Rng::gen::<f64>(&mut r) - 1.0).collect();
        let z = trop_combine(&scalars, &vertices).unwrap();
        assert!(is_ultrametric(z.coords(), 1e-12).unwrap());
    }
}

#[test]
fn caterpillar_by_path_enumeration() {
    let t = parse_newick("(((1:1,2:1):1,3:2):1,4:3);").unwrap();
    // independent route: walk parent links from both leaves
    let nodes = t.nodes();
    let leaf_node = |label: &str| nodes.iter().position(|n| n.label.as_deref() == Some(label)).unwrap();
    let ancestors = |mut v: usize| {
        let mut path = vec![(v, 0.0)];
        let mut acc = 0.0;
        while let Some(p) = nodes[v].parent {
            acc += nodes[v].length;
            path.push((p, acc));
            v = p;
        }
        path
    };
    let mut expected = Vec::new();
    for (i, j) in pairs(4) {
        let a = ancestors(leaf_node(&(i + 1).to_string()));
        let b = ancestors(leaf_node(&(j + 1).to_string()));
        let d = a
            .iter()
            .find_map(|&(n, da)| b.iter().find(|&&(nb, _)| nb == n).map(|&(_, db)| da + db))
            .unwrap();
        expected.push(d);
    }
    assert_eq!(expected, vec![2.0, 4.0, 6.0, 4.0, 6.0, 6.0]);
    assert_eq!(t.cophenetic_vector().coords(), expected.as_slice());
}

#[test]
fn newick_vector_tree_vector_round_trip() {
    let mut r = rng(18);
    for _ in 0..100 {
        let u = random_ultrametric_with(7, &mut r).unwrap();
        let text = reconstruct_tree(&u, 0.0).unwrap().to_newick();
        let t = parse_newick(&text).unwrap();
        let v = UltrametricVector::new(t.cophenetic_vector(), 1e-9).unwrap();
        let back = reconstruct_tree_with_labels(&v, t.labels(), 1e-9).unwrap();
        assert!(max_abs_diff(back.cophenetic_vector().coords(), v.coords()) <= 1e-9);
        assert!(max_abs_diff(v.coords(), u.coords()) <= 1e-9);
    }
}

fn arb_tree(leaves: usize) -> impl Strategy<Value = String> {
    // random binary merges with dyadic branch lengths
    (prop::collection::vec((0usize..1000, 0usize..1000, 1u32..64, 1u32..64), leaves - 1)).prop_map(move |merges| {
        let mut parts: Vec<String> = (0..leaves).map(|i| format!("t{i}")).collect();
        for (a, b, la, lb) in merges {
            let i = a % parts.len();
            let left = parts.remove(i);
            let j = b % parts.len();
            let right = parts.remove(j);
            parts.push(format!("({left}:{},{right}:{})", la as f64 / 8.0, lb as f64 / 8.0));
        }
        format!("{};", parts[0])
    })
}

proptest! {
    #[test]
    fn newick_serialization_round_trip(text in arb_tree(7)) {
        let t = parse_newick(&text).unwrap();
        let again = parse_newick(&t.to_newick()).unwrap();
        prop_assert_eq!(again.cophenetic_vector(), t.cophenetic_vector());
        prop_assert_eq!(again.labels(), t.labels());
    }
}
