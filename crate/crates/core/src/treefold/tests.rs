use super::*;
use crate::geom::TurnAngle;

fn two_vertex() -> PlaneTree {
    // node 0 with leaves 2,3,4 and neighbour 1; node 1 with leaves 5,6,7
    PlaneTree::from_children(&[vec![1, 2, 3, 4], vec![5, 6, 7], vec![], vec![], vec![], vec![], vec![], vec![]])
}

#[test]
fn foldability_check() {
    assert!(check_tree_foldable(&PlaneTree::star(4)).foldable);
    let p3 = check_tree_foldable(&PlaneTree::path(3));
    assert!(!p3.foldable);
    assert_eq!(p3.witness, Some(1));
    assert!(!check_tree_foldable(&PlaneTree::star(5)).foldable);
}

#[test]
fn base_star_gaps() {
    let r = realize_base_star(6).unwrap();
    let dirs = r.pattern.directions_at(0);
    let gaps = crate::geom::cyclic_gaps(&dirs).unwrap();
    let want: Vec<TurnAngle> = [3, 3, 2, 2, 2, 2].iter().map(|&k| TurnAngle::turns(k, 14)).collect();
    let mut got = gaps.clone();
    // same cyclic sequence up to rotation
    let ok = (0..6).any(|_| {
        got.rotate_left(1);
        got == want
    });
    assert!(ok, "{gaps:?}");
    assert!(realize_base_star(3).is_err());
    assert!(realize_base_star(2).is_err());
}

#[test]
fn base_stars_verify() {
    for d in [4, 6, 8] {
        let t = PlaneTree::star(d);
        let r = realize_tree(&t).unwrap();
        let rep = verify_realization(&t, &r).unwrap();
        assert!(rep.pass(), "d={d}: {rep:?}");
    }
}

#[test]
fn two_degree_four_vertices() {
    let t = two_vertex();
    let r = realize_tree(&t).unwrap();
    assert_eq!(r.pattern.vertices.len(), 2);
    assert_eq!(r.pattern.segments.len(), 1);
    assert_eq!(r.pattern.rays.len(), 6);
    let rep = verify_realization(&t, &r).unwrap();
    assert!(rep.pass(), "{rep:?}");
}

#[test]
fn rejects_bad_trees() {
    assert!(matches!(realize_tree(&PlaneTree::path(3)), Err(TreeError::BadDegree { node: 1, degree: 2 })));
    assert!(matches!(realize_tree(&PlaneTree::path(2)), Err(TreeError::NoInternalNode)));
    assert!(PlaneTree::new(vec![vec![1], vec![]]).is_err());
}

#[test]
fn enumeration_counts() {
    // plane trees on 1..=5 nodes up to rotation: 1, 1, 1, 2, 3
    assert_eq!(enumerate_plane_trees(4).len(), 8);
    let stars: Vec<_> = enumerate_foldable_trees(5);
    assert_eq!(stars.len(), 1);
}

#[test]
fn sweep_up_to_eight_edges() {
    let trees = enumerate_foldable_trees(8);
    assert!(trees.len() > 3);
    for t in trees {
        let r = realize_tree(&t).unwrap();
        let rep = verify_realization(&t, &r).unwrap();
        assert!(rep.pass(), "{:?}: {rep:?}", t.rotation);
    }
}
