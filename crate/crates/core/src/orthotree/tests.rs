use super::fold::same_labelled;
use super::*;
use crate::foldcheck::{build_fold_map, kawasaki_check, maekawa_check};
use crate::geom::{Point2, TurnAngle};
use crate::pattern::{folding_graph, CreasePattern};

fn degrees(g: &FoldingGraph) -> Vec<usize> {
    g.rotation.iter().map(|r| r.len()).collect()
}

#[test]
fn quarter_fold_is_narrow() {
    let p = quarter_fold();
    let (bis, width) = asymptotic_image_wedge(&p).unwrap();
    assert_eq!(width, TurnAngle::turns(1, 4));
    assert!(bis == TurnAngle::turns(1, 8) || bis == TurnAngle::turns(7, 8));
}

#[test]
fn one_step_gives_octahedron() {
    let p = wheel_replace_fold(&quarter_fold(), Node::Vertex(0), None).unwrap();
    let g = folding_graph(&p).unwrap();
    assert_eq!(g.nodes.len(), 6);
    assert_eq!(g.graph.edges.len(), 12);
    assert!(degrees(&g).iter().all(|&d| d == 4));
    assert!(maekawa_check(&p).pass());
    assert!(kawasaki_check(&p).unwrap().pass());
}

#[test]
fn chord_around_quarter_fold_is_a_diamond() {
    let (p, delta) =
        wheel_replace_fold_at(&quarter_fold(), Node::Vertex(0), Some(0.25), 0).unwrap();
    assert_eq!(delta, 0.25);
    let r = 0.25 * 2f64.sqrt();
    for v in 1..=4 {
        let q = p.pos(v);
        assert!((q.x.abs() + q.y.abs() - r).abs() < 1e-9, "{q}");
    }
    // four new chord creases, each exact and diagonal
    let chords: Vec<_> = p.segments.iter().filter(|s| s.a != 0 && s.b != 0).collect();
    assert_eq!(chords.len(), 4);
    for s in chords {
        let dir = s.dir.unwrap();
        assert!(dir.is_exact());
        assert_eq!(dir.exact().unwrap().denom() % 8, 0);
    }
}

#[test]
fn six_star_gives_hexagon() {
    let mut p = CreasePattern::new();
    let v = p.add_vertex(Point2::new(0.0, 0.0));
    for k in 0..6 {
        p.add_ray(v, TurnAngle::turns(k, 6));
    }
    let q = wheel_replace_fold(&p, Node::Vertex(0), None).unwrap();
    let g = folding_graph(&q).unwrap();
    assert_eq!(g.nodes.len(), 8);
    let hub = g.index_of(Node::Vertex(0)).unwrap();
    assert_eq!(g.rotation[hub].len(), 6);
    let ring: Vec<Point2> = (1..=6).map(|v| q.pos(v)).collect();
    let r0 = ring[0].norm();
    assert!(ring.iter().all(|w| (w.norm() - r0).abs() < 1e-9));
}

#[test]
fn explicit_delta_that_is_too_large_fails() {
    let p = wheel_replace_fold(&quarter_fold(), Node::Vertex(0), Some(1.0)).unwrap();
    // the chord around vertex 1 may not reach past the hub
    let err = wheel_replace_fold(&p, Node::Vertex(1), Some(10.0)).unwrap_err();
    assert!(matches!(err, OrthoError::NoSafeDelta(_)), "{err}");
    assert!(wheel_replace_fold(&p, Node::Vertex(1), None).is_ok());
}

#[test]
fn replace_then_contract_is_identity() {
    let g = folding_graph(&quarter_fold()).unwrap();
    let r = wheel_replace_graph(&g, &WheelStep { target: Node::Vertex(0) }).unwrap();
    let back = contract_wheel(&r, Node::Vertex(0)).unwrap();
    assert!(same_labelled(&back, &g));
    let r2 = wheel_replace_graph(&r, &WheelStep { target: Node::Infinity }).unwrap();
    let back2 = contract_wheel(&r2, Node::Infinity).unwrap();
    assert!(same_labelled(&back2, &r));
}

#[test]
fn step_at_infinity() {
    let p = wheel_replace_fold(&quarter_fold(), Node::Infinity, None).unwrap();
    let g = folding_graph(&p).unwrap();
    assert_eq!(g.nodes.len(), 6);
    assert!(degrees(&g).iter().all(|&d| d == 4));
    assert!(build_fold_map(&p, None).is_ok());
    assert!(asymptotic_image_wedge(&p).is_ok());
}

#[test]
fn small_specs_match_replay() {
    let nodes = |g: &FoldingGraph| g.nodes.clone();
    let mut frontier = vec![DualOrthotreeSpec::default()];
    for _ in 0..3 {
        let mut next = vec![];
        for spec in &frontier {
            let r = realize_dual_orthotree(spec).unwrap();
            for n in nodes(&r.graph) {
                let mut s = spec.clone();
                s.steps.push(WheelStep { target: n });
                next.push(s);
            }
        }
        frontier = next;
    }
    for spec in &frontier {
        let r = realize_dual_orthotree(spec).unwrap_or_else(|e| panic!("{spec:?}: {e}"));
        assert!(kawasaki_check(&r.pattern).unwrap().pass());
    }
}

#[test]
fn dali_cross() {
    let r = realize_dual_orthotree(&DualOrthotreeSpec::dali_cross()).unwrap();
    assert_eq!(r.graph.nodes.len(), 34);
    assert_eq!(r.graph.graph.edges.len(), 68);
    assert!(degrees(&r.graph).iter().all(|&d| d == 4));
    assert_eq!(r.deltas.len(), 8);
}
