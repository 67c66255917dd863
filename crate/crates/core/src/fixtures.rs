//! Reconstructed example patterns with their expected verdicts.
//!
//! The counterexample geometries are rebuilt from verbal descriptions, so
//! the manifests record what this crate checks them against rather than
//! ground truth coordinates.

use serde::Serialize;
use thiserror::Error;

use crate::conn::{tightness_witnesses, ConnError};
use crate::geom::{Point2, TurnAngle};
use crate::orthotree::{realize_dual_orthotree, DualOrthotreeSpec, OrthoError};
use crate::outer::{OuterPattern, Region};
use crate::pattern::CreasePattern;

pub const FIXTURE_NAMES: [&str; 5] = [
    "no-safe-crease",
    "tree-counterexample",
    "unfoldable-triangle",
    "tightness-path",
    "dali-cross",
];

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("unknown fixture {0:?}; known: {known}", known = FIXTURE_NAMES.join(", "))]
    Unknown(String),
    #[error(transparent)]
    Conn(#[from] ConnError),
    #[error(transparent)]
    Ortho(#[from] OrthoError),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "pattern", rename_all = "snake_case")]
pub enum FixtureDoc {
    Pattern(CreasePattern),
    Outer(OuterPattern),
}

/// What a fixture is expected to show.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Manifest {
    pub name: String,
    pub description: String,
    pub local_valid: bool,
    /// Expected `search_layering` verdict when the fixture is small enough.
    pub layering_found: Option<bool>,
    /// Expected plan verdict for outer fixtures.
    pub plan_succeeds: Option<bool>,
    /// Number of creases `is_safe_crease` accepts.
    pub safe_creases: Option<usize>,
    pub vertex_connectivity: Option<usize>,
    pub edge_connectivity: Option<usize>,
}

impl Manifest {
    fn new(name: &str, description: &str) -> Self {
        Manifest {
            name: name.into(),
            description: description.into(),
            local_valid: true,
            layering_found: None,
            plan_succeeds: None,
            safe_creases: None,
            vertex_connectivity: None,
            edge_connectivity: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Fixture {
    pub manifest: Manifest,
    pub doc: FixtureDoc,
}

pub fn fixture(name: &str) -> Result<Fixture, FixtureError> {
    Ok(match name {
        "no-safe-crease" => Fixture {
            manifest: Manifest {
                plan_succeeds: Some(true),
                layering_found: Some(true),
                safe_creases: Some(0),
                ..Manifest::new(name, "square with three creases, none safe, still foldable")
            },
            doc: FixtureDoc::Outer(no_safe_crease()),
        },
        "tree-counterexample" => Fixture {
            manifest: Manifest {
                layering_found: Some(false),
                ..Manifest::new(name, "locally flat-foldable tree pattern with no layer order")
            },
            doc: FixtureDoc::Pattern(tree_counterexample()),
        },
        "unfoldable-triangle" => Fixture {
            manifest: Manifest {
                layering_found: Some(false),
                ..Manifest::new(name, "outer folding of an equilateral triangle with no layer order")
            },
            doc: FixtureDoc::Outer(unfoldable_triangle()),
        },
        "tightness-path" => {
            let (path, _) = tightness_witnesses()?;
            Fixture {
                manifest: Manifest {
                    layering_found: Some(true),
                    vertex_connectivity: Some(2),
                    edge_connectivity: Some(4),
                    ..Manifest::new(name, "path of three degree-4 nodes; connectivity bounds are met")
                },
                doc: FixtureDoc::Pattern(path.realization.pattern),
            }
        }
        "dali-cross" => Fixture {
            manifest: Manifest::new(name, "dual orthotree from eight wheel replacements"),
            doc: FixtureDoc::Pattern(realize_dual_orthotree(&DualOrthotreeSpec::dali_cross())?.pattern),
        },
        _ => return Err(FixtureError::Unknown(name.into())),
    })
}

/// Two tall top corners that each reflect across the other, and a flat
/// bottom-left corner whose flap reaches the top-left crease.
pub fn no_safe_crease() -> OuterPattern {
    let mut p = OuterPattern::new(Region::unit_square());
    for ((ax, ay), (bx, by)) in [
        ((0.0, 0.05), (0.45, 1.0)),
        ((0.55, 1.0), (1.0, 0.05)),
        ((0.0, 0.04), (0.4, 0.0)),
    ] {
        let a = p.add_point(Point2::new(ax, ay));
        let b = p.add_point(Point2::new(bx, by));
        p.add_chord(a, b);
    }
    p
}

/// A degree-4 centre with four arms along the diagonals; each arm ends in
/// a degree-4 vertex whose three rays make the arms collide when folded.
pub fn tree_counterexample() -> CreasePattern {
    let mut p = CreasePattern::new();
    let c = p.add_vertex(Point2::ORIGIN);
    for k in 0..4 {
        let dir = TurnAngle::turns(2 * k + 1, 8);
        let w = p.add_vertex(Point2::unit(dir));
        p.add_segment_dir(c, w, dir);
        let back = dir + TurnAngle::turns(1, 2);
        for off in [9, 11, 14] {
            p.add_ray(w, back + TurnAngle::turns(off, 24));
        }
    }
    p
}

/// Equilateral triangle with a slightly twisted central triangle. Each
/// corner flap has a crease cutting off its tip whose shoulder sits near a
/// central vertex.
pub fn unfoldable_triangle() -> OuterPattern {
    const TWIST: f64 = 0.45;
    const TIP_LONG: f64 = 0.75;
    const TIP_SHORT: f64 = 0.9;
    let region = Region::regular_polygon(3);
    let Region::Polygon { corners } = region.clone() else {
        unreachable!("regular polygons are polygons")
    };
    let mut p = OuterPattern::new(region);
    let mids: Vec<Point2> = (0..3).map(|k| corners[k].lerp(corners[(k + 1) % 3], TWIST)).collect();
    let ids: Vec<usize> = mids.iter().map(|&m| p.add_point(m)).collect();
    for k in 0..3 {
        p.add_chord(ids[k], ids[(k + 1) % 3]);
    }
    for k in 0..3 {
        let tip = corners[(k + 1) % 3];
        let a = p.add_point(mids[k].lerp(tip, TIP_LONG));
        let b = p.add_point(tip.lerp(mids[(k + 1) % 3], TIP_SHORT));
        p.add_chord(a, b);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foldcheck::build_fold_map;
    use crate::layers::{search_layering, SearchOutcome};
    use crate::outer::{is_safe_crease, outer_sheet, square_fold_plan};

    fn found(s: &crate::sheet::FoldedSheet) -> bool {
        matches!(search_layering(s, 14).unwrap(), SearchOutcome::Found(_))
    }

    #[test]
    fn no_safe_crease_still_folds() {
        let p = no_safe_crease();
        assert!(p.validate().is_valid());
        assert!((0..3).all(|c| !is_safe_crease(&p, c).unwrap().safe));
        square_fold_plan(&p).unwrap();
        assert!(found(&outer_sheet(&p).unwrap().sheet));
    }

    #[test]
    fn tree_counterexample_has_no_layering() {
        let p = tree_counterexample();
        assert!(p.validate().is_valid());
        let m = build_fold_map(&p, None).unwrap();
        assert!(!found(&m.to_sheet()));
    }

    #[test]
    fn triangle_has_no_layering() {
        let p = unfoldable_triangle();
        assert!(p.validate().is_valid());
        assert!(!found(&outer_sheet(&p).unwrap().sheet));
    }

    #[test]
    fn names_resolve() {
        for name in FIXTURE_NAMES {
            assert_eq!(fixture(name).unwrap().manifest.name, name);
        }
        assert!(fixture("nope").is_err());
    }
}
