//! A folded sheet reduced to what layer ordering needs: convex faces with
//! their isometries and the creases joining them. Both infinite-sheet fold
//! maps and outer foldings of bounded sheets produce one.

use serde::Serialize;

use crate::geom::{ConvexPolygon, Isometry2, Point2};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SheetFace {
    /// Face region in sheet coordinates (unbounded faces clipped).
    pub region: ConvexPolygon,
    pub iso: Isometry2,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SheetCrease {
    /// The two faces joined by the crease.
    pub faces: (usize, usize),
    /// The crease in sheet coordinates (rays clipped like the faces).
    pub a: Point2,
    pub b: Point2,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct FoldedSheet {
    pub faces: Vec<SheetFace>,
    pub creases: Vec<SheetCrease>,
}

impl FoldedSheet {
    pub fn image(&self, f: usize) -> ConvexPolygon {
        self.faces[f].region.transformed(&self.faces[f].iso)
    }

    /// Image of crease `c`, mapped through its first face.
    pub fn crease_image(&self, c: usize) -> (Point2, Point2) {
        let cr = &self.creases[c];
        let iso = &self.faces[cr.faces.0].iso;
        (iso.apply(cr.a), iso.apply(cr.b))
    }

    /// Faces whose isometry reverses orientation (paper face-down).
    pub fn reversed(&self, f: usize) -> bool {
        self.faces[f].iso.orientation.is_reversing()
    }

    /// The crease joining two faces, if any.
    pub fn crease_between(&self, f: usize, g: usize) -> Option<usize> {
        self.creases
            .iter()
            .position(|c| c.faces == (f, g) || c.faces == (g, f))
    }
}
