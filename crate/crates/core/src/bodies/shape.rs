//! JSON shape files.
//!
//! ```json
//! {"type": "ball", "center": [0, 0], "radius": 1, "closed": true}
//! {"type": "hpolytope", "facets": [{"normal": [1, 0], "offset": 1}], "bounded": true}
//! {"type": "vpolytope", "generators": [[0, 0], [1, 0], [0, 1]]}
//! {"type": "sandwich", "inner": {...}, "outer": {...}, "outer_dense": true}
//! ```
//!
//! `closed`, `bounded` and `outer_dense` default to `true`. The dimension is
//! inferred from the coordinate arrays, which must all agree.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Ball, ConvexBody, HPolytope, SandwichSet, VPolytope};
use crate::error::{Error, Result};
use crate::linalg::{Hyperplane, Vector};

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub(crate) enum ShapeDoc {
    Ball {
        center: Vec<f64>,
        radius: f64,
        #[serde(default = "yes")]
        closed: bool,
    },
    Hpolytope {
        facets: Vec<FacetDoc>,
        #[serde(default = "yes")]
        bounded: bool,
    },
    Vpolytope {
        generators: Vec<Vec<f64>>,
    },
    Sandwich {
        inner: Box<ShapeDoc>,
        outer: Box<ShapeDoc>,
        #[serde(default = "yes")]
        outer_dense: bool,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct FacetDoc {
    normal: Vec<f64>,
    offset: f64,
}

fn point(coords: Vec<f64>, dim: &mut Option<usize>) -> Result<Vector> {
    let v = Vector::new(coords).map_err(|e| Error::Shape(e.to_string()))?;
    match *dim {
        Some(d) if d != v.dim() => {
            Err(Error::Shape(format!("inconsistent dimension: expected {d}, found {}", v.dim())))
        }
        _ => {
            *dim = Some(v.dim());
            Ok(v)
        }
    }
}

impl TryFrom<ShapeDoc> for ConvexBody {
    type Error = Error;

    fn try_from(doc: ShapeDoc) -> Result<Self> {
        let mut dim = None;
        Ok(match doc {
            ShapeDoc::Ball { center, radius, closed } => {
                ConvexBody::Ball(Ball::new(point(center, &mut dim)?, radius, closed)?)
            }
            ShapeDoc::Hpolytope { facets, bounded } => {
                if facets.is_empty() {
                    return Err(Error::Shape("hpolytope needs at least one facet".into()));
                }
                let hs = facets
                    .into_iter()
                    .map(|f| Hyperplane::new(point(f.normal, &mut dim)?, f.offset))
                    .collect::<Result<Vec<_>>>()?;
                ConvexBody::HPolytope(HPolytope::new(hs, bounded)?)
            }
            ShapeDoc::Vpolytope { generators } => {
                if generators.is_empty() {
                    return Err(Error::Shape("vpolytope needs at least one generator".into()));
                }
                let gs = generators
                    .into_iter()
                    .map(|g| point(g, &mut dim))
                    .collect::<Result<Vec<_>>>()?;
                ConvexBody::VPolytope(VPolytope::new(gs)?)
            }
            ShapeDoc::Sandwich { inner, outer, outer_dense } => {
                let inner = ConvexBody::try_from(*inner)?;
                let outer = ConvexBody::try_from(*outer)?;
                ConvexBody::Sandwich(Box::new(SandwichSet::new(inner, outer, outer_dense)?))
            }
        })
    }
}

impl From<ConvexBody> for ShapeDoc {
    fn from(body: ConvexBody) -> Self {
        match body {
            ConvexBody::Ball(b) => ShapeDoc::Ball {
                center: b.center().coords().to_vec(),
                radius: b.radius(),
                closed: b.is_closed(),
            },
            ConvexBody::HPolytope(h) => ShapeDoc::Hpolytope {
                facets: h
                    .facets()
                    .iter()
                    .map(|f| FacetDoc { normal: f.normal().coords().to_vec(), offset: f.offset() })
                    .collect(),
                bounded: h.is_bounded(),
            },
            ConvexBody::VPolytope(v) => ShapeDoc::Vpolytope {
                generators: v.generators().iter().map(|g| g.coords().to_vec()).collect(),
            },
            ConvexBody::Sandwich(s) => ShapeDoc::Sandwich {
                inner: Box::new(s.inner().clone().into()),
                outer: Box::new(s.outer().clone().into()),
                outer_dense: s.outer_dense(),
            },
        }
    }
}

impl ConvexBody {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Shape(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("shape serialization cannot fail")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Shape(format!("{}: {e}", path.display())))?;
        ConvexBody::from_json(&text)
    }
}
