use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Triangulation, TriangulationError, VertexId};

/// On-disk form of a triangulation:
/// `{ "n_internal": n, "external": [r, g, b], "rotation": { "<id>": [ccw neighbours] } }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationJson {
    pub n_internal: usize,
    pub external: [VertexId; 3],
    pub rotation: BTreeMap<String, Vec<VertexId>>,
}

impl TriangulationJson {
    pub fn build(&self) -> Result<Triangulation, TriangulationError> {
        let nv = self.rotation.len();
        let mut rotation = vec![Vec::new(); nv];
        for (key, nbrs) in &self.rotation {
            let v: VertexId = key.trim().parse().map_err(|_| TriangulationError::UnknownVertex {
                vertex: usize::MAX,
                neighbor: usize::MAX,
            })?;
            if v >= nv {
                return Err(TriangulationError::UnknownVertex { vertex: v, neighbor: v });
            }
            rotation[v] = nbrs.clone();
        }
        if nv >= 3 && nv - 3 != self.n_internal {
            return Err(TriangulationError::CountMismatch { declared: self.n_internal, actual: nv - 3 });
        }
        Triangulation::from_rotation(self.external, rotation)
    }
}

impl Triangulation {
    pub fn to_json(&self) -> TriangulationJson {
        TriangulationJson {
            n_internal: self.n_internal(),
            external: self.external(),
            rotation: (0..self.n_vertices()).map(|v| (v.to_string(), self.rotation(v).to_vec())).collect(),
        }
    }

    /// Graphviz rendering; external vertices are drawn as boxes labelled with
    /// their colour role.
    pub fn to_dot(&self) -> String {
        let [r, g, b] = self.external();
        let mut out = String::from("graph triangulation {\n");
        for v in 0..self.n_vertices() {
            let attrs = if v == r {
                "shape=box, color=red, label=\"s_red\"".to_string()
            } else if v == g {
                "shape=box, color=green, label=\"s_green\"".to_string()
            } else if v == b {
                "shape=box, color=blue, label=\"s_blue\"".to_string()
            } else {
                format!("label=\"{v}\"")
            };
            let _ = writeln!(out, "  {v} [{attrs}];");
        }
        for (u, v) in [(r, g), (g, b), (b, r)] {
            let _ = writeln!(out, "  {u} -- {v} [style=bold];");
        }
        for &(u, v) in self.internal_edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::{hex_patch, single_vertex};
    use super::*;

    #[test]
    fn json_round_trip() {
        let t = hex_patch();
        let text = serde_json::to_string(&t.to_json()).unwrap();
        let back: TriangulationJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.build().unwrap(), t);
    }

    #[test]
    fn json_count_mismatch_is_reported() {
        let mut j = single_vertex().to_json();
        j.n_internal = 2;
        assert!(matches!(j.build(), Err(TriangulationError::CountMismatch { declared: 2, actual: 1 })));
    }

    #[test]
    fn dot_marks_external_vertices() {
        let dot = single_vertex().to_dot();
        assert!(dot.contains("s_red") && dot.contains("s_green") && dot.contains("s_blue"));
        assert_eq!(dot.matches(" -- ").count(), 6);
    }
}
