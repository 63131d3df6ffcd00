//! Tree and graph file formats.
//!
//! Tree JSON: `{"n":3,"root":0,"edges":[[0,1],[1,2]]}` with 0-based vertices.
//! Tree text: `n: d_1 d_2 ... d_n`, the preorder depths with the root at depth 0.
//! Graph JSON is tree JSON with `root` optional and an optional `weights` array.

use serde::{Deserialize, Serialize};

use super::{Graph, GraphError, RootedGraph, RootedTree, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub n: usize,
    pub root: usize,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<usize>,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u32>>,
}

fn json_error(e: serde_json::Error) -> GraphError {
    GraphError::Parse {
        position: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    }
}

impl From<&RootedTree> for TreeJson {
    fn from(t: &RootedTree) -> Self {
        Self {
            n: t.vertex_count(),
            root: t.root(),
            edges: t.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<TreeJson> for RootedTree {
    type Error = GraphError;

    fn try_from(j: TreeJson) -> Result<Self, GraphError> {
        let edges: Vec<_> = j.edges.iter().map(|&[u, v]| (u, v)).collect();
        RootedTree::from_edges(j.n, j.root, &edges)
    }
}

impl RootedTree {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&TreeJson::from(self)).expect("tree serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, GraphError> {
        let j: TreeJson = serde_json::from_str(s).map_err(json_error)?;
        Self::try_from(j)
    }

    /// `n: d_1 ... d_n` with the canonical depth sequence.
    pub fn to_level_text(&self) -> String {
        let seq = self.level_sequence();
        let depths: Vec<String> = seq.iter().map(usize::to_string).collect();
        format!("{}: {}", seq.len(), depths.join(" "))
    }

    pub fn from_level_text(s: &str) -> Result<Self, GraphError> {
        let s = s.trim();
        let bad = |position: usize, message: &str| GraphError::Parse {
            position: format!("byte {position}"),
            message: message.into(),
        };
        let colon = s.find(':').ok_or_else(|| bad(0, "expected 'n:' prefix"))?;
        let n: usize = s[..colon]
            .trim()
            .parse()
            .map_err(|_| bad(0, "invalid vertex count"))?;
        let mut depths = Vec::with_capacity(n);
        let bytes = s.as_bytes();
        let mut i = colon + 1;
        while i < bytes.len() {
            if bytes[i].is_ascii_whitespace() {
                i += 1;
                continue;
            }
            let start = i;
            while i < bytes.len() && !bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            depths.push(s[start..i].parse().map_err(|_| bad(start, "invalid depth"))?);
        }
        if depths.len() != n {
            return Err(bad(s.len(), &format!("expected {n} depths, found {}", depths.len())));
        }
        Self::from_level_sequence(&depths)
    }

    /// Accepts tree JSON or level-sequence text.
    pub fn parse(s: &str) -> Result<Self, GraphError> {
        if s.trim_start().starts_with('{') {
            Self::from_json(s)
        } else {
            Self::from_level_text(s)
        }
    }
}

impl From<&WeightedGraph> for GraphJson {
    fn from(g: &WeightedGraph) -> Self {
        Self {
            n: g.graph().vertex_count(),
            root: None,
            edges: g.graph().edges().iter().map(|&(u, v)| [u, v]).collect(),
            weights: Some(g.weights().to_vec()),
        }
    }
}

impl GraphJson {
    pub fn parse(s: &str) -> Result<Self, GraphError> {
        if s.trim_start().starts_with('{') {
            serde_json::from_str(s).map_err(json_error)
        } else {
            let t = RootedTree::from_level_text(s)?;
            Ok(Self {
                n: t.vertex_count(),
                root: Some(t.root()),
                edges: t.edges().into_iter().map(|(u, v)| [u, v]).collect(),
                weights: None,
            })
        }
    }

    pub fn graph(&self) -> Result<Graph, GraphError> {
        Graph::new(self.n, self.edges.iter().map(|&[u, v]| (u, v)).collect())
    }

    pub fn weighted(&self) -> Result<WeightedGraph, GraphError> {
        let g = self.graph()?;
        match &self.weights {
            Some(w) => WeightedGraph::new(g, w.clone()),
            None => Ok(WeightedGraph::unit(g)),
        }
    }

    pub fn rooted(&self) -> Result<RootedGraph, GraphError> {
        RootedGraph::new(self.graph()?, self.root.unwrap_or(0))
    }

    pub fn tree(&self) -> Result<RootedTree, GraphError> {
        self.rooted()?.to_tree()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::CodeMode;

    #[test]
    fn single_vertex_json() {
        assert_eq!(RootedTree::single().to_json(), r#"{"n":1,"root":0,"edges":[]}"#);
    }

    #[test]
    fn leaf_rooted_path_json() {
        let b0 = RootedTree::single().concat(&RootedTree::single().concat(&RootedTree::single()));
        assert_eq!(b0.to_json(), r#"{"n":3,"root":0,"edges":[[0,1],[1,2]]}"#);
        assert_eq!(RootedTree::from_json(&b0.to_json()).unwrap(), b0);
    }

    #[test]
    fn level_text_round_trip() {
        let t = RootedTree::from_edges(4, 2, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let text = t.to_level_text();
        assert_eq!(text, "4: 0 1 2 1");
        let back = RootedTree::parse(&text).unwrap();
        assert_eq!(back.canonical_form(CodeMode::Rooted), t.canonical_form(CodeMode::Rooted));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = RootedTree::from_level_text("3: 0 1 x").unwrap_err();
        assert_eq!(
            e,
            GraphError::Parse { position: "byte 7".into(), message: "invalid depth".into() }
        );
        assert!(matches!(RootedTree::from_level_text("3: 0 1"), Err(GraphError::Parse { .. })));
        assert!(matches!(RootedTree::parse("{\"n\":2,"), Err(GraphError::Parse { .. })));
        assert!(matches!(
            RootedTree::from_json(r#"{"n":3,"root":0,"edges":[[0,1],[0,1]]}"#),
            Err(GraphError::NotATree(_))
        ));
    }

    #[test]
    fn graph_json_accepts_loops_and_weights() {
        let j = GraphJson::parse(r#"{"n":2,"edges":[[0,0],[0,1],[0,1]],"weights":[2,3]}"#).unwrap();
        let g = j.weighted().unwrap();
        assert_eq!(g.weights(), &[2, 3]);
        assert_eq!(g.graph().edge_count(), 3);
        assert!(j.tree().is_err());
        assert_eq!(GraphJson::parse("2: 0 1").unwrap().tree().unwrap().vertex_count(), 2);
    }
}
