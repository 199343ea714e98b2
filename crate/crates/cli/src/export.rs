//! GraphML, DOT and JSON renderings of a horosphere graph.
//!
//! Every format lists vertices in (length, word) order and edges in index
//! order, so identical graphs give identical bytes.

use std::fmt::Write as _;

use horoforge_core::{DefiningGraph, RaySpec};
use horoforge_machines::HorocyclicForm;
use horoforge_rips::{GraphKind, HorosphereGraph, VertexSlots};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::input::{graph_to_text, parse_graph};

pub const TOOL: &str = "horoforge";
pub const JSON_FORMAT: &str = "horoforge-horosphere-graph/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Graphml,
    Dot,
    Json,
}

/// Generation settings recorded next to the graph.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub allow_small_states: bool,
    pub vertex_cap: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub kind: GraphKind,
    /// The defining graph in input-file syntax.
    pub defining_graph: String,
    /// SHA-256 of `defining_graph`.
    pub graph_hash: String,
    pub ray: [String; 2],
    pub busemann: i64,
    pub max_suffix_len: usize,
    pub params: Params,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: u32,
    pub suffix: String,
    pub length: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slots: Option<[String; 4]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportBundle {
    pub format: String,
    pub metadata: Metadata,
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<[u32; 2]>,
}

#[derive(Debug, thiserror::Error)]
pub enum ImportError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format tag `{0}`")]
    Format(String),
    #[error("defining graph: {0}")]
    Graph(String),
    #[error("graph hash does not match the embedded defining graph")]
    Hash,
    #[error("vertex {0}: {1}")]
    Vertex(u32, String),
    #[error("edge {0:?} is out of range or unsorted")]
    Edge([u32; 2]),
}

pub fn graph_hash(g: &DefiningGraph) -> String {
    hex::encode(Sha256::digest(graph_to_text(g).as_bytes()))
}

fn form_from_tag(tag: &str) -> Option<HorocyclicForm> {
    [HorocyclicForm::F1234, HorocyclicForm::F1256]
        .into_iter()
        .find(|f| f.tag() == tag)
}

impl ExportBundle {
    pub fn new(g: &DefiningGraph, h: &HorosphereGraph, params: Params) -> Self {
        let metadata = Metadata {
            tool: TOOL.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            kind: h.kind,
            defining_graph: graph_to_text(g),
            graph_hash: graph_hash(g),
            ray: [g.name(h.ray.i).into(), g.name(h.ray.j).into()],
            busemann: h.k,
            max_suffix_len: h.max_suffix_len,
            params,
        };
        let vertices = h
            .vertices
            .iter()
            .enumerate()
            .map(|(i, w)| {
                let slots = h.slots.as_ref().map(|s| s[i]);
                VertexRecord {
                    id: i as u32,
                    suffix: g.format_word(w),
                    length: w.len(),
                    form: slots.map(|s| s.form.tag().to_string()),
                    slots: slots.map(|s| [0, 1, 2, 3].map(|t| g.format_word(s.slot(w, t)))),
                }
            })
            .collect();
        ExportBundle {
            format: JSON_FORMAT.into(),
            metadata,
            vertices,
            edges: h.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    /// Rebuilds the defining graph and the horosphere graph.
    pub fn to_graph(&self) -> Result<(DefiningGraph, HorosphereGraph), ImportError> {
        if self.format != JSON_FORMAT {
            return Err(ImportError::Format(self.format.clone()));
        }
        let m = &self.metadata;
        let g = parse_graph(&m.defining_graph).map_err(|e| ImportError::Graph(e.to_string()))?;
        if graph_hash(&g) != m.graph_hash {
            return Err(ImportError::Hash);
        }
        let letter = |name: &str| {
            g.letter(name)
                .ok_or_else(|| ImportError::Graph(format!("unknown ray letter `{name}`")))
        };
        let ray =
            RaySpec::new(&g, letter(&m.ray[0])?, letter(&m.ray[1])?).map_err(|e| ImportError::Graph(e.to_string()))?;
        let mut vertices = Vec::with_capacity(self.vertices.len());
        let mut slots = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            let bad = |msg: String| ImportError::Vertex(v.id, msg);
            if v.id as usize != i {
                return Err(bad("ids must be consecutive".into()));
            }
            let w = g.parse_word(&v.suffix).map_err(|e| bad(e.to_string()))?;
            if w.len() != v.length {
                return Err(bad("length disagrees with suffix".into()));
            }
            if let (Some(tag), Some(parts)) = (&v.form, &v.slots) {
                let form = form_from_tag(tag).ok_or_else(|| bad(format!("unknown form `{tag}`")))?;
                let mut cuts = [0usize; 3];
                let mut acc = 0;
                let mut joined = Vec::new();
                for (t, p) in parts.iter().enumerate() {
                    let part = g.parse_word(p).map_err(|e| bad(e.to_string()))?;
                    acc += part.len();
                    joined.extend(part);
                    if t < 3 {
                        cuts[t] = acc;
                    }
                }
                if joined != w {
                    return Err(bad("slots do not spell the suffix".into()));
                }
                slots.push(VertexSlots { form, cuts });
            }
            vertices.push(w);
        }
        if !slots.is_empty() && slots.len() != vertices.len() {
            return Err(ImportError::Vertex(0, "slots given for some vertices only".into()));
        }
        let n = vertices.len() as u32;
        let mut edges = Vec::with_capacity(self.edges.len());
        for &[u, v] in &self.edges {
            if u >= v || v >= n || edges.last().is_some_and(|&last| last >= (u, v)) {
                return Err(ImportError::Edge([u, v]));
            }
            edges.push((u, v));
        }
        let h = HorosphereGraph {
            kind: m.kind,
            ray,
            k: m.busemann,
            max_suffix_len: m.max_suffix_len,
            vertices,
            edges,
            slots: (!slots.is_empty()).then_some(slots),
        };
        Ok((g, h))
    }
}

pub fn to_json(bundle: &ExportBundle) -> String {
    let mut s = serde_json::to_string_pretty(bundle).expect("bundle serializes");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<ExportBundle, ImportError> {
    Ok(serde_json::from_str(text)?)
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

/// Node identifier: the suffix, with `ε` for the empty one.
fn node_id(v: &VertexRecord) -> String {
    if v.suffix.is_empty() {
        "ε".into()
    } else {
        v.suffix.clone()
    }
}

fn graph_data(m: &Metadata) -> Vec<(&'static str, String)> {
    vec![
        ("tool", m.tool.clone()),
        ("version", m.version.clone()),
        ("kind", m.kind.as_str().into()),
        ("defining_graph", m.defining_graph.clone()),
        ("graph_hash", m.graph_hash.clone()),
        ("ray", m.ray.join(",")),
        ("busemann", m.busemann.to_string()),
        ("max_suffix_len", m.max_suffix_len.to_string()),
        ("allow_small_states", m.params.allow_small_states.to_string()),
        (
            "vertex_cap",
            m.params.vertex_cap.map_or(String::new(), |c| c.to_string()),
        ),
    ]
}

pub fn to_graphml(bundle: &ExportBundle) -> String {
    let m = &bundle.metadata;
    let slotted = bundle.vertices.iter().any(|v| v.slots.is_some());
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    s.push_str(
        "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\" \
         xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" \
         xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns \
         http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n",
    );
    let data = graph_data(m);
    for (name, _) in &data {
        let _ = writeln!(
            s,
            "  <key id=\"g_{name}\" for=\"graph\" attr.name=\"{name}\" attr.type=\"string\"/>"
        );
    }
    s.push_str("  <key id=\"suffix\" for=\"node\" attr.name=\"suffix\" attr.type=\"string\"/>\n");
    s.push_str("  <key id=\"length\" for=\"node\" attr.name=\"length\" attr.type=\"int\"/>\n");
    if slotted {
        s.push_str("  <key id=\"form\" for=\"node\" attr.name=\"form\" attr.type=\"string\"/>\n");
        for t in 1..=4 {
            let _ = writeln!(
                s,
                "  <key id=\"slot{t}\" for=\"node\" attr.name=\"slot{t}\" attr.type=\"string\"/>"
            );
        }
    }
    s.push_str("  <graph id=\"horosphere\" edgedefault=\"undirected\">\n");
    for (name, value) in &data {
        let _ = writeln!(s, "    <data key=\"g_{name}\">{}</data>", xml_escape(value));
    }
    for v in &bundle.vertices {
        let _ = writeln!(s, "    <node id=\"{}\">", xml_escape(&node_id(v)));
        let _ = writeln!(s, "      <data key=\"suffix\">{}</data>", xml_escape(&v.suffix));
        let _ = writeln!(s, "      <data key=\"length\">{}</data>", v.length);
        if let (Some(form), Some(slots)) = (&v.form, &v.slots) {
            let _ = writeln!(s, "      <data key=\"form\">{form}</data>");
            for (t, part) in slots.iter().enumerate() {
                let _ = writeln!(s, "      <data key=\"slot{}\">{}</data>", t + 1, xml_escape(part));
            }
        }
        s.push_str("    </node>\n");
    }
    for &[u, v] in &bundle.edges {
        let (a, b) = (&bundle.vertices[u as usize], &bundle.vertices[v as usize]);
        let _ = writeln!(
            s,
            "    <edge source=\"{}\" target=\"{}\"/>",
            xml_escape(&node_id(a)),
            xml_escape(&node_id(b))
        );
    }
    s.push_str("  </graph>\n</graphml>\n");
    s
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn to_dot(bundle: &ExportBundle) -> String {
    let mut s = String::from("graph horosphere {\n");
    for (name, value) in graph_data(&bundle.metadata) {
        if name != "defining_graph" {
            let _ = writeln!(s, "  // {name}: {value}");
        }
    }
    for v in &bundle.vertices {
        let mut attrs = vec![format!("length={}", v.length)];
        if let (Some(form), Some(slots)) = (&v.form, &v.slots) {
            attrs.push(format!("form={}", dot_quote(form)));
            attrs.push(format!("slots={}", dot_quote(&slots.join("|"))));
        }
        let _ = writeln!(s, "  {} [{}];", dot_quote(&node_id(v)), attrs.join(", "));
    }
    for &[u, v] in &bundle.edges {
        let (a, b) = (&bundle.vertices[u as usize], &bundle.vertices[v as usize]);
        let _ = writeln!(s, "  {} -- {};", dot_quote(&node_id(a)), dot_quote(&node_id(b)));
    }
    s.push_str("}\n");
    s
}

pub fn render(bundle: &ExportBundle, format: Format) -> String {
    match format {
        Format::Graphml => to_graphml(bundle),
        Format::Dot => to_dot(bundle),
        Format::Json => to_json(bundle),
    }
}
