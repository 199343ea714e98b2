use std::collections::HashSet;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use horoforge_cli::export::{from_json, ExportBundle, Params};
use horoforge_cli::{parse_graph_file, CliError};
use horoforge_rips::generate_rips_graph;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_horoforge"))
        .args(args)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn text(o: &Output) -> String {
    format!(
        "{}{}",
        String::from_utf8_lossy(&o.stdout),
        String::from_utf8_lossy(&o.stderr)
    )
}

/// Structural GraphML checks: namespace, keys declared before the graph with
/// legal domains and types, unique node ids, edges between declared nodes and
/// data referring to keys of the right domain.
pub fn check_graphml(doc: &str) -> Result<(usize, usize), String> {
    const NS: &str = "http://graphml.graphdrawing.org/xmlns";
    let xml = roxmltree::Document::parse(doc).map_err(|e| e.to_string())?;
    let root = xml.root_element();
    if root.tag_name().name() != "graphml" || root.tag_name().namespace() != Some(NS) {
        return Err("root is not a graphml element".into());
    }
    let mut keys = std::collections::HashMap::new();
    let mut seen_graph = false;
    let mut counts = (0, 0);
    for child in root.children().filter(|n| n.is_element()) {
        match child.tag_name().name() {
            "key" => {
                if seen_graph {
                    return Err("key after graph".into());
                }
                let id = child.attribute("id").ok_or("key without id")?;
                let dom = child.attribute("for").unwrap_or("all");
                if !["graph", "node", "edge", "all"].contains(&dom) {
                    return Err(format!("bad key domain {dom}"));
                }
                let ty = child.attribute("attr.type").unwrap_or("string");
                if !["boolean", "int", "long", "float", "double", "string"].contains(&ty) {
                    return Err(format!("bad key type {ty}"));
                }
                if keys.insert(id.to_string(), dom.to_string()).is_some() {
                    return Err(format!("duplicate key {id}"));
                }
            }
            "graph" => {
                seen_graph = true;
                if !matches!(child.attribute("edgedefault"), Some("directed" | "undirected")) {
                    return Err("graph lacks edgedefault".into());
                }
                let mut nodes = HashSet::new();
                let mut in_body = false;
                let check_data = |n: roxmltree::Node, dom: &str| -> Result<(), String> {
                    for d in n.children().filter(|c| c.is_element()) {
                        if d.tag_name().name() != "data" {
                            return Err(format!("unexpected {}", d.tag_name().name()));
                        }
                        let k = d.attribute("key").ok_or("data without key")?;
                        match keys.get(k).map(String::as_str) {
                            Some(x) if x == dom || x == "all" => {}
                            _ => return Err(format!("data key {k} not declared for {dom}")),
                        }
                    }
                    Ok(())
                };
                for n in child.children().filter(|c| c.is_element()) {
                    match n.tag_name().name() {
                        "data" if !in_body => {}
                        "data" => return Err("graph data after nodes".into()),
                        "node" => {
                            in_body = true;
                            let id = n.attribute("id").ok_or("node without id")?;
                            if id.is_empty() || id.chars().any(char::is_whitespace) || !nodes.insert(id.to_string()) {
                                return Err(format!("bad or duplicate node id `{id}`"));
                            }
                            check_data(n, "node")?;
                            counts.0 += 1;
                        }
                        "edge" => {
                            in_body = true;
                            for end in ["source", "target"] {
                                let v = n.attribute(end).ok_or("edge end missing")?;
                                if !nodes.contains(v) {
                                    return Err(format!("edge to unknown node {v}"));
                                }
                            }
                            check_data(n, "edge")?;
                            counts.1 += 1;
                        }
                        other => return Err(format!("unexpected {other}")),
                    }
                }
                check_data_graph(child, &keys)?;
            }
            "data" | "desc" => {}
            other => return Err(format!("unexpected {other}")),
        }
    }
    if !seen_graph {
        return Err("no graph element".into());
    }
    Ok(counts)
}

fn check_data_graph(graph: roxmltree::Node, keys: &std::collections::HashMap<String, String>) -> Result<(), String> {
    for d in graph
        .children()
        .filter(|c| c.is_element() && c.tag_name().name() == "data")
    {
        let k = d.attribute("key").ok_or("data without key")?;
        if !matches!(keys.get(k).map(String::as_str), Some("graph" | "all")) {
            return Err(format!("graph data key {k} not declared for graphs"));
        }
    }
    Ok(())
}

#[test]
fn validate_reports_and_exits() {
    let ok = run(&["validate", fixture("c5.graph").to_str().unwrap()]);
    assert_eq!(code(&ok), 0, "{}", text(&ok));
    let bad = run(&["validate", fixture("c4.graph").to_str().unwrap()]);
    assert_eq!(code(&bad), 2);
    assert!(text(&bad).contains("induced square a-b-c-d"), "{}", text(&bad));
    for f in ["c5", "c6", "c7", "theta", "icosahedron"] {
        let g = fixture(&format!("{f}.graph"));
        assert!(parse_graph_file(&g).is_ok(), "{f}");
    }
}

#[test]
fn malformed_input_names_its_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.graph");
    std::fs::write(&p, "vertices a b c d e\nedges a-b b-q\n").unwrap();
    let o = run(&["validate", p.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(text(&o).contains("line 2, column 13"), "{}", text(&o));
    let missing = run(&["validate", dir.path().join("nope.graph").to_str().unwrap()]);
    assert_eq!(code(&missing), 1);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&run(&["rips", "--bogus"])), 1);
    assert_eq!(code(&run(&["frobnicate"])), 1);
    let o = run(&[
        "rips",
        fixture("c5.graph").to_str().unwrap(),
        "--ray",
        "a,b",
        "--busemann",
        "0",
        "--max-suffix",
        "2",
        "--out",
        "/dev/null",
    ]);
    assert_eq!(code(&o), 1, "adjacent ray letters: {}", text(&o));
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn exit_codes_are_distinct() {
    let codes: Vec<i32> = [
        CliError::Usage(String::new()),
        CliError::Validation(String::new()),
        CliError::Internal(String::new()),
        CliError::Mismatch(String::new()),
    ]
    .iter()
    .map(CliError::exit_code)
    .collect();
    assert_eq!(codes, [1, 2, 3, 4]);
}

#[test]
fn rips_export_is_valid_graphml() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c5.graphml");
    let o = run(&[
        "rips",
        fixture("c5.graph").to_str().unwrap(),
        "--ray",
        "a,c",
        "--busemann",
        "0",
        "--max-suffix",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", text(&o));
    let doc = std::fs::read_to_string(&out).unwrap();
    let (n, m) = check_graphml(&doc).unwrap();
    let g = horoforge_core::DefiningGraph::cycle(5);
    let h = generate_rips_graph(&g, horoforge_core::RaySpec::new(&g, 0, 2).unwrap(), 0, 2).unwrap();
    assert_eq!((n, m), (h.num_vertices(), h.num_edges()));
}

#[test]
fn empty_graph_is_a_valid_document() {
    let dir = tempfile::tempdir().unwrap();
    for (fmt, name) in [("graphml", "e.graphml"), ("json", "e.json"), ("dot", "e.dot")] {
        let out = dir.path().join(name);
        let o = run(&[
            "rips",
            fixture("c5.graph").to_str().unwrap(),
            "--ray",
            "a,c",
            "--busemann",
            "0",
            "--max-suffix",
            "2",
            "--vertex-cap",
            "0",
            "--format",
            fmt,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0, "{}", text(&o));
        let doc = std::fs::read_to_string(&out).unwrap();
        match fmt {
            "graphml" => assert_eq!(check_graphml(&doc).unwrap(), (0, 0)),
            "json" => assert!(from_json(&doc).unwrap().to_graph().unwrap().1.vertices.is_empty()),
            _ => assert!(doc.starts_with("graph horosphere {") && doc.ends_with("}\n")),
        }
    }
}

#[test]
fn divergence_json_round_trips_and_feeds_stats() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c6.json");
    let o = run(&[
        "divergence",
        fixture("c6.graph").to_str().unwrap(),
        "--ray",
        "a,d",
        "--busemann",
        "1",
        "--max-suffix",
        "3",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", text(&o));
    let doc = std::fs::read_to_string(&out).unwrap();
    let bundle = from_json(&doc).unwrap();
    let (g, h) = bundle.to_graph().unwrap();
    assert!(h.slots.is_some());
    assert_eq!(ExportBundle::new(&g, &h, Params::default()), bundle);
    let csv = dir.path().join("tables");
    let s = run(&[
        "stats",
        out.to_str().unwrap(),
        "--growth",
        "--distortion",
        "--connectivity",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code(&s), 0, "{}", text(&s));
    assert!(text(&s).contains("violations 0"));
    for f in ["growth.csv", "distortion.csv", "bfs.csv"] {
        let body = std::fs::read_to_string(csv.join(f)).unwrap();
        assert!(body.lines().count() > 1, "{f}");
    }
}

#[test]
fn exports_do_not_depend_on_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    for kind in ["rips", "divergence"] {
        let mut docs = Vec::new();
        for threads in ["1", "3"] {
            let out = dir.path().join(format!("{kind}{threads}.graphml"));
            let o = run(&[
                kind,
                fixture("c7.graph").to_str().unwrap(),
                "--ray",
                "a,d",
                "--busemann",
                "-1",
                "--max-suffix",
                "4",
                "--threads",
                threads,
                "--out",
                out.to_str().unwrap(),
            ]);
            assert_eq!(code(&o), 0, "{}", text(&o));
            docs.push(std::fs::read(&out).unwrap());
        }
        assert_eq!(docs[0], docs[1], "{kind}");
    }
}

#[test]
fn fsm_dump_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("lex.txt");
    let o = run(&[
        "fsm",
        fixture("c7.graph").to_str().unwrap(),
        "--machine",
        "shortlex",
        "--dump",
        dump.to_str().unwrap(),
        "--stats",
        "--ray",
        "a,d",
    ]);
    assert_eq!(code(&o), 0, "{}", text(&o));
    assert!(text(&o).contains("prelarge 1 small 0"), "{}", text(&o));
    assert!(std::fs::read_to_string(&dump).unwrap().starts_with("states "));
    assert_eq!(
        code(&run(&[
            "fsm",
            fixture("c7.graph").to_str().unwrap(),
            "--machine",
            "geosuffix"
        ])),
        1
    );
}

#[test]
fn oracle_check_passes_on_all_fixtures() {
    // The successor oracle grows steeply with the bound 2*Clique-2 = 4 on
    // the icosahedron, so it runs shallower there.
    let cases = [
        ("c5.graph", "a,c", "3", "8"),
        ("c6.graph", "a,d", "3", "8"),
        ("c7.graph", "a,c", "3", "8"),
        ("theta.graph", "x,y", "3", "8"),
        ("icosahedron.graph", "a,l", "1", "3"),
    ];
    for (file, ray, len, depth) in cases {
        for kind in ["rips", "divergence"] {
            let path = fixture(file);
            let o = run(&[
                "oracle-check",
                path.to_str().unwrap(),
                "--ray",
                ray,
                "--busemann",
                "-1",
                "--max-suffix",
                len,
                "--kind",
                kind,
                "--depth",
                depth,
            ]);
            assert_eq!(code(&o), 0, "{file} {kind}: {}", text(&o));
            assert!(text(&o).contains("0 mismatches"), "{file} {kind}: {}", text(&o));
        }
    }
}
