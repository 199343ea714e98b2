//! Small defining graphs used across the test suites, each with its rays.

use horoforge_core::{DefiningGraph, Letter, RaySpec};

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub graph: DefiningGraph,
    pub rays: Vec<RaySpec>,
}

fn rays(g: &DefiningGraph, pairs: &[(&str, &str)]) -> Vec<RaySpec> {
    pairs
        .iter()
        .map(|(i, j)| RaySpec::new(g, g.letter(i).unwrap(), g.letter(j).unwrap()).unwrap())
        .collect()
}

pub fn cycle(n: usize) -> DefiningGraph {
    DefiningGraph::cycle(n)
}

/// Two poles `x`, `y` joined by three paths of length three.
pub fn theta() -> DefiningGraph {
    let names = ["x", "y", "p", "q", "r", "s", "t", "u"].map(String::from).to_vec();
    let edges: [(Letter, Letter); 9] = [(0, 2), (2, 3), (3, 1), (0, 4), (4, 5), (5, 1), (0, 6), (6, 7), (7, 1)];
    DefiningGraph::new(names, &edges).unwrap()
}

/// The icosahedron: a pole `a`, upper ring `b..f`, lower ring `g..k`, pole `l`.
pub fn icosahedron() -> DefiningGraph {
    let mut edges = Vec::new();
    for t in 0..5u8 {
        let (u, u1) = (1 + t, 1 + (t + 1) % 5);
        let (l, l1) = (6 + t, 6 + (t + 1) % 5);
        edges.extend([(0, u), (u, u1), (l, l1), (l, 11), (u, l), (u, l1)]);
    }
    DefiningGraph::from_edges(12, &edges).unwrap()
}

pub fn c5() -> Fixture {
    let graph = cycle(5);
    Fixture {
        name: "C5",
        rays: rays(&graph, &[("a", "c")]),
        graph,
    }
}

pub fn c6() -> Fixture {
    let graph = cycle(6);
    Fixture {
        name: "C6",
        rays: rays(&graph, &[("a", "c"), ("a", "d")]),
        graph,
    }
}

pub fn c7() -> Fixture {
    let graph = cycle(7);
    Fixture {
        name: "C7",
        rays: rays(&graph, &[("a", "c"), ("a", "d")]),
        graph,
    }
}

pub fn theta_fixture() -> Fixture {
    let graph = theta();
    Fixture {
        name: "theta",
        rays: rays(&graph, &[("x", "y"), ("p", "s")]),
        graph,
    }
}

pub fn icosahedron_fixture() -> Fixture {
    let graph = icosahedron();
    Fixture {
        name: "icosahedron",
        rays: rays(&graph, &[("a", "l"), ("b", "d")]),
        graph,
    }
}

/// The triangle-free fixtures used by the acceptance criteria.
pub fn standard() -> Vec<Fixture> {
    vec![c5(), c6(), c7(), theta_fixture()]
}
