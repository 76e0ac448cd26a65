//! Seeded synthetic graphs for tests, examples and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{build_graph, EdgeList, Graph, VertexId};

/// Directed G(n, m) graph with `m = round(n * avg_out_degree)` edge draws.
/// Self-loops and duplicate draws are dropped, so the realised degree can
/// fall slightly short.
pub fn random_graph(n: usize, avg_out_degree: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = (n as f64 * avg_out_degree).round() as usize;
    let edges = if n < 2 {
        Vec::new()
    } else {
        (0..m)
            .map(|_| (rng.gen_range(0..n as u32), rng.gen_range(0..n as u32)))
            .collect()
    };
    build_graph(&EdgeList::new(edges).with_vertex_count(n))
}

/// Layered DAG with `width` vertices per layer and `layers` inner layers,
/// fully linked between consecutive layers. Vertex 0 feeds the first layer
/// and the last layer feeds the final vertex, so every source-to-sink path
/// has `layers + 1` hops.
pub fn layered_dag(width: usize, layers: usize) -> (Graph, VertexId, VertexId) {
    let layer_vertex = |layer: usize, i: usize| (1 + layer * width + i) as u32;
    let sink = (1 + layers * width) as u32;
    let mut edges = Vec::new();
    for i in 0..width {
        edges.push((0, layer_vertex(0, i)));
        edges.push((layer_vertex(layers - 1, i), sink));
    }
    for layer in 0..layers - 1 {
        for a in 0..width {
            for b in 0..width {
                edges.push((layer_vertex(layer, a), layer_vertex(layer + 1, b)));
            }
        }
    }
    (
        build_graph(&EdgeList::new(edges)),
        VertexId(0),
        VertexId(sink),
    )
}

/// A hub of out-degree `degree` between a source and a target. Hub
/// successors reach the target directly (even ones) or through a shared
/// relay (odd ones), and a few carry back-edges into the hub's fan so that
/// visited checks fire.
///
/// Returns the graph, source, target and hub.
pub fn super_node_graph(degree: usize) -> (Graph, VertexId, VertexId, VertexId) {
    let (source, hub, relay, target) = (0u32, 1u32, 2u32, 3u32);
    let fan = |i: usize| (4 + i) as u32;
    let mut edges = vec![(source, hub), (source, relay), (relay, target)];
    for i in 0..degree {
        edges.push((hub, fan(i)));
        if i % 2 == 0 {
            edges.push((fan(i), target));
        } else {
            edges.push((fan(i), relay));
        }
        if i % 7 == 3 {
            edges.push((fan(i), fan((i + 1) % degree)));
            edges.push((fan(i), hub));
        }
    }
    (
        build_graph(&EdgeList::new(edges)),
        VertexId(source),
        VertexId(target),
        VertexId(hub),
    )
}
