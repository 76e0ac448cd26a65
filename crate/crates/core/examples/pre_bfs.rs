//! Bidirectional (k-1)-hop BFS: which vertices survive, and their barriers.

use kpath::bench::gen_queries;
use kpath::enumerate::{oracle_enumerate, EnumLimits};
use kpath::generators::random_graph;
use kpath::preprocess::{pre_bfs, validate_reduction};

fn main() {
    let g = random_graph(60, 3.0, 3);
    let q = gen_queries(&g, 4, 1, 5).unwrap().queries[0];
    let pre = pre_bfs(&g, q).unwrap();
    println!(
        "kept {}/{} vertices, {}/{} edges",
        pre.subgraph.vertex_count(),
        g.vertex_count(),
        pre.subgraph.edge_count(),
        g.edge_count()
    );
    print!("{}", pre.dump());

    let local = oracle_enumerate(&pre.subgraph, pre.local_query(), &EnumLimits::default()).unwrap();
    println!("{} paths on the subgraph, mapped back:", local.len());
    for p in &local.map_vertices(&pre.mapping) {
        println!("  {p}");
    }
    println!(
        "same as enumerating the full graph: {}",
        validate_reduction(&g, q)
    );
}
