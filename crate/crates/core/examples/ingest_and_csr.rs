//! Parse an edge list, inspect the CSR, write it as binary and read it back.

use kpath::graph::{build_graph_with, parse_edge_list_str, reverse, IngestOptions, VertexId};
use kpath::io::{read_csr, write_csr};

const EDGES: &str = "\
# from to
0 1
0 2
1 3
2 3
2 2
1 3
3 0
";

fn main() {
    let list = parse_edge_list_str(EDGES).expect("valid edge list");
    let g = build_graph_with(&list, IngestOptions::default());
    let raw = build_graph_with(
        &list,
        IngestOptions {
            dedup: false,
            keep_self_loops: true,
        },
    );
    println!(
        "{} raw lines -> {} edges after dedup and self-loop removal ({} kept raw)",
        list.edges.len(),
        g.edge_count(),
        raw.edge_count()
    );
    println!("offsets {:?}", g.offsets());
    for v in g.vertices() {
        let succ: Vec<String> = g.successors(v).iter().map(|u| u.to_string()).collect();
        println!("  {v} -> [{}]", succ.join(", "));
    }

    let rev = reverse(&g);
    let preds: Vec<String> = rev
        .successors(VertexId(3))
        .iter()
        .map(|u| u.to_string())
        .collect();
    println!("predecessors of 3: [{}]", preds.join(", "));

    let mut bytes = Vec::new();
    write_csr(&g, &mut bytes).unwrap();
    let back = read_csr(bytes.as_slice()).unwrap();
    assert_eq!(back, g);
    println!("binary CSR: {} bytes, round trip ok", bytes.len());
}
