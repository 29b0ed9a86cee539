use pcml_core::lie::GeneratorOrder;
use pcml_core::oracle::certify_basis;
use pcml_core::{Graph, Multidegree};

fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    (0..1u32 << pairs.len())
        .map(|mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            Graph::new(n, &edges).unwrap()
        })
        .collect()
}

#[test]
fn basis_counts_match_on_three_vertices_all_orders() {
    let orders = [
        vec![0, 1, 2],
        vec![0, 2, 1],
        vec![1, 0, 2],
        vec![1, 2, 0],
        vec![2, 0, 1],
        vec![2, 1, 0],
    ];
    for g in all_graphs(3) {
        for seq in &orders {
            let order = GeneratorOrder::from_sequence(seq.clone()).unwrap();
            for total in 2..=5 {
                for d in Multidegree::all_of_total(3, total) {
                    let r = certify_basis(&g, &d, &order);
                    assert!(r.ok(), "{g} order {seq:?}: {}", r.line());
                }
            }
        }
    }
}

#[test]
fn basis_counts_match_on_five_vertex_cycle() {
    let g = Graph::cycle(5).unwrap();
    let order = GeneratorOrder::from_sequence(vec![2, 4, 0, 3, 1]).unwrap();
    for total in 2..=4 {
        for d in Multidegree::all_of_total(5, total) {
            let r = certify_basis(&g, &d, &order);
            assert!(r.ok(), "{}", r.line());
        }
    }
}
