//! Seeded generators of graphs and elements for property checks.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::lie::{Algebra, LieElement, Multidegree, RawExpr};

pub type SeededRng = ChaCha8Rng;

/// Independent stream `stream` derived from the base seed.
pub fn rng(seed: u64, stream: u64) -> SeededRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn coefficient(rng: &mut SeededRng) -> BigInt {
    let c: i64 = rng.gen_range(1..=3);
    BigInt::from(if rng.gen_bool(0.5) { c } else { -c })
}

/// Each edge present with probability one half.
pub fn random_graph(rng: &mut SeededRng, n: usize) -> Graph {
    random_graph_with_density(rng, n, 0.5)
}

/// Each edge present with probability `p`.
pub fn random_graph_with_density(rng: &mut SeededRng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, &edges).expect("valid edges")
}

/// A random graph in which `removed` and `kept` have equal closed
/// neighbourhoods; returns the graph and the pair.
pub fn random_graph_with_twins(rng: &mut SeededRng, n: usize) -> (Graph, usize, usize) {
    assert!(n >= 2);
    let base = random_graph(rng, n);
    let kept = rng.gen_range(0..n);
    let removed = loop {
        let r = rng.gen_range(0..n);
        if r != kept {
            break r;
        }
    };
    let mut edges: Vec<(usize, usize)> = base
        .edges()
        .into_iter()
        .filter(|&(a, b)| a != removed && b != removed)
        .collect();
    for v in base.neighbors(kept).iter() {
        if v != removed {
            edges.push((v.min(removed), v.max(removed)));
        }
    }
    edges.push((kept.min(removed), kept.max(removed)));
    (Graph::new(n, &edges).expect("valid edges"), removed, kept)
}

/// Sum of `terms` random left-normed monomials of length at most
/// `max_degree`, coefficients in `±1..=3`.
pub fn random_element(rng: &mut SeededRng, alg: &Arc<Algebra>, max_degree: usize, terms: usize) -> LieElement {
    let n = alg.generator_count();
    let mut out = LieElement::zero(alg);
    for _ in 0..terms {
        let len = rng.gen_range(1..=max_degree);
        let letters: Vec<usize> = (0..len).map(|_| rng.gen_range(0..n)).collect();
        let t = LieElement::left_normed(alg, &letters).expect("valid letters");
        out.add_assign(&t.scale(&coefficient(rng)));
    }
    out
}

/// A random nonzero element, retrying until one is found.
pub fn random_nonzero_element(rng: &mut SeededRng, alg: &Arc<Algebra>, max_degree: usize, terms: usize) -> LieElement {
    loop {
        let e = random_element(rng, alg, max_degree, terms);
        if !e.is_zero() {
            return e;
        }
    }
}

/// A multidegree on `n` generators of total degree `total`.
pub fn random_multidegree(rng: &mut SeededRng, n: usize, total: u32) -> Multidegree {
    let mut counts = vec![0u32; n];
    for _ in 0..total {
        counts[rng.gen_range(0..n)] += 1;
    }
    Multidegree::new(counts)
}

/// A random bracket arrangement of the given letters.
pub fn random_tree(rng: &mut SeededRng, letters: &[usize]) -> RawExpr {
    if letters.len() == 1 {
        return RawExpr::gen(letters[0]);
    }
    let cut = rng.gen_range(1..letters.len());
    RawExpr::bracket(random_tree(rng, &letters[..cut]), random_tree(rng, &letters[cut..]))
}

/// An expression of multidegree `d` that vanishes in `M(X;G)`: a sum of
/// edge brackets, Jacobi sums, anticommutators and metabelian brackets.
/// `d` must have total degree at least two.
pub fn random_vanishing_expr(rng: &mut SeededRng, graph: &Graph, d: &Multidegree, terms: usize) -> RawExpr {
    let mut letters = d.letters();
    let edges: Vec<(usize, usize)> = graph
        .edges()
        .into_iter()
        .filter(|&(a, b)| d.get(a) > 0 && d.get(b) > 0)
        .collect();
    let mut out = Vec::new();
    for _ in 0..terms {
        letters.shuffle(rng);
        let kind = rng.gen_range(0..4);
        let e = match kind {
            0 if !edges.is_empty() => {
                let (a, b) = edges[rng.gen_range(0..edges.len())];
                let mut rest = letters.clone();
                for v in [a, b] {
                    let p = rest.iter().position(|&x| x == v).expect("present");
                    rest.remove(p);
                }
                let mut word = vec![a, b];
                word.extend(rest);
                RawExpr::left_normed(&word)
            }
            1 if letters.len() >= 3 => {
                let c1 = rng.gen_range(1..letters.len() - 1);
                let c2 = rng.gen_range(c1 + 1..letters.len());
                let u = random_tree(rng, &letters[..c1]);
                let v = random_tree(rng, &letters[c1..c2]);
                let w = random_tree(rng, &letters[c2..]);
                RawExpr::sum(vec![
                    RawExpr::bracket(RawExpr::bracket(u.clone(), v.clone()), w.clone()),
                    RawExpr::bracket(RawExpr::bracket(v.clone(), w.clone()), u.clone()),
                    RawExpr::bracket(RawExpr::bracket(w, u), v),
                ])
            }
            2 if letters.len() >= 4 => {
                let c = rng.gen_range(2..=letters.len() - 2);
                metabelian(rng, &letters[..c], &letters[c..])
            }
            _ => {
                let c = rng.gen_range(1..letters.len());
                let u = random_tree(rng, &letters[..c]);
                let v = random_tree(rng, &letters[c..]);
                RawExpr::sum(vec![RawExpr::bracket(u.clone(), v.clone()), RawExpr::bracket(v, u)])
            }
        };
        out.push(RawExpr::scale(coefficient(rng), e));
    }
    RawExpr::sum(out)
}

/// `[[a,b],[c,d]]` with `a,b` splitting `left` and `c,d` splitting `right`.
fn metabelian(rng: &mut SeededRng, left: &[usize], right: &[usize]) -> RawExpr {
    let cl = rng.gen_range(1..left.len());
    let cr = rng.gen_range(1..right.len());
    RawExpr::bracket(
        RawExpr::bracket(random_tree(rng, &left[..cl]), random_tree(rng, &left[cl..])),
        RawExpr::bracket(random_tree(rng, &right[..cr]), random_tree(rng, &right[cr..])),
    )
}

/// A homogeneous expression of multidegree `d`. Half of the samples are
/// vanishing combinations.
pub fn random_homogeneous_expr(rng: &mut SeededRng, graph: &Graph, d: &Multidegree) -> RawExpr {
    let terms = rng.gen_range(1..=3);
    let zero = random_vanishing_expr(rng, graph, d, terms);
    if rng.gen_bool(0.5) {
        return zero;
    }
    let mut letters = d.letters();
    letters.shuffle(rng);
    let t = RawExpr::scale(coefficient(rng), random_tree(rng, &letters));
    RawExpr::sum(vec![zero, t])
}

/// A uniformly random labelled tree on `n ≥ 2` vertices.
pub fn random_tree_graph(rng: &mut SeededRng, n: usize) -> Graph {
    let prufer: Vec<usize> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(0..n)).collect();
    tree_from_prufer(n, &prufer)
}

/// The labelled tree with the given Prüfer sequence on `n = len + 2`
/// vertices.
pub fn tree_from_prufer(n: usize, prufer: &[usize]) -> Graph {
    let mut degree = vec![1usize; n];
    for &v in prufer {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in prufer {
        let leaf = (0..n).find(|&u| degree[u] == 1).expect("a leaf exists");
        edges.push((leaf.min(v), leaf.max(v)));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let last: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((last[0], last[1]));
    Graph::new(n, &edges).expect("a tree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_streams_repeat() {
        let a = random_graph(&mut rng(7, 1), 6);
        let b = random_graph(&mut rng(7, 1), 6);
        assert_eq!(a, b);
    }

    #[test]
    fn twins_are_twins() {
        let mut r = rng(3, 0);
        for _ in 0..50 {
            let (g, removed, kept) = random_graph_with_twins(&mut r, 5);
            assert!(g.perp_equivalent(removed, kept));
        }
    }

    #[test]
    fn prufer_trees() {
        let t = tree_from_prufer(5, &[3, 3, 3]);
        assert_eq!(t.degree(3), 4);
        assert_eq!(t.edge_count(), 4);
        assert!(t.connected_components().len() == 1);
    }

    #[test]
    fn vanishing_expressions_vanish() {
        let mut r = rng(11, 0);
        let graph = Graph::cycle(4).unwrap();
        let alg = Algebra::new(graph.clone());
        for _ in 0..100 {
            let d = random_multidegree(&mut r, 4, 4);
            let e = random_vanishing_expr(&mut r, &graph, &d, 3);
            assert!(alg.normal_form(&e).unwrap().is_zero(), "{e:?}");
        }
    }
}
