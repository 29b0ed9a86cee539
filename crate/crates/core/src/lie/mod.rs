//! Exact arithmetic in `M(X;G)`, the metabelian Lie algebra on generators
//! `x_0..x_{n-1}` in which `[x_i,x_j] = 0` exactly for the edges of `G`.
//!
//! Elements are kept in normal form on the basis of left-normed monomials
//! `[x_a,x_b].w` satisfying the four order/connectivity conditions (see
//! [`is_basis_monomial`]). The derived subalgebra is a module over the
//! polynomial ring, so a monomial is a head pair plus a commutative tail.

mod element;
mod expr;
mod monomial;

use std::sync::Arc;

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

pub use element::{GluedComponent, LieElement};
pub use expr::{parse_expr, ParseError, RawExpr};
pub use monomial::{BasisMonomial, GluedMultidegree, Multidegree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("generator x{index} does not exist in an algebra with {n} generators")]
    UnknownGenerator { index: usize, n: usize },
    #[error("element has a nonzero linear part")]
    NonzeroLinearPart,
    #[error("element has a nonzero derived part")]
    NonzeroDerivedPart,
    #[error("invalid generator order: {0}")]
    InvalidOrder(String),
    #[error("x{0} and x{1} do not form a valid merge pair")]
    InvalidPair(usize, usize),
    #[error("graphs differ")]
    GraphMismatch,
    #[error("{0}")]
    Parse(#[from] ParseError),
}

/// A total order on the generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorOrder {
    by_rank: Vec<usize>,
    rank: Vec<usize>,
}

impl GeneratorOrder {
    pub fn ascending(n: usize) -> Self {
        GeneratorOrder {
            by_rank: (0..n).collect(),
            rank: (0..n).collect(),
        }
    }

    /// `sequence` lists the generators from least to greatest.
    pub fn from_sequence(sequence: Vec<usize>) -> Result<Self, LieError> {
        let n = sequence.len();
        let mut rank = vec![usize::MAX; n];
        for (r, &g) in sequence.iter().enumerate() {
            if g >= n || rank[g] != usize::MAX {
                return Err(LieError::InvalidOrder(format!(
                    "{sequence:?} is not a permutation of 0..{n}"
                )));
            }
            rank[g] = r;
        }
        Ok(GeneratorOrder {
            by_rank: sequence,
            rank,
        })
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn rank(&self, g: usize) -> usize {
        self.rank[g]
    }

    pub fn sequence(&self) -> &[usize] {
        &self.by_rank
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.rank[a] < self.rank[b]
    }

    pub fn min_of(&self, set: VertexSet) -> Option<usize> {
        set.iter().min_by_key(|&v| self.rank[v])
    }

    pub fn max_of(&self, set: VertexSet) -> Option<usize> {
        set.iter().max_by_key(|&v| self.rank[v])
    }

    pub fn sort(&self, letters: &mut [usize]) {
        letters.sort_unstable_by_key(|&v| self.rank[v]);
    }
}

/// A defining graph with a fixed generator order; the ambient structure of
/// every [`LieElement`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Algebra {
    graph: Graph,
    order: GeneratorOrder,
}

impl Algebra {
    /// Uses the ascending order `x_0 < x_1 < ...`.
    pub fn new(graph: Graph) -> Arc<Self> {
        let order = GeneratorOrder::ascending(graph.vertex_count());
        Arc::new(Algebra { graph, order })
    }

    pub fn with_order(graph: Graph, order: GeneratorOrder) -> Result<Arc<Self>, LieError> {
        if order.len() != graph.vertex_count() {
            return Err(LieError::InvalidOrder(format!(
                "order has {} generators but the graph has {}",
                order.len(),
                graph.vertex_count()
            )));
        }
        Ok(Arc::new(Algebra { graph, order }))
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn order(&self) -> &GeneratorOrder {
        &self.order
    }

    pub fn generator_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub(crate) fn check_generator(&self, g: usize) -> Result<(), LieError> {
        if g < self.generator_count() {
            Ok(())
        } else {
            Err(LieError::UnknownGenerator {
                index: g,
                n: self.generator_count(),
            })
        }
    }

    /// Rewrites the left-normed monomial `[x_a,x_b].tail` onto the basis.
    ///
    /// The result has at most two terms, each with coefficient `±1`:
    /// anticommutativity or one Jacobi step puts the least letter second,
    /// then the first letter is swapped with the greatest letter of its
    /// component (or the monomial vanishes when both head letters share a
    /// component).
    pub fn reduce_left_normed(&self, a: usize, b: usize, tail: &[usize]) -> Vec<(BasisMonomial, i32)> {
        if a == b {
            return Vec::new();
        }
        let support: VertexSet = tail.iter().copied().chain([a, b]).collect();
        let m = self.order.min_of(support).expect("support is nonempty");

        let mut straightened: Vec<(usize, Vec<usize>, i32)> = Vec::with_capacity(2);
        if b == m {
            straightened.push((a, tail.to_vec(), 1));
        } else if a == m {
            straightened.push((b, tail.to_vec(), -1));
        } else {
            // [[a,b],m] = [[a,m],b] - [[b,m],a]
            let mut rest = tail.to_vec();
            let pos = rest.iter().position(|&l| l == m).expect("m lies in the tail");
            rest.swap_remove(pos);
            let mut ta = rest.clone();
            ta.push(b);
            let mut tb = rest;
            tb.push(a);
            straightened.push((a, ta, 1));
            straightened.push((b, tb, -1));
        }

        let min_component = self.graph.component_within(m, support);
        let mut out = Vec::with_capacity(straightened.len());
        for (head, mut t, sign) in straightened {
            if min_component.contains(head) {
                continue;
            }
            let comp = self.graph.component_within(head, support);
            let top = self.order.max_of(comp).expect("component contains head");
            if top != head {
                let pos = t.iter().position(|&l| l == top).expect("top lies in the tail");
                t[pos] = head;
            }
            self.order.sort(&mut t);
            out.push((BasisMonomial::new_unchecked(top, m, t), sign));
        }
        out
    }

    /// All basis monomials of multidegree `mdeg` (empty below degree 2).
    pub fn basis_monomials(&self, mdeg: &Multidegree) -> Vec<BasisMonomial> {
        if mdeg.total() < 2 {
            return Vec::new();
        }
        let support = mdeg.support();
        let m = self.order.min_of(support).expect("support is nonempty");
        let comps = self.graph.components_within(support);
        let mut out = Vec::new();
        for comp in comps.blocks() {
            if comp.contains(m) {
                continue;
            }
            let top = self.order.max_of(*comp).expect("nonempty");
            let mut rest = mdeg.clone();
            rest.decrement(top);
            rest.decrement(m);
            let mut tail = rest.letters();
            self.order.sort(&mut tail);
            out.push(BasisMonomial::new_unchecked(top, m, tail));
        }
        out.sort();
        out
    }

    pub fn normal_form(self: &Arc<Self>, expr: &RawExpr) -> Result<LieElement, LieError> {
        LieElement::from_expr(self, expr)
    }

    pub fn parse_element(self: &Arc<Self>, text: &str) -> Result<LieElement, LieError> {
        let expr = parse_expr(text)?;
        self.normal_form(&expr)
    }
}

/// The four basis conditions for `[x_first, x_second].tail`, tail read in
/// the given order.
pub fn is_basis_monomial(first: usize, second: usize, tail: &[usize], alg: &Algebra) -> bool {
    let n = alg.generator_count();
    if first >= n || second >= n || tail.iter().any(|&t| t >= n) {
        return false;
    }
    let order = alg.order();
    // (1)
    if !order.less(second, first) {
        return false;
    }
    // (2)
    let mut prev = second;
    for &t in tail {
        if order.less(t, prev) {
            return false;
        }
        prev = t;
    }
    let support: VertexSet = tail.iter().copied().chain([first, second]).collect();
    let comp = alg.graph().component_within(first, support);
    // (3)
    if comp.contains(second) {
        return false;
    }
    // (4)
    order.max_of(comp) == Some(first)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_validation() {
        assert!(GeneratorOrder::from_sequence(vec![1, 0, 2]).is_ok());
        assert!(GeneratorOrder::from_sequence(vec![1, 1, 2]).is_err());
        assert!(GeneratorOrder::from_sequence(vec![0, 3]).is_err());
        let o = GeneratorOrder::from_sequence(vec![2, 3, 0, 1]).unwrap();
        assert!(o.less(3, 0));
        assert_eq!(o.rank(2), 0);
        assert!(Algebra::with_order(Graph::cycle(5).unwrap(), o).is_err());
    }

    #[test]
    fn basis_predicate() {
        let free = Algebra::new(Graph::edgeless(3).unwrap());
        assert!(is_basis_monomial(2, 0, &[1], &free));
        let c4 = Algebra::new(Graph::cycle(4).unwrap());
        // 0 and 2 are joined through 1 in the support.
        assert!(!is_basis_monomial(2, 0, &[1], &c4));
        assert!(!is_basis_monomial(0, 2, &[], &free));
        // unsorted tail violates condition 2
        let free4 = Algebra::new(Graph::edgeless(4).unwrap());
        assert!(!is_basis_monomial(3, 0, &[2, 1], &free4));
        assert!(is_basis_monomial(3, 0, &[1, 2], &free4));
        // condition 4: in P_3 = 0-1-2 plus isolated 3, head 1 is not max of {1,2}
        let g = Algebra::new(Graph::new(4, &[(1, 2)]).unwrap());
        assert!(!is_basis_monomial(1, 0, &[2], &g));
        assert!(is_basis_monomial(2, 0, &[1], &g));
    }

    #[test]
    fn direct_basis_matches_predicate() {
        let alg = Algebra::new(Graph::cycle(5).unwrap());
        let mdeg = Multidegree::new(vec![1, 0, 1, 0, 1]);
        let basis = alg.basis_monomials(&mdeg);
        for b in &basis {
            assert!(is_basis_monomial(b.first(), b.second(), b.tail(), &alg));
        }
        // support {0,2,4} splits into {0,4} and {2}
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].first(), 2);
    }
}
