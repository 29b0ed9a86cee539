//! Brute-force certifier working in the free metabelian algebra modulo the
//! ideal of edge relations.
//!
//! The free derived part of multidegree `δ` has the standard basis
//! `[x_h, x_m].w` with `m` the least index of the support and `h` any other
//! index in it. Arbitrary brackets are straightened with the Jacobi
//! identity only; no graph information enters until the ideal is taken.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::graph::Graph;
use crate::lie::{GeneratorOrder, Multidegree, RawExpr};
use crate::linalg::{self, Vector};
use crate::{Algebra, LieElement};

/// An element of the free metabelian algebra on `n` generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeElement {
    n: usize,
    linear: BTreeMap<usize, BigRational>,
    /// `(δ, h)` stands for `[x_h, x_m].w` with `m` least in the support.
    derived: BTreeMap<(Multidegree, usize), BigRational>,
}

fn bump<K: Ord>(map: &mut BTreeMap<K, BigRational>, key: K, c: BigRational) {
    if c.is_zero() {
        return;
    }
    let e = map.entry(key).or_insert_with(BigRational::zero);
    *e += c;
}

fn prune<K: Ord + Clone>(map: &mut BTreeMap<K, BigRational>) {
    map.retain(|_, c| !c.is_zero());
}

fn least(d: &Multidegree) -> usize {
    d.support().first().expect("nonempty support")
}

impl FreeElement {
    pub fn zero(n: usize) -> Self {
        FreeElement {
            n,
            linear: BTreeMap::new(),
            derived: BTreeMap::new(),
        }
    }

    pub fn generator(n: usize, i: usize) -> Self {
        let mut e = FreeElement::zero(n);
        e.linear.insert(i, BigRational::one());
        e
    }

    pub fn from_expr(n: usize, expr: &RawExpr) -> Self {
        match expr {
            RawExpr::Zero => FreeElement::zero(n),
            RawExpr::Gen(i) => FreeElement::generator(n, *i),
            RawExpr::Sum(ts) => {
                let mut acc = FreeElement::zero(n);
                for t in ts {
                    acc.add(&FreeElement::from_expr(n, t));
                }
                acc
            }
            RawExpr::Scale(c, e) => {
                let mut out = FreeElement::from_expr(n, e);
                out.scale(&BigRational::from_integer(c.clone()));
                out
            }
            RawExpr::Bracket(a, b) => FreeElement::from_expr(n, a).bracket(&FreeElement::from_expr(n, b)),
        }
    }

    /// The image of a normal-form element, built from its printed monomials.
    pub fn from_lie(e: &LieElement) -> Self {
        FreeElement::from_expr(e.algebra().generator_count(), &e.to_expr())
    }

    pub fn is_zero(&self) -> bool {
        self.linear.is_empty() && self.derived.is_empty()
    }

    pub fn add(&mut self, other: &FreeElement) {
        for (i, c) in &other.linear {
            bump(&mut self.linear, *i, c.clone());
        }
        for (k, c) in &other.derived {
            bump(&mut self.derived, k.clone(), c.clone());
        }
        prune(&mut self.linear);
        prune(&mut self.derived);
    }

    pub fn scale(&mut self, c: &BigRational) {
        if c.is_zero() {
            *self = FreeElement::zero(self.n);
            return;
        }
        for v in self.linear.values_mut() {
            *v *= c;
        }
        for v in self.derived.values_mut() {
            *v *= c;
        }
    }

    fn generator_bracket(&self, a: usize, b: usize, c: &BigRational, out: &mut FreeElement) {
        if a == b {
            return;
        }
        let mut d = Multidegree::zero(self.n);
        d.increment(a);
        d.increment(b);
        if b < a {
            bump(&mut out.derived, (d, a), c.clone());
        } else {
            bump(&mut out.derived, (d, b), -c.clone());
        }
    }

    /// `[[x_h, x_m].w, x_c]` in standard form.
    fn standard_times(d: &Multidegree, h: usize, x: usize, c: &BigRational, out: &mut FreeElement) {
        let m = least(d);
        let mut d2 = d.clone();
        d2.increment(x);
        if x >= m {
            bump(&mut out.derived, (d2, h), c.clone());
        } else {
            // [[h,m],x] = [[h,x],m] - [[m,x],h]
            bump(&mut out.derived, (d2.clone(), h), c.clone());
            bump(&mut out.derived, (d2, m), -c.clone());
        }
    }

    pub fn bracket(&self, other: &FreeElement) -> FreeElement {
        let mut out = FreeElement::zero(self.n);
        for (&a, ca) in &self.linear {
            for (&b, cb) in &other.linear {
                self.generator_bracket(a, b, &(ca * cb), &mut out);
            }
        }
        for ((d, h), cu) in &self.derived {
            for (&x, cx) in &other.linear {
                FreeElement::standard_times(d, *h, x, &(cu * cx), &mut out);
            }
        }
        for (&x, cx) in &self.linear {
            for ((d, h), cu) in &other.derived {
                FreeElement::standard_times(d, *h, x, &-(cu * cx), &mut out);
            }
        }
        prune(&mut out.derived);
        out
    }

    /// Splits into multidegree slices; degree-one slices carry one generator.
    pub fn homogeneous_parts(&self) -> BTreeMap<Multidegree, FreeElement> {
        let mut out: BTreeMap<Multidegree, FreeElement> = BTreeMap::new();
        for (&i, c) in &self.linear {
            out.entry(Multidegree::unit(self.n, i))
                .or_insert_with(|| FreeElement::zero(self.n))
                .linear
                .insert(i, c.clone());
        }
        for ((d, h), c) in &self.derived {
            out.entry(d.clone())
                .or_insert_with(|| FreeElement::zero(self.n))
                .derived
                .insert((d.clone(), *h), c.clone());
        }
        out
    }

    /// Coordinates of the slice of multidegree `d` on the standard basis.
    fn coordinates(&self, d: &Multidegree) -> Vector {
        let heads = standard_heads(d);
        heads
            .iter()
            .map(|&h| {
                self.derived
                    .get(&(d.clone(), h))
                    .cloned()
                    .unwrap_or_else(BigRational::zero)
            })
            .collect()
    }
}

/// Heads of the standard monomials of multidegree `d` (total degree ≥ 2).
pub fn standard_heads(d: &Multidegree) -> Vec<usize> {
    let support = d.support();
    let m = least(d);
    support.iter().filter(|&h| h != m).collect()
}

/// Spanning vectors of the ideal at multidegree `d`: `[x_i,x_j].w` for every
/// edge with both ends in the support.
pub fn ideal_slice(graph: &Graph, d: &Multidegree) -> Vec<Vector> {
    let n = graph.vertex_count();
    let mut out = Vec::new();
    if d.total() < 2 {
        return out;
    }
    for (i, j) in graph.edges() {
        if d.get(i) == 0 || d.get(j) == 0 {
            continue;
        }
        let mut rest = d.clone();
        rest.decrement(i);
        rest.decrement(j);
        let mut e = FreeElement::generator(n, i).bracket(&FreeElement::generator(n, j));
        for l in rest.letters() {
            e = e.bracket(&FreeElement::generator(n, l));
        }
        out.push(e.coordinates(d));
    }
    out
}

/// Dimension of the slice of `M(X;G)` of multidegree `d`.
pub fn graded_dimension(graph: &Graph, d: &Multidegree) -> usize {
    match d.total() {
        0 => 0,
        1 => 1,
        _ => standard_heads(d).len() - linalg::rank(&ideal_slice(graph, d)),
    }
}

/// Whether `e` lies in the edge-relation ideal.
pub fn ideal_member(e: &FreeElement, graph: &Graph) -> bool {
    e.homogeneous_parts().into_iter().all(|(d, part)| {
        if d.total() < 2 {
            return part.is_zero();
        }
        linalg::in_span(&ideal_slice(graph, &d), &part.coordinates(&d))
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisReport {
    pub delta: Multidegree,
    pub count: usize,
    pub dimension: usize,
    pub independent: bool,
}

impl BasisReport {
    pub fn ok(&self) -> bool {
        self.count == self.dimension && self.independent
    }

    pub fn line(&self) -> String {
        format!(
            "delta={} count={} dim={} {}",
            self.delta,
            self.count,
            self.dimension,
            if self.ok() { "OK" } else { "FAIL" }
        )
    }
}

/// Compares the engine's basis monomials of multidegree `d` with the
/// oracle: same number as the graded dimension, independent modulo the
/// ideal.
pub fn certify_basis(graph: &Graph, d: &Multidegree, order: &GeneratorOrder) -> BasisReport {
    let n = graph.vertex_count();
    let dimension = graded_dimension(graph, d);
    if d.total() < 2 {
        let count = usize::from(d.total() == 1);
        return BasisReport {
            delta: d.clone(),
            count,
            dimension,
            independent: true,
        };
    }
    let alg = Algebra::with_order(graph.clone(), order.clone()).expect("order matches graph");
    let basis = alg.basis_monomials(d);
    let slice = ideal_slice(graph, d);
    let base_rank = linalg::rank(&slice);
    let mut rows = slice;
    for b in &basis {
        let letters: Vec<usize> = b.letters().collect();
        rows.push(FreeElement::from_expr(n, &RawExpr::left_normed(&letters)).coordinates(d));
    }
    let independent = linalg::rank(&rows) == base_rank + basis.len();
    BasisReport {
        delta: d.clone(),
        count: basis.len(),
        dimension,
        independent,
    }
}

/// Dimension of the degree-`k` part of the derived centralizer of
/// `Σ c_i x_i`, computed entirely in the free algebra modulo the ideal.
pub fn centralizer_dimension(graph: &Graph, g: &[(usize, BigInt)], k: u32) -> usize {
    let n = graph.vertex_count();
    let gen: FreeElement = {
        let mut e = FreeElement::zero(n);
        for (i, c) in g {
            let mut x = FreeElement::generator(n, *i);
            x.scale(&BigRational::from_integer(c.clone()));
            e.add(&x);
        }
        e
    };
    let domain: Vec<Multidegree> = Multidegree::all_of_total(n, k)
        .into_iter()
        .filter(|d| d.support().len() >= 2)
        .collect();
    // Columns: standard monomials of degree k. Rows: standard monomials of
    // degree k + 1.
    let mut col_index = Vec::new();
    for d in &domain {
        for h in standard_heads(d) {
            col_index.push((d.clone(), h));
        }
    }
    let codomain: Vec<Multidegree> = Multidegree::all_of_total(n, k + 1)
        .into_iter()
        .filter(|d| d.support().len() >= 2)
        .collect();
    let mut row_offset = BTreeMap::new();
    let mut rows_total = 0;
    for d in &codomain {
        row_offset.insert(d.clone(), rows_total);
        rows_total += standard_heads(d).len();
    }
    let embed = |e: &FreeElement| -> Vector {
        let mut v = vec![BigRational::zero(); rows_total];
        for (d, part) in e.homogeneous_parts() {
            let off = row_offset[&d];
            for (t, c) in part.coordinates(&d).into_iter().enumerate() {
                v[off + t] = c;
            }
        }
        v
    };
    let mut images = Vec::new();
    for (d, h) in &col_index {
        let mut u = FreeElement::zero(n);
        u.derived.insert((d.clone(), *h), BigRational::one());
        images.push(embed(&u.bracket(&gen)));
    }
    let mut ideal_rows = Vec::new();
    for d in &codomain {
        for r in ideal_slice(graph, d) {
            let mut v = vec![BigRational::zero(); rows_total];
            let off = row_offset[d];
            for (t, c) in r.into_iter().enumerate() {
                v[off + t] = c;
            }
            ideal_rows.push(v);
        }
    }
    let ideal_rank = linalg::rank(&ideal_rows);
    let mut all = ideal_rows;
    all.extend(images);
    let image_rank_mod_ideal = linalg::rank(&all) - ideal_rank;
    let preimage_dim = col_index.len() - image_rank_mod_ideal;
    let domain_ideal: usize = domain.iter().map(|d| linalg::rank(&ideal_slice(graph, d))).sum();
    preimage_dim - domain_ideal
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::parse_expr;

    fn md(v: &[u32]) -> Multidegree {
        Multidegree::new(v.to_vec())
    }

    #[test]
    fn graded_dimension_examples() {
        assert_eq!(graded_dimension(&Graph::edgeless(2).unwrap(), &md(&[1, 1])), 1);
        assert_eq!(graded_dimension(&Graph::new(2, &[(0, 1)]).unwrap(), &md(&[1, 1])), 0);
        assert_eq!(graded_dimension(&Graph::edgeless(3).unwrap(), &md(&[1, 1, 1])), 2);
    }

    #[test]
    fn ideal_member_examples() {
        let g = Graph::new(3, &[(0, 1)]).unwrap();
        assert!(ideal_member(&FreeElement::zero(3), &g));
        let e = FreeElement::from_expr(3, &parse_expr("[x0,x1;x2]").unwrap());
        assert!(ideal_member(&e, &g));
        let c4 = Graph::cycle(4).unwrap();
        let e = FreeElement::from_expr(4, &parse_expr("[[x0,x2],x1]").unwrap());
        assert!(ideal_member(&e, &c4));
        let e = FreeElement::from_expr(4, &parse_expr("[x0,x2]").unwrap());
        assert!(!ideal_member(&e, &c4));
        assert!(!ideal_member(&FreeElement::generator(4, 1), &c4));
    }

    #[test]
    fn free_jacobi_and_antisymmetry() {
        let e = FreeElement::from_expr(3, &parse_expr("[[x0,x1],x2] + [[x1,x2],x0] + [[x2,x0],x1]").unwrap());
        assert!(e.is_zero());
        let e = FreeElement::from_expr(3, &parse_expr("[x2,x1] + [x1,x2]").unwrap());
        assert!(e.is_zero());
        let e = FreeElement::from_expr(4, &parse_expr("[[x0,x1],[x2,x3]]").unwrap());
        assert!(e.is_zero());
    }

    #[test]
    fn certify_examples() {
        let c3 = Graph::cycle(3).unwrap();
        let r = certify_basis(&c3, &md(&[1, 2, 0]), &GeneratorOrder::ascending(3));
        assert_eq!((r.count, r.dimension), (0, 0));
        assert!(r.ok());
        let free = Graph::edgeless(2).unwrap();
        let r = certify_basis(&free, &md(&[1, 1]), &GeneratorOrder::ascending(2));
        assert_eq!(r.line(), "delta=(1,1) count=1 dim=1 OK");
        let c5 = Graph::cycle(5).unwrap();
        let order = GeneratorOrder::from_sequence(vec![3, 1, 4, 0, 2]).unwrap();
        let r = certify_basis(&c5, &md(&[0, 1, 0, 1, 1]), &order);
        assert!(r.ok());
        assert_eq!(r.count, 1);
    }

    #[test]
    fn centralizer_dimension_small() {
        let c5 = Graph::cycle(5).unwrap();
        let one = BigInt::one();
        assert_eq!(centralizer_dimension(&c5, &[(0, one.clone()), (1, one.clone())], 3), 0);
        assert_eq!(centralizer_dimension(&c5, &[(0, one.clone()), (2, one.clone())], 3), 1);
    }
}
