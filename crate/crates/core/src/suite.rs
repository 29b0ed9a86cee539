//! The seeded acceptance checks, shared by `pcml suite` and the test
//! harness. Every check is exact.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;

use crate::centralizer::{check_intersection_theorem, classify_cycle_centralizer, derived_centralizer, CycleCase};
use crate::equivalence::{
    check_hombas, check_subhomogeneous, compaction_witness, distinguish_cycles, eval_theta, lambda_zero,
    search_theta_witness, PhiHom, SearchMode, ThetaInstance, Verdict,
};
use crate::graph::{circ, Graph};
use crate::lie::{Algebra, GeneratorOrder, LieElement, Multidegree, RawExpr};
use crate::oracle::{centralizer_dimension, certify_basis, ideal_member, FreeElement};
use crate::random::{self, SeededRng};

pub const DEFAULT_SEED: u64 = 20_240_601;

pub const CRITERIA: [&str; 7] = [
    "oracle-certification",
    "lie-axioms",
    "cycle-centralizers",
    "centralizer-intersection",
    "cycle-separation",
    "compaction",
    "merging-maps",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionResult {
    /// Numbered from 1.
    pub index: usize,
    pub name: &'static str,
    pub passed: bool,
    /// `KEY=VALUE` statistics on success, the first violation otherwise.
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "CRITERION={} NAME={} RESULT={} {}",
            self.index,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.detail
        )
    }
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    format!("ERROR=\"{e}\"")
}

/// Runs criterion `index` (1 to 7).
pub fn run_criterion(index: usize, seed: u64) -> CriterionResult {
    let result = match index {
        1 => oracle_certification(seed),
        2 => lie_axioms(seed),
        3 => cycle_centralizers(),
        4 => centralizer_intersection(seed),
        5 => cycle_separation(),
        6 => compaction(seed),
        7 => merging_maps(seed),
        _ => Err(format!("ERROR=\"no criterion {index}\"")),
    };
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult {
        index,
        name: CRITERIA.get(index.wrapping_sub(1)).copied().unwrap_or("unknown"),
        passed,
        detail,
    }
}

/// Runs the criteria in order, stopping after the first failure when
/// `fail_fast` is set.
pub fn run_suite(seed: u64, fail_fast: bool) -> Vec<CriterionResult> {
    let mut out = Vec::new();
    for i in 1..=CRITERIA.len() {
        let r = run_criterion(i, seed);
        let failed = !r.passed;
        out.push(r);
        if failed && fail_fast {
            break;
        }
    }
    out
}

fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::new(n, &edges).expect("valid edges")
        })
        .collect()
}

fn oracle_certification(seed: u64) -> Check {
    let n = 4;
    let mut rng = random::rng(seed, 1);
    let degrees: Vec<Multidegree> = (1..=5).flat_map(|t| Multidegree::all_of_total(n, t)).collect();
    let (mut certified, mut zeros, mut samples) = (0, 0, 0);
    for graph in all_graphs(n) {
        let order = GeneratorOrder::ascending(n);
        for d in &degrees {
            let r = certify_basis(&graph, d, &order);
            ensure(r.ok(), || format!("GRAPH={graph} {}", r.line()))?;
            certified += 1;
        }
        let alg = Algebra::new(graph.clone());
        for _ in 0..200 {
            let total = rng.gen_range(2..=5);
            let d = random::random_multidegree(&mut rng, n, total);
            let expr = random::random_homogeneous_expr(&mut rng, &graph, &d);
            let engine = alg.normal_form(&expr).map_err(fail)?.is_zero();
            let oracle = ideal_member(&FreeElement::from_expr(n, &expr), &graph);
            ensure(engine == oracle, || {
                format!("GRAPH={graph} ELEMENT={expr:?} ENGINE_ZERO={engine}")
            })?;
            zeros += usize::from(engine);
            samples += 1;
        }
    }
    Ok(format!(
        "GRAPHS=64 MULTIDEGREES={certified} ELEMENTS={samples} ZERO={zeros}"
    ))
}

fn lie_axioms(seed: u64) -> Check {
    let mut rng = random::rng(seed, 2);
    let mut checked = 0;
    for n in 4..=7 {
        let alg = Algebra::new(Graph::cycle(n).map_err(fail)?);
        for _ in 0..500 {
            let a = random::random_element(&mut rng, &alg, 4, 3);
            let b = random::random_element(&mut rng, &alg, 4, 3);
            let c = random::random_element(&mut rng, &alg, 4, 3);
            let (ea, eb, ec) = (a.to_expr(), b.to_expr(), c.to_expr());
            let br = RawExpr::bracket;
            let combos = [
                (
                    "anticommutativity",
                    RawExpr::sum(vec![br(ea.clone(), eb.clone()), br(eb.clone(), ea.clone())]),
                ),
                (
                    "jacobi",
                    RawExpr::sum(vec![
                        br(br(ea.clone(), eb.clone()), ec.clone()),
                        br(br(eb.clone(), ec.clone()), ea.clone()),
                        br(br(ec.clone(), ea.clone()), eb.clone()),
                    ]),
                ),
                ("metabelian", br(br(ea.clone(), eb.clone()), br(ec.clone(), ea.clone()))),
                ("metabelian", br(br(eb.clone(), ec.clone()), br(ea.clone(), eb.clone()))),
            ];
            for (name, e) in &combos {
                let nf = alg.normal_form(e).map_err(fail)?;
                ensure(nf.is_zero(), || format!("N={n} IDENTITY={name} A={a} B={b} C={c}"))?;
            }
            let round = alg.normal_form(&ea).map_err(fail)?;
            ensure(round == a, || format!("N={n} ROUNDTRIP A={a}"))?;
            let direct = a.bracket(&b).map_err(fail)?;
            let via_expr = alg.normal_form(&br(ea, eb)).map_err(fail)?;
            ensure(direct == via_expr, || format!("N={n} BRACKET A={a} B={b}"))?;
            checked += 1;
        }
    }
    Ok(format!("CYCLES=4..7 TRIPLES={checked}"))
}

fn cycle_centralizers() -> Check {
    let d = 6;
    let (mut adjacent, mut separated, mut triples) = (0, 0, 0);
    for n in 4..=7 {
        for i in 0..n {
            for j in i + 1..n {
                let r = classify_cycle_centralizer(n, i, j, d).map_err(fail)?;
                ensure(r.holds(), || {
                    format!(
                        "N={n} PAIR={i},{j} CASE={:?} DIM={} SUPPORT_OK={} FORM_OK={}",
                        r.case, r.dimension, r.support_ok, r.form_ok
                    )
                })?;
                match r.case {
                    CycleCase::Adjacent => adjacent += 1,
                    CycleCase::Separated => {
                        ensure(circ(n, i, j) > 1, || format!("N={n} PAIR={i},{j} misclassified"))?;
                        separated += 1;
                    }
                }
            }
        }
        let alg = Algebra::new(Graph::cycle(n).map_err(fail)?);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let one = BigInt::one();
                    let g = LieElement::linear_combination(&alg, &[(i, one.clone()), (j, one.clone()), (k, one)])
                        .map_err(fail)?;
                    let slice = derived_centralizer(&g, d).map_err(fail)?;
                    ensure(slice.is_empty(), || {
                        format!("N={n} TRIPLE={i},{j},{k} DIM={}", slice.dimension())
                    })?;
                    triples += 1;
                }
            }
        }
    }
    Ok(format!(
        "DEGREE_BOUND={d} ADJACENT={adjacent} SEPARATED={separated} TRIPLES={triples}"
    ))
}

fn centralizer_intersection(seed: u64) -> Check {
    let mut rng = random::rng(seed, 4);
    let mut nontrivial = 0;
    for t in 0..50 {
        let n = rng.gen_range(3..=5);
        let k = rng.gen_range(2..=n.min(3));
        let mut order: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(order.as_mut_slice(), &mut rng);
        let indices = order[..k].to_vec();
        let density = [0.3, 0.6, 0.9][t % 3];
        let mut graph = random::random_graph_with_density(&mut rng, n, density);
        if t % 2 == 1 && n >= k + 2 {
            // Two non-adjacent vertices joined to every chosen index give
            // [x_a,x_b] in every centralizer.
            let (a, b) = (order[k], order[k + 1]);
            let mut edges: BTreeSet<(usize, usize)> = graph.edges().into_iter().collect();
            edges.remove(&(a.min(b), a.max(b)));
            for &i in &indices {
                edges.insert((a.min(i), a.max(i)));
                edges.insert((b.min(i), b.max(i)));
            }
            let edges: Vec<(usize, usize)> = edges.into_iter().collect();
            graph = Graph::new(n, &edges).map_err(fail)?;
        }
        let alg = Algebra::new(graph.clone());
        let coefficients: Vec<BigInt> = (0..k)
            .map(|_| {
                let c: i64 = rng.gen_range(1..=3);
                BigInt::from(if rng.gen_bool(0.5) { c } else { -c })
            })
            .collect();
        let r = check_intersection_theorem(&alg, &indices, &coefficients, 5).map_err(fail)?;
        ensure(r.holds, || {
            format!(
                "INSTANCE={t} GRAPH={graph} INDICES={indices:?} COEFFS={coefficients:?} COMBINED={} INTERSECTION={}",
                r.combined, r.intersection
            )
        })?;
        let terms: Vec<(usize, BigInt)> = indices.iter().copied().zip(coefficients.iter().cloned()).collect();
        let oracle: usize = (2..=5).map(|k| centralizer_dimension(&graph, &terms, k)).sum();
        ensure(oracle == r.combined, || {
            format!(
                "INSTANCE={t} GRAPH={graph} ENGINE_DIM={} ORACLE_DIM={oracle}",
                r.combined
            )
        })?;
        nontrivial += usize::from(r.combined > 0);
    }
    Ok(format!("INSTANCES=50 DEGREE_BOUND=5 NONEMPTY={nontrivial}"))
}

fn cycle_separation() -> Check {
    for m in 4..=8 {
        let alg = Algebra::new(Graph::cycle(m).map_err(fail)?);
        let inst = ThetaInstance::new(&alg, m).map_err(fail)?;
        let ids = (0..m)
            .map(|i| LieElement::generator(&alg, i))
            .collect::<Result<Vec<_>, _>>()
            .map_err(fail)?;
        let out = eval_theta(&inst, &ids).map_err(fail)?;
        ensure(out.holds, || format!("M={m} IDENTITY_FAILS={:?}", out.failed))?;
    }
    let mut nodes = 0u64;
    let mut exhausted = 0;
    for m in 5..=7 {
        for n in 4..m {
            let s = search_theta_witness(n, m, SearchMode::GeneratorAssignments).map_err(fail)?;
            ensure(s.exhausted(), || format!("N={n} M={m} WITNESS={:?}", s.witness))?;
            let j = search_theta_witness(n, m, SearchMode::JSequences).map_err(fail)?;
            ensure(j.exhausted(), || {
                format!("N={n} M={m} SEQUENCE_WITNESS={:?}", j.witness)
            })?;
            nodes += s.checked;
            exhausted += 1;
        }
    }
    for m in 5..=7 {
        let s = search_theta_witness(m, m, SearchMode::GeneratorAssignments).map_err(fail)?;
        ensure(s.witness.is_some(), || format!("N={m} M={m} no witness"))?;
    }
    for m in 4..=7 {
        let r = distinguish_cycles(3, m).map_err(fail)?;
        ensure(
            r.verdict == Verdict::SeparatedByCommutativity { counterexample: (1, 3) },
            || format!("N=3 M={m} VERDICT={:?}", r.verdict),
        )?;
    }
    Ok(format!(
        "THETA_IDENTITY=4..8 EXHAUSTED_PAIRS={exhausted} NODES={nodes} PSI_PAIRS=4"
    ))
}

fn check_compaction(graph: &Graph) -> Result<(), String> {
    let c = graph.compaction();
    let n = graph.vertex_count();
    let again = c.graph.compaction();
    ensure(again.graph == c.graph, || format!("GRAPH={graph} not idempotent"))?;
    ensure(c.graph.perp_classes().len() == c.graph.vertex_count(), || {
        format!("GRAPH={graph} compaction still has twins")
    })?;
    for u in 0..n {
        ensure(graph.perp_equivalent(u, c.kept[c.class_of[u]]), || {
            format!("GRAPH={graph} vertex {u} mapped outside its class")
        })?;
        for v in 0..n {
            let same = c.class_of[u] == c.class_of[v];
            ensure(same == graph.perp_equivalent(u, v), || {
                format!("GRAPH={graph} classes of {u},{v}")
            })?;
            if !same {
                ensure(
                    graph.adjacent(u, v) == c.graph.adjacent(c.class_of[u], c.class_of[v]),
                    || format!("GRAPH={graph} adjacency of {u},{v} not preserved"),
                )?;
            }
        }
    }
    Ok(())
}

fn compaction(seed: u64) -> Check {
    let fig = Graph::figure_one();
    let c = fig.compaction();
    let mut degrees: Vec<usize> = (0..c.graph.vertex_count()).map(|v| c.graph.degree(v)).collect();
    degrees.sort_unstable();
    let is_tree = c.graph.edge_count() + 1 == c.graph.vertex_count() && c.graph.connected_components().len() == 1;
    ensure(
        fig.vertex_count() == 7 && c.graph.vertex_count() == 5 && is_tree && degrees == [1, 1, 1, 2, 3],
        || format!("FIGURE_ONE_COMPACTION={} DEGREES={degrees:?}", c.graph),
    )?;
    check_compaction(&fig)?;

    let mut rng = random::rng(seed, 6);
    for _ in 0..200 {
        let n = rng.gen_range(1..=8);
        check_compaction(&random::random_graph(&mut rng, n))?;
    }

    let mut trees = 0;
    for n in 3..=6 {
        let mut seq = vec![0; n - 2];
        loop {
            let t = random::tree_from_prufer(n, &seq);
            ensure(t.compaction().graph.vertex_count() == n, || format!("TREE={t} shrinks"))?;
            trees += 1;
            let Some(p) = seq.iter().rposition(|&x| x + 1 < n) else {
                break;
            };
            seq[p] += 1;
            for x in &mut seq[p + 1..] {
                *x = 0;
            }
        }
    }
    for _ in 0..100 {
        let n = rng.gen_range(7..=8);
        let t = random::random_tree_graph(&mut rng, n);
        ensure(t.compaction().graph.vertex_count() == n, || format!("TREE={t} shrinks"))?;
        trees += 1;
    }
    Ok(format!(
        "FIGURE_ONE_VERTICES=5 SPIDER=true RANDOM_GRAPHS=200 TREES={trees}"
    ))
}

fn twin_instance(rng: &mut SeededRng, lambda_max: u64) -> Result<(Graph, PhiHom), String> {
    let n = rng.gen_range(3..=5);
    let (graph, removed, kept) = random::random_graph_with_twins(rng, n);
    let lambda = BigInt::from(rng.gen_range(1..=lambda_max));
    let h = PhiHom::new(&graph, removed, kept, lambda).map_err(fail)?;
    Ok((graph, h))
}

/// Adds `Σ_j α_j [w with j letters removed]` where `α` has a planted
/// positive root, so that small `λ` may kill a component.
fn planted(rng: &mut SeededRng, h: &PhiHom) -> Result<LieElement, String> {
    let alg = h.source();
    let n = alg.generator_count();
    let eps = rng.gen_range(1..=2);
    let others: Vec<usize> = (0..n).filter(|&v| v != h.removed() && v != h.kept()).collect();
    let extra = rng.gen_range(1..=2);
    let base: Vec<usize> = (0..extra).map(|_| others[rng.gen_range(0..others.len())]).collect();
    let root = BigInt::from(rng.gen_range(1..=4));
    // Coefficients of (λ - root)(1 + λ + ... + λ^(ε-1)).
    let mut alpha = vec![BigInt::from(0); eps + 1];
    for j in 0..eps {
        alpha[j] -= &root;
        alpha[j + 1] += 1;
    }
    let mut out = LieElement::zero(alg);
    for (j, a) in alpha.iter().enumerate() {
        let mut letters = base.clone();
        letters.extend(std::iter::repeat_n(h.removed(), j));
        letters.extend(std::iter::repeat_n(h.kept(), eps - j));
        out.add_assign(&LieElement::left_normed(alg, &letters).map_err(fail)?.scale(a));
    }
    Ok(out)
}

fn merging_maps(seed: u64) -> Check {
    let mut rng = random::rng(seed, 7);
    let mut components = 0;
    for t in 0..200 {
        let (graph, h) = twin_instance(&mut rng, 4)?;
        let ascending = Algebra::new(graph.clone());
        let home = if rng.gen_bool(0.5) { &ascending } else { h.source() };
        let a = random::random_element(&mut rng, home, 4, 3);
        let b = random::random_element(&mut rng, home, 4, 3);
        let ab = a.bracket(&b).map_err(fail)?;
        let (pa, pb) = (h.apply(&a).map_err(fail)?, h.apply(&b).map_err(fail)?);
        let sum = h.apply(&a.checked_add(&b).map_err(fail)?).map_err(fail)?;
        ensure(sum == pa.checked_add(&pb).map_err(fail)?, || {
            format!("PAIR={t} additivity A={a} B={b}")
        })?;
        let pab = h.apply(&ab).map_err(fail)?;
        ensure(pab == pa.bracket(&pb).map_err(fail)?, || {
            format!("PAIR={t} bracket A={a} B={b}")
        })?;
        for e in [&a, &b, &ab] {
            let by_components = h.apply_by_components(e).map_err(fail)?;
            ensure(by_components == h.apply(e).map_err(fail)?, || {
                format!("PAIR={t} scaling law E={e}")
            })?;
            ensure(check_subhomogeneous(e, &h).map_err(fail)?, || {
                format!("PAIR={t} subhomogeneity E={e}")
            })?;
            let lifted = h.lift(e).map_err(fail)?;
            for comp in lifted
                .derived_part()
                .glued_decomposition_for(h.removed(), h.kept())
                .map_err(fail)?
            {
                ensure(check_hombas(&comp, &h), || {
                    format!("PAIR={t} collapse of component in E={e}")
                })?;
                components += 1;
            }
        }
    }

    let mut above_one = 0;
    for t in 0..100 {
        let (_, h) = twin_instance(&mut rng, 1)?;
        let mut g = random::random_element(&mut rng, h.source(), 3, 2);
        g.add_assign(&planted(&mut rng, &h)?);
        if g.is_zero() {
            g = random::random_nonzero_element(&mut rng, h.source(), 3, 2);
        }
        let l0 = lambda_zero(&g, &h).map_err(fail)?;
        above_one += usize::from(l0 > BigInt::one());
        for k in 0..=3u32 {
            let hk = h.with_lambda(&l0 + k).map_err(fail)?;
            ensure(!hk.apply(&g).map_err(fail)?.is_zero(), || {
                format!("ELEMENT={t} G={g} LAMBDA0={l0} K={k}")
            })?;
        }
    }

    let mut lambdas = BTreeSet::new();
    for t in 0..20 {
        let n = rng.gen_range(3..=5);
        let (graph, _, _) = random::random_graph_with_twins(&mut rng, n);
        let alg = Algebra::new(graph.clone());
        let gamma: Vec<LieElement> = (0..3).map(|_| random::random_element(&mut rng, &alg, 3, 2)).collect();
        let r = compaction_witness(&graph, &gamma, None).map_err(fail)?;
        ensure(r.ok(), || {
            format!(
                "GAMMA={t} GRAPH={graph} KERNEL_DISJOINT={} IMAGES_DISTINCT={} RELATIONS={}",
                r.kernel_disjoint, r.images_distinct, r.relations_preserved
            )
        })?;
        lambdas.insert(r.lambda);
    }
    let lambdas: Vec<String> = lambdas.iter().map(|l| l.to_string()).collect();
    Ok(format!(
        "HOM_PAIRS=200 COMPONENTS={components} LAMBDA0_ELEMENTS=100 LAMBDA0_ABOVE_ONE={above_one} WITNESSES=20 LAMBDAS={}",
        lambdas.join(",")
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sixty_four_graphs() {
        let gs = all_graphs(4);
        assert_eq!(gs.len(), 64);
        let distinct: BTreeSet<String> = gs.iter().map(|g| g.to_json()).collect();
        assert_eq!(distinct.len(), 64);
    }

    #[test]
    fn unknown_criterion_fails() {
        let r = run_criterion(9, 1);
        assert!(!r.passed);
        assert!(r.line().starts_with("CRITERION=9 NAME=unknown RESULT=FAIL"));
    }
}
