//! Forcing sets and forcing numbers of perfect matchings.
//!
//! A subset S of a perfect matching M forces M when M is the only perfect
//! matching containing S; equivalently, deleting the endvertices of S
//! leaves a graph in which M \ S is the unique perfect matching. The
//! minimum forcing number search enumerates subsets by size, seeded with
//! the rank lower bound N - rank(assignment) valid for every matching of
//! the graph.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::ControlFlow;

use rayon::prelude::*;
use thiserror::Error;

use crate::bits;
use crate::certificate::build_b;
use crate::gf::GfMatrix;
use crate::hypercube::AssignError;
use crate::matching::{
    for_each_perfect_matching, unique_perfect_matching, BipartiteGraph, GraphError, Matching,
};

/// Default cap on matching size for the minimum forcing-set search.
pub const DEFAULT_EDGE_CAP: usize = 16;
/// Default cap on the hypercube dimension for exhaustive sweeps.
pub const DEFAULT_SWEEP_DIMENSION_CAP: usize = 4;

/// Provenance of the lower bound a forcing search was seeded with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundSource {
    Rank,
    None,
}

impl fmt::Display for BoundSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundSource::Rank => "rank",
            BoundSource::None => "none",
        })
    }
}

/// Result of a minimum forcing-set computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForcingReport {
    pub matching: Matching,
    pub forcing_number: usize,
    /// A minimum forcing set; the lexicographically first one in edge-index
    /// order among those of minimum size.
    pub witness: Matching,
    pub lower_bound_used: usize,
    pub bound_source: BoundSource,
}

impl ForcingReport {
    /// `matching <k> forcing <f> witness <edge list> bound <b> source <s>`.
    pub fn format_with(&self, g: &BipartiteGraph) -> String {
        format!(
            "matching {} forcing {} witness {} bound {} source {}",
            self.matching.len(),
            self.forcing_number,
            self.witness.format_edges(g),
            self.lower_bound_used,
            self.bound_source,
        )
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundError {
    #[error("graph parts differ in size: {left} against {right}")]
    Unbalanced { left: usize, right: usize },
    #[error(transparent)]
    Assign(#[from] AssignError),
}

/// Does `s` force `m`? True iff deleting the endvertices of `s` leaves a
/// graph whose perfect matching (necessarily m \ s) is unique.
pub fn is_forcing(
    g: &BipartiteGraph,
    m: &Matching,
    s: &Matching,
) -> Result<bool, GraphError> {
    validate_matching(g, m)?;
    subset_of(g, s, m)?;
    Ok(forces(g, s))
}

fn validate_matching(g: &BipartiteGraph, m: &Matching) -> Result<(), GraphError> {
    // revalidate against this graph: the matching may have been built
    // elsewhere
    Matching::new(g, m.edges().to_vec())?;
    m.check_perfect(g)
}

fn subset_of(g: &BipartiteGraph, s: &Matching, m: &Matching) -> Result<(), GraphError> {
    for &(l, r) in s.edges() {
        if !m.edges().contains(&(l, r)) {
            return Err(GraphError::NotInMatching {
                left: g.left_label(l).to_owned(),
                right: g.right_label(r).to_owned(),
            });
        }
    }
    Ok(())
}

/// Uniqueness test on the subgraph left after deleting `s`'s endvertices.
/// Assumes `s` is a sub-matching of `g`.
fn forces(g: &BipartiteGraph, s: &Matching) -> bool {
    let mut kept_left = vec![!0u64; bits::words_for(g.n_left())];
    let mut kept_right = vec![!0u64; bits::words_for(g.n_right())];
    trim_mask(&mut kept_left, g.n_left());
    trim_mask(&mut kept_right, g.n_right());
    for &(l, r) in s.edges() {
        bits::set_bit(&mut kept_left, l, false);
        bits::set_bit(&mut kept_right, r, false);
    }
    let left: Vec<usize> = bits::ones(&kept_left).collect();
    let right: Vec<usize> = bits::ones(&kept_right).collect();
    let rest = g.induced_by_indices(&left, &right).to_graph();
    unique_perfect_matching(&rest).is_some()
}

fn trim_mask(mask: &mut [u64], len: usize) {
    if let Some(last) = mask.last_mut() {
        *last &= bits::tail_mask(if len % 64 == 0 { 64 } else { len });
    }
    if len == 0 {
        mask.iter_mut().for_each(|w| *w = 0);
    }
}

/// Minimum forcing number of `m`, searching subset sizes upward from
/// `lower` (which the caller asserts is a valid lower bound).
///
/// Subsets of equal size are tried in lexicographic edge-index order and
/// the first forcing one wins, so reports are deterministic.
pub fn forcing_number(
    g: &BipartiteGraph,
    m: &Matching,
    lower: usize,
    source: BoundSource,
    edge_cap: usize,
) -> Result<ForcingReport, GraphError> {
    validate_matching(g, m)?;
    if m.len() > edge_cap {
        return Err(GraphError::EdgeCapExceeded {
            edges: m.len(),
            cap: edge_cap,
        });
    }
    let edges = m.edges();
    for size in lower.min(edges.len())..=edges.len() {
        let mut found = None;
        let _ = for_each_combination(edges.len(), size, |chosen| {
            let s = Matching::new(g, chosen.iter().map(|&i| edges[i]).collect())
                .expect("subset of a valid matching");
            if forces(g, &s) {
                found = Some(s);
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        if let Some(witness) = found {
            return Ok(ForcingReport {
                matching: m.clone(),
                forcing_number: size,
                witness,
                lower_bound_used: lower,
                bound_source: source,
            });
        }
    }
    unreachable!("the whole matching always forces itself");
}

/// Visit all k-subsets of 0..n in lexicographic order.
fn for_each_combination(
    n: usize,
    k: usize,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if k > n {
        return ControlFlow::Continue(());
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(&idx)?;
        // advance: find the rightmost index that can still move right
        let mut i = k;
        loop {
            if i == 0 {
                return ControlFlow::Continue(());
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Every forcing set of every perfect matching of `g` has at least
/// `N - rank(assignment)` edges, where `assignment` is any nonzero
/// assignment of `g`'s support over a field and N the part size.
pub fn rank_lower_bound(g: &BipartiteGraph, assignment: &GfMatrix) -> Result<usize, BoundError> {
    if g.n_left() != g.n_right() {
        return Err(BoundError::Unbalanced {
            left: g.n_left(),
            right: g.n_right(),
        });
    }
    g.support().check_assignment(assignment)?;
    Ok(g.n_left() - assignment.rank())
}

/// The set of forcing numbers over all perfect matchings of `g`.
///
/// Per-matching searches run in parallel on the current rayon pool; the
/// result is an order-independent set.
pub fn forcing_spectrum(
    g: &BipartiteGraph,
    lower: usize,
    source: BoundSource,
    vertex_cap: usize,
    edge_cap: usize,
) -> Result<BTreeSet<usize>, GraphError> {
    // deduplicate by canonical edge list; enumeration order is an
    // implementation detail
    let mut matchings = BTreeSet::new();
    for_each_perfect_matching(g, vertex_cap, |m| {
        matchings.insert(m.clone());
        ControlFlow::Continue(())
    })?;
    matchings
        .into_par_iter()
        .map(|m| forcing_number(g, &m, lower, source, edge_cap).map(|r| r.forcing_number))
        .collect()
}

/// How `max_unique_pm_order` should establish its answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    /// Sweep all balanced induced subgraphs, largest first; exact.
    Exhaustive,
    /// Certify the 2·rank upper bound from the GF(3) assignment without
    /// searching; attainment stays unverified.
    Bounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MaxUniqueOutcome {
    Exhaustive {
        /// Maximum order of an induced subgraph of Q_n with a unique
        /// perfect matching.
        order: usize,
        /// Vertex labels of one maximum witness, sorted.
        witness_vertices: Vec<String>,
    },
    Certified {
        /// Upper bound 2·rank(B_n); no subgraph search performed.
        bound: usize,
    },
}

/// Maximum order of a unique-perfect-matching induced subgraph of Q_n.
///
/// Exhaustive mode checks every balanced pair of part subsets from the
/// largest size down, so the first hit is both the maximum and a proof
/// that nothing larger qualifies.
pub fn max_unique_pm_order(
    n: usize,
    mode: SweepMode,
    exhaustive_dimension_cap: usize,
) -> Result<MaxUniqueOutcome, GraphError> {
    match mode {
        SweepMode::Bounded => {
            let b = build_b(n.max(2));
            Ok(MaxUniqueOutcome::Certified { bound: 2 * b.rank() })
        }
        SweepMode::Exhaustive => {
            if n > exhaustive_dimension_cap {
                return Err(GraphError::DimensionCapExceeded {
                    n,
                    cap: exhaustive_dimension_cap,
                });
            }
            let g = BipartiteGraph::hypercube(n);
            let side = g.n_left();
            for k in (1..=side).rev() {
                let mut witness = None;
                let _ = for_each_combination(side, k, |left| {
                    let mut inner_witness = None;
                    let _ = for_each_combination(side, k, |right| {
                        let sub = g.induced_by_indices(left, right).to_graph();
                        if unique_perfect_matching(&sub).is_some() {
                            let mut vертices: Vec<String> = (0..k)
                                .map(|i| sub.left_label(i).to_owned())
                                .chain((0..k).map(|j| sub.right_label(j).to_owned()))
                                .collect();
                            vертices.sort();
                            inner_witness = Some(vертices);
                            ControlFlow::Break(())
                        } else {
                            ControlFlow::Continue(())
                        }
                    });
                    if let Some(w) = inner_witness {
                        witness = Some(w);
                        ControlFlow::Break(())
                    } else {
                        ControlFlow::Continue(())
                    }
                });
                if let Some(witness_vertices) = witness {
                    return Ok(MaxUniqueOutcome::Exhaustive {
                        order: 2 * k,
                        witness_vertices,
                    });
                }
            }
            Ok(MaxUniqueOutcome::Exhaustive {
                order: 0,
                witness_vertices: Vec::new(),
            })
        }
    }
}
