//! Bounded-radius semi-decider for Hurwitz equivalence: BFS over the orbit
//! graph with canonical hashing, witness extraction, and stabilizer checking.
//!
//! The equivalence problem is undecidable in general, so budgets are inherent:
//! a negative answer within budget means "not found", never "not equivalent"
//! (except for the invariant fast-fail, which is a proof).

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::hurwitz::{BraidWord, Factorization, GroupElement};

/// Bounds on the search: node expansions, BFS depth (braid length), and
/// word-length cap per tuple entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: usize,
    pub max_braid_length: usize,
    pub max_element_length: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 100_000,
            max_braid_length: 12,
            max_element_length: 64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    /// Target reached; the witness re-executes to it exactly.
    Found,
    /// Budget exhausted without reaching the target (inconclusive).
    ExhaustedBudget,
    /// Conserved invariants differ (product or conjugacy multiset): the
    /// inputs are provably not Hurwitz equivalent.
    InvariantMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    pub nodes_expanded: usize,
    pub frontier_peak: usize,
    pub dedup_hits: usize,
    /// Neighbors dropped by the element-length cap (a completeness trade-off).
    pub pruned: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub witness: Option<BraidWord>,
    pub stats: SearchStats,
}

/// Injective serialization of a factorization up to structural equality.
pub fn canonical_key<T: GroupElement>(f: &Factorization<T>) -> String {
    f.to_string()
}

/// `true` iff `b` stabilizes `F` (executes to exactly `F`).
pub fn stabilizer_check<T: GroupElement>(f: &Factorization<T>, b: &BraidWord) -> Result<bool> {
    Ok(&f.apply_braid(b)? == f)
}

struct Node {
    parent: usize,
    /// Braid letter applied at the parent; 0 for roots.
    letter: i32,
    depth: usize,
}

fn path_letters(nodes: &[Node], mut id: usize) -> Vec<i32> {
    let mut letters = Vec::new();
    while nodes[id].letter != 0 {
        letters.push(nodes[id].letter);
        id = nodes[id].parent;
    }
    letters.reverse();
    letters
}

fn neighbor_letters(len: usize) -> Vec<i32> {
    // Fixed neighbor order s_1, s_1^-1, s_2, s_2^-1, ...
    let mut out = Vec::with_capacity(2 * (len - 1));
    for i in 1..len {
        out.push(i as i32);
        out.push(-(i as i32));
    }
    out
}

/// BFS semi-decision of `F1 ~_H F2` within `budget`.  Fast-fails on conserved
/// invariants, returns a verified witness braid on success.
pub fn orbit_search<T: GroupElement>(
    f1: &Factorization<T>,
    f2: &Factorization<T>,
    budget: &SearchBudget,
    bidirectional: bool,
) -> Result<SearchOutcome> {
    if f1.len() != f2.len() {
        return Err(Error::LengthMismatch(f1.len(), f2.len()));
    }
    match (f1.elements().first(), f2.elements().first()) {
        (Some(a), Some(b)) if !a.compatible(b) => return Err(Error::IncompatibleElements),
        _ => {}
    }
    let mut stats = SearchStats::default();

    if f1 == f2 {
        let strands = f1.len().max(1);
        return Ok(SearchOutcome {
            status: SearchStatus::Found,
            witness: Some(BraidWord::empty(strands)),
            stats,
        });
    }
    // Conservation (product) and conjugacy-class multiset are invariants of
    // the action; a mismatch proves non-equivalence.
    if f1.product() != f2.product() || f1.conjugacy_multiset() != f2.conjugacy_multiset() {
        return Ok(SearchOutcome {
            status: SearchStatus::InvariantMismatch,
            witness: None,
            stats,
        });
    }
    if f1.len() < 2 {
        // No generators act; distinct tuples of length < 2 with equal
        // invariants cannot occur (length 1 with equal products is equal).
        return Ok(SearchOutcome {
            status: SearchStatus::ExhaustedBudget,
            witness: None,
            stats,
        });
    }

    let strands = f1.len();
    let letters = neighbor_letters(strands);

    if !bidirectional {
        let mut nodes: Vec<Node> = vec![Node {
            parent: 0,
            letter: 0,
            depth: 0,
        }];
        let mut states: Vec<Factorization<T>> = vec![f1.clone()];
        let mut visited: HashMap<String, usize> = HashMap::new();
        visited.insert(canonical_key(f1), 0);
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        stats.frontier_peak = 1;
        let target_key = canonical_key(f2);

        while let Some(id) = queue.pop_front() {
            if stats.nodes_expanded >= budget.max_nodes {
                return Ok(SearchOutcome {
                    status: SearchStatus::ExhaustedBudget,
                    witness: None,
                    stats,
                });
            }
            if nodes[id].depth >= budget.max_braid_length {
                continue;
            }
            stats.nodes_expanded += 1;
            for &l in &letters {
                let sign = if l > 0 {
                    crate::freegroup::Sign::Plus
                } else {
                    crate::freegroup::Sign::Minus
                };
                let next = states[id].apply_generator(l.unsigned_abs() as usize, sign)?;
                if next
                    .elements()
                    .iter()
                    .any(|e| e.size() > budget.max_element_length)
                {
                    stats.pruned += 1;
                    continue;
                }
                let key = canonical_key(&next);
                if visited.contains_key(&key) {
                    stats.dedup_hits += 1;
                    continue;
                }
                let nid = nodes.len();
                nodes.push(Node {
                    parent: id,
                    letter: l,
                    depth: nodes[id].depth + 1,
                });
                states.push(next);
                visited.insert(key.clone(), nid);
                if key == target_key {
                    let witness = BraidWord::new(strands, path_letters(&nodes, nid))?;
                    debug_assert_eq!(&f1.apply_braid(&witness)?, f2);
                    return Ok(SearchOutcome {
                        status: SearchStatus::Found,
                        witness: Some(witness),
                        stats,
                    });
                }
                queue.push_back(nid);
                stats.frontier_peak = stats.frontier_peak.max(queue.len());
            }
        }
        return Ok(SearchOutcome {
            status: SearchStatus::ExhaustedBudget,
            witness: None,
            stats,
        });
    }

    // Bidirectional: expand the two frontiers in strict alternation (forward
    // level, then backward level); meet detection via canonical keys.
    let mut nodes: [Vec<Node>; 2] = [
        vec![Node {
            parent: 0,
            letter: 0,
            depth: 0,
        }],
        vec![Node {
            parent: 0,
            letter: 0,
            depth: 0,
        }],
    ];
    let mut states: [Vec<Factorization<T>>; 2] = [vec![f1.clone()], vec![f2.clone()]];
    let mut visited: [HashMap<String, usize>; 2] = [HashMap::new(), HashMap::new()];
    visited[0].insert(canonical_key(f1), 0);
    visited[1].insert(canonical_key(f2), 0);
    let mut queues: [VecDeque<usize>; 2] = [VecDeque::from([0]), VecDeque::from([0])];
    stats.frontier_peak = 2;
    // Combined depth must not exceed max_braid_length.
    let half = [
        budget.max_braid_length.div_ceil(2),
        budget.max_braid_length / 2,
    ];

    let finish = |nodes: &[Vec<Node>; 2],
                  fwd: usize,
                  bwd: usize,
                  stats: SearchStats|
     -> Result<SearchOutcome> {
        let mut letters = path_letters(&nodes[0], fwd);
        let back = path_letters(&nodes[1], bwd);
        letters.extend(back.iter().rev().map(|l| -l));
        let witness = BraidWord::new(strands, letters)?;
        debug_assert_eq!(&f1.apply_braid(&witness)?, f2);
        Ok(SearchOutcome {
            status: SearchStatus::Found,
            witness: Some(witness),
            stats,
        })
    };

    let mut side = 0usize;
    loop {
        if queues[0].is_empty() && queues[1].is_empty() {
            return Ok(SearchOutcome {
                status: SearchStatus::ExhaustedBudget,
                witness: None,
                stats,
            });
        }
        let cur = side;
        side = 1 - side;
        // Expand one full level of `cur`.
        let level_depth = queues[cur].front().map(|&id| nodes[cur][id].depth);
        let Some(level_depth) = level_depth else {
            continue;
        };
        while let Some(&id) = queues[cur].front() {
            if nodes[cur][id].depth != level_depth {
                break;
            }
            queues[cur].pop_front();
            if stats.nodes_expanded >= budget.max_nodes {
                return Ok(SearchOutcome {
                    status: SearchStatus::ExhaustedBudget,
                    witness: None,
                    stats,
                });
            }
            if nodes[cur][id].depth >= half[cur] {
                continue;
            }
            stats.nodes_expanded += 1;
            for &l in &letters {
                let sign = if l > 0 {
                    crate::freegroup::Sign::Plus
                } else {
                    crate::freegroup::Sign::Minus
                };
                let next = states[cur][id].apply_generator(l.unsigned_abs() as usize, sign)?;
                if next
                    .elements()
                    .iter()
                    .any(|e| e.size() > budget.max_element_length)
                {
                    stats.pruned += 1;
                    continue;
                }
                let key = canonical_key(&next);
                if visited[cur].contains_key(&key) {
                    stats.dedup_hits += 1;
                    continue;
                }
                let nid = nodes[cur].len();
                nodes[cur].push(Node {
                    parent: id,
                    letter: l,
                    depth: nodes[cur][id].depth + 1,
                });
                states[cur].push(next);
                visited[cur].insert(key.clone(), nid);
                if let Some(&other_id) = visited[1 - cur].get(&key) {
                    let (fwd, bwd) = if cur == 0 {
                        (nid, other_id)
                    } else {
                        (other_id, nid)
                    };
                    return finish(&nodes, fwd, bwd, stats);
                }
                queues[cur].push_back(nid);
                stats.frontier_peak = stats.frontier_peak.max(queues[0].len() + queues[1].len());
            }
        }
    }
}
