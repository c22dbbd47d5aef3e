//! Accepting-lasso search on explicit graphs.
//!
//! A lasso is accepted when some strongly connected component reachable
//! from an initial node contains a cycle (a self-loop counts) and meets
//! every acceptance set. With no acceptance sets any cycle is accepting.

use std::collections::VecDeque;

/// A path from an initial node into a cycle: `prefix` ends at the node
/// where `cycle` starts, and the cycle returns to its first node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Lasso {
    pub prefix: Vec<usize>,
    pub cycle: Vec<usize>,
}

/// Strongly connected components in reverse topological order (iterative Tarjan).
pub(crate) fn tarjan_scc(succ: &[Vec<usize>], roots: impl IntoIterator<Item = usize>) -> Vec<Vec<usize>> {
    const UNSEEN: usize = usize::MAX;
    let n = succ.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut next_index = 0;
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in roots {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut edge)) = call.last_mut() {
            if let Some(&w) = succ[v].get(*edge) {
                *edge += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut component = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    component.push(w);
                    if w == v {
                        break;
                    }
                }
                component.sort_unstable();
                components.push(component);
            }
        }
    }
    components
}

/// Finds an accepting lasso reachable from `init`, if any.
pub(crate) fn find_accepting_lasso(succ: &[Vec<usize>], init: &[usize], acceptance: &[Vec<bool>]) -> Option<Lasso> {
    let n = succ.len();
    for component in tarjan_scc(succ, init.iter().copied()) {
        let mut member = vec![false; n];
        for &v in &component {
            member[v] = true;
        }
        let cyclic = component.len() > 1 || succ[component[0]].contains(&component[0]);
        if !cyclic {
            continue;
        }
        let hits: Option<Vec<usize>> =
            acceptance.iter().map(|set| component.iter().copied().find(|&v| set[v])).collect();
        let Some(hits) = hits else { continue };

        let start = hits.first().copied().unwrap_or(component[0]);
        let prefix = shortest_path(succ, init, |v| v == start, |_| true)?;
        let mut cycle = vec![start];
        let mut at = start;
        for &goal in hits.iter().skip(1).chain(std::iter::once(&start)) {
            let leg = if goal == at {
                // close a loop through at least one edge
                let mut best: Option<Vec<usize>> = None;
                for &w in succ[at].iter().filter(|&&w| member[w]) {
                    if let Some(mut path) = shortest_path(succ, &[w], |v| v == goal, |v| member[v]) {
                        path.insert(0, at);
                        if best.as_ref().is_none_or(|b| path.len() < b.len()) {
                            best = Some(path);
                        }
                    }
                }
                best.expect("cyclic component has a loop through every member")
            } else {
                shortest_path(succ, &[at], |v| v == goal, |v| member[v]).expect("component is strongly connected")
            };
            cycle.extend(leg.into_iter().skip(1));
            at = goal;
        }
        cycle.pop();
        return Some(Lasso { prefix, cycle });
    }
    None
}

fn shortest_path(
    succ: &[Vec<usize>],
    from: &[usize],
    is_goal: impl Fn(usize) -> bool,
    allowed: impl Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; succ.len()];
    let mut seen = vec![false; succ.len()];
    let mut queue = VecDeque::new();
    for &s in from {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        if is_goal(v) {
            let mut path = vec![v];
            let mut at = v;
            while parent[at] != usize::MAX {
                at = parent[at];
                path.push(at);
            }
            path.reverse();
            return Some(path);
        }
        for &w in &succ[v] {
            if !seen[w] && allowed(w) {
                seen[w] = true;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_of_small_graph() {
        // 0 -> 1 -> 2 -> 1, 2 -> 3, 3 -> 3
        let succ = vec![vec![1], vec![2], vec![1, 3], vec![3]];
        let sccs = tarjan_scc(&succ, [0]);
        assert_eq!(sccs, vec![vec![3], vec![1, 2], vec![0]]);
    }

    #[test]
    fn lasso_hits_every_acceptance_set() {
        let succ = vec![vec![1], vec![2], vec![1, 3], vec![3]];
        let acc = vec![vec![false, true, false, false], vec![false, false, true, false]];
        let lasso = find_accepting_lasso(&succ, &[0], &acc).unwrap();
        assert_eq!(lasso.prefix, vec![0, 1]);
        assert_eq!(lasso.cycle, vec![1, 2]);
    }

    #[test]
    fn self_loops_count_and_trivial_components_do_not() {
        let succ = vec![vec![1], vec![1]];
        let lasso = find_accepting_lasso(&succ, &[0], &[vec![false, true]]).unwrap();
        assert_eq!(lasso.cycle, vec![1]);
        assert!(find_accepting_lasso(&succ, &[0], &[vec![true, false]]).is_none());
        let acyclic = vec![vec![1], vec![]];
        assert!(find_accepting_lasso(&acyclic, &[0], &[]).is_none());
    }

    #[test]
    fn unreachable_components_are_ignored() {
        let succ = vec![vec![0], vec![1]];
        assert!(find_accepting_lasso(&succ, &[0], &[vec![false, true]]).is_none());
    }
}
