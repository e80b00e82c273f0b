use num_integer::Integer;

use super::Dfa;

/// One strongly connected component of a transition graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub states: Vec<usize>,
    /// `adjacency[i][j]`: number of letters leading from `states[i]` to
    /// `states[j]`.
    pub adjacency: Vec<Vec<u64>>,
    /// gcd of cycle lengths; `None` when the component has no cycle.
    pub period: Option<usize>,
    pub is_simple_cycle: bool,
}

impl Component {
    pub fn is_cyclic(&self) -> bool {
        self.period.is_some()
    }

    pub fn size(&self) -> usize {
        self.states.len()
    }
}

/// Strongly connected components, numbered in topological order of the
/// condensation (the component of the initial state comes first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccDecomposition {
    pub components: Vec<Component>,
    pub component_of: Vec<usize>,
    /// Edges between distinct components with letter multiplicity.
    pub condensation: Vec<Vec<(usize, u64)>>,
}

impl SccDecomposition {
    pub fn initial_component(&self, dfa: &Dfa) -> usize {
        self.component_of[dfa.initial()]
    }
}

/// Tarjan's algorithm (iterative) plus per-component multi-edge counts,
/// periods and simple-cycle flags.
pub fn scc_decompose(dfa: &Dfa) -> SccDecomposition {
    let n = dfa.num_states();
    let succ: Vec<Vec<usize>> = (0..n).map(|q| dfa.row(q).iter().flatten().copied().collect()).collect();

    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut raw: Vec<Vec<usize>> = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut child)) = call.last_mut() {
            if *child < succ[v].len() {
                let w = succ[v][*child];
                *child += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    raw.push(comp);
                }
            }
        }
    }
    // Tarjan emits components in reverse topological order.
    raw.reverse();
    let mut component_of = vec![0; n];
    for (c, states) in raw.iter().enumerate() {
        for &q in states {
            component_of[q] = c;
        }
    }
    let mut condensation = vec![Vec::<(usize, u64)>::new(); raw.len()];
    let mut components = Vec::with_capacity(raw.len());
    for (c, states) in raw.into_iter().enumerate() {
        let local = |q: usize| states.binary_search(&q).ok();
        let m = states.len();
        let mut adjacency = vec![vec![0u64; m]; m];
        for (i, &q) in states.iter().enumerate() {
            for &r in dfa.row(q).iter().flatten() {
                match local(r) {
                    Some(j) => adjacency[i][j] += 1,
                    None => {
                        let target = component_of[r];
                        match condensation[c].iter_mut().find(|(t, _)| *t == target) {
                            Some(e) => e.1 += 1,
                            None => condensation[c].push((target, 1)),
                        }
                    }
                }
            }
        }
        let period = period_of(&adjacency);
        let is_simple_cycle = period.is_some() && adjacency.iter().all(|row| row.iter().sum::<u64>() == 1);
        components.push(Component { states, adjacency, period, is_simple_cycle });
    }
    for edges in &mut condensation {
        edges.sort_unstable();
    }
    SccDecomposition { components, component_of, condensation }
}

/// gcd of `level(u) + 1 - level(v)` over internal edges, with BFS levels.
fn period_of(adjacency: &[Vec<u64>]) -> Option<usize> {
    let m = adjacency.len();
    let mut level = vec![usize::MAX; m];
    level[0] = 0;
    let mut queue = std::collections::VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for v in 0..m {
            if adjacency[u][v] > 0 && level[v] == usize::MAX {
                level[v] = level[u] + 1;
                queue.push_back(v);
            }
        }
    }
    let mut g = 0usize;
    let mut any = false;
    for u in 0..m {
        for v in 0..m {
            if adjacency[u][v] > 0 {
                any = true;
                let diff = (level[u] + 1).abs_diff(level[v]);
                g = g.gcd(&diff);
            }
        }
    }
    any.then_some(g)
}
