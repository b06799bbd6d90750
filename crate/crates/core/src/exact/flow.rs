use std::collections::VecDeque;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub capacity: u64,
}

/// A directed network with integer capacities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    nodes: usize,
    arcs: Vec<Arc>,
    source: usize,
    sink: usize,
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: usize, sink: usize) -> Result<Self> {
        if source >= nodes || sink >= nodes || source == sink {
            return Err(Error::InvalidArgument(format!(
                "bad terminals {source} -> {sink} for {nodes} nodes"
            )));
        }
        Ok(Self {
            nodes,
            arcs: Vec::new(),
            source,
            sink,
        })
    }

    pub fn add_arc(&mut self, from: usize, to: usize, capacity: u64) -> Result<()> {
        if from >= self.nodes || to >= self.nodes {
            return Err(Error::InvalidArgument(format!(
                "arc {from} -> {to} outside 0..{}",
                self.nodes
            )));
        }
        if from == to {
            return Err(Error::InvalidArgument(format!("self-loop arc at {from}")));
        }
        self.arcs.push(Arc { from, to, capacity });
        Ok(())
    }

    /// Appends a node and returns its index.
    pub fn add_node(&mut self) -> usize {
        self.nodes += 1;
        self.nodes - 1
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    /// Capacity of the arcs leaving `sink_side`'s complement into `sink_side`.
    pub fn cut_capacity(&self, sink_side: &[bool]) -> u64 {
        self.arcs
            .iter()
            .filter(|a| !sink_side[a.from] && sink_side[a.to])
            .map(|a| a.capacity)
            .sum()
    }
}

/// Maximum flow value and a minimum cut achieving it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowCut {
    pub value: u64,
    /// `sink_side[v]` is true for nodes that can still reach the sink in the
    /// residual graph; this is the smallest sink side among minimum cuts.
    pub sink_side: Vec<bool>,
}

/// Edmonds-Karp: augment along breadth-first shortest paths until none remain.
pub fn max_flow(net: &FlowNetwork) -> FlowCut {
    let n = net.nodes();
    // Residual arcs come in pairs: 2i is arc i, 2i + 1 its reverse.
    let mut head = Vec::with_capacity(net.arcs.len() * 2);
    let mut residual = Vec::with_capacity(net.arcs.len() * 2);
    let mut adjacent: Vec<Vec<usize>> = vec![Vec::new(); n];
    for a in &net.arcs {
        adjacent[a.from].push(head.len());
        head.push(a.to);
        residual.push(a.capacity);
        adjacent[a.to].push(head.len());
        head.push(a.from);
        residual.push(0);
    }

    let mut value: u64 = 0;
    let mut via = vec![usize::MAX; n];
    loop {
        via.fill(usize::MAX);
        let mut queue = VecDeque::from([net.source]);
        let mut reached = false;
        'bfs: while let Some(u) = queue.pop_front() {
            for &e in &adjacent[u] {
                let v = head[e];
                if residual[e] > 0 && v != net.source && via[v] == usize::MAX {
                    via[v] = e;
                    if v == net.sink {
                        reached = true;
                        break 'bfs;
                    }
                    queue.push_back(v);
                }
            }
        }
        if !reached {
            break;
        }
        let mut bottleneck = u64::MAX;
        let mut v = net.sink;
        while v != net.source {
            let e = via[v];
            bottleneck = bottleneck.min(residual[e]);
            v = head[e ^ 1];
        }
        let mut v = net.sink;
        while v != net.source {
            let e = via[v];
            residual[e] -= bottleneck;
            residual[e ^ 1] += bottleneck;
            v = head[e ^ 1];
        }
        value += bottleneck;
    }

    // Reverse search from the sink: u reaches v when residual(u -> v) > 0.
    let mut sink_side = vec![false; n];
    sink_side[net.sink] = true;
    let mut queue = VecDeque::from([net.sink]);
    while let Some(v) = queue.pop_front() {
        for &e in &adjacent[v] {
            // e runs v -> u; its partner runs u -> v.
            let u = head[e];
            if residual[e ^ 1] > 0 && !sink_side[u] {
                sink_side[u] = true;
                queue.push_back(u);
            }
        }
    }
    FlowCut { value, sink_side }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn network(nodes: usize, arcs: &[(usize, usize, u64)]) -> FlowNetwork {
        let mut net = FlowNetwork::new(nodes, 0, nodes - 1).unwrap();
        for &(a, b, c) in arcs {
            net.add_arc(a, b, c).unwrap();
        }
        net
    }

    #[test]
    fn single_arc() {
        let cut = max_flow(&network(2, &[(0, 1, 5)]));
        assert_eq!(cut.value, 5);
        assert_eq!(cut.sink_side, vec![false, true]);
    }

    #[test]
    fn two_parallel_paths() {
        // 0 -> 1 -> 3 with (3, 7) and 0 -> 2 -> 3 with (4, 2)
        let net = network(4, &[(0, 1, 3), (1, 3, 7), (0, 2, 4), (2, 3, 2)]);
        let cut = max_flow(&net);
        assert_eq!(cut.value, 5);
        assert_eq!(net.cut_capacity(&cut.sink_side), 5);
    }

    #[test]
    fn disconnected() {
        let cut = max_flow(&network(4, &[(0, 1, 3), (2, 3, 9)]));
        assert_eq!(cut.value, 0);
        assert!(cut.sink_side[3] && cut.sink_side[2]);
        assert!(!cut.sink_side[0] && !cut.sink_side[1]);
    }

    #[test]
    fn malformed_networks() {
        assert!(FlowNetwork::new(2, 0, 0).is_err());
        assert!(FlowNetwork::new(2, 0, 2).is_err());
        let mut net = FlowNetwork::new(3, 0, 2).unwrap();
        assert!(net.add_arc(1, 1, 1).is_err());
        assert!(net.add_arc(1, 3, 1).is_err());
    }

    /// Minimum over every sink side containing the sink and not the source.
    fn brute_min_cut(net: &FlowNetwork) -> u64 {
        let inner: Vec<usize> = (0..net.nodes())
            .filter(|&v| v != net.source() && v != net.sink())
            .collect();
        (0..1u32 << inner.len())
            .map(|mask| {
                let mut side = vec![false; net.nodes()];
                side[net.sink()] = true;
                for (i, &v) in inner.iter().enumerate() {
                    side[v] = mask >> i & 1 == 1;
                }
                net.cut_capacity(&side)
            })
            .min()
            .unwrap()
    }

    proptest! {
        #[test]
        fn matches_enumerated_min_cut(
            nodes in 2usize..=12,
            raw in proptest::collection::vec((0usize..12, 0usize..12, 0u64..10), 0..40),
        ) {
            let mut net = FlowNetwork::new(nodes, 0, nodes - 1).unwrap();
            for (a, b, c) in raw {
                let (a, b) = (a % nodes, b % nodes);
                if a != b {
                    net.add_arc(a, b, c).unwrap();
                }
            }
            let cut = max_flow(&net);
            prop_assert_eq!(cut.value, brute_min_cut(&net));
            prop_assert_eq!(net.cut_capacity(&cut.sink_side), cut.value);
            prop_assert!(cut.sink_side[net.sink()] && !cut.sink_side[net.source()]);
        }
    }
}
