//! Matching on a line of `R` edges between a start and an end boundary.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Endpoint {
    Start,
    Step(usize),
    End,
}

impl Endpoint {
    fn position(self, r: usize) -> usize {
        match self {
            Self::Start => 0,
            Self::Step(t) => t,
            Self::End => r,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineMatching {
    pub pairs: Vec<(Endpoint, Endpoint)>,
    pub length: usize,
    /// Length of the candidate not chosen.
    pub other_length: usize,
}

impl LineMatching {
    /// Edges `a+1..=b` covered by each pair, as round numbers.
    #[must_use]
    pub fn rounds(&self, r: usize) -> Vec<usize> {
        self.pairs.iter().flat_map(|&(a, b)| a.position(r) + 1..=b.position(r)).collect()
    }
}

fn alternate(nodes: &[Endpoint], r: usize) -> (Vec<(Endpoint, Endpoint)>, usize) {
    let pairs: Vec<(Endpoint, Endpoint)> = nodes.chunks(2).map(|c| (c[0], c[1])).collect();
    let len = pairs.iter().map(|&(a, b)| b.position(r) - a.position(r)).sum();
    (pairs, len)
}

/// Pairs the odd steps (strictly between 0 and `r`, sorted) using one of the
/// two alternating matchings: consecutive pairs with the start boundary taken
/// when needed, or its complement. The shorter wins; ties keep the first.
#[must_use]
pub fn line_match(odd_steps: &[usize], r: usize) -> LineMatching {
    debug_assert!(odd_steps.windows(2).all(|w| w[0] < w[1]));
    debug_assert!(odd_steps.iter().all(|&t| t > 0 && t < r));
    if odd_steps.is_empty() {
        return LineMatching { pairs: Vec::new(), length: 0, other_length: r };
    }
    let steps: Vec<Endpoint> = odd_steps.iter().map(|&t| Endpoint::Step(t)).collect();
    let odd = steps.len() % 2 == 1;
    let mut a_nodes = Vec::new();
    let mut b_nodes = vec![Endpoint::Start];
    if odd {
        a_nodes.push(Endpoint::Start);
    }
    a_nodes.extend_from_slice(&steps);
    b_nodes.extend_from_slice(&steps);
    b_nodes.push(Endpoint::End);
    if odd {
        b_nodes.remove(0);
    }
    let (a, la) = alternate(&a_nodes, r);
    let (b, lb) = alternate(&b_nodes, r);
    if la <= lb {
        LineMatching { pairs: a, length: la, other_length: lb }
    } else {
        LineMatching { pairs: b, length: lb, other_length: la }
    }
}
