use std::fmt::Write as _;

use super::FiniteOrthoLattice;

impl FiniteOrthoLattice {
    /// Longest-chain height of every element above 0.
    pub fn heights(&self) -> Vec<usize> {
        let covers = self.covers();
        let mut order: Vec<_> = self.elements().collect();
        // an element has strictly more elements below it than anything it covers
        order.sort_by_key(|&e| self.elements().filter(|&d| self.le(d, e)).count());
        let mut h = vec![0usize; self.size()];
        for e in order {
            for &(lo, hi) in &covers {
                if hi == e {
                    h[e.index()] = h[e.index()].max(h[lo.index()] + 1);
                }
            }
        }
        h
    }

    /// Hasse diagram as a bottom-to-top DOT digraph, one rank per height.
    pub fn hasse_dot(&self) -> String {
        let heights = self.heights();
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n");
        for e in self.elements() {
            let _ = writeln!(out, "  n{} [label=\"{}\"];", e.0, escape(self.name(e)));
        }
        let top = heights.iter().copied().max().unwrap_or(0);
        for level in 0..=top {
            let ids: Vec<String> =
                self.elements().filter(|e| heights[e.index()] == level).map(|e| format!("n{};", e.0)).collect();
            let _ = writeln!(out, "  {{ rank=same; {} }}", ids.join(" "));
        }
        for (lo, hi) in self.covers() {
            let _ = writeln!(out, "  n{} -> n{};", lo.0, hi.0);
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
