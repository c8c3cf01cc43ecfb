//! Deterministic local strategies: the vertices of the local polytope.

use std::fmt;

use serde::Serialize;

/// Outcome of a Y measurement, reduced to the event "+1" versus anything else.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum YEvent {
    Other,
    Plus,
}

impl YEvent {
    fn indicator(self) -> i32 {
        match self {
            YEvent::Other => 0,
            YEvent::Plus => 1,
        }
    }
}

/// One predetermined answer per local setting. X outcomes are −1, 0 or +1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DeterministicStrategy {
    pub x1: i8,
    pub x2: i8,
    pub y1: YEvent,
    pub y2: YEvent,
}

impl DeterministicStrategy {
    /// Indicator values (q1, …, q6) of the strategy. q5 and q6 vanish unless
    /// an X outcome is 0.
    pub fn indicators(&self) -> [i32; 6] {
        let is = |b: bool| i32::from(b);
        let (y1, y2) = (self.y1.indicator(), self.y2.indicator());
        [
            is(self.x1 == 1) * is(self.x2 == 1),
            y1 * is(self.x2 == -1),
            is(self.x1 == -1) * y2,
            y1 * y2,
            y1 * is(self.x2 == 0),
            is(self.x1 == 0) * y2,
        ]
    }

    /// The generalized Hardy expression evaluated on this strategy.
    pub fn expression_value(&self) -> i32 {
        let [q1, q2, q3, q4, q5, q6] = self.indicators();
        q1 + q2 + q3 + q5 + q6 - q4
    }
}

impl fmt::Display for DeterministicStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let y = |e: YEvent| if e == YEvent::Plus { "+1" } else { "other" };
        write!(f, "X1={:+} X2={:+} Y1={} Y2={}", self.x1, self.x2, y(self.y1), y(self.y2))
    }
}

/// All strategies in canonical order: lexicographic in (X1, X2, Y1, Y2)
/// with X outcomes ordered −1, 0, +1 and Y events ordered other, +1.
/// 16 strategies for dichotomic X, 36 for trichotomic X.
pub fn enumerate_strategies(trichotomic: bool) -> Vec<DeterministicStrategy> {
    let xs: &[i8] = if trichotomic { &[-1, 0, 1] } else { &[-1, 1] };
    let ys = [YEvent::Other, YEvent::Plus];
    let mut out = Vec::with_capacity(xs.len() * xs.len() * 4);
    for &x1 in xs {
        for &x2 in xs {
            for &y1 in &ys {
                for &y2 in &ys {
                    out.push(DeterministicStrategy { x1, x2, y1, y2 });
                }
            }
        }
    }
    out
}

/// Free-function form of [`DeterministicStrategy::expression_value`].
pub fn vertex_expression_value(s: &DeterministicStrategy) -> i32 {
    s.expression_value()
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    #[test]
    fn counts_and_uniqueness() {
        for (tri, n) in [(false, 16), (true, 36)] {
            let all = enumerate_strategies(tri);
            assert_eq!(all.len(), n);
            assert_eq!(all.iter().collect::<HashSet<_>>().len(), n);
            // Canonical order is the derived lexicographic order.
            assert!(all.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn example_vertices() {
        let s = DeterministicStrategy { x1: 1, x2: 1, y1: YEvent::Plus, y2: YEvent::Plus };
        assert_eq!(s.expression_value(), 0);
        let s = DeterministicStrategy { x1: 1, x2: 1, y1: YEvent::Other, y2: YEvent::Other };
        assert_eq!(s.expression_value(), 1);
    }

    #[test]
    fn every_vertex_is_zero_or_one() {
        for tri in [false, true] {
            for s in enumerate_strategies(tri) {
                let v = vertex_expression_value(&s);
                assert!(v == 0 || v == 1, "{s} gives {v}");
            }
        }
    }
}
