//! The formula tree and its purely syntactic operations.

use std::collections::BTreeSet;
use std::fmt;

use crate::interval::Interval;

/// Abstraction level index. Levels start at 1; 0 is never a valid stratum.
pub type Level = u32;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String),
    True,
    False,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Until(Box<Formula>, Interval, Box<Formula>),
    Release(Box<Formula>, Interval, Box<Formula>),
    Eventually(Interval, Box<Formula>),
    Always(Interval, Box<Formula>),
    /// `L_k φ`: evaluate `φ` at abstraction level `k`.
    Stratum(Level, Box<Formula>),
}

/// Address of a node: the sequence of child indices followed from the root.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct NodePath(pub Vec<usize>);

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "root.{}", parts.join("."))
    }
}

pub fn atom(name: &str) -> Formula {
    Formula::Atom(name.to_string())
}

impl Formula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn until(a: Formula, interval: Interval, b: Formula) -> Formula {
        Formula::Until(Box::new(a), interval, Box::new(b))
    }

    pub fn release(a: Formula, interval: Interval, b: Formula) -> Formula {
        Formula::Release(Box::new(a), interval, Box::new(b))
    }

    pub fn eventually(interval: Interval, f: Formula) -> Formula {
        Formula::Eventually(interval, Box::new(f))
    }

    pub fn always(interval: Interval, f: Formula) -> Formula {
        Formula::Always(interval, Box::new(f))
    }

    pub fn stratum(level: Level, f: Formula) -> Formula {
        Formula::Stratum(level, Box::new(f))
    }

    /// Left-nested conjunction; `true` for an empty iterator.
    pub fn conjunction(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts.into_iter().reduce(Formula::and).unwrap_or(Formula::True)
    }

    pub fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            Atom(_) | True | False => vec![],
            Not(f) | Eventually(_, f) | Always(_, f) | Stratum(_, f) => vec![f],
            And(a, b) | Or(a, b) | Implies(a, b) | Until(a, _, b) | Release(a, _, b) => vec![a, b],
        }
    }

    pub fn interval(&self) -> Option<&Interval> {
        match self {
            Formula::Until(_, i, _)
            | Formula::Release(_, i, _)
            | Formula::Eventually(i, _)
            | Formula::Always(i, _) => Some(i),
            _ => None,
        }
    }

    pub fn at_path(&self, path: &NodePath) -> Option<&Formula> {
        path.0.iter().try_fold(self, |node, &idx| node.children().get(idx).copied())
    }

    /// Longest root-to-leaf edge count; a leaf has depth 0.
    pub fn depth(&self) -> usize {
        self.children().iter().map(|c| c.depth() + 1).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// Largest stratum level mentioned, or 0 when the formula has no strata.
    pub fn max_level(&self) -> Level {
        let own = match self {
            Formula::Stratum(k, _) => *k,
            _ => 0,
        };
        self.children().iter().map(|c| c.max_level()).fold(own, Level::max)
    }

    pub fn levels(&self) -> BTreeSet<Level> {
        let mut out = BTreeSet::new();
        self.collect_levels(&mut out);
        out
    }

    fn collect_levels(&self, out: &mut BTreeSet<Level>) {
        if let Formula::Stratum(k, _) = self {
            out.insert(*k);
        }
        for c in self.children() {
            c.collect_levels(out);
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        if let Formula::Atom(p) = self {
            out.insert(p.clone());
        }
        for c in self.children() {
            c.collect_atoms(out);
        }
    }

    pub fn has_strata(&self) -> bool {
        matches!(self, Formula::Stratum(..)) || self.children().iter().any(|c| c.has_strata())
    }

    /// Every stratum nested inside another stratum has a level no greater
    /// than any enclosing one. Sibling strata are unconstrained.
    pub fn is_well_formed(&self) -> bool {
        fn walk(f: &Formula, bound: Option<Level>) -> bool {
            let bound = match f {
                Formula::Stratum(k, _) => {
                    if bound.is_some_and(|outer| *k > outer) {
                        return false;
                    }
                    Some(*k)
                }
                _ => bound,
            };
            f.children().into_iter().all(|c| walk(c, bound))
        }
        walk(self, None)
    }

    /// Strata nested under a lower enclosing stratum, as
    /// `(path, inner level, enclosing bound)`.
    pub fn nesting_violations(&self) -> Vec<(NodePath, Level, Level)> {
        fn walk(f: &Formula, bound: Option<Level>, path: &mut Vec<usize>, out: &mut Vec<(NodePath, Level, Level)>) {
            let bound = match (f, bound) {
                (Formula::Stratum(k, _), Some(outer)) if *k > outer => {
                    out.push((NodePath(path.clone()), *k, outer));
                    Some(outer)
                }
                (Formula::Stratum(k, _), _) => Some(*k),
                _ => bound,
            };
            for (i, c) in f.children().into_iter().enumerate() {
                path.push(i);
                walk(c, bound, path, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        walk(self, None, &mut Vec::new(), &mut out);
        out
    }

    /// Rewrites derived operators into `Atom`, `True`, `Not`, `And`, `Until`
    /// and `Stratum` only.
    pub fn desugar(&self) -> Formula {
        use Formula::*;
        match self {
            Atom(_) | True => self.clone(),
            False => Formula::not(True),
            Not(f) => Formula::not(f.desugar()),
            And(a, b) => Formula::and(a.desugar(), b.desugar()),
            Or(a, b) => Formula::not(Formula::and(Formula::not(a.desugar()), Formula::not(b.desugar()))),
            Implies(a, b) => Formula::not(Formula::and(a.desugar(), Formula::not(b.desugar()))),
            Until(a, i, b) => Formula::until(a.desugar(), i.clone(), b.desugar()),
            Release(a, i, b) => Formula::not(Formula::until(
                Formula::not(a.desugar()),
                i.clone(),
                Formula::not(b.desugar()),
            )),
            Eventually(i, f) => Formula::until(True, i.clone(), f.desugar()),
            Always(i, f) => Formula::not(Formula::until(True, i.clone(), Formula::not(f.desugar()))),
            Stratum(k, f) => Formula::stratum(*k, f.desugar()),
        }
    }

    pub fn is_core(&self) -> bool {
        use Formula::*;
        matches!(self, Atom(_) | True | Not(_) | And(..) | Until(..) | Stratum(..))
            && self.children().iter().all(|c| c.is_core())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::pretty_print(self))
    }
}
