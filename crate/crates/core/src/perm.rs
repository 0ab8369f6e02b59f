//! Finite permutations with cycle notation, subgroup closure, and graph
//! closure for generator-image maps between permutation groups.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum PermError {
    #[error("cannot parse permutation `{0}`")]
    Parse(String),
    #[error("group order exceeds the cap of {cap}")]
    OrderCap { cap: usize },
}

/// A permutation of `0..degree`, stored as its image vector. The lexicographic
/// order on image vectors is the total order used for canonical coset
/// representatives.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    map: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm { map: (0..degree).collect() }
    }

    pub fn from_images(map: Vec<usize>) -> Perm {
        let mut seen = vec![false; map.len()];
        for &x in &map {
            assert!(x < map.len() && !seen[x], "not a permutation");
            seen[x] = true;
        }
        Perm { map }
    }

    /// Build from disjoint cycles on 1-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Perm {
        let mut map: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for i in 0..cycle.len() {
                let from = cycle[i] - 1;
                let to = cycle[(i + 1) % cycle.len()] - 1;
                assert!(from < degree && to < degree, "point out of range");
                map[from] = to;
            }
        }
        Perm::from_images(map)
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.map[point]
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self * other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree());
        Perm { map: other.map.iter().map(|&x| self.map[x]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut map = vec![0; self.map.len()];
        for (i, &x) in self.map.iter().enumerate() {
            map[x] = i;
        }
        Perm { map }
    }

    /// The same permutation on a larger ground set.
    pub fn extend(&self, degree: usize) -> Perm {
        assert!(degree >= self.degree());
        let mut map = self.map.clone();
        map.extend(self.degree()..degree);
        Perm { map }
    }

    /// Parse cycle notation on 1-based points, e.g. `(1 2)(3 4)`;
    /// `()` denotes the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Perm, PermError> {
        let text = text.trim();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest
                .find('(')
                .ok_or_else(|| PermError::Parse(text.into()))?;
            if !rest[..open].trim().is_empty() {
                return Err(PermError::Parse(text.into()));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| PermError::Parse(text.into()))?;
            let inner = &rest[open + 1..close];
            let points: Vec<usize> = inner
                .split([' ', ','])
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| PermError::Parse(text.into()))?;
            if points.iter().any(|&p| p == 0 || p > degree) {
                return Err(PermError::Parse(format!(
                    "{text}: point out of range for degree {degree}"
                )));
            }
            let mut seen: HashSet<usize> = points.iter().copied().collect();
            if seen.len() != points.len() {
                return Err(PermError::Parse(format!("{text}: repeated point")));
            }
            for c in &cycles {
                for p in c {
                    if !seen.insert(*p) {
                        return Err(PermError::Parse(format!("{text}: cycles overlap")));
                    }
                }
            }
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = rest[close + 1..].trim_start();
        }
        Ok(Perm::from_cycles(degree, &cycles))
    }

    /// Largest 1-based point appearing in the cycle text, 0 for identity.
    pub fn max_point_in(text: &str) -> usize {
        text.split(['(', ')', ' ', ','])
            .filter_map(|s| s.trim().parse::<usize>().ok())
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut wrote = false;
        for start in 0..self.degree() {
            if seen[start] || self.map[start] == start {
                seen[start] = true;
                continue;
            }
            write!(f, "(")?;
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
                first = false;
                p = self.map[p];
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Enumerate the subgroup generated by `gens`, stopping at `cap` elements.
pub fn closure(degree: usize, gens: &[Perm], cap: usize) -> Result<Vec<Perm>, PermError> {
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut queue: VecDeque<Perm> = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(g) = queue.pop_front() {
        for gen in gens {
            let h = gen.compose(&g);
            if seen.insert(h.clone()) {
                if seen.len() > cap {
                    return Err(PermError::OrderCap { cap });
                }
                queue.push_back(h);
            }
        }
    }
    let mut out: Vec<Perm> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Close the subgroup of a product group generated by `(g, image-of-g)`
/// pairs. When the result is the graph of a map it extends the generator
/// assignment to a homomorphism.
pub fn graph_closure(
    pairs: &[(Perm, Perm)],
    cap: usize,
) -> Result<Vec<(Perm, Perm)>, PermError> {
    let (d1, d2) = match pairs.first() {
        Some((a, b)) => (a.degree(), b.degree()),
        None => (0, 0),
    };
    let id = (Perm::identity(d1), Perm::identity(d2));
    let mut seen: HashSet<(Perm, Perm)> = HashSet::new();
    let mut queue: VecDeque<(Perm, Perm)> = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some((x, y)) = queue.pop_front() {
        for (a, b) in pairs {
            let next = (a.compose(&x), b.compose(&y));
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return Err(PermError::OrderCap { cap });
                }
                queue.push_back(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// The generator-image map as a total function, provided the graph closure
/// is the graph of an injective homomorphism; returns the failed axiom
/// otherwise.
pub fn homomorphism_map(
    pairs: &[(Perm, Perm)],
    source_order: usize,
    cap: usize,
) -> Result<HashMap<Perm, Perm>, String> {
    let graph = graph_closure(pairs, cap).map_err(|e| e.to_string())?;
    if graph.len() != source_order {
        return Err(format!(
            "generator images do not extend to a map: graph has {} elements, group has {}",
            graph.len(),
            source_order
        ));
    }
    let mut map: HashMap<Perm, Perm> = HashMap::new();
    let mut images: HashSet<Perm> = HashSet::new();
    for (x, y) in graph {
        if map.insert(x, y.clone()).is_some() {
            return Err("generator images do not define a function".into());
        }
        if !images.insert(y) {
            return Err("the homomorphism is not injective".into());
        }
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_inverse() {
        let a = Perm::from_cycles(3, &[vec![1, 2]]);
        let b = Perm::from_cycles(3, &[vec![2, 3]]);
        // apply b first: 1 -> 1 -> 2, 2 -> 3 -> 3, 3 -> 2 -> 1
        assert_eq!(a.compose(&b), Perm::from_images(vec![1, 2, 0]));
        assert!(a.compose(&a).is_identity());
        let c = Perm::from_cycles(5, &[vec![1, 4, 2], vec![3, 5]]);
        assert!(c.compose(&c.inverse()).is_identity());
    }

    #[test]
    fn parse_and_display() {
        let p = Perm::parse("(1 2)(3 4)", 4).unwrap();
        assert_eq!(p, Perm::from_cycles(4, &[vec![1, 2], vec![3, 4]]));
        assert_eq!(p.to_string(), "(1 2)(3 4)");
        assert_eq!(Perm::parse("()", 3).unwrap(), Perm::identity(3));
        assert_eq!(Perm::identity(3).to_string(), "()");
        assert!(Perm::parse("(1 5)", 3).is_err());
        assert!(Perm::parse("(1 1)", 3).is_err());
        assert!(Perm::parse("(1 2)(2 3)", 3).is_err());
        let q = Perm::parse("(1 3 2)", 3).unwrap();
        assert_eq!(Perm::parse(&q.to_string(), 3).unwrap(), q);
    }

    #[test]
    fn closure_enumerates_symmetric_groups() {
        for n in 1..=5usize {
            let gens: Vec<Perm> = (1..n)
                .map(|i| Perm::from_cycles(n, &[vec![i, i + 1]]))
                .collect();
            let order: usize = (1..=n).product();
            assert_eq!(closure(n, &gens, 1000).unwrap().len(), order);
        }
        let gens = vec![Perm::from_cycles(6, &[vec![1, 2, 3, 4, 5, 6]])];
        assert_eq!(closure(6, &gens, 5), Err(PermError::OrderCap { cap: 5 }));
    }

    #[test]
    fn homomorphism_map_detects_bad_assignments() {
        // inclusion of Sym(2) into Sym(3)
        let pairs = vec![(
            Perm::from_cycles(2, &[vec![1, 2]]),
            Perm::from_cycles(3, &[vec![1, 2]]),
        )];
        let map = homomorphism_map(&pairs, 2, 1000).unwrap();
        assert_eq!(map.len(), 2);
        // sending an involution to a 3-cycle is not a homomorphism
        let pairs = vec![(
            Perm::from_cycles(2, &[vec![1, 2]]),
            Perm::from_cycles(3, &[vec![1, 2, 3]]),
        )];
        assert!(homomorphism_map(&pairs, 2, 1000).is_err());
        // collapsing Sym(2) to the identity is a homomorphism but not injective
        let pairs = vec![(Perm::from_cycles(2, &[vec![1, 2]]), Perm::identity(3))];
        assert!(homomorphism_map(&pairs, 2, 1000)
            .unwrap_err()
            .contains("not injective"));
    }
}
