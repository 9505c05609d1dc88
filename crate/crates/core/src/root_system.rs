//! Simply laced Dynkin types: the catalogue of Cartan matrices and a
//! classifier that recovers the type of a finite root system given by
//! explicit vectors.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    D,
    E,
}

/// A connected simply laced Dynkin diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::UnsupportedType(format!("{family:?}{rank}")))
        }
    }

    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1),
            Family::D => 2 * n * (n - 1),
            Family::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
        }
    }

    /// Edges of the diagram in Bourbaki numbering (1-based node labels).
    fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            Family::A => (1..n).map(|i| (i, i + 1)).collect(),
            Family::D => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
                e.push((n - 2, n));
                e
            }
            Family::E => {
                let mut e = vec![(1, 3), (2, 4)];
                e.extend((3..n).map(|i| (i, i + 1)));
                e
            }
        }
    }

    /// Cartan matrix in Bourbaki numbering.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in self.edges() {
            a[i - 1][j - 1] = -1;
            a[j - 1][i - 1] = -1;
        }
        a
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::UnsupportedType(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        Self::new(family, rank)
    }
}

/// A (possibly reducible) simply laced type, components sorted by
/// decreasing rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DynkinType {
    pub components: Vec<SimpleType>,
}

impl DynkinType {
    pub fn simple(t: SimpleType) -> Self {
        Self { components: vec![t] }
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    fn normalize(mut self) -> Self {
        self.components.sort_by(|a, b| b.rank.cmp(&a.rank).then(b.family.cmp(&a.family)));
        self
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self.components.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl FromStr for DynkinType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "trivial" {
            return Ok(Self { components: vec![] });
        }
        let comps = s.split('+').map(SimpleType::from_str).collect::<Result<Vec<_>>>()?;
        Ok(Self { components: comps }.normalize())
    }
}

/// Classifies the root system spanned by `roots` under the symmetric
/// bilinear form `form`, normalised so that roots have positive square
/// length. Returns the type and the simple roots found.
pub fn classify_with_simples<F>(roots: &[Vec<i64>], form: F) -> Result<(DynkinType, Vec<Vec<i64>>)>
where
    F: Fn(&[i64], &[i64]) -> i64,
{
    if roots.is_empty() {
        return Ok((DynkinType { components: vec![] }, vec![]));
    }
    let dim = roots[0].len();
    let set: HashSet<&[i64]> = roots.iter().map(Vec::as_slice).collect();
    let norm = form(&roots[0], &roots[0]);
    if norm <= 0 {
        return Err(Error::UnrecognizedDiagram("roots must have positive square length".into()));
    }
    for r in roots {
        if r.len() != dim || form(r, r) != norm {
            return Err(Error::UnrecognizedDiagram("roots of unequal length".into()));
        }
        let neg: Vec<i64> = r.iter().map(|x| -x).collect();
        if !set.contains(neg.as_slice()) {
            return Err(Error::UnrecognizedDiagram("set not closed under negation".into()));
        }
    }

    // A functional with no zeros on the roots: read coordinates as digits
    // in a base larger than twice the largest coordinate.
    let base = 2 * roots.iter().flatten().map(|x| x.abs()).max().unwrap_or(1) as i128 + 1;
    let height = |v: &[i64]| v.iter().rev().fold(0i128, |acc, &x| acc * base + x as i128);
    let positive: Vec<&Vec<i64>> = roots.iter().filter(|r| height(r) > 0).collect();
    let pos_set: HashSet<&[i64]> = positive.iter().map(|r| r.as_slice()).collect();
    let simples: Vec<Vec<i64>> = positive
        .iter()
        .filter(|a| {
            !positive.iter().any(|b| {
                let diff: Vec<i64> = a.iter().zip(b.iter()).map(|(x, y)| x - y).collect();
                pos_set.contains(diff.as_slice())
            })
        })
        .map(|r| (*r).clone())
        .collect();

    let n = simples.len();
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            let p = 2 * form(&simples[i], &simples[j]);
            if p % norm != 0 {
                return Err(Error::UnrecognizedDiagram("non-integral Cartan entry".into()));
            }
            match p / norm {
                0 => {}
                -1 => {
                    adj[i].push(j);
                    adj[j].push(i);
                }
                other => {
                    return Err(Error::UnrecognizedDiagram(format!("Cartan entry {other} between simple roots")));
                }
            }
        }
    }

    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            for &nb in &adj[comp[k]] {
                if !seen[nb] {
                    seen[nb] = true;
                    comp.push(nb);
                }
            }
            k += 1;
        }
        components.push(identify_component(&comp, &adj)?);
    }
    let ty = DynkinType { components }.normalize();
    let expected: usize = ty.components.iter().map(SimpleType::root_count).sum();
    if expected != roots.len() {
        return Err(Error::UnrecognizedDiagram(format!(
            "diagram {ty} predicts {expected} roots but {} were given",
            roots.len()
        )));
    }
    Ok((ty, simples))
}

/// Classifies a simply laced root system; see [`classify_with_simples`].
pub fn classify<F>(roots: &[Vec<i64>], form: F) -> Result<DynkinType>
where
    F: Fn(&[i64], &[i64]) -> i64,
{
    classify_with_simples(roots, form).map(|(t, _)| t)
}

fn identify_component(nodes: &[usize], adj: &[Vec<usize>]) -> Result<SimpleType> {
    let n = nodes.len();
    let edges: usize = nodes.iter().map(|&v| adj[v].len()).sum::<usize>() / 2;
    if edges != n - 1 {
        return Err(Error::UnrecognizedDiagram("diagram contains a cycle".into()));
    }
    let branch: Vec<usize> = nodes.iter().copied().filter(|&v| adj[v].len() >= 3).collect();
    match branch.as_slice() {
        [] => SimpleType::new(Family::A, n),
        [b] if adj[*b].len() == 3 => {
            let mut arms: Vec<usize> = adj[*b]
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (*b, start, 1);
                    loop {
                        let next: Vec<usize> = adj[cur].iter().copied().filter(|&x| x != prev).collect();
                        match next.as_slice() {
                            [] => break len,
                            [x] => {
                                prev = cur;
                                cur = *x;
                                len += 1;
                            }
                            _ => break usize::MAX,
                        }
                    }
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => SimpleType::new(Family::D, n),
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => SimpleType::new(Family::E, n),
                _ => Err(Error::UnrecognizedDiagram(format!("branch arms {arms:?}"))),
            }
        }
        _ => Err(Error::UnrecognizedDiagram("more than one branch node".into())),
    }
}

/// Positive roots of a simply laced type in simple-root coordinates,
/// generated by adding simple roots while the pairing allows it.
pub fn positive_roots(t: SimpleType) -> Vec<Vec<i64>> {
    let a = t.cartan_matrix();
    let n = t.rank;
    let pair = |c: &[i64], j: usize| -> i64 { (0..n).map(|i| c[i] * a[i][j]).sum() };
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    let mut known: HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut k = 0;
    while k < roots.len() {
        let r = roots[k].clone();
        for j in 0..n {
            if pair(&r, j) == -1 {
                let mut s = r.clone();
                s[j] += 1;
                if known.insert(s.clone()) {
                    roots.push(s);
                }
            }
        }
        k += 1;
    }
    roots
}

/// All roots (positive and negative) in simple-root coordinates.
pub fn all_roots(t: SimpleType) -> Vec<Vec<i64>> {
    let pos = positive_roots(t);
    let mut all = pos.clone();
    all.extend(pos.into_iter().map(|r| r.into_iter().map(|x| -x).collect::<Vec<_>>()));
    all
}

/// Bilinear form given by a Cartan matrix on simple-root coordinates.
pub fn cartan_form(a: &[Vec<i64>]) -> impl Fn(&[i64], &[i64]) -> i64 + '_ {
    move |x: &[i64], y: &[i64]| {
        let mut s = 0;
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                s += xi * a[i][j] * yj;
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn self_classify(name: &str) -> String {
        let t: SimpleType = name.parse().unwrap();
        let a = t.cartan_matrix();
        classify(&all_roots(t), cartan_form(&a)).unwrap().to_string()
    }

    #[test]
    fn catalogue_round_trips() {
        for name in ["A1", "A2", "A5", "D4", "D5", "D8", "E6", "E7", "E8"] {
            assert_eq!(self_classify(name), name);
        }
    }

    #[test]
    fn root_counts_match_generation() {
        for name in ["A3", "D6", "E6", "E7", "E8"] {
            let t: SimpleType = name.parse().unwrap();
            assert_eq!(all_roots(t).len(), t.root_count(), "{name}");
        }
    }

    #[test]
    fn reducible_label() {
        // A1 + A1 as {±e1, ±e2}.
        let roots = vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]];
        let dot = |x: &[i64], y: &[i64]| 2 * (x[0] * y[0] + x[1] * y[1]);
        assert_eq!(classify(&roots, dot).unwrap().to_string(), "A1+A1");
    }

    #[test]
    fn rejects_non_root_system() {
        let roots = vec![vec![1, 0], vec![-1, 0], vec![1, 1], vec![-1, -1]];
        let dot = |x: &[i64], y: &[i64]| x[0] * y[0] + x[1] * y[1];
        assert!(matches!(classify(&roots, dot), Err(Error::UnrecognizedDiagram(_))));
    }

    #[test]
    fn parse_types() {
        assert_eq!("E7+A1".parse::<DynkinType>().unwrap().to_string(), "E7+A1");
        assert_eq!("A1+E7".parse::<DynkinType>().unwrap().to_string(), "E7+A1");
        assert!("D3".parse::<SimpleType>().is_err());
        assert!("G2".parse::<SimpleType>().is_err());
    }
}
