//! Chord diagrams of a fixed degree, the one-term and four-term relations
//! between them, and the space of weight systems they cut out.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::json;

use crate::gaussdiag::ChordDiagram;
use crate::linalg::{self, Matrix};
use crate::rational::{self, int, Rational};
use crate::{Error, Result};

/// Largest degree handled by the enumerator.
pub const MAX_DEGREE: usize = 6;

fn check_degree(n: usize) -> Result<()> {
    if n > MAX_DEGREE {
        return Err(Error::Bound(format!("degree {n} exceeds the supported maximum {MAX_DEGREE}")));
    }
    Ok(())
}

/// All chord diagrams of degree `n`, in canonical (lexicographic) order.
pub fn enumerate_chord_diagrams(n: usize) -> Result<Vec<ChordDiagram>> {
    check_degree(n)?;
    fn fill(word: &mut Vec<usize>, open: &mut Vec<bool>, next: usize, n: usize, out: &mut BTreeSet<ChordDiagram>) {
        if word.len() == 2 * n {
            out.insert(ChordDiagram::from_labels(word));
            return;
        }
        // either close an open chord or open the next one
        for l in 0..next {
            if open[l] {
                open[l] = false;
                word.push(l);
                fill(word, open, next, n, out);
                word.pop();
                open[l] = true;
            }
        }
        if next < n {
            open[next] = true;
            word.push(next);
            fill(word, open, next + 1, n, out);
            word.pop();
            open[next] = false;
        }
    }
    let mut out = BTreeSet::new();
    fill(&mut Vec::new(), &mut vec![false; n], 0, n, &mut out);
    Ok(out.into_iter().collect())
}

/// A linear relation `Σ c_i D_i = 0` between chord diagrams. Terms are kept
/// as generated, so the same diagram may appear more than once.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearRelation {
    pub terms: Vec<(ChordDiagram, Rational)>,
}

impl LinearRelation {
    pub fn new(terms: Vec<(ChordDiagram, Rational)>) -> Self {
        LinearRelation { terms }
    }

    /// The constraint `W(d) = 0`.
    pub fn vanishing(d: ChordDiagram) -> Self {
        LinearRelation { terms: vec![(d, Rational::one())] }
    }

    /// Coefficients with repeated diagrams combined and zeros dropped.
    pub fn merged(&self) -> BTreeMap<ChordDiagram, Rational> {
        let mut m: BTreeMap<ChordDiagram, Rational> = BTreeMap::new();
        for (d, c) in &self.terms {
            *m.entry(d.clone()).or_insert_with(Rational::zero) += c;
        }
        m.retain(|_, c| !c.is_zero());
        m
    }

    pub fn is_trivial(&self) -> bool {
        self.merged().is_empty()
    }

    /// Value of the left-hand side under `w`.
    pub fn evaluate(&self, w: &WeightSystem) -> Rational {
        self.terms.iter().map(|(d, c)| c * w.value(d)).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!(self
            .terms
            .iter()
            .map(|(d, c)| json!({ "diagram": d.to_string(), "coefficient": rational::to_string(c) }))
            .collect::<Vec<_>>())
    }
}

impl fmt::Display for LinearRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (d, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = rational::to_string(&c.abs());
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag != "1" {
                write!(f, "{mag}*")?;
            }
            write!(f, "[{d}]")?;
        }
        write!(f, " = 0")
    }
}

impl fmt::Debug for LinearRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearRelation({self})")
    }
}

/// `W(D) = 0` for every degree-`n` diagram with an isolated chord.
pub fn one_term_relations(n: usize) -> Result<Vec<LinearRelation>> {
    Ok(enumerate_chord_diagrams(n)?
        .into_iter()
        .filter(ChordDiagram::has_isolated_chord)
        .map(LinearRelation::vanishing)
        .collect())
}

/// The four-term relations of degree `n`.
///
/// For a diagram, an endpoint `x` of one chord and a second chord with
/// endpoints `y1`, `y2`, slide `x` across each `y`:
/// `[x after y1] - [x before y1] + [x after y2] - [x before y2] = 0`.
/// Relations that are identical up to sign, or vanish once repeated
/// diagrams are combined, are dropped.
pub fn four_term_relations(n: usize) -> Result<Vec<LinearRelation>> {
    check_degree(n)?;
    if n < 2 {
        return Ok(Vec::new());
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for d in enumerate_chord_diagrams(n)? {
        let word: Vec<usize> = d.word().iter().map(|&l| l as usize).collect();
        for x in 0..word.len() {
            let a = word[x];
            let rest: Vec<usize> = word[x + 1..].iter().chain(&word[..x]).copied().collect();
            for b in 0..n {
                if b == a {
                    continue;
                }
                let ys: Vec<usize> = (0..rest.len()).filter(|&i| rest[i] == b).collect();
                let with_x_at = |i: usize| {
                    let mut w = rest.clone();
                    w.insert(i, a);
                    ChordDiagram::from_labels(&w)
                };
                let rel = LinearRelation::new(vec![
                    (with_x_at(ys[0] + 1), int(1)),
                    (with_x_at(ys[0]), int(-1)),
                    (with_x_at(ys[1] + 1), int(1)),
                    (with_x_at(ys[1]), int(-1)),
                ]);
                let merged = rel.merged();
                let Some(first) = merged.values().next() else { continue };
                let key: Vec<(ChordDiagram, Rational)> = if first.is_negative() {
                    merged.into_iter().map(|(d, c)| (d, -c)).collect()
                } else {
                    merged.into_iter().collect()
                };
                if seen.insert(key) {
                    out.push(rel);
                }
            }
        }
    }
    Ok(out)
}

/// A rational function on the chord diagrams of one degree.
#[derive(Clone, PartialEq, Eq)]
pub struct WeightSystem {
    pub degree: usize,
    pub values: BTreeMap<ChordDiagram, Rational>,
}

impl WeightSystem {
    /// Diagrams absent from `values` are taken to be 0.
    pub fn new(degree: usize, values: BTreeMap<ChordDiagram, Rational>) -> Result<Self> {
        if let Some(d) = values.keys().find(|d| d.degree() != degree) {
            return Err(Error::invalid(format!("diagram {d} does not have degree {degree}")));
        }
        Ok(WeightSystem { degree, values })
    }

    /// Builds a weight system from `(word, value)` pairs such as `("abab", 1)`.
    pub fn from_words(degree: usize, pairs: &[(&str, Rational)]) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (w, v) in pairs {
            values.insert(ChordDiagram::parse(w)?, v.clone());
        }
        Self::new(degree, values)
    }

    pub fn value(&self, d: &ChordDiagram) -> Rational {
        self.values.get(d).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(Zero::is_zero)
    }

    /// `a * self + b * other`
    pub fn combine(&self, a: &Rational, other: &WeightSystem, b: &Rational) -> WeightSystem {
        let mut values = BTreeMap::new();
        for d in self.values.keys().chain(other.values.keys()) {
            values.insert(d.clone(), a * self.value(d) + b * other.value(d));
        }
        WeightSystem { degree: self.degree, values }
    }

    /// True if every 1T and 4T relation of this degree holds exactly.
    pub fn satisfies_relations(&self) -> Result<bool> {
        let rels = one_term_relations(self.degree)?.into_iter().chain(four_term_relations(self.degree)?);
        Ok(rels.into_iter().all(|r| r.evaluate(self).is_zero()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let values: serde_json::Map<String, serde_json::Value> = self
            .values
            .iter()
            .map(|(d, v)| (d.to_string(), json!(rational::to_string(v))))
            .collect();
        json!({ "degree": self.degree, "values": values })
    }
}

impl fmt::Debug for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self
            .values
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(d, v)| format!("{d}: {}", rational::to_string(v)))
            .collect();
        write!(f, "WeightSystem[{}]{{{}}}", self.degree, entries.join(", "))
    }
}

/// A basis of the weight systems of degree `n` that also satisfy `extra`.
///
/// Coordinates are indexed by [`enumerate_chord_diagrams`]; the basis is in
/// reduced row echelon form, so each vector has leading coordinate 1 and the
/// result depends only on the solution space.
pub fn solve_weight_systems(n: usize, extra: &[LinearRelation]) -> Result<Vec<WeightSystem>> {
    let diagrams = enumerate_chord_diagrams(n)?;
    let index: BTreeMap<&ChordDiagram, usize> = diagrams.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let mut rows: Matrix = Vec::new();
    let relations = one_term_relations(n)?
        .into_iter()
        .chain(four_term_relations(n)?)
        .chain(extra.iter().cloned());
    for rel in relations {
        let mut row = vec![Rational::zero(); diagrams.len()];
        for (d, c) in rel.merged() {
            let i = *index.get(&d).ok_or_else(|| {
                Error::Constraint(format!("constraint mentions {d}, which is not of degree {n}"))
            })?;
            row[i] += c;
        }
        rows.push(row);
    }
    Ok(linalg::nullspace(&rows, diagrams.len())
        .into_iter()
        .map(|v| WeightSystem { degree: n, values: diagrams.iter().cloned().zip(v).collect() })
        .collect())
}

/// The degree-4 diagram whose four chords cross pairwise.
pub fn complete_diagram(n: usize) -> ChordDiagram {
    let labels: Vec<usize> = (0..n).chain(0..n).collect();
    ChordDiagram::from_labels(&labels)
}

/// Weight systems of degree 4 vanishing on `abcdabcd`.
pub fn constrained_degree4_basis() -> Vec<WeightSystem> {
    solve_weight_systems(4, &[LinearRelation::vanishing(complete_diagram(4))])
        .expect("degree 4 is within bounds")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Orbit counting over all perfect matchings of `2n` points on a circle.
    fn brute_force_count(n: usize) -> usize {
        fn matchings(points: Vec<usize>) -> Vec<Vec<(usize, usize)>> {
            if points.is_empty() {
                return vec![Vec::new()];
            }
            let first = points[0];
            let mut out = Vec::new();
            for i in 1..points.len() {
                let rest: Vec<usize> =
                    points.iter().enumerate().filter(|&(j, _)| j != 0 && j != i).map(|(_, &p)| p).collect();
                for mut m in matchings(rest) {
                    m.push((first, points[i]));
                    out.push(m);
                }
            }
            out
        }
        let len = 2 * n;
        let normal = |m: &Vec<(usize, usize)>| {
            let mut v: Vec<(usize, usize)> = m.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
            v.sort();
            v
        };
        let all: BTreeSet<Vec<(usize, usize)>> = matchings((0..len).collect()).iter().map(normal).collect();
        let mut orbits = 0;
        let mut done = BTreeSet::new();
        for m in &all {
            if done.contains(m) {
                continue;
            }
            orbits += 1;
            for k in 0..len.max(1) {
                let r: Vec<(usize, usize)> = m.iter().map(|&(a, b)| ((a + k) % len, (b + k) % len)).collect();
                done.insert(normal(&r));
            }
        }
        orbits
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_chord_diagrams(0).unwrap().len(), 1);
        assert_eq!(enumerate_chord_diagrams(1).unwrap().len(), 1);
        let two: Vec<String> = enumerate_chord_diagrams(2).unwrap().iter().map(|d| d.to_string()).collect();
        assert_eq!(two, ["aabb", "abab"]);
        for n in 3..=5 {
            assert_eq!(enumerate_chord_diagrams(n).unwrap().len(), brute_force_count(n), "n = {n}");
        }
        assert!(matches!(enumerate_chord_diagrams(7), Err(Error::Bound(_))));
    }

    #[test]
    fn one_term() {
        assert_eq!(one_term_relations(1).unwrap().len(), 1);
        let two = one_term_relations(2).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].terms[0].0.to_string(), "aabb");
        let k4 = complete_diagram(4);
        assert!(one_term_relations(4).unwrap().iter().all(|r| r.terms[0].0 != k4));
    }

    #[test]
    fn four_term_shape() {
        for n in 2..=4 {
            for r in four_term_relations(n).unwrap() {
                let mut coeffs: Vec<Rational> = r.terms.iter().map(|(_, c)| c.clone()).collect();
                coeffs.sort();
                assert_eq!(coeffs, [int(-1), int(-1), int(1), int(1)]);
                assert!(!r.is_trivial());
            }
        }
    }

    #[test]
    fn dimensions() {
        let dims: Vec<usize> = (1..=4).map(|n| solve_weight_systems(n, &[]).unwrap().len()).collect();
        assert_eq!(dims, [0, 1, 1, 3]);
        assert_eq!(constrained_degree4_basis().len(), 2);
    }

    #[test]
    fn basis_is_normalized_and_valid() {
        for w in solve_weight_systems(4, &[]).unwrap() {
            let lead = w.values.values().find(|v| !v.is_zero()).unwrap();
            assert_eq!(*lead, int(1));
            assert!(w.satisfies_relations().unwrap());
        }
    }

    #[test]
    fn doubled_constraint_gives_same_basis() {
        let k4 = complete_diagram(4);
        let doubled = LinearRelation::new(vec![(k4, int(2))]);
        assert_eq!(constrained_degree4_basis(), solve_weight_systems(4, &[doubled]).unwrap());
    }

    #[test]
    fn foreign_constraint_is_rejected() {
        let rel = LinearRelation::vanishing(ChordDiagram::parse("abab").unwrap());
        assert!(matches!(solve_weight_systems(4, &[rel]), Err(Error::Constraint(_))));
    }
}
