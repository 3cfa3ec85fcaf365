//! Gauss diagram formulas: the degree-4 family built from a weight system,
//! its two basis members, the degree-2 reference invariant, and the Conway
//! polynomial used to calibrate them.

pub mod conway;

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;

use crate::arrowmatch::{ArrowPattern, PatternCombination, PatternIndex};
use crate::chordalg::{self, WeightSystem};
use crate::gaussdiag::{ChordDiagram, GaussDiagram};
use crate::rational::{self, int, Rational};
use crate::{Error, Result};

const F4_PATTERNS: &str = include_str!("../../data/f4_patterns.txt");

/// One block of the degree-4 formula: `coefficient * W(weight_diagram)`
/// times the sum of the block's patterns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaTerm {
    pub coefficient: Rational,
    pub weight_diagram: ChordDiagram,
    pub patterns: PatternCombination,
}

fn parse_fixture(text: &str) -> Result<Vec<FormulaTerm>> {
    let mut terms: Vec<(usize, FormulaTerm)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |e: Error| Error::Row { row: lineno + 1, source: Box::new(e) };
        let mut fields = line.splitn(4, char::is_whitespace);
        let (Some(block), Some(coef), Some(word), Some(pattern)) =
            (fields.next(), fields.next(), fields.next(), fields.next())
        else {
            return Err(err(Error::Table("expected block, coefficient, weight, pattern".into())));
        };
        let block: usize = block.parse().map_err(|_| err(Error::Table(format!("bad block {block:?}"))))?;
        let coefficient = rational::parse(coef).map_err(err)?;
        let weight_diagram = ChordDiagram::parse(word).map_err(err)?;
        let pattern = ArrowPattern::parse(pattern).map_err(err)?;
        match terms.last_mut() {
            Some((b, t)) if *b == block => {
                if t.coefficient != coefficient || t.weight_diagram != weight_diagram {
                    return Err(err(Error::Table(format!("block {block} changes its coefficient or weight"))));
                }
                t.patterns.add(int(1), pattern);
            }
            _ => {
                let mut patterns = PatternCombination::default();
                patterns.add(int(1), pattern);
                terms.push((block, FormulaTerm { coefficient, weight_diagram, patterns }));
            }
        }
    }
    Ok(terms.into_iter().map(|(_, t)| t).collect())
}

/// The six blocks of the degree-4 formula, read from the bundled fixture.
pub fn theorem_terms() -> Vec<FormulaTerm> {
    parse_fixture(F4_PATTERNS).expect("bundled pattern fixture is valid")
}

/// A rational combination of arrow patterns, compiled for evaluation.
#[derive(Clone)]
pub struct GaussFormula {
    name: String,
    combination: PatternCombination,
    index: Arc<PatternIndex>,
}

impl GaussFormula {
    pub fn new(name: impl Into<String>, combination: PatternCombination) -> Self {
        let patterns: Vec<ArrowPattern> = combination.terms().iter().map(|t| t.1.clone()).collect();
        GaussFormula { name: name.into(), combination, index: Arc::new(PatternIndex::new(&patterns)) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn combination(&self) -> &PatternCombination {
        &self.combination
    }

    /// Coefficient of `p` (zero if absent).
    pub fn coefficient(&self, p: &ArrowPattern) -> Rational {
        self.combination
            .terms()
            .iter()
            .find(|t| t.1 == *p)
            .map(|t| t.0.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// The same formula with `delta` added to the coefficient of `p`.
    pub fn perturbed(&self, p: &ArrowPattern, delta: &Rational) -> GaussFormula {
        let mut c = self.combination.clone();
        c.add(delta.clone(), p.clone());
        GaussFormula::new(format!("{}+({})<{p}>", self.name, rational::to_string(delta)), c)
    }

    /// Largest number of arrows in a pattern of the formula.
    pub fn order(&self) -> usize {
        self.combination.terms().iter().map(|t| t.1.k()).max().unwrap_or(0)
    }

    /// Signed pattern counts of `g`, one per term.
    pub fn counts(&self, g: &GaussDiagram) -> Vec<i64> {
        self.index.counts(g)
    }

    pub fn evaluate(&self, g: &GaussDiagram) -> Rational {
        self.combination
            .terms()
            .iter()
            .zip(self.counts(g))
            .filter(|(_, n)| *n != 0)
            .map(|((c, _), n)| c * int(n))
            .sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name,
            "terms": self.combination.terms().iter().map(|(c, p)| serde_json::json!({
                "coefficient": rational::to_string(c),
                "pattern": p.to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Debug for GaussFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GaussFormula({}: {})", self.name, self.combination)
    }
}

pub fn evaluate(f: &GaussFormula, g: &GaussDiagram) -> Rational {
    f.evaluate(g)
}

/// Evaluates `f` on many diagrams in parallel; results are in input order.
pub fn evaluate_many(f: &GaussFormula, gs: &[GaussDiagram]) -> Vec<Rational> {
    gs.par_iter().map(|g| f.evaluate(g)).collect()
}

/// The degree-4 formula of a weight system `w` with `w(abcdabcd) = 0`.
pub fn build_f4(w: &WeightSystem) -> Result<GaussFormula> {
    build_f4_named("f4", w)
}

fn build_f4_named(name: &str, w: &WeightSystem) -> Result<GaussFormula> {
    if w.degree != 4 {
        return Err(Error::Constraint(format!("weight system has degree {}, expected 4", w.degree)));
    }
    let k4 = chordalg::complete_diagram(4);
    if !w.value(&k4).is_zero() {
        return Err(Error::Constraint(format!(
            "weight of {k4} is {}, must be 0",
            rational::to_string(&w.value(&k4))
        )));
    }
    let mut combination = PatternCombination::default();
    for term in theorem_terms() {
        let c = &term.coefficient * w.value(&term.weight_diagram);
        if c.is_zero() {
            continue;
        }
        for (unit, p) in term.patterns.terms() {
            combination.add(&c * unit, p.clone());
        }
    }
    Ok(GaussFormula::new(name, combination))
}

/// Weight systems of the two basis invariants, as returned by the solver.
pub fn v4_weight_basis() -> (WeightSystem, WeightSystem) {
    let mut basis = chordalg::constrained_degree4_basis().into_iter();
    let first = basis.next().expect("two-dimensional space");
    let second = basis.next().expect("two-dimensional space");
    (first, second)
}

/// The formulas `V4_1` and `V4_2` of the two basis weight systems.
pub fn v4_basis() -> (GaussFormula, GaussFormula) {
    let (w1, w2) = v4_weight_basis();
    (
        build_f4_named("v4_1", &w1).expect("basis satisfies the constraint"),
        build_f4_named("v4_2", &w2).expect("basis satisfies the constraint"),
    )
}

/// The degree-2 invariant as a based formula: arrows `1, 2` met in the
/// order `H1 T2 T1 H2` from the base point. It equals the `z^2` coefficient
/// of the Conway polynomial.
pub fn v2_formula() -> GaussFormula {
    let p = ArrowPattern::parse("| H1 T2 T1 H2").expect("valid pattern");
    GaussFormula::new("v2", PatternCombination::new(vec![(int(1), p)]).expect("single term"))
}

pub fn v2(g: &GaussDiagram) -> Rational {
    v2_formula().evaluate(g)
}

/// Formula lookup for the names used on the command line.
pub fn formula_by_name(name: &str) -> Option<GaussFormula> {
    match name {
        "v2" => Some(v2_formula()),
        "v4_1" => Some(v4_basis().0),
        "v4_2" => Some(v4_basis().1),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knotcodes::{parse_dt, parse_gauss, pd_to_gauss};

    fn q(s: &str) -> Rational {
        rational::parse(s).unwrap()
    }

    #[test]
    fn fixture_shape() {
        let terms = theorem_terms();
        let coeffs: Vec<String> = terms.iter().map(|t| rational::to_string(&t.coefficient)).collect();
        assert_eq!(coeffs, ["1/2", "1/4", "1/2", "1/4", "1/4", "1/4"]);
        let sizes: Vec<usize> = terms.iter().map(|t| t.patterns.terms().len()).collect();
        assert_eq!(sizes, [1, 2, 2, 4, 4, 2]);
        let k4 = chordalg::complete_diagram(4);
        for t in &terms {
            assert_eq!(t.weight_diagram.degree(), 4);
            assert_ne!(t.weight_diagram, k4);
            for (_, p) in t.patterns.terms() {
                let g = GaussDiagram::from_word(p.word(), &[crate::gaussdiag::Sign::Pos; 4]).unwrap();
                assert_eq!(g.underlying_chords(), t.weight_diagram, "{p}");
            }
        }
        assert_eq!(
            ChordDiagram::parse("abcbcdad").unwrap(),
            terms[0].weight_diagram,
        );
        assert_eq!(ChordDiagram::parse("abcbadcd").unwrap(), terms[1].weight_diagram);
    }

    #[test]
    fn build_f4_checks_constraint() {
        let zero = WeightSystem::new(4, Default::default()).unwrap();
        let f = build_f4(&zero).unwrap();
        assert!(f.combination().is_empty());
        let bad = WeightSystem::from_words(4, &[("abcdabcd", int(1))]).unwrap();
        assert!(matches!(build_f4(&bad), Err(Error::Constraint(_))));
        let wrong_degree = WeightSystem::from_words(2, &[("abab", int(1))]).unwrap();
        assert!(matches!(build_f4(&wrong_degree), Err(Error::Constraint(_))));
    }

    #[test]
    fn basis_coefficients_are_quarters_of_weights() {
        let (w1, _) = v4_weight_basis();
        let (f1, _) = v4_basis();
        assert!(f1.combination().terms().len() <= 15);
        for t in theorem_terms() {
            for (_, p) in t.patterns.terms() {
                assert_eq!(f1.coefficient(p), &t.coefficient * w1.value(&t.weight_diagram));
            }
        }
    }

    #[test]
    fn weight_basis_vectors() {
        let (w1, w2) = v4_weight_basis();
        let names = ["ababcdcd", "abacdbdc", "abcadcbd", "abacbdcd", "abacdbcd", "abcadbcd", "abcdabcd"];
        let vals = |w: &WeightSystem| -> Vec<String> {
            names.iter().map(|n| rational::to_string(&w.value(&ChordDiagram::parse(n).unwrap()))).collect()
        };
        assert_eq!(vals(&w1), ["1", "-1", "2", "0", "-1", "1", "0"]);
        assert_eq!(vals(&w2), ["0", "1", "-3", "1", "2", "-2", "0"]);
    }

    #[test]
    fn v2_values() {
        assert!(v2(&GaussDiagram::empty()).is_zero());
        assert_eq!(v2(&parse_gauss("O1+ U2+ O3+ U1+ O2+ U3+").unwrap()), int(1));
        assert_eq!(v2(&pd_to_gauss(&parse_dt("4 6 8 2").unwrap())), int(-1));
    }

    #[test]
    fn rotation_invariance_and_empty() {
        let (f1, f2) = v4_basis();
        let g = pd_to_gauss(&parse_dt("4 10 14 16 12 2 8 6").unwrap());
        for f in [&f1, &f2] {
            assert!(f.evaluate(&GaussDiagram::empty()).is_zero());
            let v = f.evaluate(&g);
            for k in 0..g.word().len() {
                assert_eq!(f.evaluate(&g.rotate(k)), v);
            }
        }
        assert_eq!(q("1/4") * int(4), int(1));
    }

    #[test]
    fn linear_in_weight_system() {
        let (w1, w2) = v4_weight_basis();
        let (a, b) = (q("3/2"), q("-2"));
        let f = build_f4(&w1.combine(&a, &w2, &b)).unwrap();
        let (f1, f2) = v4_basis();
        for dt in ["4 6 2", "4 8 10 2 6", "6 8 12 2 14 16 4 10"] {
            let g = pd_to_gauss(&parse_dt(dt).unwrap());
            assert_eq!(f.evaluate(&g), &a * f1.evaluate(&g) + &b * f2.evaluate(&g));
        }
    }
}
