use num_traits::Zero;

use crate::gaussdiag::{GaussDiagram, SingularGaussDiagram, Sign};
use crate::invariants::GaussFormula;
use crate::{Rational, Result};

/// Resolves every double point of `s`; see [`SingularGaussDiagram::resolve`].
pub fn resolve(s: &SingularGaussDiagram, choices: &[Sign]) -> Result<GaussDiagram> {
    s.resolve(choices)
}

/// Extension of `f` to singular diagrams: the alternating sum over all
/// `2^m` resolutions, a resolution counting with sign `(-1)^(#negative)`.
pub fn eval_singular(f: &GaussFormula, s: &SingularGaussDiagram) -> Rational {
    let m = s.singular_count();
    let mut total = Rational::zero();
    for mask in 0u32..(1 << m) {
        let choices: Vec<Sign> =
            (0..m).map(|i| if mask >> i & 1 == 1 { Sign::Neg } else { Sign::Pos }).collect();
        let value = f.evaluate(&s.resolve(&choices).expect("one choice per double point"));
        if mask.count_ones() % 2 == 0 {
            total += value;
        } else {
            total -= value;
        }
    }
    total
}

/// The same extension computed one double point at a time, always
/// resolving the last remaining one: `f(S) = f(S+) - f(S-)`.
pub fn eval_singular_recursive(f: &GaussFormula, s: &SingularGaussDiagram) -> Rational {
    match s.singular_chords().last() {
        None => f.evaluate(&s.resolve(&[]).expect("no double points")),
        Some(&c) => {
            let pos = s.resolve_one(c, Sign::Pos).expect("c is a double point");
            let neg = s.resolve_one(c, Sign::Neg).expect("c is a double point");
            eval_singular_recursive(f, &pos) - eval_singular_recursive(f, &neg)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{v2_formula, v4_basis};
    use crate::knotcodes::parse_gauss;
    use crate::rational::int;

    #[test]
    fn no_double_points() {
        let t = parse_gauss("O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        let s = SingularGaussDiagram::from_gauss(&t);
        assert_eq!(resolve(&s, &[]).unwrap(), t);
        assert_eq!(eval_singular(&v2_formula(), &s), int(1));
    }

    #[test]
    fn resolving_a_collapsed_crossing() {
        let t = parse_gauss("O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        let s = SingularGaussDiagram::collapse(&t, &[1]);
        let plus = resolve(&s, &[Sign::Pos]).unwrap();
        let minus = resolve(&s, &[Sign::Neg]).unwrap();
        assert_eq!(plus.canonical_form(), t.canonical_form());
        assert_eq!(minus.writhe(), 1);
        // trefoil minus the unknot
        assert_eq!(eval_singular(&v2_formula(), &s), int(1));
    }

    #[test]
    fn closed_form_matches_recursion() {
        let g = parse_gauss("O1+ U2- O3+ U4- O2- U1+ O4- U3+").unwrap();
        let (f1, f2) = v4_basis();
        for arrows in [vec![0], vec![0, 2], vec![1, 2, 3], vec![0, 1, 2, 3]] {
            let s = SingularGaussDiagram::collapse(&g, &arrows);
            for f in [&f1, &f2, &v2_formula()] {
                assert_eq!(eval_singular(f, &s), eval_singular_recursive(f, &s));
            }
        }
    }
}
