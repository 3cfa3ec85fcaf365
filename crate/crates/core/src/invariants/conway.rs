//! Conway polynomial by the skein relation `C(L+) - C(L-) = z C(L0)`.
//!
//! The recursion walks the diagram from a base point on each component and
//! switches the first crossing that is met from below. A diagram in which
//! every crossing is first met from above (a descending diagram) is an
//! unlink, with polynomial 1 for a knot and 0 for two or more components.
//! This module is deliberately independent of the Gauss diagram formulas so
//! that it can serve as a reference for them.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::gaussdiag::{GaussDiagram, Sign};
use crate::knotcodes::{gauss_to_pd, PlanarDiagram};
use crate::{Error, Result};

/// Crossing count above which the exponential recursion is refused.
pub const MAX_CONWAY_CROSSINGS: usize = 30;

/// Integer polynomial in `z`; `coeffs[k]` is the coefficient of `z^k`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ConwayPolynomial {
    coeffs: Vec<BigInt>,
}

impl ConwayPolynomial {
    pub fn zero() -> Self {
        ConwayPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ConwayPolynomial { coeffs: vec![BigInt::from(1)] }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = ConwayPolynomial { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `self + sign * z * other`
    fn add_z_times(mut self, sign: i64, other: &ConwayPolynomial) -> Self {
        if self.coeffs.len() < other.coeffs.len() + 1 {
            self.coeffs.resize(other.coeffs.len() + 1, BigInt::zero());
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            self.coeffs[k + 1] += c * sign;
        }
        self.trim();
        self
    }

    /// Knot determinant `|Δ(-1)| = |C(2i)| = |Σ c_{2k} (-4)^k|`.
    pub fn determinant(&self) -> BigInt {
        let mut total = BigInt::zero();
        let mut power = BigInt::from(1);
        for (k, c) in self.coeffs.iter().enumerate() {
            if k % 2 == 0 {
                total += c * &power;
                power *= -4;
            }
        }
        total.abs()
    }
}

impl fmt::Display for ConwayPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let one = mag == BigInt::from(1);
            match k {
                0 => write!(f, "{mag}")?,
                1 if one => f.write_str("z")?,
                1 => write!(f, "{mag}z")?,
                _ if one => write!(f, "z^{k}")?,
                _ => write!(f, "{mag}z^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ConwayPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConwayPolynomial({self})")
    }
}

#[derive(Clone, Copy, Debug)]
struct LinkCrossing {
    under_in: usize,
    under_out: usize,
    over_in: usize,
    over_out: usize,
    positive: bool,
}

/// An oriented link diagram: crossings with edge labels, plus closed
/// components that pass through no crossing.
#[derive(Clone, Debug)]
struct LinkDiagram {
    crossings: Vec<LinkCrossing>,
    free_loops: usize,
}

impl LinkDiagram {
    fn switched(&self, x: usize) -> LinkDiagram {
        let mut d = self.clone();
        let c = &mut d.crossings[x];
        *c = LinkCrossing {
            under_in: c.over_in,
            under_out: c.over_out,
            over_in: c.under_in,
            over_out: c.under_out,
            positive: !c.positive,
        };
        d
    }

    /// Oriented smoothing of crossing `x`.
    fn smoothed(&self, x: usize) -> LinkDiagram {
        let c = self.crossings[x];
        let mut crossings = self.crossings.clone();
        crossings.remove(x);
        let mut parent: HashMap<usize, usize> = HashMap::new();
        fn find(parent: &mut HashMap<usize, usize>, mut a: usize) -> usize {
            while let Some(&p) = parent.get(&a) {
                if p == a {
                    break;
                }
                a = p;
            }
            a
        }
        for (a, b) in [(c.under_in, c.over_out), (c.over_in, c.under_out)] {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent.insert(rb, ra);
            }
        }
        let mut rename = |e: &mut usize| *e = find(&mut parent, *e);
        for k in crossings.iter_mut() {
            rename(&mut k.under_in);
            rename(&mut k.under_out);
            rename(&mut k.over_in);
            rename(&mut k.over_out);
        }
        let mut classes: Vec<usize> = [c.under_in, c.over_out, c.over_in, c.under_out]
            .into_iter()
            .map(|e| find(&mut parent, e))
            .collect();
        classes.sort_unstable();
        classes.dedup();
        let used = |e: usize| {
            crossings
                .iter()
                .any(|k| [k.under_in, k.under_out, k.over_in, k.over_out].contains(&e))
        };
        let new_loops = classes.into_iter().filter(|&e| !used(e)).count();
        LinkDiagram { crossings, free_loops: self.free_loops + new_loops }
    }

    /// Walks every component from its least edge label. Returns the number
    /// of components (including free loops) and the first crossing met from
    /// below, if any.
    fn first_bad_crossing(&self) -> (usize, Option<usize>) {
        // entering edge -> (crossing, entered as over)
        let mut enter: HashMap<usize, (usize, bool)> = HashMap::new();
        for (x, c) in self.crossings.iter().enumerate() {
            enter.insert(c.under_in, (x, false));
            enter.insert(c.over_in, (x, true));
        }
        let mut edges: Vec<usize> = enter.keys().copied().collect();
        edges.sort_unstable();
        let mut edge_seen: HashMap<usize, bool> = HashMap::new();
        let mut crossing_seen = vec![false; self.crossings.len()];
        let mut components = self.free_loops;
        let mut bad = None;
        for &start in &edges {
            if edge_seen.contains_key(&start) {
                continue;
            }
            components += 1;
            let mut e = start;
            while edge_seen.insert(e, true).is_none() {
                let (x, over) = enter[&e];
                if !crossing_seen[x] {
                    crossing_seen[x] = true;
                    if !over && bad.is_none() {
                        bad = Some(x);
                    }
                }
                let c = &self.crossings[x];
                e = if over { c.over_out } else { c.under_out };
            }
        }
        (components, bad)
    }

    fn conway(&self) -> ConwayPolynomial {
        let (components, bad) = self.first_bad_crossing();
        let Some(x) = bad else {
            return if components == 1 { ConwayPolynomial::one() } else { ConwayPolynomial::zero() };
        };
        let sign = if self.crossings[x].positive { 1 } else { -1 };
        // C(D) = C(D switched) + sign * z * C(D smoothed)
        self.switched(x).conway().add_z_times(sign, &self.smoothed(x).conway())
    }
}

/// Conway polynomial of a knot diagram.
pub fn conway(d: &PlanarDiagram) -> Result<ConwayPolynomial> {
    if d.n() > MAX_CONWAY_CROSSINGS {
        return Err(Error::Bound(format!(
            "{} crossings exceed the skein recursion limit of {MAX_CONWAY_CROSSINGS}",
            d.n()
        )));
    }
    let link = LinkDiagram {
        crossings: d
            .crossings()
            .iter()
            .map(|c| LinkCrossing {
                under_in: c.under_in(),
                under_out: c.under_out(),
                over_in: c.over_in(),
                over_out: c.over_out(),
                positive: c.sign == Sign::Pos,
            })
            .collect(),
        free_loops: if d.n() == 0 { 1 } else { 0 },
    };
    Ok(link.conway())
}

/// Conway polynomial of a realizable Gauss diagram.
pub fn conway_gauss(g: &GaussDiagram) -> Result<ConwayPolynomial> {
    conway(&gauss_to_pd(g)?)
}
