//! Arrow patterns and their signed subdiagram counts in Gauss diagrams.
//!
//! A pattern is an unsigned arrow diagram. Pairing a pattern `A` with a Gauss
//! diagram `G` sums, over the arrow subsets of `G` whose induced diagram is
//! `A`, the product of the signs of the arrows in the subset. Unbased
//! patterns are compared up to rotation; based patterns are read linearly
//! from position 0 of `G`.
//!
//! Text form: `T<i>`/`H<i>` tokens in circle order, e.g. `T1 H2 H1 T2`. A
//! based pattern starts with a `|` token marking the base point.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_traits::Zero;

use crate::gaussdiag::{End, Endpoint, GaussDiagram};
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// Patterns are keyed by 5 bits per endpoint in a `u128`.
pub const MAX_PATTERN_ARROWS: usize = 12;

/// Position-by-position code of a diagram: for each endpoint, its end bit and
/// the forward distance to the other endpoint of its arrow. Two words have
/// equal codes iff they agree up to relabelling.
fn codes(ends: &[End], partner: &[usize]) -> Vec<u8> {
    let m = ends.len();
    (0..m)
        .map(|i| ((ends[i] as u8) << 4) | ((partner[i] + m - i) % m) as u8)
        .collect()
}

fn pack(codes: &[u8], start: usize) -> u128 {
    let m = codes.len();
    (0..m).fold(0u128, |acc, i| (acc << 5) | codes[(start + i) % m] as u128)
}

fn key_of(codes: &[u8], based: bool) -> u128 {
    if based || codes.is_empty() {
        pack(codes, 0)
    } else {
        (0..codes.len()).map(|s| pack(codes, s)).min().expect("nonempty")
    }
}

fn word_codes(word: &[Endpoint]) -> Vec<u8> {
    let mut first = HashMap::new();
    let mut partner = vec![0; word.len()];
    for (i, ep) in word.iter().enumerate() {
        if let Some(j) = first.insert(ep.arrow, i) {
            partner[i] = j;
            partner[j] = i;
        }
    }
    let ends: Vec<End> = word.iter().map(|ep| ep.end).collect();
    codes(&ends, &partner)
}

/// An unsigned arrow diagram, optionally with a base point.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ArrowPattern {
    /// Labels in order of first appearance; for unbased patterns, the least
    /// rotation.
    word: Vec<Endpoint>,
    based: bool,
}

impl ArrowPattern {
    pub fn new(word: &[Endpoint], based: bool) -> Result<Self> {
        let signs = vec![crate::gaussdiag::Sign::Pos; word.iter().map(|e| e.arrow + 1).max().unwrap_or(0)];
        let g = GaussDiagram::from_word(word, &signs)?;
        Self::from_gauss(&g, based)
    }

    /// The pattern of `g` with its signs forgotten.
    pub fn from_gauss(g: &GaussDiagram, based: bool) -> Result<Self> {
        if g.n() > MAX_PATTERN_ARROWS {
            return Err(Error::Bound(format!(
                "patterns have at most {MAX_PATTERN_ARROWS} arrows, got {}",
                g.n()
            )));
        }
        let word = if based || g.is_empty() {
            g.word().to_vec()
        } else {
            let unsigned = GaussDiagram::from_word(g.word(), &vec![crate::gaussdiag::Sign::Pos; g.n()])
                .expect("valid word");
            unsigned.canonical().word().to_vec()
        };
        Ok(ArrowPattern { word, based })
    }

    /// Parses the text form, e.g. `H1 T2 T1 H2` or `| H1 T2 T1 H2`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut based = false;
        let mut word = Vec::new();
        let mut labels: HashMap<u64, usize> = HashMap::new();
        let mut offset = 0;
        for (i, token) in text.split_whitespace().enumerate() {
            let pos = offset + text[offset..].find(token).expect("token comes from text");
            offset = pos + token.len();
            if token == "|" {
                if i != 0 {
                    return Err(Error::syntax(pos, "base point marker must come first"));
                }
                based = true;
                continue;
            }
            let end = match token.as_bytes()[0] {
                b'T' => End::Tail,
                b'H' => End::Head,
                _ => return Err(Error::syntax(pos, format!("expected T or H in {token:?}"))),
            };
            let label: u64 = token[1..]
                .parse()
                .map_err(|_| Error::syntax(pos + 1, format!("bad arrow label in {token:?}")))?;
            let next = labels.len();
            let idx = *labels.entry(label).or_insert(next);
            word.push(Endpoint::new(idx, end));
        }
        Self::new(&word, based)
    }

    /// Number of arrows.
    pub fn k(&self) -> usize {
        self.word.len() / 2
    }

    pub fn is_based(&self) -> bool {
        self.based
    }

    pub fn word(&self) -> &[Endpoint] {
        &self.word
    }

    fn key(&self) -> u128 {
        key_of(&word_codes(&self.word), self.based)
    }

    /// Keys of all subpatterns, grouped by arrow count.
    fn sub_keys(&self) -> Vec<HashSet<u128>> {
        let k = self.k();
        let mut out = vec![HashSet::new(); k + 1];
        for mask in 0u32..(1 << k) {
            let sub: Vec<Endpoint> = self.word.iter().filter(|ep| mask >> ep.arrow & 1 == 1).copied().collect();
            out[mask.count_ones() as usize].insert(key_of(&word_codes(&sub), self.based));
        }
        out
    }
}

impl fmt::Display for ArrowPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut tokens: Vec<String> = Vec::new();
        if self.based {
            tokens.push("|".into());
        }
        for ep in &self.word {
            let te = if ep.end == End::Tail { 'T' } else { 'H' };
            tokens.push(format!("{te}{}", ep.arrow + 1));
        }
        f.write_str(&tokens.join(" "))
    }
}

impl fmt::Debug for ArrowPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ArrowPattern({self})")
    }
}

/// A formal rational combination of distinct patterns.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PatternCombination {
    terms: Vec<(Rational, ArrowPattern)>,
}

impl PatternCombination {
    pub fn new(terms: Vec<(Rational, ArrowPattern)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (_, p) in &terms {
            if !seen.insert(p) {
                return Err(Error::invalid(format!("pattern {p} occurs twice in a combination")));
            }
        }
        Ok(PatternCombination { terms })
    }

    /// Adds `c * p`, merging with an existing term for `p` and dropping terms
    /// whose coefficient becomes zero.
    pub fn add(&mut self, c: Rational, p: ArrowPattern) {
        if let Some(t) = self.terms.iter_mut().find(|t| t.1 == p) {
            t.0 += c;
        } else {
            self.terms.push((c, p));
        }
        self.terms.retain(|t| !t.0.is_zero());
    }

    pub fn terms(&self) -> &[(Rational, ArrowPattern)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, c: &Rational) -> PatternCombination {
        let mut out = PatternCombination::default();
        for (d, p) in &self.terms {
            out.add(c * d, p.clone());
        }
        out
    }
}

impl fmt::Display for PatternCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(c, p)| format!("{} <{p}>", rational::to_string(c))).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for PatternCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PatternCombination({self})")
    }
}

/// Patterns of one arrow count and basedness, indexed for a single pruned
/// subset search.
struct Group {
    based: bool,
    k: usize,
    allowed: Vec<HashSet<u128>>,
    target: HashMap<u128, usize>,
}

/// Several patterns compiled for simultaneous counting.
pub struct PatternIndex {
    patterns: Vec<ArrowPattern>,
    groups: Vec<Group>,
}

impl PatternIndex {
    pub fn new(patterns: &[ArrowPattern]) -> Self {
        let mut groups: Vec<Group> = Vec::new();
        for (i, p) in patterns.iter().enumerate() {
            let g = match groups.iter_mut().position(|g| g.based == p.based && g.k == p.k()) {
                Some(j) => &mut groups[j],
                None => {
                    groups.push(Group {
                        based: p.based,
                        k: p.k(),
                        allowed: vec![HashSet::new(); p.k() + 1],
                        target: HashMap::new(),
                    });
                    groups.last_mut().expect("just pushed")
                }
            };
            for (s, keys) in p.sub_keys().into_iter().enumerate() {
                g.allowed[s].extend(keys);
            }
            g.target.insert(p.key(), i);
        }
        PatternIndex { patterns: patterns.to_vec(), groups }
    }

    pub fn patterns(&self) -> &[ArrowPattern] {
        &self.patterns
    }

    /// Signed count of every pattern in `g`, in pattern order.
    pub fn counts(&self, g: &GaussDiagram) -> Vec<i64> {
        let mut out = vec![0; self.patterns.len()];
        self.visit(g, &mut |i, _, sign| out[i] += sign);
        out
    }

    /// Calls `f(pattern index, arrow subset, sign product)` for every match.
    pub fn visit(&self, g: &GaussDiagram, f: &mut dyn FnMut(usize, &[usize], i64)) {
        let positions: Vec<[usize; 2]> = (0..g.n()).map(|a| [g.tail(a), g.head(a)]).collect();
        let signs: Vec<i64> = g.signs().iter().map(|s| s.value()).collect();
        for group in &self.groups {
            let mut search = Search {
                group,
                positions: &positions,
                signs: &signs,
                chosen: Vec::with_capacity(group.k),
                f,
            };
            search.run(0, 1);
        }
    }
}

struct Search<'a, 'f> {
    group: &'a Group,
    positions: &'a [[usize; 2]],
    signs: &'a [i64],
    chosen: Vec<usize>,
    f: &'f mut dyn FnMut(usize, &[usize], i64),
}

impl Search<'_, '_> {
    fn key(&self) -> u128 {
        let mut pts: Vec<(usize, usize, End)> = Vec::with_capacity(2 * self.chosen.len());
        for (local, &a) in self.chosen.iter().enumerate() {
            pts.push((self.positions[a][0], local, End::Tail));
            pts.push((self.positions[a][1], local, End::Head));
        }
        pts.sort_unstable();
        let mut at = vec![[0usize; 2]; self.chosen.len()];
        for (i, &(_, local, end)) in pts.iter().enumerate() {
            at[local][end as usize] = i;
        }
        let ends: Vec<End> = pts.iter().map(|p| p.2).collect();
        let partner: Vec<usize> = pts.iter().map(|&(_, local, end)| at[local][end.other() as usize]).collect();
        key_of(&codes(&ends, &partner), self.group.based)
    }

    fn run(&mut self, from: usize, sign: i64) {
        let depth = self.chosen.len();
        if depth == self.group.k {
            if let Some(&i) = self.group.target.get(&self.key()) {
                (self.f)(i, &self.chosen, sign);
            }
            return;
        }
        let remaining = self.group.k - depth;
        for a in from..self.positions.len().saturating_sub(remaining - 1) {
            self.chosen.push(a);
            if depth + 1 == self.group.k || self.group.allowed[depth + 1].contains(&self.key()) {
                self.run(a + 1, sign * self.signs[a]);
            }
            self.chosen.pop();
        }
    }
}

/// Signed number of subdiagrams of `g` of type `a`.
pub fn pairing(a: &ArrowPattern, g: &GaussDiagram) -> i64 {
    PatternIndex::new(std::slice::from_ref(a)).counts(g)[0]
}

/// Reference implementation of [`pairing`]: every `k`-subset of arrows is
/// extracted as a Gauss diagram and compared with the pattern.
pub fn pairing_naive(a: &ArrowPattern, g: &GaussDiagram) -> i64 {
    let k = a.k();
    let n = g.n();
    if k > n {
        return 0;
    }
    let mut total = 0;
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        let sub = g.subdiagram(&subset);
        if ArrowPattern::from_gauss(&sub, a.based).expect("k is small") == *a {
            total += subset.iter().map(|&s| g.sign(s).value()).product::<i64>();
        }
        // next combination
        let Some(i) = (0..k).rev().find(|&i| subset[i] < n - k + i) else { break };
        subset[i] += 1;
        for j in i + 1..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
    total
}

/// `Σ c_i <A_i, G>`.
pub fn pairing_combo(c: &PatternCombination, g: &GaussDiagram) -> Rational {
    let patterns: Vec<ArrowPattern> = c.terms.iter().map(|t| t.1.clone()).collect();
    let counts = PatternIndex::new(&patterns).counts(g);
    c.terms.iter().zip(counts).map(|((coef, _), n)| coef * rational::int(n)).sum()
}

/// The matched subsets of `g` (as arrow indices) with their sign products.
pub fn match_count_breakdown(a: &ArrowPattern, g: &GaussDiagram) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    PatternIndex::new(std::slice::from_ref(a)).visit(g, &mut |_, s, sign| out.push((s.to_vec(), sign)));
    out
}
