//! Signed, oriented Gauss diagrams, their singular variants and the
//! underlying chord diagrams.
//!
//! A diagram of `n` arrows is stored as its *word*: the sequence of the `2n`
//! arrow endpoints met while walking once around the circle, starting at
//! position 0. Arrows are labelled `0..n` in order of first appearance, so two
//! diagrams compare equal exactly when they agree position by position.
//! Rotation (choice of starting point) is quotiented out by
//! [`GaussDiagram::canonical_form`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

/// Tail = over-pass pre-image, head = under-pass pre-image.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum End {
    Tail,
    Head,
}

impl End {
    pub fn other(self) -> End {
        match self {
            End::Tail => End::Head,
            End::Head => End::Tail,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endpoint {
    pub arrow: usize,
    pub end: End,
}

impl Endpoint {
    pub fn new(arrow: usize, end: End) -> Self {
        Endpoint { arrow, end }
    }
}

/// An arrow with 0-based circle positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub tail: usize,
    pub head: usize,
    pub sign: Sign,
}

/// Relabels the arrows of `word` by order of first appearance and checks that
/// every label occurs exactly once as a tail and once as a head. Returns the
/// new word and, for each new label, the old one.
fn relabel(word: &[Endpoint], labels: usize) -> Result<(Vec<Endpoint>, Vec<usize>)> {
    let mut map = vec![usize::MAX; labels];
    let mut seen = vec![[false; 2]; labels];
    let mut old_of_new = Vec::new();
    let mut out = Vec::with_capacity(word.len());
    for ep in word {
        if ep.arrow >= labels {
            return Err(Error::invalid(format!("arrow label {} out of range", ep.arrow)));
        }
        let slot = &mut seen[ep.arrow][ep.end as usize];
        if *slot {
            return Err(Error::invalid(format!(
                "arrow {} has two {}s",
                ep.arrow + 1,
                if ep.end == End::Tail { "tail" } else { "head" }
            )));
        }
        *slot = true;
        if map[ep.arrow] == usize::MAX {
            map[ep.arrow] = old_of_new.len();
            old_of_new.push(ep.arrow);
        }
        out.push(Endpoint::new(map[ep.arrow], ep.end));
    }
    if let Some(a) = old_of_new.iter().find(|&&a| seen[a] != [true, true]) {
        return Err(Error::invalid(format!("arrow {} has a single endpoint", a + 1)));
    }
    Ok((out, old_of_new))
}

/// The signed Gauss diagram of a knot diagram.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussDiagram {
    word: Vec<Endpoint>,
    signs: Vec<Sign>,
    /// `[tail, head]` position of each arrow.
    pos: Vec<[usize; 2]>,
}

impl GaussDiagram {
    pub fn empty() -> Self {
        GaussDiagram { word: Vec::new(), signs: Vec::new(), pos: Vec::new() }
    }

    /// Builds a diagram from a word whose labels index into `signs`. Labels
    /// need not be in order of appearance; unused labels are an error.
    pub fn from_word(word: &[Endpoint], signs: &[Sign]) -> Result<Self> {
        let (word, old) = relabel(word, signs.len())?;
        if old.len() != signs.len() {
            return Err(Error::invalid("sign given for an arrow that does not occur"));
        }
        let signs = old.iter().map(|&a| signs[a]).collect();
        Ok(Self::from_normalized(word, signs))
    }

    /// Word already labelled by first appearance.
    pub(crate) fn from_normalized(word: Vec<Endpoint>, signs: Vec<Sign>) -> Self {
        let mut pos = vec![[0; 2]; signs.len()];
        for (p, ep) in word.iter().enumerate() {
            pos[ep.arrow][ep.end as usize] = p;
        }
        GaussDiagram { word, signs, pos }
    }

    /// Builds a diagram from arrows whose endpoints are exactly `0..2n`.
    pub fn from_arrows(arrows: &[Arrow]) -> Result<Self> {
        let len = 2 * arrows.len();
        let mut word = vec![None; len];
        for (i, a) in arrows.iter().enumerate() {
            for (p, end) in [(a.tail, End::Tail), (a.head, End::Head)] {
                match word.get_mut(p) {
                    Some(slot @ None) => *slot = Some(Endpoint::new(i, end)),
                    Some(Some(_)) => {
                        return Err(Error::invalid(format!("position {p} used twice")))
                    }
                    None => return Err(Error::invalid(format!("position {p} out of range"))),
                }
            }
        }
        let word: Vec<Endpoint> = word.into_iter().map(|e| e.expect("all positions filled")).collect();
        let signs: Vec<Sign> = arrows.iter().map(|a| a.sign).collect();
        Self::from_word(&word, &signs)
    }

    /// Number of arrows.
    pub fn n(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn word(&self) -> &[Endpoint] {
        &self.word
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn sign(&self, arrow: usize) -> Sign {
        self.signs[arrow]
    }

    pub fn tail(&self, arrow: usize) -> usize {
        self.pos[arrow][0]
    }

    pub fn head(&self, arrow: usize) -> usize {
        self.pos[arrow][1]
    }

    pub fn position(&self, arrow: usize, end: End) -> usize {
        self.pos[arrow][end as usize]
    }

    pub fn arrows(&self) -> Vec<Arrow> {
        (0..self.n())
            .map(|a| Arrow { tail: self.tail(a), head: self.head(a), sign: self.sign(a) })
            .collect()
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|s| s.value()).sum()
    }

    /// Same diagram read from position `k` onwards.
    pub fn rotate(&self, k: usize) -> Self {
        if self.is_empty() {
            return self.clone();
        }
        let len = self.word.len();
        let k = k % len;
        let word: Vec<Endpoint> = self.word[k..].iter().chain(&self.word[..k]).copied().collect();
        Self::from_word(&word, &self.signs).expect("rotation of a valid diagram")
    }

    /// The diagram with one arrow reversed (endpoints swapped).
    pub fn reverse_arrow(&self, arrow: usize) -> Self {
        let word: Vec<Endpoint> = self
            .word
            .iter()
            .map(|ep| if ep.arrow == arrow { Endpoint::new(arrow, ep.end.other()) } else { *ep })
            .collect();
        Self::from_word(&word, &self.signs).expect("reversal of a valid diagram")
    }

    pub fn flip_sign(&self, arrow: usize) -> Self {
        let mut signs = self.signs.clone();
        signs[arrow] = signs[arrow].flip();
        Self::from_normalized(self.word.clone(), signs)
    }

    /// The subdiagram formed by the given arrows.
    pub fn subdiagram(&self, arrows: &[usize]) -> Self {
        let mut keep = vec![false; self.n()];
        for &a in arrows {
            keep[a] = true;
        }
        let word: Vec<Endpoint> = self.word.iter().filter(|ep| keep[ep.arrow]).copied().collect();
        let (word, old) = relabel(&word, self.n()).expect("subdiagram of a valid diagram");
        let signs = old.iter().map(|&a| self.signs[a]).collect();
        Self::from_normalized(word, signs)
    }

    fn rotation_key(&self, k: usize) -> Vec<u32> {
        let len = self.word.len();
        let mut map = vec![u32::MAX; self.n()];
        let mut next = 0;
        (0..len)
            .map(|i| {
                let ep = self.word[(k + i) % len];
                if map[ep.arrow] == u32::MAX {
                    map[ep.arrow] = next;
                    next += 1;
                }
                map[ep.arrow] * 4 + (ep.end as u32) * 2 + (self.signs[ep.arrow] == Sign::Neg) as u32
            })
            .collect()
    }

    /// The rotation of this diagram that is least in the canonical ordering.
    pub fn canonical(&self) -> Self {
        if self.is_empty() {
            return self.clone();
        }
        let best = (0..self.word.len()).min_by_key(|&k| self.rotation_key(k)).unwrap_or(0);
        self.rotate(best)
    }

    /// Rotation-invariant text encoding: the Gauss code of the least
    /// rotation, or `"empty"` for the diagram without arrows. Two diagrams
    /// have equal encodings iff one is a rotation of the other. Mirror images
    /// and reversed orientations are distinct.
    pub fn canonical_form(&self) -> String {
        if self.is_empty() {
            return "empty".to_string();
        }
        crate::knotcodes::render_gauss(&self.canonical())
    }

    /// Rotation system of the 4-valent graph traced by the diagram. Half-edge
    /// `2e` is the start of edge `e` (position `e` to `e + 1`), `2e + 1` its
    /// end. Returns the counterclockwise successor of every half-edge.
    fn rotation_system(&self) -> Vec<usize> {
        let len = self.word.len();
        let mut next = vec![0; 2 * len];
        for a in 0..self.n() {
            let (t, h) = (self.tail(a), self.head(a));
            let over_in = 2 * ((t + len - 1) % len) + 1;
            let over_out = 2 * t;
            let under_in = 2 * ((h + len - 1) % len) + 1;
            let under_out = 2 * h;
            let ccw = match self.sign(a) {
                Sign::Pos => [under_in, over_out, under_out, over_in],
                Sign::Neg => [under_in, over_in, under_out, over_out],
            };
            for i in 0..4 {
                next[ccw[i]] = ccw[(i + 1) % 4];
            }
        }
        next
    }

    /// Faces of the ribbon graph determined by the signs and crossing
    /// structure, each given as the cyclic list of edges on its boundary.
    /// Edge `e` runs from position `e` to position `e + 1`.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        if self.is_empty() {
            return vec![Vec::new(), Vec::new()];
        }
        let next = self.rotation_system();
        let mut seen = vec![false; next.len()];
        let mut faces = Vec::new();
        for start in 0..next.len() {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                face.push(h / 2);
                h = next[h ^ 1];
            }
            faces.push(face);
        }
        faces
    }

    /// Genus of the closed surface on which the diagram embeds cellularly.
    pub fn genus(&self) -> usize {
        if self.is_empty() {
            return 0;
        }
        let v = self.n() as i64;
        let f = self.faces().len() as i64;
        // v - 2v + f = 2 - 2g
        ((2 + v - f) / 2) as usize
    }

    /// True iff the diagram comes from a planar knot diagram.
    pub fn is_realizable(&self) -> bool {
        self.genus() == 0
    }
}

impl fmt::Debug for GaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GaussDiagram({:?})", crate::knotcodes::render_gauss(self))
    }
}

impl fmt::Display for GaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::knotcodes::render_gauss(self))
    }
}

/// What sits on a pair of endpoints of a singular diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    Arrow(Sign),
    /// A double point. Its tail/head record the over/under data of the
    /// positive resolution.
    Singular,
}

/// A Gauss diagram in which some chords are double points.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SingularGaussDiagram {
    word: Vec<Endpoint>,
    kinds: Vec<Element>,
}

impl SingularGaussDiagram {
    pub fn from_word(word: &[Endpoint], kinds: &[Element]) -> Result<Self> {
        let (word, old) = relabel(word, kinds.len())?;
        if old.len() != kinds.len() {
            return Err(Error::invalid("element given for a chord that does not occur"));
        }
        let kinds = old.iter().map(|&a| kinds[a]).collect();
        Ok(SingularGaussDiagram { word, kinds })
    }

    pub fn from_gauss(g: &GaussDiagram) -> Self {
        SingularGaussDiagram {
            word: g.word.clone(),
            kinds: g.signs.iter().map(|&s| Element::Arrow(s)).collect(),
        }
    }

    /// Turns the given crossings into double points. A negative crossing
    /// records the reversed orientation, so that its positive resolution is
    /// the crossing change.
    pub fn collapse(g: &GaussDiagram, arrows: &[usize]) -> Self {
        let mut kinds: Vec<Element> = g.signs.iter().map(|&s| Element::Arrow(s)).collect();
        let mut reversed = vec![false; g.n()];
        for &a in arrows {
            reversed[a] = g.sign(a) == Sign::Neg;
            kinds[a] = Element::Singular;
        }
        let word: Vec<Endpoint> = g
            .word
            .iter()
            .map(|ep| if reversed[ep.arrow] { Endpoint::new(ep.arrow, ep.end.other()) } else { *ep })
            .collect();
        Self::from_word(&word, &kinds).expect("collapse of a valid diagram")
    }

    pub fn word(&self) -> &[Endpoint] {
        &self.word
    }

    pub fn kinds(&self) -> &[Element] {
        &self.kinds
    }

    /// Indices of the singular chords, in order of first appearance.
    pub fn singular_chords(&self) -> Vec<usize> {
        (0..self.kinds.len()).filter(|&i| self.kinds[i] == Element::Singular).collect()
    }

    pub fn singular_count(&self) -> usize {
        self.kinds.iter().filter(|k| **k == Element::Singular).count()
    }

    /// Resolves a single double point: `Pos` keeps the recorded orientation
    /// with sign +1, `Neg` reverses it with sign -1.
    pub fn resolve_one(&self, chord: usize, choice: Sign) -> Result<Self> {
        if self.kinds.get(chord) != Some(&Element::Singular) {
            return Err(Error::invalid(format!("element {chord} is not a double point")));
        }
        let mut kinds = self.kinds.clone();
        kinds[chord] = Element::Arrow(choice);
        let word: Vec<Endpoint> = self
            .word
            .iter()
            .map(|ep| {
                if ep.arrow == chord && choice == Sign::Neg {
                    Endpoint::new(chord, ep.end.other())
                } else {
                    *ep
                }
            })
            .collect();
        Self::from_word(&word, &kinds)
    }

    /// Resolves every double point; `choices[i]` applies to the `i`-th
    /// singular chord of [`Self::singular_chords`].
    pub fn resolve(&self, choices: &[Sign]) -> Result<GaussDiagram> {
        let chords = self.singular_chords();
        if chords.len() != choices.len() {
            return Err(Error::invalid(format!(
                "{} choices given for {} double points",
                choices.len(),
                chords.len()
            )));
        }
        let mut choice_of = vec![None; self.kinds.len()];
        for (&c, &s) in chords.iter().zip(choices) {
            choice_of[c] = Some(s);
        }
        let word: Vec<Endpoint> = self
            .word
            .iter()
            .map(|ep| match choice_of[ep.arrow] {
                Some(Sign::Neg) => Endpoint::new(ep.arrow, ep.end.other()),
                _ => *ep,
            })
            .collect();
        let signs: Vec<Sign> = self
            .kinds
            .iter()
            .zip(&choice_of)
            .map(|(k, c)| match (k, c) {
                (Element::Arrow(s), _) => *s,
                (Element::Singular, Some(s)) => *s,
                (Element::Singular, None) => unreachable!("every double point has a choice"),
            })
            .collect();
        GaussDiagram::from_word(&word, &signs)
    }

    pub fn underlying_chords(&self) -> ChordDiagram {
        let labels: Vec<usize> = self
            .word
            .iter()
            .filter(|ep| self.kinds[ep.arrow] == Element::Singular)
            .map(|ep| ep.arrow)
            .collect();
        ChordDiagram::from_labels(&labels)
    }

    /// Text form: arrows as in Gauss codes, double points as `O<i>*`/`U<i>*`
    /// where `O` marks the over strand of the positive resolution.
    pub fn render(&self) -> String {
        self.word
            .iter()
            .map(|ep| {
                let ou = if ep.end == End::Tail { 'O' } else { 'U' };
                let mark = match self.kinds[ep.arrow] {
                    Element::Arrow(s) => s.symbol(),
                    Element::Singular => '*',
                };
                format!("{ou}{}{mark}", ep.arrow + 1)
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for SingularGaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SingularGaussDiagram({:?})", self.render())
    }
}

/// Canonical double-occurrence word of `labels`: the least, over all
/// rotations, of the word relabelled by first appearance.
fn canonical_chord_word(labels: &[usize]) -> Vec<u16> {
    let len = labels.len();
    let max = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut best: Option<Vec<u16>> = None;
    let mut map = vec![u16::MAX; max];
    let mut cand = Vec::with_capacity(len);
    for k in 0..len {
        map.iter_mut().for_each(|m| *m = u16::MAX);
        cand.clear();
        let mut next = 0;
        for i in 0..len {
            let l = labels[(k + i) % len];
            if map[l] == u16::MAX {
                map[l] = next;
                next += 1;
            }
            cand.push(map[l]);
        }
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand.clone());
        }
    }
    best.unwrap_or_default()
}

/// A chord diagram up to rotation, stored as its canonical word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChordDiagram {
    word: Vec<u16>,
}

impl ChordDiagram {
    pub fn empty() -> Self {
        ChordDiagram { word: Vec::new() }
    }

    /// From any double-occurrence sequence of labels.
    pub fn from_labels(labels: &[usize]) -> Self {
        ChordDiagram { word: canonical_chord_word(labels) }
    }

    /// Parses a word such as `abcabc`; every letter must occur twice.
    pub fn parse(text: &str) -> Result<Self> {
        let mut labels = Vec::new();
        for (i, ch) in text.chars().enumerate() {
            if !ch.is_ascii_lowercase() {
                return Err(Error::syntax(i, format!("unexpected character {ch:?}")));
            }
            labels.push((ch as u8 - b'a') as usize);
        }
        let mut count = [0u8; 26];
        labels.iter().for_each(|&l| count[l] += 1);
        if let Some(l) = count.iter().position(|&c| c != 0 && c != 2) {
            return Err(Error::invalid(format!(
                "chord {} occurs {} times",
                (b'a' + l as u8) as char,
                count[l]
            )));
        }
        Ok(Self::from_labels(&labels))
    }

    pub fn from_gauss(g: &GaussDiagram) -> Self {
        let labels: Vec<usize> = g.word().iter().map(|ep| ep.arrow).collect();
        Self::from_labels(&labels)
    }

    pub fn degree(&self) -> usize {
        self.word.len() / 2
    }

    pub fn word(&self) -> &[u16] {
        &self.word
    }

    /// Endpoint positions of each chord.
    pub fn chords(&self) -> Vec<[usize; 2]> {
        let mut out = vec![[usize::MAX; 2]; self.degree()];
        for (p, &l) in self.word.iter().enumerate() {
            let slot = &mut out[l as usize];
            if slot[0] == usize::MAX {
                slot[0] = p;
            } else {
                slot[1] = p;
            }
        }
        out
    }

    /// Whether chords `a` and `b` have interleaved endpoints.
    pub fn crosses(&self, a: usize, b: usize) -> bool {
        let ch = self.chords();
        let inside = |p: usize| ch[a][0] < p && p < ch[a][1];
        inside(ch[b][0]) != inside(ch[b][1])
    }

    /// True if some chord crosses no other chord.
    pub fn has_isolated_chord(&self) -> bool {
        let n = self.degree();
        (0..n).any(|a| (0..n).all(|b| a == b || !self.crosses(a, b)))
    }
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() <= 26 {
            let s: String = self.word.iter().map(|&l| (b'a' + l as u8) as char).collect();
            f.write_str(&s)
        } else {
            let s: Vec<String> = self.word.iter().map(|l| (l + 1).to_string()).collect();
            f.write_str(&s.join(" "))
        }
    }
}

impl fmt::Debug for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChordDiagram({self})")
    }
}

impl GaussDiagram {
    pub fn underlying_chords(&self) -> ChordDiagram {
        ChordDiagram::from_gauss(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knotcodes::parse_gauss;

    fn g(s: &str) -> GaussDiagram {
        parse_gauss(s).unwrap()
    }

    const TREFOIL: &str = "O1+ U2+ O3+ U1+ O2+ U3+";

    #[test]
    fn canonical_form_is_rotation_invariant() {
        let t = g(TREFOIL);
        assert_eq!(t.canonical_form(), t.rotate(1).canonical_form());
        assert_eq!(GaussDiagram::empty().canonical_form(), "empty");
    }

    #[test]
    fn mirror_trefoils_differ() {
        let pos = g(TREFOIL);
        let neg = g("O1- U2- O3- U1- O2- U3-");
        for k in 0..6 {
            assert_ne!(pos.rotate(k), neg);
        }
        assert_ne!(pos.canonical_form(), neg.canonical_form());
    }

    #[test]
    fn underlying_chords_of_trefoil() {
        assert_eq!(g(TREFOIL).underlying_chords().to_string(), "abcabc");
        assert_eq!(GaussDiagram::empty().underlying_chords(), ChordDiagram::empty());
    }

    #[test]
    fn realizability() {
        assert!(g(TREFOIL).is_realizable());
        assert!(g("O1+ U1+").is_realizable());
        assert!(GaussDiagram::empty().is_realizable());
        assert!(!g("O1+ O2+ U1+ U2+").is_realizable());
        // figure-eight with one sign flipped lives on a torus
        assert!(g("O1+ U2+ O3- U4- O2+ U1+ O4- U3-").is_realizable());
        assert!(!g("O1+ U2- O3+ U1+ O2- U3+").is_realizable());
    }

    #[test]
    fn exhaustive_two_arrow_realizability() {
        // Two arrows: realizable iff the chords do not cross.
        let words = ["O1+ U1+ O2+ U2+", "O1+ O2+ U2+ U1+", "O1+ O2+ U1+ U2+", "O1+ U2+ U1+ O2+"];
        let expected = [true, true, false, false];
        for (w, e) in words.iter().zip(expected) {
            let d = g(w);
            for s in 0..4 {
                let mut d2 = d.clone();
                if s & 1 == 1 {
                    d2 = d2.flip_sign(0);
                }
                if s & 2 == 2 {
                    d2 = d2.flip_sign(1);
                }
                assert_eq!(d2.is_realizable(), e, "{w} signs {s}");
            }
        }
    }

    #[test]
    fn collapse_and_resolve_roundtrip() {
        let t = g("O1+ U2- O3+ U1+ O2- U3+");
        let s = SingularGaussDiagram::collapse(&t, &[1]);
        assert_eq!(s.singular_count(), 1);
        // the negative crossing is the negative resolution
        assert_eq!(s.resolve(&[Sign::Neg]).unwrap(), t);
        let pos = s.resolve(&[Sign::Pos]).unwrap();
        assert_eq!(pos.sign(1), Sign::Pos);
        assert_eq!(pos.tail(1), t.head(1));
    }

    #[test]
    fn chord_diagram_parse_and_isolation() {
        assert!(ChordDiagram::parse("aabb").unwrap().has_isolated_chord());
        assert!(!ChordDiagram::parse("abab").unwrap().has_isolated_chord());
        assert!(!ChordDiagram::parse("abcdabcd").unwrap().has_isolated_chord());
        assert_eq!(ChordDiagram::parse("bbaa").unwrap().to_string(), "aabb");
        assert!(ChordDiagram::parse("aab").is_err());
        assert_eq!(
            ChordDiagram::parse("abcbcdad").unwrap(),
            ChordDiagram::parse("ababcdcd").unwrap()
        );
    }
}
