use std::fmt;

use crate::gaussdiag::{End, Endpoint, GaussDiagram, Sign};
use crate::{Error, Result};

/// One crossing of a PD code: edge labels counterclockwise from the
/// incoming under-strand, and the local writhe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub edges: [usize; 4],
    pub sign: Sign,
}

impl Crossing {
    /// Slot of the incoming over-strand (1 or 3).
    pub fn over_in_slot(&self) -> usize {
        match self.sign {
            Sign::Pos => 3,
            Sign::Neg => 1,
        }
    }

    pub fn under_in(&self) -> usize {
        self.edges[0]
    }

    pub fn under_out(&self) -> usize {
        self.edges[2]
    }

    pub fn over_in(&self) -> usize {
        self.edges[self.over_in_slot()]
    }

    pub fn over_out(&self) -> usize {
        self.edges[(self.over_in_slot() + 2) % 4]
    }
}

/// A validated single-component knot diagram in PD form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlanarDiagram {
    crossings: Vec<Crossing>,
}

impl PlanarDiagram {
    pub fn unknot() -> Self {
        PlanarDiagram { crossings: Vec::new() }
    }

    /// Validates raw quadruples and derives the crossing signs.
    pub fn from_quads(quads: &[[usize; 4]]) -> Result<Self> {
        let n = quads.len();
        let mut occurrences = vec![Vec::new(); 2 * n + 1];
        for (x, q) in quads.iter().enumerate() {
            for (s, &e) in q.iter().enumerate() {
                if e == 0 || e > 2 * n {
                    return Err(Error::invalid(format!(
                        "edge label {e} outside 1..={} in crossing {}",
                        2 * n,
                        x + 1
                    )));
                }
                occurrences[e].push((x, s));
            }
        }
        if let Some(e) = (1..=2 * n).find(|&e| occurrences[e].len() != 2) {
            return Err(Error::invalid(format!(
                "edge label {e} appears {} times, expected 2",
                occurrences[e].len()
            )));
        }
        if n == 0 {
            return Ok(Self::unknot());
        }

        // Walk the strand starting at the incoming under-strand of crossing 0,
        // marking every slot as entered (true) or left (false).
        let mut entered: Vec<[Option<bool>; 4]> = vec![[None; 4]; n];
        let (mut x, mut s) = (0, 0);
        loop {
            if entered[x][s].is_some() {
                return Err(Error::invalid("inconsistent strand orientation"));
            }
            entered[x][s] = Some(true);
            let exit = (s + 2) % 4;
            if entered[x][exit].is_some() {
                return Err(Error::invalid("inconsistent strand orientation"));
            }
            entered[x][exit] = Some(false);
            let e = quads[x][exit];
            let &(nx, ns) = occurrences[e]
                .iter()
                .find(|&&o| o != (x, exit))
                .expect("edge occurs twice");
            (x, s) = (nx, ns);
            if (x, s) == (0, 0) {
                break;
            }
        }
        if entered.iter().any(|c| c.iter().any(Option::is_none)) {
            return Err(Error::invalid("diagram has more than one component"));
        }
        let mut crossings = Vec::with_capacity(n);
        for (x, q) in quads.iter().enumerate() {
            if entered[x][0] != Some(true) {
                return Err(Error::invalid(format!(
                    "first edge of crossing {} is not the incoming under-strand",
                    x + 1
                )));
            }
            let sign = if entered[x][3] == Some(true) { Sign::Pos } else { Sign::Neg };
            crossings.push(Crossing { edges: *q, sign });
        }
        Ok(PlanarDiagram { crossings })
    }

    pub fn n(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn quads(&self) -> Vec<[usize; 4]> {
        self.crossings.iter().map(|c| c.edges).collect()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    /// Gauss diagram obtained by walking the knot starting on edge `start`.
    pub fn to_gauss_from(&self, start: usize) -> Result<GaussDiagram> {
        let n = self.n();
        if n == 0 {
            return Ok(GaussDiagram::empty());
        }
        if start == 0 || start > 2 * n {
            return Err(Error::invalid(format!("no edge {start}")));
        }
        // where each edge enters a crossing
        let mut enters = vec![(0, 0); 2 * n + 1];
        for (x, c) in self.crossings.iter().enumerate() {
            enters[c.under_in()] = (x, 0);
            enters[c.over_in()] = (x, c.over_in_slot());
        }
        let mut word = Vec::with_capacity(2 * n);
        let mut e = start;
        for _ in 0..2 * n {
            let (x, s) = enters[e];
            let end = if s == 0 { End::Head } else { End::Tail };
            word.push(Endpoint::new(x, end));
            e = self.crossings[x].edges[(s + 2) % 4];
        }
        let signs: Vec<Sign> = self.crossings.iter().map(|c| c.sign).collect();
        GaussDiagram::from_word(&word, &signs)
    }

    pub fn render(&self) -> String {
        let quads: Vec<String> = self
            .crossings
            .iter()
            .map(|c| format!("[{},{},{},{}]", c.edges[0], c.edges[1], c.edges[2], c.edges[3]))
            .collect();
        format!("[{}]", quads.join(","))
    }
}

impl fmt::Debug for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlanarDiagram({})", self.render())
    }
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

struct Scanner<'a> {
    text: &'a [u8],
    pos: usize,
}

impl Scanner<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<()> {
        match self.peek() {
            Some(c) if c == ch => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(Error::syntax(
                self.pos,
                format!("expected '{}', found '{}'", ch as char, c as char),
            )),
            None => Err(Error::syntax(self.pos, format!("expected '{}', found end of input", ch as char))),
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::syntax(start, "expected an edge label"));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::syntax(start, "edge label too large"))
    }
}

/// Parses and validates a PD code such as `[[1,4,2,5],[3,6,4,1],[5,2,6,3]]`.
pub fn parse_pd(text: &str) -> Result<PlanarDiagram> {
    let mut sc = Scanner { text: text.as_bytes(), pos: 0 };
    let mut quads = Vec::new();
    sc.expect(b'[')?;
    if sc.peek() == Some(b']') {
        sc.pos += 1;
    } else {
        loop {
            sc.expect(b'[')?;
            let mut q = [0; 4];
            for (i, slot) in q.iter_mut().enumerate() {
                if i > 0 {
                    sc.expect(b',')?;
                }
                *slot = sc.number()?;
            }
            sc.expect(b']')?;
            quads.push(q);
            match sc.peek() {
                Some(b',') => sc.pos += 1,
                _ => {
                    sc.expect(b']')?;
                    break;
                }
            }
        }
    }
    if let Some(c) = sc.peek() {
        return Err(Error::syntax(sc.pos, format!("trailing input '{}'", c as char)));
    }
    PlanarDiagram::from_quads(&quads)
}

/// Gauss diagram of a PD code, walking from edge 1.
pub fn pd_to_gauss(d: &PlanarDiagram) -> GaussDiagram {
    d.to_gauss_from(1).expect("edge 1 exists in a nonempty diagram")
}

/// PD code of a Gauss diagram: edge `p` runs into position `p` (edge `2n`
/// into position 0). Fails for non-realizable diagrams.
pub fn gauss_to_pd(g: &GaussDiagram) -> Result<PlanarDiagram> {
    if !g.is_realizable() {
        return Err(Error::invalid("Gauss diagram is not realizable by a planar knot diagram"));
    }
    let len = g.word().len();
    let into = |p: usize| if p == 0 { len } else { p };
    let out_of = |p: usize| p + 1;
    let quads: Vec<[usize; 4]> = (0..g.n())
        .map(|a| {
            let (t, h) = (g.tail(a), g.head(a));
            match g.sign(a) {
                Sign::Pos => [into(h), out_of(t), out_of(h), into(t)],
                Sign::Neg => [into(h), into(t), out_of(h), out_of(t)],
            }
        })
        .collect();
    PlanarDiagram::from_quads(&quads)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knotcodes::parse_gauss;

    const TREFOIL_PD: &str = "[[1,4,2,5],[3,6,4,1],[5,2,6,3]]";

    #[test]
    fn trefoil_pd() {
        let d = parse_pd(TREFOIL_PD).unwrap();
        assert_eq!(d.n(), 3);
        // counterclockwise-from-incoming-under convention: this code is the
        // left-handed trefoil
        assert_eq!(d.writhe(), -3);
        let g = pd_to_gauss(&d);
        let mirror = parse_gauss("O1- U2- O3- U1- O2- U3-").unwrap();
        assert_eq!(g.canonical_form(), mirror.canonical_form());
    }

    #[test]
    fn unknot_and_errors() {
        assert_eq!(parse_pd("[]").unwrap().n(), 0);
        assert_eq!(parse_pd(" [ ] ").unwrap().n(), 0);
        assert!(pd_to_gauss(&PlanarDiagram::unknot()).is_empty());
        assert!(matches!(parse_pd("[[1,2,3,4]]"), Err(Error::Invalid(_))));
        assert!(matches!(parse_pd("[[1,1,2,2"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_pd("[[1,1,2]]"), Err(Error::Syntax { pos: 7, .. })));
        assert!(matches!(parse_pd("[[1,1,2,2]] x"), Err(Error::Syntax { pos: 12, .. })));
        // two disjoint kinks: a link, not a knot
        assert!(matches!(parse_pd("[[1,1,2,2],[3,3,4,4]]"), Err(Error::Invalid(_))));
    }

    #[test]
    fn kink() {
        let d = parse_pd("[[1,1,2,2]]").unwrap();
        assert_eq!(d.writhe(), 1);
        let g = pd_to_gauss(&d);
        assert_eq!(g.n(), 1);
        assert!(g.is_realizable());
    }

    #[test]
    fn gauss_pd_roundtrip() {
        for code in ["O1+ U2+ O3+ U1+ O2+ U3+", "O1+ U2+ O3- U4- O2+ U1+ O4- U3-", "U1- O1-"] {
            let g = parse_gauss(code).unwrap();
            let d = gauss_to_pd(&g).unwrap();
            assert_eq!(pd_to_gauss(&d).canonical_form(), g.canonical_form(), "{code}");
        }
        assert!(gauss_to_pd(&parse_gauss("O1+ O2+ U1+ U2+").unwrap()).is_err());
    }
}
