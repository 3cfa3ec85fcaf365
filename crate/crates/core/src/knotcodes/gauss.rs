use std::collections::HashMap;

use crate::gaussdiag::{End, Endpoint, GaussDiagram, Sign};
use crate::{Error, Result};

/// Parses a Gauss code such as `O1+ U2+ O3+ U1+ O2+ U3+`.
pub fn parse_gauss(text: &str) -> Result<GaussDiagram> {
    let mut labels: HashMap<u64, usize> = HashMap::new();
    let mut signs: Vec<Sign> = Vec::new();
    let mut word = Vec::new();

    let mut offset = 0;
    for token in text.split_whitespace() {
        let pos = offset + text[offset..].find(token).expect("token comes from text");
        offset = pos + token.len();

        let bytes = token.as_bytes();
        let end = match bytes[0] {
            b'O' => End::Tail,
            b'U' => End::Head,
            _ => return Err(Error::syntax(pos, format!("expected O or U in {token:?}"))),
        };
        let sign = match bytes[bytes.len() - 1] {
            b'+' if bytes.len() > 2 => Sign::Pos,
            b'-' if bytes.len() > 2 => Sign::Neg,
            _ => return Err(Error::syntax(pos + token.len() - 1, format!("expected sign in {token:?}"))),
        };
        let digits = &token[1..token.len() - 1];
        if !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::syntax(pos + 1, format!("bad crossing label in {token:?}")));
        }
        let label: u64 = digits
            .parse()
            .map_err(|_| Error::syntax(pos + 1, format!("bad crossing label in {token:?}")))?;

        let idx = *labels.entry(label).or_insert_with(|| {
            signs.push(sign);
            signs.len() - 1
        });
        if signs[idx] != sign {
            return Err(Error::invalid(format!("crossing {label} has inconsistent signs")));
        }
        word.push((Endpoint::new(idx, end), label));
    }

    let mut count = vec![[0u8; 2]; signs.len()];
    for (ep, label) in &word {
        let c = &mut count[ep.arrow][ep.end as usize];
        *c += 1;
        if *c > 1 {
            let role = if ep.end == End::Tail { "O" } else { "U" };
            return Err(Error::invalid(format!("crossing {label} appears twice as {role}")));
        }
    }
    if let Some((_, label)) = word.iter().find(|(ep, _)| count[ep.arrow] != [1, 1]) {
        return Err(Error::invalid(format!("crossing {label} appears only once")));
    }
    let word: Vec<Endpoint> = word.into_iter().map(|(ep, _)| ep).collect();
    GaussDiagram::from_word(&word, &signs)
}

/// Inverse of [`parse_gauss`]; labels are numbered by first appearance.
pub fn render_gauss(g: &GaussDiagram) -> String {
    g.word()
        .iter()
        .map(|ep| {
            let ou = if ep.end == End::Tail { 'O' } else { 'U' };
            format!("{ou}{}{}", ep.arrow + 1, g.sign(ep.arrow).symbol())
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil() {
        let g = parse_gauss("O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.writhe(), 3);
        assert_eq!(g.tail(0), 0);
        assert_eq!(g.head(0), 3);
    }

    #[test]
    fn empty_is_unknot() {
        assert!(parse_gauss("").unwrap().is_empty());
        assert!(parse_gauss("   ").unwrap().is_empty());
    }

    #[test]
    fn labels_are_renumbered() {
        let g = parse_gauss("U7- O3+ O7- U3+").unwrap();
        assert_eq!(render_gauss(&g), "U1- O2+ O1- U2+");
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_gauss("O1+ U1-"), Err(Error::Invalid(_))));
        assert!(matches!(parse_gauss("O1+ O1+"), Err(Error::Invalid(_))));
        assert!(matches!(parse_gauss("O1+ U2+"), Err(Error::Invalid(_))));
        assert!(matches!(parse_gauss("O1+ U1+ O1+"), Err(Error::Invalid(_))));
        assert!(matches!(parse_gauss("X1+ U1+"), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_gauss("O1+ U1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_gauss("O1+  Ua+"), Err(Error::Syntax { pos: 6, .. })));
        assert!(matches!(parse_gauss("O+"), Err(Error::Syntax { .. })));
    }
}
