use crate::gaussdiag::{End, Endpoint, GaussDiagram, Sign};
use crate::knotcodes::pd::{gauss_to_pd, PlanarDiagram};
use crate::{Error, Result};

/// Largest DT code accepted; the sign search is exponential.
pub const MAX_DT_CROSSINGS: usize = 20;

/// Parses a Dowker-Thistlethwaite code such as `4 6 2` or `4,8,-12,2,...`.
///
/// Entry `i` is the even partner of odd passage `2i + 1`. A positive entry
/// means the odd passage goes over. Crossing signs are recovered by searching
/// for the (mirror-unique) sign assignment that makes the diagram planar.
pub fn parse_dt(text: &str) -> Result<PlanarDiagram> {
    let mut entries = Vec::new();
    let mut offset = 0;
    for token in text.split(|c: char| c.is_whitespace() || c == ',') {
        let pos = offset;
        offset += token.len() + 1;
        if token.is_empty() {
            continue;
        }
        let v: i64 = token
            .parse()
            .map_err(|_| Error::syntax(pos, format!("not an integer: {token:?}")))?;
        if v == 0 || v % 2 != 0 {
            return Err(Error::syntax(pos, format!("DT entries must be nonzero even integers, got {v}")));
        }
        entries.push(v);
    }
    let n = entries.len();
    if n == 0 {
        return Ok(PlanarDiagram::unknot());
    }
    if n > MAX_DT_CROSSINGS {
        return Err(Error::Bound(format!(
            "DT code with {n} crossings exceeds the limit of {MAX_DT_CROSSINGS}"
        )));
    }

    let mut word = vec![None; 2 * n];
    for (i, &v) in entries.iter().enumerate() {
        let even = v.unsigned_abs() as usize;
        if even > 2 * n {
            return Err(Error::invalid(format!("DT entry {v} exceeds 2n = {}", 2 * n)));
        }
        let (odd_end, even_end) = if v > 0 { (End::Tail, End::Head) } else { (End::Head, End::Tail) };
        if word[even - 1].is_some() {
            return Err(Error::invalid(format!("DT entry {even} used twice")));
        }
        word[2 * i] = Some(Endpoint::new(i, odd_end));
        word[even - 1] = Some(Endpoint::new(i, even_end));
    }
    let word: Vec<Endpoint> = word.into_iter().map(|e| e.expect("every passage assigned")).collect();

    // Reflecting the plane flips every sign, so the first crossing can be
    // fixed positive.
    for mask in 0u32..(1 << (n - 1)) {
        let signs: Vec<Sign> = (0..n)
            .map(|i| if i > 0 && mask >> (i - 1) & 1 == 1 { Sign::Neg } else { Sign::Pos })
            .collect();
        let g = GaussDiagram::from_word(&word, &signs)?;
        if g.is_realizable() {
            return gauss_to_pd(&g);
        }
    }
    Err(Error::invalid("DT code is not realizable by a planar knot diagram"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_and_figure_eight() {
        let t = parse_dt("4 6 2").unwrap();
        assert_eq!(t.n(), 3);
        assert_eq!(t.writhe().abs(), 3);
        let f = parse_dt("4, 6, 8, 2").unwrap();
        assert_eq!(f.writhe(), 0);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_dt("3 5"), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_dt("4 x"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_dt("4 4"), Err(Error::Invalid(_))));
        assert!(matches!(parse_dt("8 2"), Err(Error::Invalid(_))));
        assert_eq!(parse_dt("").unwrap().n(), 0);
    }

    #[test]
    fn non_realizable_is_rejected() {
        // intersection graph is a 5-cycle: chords 1 and 3 do not cross but
        // share exactly one crossing neighbour, which no planar curve allows
        assert!(matches!(parse_dt("4 6 8 10 2"), Err(Error::Invalid(_))));
        assert!(parse_dt("6 8 10 2 4").is_ok());
    }
}
