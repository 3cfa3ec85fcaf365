//! Reidemeister moves on Gauss diagrams, seeded random walks, singular
//! diagrams and the verification suites built on them.
//!
//! Moves are performed directly on the Gauss word. Each candidate result is
//! checked for planarity, so a move never leaves the set of diagrams of
//! classical knots; two classical diagrams related by Gauss-level moves
//! represent the same knot.

mod singular;
mod verify;

pub use singular::{eval_singular, eval_singular_recursive, resolve};
pub use verify::{
    check_degree, check_fit, check_invariance, check_symbol, fit_coefficients, sample_move_pairs, trial_seed,
    Failure, SuiteOptions, VerificationReport,
};

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::gaussdiag::{End, Endpoint, GaussDiagram, Sign};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    R1Plus,
    R1Minus,
    R2Plus,
    R2Minus,
    R3,
}

impl MoveKind {
    pub const ALL: [MoveKind; 5] =
        [MoveKind::R1Plus, MoveKind::R1Minus, MoveKind::R2Plus, MoveKind::R2Minus, MoveKind::R3];

    pub fn label(self) -> &'static str {
        match self {
            MoveKind::R1Plus => "R1+",
            MoveKind::R1Minus => "R1-",
            MoveKind::R2Plus => "R2+",
            MoveKind::R2Minus => "R2-",
            MoveKind::R3 => "R3",
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Where and how a move applies.
///
/// A *gap* `g` is the slot just before word position `g` (gap 0 is also the
/// slot after the last position). Locations by kind:
///
/// * `R1+`: `[gap]`; variant bit 0 puts the head first, bit 1 makes the new
///   crossing negative.
/// * `R1-`: `[arrow]`.
/// * `R2+`: `[tail gap, head gap]`; a positive and a negative arrow are
///   created with both tails in the first gap and both heads in the second.
///   Bit 0 puts the negative tail first, bit 1 the negative head first, and
///   when the gaps coincide bit 2 puts the heads before the tails.
/// * `R2-`: `[arrow, arrow]`.
/// * `R3`: `[top, middle, bottom]`, the first positions of three adjacent
///   position pairs: two tails, a head and a tail, two heads.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MoveSite {
    pub kind: MoveKind,
    pub location: Vec<usize>,
    pub variant: u8,
}

impl fmt::Display for MoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{:?}", self.kind, self.location)?;
        if self.variant != 0 {
            write!(f, "/{}", self.variant)?;
        }
        Ok(())
    }
}

fn invalid_site(site: &MoveSite, why: &str) -> Error {
    Error::InvalidMove(format!("{site}: {why}"))
}

/// Inserts `blocks` (gap, endpoints) into `word`; blocks sharing a gap keep
/// their order.
fn insert_blocks(word: &[Endpoint], blocks: &[(usize, Vec<Endpoint>)]) -> Vec<Endpoint> {
    let mut out = Vec::with_capacity(word.len() + 4);
    for i in 0..=word.len() {
        for (g, b) in blocks {
            if *g == i {
                out.extend_from_slice(b);
            }
        }
        if i < word.len() {
            out.push(word[i]);
        }
    }
    out
}

fn with_signs(g: &GaussDiagram, word: &[Endpoint], extra: &[Sign]) -> GaussDiagram {
    let signs: Vec<Sign> = g.signs().iter().chain(extra).copied().collect();
    GaussDiagram::from_word(word, &signs).expect("move produces a valid word")
}

fn without(g: &GaussDiagram, arrows: &[usize]) -> GaussDiagram {
    let keep: Vec<usize> = (0..g.n()).filter(|a| !arrows.contains(a)).collect();
    g.subdiagram(&keep)
}

fn adjacent(p: usize, q: usize, len: usize) -> bool {
    len > 1 && ((p + 1) % len == q || (q + 1) % len == p)
}

fn r1_plus(g: &GaussDiagram, gap: usize, variant: u8) -> GaussDiagram {
    let a = g.n();
    let mut block = vec![Endpoint::new(a, End::Tail), Endpoint::new(a, End::Head)];
    if variant & 1 == 1 {
        block.reverse();
    }
    let sign = if variant & 2 == 0 { Sign::Pos } else { Sign::Neg };
    with_signs(g, &insert_blocks(g.word(), &[(gap, block)]), &[sign])
}

fn r2_plus(g: &GaussDiagram, tail_gap: usize, head_gap: usize, variant: u8) -> GaussDiagram {
    let (p, m) = (g.n(), g.n() + 1);
    let mut tails = vec![Endpoint::new(p, End::Tail), Endpoint::new(m, End::Tail)];
    let mut heads = vec![Endpoint::new(p, End::Head), Endpoint::new(m, End::Head)];
    if variant & 1 == 1 {
        tails.reverse();
    }
    if variant & 2 == 2 {
        heads.reverse();
    }
    let blocks = if tail_gap == head_gap && variant & 4 == 4 {
        vec![(head_gap, heads), (tail_gap, tails)]
    } else {
        vec![(tail_gap, tails), (head_gap, heads)]
    };
    with_signs(g, &insert_blocks(g.word(), &blocks), &[Sign::Pos, Sign::Neg])
}

/// The arrows `(x, y, z)` of an R3 triangle on the three segments, if the
/// segments have the right shape: `x` runs top to middle, `y` top to bottom,
/// `z` middle to bottom.
fn r3_triangle(g: &GaussDiagram, top: usize, mid: usize, bot: usize) -> Option<[usize; 3]> {
    let w = g.word();
    let len = w.len();
    if len < 6 {
        return None;
    }
    let pair = |p: usize| (w[p % len], w[(p + 1) % len]);
    let (t0, t1) = pair(top);
    let (m0, m1) = pair(mid);
    let (b0, b1) = pair(bot);
    let positions: BTreeSet<usize> =
        [top, top + 1, mid, mid + 1, bot, bot + 1].iter().map(|p| p % len).collect();
    if positions.len() != 6 || top >= len || mid >= len || bot >= len {
        return None;
    }
    if t0.end != End::Tail || t1.end != End::Tail || b0.end != End::Head || b1.end != End::Head {
        return None;
    }
    let (x, z) = match (m0.end, m1.end) {
        (End::Head, End::Tail) => (m0.arrow, m1.arrow),
        (End::Tail, End::Head) => (m1.arrow, m0.arrow),
        _ => return None,
    };
    let y = if t0.arrow == x {
        t1.arrow
    } else if t1.arrow == x {
        t0.arrow
    } else {
        return None;
    };
    let bottoms = [b0.arrow, b1.arrow];
    if y == z || !bottoms.contains(&y) || !bottoms.contains(&z) {
        return None;
    }
    Some([x, y, z])
}

/// Whether the triangle on these segments is one that occurs in a planar
/// diagram. With `o_t = +1` when the top strand meets `x` before `y`,
/// `o_m = +1` when the middle strand meets `x` before `z` and `o_b = +1` when
/// the bottom strand meets `y` before `z`, the move exists exactly when
/// `e_x e_y = o_m o_b` and `e_y e_z = o_t o_m`.
fn r3_signs_ok(g: &GaussDiagram, top: usize, mid: usize, bot: usize, [x, y, z]: [usize; 3]) -> bool {
    let w = g.word();
    let o = |b: bool| if b { 1 } else { -1 };
    let ot = o(w[top].arrow == x);
    let om = o(w[mid].arrow == x);
    let ob = o(w[bot].arrow == y);
    let e = |a: usize| g.sign(a).value();
    e(x) * e(y) == om * ob && e(y) * e(z) == ot * om
}

fn r3_apply(g: &GaussDiagram, segs: &[usize]) -> GaussDiagram {
    let mut w = g.word().to_vec();
    let len = w.len();
    for &p in segs {
        w.swap(p, (p + 1) % len);
    }
    GaussDiagram::from_word(&w, g.signs()).expect("swaps keep the word valid")
}

/// Every move applicable to `g`.
pub fn enumerate_sites(g: &GaussDiagram) -> Vec<MoveSite> {
    MoveKind::ALL.iter().flat_map(|&k| sites_of_kind(g, k)).collect()
}

/// All applicable moves of one kind, in a fixed order.
pub fn sites_of_kind(g: &GaussDiagram, kind: MoveKind) -> Vec<MoveSite> {
    let len = g.word().len();
    let gaps = len.max(1);
    let site = |location: Vec<usize>, variant: u8| MoveSite { kind, location, variant };
    match kind {
        MoveKind::R1Plus => {
            (0..gaps).flat_map(|gap| (0..4).map(move |v| site(vec![gap], v))).collect()
        }
        MoveKind::R1Minus => (0..g.n())
            .filter(|&a| adjacent(g.tail(a), g.head(a), len))
            .map(|a| site(vec![a], 0))
            .collect(),
        MoveKind::R2Plus => {
            // Two strands can be pushed across each other only where their
            // edges bound a common face. Edge e ends at gap e + 1.
            let mut pairs = BTreeSet::new();
            for face in g.faces() {
                if face.is_empty() {
                    pairs.insert((0, 0));
                }
                for &e1 in &face {
                    for &e2 in &face {
                        pairs.insert(((e1 + 1) % gaps, (e2 + 1) % gaps));
                    }
                }
            }
            let mut out = Vec::new();
            for (g1, g2) in pairs {
                let variants = if g1 == g2 { 8 } else { 4 };
                for v in 0..variants {
                    if r2_plus(g, g1, g2, v).is_realizable() {
                        out.push(site(vec![g1, g2], v));
                    }
                }
            }
            out
        }
        MoveKind::R2Minus => {
            let mut out = Vec::new();
            for a in 0..g.n() {
                for b in a + 1..g.n() {
                    if g.sign(a) != g.sign(b)
                        && adjacent(g.tail(a), g.tail(b), len)
                        && adjacent(g.head(a), g.head(b), len)
                        && without(g, &[a, b]).is_realizable()
                    {
                        out.push(site(vec![a, b], 0));
                    }
                }
            }
            out
        }
        MoveKind::R3 => {
            let w = g.word();
            let mut out = Vec::new();
            for top in 0..len {
                let (t0, t1) = (w[top], w[(top + 1) % len]);
                if t0.end != End::Tail || t1.end != End::Tail || t0.arrow == t1.arrow {
                    continue;
                }
                for (x, y) in [(t0.arrow, t1.arrow), (t1.arrow, t0.arrow)] {
                    let (hx, hy) = (g.head(x), g.head(y));
                    for mid in [(hx + len - 1) % len, hx] {
                        for bot in [(hy + len - 1) % len, hy] {
                            let Some(tri) = r3_triangle(g, top, mid, bot) else { continue };
                            if tri[0] != x || !r3_signs_ok(g, top, mid, bot, tri) {
                                continue;
                            }
                            if r3_apply(g, &[top, mid, bot]).is_realizable() {
                                out.push(site(vec![top, mid, bot], 0));
                            }
                        }
                    }
                }
            }
            out.sort();
            out.dedup();
            out
        }
    }
}

/// Applies a move, checking that it is applicable.
pub fn apply(g: &GaussDiagram, site: &MoveSite) -> Result<GaussDiagram> {
    let len = g.word().len();
    let loc = &site.location;
    let want = match site.kind {
        MoveKind::R1Plus | MoveKind::R1Minus => 1,
        MoveKind::R2Plus | MoveKind::R2Minus => 2,
        MoveKind::R3 => 3,
    };
    if loc.len() != want {
        return Err(invalid_site(site, "wrong number of location indices"));
    }
    match site.kind {
        MoveKind::R1Plus => {
            if loc[0] >= len.max(1) || site.variant >= 4 {
                return Err(invalid_site(site, "no such gap or variant"));
            }
            Ok(r1_plus(g, loc[0], site.variant))
        }
        MoveKind::R1Minus => {
            let a = loc[0];
            if a >= g.n() || !adjacent(g.tail(a), g.head(a), len) {
                return Err(invalid_site(site, "arrow endpoints are not adjacent"));
            }
            Ok(without(g, &[a]))
        }
        MoveKind::R2Plus => {
            let (g1, g2) = (loc[0], loc[1]);
            let max_variant = if g1 == g2 { 8 } else { 4 };
            if g1 >= len.max(1) || g2 >= len.max(1) || site.variant >= max_variant {
                return Err(invalid_site(site, "no such gap or variant"));
            }
            let out = r2_plus(g, g1, g2, site.variant);
            if !out.is_realizable() {
                return Err(invalid_site(site, "strands do not share a face"));
            }
            Ok(out)
        }
        MoveKind::R2Minus => {
            let (a, b) = (loc[0], loc[1]);
            if a >= g.n()
                || b >= g.n()
                || a == b
                || g.sign(a) == g.sign(b)
                || !adjacent(g.tail(a), g.tail(b), len)
                || !adjacent(g.head(a), g.head(b), len)
            {
                return Err(invalid_site(site, "arrows do not form a bigon"));
            }
            let out = without(g, &[a, b]);
            if !out.is_realizable() {
                return Err(invalid_site(site, "arrows do not bound a bigon face"));
            }
            Ok(out)
        }
        MoveKind::R3 => {
            let (top, mid, bot) = (loc[0], loc[1], loc[2]);
            let tri = r3_triangle(g, top, mid, bot).ok_or_else(|| invalid_site(site, "segments do not form a triangle"))?;
            if !r3_signs_ok(g, top, mid, bot, tri) {
                return Err(invalid_site(site, "triangle signs admit no move"));
            }
            let out = r3_apply(g, loc);
            if !out.is_realizable() {
                return Err(invalid_site(site, "triangle is not a face"));
            }
            Ok(out)
        }
    }
}

/// One random move: a kind uniformly among those with at least one site,
/// then a site of that kind uniformly.
pub fn random_move(g: &GaussDiagram, rng: &mut impl Rng) -> (MoveSite, GaussDiagram) {
    let mut kinds: Vec<MoveKind> = MoveKind::ALL.to_vec();
    loop {
        let i = rng.random_range(0..kinds.len());
        let sites = sites_of_kind(g, kinds[i]);
        if let Some(site) = sites.choose(rng) {
            let out = apply(g, site).expect("enumerated sites apply");
            return (site.clone(), out);
        }
        // R1+ always has a site, so this terminates
        kinds.remove(i);
    }
}

/// Applies `steps` random moves with a generator seeded by `seed`.
pub fn random_walk(g: &GaussDiagram, steps: usize, seed: u64) -> GaussDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_walk_with(g, steps, &mut rng).0
}

/// Random walk drawing from `rng`; also returns the moves taken.
pub fn random_walk_with(g: &GaussDiagram, steps: usize, rng: &mut impl Rng) -> (GaussDiagram, Vec<MoveSite>) {
    let mut g = g.clone();
    let mut taken = Vec::with_capacity(steps);
    for _ in 0..steps {
        let (site, next) = random_move(&g, rng);
        taken.push(site);
        g = next;
    }
    (g, taken)
}
