//! Word calculus in the free groupoid on the arcs `r1, ..., rm` between the
//! two marked points `b0` and `b1`.
//!
//! A forward letter `ri` is a path `b0 -> b1`, its inverse `Ri` runs
//! `b1 -> b0`. Words therefore strictly alternate orientation. Closed words
//! are compared up to free homotopy through cyclically reduced canonical
//! rotations.

use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum WordError {
    #[error("letters do not compose endpoint-wise: {0}")]
    Composition(String),
    #[error("loop is freely null-homotopic (cyclically reduces to the empty word)")]
    TrivialLoop,
    #[error("cannot parse word: {0}")]
    Parse(String),
}

/// Direction of a letter: `Forward` is a path `b0 -> b1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    Forward,
    Backward,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Forward => Dir::Backward,
            Dir::Backward => Dir::Forward,
        }
    }
}

/// One of the two marked points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Endpoint {
    B0,
    B1,
}

impl Endpoint {
    pub fn other(self) -> Endpoint {
        match self {
            Endpoint::B0 => Endpoint::B1,
            Endpoint::B1 => Endpoint::B0,
        }
    }
}

/// A generator arc or its inverse. Ordered by `(index, dir)` with forward
/// letters first, which fixes the canonical rotation of cyclic words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: u32,
    pub dir: Dir,
}

impl Letter {
    pub fn forward(index: u32) -> Letter {
        Letter { index, dir: Dir::Forward }
    }

    pub fn backward(index: u32) -> Letter {
        Letter { index, dir: Dir::Backward }
    }

    pub fn inverse(self) -> Letter {
        Letter { index: self.index, dir: self.dir.flip() }
    }

    /// Start point of the letter as a path.
    pub fn source(self) -> Endpoint {
        match self.dir {
            Dir::Forward => Endpoint::B0,
            Dir::Backward => Endpoint::B1,
        }
    }

    pub fn target(self) -> Endpoint {
        self.source().other()
    }

    fn cancels(self, other: Letter) -> bool {
        self.index == other.index && self.dir != other.dir
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.dir {
            Dir::Forward => write!(f, "r{}", self.index),
            Dir::Backward => write!(f, "R{}", self.index),
        }
    }
}

/// A freely reduced path in the groupoid on `r1..rm`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArcPath {
    rank: u32,
    source: Endpoint,
    letters: Vec<Letter>,
}

impl ArcPath {
    /// Freely reduce a raw letter sequence into a path based at `source`.
    pub fn reduce(rank: u32, source: Endpoint, letters: &[Letter]) -> Result<ArcPath, WordError> {
        let mut at = source;
        for (i, l) in letters.iter().enumerate() {
            if l.index == 0 || l.index > rank {
                return Err(WordError::Composition(format!(
                    "letter {l} out of range for rank {rank}"
                )));
            }
            if l.source() != at {
                return Err(WordError::Composition(format!(
                    "letter {l} at position {i} starts at the wrong endpoint"
                )));
            }
            at = l.target();
        }
        let mut stack: Vec<Letter> = Vec::with_capacity(letters.len());
        for &l in letters {
            if stack.last().is_some_and(|p| p.cancels(l)) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Ok(ArcPath { rank, source, letters: stack })
    }

    /// The empty path at `source`.
    pub fn empty(rank: u32, source: Endpoint) -> ArcPath {
        ArcPath { rank, source, letters: Vec::new() }
    }

    /// The generator arc `ri` as a path `b0 -> b1`.
    pub fn generator(rank: u32, index: u32) -> ArcPath {
        assert!(index >= 1 && index <= rank, "generator index out of range");
        ArcPath { rank, source: Endpoint::B0, letters: vec![Letter::forward(index)] }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn source(&self) -> Endpoint {
        self.source
    }

    pub fn target(&self) -> Endpoint {
        match self.letters.last() {
            Some(l) => l.target(),
            None => self.source,
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.source == self.target()
    }

    /// Reduced concatenation `self * other`.
    pub fn compose(&self, other: &ArcPath) -> Result<ArcPath, WordError> {
        if self.rank != other.rank {
            return Err(WordError::Composition(format!(
                "rank mismatch: {} vs {}",
                self.rank, other.rank
            )));
        }
        if self.target() != other.source {
            return Err(WordError::Composition(
                "target of first path is not the source of the second".into(),
            ));
        }
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            if letters.last().is_some_and(|p| p.cancels(l)) {
                letters.pop();
            } else {
                letters.push(l);
            }
        }
        Ok(ArcPath { rank: self.rank, source: self.source, letters })
    }

    /// Reversed path: letter order flipped and every orientation inverted.
    pub fn invert(&self) -> ArcPath {
        let letters: Vec<Letter> = self.letters.iter().rev().map(|l| l.inverse()).collect();
        ArcPath { rank: self.rank, source: self.target(), letters }
    }

    /// Same word viewed in a larger ambient rank.
    pub fn embed(&self, rank: u32) -> ArcPath {
        assert!(rank >= self.rank, "cannot embed into a smaller rank");
        ArcPath { rank, source: self.source, letters: self.letters.clone() }
    }

    /// Letterwise orientation flip, preserving order; swaps the basepoints.
    /// This is the action of the involution on words.
    pub fn flip_letters(&self) -> ArcPath {
        let letters: Vec<Letter> = self.letters.iter().map(|l| l.inverse()).collect();
        ArcPath { rank: self.rank, source: self.source.other(), letters }
    }

    /// Free-homotopy normal form of a closed path.
    pub fn cyclic_normal_form(&self) -> Result<CyclicWord, WordError> {
        if !self.is_closed() {
            return Err(WordError::Composition("path is not closed".into()));
        }
        let mut letters = self.letters.clone();
        while letters.len() >= 2 {
            let first = letters[0];
            let last = *letters.last().unwrap();
            if first.cancels(last) {
                letters.pop();
                letters.remove(0);
            } else {
                break;
            }
        }
        if letters.is_empty() {
            return Err(WordError::TrivialLoop);
        }
        Ok(CyclicWord::canonical(self.rank, letters))
    }
}

impl fmt::Display for ArcPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            let at = match self.source {
                Endpoint::B0 => "b0",
                Endpoint::B1 => "b1",
            };
            return write!(f, "1@{at}");
        }
        let words: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", words.join(" "))
    }
}

/// Parses the plain-text word syntax, e.g. `r1 R2 r1`. The basepoint is the
/// source of the first letter; `1@b0` / `1@b1` denote empty paths.
pub fn parse_path(rank: u32, text: &str) -> Result<ArcPath, WordError> {
    let text = text.trim();
    if text == "1@b0" {
        return Ok(ArcPath::empty(rank, Endpoint::B0));
    }
    if text == "1@b1" {
        return Ok(ArcPath::empty(rank, Endpoint::B1));
    }
    let mut letters = Vec::new();
    for tok in text.split_whitespace() {
        let (dir, digits) = match tok.chars().next() {
            Some('r') => (Dir::Forward, &tok[1..]),
            Some('R') => (Dir::Backward, &tok[1..]),
            _ => return Err(WordError::Parse(format!("bad token `{tok}`"))),
        };
        let index: u32 = digits
            .parse()
            .map_err(|_| WordError::Parse(format!("bad index in `{tok}`")))?;
        letters.push(Letter { index, dir });
    }
    if letters.is_empty() {
        return Err(WordError::Parse("empty word".into()));
    }
    let source = letters[0].source();
    ArcPath::reduce(rank, source, &letters)
}

impl FromStr for ArcPath {
    type Err = WordError;

    /// Parses with the rank inferred as the largest index appearing.
    fn from_str(s: &str) -> Result<ArcPath, WordError> {
        let mut rank = 1;
        for tok in s.split_whitespace() {
            if tok.len() > 1 {
                if let Ok(ix) = tok[1..].parse::<u32>() {
                    rank = rank.max(ix);
                }
            }
        }
        parse_path(rank, s)
    }
}

/// A free-homotopy class of essential closed curves: a cyclically reduced
/// alternating word stored in its lexicographically minimal rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicWord {
    rank: u32,
    letters: Vec<Letter>,
}

impl CyclicWord {
    fn canonical(rank: u32, letters: Vec<Letter>) -> CyclicWord {
        debug_assert!(!letters.is_empty());
        debug_assert!(letters.len() % 2 == 0, "closed words have even length");
        let n = letters.len();
        let mut best = 0usize;
        for start in 1..n {
            for k in 0..n {
                let a = letters[(start + k) % n];
                let b = letters[(best + k) % n];
                if a < b {
                    best = start;
                    break;
                }
                if a > b {
                    break;
                }
            }
        }
        let rotated: Vec<Letter> = (0..n).map(|k| letters[(best + k) % n]).collect();
        CyclicWord { rank, letters: rotated }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// The class of the reversed curve.
    pub fn inverse(&self) -> CyclicWord {
        let letters: Vec<Letter> = self.letters.iter().rev().map(|l| l.inverse()).collect();
        CyclicWord::canonical(self.rank, letters)
    }

    /// Letterwise orientation flip (the involution on classes).
    pub fn flip_letters(&self) -> CyclicWord {
        let letters: Vec<Letter> = self.letters.iter().map(|l| l.inverse()).collect();
        CyclicWord::canonical(self.rank, letters)
    }

    /// A representative loop based at `b0` or `b1`, whichever the rotation
    /// starts at.
    pub fn to_path(&self) -> ArcPath {
        ArcPath {
            rank: self.rank,
            source: self.letters[0].source(),
            letters: self.letters.clone(),
        }
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", words.join(" "))
    }
}

/// Free-homotopy comparison of two closed paths. In unoriented mode the
/// comparison also matches against the reversed curve.
pub fn free_homotopic(a: &ArcPath, b: &ArcPath, unoriented: bool) -> Result<bool, WordError> {
    let na = a.cyclic_normal_form()?;
    let nb = b.cyclic_normal_form()?;
    if na == nb {
        return Ok(true);
    }
    if unoriented {
        return Ok(na == nb.inverse());
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(rank: u32, s: &str) -> ArcPath {
        parse_path(rank, s).unwrap()
    }

    #[test]
    fn reduce_cancels_inverse_pairs() {
        let w = ArcPath::reduce(
            2,
            Endpoint::B0,
            &[Letter::forward(1), Letter::backward(1)],
        )
        .unwrap();
        assert!(w.is_empty());
        assert_eq!(w.source(), Endpoint::B0);
        assert_eq!(w.target(), Endpoint::B0);

        assert_eq!(p(3, "r1 R2 r2 R3"), p(3, "r1 R3"));
        assert_eq!(p(2, "r1 R2"), p(2, "r1 R2"));
    }

    #[test]
    fn reduce_rejects_bad_alternation() {
        // two forward letters in a row do not compose
        let err = ArcPath::reduce(2, Endpoint::B0, &[Letter::forward(1), Letter::forward(2)]);
        assert!(matches!(err, Err(WordError::Composition(_))));
        // starting backward from b0 does not compose
        let err = ArcPath::reduce(2, Endpoint::B0, &[Letter::backward(1)]);
        assert!(matches!(err, Err(WordError::Composition(_))));
    }

    #[test]
    fn reduce_is_idempotent() {
        let w = p(3, "r1 R2 r2 R3 r3 R1");
        let again = ArcPath::reduce(3, w.source(), w.letters()).unwrap();
        assert_eq!(w, again);
    }

    #[test]
    fn compose_and_inverse() {
        let a = p(2, "r1");
        let b = a.invert();
        assert_eq!(b, parse_path(2, "R1").unwrap());
        assert!(a.compose(&b).unwrap().is_empty());
        assert_eq!(a.compose(&p(2, "R2")).unwrap(), p(2, "r1 R2"));
        // both start at b0: endpoint mismatch
        assert!(a.compose(&p(2, "r2")).is_err());
        // rank mismatch
        assert!(a.compose(&p(3, "R2")).is_err());
    }

    #[test]
    fn invert_examples() {
        assert_eq!(p(2, "r1 R2").invert(), p(2, "r2 R1"));
        let e = ArcPath::empty(2, Endpoint::B0);
        assert_eq!(e.invert(), e);
        assert_eq!(p(2, "r1 R2 r1").invert(), p(2, "R1 r2 R1"));
    }

    #[test]
    fn invert_is_involutive() {
        let w = p(4, "r1 R2 r3 R4 r1 R3");
        assert_eq!(w.invert().invert(), w);
    }

    #[test]
    fn cyclic_normal_form_examples() {
        // rotation invariance
        let a = p(2, "r1 R2").cyclic_normal_form().unwrap();
        let b = p(2, "R2 r1").cyclic_normal_form().unwrap();
        assert_eq!(a, b);
        // cyclic reduction happens before rotation
        let c = p(3, "r1 R2 r2 R3").cyclic_normal_form().unwrap();
        let d = p(3, "r1 R3").cyclic_normal_form().unwrap();
        assert_eq!(c, d);
        // trivial loop
        assert_eq!(
            p(2, "r1 R1").cyclic_normal_form().unwrap_err(),
            WordError::TrivialLoop
        );
    }

    #[test]
    fn cyclic_normal_form_wraps_reduction() {
        // r2 R1 r1 R2 r1 R3 reduces to r2 R2 r1 R3 -> r1 R3; as a cycle the
        // leading r2 cancels with the trailing wrap only after reduction.
        let w = p(3, "r2 R3 r1 R2").cyclic_normal_form().unwrap();
        let v = p(3, "r1 R2 r2 R3").cyclic_normal_form().unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn free_homotopy_modes() {
        let a = p(2, "r1 R2");
        let b = p(2, "R2 r1");
        let c = p(2, "r2 R1");
        assert!(free_homotopic(&a, &b, false).unwrap());
        // exhaustive rotation check on 2-letter words: r1 R2 vs r2 R1 differ
        assert!(!free_homotopic(&a, &c, false).unwrap());
        // but they are mutually inverse
        assert!(free_homotopic(&a, &c, true).unwrap());
    }

    #[test]
    fn free_homotopy_is_equivalence_on_random_loops() {
        let mut rng = crate::testutil::Rng::new(0x5eed_0001);
        let loops: Vec<ArcPath> = (0..40)
            .map(|_| crate::testutil::random_loop(&mut rng, 4, 8))
            .collect();
        for a in &loops {
            assert!(free_homotopic(a, a, false).unwrap());
            assert!(free_homotopic(a, a, true).unwrap());
        }
        for a in &loops {
            for b in &loops {
                assert_eq!(
                    free_homotopic(a, b, false).unwrap(),
                    free_homotopic(b, a, false).unwrap()
                );
            }
        }
        for a in &loops {
            for b in &loops {
                if !free_homotopic(a, b, true).unwrap() {
                    continue;
                }
                for c in &loops {
                    if free_homotopic(b, c, true).unwrap() {
                        assert!(free_homotopic(a, c, true).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn reduction_is_confluent_under_random_schedules() {
        // cancel in random order and compare with the stack reduction
        let mut rng = crate::testutil::Rng::new(0xc0ffee);
        for _ in 0..200 {
            let raw = crate::testutil::random_raw_word(&mut rng, 3, 12);
            let reduced = ArcPath::reduce(3, Endpoint::B0, &raw);
            let mut work = raw.clone();
            loop {
                let mut cancellable: Vec<usize> = Vec::new();
                for i in 0..work.len().saturating_sub(1) {
                    if work[i].cancels(work[i + 1]) {
                        cancellable.push(i);
                    }
                }
                match cancellable.is_empty() {
                    true => break,
                    false => {
                        let pick = cancellable[rng.below(cancellable.len())];
                        work.drain(pick..pick + 2);
                    }
                }
            }
            match reduced {
                Ok(r) => assert_eq!(r.letters(), &work[..]),
                Err(_) => unreachable!("random words are composable by construction"),
            }
        }
    }

    #[test]
    fn compose_with_inverse_is_empty_property() {
        let mut rng = crate::testutil::Rng::new(42);
        for _ in 0..100 {
            let w = crate::testutil::random_path(&mut rng, 5, 9);
            let e = w.compose(&w.invert()).unwrap();
            assert!(e.is_empty());
            assert_eq!(e.source(), w.source());
        }
    }

    #[test]
    fn normal_form_is_rotation_invariant() {
        let mut rng = crate::testutil::Rng::new(0x1234_5678);
        for _ in 0..60 {
            let looped = crate::testutil::random_loop(&mut rng, 4, 6);
            let nf = looped.cyclic_normal_form().unwrap();
            let letters = looped.letters();
            for k in 0..letters.len() {
                let rotated: Vec<Letter> = (0..letters.len())
                    .map(|i| letters[(i + k) % letters.len()])
                    .collect();
                let base = rotated[0].source();
                let path = ArcPath::reduce(4, base, &rotated).unwrap();
                match path.cyclic_normal_form() {
                    Ok(other) => assert_eq!(other, nf),
                    Err(_) => panic!("rotation of a reduced loop stays essential"),
                }
            }
        }
    }

    #[test]
    fn embed_into_larger_rank() {
        let w = p(2, "r1 R2");
        let e = w.embed(4);
        assert_eq!(e.rank(), 4);
        assert_eq!(e.letters(), w.letters());
        assert_eq!(e.compose(&p(4, "r3")).unwrap(), p(4, "r1 R2 r3"));
    }

    #[test]
    fn parse_display_roundtrip() {
        for s in ["r1 R2 r1", "r3 R1", "1@b0", "1@b1"] {
            let w = parse_path(3, s).unwrap();
            assert_eq!(parse_path(3, &w.to_string()).unwrap(), w);
        }
        assert!(parse_path(2, "x9").is_err());
        assert!(parse_path(2, "").is_err());
    }
}
