//! Exact arithmetic and decision procedures for finitely generated free groups:
//! free reduction, conjugacy, root extraction, and the rootless-element
//! construction used by the reduction pipeline.
//!
//! Words are stored freely reduced at all times, so equality is structural.
//! The conjugation convention throughout is `u^t = t^-1 u t`.

use std::fmt;

use crate::error::{parse_err, Error, Result};

/// 1-based generator index within a free group of some rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(u32);

impl Generator {
    pub fn new(index: u32) -> Result<Self> {
        if index == 0 {
            return Err(Error::ZeroGeneratorIndex);
        }
        Ok(Generator(index))
    }

    pub fn index(&self) -> u32 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A single signed letter `x_k` or `x_k^-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: Generator,
    pub sign: Sign,
}

impl Letter {
    pub fn new(index: u32, sign: Sign) -> Result<Self> {
        Ok(Letter {
            gen: Generator::new(index)?,
            sign,
        })
    }

    pub fn inverse(self) -> Letter {
        Letter {
            gen: self.gen,
            sign: self.sign.flip(),
        }
    }

    /// True when `self * other` freely reduces to the identity.
    pub fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.sign != other.sign
    }
}

/// A freely reduced word in the free group of rank `rank`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
    rank: u32,
}

impl Word {
    pub fn identity(rank: u32) -> Result<Word> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(Word {
            letters: Vec::new(),
            rank,
        })
    }

    pub fn generator(index: u32, rank: u32) -> Result<Word> {
        Word::from_letters(vec![Letter::new(index, Sign::Plus)?], rank)
    }

    /// Freely reduce a raw letter sequence. Idempotent on already reduced input.
    pub fn from_letters(raw: Vec<Letter>, rank: u32) -> Result<Word> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        let mut letters: Vec<Letter> = Vec::with_capacity(raw.len());
        for l in raw {
            if l.gen.index() > rank {
                return Err(Error::LetterOutOfRange {
                    index: l.gen.index(),
                    rank,
                });
            }
            match letters.last() {
                Some(&top) if top.cancels(l) => {
                    letters.pop();
                }
                _ => letters.push(l),
            }
        }
        Ok(Word { letters, rank })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Reinterpret the word in a (usually larger) ambient rank.
    pub fn with_rank(&self, rank: u32) -> Result<Word> {
        Word::from_letters(self.letters.clone(), rank)
    }

    pub fn pow(&self, k: i32) -> Word {
        let base = if k >= 0 { self.clone() } else { invert(self) };
        let mut out = Word {
            letters: Vec::new(),
            rank: self.rank,
        };
        for _ in 0..k.unsigned_abs() {
            out = multiply(&out, &base).expect("equal ranks");
        }
        out
    }

    /// True if the word is reduced and its first and last letters are not inverses.
    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(&f), Some(&l)) => self.len() == 1 || !f.cancels(l),
            _ => true,
        }
    }
}

/// Freely reduce a raw letter sequence into a `Word`.
pub fn reduce(raw: &[Letter], rank: u32) -> Result<Word> {
    Word::from_letters(raw.to_vec(), rank)
}

pub fn multiply(u: &Word, v: &Word) -> Result<Word> {
    if u.rank != v.rank {
        return Err(Error::RankMismatch {
            left: u.rank,
            right: v.rank,
        });
    }
    let mut letters = u.letters.clone();
    for &l in &v.letters {
        match letters.last() {
            Some(&top) if top.cancels(l) => {
                letters.pop();
            }
            _ => letters.push(l),
        }
    }
    Ok(Word {
        letters,
        rank: u.rank,
    })
}

pub fn invert(u: &Word) -> Word {
    Word {
        letters: u.letters.iter().rev().map(|l| l.inverse()).collect(),
        rank: u.rank,
    }
}

/// `u^t = t^-1 u t`.
pub fn conjugate(u: &Word, t: &Word) -> Result<Word> {
    multiply(&multiply(&invert(t), u)?, t)
}

/// Strip inverse first/last pairs.  Returns `(core, conjugator)` with
/// `conjugator` the stripped prefix, so `u = conjugator * core * conjugator^-1`,
/// i.e. `core = conjugate(u, conjugator)`.
pub fn cyclic_reduce(u: &Word) -> (Word, Word) {
    let mut lo = 0usize;
    let mut hi = u.letters.len();
    while hi - lo >= 2 && u.letters[lo].cancels(u.letters[hi - 1]) {
        lo += 1;
        hi -= 1;
    }
    let core = Word {
        letters: u.letters[lo..hi].to_vec(),
        rank: u.rank,
    };
    let conjugator = Word {
        letters: u.letters[..lo].to_vec(),
        rank: u.rank,
    };
    debug_assert!(core.is_cyclically_reduced());
    debug_assert_eq!(core.len() + 2 * conjugator.len(), u.len());
    (core, conjugator)
}

fn rotate(letters: &[Letter], r: usize) -> Vec<Letter> {
    let mut out = Vec::with_capacity(letters.len());
    out.extend_from_slice(&letters[r..]);
    out.extend_from_slice(&letters[..r]);
    out
}

/// Booth's least-rotation algorithm: index of the lexicographically minimal
/// rotation, in linear time.
fn least_rotation(letters: &[Letter]) -> usize {
    let n = letters.len() as i64;
    let at = |i: i64| letters[(i % n) as usize];
    let mut f = vec![-1i64; (2 * n) as usize];
    let mut k = 0i64;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = f[(j - k - 1) as usize];
        while i != -1 && sj != at(k + i + 1) {
            if sj < at(k + i + 1) {
                k = j - i - 1;
            }
            i = f[i as usize];
        }
        if i == -1 && sj != at(k) {
            if sj < at(k) {
                k = j;
            }
            f[(j - k) as usize] = -1;
        } else {
            f[(j - k) as usize] = i + 1;
        }
    }
    k as usize
}

/// Lexicographically minimal rotation of the cyclic core; the canonical
/// representative of the conjugacy class of `u`.
pub fn canonical_cyclic_form(u: &Word) -> Word {
    let (core, _) = cyclic_reduce(u);
    if core.len() <= 1 {
        return core;
    }
    Word {
        letters: rotate(&core.letters, least_rotation(&core.letters)),
        rank: core.rank,
    }
}

/// Conjugacy in a free group: cyclic cores are rotations of one another.
pub fn is_conjugate(u: &Word, v: &Word) -> Result<bool> {
    if u.rank != v.rank {
        return Err(Error::RankMismatch {
            left: u.rank,
            right: v.rank,
        });
    }
    Ok(canonical_cyclic_form(u) == canonical_cyclic_form(v))
}

/// Maximal-root decomposition `u = root^exponent` of a nonempty cyclically
/// reduced word, via the smallest period of the letter sequence.
pub fn root_decompose(u: &Word) -> Result<(Word, u32)> {
    if u.is_empty() {
        return Err(Error::EmptyWord);
    }
    if !u.is_cyclically_reduced() {
        return Err(Error::NotCyclicallyReduced);
    }
    let n = u.letters.len();
    // KMP failure function.
    let mut fail = vec![0usize; n];
    for i in 1..n {
        let mut k = fail[i - 1];
        while k > 0 && u.letters[i] != u.letters[k] {
            k = fail[k - 1];
        }
        if u.letters[i] == u.letters[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let period = n - fail[n - 1];
    let (root_len, exponent) = if n.is_multiple_of(period) {
        (period, (n / period) as u32)
    } else {
        (n, 1)
    };
    let root = Word {
        letters: u.letters[..root_len].to_vec(),
        rank: u.rank,
    };
    Ok((root, exponent))
}

/// True if `u` is cyclically reduced, nonempty, and has no root.
pub fn is_primitive(u: &Word) -> Result<bool> {
    Ok(root_decompose(u)?.1 == 1)
}

/// From a nontrivial `y`, produce a cyclically reduced rootless element of the
/// normal closure of `{y}`, following the two explicit cases: for a power of a
/// single generator `x_i^n` the output is `x_o^-1 x_i^n x_o x_i^n` with `x_o`
/// the lowest-index other generator; otherwise the cyclic core is rotated so
/// its first and last letters use distinct generators, and for `c` the
/// two-letter word (last letter)(first letter) the output is
/// `c^-(l+1) y' c^(l+1) y'` of length `6l+4`.
pub fn make_rootless(y: &Word) -> Result<Word> {
    make_rootless_expression(y).map(|(a, _)| a)
}

/// Same as [`make_rootless`], but also returns conjugators `t_1, t_2` such
/// that the output equals `y^{t_1} * y^{t_2}` exactly.
pub fn make_rootless_expression(y: &Word) -> Result<(Word, Vec<Word>)> {
    if y.is_identity() {
        return Err(Error::IdentityWord);
    }
    if y.rank < 2 {
        return Err(Error::UnsupportedRank(y.rank));
    }
    let (core0, strip) = cyclic_reduce(y);

    let single_gen = core0.letters.iter().all(|l| l.gen == core0.letters[0].gen);

    if single_gen {
        // Case 1: y ~ x_i^n.  A = x_o^-1 x_i^n x_o x_i^n = core^{x_o} * core.
        let i = core0.letters[0].gen.index();
        let other = if i == 1 { 2 } else { 1 };
        let xo = Word::generator(other, y.rank)?;
        let a = multiply(&conjugate(&core0, &xo)?, &core0)?;
        let t1 = multiply(&strip, &xo)?;
        let t2 = strip;
        debug_assert_eq!(a, multiply(&conjugate(y, &t1)?, &conjugate(y, &t2)?)?);
        return Ok((a, vec![t1, t2]));
    }

    // Case 2: rotate to the first rotation whose first and last letters use
    // distinct generators.
    let n = core0.letters.len();
    let r = (0..n)
        .find(|&r| core0.letters[r].gen != core0.letters[(r + n - 1) % n].gen)
        .expect("two distinct generators guarantee such a rotation");
    let rotated = Word {
        letters: rotate(&core0.letters, r),
        rank: core0.rank,
    };
    let s = Word {
        letters: core0.letters[..r].to_vec(),
        rank: core0.rank,
    };
    let first = *rotated.letters.first().unwrap();
    let last = *rotated.letters.last().unwrap();
    let c = Word::from_letters(vec![last, first], y.rank)?;
    let l = rotated.len() as i32;
    let shift = c.pow(l + 1);
    // A = c^-(l+1) y' c^(l+1) y' = (y')^{c^(l+1)} * y'.
    let a = multiply(&conjugate(&rotated, &shift)?, &rotated)?;
    debug_assert_eq!(a.len(), 6 * rotated.len() + 4);
    debug_assert!(a.is_cyclically_reduced());
    let base = multiply(&strip, &s)?;
    let t1 = multiply(&base, &shift)?;
    let t2 = base;
    debug_assert_eq!(a, multiply(&conjugate(y, &t1)?, &conjugate(y, &t2)?)?);
    Ok((a, vec![t1, t2]))
}

/// A finite presentation `< x_1..x_rank | relators >` over positional generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    rank: u32,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(rank: u32, relators: Vec<Word>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        for r in &relators {
            if r.rank() != rank {
                return Err(Error::RankMismatch {
                    left: rank,
                    right: r.rank(),
                });
            }
        }
        Ok(Presentation { rank, relators })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }
}

/// One conjugated-relator factor `(relator_ref, sign, conjugator)` of a
/// normal-closure certificate; `conjugator` is a word over auxiliary
/// generators (the W-tuple positions in the compiled setting).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateFactor {
    /// 0-based index into the declared relator list.
    pub relator: usize,
    pub sign: Sign,
    pub conjugator: Word,
}

/// An explicit expression of a normal-closure element as a product of
/// conjugates of relators: `Y = (x_1)^{y_1} ... (x_l)^{y_l}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Certificate {
    pub factors: Vec<CertificateFactor>,
}

impl Certificate {
    pub fn empty() -> Self {
        Certificate::default()
    }
}

// ---------------------------------------------------------------------------
// Text grammar: whitespace-separated `x<k>` / `x<k>^<e>`, empty word `e`.
// ---------------------------------------------------------------------------

/// Parse one `<prefix><k>[^<e>]` token into letters, appending to `out`.
pub(crate) fn parse_token(
    input: &str,
    offset: usize,
    token: &str,
    prefix: char,
    out: &mut Vec<Letter>,
) -> Result<()> {
    if token == "e" {
        return Ok(());
    }
    let rest = token.strip_prefix(prefix).ok_or_else(|| {
        parse_err(
            input,
            offset,
            format!("expected `{prefix}<k>` or `e`, got `{token}`"),
        )
    })?;
    let (idx_str, exp_str) = match rest.split_once('^') {
        Some((i, e)) => (i, Some(e)),
        None => (rest, None),
    };
    let index: u32 = idx_str.parse().map_err(|_| {
        parse_err(
            input,
            offset,
            format!("invalid generator index `{idx_str}`"),
        )
    })?;
    if index == 0 {
        return Err(parse_err(
            input,
            offset,
            "generator index must be at least 1",
        ));
    }
    let exp: i64 = match exp_str {
        Some(e) => e
            .parse()
            .map_err(|_| parse_err(input, offset, format!("invalid exponent `{e}`")))?,
        None => 1,
    };
    if exp == 0 {
        return Err(parse_err(input, offset, "exponent must be nonzero"));
    }
    let sign = if exp > 0 { Sign::Plus } else { Sign::Minus };
    let letter = Letter::new(index, sign).expect("index >= 1");
    for _ in 0..exp.unsigned_abs() {
        out.push(letter);
    }
    Ok(())
}

fn tokens_with_offsets(s: &str) -> impl Iterator<Item = (usize, &str)> {
    s.split_whitespace()
        .map(move |tok| (tok.as_ptr() as usize - s.as_ptr() as usize, tok))
}

/// Parse a word, inferring the rank as the largest generator index seen
/// (rank 1 for the empty word).
pub fn parse_word(s: &str) -> Result<Word> {
    let mut letters = Vec::new();
    for (off, tok) in tokens_with_offsets(s) {
        parse_token(s, off, tok, 'x', &mut letters)?;
    }
    let rank = letters.iter().map(|l| l.gen.index()).max().unwrap_or(1);
    Word::from_letters(letters, rank)
}

/// Parse a word against a declared ambient rank.
pub fn parse_word_with_rank(s: &str, rank: u32) -> Result<Word> {
    parse_word(s)?.with_rank(rank)
}

impl fmt::Display for Word {
    /// Reduced form with merged adjacent equal-generator runs; `e` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let exp = run as i64 * l.sign.as_i32() as i64;
            if exp == 1 {
                write!(f, "x{}", l.gen.index())?;
            } else {
                write!(f, "x{}^{}", l.gen.index(), exp)?;
            }
            i += run;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    fn w2(s: &str) -> Word {
        parse_word_with_rank(s, 2).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert!(w2("x1 x1^-1").is_identity());
        assert_eq!(w2("x1 x2 x2^-1 x1"), w2("x1 x1"));
        assert_eq!(w2("x2^-1 x1 x1 x2"), w2("x2^-1 x1^2 x2"));
    }

    #[test]
    fn reduce_rejects_out_of_range() {
        assert!(matches!(
            parse_word_with_rank("x3", 2),
            Err(Error::LetterOutOfRange { index: 3, rank: 2 })
        ));
    }

    #[test]
    fn multiply_invert_conjugate() {
        assert_eq!(
            conjugate(&w2("x1"), &Word::identity(2).unwrap()).unwrap(),
            w2("x1")
        );
        assert_eq!(conjugate(&w2("x1"), &w2("x2")).unwrap(), w2("x2^-1 x1 x2"));
        assert_eq!(
            multiply(&w2("x1 x2"), &w2("x2^-1 x1")).unwrap(),
            w2("x1 x1")
        );
        assert!(multiply(&w2("x1"), &invert(&w2("x1")))
            .unwrap()
            .is_identity());
        assert!(matches!(
            multiply(&w2("x1"), &w("x3")),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn cyclic_reduce_examples() {
        let (core, conj) = cyclic_reduce(&w2("x2^-1 x1 x2"));
        assert_eq!(core, w2("x1"));
        assert_eq!(conj, w2("x2^-1"));
        // u = conjugate(core, invert(conjugator))
        assert_eq!(conjugate(&core, &invert(&conj)).unwrap(), w2("x2^-1 x1 x2"));

        let (core, conj) = cyclic_reduce(&w2("x1 x2"));
        assert_eq!(core, w2("x1 x2"));
        assert!(conj.is_identity());

        let empty = Word::identity(2).unwrap();
        let (core, conj) = cyclic_reduce(&empty);
        assert!(core.is_identity() && conj.is_identity());
    }

    #[test]
    fn conjugacy_examples() {
        assert!(is_conjugate(&w2("x1"), &w2("x2^-1 x1 x2")).unwrap());
        assert!(!is_conjugate(&w2("x1"), &w2("x2")).unwrap());
        assert!(is_conjugate(&w2("x1 x2"), &w2("x2 x1")).unwrap());
    }

    #[test]
    fn least_rotation_matches_naive_scan() {
        // Exhaustive over all cyclically reduced words of length <= 5.
        let alphabet: Vec<Letter> = [
            (1, Sign::Plus),
            (1, Sign::Minus),
            (2, Sign::Plus),
            (2, Sign::Minus),
        ]
        .iter()
        .map(|&(g, s)| Letter::new(g, s).unwrap())
        .collect();
        let mut frontier: Vec<Vec<Letter>> = vec![vec![]];
        for _ in 0..5 {
            let mut next = Vec::new();
            for word in &frontier {
                for &l in &alphabet {
                    if word.last().is_some_and(|prev| prev.cancels(l)) {
                        continue;
                    }
                    let mut ext = word.clone();
                    ext.push(l);
                    next.push(ext);
                }
            }
            for letters in &next {
                let u = Word::from_letters(letters.clone(), 2).unwrap();
                if !u.is_cyclically_reduced() {
                    continue;
                }
                let naive = (0..letters.len())
                    .map(|r| rotate(letters, r))
                    .min()
                    .unwrap();
                assert_eq!(canonical_cyclic_form(&u).letters, naive);
            }
            frontier = next;
        }
    }

    #[test]
    fn root_examples() {
        assert_eq!(root_decompose(&w2("x1 x1 x1")).unwrap(), (w2("x1"), 3));
        assert_eq!(root_decompose(&w2("x1 x2")).unwrap(), (w2("x1 x2"), 1));
        assert_eq!(
            root_decompose(&w2("x1 x2 x1 x2")).unwrap(),
            (w2("x1 x2"), 2)
        );
        assert!(matches!(
            root_decompose(&Word::identity(2).unwrap()),
            Err(Error::EmptyWord)
        ));
        assert!(matches!(
            root_decompose(&w2("x2^-1 x1 x2")),
            Err(Error::NotCyclicallyReduced)
        ));
    }

    #[test]
    fn make_rootless_case1() {
        let a = make_rootless(&w2("x1 x1 x1")).unwrap();
        assert_eq!(a, w2("x2^-1 x1^3 x2 x1^3"));
        assert_eq!(root_decompose(&a).unwrap().1, 1);
    }

    #[test]
    fn make_rootless_case2_length() {
        let a = make_rootless(&w2("x1 x2")).unwrap();
        // (x2 x1)^-3 x1 x2 (x2 x1)^3 x1 x2, length 6*2+4 = 16
        let c = w2("x2 x1");
        let expected = multiply(
            &multiply(&multiply(&c.pow(-3), &w2("x1 x2")).unwrap(), &c.pow(3)).unwrap(),
            &w2("x1 x2"),
        )
        .unwrap();
        assert_eq!(a, expected);
        assert_eq!(a.len(), 16);
        assert_eq!(root_decompose(&a).unwrap().1, 1);
    }

    #[test]
    fn make_rootless_errors() {
        assert!(matches!(
            make_rootless(&Word::identity(2).unwrap()),
            Err(Error::IdentityWord)
        ));
        assert!(matches!(
            make_rootless(&parse_word_with_rank("x1", 1).unwrap()),
            Err(Error::UnsupportedRank(1))
        ));
    }

    #[test]
    fn make_rootless_expression_expands() {
        for s in ["x1 x2", "x2^-1 x1 x2 x2", "x1^4", "x1 x2 x1^-1 x2^-1"] {
            let y = w2(s);
            let (a, ts) = make_rootless_expression(&y).unwrap();
            let mut prod = Word::identity(2).unwrap();
            for t in &ts {
                prod = multiply(&prod, &conjugate(&y, t).unwrap()).unwrap();
            }
            assert_eq!(prod, a, "expression mismatch for {s}");
            assert!(a.is_cyclically_reduced());
            assert_eq!(root_decompose(&a).unwrap().1, 1);
        }
    }

    #[test]
    fn display_round_trip() {
        for s in ["e", "x1", "x1^3 x2^-1", "x2^-2 x1 x2"] {
            let word = w(s);
            assert_eq!(parse_word(&word.to_string()).unwrap(), word);
        }
        assert_eq!(w2("x1 x1 x2^-1 x2^-1 x2^-1").to_string(), "x1^2 x2^-3");
    }
}
