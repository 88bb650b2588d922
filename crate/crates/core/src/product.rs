//! Elements of direct products `F_r1 (+) F_r2`, the fixed injections into
//! `F_2 (+) F_2`, and generic homomorphism pushes of factorizations.

use std::fmt;

use crate::error::{parse_err, Error, Result};
use crate::freegroup::{self, Letter, Sign, Word};
use crate::hurwitz::{Factorization, GroupElement};

/// An element of `F_r1 (+) F_r2`, both components freely reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairElement {
    left: Word,
    right: Word,
}

impl PairElement {
    pub fn new(left: Word, right: Word) -> Self {
        PairElement { left, right }
    }

    pub fn identity(left_rank: u32, right_rank: u32) -> Result<Self> {
        Ok(PairElement {
            left: Word::identity(left_rank)?,
            right: Word::identity(right_rank)?,
        })
    }

    pub fn left(&self) -> &Word {
        &self.left
    }

    pub fn right(&self) -> &Word {
        &self.right
    }
}

/// Componentwise group law of `G_1 (+) G_2`.
pub fn pair_multiply(p: &PairElement, q: &PairElement) -> Result<PairElement> {
    Ok(PairElement {
        left: freegroup::multiply(&p.left, &q.left)?,
        right: freegroup::multiply(&p.right, &q.right)?,
    })
}

pub fn pair_invert(p: &PairElement) -> PairElement {
    PairElement {
        left: freegroup::invert(&p.left),
        right: freegroup::invert(&p.right),
    }
}

impl GroupElement for PairElement {
    fn mul(&self, other: &Self) -> Self {
        pair_multiply(self, other).expect("compatible ranks")
    }

    fn inverse(&self) -> Self {
        pair_invert(self)
    }

    fn identity_like(&self) -> Self {
        PairElement::identity(self.left.rank(), self.right.rank()).expect("ranks >= 1")
    }

    fn is_identity(&self) -> bool {
        self.left.is_identity() && self.right.is_identity()
    }

    fn compatible(&self, other: &Self) -> bool {
        self.left.rank() == other.left.rank() && self.right.rank() == other.right.rank()
    }

    fn size(&self) -> usize {
        self.left.len().max(self.right.len())
    }

    fn conjugacy_key(&self) -> String {
        // Conjugation in a direct product is componentwise.
        format!(
            "( {} | {} )",
            freegroup::canonical_cyclic_form(&self.left),
            freegroup::canonical_cyclic_form(&self.right)
        )
    }
}

impl fmt::Display for PairElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "( {} | {} )", self.left, self.right)
    }
}

/// The fixed injection `F_r -> F_2`, `x_i -> x1^-i x2 x1^i`, applied letterwise.
pub fn embed_rank(w: &Word) -> Word {
    let x1 = Letter::new(1, Sign::Plus).unwrap();
    let x1inv = Letter::new(1, Sign::Minus).unwrap();
    let mut letters = Vec::with_capacity(w.len() * 8);
    for l in w.letters() {
        let i = l.gen.index() as usize;
        let x2 = Letter::new(2, l.sign).unwrap();
        letters.extend(std::iter::repeat_n(x1inv, i));
        letters.push(x2);
        letters.extend(std::iter::repeat_n(x1, i));
    }
    Word::from_letters(letters, 2).expect("letters in rank 2")
}

/// Both coordinates of a pair through [`embed_rank`] independently.
pub fn embed_pair(p: &PairElement) -> PairElement {
    PairElement {
        left: embed_rank(&p.left),
        right: embed_rank(&p.right),
    }
}

/// Elementwise [`embed_pair`] over a factorization.
pub fn embed_factorization(f: &Factorization<PairElement>) -> Factorization<PairElement> {
    Factorization::new(f.elements().iter().map(embed_pair).collect()).expect("uniform target ranks")
}

/// A homomorphism out of `F_sourceRank`, given by one image per generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomSpec<T: GroupElement> {
    source_rank: u32,
    images: Vec<T>,
}

impl<T: GroupElement> HomSpec<T> {
    pub fn new(source_rank: u32, images: Vec<T>) -> Result<Self> {
        if source_rank == 0 {
            return Err(Error::ZeroRank);
        }
        if images.len() != source_rank as usize {
            return Err(Error::HomImageCount {
                expected: source_rank as usize,
                got: images.len(),
            });
        }
        if let Some(first) = images.first() {
            if !images.iter().all(|i| first.compatible(i)) {
                return Err(Error::IncompatibleElements);
            }
        }
        Ok(HomSpec {
            source_rank,
            images,
        })
    }

    pub fn source_rank(&self) -> u32 {
        self.source_rank
    }

    pub fn images(&self) -> &[T] {
        &self.images
    }

    /// Image of a single word, folded letterwise.
    pub fn apply_word(&self, w: &Word) -> Result<T> {
        if w.rank() != self.source_rank {
            return Err(Error::RankMismatch {
                left: w.rank(),
                right: self.source_rank,
            });
        }
        let mut out = self.images[0].identity_like();
        for l in w.letters() {
            let img = &self.images[(l.gen.index() - 1) as usize];
            out = match l.sign {
                Sign::Plus => out.mul(img),
                Sign::Minus => out.mul(&img.inverse()),
            };
        }
        Ok(out)
    }

    /// Elementwise image of a factorization; commutes with every braid.
    pub fn apply(&self, f: &Factorization<Word>) -> Result<Factorization<T>> {
        let images: Result<Vec<T>> = f.elements().iter().map(|w| self.apply_word(w)).collect();
        Factorization::new(images?)
    }
}

// ---------------------------------------------------------------------------
// Pair / factorization text grammars:
//   pair:          ( <word> | <word> )
//   factorization: [ ( x1 | e ) ; ( e | x2^-1 ) ]
// ---------------------------------------------------------------------------

/// Parse a pair `( <word> | <word> )`; ranks are inferred per coordinate.
pub fn parse_pair(s: &str) -> Result<PairElement> {
    let trimmed = s.trim();
    let inner = strip_delims(s, trimmed, '(', ')')?;
    let (l, r) = inner
        .split_once('|')
        .ok_or_else(|| parse_err(s, offset_of(s, inner), "pair must contain `|` separator"))?;
    Ok(PairElement {
        left: freegroup::parse_word(l)?,
        right: freegroup::parse_word(r)?,
    })
}

/// Parse `[ pair ; pair ; ... ]`, unifying word ranks per coordinate across
/// the tuple. `[ ]` is the empty factorization.
pub fn parse_pair_factorization(s: &str) -> Result<Factorization<PairElement>> {
    let trimmed = s.trim();
    let inner = strip_delims(s, trimmed, '[', ']')?;
    if inner.trim().is_empty() {
        return Ok(Factorization::empty());
    }
    let mut pairs = Vec::new();
    for part in inner.split(';') {
        pairs.push(parse_pair(part)?);
    }
    let left_rank = pairs.iter().map(|p| p.left.rank()).max().unwrap();
    let right_rank = pairs.iter().map(|p| p.right.rank()).max().unwrap();
    let pairs: Result<Vec<PairElement>> = pairs
        .into_iter()
        .map(|p| {
            Ok(PairElement {
                left: p.left.with_rank(left_rank)?,
                right: p.right.with_rank(right_rank)?,
            })
        })
        .collect();
    Factorization::new(pairs?)
}

fn offset_of(whole: &str, part: &str) -> usize {
    part.as_ptr() as usize - whole.as_ptr() as usize
}

fn strip_delims<'a>(whole: &str, s: &'a str, open: char, close: char) -> Result<&'a str> {
    let body = s
        .strip_prefix(open)
        .ok_or_else(|| parse_err(whole, offset_of(whole, s), format!("expected `{open}`")))?;
    body.strip_suffix(close).ok_or_else(|| {
        parse_err(
            whole,
            offset_of(whole, s) + s.len().saturating_sub(1),
            format!("expected closing `{close}`"),
        )
    })
}
