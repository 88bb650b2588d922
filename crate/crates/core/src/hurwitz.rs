//! The Hurwitz braid action engine on factorization tuples, generic over the
//! element group, with the closed-form `A_ij` action.
//!
//! The action is a right action applied left-to-right over braid letters:
//! `(.., f_i, f_{i+1}, ..) s_i = (.., f_{i+1}, f_{i+1}^-1 f_i f_{i+1}, ..)` and
//! `(.., f_i, f_{i+1}, ..) s_i^-1 = (.., f_i f_{i+1} f_i^-1, f_i, ..)`.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use crate::error::{parse_err, Error, Result};
use crate::freegroup::{self, Sign, Word};
use crate::product::PairElement;

/// The group operations a factorization entry must support.  `mul`, `inverse`
/// and `conjugated_by` assume compatible operands (same ambient ranks); tuple
/// constructors validate compatibility once via [`GroupElement::compatible`].
pub trait GroupElement: Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display {
    fn mul(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    /// The identity of the same ambient group as `self`.
    fn identity_like(&self) -> Self;
    fn is_identity(&self) -> bool;
    fn compatible(&self, other: &Self) -> bool;
    /// Word-length measure used for search pruning.
    fn size(&self) -> usize;
    /// Canonical key of the conjugacy class of `self`.
    fn conjugacy_key(&self) -> String;

    /// `self^t = t^-1 self t`.
    fn conjugated_by(&self, t: &Self) -> Self {
        t.inverse().mul(self).mul(t)
    }
}

impl GroupElement for Word {
    fn mul(&self, other: &Self) -> Self {
        freegroup::multiply(self, other).expect("compatible ranks")
    }

    fn inverse(&self) -> Self {
        freegroup::invert(self)
    }

    fn identity_like(&self) -> Self {
        Word::identity(self.rank()).expect("rank >= 1")
    }

    fn is_identity(&self) -> bool {
        Word::is_identity(self)
    }

    fn compatible(&self, other: &Self) -> bool {
        self.rank() == other.rank()
    }

    fn size(&self) -> usize {
        self.len()
    }

    fn conjugacy_key(&self) -> String {
        freegroup::canonical_cyclic_form(self).to_string()
    }
}

/// A finite word in the Artin generators of `B_strands`: positive letter `i`
/// is `s_i`, negative is `s_i^-1`, with `1 <= |i| <= strands - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::BadBraidLetter { letter: 0, strands });
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize > strands - 1 {
                return Err(Error::BadBraidLetter { letter: l, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn empty(strands: usize) -> Self {
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn invert(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn compose(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch {
                strands: other.strands,
                len: self.strands,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    /// The pure braid generator `A_ij = s_i^-1 .. s_{j-2}^-1 (s_{j-1}^2) s_{j-2} .. s_i`
    /// as a generator word (or its inverse for `Sign::Minus`).
    pub fn aij(strands: usize, i: usize, j: usize, sign: Sign) -> Result<BraidWord> {
        if i == 0 || i >= j || j > strands {
            return Err(Error::PositionOutOfRange {
                position: j,
                limit: strands,
            });
        }
        let mut letters = Vec::new();
        for k in i..=(j - 2) {
            letters.push(-(k as i32));
        }
        let twist = (j - 1) as i32 * sign.as_i32();
        letters.push(twist);
        letters.push(twist);
        for k in (i..=(j - 2)).rev() {
            letters.push(k as i32);
        }
        BraidWord::new(strands, letters)
    }

    /// Parse the braid grammar: whitespace-separated nonzero integers.
    pub fn parse(s: &str, strands: usize) -> Result<BraidWord> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "e" {
                continue;
            }
            let off = tok.as_ptr() as usize - s.as_ptr() as usize;
            let l: i32 = tok
                .parse()
                .map_err(|_| parse_err(s, off, format!("invalid braid letter `{tok}`")))?;
            if l == 0 || l.unsigned_abs() as usize > strands.saturating_sub(1) {
                return Err(parse_err(
                    s,
                    off,
                    format!("braid letter {l} out of range for {strands} strands"),
                ));
            }
            letters.push(l);
        }
        BraidWord::new(strands, letters)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let strs: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", strs.join(" "))
    }
}

/// An ordered tuple of group elements with cached product `m(F)`.
/// The cache is `None` exactly for the empty tuple.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization<T: GroupElement> {
    elements: Vec<T>,
    product: Option<T>,
}

impl<T: GroupElement> Factorization<T> {
    pub fn new(elements: Vec<T>) -> Result<Self> {
        if let Some(first) = elements.first() {
            if !elements.iter().all(|e| first.compatible(e)) {
                return Err(Error::IncompatibleElements);
            }
        }
        let product = Self::fold_product(&elements);
        Ok(Factorization { elements, product })
    }

    pub fn empty() -> Self {
        Factorization {
            elements: Vec::new(),
            product: None,
        }
    }

    fn fold_product(elements: &[T]) -> Option<T> {
        let mut it = elements.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| acc.mul(e)))
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    /// The cached product `m(F)`; `None` for the empty tuple.
    pub fn product(&self) -> Option<&T> {
        self.product.as_ref()
    }

    fn check_product(&self) {
        debug_assert_eq!(self.product, Self::fold_product(&self.elements));
    }

    /// Apply `s_i` (`Sign::Plus`) or `s_i^-1` (`Sign::Minus`), `1 <= i <= len-1`.
    pub fn apply_generator(&self, i: usize, sign: Sign) -> Result<Self> {
        if i == 0 || self.len() < 2 || i > self.len() - 1 {
            return Err(Error::PositionOutOfRange {
                position: i,
                limit: self.len().saturating_sub(1),
            });
        }
        let mut elements = self.elements.clone();
        let a = elements[i - 1].clone();
        let b = elements[i].clone();
        match sign {
            Sign::Plus => {
                elements[i - 1] = b.clone();
                elements[i] = a.conjugated_by(&b);
            }
            Sign::Minus => {
                elements[i - 1] = a.mul(&b).mul(&a.inverse());
                elements[i] = a;
            }
        }
        let out = Factorization {
            elements,
            product: self.product.clone(),
        };
        out.check_product();
        Ok(out)
    }

    /// Left-to-right application of a braid word; the empty braid is identity.
    pub fn apply_braid(&self, b: &BraidWord) -> Result<Self> {
        if b.strands() != self.len() {
            return Err(Error::StrandMismatch {
                strands: b.strands(),
                len: self.len(),
            });
        }
        let mut cur = self.clone();
        for &l in b.letters() {
            let sign = if l > 0 { Sign::Plus } else { Sign::Minus };
            cur = cur.apply_generator(l.unsigned_abs() as usize, sign)?;
        }
        Ok(cur)
    }

    /// Closed-form action of `A_ij` (or its inverse), without composing
    /// Artin generators.
    pub fn apply_aij(&self, i: usize, j: usize, sign: Sign) -> Result<Self> {
        if i == 0 || i >= j || j > self.len() {
            return Err(Error::PositionOutOfRange {
                position: j,
                limit: self.len(),
            });
        }
        let mut elements = self.elements.clone();
        let a = elements[i - 1].clone();
        let b = elements[j - 1].clone();
        match sign {
            Sign::Plus => {
                // (X, a, Y, b, Z) -> (X, a^b, Y^{a^-1 a^b}, b^{a^b}, Z)
                let ab = a.conjugated_by(&b);
                let mid = a.inverse().mul(&ab);
                elements[i - 1] = ab.clone();
                for e in elements.iter_mut().take(j - 1).skip(i) {
                    *e = e.conjugated_by(&mid);
                }
                elements[j - 1] = b.conjugated_by(&ab);
            }
            Sign::Minus => {
                // (X, a, Y, b, Z) -> (X, a^{(b^{a^-1})^-1}, Y^{a^-1 a^{(b^{a^-1})^-1}}, b^{a^-1}, Z)
                let b_ainv = b.conjugated_by(&a.inverse());
                let a_new = a.conjugated_by(&b_ainv.inverse());
                let mid = a.inverse().mul(&a_new);
                elements[i - 1] = a_new;
                for e in elements.iter_mut().take(j - 1).skip(i) {
                    *e = e.conjugated_by(&mid);
                }
                elements[j - 1] = b_ainv;
            }
        }
        let out = Factorization {
            elements,
            product: self.product.clone(),
        };
        out.check_product();
        Ok(out)
    }

    /// Concatenation `F (x) K`.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        match (self.elements.first(), other.elements.first()) {
            (Some(a), Some(b)) if !a.compatible(b) => return Err(Error::IncompatibleElements),
            _ => {}
        }
        let mut elements = self.elements.clone();
        elements.extend(other.elements.iter().cloned());
        Factorization::new(elements)
    }

    /// Conjugate every element by `t`.
    pub fn conjugate_all(&self, t: &T) -> Self {
        let elements: Vec<T> = self.elements.iter().map(|e| e.conjugated_by(t)).collect();
        let product = self.product.as_ref().map(|p| p.conjugated_by(t));
        let out = Factorization { elements, product };
        out.check_product();
        out
    }

    /// The tuple power `X^Y`: conjugate every element by `m(Y)`.
    pub fn conjugate_tuple(&self, y: &Self) -> Self {
        match y.product() {
            Some(m) => self.conjugate_all(m),
            None => self.clone(),
        }
    }

    /// `X^{(Y^-1)}`: conjugate every element by `m(Y)^-1`.
    pub fn conjugate_tuple_inv(&self, y: &Self) -> Self {
        match y.product() {
            Some(m) => self.conjugate_all(&m.inverse()),
            None => self.clone(),
        }
    }

    /// Sorted multiset of conjugacy-class keys; invariant under the action.
    pub fn conjugacy_multiset(&self) -> Vec<String> {
        let mut keys: Vec<String> = self.elements.iter().map(|e| e.conjugacy_key()).collect();
        keys.sort();
        keys
    }

    /// Histogram form of the conjugacy multiset.
    pub fn conjugacy_histogram(&self) -> HashMap<String, usize> {
        let mut h = HashMap::new();
        for e in &self.elements {
            *h.entry(e.conjugacy_key()).or_insert(0) += 1;
        }
        h
    }
}

impl<T: GroupElement> fmt::Display for Factorization<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, " ;")?;
            }
            write!(f, " {e}")?;
        }
        write!(f, " ]")
    }
}

/// Elementwise pairing `V (+) W` of two equal-length word factorizations.
pub fn oplus(
    v: &Factorization<Word>,
    w: &Factorization<Word>,
) -> Result<Factorization<PairElement>> {
    if v.len() != w.len() {
        return Err(Error::LengthMismatch(v.len(), w.len()));
    }
    let elements: Vec<PairElement> = v
        .elements()
        .iter()
        .zip(w.elements())
        .map(|(a, b)| PairElement::new(a.clone(), b.clone()))
        .collect();
    Factorization::new(elements)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::parse_word_with_rank;

    fn w(s: &str) -> Word {
        parse_word_with_rank(s, 2).unwrap()
    }

    fn fac(words: &[&str]) -> Factorization<Word> {
        Factorization::new(words.iter().map(|s| w(s)).collect()).unwrap()
    }

    #[test]
    fn generator_action_matches_definition() {
        let f = fac(&["x1", "x2"]);
        let plus = f.apply_generator(1, Sign::Plus).unwrap();
        assert_eq!(plus, fac(&["x2", "x2^-1 x1 x2"]));
        let minus = f.apply_generator(1, Sign::Minus).unwrap();
        assert_eq!(minus, fac(&["x1 x2 x1^-1", "x1"]));
        // inverse pair
        assert_eq!(plus.apply_generator(1, Sign::Minus).unwrap(), f);
    }

    #[test]
    fn generator_index_range() {
        let f = fac(&["x1", "x2"]);
        assert!(f.apply_generator(0, Sign::Plus).is_err());
        assert!(f.apply_generator(2, Sign::Plus).is_err());
    }

    #[test]
    fn braid_application_and_strand_check() {
        let f = fac(&["x1", "x2"]);
        assert_eq!(f.apply_braid(&BraidWord::empty(2)).unwrap(), f);
        assert!(f.apply_braid(&BraidWord::empty(3)).is_err());
        let b = BraidWord::new(2, vec![1, -1]).unwrap();
        assert_eq!(f.apply_braid(&b).unwrap(), f);
    }

    #[test]
    fn aij_closed_form_small() {
        // (a, b) A_12 = (a^b, b^{a^b})
        let f = fac(&["x1", "x2"]);
        let out = f.apply_aij(1, 2, Sign::Plus).unwrap();
        let a = w("x1");
        let b = w("x2");
        let ab = a.conjugated_by(&b);
        assert_eq!(out.elements()[0], ab);
        assert_eq!(out.elements()[1], b.conjugated_by(&ab));

        // (a, b) A_12^-1 = (a^{(b^{a^-1})^-1}, b^{a^-1})
        let out = f.apply_aij(1, 2, Sign::Minus).unwrap();
        let b_ainv = b.conjugated_by(&a.inverse());
        assert_eq!(out.elements()[0], a.conjugated_by(&b_ainv.inverse()));
        assert_eq!(out.elements()[1], b_ainv);
    }

    #[test]
    fn aij_matches_sigma_composition() {
        let f = fac(&["x1", "x2 x1", "x2^-1", "x1 x1", "x2"]);
        for i in 1..5 {
            for j in (i + 1)..=5 {
                for sign in [Sign::Plus, Sign::Minus] {
                    let closed = f.apply_aij(i, j, sign).unwrap();
                    let composed = f
                        .apply_braid(&BraidWord::aij(5, i, j, sign).unwrap())
                        .unwrap();
                    assert_eq!(closed, composed, "A_{{{i}{j}}} sign {sign:?}");
                }
            }
        }
    }

    #[test]
    fn concat_and_products() {
        let f = fac(&["x1"]);
        let k = fac(&["x1^-1"]);
        let both = f.concat(&k).unwrap();
        assert_eq!(both.len(), 2);
        assert!(both.product().unwrap().is_identity());
        assert_eq!(f.concat(&Factorization::empty()).unwrap(), f);
    }

    #[test]
    fn conjugate_tuple_examples() {
        let x = fac(&["x1"]);
        assert_eq!(x.conjugate_tuple(&Factorization::empty()), x);
        let y = fac(&["x2"]);
        assert_eq!(x.conjugate_tuple(&y), fac(&["x2^-1 x1 x2"]));
        let ones = fac(&["e", "e"]);
        assert_eq!(ones.conjugate_tuple(&y), ones);
    }

    #[test]
    fn braid_word_validation() {
        assert!(BraidWord::new(3, vec![1, -2]).is_ok());
        assert!(BraidWord::new(3, vec![3]).is_err());
        assert!(BraidWord::new(3, vec![0]).is_err());
        let b = BraidWord::parse("1 -2 1", 3).unwrap();
        assert_eq!(b.letters(), &[1, -2, 1]);
        assert_eq!(BraidWord::parse(&b.to_string(), 3).unwrap(), b);
    }
}
