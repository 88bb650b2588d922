//! Seeded random generators shared by the integration suites.

#![allow(dead_code)]

use hurwitz::constructions::PXSpec;
use hurwitz::freegroup::{self, Certificate, CertificateFactor, Letter, Sign, Word};
use hurwitz::hurwitz::{BraidWord, Factorization};
use hurwitz::product::PairElement;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_sign(rng: &mut ChaCha8Rng) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// A random freely reduced word of length at most `max_len` (after reduction).
pub fn random_word(rng: &mut ChaCha8Rng, rank: u32, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<Letter> = (0..len)
        .map(|_| Letter::new(rng.gen_range(1..=rank), random_sign(rng)).unwrap())
        .collect();
    Word::from_letters(letters, rank).unwrap()
}

pub fn random_nontrivial_word(rng: &mut ChaCha8Rng, rank: u32, max_len: usize) -> Word {
    loop {
        let w = random_word(rng, rank, max_len.max(1));
        if !w.is_identity() {
            return w;
        }
    }
}

pub fn random_word_factorization(
    rng: &mut ChaCha8Rng,
    rank: u32,
    len: usize,
    max_word_len: usize,
) -> Factorization<Word> {
    Factorization::new(
        (0..len)
            .map(|_| random_word(rng, rank, max_word_len))
            .collect(),
    )
    .unwrap()
}

pub fn random_pair_factorization(
    rng: &mut ChaCha8Rng,
    len: usize,
    max_word_len: usize,
) -> Factorization<PairElement> {
    Factorization::new(
        (0..len)
            .map(|_| {
                PairElement::new(
                    random_word(rng, 2, max_word_len),
                    random_word(rng, 2, max_word_len),
                )
            })
            .collect(),
    )
    .unwrap()
}

pub fn random_braid(rng: &mut ChaCha8Rng, strands: usize, len: usize) -> BraidWord {
    let letters: Vec<i32> = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..strands) as i32;
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord::new(strands, letters).unwrap()
}

/// A random `P_X` spec with `p` R-slots (product forced to identity), `q`
/// W-slots, and nontrivial right-coordinate padding words.
pub fn random_px_spec(rng: &mut ChaCha8Rng, p: usize, q: usize, max_word_len: usize) -> PXSpec {
    let mut r: Vec<Word> = (0..p.saturating_sub(1))
        .map(|_| random_word(rng, 2, max_word_len))
        .collect();
    let mut m = Word::identity(2).unwrap();
    for w in &r {
        m = freegroup::multiply(&m, w).unwrap();
    }
    r.push(freegroup::invert(&m));
    let w: Vec<Word> = (0..q).map(|_| random_word(rng, 2, max_word_len)).collect();
    let h = random_word(rng, 2, max_word_len);
    let x: Vec<Word> = (0..q + 2)
        .map(|_| random_nontrivial_word(rng, 2, max_word_len.max(1)))
        .collect();
    PXSpec::new(r, w, h, x).unwrap()
}

/// A random certificate over `p` relators with conjugators over `q`
/// W-generators.
pub fn random_certificate(
    rng: &mut ChaCha8Rng,
    p: usize,
    q: usize,
    max_factors: usize,
    max_conj_len: usize,
) -> Certificate {
    let factors = (0..rng.gen_range(0..=max_factors))
        .map(|_| CertificateFactor {
            relator: rng.gen_range(0..p),
            sign: random_sign(rng),
            conjugator: random_word(rng, q as u32, max_conj_len),
        })
        .collect();
    Certificate { factors }
}
