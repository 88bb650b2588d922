//! The FTL pipeline: mapping (free group, relator tuple, word) instances and
//! finitely presented groups to 1-factorizations of `F_2 (+) F_2` through the
//! `P_X` construction and the fixed rank embedding.

use crate::constructions::{build_px, PXSpec};
use crate::error::{parse_err, Error, Result};
use crate::freegroup::{self, Letter, Presentation, Word};
use crate::hurwitz::Factorization;
use crate::product::{embed_factorization, PairElement};

/// An instance `(F_n, V_m, a)`: relators `V` and query word `a` over rank `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FTLInstance {
    n: u32,
    relators: Vec<Word>,
    a: Word,
}

impl FTLInstance {
    pub fn new(n: u32, relators: Vec<Word>, a: Word) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroRank);
        }
        for v in &relators {
            if v.rank() != n {
                return Err(Error::RankMismatch {
                    left: n,
                    right: v.rank(),
                });
            }
        }
        if a.rank() != n {
            return Err(Error::RankMismatch {
                left: n,
                right: a.rank(),
            });
        }
        Ok(FTLInstance { n, relators, a })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn a(&self) -> &Word {
        &self.a
    }

    pub fn with_query(&self, a: Word) -> Result<Self> {
        FTLInstance::new(self.n, self.relators.clone(), a)
    }
}

/// Build the `P_X` spec of `FTL_s1`:
/// `Vf = (v_1,..,v_m,(v_1..v_m)^-1)`, `W = (z_1,..,z_n,(z_1..z_n)^-1)`,
/// `X = (X_1,..,X_n,(X_1..X_n)^-1,X_{n+1}^-1,X_{n+1})` over `F_{n+1}`, `H = a`.
pub fn ftl_s1_spec(inst: &FTLInstance) -> Result<PXSpec> {
    let n = inst.n;
    let mut vf = inst.relators.to_vec();
    let mut v_prod = Word::identity(n)?;
    for v in &inst.relators {
        v_prod = freegroup::multiply(&v_prod, v)?;
    }
    vf.push(freegroup::invert(&v_prod));

    let mut w: Vec<Word> = (1..=n).map(|i| Word::generator(i, n).unwrap()).collect();
    let mut w_prod = Word::identity(n)?;
    for g in &w {
        w_prod = freegroup::multiply(&w_prod, g)?;
    }
    w.push(freegroup::invert(&w_prod));

    let x_rank = n + 1;
    let mut x: Vec<Word> = (1..=n)
        .map(|i| Word::generator(i, x_rank).unwrap())
        .collect();
    let mut x_prod = Word::identity(x_rank)?;
    for g in &x {
        x_prod = freegroup::multiply(&x_prod, g)?;
    }
    x.push(freegroup::invert(&x_prod));
    let last = Word::generator(n + 1, x_rank)?;
    x.push(freegroup::invert(&last));
    x.push(last);

    PXSpec::new(vf, w, inst.a.clone(), x)
}

/// The pre-embedding `P_X` tuple of `FTL_s1`, length `m + n + 4`.
pub fn ftl_s1_px(inst: &FTLInstance) -> Result<Factorization<PairElement>> {
    Ok(build_px(&ftl_s1_spec(inst)?))
}

/// `FTL_s1`: the `P_X` tuple with both coordinates pushed into `F_2`.
pub fn ftl_s1(inst: &FTLInstance) -> Result<Factorization<PairElement>> {
    Ok(embed_factorization(&ftl_s1_px(inst)?))
}

/// A deterministic rootless element of the normal closure of the relators,
/// with its provenance: `h = prod_k v_index-relator conjugated by conjugators[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootlessChoice {
    pub h: Word,
    /// 0-based index of the relator the construction starts from.
    pub v_index: usize,
    /// `h = prod_k (v)^{conjugators[k]}` exactly.
    pub conjugators: Vec<Word>,
}

/// Select `H` for `FTL_s2`: the first nontrivial relator, cyclically reduced,
/// fed through the rootless construction.  A function of `(n, V)` only.
pub fn rootless_h(n: u32, relators: &[Word]) -> Result<RootlessChoice> {
    if n < 2 {
        return Err(Error::InvalidInstance(format!(
            "rank {n} < 2 violates the S2 condition"
        )));
    }
    let v_index = relators
        .iter()
        .position(|v| !v.is_identity())
        .ok_or_else(|| Error::InvalidInstance("every relator is trivial".into()))?;
    let v = &relators[v_index];
    if v.rank() != n {
        return Err(Error::RankMismatch {
            left: n,
            right: v.rank(),
        });
    }
    let (h, conjugators) = freegroup::make_rootless_expression(v)?;
    Ok(RootlessChoice {
        h,
        v_index,
        conjugators,
    })
}

/// The `P_X` spec of `FTL_s2`: `FTL_s1` applied to `(F_n, V_m, H^a)`.
pub fn ftl_s2_spec(inst: &FTLInstance) -> Result<PXSpec> {
    let choice = rootless_h(inst.n, &inst.relators)?;
    let h_a = freegroup::conjugate(&choice.h, &inst.a)?;
    ftl_s1_spec(&inst.with_query(h_a)?)
}

pub fn ftl_s2_px(inst: &FTLInstance) -> Result<Factorization<PairElement>> {
    Ok(build_px(&ftl_s2_spec(inst)?))
}

pub fn ftl_s2(inst: &FTLInstance) -> Result<Factorization<PairElement>> {
    Ok(embed_factorization(&ftl_s2_px(inst)?))
}

/// Normalize a presentation into the `GS` form (at least two generators and a
/// nontrivial relator) by adding a generator and a relator equating it to the
/// identity when necessary.  Returns the (possibly lifted) instance.
pub fn normalize(p: &Presentation, a: &Word) -> Result<FTLInstance> {
    if a.rank() != p.rank() {
        return Err(Error::RankMismatch {
            left: p.rank(),
            right: a.rank(),
        });
    }
    let in_gs = p.rank() >= 2 && p.relators().iter().any(|r| !r.is_identity());
    if in_gs {
        return FTLInstance::new(p.rank(), p.relators().to_vec(), a.clone());
    }
    let rank = p.rank() + 1;
    let relators: Result<Vec<Word>> = p.relators().iter().map(|r| r.with_rank(rank)).collect();
    let mut relators = relators?;
    relators.push(Word::generator(rank, rank)?);
    FTLInstance::new(rank, relators, a.with_rank(rank)?)
}

/// The `P_X` spec behind `FTL_B(G, a)`.
pub fn ftl_b_spec(p: &Presentation, a: &Word) -> Result<PXSpec> {
    ftl_s2_spec(&normalize(p, a)?)
}

/// Pre-embedding `FTL_B` tuple.
pub fn ftl_b_px(p: &Presentation, a: &Word) -> Result<Factorization<PairElement>> {
    Ok(build_px(&ftl_b_spec(p, a)?))
}

/// `FTL_B(G, a)`: rewrite into `F_n`, delegate to `FTL_s2`, embed into
/// `F_2 (+) F_2`.
pub fn ftl_b(p: &Presentation, a: &Word) -> Result<Factorization<PairElement>> {
    Ok(embed_factorization(&ftl_b_px(p, a)?))
}

// ---------------------------------------------------------------------------
// Presentation text grammar: `< g1 g2 .. gk | w1 , w2 , .. >` where generator
// names are identifiers and relator words use those names with optional
// `^<int>`.  The rewriting map sends the i-th generator name to `x_i`.
// ---------------------------------------------------------------------------

/// Parse the presentation grammar and return the presentation together with a
/// word parser for the named alphabet.
#[derive(Debug, Clone)]
pub struct NamedPresentation {
    pub presentation: Presentation,
    pub names: Vec<String>,
}

impl NamedPresentation {
    /// Parse a word over the presentation's generator names into `F_rank`.
    pub fn parse_named_word(&self, s: &str) -> Result<Word> {
        parse_named_word(s, &self.names, self.presentation.rank())
    }
}

fn is_ident(tok: &str) -> bool {
    let mut chars = tok.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_named_word(s: &str, names: &[String], rank: u32) -> Result<Word> {
    let mut letters: Vec<Letter> = Vec::new();
    for tok in s.split_whitespace() {
        if tok == "e" {
            continue;
        }
        let off = tok.as_ptr() as usize - s.as_ptr() as usize;
        let (name, exp_str) = match tok.split_once('^') {
            Some((n, e)) => (n, Some(e)),
            None => (tok, None),
        };
        let idx = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| parse_err(s, off, format!("unknown generator `{name}`")))?;
        let exp: i64 = match exp_str {
            Some(e) => e
                .parse()
                .map_err(|_| parse_err(s, off, format!("invalid exponent `{e}`")))?,
            None => 1,
        };
        if exp == 0 {
            return Err(parse_err(s, off, "exponent must be nonzero"));
        }
        let sign = if exp > 0 {
            freegroup::Sign::Plus
        } else {
            freegroup::Sign::Minus
        };
        let letter = Letter::new(idx as u32 + 1, sign).expect("index >= 1");
        for _ in 0..exp.unsigned_abs() {
            letters.push(letter);
        }
    }
    Word::from_letters(letters, rank)
}

/// Parse `< a b | a b a^-1 b^-1 >`.
pub fn parse_presentation(s: &str) -> Result<NamedPresentation> {
    let trimmed = s.trim();
    let inner = trimmed
        .strip_prefix('<')
        .and_then(|t| t.strip_suffix('>'))
        .ok_or_else(|| parse_err(s, 0, "presentation must be delimited by `<` and `>`"))?;
    let (gens_part, rels_part) = inner
        .split_once('|')
        .ok_or_else(|| parse_err(s, 0, "presentation must contain `|`"))?;
    let mut names = Vec::new();
    for tok in gens_part.split_whitespace() {
        let off = tok.as_ptr() as usize - s.as_ptr() as usize;
        if !is_ident(tok) {
            return Err(parse_err(s, off, format!("invalid generator name `{tok}`")));
        }
        if names.iter().any(|n| n == tok) {
            return Err(parse_err(s, off, format!("duplicate generator `{tok}`")));
        }
        names.push(tok.to_string());
    }
    if names.is_empty() {
        return Err(Error::InvalidPresentation("no generators".into()));
    }
    let rank = names.len() as u32;
    let mut relators = Vec::new();
    for part in rels_part.split(',') {
        if part.trim().is_empty() {
            continue;
        }
        relators.push(parse_named_word(part, &names, rank)?);
    }
    Ok(NamedPresentation {
        presentation: Presentation::new(rank, relators)?,
        names,
    })
}

/// Format a presentation back into the text grammar using its stored names.
pub fn format_presentation(np: &NamedPresentation) -> String {
    let rels: Vec<String> = np
        .presentation
        .relators()
        .iter()
        .map(|r| {
            let mut out = String::new();
            if r.is_identity() {
                return "e".to_string();
            }
            let text = r.to_string();
            for piece in text.split_whitespace() {
                let (idx_part, exp) = match piece.split_once('^') {
                    Some((i, e)) => (i, Some(e)),
                    None => (piece, None),
                };
                let idx: usize = idx_part[1..].parse().unwrap();
                if !out.is_empty() {
                    out.push(' ');
                }
                out.push_str(&np.names[idx - 1]);
                if let Some(e) = exp {
                    out.push('^');
                    out.push_str(e);
                }
            }
            out
        })
        .collect();
    format!("< {} | {} >", np.names.join(" "), rels.join(" , "))
}
