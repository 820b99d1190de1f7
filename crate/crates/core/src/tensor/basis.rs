//! Graded generators, words, and the per-degree monomial basis tables.
//!
//! Within a degree, words are ordered by length, then by content (the vector
//! of letter counts, more copies of lower-id letters first), then
//! lexicographically. For two generators of distinct degrees the length
//! determines the content, so this is plain length-then-lex order. Words of
//! equal content form a contiguous *block*, and inside a block the words
//! sharing a prefix are contiguous too, which turns left multiplication by
//! a word into a shifted slice copy.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::field::Field;
use crate::error::TensorError;
use crate::plocal::PrimeConfig;

/// Most generators an alphabet may have.
pub const MAX_GENERATORS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedGenerator {
    pub id: u8,
    pub name: String,
    pub degree: u32,
}

impl GradedGenerator {
    pub fn new(id: u8, name: impl Into<String>, degree: u32) -> Self {
        GradedGenerator {
            id,
            name: name.into(),
            degree,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// A word in the generator ids (a basis monomial of the tensor algebra).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Letter counts of a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Content([u8; MAX_GENERATORS]);

impl Content {
    pub fn of(letters: &[u8]) -> Content {
        let mut c = [0u8; MAX_GENERATORS];
        for &l in letters {
            c[l as usize] += 1;
        }
        Content(c)
    }

    pub fn counts(&self) -> &[u8; MAX_GENERATORS] {
        &self.0
    }

    pub fn length(&self) -> u32 {
        self.0.iter().map(|&c| c as u32).sum()
    }

    pub fn plus(&self, other: &Content) -> Content {
        let mut c = self.0;
        for (a, b) in c.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Content(c)
    }
}

/// A maximal run of same-content words inside one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub content: Content,
    pub start: usize,
    pub len: usize,
}

impl Block {
    pub fn range(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.len
    }
}

#[derive(Debug)]
struct DegreeTable {
    words: Vec<Word>,
    blocks: Vec<Block>,
    block_of: Vec<u32>,
    by_content: HashMap<Content, usize>,
}

struct Inner {
    field: Field,
    generators: Vec<GradedGenerator>,
    cap: u32,
    degrees: Vec<DegreeTable>,
    // multinomial lookup: binom[n][k]
    binom: Vec<Vec<u64>>,
    fingerprint: String,
}

/// The tensor algebra over F_p on a graded alphabet, truncated at a degree
/// cap. Cheap to clone.
#[derive(Clone)]
pub struct TensorAlgebra {
    inner: Arc<Inner>,
}

impl fmt::Debug for TensorAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self
            .generators()
            .iter()
            .map(|g| format!("{}({})", g.name, g.degree))
            .collect();
        write!(
            f,
            "T[{}] over {:?} up to degree {}",
            names.join(", "),
            self.field(),
            self.cap()
        )
    }
}

impl PartialEq for TensorAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.fingerprint == other.inner.fingerprint
    }
}

impl Eq for TensorAlgebra {}

impl TensorAlgebra {
    /// Builds the basis tables for all degrees up to `cap`. Generator ids
    /// must be `0..len` in order.
    pub fn new(p: u32, generators: Vec<GradedGenerator>, cap: u32) -> Result<Self, TensorError> {
        let field = Field::new(p)?;
        if generators.len() > MAX_GENERATORS {
            return Err(TensorError::UnknownGenerator(generators.len() as u8));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.id as usize != i {
                return Err(TensorError::UnknownGenerator(g.id));
            }
            if g.degree == 0 {
                return Err(TensorError::ZeroDegreeGenerator);
            }
        }
        let max_len = cap as usize + 1;
        let mut binom = vec![vec![0u64; max_len + 1]; max_len + 1];
        for n in 0..=max_len {
            binom[n][0] = 1;
            for k in 1..=n {
                binom[n][k] = binom[n - 1][k - 1].saturating_add(binom[n - 1][k]);
            }
        }
        let degrees = (0..=cap).map(|d| build_degree(&generators, d)).collect();
        let fingerprint = fingerprint(p, &generators);
        Ok(TensorAlgebra {
            inner: Arc::new(Inner {
                field,
                generators,
                cap,
                degrees,
                binom,
                fingerprint,
            }),
        })
    }

    /// `T(u, v)` with `|u| = 2n - 1`, `|v| = 2n`, over F_p, up to `cap`.
    pub fn uv(cfg: &PrimeConfig, cap: u32) -> Result<Self, TensorError> {
        TensorAlgebra::new(
            cfg.p,
            vec![
                GradedGenerator::new(0, "u", 2 * cfg.n - 1),
                GradedGenerator::new(1, "v", 2 * cfg.n),
            ],
            cap,
        )
    }

    pub fn field(&self) -> &Field {
        &self.inner.field
    }

    pub fn p(&self) -> u32 {
        self.inner.field.p()
    }

    pub fn cap(&self) -> u32 {
        self.inner.cap
    }

    pub fn generators(&self) -> &[GradedGenerator] {
        &self.inner.generators
    }

    /// Hex SHA-256 over the prime and the ordered alphabet.
    pub fn fingerprint(&self) -> &str {
        &self.inner.fingerprint
    }

    pub fn check_degree(&self, d: u32) -> Result<(), TensorError> {
        if d > self.cap() {
            return Err(TensorError::Cap {
                degree: d,
                cap: self.cap(),
            });
        }
        Ok(())
    }

    fn table(&self, d: u32) -> &DegreeTable {
        &self.inner.degrees[d as usize]
    }

    /// `dim T_d`.
    pub fn dim(&self, d: u32) -> usize {
        self.table(d).words.len()
    }

    /// All words of degree `d` in canonical order.
    pub fn monomial_basis(&self, d: u32) -> Result<&[Word], TensorError> {
        self.check_degree(d)?;
        Ok(&self.table(d).words)
    }

    pub fn word(&self, d: u32, index: usize) -> &Word {
        &self.table(d).words[index]
    }

    pub fn blocks(&self, d: u32) -> &[Block] {
        &self.table(d).blocks
    }

    pub fn block_of(&self, d: u32, index: usize) -> usize {
        self.table(d).block_of[index] as usize
    }

    pub fn block_with_content(&self, d: u32, content: &Content) -> Option<&Block> {
        let t = self.table(d);
        t.by_content.get(content).map(|&b| &t.blocks[b])
    }

    pub fn word_degree(&self, letters: &[u8]) -> Result<u32, TensorError> {
        let mut d = 0;
        for &l in letters {
            let g = self
                .generators()
                .get(l as usize)
                .ok_or(TensorError::UnknownGenerator(l))?;
            d += g.degree;
        }
        Ok(d)
    }

    /// Degree and index of a word in the canonical basis.
    pub fn index_of(&self, letters: &[u8]) -> Result<(u32, usize), TensorError> {
        let d = self.word_degree(letters)?;
        self.check_degree(d)?;
        let content = Content::of(letters);
        let block = self
            .block_with_content(d, &content)
            .expect("content present");
        Ok((d, block.start + self.prefix_offset(letters, &content)))
    }

    /// Number of words with the given letter counts.
    pub fn multinomial(&self, counts: &[u8; MAX_GENERATORS]) -> u64 {
        let mut total = 0usize;
        let mut acc = 1u64;
        for &c in counts {
            total += c as usize;
            acc = acc.saturating_mul(self.inner.binom[total][c as usize]);
        }
        acc
    }

    /// Position, inside the block of content `target`, of the first word
    /// that starts with `prefix`. The prefix must fit inside `target`.
    pub fn prefix_offset(&self, prefix: &[u8], target: &Content) -> usize {
        let ngen = self.generators().len();
        let mut rem = target.0;
        let mut off = 0u64;
        for &letter in prefix {
            for l in 0..letter as usize {
                if rem[l] > 0 {
                    rem[l] -= 1;
                    off += self.multinomial(&rem);
                    rem[l] += 1;
                }
            }
            debug_assert!(rem[letter as usize] > 0 && (letter as usize) < ngen);
            rem[letter as usize] -= 1;
        }
        off as usize
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let names = &self.inner.generators;
        // single-character names read fine juxtaposed
        let sep = if names.iter().all(|g| g.name.chars().count() == 1) {
            ""
        } else {
            "*"
        };
        w.0.iter()
            .map(|&l| names[l as usize].name.as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }
}

fn fingerprint(p: u32, generators: &[GradedGenerator]) -> String {
    let mut h = Sha256::new();
    h.update(format!("p={p};"));
    for g in generators {
        h.update(format!("{}:{}:{};", g.id, g.name, g.degree));
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn build_degree(generators: &[GradedGenerator], d: u32) -> DegreeTable {
    let mut contents = Vec::new();
    let mut counts = [0u8; MAX_GENERATORS];
    enumerate_contents(generators, 0, d, &mut counts, &mut contents);
    contents.sort_by(|a: &Content, b: &Content| {
        a.length().cmp(&b.length()).then_with(|| b.0.cmp(&a.0))
    });

    let mut words = Vec::new();
    let mut blocks = Vec::new();
    let mut block_of = Vec::new();
    let mut by_content = HashMap::new();
    for content in contents {
        let start = words.len();
        let mut rem = content.0;
        let mut cur = Vec::with_capacity(content.length() as usize);
        enumerate_words(generators.len(), &mut rem, &mut cur, &mut words);
        let len = words.len() - start;
        by_content.insert(content, blocks.len());
        block_of.extend(std::iter::repeat_n(blocks.len() as u32, len));
        blocks.push(Block {
            content,
            start,
            len,
        });
    }
    DegreeTable {
        words,
        blocks,
        block_of,
        by_content,
    }
}

fn enumerate_contents(
    generators: &[GradedGenerator],
    g: usize,
    remaining: u32,
    counts: &mut [u8; MAX_GENERATORS],
    out: &mut Vec<Content>,
) {
    if g == generators.len() {
        if remaining == 0 {
            out.push(Content(*counts));
        }
        return;
    }
    let deg = generators[g].degree;
    let mut k = 0;
    loop {
        counts[g] = k as u8;
        enumerate_contents(generators, g + 1, remaining - k * deg, counts, out);
        if (k + 1) * deg > remaining {
            break;
        }
        k += 1;
    }
    counts[g] = 0;
}

fn enumerate_words(
    ngen: usize,
    rem: &mut [u8; MAX_GENERATORS],
    cur: &mut Vec<u8>,
    out: &mut Vec<Word>,
) {
    if rem.iter().all(|&c| c == 0) {
        out.push(Word(cur.clone()));
        return;
    }
    for l in 0..ngen {
        if rem[l] > 0 {
            rem[l] -= 1;
            cur.push(l as u8);
            enumerate_words(ngen, rem, cur, out);
            cur.pop();
            rem[l] += 1;
        }
    }
}
