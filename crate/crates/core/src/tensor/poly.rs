//! Homogeneous noncommutative polynomials.

use super::basis::{Content, TensorAlgebra, Word};
use crate::error::TensorError;

/// A homogeneous element of the tensor algebra.
///
/// Coefficients are stored densely over the smallest range of basis
/// indices that covers every nonzero term, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NCPoly {
    degree: u32,
    start: usize,
    coeffs: Vec<u8>,
}

impl NCPoly {
    pub fn zero(degree: u32) -> NCPoly {
        NCPoly {
            degree,
            start: 0,
            coeffs: Vec::new(),
        }
    }

    /// Builds from dense coefficients starting at basis index `start`,
    /// trimming zeros at both ends.
    pub fn from_dense(degree: u32, start: usize, coeffs: &[u8]) -> NCPoly {
        let Some(first) = coeffs.iter().position(|&c| c != 0) else {
            return NCPoly::zero(degree);
        };
        let last = coeffs.iter().rposition(|&c| c != 0).unwrap();
        NCPoly {
            degree,
            start: start + first,
            coeffs: coeffs[first..=last].to_vec(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// First basis index covered by the stored range.
    pub fn start(&self) -> usize {
        self.start
    }

    /// Dense coefficients over `start()..start() + len`.
    pub fn dense(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn end(&self) -> usize {
        self.start + self.coeffs.len()
    }

    /// Coefficient of the basis word with the given index.
    pub fn coeff(&self, index: usize) -> u8 {
        if index < self.start {
            return 0;
        }
        self.coeffs.get(index - self.start).copied().unwrap_or(0)
    }

    /// Nonzero terms as `(basis index, coefficient)`, in canonical order.
    pub fn indexed_terms(&self) -> impl Iterator<Item = (usize, u8)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (self.start + i, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    /// Writes the coefficients into a dense vector over the whole degree.
    pub fn write_dense(&self, out: &mut [u8]) {
        out[self.start..self.end()].copy_from_slice(&self.coeffs);
    }
}

impl TensorAlgebra {
    pub fn monomial(&self, letters: &[u8], coeff: u8) -> Result<NCPoly, TensorError> {
        let (d, idx) = self.index_of(letters)?;
        let c = coeff % self.p() as u8;
        Ok(NCPoly::from_dense(d, idx, &[c]))
    }

    pub fn generator(&self, id: u8) -> Result<NCPoly, TensorError> {
        self.monomial(&[id], 1)
    }

    pub fn one(&self) -> NCPoly {
        NCPoly::from_dense(0, 0, &[1])
    }

    /// Builds a homogeneous polynomial from terms; repeated words add up.
    pub fn from_terms(&self, terms: &[(Word, i64)]) -> Result<NCPoly, TensorError> {
        let Some((first, _)) = terms.first() else {
            return Ok(NCPoly::zero(0));
        };
        let d = self.word_degree(&first.0)?;
        self.check_degree(d)?;
        let mut dense = vec![0u8; self.dim(d)];
        let f = self.field();
        for (w, c) in terms {
            let (dw, idx) = self.index_of(&w.0)?;
            if dw != d {
                return Err(TensorError::NotHomogeneous);
            }
            dense[idx] = f.add(dense[idx], f.from_i64(*c));
        }
        Ok(NCPoly::from_dense(d, 0, &dense))
    }

    /// Nonzero terms as `(word, coefficient)` in canonical order.
    pub fn terms<'a>(&'a self, a: &'a NCPoly) -> impl Iterator<Item = (&'a Word, u8)> + 'a {
        a.indexed_terms()
            .map(move |(i, c)| (self.word(a.degree(), i), c))
    }

    /// `a + c b`; degrees must agree unless one side is zero.
    pub fn add_scaled(&self, a: &NCPoly, b: &NCPoly, c: u8) -> Result<NCPoly, TensorError> {
        if b.is_zero() || c == 0 {
            return Ok(a.clone());
        }
        if a.is_zero() {
            return Ok(self.scale(b, c));
        }
        if a.degree != b.degree {
            return Err(TensorError::NotHomogeneous);
        }
        let lo = a.start.min(b.start);
        let hi = a.end().max(b.end());
        let mut dense = vec![0u8; hi - lo];
        dense[a.start - lo..a.end() - lo].copy_from_slice(&a.coeffs);
        self.field()
            .axpy(&mut dense[b.start - lo..b.end() - lo], &b.coeffs, c);
        Ok(NCPoly::from_dense(a.degree, lo, &dense))
    }

    pub fn add(&self, a: &NCPoly, b: &NCPoly) -> Result<NCPoly, TensorError> {
        self.add_scaled(a, b, 1)
    }

    pub fn sub(&self, a: &NCPoly, b: &NCPoly) -> Result<NCPoly, TensorError> {
        self.add_scaled(a, b, self.field().neg(1))
    }

    pub fn scale(&self, a: &NCPoly, c: u8) -> NCPoly {
        let mut coeffs = a.coeffs.clone();
        self.field().scale(&mut coeffs, c);
        NCPoly::from_dense(a.degree, a.start, &coeffs)
    }

    /// Splits `a` into pieces lying in single content blocks, as
    /// `(block index, offset inside block, coefficients)`.
    pub(crate) fn block_segments<'a>(
        &'a self,
        a: &'a NCPoly,
    ) -> impl Iterator<Item = (usize, usize, &'a [u8])> + 'a {
        let blocks = if a.is_zero() {
            &[][..]
        } else {
            self.blocks(a.degree)
        };
        let first = if a.is_zero() {
            0
        } else {
            self.block_of(a.degree, a.start)
        };
        blocks[first..]
            .iter()
            .enumerate()
            .take_while(move |(_, b)| b.start < a.end())
            .filter_map(move |(i, b)| {
                let lo = b.start.max(a.start);
                let hi = (b.start + b.len).min(a.end());
                let seg = &a.coeffs[lo - a.start..hi - a.start];
                seg.iter()
                    .any(|&c| c != 0)
                    .then_some((first + i, lo - b.start, seg))
            })
    }

    /// Block index if `a` lies inside a single content block.
    pub fn single_block(&self, a: &NCPoly) -> Option<usize> {
        if a.is_zero() {
            return None;
        }
        let b = self.block_of(a.degree, a.start);
        (self.block_of(a.degree, a.end() - 1) == b).then_some(b)
    }

    /// Accumulates `c * m * b` into `out`, a dense vector over degree
    /// `|m| + |b|`.
    pub(crate) fn mul_word_into(&self, out: &mut [u8], m: &Word, c: u8, b: &NCPoly) {
        let cm = Content::of(&m.0);
        let db = b.degree;
        let d = db + self.word_degree(&m.0).expect("valid word");
        for (bi, local, seg) in self.block_segments(b) {
            let target = cm.plus(&self.blocks(db)[bi].content);
            let block = self
                .block_with_content(d, &target)
                .expect("product content exists");
            let at = block.start + self.prefix_offset(&m.0, &target) + local;
            self.field().axpy(&mut out[at..at + seg.len()], seg, c);
        }
    }

    /// Product in the tensor algebra.
    pub fn mul(&self, a: &NCPoly, b: &NCPoly) -> Result<NCPoly, TensorError> {
        let d = a.degree + b.degree;
        self.check_degree(d)?;
        if a.is_zero() || b.is_zero() {
            return Ok(NCPoly::zero(d));
        }
        let mut out = vec![0u8; self.dim(d)];
        for (i, c) in a.indexed_terms() {
            self.mul_word_into(&mut out, self.word(a.degree, i), c, b);
        }
        Ok(NCPoly::from_dense(d, 0, &out))
    }

    /// Graded commutator `ab - (-1)^{|a||b|} ba`.
    pub fn commutator(&self, a: &NCPoly, b: &NCPoly) -> Result<NCPoly, TensorError> {
        let d = a.degree + b.degree;
        self.check_degree(d)?;
        if a.is_zero() || b.is_zero() {
            return Ok(NCPoly::zero(d));
        }
        let f = self.field();
        let mut out = vec![0u8; self.dim(d)];
        for (i, c) in a.indexed_terms() {
            self.mul_word_into(&mut out, self.word(a.degree, i), c, b);
        }
        // ab + s ba with s = -(-1)^{|a||b|}
        let both_odd = a.degree % 2 == 1 && b.degree % 2 == 1;
        let s = if both_odd { 1 } else { f.neg(1) };
        for (i, c) in b.indexed_terms() {
            self.mul_word_into(&mut out, self.word(b.degree, i), f.mul(c, s), a);
        }
        Ok(NCPoly::from_dense(d, 0, &out))
    }

    /// Human-readable form such as `vu + 2uv`.
    pub fn format_poly(&self, a: &NCPoly) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (w, c)) in self.terms(a).enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            if c != 1 {
                out.push_str(&c.to_string());
            }
            out.push_str(&self.format_word(w));
        }
        out
    }
}
