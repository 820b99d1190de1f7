//! Degree-lowering derivations of the tensor algebra.

use super::basis::TensorAlgebra;
use super::poly::NCPoly;
use crate::error::TensorError;

/// Sparse matrix of a derivation in one degree: row `i` lists the image of
/// basis word `i` of degree `d` in degree `d - 1`.
#[derive(Debug, Clone, Default)]
struct DegreeMatrix {
    offsets: Vec<u32>,
    targets: Vec<u32>,
    coeffs: Vec<u8>,
}

/// A derivation `d` of degree -1 with `d(ab) = d(a) b + (-1)^{|a|} a d(b)`,
/// tabulated on every basis word up to the algebra's cap.
#[derive(Debug, Clone)]
pub struct Derivation {
    algebra: TensorAlgebra,
    images: Vec<NCPoly>,
    matrices: Vec<DegreeMatrix>,
}

impl Derivation {
    /// Extends generator images by the graded Leibniz rule. `images[i]` is
    /// the image of generator `i` and must have degree one less.
    pub fn extend(algebra: &TensorAlgebra, images: Vec<NCPoly>) -> Result<Self, TensorError> {
        let gens = algebra.generators();
        if images.len() != gens.len() {
            return Err(TensorError::UnknownGenerator(images.len() as u8));
        }
        for (g, img) in gens.iter().zip(&images) {
            if img.degree() + 1 != g.degree {
                return Err(TensorError::ImageDegree {
                    generator: g.id,
                    expected: g.degree - 1,
                    found: img.degree(),
                });
            }
        }
        let image_terms: Vec<Vec<(Vec<u8>, u8)>> = images
            .iter()
            .map(|img| algebra.terms(img).map(|(w, c)| (w.0.clone(), c)).collect())
            .collect();
        let f = algebra.field();
        let mut matrices = vec![DegreeMatrix::default()];
        for d in 1..=algebra.cap() {
            let mut m = DegreeMatrix {
                offsets: vec![0],
                ..Default::default()
            };
            let mut entries: Vec<(u32, u8)> = Vec::new();
            for w in algebra.monomial_basis(d)? {
                entries.clear();
                let mut prefix_degree = 0;
                for (j, &l) in w.0.iter().enumerate() {
                    let sign = if prefix_degree % 2 == 1 { f.neg(1) } else { 1 };
                    for (img, c) in &image_terms[l as usize] {
                        let mut word = w.0[..j].to_vec();
                        word.extend_from_slice(img);
                        word.extend_from_slice(&w.0[j + 1..]);
                        let (_, idx) = algebra.index_of(&word)?;
                        entries.push((idx as u32, f.mul(*c, sign)));
                    }
                    prefix_degree += gens[l as usize].degree;
                }
                entries.sort_unstable_by_key(|e| e.0);
                let mut k = 0;
                while k < entries.len() {
                    let (t, mut c) = entries[k];
                    k += 1;
                    while k < entries.len() && entries[k].0 == t {
                        c = f.add(c, entries[k].1);
                        k += 1;
                    }
                    if c != 0 {
                        m.targets.push(t);
                        m.coeffs.push(c);
                    }
                }
                m.offsets.push(m.targets.len() as u32);
            }
            matrices.push(m);
        }
        Ok(Derivation {
            algebra: algebra.clone(),
            images,
            matrices,
        })
    }

    /// The mod-p Bockstein on `T(u, v)`: `v -> u`, `u -> 0`. Expects the
    /// algebra's generator 1 to sit one degree above generator 0.
    pub fn bockstein(algebra: &TensorAlgebra) -> Result<Self, TensorError> {
        let gens = algebra.generators();
        if gens.len() != 2 {
            return Err(TensorError::UnknownGenerator(gens.len() as u8));
        }
        let u = algebra.generator(0)?;
        Derivation::extend(algebra, vec![NCPoly::zero(gens[0].degree - 1), u])
    }

    pub fn algebra(&self) -> &TensorAlgebra {
        &self.algebra
    }

    pub fn images(&self) -> &[NCPoly] {
        &self.images
    }

    /// Image of `a`; zero in degree 0.
    pub fn apply(&self, a: &NCPoly) -> Result<NCPoly, TensorError> {
        let d = a.degree();
        self.algebra.check_degree(d)?;
        if d == 0 || a.is_zero() {
            return Ok(NCPoly::zero(d.saturating_sub(1)));
        }
        let mut out = vec![0u8; self.algebra.dim(d - 1)];
        self.apply_into(a, &mut out);
        Ok(NCPoly::from_dense(d - 1, 0, &out))
    }

    /// Accumulates the image of `a` into a dense vector over `T_{d-1}`.
    pub(crate) fn apply_into(&self, a: &NCPoly, out: &mut [u8]) {
        let f = self.algebra.field();
        let m = &self.matrices[a.degree() as usize];
        for (i, c) in a.indexed_terms() {
            let (lo, hi) = (m.offsets[i] as usize, m.offsets[i + 1] as usize);
            for k in lo..hi {
                let t = m.targets[k] as usize;
                out[t] = f.add(out[t], f.mul(c, m.coeffs[k]));
            }
        }
    }
}
