//! Graded subspaces of the tensor algebra, one echelon form per degree.
//!
//! A degree whose subspace is a direct sum of pieces living in single
//! content blocks is stored block by block; this is the common case, since
//! brackets and products of block-homogeneous elements stay
//! block-homogeneous. Anything else is stored as one echelon form over the
//! whole degree. The representation is normalized, so two equal subspaces
//! always compare equal.

use rayon::prelude::*;

use super::basis::TensorAlgebra;
use super::echelon::{Echelon, EchelonBuilder};
use super::poly::NCPoly;
use crate::error::TensorError;
use crate::series::HilbertSeries;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum DegreeSpace {
    /// One echelon form per content block, in block order.
    Blocked(Vec<Echelon>),
    /// A single echelon form over all of `T_d`.
    Mixed(Echelon),
}

impl DegreeSpace {
    fn zero(alg: &TensorAlgebra, d: u32) -> DegreeSpace {
        DegreeSpace::Blocked(alg.blocks(d).iter().map(|b| Echelon::zero(b.len)).collect())
    }

    fn full(alg: &TensorAlgebra, d: u32) -> DegreeSpace {
        DegreeSpace::Blocked(
            alg.blocks(d)
                .iter()
                .map(|b| Echelon::identity(b.len))
                .collect(),
        )
    }

    fn dim(&self) -> usize {
        match self {
            DegreeSpace::Blocked(bs) => bs.iter().map(Echelon::rank).sum(),
            DegreeSpace::Mixed(e) => e.rank(),
        }
    }

    fn to_global(&self, alg: &TensorAlgebra, d: u32) -> Echelon {
        match self {
            DegreeSpace::Mixed(e) => e.clone(),
            DegreeSpace::Blocked(bs) => {
                let width = alg.dim(d);
                let rows = alg
                    .blocks(d)
                    .iter()
                    .zip(bs)
                    .flat_map(|(b, e)| {
                        e.rows().map(move |r| {
                            let mut row = vec![0u8; width];
                            row[b.range()].copy_from_slice(r);
                            row
                        })
                    })
                    .collect();
                Echelon::from_canonical(width, rows)
            }
        }
    }

    /// Splits a whole-degree echelon form into blocks when every row lies
    /// in a single block.
    fn normalize(alg: &TensorAlgebra, d: u32, e: Echelon) -> DegreeSpace {
        let blocks = alg.blocks(d);
        let mut per_block: Vec<Vec<Vec<u8>>> = vec![Vec::new(); blocks.len()];
        let mut split = true;
        for (i, r) in e.rows().enumerate() {
            let lead = e.pivots()[i] as usize;
            let last = r.iter().rposition(|&c| c != 0).unwrap();
            let b = alg.block_of(d, lead);
            if alg.block_of(d, last) != b {
                split = false;
                break;
            }
            per_block[b].push(r[blocks[b].range()].to_vec());
        }
        if !split {
            return DegreeSpace::Mixed(e);
        }
        DegreeSpace::Blocked(
            blocks
                .iter()
                .zip(per_block)
                .map(|(b, rows)| Echelon::from_canonical(b.len, rows))
                .collect(),
        )
    }

    fn rows_global(&self, alg: &TensorAlgebra, d: u32) -> Vec<NCPoly> {
        match self {
            DegreeSpace::Mixed(e) => e.rows().map(|r| NCPoly::from_dense(d, 0, r)).collect(),
            DegreeSpace::Blocked(bs) => alg
                .blocks(d)
                .iter()
                .zip(bs)
                .flat_map(|(b, e)| e.rows().map(move |r| NCPoly::from_dense(d, b.start, r)))
                .collect(),
        }
    }
}

/// Where the inputs of a per-degree operation live: `Some` gives the block
/// of every vector when everything is block-compatible.
fn layout(alg: &TensorAlgebra, spaces: &[&DegreeSpace], vecs: &[&NCPoly]) -> Option<Vec<usize>> {
    if spaces.iter().any(|s| matches!(s, DegreeSpace::Mixed(_))) {
        return None;
    }
    vecs.iter()
        .map(|v| {
            if v.is_zero() {
                Some(usize::MAX)
            } else {
                alg.single_block(v)
            }
        })
        .collect()
}

/// Runs `f` block by block when possible, otherwise once over the whole
/// degree. `f` receives the echelon forms of `spaces` and the dense
/// vectors, both in the same coordinates, and the coordinate count.
fn combine<F, E>(
    alg: &TensorAlgebra,
    d: u32,
    spaces: &[&DegreeSpace],
    vecs: &[&NCPoly],
    f: F,
) -> Result<DegreeSpace, E>
where
    F: Fn(&[&Echelon], Vec<Vec<u8>>, usize) -> Result<Echelon, E> + Sync,
    E: Send,
{
    match layout(alg, spaces, vecs) {
        Some(where_) => {
            let blocks = alg.blocks(d);
            let per_block: Result<Vec<Echelon>, E> = blocks
                .par_iter()
                .enumerate()
                .map(|(bi, b)| {
                    let echelons: Vec<&Echelon> = spaces
                        .iter()
                        .map(|s| match s {
                            DegreeSpace::Blocked(bs) => &bs[bi],
                            DegreeSpace::Mixed(_) => unreachable!(),
                        })
                        .collect();
                    let local: Vec<Vec<u8>> = vecs
                        .iter()
                        .zip(&where_)
                        .filter(|(_, &w)| w == bi)
                        .map(|(v, _)| {
                            let mut row = vec![0u8; b.len];
                            row[v.start() - b.start..v.end() - b.start].copy_from_slice(v.dense());
                            row
                        })
                        .collect();
                    f(&echelons, local, b.len)
                })
                .collect();
            Ok(DegreeSpace::Blocked(per_block?))
        }
        None => {
            let width = alg.dim(d);
            let globals: Vec<Echelon> = spaces.iter().map(|s| s.to_global(alg, d)).collect();
            let refs: Vec<&Echelon> = globals.iter().collect();
            let dense = vecs
                .iter()
                .map(|v| {
                    let mut row = vec![0u8; width];
                    if !v.is_zero() {
                        v.write_dense(&mut row);
                    }
                    row
                })
                .collect();
            Ok(DegreeSpace::normalize(alg, d, f(&refs, dense, width)?))
        }
    }
}

/// A subspace of the tensor algebra, given degreewise up to its cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSubspace {
    algebra: TensorAlgebra,
    degrees: Vec<DegreeSpace>,
}

impl GradedSubspace {
    pub fn zero(algebra: &TensorAlgebra, cap: u32) -> Result<Self, TensorError> {
        algebra.check_degree(cap)?;
        Ok(GradedSubspace {
            degrees: (0..=cap).map(|d| DegreeSpace::zero(algebra, d)).collect(),
            algebra: algebra.clone(),
        })
    }

    /// All of `T` up to `cap`.
    pub fn full(algebra: &TensorAlgebra, cap: u32) -> Result<Self, TensorError> {
        algebra.check_degree(cap)?;
        Ok(GradedSubspace {
            degrees: (0..=cap).map(|d| DegreeSpace::full(algebra, d)).collect(),
            algebra: algebra.clone(),
        })
    }

    /// Canonical span of homogeneous vectors of degree at most `cap`.
    pub fn span(
        algebra: &TensorAlgebra,
        cap: u32,
        vectors: &[NCPoly],
    ) -> Result<Self, TensorError> {
        algebra.check_degree(cap)?;
        let mut by_degree: Vec<Vec<&NCPoly>> = vec![Vec::new(); cap as usize + 1];
        for v in vectors {
            if v.degree() > cap {
                return Err(TensorError::Cap {
                    degree: v.degree(),
                    cap,
                });
            }
            by_degree[v.degree() as usize].push(v);
        }
        let degrees = by_degree
            .iter()
            .enumerate()
            .map(|(d, vs)| span_degree(algebra, d as u32, vs))
            .collect();
        Ok(GradedSubspace {
            algebra: algebra.clone(),
            degrees,
        })
    }

    /// Assembles a subspace from per-degree spans (index = degree).
    pub fn from_degree_spans(
        algebra: &TensorAlgebra,
        spans: Vec<Vec<NCPoly>>,
    ) -> Result<Self, TensorError> {
        if spans.is_empty() {
            return Err(TensorError::Format("no degrees".into()));
        }
        algebra.check_degree(spans.len() as u32 - 1)?;
        let mut degrees = Vec::with_capacity(spans.len());
        for (d, vs) in spans.iter().enumerate() {
            if let Some(v) = vs.iter().find(|v| !v.is_zero() && v.degree() != d as u32) {
                return Err(TensorError::Cap {
                    degree: v.degree(),
                    cap: d as u32,
                });
            }
            let refs: Vec<&NCPoly> = vs.iter().collect();
            degrees.push(span_degree(algebra, d as u32, &refs));
        }
        Ok(GradedSubspace {
            algebra: algebra.clone(),
            degrees,
        })
    }

    pub fn algebra(&self) -> &TensorAlgebra {
        &self.algebra
    }

    pub fn cap(&self) -> u32 {
        self.degrees.len() as u32 - 1
    }

    /// Dimension in degree `d` (zero above the cap).
    pub fn dim(&self, d: u32) -> usize {
        self.degrees.get(d as usize).map_or(0, DegreeSpace::dim)
    }

    pub fn dims(&self) -> HilbertSeries {
        HilbertSeries::from_coeffs((0..=self.cap()).map(|d| self.dim(d) as i64).collect())
    }

    /// The canonical basis of degree `d`, in pivot order.
    pub fn basis(&self, d: u32) -> Vec<NCPoly> {
        match self.degrees.get(d as usize) {
            Some(s) => s.rows_global(&self.algebra, d),
            None => Vec::new(),
        }
    }

    /// Basis of degree `d` as rows over all of `T_d`.
    pub fn matrix(&self, d: u32) -> Echelon {
        self.degrees[d as usize].to_global(&self.algebra, d)
    }

    /// Whether the subspace in degree `d` is stored block by block.
    pub fn is_block_diagonal(&self, d: u32) -> bool {
        matches!(self.degrees[d as usize], DegreeSpace::Blocked(_))
    }

    /// Remainder of `v` after reduction against the basis of its degree.
    pub fn reduce(&self, v: &NCPoly) -> Result<NCPoly, TensorError> {
        let d = v.degree();
        if d > self.cap() {
            return Err(TensorError::Cap {
                degree: d,
                cap: self.cap(),
            });
        }
        if v.is_zero() {
            return Ok(v.clone());
        }
        let f = self.algebra.field();
        match (&self.degrees[d as usize], self.algebra.single_block(v)) {
            (DegreeSpace::Blocked(bs), Some(bi)) => {
                let b = &self.algebra.blocks(d)[bi];
                let mut row = vec![0u8; b.len];
                row[v.start() - b.start..v.end() - b.start].copy_from_slice(v.dense());
                bs[bi].reduce(f, &mut row);
                Ok(NCPoly::from_dense(d, b.start, &row))
            }
            (space, _) => {
                let mut row = vec![0u8; self.algebra.dim(d)];
                v.write_dense(&mut row);
                match space {
                    DegreeSpace::Mixed(e) => e.reduce(f, &mut row),
                    DegreeSpace::Blocked(bs) => {
                        for (b, e) in self.algebra.blocks(d).iter().zip(bs) {
                            e.reduce(f, &mut row[b.range()]);
                        }
                    }
                }
                Ok(NCPoly::from_dense(d, 0, &row))
            }
        }
    }

    pub fn contains(&self, v: &NCPoly) -> Result<bool, TensorError> {
        Ok(self.reduce(v)?.is_zero())
    }

    fn check_compatible(&self, other: &Self) -> Result<(), TensorError> {
        if self.algebra != other.algebra {
            return Err(TensorError::AlphabetMismatch);
        }
        Ok(())
    }

    fn zip_with<F>(&self, other: &Self, f: F) -> Result<Self, TensorError>
    where
        F: Fn(&Echelon, &Echelon) -> Echelon + Sync,
    {
        self.check_compatible(other)?;
        let cap = self.cap().min(other.cap());
        let alg = &self.algebra;
        let degrees = (0..=cap)
            .map(|d| {
                let spaces = [&self.degrees[d as usize], &other.degrees[d as usize]];
                combine::<_, TensorError>(alg, d, &spaces, &[], |es, _, _| Ok(f(es[0], es[1])))
            })
            .collect::<Result<_, _>>()?;
        Ok(GradedSubspace {
            algebra: alg.clone(),
            degrees,
        })
    }

    /// Degreewise sum, up to the smaller cap.
    pub fn sum(&self, other: &Self) -> Result<Self, TensorError> {
        let f = self.algebra.field();
        self.zip_with(other, |a, b| a.sum(f, b))
    }

    /// Degreewise intersection, up to the smaller cap.
    pub fn intersect(&self, other: &Self) -> Result<Self, TensorError> {
        let f = self.algebra.field();
        self.zip_with(other, |a, b| a.intersect(f, b))
    }

    /// Lowest degree (up to the smaller cap) where `self` is not contained
    /// in `other`, or `None` if it is contained everywhere.
    pub fn first_non_inclusion(&self, other: &Self) -> Result<Option<u32>, TensorError> {
        self.check_compatible(other)?;
        let cap = self.cap().min(other.cap());
        for d in 0..=cap {
            for v in self.basis(d) {
                if !other.contains(&v)? {
                    return Ok(Some(d));
                }
            }
        }
        Ok(None)
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool, TensorError> {
        Ok(self.first_non_inclusion(other)?.is_none())
    }

    /// Restriction to degrees `<= cap`.
    pub fn truncate(&self, cap: u32) -> Self {
        GradedSubspace {
            algebra: self.algebra.clone(),
            degrees: self.degrees[..=cap.min(self.cap()) as usize].to_vec(),
        }
    }

    /// The complement kernel of `self` relative to `marked`: per degree,
    /// the span of the canonical basis vectors of `self` that are
    /// independent of the marked vectors and of each other.
    pub fn kernel_of_projection(&self, marked: &[NCPoly]) -> Result<Self, TensorError> {
        let base = GradedSubspace::zero(&self.algebra, self.cap())?;
        self.adapted_kernel(&base, marked)
    }

    /// Per degree: `base + span(completion)`, where the completion extends
    /// a basis of `base`, then the marked vectors, to a basis of `self` by
    /// canonical basis vectors of `self` in order. `base` must lie inside
    /// `self`, and the marked vectors must be in `self` and independent
    /// modulo `base`.
    pub fn adapted_kernel(&self, base: &Self, marked: &[NCPoly]) -> Result<Self, TensorError> {
        self.check_compatible(base)?;
        let alg = &self.algebra;
        let f = alg.field();
        let cap = self.cap().min(base.cap());
        for m in marked {
            if m.degree() > cap {
                return Err(TensorError::Cap {
                    degree: m.degree(),
                    cap,
                });
            }
        }
        let degrees = (0..=cap)
            .map(|d| {
                let mk: Vec<&NCPoly> = marked.iter().filter(|m| m.degree() == d).collect();
                let spaces = [&self.degrees[d as usize], &base.degrees[d as usize]];
                combine(alg, d, &spaces, &mk, |es, vs, _| {
                    let (ambient, base) = (es[0], es[1]);
                    if !base.is_subspace_of(f, ambient) {
                        return Err(TensorError::NotInSubspace { degree: d });
                    }
                    let mut b = EchelonBuilder::seeded(f, base);
                    for v in vs {
                        if !ambient.contains(f, &v) {
                            return Err(TensorError::NotInSubspace { degree: d });
                        }
                        if !b.insert(v) {
                            return Err(TensorError::DependentMarked { degree: d });
                        }
                    }
                    let completion: Vec<Vec<u8>> = ambient
                        .rows()
                        .filter(|r| b.insert(r.to_vec()))
                        .map(<[u8]>::to_vec)
                        .collect();
                    Ok(base.extended(f, completion))
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(GradedSubspace {
            algebra: alg.clone(),
            degrees,
        })
    }

    /// Canonical basis vectors of `self` in degree `d` that extend a basis
    /// of `base` (taken in order, each kept when independent of `base` and
    /// of the vectors kept before it).
    pub fn completion(&self, base: &Self, d: u32) -> Result<Vec<NCPoly>, TensorError> {
        self.check_compatible(base)?;
        let alg = &self.algebra;
        let f = alg.field();
        if d > self.cap() || d > base.cap() {
            return Err(TensorError::Cap {
                degree: d,
                cap: self.cap().min(base.cap()),
            });
        }
        let mut out = Vec::new();
        match (&self.degrees[d as usize], &base.degrees[d as usize]) {
            (DegreeSpace::Blocked(ours), DegreeSpace::Blocked(theirs)) => {
                for ((b, e), be) in alg.blocks(d).iter().zip(ours).zip(theirs) {
                    let mut builder = EchelonBuilder::seeded(f, be);
                    for r in e.rows() {
                        if builder.insert(r.to_vec()) {
                            out.push(NCPoly::from_dense(d, b.start, r));
                        }
                    }
                }
            }
            (ours, theirs) => {
                let e = ours.to_global(alg, d);
                let mut builder = EchelonBuilder::seeded(f, &theirs.to_global(alg, d));
                for r in e.rows() {
                    if builder.insert(r.to_vec()) {
                        out.push(NCPoly::from_dense(d, 0, r));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Replaces degree `d` by the span of the given vectors.
    pub fn with_degree(&self, d: u32, vectors: &[NCPoly]) -> Result<Self, TensorError> {
        if d > self.cap() {
            return Err(TensorError::Cap {
                degree: d,
                cap: self.cap(),
            });
        }
        let refs: Vec<&NCPoly> = vectors.iter().collect();
        let mut out = self.clone();
        out.degrees[d as usize] = span_degree(&self.algebra, d, &refs);
        Ok(out)
    }

    /// Appends degree `cap + 1`, spanned by the given vectors.
    pub(crate) fn push_degree(&mut self, space: DegreeSpace) {
        self.degrees.push(space);
    }
}

/// Canonical span of vectors all of degree `d`.
pub(crate) fn span_degree(alg: &TensorAlgebra, d: u32, vecs: &[&NCPoly]) -> DegreeSpace {
    let f = alg.field();
    let spanned: Result<DegreeSpace, TensorError> = combine(alg, d, &[], vecs, |_, rows, width| {
        Ok(Echelon::from_rows(f, width, rows))
    });
    spanned.expect("spanning cannot fail")
}

/// Builds an empty subspace of cap 0 (only degree 0) to be grown with
/// [`GradedSubspace::push_degree`].
pub(crate) fn start_subspace(alg: &TensorAlgebra, degree0: DegreeSpace) -> GradedSubspace {
    GradedSubspace {
        algebra: alg.clone(),
        degrees: vec![degree0],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plocal::PrimeConfig;
    use crate::tensor::basis::Word;
    use proptest::prelude::*;

    fn uv(cap: u32) -> TensorAlgebra {
        TensorAlgebra::uv(&PrimeConfig::new(3, 1, 1, 2).unwrap(), cap).unwrap()
    }

    fn w(letters: &[u8]) -> Word {
        Word(letters.to_vec())
    }

    #[test]
    fn span_examples() {
        let t = uv(6);
        let u = t.generator(0).unwrap();
        let s = GradedSubspace::span(&t, 6, std::slice::from_ref(&u)).unwrap();
        assert_eq!(s.dim(1), 1);
        assert_eq!(s.dims().coeffs().iter().sum::<i64>(), 1);
        let uu_v = t.from_terms(&[(w(&[0, 0]), 1), (w(&[1]), 1)]).unwrap();
        let v = t.generator(1).unwrap();
        let s2 = GradedSubspace::span(&t, 6, &[uu_v.clone(), v.clone()]).unwrap();
        assert_eq!(s2.dim(2), 2);
        assert!(s2.is_block_diagonal(2));
        let mixed = GradedSubspace::span(&t, 6, std::slice::from_ref(&uu_v)).unwrap();
        assert!(!mixed.is_block_diagonal(2));
        assert!(mixed.contains(&uu_v).unwrap());
        assert!(!mixed.contains(&v).unwrap());
        let empty = GradedSubspace::span(&t, 6, &[]).unwrap();
        assert_eq!(empty, GradedSubspace::zero(&t, 6).unwrap());
        assert!(matches!(
            GradedSubspace::span(&t, 1, &[v]),
            Err(TensorError::Cap { .. })
        ));
    }

    #[test]
    fn intersection_examples() {
        let t = uv(6);
        let u = t.generator(0).unwrap();
        let v = t.generator(1).unwrap();
        let a = GradedSubspace::span(&t, 6, &[u]).unwrap();
        let b = GradedSubspace::span(&t, 6, &[v]).unwrap();
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert_eq!(
            a.intersect(&b).unwrap(),
            GradedSubspace::zero(&t, 6).unwrap()
        );
        assert_eq!(a.sum(&b).unwrap().intersect(&a).unwrap(), a);

        let other = TensorAlgebra::uv(&PrimeConfig::new(5, 1, 1, 2).unwrap(), 6).unwrap();
        let c = GradedSubspace::zero(&other, 6).unwrap();
        assert_eq!(a.intersect(&c), Err(TensorError::AlphabetMismatch));
    }

    #[test]
    fn kernel_of_projection_examples() {
        let t = uv(6);
        let u = t.generator(0).unwrap();
        let a = GradedSubspace::span(&t, 6, std::slice::from_ref(&u)).unwrap();
        assert_eq!(
            a.kernel_of_projection(std::slice::from_ref(&u))
                .unwrap()
                .dim(1),
            0
        );
        assert_eq!(a.kernel_of_projection(&[]).unwrap(), a);
        let vu = t.monomial(&[1, 0], 1).unwrap();
        let uv_ = t.monomial(&[0, 1], 1).unwrap();
        let two = GradedSubspace::span(&t, 6, &[vu.clone(), uv_.clone()]).unwrap();
        let k = two.kernel_of_projection(std::slice::from_ref(&vu)).unwrap();
        assert_eq!(k.dim(3), 1);
        assert!(k.contains(&uv_).unwrap());
        let v = t.generator(1).unwrap();
        assert_eq!(
            a.kernel_of_projection(&[v]),
            Err(TensorError::NotInSubspace { degree: 2 })
        );
        assert_eq!(
            two.kernel_of_projection(&[vu.clone(), t.scale(&vu, 2)]),
            Err(TensorError::DependentMarked { degree: 3 })
        );
    }

    fn arb_vectors(t: TensorAlgebra) -> impl Strategy<Value = Vec<NCPoly>> {
        let t2 = t.clone();
        proptest::collection::vec(
            (1u32..=5).prop_flat_map(move |d| {
                let n = t2.dim(d);
                (Just(d), proptest::collection::vec(0u8..3, n), any::<bool>())
            }),
            0..10,
        )
        .prop_map(move |raw| {
            raw.into_iter()
                .map(|(d, mut coeffs, single)| {
                    if single {
                        // keep only one content block to exercise the blocked path
                        let b = &t.blocks(d)[t.blocks(d).len() - 1];
                        for (i, c) in coeffs.iter_mut().enumerate() {
                            if !b.range().contains(&i) {
                                *c = 0;
                            }
                        }
                    }
                    NCPoly::from_dense(d, 0, &coeffs)
                })
                .collect()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn span_is_order_independent(vs in arb_vectors(uv(6))) {
            let t = uv(6);
            let a = GradedSubspace::span(&t, 6, &vs).unwrap();
            let mut rev = vs.clone();
            rev.reverse();
            prop_assert_eq!(&GradedSubspace::span(&t, 6, &rev).unwrap(), &a);
            for v in &vs {
                prop_assert!(a.contains(v).unwrap());
            }
            // re-spanning the canonical basis is the identity
            let basis: Vec<NCPoly> = (0..=6).flat_map(|d| a.basis(d)).collect();
            prop_assert_eq!(&GradedSubspace::span(&t, 6, &basis).unwrap(), &a);
        }

        #[test]
        fn intersection_dimension_identity(xs in arb_vectors(uv(6)), ys in arb_vectors(uv(6))) {
            let t = uv(6);
            let a = GradedSubspace::span(&t, 6, &xs).unwrap();
            let b = GradedSubspace::span(&t, 6, &ys).unwrap();
            let i = a.intersect(&b).unwrap();
            let s = a.sum(&b).unwrap();
            for d in 0..=6 {
                prop_assert_eq!(i.dim(d) + s.dim(d), a.dim(d) + b.dim(d));
            }
            prop_assert!(i.is_subspace_of(&a).unwrap());
            prop_assert_eq!(s.intersect(&a).unwrap(), a);
        }
    }
}
