//! Enveloping algebras as generated subalgebras of `T`, Bockstein homology
//! on them, and the series identities relating them.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{HomologyError, LieError};
use crate::lie::{lie_generators, TruncatedFiltration};
use crate::plocal::PrimeConfig;
use crate::series::{
    exterior_factor, polynomial_factor, tensor_algebra_series, vn_factor_series, HilbertSeries,
};
use crate::tensor::{span_degree, start_subspace, Derivation, GradedSubspace, NCPoly};

/// Hilbert series of a generated subalgebra, tagged with what generated it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnvelopingDims {
    pub source: String,
    pub dims: HilbertSeries,
}

fn lie_to_homology(e: LieError) -> HomologyError {
    match e {
        LieError::NotBracketClosed { degree } => HomologyError::NotBracketClosed { degree },
        LieError::Tensor(t) => HomologyError::Tensor(t),
        other => HomologyError::Lie(other.to_string()),
    }
}

/// The subalgebra of `T` generated by a bracket-closed subspace `lie`
/// (the enveloping algebra, realized inside `T`), up to the same cap.
///
/// Degree `d` is spanned by `q * U_{d-|q|}` over a minimal set of Lie
/// generators `q`, plus the unit in degree 0.
pub fn subalgebra_generated(
    lie: &GradedSubspace,
    source: &str,
) -> Result<(GradedSubspace, EnvelopingDims), HomologyError> {
    let alg = lie.algebra();
    let gens = lie_generators(lie).map_err(lie_to_homology)?;
    let gens: Vec<&NCPoly> = gens.all().collect();
    let one = alg.one();
    let mut u = start_subspace(alg, span_degree(alg, 0, &[&one]));
    let mut bases = vec![u.basis(0)];
    for d in 1..=lie.cap() {
        let mut jobs: Vec<(&NCPoly, &NCPoly)> = Vec::new();
        for q in gens.iter().filter(|q| q.degree() <= d) {
            jobs.extend(bases[(d - q.degree()) as usize].iter().map(|b| (*q, b)));
        }
        let products: Vec<NCPoly> = jobs
            .par_iter()
            .map(|(q, b)| alg.mul(q, b))
            .collect::<Result<_, _>>()?;
        let refs: Vec<&NCPoly> = products.iter().collect();
        u.push_degree(span_degree(alg, d, &refs));
        bases.push(u.basis(d));
    }
    let dims = EnvelopingDims {
        source: source.to_string(),
        dims: u.dims(),
    };
    Ok((u, dims))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HomologyRow {
    pub degree: u32,
    pub kernel: usize,
    pub image: usize,
    pub homology: usize,
}

/// Per-degree homology of a differential restricted to a subspace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyTable {
    pub rows: Vec<HomologyRow>,
}

impl HomologyTable {
    pub fn homology_series(&self) -> HilbertSeries {
        HilbertSeries::from_coeffs(self.rows.iter().map(|r| r.homology as i64).collect())
    }
}

/// Homology of `(a, beta)` in degrees `0..a.cap()`; the top degree of `a`
/// only feeds the incoming image of the degree below it.
pub fn bockstein_homology(
    a: &GradedSubspace,
    beta: &Derivation,
) -> Result<HomologyTable, HomologyError> {
    let alg = a.algebra();
    let cap = a.cap();
    // boundaries[d] = beta(a_{d+1}), as a subspace of degree d
    let mut boundaries = start_subspace(alg, span_degree(alg, 0, &[]));
    let mut ranks = vec![0usize; cap as usize + 2];
    for d in 1..=cap {
        let images: Vec<NCPoly> = a
            .basis(d)
            .par_iter()
            .map(|v| {
                let mut out = vec![0u8; alg.dim(d - 1)];
                beta.apply_into(v, &mut out);
                NCPoly::from_dense(d - 1, 0, &out)
            })
            .collect();
        let refs: Vec<&NCPoly> = images.iter().collect();
        let space = span_degree(alg, d - 1, &refs);
        if d == 1 {
            boundaries = start_subspace(alg, space);
        } else {
            boundaries.push_degree(space);
        }
        ranks[d as usize] = boundaries.dim(d - 1);
    }
    if let Some(e) = boundaries.first_non_inclusion(a)? {
        return Err(HomologyError::Unstable { degree: e + 1 });
    }
    let rows = (0..cap)
        .map(|d| {
            let kernel = a.dim(d) - ranks[d as usize];
            let image = ranks[d as usize + 1];
            HomologyRow {
                degree: d,
                kernel,
                image,
                homology: kernel - image,
            }
        })
        .collect();
    Ok(HomologyTable { rows })
}

/// Expected and computed dimension arrays with the first disagreement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeriesCheck {
    pub expected: HilbertSeries,
    pub computed: HilbertSeries,
    pub first_fail: Option<u32>,
}

impl SeriesCheck {
    pub fn compare(expected: HilbertSeries, computed: HilbertSeries) -> Self {
        let first_fail = expected.first_difference(&computed).map(|d| d as u32);
        SeriesCheck {
            expected,
            computed,
            first_fail,
        }
    }

    /// A failed check at `degree` where no series could be produced.
    pub fn failed_at(cap: usize, degree: u32) -> Self {
        SeriesCheck {
            expected: HilbertSeries::zero(cap),
            computed: HilbertSeries::zero(cap),
            first_fail: Some(degree),
        }
    }

    pub fn passed(&self) -> bool {
        self.first_fail.is_none()
    }
}

/// `dims U(L(0)) = (1 + t^{2n-1}) prod_k (1 + t^{2np^k-1}) / (1 - t^{2np^k-2})
/// * dims U(L(∞))` up to `cfg.max_degree`.
pub fn splitting_check(cfg: &PrimeConfig, u0: &HilbertSeries, uinf: &HilbertSeries) -> SeriesCheck {
    let cap = cfg.max_degree as usize;
    let expected = vn_factor_series(cfg, 0)
        .mul(&uinf.truncate(cap))
        .expect("equal caps");
    SeriesCheck::compare(expected, u0.truncate(cap))
}

/// Builds both enveloping algebras and compares their series; a subspace
/// that is not bracket-closed fails at the offending degree.
pub fn verify_splitting(
    cfg: &PrimeConfig,
    l0: &GradedSubspace,
    linf: &GradedSubspace,
) -> Result<SeriesCheck, HomologyError> {
    let cap = cfg.max_degree as usize;
    let u0 = match subalgebra_generated(l0, "L(0)") {
        Ok((_, dims)) => dims.dims,
        Err(HomologyError::NotBracketClosed { degree }) => {
            return Ok(SeriesCheck::failed_at(cap, degree))
        }
        Err(e) => return Err(e),
    };
    let uinf = match subalgebra_generated(linf, "L(inf)") {
        Ok((_, dims)) => dims.dims,
        Err(HomologyError::NotBracketClosed { degree }) => {
            return Ok(SeriesCheck::failed_at(cap, degree))
        }
        Err(e) => return Err(e),
    };
    Ok(splitting_check(cfg, &u0, &uinf))
}

/// Factor relating `U(L_s(0))` to `U(L_s(s+1))`: `(1 + t^{2n-1})`, one
/// `(1 + t^{2np^k-1}) / (1 - t^{2np^k-2})` per `1 <= k < s`, and
/// `1 / (1 - t^{2np^s-2})` (no odd factor: `tau_s` is absent).
pub fn truncated_factor(cfg: &PrimeConfig, s: u32) -> HilbertSeries {
    let cap = cfg.max_degree as usize;
    let mut acc = HilbertSeries::one(cap);
    if s == 0 {
        return acc;
    }
    let fits = |deg: u64| deg <= cap as u64;
    if fits(cfg.tau_degree(0)) {
        acc = acc
            .mul(&exterior_factor(cfg.tau_degree(0) as u32, cap))
            .unwrap();
    }
    for k in 1..s {
        if fits(cfg.tau_degree(k)) {
            acc = acc
                .mul(&exterior_factor(cfg.tau_degree(k) as u32, cap))
                .unwrap();
        }
        if fits(cfg.sigma_degree(k)) {
            acc = acc
                .mul(&polynomial_factor(cfg.sigma_degree(k) as u32, cap))
                .unwrap();
        }
    }
    if fits(cfg.sigma_degree(s)) {
        acc = acc
            .mul(&polynomial_factor(cfg.sigma_degree(s) as u32, cap))
            .unwrap();
    }
    acc
}

/// Both series identities for the truncated filtration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TruncatedCheck {
    /// `dims U(L_s(0))` against the tensor algebra on `2ni - 1`, `i < p^s`.
    pub tensor_oracle: SeriesCheck,
    /// `dims U(L_s(0))` against the factor times `dims U(L_s(s+1))`.
    pub factorization: SeriesCheck,
}

pub fn verify_truncated(
    cfg: &PrimeConfig,
    trunc: &TruncatedFiltration,
) -> Result<TruncatedCheck, HomologyError> {
    let cap = cfg.max_degree as usize;
    let s = trunc.s;
    let (_, u_s0) = subalgebra_generated(&trunc.stages[0], "L_s(0)")?;
    let (_, u_top) = subalgebra_generated(&trunc.stages[s as usize + 1], "L_s(s+1)")?;
    let gen_degrees: Vec<u32> = (1..cfg.p_pow(s))
        .map(|i| 2 * cfg.n as u64 * i - 1)
        .take_while(|&d| d <= cap as u64)
        .map(|d| d as u32)
        .collect();
    let oracle = tensor_algebra_series(&gen_degrees, cap).expect("positive degrees");
    let computed = u_s0.dims.truncate(cap);
    let expected = truncated_factor(cfg, s)
        .mul(&u_top.dims.truncate(cap))
        .expect("equal caps");
    Ok(TruncatedCheck {
        tensor_oracle: SeriesCheck::compare(oracle, computed.clone()),
        factorization: SeriesCheck::compare(expected, computed),
    })
}
