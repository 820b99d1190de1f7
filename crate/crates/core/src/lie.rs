//! Lie subalgebras of `T(u, v)`: the free Lie algebra on `u, v`, the ideal
//! generated by the `x_i`, its weight filtration, and the descending
//! filtration `L(0) ⊇ L(1) ⊇ ...` whose successive quotients are spanned by
//! `tau_k` and `sigma_k`.
//!
//! Every Lie algebra here is a bracket-closed [`GradedSubspace`] of the
//! tensor algebra under the graded commutator.

use rayon::prelude::*;

use crate::error::LieError;
use crate::plocal::{binomial, reduce_mod_p, vp_binomial, PLocalRational, PrimeConfig};
use crate::tensor::{span_degree, start_subspace, GradedSubspace, NCPoly, TensorAlgebra};

/// `x_i = ad(v)^{i-1}(u)`, of degree `2ni - 1`.
pub fn x_element(alg: &TensorAlgebra, i: u32) -> Result<NCPoly, LieError> {
    assert!(i >= 1, "x_i is indexed from 1");
    let u = alg.generator(0)?;
    let v = alg.generator(1)?;
    let mut x = u;
    for _ in 1..i {
        x = alg.commutator(&v, &x)?;
    }
    Ok(x)
}

/// All `x_i` whose degree fits under the algebra's cap.
pub fn x_elements(alg: &TensorAlgebra) -> Result<Vec<NCPoly>, LieError> {
    let (du, dv) = (alg.generators()[0].degree, alg.generators()[1].degree);
    let mut out = Vec::new();
    let mut i = 1;
    while du + (i - 1) * dv <= alg.cap() {
        out.push(x_element(alg, i)?);
        i += 1;
    }
    Ok(out)
}

/// `tau_k = x_{p^k}`.
pub fn tau_element(alg: &TensorAlgebra, cfg: &PrimeConfig, k: u32) -> Result<NCPoly, LieError> {
    check_fits(alg, cfg.tau_degree(k))?;
    x_element(alg, cfg.p_pow(k) as u32)
}

/// `sigma_k = sum_{0<i<p^k} (C(p^k, i) / 2p) [x_i, x_{p^k - i}]`, with the
/// coefficients reduced mod p. Zero for `k = 0` (empty sum).
pub fn sigma_element(alg: &TensorAlgebra, cfg: &PrimeConfig, k: u32) -> Result<NCPoly, LieError> {
    let degree = cfg.sigma_degree(k);
    check_fits(alg, degree)?;
    let p = cfg.p as u64;
    let m = cfg.p_pow(k);
    let f = alg.field();
    let mut sigma = NCPoly::zero(degree as u32);
    for i in 1..m {
        let c = sigma_coefficient(p, m, i)?;
        let term = alg.commutator(&x_element(alg, i as u32)?, &x_element(alg, (m - i) as u32)?)?;
        sigma = alg.add_scaled(&sigma, &term, f.from_i64(c as i64))?;
    }
    Ok(sigma)
}

/// `C(m, i) / 2p` reduced mod p; errors if it is not p-integral.
pub fn sigma_coefficient(p: u64, m: u64, i: u64) -> Result<u32, LieError> {
    if vp_binomial(p, m, i)? < 1 {
        return Err(LieError::NotPIntegral { m, i });
    }
    let q = PLocalRational::new(p, binomial(m, i)?, 2 * p)
        .map_err(|_| LieError::NotPIntegral { m, i })?;
    Ok(reduce_mod_p(&q))
}

fn check_fits(alg: &TensorAlgebra, degree: u64) -> Result<(), LieError> {
    if degree > alg.cap() as u64 {
        return Err(LieError::Tensor(crate::error::TensorError::Cap {
            degree: degree.min(u32::MAX as u64) as u32,
            cap: alg.cap(),
        }));
    }
    Ok(())
}

/// Degree-by-degree closure: degree `d` is spanned by the seeds of degree
/// `d` and the brackets `[a, k]` of actors `a` with the part already built
/// in degree `d - |a|`.
fn grow(
    alg: &TensorAlgebra,
    cap: u32,
    seeds: &[NCPoly],
    actors: &[NCPoly],
) -> Result<GradedSubspace, LieError> {
    alg.check_degree(cap)?;
    let actors: Vec<&NCPoly> = actors
        .iter()
        .filter(|a| !a.is_zero() && a.degree() >= 1)
        .collect();
    let seeds_in = |d: u32| -> Vec<&NCPoly> {
        seeds
            .iter()
            .filter(|s| s.degree() == d && !s.is_zero())
            .collect()
    };
    let mut out = start_subspace(alg, span_degree(alg, 0, &seeds_in(0)));
    let mut bases = vec![out.basis(0)];
    for d in 1..=cap {
        let jobs: Vec<(&NCPoly, &NCPoly)> = actors
            .iter()
            .filter(|a| a.degree() <= d)
            .flat_map(|a| {
                bases[(d - a.degree()) as usize]
                    .iter()
                    .map(move |k| (*a, k))
            })
            .collect();
        let mut vecs: Vec<NCPoly> = jobs
            .par_iter()
            .map(|(a, k)| alg.commutator(a, k))
            .collect::<Result<_, _>>()?;
        vecs.extend(seeds_in(d).into_iter().cloned());
        let refs: Vec<&NCPoly> = vecs.iter().collect();
        out.push_degree(span_degree(alg, d, &refs));
        bases.push(out.basis(d));
    }
    Ok(out)
}

/// Smallest bracket-closed subspace containing the seeds, up to `cap`.
pub fn bracket_closure(
    alg: &TensorAlgebra,
    seeds: &[NCPoly],
    cap: u32,
) -> Result<GradedSubspace, LieError> {
    grow(alg, cap, seeds, seeds)
}

/// The Lie ideal generated by `ideal_seeds` inside the Lie algebra
/// generated by `ambient_seeds` and `ideal_seeds`.
pub fn ideal_closure(
    alg: &TensorAlgebra,
    ambient_seeds: &[NCPoly],
    ideal_seeds: &[NCPoly],
    cap: u32,
) -> Result<GradedSubspace, LieError> {
    let actors: Vec<NCPoly> = ambient_seeds.iter().chain(ideal_seeds).cloned().collect();
    grow(alg, cap, ideal_seeds, &actors)
}

/// A minimal generating set of a Lie subalgebra `K` (positive degrees)
/// together with its derived algebra `[K, K]`.
#[derive(Debug, Clone)]
pub struct LieGenerators {
    /// Generators by degree, chosen canonically as the basis vectors of
    /// `K_d` independent of `[K, K]_d`.
    pub by_degree: Vec<Vec<NCPoly>>,
    pub decomposables: GradedSubspace,
}

impl LieGenerators {
    pub fn all(&self) -> impl Iterator<Item = &NCPoly> {
        self.by_degree.iter().flatten()
    }
}

/// Computes `[K, K]` degree by degree as `sum_q [q, K]` over the generators
/// found so far. Fails if `K` turns out not to be bracket-closed.
pub fn lie_generators(k: &GradedSubspace) -> Result<LieGenerators, LieError> {
    let alg = k.algebra();
    let cap = k.cap();
    let mut by_degree: Vec<Vec<NCPoly>> = vec![Vec::new()];
    let mut decomposables = start_subspace(alg, span_degree(alg, 0, &[]));
    let bases: Vec<Vec<NCPoly>> = (0..=cap).map(|d| k.basis(d)).collect();
    for d in 1..=cap {
        let mut jobs: Vec<(&NCPoly, &NCPoly)> = Vec::new();
        for a in 1..d {
            for q in &by_degree[a as usize] {
                jobs.extend(bases[(d - a) as usize].iter().map(|b| (q, b)));
            }
        }
        let vecs: Vec<NCPoly> = jobs
            .par_iter()
            .map(|(q, b)| alg.commutator(q, b))
            .collect::<Result<_, _>>()?;
        for v in &vecs {
            if !k.contains(v)? {
                return Err(LieError::NotBracketClosed { degree: d });
            }
        }
        let refs: Vec<&NCPoly> = vecs.iter().collect();
        decomposables.push_degree(span_degree(alg, d, &refs));
        let fresh = k.completion(&decomposables, d)?;
        by_degree.push(fresh);
    }
    Ok(LieGenerators {
        by_degree,
        decomposables,
    })
}

/// Lower central series of `L(0)` with respect to the `x_i`: `W_1 = L(0)`
/// and `W_{j+1} = sum_i [x_i, W_j]`.
#[derive(Debug, Clone)]
pub struct WeightFiltration {
    pieces: Vec<GradedSubspace>,
}

impl WeightFiltration {
    pub fn new(l0: &GradedSubspace, x: &[NCPoly]) -> Result<Self, LieError> {
        let alg = l0.algebra();
        let cap = l0.cap();
        let mut pieces = vec![l0.clone()];
        loop {
            let prev = pieces.last().unwrap();
            if (0..=cap).all(|d| prev.dim(d) == 0) {
                break;
            }
            let mut next = start_subspace(alg, span_degree(alg, 0, &[]));
            for d in 1..=cap {
                let jobs: Vec<(&NCPoly, NCPoly)> = x
                    .iter()
                    .filter(|xi| xi.degree() <= d)
                    .flat_map(|xi| {
                        prev.basis(d - xi.degree())
                            .into_iter()
                            .map(move |w| (xi, w))
                    })
                    .collect();
                let vecs: Vec<NCPoly> = jobs
                    .par_iter()
                    .map(|(xi, w)| alg.commutator(xi, w))
                    .collect::<Result<_, _>>()?;
                let refs: Vec<&NCPoly> = vecs.iter().collect();
                next.push_degree(span_degree(alg, d, &refs));
            }
            pieces.push(next);
        }
        Ok(WeightFiltration { pieces })
    }

    /// `W_j` for `j >= 1`; the zero subspace past the last nonzero piece.
    pub fn piece(&self, j: usize) -> &GradedSubspace {
        assert!(j >= 1, "weights start at 1");
        &self.pieces[(j - 1).min(self.pieces.len() - 1)]
    }

    /// Number of stored pieces, the last one being zero.
    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Largest `j` with `z` in `W_j`.
    pub fn weight(&self, z: &NCPoly) -> Result<u32, LieError> {
        if z.is_zero() {
            return Err(LieError::ZeroWeight);
        }
        if !self.pieces[0].contains(z)? {
            return Err(LieError::Membership { degree: z.degree() });
        }
        let mut j = 1;
        while j < self.pieces.len() && self.pieces[j].contains(z)? {
            j += 1;
        }
        Ok(j as u32)
    }
}

/// One stage of the filtration: `L(k)`, its derived algebra, and the
/// elements spanning the quotient `L(k) / L(k+1)`.
#[derive(Debug, Clone)]
pub struct FiltrationStage {
    pub k: u32,
    pub subspace: GradedSubspace,
    /// `[L(k), L(k)]`.
    pub decomposables: GradedSubspace,
    /// `tau_k`, when its degree fits under the cap.
    pub tau: Option<NCPoly>,
    /// `sigma_k` for `k >= 1`, when its degree fits under the cap.
    pub sigma: Option<NCPoly>,
    /// Whether `dim L(k)_d = dim L(k+1)_d + dim <tau_k, sigma_k>_d` for
    /// every degree up to the cap. Set once the next stage is built.
    pub exact: bool,
}

/// What a filtration step verified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepCertificate {
    pub k: u32,
    /// `(d, dim L(k)_d - dim L(k+1)_d, expected)` for every degree.
    pub codims: Vec<(u32, usize, usize)>,
    pub exact: bool,
    /// `L(k+1)` is bracket-closed.
    pub bracket_closed: bool,
    /// `[L(k), L(k)] + (W_3 ∩ L(k))` lies in `L(k+1)`.
    pub kills_decomposables: bool,
    /// `sigma_{k+1}` lies in `[L(k), L(k)]`, when it fits under the cap.
    pub next_sigma_decomposable: Option<bool>,
}

impl FiltrationStage {
    fn new(
        cfg: &PrimeConfig,
        k: u32,
        subspace: GradedSubspace,
        decomposables: GradedSubspace,
    ) -> Result<Self, LieError> {
        let alg = subspace.algebra();
        let cap = subspace.cap() as u64;
        let tau = if cfg.tau_degree(k) <= cap {
            Some(tau_element(alg, cfg, k)?)
        } else {
            None
        };
        let sigma = if k >= 1 && cfg.sigma_degree(k) <= cap {
            Some(sigma_element(alg, cfg, k)?)
        } else {
            None
        };
        Ok(FiltrationStage {
            k,
            subspace,
            decomposables,
            tau,
            sigma,
            exact: false,
        })
    }

    pub fn marked(&self) -> Vec<(&'static str, &NCPoly)> {
        let mut out = Vec::new();
        if let Some(s) = &self.sigma {
            out.push(("sigma", s));
        }
        if let Some(t) = &self.tau {
            out.push(("tau", t));
        }
        out
    }
}

/// Builds `L(k+1)` from `L(k)`: per degree, `B_d = [L(k), L(k)]_d +
/// (W_3 ∩ L(k))_d` is kept, `tau_k` and `sigma_k` are split off, and the
/// rest of `L(k)_d` is filled back in by canonical completion vectors.
pub fn filtration_step(
    cfg: &PrimeConfig,
    stage: &FiltrationStage,
    weights: &WeightFiltration,
) -> Result<(FiltrationStage, StepCertificate), LieError> {
    let lk = &stage.subspace;
    let k = stage.k;
    let killed = stage.decomposables.sum(&weights.piece(3).intersect(lk)?)?;
    let marked = stage.marked();
    for &(name, m) in &marked {
        if !lk.contains(m)? {
            return Err(LieError::MissingFromStage { k, element: name });
        }
        if killed.contains(m)? {
            return Err(LieError::Degeneracy {
                k,
                degree: m.degree(),
                element: name,
            });
        }
    }
    let marked_vecs: Vec<NCPoly> = marked.iter().map(|(_, m)| (*m).clone()).collect();
    let next = lk.adapted_kernel(&killed, &marked_vecs)?;

    let codims: Vec<(u32, usize, usize)> = (0..=lk.cap())
        .map(|d| {
            let expected = marked.iter().filter(|(_, m)| m.degree() == d).count();
            (d, lk.dim(d) - next.dim(d), expected)
        })
        .collect();
    let exact = codims.iter().all(|&(_, got, want)| got == want);
    let kills_decomposables = killed.is_subspace_of(&next)?;
    let (bracket_closed, next_decomposables) = match lie_generators(&next) {
        Ok(g) => (true, g.decomposables),
        Err(LieError::NotBracketClosed { .. }) => (false, killed.clone()),
        Err(e) => return Err(e),
    };
    let next_stage = FiltrationStage::new(cfg, k + 1, next, next_decomposables)?;
    let next_sigma_decomposable = match &next_stage.sigma {
        Some(s) => Some(stage.decomposables.contains(s)?),
        None => None,
    };
    Ok((
        next_stage,
        StepCertificate {
            k,
            codims,
            exact,
            bracket_closed,
            kills_decomposables,
            next_sigma_decomposable,
        },
    ))
}

/// All Lie-level objects for one configuration, computed up to `cap`.
#[derive(Debug, Clone)]
pub struct CmnModel {
    pub cfg: PrimeConfig,
    pub algebra: TensorAlgebra,
    pub x: Vec<NCPoly>,
    /// The free Lie algebra on `u, v`.
    pub l: GradedSubspace,
    pub weights: WeightFiltration,
    /// `stages[k]` holds `L(k)`; the last stage has no quotient below the
    /// cap and equals `L(∞)` there.
    pub stages: Vec<FiltrationStage>,
    pub certificates: Vec<StepCertificate>,
}

impl CmnModel {
    /// Builds everything up to `cap` (which may exceed `cfg.max_degree`,
    /// e.g. to have one degree of headroom for homology).
    pub fn build(cfg: &PrimeConfig, cap: u32) -> Result<Self, LieError> {
        let alg = TensorAlgebra::uv(cfg, cap)?;
        let u = alg.generator(0)?;
        let v = alg.generator(1)?;
        let x = x_elements(&alg)?;
        let l = bracket_closure(&alg, &[u.clone(), v.clone()], cap)?;
        let l0 = ideal_closure(&alg, &[u, v], &x, cap)?;
        CmnModel::from_parts(cfg, alg, x, l, l0)
    }

    /// Continues from precomputed `L` and `L(0)` (for instance loaded from
    /// a cache).
    pub fn from_parts(
        cfg: &PrimeConfig,
        alg: TensorAlgebra,
        x: Vec<NCPoly>,
        l: GradedSubspace,
        l0: GradedSubspace,
    ) -> Result<Self, LieError> {
        let weights = WeightFiltration::new(&l0, &x)?;
        let d0 = lie_generators(&l0)?.decomposables;
        let mut stages = vec![FiltrationStage::new(cfg, 0, l0, d0)?];
        let mut certificates = Vec::new();
        while !stages.last().unwrap().marked().is_empty() {
            let (next, cert) = filtration_step(cfg, stages.last().unwrap(), &weights)?;
            stages.last_mut().unwrap().exact = cert.exact;
            stages.push(next);
            certificates.push(cert);
        }
        stages.last_mut().unwrap().exact = true;
        Ok(CmnModel {
            cfg: *cfg,
            algebra: alg,
            x,
            l,
            weights,
            stages,
            certificates,
        })
    }

    pub fn cap(&self) -> u32 {
        self.l.cap()
    }

    pub fn l0(&self) -> &GradedSubspace {
        &self.stages[0].subspace
    }

    /// `L(k)`; stages past the last computed one coincide with it below
    /// the cap.
    pub fn stage(&self, k: u32) -> &GradedSubspace {
        &self.stages[(k as usize).min(self.stages.len() - 1)].subspace
    }

    /// `L(∞)` as the intersection of all computed stages.
    pub fn l_infinity(&self) -> Result<GradedSubspace, LieError> {
        let mut acc = self.stages[0].subspace.clone();
        for s in &self.stages[1..] {
            acc = acc.intersect(&s.subspace)?;
        }
        Ok(acc)
    }

    pub fn x(&self, i: u32) -> Option<&NCPoly> {
        self.x.get(i as usize - 1)
    }
}

/// `L_s(0) ⊇ ... ⊇ L_s(s+1)` for the Lie algebra generated by
/// `x_1, ..., x_{p^s - 1}`.
#[derive(Debug, Clone)]
pub struct TruncatedFiltration {
    pub s: u32,
    /// `stages[k] = L_s(k)` for `k = 0..=s+1`.
    pub stages: Vec<GradedSubspace>,
    /// `tau_s` is not in `L_s(0)`, and `L_s(s)` loses nothing in the degree
    /// of `tau_s`, so its quotient is spanned by `sigma_s` alone.
    pub tau_line_absent: bool,
    /// `L_s(s+1) ⊆ L(∞)`.
    pub inside_l_infinity: bool,
}

/// `L_s(0)` is the bracket closure of `x_1..x_{p^s-1}`; `L_s(k) = L_s(0) ∩
/// L(k)` for `1 <= k <= s + 1`. The last stage is the kernel of the
/// `sigma_s` coefficient on `L_s(s)`, since `L(s) = L(s+1) ⊕ <tau_s, sigma_s>`
/// and the `tau_s` coefficient vanishes on `L_s(s)`.
pub fn truncated_filtration(model: &CmnModel, s: u32) -> Result<TruncatedFiltration, LieError> {
    let alg = &model.algebra;
    let cap = model.cap();
    let top = model.cfg.p_pow(s);
    let gens: Vec<NCPoly> = model
        .x
        .iter()
        .take(top.saturating_sub(1).min(model.x.len() as u64) as usize)
        .cloned()
        .collect();
    let ls0 = bracket_closure(alg, &gens, cap)?;
    let mut stages = vec![ls0.clone()];
    for k in 1..=s + 1 {
        stages.push(ls0.intersect(model.stage(k))?);
    }
    let tau_degree = model.cfg.tau_degree(s);
    let tau_line_absent = if s >= 1 && tau_degree <= cap as u64 {
        let tau = tau_element(alg, &model.cfg, s)?;
        let d = tau_degree as u32;
        !ls0.contains(&tau)? && stages[s as usize].dim(d) == stages[s as usize + 1].dim(d)
    } else {
        true
    };
    let inside_l_infinity = stages[s as usize + 1].is_subspace_of(&model.l_infinity()?)?;
    Ok(TruncatedFiltration {
        s,
        stages,
        tau_line_absent,
        inside_l_infinity,
    })
}
