//! Witness lifting, flips across facets and the Groebner fan traversal.

use std::collections::VecDeque;
use std::fmt;

use num_traits::Signed;
use rayon::prelude::*;

use crate::cone::{cone_from_basis, dd_rays, equal, facets, relative_interior_point, Facet, GroebnerCone, HCone};
use crate::division::{hddwr, sort_basis, standard_basis, StandardBasis, DEFAULT_STEP_CAP};
use crate::error::{Error, Result};
use crate::exact::{rat, to_qvector, Int, QVector, Rat};
use crate::inred::{initially_reduce, initially_reduced_basis, Regime};
use crate::poly::{initial_form, t_skeleton, Ideal, MonomialOrdering, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjacency {
    pub a: usize,
    pub b: usize,
    pub facet: HCone,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    pub maximal_cones: Vec<GroebnerCone>,
    pub adjacency: Vec<Adjacency>,
}

#[derive(Clone, Debug)]
pub struct FanConfig {
    /// Starting weight; the default is `(-1, 1, .., 1)`.
    pub start_weight: Option<QVector>,
    /// Permutation of the x-variables for the lexicographic tiebreaker.
    pub tiebreak: Option<Vec<usize>>,
    pub prime: Option<Int>,
    pub step_cap: u64,
    pub parallel: bool,
    /// Abort once this many cones have been found.
    pub max_cones: Option<usize>,
}

impl Default for FanConfig {
    fn default() -> Self {
        FanConfig { start_weight: None, tiebreak: None, prime: None, step_cap: DEFAULT_STEP_CAP, parallel: false, max_cones: None }
    }
}

impl FanConfig {
    pub fn regime(&self) -> Regime {
        match &self.prime {
            Some(p) => Regime::Prime(p.clone()),
            None => Regime::Generic,
        }
    }
}

/// A traversal that stopped early, with everything computed up to the failure.
#[derive(Clone, Debug)]
pub struct FanFailure {
    pub partial: Fan,
    pub facet: Option<HCone>,
    pub cause: Error,
}

impl fmt::Display for FanFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fan traversal failed after {} cones: {}", self.partial.maximal_cones.len(), self.cause)
    }
}

impl std::error::Error for FanFailure {}

/// `f = sum q_i G[i]` where `h = sum q_i H[i]` by determinate division.
pub fn witness(h: &Polynomial, hs: &[Polynomial], g: &StandardBasis, ord: &MonomialOrdering, cap: u64) -> Result<Polynomial> {
    if hs.len() != g.elements.len() {
        return Err(Error::InvalidInput("initial forms and basis differ in length".into()));
    }
    let div = hddwr(ord, h, hs, cap)?;
    if !div.remainder.is_zero() {
        return Err(Error::WitnessFailed(format!("{h} leaves remainder {}", div.remainder)));
    }
    let mut f = Polynomial::zero(h.n());
    for (q, gi) in div.quotients.iter().zip(&g.elements) {
        if !q.is_zero() {
            f = &f + &(q * gi);
        }
    }
    Ok(f)
}

/// Witnesses of a standard basis `H'` of the initial ideal, and their initial
/// reduction under `ord'`.
pub struct Lifted {
    pub witnesses: Vec<Polynomial>,
    pub basis: StandardBasis,
}

#[allow(clippy::too_many_arguments)]
pub fn lift(
    h_new: &[Polynomial],
    ord_new: &MonomialOrdering,
    hs: &[Polynomial],
    g: &StandardBasis,
    ord: &MonomialOrdering,
    regime: &Regime,
    cap: u64,
) -> Result<Lifted> {
    let witnesses: Vec<Polynomial> = h_new.iter().map(|h| witness(h, hs, g, ord, cap)).collect::<Result<_>>()?;
    let mut basis = initially_reduce(regime, &StandardBasis::new(witnesses.clone(), ord_new.clone()), cap)?;
    sort_basis(&mut basis);
    Ok(Lifted { witnesses, basis })
}

/// The ordering refined by `w`, then `v`, then the tiebreaker of `ord`.
pub fn adjacent_ordering(ord: &MonomialOrdering, w: &[Rat], v: &[Rat]) -> Result<MonomialOrdering> {
    MonomialOrdering::new(ord.n(), vec![w.to_vec(), v.to_vec()], ord.tiebreak().to_vec())
}

/// Flips `G` across the facet with relative interior point `w` and outer normal `v`.
pub fn flip(g: &StandardBasis, v: &[Int], w: &[Rat], regime: &Regime, cap: u64) -> Result<Lifted> {
    if !w.first().is_some_and(|x| x.is_negative()) {
        return Err(Error::InvalidInput("flip needs a facet point with negative first coordinate".into()));
    }
    let ord = &g.ordering;
    let hs: Vec<Polynomial> = g.elements.iter().map(|gi| initial_form(w, gi)).collect::<Result<_>>()?;
    let ord_new = adjacent_ordering(ord, w, &to_qvector(v))?;
    let h_new = standard_basis(&ord_new, &hs, cap)?;
    lift(&h_new.elements, &ord_new, &hs, g, ord, regime, cap)
}

fn with_first_weight(ord: &MonomialOrdering, w: QVector) -> Result<MonomialOrdering> {
    MonomialOrdering::new(ord.n(), vec![w], ord.tiebreak().to_vec())
}

/// The maximal cone of an initially reduced basis at the first weight of its
/// ordering, which must be generic.
pub fn groebner_cone_at(basis: &StandardBasis) -> Result<GroebnerCone> {
    let ord = &basis.ordering;
    let w = ord.first_weight().ok_or_else(|| Error::InvalidInput("ordering has no weight".into()))?.clone();
    let hs: Vec<Polynomial> = basis.elements.iter().map(|g| initial_form(&w, g)).collect::<Result<_>>()?;
    let ties: Vec<&Polynomial> = hs.iter().filter(|h| t_skeleton(h).len() > 1).collect();
    if !ties.is_empty() {
        let sub = StandardBasis::new(basis.elements.clone(), ord.clone());
        let equations = cone_from_basis(ord, &sub, &hs)?.eqs;
        return Err(Error::NonGenericWeight { equations });
    }
    let hcone = cone_from_basis(ord, basis, &hs)?;
    let u = relative_interior_point(&hcone);
    let ord_u = with_first_weight(ord, u.clone())?;
    let basis = StandardBasis::new(basis.elements.clone(), ord_u);
    let data = dd_rays(&hcone);
    let initial_forms = basis.elements.iter().map(|g| initial_form(&u, g)).collect::<Result<_>>()?;
    Ok(GroebnerCone { hcone, data, basis, initial_forms, interior_weight: u })
}

fn tiebreak_of(config: &FanConfig, n: usize) -> Vec<usize> {
    config.tiebreak.clone().unwrap_or_else(|| (0..n).collect())
}

/// The first cone of the traversal: the starting weight is perturbed by
/// `k (0, 1, .., n) / 64` for `k = 0, 1, .., 64` until it is generic; failing
/// that, the cone of the unperturbed ordering is used directly.
pub fn start_cone(ideal: &Ideal, config: &FanConfig) -> Result<GroebnerCone> {
    let n = ideal.n;
    let base = config.start_weight.clone().unwrap_or_else(|| {
        let mut w = vec![rat(1, 1); n + 1];
        w[0] = rat(-1, 1);
        w
    });
    if base.len() != n + 1 {
        return Err(Error::InvalidInput(format!("start weight must have {} entries", n + 1)));
    }
    let tiebreak = tiebreak_of(config, n);
    let regime = config.regime();
    for k in 0..=64i64 {
        let w: QVector = base.iter().enumerate().map(|(i, x)| x + rat(k * i as i64, 64)).collect();
        let ord = MonomialOrdering::new(n, vec![w], tiebreak.clone())?;
        let mut basis = initially_reduced_basis(&regime, &ord, &ideal.gens, config.step_cap)?;
        sort_basis(&mut basis);
        match groebner_cone_at(&basis) {
            Ok(c) => return Ok(c),
            Err(Error::NonGenericWeight { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    let ord = MonomialOrdering::new(n, vec![base], tiebreak)?;
    let mut basis = initially_reduced_basis(&regime, &ord, &ideal.gens, config.step_cap)?;
    sort_basis(&mut basis);
    maximal_reweighted(basis)
}

/// The maximal cone of `basis`, with the ordering replaced by its interior
/// weight and the same tiebreaker.
fn maximal_reweighted(basis: StandardBasis) -> Result<GroebnerCone> {
    let c = GroebnerCone::maximal(basis)?;
    let ord = with_first_weight(&c.basis.ordering, c.interior_weight.clone())?;
    let mut basis = StandardBasis::new(c.basis.elements, ord);
    sort_basis(&mut basis);
    Ok(GroebnerCone { basis, ..c })
}

fn flip_facet(cone: &GroebnerCone, facet: &Facet, regime: &Regime, cap: u64) -> Result<GroebnerCone> {
    maximal_reweighted(flip(&cone.basis, &facet.outer_normal, &facet.interior_point, regime, cap)?.basis)
}

fn flippable(cone: &GroebnerCone) -> Vec<Facet> {
    facets(&cone.hcone).into_iter().filter(|f| !f.boundary).collect()
}

struct Traversal {
    fan: Fan,
    queue: VecDeque<usize>,
}

impl Traversal {
    fn record(&mut self, a: usize, b: usize, facet: &HCone) {
        let (a, b) = (a.min(b), a.max(b));
        if !self.fan.adjacency.iter().any(|e| e.a == a && e.b == b) {
            self.fan.adjacency.push(Adjacency { a, b, facet: facet.clone() });
        }
    }

    fn known(&self, i: usize, w: &[Rat]) -> Option<usize> {
        (0..self.fan.maximal_cones.len()).find(|&j| j != i && self.fan.maximal_cones[j].hcone.contains(w))
    }

    /// Handles one facet of cone `i`, taking a precomputed flip when available.
    fn visit(&mut self, i: usize, facet: &Facet, flipped: impl FnOnce() -> Result<GroebnerCone>, max: Option<usize>) -> Result<()> {
        if let Some(j) = self.known(i, &facet.interior_point) {
            self.record(i, j, &facet.cone);
            return Ok(());
        }
        let c = flipped()?;
        if let Some(j) = self.fan.maximal_cones.iter().position(|d| equal(&d.hcone, &c.hcone)) {
            self.record(i, j, &facet.cone);
            return Ok(());
        }
        if max.is_some_and(|m| self.fan.maximal_cones.len() >= m) {
            return Err(Error::InvalidInput(format!("more than {} maximal cones", self.fan.maximal_cones.len())));
        }
        self.fan.maximal_cones.push(c);
        let j = self.fan.maximal_cones.len() - 1;
        self.record(i, j, &facet.cone);
        self.queue.push_back(j);
        Ok(())
    }
}

/// The Groebner fan of `<F>`: a breadth-first traversal of maximal cones
/// across all facets not contained in `{0} x R^n`.
pub fn groebner_fan(ideal: &Ideal, config: &FanConfig) -> std::result::Result<Fan, FanFailure> {
    let empty = Fan { maximal_cones: Vec::new(), adjacency: Vec::new() };
    let start = start_cone(ideal, config).map_err(|cause| FanFailure { partial: empty.clone(), facet: None, cause })?;
    let mut t = Traversal { fan: Fan { maximal_cones: vec![start], adjacency: Vec::new() }, queue: VecDeque::from([0]) };
    let regime = config.regime();
    let cap = config.step_cap;
    let fail = |t: &Traversal, facet: &Facet, cause: Error| FanFailure { partial: t.fan.clone(), facet: Some(facet.cone.clone()), cause };
    if config.parallel {
        while !t.queue.is_empty() {
            let batch: Vec<usize> = t.queue.drain(..).collect();
            let work: Vec<(usize, Vec<Facet>)> = batch.iter().map(|&i| (i, flippable(&t.fan.maximal_cones[i]))).collect();
            let cones = &t.fan.maximal_cones;
            let pre: Vec<Vec<Option<Result<GroebnerCone>>>> = work
                .par_iter()
                .map(|(i, fs)| {
                    fs.par_iter()
                        .map(|f| {
                            let skip = (0..cones.len()).any(|j| j != *i && cones[j].hcone.contains(&f.interior_point));
                            (!skip).then(|| flip_facet(&cones[*i], f, &regime, cap))
                        })
                        .collect()
                })
                .collect();
            for ((i, fs), results) in work.into_iter().zip(pre) {
                for (f, r) in fs.iter().zip(results) {
                    let cone = t.fan.maximal_cones[i].clone();
                    let res = t.visit(i, f, || r.unwrap_or_else(|| flip_facet(&cone, f, &regime, cap)), config.max_cones);
                    res.map_err(|e| fail(&t, f, e))?;
                }
            }
        }
    } else {
        while let Some(i) = t.queue.pop_front() {
            let cone = t.fan.maximal_cones[i].clone();
            for f in flippable(&cone) {
                let res = t.visit(i, &f, || flip_facet(&cone, &f, &regime, cap), config.max_cones);
                res.map_err(|e| fail(&t, &f, e))?;
            }
        }
    }
    Ok(t.fan)
}

/// The distinct faces `C ∩ ({0} x R^n)` of the maximal cones.
pub fn boundary_fan(fan: &Fan) -> Vec<HCone> {
    let mut out: Vec<HCone> = Vec::new();
    for c in &fan.maximal_cones {
        let b = c.hcone.boundary_cone();
        if !out.iter().any(|o| equal(o, &b)) {
            out.push(b);
        }
    }
    out
}

/// Index of a maximal cone containing `w`.
pub fn locate(fan: &Fan, w: &[Rat]) -> Option<usize> {
    fan.maximal_cones.iter().position(|c| c.hcone.contains(w))
}

impl Fan {
    pub fn len(&self) -> usize {
        self.maximal_cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maximal_cones.is_empty()
    }

    /// Same maximal cones as sets, regardless of order.
    pub fn same_cones(&self, o: &Fan) -> bool {
        self.len() == o.len()
            && self.maximal_cones.iter().all(|c| o.maximal_cones.iter().any(|d| equal(&c.hcone, &d.hcone)))
    }
}
