//! Exact polyhedral cones in `R_{<=0} x R^n` and Groebner cone extraction.
//!
//! Cones are given by integer rows: `a . v >= 0` for inequalities, `b . v = 0`
//! for equations, and the implicit halfspace `v_0 <= 0`. Generators are found
//! by the double description method in exact integer arithmetic.

use num_traits::{One, Signed, Zero};

use crate::division::StandardBasis;
use crate::error::{Error, Result};
use crate::exact::{dot_int, dot_int_rat, primitive, primitive_int, rank_int, rat_from_int, rref, to_qvector, IVector, Int, QVector, Rat};
use crate::poly::{initial_form, t_skeleton, MonomialOrdering, Polynomial};

/// `{v : A v >= 0, B v = 0, v_0 <= 0}` in dimension `ambient = 1 + n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HCone {
    pub ambient: usize,
    pub ineqs: Vec<IVector>,
    pub eqs: Vec<IVector>,
}

/// Canonical generators: rays are primitive, reduced modulo the lineality
/// space and sorted; the lineality basis is in reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConeData {
    pub rays: Vec<IVector>,
    pub lineality: Vec<IVector>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub cone: HCone,
    /// Negated primitive defining row.
    pub outer_normal: IVector,
    /// The facet lies in `{0} x R^n`.
    pub boundary: bool,
    /// Index of the defining inequality, `None` for `v_0 <= 0`.
    pub row: Option<usize>,
    /// Sum of the canonical rays of the facet.
    pub interior_point: QVector,
}

/// V-description of an affine slice of a cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    /// Vertices of the slice; empty when the slice contains a line.
    pub vertices: Vec<QVector>,
    /// Recession rays, with each lineality direction listed in both signs.
    pub rays: Vec<IVector>,
    /// Points whose convex hull plus the rays give the slice.
    pub points: Vec<QVector>,
    pub pointed: bool,
}

impl Slice {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// A maximal cone together with the basis and ordering that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerCone {
    pub hcone: HCone,
    pub data: ConeData,
    pub basis: StandardBasis,
    pub initial_forms: Vec<Polynomial>,
    pub interior_weight: QVector,
}

impl HCone {
    pub fn new(ambient: usize, ineqs: Vec<IVector>, eqs: Vec<IVector>) -> Result<Self> {
        if ambient == 0 {
            return Err(Error::InvalidInput("cone in dimension 0".into()));
        }
        if ineqs.iter().chain(&eqs).any(|r| r.len() != ambient) {
            return Err(Error::InvalidInput(format!("cone rows must have length {ambient}")));
        }
        Ok(HCone { ambient, ineqs, eqs })
    }

    /// The halfspace `v_0 <= 0`.
    pub fn halfspace(ambient: usize) -> Self {
        HCone { ambient, ineqs: Vec::new(), eqs: Vec::new() }
    }

    pub fn contains(&self, w: &[Rat]) -> bool {
        w.len() == self.ambient
            && !w[0].is_positive()
            && self.ineqs.iter().all(|a| !dot_int_rat(a, w).is_negative())
            && self.eqs.iter().all(|b| dot_int_rat(b, w).is_zero())
    }

    /// Membership in the relative interior: every inequality that is not an
    /// implied equation holds strictly.
    pub fn contains_relative_interior(&self, w: &[Rat]) -> bool {
        if !self.contains(w) {
            return false;
        }
        let data = dd_rays(self);
        let strict = |a: &IVector, v: &Rat| data.rays.iter().all(|r| dot_int(a, r).is_zero()) || v.is_positive();
        let e0 = implicit_row(self.ambient);
        self.ineqs.iter().chain(std::iter::once(&e0)).all(|a| strict(a, &dot_int_rat(a, w)))
    }

    pub fn intersect(&self, o: &HCone) -> HCone {
        let mut ineqs = self.ineqs.clone();
        ineqs.extend(o.ineqs.iter().cloned());
        let mut eqs = self.eqs.clone();
        eqs.extend(o.eqs.iter().cloned());
        HCone { ambient: self.ambient, ineqs, eqs }
    }

    /// The face `C ∩ ({0} x R^n)`.
    pub fn boundary_cone(&self) -> HCone {
        let mut eqs = self.eqs.clone();
        let mut e0 = vec![Int::zero(); self.ambient];
        e0[0] = Int::one();
        eqs.push(e0);
        HCone { ambient: self.ambient, ineqs: self.ineqs.clone(), eqs }
    }

    pub fn dim(&self) -> usize {
        dd_rays(self).dim
    }
}

pub fn equal(a: &HCone, b: &HCone) -> bool {
    a.ambient == b.ambient && dd_rays(a) == dd_rays(b)
}

fn implicit_row(ambient: usize) -> IVector {
    let mut r = vec![Int::zero(); ambient];
    r[0] = -Int::one();
    r
}

struct Ray {
    v: IVector,
    tight: Vec<bool>,
}

/// Double description of `{v : eqs v = 0, ineqs v >= 0}` in `R^dim`, returning
/// a lineality basis and extreme rays modulo it.
fn double_description(dim: usize, eqs: &[IVector], ineqs: &[IVector]) -> (Vec<IVector>, Vec<IVector>) {
    let mut lin: Vec<IVector> = (0..dim)
        .map(|i| {
            let mut e = vec![Int::zero(); dim];
            e[i] = Int::one();
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();
    let rows: Vec<(&IVector, bool)> = eqs.iter().map(|r| (r, true)).chain(ineqs.iter().map(|r| (r, false))).collect();
    let m = rows.len();
    for (k, &(a, is_eq)) in rows.iter().enumerate() {
        if let Some(pos) = lin.iter().position(|l| !dot_int(a, l).is_zero()) {
            let mut l = lin.swap_remove(pos);
            let mut c = dot_int(a, &l);
            if c.is_negative() {
                l = l.iter().map(|x| -x).collect();
                c = -c;
            }
            for other in lin.iter_mut() {
                let d = dot_int(a, other);
                if !d.is_zero() {
                    *other = primitive_int(&combine(&c, other, &-d, &l));
                }
            }
            for r in rays.iter_mut() {
                let d = dot_int(a, &r.v);
                if !d.is_zero() {
                    r.v = primitive_int(&combine(&c, &r.v, &-d, &l));
                }
                r.tight[k] = true;
            }
            if !is_eq {
                let mut tight = vec![false; m];
                tight[..k].iter_mut().for_each(|t| *t = true);
                rays.push(Ray { v: l, tight });
            }
            continue;
        }
        let vals: Vec<Int> = rays.iter().map(|r| dot_int(a, &r.v)).collect();
        let mut next: Vec<Ray> = Vec::new();
        for (pi, vp) in vals.iter().enumerate() {
            if !vp.is_positive() {
                continue;
            }
            for (ni, vn) in vals.iter().enumerate() {
                if !vn.is_negative() {
                    continue;
                }
                let common: Vec<bool> = rays[pi].tight.iter().zip(&rays[ni].tight).map(|(x, y)| *x && *y).collect();
                let blocked = rays.iter().enumerate().any(|(o, r)| {
                    o != pi && o != ni && common.iter().zip(&r.tight).all(|(c, t)| !*c || *t)
                });
                if blocked {
                    continue;
                }
                let v = primitive_int(&combine(vp, &rays[ni].v, &-vn, &rays[pi].v));
                let mut tight = common;
                tight[k] = true;
                next.push(Ray { v, tight });
            }
        }
        let old = std::mem::take(&mut rays);
        for (r, v) in old.into_iter().zip(&vals) {
            if v.is_zero() {
                let mut r = r;
                r.tight[k] = true;
                rays.push(r);
            } else if v.is_positive() && !is_eq {
                rays.push(r);
            }
        }
        rays.extend(next);
    }
    (lin, rays.into_iter().map(|r| r.v).collect())
}

fn combine(a: &Int, x: &[Int], b: &Int, y: &[Int]) -> IVector {
    x.iter().zip(y).map(|(p, q)| a * p + b * q).collect()
}

fn canonical(dim: usize, lin: Vec<IVector>, rays: Vec<IVector>) -> ConeData {
    let (r, pivots) = rref(&lin.iter().map(|l| to_qvector(l)).collect());
    let basis: Vec<QVector> = r.into_iter().take(pivots.len()).collect();
    let lineality: Vec<IVector> = basis.iter().map(|b| primitive(b).expect("nonzero echelon row")).collect();
    let mut out: Vec<IVector> = Vec::new();
    for ray in rays {
        let mut v = to_qvector(&ray);
        for (row, &pc) in basis.iter().zip(&pivots) {
            let f = v[pc].clone();
            if !f.is_zero() {
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
        if v.iter().all(|x| x.is_zero()) {
            continue;
        }
        let p = primitive(&v).expect("nonzero");
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out.sort();
    let dim_rays = rank_int(&out);
    debug_assert!(lineality.iter().all(|l| l.len() == dim));
    ConeData { dim: lineality.len() + dim_rays, rays: out, lineality }
}

/// Exact generators of the cone.
pub fn dd_rays(c: &HCone) -> ConeData {
    let mut ineqs = vec![implicit_row(c.ambient)];
    ineqs.extend(c.ineqs.iter().cloned());
    let (lin, rays) = double_description(c.ambient, &c.eqs, &ineqs);
    canonical(c.ambient, lin, rays)
}

/// H-description of the cone generated by `rays` and the lineality space
/// spanned by `lineality`. The generators must satisfy `v_0 <= 0`.
pub fn hcone_from_generators(ambient: usize, rays: &[IVector], lineality: &[IVector]) -> HCone {
    let (lin, dual_rays) = double_description(ambient, lineality, rays);
    HCone { ambient, ineqs: dual_rays, eqs: lin }
}

pub fn dim(c: &HCone) -> usize {
    c.dim()
}

fn rays_sum(ambient: usize, rays: &[&IVector]) -> QVector {
    let mut s = vec![Rat::zero(); ambient];
    for r in rays {
        for (x, y) in s.iter_mut().zip(r.iter()) {
            *x += rat_from_int(y);
        }
    }
    s
}

/// The sum of the canonical rays, or of the lineality basis when there are no
/// rays. The first coordinate is negative unless the cone lies in `{0} x R^n`.
pub fn relative_interior_point(c: &HCone) -> QVector {
    let data = dd_rays(c);
    interior_of(&data, c.ambient)
}

fn interior_of(data: &ConeData, ambient: usize) -> QVector {
    if data.rays.is_empty() {
        rays_sum(ambient, &data.lineality.iter().collect::<Vec<_>>())
    } else {
        rays_sum(ambient, &data.rays.iter().collect::<Vec<_>>())
    }
}

/// Codimension-one faces, one per distinct face, in row order with `v_0 <= 0` last.
pub fn facets(c: &HCone) -> Vec<Facet> {
    let data = dd_rays(c);
    if data.dim == 0 {
        return Vec::new();
    }
    let e0 = implicit_row(c.ambient);
    let candidates: Vec<(Option<usize>, &IVector)> =
        c.ineqs.iter().enumerate().map(|(i, r)| (Some(i), r)).chain(std::iter::once((None, &e0))).collect();
    let mut seen: Vec<Vec<bool>> = Vec::new();
    let mut out = Vec::new();
    for (row, a) in candidates {
        let tight: Vec<bool> = data.rays.iter().map(|r| dot_int(a, r).is_zero()).collect();
        let tight_rays: Vec<&IVector> = data.rays.iter().zip(&tight).filter(|(_, t)| **t).map(|(r, _)| r).collect();
        let mut span: Vec<IVector> = data.lineality.clone();
        span.extend(tight_rays.iter().map(|r| (*r).clone()));
        if rank_int(&span) + 1 != data.dim || seen.contains(&tight) {
            continue;
        }
        seen.push(tight);
        let mut cone = c.clone();
        match row {
            Some(i) => {
                cone.ineqs.remove(i);
                cone.eqs.push(a.clone());
            }
            None => cone.eqs.push(a.iter().map(|x| -x).collect()),
        }
        let boundary = tight_rays.iter().all(|r| r[0].is_zero());
        let interior_point = if tight_rays.is_empty() {
            rays_sum(c.ambient, &data.lineality.iter().collect::<Vec<_>>())
        } else {
            rays_sum(c.ambient, &tight_rays)
        };
        let outer_normal = primitive_int(&a.iter().map(|x| -x).collect::<Vec<_>>());
        out.push(Facet { cone, outer_normal, boundary, row, interior_point });
    }
    out
}

/// Inequality rows that define facets, excluding `v_0 <= 0`.
pub fn irredundant_inequalities(c: &HCone) -> Vec<IVector> {
    facets(c).into_iter().filter_map(|f| f.row.map(|i| c.ineqs[i].clone())).collect()
}

/// Primitive echelon basis of the linear equations holding on the cone:
/// the equality rows and every inequality row that vanishes on all of it.
pub fn implicit_equalities(c: &HCone) -> Vec<IVector> {
    let data = dd_rays(c);
    let on_cone = |a: &IVector| data.rays.iter().chain(&data.lineality).all(|r| dot_int(a, r).is_zero());
    let rows: Vec<QVector> = c.eqs.iter().chain(c.ineqs.iter().filter(|a| on_cone(a))).map(|a| to_qvector(a)).collect();
    if rows.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = rref(&rows);
    r.into_iter().take(pivots.len()).map(|b| primitive(&b).expect("nonzero echelon row")).collect()
}

/// The affine slice `C ∩ {v_i = value for (i, value) in fix}`.
pub fn slice(c: &HCone, fix: &[(usize, Rat)]) -> Result<Slice> {
    let d = c.ambient;
    if fix.iter().any(|(i, _)| *i >= d) {
        return Err(Error::InvalidInput(format!("slice coordinate out of range for dimension {d}")));
    }
    let ext = |r: &IVector, last: Int| {
        let mut v = r.clone();
        v.push(last);
        v
    };
    let mut ineqs: Vec<IVector> = c.ineqs.iter().map(|r| ext(r, Int::zero())).collect();
    ineqs.push(ext(&implicit_row(d), Int::zero()));
    let mut lam = vec![Int::zero(); d + 1];
    lam[d] = Int::one();
    ineqs.push(lam);
    let mut eqs: Vec<IVector> = c.eqs.iter().map(|r| ext(r, Int::zero())).collect();
    for (i, value) in fix {
        let mut row = vec![Rat::zero(); d + 1];
        row[*i] = Rat::one();
        row[d] = -value.clone();
        eqs.push(primitive(&row).expect("unit entry"));
    }
    let (lin, rays) = double_description(d + 1, &eqs, &ineqs);
    let data = canonical(d + 1, lin, rays);
    let mut points = Vec::new();
    let mut rec = Vec::new();
    for r in &data.rays {
        if r[d].is_zero() {
            rec.push(r[..d].to_vec());
        } else {
            let l = rat_from_int(&r[d]);
            points.push(r[..d].iter().map(|x| rat_from_int(x) / &l).collect::<QVector>());
        }
    }
    if points.is_empty() {
        return Ok(Slice { vertices: Vec::new(), rays: Vec::new(), points: Vec::new(), pointed: true });
    }
    for l in &data.lineality {
        let v: IVector = l[..d].to_vec();
        rec.push(v.iter().map(|x| -x).collect());
        rec.push(v);
    }
    let pointed = data.lineality.is_empty();
    let vertices = if pointed { points.clone() } else { Vec::new() };
    Ok(Slice { vertices, rays: rec, points, pointed })
}

/// Inequalities and equations of the Groebner cone of `G` at a weight whose
/// initial forms are `H`.
pub fn cone_from_basis(ord: &MonomialOrdering, g: &StandardBasis, h: &[Polynomial]) -> Result<HCone> {
    if g.elements.len() != h.len() {
        return Err(Error::InvalidInput(format!("{} basis elements but {} initial forms", g.elements.len(), h.len())));
    }
    let ambient = ord.n() + 1;
    let mut ineqs: Vec<IVector> = Vec::new();
    let mut eqs: Vec<IVector> = Vec::new();
    for (gi, hi) in g.elements.iter().zip(h) {
        let lead = ord.leading_term(gi)?.exp.to_ivector();
        for s in t_skeleton(gi).terms() {
            let e = s.exp.to_ivector();
            if e != lead {
                push_unique(&mut ineqs, primitive_int(&sub(&lead, &e)));
            }
        }
        let sk: Vec<IVector> = t_skeleton(hi).terms().iter().map(|s| s.exp.to_ivector()).collect();
        let base = if sk.contains(&lead) { lead.clone() } else { sk.first().cloned().unwrap_or(lead) };
        for e in &sk {
            if *e != base {
                push_unique(&mut eqs, sign_normal(primitive_int(&sub(&base, e))));
            }
        }
    }
    ineqs.sort();
    eqs.sort();
    Ok(HCone { ambient, ineqs, eqs })
}

fn sub(a: &[Int], b: &[Int]) -> IVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn sign_normal(v: IVector) -> IVector {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => v.iter().map(|y| -y).collect(),
        _ => v,
    }
}

fn push_unique(rows: &mut Vec<IVector>, r: IVector) {
    if !rows.contains(&r) {
        rows.push(r);
    }
}

impl GroebnerCone {
    /// The maximal cone of an initially reduced standard basis: the initial
    /// form of every element at an interior weight is its leading term.
    pub fn maximal(basis: StandardBasis) -> Result<Self> {
        let ord = basis.ordering.clone();
        let lts: Vec<Polynomial> = basis.elements.iter().map(|g| Ok(Polynomial::from_term(ord.leading_term(g)?.clone()))).collect::<Result<_>>()?;
        let hcone = cone_from_basis(&ord, &basis, &lts)?;
        let data = dd_rays(&hcone);
        let interior_weight = interior_of(&data, hcone.ambient);
        if !interior_weight[0].is_negative() {
            return Err(Error::InvalidInput("Groebner cone lies in v_0 = 0".into()));
        }
        let initial_forms = basis.elements.iter().map(|g| initial_form(&interior_weight, g)).collect::<Result<_>>()?;
        Ok(GroebnerCone { hcone, data, basis, initial_forms, interior_weight })
    }
}
