//! Division with remainder, weak normal forms and standard bases for t-local
//! orderings over Z.
//!
//! Standard bases are computed by homogenizing with respect to t: every
//! polynomial `f` of t-degree at most `D` becomes `sum c t^b x^a s^(D-b)`, which is
//! bihomogeneous in (x) and (s, t). On bihomogeneous polynomials the ordering
//! "x-degree, then (s,t)-degree, then the t-local ordering on the (t, x) part" is
//! a global well-ordering, so a strong Buchberger algorithm over Z terminates.
//! Setting `s = 1` and minimizing yields a strong standard basis for the
//! t-local ordering.

use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exact::{extended_gcd, Int};
use crate::poly::{ExpVec, MonomialOrdering, Polynomial, Term};

pub const DEFAULT_STEP_CAP: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionResult {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

/// `unit * f = sum q_i g_i + remainder` with `lt(unit) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakNFResult {
    pub unit: Polynomial,
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardBasis {
    pub elements: Vec<Polynomial>,
    pub ordering: MonomialOrdering,
}

impl StandardBasis {
    pub fn new(elements: Vec<Polynomial>, ordering: MonomialOrdering) -> Self {
        StandardBasis { elements, ordering }
    }

    pub fn leading_terms(&self) -> Vec<Term> {
        self.elements.iter().map(|g| self.ordering.lt(g).clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn leading_terms(ord: &MonomialOrdering, g: &[Polynomial]) -> Result<Vec<Term>> {
    g.iter().map(|gi| ord.leading_term(gi).cloned()).collect()
}

/// Determinate division: the greatest reducible term of the running remainder
/// is reduced by the first divisor whose leading term divides it.
pub fn hddwr(ord: &MonomialOrdering, f: &Polynomial, g: &[Polynomial], cap: u64) -> Result<DivisionResult> {
    let n = f.n();
    let lts = leading_terms(ord, g)?;
    let mut r = f.clone();
    let mut q = vec![Polynomial::zero(n); g.len()];
    let mut steps = 0u64;
    loop {
        let mut best: Option<(&Term, usize)> = None;
        for term in r.terms() {
            if let Some(i) = lts.iter().position(|l| l.divides(term)) {
                if best.is_none_or(|(b, _)| ord.compare(&term.exp, &b.exp) == Ordering::Greater) {
                    best = Some((term, i));
                }
            }
        }
        let Some((term, i)) = best else { break };
        steps += 1;
        if steps > cap {
            return Err(Error::DivisionDiverged {
                steps: cap,
                trace: format!("determinate division, remainder has {} terms", r.len()),
            });
        }
        let m = lts[i].quotient_of(term).expect("divisible");
        let sub = g[i].mul_term(&m);
        q[i] = &q[i] + &Polynomial::from_term(m);
        r = &r - &sub;
    }
    Ok(DivisionResult { quotients: q, remainder: r })
}

struct Reducer {
    poly: Polynomial,
    lt: Term,
    ecart: u32,
    rep: Rep,
}

enum Rep {
    Basis(usize),
    Partial { unit: Polynomial, quotients: Vec<Polynomial> },
}

fn ecart(p: &Polynomial, lt: &Term) -> u32 {
    p.max_t_degree().unwrap_or(0) - lt.exp.beta
}

/// Weak normal form with Mora's ecart strategy. Earlier partial remainders are
/// admitted as reducers; they only ever divide with a factor `t^k`, `k >= 1`,
/// which keeps the leading term of the unit equal to 1.
pub fn mora_weak_nf(ord: &MonomialOrdering, f: &Polynomial, g: &[Polynomial], cap: u64) -> Result<WeakNFResult> {
    let n = f.n();
    let mut reducers: Vec<Reducer> = Vec::new();
    for (i, gi) in g.iter().enumerate() {
        let lt = ord.leading_term(gi)?.clone();
        reducers.push(Reducer { ecart: ecart(gi, &lt), poly: gi.clone(), lt, rep: Rep::Basis(i) });
    }
    let mut h = f.clone();
    let mut unit = Polynomial::constant(Int::one(), n);
    let mut q = vec![Polynomial::zero(n); g.len()];
    let mut steps = 0u64;
    while !h.is_zero() {
        let lt_h = ord.lt(&h).clone();
        let Some(k) = reducers
            .iter()
            .enumerate()
            .filter(|(_, r)| r.lt.divides(&lt_h))
            .min_by_key(|(i, r)| (r.ecart, *i))
            .map(|(i, _)| i)
        else {
            break;
        };
        steps += 1;
        if steps > cap {
            return Err(Error::DivisionDiverged {
                steps: cap,
                trace: format!("weak normal form, current leading term exponent {:?}", lt_h.exp),
            });
        }
        let e_h = ecart(&h, &lt_h);
        if reducers[k].ecart > e_h {
            reducers.push(Reducer {
                poly: h.clone(),
                lt: lt_h.clone(),
                ecart: e_h,
                rep: Rep::Partial { unit: unit.clone(), quotients: q.clone() },
            });
        }
        let r = &reducers[k];
        let m = Polynomial::from_term(r.lt.quotient_of(&lt_h).expect("divisible"));
        h = &h - &(&m * &r.poly);
        match &r.rep {
            Rep::Basis(i) => q[*i] = &q[*i] + &m,
            Rep::Partial { unit: u, quotients } => {
                unit = &unit - &(&m * u);
                for (qi, pi) in q.iter_mut().zip(quotients) {
                    *qi = &*qi - &(&m * pi);
                }
            }
        }
    }
    Ok(WeakNFResult { unit, quotients: q, remainder: h })
}

fn coeff_lcm(a: &Int, b: &Int) -> Int {
    a.lcm(b)
}

/// Strong S-polynomial over Z.
pub fn spair(ord: &MonomialOrdering, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    let (lf, lg) = (ord.leading_term(f)?, ord.leading_term(g)?);
    let m = lf.exp.lcm(&lg.exp);
    let l = coeff_lcm(&lf.coeff, &lg.coeff);
    let mf = Term::new(&l / &lf.coeff, lf.exp.quotient_of(&m).expect("lcm"));
    let mg = Term::new(&l / &lg.coeff, lg.exp.quotient_of(&m).expect("lcm"));
    Ok(&f.mul_term(&mf) - &g.mul_term(&mg))
}

/// Bezout combination with leading term `gcd(a, b) * lcm(m_f, m_g)`; `None` when
/// one leading coefficient divides the other.
pub fn gpair(ord: &MonomialOrdering, f: &Polynomial, g: &Polynomial) -> Result<Option<Polynomial>> {
    let (lf, lg) = (ord.leading_term(f)?, ord.leading_term(g)?);
    if lf.coeff.is_multiple_of(&lg.coeff) || lg.coeff.is_multiple_of(&lf.coeff) {
        return Ok(None);
    }
    let m = lf.exp.lcm(&lg.exp);
    let (_, u, v) = extended_gcd(&lf.coeff, &lg.coeff)?;
    let mf = Term::new(u, lf.exp.quotient_of(&m).expect("lcm"));
    let mg = Term::new(v, lg.exp.quotient_of(&m).expect("lcm"));
    Ok(Some(&f.mul_term(&mf) + &g.mul_term(&mg)))
}

/// Polynomial homogenized in (s, t): the s-exponent of a term is `d - beta`.
#[derive(Clone, Debug)]
struct HPoly {
    p: Polynomial,
    d: u32,
    lt: Term,
}

impl HPoly {
    fn new(p: Polynomial, d: u32, ord: &MonomialOrdering) -> Option<HPoly> {
        if p.is_zero() {
            return None;
        }
        let lt = ord.lt(&p).clone();
        Some(HPoly { p, d, lt })
    }

    fn sigma(&self) -> u32 {
        self.d - self.lt.exp.beta
    }

    /// Multiplier `m` with `lt(m * self) = term` inside a polynomial of s,t-degree `d`.
    fn divides(&self, term: &Term, d: u32) -> Option<Term> {
        if self.sigma() > d - term.exp.beta {
            return None;
        }
        self.lt.quotient_of(term)
    }
}

struct Pair {
    i: usize,
    j: usize,
    xdeg: u32,
    d: u32,
    lcm: ExpVec,
}

fn make_pair(basis: &[HPoly], i: usize, j: usize) -> Pair {
    let (f, g) = (&basis[i], &basis[j]);
    let lcm = f.lt.exp.lcm(&g.lt.exp);
    let sigma = f.sigma().max(g.sigma());
    Pair { i, j, xdeg: lcm.x_degree(), d: sigma + lcm.beta, lcm }
}

/// Multiplies `f` so that its leading monomial becomes `lcm`.
fn lift_to(f: &HPoly, lcm: &ExpVec, coeff: Int) -> Polynomial {
    let m = Term::new(coeff, f.lt.exp.quotient_of(lcm).expect("lcm"));
    f.p.mul_term(&m)
}

fn reduce_h(ord: &MonomialOrdering, mut p: Polynomial, d: u32, basis: &[HPoly], steps: &mut u64, cap: u64) -> Result<Polynomial> {
    let mut bound: Option<ExpVec> = None;
    loop {
        let mut best: Option<(Term, usize, Term)> = None;
        for term in p.terms() {
            if bound.as_ref().is_some_and(|b| ord.compare(&term.exp, b) != Ordering::Less) {
                continue;
            }
            if best.as_ref().is_some_and(|(b, _, _)| ord.compare(&term.exp, &b.exp) != Ordering::Greater) {
                continue;
            }
            if let Some((k, m)) = basis.iter().enumerate().find_map(|(k, g)| g.divides(term, d).map(|m| (k, m))) {
                best = Some((term.clone(), k, m));
            }
        }
        let Some((term, k, m)) = best else { return Ok(p) };
        *steps += 1;
        if *steps > cap {
            return Err(Error::DivisionDiverged { steps: cap, trace: "standard basis reduction".into() });
        }
        p = &p - &basis[k].p.mul_term(&m);
        bound = Some(term.exp);
    }
}

fn sign_normalized(p: Polynomial, ord: &MonomialOrdering) -> Polynomial {
    if ord.lt(&p).coeff.is_negative() {
        -&p
    } else {
        p
    }
}

/// `u(t) t^k x^a` with `u(0) = +-1` becomes `t^k x^a`, since `u` is a unit.
fn strip_unit_column(p: Polynomial, ord: &MonomialOrdering) -> Polynomial {
    if p.x_support().len() != 1 {
        return p;
    }
    let lt = ord.lt(&p);
    if lt.coeff.is_one() || (-&lt.coeff).is_one() {
        Polynomial::monomial(Int::one(), lt.exp.clone())
    } else {
        p
    }
}

/// Strong standard basis of `F` for a t-local ordering.
pub fn standard_basis(ord: &MonomialOrdering, f: &[Polynomial], cap: u64) -> Result<StandardBasis> {
    if let Some(g) = f.iter().find(|g| !g.is_x_homogeneous()) {
        return Err(Error::InvalidInput(format!("generator {g} is not x-homogeneous")));
    }
    let mut basis: Vec<HPoly> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut steps = 0u64;
    let add = |h: HPoly, basis: &mut Vec<HPoly>, pairs: &mut Vec<Pair>| {
        basis.push(h);
        let j = basis.len() - 1;
        for i in 0..j {
            pairs.push(make_pair(basis, i, j));
        }
    };
    for g in f {
        let d = g.max_t_degree().unwrap_or(0);
        if let Some(h) = HPoly::new(g.clone(), d, ord) {
            add(h, &mut basis, &mut pairs);
        }
    }
    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (p, q) = (&pairs[a], &pairs[b]);
                (p.xdeg, p.d)
                    .cmp(&(q.xdeg, q.d))
                    .then_with(|| ord.compare(&p.lcm, &q.lcm))
                    .then_with(|| (p.j, p.i).cmp(&(q.j, q.i)))
            })
            .expect("nonempty");
        let pair = pairs.swap_remove(best);
        let (f, g) = (basis[pair.i].clone(), basis[pair.j].clone());
        let l = coeff_lcm(&f.lt.coeff, &g.lt.coeff);
        let s = &lift_to(&f, &pair.lcm, &l / &f.lt.coeff) - &lift_to(&g, &pair.lcm, &l / &g.lt.coeff);
        let mut found = Vec::new();
        let r = reduce_h(ord, s, pair.d, &basis, &mut steps, cap)?;
        if !r.is_zero() {
            found.push(r);
        }
        if !f.lt.coeff.is_multiple_of(&g.lt.coeff) && !g.lt.coeff.is_multiple_of(&f.lt.coeff) {
            let (_, u, v) = extended_gcd(&f.lt.coeff, &g.lt.coeff)?;
            let gp = &lift_to(&f, &pair.lcm, u) + &lift_to(&g, &pair.lcm, v);
            let r = reduce_h(ord, gp, pair.d, &basis, &mut steps, cap)?;
            if !r.is_zero() {
                found.push(r);
            }
        }
        for r in found {
            let r = reduce_h(ord, r, pair.d, &basis, &mut steps, cap)?;
            if let Some(h) = HPoly::new(r, pair.d, ord) {
                let h = HPoly::new(sign_normalized(h.p, ord), pair.d, ord).expect("nonzero");
                add(h, &mut basis, &mut pairs);
            }
        }
    }
    let elements: Vec<Polynomial> = basis.into_iter().map(|h| h.p).collect();
    let mut sb = minimize(&StandardBasis::new(elements, ord.clone()));
    sb.elements = sb.elements.into_iter().map(|g| strip_unit_column(sign_normalized(g, ord), ord)).collect();
    sort_basis(&mut sb);
    Ok(sb)
}

/// Orders basis elements by x-degree, then by leading monomial from largest to smallest.
pub fn sort_basis(sb: &mut StandardBasis) {
    let ord = sb.ordering.clone();
    sb.elements.sort_by(|a, b| {
        let (la, lb) = (ord.lt(a), ord.lt(b));
        la.exp
            .x_degree()
            .cmp(&lb.exp.x_degree())
            .then_with(|| ord.compare(&lb.exp, &la.exp))
            .then_with(|| la.coeff.cmp(&lb.coeff))
            .then_with(|| a.terms().len().cmp(&b.terms().len()))
    });
}

/// Removes every element whose leading term is divisible by the leading term
/// of another remaining element. Among equal leading terms the first survives.
pub fn minimize(g: &StandardBasis) -> StandardBasis {
    let ord = &g.ordering;
    let lts: Vec<Term> = g.elements.iter().map(|e| ord.lt(e).clone()).collect();
    let mut kept = vec![true; lts.len()];
    for i in 0..lts.len() {
        let redundant = (0..lts.len()).any(|j| {
            j != i && kept[j] && lts[j].divides(&lts[i]) && (!lts[i].divides(&lts[j]) || j < i)
        });
        if redundant {
            kept[i] = false;
        }
    }
    StandardBasis::new(
        g.elements.iter().zip(&kept).filter(|(_, k)| **k).map(|(e, _)| e.clone()).collect(),
        ord.clone(),
    )
}

/// True when every S- and G-pair of `g` has weak normal form remainder 0.
pub fn pairs_reduce_to_zero(ord: &MonomialOrdering, g: &[Polynomial], cap: u64) -> Result<bool> {
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            let s = spair(ord, &g[i], &g[j])?;
            if !mora_weak_nf(ord, &s, g, cap)?.remainder.is_zero() {
                return Ok(false);
            }
            if let Some(gp) = gpair(ord, &g[i], &g[j])? {
                if !mora_weak_nf(ord, &gp, g, cap)?.remainder.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Membership test for the ideal generated by a standard basis.
pub fn reduces_to_zero(ord: &MonomialOrdering, f: &Polynomial, g: &[Polynomial], cap: u64) -> Result<bool> {
    Ok(mora_weak_nf(ord, f, g, cap)?.remainder.is_zero())
}

/// The leading terms of `g` generate the same term ideal as those of `h`.
pub fn same_leading_ideal(ord: &MonomialOrdering, g: &[Polynomial], h: &[Polynomial]) -> bool {
    let lg: Vec<Term> = g.iter().map(|e| ord.lt(e).clone()).collect();
    let lh: Vec<Term> = h.iter().map(|e| ord.lt(e).clone()).collect();
    lg.iter().all(|a| lh.iter().any(|b| b.divides(a))) && lh.iter().all(|a| lg.iter().any(|b| b.divides(a)))
}
