//! Initial reduction of standard bases.
//!
//! Two regimes are supported. With a declared prime `p` and `p - t` in the
//! ideal, the reduction pipeline is finite: (p-t)-reduction, reduction within
//! one x-degree, and reduction against lower degrees, applied stratum by
//! stratum. Without a prime the same pipeline runs whenever all leading
//! coefficients are units; otherwise a bounded term-by-term reduction is used.

use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::One;

use crate::division::{minimize, reduces_to_zero, standard_basis, StandardBasis};
use crate::error::{Error, Result};
use crate::exact::{extended_gcd, p_valuation, Int};
use crate::poly::{p_minus_t, t_skeleton, ExpVec, MonomialOrdering, Polynomial, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InredContext {
    pub p: Int,
    pub ord: MonomialOrdering,
}

impl InredContext {
    pub fn new(p: Int, ord: MonomialOrdering) -> Result<Self> {
        if !is_prime(&p) {
            return Err(Error::InvalidInput(format!("{p} is not a prime")));
        }
        Ok(InredContext { p, ord })
    }
}

fn is_prime(p: &Int) -> bool {
    if *p < Int::from(2) {
        return false;
    }
    let mut d = Int::from(2);
    while &d * &d <= *p {
        if p.is_multiple_of(&d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Which reduction pipeline applies to an ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// A prime `p` with `p - t` in the ideal.
    Prime(Int),
    /// No prime declared; reduction is bounded by a step cap.
    Generic,
}

/// A work item of the step-by-step reduction: a skeleton tail term and its owner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorkItem {
    pub term: Term,
    pub owner: usize,
}

#[derive(Clone, Copy)]
enum Mode<'a> {
    Prime(&'a Int),
    Generic,
}

/// Replaces p-divisible tail coefficients `c t^b` of the skeleton by
/// `(c / p^l) t^(b+l)`, modulo `p - t`. The leading term is unchanged.
pub fn p_reduce(ctx: &InredContext, g: &Polynomial) -> Polynomial {
    p_reduce_with(&ctx.ord, &ctx.p, g)
}

fn p_reduce_with(ord: &MonomialOrdering, p: &Int, g: &Polynomial) -> Polynomial {
    if g.is_zero() {
        return g.clone();
    }
    let n = g.n();
    let gamma = ord.lt(g).exp.alpha.clone();
    let mut done = g.column(&gamma);
    let mut rest = g - &done;
    while !rest.is_zero() {
        let lt = ord.lt(&rest).clone();
        if lt.coeff.is_multiple_of(p) {
            let l = p_valuation(&lt.coeff, p).expect("nonzero coefficient");
            let c = &lt.coeff / p.pow(l);
            let shifted = Term::new(c, ExpVec::new(lt.exp.beta + l, lt.exp.alpha.clone()));
            rest = &(&rest - &Polynomial::from_term(lt)) + &Polynomial::from_term(shifted);
        } else {
            let col = rest.column(&lt.exp.alpha);
            done = &done + &col;
            rest = &rest - &col;
        }
    }
    debug_assert_eq!(done.n(), n);
    done
}

fn reduce_mode(ord: &MonomialOrdering, mode: Mode, g: Polynomial) -> Polynomial {
    match mode {
        Mode::Prime(p) => p_reduce_with(ord, p, &g),
        Mode::Generic => g,
    }
}

fn unit_lc(mode: Mode, c: &Int) -> bool {
    match mode {
        Mode::Prime(_) => c.is_one(),
        Mode::Generic => c.is_one() || *c == -Int::one(),
    }
}

fn check_same_degree(ord: &MonomialOrdering, mode: Mode, g: &[Polynomial]) -> Result<()> {
    let Some(first) = g.first() else { return Ok(()) };
    let d = first.x_degree();
    for (i, gi) in g.iter().enumerate() {
        if gi.is_zero() || !gi.is_x_homogeneous() || gi.x_degree() != d {
            return Err(Error::InvalidInput("same-degree reduction needs nonzero x-homogeneous input of one degree".into()));
        }
        let lt = ord.lt(gi);
        if !unit_lc(mode, &lt.coeff) {
            return Err(Error::InvalidInput(format!("leading coefficient {} is not a unit", lt.coeff)));
        }
        if g[..i].iter().any(|h| ord.lt(h).exp == lt.exp) {
            return Err(Error::InvalidInput("leading monomials are not pairwise distinct".into()));
        }
    }
    Ok(())
}

fn same_degree(ord: &MonomialOrdering, mode: Mode, input: &[Polynomial]) -> Result<Vec<Polynomial>> {
    check_same_degree(ord, mode, input)?;
    let mut g: Vec<Polynomial> = input.iter().map(|x| reduce_mode(ord, mode, x.clone())).collect();
    let lts: Vec<Term> = g.iter().map(|x| ord.lt(x).clone()).collect();
    let mut order: Vec<usize> = (0..g.len()).collect();
    order.sort_by(|&a, &b| ord.compare(&lts[b].exp, &lts[a].exp));
    let k = order.len();
    let broken = || Error::InvalidInput("column not divisible by the leading t-power".into());
    // Eliminate the leading column of g_i from every later g_j.
    for a in 0..k {
        let i = order[a];
        for &j in &order[a + 1..] {
            let col = g[j].t_coefficient(&lts[i].exp.alpha);
            if col.is_zero() {
                continue;
            }
            let v = col.div_t_power(lts[i].exp.beta).ok_or_else(broken)?;
            let u = g[i].t_coefficient(&lts[i].exp.alpha).div_t_power(lts[i].exp.beta).ok_or_else(broken)?;
            let s = Polynomial::constant(lts[i].coeff.clone(), g[j].n());
            let next = &s * &(&(&u * &g[j]) - &(&v * &g[i]));
            g[j] = reduce_mode(ord, mode, next);
        }
    }
    // Remove from g_i every later leading column that is divisible by its t-power.
    for a in 0..k {
        let i = order[a];
        for &j in &order[a + 1..] {
            let col = g[i].t_coefficient(&lts[j].exp.alpha);
            if col.is_zero() {
                continue;
            }
            let Some(v) = col.div_t_power(lts[j].exp.beta) else { continue };
            let u = g[j].t_coefficient(&lts[j].exp.alpha).div_t_power(lts[j].exp.beta).ok_or_else(broken)?;
            let s = Polynomial::constant(lts[j].coeff.clone(), g[i].n());
            let next = &s * &(&(&u * &g[i]) - &(&v * &g[j]));
            g[i] = reduce_mode(ord, mode, next);
        }
    }
    Ok(g)
}

/// Reduces elements of one x-degree against each other and against `p - t`.
/// Output is in input order with unchanged leading terms.
pub fn inred_same_degree(ctx: &InredContext, g: &[Polynomial]) -> Result<Vec<Polynomial>> {
    same_degree(&ctx.ord, Mode::Prime(&ctx.p), g)
}

fn check_lower(ord: &MonomialOrdering, mode: Mode, g: &[Polynomial], h: &[Polynomial]) -> Result<()> {
    check_same_degree(ord, mode, h)?;
    let Some(d) = h.first().and_then(|x| x.x_degree()) else { return Ok(()) };
    for gi in g {
        let lt = ord.leading_term(gi)?;
        if gi.x_degree().is_none_or(|e| e >= d) || !unit_lc(mode, &lt.coeff) {
            return Err(Error::InvalidInput("lower-degree reducers need smaller x-degree and unit leading coefficient".into()));
        }
    }
    for hi in h {
        let m = &ord.lt(hi).exp;
        if g.iter().any(|gi| ord.lt(gi).exp.divides(m)) {
            return Err(Error::InvalidInput("a leading monomial lies in the leading ideal of the lower degrees".into()));
        }
    }
    Ok(())
}

fn all_alphas(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=d).rev() {
            prefix.push(a);
            rec(n, d - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

fn all_at_once(ord: &MonomialOrdering, mode: Mode, g: &[Polynomial], h: &[Polynomial]) -> Result<Vec<Polynomial>> {
    check_lower(ord, mode, g, h)?;
    let Some(first) = h.first() else { return Ok(Vec::new()) };
    let (n, d) = (first.n(), first.x_degree().expect("nonzero"));
    let lts: Vec<Term> = g.iter().map(|x| ord.lt(x).clone()).collect();
    let mut e = Vec::new();
    for alpha in all_alphas(n, d) {
        let target = ExpVec::new(u32::MAX / 2, alpha.clone());
        let best = lts
            .iter()
            .enumerate()
            .filter(|(_, l)| l.exp.divides(&target))
            .min_by_key(|(i, l)| (l.exp.beta, *i));
        if let Some((i, l)) = best {
            let m = ExpVec::new(0, alpha.iter().zip(&l.exp.alpha).map(|(a, b)| a - b).collect());
            e.push(g[i].mul_term(&Term::new(Int::one(), m)));
        }
    }
    let k = h.len();
    let mut all = h.to_vec();
    all.extend(e);
    let mut out = same_degree(ord, mode, &all)?;
    out.truncate(k);
    Ok(out)
}

/// Reduces `h` (one x-degree) against all multiples of lower-degree elements `g`
/// at once, then against itself.
pub fn inred_all_at_once(ctx: &InredContext, g: &[Polynomial], h: &[Polynomial]) -> Result<Vec<Polynomial>> {
    all_at_once(&ctx.ord, Mode::Prime(&ctx.p), g, h)
}

fn tail_items(ord: &MonomialOrdering, h: &[Polynomial], below: Option<&ExpVec>) -> Vec<WorkItem> {
    let mut out = Vec::new();
    for (i, hi) in h.iter().enumerate() {
        let lt = ord.lt(hi);
        for term in t_skeleton(hi).terms() {
            if term.exp == lt.exp {
                continue;
            }
            if below.is_some_and(|b| ord.compare(&term.exp, b) != Ordering::Less) {
                continue;
            }
            out.push(WorkItem { term: term.clone(), owner: i });
        }
    }
    out
}

fn step_by_step(ord: &MonomialOrdering, mode: Mode, g: &[Polynomial], h: &[Polynomial]) -> Result<Vec<Polynomial>> {
    check_lower(ord, mode, g, h)?;
    let k = h.len();
    let mut cur = same_degree(ord, mode, h)?;
    let mut e: Vec<Polynomial> = Vec::new();
    let lts: Vec<Term> = g.iter().map(|x| ord.lt(x).clone()).collect();
    let mut work = tail_items(ord, &cur[..k], None);
    while !work.is_empty() {
        let idx = (0..work.len())
            .max_by(|&a, &b| {
                ord.compare(&work[a].term.exp, &work[b].term.exp).then_with(|| work[b].owner.cmp(&work[a].owner))
            })
            .expect("nonempty");
        let s = work[idx].term.clone();
        match lts.iter().position(|l| l.divides(&s)) {
            Some(j) => {
                let m = lts[j].exp.quotient_of(&s.exp).expect("divisible");
                e.push(g[j].mul_term(&Term::new(Int::one(), m)));
                let mut all = cur[..k].to_vec();
                all.extend(e.iter().cloned());
                let out = same_degree(ord, mode, &all)?;
                cur = out[..k].to_vec();
                e = out[k..].to_vec();
                work = tail_items(ord, &cur, Some(&s.exp));
            }
            None => {
                work.swap_remove(idx);
            }
        }
    }
    Ok(cur)
}

/// Reduces `h` against lower-degree elements `g`, multiplying them up lazily as
/// tail terms demand.
pub fn inred_step_by_step(ctx: &InredContext, g: &[Polynomial], h: &[Polynomial]) -> Result<Vec<Polynomial>> {
    step_by_step(&ctx.ord, Mode::Prime(&ctx.p), g, h)
}

fn strata(ord: &MonomialOrdering, mode: Mode, elems: Vec<Polynomial>) -> Result<Vec<Polynomial>> {
    let mut degrees: Vec<u32> = elems.iter().map(|g| g.x_degree().expect("nonzero")).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let mut done: Vec<Polynomial> = Vec::new();
    for d in degrees {
        let h: Vec<Polynomial> = elems.iter().filter(|g| g.x_degree() == Some(d)).cloned().collect();
        let reduced = step_by_step(ord, mode, &done, &h)?;
        done.extend(reduced);
    }
    Ok(done)
}

/// Initial reduction of an existing standard basis in the prime regime. The
/// basis must contain `p - t` or a multiple generating the same leading term.
pub fn reduce_prime_basis(ctx: &InredContext, sb: &StandardBasis) -> Result<StandardBasis> {
    let (ord, p) = (&ctx.ord, &ctx.p);
    let n = ord.n();
    let pt = p_minus_t(p, n);
    let mut kept = Vec::new();
    for g in &sb.elements {
        let lt = ord.leading_term(g)?.clone();
        if lt.coeff.is_multiple_of(p) {
            continue;
        }
        let g = if lt.coeff.is_one() {
            g.clone()
        } else {
            let (one, a, b) = extended_gcd(&lt.coeff, p)?;
            if !one.is_one() {
                return Err(Error::RegimeError(format!("{} and {p} are not coprime", lt.coeff)));
            }
            let shift = pt.mul_term(&Term::new(b, lt.exp.clone()));
            &g.scale(&a) + &shift
        };
        kept.push(g);
    }
    let kept = minimize(&StandardBasis::new(kept, ord.clone())).elements;
    let mut out = vec![pt];
    out.extend(strata(ord, Mode::Prime(p), kept)?);
    Ok(StandardBasis::new(out, ord.clone()))
}

/// Initially reduced standard basis of `<F>` in the prime regime.
pub fn initially_reduced_standard_basis(ctx: &InredContext, f: &[Polynomial], cap: u64) -> Result<StandardBasis> {
    let sb = standard_basis(&ctx.ord, f, cap)?;
    let pt = p_minus_t(&ctx.p, ctx.ord.n());
    if !reduces_to_zero(&ctx.ord, &pt, &sb.elements, cap)? {
        return Err(Error::RegimeError(format!(
            "{} - t is not in the ideal; use the generic reduction instead",
            ctx.p
        )));
    }
    reduce_prime_basis(ctx, &sb)
}

/// Initial reduction without a prime. If it returns, the output is initially
/// reduced with the same leading terms and the same ideal.
pub fn generic_initial_reduce(ord: &MonomialOrdering, sb: &StandardBasis, cap: u64) -> Result<StandardBasis> {
    let g = minimize(&StandardBasis::new(sb.elements.clone(), ord.clone())).elements;
    let units = g.iter().all(|x| unit_lc(Mode::Generic, &ord.lt(x).coeff));
    let out = if units { strata(ord, Mode::Generic, g)? } else { termwise(ord, g, cap)? };
    Ok(StandardBasis::new(out, ord.clone()))
}

/// t-degree growth past the input after which the termwise reduction is
/// treated as an infinite power-series reduction.
const TERMWISE_T_SLACK: u32 = 64;

fn termwise(ord: &MonomialOrdering, mut g: Vec<Polynomial>, cap: u64) -> Result<Vec<Polynomial>> {
    let lts: Vec<Term> = g.iter().map(|x| ord.lt(x).clone()).collect();
    let t_bound = g.iter().filter_map(|x| x.max_t_degree()).max().unwrap_or(0) + TERMWISE_T_SLACK;
    let mut steps = 0u64;
    for i in 0..g.len() {
        loop {
            let sk = t_skeleton(&g[i]);
            let hit = ord
                .sorted_terms(&sk)
                .into_iter()
                .filter(|s| s.exp != lts[i].exp)
                .find_map(|s| lts.iter().position(|l| l.divides(s)).map(|j| (s.clone(), j)));
            let Some((s, j)) = hit else { break };
            steps += 1;
            if steps > cap {
                return Err(Error::InredDiverged { steps: cap });
            }
            let m = lts[j].quotient_of(&s).expect("divisible");
            let sub = g[j].mul_term(&m);
            g[i] = &g[i] - &sub;
            if g[i].max_t_degree().is_some_and(|d| d > t_bound) {
                return Err(Error::InredDiverged { steps });
            }
        }
    }
    Ok(g)
}

/// Regime dispatch for initial reduction of an existing standard basis.
pub fn initially_reduce(regime: &Regime, sb: &StandardBasis, cap: u64) -> Result<StandardBasis> {
    match regime {
        Regime::Prime(p) => reduce_prime_basis(&InredContext::new(p.clone(), sb.ordering.clone())?, sb),
        Regime::Generic => generic_initial_reduce(&sb.ordering, sb, cap),
    }
}

/// Initially reduced standard basis of `<F>` in the given regime.
pub fn initially_reduced_basis(regime: &Regime, ord: &MonomialOrdering, f: &[Polynomial], cap: u64) -> Result<StandardBasis> {
    match regime {
        Regime::Prime(p) => initially_reduced_standard_basis(&InredContext::new(p.clone(), ord.clone())?, f, cap),
        Regime::Generic => {
            let sb = standard_basis(ord, f, cap)?;
            generic_initial_reduce(ord, &sb, cap)
        }
    }
}

/// Minimal, and no skeleton tail term of any element is divisible by a leading term.
pub fn is_initially_reduced(ord: &MonomialOrdering, g: &[Polynomial]) -> bool {
    if g.iter().any(|x| x.is_zero()) {
        return false;
    }
    let lts: Vec<Term> = g.iter().map(|x| ord.lt(x).clone()).collect();
    for (i, li) in lts.iter().enumerate() {
        if lts.iter().enumerate().any(|(j, lj)| j != i && lj.divides(li)) {
            return false;
        }
    }
    for (gi, li) in g.iter().zip(&lts) {
        for s in t_skeleton(gi).terms() {
            if s.exp != li.exp && lts.iter().any(|l| l.divides(s)) {
                return false;
            }
        }
    }
    true
}

/// Zero test used for the regime decision of callers.
pub fn has_unit_leading_coefficients(ord: &MonomialOrdering, g: &[Polynomial]) -> bool {
    g.iter().all(|x| !x.is_zero() && unit_lc(Mode::Generic, &ord.lt(x).coeff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, qvec};

    fn e(beta: u32, alpha: &[u32]) -> ExpVec {
        ExpVec::new(beta, alpha.to_vec())
    }

    fn p(n: usize, terms: &[(i64, u32, &[u32])]) -> Polynomial {
        Polynomial::from_terms(n, terms.iter().map(|&(c, b, a)| Term::new(int(c), e(b, a))))
    }

    fn ctx3() -> InredContext {
        InredContext::new(int(2), MonomialOrdering::weighted(qvec(&[-1, 1, 1, 1]), 3).unwrap()).unwrap()
    }

    #[test]
    fn p_reduce_examples() {
        let c = ctx3();
        let g = p(3, &[(1, 0, &[2, 0, 0]), (-1, 2, &[2, 0, 0]), (-2, 2, &[0, 0, 2]), (-1, 3, &[0, 0, 2])]);
        let want = p(3, &[(1, 0, &[2, 0, 0]), (-1, 2, &[2, 0, 0]), (-1, 4, &[0, 0, 2])]);
        assert_eq!(p_reduce(&c, &g), want);
        assert_eq!(p_reduce(&c, &want), want);
        let c2 = InredContext::new(int(2), MonomialOrdering::weighted(qvec(&[-1, 1, 1]), 2).unwrap()).unwrap();
        let g = p(2, &[(1, 0, &[1, 0]), (2, 1, &[0, 1])]);
        assert_eq!(p_reduce(&c2, &g), p(2, &[(1, 0, &[1, 0]), (1, 2, &[0, 1])]));
    }

    #[test]
    fn same_degree_keeps_reduced_input() {
        let c = InredContext::new(int(2), MonomialOrdering::weighted(qvec(&[-1, 3, 3, 3]), 3).unwrap()).unwrap();
        let g1 = p(3, &[(1, 0, &[1, 0, 0]), (-1, 3, &[1, 0, 0]), (1, 3, &[0, 0, 1]), (-1, 4, &[0, 0, 1])]);
        let g2 = p(3, &[(1, 0, &[0, 1, 0]), (-1, 3, &[0, 1, 0]), (1, 2, &[0, 0, 1]), (-1, 4, &[0, 0, 1])]);
        let out = inred_same_degree(&c, &[g1.clone(), g2.clone()]).unwrap();
        assert_eq!(out, vec![g1, g2]);
    }

    #[test]
    fn same_degree_single_element_is_p_reduce() {
        let c = ctx3();
        let g = p(3, &[(1, 0, &[2, 0, 0]), (-1, 2, &[2, 0, 0]), (-2, 2, &[0, 0, 2]), (-1, 3, &[0, 0, 2])]);
        assert_eq!(inred_same_degree(&c, std::slice::from_ref(&g)).unwrap(), vec![p_reduce(&c, &g)]);
    }

    #[test]
    fn same_degree_rejects_bad_input() {
        let c = ctx3();
        let g = p(3, &[(3, 0, &[2, 0, 0])]);
        assert!(inred_same_degree(&c, &[g]).is_err());
        let x = p(3, &[(1, 0, &[1, 0, 0])]);
        assert!(inred_same_degree(&c, &[x.clone(), x]).is_err());
    }

    #[test]
    fn all_at_once_eliminates_lower_multiples() {
        let c = InredContext::new(int(2), MonomialOrdering::weighted(qvec(&[-1, 1, 1]), 2).unwrap()).unwrap();
        let g = vec![p(2, &[(1, 0, &[1, 0])])];
        let h = vec![p(2, &[(1, 0, &[0, 2]), (1, 1, &[1, 1])])];
        let out = inred_all_at_once(&c, &g, &h).unwrap();
        assert_eq!(c.ord.lt(&out[0]), c.ord.lt(&h[0]));
        let mut all = g.clone();
        all.extend(out.iter().cloned());
        assert!(is_initially_reduced(&c.ord, &all));
        let sb = standard_basis(&c.ord, &all, 1000).unwrap();
        assert!(reduces_to_zero(&c.ord, &h[0], &sb.elements, 1000).unwrap());
        let out2 = inred_step_by_step(&c, &g, &h).unwrap();
        assert_eq!(c.ord.lt(&out2[0]), c.ord.lt(&h[0]));
        let mut all2 = g.clone();
        all2.extend(out2);
        assert!(is_initially_reduced(&c.ord, &all2));
    }

    #[test]
    fn empty_lower_degree_equals_same_degree() {
        let c = ctx3();
        let h = vec![
            p(3, &[(1, 0, &[2, 0, 0]), (1, 1, &[0, 2, 0]), (-1, 2, &[0, 0, 2])]),
            p(3, &[(1, 0, &[0, 2, 0]), (1, 1, &[2, 0, 0]), (1, 1, &[0, 0, 2]), (1, 2, &[0, 0, 2])]),
        ];
        let same = inred_same_degree(&c, &h).unwrap();
        assert_eq!(inred_all_at_once(&c, &[], &h).unwrap(), same);
        assert_eq!(inred_step_by_step(&c, &[], &h).unwrap(), same);
    }

    #[test]
    fn driver_examples() {
        let ord = MonomialOrdering::weighted(qvec(&[-1, 1, 1]), 2).unwrap();
        let c = InredContext::new(int(2), ord.clone()).unwrap();
        let f = vec![
            p(2, &[(2, 0, &[0, 0]), (-1, 1, &[0, 0])]),
            p(2, &[(1, 0, &[1, 2]), (-1, 2, &[0, 3])]),
            p(2, &[(1, 0, &[2, 0]), (-1, 3, &[0, 2])]),
        ];
        let sb = initially_reduced_standard_basis(&c, &f, 100_000).unwrap();
        let mut want = f.clone();
        want.push(p(2, &[(1, 3, &[0, 4])]));
        let mut got = sb.elements.clone();
        got.sort_by_key(|g| g.to_string());
        want.sort_by_key(|g| g.to_string());
        assert_eq!(got, want);
        assert!(is_initially_reduced(&ord, &sb.elements));

        let c0 = InredContext::new(int(3), MonomialOrdering::weighted(qvec(&[-1]), 0).unwrap()).unwrap();
        let pt = p(0, &[(3, 0, &[]), (-1, 1, &[])]);
        let sb = initially_reduced_standard_basis(&c0, std::slice::from_ref(&pt), 1000).unwrap();
        assert_eq!(sb.elements, vec![pt]);
    }

    #[test]
    fn driver_requires_p_minus_t() {
        let ord = MonomialOrdering::weighted(qvec(&[-1, 1]), 1).unwrap();
        let c = InredContext::new(int(2), ord).unwrap();
        let f = vec![p(1, &[(1, 0, &[1])])];
        assert!(matches!(initially_reduced_standard_basis(&c, &f, 1000), Err(Error::RegimeError(_))));
    }

    #[test]
    fn is_initially_reduced_examples() {
        let o0 = MonomialOrdering::weighted(qvec(&[-1]), 0).unwrap();
        assert!(is_initially_reduced(&o0, &[p(0, &[(1, 0, &[]), (-1, 1, &[])])]));
        let o = MonomialOrdering::weighted(qvec(&[-1, 1, 1, 1]), 3).unwrap();
        let g = vec![
            p(3, &[(2, 0, &[0, 0, 0]), (-1, 1, &[0, 0, 0])]),
            p(3, &[(1, 0, &[1, 0, 0]), (1, 2, &[0, 1, 0]), (1, 3, &[0, 0, 1])]),
            p(3, &[(1, 0, &[0, 1, 0]), (1, 1, &[1, 0, 0]), (1, 2, &[0, 0, 1])]),
        ];
        assert!(!is_initially_reduced(&o, &g));
        let xy = vec![p(3, &[(1, 0, &[1, 0, 0])]), p(3, &[(1, 0, &[0, 1, 0])])];
        assert!(is_initially_reduced(&o, &xy));
    }

    #[test]
    fn generic_examples() {
        let (x, y, z) = (&[1u32, 0, 0][..], &[0u32, 1, 0][..], &[0u32, 0, 1][..]);
        let o = MonomialOrdering::new(3, vec![qvec(&[-1, 0, 1, 0]), qvec(&[0, -1, 0, 0])], vec![0, 1, 2]).unwrap();
        let sb = StandardBasis::new(vec![p(3, &[(1, 0, z), (1, 0, x)]), p(3, &[(1, 0, y), (1, 0, z)])], o.clone());
        let out = generic_initial_reduce(&o, &sb, 1000).unwrap();
        assert_eq!(out.elements, vec![p(3, &[(1, 0, z), (1, 0, x)]), p(3, &[(1, 0, y), (-1, 0, x)])]);
        assert_eq!(generic_initial_reduce(&o, &out, 1000).unwrap().elements, out.elements);

        let o = MonomialOrdering::new(3, vec![qvec(&[-1, -1, -1, 0]), qvec(&[0, 1, -1, 0])], vec![0, 1, 2]).unwrap();
        let sb = StandardBasis::new(vec![p(3, &[(1, 0, z), (1, 0, x)]), p(3, &[(-1, 0, x), (1, 0, y)])], o.clone());
        let out = generic_initial_reduce(&o, &sb, 1000).unwrap();
        assert_eq!(out.elements, vec![p(3, &[(1, 0, z), (1, 0, y)]), p(3, &[(-1, 0, x), (1, 0, y)])]);
    }

    #[test]
    fn same_degree_trace() {
        let c = ctx3();
        let (a, b, d) = (&[2u32, 0, 0][..], &[0u32, 2, 0][..], &[0u32, 0, 2][..]);
        let g = vec![
            p(3, &[(1, 0, a), (1, 1, b), (-1, 2, d)]),
            p(3, &[(1, 0, b), (1, 1, a), (1, 1, d), (1, 2, d)]),
            p(3, &[(1, 3, d), (1, 4, a), (1, 4, b), (1, 5, b)]),
        ];
        let want = vec![
            p(3, &[(1, 0, a), (-3, 2, a), (1, 4, a), (-1, 5, a), (1, 6, a), (1, 7, a)]),
            p(3, &[(1, 0, b), (-1, 2, b), (1, 1, d), (1, 2, d), (1, 3, d)]),
            p(3, &[(1, 3, d), (-2, 5, d), (-1, 7, d), (-1, 8, d)]),
        ];
        assert_eq!(inred_same_degree(&c, &g).unwrap(), want);
    }

    #[test]
    fn termwise_fallback_reduces() {
        let o = MonomialOrdering::weighted(qvec(&[-1, 1, 1]), 2).unwrap();
        let g = vec![p(2, &[(2, 0, &[1, 0]), (2, 1, &[0, 1])]), p(2, &[(3, 0, &[0, 1])])];
        let out = generic_initial_reduce(&o, &StandardBasis::new(g, o.clone()), 100).unwrap();
        assert!(is_initially_reduced(&o, &out.elements));
    }
}
