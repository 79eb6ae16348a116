//! Sparse polynomials in Z[t, x1..xn], t-local monomial orderings, leading data
//! and initial forms.
//!
//! Leading terms are the *maximal* terms under [`MonomialOrdering::compare`]. For
//! a t-local ordering this is the term of largest weighted degree, with lower
//! powers of t winning ties. Some texts phrase the same notion as the "least"
//! monomial of a local ordering; every computation here uses the maximum.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{scale_to_int, Int, IVector, QVector, Rat};

/// Exponent vector `t^beta x^alpha`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExpVec {
    pub beta: u32,
    pub alpha: Vec<u32>,
}

impl ExpVec {
    pub fn new(beta: u32, alpha: Vec<u32>) -> Self {
        ExpVec { beta, alpha }
    }

    pub fn one(n: usize) -> Self {
        ExpVec { beta: 0, alpha: vec![0; n] }
    }

    pub fn t_power(k: u32, n: usize) -> Self {
        ExpVec { beta: k, alpha: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn x_degree(&self) -> u32 {
        self.alpha.iter().sum()
    }

    pub fn mul(&self, o: &ExpVec) -> ExpVec {
        ExpVec {
            beta: self.beta + o.beta,
            alpha: self.alpha.iter().zip(&o.alpha).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, o: &ExpVec) -> bool {
        self.beta <= o.beta && self.alpha.iter().zip(&o.alpha).all(|(a, b)| a <= b)
    }

    /// `o / self` when `self` divides `o`.
    pub fn quotient_of(&self, o: &ExpVec) -> Option<ExpVec> {
        if !self.divides(o) {
            return None;
        }
        Some(ExpVec {
            beta: o.beta - self.beta,
            alpha: o.alpha.iter().zip(&self.alpha).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn lcm(&self, o: &ExpVec) -> ExpVec {
        ExpVec {
            beta: self.beta.max(o.beta),
            alpha: self.alpha.iter().zip(&o.alpha).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    /// The exponent as a vector `(beta, alpha_1, .., alpha_n)`.
    pub fn to_ivector(&self) -> IVector {
        let mut v = Vec::with_capacity(self.n() + 1);
        v.push(Int::from(self.beta));
        v.extend(self.alpha.iter().map(|&a| Int::from(a)));
        v
    }
}

/// Canonical storage order, independent of any monomial ordering: x-degree
/// descending, then alpha lexicographically descending, then beta ascending.
impl Ord for ExpVec {
    fn cmp(&self, o: &Self) -> Ordering {
        o.x_degree()
            .cmp(&self.x_degree())
            .then_with(|| o.alpha.cmp(&self.alpha))
            .then_with(|| self.beta.cmp(&o.beta))
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Int,
    pub exp: ExpVec,
}

impl Term {
    pub fn new(coeff: Int, exp: ExpVec) -> Self {
        Term { coeff, exp }
    }

    /// Term divisibility over Z: the coefficient divides and the exponent is
    /// componentwise smaller.
    pub fn divides(&self, o: &Term) -> bool {
        self.exp.divides(&o.exp) && o.coeff.is_multiple_of(&self.coeff)
    }

    /// `o / self` as a term when `self` divides `o`.
    pub fn quotient_of(&self, o: &Term) -> Option<Term> {
        if !self.divides(o) {
            return None;
        }
        Some(Term { coeff: &o.coeff / &self.coeff, exp: self.exp.quotient_of(&o.exp)? })
    }
}

/// Sparse polynomial with terms in canonical storage order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    n: usize,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial { n, terms: Vec::new() }
    }

    pub fn constant(c: Int, n: usize) -> Self {
        Self::monomial(c, ExpVec::one(n))
    }

    pub fn monomial(c: Int, exp: ExpVec) -> Self {
        let n = exp.n();
        if c.is_zero() {
            return Self::zero(n);
        }
        Polynomial { n, terms: vec![Term::new(c, exp)] }
    }

    pub fn from_term(t: Term) -> Self {
        Self::monomial(t.coeff, t.exp)
    }

    /// The variable t.
    pub fn t(n: usize) -> Self {
        Self::monomial(Int::one(), ExpVec::t_power(1, n))
    }

    /// The variable `x_{i+1}` (zero based index into alpha).
    pub fn x(i: usize, n: usize) -> Self {
        let mut alpha = vec![0; n];
        alpha[i] = 1;
        Self::monomial(Int::one(), ExpVec::new(0, alpha))
    }

    /// Builds a polynomial from arbitrary terms, combining equal exponents.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = Term>) -> Self {
        let mut acc: BTreeMap<ExpVec, Int> = BTreeMap::new();
        for t in terms {
            assert_eq!(t.exp.n(), n, "exponent length mismatch");
            *acc.entry(t.exp).or_insert_with(Int::zero) += t.coeff;
        }
        Self::from_map(n, acc)
    }

    fn from_map(n: usize, acc: BTreeMap<ExpVec, Int>) -> Self {
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| Term::new(c, e))
            .collect();
        Polynomial { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff_of(&self, e: &ExpVec) -> Int {
        match self.terms.binary_search_by(|t| t.exp.cmp(e)) {
            Ok(i) => self.terms[i].coeff.clone(),
            Err(_) => Int::zero(),
        }
    }

    pub fn is_x_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => {
                let d = t.exp.x_degree();
                self.terms.iter().all(|s| s.exp.x_degree() == d)
            }
        }
    }

    /// x-degree of the first stored term (the largest x-degree present).
    pub fn x_degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.exp.x_degree())
    }

    pub fn max_t_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.exp.beta).max()
    }

    pub fn min_t_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.exp.beta).min()
    }

    pub fn scale(&self, c: &Int) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|t| Term::new(&t.coeff * c, t.exp.clone())).collect(),
        }
    }

    /// Multiplication by a single term; the canonical order is preserved.
    pub fn mul_term(&self, m: &Term) -> Polynomial {
        if m.coeff.is_zero() {
            return Self::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(&t.coeff * &m.coeff, t.exp.mul(&m.exp)))
                .collect(),
        }
    }

    pub fn mul_t_power(&self, k: u32) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(t.coeff.clone(), ExpVec::new(t.exp.beta + k, t.exp.alpha.clone())))
                .collect(),
        }
    }

    /// Division by `t^k`; every term must carry at least `t^k`.
    pub fn div_t_power(&self, k: u32) -> Option<Polynomial> {
        if self.terms.iter().any(|t| t.exp.beta < k) {
            return None;
        }
        Some(Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(t.coeff.clone(), ExpVec::new(t.exp.beta - k, t.exp.alpha.clone())))
                .collect(),
        })
    }

    fn merge(&self, o: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let other = |t: &Term| if negate { Term::new(-&t.coeff, t.exp.clone()) } else { t.clone() };
        while i < self.terms.len() && j < o.terms.len() {
            match self.terms[i].exp.cmp(&o.terms[j].exp) {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other(&o.terms[j]));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &self.terms[i].coeff - &o.terms[j].coeff
                    } else {
                        &self.terms[i].coeff + &o.terms[j].coeff
                    };
                    if !c.is_zero() {
                        out.push(Term::new(c, self.terms[i].exp.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(o.terms[j..].iter().map(other));
        Polynomial { n: self.n, terms: out }
    }

    /// Terms whose x-part equals `alpha`, i.e. `g_alpha(t) x^alpha`.
    pub fn column(&self, alpha: &[u32]) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().filter(|t| t.exp.alpha == alpha).cloned().collect(),
        }
    }

    /// The coefficient `g_alpha(t)` of `x^alpha` as a polynomial of x-degree 0.
    pub fn t_coefficient(&self, alpha: &[u32]) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|t| t.exp.alpha == alpha)
                .map(|t| Term::new(t.coeff.clone(), ExpVec::t_power(t.exp.beta, self.n)))
                .collect(),
        }
    }

    /// Distinct x-monomials occurring, in canonical order.
    pub fn x_support(&self) -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> = Vec::new();
        for t in &self.terms {
            if out.last() != Some(&t.exp.alpha) {
                out.push(t.exp.alpha.clone());
            }
        }
        out
    }

    /// Formats with explicit variable names: `names[0]` is t, then x1..xn.
    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let c = t.coeff.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            let mut push_var = |name: &str, e: u32| {
                if e == 1 {
                    factors.push(name.to_string());
                } else if e > 1 {
                    factors.push(format!("{name}^{e}"));
                }
            };
            push_var(&names[0], t.exp.beta);
            for (i, &a) in t.exp.alpha.iter().enumerate() {
                push_var(&names[i + 1], a);
            }
            if factors.is_empty() {
                s.push_str(&c.to_string());
            } else {
                if !c.is_one() {
                    s.push_str(&c.to_string());
                    s.push('*');
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }
}

pub fn default_names(n: usize) -> Vec<String> {
    let mut v = vec!["t".to_string()];
    v.extend((1..=n).map(|i| format!("x{i}")));
    v
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&default_names(self.n)))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, o: &Polynomial) -> Polynomial {
        self.merge(o, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        self.merge(o, true)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Int::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        let mut acc: BTreeMap<ExpVec, Int> = BTreeMap::new();
        for a in &self.terms {
            for b in &o.terms {
                *acc.entry(a.exp.mul(&b.exp)).or_insert_with(Int::zero) += &a.coeff * &b.coeff;
            }
        }
        Polynomial::from_map(self.n, acc)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, o: Polynomial) -> Polynomial {
                (&self).$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

/// A chain of rational weight vectors refined by a t-local lexicographic tiebreak.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrdering {
    n: usize,
    weights: Vec<QVector>,
    scaled: Vec<IVector>,
    small: Option<Vec<Vec<i64>>>,
    tiebreak: Vec<usize>,
}

impl MonomialOrdering {
    /// `weights` live in Q^{1+n}; `tiebreak` is a permutation of `0..n` listing
    /// the x-variables from largest to smallest.
    pub fn new(n: usize, weights: Vec<QVector>, tiebreak: Vec<usize>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| w.len() != n + 1) {
            return Err(Error::InvalidInput(format!(
                "weight of length {} in a ring with {} variables",
                w.len(),
                n + 1
            )));
        }
        let mut seen = vec![false; n];
        if tiebreak.len() != n || tiebreak.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::InvalidInput(format!("tiebreak {tiebreak:?} is not a permutation of {n} variables")));
        }
        if let Some(w) = weights.iter().find(|w| !w[0].is_zero()) {
            if w[0].is_positive() {
                return Err(Error::InvalidInput("ordering is not t-local: first nonzero t-weight is positive".into()));
            }
        }
        let scaled: Vec<IVector> = weights.iter().map(|w| scale_to_int(w)).collect();
        let limit = Int::from(1i64 << 40);
        let small = if scaled.iter().flatten().all(|c| c.abs() < limit) {
            Some(
                scaled
                    .iter()
                    .map(|w| w.iter().map(|c| i64::try_from(c).expect("bounded")).collect())
                    .collect(),
            )
        } else {
            None
        };
        Ok(MonomialOrdering { n, weights, scaled, small, tiebreak })
    }

    /// Weight vector followed by the tiebreak `x1 > x2 > .. > xn`.
    pub fn weighted(w: QVector, n: usize) -> Result<Self> {
        Self::new(n, vec![w], (0..n).collect())
    }

    pub fn with_weights(&self, weights: Vec<QVector>) -> Result<Self> {
        Self::new(self.n, weights, self.tiebreak.clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> &[QVector] {
        &self.weights
    }

    pub fn tiebreak(&self) -> &[usize] {
        &self.tiebreak
    }

    pub fn first_weight(&self) -> Option<&QVector> {
        self.weights.first()
    }

    fn weight_cmp(&self, k: usize, a: &ExpVec, b: &ExpVec) -> Ordering {
        if let Some(small) = &self.small {
            let w = &small[k];
            let mut s: i128 = w[0] as i128 * (a.beta as i128 - b.beta as i128);
            for i in 0..self.n {
                s += w[i + 1] as i128 * (a.alpha[i] as i128 - b.alpha[i] as i128);
            }
            return s.cmp(&0);
        }
        let w = &self.scaled[k];
        let mut s = &w[0] * (Int::from(a.beta) - Int::from(b.beta));
        for i in 0..self.n {
            s += &w[i + 1] * (Int::from(a.alpha[i]) - Int::from(b.alpha[i]));
        }
        s.cmp(&Int::zero())
    }

    /// Total order on exponents: weights in sequence, then alpha lexicographically
    /// along the tiebreak (larger wins), then the smaller power of t wins.
    pub fn compare(&self, a: &ExpVec, b: &ExpVec) -> Ordering {
        for k in 0..self.weights.len() {
            let c = self.weight_cmp(k, a, b);
            if c != Ordering::Equal {
                return c;
            }
        }
        for &i in &self.tiebreak {
            let c = a.alpha[i].cmp(&b.alpha[i]);
            if c != Ordering::Equal {
                return c;
            }
        }
        b.beta.cmp(&a.beta)
    }

    /// Checked variant of [`compare`](Self::compare) for untrusted exponent lengths.
    pub fn try_compare(&self, a: &ExpVec, b: &ExpVec) -> Result<Ordering> {
        if a.n() != self.n || b.n() != self.n {
            return Err(Error::InvalidInput("exponent length does not match the ordering".into()));
        }
        Ok(self.compare(a, b))
    }

    pub fn leading_term<'a>(&self, f: &'a Polynomial) -> Result<&'a Term> {
        f.terms
            .iter()
            .max_by(|a, b| self.compare(&a.exp, &b.exp))
            .ok_or_else(|| Error::InvalidInput("leading term of the zero polynomial".into()))
    }

    /// Leading term of a polynomial known to be nonzero.
    pub fn lt<'a>(&self, f: &'a Polynomial) -> &'a Term {
        self.leading_term(f).expect("nonzero polynomial")
    }

    pub fn leading_monomial<'a>(&self, f: &'a Polynomial) -> Result<&'a ExpVec> {
        Ok(&self.leading_term(f)?.exp)
    }

    pub fn leading_coefficient<'a>(&self, f: &'a Polynomial) -> Result<&'a Int> {
        Ok(&self.leading_term(f)?.coeff)
    }

    pub fn tail(&self, f: &Polynomial) -> Polynomial {
        match self.leading_term(f) {
            Err(_) => f.clone(),
            Ok(lt) => {
                let lt = lt.clone();
                Polynomial { n: f.n, terms: f.terms.iter().filter(|t| t.exp != lt.exp).cloned().collect() }
            }
        }
    }

    /// Terms of `f` sorted from largest to smallest.
    pub fn sorted_terms<'a>(&self, f: &'a Polynomial) -> Vec<&'a Term> {
        let mut v: Vec<&Term> = f.terms.iter().collect();
        v.sort_by(|a, b| self.compare(&b.exp, &a.exp));
        v
    }
}

/// Weighted degree `w . (beta, alpha)`.
pub fn weighted_degree(w: &[Rat], e: &ExpVec) -> Rat {
    let mut s = &w[0] * Rat::from_integer(Int::from(e.beta));
    for (wi, a) in w[1..].iter().zip(&e.alpha) {
        s += wi * Rat::from_integer(Int::from(*a));
    }
    s
}

/// Sum of the terms of `f` of maximal `w`-weighted degree; requires `w0 < 0`.
pub fn initial_form(w: &[Rat], f: &Polynomial) -> Result<Polynomial> {
    if w.len() != f.n + 1 {
        return Err(Error::InvalidInput("weight length does not match the ring".into()));
    }
    if !w[0].is_negative() {
        return Err(Error::InvalidInput("initial forms need a weight with negative t-entry".into()));
    }
    Ok(initial_form_any(w, f))
}

/// Initial form without the sign condition on `w0`; used for the second
/// weight of a chain, where only the restriction to one weighted piece matters.
pub fn initial_form_any(w: &[Rat], f: &Polynomial) -> Polynomial {
    let iw = scale_to_int(w);
    let deg = |e: &ExpVec| -> Int {
        let mut s = &iw[0] * Int::from(e.beta);
        for (wi, a) in iw[1..].iter().zip(&e.alpha) {
            s += wi * Int::from(*a);
        }
        s
    };
    let Some(max) = f.terms.iter().map(|t| deg(&t.exp)).max() else { return f.clone() };
    Polynomial { n: f.n, terms: f.terms.iter().filter(|t| deg(&t.exp) == max).cloned().collect() }
}

/// For `f = sum_alpha g_alpha(t) x^alpha`, the sum of the lowest-t term of every
/// `g_alpha`. Every t-local ordering picks the lowest power of t inside a
/// column, so the skeleton does not depend on the ordering.
pub fn t_skeleton(f: &Polynomial) -> Polynomial {
    let mut terms = Vec::new();
    for t in &f.terms {
        if terms.last().map(|s: &Term| &s.exp.alpha) != Some(&t.exp.alpha) {
            terms.push(t.clone());
        }
    }
    Polynomial { n: f.n, terms }
}

/// Generators of an x-homogeneous ideal, optionally with a declared prime `p`
/// for which `p - t` is a generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    pub gens: Vec<Polynomial>,
    pub n: usize,
    pub prime: Option<Int>,
}

impl Ideal {
    /// Validates x-homogeneity; with a prime, `p - t` is appended when absent.
    pub fn new(gens: Vec<Polynomial>, n: usize, prime: Option<Int>) -> Result<Self> {
        if gens.iter().any(|g| g.n() != n) {
            return Err(Error::InvalidInput("generator over a different ring".into()));
        }
        if let Some(g) = gens.iter().find(|g| !g.is_x_homogeneous()) {
            return Err(Error::InvalidInput(format!("generator {g} is not x-homogeneous")));
        }
        let mut gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        if let Some(p) = &prime {
            if *p < Int::from(2) {
                return Err(Error::InvalidInput(format!("prime {p} < 2")));
            }
            let pt = p_minus_t(p, n);
            if !gens.contains(&pt) {
                gens.insert(0, pt);
            }
        }
        Ok(Ideal { gens, n, prime })
    }
}

pub fn p_minus_t(p: &Int, n: usize) -> Polynomial {
    &Polynomial::constant(p.clone(), n) - &Polynomial::t(n)
}
