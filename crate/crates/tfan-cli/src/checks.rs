//! Invariant suites run by the `check` command and the acceptance tests.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tfan::cone::{dd_rays, equal, relative_interior_point, HCone};
use tfan::exact::{dot_int_rat, rank_int, rat, IVector, Int, QVector, Rat};
use tfan::fan::Fan;
use tfan::poly::{initial_form_any, t_skeleton, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl CheckResult {
    fn from(name: &'static str, r: Result<String, String>) -> Self {
        match r {
            Ok(detail) => CheckResult { name, pass: true, detail },
            Err(detail) => CheckResult { name, pass: false, detail },
        }
    }
}

/// A rational weight with negative first coordinate.
pub fn random_weight(rng: &mut ChaCha8Rng, ambient: usize) -> QVector {
    let mut w: QVector = (0..ambient).map(|_| rat(rng.gen_range(-20..=20), rng.gen_range(1..=7))).collect();
    w[0] = rat(-rng.gen_range(1..=20), rng.gen_range(1..=7));
    w
}

pub fn coverage(fan: &Fan, ambient: usize, samples: usize, seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let w = random_weight(&mut rng, ambient);
        let hits: Vec<usize> = (0..fan.len()).filter(|&i| fan.maximal_cones[i].hcone.contains(&w)).collect();
        if hits.is_empty() {
            return Err(format!("weight {w:?} lies in no maximal cone"));
        }
    }
    Ok(format!("{samples} weights covered"))
}

/// `face` is a face of `c`: it equals the face of `c` cut out by the rows of
/// `c` that vanish on its relative interior point.
pub fn is_face(face: &HCone, c: &HCone) -> bool {
    let x = relative_interior_point(face);
    if !c.contains(&x) || !face.contains(&x) {
        return false;
    }
    let mut smallest = c.clone();
    let (tight, loose): (Vec<IVector>, Vec<IVector>) = c.ineqs.iter().cloned().partition(|a| dot_int_rat(a, &x).is_zero());
    smallest.ineqs = loose;
    smallest.eqs.extend(tight);
    if x[0].is_zero() {
        let mut e0 = vec![Int::zero(); c.ambient];
        e0[0] = Int::one();
        smallest.eqs.push(e0);
    }
    equal(&smallest, face)
}

pub fn face_to_face(fan: &Fan) -> Result<String, String> {
    let mut pairs = 0;
    for i in 0..fan.len() {
        for j in i + 1..fan.len() {
            let (a, b) = (&fan.maximal_cones[i].hcone, &fan.maximal_cones[j].hcone);
            let x = a.intersect(b);
            if !is_face(&x, a) || !is_face(&x, b) {
                return Err(format!("intersection of cones {i} and {j} is not a face of both"));
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs"))
}

pub fn homogeneity_lineality(fan: &Fan) -> Result<String, String> {
    for (i, c) in fan.maximal_cones.iter().enumerate() {
        let data = dd_rays(&c.hcone);
        let mut v = vec![Int::one(); c.hcone.ambient];
        v[0] = Int::zero();
        let mut span = data.lineality.clone();
        let r = rank_int(&span);
        span.push(v);
        if rank_int(&span) != r {
            return Err(format!("cone {i} lacks (0,1,..,1) in its lineality space"));
        }
    }
    Ok(format!("{} cones", fan.len()))
}

fn in_chain(w: &[Rat], v: &[Rat], g: &Polynomial) -> Polynomial {
    initial_form_any(v, &initial_form_any(w, g))
}

/// A positive step `e` such that `w + e v` orders every pair of terms of the
/// given polynomials like the chain `(w, v)` does.
fn chain_step(w: &[Rat], v: &[Rat], gs: &[&Polynomial]) -> Rat {
    let mut best: Option<Rat> = None;
    for g in gs {
        let exps: Vec<IVector> = g.terms().iter().map(|t| t.exp.to_ivector()).collect();
        for a in &exps {
            for b in &exps {
                let d: IVector = a.iter().zip(b).map(|(x, y)| x - y).collect();
                let (dw, dv) = (dot_int_rat(&d, w), dot_int_rat(&d, v));
                if !dw.is_zero() && !dv.is_zero() {
                    let r = (dw / dv).abs();
                    if best.as_ref().is_none_or(|m| r < *m) {
                        best = Some(r);
                    }
                }
            }
        }
    }
    best.map_or(Rat::one(), |m| m / rat(2, 1))
}

/// For every adjacency: initial forms along `(w, ±v)` agree with those at
/// `w ± e v` and pick out the leading terms of the cone on that side.
pub fn chain_consistency(fan: &Fan) -> Result<String, String> {
    for e in &fan.adjacency {
        let (ca, cb) = (&fan.maximal_cones[e.a], &fan.maximal_cones[e.b]);
        let w = relative_interior_point(&e.facet);
        let v: QVector = ca.interior_weight.iter().zip(&cb.interior_weight).map(|(x, y)| y - x).collect();
        let neg: QVector = v.iter().map(|x| -x).collect();
        let gs: Vec<&Polynomial> = ca.basis.elements.iter().chain(&cb.basis.elements).collect();
        let step = chain_step(&w, &v, &gs);
        for (c, dir) in [(cb, &v), (ca, &neg)] {
            let shifted: QVector = w.iter().zip(dir.iter()).map(|(x, y)| x + &step * y).collect();
            for g in &c.basis.elements {
                let chain = in_chain(&w, dir, g);
                if chain != initial_form_any(&shifted, g) {
                    return Err(format!("chain initial form of {g} differs from the shifted weight between {} and {}", e.a, e.b));
                }
                let lt = Polynomial::from_term(c.basis.ordering.lt(g).clone());
                if t_skeleton(&chain) != lt {
                    return Err(format!("chain initial form of {g} does not lead with its leading term"));
                }
            }
        }
    }
    Ok(format!("{} adjacencies", fan.adjacency.len()))
}

/// Recorded facets equal the intersection of the two cones, and the two
/// sides have different leading ideals.
pub fn adjacency_consistency(fan: &Fan) -> Result<String, String> {
    for e in &fan.adjacency {
        let (ca, cb) = (&fan.maximal_cones[e.a], &fan.maximal_cones[e.b]);
        if !equal(&ca.hcone.intersect(&cb.hcone), &e.facet) {
            return Err(format!("facet of adjacency {} {} is not the intersection", e.a, e.b));
        }
        if dd_rays(&e.facet).dim + 1 != ca.data.dim {
            return Err(format!("adjacency {} {} is not across a facet", e.a, e.b));
        }
        let mut la: Vec<String> = ca.basis.leading_terms().iter().map(|t| format!("{t:?}")).collect();
        let mut lb: Vec<String> = cb.basis.leading_terms().iter().map(|t| format!("{t:?}")).collect();
        la.sort();
        lb.sort();
        if la == lb {
            return Err(format!("cones {} and {} share leading terms", e.a, e.b));
        }
    }
    Ok(format!("{} adjacencies", fan.adjacency.len()))
}

pub fn distinct_cones(fan: &Fan) -> Result<String, String> {
    for i in 0..fan.len() {
        for j in i + 1..fan.len() {
            if equal(&fan.maximal_cones[i].hcone, &fan.maximal_cones[j].hcone) {
                return Err(format!("cones {i} and {j} are equal"));
            }
        }
    }
    Ok(format!("{} cones", fan.len()))
}

pub fn run_all(fan: &Fan, ambient: usize, samples: usize, seed: u64) -> Vec<CheckResult> {
    vec![
        CheckResult::from("distinct", distinct_cones(fan)),
        CheckResult::from("coverage", coverage(fan, ambient, samples, seed)),
        CheckResult::from("face-to-face", face_to_face(fan)),
        CheckResult::from("lineality", homogeneity_lineality(fan)),
        CheckResult::from("adjacency", adjacency_consistency(fan)),
        CheckResult::from("chain", chain_consistency(fan)),
    ]
}
