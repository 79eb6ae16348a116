//! Exact integer and rational arithmetic and small dense linear algebra over Q.
//!
//! Integers are `num-bigint` values and rationals are `num-rational` values, which
//! are kept in lowest terms with a positive denominator after every operation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;
pub type QVector = Vec<Rat>;
pub type QMatrix = Vec<QVector>;
/// Dense integer vector, used for exponent differences, rays and normals.
pub type IVector = Vec<Int>;

pub fn int(v: i64) -> Int {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_from_int(v: &Int) -> Rat {
    BigRational::from_integer(v.clone())
}

pub fn ivec(v: &[i64]) -> IVector {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn qvec(v: &[i64]) -> QVector {
    v.iter().map(|&x| Rat::from_integer(BigInt::from(x))).collect()
}

pub fn to_qvector(v: &[Int]) -> QVector {
    v.iter().map(rat_from_int).collect()
}

/// Returns `(g, u, v)` with `g = gcd(a, b) > 0` and `g = u*a + v*b`.
pub fn extended_gcd(a: &Int, b: &Int) -> Result<(Int, Int, Int)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::InvalidInput("extended_gcd of (0, 0)".into()));
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Int::one(), Int::zero());
    let (mut t0, mut t1) = (Int::zero(), Int::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_mod_floor(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        Ok((-r0, -s0, -t0))
    } else {
        Ok((r0, s0, t0))
    }
}

/// Largest `m` with `p^m | c`.
pub fn p_valuation(c: &Int, p: &Int) -> Result<u32> {
    if c.is_zero() {
        return Err(Error::InvalidInput("p-adic valuation of 0".into()));
    }
    if *p < int(2) {
        return Err(Error::InvalidInput(format!("valuation base {p} < 2")));
    }
    let mut m = 0;
    let mut c = c.abs();
    loop {
        let (q, r) = c.div_rem(p);
        if !r.is_zero() {
            return Ok(m);
        }
        c = q;
        m += 1;
    }
}

/// Reduced row echelon form. Zero rows are kept at the bottom so the shape is
/// unchanged; the pivot of each column is the first nonzero entry at or below
/// the current row.
pub fn rref(m: &QMatrix) -> (QMatrix, Vec<usize>) {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let d = &f * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &QMatrix) -> usize {
    rref(m).1.len()
}

pub fn rank_int(rows: &[IVector]) -> usize {
    let m: QMatrix = rows.iter().map(|r| to_qvector(r)).collect();
    rank(&m)
}

/// Smallest positive integer multiple of `v` with coprime entries.
pub fn primitive(v: &[Rat]) -> Result<IVector> {
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::InvalidInput("primitive of the zero vector".into()));
    }
    let den = v.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
    let ints: IVector = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    Ok(primitive_int(&ints))
}

/// Divides an integer vector by the gcd of its entries; the zero vector is returned as is.
pub fn primitive_int(v: &[Int]) -> IVector {
    let g = v.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `a . w` for an integer row and a rational point.
pub fn dot_int_rat(a: &[Int], w: &[Rat]) -> Rat {
    a.iter().zip(w).map(|(x, y)| y * x).sum()
}

/// Clears denominators of a rational vector by a positive factor.
pub fn scale_to_int(v: &[Rat]) -> IVector {
    let den = v.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
    v.iter().map(|x| x.numer() * (&den / x.denom())).collect()
}

/// Basis of the kernel `{x : M x = 0}` as primitive integer vectors.
pub fn kernel(m: &QMatrix, cols: usize) -> Vec<IVector> {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rat::zero(); cols];
            x[f] = Rat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = -r[row][f].clone();
            }
            primitive(&x).expect("kernel vector has a unit entry")
        })
        .collect()
}
