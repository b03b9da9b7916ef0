//! Transform-based products of set functions and tuple functions: subset convolution,
//! covering and packing products, the digit-wise (no wraparound) generalized convolution,
//! and the cyclic Z_p product for p ∈ {2, 4}.
//!
//! Tables carry integer values; callers working over GF(2) reduce with [`SubsetTable::mod2`]
//! or [`TupleTable::mod2`] at the end.

use thiserror::Error;

/// Largest ground set handled by the subset products.
pub const MAX_SUBSET_BITS: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("operand shapes differ")]
    ShapeMismatch,
    #[error("ground set of size {0} exceeds the supported limit")]
    TooLarge(usize),
    #[error("radix {0} is not supported here")]
    BadRadix(usize),
    #[error("table length {len} does not match shape {expected}")]
    BadLength { len: usize, expected: usize },
}

/// A function `2^B → Z`, bit `i` of the index ↔ element `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetTable {
    pub b: usize,
    pub values: Vec<i64>,
}

impl SubsetTable {
    pub fn new(b: usize, values: Vec<i64>) -> Result<Self, AlgebraError> {
        if b > MAX_SUBSET_BITS {
            return Err(AlgebraError::TooLarge(b));
        }
        if values.len() != 1 << b {
            return Err(AlgebraError::BadLength { len: values.len(), expected: 1 << b });
        }
        Ok(SubsetTable { b, values })
    }

    pub fn zeros(b: usize) -> Self {
        SubsetTable { b, values: vec![0; 1 << b] }
    }

    /// Indicator of a single subset.
    pub fn indicator(b: usize, set: usize) -> Self {
        let mut t = Self::zeros(b);
        t.values[set] = 1;
        t
    }

    /// Values reduced into {0, 1}.
    pub fn mod2(&self) -> Self {
        SubsetTable { b: self.b, values: self.values.iter().map(|v| v.rem_euclid(2)).collect() }
    }
}

fn check_pair(f: &SubsetTable, g: &SubsetTable) -> Result<usize, AlgebraError> {
    if f.b != g.b || f.values.len() != g.values.len() {
        return Err(AlgebraError::ShapeMismatch);
    }
    if f.b > MAX_SUBSET_BITS {
        return Err(AlgebraError::TooLarge(f.b));
    }
    Ok(f.b)
}

/// `f(T) ← Σ_{S⊆T} f(S)`.
fn zeta(v: &mut [i64], b: usize) {
    for i in 0..b {
        for t in 0..v.len() {
            if t >> i & 1 == 1 {
                v[t] += v[t ^ (1 << i)];
            }
        }
    }
}

/// Inverse of [`zeta`].
fn mobius(v: &mut [i64], b: usize) {
    for i in 0..b {
        for t in 0..v.len() {
            if t >> i & 1 == 1 {
                v[t] -= v[t ^ (1 << i)];
            }
        }
    }
}

/// `(f ∗ g)(T) = Σ_{T₁∪T₂=T, T₁∩T₂=∅} f(T₁) g(T₂)` by ranked zeta/Möbius transforms.
pub fn subset_convolution(f: &SubsetTable, g: &SubsetTable) -> Result<SubsetTable, AlgebraError> {
    let b = check_pair(f, g)?;
    let size = 1usize << b;
    let ranked = |t: &SubsetTable| -> Vec<Vec<i64>> {
        let mut layers = vec![vec![0i64; size]; b + 1];
        for (s, &v) in t.values.iter().enumerate() {
            layers[s.count_ones() as usize][s] = v;
        }
        for layer in layers.iter_mut() {
            zeta(layer, b);
        }
        layers
    };
    let fr = ranked(f);
    let gr = ranked(g);
    let mut out = vec![0i64; size];
    for k in 0..=b {
        let mut h = vec![0i64; size];
        for j in 0..=k {
            for s in 0..size {
                h[s] += fr[j][s] * gr[k - j][s];
            }
        }
        mobius(&mut h, b);
        for s in 0..size {
            if s.count_ones() as usize == k {
                out[s] = h[s];
            }
        }
    }
    Ok(SubsetTable { b, values: out })
}

/// `(f ∗_c g)(T) = Σ_{T₁∪T₂=T} f(T₁) g(T₂)`.
pub fn covering_product(f: &SubsetTable, g: &SubsetTable) -> Result<SubsetTable, AlgebraError> {
    let b = check_pair(f, g)?;
    let mut fz = f.values.clone();
    let mut gz = g.values.clone();
    zeta(&mut fz, b);
    zeta(&mut gz, b);
    let mut h: Vec<i64> = fz.iter().zip(&gz).map(|(x, y)| x * y).collect();
    mobius(&mut h, b);
    Ok(SubsetTable { b, values: h })
}

/// `(f ∗_p g)(T) = Σ_{T₁,T₂⊆T, T₁∩T₂=∅} f(T₁) g(T₂)`: the zeta transform of the subset convolution.
pub fn packing_product(f: &SubsetTable, g: &SubsetTable) -> Result<SubsetTable, AlgebraError> {
    let mut h = subset_convolution(f, g)?;
    zeta(&mut h.values, h.b);
    Ok(h)
}

/// A function `{0,…,p−1}^b → Z`, digit `i` of the mixed-radix index ↔ position `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleTable {
    pub b: usize,
    pub p: usize,
    pub values: Vec<i64>,
}

impl TupleTable {
    pub fn new(b: usize, p: usize, values: Vec<i64>) -> Result<Self, AlgebraError> {
        if !(2..=6).contains(&p) {
            return Err(AlgebraError::BadRadix(p));
        }
        let expected = p.checked_pow(b as u32).ok_or(AlgebraError::TooLarge(b))?;
        if values.len() != expected {
            return Err(AlgebraError::BadLength { len: values.len(), expected });
        }
        Ok(TupleTable { b, p, values })
    }

    pub fn zeros(b: usize, p: usize) -> Self {
        TupleTable { b, p, values: vec![0; p.pow(b as u32)] }
    }

    pub fn indicator(b: usize, p: usize, index: usize) -> Self {
        let mut t = Self::zeros(b, p);
        t.values[index] = 1;
        t
    }

    pub fn digits(&self, index: usize) -> Vec<usize> {
        let mut x = index;
        (0..self.b)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    pub fn mod2(&self) -> Self {
        TupleTable { b: self.b, p: self.p, values: self.values.iter().map(|v| v.rem_euclid(2)).collect() }
    }
}

fn check_tuples(f: &TupleTable, g: &TupleTable) -> Result<(), AlgebraError> {
    if f.b != g.b || f.p != g.p || f.values.len() != g.values.len() {
        return Err(AlgebraError::ShapeMismatch);
    }
    Ok(())
}

/// Prime `2⁶¹ − 31` with `60 | P − 1`, so it has roots of unity of every order 2..=6.
const PRIME: u64 = (1 << 61) - 31;

/// `x mod P` for `x < 2¹²⁶`, folding `2⁶¹ ≡ 31`.
fn reduce(x: u128) -> u64 {
    let mask = (1u128 << 61) - 1;
    let x = (x >> 61) * 31 + (x & mask);
    let x = ((x >> 61) * 31 + (x & mask)) as u64;
    if x >= PRIME {
        x - PRIME
    } else {
        x
    }
}

fn mulmod(a: u64, b: u64) -> u64 {
    reduce(a as u128 * b as u128)
}

fn addmod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= PRIME {
        s - PRIME
    } else {
        s
    }
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

/// A primitive `p`-th root of unity modulo [`PRIME`].
fn root_of_unity(p: u64) -> u64 {
    let prime_factors: Vec<u64> = [2, 3, 5].into_iter().filter(|q| p % q == 0).collect();
    (2u64..)
        .map(|x| powmod(x, (PRIME - 1) / p))
        .find(|&r| prime_factors.iter().all(|&q| powmod(r, p / q) != 1))
        .expect("root exists")
}

fn to_field(v: i64) -> u64 {
    v.rem_euclid(PRIME as i64) as u64
}

fn from_field(v: u64) -> i64 {
    if v > PRIME / 2 {
        -((PRIME - v) as i64)
    } else {
        v as i64
    }
}

/// In-place multidimensional DFT with root `root` over `b` digits of radix `p`.
fn dft(v: &mut [u64], b: usize, p: usize, root: u64) {
    let pows: Vec<u64> = (0..p as u64).map(|e| powmod(root, e)).collect();
    let mut stride = 1usize;
    let mut buf = vec![0u64; p];
    for _ in 0..b {
        for base in (0..v.len()).step_by(stride * p).flat_map(|hi| hi..hi + stride) {
            for (s, slot) in buf.iter_mut().enumerate() {
                let mut acc = 0u64;
                for t in 0..p {
                    acc = addmod(acc, mulmod(v[base + t * stride], pows[(s * t) % p]));
                }
                *slot = acc;
            }
            for (s, &x) in buf.iter().enumerate() {
                v[base + s * stride] = x;
            }
        }
        stride *= p;
    }
}

/// Smallest modulus `M ≥ 2` dividing none of `p, 2p, …, bp`.
fn rank_modulus(p: usize, b: usize) -> usize {
    (2..).find(|&m| (1..=b).all(|w| (p * w) % m != 0)).expect("some modulus exists")
}

/// `(f ∗^p g)(t) = Σ_{t₁+t₂=t} f(t₁) g(t₂)` with digit sums taken in Z (no wraparound).
///
/// Each table is split by digit sum modulo [`rank_modulus`]; cyclic products per class pair are
/// computed with an exact DFT over a prime field. Each wrapped position raises the digit sum by
/// `p`, and `M` divides no multiple `wp` with `1 ≤ w ≤ b`, so the class of `|t|` in the cyclic
/// product holds exactly the non-wrapping pairs.
pub fn generalized_convolution(f: &TupleTable, g: &TupleTable) -> Result<TupleTable, AlgebraError> {
    check_tuples(f, g)?;
    let (b, p) = (f.b, f.p);
    if !(2..=6).contains(&p) {
        return Err(AlgebraError::BadRadix(p));
    }
    let size = f.values.len();
    let modulus = rank_modulus(p, b);
    let class: Vec<usize> = (0..size).map(|i| f.digits(i).iter().sum::<usize>() % modulus).collect();
    let root = root_of_unity(p as u64);
    let inv_root = powmod(root, PRIME - 2);
    let layers = |t: &TupleTable| -> Vec<Vec<u64>> {
        let mut ls = vec![vec![0u64; size]; modulus];
        for (i, &v) in t.values.iter().enumerate() {
            ls[class[i]][i] = to_field(v);
        }
        for l in ls.iter_mut() {
            dft(l, b, p, root);
        }
        ls
    };
    let fl = layers(f);
    let gl = layers(g);
    let scale = powmod(powmod(p as u64, b as u64), PRIME - 2);
    let mut out = vec![0i64; size];
    for r in 0..modulus {
        let mut h = vec![0u64; size];
        for r1 in 0..modulus {
            let r2 = (r + modulus - r1) % modulus;
            for i in 0..size {
                h[i] = addmod(h[i], mulmod(fl[r1][i], gl[r2][i]));
            }
        }
        dft(&mut h, b, p, inv_root);
        for i in 0..size {
            if class[i] == r {
                out[i] = from_field(mulmod(h[i], scale));
            }
        }
    }
    Ok(TupleTable { b, p, values: out })
}

/// Gaussian integer `re + im·i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Gauss {
    re: i128,
    im: i128,
}

impl Gauss {
    fn add(self, o: Gauss) -> Gauss {
        Gauss { re: self.re.checked_add(o.re).expect("overflow"), im: self.im.checked_add(o.im).expect("overflow") }
    }

    fn mul(self, o: Gauss) -> Gauss {
        let m = |a: i128, b: i128| a.checked_mul(b).expect("overflow");
        Gauss {
            re: m(self.re, o.re).checked_sub(m(self.im, o.im)).expect("overflow"),
            im: m(self.re, o.im).checked_add(m(self.im, o.re)).expect("overflow"),
        }
    }

    /// `ε^e` with `ε = −1` (p = 2) or `ε = i` (p = 4).
    fn unit(p: usize, e: usize) -> Gauss {
        match (p, e % p) {
            (_, 0) => Gauss { re: 1, im: 0 },
            (2, 1) => Gauss { re: -1, im: 0 },
            (4, 1) => Gauss { re: 0, im: 1 },
            (4, 2) => Gauss { re: -1, im: 0 },
            (4, 3) => Gauss { re: 0, im: -1 },
            _ => unreachable!("radix checked by caller"),
        }
    }
}

/// `f̂(s) = Σ_t f(t) ε^{s·t}` by Yates' digit-by-digit method.
fn gauss_transform(v: &mut [Gauss], b: usize, p: usize) {
    let mut stride = 1usize;
    let mut buf = vec![Gauss::default(); p];
    for _ in 0..b {
        for base in (0..v.len()).step_by(stride * p).flat_map(|hi| hi..hi + stride) {
            for (s, slot) in buf.iter_mut().enumerate() {
                let mut acc = Gauss::default();
                for t in 0..p {
                    acc = acc.add(v[base + t * stride].mul(Gauss::unit(p, s * t)));
                }
                *slot = acc;
            }
            for (s, &x) in buf.iter().enumerate() {
                v[base + s * stride] = x;
            }
        }
        stride *= p;
    }
}

/// `(f ∗_x^p g)(t) = Σ_{t₁+t₂≡t (mod p)} f(t₁) g(t₂)` for `p ∈ {2, 4}`.
///
/// Transforming `f̂·ĝ` once more yields `p^b (f ∗ g)(−t)`; the division by `p^b` is exact and asserted.
pub fn zp_product(f: &TupleTable, g: &TupleTable, p: usize) -> Result<TupleTable, AlgebraError> {
    if p != 2 && p != 4 {
        return Err(AlgebraError::BadRadix(p));
    }
    check_tuples(f, g)?;
    if f.p != p {
        return Err(AlgebraError::ShapeMismatch);
    }
    let b = f.b;
    let lift = |t: &TupleTable| -> Vec<Gauss> {
        let mut v: Vec<Gauss> = t.values.iter().map(|&x| Gauss { re: x as i128, im: 0 }).collect();
        gauss_transform(&mut v, b, p);
        v
    };
    let fh = lift(f);
    let gh = lift(g);
    let mut h: Vec<Gauss> = fh.iter().zip(&gh).map(|(x, y)| x.mul(*y)).collect();
    gauss_transform(&mut h, b, p);
    let scale = (p as i128).pow(b as u32);
    let mut out = vec![0i64; h.len()];
    for (t, slot) in out.iter_mut().enumerate() {
        // −t digit-wise
        let neg: usize = f
            .digits(t)
            .iter()
            .enumerate()
            .map(|(i, &d)| ((p - d) % p) * p.pow(i as u32))
            .sum();
        let x = h[neg];
        assert!(x.im == 0 && x.re % scale == 0, "transform value not divisible by p^b");
        *slot = i64::try_from(x.re / scale).expect("result fits in i64");
    }
    Ok(TupleTable { b, p, values: out })
}

/// Definition-level evaluations, quadratic in the table size.
pub mod naive {
    use super::{SubsetTable, TupleTable};

    pub fn subset_convolution(f: &SubsetTable, g: &SubsetTable) -> SubsetTable {
        pairs(f, g, |a, b, t| a | b == t && a & b == 0)
    }

    pub fn covering_product(f: &SubsetTable, g: &SubsetTable) -> SubsetTable {
        pairs(f, g, |a, b, t| a | b == t)
    }

    pub fn packing_product(f: &SubsetTable, g: &SubsetTable) -> SubsetTable {
        pairs(f, g, |a, b, t| a & b == 0 && (a | b) & !t == 0)
    }

    fn pairs(f: &SubsetTable, g: &SubsetTable, keep: impl Fn(usize, usize, usize) -> bool) -> SubsetTable {
        let size = f.values.len();
        let mut out = vec![0i64; size];
        for (t, slot) in out.iter_mut().enumerate() {
            for a in 0..size {
                for b in 0..size {
                    if keep(a, b, t) {
                        *slot += f.values[a] * g.values[b];
                    }
                }
            }
        }
        SubsetTable { b: f.b, values: out }
    }

    pub fn generalized_convolution(f: &TupleTable, g: &TupleTable) -> TupleTable {
        tuples(f, g, |x, y| {
            let s = x + y;
            (s < f.p).then_some(s)
        })
    }

    pub fn zp_product(f: &TupleTable, g: &TupleTable) -> TupleTable {
        tuples(f, g, |x, y| Some((x + y) % f.p))
    }

    fn tuples(f: &TupleTable, g: &TupleTable, add: impl Fn(usize, usize) -> Option<usize>) -> TupleTable {
        let size = f.values.len();
        let mut out = vec![0i64; size];
        for a in 0..size {
            let da = f.digits(a);
            'b: for b in 0..size {
                let db = f.digits(b);
                let mut t = 0usize;
                for i in (0..f.b).rev() {
                    match add(da[i], db[i]) {
                        Some(d) => t = t * f.p + d,
                        None => continue 'b,
                    }
                }
                out[t] += f.values[a] * g.values[b];
            }
        }
        TupleTable { b: f.b, p: f.p, values: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_elements() {
        let g = SubsetTable::new(3, vec![1, 0, 1, 1, 0, 0, 1, 0]).unwrap();
        assert_eq!(subset_convolution(&SubsetTable::indicator(3, 0), &g).unwrap(), g);
        let t = TupleTable::new(2, 3, vec![1, 0, 1, 1, 0, 0, 1, 0, 1]).unwrap();
        assert_eq!(generalized_convolution(&TupleTable::indicator(2, 3, 0), &t).unwrap(), t);
        let x = TupleTable::new(2, 4, (0..16).map(|i| i % 3).collect()).unwrap();
        assert_eq!(zp_product(&TupleTable::indicator(2, 4, 0), &x, 4).unwrap(), x);
    }

    #[test]
    fn small_hand_cases() {
        let ones = SubsetTable::new(2, vec![1; 4]).unwrap();
        let h = subset_convolution(&ones, &ones).unwrap().mod2();
        assert_eq!(h.values[0b11], 0);
        assert_eq!(h.values[0], 1);
        let f = TupleTable::new(1, 3, vec![1, 1, 0]).unwrap();
        assert_eq!(generalized_convolution(&f, &f).unwrap().mod2().values, vec![1, 0, 1]);
        let x = TupleTable::new(1, 2, vec![1, 1]).unwrap();
        assert_eq!(zp_product(&x, &x, 2).unwrap().mod2().values, vec![0, 0]);
    }

    #[test]
    fn rejects_bad_radix() {
        let x = TupleTable::zeros(1, 3);
        assert_eq!(zp_product(&x, &x, 3), Err(AlgebraError::BadRadix(3)));
        assert!(SubsetTable::new(2, vec![0; 3]).is_err());
    }
}
