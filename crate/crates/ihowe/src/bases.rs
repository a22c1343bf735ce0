//! Combinatorial index sets: symmetric theta matrices, column matrices,
//! tuples, the rho-bar sublabels and the bijections between them.
//!
//! Indices are exact half-integers stored doubled. The index set
//! `I_N = {(1-N)/2, ..., (N-1)/2}` is half-integral for even `N` and
//! integral for odd `N`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde_json::{json, Value};

use crate::{Error, Result};

pub const DEFAULT_SIZE_CAP: u128 = 1_000_000;

/// A half-integer, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Half(pub i32);

impl Half {
    pub const ZERO: Half = Half(0);
    pub const HALF: Half = Half(1);
    pub const ONE: Half = Half(2);

    pub fn int(i: i32) -> Half {
        Half(2 * i)
    }

    pub fn doubled(self) -> i32 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// Value as an integer; panics on a proper half-integer.
    pub fn as_int(self) -> i32 {
        assert!(self.is_integer(), "{self} is not an integer");
        self.0 / 2
    }

    pub fn abs(self) -> Half {
        Half(self.0.abs())
    }
}

impl Add for Half {
    type Output = Half;
    fn add(self, o: Half) -> Half {
        Half(self.0 + o.0)
    }
}

impl Sub for Half {
    type Output = Half;
    fn sub(self, o: Half) -> Half {
        Half(self.0 - o.0)
    }
}

impl Neg for Half {
    type Output = Half;
    fn neg(self) -> Half {
        Half(-self.0)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// The elements of `I_N` in increasing order.
pub fn index_set(n: u32) -> Vec<Half> {
    let n = n as i32;
    (0..n).map(|k| Half(1 - n + 2 * k)).collect()
}

/// Position of `x` in `I_N`, if it belongs to it.
pub fn index_pos(n: u32, x: Half) -> Option<usize> {
    let p = x.0 + n as i32 - 1;
    if p < 0 || p % 2 != 0 || p / 2 >= n as i32 {
        None
    } else {
        Some((p / 2) as usize)
    }
}

pub fn in_index_set(n: u32, x: Half) -> bool {
    index_pos(n, x).is_some()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Even ambient rank, `U^i_n` inside `U(gl_2n)`.
    I,
    /// Odd ambient rank, `U^j_n` inside `U(gl_{2n+1})`.
    J,
}

impl Family {
    /// Size of the index set for rank parameter `m`: `2m` or `2m+1`.
    pub fn ambient(self, m: u32) -> u32 {
        match self {
            Family::I => 2 * m,
            Family::J => 2 * m + 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::I => "i",
            Family::J => "j",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "i" | "I" => Ok(Family::I),
            "j" | "J" => Ok(Family::J),
            _ => Err(format!("unknown family {s:?}, expected i or j")),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

// ---------------------------------------------------------------------------
// Theta matrices

/// A symmetric matrix `a_{i,j} = a_{-i,-j}` with rows `I_R` and columns
/// `I_C`, where `R = 2m` (or `2m+1`) and `C = 2n` (or `2n+1`).
///
/// Entries are stored densely, row-major, so the derived order is the
/// lexicographic order with rows ascending, then columns ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaMatrix {
    pub family: Family,
    pub m: u32,
    pub n: u32,
    entries: Vec<u32>,
}

impl ThetaMatrix {
    pub fn zero(family: Family, m: u32, n: u32) -> Self {
        let r = family.ambient(m) as usize;
        let c = family.ambient(n) as usize;
        ThetaMatrix {
            family,
            m,
            n,
            entries: vec![0; r * c],
        }
    }

    pub fn nrows(&self) -> u32 {
        self.family.ambient(self.m)
    }

    pub fn ncols(&self) -> u32 {
        self.family.ambient(self.n)
    }

    pub fn row_indices(&self) -> Vec<Half> {
        index_set(self.nrows())
    }

    pub fn col_indices(&self) -> Vec<Half> {
        index_set(self.ncols())
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    fn flat(&self, i: Half, j: Half) -> Option<usize> {
        let r = index_pos(self.nrows(), i)?;
        let c = index_pos(self.ncols(), j)?;
        Some(r * self.ncols() as usize + c)
    }

    /// `a_{i,j}`; out-of-range indices read as zero.
    pub fn get(&self, i: Half, j: Half) -> u32 {
        self.flat(i, j).map_or(0, |p| self.entries[p])
    }

    /// Sets `a_{i,j}` and its mirror `a_{-i,-j}`.
    pub fn set_sym(&mut self, i: Half, j: Half, v: u32) {
        let p = self.flat(i, j).expect("index out of range");
        let q = self.flat(-i, -j).unwrap();
        self.entries[p] = v;
        self.entries[q] = v;
    }

    /// Adds `delta` times `E^theta_{i,j} = E_{i,j} + E_{-i,-j}`. Returns
    /// `None` if an entry would become negative or an index is illegal.
    pub fn edit(&self, i: Half, j: Half, delta: i32) -> Option<ThetaMatrix> {
        let p = self.flat(i, j)?;
        let q = self.flat(-i, -j)?;
        let mut out = self.clone();
        for idx in [p, q] {
            let v = out.entries[idx] as i64 + delta as i64;
            if v < 0 {
                return None;
            }
            out.entries[idx] = v as u32;
        }
        Some(out)
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|&a| a as u64).sum()
    }

    /// `d` with total `2d` (i) or `2d+1` (j).
    pub fn degree(&self) -> u64 {
        match self.family {
            Family::I => self.total() / 2,
            Family::J => (self.total().saturating_sub(1)) / 2,
        }
    }

    pub fn row_sum(&self, i: Half) -> u64 {
        self.col_indices().iter().map(|&j| self.get(i, j) as u64).sum()
    }

    pub fn col_sum(&self, j: Half) -> u64 {
        self.row_indices().iter().map(|&i| self.get(i, j) as u64).sum()
    }

    pub fn check_invariants(&self) -> Result<()> {
        for &i in &self.row_indices() {
            for &j in &self.col_indices() {
                if self.get(i, j) != self.get(-i, -j) {
                    return Err(Error::InvariantViolation(format!(
                        "asymmetric at ({i},{j}) in {self}"
                    )));
                }
            }
        }
        let t = self.total();
        match self.family {
            Family::I if t % 2 != 0 => Err(Error::InvariantViolation(format!("odd total in {self}"))),
            Family::J if t % 2 != 1 || self.get(Half::ZERO, Half::ZERO) % 2 != 1 => Err(
                Error::InvariantViolation(format!("center entry not odd in {self}")),
            ),
            _ => Ok(()),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut e = Vec::new();
        for &i in &self.row_indices() {
            for &j in &self.col_indices() {
                let a = self.get(i, j);
                if a != 0 {
                    e.push(json!([i.0, j.0, a]));
                }
            }
        }
        json!({"family": self.family.name(), "m": self.m, "n": self.n, "entries": e})
    }
}

impl fmt::Display for ThetaMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.family)?;
        let c = self.ncols() as usize;
        for (r, row) in self.entries.chunks(c).enumerate() {
            if r > 0 {
                write!(f, ";")?;
            }
            for (k, a) in row.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{a}")?;
            }
        }
        write!(f, "]")
    }
}

// ---------------------------------------------------------------------------
// Column matrices

/// An `N`-valued matrix with rows `I_M` and columns `1/2, ..., n-1/2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColumnMatrix {
    pub big_m: u32,
    pub n: u32,
    entries: Vec<u32>,
}

impl ColumnMatrix {
    pub fn zero(big_m: u32, n: u32) -> Self {
        ColumnMatrix {
            big_m,
            n,
            entries: vec![0; (big_m * n) as usize],
        }
    }

    pub fn row_indices(&self) -> Vec<Half> {
        index_set(self.big_m)
    }

    /// Columns `1/2, 3/2, ..., n-1/2`.
    pub fn col_indices(&self) -> Vec<Half> {
        (0..self.n as i32).map(|c| Half(2 * c + 1)).collect()
    }

    fn flat(&self, i: Half, j: Half) -> Option<usize> {
        let r = index_pos(self.big_m, i)?;
        if j.0 < 1 || j.0 % 2 == 0 || j.0 > 2 * self.n as i32 - 1 {
            return None;
        }
        Some(r * self.n as usize + (j.0 as usize - 1) / 2)
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, i: Half, j: Half) -> u32 {
        self.flat(i, j).map_or(0, |p| self.entries[p])
    }

    pub fn set(&mut self, i: Half, j: Half, v: u32) {
        let p = self.flat(i, j).expect("index out of range");
        self.entries[p] = v;
    }

    /// Adds `delta * E_{i,j}`; `None` if that goes negative.
    pub fn edit(&self, i: Half, j: Half, delta: i32) -> Option<ColumnMatrix> {
        let p = self.flat(i, j)?;
        let v = self.entries[p] as i64 + delta as i64;
        if v < 0 {
            return None;
        }
        let mut out = self.clone();
        out.entries[p] = v as u32;
        Some(out)
    }

    pub fn degree(&self) -> u64 {
        self.entries.iter().map(|&a| a as u64).sum()
    }

    pub fn row_sum(&self, i: Half) -> u64 {
        self.col_indices().iter().map(|&j| self.get(i, j) as u64).sum()
    }

    pub fn col_sum(&self, j: Half) -> u64 {
        self.row_indices().iter().map(|&i| self.get(i, j) as u64).sum()
    }

    /// Row sums, i.e. the coordinates of the gl_M-weight in the basis
    /// `eps_i`, ordered along `I_M`.
    pub fn weight(&self) -> Vec<i64> {
        self.row_indices().iter().map(|&i| self.row_sum(i) as i64).collect()
    }

    pub fn to_json(&self) -> Value {
        let mut e = Vec::new();
        for &i in &self.row_indices() {
            for &j in &self.col_indices() {
                let a = self.get(i, j);
                if a != 0 {
                    e.push(json!([i.0, j.0, a]));
                }
            }
        }
        json!({"M": self.big_m, "n": self.n, "entries": e})
    }
}

impl fmt::Display for ColumnMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "col[")?;
        for (r, row) in self.entries.chunks(self.n.max(1) as usize).enumerate() {
            if r > 0 {
                write!(f, ";")?;
            }
            for (k, a) in row.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{a}")?;
            }
        }
        write!(f, "]")
    }
}

// ---------------------------------------------------------------------------
// Tuples

/// `lambda = (lambda_1, ..., lambda_n)` with entries in `I_M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tuple {
    pub big_m: u32,
    pub comps: Vec<Half>,
}

impl Tuple {
    pub fn new(big_m: u32, comps: Vec<Half>) -> Result<Self> {
        for &c in &comps {
            if !in_index_set(big_m, c) {
                return Err(Error::ComponentOutOfRange(format!("{c} not in I_{big_m}")));
            }
        }
        Ok(Tuple { big_m, comps })
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({"M": self.big_m, "components": self.comps.iter().map(|c| c.0).collect::<Vec<_>>()})
    }
}

impl fmt::Display for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v(")?;
        for (k, c) in self.comps.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

// ---------------------------------------------------------------------------
// Enumeration

fn binom(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Number of ways to place `d` balls in `slots` boxes.
fn compositions_count(d: u64, slots: usize) -> u128 {
    if slots == 0 {
        return u128::from(d == 0);
    }
    binom(d as u128 + slots as u128 - 1, slots as u128 - 1)
}

/// All weak compositions of `d` into `slots` parts, via a callback.
fn for_each_composition(d: u32, slots: usize, f: &mut dyn FnMut(&[u32])) {
    fn rec(buf: &mut Vec<u32>, left: u32, slots: usize, f: &mut dyn FnMut(&[u32])) {
        if buf.len() + 1 == slots {
            buf.push(left);
            f(buf);
            buf.pop();
            return;
        }
        for v in 0..=left {
            buf.push(v);
            rec(buf, left - v, slots, f);
            buf.pop();
        }
    }
    if slots == 0 {
        if d == 0 {
            f(&[]);
        }
        return;
    }
    rec(&mut Vec::with_capacity(slots), d, slots, f);
}

/// `|Xi_{m|n,d}|` for the given family without enumerating.
pub fn theta_count(family: Family, m: u32, n: u32, d: u32) -> u128 {
    let cells = (family.ambient(m) * family.ambient(n)) as usize;
    match family {
        Family::I => compositions_count(d as u64, cells / 2),
        Family::J => (0..=d)
            .map(|k| compositions_count((d - k) as u64, (cells - 1) / 2))
            .sum(),
    }
}

/// All of `Xi_{m|n,d}` for the family, sorted.
pub fn enumerate_theta(family: Family, m: u32, n: u32, d: u32, cap: u128) -> Result<Vec<ThetaMatrix>> {
    let count = theta_count(family, m, n, d);
    if count > cap {
        return Err(Error::SizeLimit(count, cap));
    }
    let base = ThetaMatrix::zero(family, m, n);
    let cells = base.entries.len();
    let half = cells / 2;
    let mut out = Vec::with_capacity(count as usize);
    let mut fill = |center: Option<u32>, left: u32| {
        for_each_composition(left, half, &mut |c| {
            let mut a = base.clone();
            for (p, &v) in c.iter().enumerate() {
                a.entries[p] = v;
                a.entries[cells - 1 - p] = v;
            }
            if let Some(z) = center {
                a.entries[half] = z;
            }
            out.push(a);
        });
    };
    match family {
        Family::I => fill(None, d),
        Family::J => {
            for k in 0..=d {
                fill(Some(2 * k + 1), d - k);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// All of `Xi_{M|n,d}`, sorted.
pub fn enumerate_columns(big_m: u32, n: u32, d: u32, cap: u128) -> Result<Vec<ColumnMatrix>> {
    let slots = (big_m * n) as usize;
    let count = compositions_count(d as u64, slots);
    if count > cap {
        return Err(Error::SizeLimit(count, cap));
    }
    let base = ColumnMatrix::zero(big_m, n);
    let mut out = Vec::with_capacity(count as usize);
    for_each_composition(d, slots, &mut |c| {
        let mut a = base.clone();
        a.entries.copy_from_slice(c);
        out.push(a);
    });
    out.sort();
    Ok(out)
}

/// All of `I_M^n`, sorted.
pub fn enumerate_tuples(big_m: u32, n: u32, cap: u128) -> Result<Vec<Tuple>> {
    let count = (big_m as u128).checked_pow(n).unwrap_or(u128::MAX);
    if count > cap {
        return Err(Error::SizeLimit(count, cap));
    }
    let idx = index_set(big_m);
    let mut out: Vec<Tuple> = vec![Tuple { big_m, comps: Vec::new() }];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                idx.iter().map(move |&c| {
                    let mut comps = t.comps.clone();
                    comps.push(c);
                    Tuple { big_m, comps }
                })
            })
            .collect();
    }
    out.sort();
    Ok(out)
}

/// Whether `a` lies in the rho-bar subset: unit sums on the positive
/// columns (their mirrors follow), and for j also `a_{0,0} = 1`.
pub fn is_rho_label(a: &ThetaMatrix) -> bool {
    if a.degree() != a.n as u64 {
        return false;
    }
    if a.family == Family::J && a.get(Half::ZERO, Half::ZERO) != 1 {
        return false;
    }
    a.col_indices()
        .iter()
        .filter(|j| j.0 > 0)
        .all(|&j| a.col_sum(j) == 1)
}

/// The rho-bar labels of `Xi_{m|n,n}`, sorted.
pub fn rho_weight_subset(family: Family, m: u32, n: u32) -> Result<Vec<ThetaMatrix>> {
    Ok(enumerate_theta(family, m, n, n, DEFAULT_SIZE_CAP)?
        .into_iter()
        .filter(is_rho_label)
        .collect())
}

/// Column `j` of the positive half: `j - 1/2` for i, `j` for j.
fn positive_col(family: Family, r: usize) -> Half {
    match family {
        Family::I => Half(2 * r as i32 + 1),
        Family::J => Half::int(r as i32 + 1),
    }
}

/// `lambda -> A_lambda`: positive column `r` carries `e_{lambda_r}`, its
/// mirror carries `e_{-lambda_r}`, and for j the center column is `e_0`.
pub fn tuple_to_matrix(family: Family, m: u32, lambda: &Tuple) -> Result<ThetaMatrix> {
    let big = family.ambient(m);
    if lambda.big_m != big {
        return Err(Error::ComponentOutOfRange(format!(
            "tuple over I_{} used with I_{big}",
            lambda.big_m
        )));
    }
    let n = lambda.len() as u32;
    let mut a = ThetaMatrix::zero(family, m, n);
    for (r, &c) in lambda.comps.iter().enumerate() {
        if !in_index_set(big, c) {
            return Err(Error::ComponentOutOfRange(format!("{c} not in I_{big}")));
        }
        a.set_sym(c, positive_col(family, r), 1);
    }
    if family == Family::J {
        a.set_sym(Half::ZERO, Half::ZERO, 1);
    }
    Ok(a)
}

pub fn matrix_to_tuple(a: &ThetaMatrix) -> Result<Tuple> {
    if !is_rho_label(a) {
        return Err(Error::NotInRhoSubset(a.to_string()));
    }
    let rows = a.row_indices();
    let comps = (0..a.n as usize)
        .map(|r| {
            let j = positive_col(a.family, r);
            *rows.iter().find(|&&i| a.get(i, j) == 1).unwrap()
        })
        .collect();
    Ok(Tuple {
        big_m: a.family.ambient(a.m),
        comps,
    })
}

/// Restriction of an i-family matrix to its positive columns.
pub fn omega_forget(a: &ThetaMatrix) -> Result<ColumnMatrix> {
    if a.family != Family::I {
        return Err(Error::BasisMismatch("omega is defined on the i family".into()));
    }
    let mut out = ColumnMatrix::zero(a.nrows(), a.n);
    for i in a.row_indices() {
        for j in out.col_indices() {
            out.set(i, j, a.get(i, j));
        }
    }
    Ok(out)
}

/// Inverse of [`omega_forget`]: `a_{i,-j} = a_{-i,j}`.
pub fn omega_inverse(c: &ColumnMatrix) -> Result<ThetaMatrix> {
    if c.big_m % 2 != 0 {
        return Err(Error::BasisMismatch(format!("M = {} is odd", c.big_m)));
    }
    let mut a = ThetaMatrix::zero(Family::I, c.big_m / 2, c.n);
    for i in c.row_indices() {
        for j in c.col_indices() {
            a.set_sym(i, j, c.get(i, j));
        }
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_sets() {
        assert_eq!(index_set(2), vec![Half(-1), Half(1)]);
        assert_eq!(index_set(3), vec![Half(-2), Half(0), Half(2)]);
        assert_eq!(index_pos(4, Half(3)), Some(3));
        assert_eq!(index_pos(4, Half(2)), None);
        assert_eq!(Half(-3).to_string(), "-3/2");
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_theta(Family::I, 1, 1, 1, DEFAULT_SIZE_CAP).unwrap().len(), 2);
        for d in 0..5 {
            assert_eq!(enumerate_columns(2, 1, d, DEFAULT_SIZE_CAP).unwrap().len(), d as usize + 1);
        }
        assert_eq!(enumerate_tuples(2, 2, DEFAULT_SIZE_CAP).unwrap().len(), 4);
        assert_eq!(rho_weight_subset(Family::I, 1, 1).unwrap().len(), 2);
        assert_eq!(rho_weight_subset(Family::J, 1, 1).unwrap().len(), 3);
        assert_eq!(rho_weight_subset(Family::I, 2, 2).unwrap().len(), 16);
    }

    #[test]
    fn larger_counts() {
        assert_eq!(theta_count(Family::I, 2, 3, 3), 364);
        assert_eq!(theta_count(Family::J, 2, 3, 3), 1140);
        assert_eq!(enumerate_theta(Family::J, 2, 3, 3, DEFAULT_SIZE_CAP).unwrap().len(), 1140);
        assert!(matches!(
            enumerate_theta(Family::I, 2, 3, 3, 100),
            Err(Error::SizeLimit(364, 100))
        ));
    }

    #[test]
    fn tuple_matrices() {
        let t = Tuple::new(2, vec![Half(1)]).unwrap();
        let a = tuple_to_matrix(Family::I, 1, &t).unwrap();
        assert_eq!(a.get(Half(-1), Half(-1)), 1);
        assert_eq!(a.get(Half(1), Half(1)), 1);
        assert_eq!(a.total(), 2);

        let t = Tuple::new(2, vec![Half(-1)]).unwrap();
        let a = tuple_to_matrix(Family::I, 1, &t).unwrap();
        assert_eq!(a.get(Half(1), Half(-1)), 1);
        assert_eq!(a.get(Half(-1), Half(1)), 1);

        let t = Tuple::new(3, vec![Half::int(1)]).unwrap();
        let a = tuple_to_matrix(Family::J, 1, &t).unwrap();
        assert_eq!(a.get(Half::int(-1), Half::int(-1)), 1);
        assert_eq!(a.get(Half::ZERO, Half::ZERO), 1);
        assert_eq!(a.get(Half::int(1), Half::int(1)), 1);
        assert_eq!(a.total(), 3);

        assert!(Tuple::new(2, vec![Half(3)]).is_err());
    }

    #[test]
    fn omega_examples() {
        let t = Tuple::new(2, vec![Half(1)]).unwrap();
        let a = tuple_to_matrix(Family::I, 1, &t).unwrap();
        let c = omega_forget(&a).unwrap();
        assert_eq!(c.get(Half(1), Half(1)), 1);
        assert_eq!(c.degree(), 1);

        let xi = enumerate_theta(Family::I, 1, 1, 1, DEFAULT_SIZE_CAP).unwrap();
        let imgs: std::collections::BTreeSet<_> = xi.iter().map(|a| omega_forget(a).unwrap()).collect();
        assert_eq!(imgs.len(), 2);

        for c in enumerate_columns(2, 1, 1, DEFAULT_SIZE_CAP).unwrap() {
            assert_eq!(omega_forget(&omega_inverse(&c).unwrap()).unwrap(), c);
        }
    }

    #[test]
    fn edit_center_counts_twice() {
        let t = Tuple::new(3, vec![Half::ZERO]).unwrap();
        let a = tuple_to_matrix(Family::J, 1, &t).unwrap();
        assert_eq!(a.get(Half::ZERO, Half::ZERO), 1);
        let b = a.edit(Half::ZERO, Half::ZERO, 1).unwrap();
        assert_eq!(b.get(Half::ZERO, Half::ZERO), 3);
        assert!(a.edit(Half::int(1), Half::ZERO, -1).is_none());
    }

    #[test]
    fn json_shape() {
        let t = Tuple::new(2, vec![Half(1)]).unwrap();
        let a = tuple_to_matrix(Family::I, 1, &t).unwrap();
        let v = a.to_json();
        assert_eq!(v["family"], "i");
        assert_eq!(v["entries"], json!([[-1, -1, 1], [1, 1, 1]]));
    }
}
