//! Free Q(q)-modules on labeled bases, sparse operators, and exact linear
//! algebra (rank, solving, commutant dimensions).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bases::{ColumnMatrix, ThetaMatrix, Tuple};
use crate::qscalar::{qfact, LaurentPoly, Poly, RatScalar};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    Theta(ThetaMatrix),
    Column(ColumnMatrix),
    Tuple(Tuple),
    RankOne { d: u32, k: u32 },
}

impl BasisLabel {
    pub fn to_json(&self) -> Value {
        match self {
            BasisLabel::Theta(a) => a.to_json(),
            BasisLabel::Column(c) => c.to_json(),
            BasisLabel::Tuple(t) => t.to_json(),
            BasisLabel::RankOne { d, k } => json!({"d": d, "k": k}),
        }
    }

    pub fn as_theta(&self) -> Option<&ThetaMatrix> {
        match self {
            BasisLabel::Theta(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_column(&self) -> Option<&ColumnMatrix> {
        match self {
            BasisLabel::Column(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_tuple(&self) -> Option<&Tuple> {
        match self {
            BasisLabel::Tuple(t) => Some(t),
            _ => None,
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Theta(a) => write!(f, "{a}"),
            BasisLabel::Column(c) => write!(f, "{c}"),
            BasisLabel::Tuple(t) => write!(f, "{t}"),
            BasisLabel::RankOne { d, k } => write!(f, "L{d}.v{k}"),
        }
    }
}

impl From<ThetaMatrix> for BasisLabel {
    fn from(a: ThetaMatrix) -> Self {
        BasisLabel::Theta(a)
    }
}

impl From<ColumnMatrix> for BasisLabel {
    fn from(c: ColumnMatrix) -> Self {
        BasisLabel::Column(c)
    }
}

impl From<Tuple> for BasisLabel {
    fn from(t: Tuple) -> Self {
        BasisLabel::Tuple(t)
    }
}

// ---------------------------------------------------------------------------
// Sparse vectors

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseVector {
    terms: BTreeMap<BasisLabel, RatScalar>,
}

impl SparseVector {
    pub fn zero() -> Self {
        SparseVector::default()
    }

    pub fn basis(l: impl Into<BasisLabel>) -> Self {
        let mut v = SparseVector::zero();
        v.terms.insert(l.into(), RatScalar::one());
        v
    }

    pub fn term(l: impl Into<BasisLabel>, c: RatScalar) -> Self {
        let mut v = SparseVector::zero();
        v.add_term(l.into(), c);
        v
    }

    pub fn add_term(&mut self, l: BasisLabel, c: RatScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&l) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&l);
                }
            }
            None => {
                self.terms.insert(l, c);
            }
        }
    }

    pub fn add_scaled(&mut self, o: &SparseVector, c: &RatScalar) {
        if c.is_zero() {
            return;
        }
        for (l, v) in &o.terms {
            self.add_term(l.clone(), v * c);
        }
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

    pub fn iter(&self) -> impl Iterator<Item = (&BasisLabel, &RatScalar)> {
        self.terms.iter()
    }

    pub fn labels(&self) -> impl Iterator<Item = &BasisLabel> {
        self.terms.keys()
    }

    pub fn get(&self, l: &BasisLabel) -> RatScalar {
        self.terms.get(l).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &RatScalar) -> SparseVector {
        if c.is_zero() {
            return SparseVector::zero();
        }
        SparseVector {
            terms: self.terms.iter().map(|(l, v)| (l.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, o: &SparseVector) -> SparseVector {
        let mut out = self.clone();
        out.add_scaled(o, &RatScalar::one());
        out
    }

    pub fn sub(&self, o: &SparseVector) -> SparseVector {
        let mut out = self.clone();
        out.add_scaled(o, &RatScalar::from_int(-1));
        out
    }

    /// Relabels coefficientwise; `f` must be injective on the support.
    pub fn map_labels(&self, mut f: impl FnMut(&BasisLabel) -> Result<BasisLabel>) -> Result<SparseVector> {
        let mut out = SparseVector::zero();
        for (l, c) in &self.terms {
            out.add_term(f(l)?, c.clone());
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(l, c)| json!({"label": l.to_json(), "coeff": c.to_string()}))
                .collect(),
        )
    }
}

impl fmt::Display for SparseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (l, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{l}")?;
            } else {
                write!(f, "({c})*{l}")?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Operators

type Rule = dyn Fn(&BasisLabel) -> Result<SparseVector> + Send + Sync;

/// A linear operator given by its values on basis labels, with a shared
/// memo of already computed columns.
#[derive(Clone)]
pub struct LinearOperator {
    space: Arc<str>,
    rule: Arc<Rule>,
    cache: Arc<RwLock<HashMap<BasisLabel, SparseVector>>>,
}

impl fmt::Debug for LinearOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearOperator({})", self.space)
    }
}

impl LinearOperator {
    pub fn new(
        space: impl AsRef<str>,
        rule: impl Fn(&BasisLabel) -> Result<SparseVector> + Send + Sync + 'static,
    ) -> Self {
        LinearOperator {
            space: Arc::from(space.as_ref()),
            rule: Arc::new(rule),
            cache: Arc::new(RwLock::new(HashMap::new())),
        }
    }

    pub fn identity(space: impl AsRef<str>) -> Self {
        LinearOperator::new(space, |l| Ok(SparseVector::basis(l.clone())))
    }

    pub fn zero(space: impl AsRef<str>) -> Self {
        LinearOperator::new(space, |_| Ok(SparseVector::zero()))
    }

    /// Diagonal operator `l -> f(l) l`.
    pub fn diagonal(
        space: impl AsRef<str>,
        f: impl Fn(&BasisLabel) -> Result<RatScalar> + Send + Sync + 'static,
    ) -> Self {
        LinearOperator::new(space, move |l| Ok(SparseVector::term(l.clone(), f(l)?)))
    }

    pub fn space(&self) -> &str {
        &self.space
    }

    fn same_space(&self, o: &LinearOperator) -> Result<()> {
        if self.space != o.space {
            return Err(Error::BasisMismatch(format!("{} vs {}", self.space, o.space)));
        }
        Ok(())
    }

    pub fn apply_label(&self, l: &BasisLabel) -> Result<SparseVector> {
        if let Some(v) = self.cache.read().unwrap().get(l) {
            return Ok(v.clone());
        }
        let v = (self.rule)(l)?;
        self.cache.write().unwrap().insert(l.clone(), v.clone());
        Ok(v)
    }

    pub fn apply(&self, v: &SparseVector) -> Result<SparseVector> {
        let mut out = SparseVector::zero();
        for (l, c) in v.iter() {
            out.add_scaled(&self.apply_label(l)?, c);
        }
        Ok(out)
    }

    /// `self o other`: apply `other` first.
    pub fn compose(&self, other: &LinearOperator) -> Result<LinearOperator> {
        self.same_space(other)?;
        let (a, b) = (self.clone(), other.clone());
        Ok(LinearOperator::new(&*self.space, move |l| a.apply(&b.apply_label(l)?)))
    }

    /// `other o self`: the right-action product `v . self . other`.
    pub fn then(&self, other: &LinearOperator) -> Result<LinearOperator> {
        other.compose(self)
    }

    pub fn linear_combination(&self, a: &RatScalar, other: &LinearOperator, b: &RatScalar) -> Result<LinearOperator> {
        self.same_space(other)?;
        let (x, y, a, b) = (self.clone(), other.clone(), a.clone(), b.clone());
        Ok(LinearOperator::new(&*self.space, move |l| {
            let mut v = x.apply_label(l)?.scale(&a);
            v.add_scaled(&y.apply_label(l)?, &b);
            Ok(v)
        }))
    }

    pub fn add(&self, other: &LinearOperator) -> Result<LinearOperator> {
        self.linear_combination(&RatScalar::one(), other, &RatScalar::one())
    }

    pub fn sub(&self, other: &LinearOperator) -> Result<LinearOperator> {
        self.linear_combination(&RatScalar::one(), other, &RatScalar::from_int(-1))
    }

    pub fn scale(&self, c: &RatScalar) -> LinearOperator {
        let (x, c) = (self.clone(), c.clone());
        LinearOperator::new(&*self.space, move |l| Ok(x.apply_label(l)?.scale(&c)))
    }

    /// `A o B - q^a B o A`.
    pub fn q_commutator(&self, other: &LinearOperator, a: i64) -> Result<LinearOperator> {
        let ab = self.compose(other)?;
        let ba = other.compose(self)?;
        ab.linear_combination(&RatScalar::one(), &ba, &-RatScalar::q_pow(a))
    }

    pub fn commutator(&self, other: &LinearOperator) -> Result<LinearOperator> {
        self.q_commutator(other, 0)
    }

    pub fn pow(&self, n: u32) -> LinearOperator {
        let x = self.clone();
        LinearOperator::new(&*self.space, move |l| {
            let mut v = SparseVector::basis(l.clone());
            for _ in 0..n {
                v = x.apply(&v)?;
            }
            Ok(v)
        })
    }

    /// `X^n / [n]!`.
    pub fn divided_power(&self, n: u32) -> Result<LinearOperator> {
        let f = qfact(n as i64)?.inv()?;
        Ok(self.pow(n).scale(&f))
    }

    /// `sum_k c_k X^k` applied to `v`, by Horner-free repeated application.
    pub fn apply_polynomial(&self, coeffs: &[RatScalar], v: &SparseVector) -> Result<SparseVector> {
        let mut out = SparseVector::zero();
        let mut cur = v.clone();
        for (k, c) in coeffs.iter().enumerate() {
            if k > 0 {
                cur = self.apply(&cur)?;
                if cur.is_zero() {
                    break;
                }
            }
            out.add_scaled(&cur, c);
        }
        Ok(out)
    }

    /// First basis label where the two operators differ, with both images.
    pub fn first_difference(
        &self,
        other: &LinearOperator,
        basis: &[BasisLabel],
    ) -> Result<Option<(BasisLabel, SparseVector, SparseVector)>> {
        self.same_space(other)?;
        let found = basis
            .par_iter()
            .map(|l| -> Result<Option<(BasisLabel, SparseVector, SparseVector)>> {
                let a = self.apply_label(l)?;
                let b = other.apply_label(l)?;
                Ok((a != b).then(|| (l.clone(), a, b)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(found.into_iter().flatten().next())
    }

    pub fn equals_on(&self, other: &LinearOperator, basis: &[BasisLabel]) -> Result<bool> {
        Ok(self.first_difference(other, basis)?.is_none())
    }

    pub fn is_zero_on(&self, basis: &[BasisLabel]) -> Result<bool> {
        let z = basis
            .par_iter()
            .map(|l| self.apply_label(l).map(|v| v.is_zero()))
            .collect::<Result<Vec<_>>>()?;
        Ok(z.into_iter().all(|b| b))
    }

    /// Columns of the operator over `basis`. Errors if an image leaves
    /// the span of `basis`.
    pub fn materialize(&self, basis: &[BasisLabel]) -> Result<SparseMatrix> {
        let index: HashMap<BasisLabel, usize> = basis.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let cols = basis
            .par_iter()
            .map(|l| -> Result<Vec<(usize, RatScalar)>> {
                let v = self.apply_label(l)?;
                let mut col = Vec::with_capacity(v.len());
                for (t, c) in v.iter() {
                    let r = *index
                        .get(t)
                        .ok_or_else(|| Error::BasisMismatch(format!("{t} is outside the enumerated basis")))?;
                    col.push((r, c.clone()));
                }
                col.sort_by_key(|e| e.0);
                Ok(col)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SparseMatrix { dim: basis.len(), cols })
    }
}

/// Square sparse matrix stored by columns: `cols[c]` lists `(r, a_rc)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    pub dim: usize,
    pub cols: Vec<Vec<(usize, RatScalar)>>,
}

impl SparseMatrix {
    pub fn get(&self, r: usize, c: usize) -> RatScalar {
        self.cols[c]
            .iter()
            .find(|e| e.0 == r)
            .map(|e| e.1.clone())
            .unwrap_or_default()
    }

    pub fn is_diagonal(&self) -> bool {
        self.cols.iter().enumerate().all(|(c, col)| col.iter().all(|e| e.0 == c))
    }

    /// Row-major rows, `rows[r]` lists `(c, a_rc)`.
    pub fn rows(&self) -> Vec<Vec<(usize, RatScalar)>> {
        let mut rows = vec![Vec::new(); self.dim];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                rows[*r].push((c, v.clone()));
            }
        }
        rows
    }

    /// Dense dump, row-major, as scalar strings.
    pub fn to_json(&self) -> Value {
        let mut dense = vec![vec!["0".to_string(); self.dim]; self.dim];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                dense[*r][c] = v.to_string();
            }
        }
        json!(dense)
    }
}

// ---------------------------------------------------------------------------
// Weight spaces

/// Simultaneous eigenspaces of diagonal operators, in order of first
/// appearance along `basis`, each with its eigenvalue vector.
pub fn weight_split(
    diagonals: &[LinearOperator],
    basis: &[BasisLabel],
) -> Result<Vec<(Vec<RatScalar>, Vec<BasisLabel>)>> {
    let keys = basis
        .par_iter()
        .map(|l| {
            diagonals
                .iter()
                .map(|d| {
                    let v = d.apply_label(l)?;
                    if v.len() > 1 || (v.len() == 1 && v.labels().next() != Some(l)) {
                        return Err(Error::NotDiagonal(l.to_string()));
                    }
                    Ok(v.get(l))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut order: Vec<(Vec<RatScalar>, Vec<BasisLabel>)> = Vec::new();
    let mut pos: HashMap<Vec<RatScalar>, usize> = HashMap::new();
    for (l, k) in basis.iter().zip(keys) {
        match pos.get(&k) {
            Some(&p) => order[p].1.push(l.clone()),
            None => {
                pos.insert(k.clone(), order.len());
                order.push((k, vec![l.clone()]));
            }
        }
    }
    Ok(order)
}

// ---------------------------------------------------------------------------
// Exact linear algebra

/// A sparse row `(column, value)`, columns strictly increasing.
pub type SparseRow<T> = Vec<(usize, T)>;

fn poly_row_content(row: &BTreeMap<usize, Poly>) -> Poly {
    let mut g = Poly::zero();
    for p in row.values() {
        g = g.gcd(p);
        if g.degree() == Some(0) {
            break;
        }
    }
    g
}

fn normalize_poly_row(row: &mut BTreeMap<usize, Poly>) {
    let g = poly_row_content(row);
    if g.degree().is_some_and(|d| d > 0) {
        for p in row.values_mut() {
            *p = p.exact_div(&g);
        }
    }
    // rational content
    let mut c: Option<BigRational> = None;
    for p in row.values() {
        let (pc, _) = p.primitive();
        let pc = num_traits::Signed::abs(&pc);
        c = Some(match c {
            None => pc,
            Some(x) => rat_gcd(&x, &pc),
        });
    }
    if let Some(c) = c {
        if !c.is_one() {
            let inv = c.recip();
            for p in row.values_mut() {
                *p = p.scale(&inv);
            }
        }
    }
}

fn rat_gcd(a: &BigRational, b: &BigRational) -> BigRational {
    use num_integer::Integer;
    BigRational::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}

/// Clears denominators and `q`-powers so every entry is a polynomial.
fn to_poly_row(row: &SparseRow<RatScalar>) -> BTreeMap<usize, Poly> {
    let mut den = LaurentPoly::one();
    for (_, v) in row {
        if !v.den().is_one() && (den.is_one() || !poly_divides(v.den(), &den)) {
            den = &den * v.den();
        }
    }
    let den_s = RatScalar::from_laurent(den);
    let scaled: Vec<(usize, LaurentPoly)> = row
        .iter()
        .map(|(c, v)| {
            let w = v * &den_s;
            debug_assert!(w.is_laurent());
            (*c, w.num().clone())
        })
        .collect();
    let lo = scaled.iter().filter_map(|(_, p)| p.lowest()).min().unwrap_or(0);
    let mut out = BTreeMap::new();
    for (c, p) in scaled {
        if !p.is_zero() {
            let (s, d) = p.shift(-lo).to_dense();
            let mut coeffs = vec![BigRational::zero(); s as usize];
            coeffs.extend_from_slice(d.coeffs());
            out.insert(c, Poly::from_coeffs(coeffs));
        }
    }
    out
}

fn poly_divides(d: &LaurentPoly, n: &LaurentPoly) -> bool {
    let (_, dp) = d.to_dense();
    let (_, np) = n.to_dense();
    np.divrem(&dp).map(|(_, r)| r.is_zero()).unwrap_or(false)
}

/// Rank over Q(q) by fraction-free elimination on polynomial rows.
///
/// Each elimination step replaces `r_j` by `p r_j - a r_k` where `p` is
/// the pivot and `a` the entry being cleared, then divides the row by the
/// gcd of its entries. Pivots are chosen Markowitz style: shortest row,
/// then lowest degree entry.
pub fn rank_fraction_free(rows: &[SparseRow<RatScalar>]) -> usize {
    let mut rows: Vec<BTreeMap<usize, Poly>> = rows
        .iter()
        .map(to_poly_row)
        .filter(|r| !r.is_empty())
        .collect();
    for r in rows.iter_mut() {
        normalize_poly_row(r);
    }
    let mut rank = 0;
    while !rows.is_empty() {
        let (pi, _) = rows
            .iter()
            .enumerate()
            .min_by_key(|(_, r)| {
                let deg = r.values().map(|p| p.degree().unwrap_or(0)).min().unwrap_or(0);
                (r.len(), deg)
            })
            .unwrap();
        let prow = rows.swap_remove(pi);
        let (&pc, pv) = prow
            .iter()
            .min_by_key(|(_, p)| p.degree().unwrap_or(0))
            .unwrap();
        let pv = pv.clone();
        rank += 1;
        rows.par_iter_mut().for_each(|r| {
            let Some(a) = r.remove(&pc) else { return };
            let mut out: BTreeMap<usize, Poly> = BTreeMap::new();
            for (c, v) in r.iter() {
                out.insert(*c, v.mul(&pv));
            }
            for (c, v) in prow.iter() {
                if *c == pc {
                    continue;
                }
                let t = v.mul(&a);
                let e = out.entry(*c).or_insert_with(Poly::zero);
                *e = e.sub(&t);
            }
            out.retain(|_, p| !p.is_zero());
            normalize_poly_row(&mut out);
            *r = out;
        });
        rows.retain(|r| !r.is_empty());
    }
    rank
}

/// Rank over Q(q) by plain Gaussian elimination with field division.
pub fn rank_naive(rows: &[SparseRow<RatScalar>]) -> usize {
    generic_rank(
        rows.iter().map(|r| r.iter().cloned().collect()).collect(),
        |a, b| a * b,
        |a, b| a - b,
        |a| a.inv().unwrap(),
        |a| -a,
        |a| a.is_zero(),
    )
}

/// Rank over Q of a rational matrix.
pub fn rank_rational(rows: Vec<BTreeMap<usize, BigRational>>) -> usize {
    generic_rank(rows, |a, b| a * b, |a, b| a - b, |a| a.recip(), |a| -a, |a| a.is_zero())
}

fn generic_rank<T: Clone + Send + Sync>(
    mut rows: Vec<BTreeMap<usize, T>>,
    mul: impl Fn(&T, &T) -> T + Sync,
    sub: impl Fn(&T, &T) -> T + Sync,
    inv: impl Fn(&T) -> T,
    neg: impl Fn(&T) -> T + Sync,
    is_zero: impl Fn(&T) -> bool + Sync,
) -> usize {
    rows.retain(|r| !r.is_empty());
    let mut rank = 0;
    while !rows.is_empty() {
        let (pi, _) = rows.iter().enumerate().min_by_key(|(_, r)| r.len()).unwrap();
        let prow = rows.swap_remove(pi);
        let (&pc, pv) = prow.iter().next().unwrap();
        let pinv = inv(pv);
        rank += 1;
        rows.par_iter_mut().for_each(|r| {
            let Some(a) = r.remove(&pc) else { return };
            let f = mul(&a, &pinv);
            for (c, v) in prow.iter() {
                if *c == pc {
                    continue;
                }
                let t = mul(v, &f);
                match r.get_mut(c) {
                    Some(e) => {
                        *e = sub(e, &t);
                        if is_zero(e) {
                            r.remove(c);
                        }
                    }
                    None => {
                        r.insert(*c, neg(&t));
                    }
                }
            }
        });
        rows.retain(|r| !r.is_empty());
    }
    rank
}

/// Solution of a linear system over Q(q).
#[derive(Debug, Clone)]
pub struct Solution {
    /// A particular solution, free variables set to zero.
    pub values: Vec<RatScalar>,
    pub nullity: usize,
}

/// Solves `sum_c a_rc x_c = b_r` over Q(q). Returns `None` when the system
/// is inconsistent.
pub fn solve_linear(
    nvars: usize,
    rows: &[(SparseRow<RatScalar>, RatScalar)],
) -> Option<Solution> {
    let mut work: Vec<(BTreeMap<usize, RatScalar>, RatScalar)> = rows
        .iter()
        .map(|(r, b)| (r.iter().filter(|e| !e.1.is_zero()).cloned().collect(), b.clone()))
        .collect();
    let mut pivots: Vec<(usize, BTreeMap<usize, RatScalar>, RatScalar)> = Vec::new();
    loop {
        if work.iter().any(|(r, b)| r.is_empty() && !b.is_zero()) {
            return None;
        }
        work.retain(|(r, _)| !r.is_empty());
        if work.is_empty() {
            break;
        }
        let (pi, _) = work.iter().enumerate().min_by_key(|(_, r)| r.0.len()).unwrap();
        let (mut prow, mut pb) = work.swap_remove(pi);
        let (&pc, pv) = prow.iter().next().unwrap();
        let pinv = pv.inv().unwrap();
        for v in prow.values_mut() {
            *v = &*v * &pinv;
        }
        pb = &pb * &pinv;
        work.par_iter_mut().for_each(|(r, b)| {
            let Some(a) = r.remove(&pc) else { return };
            for (c, v) in prow.iter() {
                if *c == pc {
                    continue;
                }
                let t = v * &a;
                let e = r.entry(*c).or_default();
                *e -= &t;
                if e.is_zero() {
                    r.remove(c);
                }
            }
            *b -= &(&pb * &a);
        });
        pivots.push((pc, prow, pb));
    }
    let nullity = nvars - pivots.len();
    let mut values = vec![RatScalar::zero(); nvars];
    for (pc, row, b) in pivots.iter().rev() {
        let mut x = b.clone();
        for (c, v) in row {
            if c != pc {
                x -= &(v * &values[*c]);
            }
        }
        values[*pc] = x;
    }
    Some(Solution { values, nullity })
}

// ---------------------------------------------------------------------------
// Commutants

pub const DEFAULT_SPECIALIZATION: (i64, i64) = (13, 7);
pub const CONFIRM_SPECIALIZATION: (i64, i64) = (19, 5);

/// Equations `[Y, X_a] = 0` in the entries of `Y`, restricted to the
/// block structure forced by the diagonal generators.
pub struct CommutantSystem {
    /// Unknown `(r, c)` means the entry `Y_rc`.
    pub unknowns: Vec<(usize, usize)>,
    pub equations: Vec<SparseRow<RatScalar>>,
}

pub fn commutant_system(generators: &[LinearOperator], basis: &[BasisLabel]) -> Result<CommutantSystem> {
    let mats = generators
        .iter()
        .map(|g| g.materialize(basis))
        .collect::<Result<Vec<_>>>()?;
    let n = basis.len();
    let (diag, general): (Vec<_>, Vec<_>) = mats.into_iter().partition(|m| m.is_diagonal());
    let mut block = vec![0usize; n];
    {
        let mut ids: HashMap<Vec<RatScalar>, usize> = HashMap::new();
        for (c, b) in block.iter_mut().enumerate() {
            let key: Vec<RatScalar> = diag.iter().map(|m| m.get(c, c)).collect();
            let next = ids.len();
            *b = *ids.entry(key).or_insert(next);
        }
    }
    let mut unknowns = Vec::new();
    let mut uidx: HashMap<(usize, usize), usize> = HashMap::new();
    for r in 0..n {
        for c in 0..n {
            if block[r] == block[c] {
                uidx.insert((r, c), unknowns.len());
                unknowns.push((r, c));
            }
        }
    }
    let mut equations = Vec::new();
    for x in &general {
        let xrows = x.rows();
        // (YX - XY)_{rc} = sum_k Y_rk X_kc - X_rk Y_kc
        let eqs: Vec<SparseRow<RatScalar>> = (0..n)
            .into_par_iter()
            .flat_map_iter(|r| {
                let mut local = Vec::new();
                for c in 0..n {
                    let mut row: BTreeMap<usize, RatScalar> = BTreeMap::new();
                    for (k, v) in &x.cols[c] {
                        if let Some(&u) = uidx.get(&(r, *k)) {
                            *row.entry(u).or_default() += v;
                        }
                    }
                    for (k, v) in &xrows[r] {
                        if let Some(&u) = uidx.get(&(*k, c)) {
                            *row.entry(u).or_default() -= v;
                        }
                    }
                    row.retain(|_, v| !v.is_zero());
                    if !row.is_empty() {
                        local.push(row.into_iter().collect());
                    }
                }
                local
            })
            .collect();
        equations.extend(eqs);
    }
    Ok(CommutantSystem { unknowns, equations })
}

/// Dimension of `{Y : [Y, X_a] = 0}`. With `specialize` the equations are
/// evaluated at that rational value of `q`, which can only lower the rank,
/// so the result bounds the generic dimension from above.
pub fn commutant_dimension(
    generators: &[LinearOperator],
    basis: &[BasisLabel],
    specialize: Option<&BigRational>,
) -> Result<usize> {
    let sys = commutant_system(generators, basis)?;
    let rank = match specialize {
        None => rank_fraction_free(&sys.equations),
        Some(x) => rank_rational(specialize_rows(&sys.equations, x)?),
    };
    Ok(sys.unknowns.len() - rank)
}

pub fn specialize_rows(rows: &[SparseRow<RatScalar>], x: &BigRational) -> Result<Vec<BTreeMap<usize, BigRational>>> {
    rows.par_iter()
        .map(|r| {
            let mut out = BTreeMap::new();
            for (c, v) in r {
                let e = v.eval(x)?;
                if !e.is_zero() {
                    out.insert(*c, e);
                }
            }
            Ok(out)
        })
        .collect()
}

/// Rank of a family of operators viewed as vectors in `End(span basis)`.
pub fn operator_span_rank(ops: &[LinearOperator], basis: &[BasisLabel], specialize: Option<&BigRational>) -> Result<usize> {
    let n = basis.len();
    let rows = ops
        .iter()
        .map(|o| {
            let m = o.materialize(basis)?;
            let mut row = Vec::new();
            for (c, col) in m.cols.iter().enumerate() {
                for (r, v) in col {
                    row.push((r * n + c, v.clone()));
                }
            }
            row.sort_by_key(|e| e.0);
            Ok(row)
        })
        .collect::<Result<Vec<SparseRow<RatScalar>>>>()?;
    Ok(match specialize {
        None => rank_fraction_free(&rows),
        Some(x) => rank_rational(specialize_rows(&rows, x)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qscalar::qint;

    fn rk(k: u32) -> BasisLabel {
        BasisLabel::RankOne { d: 1, k }
    }

    /// The 2x2 operator `v_0 -> q v_0 + v_1`, `v_1 -> v_0 + q^-1 v_1`.
    fn b0_like() -> LinearOperator {
        LinearOperator::new("L1", |l| {
            let BasisLabel::RankOne { k, .. } = l else { unreachable!() };
            let mut v = SparseVector::zero();
            if *k == 0 {
                v.add_term(rk(0), RatScalar::q_pow(1));
                v.add_term(rk(1), RatScalar::one());
            } else {
                v.add_term(rk(0), RatScalar::one());
                v.add_term(rk(1), RatScalar::q_pow(-1));
            }
            Ok(v)
        })
    }

    #[test]
    fn self_commutator_vanishes() {
        let x = b0_like();
        let basis = vec![rk(0), rk(1)];
        assert!(x.commutator(&x).unwrap().is_zero_on(&basis).unwrap());
    }

    #[test]
    fn eigen_relation() {
        let x = b0_like();
        let basis = vec![rk(0), rk(1)];
        let sq = x.compose(&x).unwrap();
        let rel = sq.sub(&x.scale(&qint(2))).unwrap();
        assert!(rel.is_zero_on(&basis).unwrap());
    }

    #[test]
    fn divided_power_edges() {
        let x = b0_like();
        let basis = vec![rk(0), rk(1)];
        assert!(x.divided_power(0).unwrap().equals_on(&LinearOperator::identity("L1"), &basis).unwrap());
        assert!(x.divided_power(1).unwrap().equals_on(&x, &basis).unwrap());
    }

    #[test]
    fn basis_mismatch() {
        let x = b0_like();
        let y = LinearOperator::identity("other");
        assert!(matches!(x.compose(&y), Err(Error::BasisMismatch(_))));
    }

    #[test]
    fn commutant_examples() {
        let basis = vec![rk(0), rk(1)];
        let id = LinearOperator::identity("L1");
        assert_eq!(commutant_dimension(&[id], &basis, None).unwrap(), 4);
        assert_eq!(commutant_dimension(&[b0_like()], &basis, None).unwrap(), 2);
        let x = BigRational::new(13.into(), 7.into());
        assert_eq!(commutant_dimension(&[b0_like()], &basis, Some(&x)).unwrap(), 2);
    }

    #[test]
    fn weight_split_trivial() {
        let basis = vec![rk(0), rk(1)];
        let parts = weight_split(&[], &basis).unwrap();
        assert_eq!(parts.len(), 1);
        assert!(matches!(weight_split(&[b0_like()], &basis), Err(Error::NotDiagonal(_))));
    }

    #[test]
    fn solve_small() {
        // x + q y = 1, x - y = 0
        let rows = vec![
            (vec![(0, RatScalar::one()), (1, RatScalar::q_pow(1))], RatScalar::one()),
            (vec![(0, RatScalar::one()), (1, RatScalar::from_int(-1))], RatScalar::zero()),
        ];
        let s = solve_linear(2, &rows).unwrap();
        assert_eq!(s.nullity, 0);
        let expect = RatScalar::one().checked_div(&(&RatScalar::q_pow(1) + &RatScalar::one())).unwrap();
        assert_eq!(s.values[0], expect);
        assert_eq!(s.values[1], expect);
        let bad = vec![
            (vec![(0, RatScalar::one())], RatScalar::one()),
            (vec![(0, RatScalar::one())], RatScalar::zero()),
        ];
        assert!(solve_linear(1, &bad).is_none());
    }
}
