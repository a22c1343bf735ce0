//! Module actions: the Howe-side actions on theta and column matrices,
//! the coproduct action on tensor space, the Hecke action, and the
//! relabeling maps between them.
//!
//! Right actions are stored as ordinary operators on labels; a product
//! `v . x . y` is `x.then(&y)`.

use std::sync::Arc;

use crate::bases::{
    enumerate_columns, enumerate_theta, enumerate_tuples, index_set, matrix_to_tuple, omega_forget, omega_inverse,
    tuple_to_matrix, ColumnMatrix, Family, Half, ThetaMatrix, Tuple, DEFAULT_SIZE_CAP,
};
use crate::freemod::{BasisLabel, LinearOperator, SparseVector};
use crate::qscalar::{qint, RatScalar};
use crate::uqalg::{expand_igenerator, AlgebraWord, Gen, IGen, Representation, Side};
use crate::{Error, Result};

fn q(e: i64) -> RatScalar {
    RatScalar::q_pow(e)
}

fn bracket_term(e: i64, a: i64) -> RatScalar {
    qint(a).shift(e)
}

// ---------------------------------------------------------------------------
// Tensor space

/// `V^{(x) n}` for the natural `U(gl_M)`-module `V`, basis `v_lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TensorRep {
    pub big_m: u32,
    pub n: u32,
}

impl TensorRep {
    pub fn new(big_m: u32, n: u32) -> Self {
        TensorRep { big_m, n }
    }

    pub fn basis(&self) -> Result<Vec<BasisLabel>> {
        Ok(enumerate_tuples(self.big_m, self.n, DEFAULT_SIZE_CAP)?
            .into_iter()
            .map(BasisLabel::Tuple)
            .collect())
    }

    fn tuple<'a>(&self, l: &'a BasisLabel) -> Result<&'a Tuple> {
        match l {
            BasisLabel::Tuple(t) if t.big_m == self.big_m && t.len() == self.n as usize => Ok(t),
            _ => Err(Error::BasisMismatch(format!("{l} is not in {}", self.space()))),
        }
    }
}

/// `K_i` eigenvalue exponent on `v_a`.
fn k_exp(i: Half, a: Half) -> i64 {
    i64::from(a == i - Half::HALF) - i64::from(a == i + Half::HALF)
}

impl Representation for TensorRep {
    fn rank(&self) -> u32 {
        self.big_m
    }

    fn space(&self) -> String {
        format!("V{}^{}", self.big_m, self.n)
    }

    fn act_gen(&self, g: &Gen, l: &BasisLabel) -> Result<SparseVector> {
        let t = self.tuple(l)?;
        let mut out = SparseVector::zero();
        match g {
            // E_i -> sum_r K_i x ... x K_i x E_i x 1 x ... x 1
            Gen::E(i) => {
                let mut pre = 0i64;
                for (r, &a) in t.comps.iter().enumerate() {
                    if a == *i + Half::HALF {
                        let mut c = t.comps.clone();
                        c[r] = a - Half::ONE;
                        out.add_term(Tuple { big_m: t.big_m, comps: c }.into(), q(pre));
                    }
                    pre += k_exp(*i, a);
                }
            }
            // F_i -> sum_r 1 x ... x 1 x F_i x K_i^-1 x ... x K_i^-1
            Gen::F(i) => {
                let mut post: i64 = t.comps.iter().map(|&a| -k_exp(*i, a)).sum();
                for (r, &a) in t.comps.iter().enumerate() {
                    post += k_exp(*i, a);
                    if a == *i - Half::HALF {
                        let mut c = t.comps.clone();
                        c[r] = a + Half::ONE;
                        out.add_term(Tuple { big_m: t.big_m, comps: c }.into(), q(post));
                    }
                }
            }
            Gen::D(a, e) => {
                let cnt = t.comps.iter().filter(|&&x| x == *a).count() as i64;
                out.add_term(l.clone(), q(*e as i64 * cnt));
            }
            Gen::Bracket(_) => unreachable!("brackets are evaluated by the word layer"),
        }
        Ok(out)
    }
}

/// Applies a word (or an expanded iquantum generator) on tensor space.
pub fn act_tensor(w: &AlgebraWord, v: &SparseVector, big_m: u32, n: u32) -> Result<SparseVector> {
    w.act(&TensorRep::new(big_m, n), Side::Left, v)
}

/// Left action of an iquantum generator of `U^i_m` / `U^j_m` on `V^{(x) n}`.
pub fn tensor_igen_operator(family: Family, m: u32, n: u32, g: &IGen) -> Result<LinearOperator> {
    let w = expand_igenerator(g, family, m)?;
    let rep: Arc<dyn Representation> = Arc::new(TensorRep::new(family.ambient(m), n));
    Ok(w.operator(rep, Side::Left))
}

// ---------------------------------------------------------------------------
// Hecke action

/// `v_lambda sigma_i` for a single generator.
pub fn hecke_sigma_label(i: usize, t: &Tuple) -> Result<SparseVector> {
    let n = t.len();
    if i >= n.max(1) {
        return Err(Error::IndexOutOfRange(format!("sigma_{i} on {n} factors")));
    }
    let mut swapped = t.clone();
    let ord = if i == 0 {
        swapped.comps[0] = -t.comps[0];
        Half::ZERO.cmp(&t.comps[0])
    } else {
        swapped.comps.swap(i - 1, i);
        t.comps[i - 1].cmp(&t.comps[i])
    };
    let mut out = SparseVector::zero();
    match ord {
        std::cmp::Ordering::Less => out.add_term(swapped.into(), RatScalar::one()),
        std::cmp::Ordering::Equal => out.add_term(swapped.into(), q(-1)),
        std::cmp::Ordering::Greater => {
            out.add_term(swapped.into(), RatScalar::one());
            out.add_term(t.clone().into(), &q(-1) - &q(1));
        }
    }
    Ok(out)
}

/// `v sigma_{w_1} sigma_{w_2} ...`, letters applied left to right.
pub fn hecke_sigma(word: &[usize], v: &SparseVector) -> Result<SparseVector> {
    let mut cur = v.clone();
    for &i in word {
        let mut next = SparseVector::zero();
        for (l, c) in cur.iter() {
            let t = l
                .as_tuple()
                .ok_or_else(|| Error::BasisMismatch(format!("{l} is not a tuple")))?;
            next.add_scaled(&hecke_sigma_label(i, t)?, c);
        }
        cur = next;
    }
    Ok(cur)
}

pub fn hecke_operator(word: &[usize], big_m: u32, n: u32) -> Result<LinearOperator> {
    for &i in word {
        if i >= n as usize {
            return Err(Error::IndexOutOfRange(format!("sigma_{i} with n = {n}")));
        }
    }
    let w = word.to_vec();
    Ok(LinearOperator::new(TensorRep::new(big_m, n).space(), move |l| {
        hecke_sigma(&w, &SparseVector::basis(l.clone()))
    }))
}

// ---------------------------------------------------------------------------
// Howe actions on theta matrices

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HoweSpace {
    pub family: Family,
    pub m: u32,
    pub n: u32,
    pub d: u32,
}

impl HoweSpace {
    pub fn new(family: Family, m: u32, n: u32, d: u32) -> Self {
        HoweSpace { family, m, n, d }
    }

    pub fn tag(&self) -> String {
        format!("Xi_{}({},{},{})", self.family, self.m, self.n, self.d)
    }

    pub fn basis(&self) -> Result<Vec<BasisLabel>> {
        Ok(enumerate_theta(self.family, self.m, self.n, self.d, DEFAULT_SIZE_CAP)?
            .into_iter()
            .map(BasisLabel::Theta)
            .collect())
    }

    /// Generators of the iquantum group acting on the given side.
    pub fn generators(&self, side: Side) -> Vec<IGen> {
        let r = match side {
            Side::Left => self.m,
            Side::Right => self.n,
        };
        crate::uqalg::igenerators(self.family, r)
    }

    pub fn operator(&self, side: Side, g: &IGen) -> Result<LinearOperator> {
        let rank = match side {
            Side::Left => self.m,
            Side::Right => self.n,
        };
        if *g == IGen::T0 {
            return t0_operator(self, side);
        }
        check_howe_gen(self.family, side, rank, g)?;
        let (fam, g) = (self.family, g.clone());
        let me = *self;
        Ok(LinearOperator::new(self.tag(), move |l| {
            let a = l
                .as_theta()
                .filter(|a| a.family == fam && a.m == me.m && a.n == me.n)
                .ok_or_else(|| Error::BasisMismatch(format!("{l} is not in {}", me.tag())))?;
            act_howe(fam, side, &g, a)
        }))
    }
}

fn check_howe_gen(family: Family, side: Side, rank: u32, g: &IGen) -> Result<()> {
    let oob = || Error::IndexOutOfRange(format!("{g} on the {side:?} in the {family} family of rank {rank}"));
    let r = rank as i32;
    let ok = match (family, g) {
        (Family::I, IGen::B(i)) => i.is_integer() && *i != Half::ZERO && i.0.abs() <= 2 * (r - 1),
        (Family::I, IGen::B0) => r >= 1,
        (Family::I, IGen::B0s(_)) => r >= 1 && side == Side::Right,
        (Family::I, IGen::Dr(x)) => !x.is_integer() && x.0 > 0 && x.0 < 2 * r,
        (Family::I, IGen::Ki(i)) => i.is_integer() && i.0 > 0 && i.0 <= 2 * (r - 1),
        (Family::J, IGen::B(i)) => !i.is_integer() && i.0.abs() < 2 * r,
        (Family::J, IGen::Dr(x)) => x.is_integer() && x.0 >= 0 && x.0 <= 2 * r,
        (Family::J, IGen::Ki(i)) => !i.is_integer() && i.0 > 0 && i.0 < 2 * r,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(oob())
    }
}

fn theta_edit(a: &ThetaMatrix, add: (Half, Half), sub: (Half, Half)) -> Result<ThetaMatrix> {
    a.edit(add.0, add.1, 1)
        .and_then(|b| b.edit(sub.0, sub.1, -1))
        .ok_or_else(|| Error::InvariantViolation(format!("edit of {a} left the index set")))
}

fn row_range_sum(a: &ThetaMatrix, col: Half, rows: impl Iterator<Item = Half>) -> i64 {
    rows.map(|k| a.get(k, col) as i64).sum()
}

fn col_range_sum(a: &ThetaMatrix, row: Half, cols: impl Iterator<Item = Half>) -> i64 {
    cols.map(|k| a.get(row, k) as i64).sum()
}

/// One basis-level Howe action `gen . t^A` (left) or `t^A . gen` (right).
pub fn act_howe(family: Family, side: Side, g: &IGen, a: &ThetaMatrix) -> Result<SparseVector> {
    if a.family != family {
        return Err(Error::BasisMismatch(format!("{a} is not in the {family} family")));
    }
    let out = match (family, side) {
        (Family::I, Side::Left) => act_i_left(g, a)?,
        (Family::I, Side::Right) => act_i_right(g, a)?,
        (Family::J, Side::Left) => act_j_left(g, a)?,
        (Family::J, Side::Right) => act_j_right(g, a)?,
    };
    for l in out.labels() {
        l.as_theta().unwrap().check_invariants()?;
    }
    Ok(out)
}

fn act_i_left(g: &IGen, a: &ThetaMatrix) -> Result<SparseVector> {
    check_howe_gen(Family::I, Side::Left, a.m, g)?;
    let cols = a.col_indices();
    let h = Half::HALF;
    let mut out = SparseVector::zero();
    match g {
        IGen::B(i) => {
            let (up, lo) = (*i + h, *i - h);
            for &j in &cols {
                let x = a.get(lo, j) as i64;
                if x == 0 {
                    continue;
                }
                let e: i64 = cols
                    .iter()
                    .filter(|&&k| k >= j)
                    .map(|&k| a.get(up, k) as i64 - a.get(lo, k) as i64)
                    .sum::<i64>()
                    + 1;
                out.add_term(theta_edit(a, (up, j), (lo, j))?.into(), bracket_term(e, x));
            }
        }
        IGen::B0 => {
            for &j in &cols {
                let x = a.get(-h, j) as i64;
                if x == 0 {
                    continue;
                }
                let e: i64 = cols
                    .iter()
                    .filter(|&&k| k >= j)
                    .map(|&k| a.get(h, k) as i64 - a.get(-h, k) as i64)
                    .sum::<i64>()
                    + i64::from(j.0 > 0);
                out.add_term(theta_edit(a, (h, j), (-h, j))?.into(), bracket_term(e, x));
            }
            let e: i64 = cols
                .iter()
                .filter(|k| k.0 > 0)
                .map(|&k| a.get(h, k) as i64 - a.get(-h, k) as i64)
                .sum();
            out.add_term(a.clone().into(), q(e));
        }
        IGen::Dr(r) => out.add_term(a.clone().into(), q(a.row_sum(*r) as i64)),
        IGen::Ki(i) => {
            let e = a.row_sum(*i - h) as i64 - a.row_sum(*i + h) as i64;
            out.add_term(a.clone().into(), q(e));
        }
        _ => unreachable!(),
    }
    Ok(out)
}

fn act_i_right(g: &IGen, a: &ThetaMatrix) -> Result<SparseVector> {
    check_howe_gen(Family::I, Side::Right, a.n, g)?;
    let rows = a.row_indices();
    let h = Half::HALF;
    let mut out = SparseVector::zero();
    let b0 = |diag_scale: RatScalar, out: &mut SparseVector| -> Result<()> {
        for &j in &rows {
            let x = a.get(j, h) as i64;
            if x == 0 {
                continue;
            }
            let e = row_range_sum(a, h, rows.iter().copied().filter(|&k| k > j))
                - row_range_sum(a, -h, rows.iter().copied().filter(|&k| k > j))
                + i64::from(j.0 < 0);
            out.add_term(theta_edit(a, (j, -h), (j, h))?.into(), bracket_term(e, x));
        }
        let e = row_range_sum(a, h, rows.iter().copied().filter(|k| k.0 > 0))
            - row_range_sum(a, -h, rows.iter().copied().filter(|k| k.0 > 0));
        out.add_term(a.clone().into(), &diag_scale * &q(e));
        Ok(())
    };
    match g {
        IGen::B(i) => {
            let (up, lo) = (*i + h, *i - h);
            for &j in &rows {
                let x = a.get(j, up) as i64;
                if x == 0 {
                    continue;
                }
                let later = || rows.iter().copied().filter(|&k| k > j);
                let e = row_range_sum(a, up, later()) - row_range_sum(a, lo, later());
                out.add_term(theta_edit(a, (j, lo), (j, up))?.into(), bracket_term(e, x));
            }
        }
        IGen::B0 => b0(RatScalar::one(), &mut out)?,
        IGen::B0s(s) => b0(qint(*s), &mut out)?,
        IGen::Dr(r) => out.add_term(a.clone().into(), q(a.col_sum(*r) as i64)),
        IGen::Ki(i) => {
            let e = a.col_sum(*i - h) as i64 - a.col_sum(*i + h) as i64;
            out.add_term(a.clone().into(), q(e));
        }
        _ => unreachable!(),
    }
    Ok(out)
}

fn act_j_left(g: &IGen, a: &ThetaMatrix) -> Result<SparseVector> {
    check_howe_gen(Family::J, Side::Left, a.m, g)?;
    let cols = a.col_indices();
    let h = Half::HALF;
    let z = Half::ZERO;
    let mut out = SparseVector::zero();
    match g {
        IGen::B(i) if i.0 > 0 => {
            let (up, lo) = (*i + h, *i - h);
            let first = *i == h;
            for &j in &cols {
                let dd = i64::from(first && j == z);
                let x = a.get(lo, j) as i64;
                if x <= dd {
                    continue;
                }
                let e = col_range_sum(a, up, cols.iter().copied().filter(|&k| k >= j))
                    - col_range_sum(a, lo, cols.iter().copied().filter(|&k| k >= j))
                    + 1
                    + i64::from(first && j.0 <= 0);
                out.add_term(theta_edit(a, (up, j), (lo, j))?.into(), bracket_term(e, x - dd));
            }
        }
        IGen::B(mi) => {
            let i = -*mi;
            let (up, lo) = (i + h, i - h);
            for &j in &cols {
                let x = a.get(up, j) as i64;
                if x == 0 {
                    continue;
                }
                let e = col_range_sum(a, lo, cols.iter().copied().filter(|&k| k <= j))
                    - col_range_sum(a, up, cols.iter().copied().filter(|&k| k <= j))
                    + 1;
                out.add_term(theta_edit(a, (lo, j), (up, j))?.into(), bracket_term(e, x));
            }
        }
        IGen::Dr(r) if *r == z => {
            let s = a.row_sum(z) as i64;
            out.add_term(a.clone().into(), q((s - 1) / 2));
        }
        IGen::Dr(r) => out.add_term(a.clone().into(), q(a.row_sum(*r) as i64)),
        IGen::Ki(i) => {
            let e = a.row_sum(*i - h) as i64 - a.row_sum(*i + h) as i64 - i64::from(*i == h);
            out.add_term(a.clone().into(), q(e));
        }
        _ => unreachable!(),
    }
    Ok(out)
}

fn act_j_right(g: &IGen, a: &ThetaMatrix) -> Result<SparseVector> {
    check_howe_gen(Family::J, Side::Right, a.n, g)?;
    let rows = a.row_indices();
    let h = Half::HALF;
    let z = Half::ZERO;
    let mut out = SparseVector::zero();
    match g {
        IGen::B(i) if i.0 > 0 => {
            let (up, lo) = (*i + h, *i - h);
            for &j in &rows {
                let x = a.get(j, up) as i64;
                if x == 0 {
                    continue;
                }
                let later = || rows.iter().copied().filter(|&k| k > j);
                let e = row_range_sum(a, up, later()) - row_range_sum(a, lo, later());
                out.add_term(theta_edit(a, (j, lo), (j, up))?.into(), bracket_term(e, x));
            }
        }
        IGen::B(mi) => {
            let i = -*mi;
            let (up, lo) = (i + h, i - h);
            let first = i == h;
            for &j in &rows {
                let dd = i64::from(first && j == z);
                let x = a.get(j, lo) as i64;
                if x <= dd {
                    continue;
                }
                let earlier = || rows.iter().copied().filter(|&k| k < j);
                let e = row_range_sum(a, lo, earlier()) - row_range_sum(a, up, earlier())
                    - i64::from(first && j.0 > 0);
                out.add_term(theta_edit(a, (j, up), (j, lo))?.into(), bracket_term(e, x - dd));
            }
        }
        IGen::Dr(r) if *r == z => {
            let s = a.col_sum(z) as i64;
            out.add_term(a.clone().into(), q((s - 1) / 2));
        }
        IGen::Dr(r) => out.add_term(a.clone().into(), q(a.col_sum(*r) as i64)),
        IGen::Ki(i) => {
            let e = a.col_sum(*i - h) as i64 - a.col_sum(*i + h) as i64 - i64::from(*i == h);
            out.add_term(a.clone().into(), q(e));
        }
        _ => unreachable!(),
    }
    Ok(out)
}

/// `t_0 = [B_{1/2}, B_{-1/2}]_q - (k_{1/2} - k_{1/2}^{-1})/(q - q^{-1})` on
/// the given side, j family only.
fn t0_operator(sp: &HoweSpace, side: Side) -> Result<LinearOperator> {
    if sp.family != Family::J {
        return Err(Error::IndexOutOfRange("t0 exists only in the j family".into()));
    }
    let h = Half::HALF;
    let bp = sp.operator(side, &IGen::B(h))?;
    let bm = sp.operator(side, &IGen::B(-h))?;
    let kk = sp.operator(side, &IGen::Ki(h))?;
    // Word order A B acts as A(B(v)) on the left and as v.A.B on the right.
    let (ab, ba) = match side {
        Side::Left => (bp.compose(&bm)?, bm.compose(&bp)?),
        Side::Right => (bp.then(&bm)?, bm.then(&bp)?),
    };
    let comm = ab.linear_combination(&RatScalar::one(), &ba, &-q(1))?;
    let br = LinearOperator::new(sp.tag(), move |l| {
        let v = kk.apply_label(l)?;
        let e = v
            .get(l)
            .as_q_power()
            .ok_or_else(|| Error::NotDiagonal(format!("k(1/2) on {l}")))?;
        Ok(SparseVector::term(l.clone(), qint(e)))
    });
    comm.sub(&br)
}

// ---------------------------------------------------------------------------
// gl_M and sl_n actions on column matrices

/// `V_{M|n,d}` with the left `U(gl_M)`-action.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GlRep {
    pub big_m: u32,
    pub n: u32,
}

impl GlRep {
    pub fn new(big_m: u32, n: u32) -> Self {
        GlRep { big_m, n }
    }

    pub fn basis(&self, d: u32) -> Result<Vec<BasisLabel>> {
        Ok(enumerate_columns(self.big_m, self.n, d, DEFAULT_SIZE_CAP)?
            .into_iter()
            .map(BasisLabel::Column)
            .collect())
    }

    fn col<'a>(&self, l: &'a BasisLabel) -> Result<&'a ColumnMatrix> {
        match l {
            BasisLabel::Column(c) if c.big_m == self.big_m && c.n == self.n => Ok(c),
            _ => Err(Error::BasisMismatch(format!("{l} is not in {}", self.space()))),
        }
    }
}

fn col_edit(a: &ColumnMatrix, add: (Half, Half), sub: (Half, Half)) -> Result<ColumnMatrix> {
    a.edit(add.0, add.1, 1)
        .and_then(|b| b.edit(sub.0, sub.1, -1))
        .ok_or_else(|| Error::InvariantViolation(format!("edit of {a} left the index set")))
}

impl Representation for GlRep {
    fn rank(&self) -> u32 {
        self.big_m
    }

    fn space(&self) -> String {
        format!("Xi({},{})", self.big_m, self.n)
    }

    fn act_gen(&self, g: &Gen, l: &BasisLabel) -> Result<SparseVector> {
        let a = self.col(l)?;
        let cols = a.col_indices();
        let h = Half::HALF;
        let mut out = SparseVector::zero();
        match g {
            Gen::E(i) => {
                let (up, lo) = (*i + h, *i - h);
                for &j in &cols {
                    let x = a.get(up, j) as i64;
                    if x == 0 {
                        continue;
                    }
                    let e: i64 = cols
                        .iter()
                        .filter(|&&k| k <= j)
                        .map(|&k| a.get(lo, k) as i64 - a.get(up, k) as i64)
                        .sum::<i64>()
                        + 1;
                    out.add_term(col_edit(a, (lo, j), (up, j))?.into(), bracket_term(e, x));
                }
            }
            Gen::F(i) => {
                let (up, lo) = (*i + h, *i - h);
                for &j in &cols {
                    let x = a.get(lo, j) as i64;
                    if x == 0 {
                        continue;
                    }
                    let e: i64 = cols
                        .iter()
                        .filter(|&&k| k >= j)
                        .map(|&k| a.get(up, k) as i64 - a.get(lo, k) as i64)
                        .sum::<i64>()
                        + 1;
                    out.add_term(col_edit(a, (up, j), (lo, j))?.into(), bracket_term(e, x));
                }
            }
            Gen::D(r, e) => out.add_term(l.clone(), q(*e as i64 * a.row_sum(*r) as i64)),
            Gen::Bracket(_) => unreachable!("brackets are evaluated by the word layer"),
        }
        Ok(out)
    }
}

/// Right `U(sl_n)` generators: `E_i`, `F_i`, `K_i` with `i` in `[1, n-1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlGen {
    E(i32),
    F(i32),
    K(i32),
}

/// Left `gl_M` generator or right `sl_n` generator on a column matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GlSlGen {
    GlLeft(Gen),
    SlRight(SlGen),
}

pub fn act_gl_sl(g: &GlSlGen, a: &ColumnMatrix) -> Result<SparseVector> {
    match g {
        GlSlGen::GlLeft(x) => {
            AlgebraWord::gen(a.big_m, x.clone())?;
            GlRep::new(a.big_m, a.n).act_gen(x, &a.clone().into())
        }
        GlSlGen::SlRight(x) => act_sl_right(*x, a),
    }
}

pub fn act_sl_right(g: SlGen, a: &ColumnMatrix) -> Result<SparseVector> {
    let (SlGen::E(i) | SlGen::F(i) | SlGen::K(i)) = g;
    if i < 1 || i >= a.n as i32 {
        return Ok(match g {
            // no generators exist for n = 1; the action set is empty
            _ if a.n == 1 => SparseVector::zero(),
            _ => return Err(Error::IndexOutOfRange(format!("sl_{} index {i}", a.n))),
        });
    }
    let rows = a.row_indices();
    let lo = Half(2 * i - 1);
    let up = Half(2 * i + 1);
    let sum_col = |c: Half, f: &dyn Fn(Half) -> bool| -> i64 {
        rows.iter().filter(|&&k| f(k)).map(|&k| a.get(k, c) as i64).sum()
    };
    let mut out = SparseVector::zero();
    match g {
        SlGen::E(_) => {
            for &j in &rows {
                let x = a.get(j, lo) as i64;
                if x == 0 {
                    continue;
                }
                let e = sum_col(lo, &|k| k < j) - sum_col(up, &|k| k < j);
                out.add_term(col_edit(a, (j, up), (j, lo))?.into(), bracket_term(e, x));
            }
        }
        SlGen::F(_) => {
            for &j in &rows {
                let x = a.get(j, up) as i64;
                if x == 0 {
                    continue;
                }
                let e = sum_col(up, &|k| k > j) - sum_col(lo, &|k| k > j);
                out.add_term(col_edit(a, (j, lo), (j, up))?.into(), bracket_term(e, x));
            }
        }
        SlGen::K(_) => {
            let e = a.col_sum(lo) as i64 - a.col_sum(up) as i64;
            out.add_term(a.clone().into(), q(e));
        }
    }
    Ok(out)
}

pub fn sl_right_operator(big_m: u32, n: u32, g: SlGen) -> LinearOperator {
    LinearOperator::new(GlRep::new(big_m, n).space(), move |l| {
        let a = l
            .as_column()
            .ok_or_else(|| Error::BasisMismatch(format!("{l} is not a column matrix")))?;
        act_sl_right(g, a)
    })
}

/// `iota_n`: `F_i -> B_i`, `E_i -> B_{-i}`, `K_i -> k_i`.
pub fn iota_n(g: SlGen) -> IGen {
    match g {
        SlGen::F(i) => IGen::B(Half::int(i)),
        SlGen::E(i) => IGen::B(Half::int(-i)),
        SlGen::K(i) => IGen::Ki(Half::int(i)),
    }
}

// ---------------------------------------------------------------------------
// Relabeling maps

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    ToMatrix,
    ToTuple,
}

/// `v_lambda <-> t^{A_lambda}`, coefficientwise.
pub fn lambda_iso(family: Family, m: u32, dir: Direction, v: &SparseVector) -> Result<SparseVector> {
    v.map_labels(|l| match (dir, l) {
        (Direction::ToMatrix, BasisLabel::Tuple(t)) => Ok(BasisLabel::Theta(tuple_to_matrix(family, m, t)?)),
        (Direction::ToTuple, BasisLabel::Theta(a)) if a.family == family && a.m == m => {
            Ok(BasisLabel::Tuple(matrix_to_tuple(a)?))
        }
        _ => Err(Error::BasisMismatch(format!("{l} cannot be relabeled by lambda"))),
    })
}

/// `t^A -> t^{Omega A}`.
pub fn omega_tilde(v: &SparseVector) -> Result<SparseVector> {
    v.map_labels(|l| match l {
        BasisLabel::Theta(a) => Ok(BasisLabel::Column(omega_forget(a)?)),
        _ => Err(Error::BasisMismatch(format!("{l} is not a theta matrix"))),
    })
}

pub fn omega_tilde_inverse(v: &SparseVector) -> Result<SparseVector> {
    v.map_labels(|l| match l {
        BasisLabel::Column(c) => Ok(BasisLabel::Theta(omega_inverse(c)?)),
        _ => Err(Error::BasisMismatch(format!("{l} is not a column matrix"))),
    })
}

/// Row indices `I_M` as a convenience for weight bookkeeping.
pub fn gl_weight(c: &ColumnMatrix) -> Vec<i64> {
    let _ = index_set(c.big_m);
    c.weight()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tup(m: u32, c: &[i32]) -> Tuple {
        Tuple::new(m, c.iter().map(|&x| Half(x)).collect()).unwrap()
    }

    fn theta(t: &Tuple, fam: Family, m: u32) -> BasisLabel {
        tuple_to_matrix(fam, m, t).unwrap().into()
    }

    #[test]
    fn tensor_b0() {
        let op = tensor_igen_operator(Family::I, 1, 1, &IGen::B0).unwrap();
        let up = tup(2, &[1]);
        let dn = tup(2, &[-1]);
        let v = op.apply_label(&up.clone().into()).unwrap();
        let mut e = SparseVector::basis(dn.clone());
        e.add_term(up.clone().into(), q(1));
        assert_eq!(v, e);
        let v = op.apply_label(&dn.clone().into()).unwrap();
        let mut e = SparseVector::basis(up);
        e.add_term(dn.into(), q(-1));
        assert_eq!(v, e);
    }

    #[test]
    fn howe_left_b0() {
        let sp = HoweSpace::new(Family::I, 1, 1, 1);
        let a1 = theta(&tup(2, &[1]), Family::I, 1);
        let a2 = theta(&tup(2, &[-1]), Family::I, 1);
        let v = sp.operator(Side::Left, &IGen::B0).unwrap().apply_label(&a1).unwrap();
        let mut e = SparseVector::basis(a2);
        e.add_term(a1, q(1));
        assert_eq!(v, e);
    }

    #[test]
    fn howe_right_b0() {
        let sp = HoweSpace::new(Family::I, 1, 1, 1);
        let vj = theta(&tup(2, &[1]), Family::I, 1);
        let vmj = theta(&tup(2, &[-1]), Family::I, 1);
        let v = sp.operator(Side::Right, &IGen::B0).unwrap().apply_label(&vj).unwrap();
        let mut e = SparseVector::basis(vmj);
        e.add_term(vj, q(1));
        assert_eq!(v, e);
    }

    #[test]
    fn howe_j_composites() {
        let sp = HoweSpace::new(Family::J, 1, 1, 1);
        let h = Half::HALF;
        let op = sp
            .operator(Side::Right, &IGen::B(h))
            .unwrap()
            .then(&sp.operator(Side::Right, &IGen::B(-h)).unwrap())
            .unwrap();
        let vj = theta(&tup(3, &[2]), Family::J, 1);
        let vmj = theta(&tup(3, &[-2]), Family::J, 1);
        let v0 = theta(&tup(3, &[0]), Family::J, 1);
        let mut e = SparseVector::basis(vmj);
        e.add_term(vj.clone(), q(1));
        assert_eq!(op.apply_label(&vj).unwrap(), e);
        assert_eq!(op.apply_label(&v0).unwrap(), SparseVector::term(v0.clone(), qint(2)));
    }

    #[test]
    fn gl_examples() {
        let rep = GlRep::new(2, 1);
        let mut up = ColumnMatrix::zero(2, 1);
        up.set(Half(1), Half(1), 1);
        let mut dn = ColumnMatrix::zero(2, 1);
        dn.set(Half(-1), Half(1), 1);
        assert_eq!(
            rep.act_gen(&Gen::E(Half::ZERO), &up.clone().into()).unwrap(),
            SparseVector::basis(dn.clone())
        );
        assert_eq!(rep.act_gen(&Gen::F(Half::ZERO), &dn.clone().into()).unwrap(), SparseVector::basis(up.clone()));
        assert!(act_sl_right(SlGen::E(1), &up).unwrap().is_zero());
    }

    #[test]
    fn hecke_examples() {
        let up = tup(2, &[1]);
        let dn = tup(2, &[-1]);
        assert_eq!(hecke_sigma(&[0], &SparseVector::basis(up.clone())).unwrap(), SparseVector::basis(dn.clone()));
        let mut e = SparseVector::basis(up);
        e.add_term(dn.clone().into(), &q(-1) - &q(1));
        assert_eq!(hecke_sigma(&[0], &SparseVector::basis(dn)).unwrap(), e);
        let z = tup(3, &[0]);
        assert_eq!(hecke_sigma(&[0], &SparseVector::basis(z.clone())).unwrap(), SparseVector::term(z, q(-1)));
    }

    #[test]
    fn lambda_round_trip() {
        let rep = TensorRep::new(2, 2);
        for l in rep.basis().unwrap() {
            let v = SparseVector::basis(l);
            let w = lambda_iso(Family::I, 1, Direction::ToMatrix, &v).unwrap();
            assert_eq!(lambda_iso(Family::I, 1, Direction::ToTuple, &w).unwrap(), v);
        }
    }
}
