//! Relative braid group operators on rho-bar weight spaces and on rank-one
//! modules, evaluated as truncated series of (i)divided powers.
//!
//! All operators here are right operators: `op.apply(v)` is `v . op`.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::actions::HoweSpace;
use crate::bases::{is_rho_label, rho_weight_subset, theta_count, tuple_to_matrix, Family, Half, Tuple};
use crate::freemod::{BasisLabel, LinearOperator, SparseVector};
use crate::qscalar::{qfact, qint, RatScalar};
use crate::uqalg::{IGen, Parity, Side};
use crate::{Error, Result};

/// Hard cap on the series index for a module of dimension `dim`.
pub fn truncation_cap(dim: usize) -> usize {
    dim + 2
}

static DEEPEST: AtomicUsize = AtomicUsize::new(0);

/// Largest series index reached by any evaluation in this process.
pub fn deepest_truncation() -> usize {
    DEEPEST.load(Ordering::Relaxed)
}

fn note_depth(p: usize) {
    DEEPEST.fetch_max(p, Ordering::Relaxed);
}

fn neg_q_inv(p: usize) -> RatScalar {
    RatScalar::neg_q_pow(-(p as i64))
}

fn inv_qfact(k: usize) -> Result<RatScalar> {
    Ok(qfact(k as i64)?.inv()?)
}

/// `sum_p (-q)^{-p} v B_i^{(p)} B_{-i}^{(p)}`, stopping once `v B_i^{(p)}`
/// vanishes.
pub fn pair_series(bi: &LinearOperator, bmi: &LinearOperator, v: &SparseVector, cap: usize) -> Result<SparseVector> {
    let mut out = v.clone();
    let mut x = v.clone();
    let mut p = 0usize;
    loop {
        p += 1;
        x = bi.apply(&x)?.scale(&qint(p as i64).inv()?);
        if x.is_zero() {
            note_depth(p);
            return Ok(out);
        }
        if p > cap {
            return Err(Error::TruncationCapExceeded(cap));
        }
        let mut y = x.clone();
        for k in 1..=p {
            y = bmi.apply(&y)?.scale(&qint(k as i64).inv()?);
        }
        out.add_scaled(&y, &neg_q_inv(p));
    }
}

/// `sum_p (-q)^{-p} B_{0,even}^{(2p)}` for even parity and
/// `sum_p (-q)^{-p} B_{0,odd}^{(2p+1)}` for odd parity, applied to `v`.
pub fn idivided_series(b0: &LinearOperator, parity: Parity, v: &SparseVector, cap: usize) -> Result<SparseVector> {
    // u_p is v times the unnormalized product; the term is u_p / [deg]!.
    let mut u = match parity {
        Parity::Even => v.clone(),
        Parity::Odd => b0.apply(v)?,
    };
    let mut out = SparseVector::zero();
    let mut p = 0usize;
    loop {
        if u.is_zero() {
            note_depth(p);
            return Ok(out);
        }
        if p > cap {
            return Err(Error::TruncationCapExceeded(cap));
        }
        let deg = match parity {
            Parity::Even => 2 * p,
            Parity::Odd => 2 * p + 1,
        };
        out.add_scaled(&u, &(&neg_q_inv(p) * &inv_qfact(deg)?));
        p += 1;
        let root = match parity {
            Parity::Even => qint(2 * p as i64 - 2),
            Parity::Odd => qint(2 * p as i64 - 1),
        };
        let bb = b0.apply(&b0.apply(&u)?)?;
        u = bb.sub(&u.scale(&(&root * &root)));
    }
}

/// The j-family double sum over `(t, l)` with the three divided powers
/// `B_-^{(t)} B_+^{(t+l)} B_-^{(l)}`.
pub fn tt0_series(bm: &LinearOperator, bp: &LinearOperator, v: &SparseVector, cap: usize) -> Result<SparseVector> {
    let mut out = SparseVector::zero();
    let mut w = v.clone();
    let mut t = 0usize;
    while !w.is_zero() {
        if t > cap {
            return Err(Error::TruncationCapExceeded(cap));
        }
        let mut x = w.clone();
        for k in 1..=t {
            x = bp.apply(&x)?.scale(&qint(k as i64).inv()?);
        }
        let mut s = t;
        while !x.is_zero() {
            if s > cap {
                return Err(Error::TruncationCapExceeded(cap));
            }
            let l = s - t;
            let mut y = x.clone();
            for k in 1..=l {
                y = bm.apply(&y)?.scale(&qint(k as i64).inv()?);
            }
            let (ti, li) = (t as i64, l as i64);
            let tri = (ti - li) * (ti - li + 1);
            assert!(tri % 2 == 0, "half-integer exponent in the double sum");
            let e = -tri / 2 - ti - li;
            let sign = if (t + l) % 2 == 0 { RatScalar::one() } else { -RatScalar::one() };
            out.add_scaled(&y, &(&sign * &RatScalar::q_pow(e)));
            note_depth(s);
            s += 1;
            x = bp.apply(&x)?.scale(&qint(s as i64).inv()?);
        }
        t += 1;
        w = bm.apply(&w)?.scale(&qint(t as i64).inv()?);
    }
    note_depth(t);
    Ok(out)
}

/// `v T_0` on a parity-homogeneous vector of a rank-one `<B_0>`-module of
/// dimension `dim`.
pub fn braid_t0_rank1(v: &SparseVector, b0: &LinearOperator, parity: Parity, dim: usize) -> Result<SparseVector> {
    idivided_series(b0, parity, v, truncation_cap(dim))
}

// ---------------------------------------------------------------------------
// rho-bar spaces

/// The rho-bar weight space of `V_{m|n,n}` with its right braid operators.
#[derive(Debug, Clone)]
pub struct RhoSpace {
    pub howe: HoweSpace,
    basis: Vec<BasisLabel>,
    cap: usize,
}

impl RhoSpace {
    pub fn new(family: Family, m: u32, n: u32) -> Result<Self> {
        let basis = rho_weight_subset(family, m, n)?.into_iter().map(BasisLabel::Theta).collect();
        let dim = theta_count(family, m, n, n) as usize;
        Ok(RhoSpace { howe: HoweSpace::new(family, m, n, n), basis, cap: truncation_cap(dim) })
    }

    pub fn family(&self) -> Family {
        self.howe.family
    }

    pub fn basis(&self) -> &[BasisLabel] {
        &self.basis
    }

    pub fn tag(&self) -> String {
        format!("{}^rho", self.howe.tag())
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// The tuple basis of `V^{(x) n}` matching `basis()` under lambda.
    pub fn tuple_basis(&self) -> Result<Vec<Tuple>> {
        crate::bases::enumerate_tuples(self.family().ambient(self.howe.m), self.howe.n, crate::bases::DEFAULT_SIZE_CAP)
    }

    pub fn label_of(&self, t: &Tuple) -> Result<BasisLabel> {
        Ok(tuple_to_matrix(self.family(), self.howe.m, t)?.into())
    }

    pub fn contains(&self, v: &SparseVector) -> bool {
        v.labels().all(|l| self.label_in(l))
    }

    fn label_in(&self, l: &BasisLabel) -> bool {
        l.as_theta()
            .is_some_and(|a| a.family == self.howe.family && a.m == self.howe.m && a.n == self.howe.n && is_rho_label(a))
    }

    fn right(&self, g: IGen) -> Result<LinearOperator> {
        self.howe.operator(Side::Right, &g)
    }

    /// `T_i` for `i` in `[0, n-1]`.
    pub fn braid_t(&self, i: u32) -> Result<LinearOperator> {
        let n = self.howe.n;
        if i >= n {
            return Err(Error::IndexOutOfRange(format!("T_{i} with n = {n}")));
        }
        let cap = self.cap;
        let me = self.clone();
        let series: Box<dyn Fn(&SparseVector) -> Result<SparseVector> + Send + Sync> = match (self.family(), i) {
            (Family::I, 0) => {
                let b0 = self.right(IGen::B0)?;
                Box::new(move |v| idivided_series(&b0, Parity::Even, v, cap))
            }
            (Family::I, i) => {
                let bi = self.right(IGen::B(Half::int(i as i32)))?;
                let bmi = self.right(IGen::B(Half::int(-(i as i32))))?;
                Box::new(move |v| pair_series(&bi, &bmi, v, cap))
            }
            (Family::J, 0) => {
                let bm = self.right(IGen::B(-Half::HALF))?;
                let bp = self.right(IGen::B(Half::HALF))?;
                Box::new(move |v| tt0_series(&bm, &bp, v, cap))
            }
            (Family::J, i) => {
                let h = Half(2 * i as i32 + 1);
                let bi = self.right(IGen::B(h))?;
                let bmi = self.right(IGen::B(-h))?;
                Box::new(move |v| pair_series(&bi, &bmi, v, cap))
            }
        };
        Ok(LinearOperator::new(self.tag(), move |l| {
            if !me.label_in(l) {
                return Err(Error::NotInRhoSubset(l.to_string()));
            }
            let out = series(&SparseVector::basis(l.clone()))?;
            if !me.contains(&out) {
                return Err(Error::InvariantViolation(format!("T_{i} maps {l} out of the rho-bar space")));
            }
            Ok(out)
        }))
    }

    /// Image of `sigma_word` under `sigma_i -> -q T_i`.
    pub fn hecke_image_operator(&self, word: &[u32]) -> Result<LinearOperator> {
        let mut op = LinearOperator::identity(self.tag());
        for &i in word {
            let t = self.braid_t(i)?.scale(&-RatScalar::q_pow(1));
            op = op.then(&t)?;
        }
        Ok(op)
    }
}

/// `v T_i` for `v` in a rho-bar space; the space is read off the labels.
pub fn braid_t_on_rho(family: Family, i: u32, v: &SparseVector) -> Result<SparseVector> {
    let Some(a) = v.labels().next().and_then(|l| l.as_theta()) else {
        return Ok(SparseVector::zero());
    };
    let sp = RhoSpace::new(family, a.m, a.n)?;
    if !sp.contains(v) {
        return Err(Error::NotInRhoSubset(v.to_string()));
    }
    sp.braid_t(i)?.apply(v)
}

pub fn hecke_image_operator(word: &[u32], family: Family, m: u32, n: u32) -> Result<LinearOperator> {
    RhoSpace::new(family, m, n)?.hecke_image_operator(word)
}

// ---------------------------------------------------------------------------
// Unequal parameters

/// How the measured eigenvalues of `T_0` relate to the quadratic printed for
/// the parameter `s`: as displayed, or with both roots negated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignConvention {
    AsDisplayed,
    SignFlipped,
}

impl SignConvention {
    pub fn name(self) -> &'static str {
        match self {
            SignConvention::AsDisplayed => "as-displayed",
            SignConvention::SignFlipped => "sign-flipped",
        }
    }
}

/// Roots of the displayed quadratic for parameter `s >= 1`.
pub fn displayed_roots(s: i64) -> (RatScalar, RatScalar) {
    let sgn = |k: i64| if k.rem_euclid(2) == 0 { RatScalar::one() } else { -RatScalar::one() };
    let (e1, e2, r) = if s % 2 == 1 {
        let r = (s + 1) / 2;
        (-2 * r * r, -2 * (r - 1) * (r - 1), r)
    } else {
        let r = s / 2;
        (-2 * r * (r + 1), -2 * r * (r - 1), r)
    };
    // (T + (-1)^r q^e1)(T + (-1)^{r-1} q^e2)
    (-(&sgn(r) * &RatScalar::q_pow(e1)), -(&sgn(r - 1) * &RatScalar::q_pow(e2)))
}

#[derive(Debug, Clone)]
pub struct BlockMeasurement {
    pub j: Half,
    /// `T_0` on `(v_j, v_{-j})`, rows indexed by input.
    pub matrix: [[RatScalar; 2]; 2],
    pub b0_matrix_ok: bool,
    pub convention: Option<SignConvention>,
}

#[derive(Debug, Clone)]
pub struct UnequalReport {
    pub s: i64,
    pub parity: Parity,
    pub trace: RatScalar,
    pub det: RatScalar,
    pub blocks: Vec<BlockMeasurement>,
    /// `c` with `{c r_1, c r_2} = {1, -q^{-2s}}` for the measured roots, if any.
    pub renormalization: Option<RatScalar>,
}

impl UnequalReport {
    pub fn convention(&self) -> Option<SignConvention> {
        let first = self.blocks.first()?.convention?;
        self.blocks.iter().all(|b| b.convention == Some(first)).then_some(first)
    }
}

fn pair_matches(r: &(RatScalar, RatScalar), tr: &RatScalar, det: &RatScalar) -> bool {
    &(&r.0 + &r.1) == tr && &(&r.0 * &r.1) == det
}

/// Measures `T_0` built from `B_{0,s}` on the 2-dim blocks of the rho-bar
/// space of `V_{m|1,1}`. Odd `s` uses the even series, even `s` the odd one.
pub fn unequal_parameter(s: i64, m: u32) -> Result<UnequalReport> {
    let sp = RhoSpace::new(Family::I, m, 1)?;
    let b = sp.howe.operator(Side::Right, &IGen::B0s(s))?;
    let parity = Parity::of(s + 1);
    let mut blocks = Vec::new();
    let (mut tr0, mut det0) = (RatScalar::zero(), RatScalar::zero());
    let roots = displayed_roots(s);
    let flipped = (-roots.0.clone(), -roots.1.clone());
    let qs = qint(s);
    for jj in 0..m as i32 {
        let j = Half(2 * jj + 1);
        let vp = sp.label_of(&Tuple::new(2 * m, vec![j])?)?;
        let vm = sp.label_of(&Tuple::new(2 * m, vec![-j])?)?;
        let pair = [vp.clone(), vm.clone()];
        let mut mat: [[RatScalar; 2]; 2] = Default::default();
        let mut bmat: [[RatScalar; 2]; 2] = Default::default();
        for (r, l) in pair.iter().enumerate() {
            let w = idivided_series(&b, parity, &SparseVector::basis(l.clone()), sp.cap())?;
            let bw = b.apply_label(l)?;
            for (c, l2) in pair.iter().enumerate() {
                mat[r][c] = w.get(l2);
                bmat[r][c] = bw.get(l2);
            }
        }
        let expect_b = [
            [&qs * &RatScalar::q_pow(1), RatScalar::one()],
            [RatScalar::one(), &qs * &RatScalar::q_pow(-1)],
        ];
        let tr = &mat[0][0] + &mat[1][1];
        let det = &(&mat[0][0] * &mat[1][1]) - &(&mat[0][1] * &mat[1][0]);
        let convention = match (pair_matches(&roots, &tr, &det), pair_matches(&flipped, &tr, &det)) {
            (true, false) => Some(SignConvention::AsDisplayed),
            (false, true) => Some(SignConvention::SignFlipped),
            _ => None,
        };
        tr0 = tr;
        det0 = det;
        blocks.push(BlockMeasurement { j, matrix: mat, b0_matrix_ok: bmat == expect_b, convention });
    }
    let target_small = -RatScalar::q_pow(-2 * s);
    let measured = blocks
        .first()
        .and_then(|b| b.convention)
        .map(|c| if c == SignConvention::AsDisplayed { roots.clone() } else { flipped.clone() });
    let renormalization = measured.and_then(|(r1, r2)| {
        [(r1.clone(), r2.clone()), (r2, r1)].into_iter().find_map(|(a, b)| {
            let c = a.inv().ok()?;
            (&c * &b == target_small).then_some(c)
        })
    });
    Ok(UnequalReport { s, parity, trace: tr0, det: det0, blocks, renormalization })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(e: i64) -> RatScalar {
        RatScalar::q_pow(e)
    }

    fn label(fam: Family, m: u32, c: &[i32]) -> BasisLabel {
        let t = Tuple::new(fam.ambient(m), c.iter().map(|&x| Half(x)).collect()).unwrap();
        tuple_to_matrix(fam, m, &t).unwrap().into()
    }

    #[test]
    fn t0_on_vj() {
        let sp = RhoSpace::new(Family::I, 1, 1).unwrap();
        let t = sp.hecke_image_operator(&[0]).unwrap();
        let (vj, vmj) = (label(Family::I, 1, &[1]), label(Family::I, 1, &[-1]));
        assert_eq!(t.apply_label(&vj).unwrap(), SparseVector::basis(vmj.clone()));
        let mut e = SparseVector::basis(vj);
        e.add_term(vmj.clone(), &q(-1) - &q(1));
        assert_eq!(t.apply_label(&vmj).unwrap(), e);
    }

    #[test]
    fn tt0_on_v0() {
        let sp = RhoSpace::new(Family::J, 1, 1).unwrap();
        let v0 = label(Family::J, 1, &[0]);
        let out = sp.braid_t(0).unwrap().apply_label(&v0).unwrap();
        assert_eq!(out, SparseVector::term(v0, -q(-2)));
    }

    #[test]
    fn t1_equal_entries() {
        let v = label(Family::I, 1, &[1, 1]);
        let out = braid_t_on_rho(Family::I, 1, &SparseVector::basis(v.clone())).unwrap();
        assert_eq!(out, SparseVector::term(v, -q(-2)));
    }

    #[test]
    fn hecke_word_edges() {
        let sp = RhoSpace::new(Family::I, 2, 2).unwrap();
        let id = sp.hecke_image_operator(&[]).unwrap();
        assert!(id.equals_on(&LinearOperator::identity(sp.tag()), sp.basis()).unwrap());
        let s0 = sp.hecke_image_operator(&[0]).unwrap();
        let s00 = sp.hecke_image_operator(&[0, 0]).unwrap();
        let rhs = s0.linear_combination(&(&q(-1) - &q(1)), &LinearOperator::identity(sp.tag()), &RatScalar::one()).unwrap();
        assert!(s00.equals_on(&rhs, sp.basis()).unwrap());
    }

    #[test]
    fn non_rho_rejected() {
        let other = crate::bases::enumerate_theta(Family::I, 1, 2, 2, 1000)
            .unwrap()
            .into_iter()
            .find(|a| !is_rho_label(a))
            .unwrap();
        assert!(braid_t_on_rho(Family::I, 0, &SparseVector::basis(other)).is_err());
    }

    #[test]
    fn unequal_s1_is_hecke() {
        let r = unequal_parameter(1, 1).unwrap();
        assert!(r.blocks[0].b0_matrix_ok);
        assert_eq!(r.convention(), Some(SignConvention::SignFlipped));
    }
}
