//! Formal words in the generators `E_i, F_i, D_a^{+-1}` of `U(gl_N)`, the
//! involutions, the iquantum generators and idivided powers.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::bases::{in_index_set, index_set, Family, Half};
use crate::freemod::{BasisLabel, LinearOperator, SparseVector};
use crate::qscalar::{qfact, qint, RatScalar};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    E(Half),
    F(Half),
    /// `D_a^e` with `e = +-1`.
    D(Half, i8),
    /// `(K - K^{-1})/(q - q^{-1})` for `K = prod D_a^{e_a}`; only ever
    /// evaluated on weight vectors.
    Bracket(Vec<(Half, i32)>),
}

impl Gen {
    fn sigma(&self) -> Gen {
        match self {
            Gen::E(i) => Gen::E(*i),
            Gen::F(i) => Gen::F(*i),
            Gen::D(a, e) => Gen::D(*a, -e),
            Gen::Bracket(k) => Gen::Bracket(k.iter().map(|(a, e)| (*a, -e)).collect()),
        }
    }

    fn omega(&self) -> Gen {
        match self {
            Gen::E(i) => Gen::F(*i),
            Gen::F(i) => Gen::E(*i),
            g => g.sigma(),
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::E(i) => write!(f, "E({i})"),
            Gen::F(i) => write!(f, "F({i})"),
            Gen::D(a, 1) => write!(f, "D({a})"),
            Gen::D(a, _) => write!(f, "Dinv({a})"),
            Gen::Bracket(k) => {
                write!(f, "Br(")?;
                for (n, (a, e)) in k.iter().enumerate() {
                    if n > 0 {
                        write!(f, "*")?;
                    }
                    write!(f, "D({a})^{e}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A module for `U(gl_N)`: how each primitive generator acts on a label.
pub trait Representation: Send + Sync {
    fn rank(&self) -> u32;
    fn space(&self) -> String;
    fn act_gen(&self, g: &Gen, l: &BasisLabel) -> Result<SparseVector>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A Q(q)-combination of generator words for a fixed ambient rank `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraWord {
    pub rank: u32,
    terms: BTreeMap<Vec<Gen>, RatScalar>,
}

impl AlgebraWord {
    pub fn zero(rank: u32) -> Self {
        AlgebraWord {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(rank: u32, c: RatScalar) -> Self {
        let mut w = AlgebraWord::zero(rank);
        w.add_term(Vec::new(), c);
        w
    }

    pub fn one(rank: u32) -> Self {
        AlgebraWord::scalar(rank, RatScalar::one())
    }

    fn check(rank: u32, g: &Gen) -> Result<()> {
        let ok = match g {
            Gen::E(i) | Gen::F(i) => rank >= 2 && in_index_set(rank - 1, *i),
            Gen::D(a, e) => in_index_set(rank, *a) && e.abs() == 1,
            Gen::Bracket(k) => k.iter().all(|(a, _)| in_index_set(rank, *a)),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange(format!("{g} for gl_{rank}")))
        }
    }

    pub fn gen(rank: u32, g: Gen) -> Result<Self> {
        Self::check(rank, &g)?;
        let mut w = AlgebraWord::zero(rank);
        w.add_term(vec![g], RatScalar::one());
        Ok(w)
    }

    pub fn e(rank: u32, i: Half) -> Result<Self> {
        Self::gen(rank, Gen::E(i))
    }

    pub fn f(rank: u32, i: Half) -> Result<Self> {
        Self::gen(rank, Gen::F(i))
    }

    pub fn d(rank: u32, a: Half, e: i8) -> Result<Self> {
        Self::gen(rank, Gen::D(a, e))
    }

    /// `K_i^e = (D_{i-1/2} D_{i+1/2}^{-1})^e`.
    pub fn k(rank: u32, i: Half, e: i8) -> Result<Self> {
        Self::d(rank, i - Half::HALF, e)?.mul(&Self::d(rank, i + Half::HALF, -e)?)
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Gen>, RatScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, w: Vec<Gen>, c: RatScalar) {
        if c.is_zero() {
            return;
        }
        let w = normalize_d_runs(w);
        let e = self.terms.entry(w.clone()).or_default();
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    fn same_rank(&self, o: &AlgebraWord) -> Result<()> {
        if self.rank != o.rank {
            return Err(Error::RankMismatch(format!("gl_{} vs gl_{}", self.rank, o.rank)));
        }
        Ok(())
    }

    pub fn add(&self, o: &AlgebraWord) -> Result<Self> {
        self.same_rank(o)?;
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &AlgebraWord) -> Result<Self> {
        self.add(&o.scale(&RatScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &RatScalar) -> Self {
        let mut out = AlgebraWord::zero(self.rank);
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v * c);
        }
        out
    }

    /// Concatenation product, extended bilinearly.
    pub fn mul(&self, o: &AlgebraWord) -> Result<Self> {
        self.same_rank(o)?;
        let mut out = AlgebraWord::zero(self.rank);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let mut w = w1.clone();
                w.extend(w2.iter().cloned());
                out.add_term(w, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = AlgebraWord::one(self.rank);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn divided_power(&self, n: u32) -> Result<Self> {
        Ok(self.pow(n)?.scale(&qfact(n as i64)?.inv()?))
    }

    /// `A B - q^a B A`.
    pub fn q_commutator(&self, o: &AlgebraWord, a: i64) -> Result<Self> {
        self.mul(o)?.sub(&o.mul(self)?.scale(&RatScalar::q_pow(a)))
    }

    /// The anti-involution: reverses words, fixes `E`, `F`, inverts `D`.
    pub fn sigma(&self) -> Self {
        let mut out = AlgebraWord::zero(self.rank);
        for (w, c) in &self.terms {
            out.add_term(w.iter().rev().map(Gen::sigma).collect(), c.clone());
        }
        out
    }

    /// The Chevalley involution: swaps `E` and `F`, inverts `D`.
    pub fn omega(&self) -> Self {
        let mut out = AlgebraWord::zero(self.rank);
        for (w, c) in &self.terms {
            out.add_term(w.iter().map(Gen::omega).collect(), c.clone());
        }
        out
    }

    /// Applies the word to a vector; on the right side, letters are applied
    /// from left to right.
    pub fn act(&self, rep: &dyn Representation, side: Side, v: &SparseVector) -> Result<SparseVector> {
        if rep.rank() != self.rank {
            return Err(Error::RankMismatch(format!(
                "word for gl_{} on a gl_{} module",
                self.rank,
                rep.rank()
            )));
        }
        let mut out = SparseVector::zero();
        for (w, c) in &self.terms {
            let mut cur = v.clone();
            let letters: Box<dyn Iterator<Item = &Gen>> = match side {
                Side::Left => Box::new(w.iter().rev()),
                Side::Right => Box::new(w.iter()),
            };
            for g in letters {
                cur = act_gen_vec(rep, g, &cur)?;
                if cur.is_zero() {
                    break;
                }
            }
            out.add_scaled(&cur, c);
        }
        Ok(out)
    }

    pub fn operator(&self, rep: Arc<dyn Representation>, side: Side) -> LinearOperator {
        let w = self.clone();
        LinearOperator::new(rep.space(), move |l| w.act(&*rep, side, &SparseVector::basis(l.clone())))
    }
}

/// Sorts each maximal run of `D` letters and cancels `D_a D_a^{-1}`; the
/// `D_a` commute, so this only picks a representative.
fn normalize_d_runs(w: Vec<Gen>) -> Vec<Gen> {
    let mut out = Vec::with_capacity(w.len());
    let mut run: BTreeMap<Half, i32> = BTreeMap::new();
    let flush = |run: &mut BTreeMap<Half, i32>, out: &mut Vec<Gen>| {
        for (a, e) in std::mem::take(run) {
            for _ in 0..e.abs() {
                out.push(Gen::D(a, e.signum() as i8));
            }
        }
    };
    for g in w {
        match g {
            Gen::D(a, e) => *run.entry(a).or_default() += e as i32,
            g => {
                flush(&mut run, &mut out);
                out.push(g);
            }
        }
    }
    flush(&mut run, &mut out);
    out
}

fn act_gen_vec(rep: &dyn Representation, g: &Gen, v: &SparseVector) -> Result<SparseVector> {
    let mut out = SparseVector::zero();
    for (l, c) in v.iter() {
        let img = match g {
            Gen::Bracket(k) => {
                let mut exp = 0i64;
                for (a, e) in k {
                    exp += *e as i64 * d_exponent(rep, *a, l)?;
                }
                SparseVector::term(l.clone(), qint(exp))
            }
            _ => rep.act_gen(g, l)?,
        };
        out.add_scaled(&img, c);
    }
    Ok(out)
}

/// `e` with `D_a l = q^e l`.
pub fn d_exponent(rep: &dyn Representation, a: Half, l: &BasisLabel) -> Result<i64> {
    let v = rep.act_gen(&Gen::D(a, 1), l)?;
    let c = v.get(l);
    match (v.len(), c.as_q_power()) {
        (1, Some(e)) => Ok(e),
        _ => Err(Error::NotDiagonal(format!("D({a}) on {l}"))),
    }
}

impl fmt::Display for AlgebraWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (w, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let body = if w.is_empty() {
                "1".to_string()
            } else {
                w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("*")
            };
            if c.is_one() {
                write!(f, "{body}")?;
            } else {
                write!(f, "({c})*{body}")?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// iquantum generators

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IGen {
    /// `B_i` for i, or `B_{+-i}` for j.
    B(Half),
    /// The i-family `B_0`.
    B0,
    /// `B_{0,s}`, the unequal parameter variant.
    B0s(i64),
    Dr(Half),
    Ki(Half),
    /// `[B_{1/2}, B_{-1/2}]_q - (k_{1/2} - k_{1/2}^{-1})/(q - q^{-1})`, j only.
    T0,
}

impl fmt::Display for IGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IGen::B(i) => write!(f, "B({i})"),
            IGen::B0 => write!(f, "B(0)"),
            IGen::B0s(s) => write!(f, "B0s({s})"),
            IGen::Dr(r) => write!(f, "d({r})"),
            IGen::Ki(i) => write!(f, "k({i})"),
            IGen::T0 => write!(f, "t0"),
        }
    }
}

/// Ambient rank of `U^i_n` (`2n`) or `U^j_n` (`2n+1`).
pub fn ambient_rank(family: Family, n: u32) -> u32 {
    family.ambient(n)
}

/// The standard generating set `B_*, d_r` of the iquantum group of rank
/// `n`, in a fixed order.
pub fn igenerators(family: Family, n: u32) -> Vec<IGen> {
    let mut out = Vec::new();
    match family {
        Family::I => {
            for i in index_set(2 * n - 1) {
                out.push(if i == Half::ZERO { IGen::B0 } else { IGen::B(i) });
            }
            for r in index_set(2 * n).into_iter().filter(|r| r.0 > 0) {
                out.push(IGen::Dr(r));
            }
        }
        Family::J => {
            for i in index_set(2 * n) {
                out.push(IGen::B(i));
            }
            for r in index_set(2 * n + 1).into_iter().filter(|r| r.0 >= 0) {
                out.push(IGen::Dr(r));
            }
        }
    }
    out
}

fn d_pair(rank: u32, r: Half, e: i8) -> Result<AlgebraWord> {
    if r == Half::ZERO {
        AlgebraWord::d(rank, r, e)
    } else {
        AlgebraWord::d(rank, r, e)?.mul(&AlgebraWord::d(rank, -r, e)?)
    }
}

/// `k_i = K_i K_{-i}^{-1}` as a list of `D` exponents.
fn k_exponents(i: Half) -> Vec<(Half, i32)> {
    let mut out: BTreeMap<Half, i32> = BTreeMap::new();
    for (a, e) in [
        (i - Half::HALF, 1),
        (i + Half::HALF, -1),
        (-i - Half::HALF, -1),
        (-i + Half::HALF, 1),
    ] {
        *out.entry(a).or_default() += e;
    }
    out.retain(|_, e| *e != 0);
    out.into_iter().collect()
}

fn word_from_exponents(rank: u32, k: &[(Half, i32)], sign: i32) -> Result<AlgebraWord> {
    let mut w = AlgebraWord::one(rank);
    for (a, e) in k {
        let e = e * sign;
        for _ in 0..e.abs() {
            w = w.mul(&AlgebraWord::d(rank, *a, e.signum() as i8)?)?;
        }
    }
    Ok(w)
}

/// The defining word of an iquantum generator of rank `n`.
pub fn expand_igenerator(g: &IGen, family: Family, n: u32) -> Result<AlgebraWord> {
    let rank = ambient_rank(family, n);
    let oob = || Error::IndexOutOfRange(format!("{g} in the {family} family of rank {n}"));
    let q = |e| RatScalar::q_pow(e);
    match (family, g) {
        (Family::I, IGen::B(i)) if *i != Half::ZERO && i.is_integer() && in_index_set(rank - 1, *i) => {
            AlgebraWord::f(rank, *i)?.add(&AlgebraWord::e(rank, -*i)?.mul(&AlgebraWord::k(rank, *i, -1)?)?)
        }
        (Family::I, IGen::B0) | (Family::I, IGen::B(Half::ZERO)) if n >= 1 => {
            let z = Half::ZERO;
            let kinv = AlgebraWord::k(rank, z, -1)?;
            AlgebraWord::f(rank, z)?
                .add(&AlgebraWord::e(rank, z)?.mul(&kinv)?.scale(&q(-1)))?
                .add(&kinv)
        }
        (Family::I, IGen::B0s(s)) if n >= 1 => {
            let z = Half::ZERO;
            let kinv = AlgebraWord::k(rank, z, -1)?;
            AlgebraWord::e(rank, z)?
                .add(&AlgebraWord::f(rank, z)?.mul(&kinv)?.scale(&q(1)))?
                .add(&kinv.scale(&qint(*s)))
        }
        (Family::J, IGen::B(i)) if !i.is_integer() && in_index_set(rank - 1, *i) => {
            if i.0 > 0 {
                AlgebraWord::f(rank, *i)?.add(&AlgebraWord::e(rank, -*i)?.mul(&AlgebraWord::k(rank, *i, -1)?)?)
            } else {
                AlgebraWord::f(rank, *i)?.add(&AlgebraWord::k(rank, *i, -1)?.mul(&AlgebraWord::e(rank, -*i)?)?)
            }
        }
        (Family::I, IGen::Dr(r)) if r.0 > 0 && in_index_set(rank, *r) => d_pair(rank, *r, 1),
        (Family::J, IGen::Dr(r)) if r.0 >= 0 && in_index_set(rank, *r) => d_pair(rank, *r, 1),
        (Family::I, IGen::Ki(i)) if i.0 > 0 && i.is_integer() && in_index_set(rank - 1, *i) => {
            word_from_exponents(rank, &k_exponents(*i), 1)
        }
        (Family::J, IGen::Ki(i)) if i.0 > 0 && in_index_set(rank - 1, *i) => {
            word_from_exponents(rank, &k_exponents(*i), 1)
        }
        (Family::J, IGen::T0) if n >= 1 => {
            let h = Half::HALF;
            let bp = expand_igenerator(&IGen::B(h), family, n)?;
            let bm = expand_igenerator(&IGen::B(-h), family, n)?;
            let br = AlgebraWord::gen(rank, Gen::Bracket(k_exponents(h)))?;
            bp.q_commutator(&bm, 1)?.sub(&br)
        }
        _ => Err(oob()),
    }
}

/// `sigma(B_i)` for the quasi K-matrix equations.
pub fn sigma_igenerator(g: &IGen, family: Family, n: u32) -> Result<AlgebraWord> {
    Ok(expand_igenerator(g, family, n)?.sigma())
}

// ---------------------------------------------------------------------------
// Parity and idivided powers

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(k: i64) -> Parity {
        if k.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Class of `mu_{-1/2} + mu_{1/2} + 1`, for `mu` listed along `I_N`.
pub fn weight_parity(rank: u32, mu: &[i64]) -> Result<Parity> {
    if rank % 2 != 0 {
        return Err(Error::OddRank(rank));
    }
    if mu.len() != rank as usize {
        return Err(Error::RankMismatch(format!("weight of length {} for gl_{rank}", mu.len())));
    }
    let c = rank as usize / 2;
    Ok(Parity::of(mu[c - 1] + mu[c] + 1))
}

/// Coefficients (by power of `B_0`) of the idivided power of degree `m`.
pub fn idivided_power_polynomial(parity: Parity, m: u32) -> Vec<RatScalar> {
    let k = (m / 2) as i64;
    let odd_m = m % 2 == 1;
    let mut poly = if odd_m {
        vec![RatScalar::zero(), RatScalar::one()]
    } else {
        vec![RatScalar::one()]
    };
    for r in 1..=k {
        let root = match (parity, odd_m) {
            (Parity::Even, true) => qint(2 * r),
            (Parity::Even, false) => qint(2 * r - 2),
            (Parity::Odd, _) => qint(2 * r - 1),
        };
        let c = -(&root * &root);
        // multiply by (B^2 + c)
        let mut next = vec![RatScalar::zero(); poly.len() + 2];
        for (d, a) in poly.iter().enumerate() {
            next[d + 2] += a;
            next[d] += &(a * &c);
        }
        poly = next;
    }
    let f = qfact(m as i64).unwrap().inv().unwrap();
    poly.iter().map(|a| a * &f).collect()
}

// ---------------------------------------------------------------------------
// Defining relations

/// The defining relations of `U(gl_N)`, each as a word that must act by
/// zero. Returns `(name, word)` pairs.
pub fn relation_words(rank: u32) -> Result<Vec<(String, AlgebraWord)>> {
    let mut out = Vec::new();
    let ds = index_set(rank);
    let es = if rank >= 2 { index_set(rank - 1) } else { Vec::new() };
    let one = AlgebraWord::one(rank);
    let q = |e| RatScalar::q_pow(e);
    let delta = |a: Half, b: Half| i64::from(a == b);
    for &a in &ds {
        let da = AlgebraWord::d(rank, a, 1)?;
        let dai = AlgebraWord::d(rank, a, -1)?;
        out.push((format!("D({a})Dinv({a})=1"), da.mul(&dai)?.sub(&one)?));
        out.push((format!("Dinv({a})D({a})=1"), dai.mul(&da)?.sub(&one)?));
        for &b in &ds {
            let db = AlgebraWord::d(rank, b, 1)?;
            out.push((format!("[D({a}),D({b})]=0"), da.mul(&db)?.sub(&db.mul(&da)?)?));
        }
        for &i in &es {
            let ex = delta(a, i - Half::HALF) - delta(a, i + Half::HALF);
            let e = AlgebraWord::e(rank, i)?;
            let f = AlgebraWord::f(rank, i)?;
            out.push((format!("D({a})E({i})"), da.mul(&e)?.sub(&e.mul(&da)?.scale(&q(ex)))?));
            out.push((format!("D({a})F({i})"), da.mul(&f)?.sub(&f.mul(&da)?.scale(&q(-ex)))?));
        }
    }
    let qmq = &q(1) - &q(-1);
    for &i in &es {
        for &j in &es {
            let ei = AlgebraWord::e(rank, i)?;
            let fj = AlgebraWord::f(rank, j)?;
            let mut rel = ei.mul(&fj)?.sub(&fj.mul(&ei)?)?.scale(&qmq);
            if i == j {
                rel = rel.sub(&AlgebraWord::k(rank, i, 1)?.sub(&AlgebraWord::k(rank, i, -1)?)?)?;
            }
            out.push((format!("[E({i}),F({j})]"), rel));
            if i == j {
                continue;
            }
            let dist = (i.0 - j.0).abs() / 2;
            for (name, x, y) in [
                ("E", AlgebraWord::e(rank, i)?, AlgebraWord::e(rank, j)?),
                ("F", AlgebraWord::f(rank, i)?, AlgebraWord::f(rank, j)?),
            ] {
                if dist > 1 {
                    out.push((format!("[{name}({i}),{name}({j})]=0"), x.mul(&y)?.sub(&y.mul(&x)?)?));
                } else {
                    let x2 = x.divided_power(2)?;
                    let rel = x2.mul(&y)?.add(&y.mul(&x2)?)?.sub(&x.mul(&y)?.mul(&x)?)?;
                    out.push((format!("serre {name}({i}),{name}({j})"), rel));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b1_rendering() {
        let w = expand_igenerator(&IGen::B(Half::ONE), Family::I, 2).unwrap();
        let f1 = AlgebraWord::f(4, Half::ONE).unwrap();
        let rest = AlgebraWord::e(4, -Half::ONE)
            .unwrap()
            .mul(&AlgebraWord::k(4, Half::ONE, -1).unwrap())
            .unwrap();
        assert_eq!(w, f1.add(&rest).unwrap());
        assert_eq!(w.to_string(), "E(-1)*Dinv(1/2)*D(3/2) + F(1)");
    }

    #[test]
    fn b0s_one() {
        let w = expand_igenerator(&IGen::B0s(1), Family::I, 1).unwrap();
        let z = Half::ZERO;
        let kinv = AlgebraWord::k(2, z, -1).unwrap();
        let expect = AlgebraWord::e(2, z)
            .unwrap()
            .add(&AlgebraWord::f(2, z).unwrap().mul(&kinv).unwrap().scale(&RatScalar::q_pow(1)))
            .unwrap()
            .add(&kinv)
            .unwrap();
        assert_eq!(w, expect);
    }

    #[test]
    fn dr_word() {
        let w = expand_igenerator(&IGen::Dr(Half(3)), Family::I, 2).unwrap();
        let e = AlgebraWord::d(4, Half(3), 1).unwrap().mul(&AlgebraWord::d(4, Half(-3), 1).unwrap()).unwrap();
        assert_eq!(w, e);
    }

    #[test]
    fn sigma_of_b() {
        let w = expand_igenerator(&IGen::B(Half::ONE), Family::I, 2).unwrap();
        let s = w.sigma();
        let expect = AlgebraWord::f(4, Half::ONE)
            .unwrap()
            .add(&AlgebraWord::k(4, Half::ONE, 1).unwrap().mul(&AlgebraWord::e(4, -Half::ONE).unwrap()).unwrap())
            .unwrap();
        assert_eq!(s, expect);
        assert_eq!(s.sigma(), w);
    }

    #[test]
    fn omega_e0() {
        let e0 = AlgebraWord::e(2, Half::ZERO).unwrap();
        assert_eq!(e0.omega(), AlgebraWord::f(2, Half::ZERO).unwrap());
    }

    #[test]
    fn index_errors() {
        assert!(expand_igenerator(&IGen::B(Half::int(2)), Family::I, 2).is_err());
        assert!(expand_igenerator(&IGen::B(Half::ONE), Family::J, 2).is_err());
        assert!(expand_igenerator(&IGen::T0, Family::I, 1).is_err());
        assert!(AlgebraWord::e(2, Half::ONE).is_err());
    }

    #[test]
    fn idivided_examples() {
        let p = idivided_power_polynomial(Parity::Even, 1);
        assert_eq!(p, vec![RatScalar::zero(), RatScalar::one()]);
        let p = idivided_power_polynomial(Parity::Even, 2);
        let inv2 = qint(2).inv().unwrap();
        assert_eq!(p, vec![RatScalar::zero(), RatScalar::zero(), inv2.clone()]);
        let p = idivided_power_polynomial(Parity::Odd, 2);
        assert_eq!(p, vec![-&inv2, RatScalar::zero(), inv2]);
    }

    #[test]
    fn parity_examples() {
        assert_eq!(weight_parity(2, &[0, 1]).unwrap(), Parity::Even);
        assert_eq!(weight_parity(4, &[0, 0, 0, 0]).unwrap(), Parity::Odd);
        for d in 0..5 {
            assert_eq!(weight_parity(2, &[0, d]).unwrap(), Parity::of(d + 1));
        }
        assert_eq!(weight_parity(3, &[0, 0, 0]), Err(Error::OddRank(3)));
    }
}
