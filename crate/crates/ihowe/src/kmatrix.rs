//! Quasi K-matrix, the g-function, Lusztig's braid operators and the
//! K-matrix on `V_{M|1,d}`, plus the rank-one `<B_0>`-modules `L(d)`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use crate::actions::{omega_tilde, omega_tilde_inverse, GlRep, HoweSpace};
use crate::bases::{index_pos, index_set, ColumnMatrix, Family, Half};
use crate::braid::{idivided_series, truncation_cap};
use crate::freemod::{solve_linear, BasisLabel, LinearOperator, SparseRow, SparseVector};
use crate::qscalar::{qint, RatScalar};
use crate::uqalg::{expand_igenerator, igenerators, AlgebraWord, Gen, IGen, Parity, Representation, Side};
use crate::{Error, Result};

fn q(e: i64) -> RatScalar {
    RatScalar::q_pow(e)
}

// ---------------------------------------------------------------------------
// Rank-one modules

/// `L(d)` with basis `v_0..v_d` and the right `U(gl_2)`-action
/// `v_k E = [k] v_{k-1}`, `v_k F = [d-k] v_{k+1}`, `v_k K = q^{2k-d} v_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankOneModule {
    pub d: u32,
}

impl RankOneModule {
    pub fn new(d: u32) -> Self {
        RankOneModule { d }
    }

    pub fn label(&self, k: u32) -> BasisLabel {
        BasisLabel::RankOne { d: self.d, k }
    }

    pub fn basis(&self) -> Vec<BasisLabel> {
        (0..=self.d).map(|k| self.label(k)).collect()
    }

    fn k_of(&self, l: &BasisLabel) -> Result<u32> {
        match l {
            BasisLabel::RankOne { d, k } if *d == self.d && *k <= self.d => Ok(*k),
            _ => Err(Error::BasisMismatch(format!("{l} is not in L({})", self.d))),
        }
    }

    /// `B_0` by the closed formula
    /// `v_k B_0 = q^{d-2k} v_k + [d-k] v_{k+1} + q^{d-2k+1} [k] v_{k-1}`.
    pub fn b0_operator(&self) -> LinearOperator {
        let me = *self;
        LinearOperator::new(self.space(), move |l| {
            let k = me.k_of(l)? as i64;
            let d = me.d as i64;
            let mut v = SparseVector::term(l.clone(), q(d - 2 * k));
            if k < d {
                v.add_term(me.label(k as u32 + 1), qint(d - k));
            }
            if k > 0 {
                v.add_term(me.label(k as u32 - 1), qint(k).shift(d - 2 * k + 1));
            }
            Ok(v)
        })
    }

    /// `B_0` through its defining word, evaluated as a right action.
    pub fn b0_word_operator(&self) -> Result<LinearOperator> {
        let w = expand_igenerator(&IGen::B0, Family::I, 1)?;
        Ok(w.operator(Arc::new(*self), Side::Right))
    }

    /// `v_0 T_0`, by the parity rule of `L(d)`.
    pub fn t0_on_v0(&self) -> Result<SparseVector> {
        idivided_series(
            &self.b0_operator(),
            Parity::of(self.d as i64 + 1),
            &SparseVector::basis(self.label(0)),
            truncation_cap(self.d as usize + 1),
        )
    }
}

impl Representation for RankOneModule {
    fn rank(&self) -> u32 {
        2
    }

    fn space(&self) -> String {
        format!("L({})", self.d)
    }

    fn act_gen(&self, g: &Gen, l: &BasisLabel) -> Result<SparseVector> {
        let k = self.k_of(l)?;
        let (d, ki) = (self.d as i64, k as i64);
        let mut out = SparseVector::zero();
        match g {
            Gen::E(i) if *i == Half::ZERO => {
                if k > 0 {
                    out.add_term(self.label(k - 1), qint(ki));
                }
            }
            Gen::F(i) if *i == Half::ZERO => {
                if k < self.d {
                    out.add_term(self.label(k + 1), qint(d - ki));
                }
            }
            Gen::D(a, e) if a.0 == -1 => out.add_term(l.clone(), q(*e as i64 * ki)),
            Gen::D(a, e) if a.0 == 1 => out.add_term(l.clone(), q(*e as i64 * (d - ki))),
            _ => return Err(Error::IndexOutOfRange(format!("{g} on L({})", self.d))),
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Weights

fn weight(l: &BasisLabel) -> Result<Vec<i64>> {
    l.as_column()
        .map(ColumnMatrix::weight)
        .ok_or_else(|| Error::BasisMismatch(format!("{l} is not a column matrix")))
}

/// Coordinates of `delta` in the simple roots `alpha_i`, `i` along
/// `I_{M-1}`; `None` unless `delta` lies in the root lattice.
pub fn root_coordinates(delta: &[i64]) -> Option<Vec<i64>> {
    if delta.iter().sum::<i64>() != 0 {
        return None;
    }
    let mut acc = 0;
    Some(
        delta[..delta.len().saturating_sub(1)]
            .iter()
            .map(|x| {
                acc += x;
                acc
            })
            .collect(),
    )
}

fn height_of(delta: &[i64]) -> Option<i64> {
    root_coordinates(delta).map(|c| c.iter().sum())
}

fn is_positive(delta: &[i64]) -> bool {
    root_coordinates(delta).is_some_and(|c| c.iter().all(|&x| x >= 0))
}

fn diff(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `mu_{i-1/2} - mu_{i+1/2}` along `I_M`.
fn pairing(big_m: u32, i: Half, mu: &[i64]) -> i64 {
    let a = index_pos(big_m, i - Half::HALF).unwrap();
    let b = index_pos(big_m, i + Half::HALF).unwrap();
    mu[a] - mu[b]
}

fn alpha(big_m: u32, i: Half) -> Vec<i64> {
    let mut v = vec![0; big_m as usize];
    v[index_pos(big_m, i - Half::HALF).unwrap()] = 1;
    v[index_pos(big_m, i + Half::HALF).unwrap()] = -1;
    v
}

// ---------------------------------------------------------------------------
// Lusztig braid operators

fn divided_apply(rep: &GlRep, g: &Gen, v: &SparseVector, p: usize) -> Result<SparseVector> {
    let w = AlgebraWord::gen(rep.big_m, g.clone())?;
    let mut cur = v.clone();
    for k in 1..=p {
        if cur.is_zero() {
            break;
        }
        cur = w.act(rep, Side::Left, &cur)?.scale(&qint(k as i64).inv()?);
    }
    Ok(cur)
}

/// `T'_{i,-1}` on a weight vector:
/// `sum_{a-b+c=n} (-1)^b q^{ac-b} F_i^{(a)} E_i^{(b)} F_i^{(c)} v` where `n`
/// is the `K_i` exponent of the weight.
pub fn lusztig_t_prime(rep: &GlRep, i: Half, v: &SparseVector) -> Result<SparseVector> {
    let mut weights = v.labels().map(weight);
    let Some(mu) = weights.next().transpose()? else {
        return Ok(SparseVector::zero());
    };
    for w in weights {
        if w? != mu {
            return Err(Error::NotWeightHomogeneous);
        }
    }
    let n = pairing(rep.big_m, i, &mu);
    let (e, f) = (Gen::E(i), Gen::F(i));
    let mut out = SparseVector::zero();
    let mut c = 0usize;
    loop {
        let x = divided_apply(rep, &f, v, c)?;
        if x.is_zero() {
            break;
        }
        let mut b = 0usize;
        loop {
            let y = divided_apply(rep, &e, &x, b)?;
            if y.is_zero() {
                break;
            }
            let a = n + b as i64 - c as i64;
            if a >= 0 {
                let z = divided_apply(rep, &f, &y, a as usize)?;
                let sign = if b % 2 == 0 { RatScalar::one() } else { -RatScalar::one() };
                out.add_scaled(&z, &(&sign * &q(a * c as i64 - b as i64)));
            }
            b += 1;
        }
        c += 1;
    }
    Ok(out)
}

/// The bubble-sort reduced word of the longest element of `S_M`.
pub fn longest_word(big_m: u32) -> Vec<Half> {
    let simple = index_set(big_m - 1);
    let mut out = Vec::new();
    for r in (1..big_m as usize).rev() {
        out.extend_from_slice(&simple[..r]);
    }
    out
}

/// `T_w = T_{i_1} ... T_{i_k}` for the word `(i_1, ..., i_k)`.
pub fn lusztig_t_word(rep: &GlRep, word: &[Half], v: &SparseVector) -> Result<SparseVector> {
    let mut cur = v.clone();
    for &i in word.iter().rev() {
        let mut next = SparseVector::zero();
        for (l, c) in cur.iter() {
            next.add_scaled(&lusztig_t_prime(rep, i, &SparseVector::basis(l.clone()))?, c);
        }
        cur = next;
    }
    Ok(cur)
}

pub fn lusztig_t_w0(rep: &GlRep, v: &SparseVector) -> Result<SparseVector> {
    lusztig_t_word(rep, &longest_word(rep.big_m), v)
}

// ---------------------------------------------------------------------------
// g-function

/// Normalization of the weight factor in `K = Upsilon g~ T_{w_0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GConvention {
    /// `g(mu) = g(mu - alpha_i) q^{<alpha_{-i} - alpha_i, mu> + 1 - delta_{i,0}}`.
    AsDisplayed,
    /// Each step of the recursion additionally scaled by `-q`, i.e.
    /// `g(mu) (-q)^{ht(mu - d eps_{m-1/2})}`. This is the factor that makes
    /// the composite intertwine `U^i_m` with Lusztig's `T'_{i,-1}`.
    SignCorrected,
}

impl GConvention {
    pub fn name(self) -> &'static str {
        match self {
            GConvention::AsDisplayed => "as-displayed",
            GConvention::SignCorrected => "sign-corrected",
        }
    }

    fn step(self, big_m: u32, i: Half, mu: &[i64]) -> RatScalar {
        let a = alpha(big_m, -i);
        let b = alpha(big_m, i);
        let pair: i64 = a.iter().zip(&b).zip(mu).map(|((x, y), m)| (x - y) * m).sum();
        let e = pair + 1 - i64::from(i == Half::ZERO);
        match self {
            GConvention::AsDisplayed => q(e),
            GConvention::SignCorrected => &RatScalar::neg_q_pow(1) * &q(e),
        }
    }
}

/// `g` on the weights of `V_{M|1,d}`, normalized by `g(d eps_{m-1/2}) = 1`.
#[derive(Debug, Clone)]
pub struct WeightFunctionG {
    pub big_m: u32,
    pub d: u32,
    pub convention: GConvention,
    values: BTreeMap<Vec<i64>, RatScalar>,
}

impl WeightFunctionG {
    pub fn new(big_m: u32, d: u32) -> Result<Self> {
        Self::with_convention(big_m, d, GConvention::AsDisplayed)
    }

    pub fn with_convention(big_m: u32, d: u32, convention: GConvention) -> Result<Self> {
        if big_m % 2 != 0 {
            return Err(Error::OddRank(big_m));
        }
        let mut base = vec![0i64; big_m as usize];
        *base.last_mut().unwrap() = d as i64;
        let roots = index_set(big_m - 1);
        let mut values = BTreeMap::new();
        values.insert(base.clone(), RatScalar::one());
        let mut queue = VecDeque::from([base]);
        let inside = |mu: &[i64]| mu.iter().all(|&x| x >= 0);
        while let Some(nu) = queue.pop_front() {
            let g = values[&nu].clone();
            for &i in &roots {
                let al = alpha(big_m, i);
                let up: Vec<i64> = nu.iter().zip(&al).map(|(x, a)| x + a).collect();
                let dn: Vec<i64> = nu.iter().zip(&al).map(|(x, a)| x - a).collect();
                let up_val = &g * &convention.step(big_m, i, &up);
                let dn_val = g.checked_div(&convention.step(big_m, i, &nu))?;
                for (mu, val) in [(up, up_val), (dn, dn_val)] {
                    if !inside(&mu) {
                        continue;
                    }
                    match values.get(&mu) {
                        Some(old) if *old != val => {
                            return Err(Error::InvariantViolation(format!("g is path dependent at {mu:?}")));
                        }
                        Some(_) => {}
                        None => {
                            values.insert(mu.clone(), val);
                            queue.push_back(mu);
                        }
                    }
                }
            }
        }
        Ok(WeightFunctionG { big_m, d, convention, values })
    }

    pub fn get(&self, mu: &[i64]) -> Result<RatScalar> {
        self.values
            .get(mu)
            .cloned()
            .ok_or_else(|| Error::UnreachableCoset(format!("{mu:?}")))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `g(mu)` normalized on the coset of `|mu| eps_{m-1/2}`, walking the
/// recursion along the root coordinates of `mu - |mu| eps_{m-1/2}`.
pub fn g_weight_factor(big_m: u32, mu: &[i64]) -> Result<RatScalar> {
    let d: i64 = mu.iter().sum();
    if d < 0 || mu.len() != big_m as usize || big_m % 2 != 0 {
        return Err(Error::UnreachableCoset(format!("{mu:?}")));
    }
    let conv = GConvention::AsDisplayed;
    let mut cur = vec![0i64; big_m as usize];
    *cur.last_mut().unwrap() = d;
    let coords = root_coordinates(&diff(mu, &cur)).unwrap();
    let mut g = RatScalar::one();
    for (i, c) in index_set(big_m - 1).into_iter().zip(coords) {
        let al = alpha(big_m, i);
        for _ in 0..c.abs() {
            if c > 0 {
                cur.iter_mut().zip(&al).for_each(|(x, a)| *x += a);
                g = &g * &conv.step(big_m, i, &cur);
            } else {
                g = g.checked_div(&conv.step(big_m, i, &cur))?;
                cur.iter_mut().zip(&al).for_each(|(x, a)| *x -= a);
            }
        }
    }
    Ok(g)
}

// ---------------------------------------------------------------------------
// Quasi K-matrix

/// `Upsilon` on `V_{M|1,d}` as the sum of its weight-raising components.
#[derive(Debug, Clone)]
pub struct QuasiKOperator {
    pub big_m: u32,
    pub d: u32,
    /// Image of each basis label, components of every height summed.
    images: BTreeMap<BasisLabel, SparseVector>,
    /// Number of unknowns and nullity at each height `1..`.
    pub heights: Vec<(usize, usize)>,
}

impl QuasiKOperator {
    pub fn apply(&self, v: &SparseVector) -> Result<SparseVector> {
        let mut out = SparseVector::zero();
        for (l, c) in v.iter() {
            let img = self
                .images
                .get(l)
                .ok_or_else(|| Error::BasisMismatch(format!("{l} is not in V({},1,{})", self.big_m, self.d)))?;
            out.add_scaled(img, c);
        }
        Ok(out)
    }

    pub fn operator(&self) -> LinearOperator {
        let me = self.clone();
        LinearOperator::new(GlRep::new(self.big_m, 1).space(), move |l| me.apply(&SparseVector::basis(l.clone())))
    }
}

/// Splits `w . b` by the height of the weight change.
fn by_height(w: &AlgebraWord, rep: &GlRep, b: &BasisLabel) -> Result<BTreeMap<i64, SparseVector>> {
    let wb = weight(b)?;
    let mut out: BTreeMap<i64, SparseVector> = BTreeMap::new();
    for (l, c) in w.act(rep, Side::Left, &SparseVector::basis(b.clone()))?.iter() {
        let h = height_of(&diff(&weight(l)?, &wb)).ok_or_else(|| Error::InvariantViolation("weight left the coset".into()))?;
        out.entry(h).or_default().add_term(l.clone(), c.clone());
    }
    Ok(out)
}

/// Solves `B_i Upsilon = Upsilon sigma(B_i)` height by height with
/// `Upsilon^0 = 1`.
pub fn solve_quasi_k(big_m: u32, d: u32) -> Result<QuasiKOperator> {
    if big_m % 2 != 0 {
        return Err(Error::OddRank(big_m));
    }
    let m = big_m / 2;
    let rep = GlRep::new(big_m, 1);
    let basis = rep.basis(d)?;
    let wts: Vec<Vec<i64>> = basis.iter().map(weight).collect::<Result<_>>()?;
    let index: HashMap<&BasisLabel, usize> = basis.iter().enumerate().map(|(k, l)| (l, k)).collect();

    // pairs (source, target) with target - source in Q^+, grouped by height
    let mut pairs: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
    for (s, ws) in wts.iter().enumerate() {
        for (t, wt) in wts.iter().enumerate() {
            let dl = diff(wt, ws);
            if is_positive(&dl) {
                let h = height_of(&dl).unwrap();
                if h > 0 {
                    pairs.entry(h).or_default().push((s, t));
                }
            }
        }
    }

    let gens: Vec<IGen> = igenerators(Family::I, m).into_iter().filter(|g| !matches!(g, IGen::Dr(_))).collect();
    let mut split_b = Vec::new();
    let mut split_sb = Vec::new();
    for g in &gens {
        let w = expand_igenerator(g, Family::I, m)?;
        let sw = w.sigma();
        let mut sb = Vec::new();
        let mut ssb = Vec::new();
        for b in &basis {
            sb.push(by_height(&w, &rep, b)?);
            ssb.push(by_height(&sw, &rep, b)?);
        }
        split_b.push(sb);
        split_sb.push(ssb);
    }

    // layers[h][s] = Upsilon^{(h)} applied to basis[s]
    let mut layers: Vec<Vec<SparseVector>> = vec![basis.iter().map(|l| SparseVector::basis(l.clone())).collect()];
    let mut heights = Vec::new();
    let max_h = pairs.keys().copied().max().unwrap_or(0);
    for h in 1..=max_h {
        let unknowns = pairs.get(&h).cloned().unwrap_or_default();
        let mut by_src: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
        for (u, &(src, tgt)) in unknowns.iter().enumerate() {
            by_src.entry(src).or_default().push((tgt, u));
        }
        let layer = |k: i64, s: usize| -> Option<&SparseVector> {
            if k < 0 {
                None
            } else {
                layers.get(k as usize).map(|l| &l[s])
            }
        };
        // equation key: (gen, source, target label)
        let mut eqs: BTreeMap<(usize, usize, usize), (BTreeMap<usize, RatScalar>, RatScalar)> = BTreeMap::new();
        for gi in 0..gens.len() {
            for s in 0..basis.len() {
                let target_ok = |t: &BasisLabel| height_of(&diff(&wts[index[t]], &wts[s])) == Some(h - 1);
                // B (Upsilon b): known layers k < h, then unknown layer h
                for k in 0..h {
                    let Some(v) = layer(k, s) else { continue };
                    for (x, c) in v.iter() {
                        let xi = index[x];
                        let Some(part) = split_b[gi][xi].get(&(h - 1 - k)) else { continue };
                        for (t, c2) in part.iter() {
                            if target_ok(t) {
                                let e = eqs.entry((gi, s, index[t])).or_default();
                                e.1 += &(c * c2);
                            }
                        }
                    }
                }
                for &(tgt, u) in by_src.get(&s).into_iter().flatten() {
                    if let Some(part) = split_b[gi][tgt].get(&-1) {
                        for (t, c2) in part.iter() {
                            let e = eqs.entry((gi, s, index[t])).or_default();
                            *e.0.entry(u).or_default() += c2;
                        }
                    }
                }
                // - Upsilon (sigma(B) b)
                for (&j, part) in split_sb[gi][s].iter() {
                    for (x, c) in part.iter() {
                        let xi = index[x];
                        let k = h - 1 - j;
                        if k < h {
                            if let Some(v) = layer(k, xi) {
                                for (t, c2) in v.iter() {
                                    if target_ok(t) {
                                        let e = eqs.entry((gi, s, index[t])).or_default();
                                        e.1 -= &(c * c2);
                                    }
                                }
                            }
                        } else {
                            for &(tgt, u) in by_src.get(&xi).into_iter().flatten() {
                                let e = eqs.entry((gi, s, tgt)).or_default();
                                *e.0.entry(u).or_default() -= c;
                            }
                        }
                    }
                }
            }
        }
        let rows: Vec<(SparseRow<RatScalar>, RatScalar)> = eqs
            .into_values()
            .map(|(r, known)| (r.into_iter().filter(|(_, c)| !c.is_zero()).collect(), -known))
            .collect();
        let sol = solve_linear(unknowns.len(), &rows).ok_or(Error::Inconsistent(h as usize))?;
        heights.push((unknowns.len(), sol.nullity));
        if sol.nullity > 0 {
            return Err(Error::NonUniqueSolution { degree: h as usize, nullity: sol.nullity });
        }
        let mut next = vec![SparseVector::zero(); basis.len()];
        for (u, &(s, t)) in unknowns.iter().enumerate() {
            next[s].add_term(basis[t].clone(), sol.values[u].clone());
        }
        layers.push(next);
    }
    let mut images = BTreeMap::new();
    for (s, b) in basis.iter().enumerate() {
        let mut v = SparseVector::zero();
        for layer in &layers {
            v = v.add(&layer[s]);
        }
        images.insert(b.clone(), v);
    }
    Ok(QuasiKOperator { big_m, d, images, heights })
}

// ---------------------------------------------------------------------------
// K-matrix

/// Everything needed to apply `K = Upsilon g~ T_{w_0}` on `V_{M|1,d}`.
#[derive(Debug, Clone)]
pub struct KMatrix {
    pub rep: GlRep,
    pub d: u32,
    pub upsilon: QuasiKOperator,
    pub g: WeightFunctionG,
}

impl KMatrix {
    pub fn new(big_m: u32, d: u32) -> Result<Self> {
        Self::with_convention(big_m, d, GConvention::AsDisplayed)
    }

    pub fn with_convention(big_m: u32, d: u32, convention: GConvention) -> Result<Self> {
        Ok(KMatrix {
            rep: GlRep::new(big_m, 1),
            d,
            upsilon: solve_quasi_k(big_m, d)?,
            g: WeightFunctionG::with_convention(big_m, d, convention)?,
        })
    }

    /// The same operator with another weight factor; `Upsilon` is reused.
    pub fn reweighted(&self, convention: GConvention) -> Result<Self> {
        Ok(KMatrix {
            g: WeightFunctionG::with_convention(self.rep.big_m, self.d, convention)?,
            ..self.clone()
        })
    }

    pub fn basis(&self) -> Result<Vec<BasisLabel>> {
        self.rep.basis(self.d)
    }

    pub fn apply(&self, v: &SparseVector) -> Result<SparseVector> {
        let t = lusztig_t_w0(&self.rep, v)?;
        let mut gt = SparseVector::zero();
        for (l, c) in t.iter() {
            gt.add_term(l.clone(), c * &self.g.get(&weight(l)?)?);
        }
        self.upsilon.apply(&gt)
    }

    pub fn operator(&self) -> LinearOperator {
        let me = self.clone();
        LinearOperator::new(self.rep.space(), move |l| me.apply(&SparseVector::basis(l.clone())))
    }

    /// Left `U^i_m` generators on `V_{M|1,d}`.
    pub fn left_generators(&self) -> Result<Vec<(String, LinearOperator)>> {
        let m = self.rep.big_m / 2;
        let rep: Arc<dyn Representation> = Arc::new(self.rep);
        let mut out = Vec::new();
        let mut gens = igenerators(Family::I, m);
        gens.extend(index_set(2 * m - 1).into_iter().filter(|i| i.0 > 0).map(IGen::Ki));
        for g in gens {
            out.push((g.to_string(), expand_igenerator(&g, Family::I, m)?.operator(rep.clone(), Side::Left)));
        }
        Ok(out)
    }
}

/// The right `B_0` of `U^i_1` on `V_{M|1,d}`, through `Omega~`.
pub fn column_b0(big_m: u32, d: u32) -> Result<LinearOperator> {
    if big_m % 2 != 0 {
        return Err(Error::OddRank(big_m));
    }
    let howe = HoweSpace::new(Family::I, big_m / 2, 1, d).operator(Side::Right, &IGen::B0)?;
    Ok(LinearOperator::new(GlRep::new(big_m, 1).space(), move |l| {
        let a = omega_tilde_inverse(&SparseVector::basis(l.clone()))?;
        omega_tilde(&howe.apply(&a)?)
    }))
}

/// `T_0` on `V_{M|1,d}` with the parity of `d + 1`.
pub fn column_t0(big_m: u32, d: u32) -> Result<LinearOperator> {
    let b0 = column_b0(big_m, d)?;
    let dim = GlRep::new(big_m, 1).basis(d)?.len();
    let parity = Parity::of(d as i64 + 1);
    Ok(LinearOperator::new(GlRep::new(big_m, 1).space(), move |l| {
        idivided_series(&b0, parity, &SparseVector::basis(l.clone()), truncation_cap(dim))
    }))
}

/// `c` with `a = c b` on `basis`, if there is one.
pub fn proportionality(a: &LinearOperator, b: &LinearOperator, basis: &[BasisLabel]) -> Result<Option<RatScalar>> {
    let mut c: Option<RatScalar> = None;
    for l in basis {
        let (x, y) = (a.apply_label(l)?, b.apply_label(l)?);
        if c.is_none() {
            if let Some((k, yk)) = y.iter().next() {
                c = Some(x.get(k).checked_div(yk)?);
            } else if !x.is_zero() {
                return Ok(None);
            }
        }
        let s = c.clone().unwrap_or_else(RatScalar::zero);
        if x != y.scale(&s) {
            return Ok(None);
        }
    }
    Ok(Some(c.unwrap_or_else(RatScalar::one)))
}

/// What one weight-factor convention produces on `V_{M|1,d}`.
#[derive(Debug, Clone)]
pub struct ConventionOutcome {
    pub convention: GConvention,
    /// First `U^i_m` generator that fails to commute with `K`.
    pub noncommuting: Option<String>,
    /// A basis label where it fails, with `x K v` and `K x v`.
    pub mismatch: Option<(BasisLabel, SparseVector, SparseVector)>,
    /// `c` with `K = c T_0`, if `K` is a multiple of `T_0`.
    pub scalar: Option<RatScalar>,
    /// `K v^{d,0}`.
    pub lowest_image: SparseVector,
}

#[derive(Debug, Clone)]
pub struct BraidKMeasurement {
    pub big_m: u32,
    pub d: u32,
    pub dim: usize,
    /// `(unknowns, nullity)` of the `Upsilon` solve per height.
    pub heights: Vec<(usize, usize)>,
    /// `(-q)^{braid_k_exponent}`.
    pub expected: RatScalar,
    pub outcomes: Vec<ConventionOutcome>,
}

impl BraidKMeasurement {
    pub fn outcome(&self, c: GConvention) -> Option<&ConventionOutcome> {
        self.outcomes.iter().find(|o| o.convention == c)
    }

    /// `K = (-q)^{braid_k_exponent} T_0` for the displayed factor.
    pub fn holds(&self) -> bool {
        self.outcome(GConvention::AsDisplayed)
            .is_some_and(|o| o.scalar.as_ref() == Some(&self.expected))
    }
}

/// Compares `K` with `T_0` on `V_{M|1,d}` under both weight factors.
pub fn measure_braid_k(big_m: u32, d: u32) -> Result<BraidKMeasurement> {
    let k = KMatrix::new(big_m, d)?;
    let basis = k.basis()?;
    let t0 = column_t0(big_m, d)?;
    let gens = k.left_generators()?;
    let lo = SparseVector::basis(extremal_label(big_m, d, 0));
    let mut outcomes = Vec::new();
    for conv in [GConvention::AsDisplayed, GConvention::SignCorrected] {
        let kc = k.reweighted(conv)?;
        let op = kc.operator();
        let mut noncommuting = None;
        let mut mismatch = None;
        'gens: for (name, g) in &gens {
            for l in &basis {
                let (a, b) = (g.apply(&op.apply_label(l)?)?, op.apply(&g.apply_label(l)?)?);
                if a != b {
                    noncommuting = Some(name.clone());
                    mismatch = Some((l.clone(), a, b));
                    break 'gens;
                }
            }
        }
        outcomes.push(ConventionOutcome {
            convention: conv,
            noncommuting,
            mismatch,
            scalar: proportionality(&op, &t0, &basis)?,
            lowest_image: kc.apply(&lo)?,
        });
    }
    Ok(BraidKMeasurement {
        big_m,
        d,
        dim: basis.len(),
        heights: k.upsilon.heights.clone(),
        expected: RatScalar::neg_q_pow(braid_k_exponent(big_m, d)),
        outcomes,
    })
}

/// Exponent `-d(M-1) - floor((d+1)/2)` of the scalar relating `K` and `T_0`.
pub fn braid_k_exponent(big_m: u32, d: u32) -> i64 {
    -(d as i64) * (big_m as i64 - 1) - (d as i64 + 1) / 2
}

/// `v^{d1,d2} = t^{d1 e_{m-1/2} + d2 e_{1/2-m}}` in `V_{M|1,d}`.
pub fn extremal_label(big_m: u32, d1: u32, d2: u32) -> BasisLabel {
    let top = Half(big_m as i32 - 1);
    let mut c = ColumnMatrix::zero(big_m, 1);
    c.set(top, Half::HALF, d1);
    c.set(-top, Half::HALF, d2);
    c.into()
}

/// Labels seen by the quasi K-matrix solve, for reports.
pub fn weight_set(big_m: u32, d: u32) -> Result<BTreeSet<Vec<i64>>> {
    GlRep::new(big_m, 1).basis(d)?.iter().map(weight).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t0_sends_v0_to_inverse_power() {
        for d in 0..=6u32 {
            let l = RankOneModule::new(d);
            let v = l.t0_on_v0().unwrap();
            let e = (d as i64 + 1) / 2;
            assert_eq!(v, SparseVector::term(l.label(d), RatScalar::neg_q_pow(-e)), "d = {d}");
        }
    }

    #[test]
    fn b0_word_matches_closed_form() {
        for d in 0..=4 {
            let l = RankOneModule::new(d);
            assert!(l.b0_operator().equals_on(&l.b0_word_operator().unwrap(), &l.basis()).unwrap());
        }
    }

    #[test]
    fn braid_k_m2() {
        let m = measure_braid_k(2, 1).unwrap();
        let shown = m.outcome(GConvention::AsDisplayed).unwrap();
        assert_eq!(shown.lowest_image, SparseVector::term(extremal_label(2, 0, 1), -q(-1)));
        assert!(shown.noncommuting.is_some() && shown.scalar.is_none());
        let fixed = m.outcome(GConvention::SignCorrected).unwrap();
        assert!(fixed.noncommuting.is_none());
        assert_eq!(fixed.scalar, Some(RatScalar::neg_q_pow(1)));
        assert!(!m.holds());
        let m0 = measure_braid_k(2, 0).unwrap();
        assert!(m0.holds());
    }

    #[test]
    fn sign_corrected_g() {
        let g = WeightFunctionG::with_convention(4, 2, GConvention::SignCorrected).unwrap();
        assert_eq!(g.get(&[0, 0, 1, 1]).unwrap(), -q(2));
        assert_eq!(g.get(&[2, 0, 0, 0]).unwrap(), q(6));
    }

    #[test]
    fn g_examples() {
        let g = WeightFunctionG::new(4, 3).unwrap();
        assert!(g.get(&[0, 0, 0, 3]).unwrap().is_one());
        assert_eq!(g.get(&[0, 0, 1, 2]).unwrap(), q(2));
        assert!(g.get(&[0, 0, 0, 4]).is_err());
        assert_eq!(g_weight_factor(4, &[0, 0, -1, 4]).unwrap(), q(-4));
        for mu in weight_set(4, 3).unwrap() {
            assert_eq!(g_weight_factor(4, &mu).unwrap(), g.get(&mu).unwrap());
        }
    }

    #[test]
    fn t_prime_lowest_m2() {
        let rep = GlRep::new(2, 1);
        let v = SparseVector::basis(extremal_label(2, 1, 0));
        assert_eq!(lusztig_t_prime(&rep, Half::ZERO, &v).unwrap(), SparseVector::term(extremal_label(2, 0, 1), -q(-1)));
    }

    #[test]
    fn longest_words() {
        assert_eq!(longest_word(2), vec![Half::ZERO]);
        assert_eq!(longest_word(3), vec![Half(-1), Half(1), Half(-1)]);
        assert_eq!(longest_word(4).len(), 6);
    }

    #[test]
    fn upsilon_m2_d1() {
        let u = solve_quasi_k(2, 1).unwrap();
        assert_eq!(u.heights, vec![(1, 0)]);
        assert!(braid_k_exponent(2, 1) == -2 && braid_k_exponent(4, 2) == -7);
    }
}
