//! Module constructors: one-dimensional modules, the rank-one evaluation
//! module, the fundamental modules of the quantum general linear group with
//! their affine matrices, the loop-action solver for higher rank, and
//! pullbacks along the shift embeddings.

use super::{Module, ModuleData};
use crate::error::{Error, Result};
use crate::linalg::{solve_unique, Matrix};
use crate::presentation::{GenSymbol, GeneratorMap};
use crate::scalars::{qfact, QRational};

/// One-dimensional module: X act by 0, K_i± by β_i^{±1}, J_{i,t} by 0 when
/// Q_i = 0 and by (1-β_i^{-2})(q-q^{-1})^{-1} Q_i^{-t} otherwise. Requires
/// β_i = ±1 at nodes with Q_i = 0 and β_i != 0 elsewhere.
pub fn one_dim_module(q_params: &[QRational], betas: &[QRational], trunc: u32) -> Result<Module> {
    let rank = q_params.len() as u8;
    if betas.len() != q_params.len() {
        return Err(Error::Invalid("one beta per node required".into()));
    }
    let one = QRational::one();
    let bracket = &QRational::q() - &QRational::q_pow(-1);
    let mut j1 = Vec::new();
    let mut k_plus = Vec::new();
    let mut k_minus = Vec::new();
    for (q_i, beta) in q_params.iter().zip(betas) {
        if q_i.is_zero() {
            if beta != &one && beta != &(-one.clone()) {
                return Err(Error::Invalid("beta must be ±1 at nodes with Q = 0".into()));
            }
        } else if beta.is_zero() {
            return Err(Error::Invalid("beta must be nonzero".into()));
        }
        let j = if q_i.is_zero() {
            QRational::zero()
        } else {
            let jt = &(&one - &beta.pow(-2)?) / &bracket;
            &jt * &q_i.inverse()?
        };
        j1.push(Matrix::diagonal(&[j]));
        k_plus.push(Matrix::diagonal(std::slice::from_ref(beta)));
        k_minus.push(Matrix::diagonal(&[beta.inverse()?]));
    }
    Module::new(ModuleData {
        rank,
        q_params: q_params.to_vec(),
        weights: vec![vec![0; rank as usize]],
        x_plus0: vec![Matrix::zeros(1, 1); rank as usize],
        x_minus0: vec![Matrix::zeros(1, 1); rank as usize],
        j1,
        k_plus,
        k_minus,
        trunc,
    })
}

struct Sl2Data {
    e: Matrix,
    f: Matrix,
    k_plus: Matrix,
    k_minus: Matrix,
}

fn sl2_data() -> Sl2Data {
    let mut e = Matrix::zeros(2, 2);
    e[(0, 1)] = QRational::one();
    let mut f = Matrix::zeros(2, 2);
    f[(1, 0)] = QRational::one();
    Sl2Data {
        e,
        f,
        k_plus: Matrix::diagonal(&[QRational::q(), QRational::q_pow(-1)]),
        k_minus: Matrix::diagonal(&[QRational::q_pow(-1), QRational::q()]),
    }
}

/// The two-dimensional rank-one evaluation module at spectral value γ
/// (Q = 0). Only the level <= 1 matrices seed the module; the cache
/// rederives the rest, which tests compare against the displayed formulas
/// X_t+ = γ^t q^{-t}(K+)^t e and friends.
pub fn sl2_eval_module(gamma: &QRational, trunc: u32) -> Result<Module> {
    let d = sl2_data();
    let j1 = sl2_eval_matrix_j(gamma, 1);
    Module::new(ModuleData {
        rank: 1,
        q_params: vec![QRational::zero()],
        weights: vec![vec![1], vec![-1]],
        x_plus0: vec![d.e.clone()],
        x_minus0: vec![d.f.clone()],
        j1: vec![j1],
        k_plus: vec![d.k_plus.clone()],
        k_minus: vec![d.k_minus.clone()],
        trunc,
    })
}

/// γ^t with the 0^0 = 1 convention used by the γ = 0 evaluation module.
fn gamma_power(gamma: &QRational, t: u32) -> QRational {
    if t == 0 {
        QRational::one()
    } else {
        gamma.pow(t as i64).expect("nonnegative power")
    }
}

/// Displayed evaluation matrix of X_t+ = γ^t q^{-t} (K+)^t e.
pub fn sl2_eval_matrix_xplus(gamma: &QRational, t: u32) -> Matrix {
    let d = sl2_data();
    let c = gamma_power(gamma, t);
    d.k_plus
        .pow(t)
        .mul(&d.e)
        .scale(&(&c * &QRational::q_pow(-(t as i64))))
}

/// Displayed evaluation matrix of X_t- = γ^t q^{-t} f (K+)^t.
pub fn sl2_eval_matrix_xminus(gamma: &QRational, t: u32) -> Matrix {
    let d = sl2_data();
    let c = gamma_power(gamma, t);
    d.f
        .mul(&d.k_plus.pow(t))
        .scale(&(&c * &QRational::q_pow(-(t as i64))))
}

/// Displayed evaluation matrix of
/// J_t = γ^t q^{-t}(K+)^t (1-(K-)^2)/(q-q^{-1}) - γ^t (q^t - q^{-t})(K+)^{t-1} f e.
pub fn sl2_eval_matrix_j(gamma: &QRational, t: u32) -> Matrix {
    let d = sl2_data();
    let bracket = &QRational::q() - &QRational::q_pow(-1);
    let j0 = Matrix::identity(2)
        .sub(&d.k_minus.mul(&d.k_minus))
        .scale(&bracket.inverse().expect("q - q^{-1} nonzero"));
    let c = gamma_power(gamma, t);
    let first = d
        .k_plus
        .pow(t)
        .mul(&j0)
        .scale(&(&c * &QRational::q_pow(-(t as i64))));
    if t == 0 {
        return first;
    }
    let qt = &QRational::q_pow(t as i64) - &QRational::q_pow(-(t as i64));
    let second = d.k_plus.pow(t - 1).mul(&d.f).mul(&d.e).scale(&(&c * &qt));
    first.sub(&second)
}

/// Fundamental module of the quantum general linear group on the i-element
/// subsets of {1, ..., n}, with the affine matrices of the evaluation at γ
/// (the affine pair needs γ != 0).
#[derive(Debug, Clone)]
pub struct GlModule {
    pub n: u8,
    pub node: u8,
    pub gamma: QRational,
    pub dim: usize,
    pub basis: Vec<Vec<u8>>,
    pub e: Vec<Matrix>,
    pub f: Vec<Matrix>,
    pub t_plus: Vec<Matrix>,
    pub t_minus: Vec<Matrix>,
    pub k0_plus: Matrix,
    pub k0_minus: Matrix,
    /// (e_0, f_0); absent at γ = 0.
    pub affine: Option<(Matrix, Matrix)>,
}

fn subsets(n: u8, k: u8) -> Vec<Vec<u8>> {
    fn rec(start: u8, n: u8, k: u8, current: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if current.len() == k as usize {
            out.push(current.clone());
            return;
        }
        for x in start..=n {
            current.push(x);
            rec(x + 1, n, k, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn gln_fundamental(n: u8, node: u8, gamma: &QRational) -> Result<GlModule> {
    if node == 0 || node >= n {
        return Err(Error::Invalid(format!(
            "fundamental weight index {node} out of 1..{}",
            n - 1
        )));
    }
    let basis = subsets(n, node);
    let dim = basis.len();
    let index_of = |s: &[u8]| basis.iter().position(|b| b == s).expect("subset in basis");
    let mut e = vec![Matrix::zeros(dim, dim); (n - 1) as usize];
    let mut f = vec![Matrix::zeros(dim, dim); (n - 1) as usize];
    for (col, s) in basis.iter().enumerate() {
        for j in 1..n {
            if s.contains(&(j + 1)) && !s.contains(&j) {
                let mut target: Vec<u8> = s.iter().copied().filter(|&x| x != j + 1).collect();
                target.push(j);
                target.sort_unstable();
                e[(j - 1) as usize][(index_of(&target), col)] = QRational::one();
            }
            if s.contains(&j) && !s.contains(&(j + 1)) {
                let mut target: Vec<u8> = s.iter().copied().filter(|&x| x != j).collect();
                target.push(j + 1);
                target.sort_unstable();
                f[(j - 1) as usize][(index_of(&target), col)] = QRational::one();
            }
        }
    }
    let mut t_plus = Vec::new();
    let mut t_minus = Vec::new();
    for j in 1..=n {
        let diag: Vec<QRational> = basis
            .iter()
            .map(|s| if s.contains(&j) { QRational::q() } else { QRational::one() })
            .collect();
        let inv: Vec<QRational> = diag.iter().map(|d| d.inverse().expect("nonzero")).collect();
        t_plus.push(Matrix::diagonal(&diag));
        t_minus.push(Matrix::diagonal(&inv));
    }
    let k0_plus = t_minus[0].mul(&t_plus[(n - 1) as usize]);
    let k0_minus = t_plus[0].mul(&t_minus[(n - 1) as usize]);
    let affine = if gamma.is_zero() {
        None
    } else {
        let fe_bracket = nested_bracket(&f, n);
        let e0 = t_plus[0]
            .mul(&t_plus[(n - 1) as usize])
            .mul(&fe_bracket)
            .scale(&(gamma * &QRational::q_pow(-1)));
        let ee_bracket = nested_bracket(&e, n);
        let mut c = &gamma.inverse()? * &QRational::q_pow(n as i64 - 1);
        if n % 2 == 1 {
            c = -c;
        }
        let f0 = t_minus[0]
            .mul(&t_minus[(n - 1) as usize])
            .mul(&ee_bracket)
            .scale(&c);
        Some((e0, f0))
    };
    Ok(GlModule {
        n,
        node,
        gamma: gamma.clone(),
        dim,
        basis,
        e,
        f,
        t_plus,
        t_minus,
        k0_plus,
        k0_minus,
        affine,
    })
}

/// [A_{n-1}, [A_{n-2}, ..., [A_2, A_1]_{q^{-1}} ...]_{q^{-1}}]_{q^{-1}} on matrices.
fn nested_bracket(mats: &[Matrix], n: u8) -> Matrix {
    let qi = QRational::q_pow(-1);
    let mut acc = mats[0].clone();
    for j in 2..n {
        let a = &mats[(j - 1) as usize];
        acc = a.mul(&acc).sub(&acc.mul(a).scale(&qi));
    }
    acc
}

/// Quantum Serre element Σ_{s=0}^{1+m} (-1)^s A^{(1+m-s)} B A^{(s)} for
/// a pair with Cartan entry -m, using divided powers A^{(s)} = A^s/[s]!.
fn serre_general(a: &Matrix, b: &Matrix, m: u32) -> Matrix {
    let dim = a.rows();
    let mut acc = Matrix::zeros(dim, dim);
    for s in 0..=(1 + m) {
        let left = a
            .pow(1 + m - s)
            .scale(&qfact((1 + m - s) as i64).expect("nonneg").inverse().expect("nonzero"));
        let right = a
            .pow(s)
            .scale(&qfact(s as i64).expect("nonneg").inverse().expect("nonzero"));
        let term = left.mul(b).mul(&right);
        if s % 2 == 0 {
            acc = acc.add(&term);
        } else {
            acc = acc.sub(&term);
        }
    }
    acc
}

impl GlModule {
    /// Sl-weight of each basis vector: entry j is [j in S] - [j+1 in S].
    pub fn sl_weights(&self) -> Vec<Vec<i64>> {
        self.basis
            .iter()
            .map(|s| {
                (1..self.n)
                    .map(|j| s.contains(&j) as i64 - s.contains(&(j + 1)) as i64)
                    .collect()
            })
            .collect()
    }

    /// Basis index of the highest-weight vector {1, ..., i}.
    pub fn hw_index(&self) -> usize {
        let top: Vec<u8> = (1..=self.node).collect();
        self.basis.iter().position(|b| b == &top).expect("top subset present")
    }

    /// Affine Cartan entry a_{0,j} for j in I (type A_{n-1}^{(1)}).
    fn affine_cartan(&self, j: u8) -> i64 {
        if self.n == 2 {
            // node 1 is doubly linked to the affine node
            -2
        } else if j == 1 || j == self.n - 1 {
            -1
        } else {
            0
        }
    }

    /// Verify the defining relations of the quantum general linear group
    /// plus the affine-node relations where the affine pair exists; returns
    /// the number of failed checks.
    pub fn verify(&self) -> usize {
        let mut failures = 0;
        let n = self.n;
        let dim = self.dim;
        let bracket = &QRational::q() - &QRational::q_pow(-1);
        let bracket_inv = bracket.inverse().expect("nonzero");
        let mut check = |ok: bool| {
            if !ok {
                failures += 1;
            }
        };
        for j in 0..n as usize {
            check(self.t_plus[j].mul(&self.t_minus[j]) == Matrix::identity(dim));
            for l in 0..n as usize {
                check(self.t_plus[j].commutator(&self.t_plus[l]).is_zero());
            }
        }
        let delta = |a: u8, b: u8| (a == b) as i64;
        for i in 1..n {
            let ei = &self.e[(i - 1) as usize];
            let fi = &self.f[(i - 1) as usize];
            for j in 1..=n {
                let tj = &self.t_plus[(j - 1) as usize];
                let tjm = &self.t_minus[(j - 1) as usize];
                let ce = delta(j, i) - delta(j, i + 1);
                check(tj.mul(ei).mul(tjm) == ei.scale(&QRational::q_pow(ce)));
                check(tj.mul(fi).mul(tjm) == fi.scale(&QRational::q_pow(-ce)));
            }
            for j in 1..n {
                let ej = &self.e[(j - 1) as usize];
                let fj = &self.f[(j - 1) as usize];
                let lhs = ei.commutator(fj);
                let rhs = if i == j {
                    self.t_plus[(i - 1) as usize]
                        .mul(&self.t_minus[i as usize])
                        .sub(&self.t_minus[(i - 1) as usize].mul(&self.t_plus[i as usize]))
                        .scale(&bracket_inv)
                } else {
                    Matrix::zeros(dim, dim)
                };
                check(lhs == rhs);
                if i.abs_diff(j) >= 2 {
                    check(ei.commutator(ej).is_zero());
                    check(fi.commutator(fj).is_zero());
                } else if i != j {
                    check(serre_general(ei, ej, 1).is_zero());
                    check(serre_general(fi, fj, 1).is_zero());
                }
            }
        }
        // canonical central element k_0 k_1 ... k_{n-1} acts as the identity
        let mut central = self.k0_plus.clone();
        for i in 1..n {
            central = central.mul(&self.t_plus[(i - 1) as usize].mul(&self.t_minus[i as usize]));
        }
        check(central == Matrix::identity(dim));
        if let Some((e0, f0)) = &self.affine {
            check(self.k0_plus.mul(&self.k0_minus) == Matrix::identity(dim));
            check(e0.commutator(f0) == self.k0_plus.sub(&self.k0_minus).scale(&bracket_inv));
            check(self.k0_plus.mul(e0).mul(&self.k0_minus) == e0.scale(&QRational::q_pow(2)));
            check(self.k0_plus.mul(f0).mul(&self.k0_minus) == f0.scale(&QRational::q_pow(-2)));
            for j in 1..n {
                let ej = &self.e[(j - 1) as usize];
                let fj = &self.f[(j - 1) as usize];
                let kj = self.t_plus[(j - 1) as usize].mul(&self.t_minus[j as usize]);
                let kjm = self.t_minus[(j - 1) as usize].mul(&self.t_plus[j as usize]);
                let a0j = self.affine_cartan(j);
                check(kj.mul(e0).mul(&kjm) == e0.scale(&QRational::q_pow(a0j)));
                check(kj.mul(f0).mul(&kjm) == f0.scale(&QRational::q_pow(-a0j)));
                check(self.k0_plus.mul(ej).mul(&self.k0_minus) == ej.scale(&QRational::q_pow(a0j)));
                check(e0.commutator(fj).is_zero());
                check(f0.commutator(ej).is_zero());
                match a0j {
                    0 => {
                        check(e0.commutator(ej).is_zero());
                        check(f0.commutator(fj).is_zero());
                    }
                    m => {
                        let m = (-m) as u32;
                        check(serre_general(e0, ej, m).is_zero());
                        check(serre_general(ej, e0, m).is_zero());
                        check(serre_general(f0, fj, m).is_zero());
                        check(serre_general(fj, f0, m).is_zero());
                    }
                }
            }
        }
        failures
    }
}

/// A matrix of affine-linear forms in the solver unknowns.
#[derive(Clone)]
struct LinForm {
    coeffs: Vec<(usize, QRational)>,
    constant: QRational,
}

impl LinForm {
    fn zero() -> LinForm {
        LinForm {
            coeffs: Vec::new(),
            constant: QRational::zero(),
        }
    }

    fn push(&mut self, i: usize, c: QRational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.iter_mut().find(|(j, _)| *j == i) {
            Some((_, existing)) => {
                *existing += &c;
                if existing.is_zero() {
                    self.coeffs.retain(|(_, c)| !c.is_zero());
                }
            }
            None => self.coeffs.push((i, c)),
        }
    }

    fn add(&mut self, other: &LinForm) {
        for (i, c) in &other.coeffs {
            self.push(*i, c.clone());
        }
        self.constant += &other.constant;
    }

    fn scale(&self, c: &QRational) -> LinForm {
        LinForm {
            coeffs: self.coeffs.iter().map(|(i, a)| (*i, a * c)).collect(),
            constant: &self.constant * c,
        }
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.is_empty() && self.constant.is_zero()
    }
}

struct LinMatrix {
    dim: usize,
    entries: Vec<LinForm>,
}

impl LinMatrix {
    fn zero(dim: usize) -> LinMatrix {
        LinMatrix {
            dim,
            entries: vec![LinForm::zero(); dim * dim],
        }
    }

    fn at(&self, r: usize, c: usize) -> &LinForm {
        &self.entries[r * self.dim + c]
    }

    fn at_mut(&mut self, r: usize, c: usize) -> &mut LinForm {
        &mut self.entries[r * self.dim + c]
    }

    fn mul_known_left(&self, a: &Matrix) -> LinMatrix {
        let dim = self.dim;
        let mut out = LinMatrix::zero(dim);
        for r in 0..dim {
            for k in 0..dim {
                let coeff = &a[(r, k)];
                if coeff.is_zero() {
                    continue;
                }
                for c in 0..dim {
                    let term = self.at(k, c).scale(coeff);
                    out.at_mut(r, c).add(&term);
                }
            }
        }
        out
    }

    fn mul_known_right(&self, b: &Matrix) -> LinMatrix {
        let dim = self.dim;
        let mut out = LinMatrix::zero(dim);
        for k in 0..dim {
            for c in 0..dim {
                let coeff = &b[(k, c)];
                if coeff.is_zero() {
                    continue;
                }
                for r in 0..dim {
                    let term = self.at(r, k).scale(coeff);
                    out.at_mut(r, c).add(&term);
                }
            }
        }
        out
    }

    fn sub(&self, other: &LinMatrix) -> LinMatrix {
        let dim = self.dim;
        let mut out = LinMatrix::zero(dim);
        let minus_one = -QRational::one();
        for i in 0..dim * dim {
            let mut f = self.entries[i].clone();
            f.add(&other.entries[i].scale(&minus_one));
            out.entries[i] = f;
        }
        out
    }

    fn scale(&self, s: &QRational) -> LinMatrix {
        LinMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|f| f.scale(s)).collect(),
        }
    }
}

/// Extend a fundamental module to the full current-algebra action at
/// spectral value γ by solving for the level-one matrices.
///
/// The level-zero data X_{j,0}± = E_j, F_j and K_j = T_j T_{j+1}^{-1} is
/// forced; the unknowns {J_{j,1}, X_{j,1}±} are weight-homogeneous matrices
/// constrained by the relation instances linear in them (the level shuffles
/// at lowest level, the mixed J relations at s = 0, the pairing relation at
/// total level one) together with the highest-weight conditions
/// J_{j,t} v_0 = δ_{ij} q^{-1}(γ q^{2-i})^t v_0, X_{j,t}+ v_0 = 0 and
/// X_{i,1}- v_0 = γ q^{2-i} X_{i,0}- v_0. The solution must be unique, and
/// the assembled module is certified by a full relation check before being
/// returned; failure of either signals a modeling bug distinctly.
pub fn solve_loop_action(n: u8, node: u8, gamma: &QRational, trunc: u32) -> Result<Module> {
    let gl = gln_fundamental(n, node, gamma)?;
    let rank = n - 1;
    let dim = gl.dim;
    let weights = gl.sl_weights();
    let x_plus0: Vec<Matrix> = gl.e.clone();
    let x_minus0: Vec<Matrix> = gl.f.clone();
    let mut k_plus = Vec::new();
    let mut k_minus = Vec::new();
    for j in 1..n {
        k_plus.push(gl.t_plus[(j - 1) as usize].mul(&gl.t_minus[j as usize]));
        k_minus.push(gl.t_minus[(j - 1) as usize].mul(&gl.t_plus[j as usize]));
    }
    let cartan = |i: usize, j: usize| -> i64 {
        if i == j {
            2
        } else if i.abs_diff(j) == 1 {
            -1
        } else {
            0
        }
    };

    // Unknown slots, restricted to the weight-allowed entry patterns:
    // kind 0 = J_{j,1} (weight preserving), 1 = X_{j,1}+ (raises by α_j),
    // 2 = X_{j,1}- (lowers by α_j).
    let pattern_ok = |kind: usize, j: usize, r: usize, c: usize| -> bool {
        for l in 0..rank as usize {
            let alpha = cartan(l, j);
            let dir = match kind {
                0 => 0,
                1 => alpha,
                _ => -alpha,
            };
            if weights[r][l] != weights[c][l] + dir {
                return false;
            }
        }
        true
    };
    let mut slots: Vec<(usize, usize, usize, usize)> = Vec::new();
    let mut slot_lookup = vec![vec![usize::MAX; dim * dim]; 3 * rank as usize];
    for kind in 0..3usize {
        for j in 0..rank as usize {
            for r in 0..dim {
                for c in 0..dim {
                    if pattern_ok(kind, j, r, c) {
                        slot_lookup[kind * rank as usize + j][r * dim + c] = slots.len();
                        slots.push((kind, j, r, c));
                    }
                }
            }
        }
    }
    let unknowns = slots.len();
    let slot_index = |kind: usize, j: usize, r: usize, c: usize| -> Option<usize> {
        let ix = slot_lookup[kind * rank as usize + j][r * dim + c];
        (ix != usize::MAX).then_some(ix)
    };
    let from_unknown = |kind: usize, j: usize| -> LinMatrix {
        let mut out = LinMatrix::zero(dim);
        for r in 0..dim {
            for c in 0..dim {
                if let Some(ix) = slot_index(kind, j, r, c) {
                    out.at_mut(r, c).push(ix, QRational::one());
                }
            }
        }
        out
    };

    let mut rows: Vec<Vec<QRational>> = Vec::new();
    let mut rhs: Vec<QRational> = Vec::new();
    let push_zero = |m: &LinMatrix, rows: &mut Vec<Vec<QRational>>, rhs: &mut Vec<QRational>| {
        for form in &m.entries {
            if form.is_trivial() {
                continue;
            }
            let mut row = vec![QRational::zero(); unknowns];
            for (i, cf) in &form.coeffs {
                row[*i] = cf.clone();
            }
            rows.push(row);
            rhs.push(-&form.constant);
        }
    };

    let bracket = &QRational::q() - &QRational::q_pow(-1);
    let j0_known: Vec<Matrix> = (0..rank as usize)
        .map(|j| {
            Matrix::identity(dim)
                .sub(&k_minus[j].mul(&k_minus[j]))
                .scale(&bracket.inverse().expect("nonzero"))
        })
        .collect();

    for i in 0..rank as usize {
        let xi1p = from_unknown(1, i);
        let xi1m = from_unknown(2, i);
        let ji1 = from_unknown(0, i);
        for j in 0..rank as usize {
            let a = cartan(i, j);
            let qa = QRational::q_pow(a);
            let qam = QRational::q_pow(-a);
            let xj1p = from_unknown(1, j);
            let xj1m = from_unknown(2, j);
            // level shuffle at lowest level, raising side
            let lhs = xi1p
                .mul_known_right(&x_plus0[j])
                .sub(&xi1p.mul_known_left(&x_plus0[j]).scale(&qa));
            let rhs_side = xj1p
                .mul_known_left(&x_plus0[i])
                .scale(&qa)
                .sub(&xj1p.mul_known_right(&x_plus0[i]));
            push_zero(&lhs.sub(&rhs_side), &mut rows, &mut rhs);
            // lowering side
            let lhs = xi1m
                .mul_known_right(&x_minus0[j])
                .sub(&xi1m.mul_known_left(&x_minus0[j]).scale(&qam));
            let rhs_side = xj1m
                .mul_known_left(&x_minus0[i])
                .scale(&qam)
                .sub(&xj1m.mul_known_right(&x_minus0[i]));
            push_zero(&lhs.sub(&rhs_side), &mut rows, &mut rhs);
            // [J_{i,1}, X_{j,0}+] = q^a J_{i,0} X_{j,1}+ - q^{-a} X_{j,1}+ J_{i,0}
            let lhs = ji1
                .mul_known_right(&x_plus0[j])
                .sub(&ji1.mul_known_left(&x_plus0[j]));
            let rhs_side = xj1p
                .mul_known_left(&j0_known[i])
                .scale(&qa)
                .sub(&xj1p.mul_known_right(&j0_known[i]).scale(&qam));
            push_zero(&lhs.sub(&rhs_side), &mut rows, &mut rhs);
            // [J_{i,1}, X_{j,0}-] = q^{-a} J_{i,0} X_{j,1}- - q^a X_{j,1}- J_{i,0}
            let lhs = ji1
                .mul_known_right(&x_minus0[j])
                .sub(&ji1.mul_known_left(&x_minus0[j]));
            let rhs_side = xj1m
                .mul_known_left(&j0_known[i])
                .scale(&qam)
                .sub(&xj1m.mul_known_right(&j0_known[i]).scale(&qa));
            push_zero(&lhs.sub(&rhs_side), &mut rows, &mut rhs);
            // pairing at total level one: [X_{i,1}+, X_{j,0}-] = δ_ij K_i+ J_{i,1}
            // and [X_{i,0}+, X_{j,1}-] = δ_ij K_i+ J_{i,1}
            let kj1 = ji1.mul_known_left(&k_plus[i]);
            let lhs = xi1p
                .mul_known_right(&x_minus0[j])
                .sub(&xi1p.mul_known_left(&x_minus0[j]));
            let diff = if i == j { lhs.sub(&kj1) } else { lhs };
            push_zero(&diff, &mut rows, &mut rhs);
            let lhs = xj1m
                .mul_known_left(&x_plus0[i])
                .sub(&xj1m.mul_known_right(&x_plus0[i]));
            let diff = if i == j { lhs.sub(&kj1) } else { lhs };
            push_zero(&diff, &mut rows, &mut rhs);
        }
    }

    // Highest-weight conditions on v_0.
    let hw = gl.hw_index();
    let spectral = gamma * &QRational::q_pow(2 - node as i64);
    for j in 0..rank as usize {
        for r in 0..dim {
            let target = if j == (node - 1) as usize && r == hw {
                &QRational::q_pow(-1) * &spectral
            } else {
                QRational::zero()
            };
            if let Some(ix) = slot_index(0, j, r, hw) {
                let mut row = vec![QRational::zero(); unknowns];
                row[ix] = QRational::one();
                rows.push(row);
                rhs.push(target);
            } else if !target.is_zero() {
                return Err(Error::NoSolution("weight pattern excludes forced J entry".into()));
            }
        }
        for r in 0..dim {
            if let Some(ix) = slot_index(1, j, r, hw) {
                let mut row = vec![QRational::zero(); unknowns];
                row[ix] = QRational::one();
                rows.push(row);
                rhs.push(QRational::zero());
            }
        }
        for r in 0..dim {
            let target = if j == (node - 1) as usize {
                &spectral * &x_minus0[j][(r, hw)]
            } else {
                QRational::zero()
            };
            if let Some(ix) = slot_index(2, j, r, hw) {
                let mut row = vec![QRational::zero(); unknowns];
                row[ix] = QRational::one();
                rows.push(row);
                rhs.push(target);
            } else if !target.is_zero() {
                return Err(Error::NoSolution("weight pattern excludes forced X- entry".into()));
            }
        }
    }

    let m = Matrix::from_fn(rows.len(), unknowns, |r, c| rows[r][c].clone());
    let solution = solve_unique(&m, &rhs)?;

    let mut j1 = vec![Matrix::zeros(dim, dim); rank as usize];
    let mut x1p = vec![Matrix::zeros(dim, dim); rank as usize];
    let mut x1m = vec![Matrix::zeros(dim, dim); rank as usize];
    for (ix, &(kind, j, r, c)) in slots.iter().enumerate() {
        let value = solution[ix].clone();
        match kind {
            0 => j1[j][(r, c)] = value,
            1 => x1p[j][(r, c)] = value,
            _ => x1m[j][(r, c)] = value,
        }
    }

    let module = Module::new(ModuleData {
        rank,
        q_params: vec![QRational::zero(); rank as usize],
        weights,
        x_plus0,
        x_minus0,
        j1,
        k_plus,
        k_minus,
        trunc,
    })?;
    // The cache rederives X_{j,1}± from J_{j,1}; the solved values must agree.
    for j in 0..rank as usize {
        let node_j = j as u8 + 1;
        if module.matrix_of(&GenSymbol::XPlus { node: node_j, level: 1 })? != &x1p[j] {
            return Err(Error::NoSolution("level-one raising matrix inconsistent".into()));
        }
        if module.matrix_of(&GenSymbol::XMinus { node: node_j, level: 1 })? != &x1m[j] {
            return Err(Error::NoSolution("level-one lowering matrix inconsistent".into()));
        }
    }
    let report = super::verify_relations(&module, trunc)?;
    if !report.pass() {
        return Err(Error::NoSolution(
            "solved action fails the relation check".into(),
        ));
    }
    Ok(module)
}

/// Pull a module with all-zero parameters back along a shift embedding,
/// producing a module for the algebra with parameters `q_params`.
pub fn pullback_module(map: &GeneratorMap, base: &Module, q_params: &[QRational]) -> Result<Module> {
    if base.has_nonzero_shift() {
        return Err(Error::Invalid("pullback base must have zero parameters".into()));
    }
    let rank = base.rank();
    if q_params.len() != rank as usize {
        return Err(Error::Invalid("parameter list length must equal rank".into()));
    }
    let img = |s: GenSymbol| -> Result<Matrix> { base.act(&map.image(&s)) };
    let mut x_plus0 = Vec::new();
    let mut x_minus0 = Vec::new();
    let mut j1 = Vec::new();
    let mut k_plus = Vec::new();
    let mut k_minus = Vec::new();
    for node in 1..=rank {
        x_plus0.push(img(GenSymbol::XPlus { node, level: 0 })?);
        x_minus0.push(img(GenSymbol::XMinus { node, level: 0 })?);
        j1.push(img(GenSymbol::J { node, level: 1 })?);
        k_plus.push(img(GenSymbol::KPlus { node })?);
        k_minus.push(img(GenSymbol::KMinus { node })?);
    }
    Module::new(ModuleData {
        rank,
        q_params: q_params.to_vec(),
        weights: base.weights().to_vec(),
        x_plus0,
        x_minus0,
        j1,
        k_plus,
        k_minus,
        trunc: base.trunc(),
    })
}
