//! Concrete finite-dimensional modules over Q(q): exact generator-action
//! matrices, derived actions for all levels up to a truncation, tensor
//! products through the coideal coproducts, simple-top extraction via the
//! contravariant form, and exhaustive relation/identity verification.

mod construct;
mod simple;
mod tensor;
mod verify;

pub use construct::{
    gln_fundamental, one_dim_module, pullback_module, sl2_eval_matrix_j, sl2_eval_matrix_xminus,
    sl2_eval_matrix_xplus, sl2_eval_module, solve_loop_action, GlModule,
};
pub use simple::{cyclic_submodule, radical_dimension_by_raising, simple_top};
pub use tensor::{eval_tensor_element, tensor};
pub use verify::{
    classify_roundtrip, verify_appendix_identities, verify_relations, AppendixReport,
    ClassifyReport, RelationReport,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hwclass::{HighestWeight, HighestWeightNode};
use crate::linalg::Matrix;
use crate::presentation::{AlgebraElement, GenSymbol};
use crate::scalars::{qint, QRational};

/// A weight-graded module with exact matrices for the generating set
/// {X_{i,0}±, J_{i,1}, K_i±} and a cache of all derived levels t <= T.
///
/// Higher levels are never stored independently: X_{i,t+1}± comes from the
/// J_{i,1}-bracket recursion, J_{i,0} from the K-square relation and
/// J_{i,t+1} from the level-raising consequence of the mixed relation, so
/// cache consistency is structural.
#[derive(Debug, Clone)]
pub struct Module {
    rank: u8,
    q_params: Vec<QRational>,
    dim: usize,
    /// Per-basis-vector sl-weight, one integer per node.
    weights: Vec<Vec<i64>>,
    trunc: u32,
    x_plus: Vec<Vec<Matrix>>,
    x_minus: Vec<Vec<Matrix>>,
    j_op: Vec<Vec<Matrix>>,
    k_plus: Vec<Matrix>,
    k_minus: Vec<Matrix>,
}

/// The generator matrices handed to [`Module::new`].
pub struct ModuleData {
    pub rank: u8,
    pub q_params: Vec<QRational>,
    pub weights: Vec<Vec<i64>>,
    pub x_plus0: Vec<Matrix>,
    pub x_minus0: Vec<Matrix>,
    pub j1: Vec<Matrix>,
    pub k_plus: Vec<Matrix>,
    pub k_minus: Vec<Matrix>,
    pub trunc: u32,
}

impl Module {
    /// Build the full level cache from generator matrices.
    pub fn new(data: ModuleData) -> Result<Module> {
        let ModuleData {
            rank,
            q_params,
            weights,
            x_plus0,
            x_minus0,
            j1,
            k_plus,
            k_minus,
            trunc,
        } = data;
        if q_params.len() != rank as usize {
            return Err(Error::Invalid("parameter list length must equal rank".into()));
        }
        let dim = weights.len();
        let n = rank as usize;
        if [x_plus0.len(), x_minus0.len(), j1.len(), k_plus.len(), k_minus.len()] != [n; 5] {
            return Err(Error::Invalid("one generator matrix per node required".into()));
        }
        let bracket = &QRational::q() - &QRational::q_pow(-1);
        let two_inv = qint(2).inverse()?;
        let mut x_plus = Vec::with_capacity(n);
        let mut x_minus = Vec::with_capacity(n);
        let mut j_op = Vec::with_capacity(n);
        for i in 0..n {
            // J_{i,0} = (1 - (K_i-)^2)/(q - q^{-1})
            let j0 = Matrix::identity(dim)
                .sub(&k_minus[i].mul(&k_minus[i]))
                .scale(&bracket.inverse()?);
            let mut xp = vec![x_plus0[i].clone()];
            let mut xm = vec![x_minus0[i].clone()];
            let mut jj = vec![j0, j1[i].clone()];
            for t in 0..trunc as usize {
                // X_{i,t+1}± = ±[2]^{-1} [J_{i,1}, X_{i,t}±]
                xp.push(j1[i].commutator(&xp[t]).scale(&two_inv));
                xm.push(j1[i].commutator(&xm[t]).scale(&two_inv).neg());
            }
            let q_i = &q_params[i];
            for t in 1..trunc as usize {
                // J_{i,t+1} from [X_{i,·}+, X_{i,0}-]
                let next = if q_i.is_zero() {
                    k_minus[i].mul(&xp[t + 1].commutator(&x_minus0[i]))
                } else {
                    let q_inv = q_i.inverse()?;
                    jj[t]
                        .sub(&k_minus[i].mul(&xp[t].commutator(&x_minus0[i])))
                        .scale(&q_inv)
                };
                jj.push(next);
            }
            xp.truncate(trunc as usize + 1);
            xm.truncate(trunc as usize + 1);
            x_plus.push(xp);
            x_minus.push(xm);
            j_op.push(jj);
        }
        Ok(Module {
            rank,
            q_params,
            dim,
            weights,
            trunc,
            x_plus,
            x_minus,
            j_op,
            k_plus,
            k_minus,
        })
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn q_params(&self) -> &[QRational] {
        &self.q_params
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn has_nonzero_shift(&self) -> bool {
        self.q_params.iter().any(|x| !x.is_zero())
    }

    /// Matrix of one generator symbol from the level cache.
    pub fn matrix_of(&self, s: &GenSymbol) -> Result<&Matrix> {
        let node = s.node();
        if node == 0 || node > self.rank {
            return Err(Error::Invalid(format!("node {node} out of range")));
        }
        let i = (node - 1) as usize;
        match *s {
            GenSymbol::KPlus { .. } => Ok(&self.k_plus[i]),
            GenSymbol::KMinus { .. } => Ok(&self.k_minus[i]),
            GenSymbol::XPlus { level, .. } => self
                .x_plus[i]
                .get(level as usize)
                .ok_or_else(|| Error::Invalid(format!("level {level} above truncation {}", self.trunc))),
            GenSymbol::XMinus { level, .. } => self
                .x_minus[i]
                .get(level as usize)
                .ok_or_else(|| Error::Invalid(format!("level {level} above truncation {}", self.trunc))),
            GenSymbol::J { level, .. } => self
                .j_op[i]
                .get(level as usize)
                .ok_or_else(|| Error::Invalid(format!("level {level} above truncation {}", self.trunc))),
        }
    }

    /// Evaluate a formal element as a matrix; the leftmost symbol of each
    /// word acts last, so words map to left-to-right matrix products.
    pub fn act(&self, x: &AlgebraElement) -> Result<Matrix> {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (w, c) in x.terms() {
            let mut m = Matrix::identity(self.dim);
            for s in w.iter().rev() {
                m = self.matrix_of(s)?.mul(&m);
            }
            out = out.add(&m.scale(c));
        }
        Ok(out)
    }

    /// Apply a single symbol to a vector.
    pub fn apply_symbol(&self, s: &GenSymbol, v: &[QRational]) -> Result<Vec<QRational>> {
        Ok(self.matrix_of(s)?.apply(v))
    }

    /// Apply a word (leftmost acts last).
    pub fn apply_word(&self, w: &[GenSymbol], v: &[QRational]) -> Result<Vec<QRational>> {
        let mut out = v.to_vec();
        for s in w.iter().rev() {
            out = self.apply_symbol(s, &out)?;
        }
        Ok(out)
    }

    /// Weight of a vector, when supported on a single weight; None for 0.
    pub fn weight_of(&self, v: &[QRational]) -> Result<Option<Vec<i64>>> {
        let mut found: Option<&Vec<i64>> = None;
        for (idx, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match found {
                None => found = Some(&self.weights[idx]),
                Some(w) if w == &self.weights[idx] => {}
                Some(_) => {
                    return Err(Error::Invalid("vector mixes weight spaces".into()));
                }
            }
        }
        Ok(found.cloned())
    }

    /// The generating symbols whose matrices define the module.
    pub fn generating_symbols(&self) -> Vec<GenSymbol> {
        let mut out = Vec::new();
        for node in 1..=self.rank {
            out.push(GenSymbol::XPlus { node, level: 0 });
            out.push(GenSymbol::XMinus { node, level: 0 });
            out.push(GenSymbol::J { node, level: 1 });
            out.push(GenSymbol::KPlus { node });
            out.push(GenSymbol::KMinus { node });
        }
        out
    }

    /// All joint-kernel weight vectors of the raising operators, bucketed;
    /// used by highest-weight extraction and the radical search.
    fn raising_kernel(&self) -> Result<crate::linalg::Echelon> {
        let mut rows = Vec::new();
        for i in 0..self.rank as usize {
            for t in 0..=self.trunc as usize {
                for r in 0..self.dim {
                    rows.push(self.x_plus[i][t].row(r).to_vec());
                }
            }
        }
        let mut ech = crate::linalg::Echelon::new(self.dim);
        for row in rows {
            ech.insert(row);
        }
        Ok(ech)
    }

    /// Find the highest-weight vector: the unique (up to scalar) joint
    /// kernel vector of all raising matrices in the top weight space.
    pub fn highest_weight_vector(&self) -> Result<Vec<QRational>> {
        let ech = self.raising_kernel()?;
        let kernel_basis = {
            let m = ech_to_matrix(&ech, self.dim);
            crate::linalg::kernel(&m)
        };
        if kernel_basis.is_empty() {
            return Err(Error::Invalid("no vector killed by all raising operators".into()));
        }
        // Bucket kernel vectors by weight and pick the maximal weight.
        let mut best: Option<(Vec<i64>, Vec<QRational>, usize)> = None;
        for v in &kernel_basis {
            let w = self
                .weight_of(v)?
                .ok_or_else(|| Error::Invalid("zero kernel vector".into()))?;
            match &mut best {
                None => best = Some((w, v.clone(), 1)),
                Some((bw, bv, count)) => {
                    if *bw == w {
                        *count += 1;
                    } else if dominates(&w, bw, self.rank) {
                        *bv = v.clone();
                        *bw = w;
                        *count = 1;
                    } else if !dominates(bw, &w, self.rank) {
                        // incomparable tops: ambiguous
                        return Err(Error::Invalid(
                            "no unique top weight among singular vectors".into(),
                        ));
                    }
                }
            }
        }
        let (_, v, count) = best.unwrap();
        if count > 1 {
            return Err(Error::Invalid("top weight space has several singular vectors".into()));
        }
        Ok(v)
    }

    /// Read off (λ_i, (u_{i,t})_{t<=T}) on the highest-weight vector.
    pub fn hw_of(&self) -> Result<HWReport> {
        let v0 = self.highest_weight_vector()?;
        let mut nodes = Vec::new();
        for node in 1..=self.rank {
            let lambda = self.eigenvalue_on(&GenSymbol::KPlus { node }, &v0)?;
            let mut u = Vec::new();
            for t in 1..=self.trunc {
                u.push(self.eigenvalue_on(&GenSymbol::J { node, level: t }, &v0)?);
            }
            nodes.push(HighestWeightNode::new(lambda, u)?);
        }
        let hw = HighestWeight::new(nodes)?;
        let mut multiplicities: Vec<(Vec<i64>, usize)> = Vec::new();
        for w in &self.weights {
            match multiplicities.iter_mut().find(|(x, _)| x == w) {
                Some((_, c)) => *c += 1,
                None => multiplicities.push((w.clone(), 1)),
            }
        }
        Ok(HWReport {
            hw_vector: v0,
            hw,
            dim: self.dim,
            weight_multiplicities: multiplicities,
        })
    }

    fn eigenvalue_on(&self, s: &GenSymbol, v: &[QRational]) -> Result<QRational> {
        let image = self.apply_symbol(s, v)?;
        let pivot = v
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| Error::Invalid("zero vector".into()))?;
        let lambda = &image[pivot] / &v[pivot];
        // scalar action check
        for (a, b) in image.iter().zip(v) {
            if a != &(&lambda * b) {
                return Err(Error::Invalid(format!("{s} does not act as a scalar")));
            }
        }
        Ok(lambda)
    }

    /// Structural sanity checks: K diagonal per weight, X shifts weight by
    /// ±α_i, J and K preserve weight.
    pub fn check_weight_grading(&self) -> Result<()> {
        for i in 0..self.rank as usize {
            for t in 0..=self.trunc as usize {
                self.check_shift(&self.x_plus[i][t], i, 1)?;
                self.check_shift(&self.x_minus[i][t], i, -1)?;
                self.check_shift(&self.j_op[i][t], i, 0)?;
            }
            self.check_shift(&self.k_plus[i], i, 0)?;
            self.check_shift(&self.k_minus[i], i, 0)?;
        }
        Ok(())
    }

    fn check_shift(&self, m: &Matrix, node_idx: usize, dir: i64) -> Result<()> {
        for r in 0..self.dim {
            for c in 0..self.dim {
                if m[(r, c)].is_zero() {
                    continue;
                }
                for j in 0..self.rank as usize {
                    let alpha = if j == node_idx {
                        2
                    } else if j.abs_diff(node_idx) == 1 {
                        -1
                    } else {
                        0
                    };
                    if self.weights[r][j] != self.weights[c][j] + dir * alpha {
                        return Err(Error::Invalid(format!(
                            "entry ({r},{c}) of node-{} operator breaks the weight grading",
                            node_idx + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn ech_to_matrix(ech: &crate::linalg::Echelon, dim: usize) -> Matrix {
    let rows = ech.rows();
    let mut m = Matrix::zeros(rows.len(), dim);
    for (r, row) in rows.iter().enumerate() {
        for c in 0..dim {
            m[(r, c)] = row[c].clone();
        }
    }
    m
}

/// Dominance test in the root order: w - v a nonnegative combination of
/// simple-root columns of the Cartan matrix.
fn dominates(w: &[i64], v: &[i64], rank: u8) -> bool {
    // Solve A c = w - v over the rationals for type A and check c >= 0,
    // integral. A is the Cartan matrix.
    let n = rank as usize;
    let diff: Vec<i64> = w.iter().zip(v).map(|(a, b)| a - b).collect();
    // Invert by forward elimination on the tridiagonal system: use exact
    // rational arithmetic with i128 fractions via QRational for simplicity.
    let a = Matrix::from_fn(n, n, |r, c| {
        QRational::from_int(if r == c {
            2
        } else if r.abs_diff(c) == 1 {
            -1
        } else {
            0
        })
    });
    let b: Vec<QRational> = diff.iter().map(|&d| QRational::from_int(d)).collect();
    match crate::linalg::solve_unique(&a, &b) {
        Ok(c) => c.iter().all(|x| {
            x.as_rational()
                .map(|r| r.denom() == &num::BigInt::from(1) && r >= num::BigRational::from_integer(0.into()))
                .unwrap_or(false)
        }),
        Err(_) => false,
    }
}

/// Highest-weight data read off a module.
#[derive(Debug, Clone)]
pub struct HWReport {
    pub hw_vector: Vec<QRational>,
    pub hw: HighestWeight,
    pub dim: usize,
    pub weight_multiplicities: Vec<(Vec<i64>, usize)>,
}

impl HWReport {
    /// Whether the module is cyclic over its highest-weight vector and has
    /// simple top of full dimension; computed on demand.
    pub fn is_simple(&self, module: &Module) -> Result<bool> {
        let closure = cyclic_submodule(module, &self.hw_vector)?;
        if closure.dim() != module.dim() {
            return Ok(false);
        }
        let top = simple_top(module)?;
        Ok(top.dim() == module.dim())
    }
}

/// Serializable module summary used by the command-line front end.
#[derive(Debug, Clone, Serialize)]
pub struct ModuleReport {
    pub dim: usize,
    pub weights: Vec<Vec<i64>>,
    pub hw: Option<HighestWeight>,
    #[serde(rename = "relationChecks")]
    pub relation_checks: std::collections::BTreeMap<String, FamilyCheck>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyCheck {
    pub instances: usize,
    pub failures: usize,
}
