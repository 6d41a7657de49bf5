//! Tensor products of modules through the coideal coproducts: the right
//! factor always has zero parameters, the left factor decides between the
//! plain coproduct and the shifted one.

use super::{Module, ModuleData};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::presentation::{delta_r, GenSymbol, TensorElement};

/// Evaluate a formal tensor element leg-by-leg: the left legs act on `m`
/// (through its own parameter recursions), the right legs on `n`.
pub fn eval_tensor_element(te: &TensorElement, m: &Module, n: &Module) -> Result<Matrix> {
    let dim = m.dim() * n.dim();
    let mut out = Matrix::zeros(dim, dim);
    for ((w1, w2), c) in te.terms() {
        let left = word_matrix(m, w1)?;
        let right = word_matrix(n, w2)?;
        out = out.add(&left.kronecker(&right).scale(c));
    }
    Ok(out)
}

fn word_matrix(m: &Module, w: &[GenSymbol]) -> Result<Matrix> {
    let mut acc = Matrix::identity(m.dim());
    for s in w.iter().rev() {
        acc = m.matrix_of(s)?.mul(&acc);
    }
    Ok(acc)
}

/// Tensor product M ⊗ N. N must have all-zero parameters; when M carries a
/// nonzero parameter the shifted coproduct is used (its left legs are
/// parameter-side symbols, evaluated through M's own cache), otherwise the
/// plain one. Weights add; the generator matrices are evaluated leg-by-leg
/// and the level cache is rebuilt from them.
pub fn tensor(m: &Module, n: &Module) -> Result<Module> {
    if m.rank() != n.rank() {
        return Err(Error::Invalid("tensor factors must share the rank".into()));
    }
    if n.has_nonzero_shift() {
        return Err(Error::Invalid("right tensor factor must have zero parameters".into()));
    }
    let rank = m.rank();
    let trunc = m.trunc().min(n.trunc());
    let mut weights = Vec::with_capacity(m.dim() * n.dim());
    for wm in m.weights() {
        for wn in n.weights() {
            weights.push(wm.iter().zip(wn).map(|(a, b)| a + b).collect());
        }
    }
    let mut x_plus0 = Vec::new();
    let mut x_minus0 = Vec::new();
    let mut j1 = Vec::new();
    let mut k_plus = Vec::new();
    let mut k_minus = Vec::new();
    for node in 1..=rank {
        let image = |g: GenSymbol| -> Result<Matrix> {
            let te = delta_r(rank, m.q_params(), &g)?;
            eval_tensor_element(&te, m, n)
        };
        x_plus0.push(image(GenSymbol::XPlus { node, level: 0 })?);
        x_minus0.push(image(GenSymbol::XMinus { node, level: 0 })?);
        j1.push(image(GenSymbol::J { node, level: 1 })?);
        k_plus.push(image(GenSymbol::KPlus { node })?);
        k_minus.push(image(GenSymbol::KMinus { node })?);
    }
    Module::new(ModuleData {
        rank,
        q_params: m.q_params().to_vec(),
        weights,
        x_plus0,
        x_minus0,
        j1,
        k_plus,
        k_minus,
        trunc,
    })
}
