//! Cyclic closures, the contravariant form, and simple-top extraction.
//!
//! The form on a cyclic highest-weight module pairs word images of the
//! highest-weight vector through the anti-involution; its per-weight Gram
//! kernels span the maximal proper submodule, and the quotient matrices are
//! read off coordinate complements of the radical.

use std::collections::BTreeMap;

use super::{Module, ModuleData};
use crate::error::{Error, Result};
use crate::linalg::{kernel, Echelon, Matrix};
use crate::presentation::GenSymbol;
use crate::scalars::QRational;

/// Weight-bucketed echelon spans used by the closure computations.
struct WeightSpan {
    buckets: BTreeMap<Vec<i64>, Echelon>,
    dim: usize,
}

impl WeightSpan {
    fn new(dim: usize) -> WeightSpan {
        WeightSpan {
            buckets: BTreeMap::new(),
            dim,
        }
    }

    fn insert(&mut self, weight: Vec<i64>, v: Vec<QRational>) -> bool {
        self.buckets
            .entry(weight)
            .or_insert_with(|| Echelon::new(self.dim))
            .insert(v)
    }

}

/// Closure of span{v} under the module action (the generating symbols
/// suffice: every higher level is generated by them). Returns the
/// restricted module on the closure basis. The seed must be a weight
/// vector; the closure basis stays weight-homogeneous.
pub fn cyclic_submodule(m: &Module, v: &[QRational]) -> Result<Module> {
    let (basis, _words) = closure_with_words(m, v)?;
    restrict(m, &basis)
}

type ClosureBasis = Vec<(Vec<i64>, Vec<QRational>, Vec<GenSymbol>)>;

/// BFS closure keeping, for each basis vector, a word w with b = act(w) v.
fn closure_with_words(m: &Module, v: &[QRational]) -> Result<(ClosureBasis, ())> {
    if v.iter().all(|c| c.is_zero()) {
        return Err(Error::Invalid("cyclic closure of the zero vector".into()));
    }
    let w0 = m
        .weight_of(v)?
        .ok_or_else(|| Error::Invalid("seed must be a weight vector".into()))?;
    let mut span = WeightSpan::new(m.dim());
    let mut basis: ClosureBasis = Vec::new();
    span.insert(w0.clone(), v.to_vec());
    basis.push((w0, v.to_vec(), Vec::new()));
    let mut frontier = vec![0usize];
    // Lemma-backed generating set: level <= 1 suffices.
    let mut gens = Vec::new();
    for node in 1..=m.rank() {
        gens.push(GenSymbol::XPlus { node, level: 0 });
        gens.push(GenSymbol::XMinus { node, level: 0 });
        gens.push(GenSymbol::J { node, level: 1 });
    }
    while let Some(idx) = frontier.pop() {
        let (_, vec, word) = basis[idx].clone();
        for g in &gens {
            let image = m.apply_symbol(g, &vec)?;
            if image.iter().all(|c| c.is_zero()) {
                continue;
            }
            let w = m
                .weight_of(&image)?
                .expect("weight-homogeneous generator image");
            if span.insert(w.clone(), image.clone()) {
                let mut new_word = vec![*g];
                new_word.extend_from_slice(&word);
                basis.push((w, image, new_word));
                frontier.push(basis.len() - 1);
            }
        }
    }
    Ok((basis, ()))
}

/// Restriction of all generator matrices to an invariant subspace given by
/// a spanning family of weight vectors.
fn restrict(m: &Module, basis: &ClosureBasis) -> Result<Module> {
    let dim = basis.len();
    // Echelon of the subspace for coordinate extraction.
    let mut ech = Echelon::new(m.dim());
    let mut kept: Vec<usize> = Vec::new();
    for (i, (_, v, _)) in basis.iter().enumerate() {
        if ech.insert(v.clone()) {
            kept.push(i);
        }
    }
    if kept.len() != dim {
        return Err(Error::Invalid("closure basis is linearly dependent".into()));
    }
    // coordinates of a vector in the basis order: solve through the echelon:
    // basis vectors are not the echelon rows, so build the change of basis.
    let coords_in_basis = |v: &[QRational]| -> Result<Vec<QRational>> {
        // Solve sum_j c_j basis_j = v by elimination over the basis columns.
        let a = Matrix::from_fn(m.dim(), dim, |r, c| basis[c].1[r].clone());
        crate::linalg::solve_unique(&a, v)
    };
    let restrict_matrix = |big: &Matrix| -> Result<Matrix> {
        let mut out = Matrix::zeros(dim, dim);
        for (c, (_, v, _)) in basis.iter().enumerate() {
            let image = big.apply(v);
            let coords = coords_in_basis(&image)?;
            for (r, x) in coords.into_iter().enumerate() {
                out[(r, c)] = x;
            }
        }
        Ok(out)
    };
    let weights = basis.iter().map(|(w, _, _)| w.clone()).collect();
    let mut x_plus0 = Vec::new();
    let mut x_minus0 = Vec::new();
    let mut j1 = Vec::new();
    let mut k_plus = Vec::new();
    let mut k_minus = Vec::new();
    for node in 1..=m.rank() {
        x_plus0.push(restrict_matrix(m.matrix_of(&GenSymbol::XPlus { node, level: 0 })?)?);
        x_minus0.push(restrict_matrix(m.matrix_of(&GenSymbol::XMinus { node, level: 0 })?)?);
        j1.push(restrict_matrix(m.matrix_of(&GenSymbol::J { node, level: 1 })?)?);
        k_plus.push(restrict_matrix(m.matrix_of(&GenSymbol::KPlus { node })?)?);
        k_minus.push(restrict_matrix(m.matrix_of(&GenSymbol::KMinus { node })?)?);
    }
    Module::new(ModuleData {
        rank: m.rank(),
        q_params: m.q_params().to_vec(),
        weights,
        x_plus0,
        x_minus0,
        j1,
        k_plus,
        k_minus,
        trunc: m.trunc(),
    })
}

/// The simple top of a cyclic highest-weight module: quotient by the
/// radical of the contravariant form, computed per weight space by exact
/// Gram-matrix kernels.
pub fn simple_top(m: &Module) -> Result<Module> {
    let v0 = m.highest_weight_vector()?;
    let (basis, _) = closure_with_words(m, &v0)?;
    if basis.len() != m.dim() {
        return Err(Error::Invalid(
            "module is not cyclic over its highest-weight vector".into(),
        ));
    }
    let pivot = v0.iter().position(|c| !c.is_zero()).expect("nonzero");
    let top_weight = basis[0].0.clone();
    let v0_coeff = |u: &[QRational]| -> Result<QRational> {
        let c = &u[pivot] / &v0[pivot];
        for (a, b) in u.iter().zip(&v0) {
            if a != &(&c * b) {
                return Err(Error::Invalid("top weight space not spanned by v0".into()));
            }
        }
        Ok(c)
    };
    let mut groups: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for (i, (w, _, _)) in basis.iter().enumerate() {
        groups.entry(w.clone()).or_default().push(i);
    }
    // radical vectors in ambient coordinates
    let mut radical = Echelon::new(m.dim());
    for idxs in groups.values() {
        let g = idxs.len();
        let mut gram = Matrix::zeros(g, g);
        for (r, &ir) in idxs.iter().enumerate() {
            let dag_word: Vec<GenSymbol> =
                basis[ir].2.iter().rev().map(GenSymbol::dagger).collect();
            for (c, &ic) in idxs.iter().enumerate() {
                let moved = m.apply_word(&dag_word, &basis[ic].1)?;
                if moved.iter().all(|x| x.is_zero()) {
                    gram[(r, c)] = QRational::zero();
                } else {
                    debug_assert_eq!(m.weight_of(&moved)?, Some(top_weight.clone()));
                    gram[(r, c)] = v0_coeff(&moved)?;
                }
            }
        }
        if !gram.is_symmetric() {
            return Err(Error::Invalid("contravariant Gram matrix is not symmetric".into()));
        }
        for kv in kernel(&gram) {
            let mut vec = vec![QRational::zero(); m.dim()];
            for (pos, coeff) in kv.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                for (amb, c2) in basis[idxs[pos]].1.iter().enumerate() {
                    vec[amb] += &(coeff * c2);
                }
            }
            radical.insert(vec);
        }
    }
    quotient_module(m, &radical)
}

/// New module on the quotient by an invariant weight-homogeneous subspace
/// given in echelon form (with coordinate pivots).
fn quotient_module(m: &Module, radical: &Echelon) -> Result<Module> {
    let pivots: std::collections::BTreeSet<usize> = radical.pivots().iter().copied().collect();
    let keep: Vec<usize> = (0..m.dim()).filter(|i| !pivots.contains(i)).collect();
    let dim = keep.len();
    let reduce = |v: &[QRational]| -> Vec<QRational> {
        let mut w = v.to_vec();
        radical.reduce(&mut w);
        keep.iter().map(|&i| w[i].clone()).collect()
    };
    let project_matrix = |big: &Matrix| -> Matrix {
        let mut out = Matrix::zeros(dim, dim);
        for (c, &amb_c) in keep.iter().enumerate() {
            let mut unit = vec![QRational::zero(); m.dim()];
            unit[amb_c] = QRational::one();
            let image = big.apply(&unit);
            let coords = reduce(&image);
            for (r, x) in coords.into_iter().enumerate() {
                out[(r, c)] = x;
            }
        }
        out
    };
    let weights = keep.iter().map(|&i| m.weights()[i].clone()).collect();
    let mut x_plus0 = Vec::new();
    let mut x_minus0 = Vec::new();
    let mut j1 = Vec::new();
    let mut k_plus = Vec::new();
    let mut k_minus = Vec::new();
    for node in 1..=m.rank() {
        x_plus0.push(project_matrix(m.matrix_of(&GenSymbol::XPlus { node, level: 0 })?));
        x_minus0.push(project_matrix(m.matrix_of(&GenSymbol::XMinus { node, level: 0 })?));
        j1.push(project_matrix(m.matrix_of(&GenSymbol::J { node, level: 1 })?));
        k_plus.push(project_matrix(m.matrix_of(&GenSymbol::KPlus { node })?));
        k_minus.push(project_matrix(m.matrix_of(&GenSymbol::KMinus { node })?));
    }
    Module::new(ModuleData {
        rank: m.rank(),
        q_params: m.q_params().to_vec(),
        weights,
        x_plus0,
        x_minus0,
        j1,
        k_plus,
        k_minus,
        trunc: m.trunc(),
    })
}

/// Independent search route for the radical dimension: a vector lies in the
/// maximal proper submodule exactly when no raising word reaches the
/// highest-weight line from it. Enumerates raising words with levels up to
/// the truncation; intended for small modules as a cross-check.
pub fn radical_dimension_by_raising(m: &Module) -> Result<usize> {
    let v0 = m.highest_weight_vector()?;
    let pivot = v0.iter().position(|c| !c.is_zero()).expect("nonzero");
    let top_weight = m.weight_of(&v0)?.expect("weight vector");
    // For each basis vector of each non-top weight space, collect the linear
    // functionals u -> coeff_{v0}(act(w) u) over all raising words w of the
    // right weight; the radical is the joint kernel (top space contributes
    // nothing: its radical part is zero in a cyclic module).
    let mut groups: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for (i, w) in m.weights().iter().enumerate() {
        groups.entry(w.clone()).or_default().push(i);
    }
    let mut radical_dim = 0usize;
    for (w, idxs) in &groups {
        if *w == top_weight {
            continue;
        }
        // required raising multidegree per node: solve Cartan system
        let Some(degrees) = raising_degrees(w, &top_weight, m.rank()) else {
            // top not reachable: whole space is radical
            radical_dim += idxs.len();
            continue;
        };
        let words = raising_words(&degrees, m.trunc());
        let mut functionals: Vec<Vec<QRational>> = Vec::new();
        for word in &words {
            let mut row = Vec::with_capacity(idxs.len());
            for &i in idxs {
                let mut unit = vec![QRational::zero(); m.dim()];
                unit[i] = QRational::one();
                let moved = m.apply_word(word, &unit)?;
                row.push(&moved[pivot] / &v0[pivot]);
            }
            functionals.push(row);
        }
        let rank = crate::linalg::rank_of_rows(functionals, idxs.len());
        radical_dim += idxs.len() - rank;
    }
    Ok(radical_dim)
}

/// Multidegree (count of raising letters per node) needed to go from
/// weight w to the top weight, or None when not a nonnegative root sum.
fn raising_degrees(w: &[i64], top: &[i64], rank: u8) -> Option<Vec<u32>> {
    let n = rank as usize;
    let a = Matrix::from_fn(n, n, |r, c| {
        QRational::from_int(if r == c {
            2
        } else if r.abs_diff(c) == 1 {
            -1
        } else {
            0
        })
    });
    let b: Vec<QRational> = top.iter().zip(w).map(|(t, x)| QRational::from_int(t - x)).collect();
    let sol = crate::linalg::solve_unique(&a, &b).ok()?;
    let mut out = Vec::with_capacity(n);
    for x in sol {
        let r = x.as_rational()?;
        if r.denom() != &num::BigInt::from(1) || r < num::BigRational::from_integer(0.into()) {
            return None;
        }
        use num::ToPrimitive;
        out.push(r.numer().to_u32()?);
    }
    Some(out)
}

/// All words in raising letters with the given per-node multiplicities and
/// all levels <= trunc.
fn raising_words(degrees: &[u32], trunc: u32) -> Vec<Vec<GenSymbol>> {
    // letter multiset: degrees[i] letters at node i+1, each with a level
    let mut letters: Vec<u8> = Vec::new();
    for (i, &d) in degrees.iter().enumerate() {
        for _ in 0..d {
            letters.push(i as u8 + 1);
        }
    }
    let mut arrangements = Vec::new();
    let mut current = Vec::new();
    fn arrange(rest: &mut Vec<u8>, current: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if rest.is_empty() {
            out.push(current.clone());
            return;
        }
        let mut seen = Vec::new();
        for i in 0..rest.len() {
            let x = rest[i];
            if seen.contains(&x) {
                continue;
            }
            seen.push(x);
            rest.remove(i);
            current.push(x);
            arrange(rest, current, out);
            current.pop();
            rest.insert(i, x);
        }
    }
    arrange(&mut letters, &mut current, &mut arrangements);
    let mut out = Vec::new();
    for arr in arrangements {
        let mut level_assignments = vec![Vec::new()];
        for _ in 0..arr.len() {
            let mut next = Vec::new();
            for assign in &level_assignments {
                for lvl in 0..=trunc {
                    let mut a: Vec<u32> = assign.clone();
                    a.push(lvl);
                    next.push(a);
                }
            }
            level_assignments = next;
        }
        for assign in level_assignments {
            out.push(
                arr.iter()
                    .zip(&assign)
                    .map(|(&node, &level)| GenSymbol::XPlus { node, level })
                    .collect(),
            );
        }
    }
    out
}
