//! Classification layer: node polynomials in factored form, the maps from
//! polynomials to highest-weight data at each node, membership in the
//! canonical polynomial set, equivalence and canonicalization for nonzero
//! shift parameters, eigen-series of the commuting family, and the
//! Weyl-module highest-weight combinatorics.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalars::{OmegaRational, OmegaSeries, QRational};
use crate::symfun::{
    beta_tilde, q_power_sum_prefix, q_power_sum_shifted_prefix, Partition, VariableValues,
};

/// A polynomial φ = β (x - γ_1) ... (x - γ_k) kept in factored form; the
/// root multiset is order-insensitive for equality.
#[derive(Debug, Clone, Serialize)]
pub struct NodePolynomial {
    beta: QRational,
    roots: Vec<QRational>,
}

impl PartialEq for NodePolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.beta == other.beta && {
            let mut a = self.roots.clone();
            let mut b = other.roots.clone();
            a.sort();
            b.sort();
            a == b
        }
    }
}

impl NodePolynomial {
    pub fn new(beta: QRational, roots: Vec<QRational>) -> Result<NodePolynomial> {
        if beta.is_zero() {
            return Err(Error::Invalid("leading coefficient must be nonzero".into()));
        }
        Ok(NodePolynomial { beta, roots })
    }

    pub fn constant(beta: QRational) -> Result<NodePolynomial> {
        NodePolynomial::new(beta, Vec::new())
    }

    pub fn beta(&self) -> &QRational {
        &self.beta
    }

    pub fn roots(&self) -> &[QRational] {
        &self.roots
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    /// Product φψ: leading coefficients multiply, root multisets merge.
    pub fn product(&self, other: &NodePolynomial) -> NodePolynomial {
        let mut roots = self.roots.clone();
        roots.extend_from_slice(&other.roots);
        NodePolynomial {
            beta: &self.beta * &other.beta,
            roots,
        }
    }

    /// Expanded coefficients (constant term first), derived from the
    /// factored form.
    pub fn expanded(&self) -> Vec<QRational> {
        let mut coeffs = vec![QRational::one()];
        for g in &self.roots {
            let mut next = vec![QRational::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                let t = c * g;
                next[i] -= &t;
            }
            coeffs = next;
        }
        coeffs.iter().map(|c| c * &self.beta).collect()
    }

    /// φ evaluated at a point.
    pub fn eval(&self, x: &QRational) -> QRational {
        let mut acc = self.beta.clone();
        for g in &self.roots {
            acc = &acc * &(x - g);
        }
        acc
    }

    /// φ^b(ω) = ∏ (1 - γ_p ω), the flat polynomial of the eigen-series.
    pub fn flat(&self) -> Vec<QRational> {
        OmegaRational::product_one_minus(&self.roots)
    }
}

/// A polynomial ∏ (1 - γ_p x) with constant term 1, the loop-algebra side
/// of the dictionary; all γ_p must be nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct DrinfeldPolynomial {
    gammas: Vec<QRational>,
}

impl DrinfeldPolynomial {
    pub fn new(gammas: Vec<QRational>) -> Result<DrinfeldPolynomial> {
        if gammas.iter().any(|g| g.is_zero()) {
            return Err(Error::Invalid("zero root parameter in (1 - γx) factor".into()));
        }
        Ok(DrinfeldPolynomial { gammas })
    }

    pub fn gammas(&self) -> &[QRational] {
        &self.gammas
    }
}

/// ((1 - γ_1 x) ... (1 - γ_k x))^# = (x - γ_1) ... (x - γ_k).
pub fn sharp(d: &DrinfeldPolynomial) -> NodePolynomial {
    NodePolynomial {
        beta: QRational::one(),
        roots: d.gammas.clone(),
    }
}

/// The eigenvalue package of one node: λ determines the K action, u_t the
/// J_t actions for 1 <= t <= T.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HighestWeightNode {
    pub lambda: QRational,
    pub u: Vec<QRational>,
    pub trunc: u32,
}

impl HighestWeightNode {
    pub fn new(lambda: QRational, u: Vec<QRational>) -> Result<HighestWeightNode> {
        if lambda.is_zero() {
            return Err(Error::Invalid("highest weight lambda must be nonzero".into()));
        }
        let trunc = u.len() as u32;
        Ok(HighestWeightNode { lambda, u, trunc })
    }

    /// u_t for 1 <= t <= T.
    pub fn u_at(&self, t: u32) -> Result<&QRational> {
        if t == 0 || t > self.trunc {
            return Err(Error::Invalid(format!("u_{t} outside stored range 1..={}", self.trunc)));
        }
        Ok(&self.u[(t - 1) as usize])
    }
}

/// One node package per i in {1, ..., n-1}, all with the same truncation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HighestWeight {
    pub nodes: Vec<HighestWeightNode>,
}

impl HighestWeight {
    pub fn new(nodes: Vec<HighestWeightNode>) -> Result<HighestWeight> {
        if let Some(first) = nodes.first() {
            if nodes.iter().any(|n| n.trunc != first.trunc) {
                return Err(Error::Invalid("all nodes must share the truncation".into()));
            }
        }
        Ok(HighestWeight { nodes })
    }
}

/// Default stored truncation for a polynomial of the given degree: deep
/// enough to separate every desk-scale case and to pin the linear
/// recurrence that determines all higher terms from the first deg.
pub fn default_truncation(degree: usize) -> u32 {
    2 * degree as u32 + 4
}

/// The highest-weight package of a node polynomial at shift parameter Q:
/// the leading coefficient (times q^deg) and either the plain or the
/// shifted power sums of the roots, with the geometric tail at degree 0.
pub fn hw_from_poly(q_param: &QRational, phi: &NodePolynomial, trunc: u32) -> Result<HighestWeightNode> {
    if trunc == 0 {
        return Err(Error::Invalid("truncation must be >= 1".into()));
    }
    let k = phi.degree();
    let beta = phi.beta();
    if q_param.is_zero() {
        if !(beta == &QRational::one() || beta == &(-QRational::one())) {
            return Err(Error::Invalid(
                "at Q = 0 the leading coefficient must be +1 or -1".into(),
            ));
        }
        if k == 0 {
            return HighestWeightNode::new(beta.clone(), vec![QRational::zero(); trunc as usize]);
        }
        let v = VariableValues::new(phi.roots().to_vec());
        let lambda = beta * &QRational::q_pow(k as i64);
        let u = q_power_sum_prefix(trunc, &v)?;
        HighestWeightNode::new(lambda, u)
    } else if k == 0 {
        let bt = beta_tilde(beta)?;
        let q_inv = q_param.inverse()?;
        let u = (1..=trunc)
            .map(|t| q_inv.pow(t as i64).map(|p| &bt * &p))
            .collect::<Result<Vec<_>>>()?;
        HighestWeightNode::new(beta.clone(), u)
    } else {
        let v = VariableValues::new(phi.roots().to_vec());
        let lambda = beta * &QRational::q_pow(k as i64);
        let u = q_power_sum_shifted_prefix(trunc, q_param, beta, &v)?;
        HighestWeightNode::new(lambda, u)
    }
}

/// Membership in the canonical polynomial set: leading coefficient ±1 when
/// Q = 0, and β^{-2} Q^{-1} not a root when Q != 0.
pub fn in_canonical_set(q_param: &QRational, phi: &NodePolynomial) -> bool {
    if q_param.is_zero() {
        phi.beta() == &QRational::one() || phi.beta() == &(-QRational::one())
    } else {
        let forbidden = forbidden_root(q_param, phi.beta());
        !phi.roots().contains(&forbidden)
    }
}

fn forbidden_root(q_param: &QRational, beta: &QRational) -> QRational {
    let b2 = beta.pow(-2).expect("nonzero leading coefficient");
    &b2 * &q_param.inverse().expect("nonzero Q")
}

/// The unique canonical representative with the same highest-weight data:
/// repeatedly strip a root equal to β^{-2} Q^{-1} and rescale the leading
/// coefficient by q. Idempotent; at Q = 0 the input must already be
/// canonical (the map is injective there).
pub fn canonicalize(q_param: &QRational, phi: &NodePolynomial) -> Result<NodePolynomial> {
    if q_param.is_zero() {
        if !in_canonical_set(q_param, phi) {
            return Err(Error::Invalid(
                "at Q = 0 only leading coefficient ±1 is classifiable".into(),
            ));
        }
        return Ok(phi.clone());
    }
    let mut current = phi.clone();
    loop {
        let forbidden = forbidden_root(q_param, current.beta());
        let Some(pos) = current.roots.iter().position(|g| g == &forbidden) else {
            return Ok(current);
        };
        current.roots.remove(pos);
        current.beta = &current.beta * &QRational::q();
    }
}

/// Whether two polynomials map to the same highest-weight data. For Q != 0
/// this is the closed factor criterion
/// φ = q^{-(deg φ - deg φ')} φ' ∏_{z} (x - q^{-2(z-1)} β_φ^{-2} Q^{-1});
/// at Q = 0 the map is injective on its domain, so equivalence is equality.
pub fn equivalent(q_param: &QRational, phi: &NodePolynomial, psi: &NodePolynomial) -> bool {
    if q_param.is_zero() {
        return phi == psi;
    }
    let (big, small) = if phi.degree() >= psi.degree() {
        (phi, psi)
    } else {
        (psi, phi)
    };
    let m = big.degree() - small.degree();
    let expected_beta = small.beta() * &QRational::q_pow(-(m as i64));
    if big.beta() != &expected_beta {
        return false;
    }
    let mut expected_roots = small.roots().to_vec();
    let base = forbidden_root(q_param, big.beta());
    for z in 1..=m {
        expected_roots.push(&QRational::q_pow(-2 * (z as i64 - 1)) * &base);
    }
    let expected = NodePolynomial {
        beta: big.beta().clone(),
        roots: expected_roots,
    };
    *big == expected
}

/// Eigen-series of the commuting family on the highest-weight vector of
/// the simple module attached to φ: the expansion of
/// β q^{deg φ} φ^b(q^{-2}ω)/φ^b(ω), with the extra (β^{-1} - Q β ω^{-1})
/// factor (and no leading β) when Q != 0. Only canonical φ are accepted.
pub fn psi_series(q_param: &QRational, phi: &NodePolynomial, trunc: i64) -> Result<OmegaSeries> {
    if !in_canonical_set(q_param, phi) {
        return Err(Error::Invalid("psi_series needs a canonical polynomial".into()));
    }
    let flat = phi.flat();
    let qm2 = QRational::q_pow(-2);
    let flat_scaled: Vec<QRational> = flat
        .iter()
        .enumerate()
        .map(|(i, c)| c * &qm2.pow(i as i64).expect("nonnegative power"))
        .collect();
    let base = OmegaRational::new(flat_scaled, flat)?;
    let series = base.series_expand(trunc + 1)?;
    let deg_scale = QRational::q_pow(phi.degree() as i64);
    if q_param.is_zero() {
        let s = series.scale(&(phi.beta() * &deg_scale));
        // retruncate to the requested order
        OmegaSeries::new(0, trunc, (0..=trunc).map(|e| s.coeff(e)).collect())
    } else {
        let beta_inv = phi.beta().inverse()?;
        let pole = OmegaSeries::new(
            -1,
            trunc,
            std::iter::once(-(q_param * phi.beta()))
                .chain(std::iter::once(beta_inv))
                .chain((1..=trunc).map(|_| QRational::zero()))
                .collect(),
        )?;
        series.scale(&deg_scale).mul(&pole)
    }
}

/// Tensor-combination check: the highest weight of φψ equals the
/// coproduct-combined weight of φ and ψ (both at Q = 0):
/// λ multiplies, u_t(φψ) = u_t(φ) + u_t(ψ) + (q-q^{-1}) Σ u_z(φ) u_{t-z}(ψ).
pub fn product_hw_check(phi: &NodePolynomial, psi: &NodePolynomial, trunc: u32) -> Result<bool> {
    let zero = QRational::zero();
    let a = hw_from_poly(&zero, phi, trunc)?;
    let b = hw_from_poly(&zero, psi, trunc)?;
    let ab = hw_from_poly(&zero, &phi.product(psi), trunc)?;
    if ab.lambda != &a.lambda * &b.lambda {
        return Ok(false);
    }
    let bracket = &QRational::q() - &QRational::q_pow(-1);
    for t in 1..=trunc {
        let mut expected = a.u_at(t)? + b.u_at(t)?;
        for z in 1..t {
            let cross = a.u_at(z)? * b.u_at(t - z)?;
            expected += &(&bracket * &cross);
        }
        if ab.u_at(t)? != &expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A tuple of partitions (one per component of a shape vector).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Multipartition {
    pub components: Vec<Partition>,
}

impl Multipartition {
    pub fn new(components: Vec<Partition>) -> Multipartition {
        Multipartition { components }
    }

    pub fn size(&self) -> u32 {
        self.components.iter().map(Partition::size).sum()
    }
}

/// Per-node classification data produced by [`weyl_hw`].
#[derive(Debug, Clone, Serialize)]
pub struct WeylNode {
    pub node: u8,
    pub q_param: QRational,
    pub phi: NodePolynomial,
    pub hw: HighestWeightNode,
}

/// Highest-weight data of the Weyl module attached to a multipartition
/// over a shape vector n̄ = (n_1, ..., n_r) with cyclotomic parameters
/// (Q̂_0, ..., Q̂_{r-1}): each node i = Σ_{l<k} n_l + j carries
/// φ_i = ∏_{p=1}^{λ_j - λ_{j+1}} (x - q^{i-2j+2λ_j-2(p-1)} Q̂_{k-1}),
/// boundary nodes (j = n_k) get the extra q^{-λ_1^{(k+1)}} leading factor
/// and the nonzero parameter Q_i = q^{-i} Q̂_k^{-1}.
pub fn weyl_hw(
    shape: &[u32],
    lambda: &Multipartition,
    q_hat: &[QRational],
    trunc: u32,
) -> Result<Vec<WeylNode>> {
    let r = shape.len();
    if r == 0 || lambda.components.len() != r || q_hat.len() != r {
        return Err(Error::Invalid(
            "shape, multipartition and parameter list must have equal length".into(),
        ));
    }
    for (k, part) in lambda.components.iter().enumerate() {
        if part.len() as u32 > shape[k] {
            return Err(Error::Invalid(format!(
                "component {} has length {} > n_{} = {}",
                k + 1,
                part.len(),
                k + 1,
                shape[k]
            )));
        }
    }
    for (k, qh) in q_hat.iter().enumerate().skip(1) {
        if qh.is_zero() {
            return Err(Error::Invalid(format!("parameter {k} must be nonzero")));
        }
    }
    let n: u32 = shape.iter().sum();
    let mut out = Vec::new();
    let mut node = 0u32;
    for (k, &nk) in shape.iter().enumerate() {
        let parts = lambda.components[k].parts();
        let part = |j: u32| -> i64 {
            if j >= 1 && (j as usize) <= parts.len() {
                parts[(j - 1) as usize] as i64
            } else {
                0
            }
        };
        for j in 1..=nk {
            node += 1;
            if node >= n {
                break;
            }
            let i = node as i64;
            let boundary = j == nk;
            let (count, lam_j) = if boundary {
                (part(nk), part(nk))
            } else {
                (part(j) - part(j + 1), part(j))
            };
            let mut roots = Vec::new();
            for p in 1..=count {
                let e = i - 2 * j as i64 + 2 * lam_j - 2 * (p - 1);
                roots.push(&QRational::q_pow(e) * &q_hat[k]);
            }
            let (beta, q_param) = if boundary {
                let next_top = lambda.components[k + 1]
                    .parts()
                    .first()
                    .copied()
                    .unwrap_or(0) as i64;
                (
                    QRational::q_pow(-next_top),
                    &QRational::q_pow(-i) * &q_hat[k + 1].inverse()?,
                )
            } else {
                (QRational::one(), QRational::zero())
            };
            let phi = NodePolynomial::new(beta, roots)?;
            let hw = hw_from_poly(&q_param, &phi, trunc)?;
            out.push(WeylNode {
                node: node as u8,
                q_param,
                phi,
                hw,
            });
        }
    }
    Ok(out)
}

/// The JSON shape used by the command-line front end for one node.
#[derive(Debug, Clone, Serialize)]
pub struct NodeReport {
    pub node: u8,
    #[serde(rename = "Q")]
    pub q_param: QRational,
    pub phi: NodePolynomial,
    pub lambda: QRational,
    pub u: Vec<QRational>,
    #[serde(rename = "T")]
    pub trunc: u32,
    pub canonical: bool,
}

impl NodeReport {
    pub fn build(node: u8, q_param: &QRational, phi: &NodePolynomial, trunc: u32) -> Result<NodeReport> {
        let hw = hw_from_poly(q_param, phi, trunc)?;
        Ok(NodeReport {
            node,
            q_param: q_param.clone(),
            phi: phi.clone(),
            lambda: hw.lambda,
            u: hw.u,
            trunc,
            canonical: in_canonical_set(q_param, phi),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::qint;

    fn c(n: i64) -> QRational {
        QRational::from_int(n)
    }

    fn q() -> QRational {
        QRational::q()
    }

    #[test]
    fn hw_constant_cases() {
        // Q != 0, φ = β constant: λ = β, u_t = β~ Q^{-t}
        let q_param = c(3);
        let beta = c(2);
        let phi = NodePolynomial::constant(beta.clone()).unwrap();
        let hw = hw_from_poly(&q_param, &phi, 4).unwrap();
        assert_eq!(hw.lambda, beta);
        let bt = beta_tilde(&beta).unwrap();
        for t in 1..=4u32 {
            let expected = &bt * &q_param.inverse().unwrap().pow(t as i64).unwrap();
            assert_eq!(hw.u_at(t).unwrap(), &expected);
        }
        // Q = 0, φ = 1: λ = 1, u = 0
        let triv = hw_from_poly(&QRational::zero(), &NodePolynomial::constant(c(1)).unwrap(), 3).unwrap();
        assert_eq!(triv.lambda, c(1));
        assert!(triv.u.iter().all(|u| u.is_zero()));
        // Q = 0 with β not ±1 is rejected
        assert!(hw_from_poly(&QRational::zero(), &NodePolynomial::constant(c(2)).unwrap(), 3).is_err());
    }

    #[test]
    fn hw_linear_at_zero_shift() {
        // Q = 0, φ = x - γ: λ = q, u_t = q^{-1} γ^t
        let g = c(5);
        let phi = NodePolynomial::new(c(1), vec![g.clone()]).unwrap();
        let hw = hw_from_poly(&QRational::zero(), &phi, 5).unwrap();
        assert_eq!(hw.lambda, q());
        for t in 1..=5u32 {
            let expected = &QRational::q_pow(-1) * &g.pow(t as i64).unwrap();
            assert_eq!(hw.u_at(t).unwrap(), &expected, "t={t}");
        }
    }

    #[test]
    fn membership_cases() {
        let zero = QRational::zero();
        // Q=0, φ = -(x-γ): β = -1, in the set
        let phi = NodePolynomial::new(-c(1), vec![c(7)]).unwrap();
        assert!(in_canonical_set(&zero, &phi));
        // Q != 0, φ = q^{-1}(x - q^2 Q^{-1}): forbidden root present
        let q_param = c(2);
        let beta = QRational::q_pow(-1);
        let root = &QRational::q_pow(2) * &q_param.inverse().unwrap();
        let phi = NodePolynomial::new(beta, vec![root]).unwrap();
        assert!(!in_canonical_set(&q_param, &phi));
        // constants are always canonical at Q != 0
        assert!(in_canonical_set(&q_param, &NodePolynomial::constant(c(5)).unwrap()));
    }

    #[test]
    fn canonicalize_single_strip() {
        // φ = q^{-1}(x - q^2 Q^{-1}) -> 1
        let q_param = c(2);
        let beta = QRational::q_pow(-1);
        let root = &QRational::q_pow(2) * &q_param.inverse().unwrap();
        let phi = NodePolynomial::new(beta, vec![root]).unwrap();
        let canon = canonicalize(&q_param, &phi).unwrap();
        assert_eq!(canon, NodePolynomial::constant(c(1)).unwrap());
        // equal hw data to the stored truncation
        let hw1 = hw_from_poly(&q_param, &phi, 6).unwrap();
        let hw2 = hw_from_poly(&q_param, &canon, 6).unwrap();
        assert_eq!(hw1, hw2);
        // idempotent
        assert_eq!(canonicalize(&q_param, &canon).unwrap(), canon);
    }

    #[test]
    fn canonicalize_two_strips() {
        // φ0 canonical, β = q^{-2} β0, φ = q^{-2} φ0 (x - β^{-2}Q^{-1})(x - q^{-2} β^{-2}Q^{-1})
        let q_param = c(3);
        let phi0 = NodePolynomial::new(c(2), vec![c(5)]).unwrap();
        assert!(in_canonical_set(&q_param, &phi0));
        let beta = &QRational::q_pow(-2) * phi0.beta();
        let base = &beta.pow(-2).unwrap() * &q_param.inverse().unwrap();
        let mut roots = phi0.roots().to_vec();
        roots.push(base.clone());
        roots.push(&QRational::q_pow(-2) * &base);
        let phi = NodePolynomial::new(beta, roots).unwrap();
        let canon = canonicalize(&q_param, &phi).unwrap();
        assert_eq!(canon, phi0);
        let t = 2 * phi.degree() as u32 + 4;
        assert_eq!(
            hw_from_poly(&q_param, &phi, t).unwrap(),
            hw_from_poly(&q_param, &phi0, t).unwrap()
        );
        assert!(in_canonical_set(&q_param, &canon));
    }

    #[test]
    fn equivalence_cases() {
        let q_param = c(2);
        // φ = q^{-1}(x - q^2 Q^{-1}) ~ 1
        let beta = QRational::q_pow(-1);
        let root = &QRational::q_pow(2) * &q_param.inverse().unwrap();
        let phi = NodePolynomial::new(beta, vec![root]).unwrap();
        let one = NodePolynomial::constant(c(1)).unwrap();
        assert!(equivalent(&q_param, &phi, &one));
        assert!(equivalent(&q_param, &one, &phi));
        assert!(equivalent(&q_param, &phi, &phi));
        // Q = 0: distinct roots are inequivalent, and u_1 differs
        let zero = QRational::zero();
        let pa = NodePolynomial::new(c(1), vec![c(2)]).unwrap();
        let pb = NodePolynomial::new(c(1), vec![c(3)]).unwrap();
        assert!(!equivalent(&zero, &pa, &pb));
        let ha = hw_from_poly(&zero, &pa, 3).unwrap();
        let hb = hw_from_poly(&zero, &pb, 3).unwrap();
        assert_ne!(ha.u_at(1).unwrap(), hb.u_at(1).unwrap());
    }

    #[test]
    fn injectivity_at_zero_shift() {
        // distinct degree <= 4 canonical polynomials give distinct truncated
        // u-sequences at T = deg + 2
        let zero = QRational::zero();
        let polys = [
            NodePolynomial::constant(c(1)).unwrap(),
            NodePolynomial::constant(-c(1)).unwrap(),
            NodePolynomial::new(c(1), vec![c(2)]).unwrap(),
            NodePolynomial::new(c(1), vec![c(3)]).unwrap(),
            NodePolynomial::new(-c(1), vec![c(2)]).unwrap(),
            NodePolynomial::new(c(1), vec![c(2), c(3)]).unwrap(),
            NodePolynomial::new(c(1), vec![c(2), c(2)]).unwrap(),
            NodePolynomial::new(c(1), vec![c(2), c(3), c(5), c(7)]).unwrap(),
            NodePolynomial::new(c(1), vec![c(2), c(3), c(5), c(11)]).unwrap(),
        ];
        let hws: Vec<_> = polys.iter().map(|p| hw_from_poly(&zero, p, 6).unwrap()).collect();
        for a in 0..hws.len() {
            for b in (a + 1)..hws.len() {
                assert_ne!(hws[a], hws[b], "{a} vs {b}");
            }
        }
    }

    #[test]
    fn psi_series_constant_nonzero_shift() {
        // Q != 0, φ = β: series β^{-1} - Q β ω^{-1}
        let q_param = c(3);
        let beta = c(2);
        let phi = NodePolynomial::constant(beta.clone()).unwrap();
        let s = psi_series(&q_param, &phi, 4).unwrap();
        assert_eq!(s.coeff(-1), -(&q_param * &beta));
        assert_eq!(s.coeff(0), beta.inverse().unwrap());
        for e in 1..=4 {
            assert!(s.coeff(e).is_zero(), "e={e}");
        }
    }

    #[test]
    fn psi_series_linear_zero_shift() {
        // Q = 0, φ = x - γ: q + (q-q^{-1}) γ^t ω^t coefficients
        let g = c(4);
        let phi = NodePolynomial::new(c(1), vec![g.clone()]).unwrap();
        let s = psi_series(&QRational::zero(), &phi, 5).unwrap();
        assert_eq!(s.coeff(0), q());
        let bracket = &q() - &QRational::q_pow(-1);
        for t in 1..=5i64 {
            // cross-check: coefficient t equals (q-q^{-1}) λ u_t with λ = q, u_t = q^{-1} γ^t
            let expected = &bracket * &g.pow(t).unwrap();
            assert_eq!(s.coeff(t), expected, "t={t}");
        }
        // constant φ = ±1: constant series
        let s1 = psi_series(&QRational::zero(), &NodePolynomial::constant(-c(1)).unwrap(), 3).unwrap();
        assert_eq!(s1.coeff(0), -c(1));
        assert!(s1.coeff(1).is_zero());
        // non-canonical rejected
        let bad = NodePolynomial::constant(c(2)).unwrap();
        assert!(psi_series(&QRational::zero(), &bad, 3).is_err());
    }

    #[test]
    fn psi_series_matches_hw_data() {
        // coefficient of ω^t (t >= 1) equals (q-q^{-1}) λ (u_t - Q u_{t+1})
        let bracket = &q() - &QRational::q_pow(-1);
        for q_param in [QRational::zero(), c(2)] {
            let phi = NodePolynomial::new(c(1), vec![c(3), c(5)]).unwrap();
            if !in_canonical_set(&q_param, &phi) {
                continue;
            }
            let t_max = 6u32;
            let hw = hw_from_poly(&q_param, &phi, t_max + 1).unwrap();
            let s = psi_series(&q_param, &phi, t_max as i64).unwrap();
            for t in 1..=t_max {
                let mut expected = hw.u_at(t).unwrap().clone();
                if !q_param.is_zero() {
                    expected -= &(&q_param * hw.u_at(t + 1).unwrap());
                }
                expected = &(&bracket * &hw.lambda) * &expected;
                assert_eq!(s.coeff(t as i64), expected, "Q={q_param} t={t}");
            }
        }
    }

    #[test]
    fn psi_series_branches_agree_at_zero_limit() {
        // setting Q = 0 in the Q != 0 formula with β = ±1 reproduces the
        // Q = 0 series
        let phi = NodePolynomial::new(c(1), vec![c(2), c(7)]).unwrap();
        let t = 5i64;
        let s0 = psi_series(&QRational::zero(), &phi, t).unwrap();
        // Q != 0 formula with Q -> 0: q^{deg} flat-ratio * (β^{-1} - 0)
        let flat = phi.flat();
        let qm2 = QRational::q_pow(-2);
        let num: Vec<QRational> = flat
            .iter()
            .enumerate()
            .map(|(i, c)| c * &qm2.pow(i as i64).unwrap())
            .collect();
        let ratio = OmegaRational::new(num, flat).unwrap().series_expand(t).unwrap();
        let limit = ratio.scale(&(&QRational::q_pow(2) * &phi.beta().inverse().unwrap()));
        assert!(s0.eq_series(&limit));
    }

    #[test]
    fn sharp_cases() {
        let d = DrinfeldPolynomial::new(vec![c(2), c(5)]).unwrap();
        let p = sharp(&d);
        assert_eq!(p.beta(), &c(1));
        assert_eq!(p.roots(), &[c(2), c(5)]);
        assert_eq!(sharp(&DrinfeldPolynomial::new(vec![]).unwrap()).degree(), 0);
        assert!(DrinfeldPolynomial::new(vec![c(0)]).is_err());
    }

    #[test]
    fn product_hw_check_cases() {
        let one = NodePolynomial::constant(c(1)).unwrap();
        let pa = NodePolynomial::new(c(1), vec![c(2)]).unwrap();
        let pb = NodePolynomial::new(c(1), vec![c(3)]).unwrap();
        assert!(product_hw_check(&pa, &one, 5).unwrap());
        assert!(product_hw_check(&pa, &pb, 5).unwrap());
        assert!(product_hw_check(&pa, &pa, 5).unwrap());
    }

    #[test]
    fn weyl_single_component_single_box() {
        // r=1, shape (2), λ = ((1)): node 1 carries φ = x - q Q̂_0, Q_1 = 0
        let lambda = Multipartition::new(vec![Partition::new(vec![1]).unwrap()]);
        let qh = c(5);
        let nodes = weyl_hw(&[2], &lambda, std::slice::from_ref(&qh), 4).unwrap();
        assert_eq!(nodes.len(), 1);
        assert_eq!(nodes[0].node, 1);
        assert!(nodes[0].q_param.is_zero());
        let expected = NodePolynomial::new(c(1), vec![&q() * &qh]).unwrap();
        assert_eq!(nodes[0].phi, expected);
    }

    #[test]
    fn weyl_empty_multipartition() {
        // all φ_i constant with the stated leading normalization
        let lambda = Multipartition::new(vec![Partition::empty(), Partition::empty()]);
        let nodes = weyl_hw(&[2, 2], &lambda, &[c(1), c(3)], 3).unwrap();
        assert_eq!(nodes.len(), 3);
        for wn in &nodes {
            assert_eq!(wn.phi.degree(), 0);
            assert_eq!(wn.phi.beta(), &c(1));
        }
        // boundary node (i=2) carries the nonzero parameter q^{-2}/3
        assert_eq!(nodes[1].q_param, &QRational::q_pow(-2) * &c(3).inverse().unwrap());
        assert!(nodes[0].q_param.is_zero());
        assert!(nodes[2].q_param.is_zero());
    }

    #[test]
    fn weyl_geometric_string_identity() {
        // u-sequences match the closed form via
        // p_z(q)(b, bq^{-2}, ...) = b^z q^{-c} [c]
        let lambda = Multipartition::new(vec![
            Partition::new(vec![2]).unwrap(),
            Partition::empty(),
        ]);
        let qh0 = c(3);
        let nodes = weyl_hw(&[2, 2], &lambda, &[qh0.clone(), c(7)], 4).unwrap();
        // node 1: k=1, j=1, λ_1 - λ_2 = 2 boxes, b = q^{1-2+4} Q̂_0 = q^3 Q̂_0
        let b = &QRational::q_pow(3) * &qh0;
        let hw = &nodes[0].hw;
        for t in 1..=4u32 {
            let expected = &(&b.pow(t as i64).unwrap() * &QRational::q_pow(-2)) * &qint(2);
            assert_eq!(hw.u_at(t).unwrap(), &expected, "t={t}");
        }
        assert_eq!(hw.lambda, QRational::q_pow(2));
    }

    #[test]
    fn weyl_rejects_bad_shapes() {
        let lambda = Multipartition::new(vec![Partition::new(vec![1, 1, 1]).unwrap()]);
        assert!(weyl_hw(&[2], &lambda, &[c(1)], 3).is_err());
        let lam2 = Multipartition::new(vec![Partition::empty(), Partition::empty()]);
        assert!(weyl_hw(&[2, 2], &lam2, &[c(1), c(0)], 3).is_err());
    }
}
