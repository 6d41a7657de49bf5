//! Cross-layer checks tying the formal coproduct and homomorphism data to
//! concrete module matrices: semantic equality of formal elements is always
//! decided by evaluation.

use qcurrent_core::linalg::Matrix;
use qcurrent_core::presentation::{
    self, coproduct0, delta_composite, delta_l, delta_r, iota_minus, iota_plus, relation_instances,
    upsilon, GenSymbol, TensorElement,
};
use qcurrent_core::repmodule::{
    eval_tensor_element, one_dim_module, pullback_module, sl2_eval_module, solve_loop_action,
    tensor, verify_relations, Module,
};
use qcurrent_core::{QRational, Result};

fn c(n: i64) -> QRational {
    QRational::from_int(n)
}

fn rank1_pair() -> (Module, Module) {
    (
        sl2_eval_module(&c(2), 4).unwrap(),
        sl2_eval_module(&c(7), 4).unwrap(),
    )
}

fn rank2_pair() -> (Module, Module) {
    (
        solve_loop_action(3, 1, &c(2), 3).unwrap(),
        solve_loop_action(3, 2, &c(5), 3).unwrap(),
    )
}

fn generating_set(rank: u8) -> Vec<GenSymbol> {
    let mut out = Vec::new();
    for node in 1..=rank {
        out.push(GenSymbol::XPlus { node, level: 0 });
        out.push(GenSymbol::XMinus { node, level: 0 });
        out.push(GenSymbol::J { node, level: 1 });
        out.push(GenSymbol::KPlus { node });
        out.push(GenSymbol::KMinus { node });
    }
    out
}

/// Δ of the derived symbols must match the module-side derivation: the
/// tensor module caches X_{i,1}± from its own recursions, and evaluating
/// the bracket-recursed coproduct leg-by-leg must give the same matrices.
#[test]
fn coproduct_level_one_matches_module_recursion() -> Result<()> {
    for (m, n) in [rank1_pair(), rank2_pair()] {
        let rank = m.rank();
        let t = tensor(&m, &n)?;
        for node in 1..=rank {
            for sym in [
                GenSymbol::XPlus { node, level: 1 },
                GenSymbol::XMinus { node, level: 1 },
            ] {
                let formal = coproduct0(rank, &sym)?;
                let evaluated = eval_tensor_element(&formal, &m, &n)?;
                assert_eq!(&evaluated, t.matrix_of(&sym)?, "{sym}");
            }
        }
    }
    Ok(())
}

/// Well-definedness of the coproduct: applied to each side of the torus,
/// weight and pairing relations at level zero, both sides evaluate equally
/// on module pairs.
#[test]
fn coproduct_preserves_low_level_relations() -> Result<()> {
    for (m, n) in [rank1_pair(), rank2_pair()] {
        let rank = m.rank();
        let bracket_inv = (&QRational::q() - &QRational::q_pow(-1)).inverse()?;
        let dim = m.dim() * n.dim();
        let dk = |node| coproduct0(rank, &GenSymbol::KPlus { node });
        let dkm = |node| coproduct0(rank, &GenSymbol::KMinus { node });
        let dxp = |node| coproduct0(rank, &GenSymbol::XPlus { node, level: 0 });
        let dxm = |node| coproduct0(rank, &GenSymbol::XMinus { node, level: 0 });
        // Δ(J_{i,0}) through the K-square relation
        let dj0 = |node| -> Result<TensorElement> {
            let km = dkm(node)?;
            let unit = TensorElement::of(
                &presentation::AlgebraElement::one(),
                &presentation::AlgebraElement::one(),
            );
            Ok(unit.sub(&km.mul(&km)).scale(&bracket_inv))
        };
        for i in 1..=rank {
            for j in 1..=rank {
                // [Δ(K_i+), Δ(K_j+)] = 0
                let lhs = dk(i)?.commutator(&dk(j)?);
                assert!(eval_tensor_element(&lhs, &m, &n)?.is_zero());
                // Δ(K_i+) Δ(X_{j,0}+) Δ(K_i-) = q^{a_ij} Δ(X_{j,0}+)
                let a = presentation::cartan(i, j);
                let lhs = dk(i)?.mul(&dxp(j)?).mul(&dkm(i)?);
                let rhs = dxp(j)?.scale(&QRational::q_pow(a));
                assert!(eval_tensor_element(&lhs.sub(&rhs), &m, &n)?.is_zero());
                let lhs = dk(i)?.mul(&dxm(j)?).mul(&dkm(i)?);
                let rhs = dxm(j)?.scale(&QRational::q_pow(-a));
                assert!(eval_tensor_element(&lhs.sub(&rhs), &m, &n)?.is_zero());
                // [Δ(X_{i,0}+), Δ(X_{j,0}-)] = δ_ij Δ(K_i+) Δ(J_{i,0})
                let lhs = dxp(i)?.commutator(&dxm(j)?);
                let value = eval_tensor_element(&lhs, &m, &n)?;
                if i == j {
                    let rhs = dk(i)?.mul(&dj0(i)?);
                    assert_eq!(value, eval_tensor_element(&rhs, &m, &n)?);
                } else {
                    assert!(value.is_zero(), "i={i} j={j} dim={dim}");
                }
            }
        }
    }
    Ok(())
}

/// The pulled-back coideal displays agree with the raw composite Δ ∘ ι:
/// evaluate the display with the parameter-side leg on a pullback module
/// and the composite on the underlying parameter-free module.
#[test]
fn coideal_displays_match_composites() -> Result<()> {
    // rank 1
    let p = sl2_eval_module(&c(3), 4).unwrap();
    let n = sl2_eval_module(&c(7), 4).unwrap();
    let q_params = vec![c(2)];
    let im = iota_minus(&q_params);
    let mq = pullback_module(&im, &p, &q_params)?;
    for g in generating_set(1) {
        let display = delta_r(1, &q_params, &g)?;
        let lhs = eval_tensor_element(&display, &mq, &n)?;
        let composite = delta_composite(1, &im, &presentation::AlgebraElement::symbol(g))?;
        let rhs = eval_tensor_element(&composite, &p, &n)?;
        assert_eq!(lhs, rhs, "delta_r {g}");
    }
    let ip = iota_plus(&q_params);
    let mq = pullback_module(&ip, &p, &q_params)?;
    for g in generating_set(1) {
        let display = delta_l(1, &q_params, &g)?;
        let lhs = eval_tensor_element(&display, &n, &mq)?;
        let composite = delta_composite(1, &ip, &presentation::AlgebraElement::symbol(g))?;
        let rhs = eval_tensor_element(&composite, &n, &p)?;
        assert_eq!(lhs, rhs, "delta_l {g}");
    }
    // rank 2, mixed parameters
    let (p, n) = rank2_pair();
    let q_params = vec![QRational::zero(), c(3)];
    let im = iota_minus(&q_params);
    let mq = pullback_module(&im, &p, &q_params)?;
    for g in generating_set(2) {
        let display = delta_r(2, &q_params, &g)?;
        let lhs = eval_tensor_element(&display, &mq, &n)?;
        let composite = delta_composite(2, &im, &presentation::AlgebraElement::symbol(g))?;
        let rhs = eval_tensor_element(&composite, &p, &n)?;
        assert_eq!(lhs, rhs, "rank2 delta_r {g}");
    }
    Ok(())
}

/// Pullback along either shift embedding turns a parameter-free module into
/// a module for any parameter list: all relations hold.
#[test]
fn pullback_modules_satisfy_shifted_relations() -> Result<()> {
    let base = sl2_eval_module(&c(3), 4).unwrap();
    for q_params in [vec![c(2)], vec![-c(5)]] {
        for map in [iota_minus(&q_params), iota_plus(&q_params)] {
            let m = pullback_module(&map, &base, &q_params)?;
            let report = verify_relations(&m, 3)?;
            assert!(report.pass(), "{report:?}");
        }
    }
    let base2 = rank2_pair().0;
    let q_params = vec![QRational::zero(), c(2)];
    let m = pullback_module(&iota_minus(&q_params), &base2, &q_params)?;
    assert!(verify_relations(&m, 2)?.pass());
    Ok(())
}

/// The shift embeddings are homomorphisms: every shifted relation instance
/// maps to zero in every parameter-free module.
#[test]
fn iota_images_of_relations_vanish() -> Result<()> {
    let modules = [sl2_eval_module(&c(2), 4).unwrap(), sl2_eval_module(&c(0), 4).unwrap()];
    let q_params = vec![c(3)];
    for rel in relation_instances(1, 2) {
        let x = rel.element(&q_params)?;
        for map in [iota_minus(&q_params), iota_plus(&q_params)] {
            let image = map.apply(&x);
            for m in &modules {
                assert!(m.act(&image)?.is_zero(), "{rel:?}");
            }
        }
    }
    // rank 2 with mixed parameters on a loop module
    let m = rank2_pair().0;
    let q_params = vec![QRational::zero(), c(2)];
    for rel in relation_instances(2, 1) {
        let x = rel.element(&q_params)?;
        let image = iota_minus(&q_params).apply(&x);
        assert!(m.act(&image)?.is_zero(), "{rel:?}");
    }
    Ok(())
}

/// The anti-involution is well defined: the flip of every relation instance
/// acts by zero on every constructed module.
#[test]
fn dagger_images_of_relations_vanish() -> Result<()> {
    let q0 = vec![QRational::zero()];
    let qq = vec![c(3)];
    let d = one_dim_module(&qq, &[c(2)], 4).unwrap();
    let shifted = tensor(&d, &sl2_eval_module(&c(5), 4).unwrap())?;
    let cases: Vec<(Vec<QRational>, Module)> = vec![
        (q0.clone(), sl2_eval_module(&c(2), 4).unwrap()),
        (qq.clone(), shifted),
    ];
    for (q_params, m) in &cases {
        for rel in relation_instances(1, 2) {
            let x = rel.element(q_params)?;
            assert!(m.act(&x.dagger())?.is_zero(), "{rel:?}");
        }
    }
    Ok(())
}

/// At rank three the coproduct of J_{2,1} carries every correction block,
/// including the double sum; check the mixed relation
/// [Δ(J_{i,1}), Δ(X_{j,0}+)] = q^a Δ(J_{i,0}) Δ(X_{j,1}+) - q^{-a} Δ(X_{j,1}+) Δ(J_{i,0})
/// leg-by-leg on a pair of fundamental loop modules.
#[test]
fn coproduct_j1_relation_at_rank_three() -> Result<()> {
    let p1 = solve_loop_action(4, 1, &c(2), 2)?;
    let p2 = solve_loop_action(4, 2, &c(3), 2)?;
    let rank = 3u8;
    let bracket_inv = (&QRational::q() - &QRational::q_pow(-1)).inverse()?;
    let unit = TensorElement::of(
        &presentation::AlgebraElement::one(),
        &presentation::AlgebraElement::one(),
    );
    for i in 1..=rank {
        let dj1 = coproduct0(rank, &GenSymbol::J { node: i, level: 1 })?;
        let dkm = coproduct0(rank, &GenSymbol::KMinus { node: i })?;
        let dj0 = unit.sub(&dkm.mul(&dkm)).scale(&bracket_inv);
        for j in 1..=rank {
            let a = presentation::cartan(i, j);
            let dx0 = coproduct0(rank, &GenSymbol::XPlus { node: j, level: 0 })?;
            let dx1 = coproduct0(rank, &GenSymbol::XPlus { node: j, level: 1 })?;
            let lhs = dj1.commutator(&dx0);
            let rhs = dj0
                .mul(&dx1)
                .scale(&QRational::q_pow(a))
                .sub(&dx1.mul(&dj0).scale(&QRational::q_pow(-a)));
            let diff = eval_tensor_element(&lhs.sub(&rhs), &p1, &p2)?;
            assert!(diff.is_zero(), "i={i} j={j}");
        }
    }
    Ok(())
}

/// The grading rescale intertwines the parameter twists: at rank one a
/// relation of the twisted parameter list maps to an element vanishing on
/// modules with the untwisted parameter (higher rank lands in the
/// general-linear presentation instead).
#[test]
fn upsilon_images_of_relations_vanish() -> Result<()> {
    // rank 1: twisted parameter q^{-1} Q
    let q_param = c(3);
    let twisted = vec![&QRational::q_pow(-1) * &q_param];
    let d = one_dim_module(std::slice::from_ref(&q_param), &[c(2)], 4).unwrap();
    let m = tensor(&d, &sl2_eval_module(&c(5), 4).unwrap())?;
    let map = upsilon();
    for rel in relation_instances(1, 2) {
        let x = rel.element(&twisted)?;
        assert!(m.act(&map.apply(&x))?.is_zero(), "{rel:?}");
    }
    Ok(())
}

/// Triple-tensor coassociativity: both bracketings produce identical
/// generator matrices under the canonical basis identification.
#[test]
fn triple_tensor_coassociativity() -> Result<()> {
    // rank 1 with a shifted leftmost factor, and rank 2 parameter-free
    let d = one_dim_module(&[c(2)], &[c(3)], 3).unwrap();
    let v1 = sl2_eval_module(&c(2), 3).unwrap();
    let v2 = sl2_eval_module(&c(7), 3).unwrap();
    let left = tensor(&tensor(&d, &v1)?, &v2)?;
    let right = tensor(&d, &tensor(&v1, &v2)?)?;
    assert_associated(&left, &right, 1)?;

    let (a, b) = rank2_pair();
    let e = one_dim_module(
        &[QRational::zero(), QRational::zero()],
        &[c(1), -c(1)],
        3,
    )
    .unwrap();
    let left = tensor(&tensor(&e, &a)?, &b)?;
    let right = tensor(&e, &tensor(&a, &b)?)?;
    assert_associated(&left, &right, 2)?;
    Ok(())
}

fn assert_associated(left: &Module, right: &Module, rank: u8) -> Result<()> {
    for g in generating_set(rank) {
        let lm: &Matrix = left.matrix_of(&g)?;
        assert_eq!(lm, right.matrix_of(&g)?, "{g}");
    }
    Ok(())
}

/// The commuting-family composites evaluated on a one-dimensional module
/// match the eigen-series coefficients of the corresponding constant
/// polynomial.
#[test]
fn psi_composite_matches_eigen_series() -> Result<()> {
    use qcurrent_core::hwclass::{psi_series, NodePolynomial};
    use qcurrent_core::presentation::psi_element;
    // Q != 0, φ = β
    let q_param = c(3);
    let beta = c(2);
    let m = one_dim_module(std::slice::from_ref(&q_param), std::slice::from_ref(&beta), 5).unwrap();
    let phi = NodePolynomial::constant(beta.clone()).unwrap();
    let series = psi_series(&q_param, &phi, 4).unwrap();
    for t in -1..=3i64 {
        let op = m.act(&psi_element(1, t, &q_param)?)?;
        assert_eq!(op[(0, 0)], series.coeff(t), "t={t}");
    }
    // Q = 0, φ = -1
    let zero = QRational::zero();
    let m = one_dim_module(std::slice::from_ref(&zero), &[-c(1)], 5).unwrap();
    let phi = NodePolynomial::constant(-c(1)).unwrap();
    let series = psi_series(&zero, &phi, 4).unwrap();
    for t in 0..=4i64 {
        let op = m.act(&psi_element(1, t, &zero)?)?;
        assert_eq!(op[(0, 0)], series.coeff(t), "t={t}");
    }
    Ok(())
}

/// Classified modules realize the eigen-series: apply the composites to the
/// highest-weight vector of the constructed module.
#[test]
fn psi_composites_on_constructed_hw_vectors() -> Result<()> {
    use qcurrent_core::hwclass::{psi_series, NodePolynomial};
    use qcurrent_core::presentation::psi_element;
    // Q = 0, φ = x - γ on the evaluation module
    let gamma = c(4);
    let m = sl2_eval_module(&gamma, 6).unwrap();
    let phi = NodePolynomial::new(c(1), vec![gamma]).unwrap();
    let zero = QRational::zero();
    let series = psi_series(&zero, &phi, 5).unwrap();
    for t in 0..=5i64 {
        let op = m.act(&psi_element(1, t, &zero)?)?;
        // highest-weight vector is basis vector 0
        assert_eq!(op[(0, 0)], series.coeff(t), "t={t}");
        assert!(op[(1, 0)].is_zero());
    }
    // Q != 0, φ = β(x - γ) on the shifted tensor
    let q_param = c(2);
    let beta = c(3);
    let gamma = c(5);
    let d = one_dim_module(std::slice::from_ref(&q_param), std::slice::from_ref(&beta), 7).unwrap();
    let t_mod = tensor(&d, &sl2_eval_module(&gamma, 7)?)?;
    let phi = NodePolynomial::new(beta, vec![gamma]).unwrap();
    let series = psi_series(&q_param, &phi, 5).unwrap();
    for t in -1..=5i64 {
        let op = t_mod.act(&psi_element(1, t, &q_param)?)?;
        assert_eq!(op[(0, 0)], series.coeff(t), "t={t}");
    }
    Ok(())
}
