//! Partitions and the q-analogue symmetric polynomials p_t(q) and
//! p_t^{<Q>}(q;β) that parametrize highest weights, together with the
//! recurrences, basis changes and generating functions relating them to
//! the elementary symmetric polynomials.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalars::{qint, OmegaSeries, QRational};

/// A partition: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Partition> {
        if parts.contains(&0) {
            return Err(Error::Invalid("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid("partition parts must be weakly decreasing".into()));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Partition {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sorted union of part multisets (the product rule for p_λ monomials).
    pub fn merge(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }
}

/// Exact values (γ_1, ..., γ_k) substituted for the variables.
#[derive(Debug, Clone, PartialEq)]
pub struct VariableValues {
    values: Vec<QRational>,
}

impl VariableValues {
    pub fn new(values: Vec<QRational>) -> VariableValues {
        VariableValues { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[QRational] {
        &self.values
    }

    /// Drop the last variable (the recursion direction of the calculus).
    pub fn truncated(&self) -> VariableValues {
        VariableValues {
            values: self.values[..self.values.len() - 1].to_vec(),
        }
    }
}

/// All partitions of `t` with length at most `k`, in lexicographically
/// decreasing order of part vectors. Cached: the monomial sums dominate the
/// identity suites and re-enumerate the same shapes thousands of times.
pub fn partitions(t: u32, k: u32) -> Arc<Vec<Partition>> {
    type Cache = Mutex<HashMap<(u32, u32), Arc<Vec<Partition>>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&(t, k)) {
        return hit.clone();
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    enumerate(t, k, t, &mut current, &mut out);
    let arc = Arc::new(out);
    cache.lock().unwrap().insert((t, k), arc.clone());
    arc
}

fn enumerate(rest: u32, slots: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    if slots == 0 {
        return;
    }
    let hi = rest.min(max);
    for part in (1..=hi).rev() {
        current.push(part);
        enumerate(rest - part, slots - 1, part, current, out);
        current.pop();
    }
}

/// Monomial symmetric polynomial m_λ(γ_1, ..., γ_k): the orbit sum over all
/// distinct rearrangements of the exponent vector.
pub fn monomial_sym(lambda: &Partition, v: &VariableValues) -> Result<QRational> {
    let k = v.len();
    if lambda.len() > k {
        return Err(Error::Invalid(format!(
            "partition length {} exceeds variable count {k}",
            lambda.len()
        )));
    }
    // Exponent vector padded with zeros, ascending so that next_permutation
    // walks every distinct rearrangement exactly once.
    let mut exps = vec![0u32; k - lambda.len()];
    let mut sorted: Vec<u32> = lambda.parts().to_vec();
    sorted.reverse();
    exps.extend(sorted);
    let mut total = QRational::zero();
    loop {
        let mut term = QRational::one();
        for (x, &e) in v.values().iter().zip(&exps) {
            if e > 0 {
                term = &term * &x.pow(e as i64)?;
            }
        }
        total += &term;
        if !next_permutation(&mut exps) {
            break;
        }
    }
    Ok(total)
}

fn next_permutation(a: &mut [u32]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Elementary symmetric polynomial e_t(γ_1, ..., γ_k); e_0 = 1 and e_t = 0
/// for t > k.
pub fn elem_sym(t: u32, v: &VariableValues) -> QRational {
    let k = v.len();
    if t == 0 {
        return QRational::one();
    }
    if t as usize > k {
        return QRational::zero();
    }
    // DP over the product ∏ (1 + γ_i z).
    let mut e = vec![QRational::zero(); t as usize + 1];
    e[0] = QRational::one();
    for x in v.values() {
        for j in (1..=t as usize).rev() {
            let add = &e[j - 1] * x;
            e[j] += &add;
        }
    }
    e[t as usize].clone()
}

/// The q-analogue power sum p_t(q)(γ_1, ..., γ_k), evaluated through the
/// one-variable-at-a-time recursion (cost O(k t^2) instead of a sum over
/// partitions). The raw orbit-sum definition is kept as
/// [`q_power_sum_raw`] for cross-checking.
pub fn q_power_sum(t: u32, v: &VariableValues) -> Result<QRational> {
    if t == 0 {
        return Err(Error::Invalid("q_power_sum needs t > 0".into()));
    }
    if v.is_empty() {
        return Err(Error::Invalid("q_power_sum needs at least one variable".into()));
    }
    Ok(q_power_sum_table(t, v)?[t as usize].clone())
}

/// Values [p_1(q), ..., p_t(q)] at the given inputs, sharing one table.
pub fn q_power_sum_prefix(t_max: u32, v: &VariableValues) -> Result<Vec<QRational>> {
    if t_max == 0 || v.is_empty() {
        return Err(Error::Invalid("q_power_sum_prefix needs t_max > 0 and k >= 1".into()));
    }
    Ok(q_power_sum_table(t_max, v)?[1..].to_vec())
}

/// Values [p_1^{<Q>}, ..., p_t^{<Q>}] sharing one table.
pub fn q_power_sum_shifted_prefix(
    t_max: u32,
    q_param: &QRational,
    beta: &QRational,
    v: &VariableValues,
) -> Result<Vec<QRational>> {
    if q_param.is_zero() || beta.is_zero() {
        return Err(Error::Invalid("shifted power sum needs Q != 0 and beta != 0".into()));
    }
    if t_max == 0 || v.is_empty() {
        return Err(Error::Invalid("q_power_sum_shifted_prefix needs t_max > 0 and k >= 1".into()));
    }
    let bracket = &QRational::q() - &QRational::q_pow(-1);
    let bt = beta_tilde(beta)?;
    let q_inv = q_param.inverse()?;
    let table = q_power_sum_table(t_max, v)?;
    let mut inv_pow = vec![QRational::one()];
    for _ in 1..=t_max {
        inv_pow.push(inv_pow.last().unwrap() * &q_inv);
    }
    let mut out = Vec::with_capacity(t_max as usize);
    for t in 1..=t_max as usize {
        let mut acc = &table[t] + &(&bt * &inv_pow[t]);
        for z in 1..t {
            let term = &(&bt * &inv_pow[t - z]) * &table[z];
            acc += &(&bracket * &term);
        }
        out.push(acc);
    }
    Ok(out)
}

/// Table [0, p_1(q), ..., p_t(q)] at the given values (index 0 unused).
fn q_power_sum_table(t: u32, v: &VariableValues) -> Result<Vec<QRational>> {
    let q_inv = QRational::q_pow(-1);
    let bracket = &QRational::q() - &q_inv; // q - q^{-1}
    let mut table = vec![QRational::zero(); t as usize + 1];
    for x in v.values() {
        let mut powers = Vec::with_capacity(t as usize + 1);
        powers.push(QRational::one());
        for _ in 1..=t {
            let next = powers.last().unwrap() * x;
            powers.push(next);
        }
        let mut next_table = vec![QRational::zero(); t as usize + 1];
        for s in 1..=t as usize {
            let mut acc = &table[s] + &(&q_inv * &powers[s]);
            for z in 1..s {
                let tail = &(&q_inv * &bracket) * &(&table[z] * &powers[s - z]);
                acc += &tail;
            }
            next_table[s] = acc;
        }
        table = next_table;
    }
    Ok(table)
}

/// The defining orbit sum Σ_{λ ⊢ t, ℓ(λ) ≤ k} q^{-ℓ} (q-q^{-1})^{ℓ-1} m_λ.
pub fn q_power_sum_raw(t: u32, v: &VariableValues) -> Result<QRational> {
    if t == 0 || v.is_empty() {
        return Err(Error::Invalid("q_power_sum_raw needs t > 0 and k >= 1".into()));
    }
    let bracket = &QRational::q() - &QRational::q_pow(-1);
    let mut total = QRational::zero();
    for lambda in partitions(t, v.len() as u32).iter() {
        let l = lambda.len() as i64;
        let weight = &QRational::q_pow(-l) * &bracket.pow(l - 1)?;
        total += &(&weight * &monomial_sym(lambda, v)?);
    }
    Ok(total)
}

/// The shifted power sum p_t^{<Q>}(q;β) = p_t(q) + β~ Q^{-t}
/// + (q-q^{-1}) Σ_{z<t} β~ Q^{-t+z} p_z(q), with β~ = (1-β^{-2})/(q-q^{-1}).
pub fn q_power_sum_shifted(
    t: u32,
    q_param: &QRational,
    beta: &QRational,
    v: &VariableValues,
) -> Result<QRational> {
    if q_param.is_zero() || beta.is_zero() {
        return Err(Error::Invalid("shifted power sum needs Q != 0 and beta != 0".into()));
    }
    if t == 0 || v.is_empty() {
        return Err(Error::Invalid("q_power_sum_shifted needs t > 0 and k >= 1".into()));
    }
    let bracket = &QRational::q() - &QRational::q_pow(-1);
    let beta_tilde = beta_tilde(beta)?;
    let table = q_power_sum_table(t, v)?;
    let q_inv = q_param.inverse()?;
    let mut acc = &table[t as usize] + &(&beta_tilde * &q_inv.pow(t as i64)?);
    for z in 1..t as usize {
        let term = &(&beta_tilde * &q_inv.pow((t as usize - z) as i64)?) * &table[z];
        acc += &(&bracket * &term);
    }
    Ok(acc)
}

/// β~ = (q - q^{-1})^{-1} (1 - β^{-2}).
pub fn beta_tilde(beta: &QRational) -> Result<QRational> {
    let bracket = &QRational::q() - &QRational::q_pow(-1);
    let b2 = beta.pow(-2)?;
    Ok(&(&QRational::one() - &b2) / &bracket)
}

/// The boundary scalar p_0^{<Q>}(q;β) = (1 - (βq^k)^{-2})/(q - q^{-1}) that
/// enters the degree-reduction recurrence at t = 1.
pub fn q_power_sum_shifted_zero(beta: &QRational, k: u32) -> Result<QRational> {
    let bracket = &QRational::q() - &QRational::q_pow(-1);
    let bq = beta * &QRational::q_pow(k as i64);
    Ok(&(&QRational::one() - &bq.pow(-2)?) / &bracket)
}

/// Coefficients a_λ with e_t = Σ_{λ ⊢ t} a_λ p_λ(q), obtained from the
/// triangular q-Newton recurrence. Valid for 1 <= t <= k.
pub fn expand_elem_in_qpowersums(t: u32, k: u32) -> Result<Vec<(Partition, QRational)>> {
    if t == 0 || t > k {
        return Err(Error::Invalid(format!("need 1 <= t <= k, got t={t}, k={k}")));
    }
    let table = elem_expansions(t)?;
    Ok(table[t as usize].clone())
}

/// e_s as a combination of p_λ monomials for all s <= t, via
/// e_s = (-1)^{s-1} q^s [s]^{-1} (p_s - Σ_{z<s} (-1)^{s+z-1} p_z e_{s-z}).
fn elem_expansions(t: u32) -> Result<Vec<Vec<(Partition, QRational)>>> {
    let mut tables: Vec<Vec<(Partition, QRational)>> = Vec::with_capacity(t as usize + 1);
    tables.push(vec![(Partition::empty(), QRational::one())]);
    for s in 1..=t {
        let front = &QRational::q_pow(s as i64) / &qint(s as i64);
        let sign_front = if (s - 1) % 2 == 0 { front.clone() } else { -front.clone() };
        let mut combo: HashMap<Partition, QRational> = HashMap::new();
        combo.insert(Partition::new(vec![s])?, sign_front.clone());
        for z in 1..s {
            // coefficient of p_z e_{s-z} after moving the sum across: front * (-1)^{s+z}
            let mut c = sign_front.clone();
            if (s + z) % 2 == 1 {
                c = -c;
            }
            let pz = Partition::new(vec![z])?;
            for (mu, a) in &tables[(s - z) as usize] {
                let merged = mu.merge(&pz);
                let entry = combo.entry(merged).or_insert_with(QRational::zero);
                *entry += &(&c * a);
            }
        }
        let mut list: Vec<_> = combo
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        list.sort_by(|a, b| a.0.cmp(&b.0));
        tables.push(list);
    }
    Ok(tables)
}

/// Evaluate a p_λ-combination at concrete variable values.
pub fn eval_p_combination(
    combo: &[(Partition, QRational)],
    v: &VariableValues,
) -> Result<QRational> {
    let mut total = QRational::zero();
    for (lambda, coeff) in combo {
        let mut term = coeff.clone();
        for &part in lambda.parts() {
            term = &term * &q_power_sum(part, v)?;
        }
        total += &term;
    }
    Ok(total)
}

/// Generating series 1 + (q - q^{-1}) Σ_{t=1}^{T} p_t(q)(γ's) ω^t.
/// The empty variable list gives the constant series 1 (empty product).
pub fn gen_series_p(v: &VariableValues, trunc: i64) -> Result<OmegaSeries> {
    if trunc < 0 {
        return Err(Error::Invalid("truncation order must be >= 0".into()));
    }
    if v.is_empty() {
        return Ok(OmegaSeries::one(trunc));
    }
    let bracket = &QRational::q() - &QRational::q_pow(-1);
    let table = q_power_sum_table(trunc as u32, v)?;
    let mut coeffs = vec![QRational::one()];
    for t in 1..=trunc as usize {
        coeffs.push(&bracket * &table[t]);
    }
    OmegaSeries::new(0, trunc, coeffs)
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub params: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
    pub pass: bool,
}

impl IdentityReport {
    fn push(&mut self, identity: &str, params: String, pass: bool) {
        if !pass {
            self.pass = false;
        }
        self.checks.push(IdentityCheck {
            identity: identity.to_string(),
            params,
            pass,
        });
    }
}

/// Draw a small exact scalar c q^e with c in [-9,9]\{0} over small
/// denominators; keeps the identity-suite arithmetic fast while exercising
/// genuine q dependence.
pub fn sample_scalar<R: Rng>(rng: &mut R) -> QRational {
    let num: i64 = loop {
        let n = rng.gen_range(-9..=9);
        if n != 0 {
            break n;
        }
    };
    let den: i64 = rng.gen_range(1..=3);
    let e: i64 = rng.gen_range(-1..=1);
    QRational::monomial(crate::scalars::Rational::new(num.into(), den.into()), e)
}

/// Possibly-zero variable sample: a plain rational. The recurrences are
/// identities over Q(q) with the variables as parameters, so rational
/// values already exercise the full q-structure; keeping q out of the
/// variables keeps the polynomial arithmetic small.
pub fn sample_gamma<R: Rng>(rng: &mut R) -> QRational {
    if rng.gen_range(0..8) == 0 {
        return QRational::zero();
    }
    let num: i64 = loop {
        let n = rng.gen_range(-9..=9);
        if n != 0 {
            break n;
        }
    };
    let den: i64 = rng.gen_range(1..=2);
    QRational::from_rational(crate::scalars::Rational::new(num.into(), den.into()))
}

/// Check the power-sum recurrences on random exact data: the variable-split
/// recursion, the q-Newton formula and the degree reduction for p_t(q), and
/// the two recurrences for p_t^{<Q>}(q;β) including the boundary scalar.
/// Failures are reported, not thrown. Seeds are checked in parallel (the
/// values are immutable and the checks pure); the report order is the seed
/// order regardless.
pub fn identity_suite(k_max: u32, t_max: u32, seeds: &[u64]) -> IdentityReport {
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(seeds.len().max(1));
    let per_seed: Vec<IdentityReport> = if workers <= 1 {
        seeds
            .iter()
            .map(|&seed| identity_suite_one_seed(k_max, t_max, seed))
            .collect()
    } else {
        let mut slots: Vec<Option<IdentityReport>> = vec![None; seeds.len()];
        let next = std::sync::atomic::AtomicUsize::new(0);
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for _ in 0..workers {
                let next = &next;
                handles.push(scope.spawn(move || {
                    let mut mine = Vec::new();
                    loop {
                        let ix = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                        if ix >= seeds.len() {
                            return mine;
                        }
                        mine.push((ix, identity_suite_one_seed(k_max, t_max, seeds[ix])));
                    }
                }));
            }
            for handle in handles {
                for (ix, report) in handle.join().expect("suite worker") {
                    slots[ix] = Some(report);
                }
            }
        });
        slots.into_iter().map(|r| r.expect("all seeds checked")).collect()
    };
    let mut report = IdentityReport {
        checks: Vec::new(),
        pass: true,
    };
    for sub in per_seed {
        report.pass &= sub.pass;
        report.checks.extend(sub.checks);
    }
    report
}

fn identity_suite_one_seed(k_max: u32, t_max: u32, seed: u64) -> IdentityReport {
    use rand::SeedableRng;
    let mut report = IdentityReport {
        checks: Vec::new(),
        pass: true,
    };
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for k in 1..=k_max {
        let gammas: Vec<QRational> = (0..k).map(|_| sample_gamma(&mut rng)).collect();
        let v = VariableValues::new(gammas);
        let q_param = sample_scalar(&mut rng);
        let beta = sample_scalar(&mut rng);
        if let Err(e) = run_suite_round(&mut report, seed, &v, &q_param, &beta, t_max) {
            report.push("suite", format!("seed={seed} k={k}: {e}"), false);
        }
    }
    report
}

/// One (seed, k) round of the suite; tables are shared across all t.
fn run_suite_round(
    report: &mut IdentityReport,
    seed: u64,
    v: &VariableValues,
    q_param: &QRational,
    beta: &QRational,
    t_max: u32,
) -> Result<()> {
    let k = v.len() as u32;
    let q_inv = QRational::q_pow(-1);
    let bracket = &QRational::q() - &q_inv;
    let deep = k + t_max;

    // p_s(q) for s <= k + t_max, the same on the first k-1 variables,
    // elementary symmetric values, and powers of the last variable.
    let p = q_power_sum_table(deep, v)?;
    let rest = if v.len() > 1 { Some(v.truncated()) } else { None };
    let p_rest = match &rest {
        Some(r) => q_power_sum_table(t_max, r)?,
        None => vec![QRational::zero(); t_max as usize + 1],
    };
    let e: Vec<QRational> = (0..=deep).map(|s| elem_sym(s, v)).collect();
    let xk = v.values().last().unwrap();
    let mut xk_pow = vec![QRational::one()];
    for _ in 1..=t_max {
        xk_pow.push(xk_pow.last().unwrap() * xk);
    }

    // p_s^{<Q>}(q;β) for s <= k + t_max from the definition, plus the
    // boundary scalar at s = 0.
    let bt = beta_tilde(beta)?;
    let qp_inv = q_param.inverse()?;
    let mut ps: Vec<QRational> = vec![q_power_sum_shifted_zero(beta, k)?];
    for s in 1..=deep as usize {
        let mut acc = &p[s] + &(&bt * &qp_inv.pow(s as i64)?);
        for z in 1..s {
            let term = &(&bt * &qp_inv.pow((s - z) as i64)?) * &p[z];
            acc += &(&bracket * &term);
        }
        ps.push(acc);
    }

    for t in 1..=t_max {
        let tu = t as usize;
        let params = format!("seed={seed} k={k} t={t}");

        // (i) variable-split recursion
        let mut rhs = &q_inv * &xk_pow[tu];
        if rest.is_some() {
            rhs += &p_rest[tu];
            for z in 1..tu {
                let term = &p_rest[z] * &xk_pow[tu - z];
                rhs += &(&(&q_inv * &bracket) * &term);
            }
        }
        report.push("ptq-i", params.clone(), p[tu] == rhs);

        // (ii) q-Newton formula
        let mut rhs = &(&QRational::q_pow(-(t as i64)) * &qint(t as i64)) * &e[tu];
        if t % 2 == 0 {
            rhs = -rhs;
        }
        for z in 1..tu {
            let mut term = &p[z] * &e[tu - z];
            if (tu + z - 1) % 2 == 1 {
                term = -term;
            }
            rhs += &term;
        }
        report.push("ptq-ii", params.clone(), p[tu] == rhs);

        // (iii) degree reduction p_{k+t}
        let mut rhs = QRational::zero();
        for z in 0..k as usize {
            let mut term = &p[tu + z] * &e[k as usize - z];
            if (k as usize + z - 1) % 2 == 1 {
                term = -term;
            }
            rhs += &term;
        }
        report.push("ptq-iii", params.clone(), p[k as usize + tu] == rhs);

        // shifted (i): q-Newton with geometric tail
        let mut rhs = &(&QRational::q_pow(-(t as i64)) * &qint(t as i64)) * &e[tu];
        if t % 2 == 0 {
            rhs = -rhs;
        }
        rhs += &(&bt * &qp_inv.pow(t as i64)?);
        for z in 1..tu {
            let corr = &(&QRational::q_pow(-2 * (tu - z) as i64) * &bt) * &qp_inv.pow(z as i64)?;
            let mut term = &(&ps[z] - &corr) * &e[tu - z];
            if (tu - z + 1) % 2 == 1 {
                term = -term;
            }
            rhs += &term;
        }
        report.push("ptQqb-i", params.clone(), ps[tu] == rhs);

        // shifted (ii): degree reduction, boundary scalar at t = 1
        let mut rhs = &qp_inv * &ps[k as usize + tu - 1];
        for z in 0..k as usize {
            let diff = &ps[tu + z] - &(&qp_inv * &ps[tu + z - 1]);
            let mut term = &diff * &e[k as usize - z];
            if (k as usize - z + 1) % 2 == 1 {
                term = -term;
            }
            rhs += &term;
        }
        report.push("ptQqb-ii", params, ps[k as usize + tu] == rhs);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn c(n: i64) -> QRational {
        QRational::from_int(n)
    }

    fn vals(ns: &[i64]) -> VariableValues {
        VariableValues::new(ns.iter().map(|&n| c(n)).collect())
    }

    #[test]
    fn monomial_basics() {
        let ab = vals(&[2, 3]);
        // m_(1) = a + b
        assert_eq!(monomial_sym(&Partition::new(vec![1]).unwrap(), &ab).unwrap(), c(5));
        // m_(1,1) = ab
        assert_eq!(monomial_sym(&Partition::new(vec![1, 1]).unwrap(), &ab).unwrap(), c(6));
        // too long is rejected
        assert!(monomial_sym(&Partition::new(vec![1, 1, 1]).unwrap(), &ab).is_err());
    }

    #[test]
    fn monomial_21_matches_brute_force_orbit() {
        // m_(2,1)(a,b) = a^2 b + a b^2, by enumerating the orbit directly
        let a = c(2);
        let b = c(-5);
        let v = VariableValues::new(vec![a.clone(), b.clone()]);
        let m = monomial_sym(&Partition::new(vec![2, 1]).unwrap(), &v).unwrap();
        let expected = &(&(&a * &a) * &b) + &(&a * &(&b * &b));
        assert_eq!(m, expected);
    }

    #[test]
    fn elem_sym_basics() {
        let abc = vals(&[1, 2, 3]);
        assert_eq!(elem_sym(0, &abc), c(1));
        assert_eq!(elem_sym(2, &abc), c(11)); // 1*2 + 1*3 + 2*3
        assert_eq!(elem_sym(3, &vals(&[4, 5])), c(0));
    }

    #[test]
    fn q_power_sum_t1_t2() {
        let q = QRational::q();
        let q_inv = q.inverse().unwrap();
        let bracket = &q - &q_inv;
        let ab = vals(&[2, 3]);
        // t = 1: q^{-1}(a+b)
        assert_eq!(q_power_sum(1, &ab).unwrap(), &q_inv * &c(5));
        // t = 2: q^{-1}(a^2+b^2) + q^{-2}(q-q^{-1}) ab
        let expected = &(&q_inv * &c(13)) + &(&(&QRational::q_pow(-2) * &bracket) * &c(6));
        assert_eq!(q_power_sum(2, &ab).unwrap(), expected);
        assert!(q_power_sum(1, &VariableValues::new(vec![])).is_err());
    }

    #[test]
    fn recursion_matches_raw_definition() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for k in 1..=4u32 {
            let v = VariableValues::new((0..k).map(|_| sample_gamma(&mut rng)).collect());
            for t in 1..=5u32 {
                assert_eq!(
                    q_power_sum(t, &v).unwrap(),
                    q_power_sum_raw(t, &v).unwrap(),
                    "k={k} t={t}"
                );
            }
        }
    }

    #[test]
    fn geometric_family_gives_qint() {
        // p_z(q)(b, bq^{-2}, ..., bq^{-2(c-1)}) = b^z q^{-c} [c]
        let b = &c(3) * &QRational::q_pow(1);
        for cc in 1..=4i64 {
            let v = VariableValues::new(
                (0..cc).map(|p| &b * &QRational::q_pow(-2 * p)).collect(),
            );
            for z in 1..=4i64 {
                let expected = &(&b.pow(z).unwrap() * &QRational::q_pow(-cc)) * &qint(cc);
                assert_eq!(q_power_sum(z as u32, &v).unwrap(), expected, "z={z} c={cc}");
            }
        }
    }

    #[test]
    fn shifted_reduces_to_plain_at_beta_one() {
        let v = vals(&[2, -1, 4]);
        let q_param = c(3);
        for beta in [c(1), c(-1)] {
            for t in 1..=5 {
                assert_eq!(
                    q_power_sum_shifted(t, &q_param, &beta, &v).unwrap(),
                    q_power_sum(t, &v).unwrap()
                );
            }
        }
    }

    #[test]
    fn shifted_t1_single_variable() {
        // t=1, one variable: q^{-1} γ + β~ Q^{-1}
        let g = c(5);
        let v = VariableValues::new(vec![g.clone()]);
        let q_param = c(2);
        let beta = &c(3) * &QRational::q_pow(-1);
        let expected = &(&QRational::q_pow(-1) * &g)
            + &(&beta_tilde(&beta).unwrap() * &q_param.inverse().unwrap());
        assert_eq!(q_power_sum_shifted(1, &q_param, &beta, &v).unwrap(), expected);
        assert!(q_power_sum_shifted(1, &QRational::zero(), &beta, &v).is_err());
        assert!(q_power_sum_shifted(1, &q_param, &QRational::zero(), &v).is_err());
    }

    #[test]
    fn expand_elem_t1() {
        // e_1 = q p_1(q)
        let combo = expand_elem_in_qpowersums(1, 3).unwrap();
        assert_eq!(combo.len(), 1);
        assert_eq!(combo[0].0, Partition::new(vec![1]).unwrap());
        assert_eq!(combo[0].1, QRational::q());
        assert!(expand_elem_in_qpowersums(4, 3).is_err());
    }

    #[test]
    fn expand_elem_t2_matches_linear_system_oracle() {
        // Solve for (a_(2), a_(1,1)) from two random substitutions, then
        // compare against the recurrence output.
        let combo = expand_elem_in_qpowersums(2, 2).unwrap();
        let v1 = vals(&[2, 3]);
        let v2 = vals(&[-1, 5]);
        // unknowns x, y with p_(2) x + p_(1)^2 y = e_2 at both points
        let (a1, b1, c1) = (
            q_power_sum(2, &v1).unwrap(),
            q_power_sum(1, &v1).unwrap().pow(2).unwrap(),
            elem_sym(2, &v1),
        );
        let (a2, b2, c2) = (
            q_power_sum(2, &v2).unwrap(),
            q_power_sum(1, &v2).unwrap().pow(2).unwrap(),
            elem_sym(2, &v2),
        );
        let det = &(&a1 * &b2) - &(&a2 * &b1);
        let x = &(&(&c1 * &b2) - &(&c2 * &b1)) / &det;
        let y = &(&(&a1 * &c2) - &(&a2 * &c1)) / &det;
        for (lambda, coeff) in &combo {
            if lambda.parts() == [2] {
                assert_eq!(coeff, &x);
            } else if lambda.parts() == [1, 1] {
                assert_eq!(coeff, &y);
            } else {
                panic!("unexpected partition {lambda:?}");
            }
        }
    }

    #[test]
    fn expand_elem_substitution_check() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for k in 1..=4u32 {
            let v = VariableValues::new((0..k).map(|_| sample_scalar(&mut rng)).collect());
            for t in 1..=k {
                let combo = expand_elem_in_qpowersums(t, k).unwrap();
                assert_eq!(
                    eval_p_combination(&combo, &v).unwrap(),
                    elem_sym(t, &v),
                    "t={t} k={k}"
                );
            }
        }
    }

    #[test]
    fn gen_series_single_variable() {
        // k=1: 1 + (q-q^{-1}) q^{-1} γ ω + (q-q^{-1}) q^{-1} γ² ω²
        let g = c(4);
        let v = VariableValues::new(vec![g.clone()]);
        let s = gen_series_p(&v, 2).unwrap();
        let bracket = &QRational::q() - &QRational::q_pow(-1);
        let q_inv = QRational::q_pow(-1);
        assert_eq!(s.coeff(0), QRational::one());
        assert_eq!(s.coeff(1), &bracket * &(&q_inv * &g));
        assert_eq!(s.coeff(2), &bracket * &(&q_inv * &(&g * &g)));
    }

    #[test]
    fn gen_series_empty_is_one() {
        let s = gen_series_p(&VariableValues::new(vec![]), 4).unwrap();
        assert!(s.eq_series(&OmegaSeries::one(4)));
    }

    #[test]
    fn symmetry_under_permutation() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let g: Vec<QRational> = (0..4).map(|_| sample_gamma(&mut rng)).collect();
        let v = VariableValues::new(g.clone());
        let mut shuffled = g;
        shuffled.swap(0, 3);
        shuffled.swap(1, 2);
        let w = VariableValues::new(shuffled);
        for t in 1..=5 {
            assert_eq!(q_power_sum(t, &v).unwrap(), q_power_sum(t, &w).unwrap());
            assert_eq!(elem_sym(t, &v), elem_sym(t, &w));
        }
    }

    #[test]
    fn q_to_one_degeneration_is_classical_power_sum() {
        use crate::scalars::Rational;
        let one = Rational::from_integer(1.into());
        let v = vals(&[2, 3, -5]);
        for t in 1..=5u32 {
            let val = q_power_sum(t, &v).unwrap().eval_at_q(&one).unwrap();
            let classical: i64 = [2i64, 3, -5].iter().map(|g| g.pow(t)).sum();
            assert_eq!(val, Rational::from_integer(classical.into()));
        }
    }

    #[test]
    fn newton_system_diagonal_nonzero() {
        // The change of basis e_1..e_k -> p_1(q)..p_k(q) is triangular with
        // diagonal (-1)^{t-1} q^{-t} [t], nonzero in Q(q).
        for t in 1..=8i64 {
            let mut diag = &QRational::q_pow(-t) * &qint(t);
            if (t - 1) % 2 == 1 {
                diag = -diag;
            }
            assert!(!diag.is_zero());
        }
    }

    #[test]
    fn identity_suite_small_run_passes() {
        let report = identity_suite(3, 4, &[1, 2]);
        assert!(report.pass, "failures: {:?}", report.checks.iter().filter(|c| !c.pass).take(3).collect::<Vec<_>>());
    }

    #[test]
    fn split_recursion_at_zero_variable() {
        // appending γ_k = 0 leaves p_t(q) unchanged
        let v = vals(&[2, 7]);
        let mut with_zero = v.values().to_vec();
        with_zero.push(QRational::zero());
        let w = VariableValues::new(with_zero);
        for t in 1..=5 {
            assert_eq!(q_power_sum(t, &v).unwrap(), q_power_sum(t, &w).unwrap());
        }
    }
}
