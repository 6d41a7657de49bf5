//! Graded dimension counts for the positive half of the algebra: the
//! quotient of the free algebra on the raising letters by the two-sided
//! ideal generated by the level-shuffle and Serre relations, slice by
//! slice, compared against the count of ordered monomials in root vectors.
//!
//! The ideal slice is spanned by u * r * w over all words u, w and relation
//! instances r landing in the slice; levels inside a slice of level-sum s
//! never exceed s, so a level cap T >= s makes the spanning set complete.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::rank_of_rows;
use crate::scalars::{qint, QRational};

/// A letter x_{i,t} of the free algebra on the raising generators.
type Letter = (u8, u32);
type FreeWord = Vec<Letter>;

/// One graded slice: multidegree γ in the simple roots, level-sum s, and
/// the level cap.
#[derive(Debug, Clone, Serialize)]
pub struct GradedSlice {
    pub gamma: Vec<u32>,
    pub s: u32,
    pub t_cap: u32,
}

impl GradedSlice {
    pub fn rank(&self) -> u8 {
        self.gamma.len() as u8
    }
}

/// All words with letter multiset weight γ and level sum s, levels <= T,
/// in lexicographic order.
fn slice_words(slice: &GradedSlice) -> Vec<FreeWord> {
    let total: u32 = slice.gamma.iter().sum();
    let mut out = Vec::new();
    let mut current: FreeWord = Vec::new();
    fn rec(
        slice: &GradedSlice,
        remaining: &mut Vec<u32>,
        level_left: u32,
        depth: u32,
        total: u32,
        current: &mut FreeWord,
        out: &mut Vec<FreeWord>,
    ) {
        if depth == total {
            if level_left == 0 {
                out.push(current.clone());
            }
            return;
        }
        for i in 0..remaining.len() {
            if remaining[i] == 0 {
                continue;
            }
            remaining[i] -= 1;
            for t in 0..=slice.t_cap.min(level_left) {
                current.push((i as u8 + 1, t));
                rec(slice, remaining, level_left - t, depth + 1, total, current, out);
                current.pop();
            }
            remaining[i] += 1;
        }
    }
    let mut remaining = slice.gamma.clone();
    rec(
        slice,
        &mut remaining,
        slice.s,
        0,
        total,
        &mut current,
        &mut out,
    );
    out.sort();
    out.dedup();
    out
}

/// A relation of the positive half, expanded over free words.
#[derive(Debug, Clone)]
struct FreeRelation {
    terms: Vec<(FreeWord, QRational)>,
    weight: Vec<u32>,
    level: u32,
}

fn cartan(i: u8, j: u8) -> i64 {
    if i == j {
        2
    } else if i.abs_diff(j) == 1 {
        -1
    } else {
        0
    }
}

/// Level-shuffle instances
/// x_{i,t+1} x_{j,s'} - q^a x_{j,s'} x_{i,t+1} - q^a x_{i,t} x_{j,s'+1} + x_{j,s'+1} x_{i,t},
/// far commutations, and cubic Serre instances, restricted to letter levels
/// <= t_cap and total level <= max_level.
fn relation_pool(rank: u8, max_level: u32, t_cap: u32) -> Vec<FreeRelation> {
    let mut out = Vec::new();
    for i in 1..=rank {
        for j in 1..=rank {
            let a = cartan(i, j);
            let qa = QRational::q_pow(a);
            // (level shuffle) needs letters t+1, s'+1 <= t_cap and total t+s'+1 <= max_level
            for t in 0..t_cap {
                for sp in 0..t_cap {
                    if t + sp + 1 > max_level {
                        continue;
                    }
                    let mut weight = vec![0u32; rank as usize];
                    weight[(i - 1) as usize] += 1;
                    weight[(j - 1) as usize] += 1;
                    out.push(FreeRelation {
                        terms: vec![
                            (vec![(i, t + 1), (j, sp)], QRational::one()),
                            (vec![(j, sp), (i, t + 1)], -qa.clone()),
                            (vec![(i, t), (j, sp + 1)], -qa.clone()),
                            (vec![(j, sp + 1), (i, t)], QRational::one()),
                        ],
                        weight,
                        level: t + sp + 1,
                    });
                }
            }
            if i.abs_diff(j) >= 2 {
                for t in 0..=t_cap {
                    for sp in 0..=t_cap {
                        if t + sp > max_level {
                            continue;
                        }
                        let mut weight = vec![0u32; rank as usize];
                        weight[(i - 1) as usize] += 1;
                        weight[(j - 1) as usize] += 1;
                        out.push(FreeRelation {
                            terms: vec![
                                (vec![(i, t), (j, sp)], QRational::one()),
                                (vec![(j, sp), (i, t)], -QRational::one()),
                            ],
                            weight,
                            level: t + sp,
                        });
                    }
                }
            }
            if i.abs_diff(j) == 1 {
                let two = qint(2);
                for s1 in 0..=t_cap {
                    for t1 in s1..=t_cap {
                        for u in 0..=t_cap {
                            if s1 + t1 + u > max_level {
                                continue;
                            }
                            let mut weight = vec![0u32; rank as usize];
                            weight[(i - 1) as usize] += 2;
                            weight[(j - 1) as usize] += 1;
                            out.push(FreeRelation {
                                terms: vec![
                                    (vec![(j, u), (i, s1), (i, t1)], QRational::one()),
                                    (vec![(j, u), (i, t1), (i, s1)], QRational::one()),
                                    (vec![(i, s1), (i, t1), (j, u)], QRational::one()),
                                    (vec![(i, t1), (i, s1), (j, u)], QRational::one()),
                                    (vec![(i, s1), (j, u), (i, t1)], -two.clone()),
                                    (vec![(i, t1), (j, u), (i, s1)], -two.clone()),
                                ],
                                weight,
                                level: s1 + t1 + u,
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Dimension of the graded slice of the quotient algebra: number of words
/// minus the rank of the embedded relation span.
pub fn graded_dim_uplus(slice: &GradedSlice) -> Result<usize> {
    if slice.t_cap < slice.s {
        return Err(Error::Invalid(format!(
            "level cap {} below level sum {}: ideal spanning set incomplete",
            slice.t_cap, slice.s
        )));
    }
    let words = slice_words(slice);
    let index: BTreeMap<&FreeWord, usize> = words.iter().zip(0..).collect();
    let rank = slice.rank();
    let pool = relation_pool(rank, slice.s, slice.t_cap);
    let mut rows: Vec<Vec<QRational>> = Vec::new();
    for rel in &pool {
        // remaining letter budget
        let Some(extra_weight) = sub_weights(&slice.gamma, &rel.weight) else {
            continue;
        };
        if rel.level > slice.s {
            continue;
        }
        let extra_level = slice.s - rel.level;
        // words u, w from the leftover letters with leftover levels
        for (u_word, w_word) in split_envelopes(&extra_weight, extra_level, slice.t_cap) {
            let mut row = vec![QRational::zero(); words.len()];
            for (mid, c) in &rel.terms {
                let mut full = u_word.clone();
                full.extend_from_slice(mid);
                full.extend_from_slice(&w_word);
                let ix = index[&full];
                row[ix] += c;
            }
            rows.push(row);
        }
    }
    let rank_ideal = rank_of_rows(rows, words.len());
    Ok(words.len() - rank_ideal)
}

fn sub_weights(total: &[u32], used: &[u32]) -> Option<Vec<u32>> {
    total
        .iter()
        .zip(used)
        .map(|(a, b)| a.checked_sub(*b))
        .collect()
}

/// All ordered pairs (u, w) of words over the leftover letter multiset with
/// combined level sum `level`, levels <= t_cap.
fn split_envelopes(weight: &[u32], level: u32, t_cap: u32) -> Vec<(FreeWord, FreeWord)> {
    // enumerate all words over the full leftover multiset with a chosen cut
    let sub = GradedSlice {
        gamma: weight.to_vec(),
        s: level,
        t_cap,
    };
    let mut out = Vec::new();
    for word in slice_words(&sub) {
        for cut in 0..=word.len() {
            out.push((word[..cut].to_vec(), word[cut..].to_vec()));
        }
    }
    out
}

/// Number of finitely-supported h with Σ h(α,t) α = γ and Σ h(α,t) t = s,
/// over positive roots α and levels t <= T.
pub fn pbw_count(slice: &GradedSlice) -> usize {
    let rank = slice.rank();
    // positive roots α_{i,j} = α_i + ... + α_{j-1}
    let mut roots = Vec::new();
    for i in 1..=rank {
        for j in (i + 1)..=(rank + 1) {
            let mut alpha = vec![0u32; rank as usize];
            for l in i..j {
                alpha[(l - 1) as usize] = 1;
            }
            roots.push(alpha);
        }
    }
    // knapsack over (root, level) pairs
    fn rec(
        pairs: &[(usize, u32)],
        roots: &[Vec<u32>],
        gamma: &[u32],
        s: u32,
        idx: usize,
    ) -> usize {
        if gamma.iter().all(|&g| g == 0) && s == 0 {
            // all further multiplicities zero: one function
            return 1;
        }
        if idx == pairs.len() {
            return 0;
        }
        let (root_ix, level) = pairs[idx];
        let alpha = &roots[root_ix];
        let mut count = rec(pairs, roots, gamma, s, idx + 1);
        // multiplicity m >= 1 for this pair
        let mut g = gamma.to_vec();
        let mut lvl = s;
        let mut m = 1u32;
        loop {
            let mut ok = true;
            for (gg, aa) in g.iter_mut().zip(alpha) {
                match gg.checked_sub(*aa) {
                    Some(x) => *gg = x,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                break;
            }
            match lvl.checked_sub(level) {
                Some(x) => lvl = x,
                None => break,
            }
            count += rec(pairs, roots, &g, lvl, idx + 1);
            m += 1;
            let _ = m;
        }
        count
    }
    let pairs: Vec<(usize, u32)> = (0..roots.len())
        .flat_map(|r| (0..=slice.t_cap).map(move |t| (r, t)))
        .collect();
    rec(&pairs, &roots, &slice.gamma, slice.s, 0)
}

/// Count of commutative monomials in the torus-side generators J_{i,t}
/// (degree t, 1 <= t <= T) with total degree s — the K-and-J half of the
/// basis at fixed J-degree. Two routes: direct enumeration of exponent
/// functions, and the coefficient of x^s in ∏_{i,t} (1-x^t)^{-1}.
pub fn u0_monomial_count(rank: u8, s: u32, t_cap: u32) -> (usize, usize) {
    if t_cap == 0 {
        let v = usize::from(s == 0);
        return (v, v);
    }
    // direct enumeration over h_0 : I x [1..T] -> Z_{>=0}
    fn rec(rank: u8, s: u32, node: u8, level: u32, t_cap: u32) -> usize {
        if s == 0 {
            return 1;
        }
        if node > rank {
            return 0;
        }
        let (next_node, next_level) = if level == t_cap {
            (node + 1, 1)
        } else {
            (node, level + 1)
        };
        let mut count = 0;
        let mut used = 0u32;
        while used <= s {
            count += rec(rank, s - used, next_node, next_level, t_cap);
            used += level;
        }
        count
    }
    let direct = rec(rank, s, 1, 1, t_cap);
    // power-series route
    let mut series = vec![0usize; s as usize + 1];
    series[0] = 1;
    for _i in 0..rank {
        for t in 1..=t_cap.min(s) as usize {
            // multiply by 1/(1 - x^t)
            for pos in t..=s as usize {
                series[pos] += series[pos - t];
            }
        }
    }
    (direct, series[s as usize])
}

#[derive(Debug, Clone, Serialize)]
pub struct SliceReport {
    pub gamma: Vec<u32>,
    pub s: u32,
    #[serde(rename = "T")]
    pub t_cap: u32,
    pub words: usize,
    pub ideal_rank: usize,
    pub dim: usize,
    pub pbw_count: usize,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PbwReport {
    pub slices: Vec<SliceReport>,
    pub u0_check: bool,
    pub pass: bool,
}

/// Run the graded-dimension comparison on every slice with multidegree
/// componentwise at most `max_weight`, level sum at most `max_s`, cap T.
pub fn pbw_verify(n: u8, max_weight: u32, max_s: u32, t_cap: u32) -> Result<PbwReport> {
    if t_cap < max_s {
        return Err(Error::Invalid("level cap must be at least the level sum".into()));
    }
    let rank = n - 1;
    let mut slices = Vec::new();
    let mut gammas = vec![vec![]];
    for _ in 0..rank {
        let mut next = Vec::new();
        for g in &gammas {
            for m in 0..=max_weight {
                let mut g2: Vec<u32> = g.clone();
                g2.push(m);
                next.push(g2);
            }
        }
        gammas = next;
    }
    let mut pass = true;
    for gamma in gammas {
        for s in 0..=max_s {
            let slice = GradedSlice {
                gamma: gamma.clone(),
                s,
                t_cap,
            };
            let words = slice_words(&slice).len();
            let dim = graded_dim_uplus(&slice)?;
            let count = pbw_count(&slice);
            let matches = dim == count;
            if !matches {
                pass = false;
            }
            slices.push(SliceReport {
                gamma: gamma.clone(),
                s,
                t_cap,
                words,
                ideal_rank: words - dim,
                dim,
                pbw_count: count,
                matches,
            });
        }
    }
    let mut u0_check = true;
    for s in 0..=max_s {
        let (a, b) = u0_monomial_count(rank, s, t_cap);
        if a != b {
            u0_check = false;
            pass = false;
        }
    }
    Ok(PbwReport {
        slices,
        u0_check,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank1_weight2_slice() {
        // n=2, γ=2α, s=2, T=2: words {x_0x_2, x_2x_0, x_1x_1}, one
        // independent relation, dimension 2
        let slice = GradedSlice {
            gamma: vec![2],
            s: 2,
            t_cap: 2,
        };
        assert_eq!(slice_words(&slice).len(), 3);
        assert_eq!(graded_dim_uplus(&slice).unwrap(), 2);
        assert_eq!(pbw_count(&slice), 2);
        // level multisets {0,2} and {1,1}
        let tight = GradedSlice {
            gamma: vec![2],
            s: 2,
            t_cap: 1,
        };
        assert_eq!(pbw_count(&tight), 1);
    }

    #[test]
    fn single_letter_slices() {
        for s in 0..=3 {
            let slice = GradedSlice {
                gamma: vec![1],
                s,
                t_cap: 3,
            };
            assert_eq!(graded_dim_uplus(&slice).unwrap(), 1);
            assert_eq!(pbw_count(&slice), 1);
        }
    }

    #[test]
    fn rank2_mixed_weight_level_zero() {
        // n=3, γ = α_1 + α_2, s=0, T=0: two words, no relation instance in
        // the slice (the shuffle needs level 1), dimension 2; the PBW side
        // counts h supported on α_{1,3} once or on both simple roots.
        let slice = GradedSlice {
            gamma: vec![1, 1],
            s: 0,
            t_cap: 0,
        };
        assert_eq!(slice_words(&slice).len(), 2);
        assert_eq!(graded_dim_uplus(&slice).unwrap(), 2);
        assert_eq!(pbw_count(&slice), 2);
    }

    #[test]
    fn empty_slice_is_unit() {
        let slice = GradedSlice {
            gamma: vec![0, 0],
            s: 0,
            t_cap: 2,
        };
        assert_eq!(graded_dim_uplus(&slice).unwrap(), 1);
        assert_eq!(pbw_count(&slice), 1);
    }

    #[test]
    fn level_cap_below_sum_rejected() {
        let slice = GradedSlice {
            gamma: vec![2],
            s: 3,
            t_cap: 2,
        };
        assert!(graded_dim_uplus(&slice).is_err());
    }

    #[test]
    fn u0_routes_agree() {
        for rank in 1..=3u8 {
            for s in 0..=5 {
                let (a, b) = u0_monomial_count(rank, s, 4);
                assert_eq!(a, b, "rank={rank} s={s}");
            }
        }
    }

    #[test]
    fn small_verify_run() {
        let report = pbw_verify(2, 2, 2, 2).unwrap();
        assert!(report.pass, "{report:?}");
    }
}
