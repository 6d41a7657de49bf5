//! Symbolic layer for the (q,Q)-current algebra: generator symbols, formal
//! words, the defining relations (Q1)-(Q8), composite elements (root
//! vectors, the inductively defined J-composites, the commuting family
//! Ψ⁺), generator-image homomorphisms, and the coproduct formulas.
//!
//! Elements are formal: addition and multiplication never rewrite words.
//! Semantic equality is decided by evaluating in concrete modules
//! ([`crate::repmodule`]) or by the graded linear algebra of
//! [`crate::pbwcheck`].

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{qint, QRational};

/// One generator symbol. Node indices run over 1..=rank; X and J carry a
/// level, K does not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenSymbol {
    XPlus { node: u8, level: u32 },
    XMinus { node: u8, level: u32 },
    J { node: u8, level: u32 },
    KPlus { node: u8 },
    KMinus { node: u8 },
}

impl GenSymbol {
    pub fn node(&self) -> u8 {
        match *self {
            GenSymbol::XPlus { node, .. }
            | GenSymbol::XMinus { node, .. }
            | GenSymbol::J { node, .. }
            | GenSymbol::KPlus { node }
            | GenSymbol::KMinus { node } => node,
        }
    }

    pub fn level(&self) -> Option<u32> {
        match *self {
            GenSymbol::XPlus { level, .. }
            | GenSymbol::XMinus { level, .. }
            | GenSymbol::J { level, .. } => Some(level),
            _ => None,
        }
    }

    /// Image under the anti-involution: swap X+ and X-, fix J and K.
    pub fn dagger(&self) -> GenSymbol {
        match *self {
            GenSymbol::XPlus { node, level } => GenSymbol::XMinus { node, level },
            GenSymbol::XMinus { node, level } => GenSymbol::XPlus { node, level },
            other => other,
        }
    }
}

impl fmt::Display for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GenSymbol::XPlus { node, level } => write!(f, "X+({node},{level})"),
            GenSymbol::XMinus { node, level } => write!(f, "X-({node},{level})"),
            GenSymbol::J { node, level } => write!(f, "J({node},{level})"),
            GenSymbol::KPlus { node } => write!(f, "K+({node})"),
            GenSymbol::KMinus { node } => write!(f, "K-({node})"),
        }
    }
}

pub type Word = Vec<GenSymbol>;

/// A formal Q(q)-linear combination of words. The empty word is the unit;
/// symbols are stored left-to-right in application order (the leftmost
/// symbol acts last on a module vector).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<Word, QRational>,
}

impl AlgebraElement {
    pub fn zero() -> AlgebraElement {
        AlgebraElement::default()
    }

    pub fn one() -> AlgebraElement {
        AlgebraElement::scalar(QRational::one())
    }

    pub fn scalar(c: QRational) -> AlgebraElement {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        AlgebraElement { terms }
    }

    pub fn symbol(s: GenSymbol) -> AlgebraElement {
        let mut terms = BTreeMap::new();
        terms.insert(vec![s], QRational::one());
        AlgebraElement { terms }
    }

    pub fn word(w: Word) -> AlgebraElement {
        let mut terms = BTreeMap::new();
        terms.insert(w, QRational::one());
        AlgebraElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &QRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, w: Word, c: QRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AlgebraElement {
        AlgebraElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &QRational) -> AlgebraElement {
        if c.is_zero() {
            return AlgebraElement::zero();
        }
        AlgebraElement {
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (w1, c1) in self.terms() {
            for (w2, c2) in other.terms() {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1 * c2);
            }
        }
        out
    }

    /// Word-reversing anti-homomorphism swapping X+ and X-.
    pub fn dagger(&self) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (w, c) in self.terms() {
            let flipped: Word = w.iter().rev().map(GenSymbol::dagger).collect();
            out.add_term(flipped, c.clone());
        }
        out
    }

    /// Largest level among X/J symbols, if any appear.
    pub fn max_level(&self) -> Option<u32> {
        self.terms
            .keys()
            .flat_map(|w| w.iter().filter_map(GenSymbol::level))
            .max()
    }
}

impl fmt::Display for AlgebraElement {
    /// Stable line-per-term rendering, lexicographic in the word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return writeln!(f, "0");
        }
        for (w, c) in self.terms() {
            write!(f, "{c} *")?;
            if w.is_empty() {
                write!(f, " 1")?;
            }
            for s in w {
                write!(f, " {s}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The q-bracket [a,b]_v = ab - v ba.
pub fn qbracket(a: &AlgebraElement, b: &AlgebraElement, v: &QRational) -> AlgebraElement {
    a.mul(b).sub(&b.mul(a).scale(v))
}

/// Plain commutator [a,b] = ab - ba.
pub fn commutator(a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    qbracket(a, b, &QRational::one())
}

pub fn xplus(node: u8, level: u32) -> AlgebraElement {
    AlgebraElement::symbol(GenSymbol::XPlus { node, level })
}

pub fn xminus(node: u8, level: u32) -> AlgebraElement {
    AlgebraElement::symbol(GenSymbol::XMinus { node, level })
}

pub fn jgen(node: u8, level: u32) -> AlgebraElement {
    AlgebraElement::symbol(GenSymbol::J { node, level })
}

pub fn kplus(node: u8) -> AlgebraElement {
    AlgebraElement::symbol(GenSymbol::KPlus { node })
}

pub fn kminus(node: u8) -> AlgebraElement {
    AlgebraElement::symbol(GenSymbol::KMinus { node })
}

fn check_root_range(rank: u8, i: u8, j: u8) -> Result<()> {
    if i == 0 || j <= i || j > rank + 1 {
        return Err(Error::Invalid(format!(
            "root alpha_{{{i},{j}}} out of range for rank {rank}"
        )));
    }
    Ok(())
}

/// Positive-root vector X^+_{α_{i,j}}(t): the nested q-bracket
/// [[...[X_{j-1,0}, X_{j-2,0}]_q, ...]_q, X_{i,t}]_q, a single generator
/// when j = i + 1.
pub fn root_vector_plus(rank: u8, i: u8, j: u8, t: u32) -> Result<AlgebraElement> {
    check_root_range(rank, i, j)?;
    let q = QRational::q();
    if j == i + 1 {
        return Ok(xplus(i, t));
    }
    let mut acc = xplus(j - 1, 0);
    for m in (i + 1..j - 1).rev() {
        acc = qbracket(&acc, &xplus(m, 0), &q);
    }
    Ok(qbracket(&acc, &xplus(i, t), &q))
}

/// Negative-root vector X^-_{α_{i,j}}(t) =
/// [X_{i,t}, [X_{i+1,0}, ..., [X_{j-2,0}, X_{j-1,0}]_q ...]_q]_q.
pub fn root_vector_minus(rank: u8, i: u8, j: u8, t: u32) -> Result<AlgebraElement> {
    check_root_range(rank, i, j)?;
    let q = QRational::q();
    if j == i + 1 {
        return Ok(xminus(i, t));
    }
    let mut acc = xminus(j - 1, 0);
    for m in (i + 1..j - 1).rev() {
        acc = qbracket(&xminus(m, 0), &acc, &q);
    }
    Ok(qbracket(&xminus(i, t), &acc, &q))
}

/// The q^{-1}-bracketed variant of the positive root vector at level 0.
pub fn tilde_root_vector(rank: u8, i: u8, j: u8) -> Result<AlgebraElement> {
    check_root_range(rank, i, j)?;
    let qi = QRational::q_pow(-1);
    if j == i + 1 {
        return Ok(xplus(i, 0));
    }
    let mut acc = xplus(j - 1, 0);
    for m in (i + 1..j - 1).rev() {
        acc = qbracket(&acc, &xplus(m, 0), &qi);
    }
    Ok(qbracket(&acc, &xplus(i, 0), &qi))
}

/// Cartan matrix entry of type A for nodes i, j.
pub fn cartan(i: u8, j: u8) -> i64 {
    if i == j {
        2
    } else if i.abs_diff(j) == 1 {
        -1
    } else {
        0
    }
}

/// A defining-relation instance, identified by family and the node/level
/// parameters of that family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// [K_i+, K_j+]
    Q1KK { i: u8, j: u8 },
    /// [K_i+, J_{j,t}]
    Q1KJ { i: u8, j: u8, t: u32 },
    /// [J_{i,s}, J_{j,t}]
    Q1JJ { i: u8, s: u32, j: u8, t: u32 },
    /// K_i+ K_i- - 1
    Q1Inv { i: u8 },
    /// (K_i-)^2 - 1 + (q - q^{-1}) J_{i,0}
    Q1Sq { i: u8 },
    /// level-shuffle for X+: parameters are the lower levels (t+1, s appear)
    Q2 { i: u8, t: u32, j: u8, s: u32 },
    /// level-shuffle for X-
    Q3 { i: u8, t: u32, j: u8, s: u32 },
    /// K_i+ X_{j,t}+ K_i- = q^{a_ij} X_{j,t}+
    Q4K { i: u8, j: u8, t: u32 },
    /// weighted J_{i,0} commutation with X+
    Q4J0 { i: u8, j: u8, t: u32 },
    /// [J_{i,s+1}, X_{j,t}+] relation
    Q4J { i: u8, s: u32, j: u8, t: u32 },
    Q5K { i: u8, j: u8, t: u32 },
    Q5J0 { i: u8, j: u8, t: u32 },
    Q5J { i: u8, s: u32, j: u8, t: u32 },
    /// [X_{i,t}+, X_{j,s}-] = δ_ij K_i+ (J_{i,s+t} - Q_i J_{i,s+t+1})
    Q6 { i: u8, t: u32, j: u8, s: u32 },
    /// [X_{i,t}+, X_{j,s}+] = 0 for far-apart nodes
    Q7Comm { i: u8, t: u32, j: u8, s: u32 },
    /// cubic Serre relation for adjacent nodes, X+ side
    Q7Serre { i: u8, s: u32, t: u32, j: u8, u: u32 },
    Q8Comm { i: u8, t: u32, j: u8, s: u32 },
    Q8Serre { i: u8, s: u32, t: u32, j: u8, u: u32 },
}

impl Relation {
    pub fn family(&self) -> &'static str {
        match self {
            Relation::Q1KK { .. } | Relation::Q1KJ { .. } | Relation::Q1JJ { .. } => "Q1-1",
            Relation::Q1Inv { .. } | Relation::Q1Sq { .. } => "Q1-2",
            Relation::Q2 { .. } => "Q2",
            Relation::Q3 { .. } => "Q3",
            Relation::Q4K { .. } => "Q4-1",
            Relation::Q4J0 { .. } => "Q4-2",
            Relation::Q4J { .. } => "Q4-3",
            Relation::Q5K { .. } => "Q5-1",
            Relation::Q5J0 { .. } => "Q5-2",
            Relation::Q5J { .. } => "Q5-3",
            Relation::Q6 { .. } => "Q6",
            Relation::Q7Comm { .. } | Relation::Q7Serre { .. } => "Q7",
            Relation::Q8Comm { .. } | Relation::Q8Serre { .. } => "Q8",
        }
    }

    /// Largest generator level appearing in the instance.
    pub fn max_level(&self) -> u32 {
        match *self {
            Relation::Q1KK { .. } | Relation::Q1Inv { .. } => 0,
            Relation::Q1Sq { .. } => 0,
            Relation::Q1KJ { t, .. } => t,
            Relation::Q1JJ { s, t, .. } => s.max(t),
            Relation::Q2 { t, s, .. } | Relation::Q3 { t, s, .. } => (t + 1).max(s + 1),
            Relation::Q4K { t, .. } | Relation::Q5K { t, .. } => t,
            Relation::Q4J0 { t, .. } | Relation::Q5J0 { t, .. } => t,
            Relation::Q4J { s, t, .. } | Relation::Q5J { s, t, .. } => (s + 1).max(t + 1),
            Relation::Q6 { i, t, j, s } => {
                if i == j {
                    t.max(s).max(s + t + 1)
                } else {
                    t.max(s)
                }
            }
            Relation::Q7Comm { t, s, .. } | Relation::Q8Comm { t, s, .. } => t.max(s),
            Relation::Q7Serre { s, t, u, .. } | Relation::Q8Serre { s, t, u, .. } => {
                s.max(t).max(u)
            }
        }
    }

    /// LHS - RHS as a formal element; zero in the algebra with parameters
    /// `q_params` (the per-node list (Q_1, ..., Q_{n-1})).
    pub fn element(&self, q_params: &[QRational]) -> Result<AlgebraElement> {
        let rank = q_params.len() as u8;
        let check_node = |i: u8| -> Result<()> {
            if i == 0 || i > rank {
                return Err(Error::Invalid(format!("node {i} out of range for rank {rank}")));
            }
            Ok(())
        };
        let q = QRational::q();
        let qpow = QRational::q_pow;
        match *self {
            Relation::Q1KK { i, j } => {
                check_node(i)?;
                check_node(j)?;
                Ok(commutator(&kplus(i), &kplus(j)))
            }
            Relation::Q1KJ { i, j, t } => {
                check_node(i)?;
                check_node(j)?;
                Ok(commutator(&kplus(i), &jgen(j, t)))
            }
            Relation::Q1JJ { i, s, j, t } => {
                check_node(i)?;
                check_node(j)?;
                Ok(commutator(&jgen(i, s), &jgen(j, t)))
            }
            Relation::Q1Inv { i } => {
                check_node(i)?;
                Ok(kplus(i).mul(&kminus(i)).sub(&AlgebraElement::one()))
            }
            Relation::Q1Sq { i } => {
                check_node(i)?;
                let bracket = &q - &qpow(-1);
                Ok(kminus(i)
                    .mul(&kminus(i))
                    .sub(&AlgebraElement::one())
                    .add(&jgen(i, 0).scale(&bracket)))
            }
            Relation::Q2 { i, t, j, s } => {
                check_node(i)?;
                check_node(j)?;
                let qa = qpow(cartan(i, j));
                let lhs = qbracket(&xplus(i, t + 1), &xplus(j, s), &qa);
                let rhs = xplus(i, t)
                    .mul(&xplus(j, s + 1))
                    .scale(&qa)
                    .sub(&xplus(j, s + 1).mul(&xplus(i, t)));
                Ok(lhs.sub(&rhs))
            }
            Relation::Q3 { i, t, j, s } => {
                check_node(i)?;
                check_node(j)?;
                let qa = qpow(-cartan(i, j));
                let lhs = qbracket(&xminus(i, t + 1), &xminus(j, s), &qa);
                let rhs = xminus(i, t)
                    .mul(&xminus(j, s + 1))
                    .scale(&qa)
                    .sub(&xminus(j, s + 1).mul(&xminus(i, t)));
                Ok(lhs.sub(&rhs))
            }
            Relation::Q4K { i, j, t } => {
                check_node(i)?;
                check_node(j)?;
                let lhs = kplus(i).mul(&xplus(j, t)).mul(&kminus(i));
                Ok(lhs.sub(&xplus(j, t).scale(&qpow(cartan(i, j)))))
            }
            Relation::Q4J0 { i, j, t } => {
                check_node(i)?;
                check_node(j)?;
                let a = cartan(i, j);
                let lhs = jgen(i, 0)
                    .mul(&xplus(j, t))
                    .scale(&qpow(a))
                    .sub(&xplus(j, t).mul(&jgen(i, 0)).scale(&qpow(-a)));
                Ok(lhs.sub(&xplus(j, t).scale(&qint(a))))
            }
            Relation::Q4J { i, s, j, t } => {
                check_node(i)?;
                check_node(j)?;
                let a = cartan(i, j);
                let lhs = commutator(&jgen(i, s + 1), &xplus(j, t));
                let rhs = jgen(i, s)
                    .mul(&xplus(j, t + 1))
                    .scale(&qpow(a))
                    .sub(&xplus(j, t + 1).mul(&jgen(i, s)).scale(&qpow(-a)));
                Ok(lhs.sub(&rhs))
            }
            Relation::Q5K { i, j, t } => {
                check_node(i)?;
                check_node(j)?;
                let lhs = kplus(i).mul(&xminus(j, t)).mul(&kminus(i));
                Ok(lhs.sub(&xminus(j, t).scale(&qpow(-cartan(i, j)))))
            }
            Relation::Q5J0 { i, j, t } => {
                check_node(i)?;
                check_node(j)?;
                let a = cartan(i, j);
                let lhs = jgen(i, 0)
                    .mul(&xminus(j, t))
                    .scale(&qpow(-a))
                    .sub(&xminus(j, t).mul(&jgen(i, 0)).scale(&qpow(a)));
                Ok(lhs.sub(&xminus(j, t).scale(&qint(-a))))
            }
            Relation::Q5J { i, s, j, t } => {
                check_node(i)?;
                check_node(j)?;
                let a = cartan(i, j);
                let lhs = commutator(&jgen(i, s + 1), &xminus(j, t));
                let rhs = jgen(i, s)
                    .mul(&xminus(j, t + 1))
                    .scale(&qpow(-a))
                    .sub(&xminus(j, t + 1).mul(&jgen(i, s)).scale(&qpow(a)));
                Ok(lhs.sub(&rhs))
            }
            Relation::Q6 { i, t, j, s } => {
                check_node(i)?;
                check_node(j)?;
                let lhs = commutator(&xplus(i, t), &xminus(j, s));
                if i != j {
                    return Ok(lhs);
                }
                let q_i = &q_params[(i - 1) as usize];
                let mut rhs = kplus(i).mul(&jgen(i, s + t));
                if !q_i.is_zero() {
                    rhs = rhs.sub(&kplus(i).mul(&jgen(i, s + t + 1)).scale(q_i));
                }
                Ok(lhs.sub(&rhs))
            }
            Relation::Q7Comm { i, t, j, s } => {
                check_node(i)?;
                check_node(j)?;
                if i.abs_diff(j) < 2 {
                    return Err(Error::Invalid("Q7 commutation needs |i-j| >= 2".into()));
                }
                Ok(commutator(&xplus(i, t), &xplus(j, s)))
            }
            Relation::Q7Serre { i, s, t, j, u } => {
                check_node(i)?;
                check_node(j)?;
                if i.abs_diff(j) != 1 {
                    return Err(Error::Invalid("Serre relation needs adjacent nodes".into()));
                }
                let sym = xplus(i, s)
                    .mul(&xplus(i, t))
                    .add(&xplus(i, t).mul(&xplus(i, s)));
                let lhs = xplus(j, u).mul(&sym).add(&sym.mul(&xplus(j, u)));
                let rhs = xplus(i, s)
                    .mul(&xplus(j, u))
                    .mul(&xplus(i, t))
                    .add(&xplus(i, t).mul(&xplus(j, u)).mul(&xplus(i, s)))
                    .scale(&qint(2));
                Ok(lhs.sub(&rhs))
            }
            Relation::Q8Comm { i, t, j, s } => {
                check_node(i)?;
                check_node(j)?;
                if i.abs_diff(j) < 2 {
                    return Err(Error::Invalid("Q8 commutation needs |i-j| >= 2".into()));
                }
                Ok(commutator(&xminus(i, t), &xminus(j, s)))
            }
            Relation::Q8Serre { i, s, t, j, u } => {
                check_node(i)?;
                check_node(j)?;
                if i.abs_diff(j) != 1 {
                    return Err(Error::Invalid("Serre relation needs adjacent nodes".into()));
                }
                let sym = xminus(i, s)
                    .mul(&xminus(i, t))
                    .add(&xminus(i, t).mul(&xminus(i, s)));
                let lhs = xminus(j, u).mul(&sym).add(&sym.mul(&xminus(j, u)));
                let rhs = xminus(i, s)
                    .mul(&xminus(j, u))
                    .mul(&xminus(i, t))
                    .add(&xminus(i, t).mul(&xminus(j, u)).mul(&xminus(i, s)))
                    .scale(&qint(2));
                Ok(lhs.sub(&rhs))
            }
        }
    }
}

/// All relation instances with every generator level <= `level_cap` for the
/// given rank. Used by module verification; the enumeration is the direct
/// transcription of the quantifiers in the presentation.
pub fn relation_instances(rank: u8, level_cap: u32) -> Vec<Relation> {
    let mut out = Vec::new();
    let nodes = 1..=rank;
    let t_cap = level_cap;
    for i in nodes.clone() {
        out.push(Relation::Q1Inv { i });
        out.push(Relation::Q1Sq { i });
        for j in 1..=rank {
            if i < j {
                out.push(Relation::Q1KK { i, j });
            }
            for t in 0..=t_cap {
                out.push(Relation::Q1KJ { i, j, t });
            }
            for s in 0..=t_cap {
                for t in 0..=t_cap {
                    if (i, s) < (j, t) {
                        out.push(Relation::Q1JJ { i, s, j, t });
                    }
                }
            }
            if t_cap >= 1 {
                for t in 0..t_cap {
                    for s in 0..t_cap {
                        out.push(Relation::Q2 { i, t, j, s });
                        out.push(Relation::Q3 { i, t, j, s });
                    }
                }
            }
            for t in 0..=t_cap {
                out.push(Relation::Q4K { i, j, t });
                out.push(Relation::Q4J0 { i, j, t });
                out.push(Relation::Q5K { i, j, t });
                out.push(Relation::Q5J0 { i, j, t });
            }
            if t_cap >= 1 {
                for s in 0..t_cap {
                    for t in 0..t_cap {
                        out.push(Relation::Q4J { i, s, j, t });
                        out.push(Relation::Q5J { i, s, j, t });
                    }
                }
            }
            for t in 0..=t_cap {
                for s in 0..=t_cap {
                    if i == j && s + t + 1 > t_cap {
                        continue;
                    }
                    out.push(Relation::Q6 { i, t, j, s });
                }
            }
            if i.abs_diff(j) >= 2 {
                for t in 0..=t_cap {
                    for s in 0..=t_cap {
                        out.push(Relation::Q7Comm { i, t, j, s });
                        out.push(Relation::Q8Comm { i, t, j, s });
                    }
                }
            }
            if i.abs_diff(j) == 1 {
                for s in 0..=t_cap {
                    for t in s..=t_cap {
                        for u in 0..=t_cap {
                            out.push(Relation::Q7Serre { i, s, t, j, u });
                            out.push(Relation::Q8Serre { i, s, t, j, u });
                        }
                    }
                }
            }
        }
    }
    out
}

/// J_{[t]} composite for the rank-one Q=0 algebra, fully expanded into
/// J-words: J_{[0]} = 1, J_{[t]} = q^t [t]^{-1} Σ_{z=1}^t (-1)^{z-1} J_z J_{[t-z]}.
pub fn j_bracket_0(t: u32) -> AlgebraElement {
    if t == 0 {
        return AlgebraElement::one();
    }
    let mut acc = AlgebraElement::zero();
    for z in 1..=t {
        let mut term = jgen(1, z).mul(&j_bracket_0(t - z));
        if (z - 1) % 2 == 1 {
            term = term.neg();
        }
        acc = acc.add(&term);
    }
    acc.scale(&(&QRational::q_pow(t as i64) / &qint(t as i64)))
}

/// J_{[k;t]} composite for the rank-one algebra at Q != 0:
/// J_{[k;0]} = q^{-k(k+1)} Q^k and, for 1 <= t <= k,
/// J_{[k;t]} = q^t [t]^{-1} Σ_{z=1}^t (-1)^{z-1}
///     (J_z - q^{2(k-t+z)} Q^{-z} J_0 + q^{k-2(t-z)} [k] Q^{-z}) J_{[k;t-z]}.
pub fn j_shift(k: u32, t: u32, q_param: &QRational) -> Result<AlgebraElement> {
    if q_param.is_zero() {
        return Err(Error::Invalid("J_{[k;t]} needs Q != 0".into()));
    }
    if t > k {
        return Err(Error::Invalid(format!("J_{{[k;t]}} needs t <= k, got k={k} t={t}")));
    }
    if t == 0 {
        let c = &QRational::q_pow(-((k * (k + 1)) as i64)) * &q_param.pow(k as i64)?;
        return Ok(AlgebraElement::scalar(c));
    }
    let mut acc = AlgebraElement::zero();
    for z in 1..=t {
        let q_inv_z = q_param.pow(-(z as i64))?;
        let mut factor = jgen(1, z);
        factor = factor.sub(
            &jgen(1, 0).scale(&(&QRational::q_pow(2 * (k as i64 - t as i64 + z as i64)) * &q_inv_z)),
        );
        let scalar = &(&QRational::q_pow(k as i64 - 2 * (t as i64 - z as i64)) * &qint(k as i64))
            * &q_inv_z;
        factor = factor.add(&AlgebraElement::scalar(scalar));
        let mut term = factor.mul(&j_shift(k, t - z, q_param)?);
        if (z - 1) % 2 == 1 {
            term = term.neg();
        }
        acc = acc.add(&term);
    }
    Ok(acc.scale(&(&QRational::q_pow(t as i64) / &qint(t as i64))))
}

/// The commuting-family element Ψ_{i,t}: K_i+ at t=0 and
/// (q-q^{-1}) K_i+ J_{i,t} for t>0 when Q_i = 0; when Q_i != 0 the family
/// starts at t = -1 with -Q_i K_i+ and reads
/// (q-q^{-1}) K_i+ (J_{i,t} - Q_i J_{i,t+1}) for t > 0.
pub fn psi_element(i: u8, t: i64, q_i: &QRational) -> Result<AlgebraElement> {
    let bracket = &QRational::q() - &QRational::q_pow(-1);
    if q_i.is_zero() {
        match t {
            0 => Ok(kplus(i)),
            t if t > 0 => Ok(kplus(i).mul(&jgen(i, t as u32)).scale(&bracket)),
            _ => Err(Error::Invalid("psi level below 0 at Q=0".into())),
        }
    } else {
        match t {
            -1 => Ok(kplus(i).scale(&-q_i.clone())),
            0 => Ok(kplus(i).sub(&kplus(i).mul(&jgen(i, 1)).scale(&(&bracket * q_i)))),
            t if t > 0 => {
                let inner = jgen(i, t as u32).sub(&jgen(i, t as u32 + 1).scale(q_i));
                Ok(kplus(i).mul(&inner).scale(&bracket))
            }
            _ => Err(Error::Invalid("psi level below -1".into())),
        }
    }
}

/// Generator-image homomorphisms used by the construction: the two shifts
/// into the Q = 0 algebra and the grading rescale.
#[derive(Debug, Clone)]
pub enum GeneratorMap {
    /// X_{i,t}+ -> X_{i,t}+ - Q_i X_{i,t+1}+, everything else fixed.
    IotaPlus(Vec<QRational>),
    /// X_{i,t}- -> X_{i,t}- - Q_i X_{i,t+1}-, everything else fixed.
    IotaMinus(Vec<QRational>),
    /// X_{i,t}± -> q^{ti} X_{i,t}±, J_{i,t} -> q^{ti} J_{i,t}, K fixed.
    Upsilon,
}

pub fn iota_plus(q_params: &[QRational]) -> GeneratorMap {
    GeneratorMap::IotaPlus(q_params.to_vec())
}

pub fn iota_minus(q_params: &[QRational]) -> GeneratorMap {
    GeneratorMap::IotaMinus(q_params.to_vec())
}

pub fn upsilon() -> GeneratorMap {
    GeneratorMap::Upsilon
}

impl GeneratorMap {
    pub fn image(&self, s: &GenSymbol) -> AlgebraElement {
        match (self, *s) {
            (GeneratorMap::IotaPlus(q_params), GenSymbol::XPlus { node, level }) => {
                let q_i = &q_params[(node - 1) as usize];
                let mut out = xplus(node, level);
                if !q_i.is_zero() {
                    out = out.sub(&xplus(node, level + 1).scale(q_i));
                }
                out
            }
            (GeneratorMap::IotaMinus(q_params), GenSymbol::XMinus { node, level }) => {
                let q_i = &q_params[(node - 1) as usize];
                let mut out = xminus(node, level);
                if !q_i.is_zero() {
                    out = out.sub(&xminus(node, level + 1).scale(q_i));
                }
                out
            }
            (GeneratorMap::Upsilon, sym) => {
                let scale = match sym.level() {
                    Some(t) if matches!(sym, GenSymbol::XPlus { .. } | GenSymbol::XMinus { .. } | GenSymbol::J { .. }) => {
                        QRational::q_pow(t as i64 * sym.node() as i64)
                    }
                    _ => QRational::one(),
                };
                AlgebraElement::symbol(sym).scale(&scale)
            }
            (_, sym) => AlgebraElement::symbol(sym),
        }
    }

    /// Multiplicative extension to formal elements.
    pub fn apply(&self, x: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (w, c) in x.terms() {
            let mut acc = AlgebraElement::scalar(c.clone());
            for s in w {
                acc = acc.mul(&self.image(s));
            }
            out = out.add(&acc);
        }
        out
    }
}

/// A formal linear combination of pure tensors of words.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TensorElement {
    terms: BTreeMap<(Word, Word), QRational>,
}

impl TensorElement {
    pub fn zero() -> TensorElement {
        TensorElement::default()
    }

    pub fn of(left: &AlgebraElement, right: &AlgebraElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for (w1, c1) in left.terms() {
            for (w2, c2) in right.terms() {
                out.add_term(w1.clone(), w2.clone(), c1 * c2);
            }
        }
        out
    }

    pub fn add_term(&mut self, w1: Word, w2: Word, c: QRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((w1, w2)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &QRational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for ((w1, w2), c) in other.terms() {
            out.add_term(w1.clone(), w2.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        self.add(&other.scale(&-QRational::one()))
    }

    pub fn scale(&self, c: &QRational) -> TensorElement {
        if c.is_zero() {
            return TensorElement::zero();
        }
        TensorElement {
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((a1, a2), c1) in self.terms() {
            for ((b1, b2), c2) in other.terms() {
                let mut w1 = a1.clone();
                w1.extend_from_slice(b1);
                let mut w2 = a2.clone();
                w2.extend_from_slice(b2);
                out.add_term(w1, w2, c1 * c2);
            }
        }
        out
    }

    pub fn commutator(&self, other: &TensorElement) -> TensorElement {
        self.mul(other).sub(&other.mul(self))
    }
}

/// Coproduct of the Q=0 algebra on its generating set
/// {X_{i,0}±, X_{i,1}±, J_{i,1}, K_i±}; other symbols are rejected. Level-1
/// images are produced by commutating with the J_{i,1} image inside the
/// tensor algebra.
pub fn coproduct0(rank: u8, g: &GenSymbol) -> Result<TensorElement> {
    let one = AlgebraElement::one;
    match *g {
        GenSymbol::KPlus { node } => Ok(TensorElement::of(&kplus(node), &kplus(node))),
        GenSymbol::KMinus { node } => Ok(TensorElement::of(&kminus(node), &kminus(node))),
        GenSymbol::XPlus { node, level: 0 } => Ok(TensorElement::of(&one(), &xplus(node, 0))
            .add(&TensorElement::of(&xplus(node, 0), &kplus(node)))),
        GenSymbol::XMinus { node, level: 0 } => Ok(TensorElement::of(&xminus(node, 0), &one())
            .add(&TensorElement::of(&kminus(node), &xminus(node, 0)))),
        GenSymbol::J { node, level: 1 } => delta_j1(rank, node),
        GenSymbol::XPlus { node, level: 1 } => {
            let dj = delta_j1(rank, node)?;
            let dx = coproduct0(rank, &GenSymbol::XPlus { node, level: 0 })?;
            Ok(dj.commutator(&dx).scale(&qint(2).inverse()?))
        }
        GenSymbol::XMinus { node, level: 1 } => {
            let dj = delta_j1(rank, node)?;
            let dx = coproduct0(rank, &GenSymbol::XMinus { node, level: 0 })?;
            Ok(dj.commutator(&dx).scale(&(-qint(2).inverse()?)))
        }
        other => Err(Error::Invalid(format!(
            "coproduct only defined on the level <= 1 generating set, got {other}"
        ))),
    }
}

/// The explicit tensor expression for the image of J_{i,1}.
fn delta_j1(rank: u8, i: u8) -> Result<TensorElement> {
    let n = rank + 1;
    let q = QRational::q();
    let bracket = &q - &QRational::q_pow(-1);
    let bracket2 = &bracket * &bracket;
    let qcube = QRational::q_pow(3);
    let big = &QRational::q_pow(2) - &QRational::q_pow(-2);

    let mut out = TensorElement::of(&jgen(i, 1), &AlgebraElement::one());
    out = out.add(&TensorElement::of(&AlgebraElement::one(), &jgen(i, 1)));
    out = out.add(&TensorElement::of(&xplus(i, 0), &xminus(i, 1)).scale(&-big));

    for l in (i + 2)..=n {
        let left = tilde_root_vector(rank, i + 1, l)?;
        let right = root_vector_minus(rank, i + 1, l, 1)?;
        out = out.add(&TensorElement::of(&left, &right).scale(&bracket));
    }
    for k in 1..i {
        let left = root_vector_plus(rank, k, i, 0)?;
        let right = root_vector_minus(rank, k, i, 1)?;
        let c = &bracket * &QRational::q_pow(k as i64 + 1 - i as i64);
        out = out.add(&TensorElement::of(&left, &right).scale(&c));
    }
    for l in (i + 2)..=n {
        let left = qbracket(&xplus(i, 0), &tilde_root_vector(rank, i + 1, l)?, &qcube);
        let right = root_vector_minus(rank, i, l, 1)?;
        let c = &(&QRational::q_pow(-2) * &bracket) * &QRational::one();
        out = out.add(&TensorElement::of(&left, &right).scale(&c));
    }
    for k in 1..i {
        let left = qbracket(&xplus(i, 0), &root_vector_plus(rank, k, i, 0)?, &qcube);
        let right = root_vector_minus(rank, k, i + 1, 1)?;
        let c = &bracket * &QRational::q_pow(k as i64 - i as i64 - 1);
        out = out.add(&TensorElement::of(&left, &right).scale(&-c));
    }
    for l in (i + 2)..=n {
        for k in 1..i {
            let a = tilde_root_vector(rank, i, l)?.mul(&root_vector_plus(rank, k, i, 0)?);
            let b = tilde_root_vector(rank, i + 1, l)?.mul(&root_vector_plus(rank, k, i + 1, 0)?);
            let left = a.sub(&b);
            let right = root_vector_minus(rank, k, l, 1)?;
            let c = &bracket2 * &QRational::q_pow(k as i64 - i as i64);
            out = out.add(&TensorElement::of(&left, &right).scale(&c));
        }
    }
    Ok(out)
}

/// The right coideal coproduct on the module generating set, in the
/// pulled-back form whose left legs are Q-side symbols and right legs are
/// Q=0 symbols. Everything except the image of X_{i,0}- coincides with
/// [`coproduct0`]; the lowering image acquires a -Q_i correction block.
pub fn delta_r(rank: u8, q_params: &[QRational], g: &GenSymbol) -> Result<TensorElement> {
    if q_params.len() != rank as usize {
        return Err(Error::Invalid("parameter list length must equal rank".into()));
    }
    match *g {
        GenSymbol::XMinus { node: i, level: 0 } => {
            let n = rank + 1;
            let q_i = &q_params[(i - 1) as usize];
            let mut out = coproduct0(rank, g)?;
            if q_i.is_zero() {
                return Ok(out);
            }
            let q = QRational::q();
            let bracket = &q - &QRational::q_pow(-1);
            let bracket2 = &bracket * &bracket;
            let mut corr = TensorElement::of(&kplus(i), &xminus(i, 1));
            for l in (i + 2)..=n {
                let left = tilde_root_vector(rank, i + 1, l)?.mul(&kplus(i));
                let right = root_vector_minus(rank, i, l, 1)?;
                let c = &QRational::q_pow(-1) * &bracket;
                corr = corr.add(&TensorElement::of(&left, &right).scale(&c));
            }
            for k in 1..i {
                let left = root_vector_plus(rank, k, i, 0)?.mul(&kplus(i));
                let right = root_vector_minus(rank, k, i + 1, 1)?;
                let c = &bracket * &QRational::q_pow(k as i64 - i as i64);
                corr = corr.add(&TensorElement::of(&left, &right).scale(&-c));
            }
            for l in (i + 2)..=n {
                for k in 1..i {
                    let left = tilde_root_vector(rank, i + 1, l)?
                        .mul(&root_vector_plus(rank, k, i, 0)?)
                        .mul(&kplus(i));
                    let right = root_vector_minus(rank, k, l, 1)?;
                    let c = &bracket2 * &QRational::q_pow(k as i64 - i as i64 - 1);
                    corr = corr.add(&TensorElement::of(&left, &right).scale(&-c));
                }
            }
            out = out.sub(&corr.scale(q_i));
            Ok(out)
        }
        _ => coproduct0(rank, g),
    }
}

/// The left coideal coproduct in pulled-back form: right legs are Q-side
/// symbols, left legs Q=0 symbols; here the raising image acquires the
/// correction block.
pub fn delta_l(rank: u8, q_params: &[QRational], g: &GenSymbol) -> Result<TensorElement> {
    if q_params.len() != rank as usize {
        return Err(Error::Invalid("parameter list length must equal rank".into()));
    }
    match *g {
        GenSymbol::XPlus { node: i, level: 0 } => {
            let n = rank + 1;
            let q_i = &q_params[(i - 1) as usize];
            let mut out = coproduct0(rank, g)?;
            if q_i.is_zero() {
                return Ok(out);
            }
            let q = QRational::q();
            let bracket = &q - &QRational::q_pow(-1);
            let bracket2 = &bracket * &bracket;
            let mut corr = TensorElement::of(&xplus(i, 1), &kplus(i));
            corr = corr.add(
                &TensorElement::of(&xplus(i, 0), &kplus(i).mul(&jgen(i, 1))).scale(&bracket),
            );
            let c = &(&QRational::q_pow(-1) * &bracket2) * &QRational::one();
            corr = corr.sub(
                &TensorElement::of(&xplus(i, 0).mul(&xplus(i, 0)), &xminus(i, 1).mul(&kplus(i)))
                    .scale(&c),
            );
            for l in (i + 2)..=n {
                let left = tilde_root_vector(rank, i, l)?;
                let right = root_vector_minus(rank, i + 1, l, 1)?.mul(&kplus(i));
                let c = &q * &bracket;
                corr = corr.add(&TensorElement::of(&left, &right).scale(&c));
            }
            for l in (i + 2)..=n {
                let left = xplus(i, 0).mul(&tilde_root_vector(rank, i, l)?);
                let right = root_vector_minus(rank, i, l, 1)?.mul(&kplus(i));
                corr = corr.sub(&TensorElement::of(&left, &right).scale(&bracket2));
            }
            for k in 1..i {
                let left = root_vector_plus(rank, k, i + 1, 0)?;
                let right = root_vector_minus(rank, k, i, 1)?.mul(&kplus(i));
                let c = &(&q * &bracket) * &QRational::q_pow(k as i64 - i as i64);
                corr = corr.sub(&TensorElement::of(&left, &right).scale(&c));
            }
            for k in 1..i {
                let left = xplus(i, 0).mul(&root_vector_plus(rank, k, i + 1, 0)?);
                let right = root_vector_minus(rank, k, i + 1, 1)?.mul(&kplus(i));
                let c = &bracket2 * &QRational::q_pow(k as i64 - i as i64);
                corr = corr.sub(&TensorElement::of(&left, &right).scale(&c));
            }
            for l in (i + 2)..=n {
                for k in 1..i {
                    let left = tilde_root_vector(rank, i, l)?
                        .mul(&root_vector_plus(rank, k, i + 1, 0)?);
                    let right = root_vector_minus(rank, k, l, 1)?.mul(&kplus(i));
                    let c = &bracket2 * &QRational::q_pow(k as i64 - i as i64);
                    corr = corr.sub(&TensorElement::of(&left, &right).scale(&c));
                }
            }
            out = out.sub(&corr.scale(q_i));
            Ok(out)
        }
        _ => coproduct0(rank, g),
    }
}

/// Composite Δ∘ι with all legs in Q=0 symbols; multiplicative on words.
/// Kept alongside the pulled-back displays for cross-checking on modules
/// obtained by pullback.
pub fn delta_composite(
    rank: u8,
    iota: &GeneratorMap,
    x: &AlgebraElement,
) -> Result<TensorElement> {
    let shifted = iota.apply(x);
    let mut out = TensorElement::zero();
    for (w, c) in shifted.terms() {
        let mut acc = TensorElement::of(&AlgebraElement::scalar(c.clone()), &AlgebraElement::one());
        for s in w {
            acc = acc.mul(&coproduct0(rank, s)?);
        }
        out = out.add(&acc);
    }
    Ok(out)
}
