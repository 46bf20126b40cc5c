use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::gram::{IntegralLattice, Signature};
use super::normal_form::{smith_normal_form, to_big};
use crate::algebra::{fmt_rational, qi, rational::rem_euclid_q, Q};
use crate::error::{Error, Result};

/// Default bound on the group order for isometry searches.
pub const DEFAULT_SEARCH_BOUND: u64 = 1 << 12;

/// The finite quadratic form `q : L*/L → Q/2Z` on invariant-factor
/// generators. `q` values lie in `[0, 2)`, bilinear values in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantForm {
    pub invariant_factors: Vec<u64>,
    pub q_values: Vec<Q>,
    pub bilinear: Vec<Vec<Q>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantFormJson {
    #[serde(rename = "invariantFactors")]
    pub invariant_factors: Vec<u64>,
    pub order: u64,
    pub q: Vec<String>,
    pub b: Vec<Vec<String>>,
}

fn mod_q(x: &Q, m: i64) -> Q {
    rem_euclid_q(x, &qi(m))
}

impl DiscriminantForm {
    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Value of `q` on `Σ k_i g_i`.
    pub fn q_of(&self, k: &[u64]) -> Q {
        let mut acc = qi(0);
        for i in 0..k.len() {
            if k[i] == 0 {
                continue;
            }
            acc += &self.q_values[i] * qi((k[i] * k[i]) as i64);
            for j in i + 1..k.len() {
                acc += &self.bilinear[i][j] * qi(2 * (k[i] * k[j]) as i64);
            }
        }
        mod_q(&acc, 2)
    }

    /// Value of `b` on `(Σ k_i g_i, Σ m_j g_j)`.
    pub fn b_of(&self, k: &[u64], m: &[u64]) -> Q {
        let mut acc = qi(0);
        for i in 0..k.len() {
            for j in 0..m.len() {
                if k[i] != 0 && m[j] != 0 {
                    acc += &self.bilinear[i][j] * qi((k[i] * m[j]) as i64);
                }
            }
        }
        mod_q(&acc, 1)
    }

    /// Every element as a coefficient vector, in lexicographic order.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for &d in &self.invariant_factors {
            out = out.into_iter().flat_map(|v| (0..d).map(move |k| [v.clone(), vec![k]].concat())).collect();
        }
        out
    }

    /// `x ↦ -q(x)`.
    pub fn negated(&self) -> Self {
        DiscriminantForm {
            invariant_factors: self.invariant_factors.clone(),
            q_values: self.q_values.iter().map(|q| mod_q(&-q, 2)).collect(),
            bilinear: self.bilinear.iter().map(|r| r.iter().map(|b| mod_q(&-b, 1)).collect()).collect(),
        }
    }

    /// Orthogonal sum.
    pub fn direct_sum(&self, o: &Self) -> Self {
        let (a, b) = (self.invariant_factors.len(), o.invariant_factors.len());
        let mut bilinear = vec![vec![qi(0); a + b]; a + b];
        for i in 0..a {
            bilinear[i][..a].clone_from_slice(&self.bilinear[i]);
        }
        for i in 0..b {
            bilinear[a + i][a..].clone_from_slice(&o.bilinear[i]);
        }
        DiscriminantForm {
            invariant_factors: [self.invariant_factors.clone(), o.invariant_factors.clone()].concat(),
            q_values: [self.q_values.clone(), o.q_values.clone()].concat(),
            bilinear,
        }
    }

    /// Number of elements with each `q` value.
    pub fn q_census(&self) -> BTreeMap<Q, usize> {
        let mut m = BTreeMap::new();
        for e in self.elements() {
            *m.entry(self.q_of(&e)).or_insert(0) += 1;
        }
        m
    }

    pub fn to_json(&self) -> DiscriminantFormJson {
        DiscriminantFormJson {
            invariant_factors: self.invariant_factors.clone(),
            order: self.order(),
            q: self.q_values.iter().map(fmt_rational).collect(),
            b: self.bilinear.iter().map(|r| r.iter().map(fmt_rational).collect()).collect(),
        }
    }
}

/// Discriminant form of an even nondegenerate lattice via Smith normal form:
/// with `U·G·V = D`, the dual vectors `V e_i / d_i` generate `L*/L`.
pub fn discriminant_form(l: &IntegralLattice) -> Result<DiscriminantForm> {
    if !l.is_even() {
        return Err(Error::domain("discriminant quadratic form needs an even lattice"));
    }
    if !l.is_nondegenerate() {
        return Err(Error::domain("degenerate lattice has no discriminant form"));
    }
    let g = to_big(l.gram());
    let snf = smith_normal_form(&g);
    let n = l.rank();
    let mut gens: Vec<Vec<Q>> = Vec::new();
    let mut factors = Vec::new();
    for (i, d) in snf.diagonal().iter().enumerate() {
        if d.is_one() {
            continue;
        }
        let order = d.to_u64().ok_or(Error::Capacity { order: u64::MAX, bound: u64::MAX })?;
        factors.push(order);
        gens.push((0..n).map(|r| Q::new(snf.v[r][i].clone(), d.clone())).collect());
    }
    let pair = |x: &[Q], y: &[Q]| -> Q {
        let mut acc = qi(0);
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if l.gram()[i][j] != 0 {
                    acc += &x[i] * &y[j] * qi(l.gram()[i][j]);
                }
            }
        }
        acc
    };
    let k = gens.len();
    let q_values = gens.iter().map(|x| mod_q(&pair(x, x), 2)).collect();
    let bilinear = (0..k).map(|i| (0..k).map(|j| mod_q(&pair(&gens[i], &gens[j]), 1)).collect()).collect();
    Ok(DiscriminantForm { invariant_factors: factors, q_values, bilinear })
}

fn add_mod(a: &[u64], b: &[u64], d: &[u64]) -> Vec<u64> {
    a.iter().zip(b).zip(d).map(|((x, y), m)| (x + y) % m).collect()
}

fn element_order(a: &[u64], d: &[u64]) -> u64 {
    a.iter().zip(d).fold(1u64, |acc, (&x, &m)| {
        let o = m / num_integer::gcd(x, m);
        num_integer::lcm(acc, o)
    })
}

/// Size of the subgroup generated by `gens` in `⊕ Z/d_i`.
fn span_size(gens: &[Vec<u64>], d: &[u64]) -> usize {
    let zero = vec![0u64; d.len()];
    let mut seen = std::collections::BTreeSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = add_mod(&x, g, d);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.len()
}

/// Decides whether there is a group isomorphism `φ : A → B` with
/// `q_B ∘ φ = sign · q_A`, by backtracking over generator images. The two
/// forms may present their groups with different cyclic decompositions.
pub fn disc_forms_isometric(a: &DiscriminantForm, b: &DiscriminantForm, sign: i64, bound: u64) -> Result<bool> {
    for f in [a, b] {
        if f.order() > bound {
            return Err(Error::Capacity { order: f.order(), bound });
        }
    }
    if a.order() != b.order() {
        return Ok(false);
    }
    let a = if sign < 0 { a.negated() } else { a.clone() };
    if a.q_census() != b.q_census() {
        return Ok(false);
    }
    let (da, db) = (&a.invariant_factors, &b.invariant_factors);
    let elems = b.elements();
    let k = da.len();
    let unit = |i: usize| -> Vec<u64> { (0..k).map(|j| u64::from(i == j)).collect() };
    // candidates for the image of generator i: same order and q value
    let candidates: Vec<Vec<&Vec<u64>>> = (0..k)
        .map(|i| elems.iter().filter(|e| element_order(e, db) == da[i] && b.q_of(e) == a.q_values[i]).collect())
        .collect();

    struct Search<'s> {
        a: &'s DiscriminantForm,
        b: &'s DiscriminantForm,
        candidates: &'s [Vec<&'s Vec<u64>>],
        unit: &'s dyn Fn(usize) -> Vec<u64>,
    }

    impl Search<'_> {
        fn run(&self, i: usize, chosen: &mut Vec<Vec<u64>>) -> bool {
            let da = &self.a.invariant_factors;
            if i == da.len() {
                return true;
            }
            // injective on the first i+1 cyclic factors iff the images span that many elements
            let expected: usize = da[..=i].iter().product::<u64>() as usize;
            for &c in &self.candidates[i] {
                if (0..i).any(|j| self.b.b_of(&chosen[j], c) != self.a.b_of(&(self.unit)(j), &(self.unit)(i))) {
                    continue;
                }
                chosen.push(c.clone());
                if span_size(chosen, &self.b.invariant_factors) == expected && self.run(i + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
            false
        }
    }

    let search = Search { a: &a, b, candidates: &candidates, unit: &unit };
    Ok(search.run(0, &mut Vec::new()))
}

/// `A_L1 ≅ A_L2` with `q_2 ∘ φ = -q_1`.
pub fn disc_forms_opposite(l1: &IntegralLattice, l2: &IntegralLattice) -> Result<bool> {
    disc_forms_opposite_bounded(l1, l2, DEFAULT_SEARCH_BOUND)
}

pub fn disc_forms_opposite_bounded(l1: &IntegralLattice, l2: &IntegralLattice, bound: u64) -> Result<bool> {
    disc_forms_isometric(&discriminant_form(l1)?, &discriminant_form(l2)?, -1, bound)
}

/// The checks behind "T is the orthogonal complement of NS in the K3 lattice".
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementCheck {
    #[serde(rename = "rankSum")]
    pub rank_sum: usize,
    #[serde(rename = "nsSignature")]
    pub ns_signature: (usize, usize),
    #[serde(rename = "tSignature")]
    pub t_signature: (usize, usize),
    #[serde(rename = "nsDeterminant")]
    pub ns_determinant: String,
    #[serde(rename = "tDeterminant")]
    pub t_determinant: String,
    #[serde(rename = "discriminantFormsOpposite")]
    pub disc_opposite: bool,
    pub compatible: bool,
}

fn sig_pair(s: Signature) -> (usize, usize) {
    (s.positive, s.negative)
}

/// Necessary conditions for `NS ⊕ T ⊂ U³ ⊕ E8(-1)²` as mutual orthogonal
/// complements: ranks add to 22, signatures `(1, r-1)` and `(2, r-2)`, and
/// opposite discriminant forms. Uniqueness in the genus is not checked.
pub fn k3_complement_check(ns: &IntegralLattice, t: &IntegralLattice) -> Result<ComplementCheck> {
    let (sn, st) = (ns.signature(), t.signature());
    let rank_sum = ns.rank() + t.rank();
    let sig_ok = sn.zero == 0 && st.zero == 0 && sn.positive == 1 && st.positive == 2;
    let disc_opposite = sig_ok && disc_forms_opposite(ns, t)?;
    Ok(ComplementCheck {
        rank_sum,
        ns_signature: sig_pair(sn),
        t_signature: sig_pair(st),
        ns_determinant: ns.determinant().to_string(),
        t_determinant: t.determinant().to_string(),
        disc_opposite,
        compatible: rank_sum == 22 && sig_ok && disc_opposite,
    })
}

pub fn k3_complement_compatible(ns: &IntegralLattice, t: &IntegralLattice) -> Result<bool> {
    Ok(k3_complement_check(ns, t)?.compatible)
}

/// `|det|` as a big integer.
pub fn abs_det(l: &IntegralLattice) -> BigInt {
    l.determinant().abs()
}
