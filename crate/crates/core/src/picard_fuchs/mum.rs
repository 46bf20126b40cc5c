use serde::{Deserialize, Serialize};

use super::frobenius::{all_indicial_exponents, is_maximally_unipotent, SingularPoint};
use super::operator::PFOperator;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MumReason {
    /// The operator is too small to carry a unipotent block of full rank.
    OrderDeficit,
    /// Decided from the local exponents of the operator.
    LocalExponents,
    /// Neither criterion applies.
    Inconclusive,
    /// The automorphism acts on the periods by a non-trivial character.
    AutomorphismEigenvalue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MumVerdict {
    /// `true` when no point of maximal unipotent monodromy can exist.
    pub absent: bool,
    pub reason: MumReason,
    /// `2 h²¹ + 2`, the rank of the weight-3 variation.
    pub variation_rank: u64,
    /// Points with a full unipotent block, when exponents were examined.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub unipotent_points: Vec<SingularPoint>,
}

/// Whether a Calabi-Yau 3-fold family with the given `h²¹`, whose periods
/// satisfy an operator of order `operator_order`, can have a point of
/// maximal unipotent monodromy.
pub fn mum_absent_for_cy3(operator_order: u64, h21: u64) -> MumVerdict {
    let variation_rank = 2 * h21 + 2;
    let (absent, reason) =
        if operator_order < variation_rank { (true, MumReason::OrderDeficit) } else { (false, MumReason::Inconclusive) };
    MumVerdict { absent, reason, variation_rank, unipotent_points: vec![] }
}

/// As [`mum_absent_for_cy3`], falling back to the local exponents of `op`
/// when the order is not deficient.
pub fn mum_absent_with_operator(op: &PFOperator, h21: u64) -> Result<MumVerdict> {
    let mut v = mum_absent_for_cy3(op.order() as u64, h21);
    if v.absent || v.variation_rank != op.order() as u64 {
        return Ok(v);
    }
    let data = all_indicial_exponents(op)?;
    v.unipotent_points = data.iter().filter(|d| is_maximally_unipotent(d)).map(|d| d.point).collect();
    v.absent = v.unipotent_points.is_empty();
    v.reason = MumReason::LocalExponents;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    #[test]
    fn order_deficit() {
        let v = mum_absent_for_cy3(2, 1);
        assert!(v.absent);
        assert_eq!(v.reason, MumReason::OrderDeficit);
        assert_eq!(v.variation_rank, 4);
        assert_eq!(mum_absent_for_cy3(2, 2).reason, MumReason::OrderDeficit);
        let v = mum_absent_for_cy3(4, 1);
        assert!(!v.absent);
        assert_eq!(v.reason, MumReason::Inconclusive);
    }

    #[test]
    fn rigid_case_uses_exponents() {
        let v = mum_absent_with_operator(&PFOperator::legendre(), 0).unwrap();
        assert!(!v.absent);
        assert_eq!(v.reason, MumReason::LocalExponents);
        assert_eq!(v.unipotent_points, [SingularPoint::Zero, SingularPoint::One]);
        let op = PFOperator::from_abc(q(1, 4), q(1, 2), q(1, 2));
        let v = mum_absent_with_operator(&op, 0).unwrap();
        assert_eq!(v.unipotent_points, [SingularPoint::One]);
        let v = mum_absent_with_operator(&PFOperator::from_abc(q(1, 4), q(1, 4), q(1, 4)), 0).unwrap();
        assert!(v.absent);
        let v = mum_absent_with_operator(&op, 1).unwrap();
        assert_eq!(v.reason, MumReason::OrderDeficit);
    }
}
