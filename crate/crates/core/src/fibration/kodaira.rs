use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Singular fiber types of `y² = x³ + a·x` (`j = 1728`), keyed by `ord(a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum KodairaType {
    #[serde(rename = "III")]
    III,
    #[serde(rename = "I0*")]
    I0Star,
    #[serde(rename = "III*")]
    IIIStar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootLatticeType {
    A1,
    D4,
    E7,
}

impl RootLatticeType {
    pub fn name(self) -> &'static str {
        match self {
            RootLatticeType::A1 => "A1",
            RootLatticeType::D4 => "D4",
            RootLatticeType::E7 => "E7",
        }
    }
}

impl KodairaType {
    /// `ord(Δ) = 3·ord(a)` since `Δ = -64a³`.
    pub fn from_ord_a(ord: u32) -> Option<Self> {
        match ord {
            1 => Some(KodairaType::III),
            2 => Some(KodairaType::I0Star),
            3 => Some(KodairaType::IIIStar),
            _ => None,
        }
    }

    pub fn ord_a(self) -> u32 {
        match self {
            KodairaType::III => 1,
            KodairaType::I0Star => 2,
            KodairaType::IIIStar => 3,
        }
    }

    pub fn euler_number(self) -> u32 {
        3 * self.ord_a()
    }

    pub fn root_lattice(self) -> RootLatticeType {
        match self {
            KodairaType::III => RootLatticeType::A1,
            KodairaType::I0Star => RootLatticeType::D4,
            KodairaType::IIIStar => RootLatticeType::E7,
        }
    }

    pub fn component_count(self) -> usize {
        match self {
            KodairaType::III => 2,
            KodairaType::I0Star => 5,
            KodairaType::IIIStar => 8,
        }
    }

    /// Pairs of meeting components with their intersection number.
    ///
    /// * III: `C0·C1 = 2`.
    /// * I0*: central `C2` meets `C0, C1, C3, C4`.
    /// * III*: chain `C0 - C1 - … - C6` with `C7` attached to `C3`.
    fn edges(self) -> Vec<(usize, usize, i64)> {
        match self {
            KodairaType::III => vec![(0, 1, 2)],
            KodairaType::I0Star => vec![(0, 2, 1), (1, 2, 1), (3, 2, 1), (4, 2, 1)],
            KodairaType::IIIStar => {
                let mut e: Vec<_> = (1..7).map(|i| (i - 1, i, 1)).collect();
                e.push((3, 7, 1));
                e
            }
        }
    }

    /// Intersection matrix of all components, `C0` meeting the zero section.
    pub fn intersection_matrix(self) -> Vec<Vec<i64>> {
        let n = self.component_count();
        let mut m = vec![vec![0; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = -2;
        }
        for (a, b, w) in self.edges() {
            m[a][b] = w;
            m[b][a] = w;
        }
        m
    }

    /// Multiplicity of each component in the fiber class.
    pub fn multiplicities(self) -> Vec<u32> {
        match self {
            KodairaType::III => vec![1, 1],
            KodairaType::I0Star => vec![1, 1, 2, 1, 1],
            KodairaType::IIIStar => vec![1, 2, 3, 4, 3, 2, 1, 2],
        }
    }

    /// Components of multiplicity one; sections can only meet these.
    pub fn simple_components(self) -> Vec<usize> {
        self.multiplicities().iter().enumerate().filter(|(_, &m)| m == 1).map(|(i, _)| i).collect()
    }

    pub fn label(self) -> &'static str {
        match self {
            KodairaType::III => "III",
            KodairaType::I0Star => "I0*",
            KodairaType::IIIStar => "III*",
        }
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for KodairaType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "III" => Ok(KodairaType::III),
            "I0*" | "I0STAR" | "I_0^*" => Ok(KodairaType::I0Star),
            "III*" | "IIISTAR" => Ok(KodairaType::IIIStar),
            other => Err(Error::Parse(format!("unknown fiber type {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::named_lattice;

    #[test]
    fn fiber_table() {
        for (ord, t, e, root, comps) in [
            (1, KodairaType::III, 3, RootLatticeType::A1, 2),
            (2, KodairaType::I0Star, 6, RootLatticeType::D4, 5),
            (3, KodairaType::IIIStar, 9, RootLatticeType::E7, 8),
        ] {
            let k = KodairaType::from_ord_a(ord).unwrap();
            assert_eq!(k, t);
            assert_eq!(k.euler_number(), e);
            assert_eq!(k.root_lattice(), root);
            assert_eq!(k.component_count(), comps);
        }
        assert!(KodairaType::from_ord_a(4).is_none());
    }

    #[test]
    fn non_identity_components_form_the_root_lattice() {
        for k in [KodairaType::III, KodairaType::I0Star, KodairaType::IIIStar] {
            let m = k.intersection_matrix();
            let sub: Vec<Vec<i64>> = m[1..].iter().map(|r| r[1..].to_vec()).collect();
            let root = named_lattice(k.root_lattice().name()).unwrap();
            let sub = crate::lattice::IntegralLattice::new(sub).unwrap();
            assert_eq!(sub.determinant(), root.determinant());
            assert_eq!(sub.signature(), root.signature());
        }
    }

    #[test]
    fn fiber_class_is_orthogonal_to_components() {
        for k in [KodairaType::III, KodairaType::I0Star, KodairaType::IIIStar] {
            let m = k.intersection_matrix();
            let mult = k.multiplicities();
            for row in &m {
                let dot: i64 = row.iter().zip(&mult).map(|(a, &b)| a * b as i64).sum();
                assert_eq!(dot, 0, "{k}");
            }
        }
    }
}
