use serde::Serialize;

use super::kodaira::{KodairaType, RootLatticeType};
use crate::algebra::{squarefree_decompose, UniPoly};
use crate::curves::{Branch, CyclicCover, Place};
use crate::error::{Error, Result};

/// `y² = x³ + a(t, s)·x` in the affine chart `t = 1`, with `a` of
/// homogeneous degree `declared_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassJ1728 {
    pub a: UniPoly,
    pub declared_degree: u32,
}

impl WeierstrassJ1728 {
    pub fn new(a: UniPoly, declared_degree: u32) -> Self {
        WeierstrassJ1728 { a, declared_degree }
    }

    /// `ord_∞(a) = declared degree - deg(a)`.
    pub fn order_at_infinity(&self) -> u32 {
        self.declared_degree - self.a.degree().unwrap_or(0) as u32
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberDatum {
    #[serde(skip)]
    pub place: Place,
    #[serde(rename = "place")]
    pub place_label: String,
    #[serde(rename = "placeDegree")]
    pub place_degree: u32,
    #[serde(rename = "ordA")]
    pub ord_a: u32,
    #[serde(rename = "kodairaType")]
    pub kodaira_type: KodairaType,
    #[serde(rename = "eulerNumber")]
    pub euler_number: u32,
    #[serde(rename = "rootLattice")]
    pub root_lattice: RootLatticeType,
    #[serde(rename = "componentCount")]
    pub component_count: usize,
}

impl FiberDatum {
    pub fn new(place: Place, kodaira_type: KodairaType) -> Self {
        FiberDatum {
            place_label: place.label("s"),
            place_degree: place.degree(),
            ord_a: kodaira_type.ord_a(),
            kodaira_type,
            euler_number: kodaira_type.euler_number(),
            root_lattice: kodaira_type.root_lattice(),
            component_count: kodaira_type.component_count(),
            place,
        }
    }
}

/// The double cover `x² = -a(s)` of the base traced by the 2-torsion points
/// `x² + a = 0`, branched over the places where `ord(a)` is odd.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BisectionAnnotation {
    #[serde(rename = "branchPlaces")]
    pub branch_places: Vec<String>,
    /// `None` when `a` has no place of odd order and the cover splits.
    pub genus: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibrationReport {
    pub fibers: Vec<FiberDatum>,
    #[serde(rename = "eulerTotal")]
    pub euler_total: u32,
    #[serde(rename = "trivialLatticeRank")]
    pub trivial_lattice_rank: usize,
    pub bisection: Option<BisectionAnnotation>,
}

impl FibrationReport {
    /// A report from explicit fibers; Euler total and rank are recomputed.
    pub fn from_fibers(fibers: Vec<FiberDatum>) -> Self {
        let euler_total = fibers.iter().map(|f| f.place_degree * f.euler_number).sum();
        let trivial_lattice_rank =
            2 + fibers.iter().map(|f| f.place_degree as usize * (f.component_count - 1)).sum::<usize>();
        FibrationReport { fibers, euler_total, trivial_lattice_rank, bisection: None }
    }

    /// One entry per geometric fiber: a place of degree `d` yields `d`
    /// fibers labelled `place#1 … place#d`.
    pub fn geometric_fibers(&self) -> Vec<(String, KodairaType)> {
        let mut out = Vec::new();
        for f in &self.fibers {
            if f.place_degree == 1 {
                out.push((f.place_label.clone(), f.kodaira_type));
            } else {
                for k in 1..=f.place_degree {
                    out.push((format!("{}#{k}", f.place_label), f.kodaira_type));
                }
            }
        }
        out
    }

    /// Sorted multiset of `(type, place degree)`.
    pub fn type_multiset(&self) -> Vec<(KodairaType, u32)> {
        let mut v: Vec<_> = self.fibers.iter().map(|f| (f.kodaira_type, f.place_degree)).collect();
        v.sort();
        v
    }
}

fn check_order(place: &Place, order: u32) -> Result<()> {
    if order >= 4 {
        return Err(Error::NonMinimalModel { place: place.label("s"), order: order as usize });
    }
    Ok(())
}

/// Singular fibers of `y² = x³ + a·x`, one datum per square-free factor of
/// `a` plus one at infinity when `8 - deg(a) ≥ 1`.
pub fn classify_fibers(w: &WeierstrassJ1728) -> Result<FibrationReport> {
    if w.declared_degree != 8 {
        return Err(Error::NotK3(w.declared_degree as usize));
    }
    if w.a.is_zero() {
        return Err(Error::domain("a(t, s) is identically zero"));
    }
    let deg = w.a.degree().unwrap() as u32;
    if deg > w.declared_degree {
        return Err(Error::domain(format!("deg a = {deg} exceeds the declared degree {}", w.declared_degree)));
    }
    let mut fibers = Vec::new();
    let mut odd = Vec::new();
    for (p, m) in squarefree_decompose(&w.a)? {
        let place = Place::Finite(p.clone());
        check_order(&place, m)?;
        fibers.push(FiberDatum::new(place, KodairaType::from_ord_a(m).expect("1 <= m <= 3")));
        if m % 2 == 1 {
            odd.push(p);
        }
    }
    let inf = w.order_at_infinity();
    check_order(&Place::Infinity, inf)?;
    if let Some(k) = KodairaType::from_ord_a(inf) {
        fibers.push(FiberDatum::new(Place::Infinity, k));
    }
    let mut report = FibrationReport::from_fibers(fibers);
    debug_assert_eq!(report.euler_total, 24);
    report.bisection = Some(bisection(&odd, inf)?);
    Ok(report)
}

fn bisection(odd: &[UniPoly], inf: u32) -> Result<BisectionAnnotation> {
    let mut labels: Vec<String> = odd.iter().map(|p| p.to_expr("s")).collect();
    if inf % 2 == 1 {
        labels.push("inf".into());
    }
    let genus = if odd.is_empty() && inf % 2 == 0 {
        None
    } else {
        let branches: Vec<Branch> = odd.iter().map(|p| Branch::finite(p.clone(), 1)).collect();
        Some(CyclicCover::new(2, &branches)?.genus())
    };
    Ok(BisectionAnnotation { branch_places: labels, genus })
}
