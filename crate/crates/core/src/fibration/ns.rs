use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::weierstrass::FibrationReport;
use crate::error::{Error, Result};
use crate::lattice::{span_of_gram, IntegralLattice};

/// Where an extra section meets the singular fibers. Fibers not listed are
/// met in the identity component `C0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionIncidence {
    pub name: String,
    /// `(geometric fiber index, component index)` pairs.
    pub meets: Vec<(usize, usize)>,
    /// Intersection with the zero section (0 for torsion sections).
    #[serde(default, rename = "zeroSection")]
    pub zero_section: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionData {
    pub sections: Vec<SectionIncidence>,
    /// Off-diagonal section-section intersections, all zero when empty; the
    /// diagonal is ignored (sections are smooth rational curves, square -2).
    #[serde(default)]
    pub pairwise: Vec<Vec<i64>>,
}

#[derive(Clone, Debug)]
pub struct NsGram {
    /// Labels of the generators: `O`, `F`, fiber components, sections.
    pub generators: Vec<String>,
    /// Gram matrix of all generators (possibly degenerate).
    pub generator_gram: Vec<Vec<i64>>,
    /// Indices of the generators kept as a rational basis.
    pub independent: Vec<usize>,
    /// The lattice they span.
    pub lattice: IntegralLattice,
}

/// Gram matrix of the lattice spanned by the zero section, the fiber class,
/// the non-identity components of the reducible fibers and the given extra
/// sections. Without dependent sections the basis is the generator list.
pub fn ns_gram(report: &FibrationReport, data: &SectionData) -> Result<NsGram> {
    let fibers = report.geometric_fibers();
    let mut labels = vec!["O".to_string(), "F".to_string()];
    // (fiber, component) -> generator index
    let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (f, (name, kind)) in fibers.iter().enumerate() {
        for c in 1..kind.component_count() {
            index.insert((f, c), labels.len());
            labels.push(format!("{name}:C{c}"));
        }
    }
    let first_section = labels.len();
    labels.extend(data.sections.iter().map(|s| s.name.clone()));
    let n = labels.len();
    let mut g = vec![vec![0i64; n]; n];
    g[0][0] = -2;
    g[0][1] = 1;
    g[1][0] = 1;
    for (f, (_, kind)) in fibers.iter().enumerate() {
        let m = kind.intersection_matrix();
        for a in 1..kind.component_count() {
            for b in 1..kind.component_count() {
                g[index[&(f, a)]][index[&(f, b)]] = m[a][b];
            }
        }
    }

    let k = data.sections.len();
    if !data.pairwise.is_empty() && (data.pairwise.len() != k || data.pairwise.iter().any(|r| r.len() != k)) {
        return Err(Error::domain(format!("pairwise section intersections must be a {k}x{k} matrix")));
    }
    for (i, s) in data.sections.iter().enumerate() {
        let si = first_section + i;
        g[si][si] = -2;
        g[si][1] = 1;
        g[1][si] = 1;
        g[si][0] = s.zero_section;
        g[0][si] = s.zero_section;
        let mut seen = BTreeMap::new();
        for &(f, c) in &s.meets {
            let (fname, kind) = fibers
                .get(f)
                .ok_or_else(|| Error::domain(format!("section {} refers to fiber {f}, which does not exist", s.name)))?;
            if let Some(prev) = seen.insert(f, c) {
                return Err(Error::domain(format!(
                    "section {} meets two components (C{prev}, C{c}) of fiber {fname}",
                    s.name
                )));
            }
            if !kind.simple_components().contains(&c) {
                return Err(Error::domain(format!(
                    "section {} cannot meet C{c} of the {kind} fiber {fname}: not a simple component",
                    s.name
                )));
            }
            if c != 0 {
                let gi = index[&(f, c)];
                g[si][gi] = 1;
                g[gi][si] = 1;
            }
        }
        for j in 0..k {
            if j != i {
                let (x, y) = match data.pairwise.is_empty() {
                    true => (0, 0),
                    false => (data.pairwise[i][j], data.pairwise[j][i]),
                };
                if x != y {
                    return Err(Error::domain("pairwise section intersections are not symmetric"));
                }
                g[si][first_section + j] = x;
            }
        }
    }
    let span = span_of_gram(&g)?;
    Ok(NsGram { generators: labels, generator_gram: g, independent: span.independent, lattice: span.lattice })
}
