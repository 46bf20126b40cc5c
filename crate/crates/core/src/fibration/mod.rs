//! Isotrivial `j = 1728` elliptic K3 surfaces `y² = x³ + a(t, s)·x`:
//! singular fibers, Euler numbers, trivial and Néron–Severi lattices.

pub mod kodaira;
pub mod ns;
pub mod weierstrass;

pub use kodaira::{KodairaType, RootLatticeType};
pub use ns::{ns_gram, NsGram, SectionData, SectionIncidence};
pub use weierstrass::{classify_fibers, BisectionAnnotation, FiberDatum, FibrationReport, WeierstrassJ1728};
