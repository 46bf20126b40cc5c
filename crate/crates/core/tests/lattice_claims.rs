use k3cy_core::algebra::parse_unipoly;
use k3cy_core::curves::Place;
use k3cy_core::fibration::{
    classify_fibers, ns_gram, FiberDatum, FibrationReport, KodairaType, SectionData, SectionIncidence,
    WeierstrassJ1728,
};
use k3cy_core::lattice::{k3_complement_check, parse_lattice, IntegralLattice};

fn report(a: &str) -> FibrationReport {
    classify_fibers(&WeierstrassJ1728::new(parse_unipoly(a, Some("s")).unwrap(), 8)).unwrap()
}

fn torsion(name: &str, meets: Vec<(usize, usize)>) -> SectionIncidence {
    SectionIncidence { name: name.into(), meets, zero_section: 0 }
}

fn ns(r: &FibrationReport, sections: Vec<SectionIncidence>) -> IntegralLattice {
    ns_gram(r, &SectionData { sections, pairwise: vec![] }).unwrap().lattice
}

fn assert_complement(ns: &IntegralLattice, t: &str) {
    let t = parse_lattice(t).unwrap();
    let check = k3_complement_check(ns, &t).unwrap();
    assert!(check.compatible, "{check:?}");
}

#[test]
fn genus_two_surface() {
    let r = report("s*(s-1)^2*(s-2)^2");
    let l = ns(&r, vec![torsion("sigma", vec![(0, 1), (1, 1), (2, 1), (3, 6)])]);
    assert_eq!(l.rank(), 18);
    assert_complement(&l, "U(2)+<2>+<-2>");
}

#[test]
fn genus_three_surface() {
    let r = report("s*(s-1)^2*(s-2)^2*(s-3)^2");
    let l = ns(&r, vec![torsion("sigma", (0..5).map(|f| (f, 1)).collect())]);
    assert_eq!(l.rank(), 16);
    assert_complement(&l, "U(2)^2+<-2>^2");
}

#[test]
fn four_d4_surface() {
    let r = report("(s*(s-1)*(s-2)*(s-3))^2");
    let sections = [1, 3, 4]
        .iter()
        .enumerate()
        .map(|(k, &c)| torsion(&format!("sigma{}", k + 1), (0..4).map(|f| (f, c)).collect()))
        .collect();
    let l = ns(&r, sections);
    assert_eq!(l.rank(), 18);
    assert_complement(&l, "U(2)^2");
}

#[test]
fn shioda_inose_surface() {
    let r = report("s^3*(s-1)^2");
    let l = ns(&r, vec![torsion("sigma", vec![(0, 1), (1, 6), (2, 6)])]);
    assert_eq!(l.rank(), 20);
    assert_complement(&l, "<2>^2");
    let u2 = k3_complement_check(&l, &parse_lattice("U(2)").unwrap()).unwrap();
    assert!(!u2.compatible);
}

#[test]
fn two_elementary_surface() {
    let place = |k: i64| Place::Finite(parse_unipoly(&format!("s-{k}"), None).unwrap());
    let mut fibers = vec![FiberDatum::new(place(0), KodairaType::I0Star), FiberDatum::new(place(1), KodairaType::I0Star)];
    fibers.extend((2..6).map(|k| FiberDatum::new(place(k), KodairaType::III)));
    let r = FibrationReport::from_fibers(fibers);
    let l = ns(&r, vec![]);
    assert_eq!(l.rank(), 14);
    assert_complement(&l, "U(2)^2+<-2>^4");
}
