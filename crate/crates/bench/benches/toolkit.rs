use criterion::{black_box, criterion_group, criterion_main, Criterion};
use k3cy_bench::{coefficient, lattice, pf_params, FIBRATIONS};
use k3cy_core::fibration::{classify_fibers, WeierstrassJ1728};
use k3cy_core::algebra::q;
use k3cy_core::lattice::{disc_forms_opposite, discriminant_form};
use k3cy_core::picard_fuchs::{
    exact_certificate, numeric_monodromy, period_ode_residual, BranchPoint, IntegrationOptions, LoopSpec,
    PFOperator, SingularPoint,
};
use num_complex::Complex64 as C64;

fn fibration(c: &mut Criterion) {
    for (name, a) in FIBRATIONS {
        let w = WeierstrassJ1728::new(coefficient(a), 8);
        c.bench_function(&format!("classify_fibers {name}"), |b| b.iter(|| classify_fibers(black_box(&w))));
    }
}

fn lattices(c: &mut Criterion) {
    let t = lattice("U(2)^2+<-2>^4");
    c.bench_function("discriminant_form U(2)^2+<-2>^4", |b| b.iter(|| discriminant_form(black_box(&t))));
    let ns = lattice("U+D4^2+A1^4");
    c.bench_function("disc_forms_opposite rank 14 vs rank 8", |b| b.iter(|| disc_forms_opposite(&ns, &t)));
}

fn picard_fuchs(c: &mut Criterion) {
    let holomorphic = pf_params([4, 1, 2, 2], [0, 0, 0, 1]);
    let other = pf_params([4, 1, 2, 2], [0, 1, 1, 3]);
    c.bench_function("exact_certificate (4,1,2,2; 0,0,0,1)", |b| b.iter(|| exact_certificate(black_box(&holomorphic))));
    c.bench_function("exact_certificate (4,1,2,2; 0,1,1,3)", |b| b.iter(|| exact_certificate(black_box(&other))));

    let op = PFOperator::from_abc(q(1, 4), q(1, 2), q(1, 2));
    let around = LoopSpec::Around(SingularPoint::Zero);
    let opts = IntegrationOptions::default();
    c.bench_function("numeric_monodromy around 0", |b| {
        b.iter(|| numeric_monodromy(&op, C64::new(0.5, 0.0), &around, &opts))
    });

    let segment = (BranchPoint::One, BranchPoint::Infinity);
    c.bench_function("period_ode_residual (4,1,2,2) at 1/3", |b| {
        b.iter(|| period_ode_residual(&holomorphic, C64::new(1.0 / 3.0, 0.0), segment, 5e-3))
    });
}

criterion_group!(benches, fibration, lattices, picard_fuchs);
criterion_main!(benches);
