use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use qjf_core::forms::{self, ThetaArg, ThetaFactored, ThetaRatio};
use qjf_core::genfun;
use qjf_core::par;
use qjf_core::ring::{Coeff, TLaurent, ULaurent};
use qjf_core::verify::{self, Ctx};

// series_k is memoized, so the K kernel is rebuilt here from its factors
fn k_uncached(order: i64, t_order: i64) {
    let o = order + 1;
    let num = ThetaFactored::linear_factor(TLaurent::from_u(ULaurent::u_minus_uinv().neg()))
        .mul(&ThetaFactored::theta_prime_zero(o).pow(3));
    let den = ThetaFactored::discriminant(o)
        .mul(&ThetaFactored::theta(ThetaArg::YT, o))
        .mul(&ThetaFactored::theta(ThetaArg::TY, o))
        .mul(&ThetaFactored::theta(ThetaArg::Y, o));
    black_box(ThetaRatio::new(num, den).assemble_expanded(t_order + order + 2).unwrap());
}

fn modes(c: &mut Criterion, group: &str, inputs: &[i64], f: impl Fn(i64)) {
    let mut g = c.benchmark_group(group);
    g.sample_size(10);
    for &n in inputs {
        for (label, on) in [("parallel", true), ("sequential", false)] {
            g.bench_with_input(BenchmarkId::new(label, n), &n, |b, &n| {
                par::set_parallel(on);
                b.iter(|| f(n));
            });
        }
    }
    g.finish();
    par::set_parallel(true);
}

fn a_product(c: &mut Criterion) {
    modes(c, "a_product_form", &[12, 20], |n| {
        black_box(genfun::a_product_form(n));
    });
}

fn a_lattice(c: &mut Criterion) {
    modes(c, "a_lattice_generic", &[12, 20], |n| {
        black_box(forms::a_lattice_generic(n));
    });
}

fn k_series(c: &mut Criterion) {
    modes(c, "k_series", &[6, 10], |n| k_uncached(n, 2 * n + 6));
}

fn verify_suite(c: &mut Criterion) {
    modes(c, "verify_all", &[4], |n| {
        black_box(verify::run(&[], Ctx { order: n, seed: 0 }));
    });
}

criterion_group!(benches, a_product, a_lattice, k_series, verify_suite);
criterion_main!(benches);
