//! Registered identity checks, grouped into suites. Checks run in parallel
//! and are reported in registration order.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::check::compare;
use crate::forms::{self, ThetaArg, ThetaFactored};
use crate::genfun::{self, Surface, Variant};
use crate::invariants::{self as inv};
use crate::par;
use crate::qseries::QSeries;
use crate::ring::{Coeff, Rational, ULaurent};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Forms,
    Genfun,
    Invariants,
    Inversion,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Forms, Suite::Genfun, Suite::Invariants, Suite::Inversion];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Forms => "forms",
            Suite::Genfun => "genfun",
            Suite::Invariants => "invariants",
            Suite::Inversion => "inversion",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

/// Parameters shared by all checks.
#[derive(Clone, Copy, Debug)]
pub struct Ctx {
    pub order: i64,
    pub seed: u64,
}

type CheckFn = fn(&Ctx) -> Result<(), String>;

pub struct Check {
    pub suite: Suite,
    pub name: &'static str,
    run: CheckFn,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub suite: Suite,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {}/{}", self.suite, self.name)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

fn s<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn expect_eq<T: PartialEq + fmt::Debug>(what: &str, a: T, b: T) -> Result<(), String> {
    if a == b {
        Ok(())
    } else {
        Err(format!("{what}: {a:?} vs {b:?}"))
    }
}

// forms

fn theta_sum_product(c: &Ctx) -> Result<(), String> {
    for arg in [ThetaArg::Y, ThetaArg::TY, ThetaArg::YT, ThetaArg::T] {
        let p = ThetaFactored::theta(arg, c.order).collapsed();
        let q = ThetaFactored::theta_sum(arg, c.order).collapsed();
        compare(&p, &q, &["q", "t", "u"]).map_err(|m| format!("{arg:?}: {m}"))?;
    }
    Ok(())
}

fn heat_equation(c: &Ctx) -> Result<(), String> {
    let r = forms::heat_residual(&Rational::from(2), c.order);
    compare(&r, &QSeries::zero_to(c.order + 1), &["q", "u"]).map_err(s)
}

fn a_theta_form(c: &Ctx) -> Result<(), String> {
    let lat = forms::a_lattice(c.order);
    compare(&forms::a_theta(c.order).map_err(s)?, &lat, &["q", "u"]).map_err(s)?;
    let heat = forms::a_theta_heat(&Rational::new(2, 3), c.order).map_err(s)?;
    compare(&heat, &lat, &["q", "u"]).map_err(|m| format!("heat form: {m}"))
}

fn tilde_delta_two_ways(c: &Ctx) -> Result<(), String> {
    let th = forms::tilde_delta_theta(c.order).map_err(s)?;
    compare(&forms::tilde_delta(c.order), &th, &["q", "u"]).map_err(s)
}

fn tilde_dg2_two_ways(c: &Ctx) -> Result<(), String> {
    let th = forms::tilde_dg2_theta(c.order).map_err(s)?;
    compare(&forms::tilde_dg2(c.order), &th, &["q", "u"]).map_err(s)
}

fn delta_dlog(c: &Ctx) -> Result<(), String> {
    let d = forms::discriminant(c.order + 1).dlog().map_err(s)?;
    let want = forms::eisenstein_g2(c.order).scale(&Rational::from(-24));
    compare(&d, &want, &["q"]).map_err(s)
}

fn zagier(c: &Ctx) -> Result<(), String> {
    let o = c.order.min(8);
    forms::zagier_check(o, Some(2 * o), true).map_err(s)?;
    match forms::zagier_check(o, Some(2 * o), false) {
        Err(m) if m.exponents.first() == Some(&1) => Ok(()),
        other => Err(format!("negative control did not fail at q^1: {other:?}")),
    }
}

/// Random series with small integer Laurent coefficients.
fn random_series(rng: &mut ChaCha8Rng, lead: i64, prec: i64) -> QSeries {
    QSeries::from_terms(
        (lead..prec).map(|m| {
            let terms: Vec<(i64, Rational)> = (-2..=2).map(|e| (e, Rational::from(rng.gen_range(-3..=3)))).collect();
            (m, ULaurent::from_terms(terms))
        }),
        prec,
    )
}

fn random_series_algebra(c: &Ctx) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    for _ in 0..4 {
        let a = random_series(&mut rng, 0, c.order + 1);
        let b = QSeries::one().add(&random_series(&mut rng, 1, c.order + 1));
        let back = a.mul(&b).div(&b).map_err(s)?;
        compare(&back, &a, &["q", "u"]).map_err(|m| format!("(ab)/b: {m}"))?;
        let lhs = a.mul(&b).dq();
        let rhs = a.dq().mul(&b).add(&a.mul(&b.dq()));
        compare(&lhs, &rhs, &["q", "u"]).map_err(|m| format!("Leibniz: {m}"))?;
    }
    Ok(())
}

// genfun

fn a_four_ways(c: &Ctx) -> Result<(), String> {
    genfun::check_a_constructions(c.order, 2 * c.order).map_err(s)
}

fn a_symmetry(c: &Ctx) -> Result<(), String> {
    let a = genfun::series_a(c.order).map_err(s)?;
    for (m, p) in a.terms() {
        if !p.is_t_symmetric() {
            return Err(format!("q^{m} not symmetric under t -> 1/t"));
        }
        if !p.at_t_u_power(1).is_zero() {
            return Err(format!("q^{m} does not vanish at t = y^(1/2)"));
        }
    }
    Ok(())
}

fn hx(c: &Ctx) -> Result<(), String> {
    genfun::check_hx(c.order)
}

fn euler_specializations(c: &Ctx) -> Result<(), String> {
    genfun::check_a_euler(c.order)?;
    genfun::check_h_euler(c.order)?;
    genfun::check_x_euler(c.order)?;
    genfun::check_k_euler(c.order, 2 * c.order + 6)
}

fn mpt(c: &Ctx) -> Result<(), String> {
    for k in 0..=3 {
        genfun::mpt_check(k, c.order, false).map_err(|m| format!("k = {k}: {m}"))?;
    }
    if genfun::mpt_check(2, c.order.max(3), true).is_ok() {
        return Err("sign-flipped expansion passed".into());
    }
    Ok(())
}

fn k_leading(_: &Ctx) -> Result<(), String> {
    let k = genfun::series_k(0, 8).map_err(s)?;
    let lead = k.coeff(-1).map_err(s)?;
    for n in 0..=4 {
        expect_eq(&format!("t^{}", n + 1), lead.coeff(n + 1).map_err(s)?, ULaurent::quantum_int(n + 1))?;
    }
    Ok(())
}

fn t_u_specializations(c: &Ctx) -> Result<(), String> {
    let dg = forms::tilde_dg2(c.order);
    let a = genfun::series_a(c.order).map_err(s)?;
    compare(&genfun::divide_x_at_t_u(&a).map_err(s)?, &dg.dq(), &["q", "u"]).map_err(|m| format!("A/x: {m}"))?;
    let h = genfun::series_h(c.order).map_err(s)?;
    compare(&genfun::divide_x_at_t_u(&h).map_err(s)?, &dg, &["q", "u"]).map_err(|m| format!("H/x: {m}"))?;
    let x = genfun::series_x(c.order).map_err(s)?;
    compare(&genfun::divide_x_at_t_u(&x).map_err(s)?, &dg, &["q", "u"]).map_err(|m| format!("X/x: {m}"))?;
    // x K at t = y^{1/2} is 1/tilde Delta
    let o = c.order.min(6);
    let k = genfun::series_k(o, 2 * o + 8).map_err(s)?;
    let inv = forms::tilde_delta(o + 2).inverse().map_err(s)?;
    for g in 0..=o + 1 {
        let p = inv::k3_xk_polynomial(&k, g, 2 * g + 4).map_err(s)?;
        expect_eq(&format!("xK at q^{}", g - 1), p.at_t_u_power(1), inv.coeff(g - 1).map_err(s)?)?;
    }
    Ok(())
}

fn ktrivial_vanishing(c: &Ctx) -> Result<(), String> {
    for k in 0..=3u32 {
        let g = genfun::ktrivial_genfun(Surface::Abelian, k, Variant::PointConditions, c.order, 0).map_err(s)?;
        for m in -1..(k as i64 + 1).min(c.order + 1) {
            if g.coeff_ref(m).is_some_and(|v| !v.is_zero()) {
                return Err(format!("abelian k = {k}: q^{m} nonzero"));
            }
        }
    }
    Ok(())
}

// invariants

fn fg_properties(c: &Ctx) -> Result<(), String> {
    for g in 2..=c.order + 1 {
        let f = inv::abelian_fg(g);
        if !f.is_t_symmetric() || !f.at_t_u_power(1).is_zero() {
            return Err(format!("f_{g} fails symmetry or vanishing at t = y^(1/2)"));
        }
        let ns = inv::x_expand(&f, g).map_err(s)?;
        if !ns[g as usize - 1].is_zero() {
            return Err(format!("N^{} nonzero for g = {g}", g - 1));
        }
        if ns.iter().any(|n| !n.is_palindromic()) {
            return Err(format!("non-palindromic N^i at g = {g}"));
        }
        expect_eq("reconstruction", inv::x_reconstruct(&ns, g), f)?;
    }
    Ok(())
}

fn aagen(c: &Ctx) -> Result<(), String> {
    let o = c.order.min(8);
    for h in 2..=o + 1 {
        let series = inv::thm_higher_a(h, o).map_err(s)?;
        for g in 2..=o + 1 {
            let ns = inv::x_expand(&inv::abelian_fg(g), g).map_err(s)?;
            let want = if g >= h { ns[(g - h) as usize].clone() } else { ULaurent::zero() };
            expect_eq(&format!("g = {g}, h = {h}"), series.coeff(g - 1).map_err(s)?, want)?;
        }
    }
    Ok(())
}

fn kkgen(c: &Ctx) -> Result<(), String> {
    let o = c.order.min(6);
    let gmax = o + 1;
    let k = genfun::series_k(o, 2 * gmax + 7).map_err(s)?;
    let series: Vec<QSeries> = (0..=gmax).map(|h| inv::thm_higher_k(h, o)).collect::<Result<_, _>>().map_err(s)?;
    for g in 0..=gmax {
        let ns = inv::x_expand(&inv::k3_xk_polynomial(&k, g, 2 * g + 6).map_err(s)?, g + 1).map_err(s)?;
        for h in 0..=g {
            expect_eq(&format!("g = {g}, h = {h}"), ns[(g - h) as usize].clone(), series[h as usize].coeff(g - 1).map_err(s)?)?;
        }
    }
    Ok(())
}

fn numconj(c: &Ctx) -> Result<(), String> {
    let o = c.order.min(6);
    for surface in [Surface::Abelian, Surface::K3] {
        for k in 0..=3 {
            let a = inv::numconj_series(surface, k, o).map_err(s)?;
            let b = inv::numconj_extracted(surface, k, o, 2 * o + 8).map_err(s)?;
            compare(&a, &b, &["q", "u"]).map_err(|m| format!("{surface:?} k = {k}: {m}"))?;
        }
    }
    Ok(())
}

fn vanishing_above_delta(c: &Ctx) -> Result<(), String> {
    let o = c.order.min(6);
    for surface in [Surface::Abelian, Surface::K3] {
        for k in 0..=2 {
            inv::ninv_table(surface, k, o, 2 * o + 8).map_err(|e| format!("{surface:?} k = {k}: {e}"))?;
        }
    }
    Ok(())
}

fn random_x_expand(c: &Ctx) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed ^ 0x9e37);
    for _ in 0..8 {
        let g = rng.gen_range(1..=6i64);
        let ns: Vec<ULaurent> = (0..g)
            .map(|_| ULaurent::from_terms((-2..=2).map(|e| (e, Rational::from(rng.gen_range(-4..=4))))))
            .collect();
        let p = inv::x_reconstruct(&ns, g);
        expect_eq(&format!("g = {g}"), inv::x_expand(&p, g).map_err(s)?, ns)?;
    }
    Ok(())
}

// inversion

fn change_of_variable(c: &Ctx) -> Result<(), String> {
    let cov = genfun::change_of_variable(c.order, c.order).map_err(s)?;
    let x = QSeries::var();
    let xq = QSeries::compose(&cov.x_of_q, &cov.q_of_x_laurent).map_err(s)?;
    compare(&xq, &x.truncate(c.order + 1), &["x", "u"]).map_err(|m| format!("x(q(x)): {m}"))?;
    let qx = QSeries::compose(&cov.q_of_x_laurent, &cov.x_of_q).map_err(s)?;
    compare(&qx, &x.truncate(c.order + 1), &["q", "u"]).map_err(|m| format!("q(x(q)): {m}"))
}

fn lagrange_vs_newton(c: &Ctx) -> Result<(), String> {
    let xq = genfun::x_of_q(c.order);
    let newton = xq.comp_inverse().map_err(s)?;
    for n in 1..=c.order {
        let lag = xq.lagrange_coefficient(n as u32).map_err(s)?;
        expect_eq(&format!("q(x) at x^{n}"), lag, newton.coeff(n).map_err(s)?)?;
    }
    Ok(())
}

fn z2ve(c: &Ctx) -> Result<(), String> {
    inv::z2_inversion_check(c.order)
}

fn binomial_identity(c: &Ctx) -> Result<(), String> {
    inv::binom_identity_check(c.order)
}

fn random_inversion(c: &Ctx) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed ^ 0x51ed);
    for _ in 0..3 {
        let f = QSeries::var().add(&random_series(&mut rng, 2, c.order + 1));
        let g = f.comp_inverse().map_err(s)?;
        let id = QSeries::compose(&f, &g).map_err(s)?;
        compare(&id, &QSeries::var().truncate(c.order + 1), &["q", "u"]).map_err(|m| format!("f(f^-1): {m}"))?;
    }
    Ok(())
}

macro_rules! checks {
    ($($suite:ident $name:literal $f:path;)*) => {
        &[$(Check { suite: Suite::$suite, name: $name, run: $f }),*]
    };
}

/// Every registered check, in reporting order.
pub fn registry() -> &'static [Check] {
    checks! {
        Forms "theta_sum_vs_product" theta_sum_product;
        Forms "heat_equation" heat_equation;
        Forms "indefinite_theta" a_theta_form;
        Forms "tilde_delta_two_ways" tilde_delta_two_ways;
        Forms "tilde_dg2_two_ways" tilde_dg2_two_ways;
        Forms "delta_dlog_is_g2" delta_dlog;
        Forms "zagier_identity" zagier;
        Forms "random_series_algebra" random_series_algebra;
        Genfun "a_four_constructions" a_four_ways;
        Genfun "a_symmetry_and_vanishing" a_symmetry;
        Genfun "h_x_relations" hx;
        Genfun "euler_specializations" euler_specializations;
        Genfun "mpt_expansion" mpt;
        Genfun "k_leading_term" k_leading;
        Genfun "t_equals_sqrt_y" t_u_specializations;
        Genfun "ktrivial_vanishing" ktrivial_vanishing;
        Invariants "fg_properties" fg_properties;
        Invariants "abelian_closed_form" aagen;
        Invariants "k3_closed_form" kkgen;
        Invariants "top_term_series" numconj;
        Invariants "vanishing_above_delta" vanishing_above_delta;
        Invariants "random_x_expand" random_x_expand;
        Inversion "change_of_variable" change_of_variable;
        Inversion "lagrange_vs_newton" lagrange_vs_newton;
        Inversion "z2_inversion" z2ve;
        Inversion "binomial_identity" binomial_identity;
        Inversion "random_inversion" random_inversion;
    }
}

/// Runs the checks of the given suites (all if empty) concurrently.
pub fn run(suites: &[Suite], ctx: Ctx) -> Vec<Outcome> {
    let selected: Vec<&Check> = registry()
        .iter()
        .filter(|c| suites.is_empty() || suites.contains(&c.suite))
        .collect();
    par::map_slice(&selected, |c| {
        let r = (c.run)(&ctx);
        Outcome {
            suite: c.suite,
            name: c.name,
            passed: r.is_ok(),
            detail: r.err().unwrap_or_default(),
        }
    })
}
