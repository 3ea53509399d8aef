//! Seeded verification suites. Every suite returns one report per identity;
//! a report carries the first nonzero residual met while sampling, or zero.

use superbracket_core::algebroid::{
    self, check_bialgebroid, check_courant_axioms, check_proto, courant_bracket, dorfman_components,
    dorfman_derived, BialgebroidData, CourantSample, FluxData,
};
use superbracket_core::metric::{check_odd_compat, eta, generalized_metric, RatMatrix};
use superbracket_core::{dft, Chart, ChartMode, Expression, Parity, Rational, RawTerm, Section, VerificationReport};

use crate::expr_io::parse_expression;
use crate::sample::{base_coords, double_coords, Sampler};

/// Sampling parameters shared by the suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    pub dim: usize,
    pub degree: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Config {
    pub fn new(dim: usize, degree: usize, samples: usize, seed: u64) -> Self {
        Config {
            dim,
            degree,
            samples,
            seed,
        }
    }
}

/// Keeps the first nonzero residual recorded under a name.
struct Probe {
    name: String,
    residual: Expression,
}

impl Probe {
    fn new(name: impl Into<String>) -> Self {
        Probe {
            name: name.into(),
            residual: Expression::zero(),
        }
    }

    fn record(&mut self, residual: Expression) {
        if self.residual.is_zero() {
            self.residual = residual;
        }
    }

    fn record_eq(&mut self, lhs: &Expression, rhs: &Expression) {
        if self.residual.is_zero() {
            self.residual = lhs - rhs;
        }
    }

    fn record_sections(&mut self, lhs: &Section, rhs: &Section) {
        self.record((lhs - rhs).lift());
    }

    fn finish(self) -> VerificationReport {
        VerificationReport::new(self.name, self.residual)
    }
}

fn sign(negative: bool) -> Rational {
    Rational::from_integer(if negative { -1 } else { 1 }.into())
}

fn koszul(a: Parity, b: Parity) -> Rational {
    sign(a.is_odd() && b.is_odd())
}

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

fn mode_name(mode: ChartMode) -> &'static str {
    match mode {
        ChartMode::Base => "base",
        ChartMode::Doubled => "doubled",
        ChartMode::Dual => "dual",
    }
}

/// Laws of the graded commutative product and of partial derivatives on
/// both chart layouts.
pub fn kernel(cfg: Config) -> Vec<VerificationReport> {
    let mut rng = Sampler::new(cfg.seed);
    let mut idem = Probe::new("kernel.normalize_idempotent");
    let mut comm = Probe::new("kernel.graded_commutativity");
    let mut assoc = Probe::new("kernel.associativity");
    let mut nil = Probe::new("kernel.odd_nilpotence");
    let mut dd = Probe::new("kernel.double_odd_derivative");
    let mut leib = Probe::new("kernel.graded_leibniz");
    for chart in [Chart::base(cfg.dim), Chart::doubled(cfg.dim)] {
        for _ in 0..cfg.samples {
            let a = rng.expression(chart, cfg.degree);
            let raw: Vec<RawTerm> = a
                .terms()
                .map(|(m, c)| {
                    let mut f = m.even().to_vec();
                    f.extend(m.odd().iter().map(|g| (*g, 1)));
                    RawTerm::new(c.clone(), f)
                })
                .collect();
            idem.record_eq(&Expression::normalize(raw), &a);

            let pa = if rng.coin() { Parity::Odd } else { Parity::Even };
            let pb = if rng.coin() { Parity::Odd } else { Parity::Even };
            let x = &rng.monomial(chart, pa, cfg.degree) + &rng.monomial(chart, pa, cfg.degree);
            let y = rng.monomial(chart, pb, cfg.degree);
            comm.record_eq(&x.product(&y), &y.product(&x).scale(&koszul(pa, pb)));

            let b = rng.expression(chart, cfg.degree);
            let c = rng.expression(chart, cfg.degree);
            assoc.record_eq(&a.product(&b).product(&c), &a.product(&b.product(&c)));

            let o = &rng.monomial(chart, Parity::Odd, cfg.degree) + &rng.monomial(chart, Parity::Odd, cfg.degree);
            nil.record(o.product(&o));

            for g in chart.generators() {
                if g.is_odd() {
                    dd.record(a.partial(g).partial(g));
                }
                let lhs = x.product(&b).partial(g);
                let rhs = &x.partial(g).product(&b) + &x.product(&b.partial(g)).scale(&koszul(g.parity(), pa));
                leib.record_eq(&lhs, &rhs);
            }
        }
    }
    vec![idem.finish(), comm.finish(), assoc.finish(), nil.finish(), dd.finish(), leib.finish()]
}

/// Expected `{a, b}` for two generators: `+1` for (momentum, coordinate) of
/// an even pair and for both orders of an odd pair, `-1` for (coordinate,
/// momentum) of an even pair, zero otherwise.
fn generator_table(chart: Chart, a: superbracket_core::Generator, b: superbracket_core::Generator) -> Expression {
    if a.index != b.index {
        return Expression::zero();
    }
    for &(c, m) in chart.mode().pairs() {
        if a.family == m && b.family == c {
            return Expression::one();
        }
        if a.family == c && b.family == m {
            return if a.is_odd() { Expression::one() } else { Expression::int(-1) };
        }
    }
    Expression::zero()
}

/// Graded antisymmetry, Leibniz, Jacobi and parity of the bracket on random
/// homogeneous monomial triples, and the generator table.
pub fn poisson_laws(chart: Chart, samples: usize, degree: usize, seed: u64) -> Vec<VerificationReport> {
    let prefix = format!("poisson.{}", mode_name(chart.mode()));
    let mut rng = Sampler::new(seed);
    let mut anti = Probe::new(format!("{prefix}.antisymmetry"));
    let mut leib = Probe::new(format!("{prefix}.leibniz"));
    let mut jac = Probe::new(format!("{prefix}.jacobi"));
    let mut par = Probe::new(format!("{prefix}.parity"));
    let mut table = Probe::new(format!("{prefix}.generator_table"));
    for _ in 0..samples {
        let mut pick = || {
            let p = if rng.coin() { Parity::Odd } else { Parity::Even };
            (rng.monomial(chart, p, degree), p)
        };
        let (f, pf) = pick();
        let (g, pg) = pick();
        let (h, _) = pick();
        let fg = chart.bracket(&f, &g);
        anti.record_eq(&fg, &-chart.bracket(&g, &f).scale(&koszul(pf, pg)));
        let rhs = &fg.product(&h) + &g.product(&chart.bracket(&f, &h)).scale(&koszul(pf, pg));
        leib.record_eq(&chart.bracket(&f, &g.product(&h)), &rhs);
        let rhs = &chart.bracket(&fg, &h) + &chart.bracket(&g, &chart.bracket(&f, &h)).scale(&koszul(pf, pg));
        jac.record_eq(&chart.bracket(&f, &chart.bracket(&g, &h)), &rhs);
        if !fg.is_zero() && fg.parity() != Some(pf + pg) {
            par.record(fg);
        }
    }
    let gens = chart.generators();
    for &a in &gens {
        for &b in &gens {
            let got = chart.bracket(&a.into(), &b.into());
            table.record_eq(&got, &generator_table(chart, a, b));
        }
    }
    vec![anti.finish(), leib.finish(), jac.finish(), par.finish(), table.finish()]
}

pub fn bialgebroid(b: &BialgebroidData) -> Vec<VerificationReport> {
    vec![check_bialgebroid(b)]
}

/// The five Courant axioms on sampled triples, plus agreement of the
/// derived and component Dorfman brackets and antisymmetry of the Courant
/// bracket.
pub fn courant(b: &BialgebroidData, cfg: Config) -> Vec<VerificationReport> {
    let d = b.dim();
    let gens = base_coords(d);
    let mut rng = Sampler::new(cfg.seed);
    let mut samples = Vec::with_capacity(cfg.samples);
    let mut comp = Probe::new("courant.dorfman_components");
    let mut anti = Probe::new("courant.antisymmetry");
    for _ in 0..cfg.samples {
        let s = CourantSample {
            s1: rng.section(&gens, d, cfg.degree),
            s2: rng.section(&gens, d, cfg.degree),
            s3: rng.section(&gens, d, cfg.degree),
            f: rng.poly(&gens, cfg.degree),
        };
        let derived = dorfman_derived(b, &s.s1, &s.s2).expect("sampled sections have the bialgebroid dimension");
        let rows = dorfman_components(b, &s.s1, &s.s2).expect("sampled sections have the bialgebroid dimension");
        comp.record_eq(&rows.lift(), &derived);
        let c12 = courant_bracket(b, &s.s1, &s.s2).expect("dimensions agree");
        let c21 = courant_bracket(b, &s.s2, &s.s1).expect("dimensions agree");
        anti.record((&c12 + &c21).lift());
        samples.push(s);
    }
    let mut out = check_courant_axioms(b, &samples);
    out.push(comp.finish());
    out.push(anti.finish());
    out
}

pub fn proto(b: &BialgebroidData, flux: &FluxData) -> Result<Vec<VerificationReport>, algebroid::StructureError> {
    Ok(vec![check_proto(b, flux)?])
}

/// Derived C-bracket against the component rows and the `O(d,d)` form, and
/// the structural zero rows.
pub fn cbracket(cfg: Config) -> Vec<VerificationReport> {
    let d = cfg.dim;
    let gens = double_coords(d);
    let mut rng = Sampler::new(cfg.seed);
    let mut rows = Probe::new("cbracket.components");
    let mut index = Probe::new("cbracket.index_form");
    let mut vv = Probe::new("cbracket.vector_vector_form_part");
    let mut ff = Probe::new("cbracket.form_form_vector_part");
    for _ in 0..cfg.samples {
        let s1 = rng.section(&gens, d, cfg.degree);
        let s2 = rng.section(&gens, d, cfg.degree);
        let derived = dft::c_bracket(&s1, &s2).expect("same dimension");
        let comp = dft::c_bracket_components(&s1, &s2).expect("same dimension");
        rows.record_eq(&comp.lift(), &derived);
        index.record_sections(&comp, &dft::c_bracket_index_form(&s1, &s2).expect("same dimension"));
        let v = dft::c_bracket_components(&s1.vector_part(), &s2.vector_part()).expect("same dimension");
        vv.record(v.form_part().lift());
        let f = dft::c_bracket_components(&s1.form_part(), &s2.form_part()).expect("same dimension");
        ff.record(f.vector_part().lift());
    }
    vec![rows.finish(), index.finish(), vv.finish(), ff.finish()]
}

/// `D²φ` against `{μ, {μ, φ}}` and `{D²φ, ψ}` against the strong-constraint
/// pairing.
pub fn strong(cfg: Config) -> Vec<VerificationReport> {
    let d = cfg.dim;
    let gens = double_coords(d);
    let chart = Chart::doubled(d);
    let mut rng = Sampler::new(cfg.seed);
    let mut dd = Probe::new("strong.d_squared");
    let mut pair = Probe::new("strong.pairing");
    for _ in 0..cfg.samples {
        let phi = rng.poly(&gens, cfg.degree);
        let psi = rng.poly(&gens, cfg.degree);
        let explicit = dft::d_squared(d, &phi).expect("sampled double field");
        dd.record_eq(&explicit, &dft::d_squared_derived(d, &phi).expect("sampled double field"));
        let lhs = chart.bracket(&explicit, &psi);
        pair.record_eq(&lhs, &dft::strong_constraint_pair(d, &phi, &psi).expect("sampled double field"));
    }
    vec![dd.finish(), pair.finish()]
}

/// For `x̃`-independent sections, the C-bracket with `p̃` set to zero is
/// the Courant bracket of `TM ⊕ T*M`.
pub fn project(cfg: Config) -> Vec<VerificationReport> {
    let d = cfg.dim;
    let gens = base_coords(d);
    let chart = Chart::doubled(d);
    let tangent = BialgebroidData::tangent(d);
    let mu = dft::project_half(&dft::mu_dft(d));
    let mut rng = Sampler::new(cfg.seed);
    let mut full = Probe::new("project.c_bracket");
    let mut half_mu = Probe::new("project.projected_hamiltonian");
    for _ in 0..cfg.samples {
        let s1 = rng.section(&gens, d, cfg.degree);
        let s2 = rng.section(&gens, d, cfg.degree);
        let classical = courant_bracket(&tangent, &s1, &s2).expect("same dimension").lift();
        let c = dft::project_half(&dft::c_bracket(&s1, &s2).expect("same dimension"));
        full.record_eq(&c, &classical);
        let a = chart.bracket(&chart.bracket(&mu, &s1.lift()), &s2.lift());
        let b = chart.bracket(&chart.bracket(&mu, &s2.lift()), &s1.lift());
        half_mu.record_eq(&(&a - &b).scale(&half()), &classical);
    }
    vec![full.finish(), half_mu.finish()]
}

/// Closure of generalized Lie derivatives on `x`-only sections and scalars.
///
/// `genlie.commutator` checks `[ℒ₁, ℒ₂]φ = ℒ_{[Σ₁,Σ₂]_C}φ` for the operator
/// composition; `genlie.variation_commutator` checks `[δ₁, δ₂]φ =
/// −ℒ_{[Σ₁,Σ₂]_C}φ` for composed gauge variations.
pub fn genlie(cfg: Config) -> Vec<VerificationReport> {
    let d = cfg.dim;
    let gens = base_coords(d);
    let dgens = double_coords(d);
    let mut rng = Sampler::new(cfg.seed);
    let mut op = Probe::new("genlie.commutator");
    let mut var = Probe::new("genlie.variation_commutator");
    let mut idx = Probe::new("genlie.index_positions");
    for _ in 0..cfg.samples {
        let s1 = rng.section(&gens, d, cfg.degree);
        let s2 = rng.section(&gens, d, cfg.degree);
        let phi = rng.poly(&gens, cfg.degree + 1);
        let lc = dft::gen_lie_of_c_bracket(&s1, &s2, &phi).expect("same dimension");
        op.record_eq(&dft::gen_lie_commutator_scalar(&s1, &s2, &phi).expect("same dimension"), &lc);
        var.record_eq(&dft::variation_commutator_scalar(&s1, &s2, &phi).expect("same dimension"), &-lc);
        let s = rng.section(&dgens, d, cfg.degree);
        let w = rng.section(&dgens, d, cfg.degree);
        idx.record_sections(
            &dft::gen_lie_vector(&s, &w).expect("same dimension"),
            &dft::gen_lie_covector(&s, &w).expect("same dimension"),
        );
    }
    vec![op.finish(), var.finish(), idx.finish()]
}

fn matrix_report(name: &str, reports: impl IntoIterator<Item = VerificationReport>) -> VerificationReport {
    reports
        .into_iter()
        .find(|r| !r.passed())
        .map(|r| VerificationReport {
            name: name.to_string(),
            residual: r.residual,
        })
        .unwrap_or_else(|| VerificationReport::matrix(name, RatMatrix::zeros(0, 0)))
}

/// `HηH = η` for random `(G, B)` of every dimension up to `cfg.dim`, and
/// `η² = 1`.
pub fn metric(cfg: Config) -> Vec<VerificationReport> {
    let mut rng = Sampler::new(cfg.seed);
    let mut compat = Vec::new();
    let mut square = Vec::new();
    for n in 0..cfg.samples {
        let d = n % cfg.dim + 1;
        let (g, b) = rng.metric_pair(d);
        let h = generalized_metric(&g, &b).expect("sampled G is invertible");
        compat.push(check_odd_compat(&h));
        let e = eta(d);
        square.push(VerificationReport::matrix("", &(&e * &e) - &RatMatrix::identity(2 * d)));
    }
    vec![matrix_report("metric.odd_compat", compat), matrix_report("metric.eta_square", square)]
}

/// `HηH = η` for a given `(G, B)`.
pub fn metric_given(g: &RatMatrix, b: &RatMatrix) -> Result<Vec<VerificationReport>, superbracket_core::metric::MetricError> {
    let h = generalized_metric(g, b)?;
    Ok(vec![check_odd_compat(&h)])
}

/// `parse(print(e)) = e` on random normalized expressions over every
/// generator family.
pub fn round_trip(cfg: Config) -> Vec<VerificationReport> {
    let mut rng = Sampler::new(cfg.seed);
    let mut probe = Probe::new("io.round_trip");
    let charts = [Chart::base(cfg.dim), Chart::doubled(cfg.dim), Chart::dual(cfg.dim)];
    for n in 0..cfg.samples {
        let e = rng.expression(charts[n % 3], cfg.degree);
        match parse_expression(&e.to_string(), None) {
            Ok(back) => probe.record_eq(&back, &e),
            Err(_) => probe.record(e),
        }
    }
    vec![probe.finish()]
}

/// A flat bialgebroid with constant flux `H_123 = 2`.
pub fn constant_flux() -> (BialgebroidData, FluxData) {
    let mut h = vec![Expression::zero(); 27];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                h[(i * 3 + j) * 3 + k] = Expression::int(2 * algebroid::levi_civita(i, j, k));
            }
        }
    }
    let flux = FluxData::new(3, h, vec![Expression::zero(); 27]).expect("ε is antisymmetric");
    (BialgebroidData::tangent(3), flux)
}

/// Options for [`selftest`].
#[derive(Clone, Copy, Debug, Default)]
pub struct SelftestOptions {
    pub quick: bool,
    /// Runs the Poisson-law suites on a chart with a corrupted sign table.
    pub inject_fault: bool,
}

/// Named groups of reports in a fixed order.
/// One named selftest group, evaluated on demand.
pub type Group = (&'static str, Box<dyn Fn() -> Vec<VerificationReport>>);

/// The selftest groups with their fixed seeds, not yet run.
pub fn selftest_groups(opts: SelftestOptions) -> Vec<Group> {
    let n = move |full: usize, quick: usize| if opts.quick { quick } else { full };
    let chart = move |c: Chart| if opts.inject_fault { c.with_corrupted_sign_table() } else { c };
    vec![
        ("kernel", Box::new(move || kernel(Config::new(2, 2, n(100, 20), 1)))),
        ("poisson.base", Box::new(move || poisson_laws(chart(Chart::base(2)), n(500, 100), 3, 2))),
        ("poisson.doubled", Box::new(move || poisson_laws(chart(Chart::doubled(2)), n(500, 100), 3, 3))),
        ("bialgebroid", Box::new(|| bialgebroid(&algebroid::so3_lie_poisson()))),
        (
            "courant",
            Box::new(move || courant(&algebroid::so3_lie_poisson(), Config::new(3, 2, n(10, 2), 4))),
        ),
        (
            "proto",
            Box::new(|| {
                let (flat, flux) = constant_flux();
                proto(&flat, &flux).expect("dimensions agree")
            }),
        ),
        ("cbracket", Box::new(move || cbracket(Config::new(2, 2, n(20, 5), 5)))),
        ("strong", Box::new(move || strong(Config::new(3, 2, n(20, 5), 6)))),
        ("project", Box::new(move || project(Config::new(2, 2, n(10, 3), 7)))),
        ("genlie", Box::new(move || genlie(Config::new(2, 2, n(10, 3), 8)))),
        ("metric", Box::new(move || metric(Config::new(3, 0, n(10, 3), 9)))),
        ("io", Box::new(move || round_trip(Config::new(3, 3, n(1000, 200), 10)))),
    ]
}

/// Runs every selftest group.
pub fn selftest(opts: SelftestOptions) -> Vec<(&'static str, Vec<VerificationReport>)> {
    selftest_groups(opts).into_iter().map(|(name, run)| (name, run())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_selftest_is_green() {
        for (_, reports) in selftest(SelftestOptions { quick: true, inject_fault: false }) {
            for r in reports {
                assert!(r.passed(), "{r}");
            }
        }
    }

    #[test]
    fn injected_fault_is_caught() {
        let groups = selftest(SelftestOptions { quick: true, inject_fault: true });
        let failed: Vec<_> = groups.iter().flat_map(|(_, r)| r).filter(|r| !r.passed()).collect();
        assert!(!failed.is_empty());
        assert!(failed.iter().all(|r| r.name.starts_with("poisson.")));
    }
}
