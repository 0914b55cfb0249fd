//! Report builders for the analysis subcommands.

use antilin::antiop::kernel_range_residual;
use antilin::blockops::{
    complement, correspondence_scan, pivot_ok, rank_link, structured_samples, verify_factorization,
    BlockAntilinearMatrix, Factorization, Selector,
};
use antilin::extensions::{check_extension, minimal_span, word_span_oracle, ExtensionProblem};
use antilin::matkernel::{c, conj_vec, inner, rank, CVec, Tolerances, C64};
use antilin::numrange::{nr_disk, nr_value, sampled_sup, witness_convex, witness_disk, WitnessRoute};
use antilin::opfile::{Loaded, OperatorFile};
use antilin::report::{CheckRecord, Report};
use antilin::sampling;
use antilin::spectra::{antilinear_spectrum, is_in_spectrum, spectrum_crosscheck};
use antilin::structure::{
    c_normal_criterion, check_polar_commutation, identity_suite, is_normal, is_selfadjoint, moore_penrose,
    polar, power_commute,
};
use antilin::{AntilinearOperator, Error};
use serde_json::json;

/// Tolerance for the normality decision used by the normal-only checks.
const NORMAL_TOL: f64 = 1e-8;
const PAIRING_SAMPLES: usize = 100;
const SUP_SAMPLES: usize = 2000;
const SCAN_SAMPLES: usize = 200;

pub enum Job {
    Inspect,
    Identities,
    Spectrum,
    Numrange(Vec<C64>),
    Block(Vec<C64>),
    Extension,
}

pub fn run(job: Job, text: &str, command: Vec<String>, tol: Tolerances, seed: u64) -> Result<Report, String> {
    let file = OperatorFile::parse(text).map_err(|e| e.to_string())?;
    let loaded = file.load(&tol).map_err(|e| e.to_string())?;
    let mut report = Report::new(command, Some(file.digest()), tol);
    let result = match job {
        Job::Inspect => inspect(&mut report, &loaded.operator(), &tol, seed),
        Job::Identities => identities(&mut report, &loaded.operator(), &tol),
        Job::Spectrum => spectrum(&mut report, &square(loaded.operator())?, &tol),
        Job::Numrange(targets) => numrange(&mut report, &square(loaded.operator())?, &targets, &tol, seed),
        Job::Block(mus) => match &loaded {
            Loaded::Block(blk) => block(&mut report, blk, &mus, &tol, seed),
            _ => return Err("the block command needs an operator file of kind \"block\"".into()),
        },
        Job::Extension => match &loaded {
            Loaded::Extension(p) => extension(&mut report, p, &tol),
            _ => return Err("the extension command needs an operator file of kind \"extension\"".into()),
        },
    };
    result.map_err(|e| e.to_string())?;
    report.finalize();
    Ok(report)
}

fn square(t: AntilinearOperator) -> Result<AntilinearOperator, String> {
    if t.is_square() {
        Ok(t)
    } else {
        Err(format!("operator must be square, got {}x{}", t.dim_out(), t.dim_in()))
    }
}

/// Largest `|conj(<T x, y>) - <x, T# y>|` over seeded vector pairs.
fn pairing_residual(t: &AntilinearOperator, seed: u64) -> Result<f64, Error> {
    let mut rng = sampling::rng(seed);
    let sharp = t.adjoint();
    let mut worst: f64 = 0.0;
    for _ in 0..PAIRING_SAMPLES {
        let x = sampling::unit_vector(&mut rng, t.dim_in());
        let y = sampling::unit_vector(&mut rng, t.dim_out());
        let lhs = inner(&t.apply(&x)?, &y).conj();
        let rhs = inner(&x, &sharp.apply(&y)?);
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

fn inspect(report: &mut Report, t: &AntilinearOperator, tol: &Tolerances, seed: u64) -> Result<(), Error> {
    let scale = 1.0 + t.norm();
    report.note("dims", [t.dim_out(), t.dim_in()]);
    report.note("norm", t.norm());
    report.note("rank", rank(t.canon(), tol));
    report.push(CheckRecord::new("adjoint_pairing", pairing_residual(t, seed)?, tol.rtol * scale));
    report.push(CheckRecord::holds("adjoint_biduality", t.adjoint().adjoint() == *t));
    report.push(CheckRecord::new("kernel_range_complement", kernel_range_residual(t, tol), tol.sing));

    let p = polar(t, tol);
    report.push(CheckRecord::new("polar_reconstruction", p.reconstruction_residual(t), 10.0 * tol.rtol * scale));
    report.push(CheckRecord::new("polar_partial_isometry", p.partial_isometry_residual(), tol.sing));
    report.push(CheckRecord::new("polar_initial_space", p.initial_space_residual(tol), tol.sing));
    report.push(CheckRecord::new("polar_final_space", p.final_space_residual(t, tol), tol.sing));
    report.note("modulus_trace", p.modulus.trace().re);

    for (name, residual) in moore_penrose(t, tol).residuals {
        report.push(CheckRecord::new(format!("mp_{name}"), residual, tol.sing));
    }

    if t.is_square() {
        let n = is_normal(t, NORMAL_TOL)?;
        report.note("normal", n.normal);
        report.note("normality_residual", n.residual);
        report.push(CheckRecord::holds("normality_criteria_agree", n.criteria_agree()));
        let (selfadjoint, sa_residual) = is_selfadjoint(t, tol.rtol)?;
        report.note("selfadjoint", selfadjoint);
        report.note("selfadjoint_residual", sa_residual);
        report.note("numerical_range_radius", nr_disk(t, tol)?.radius);
        report.note("spectrum_radii", antilinear_spectrum(t, tol)?.radii);
    }
    Ok(())
}

fn identities(report: &mut Report, t: &AntilinearOperator, tol: &Tolerances) -> Result<(), Error> {
    let suite = identity_suite(t, tol, tol.sing)?;
    for (name, residual) in &suite.residuals {
        report.push(CheckRecord::new(format!("identity_{name}"), *residual, tol.sing));
    }
    let eq = &suite.range_equality;
    report.note("projectors_commute", eq.projectors_equal);
    report.note("ranges_equal", eq.ranges_equal);
    report.push(CheckRecord::holds("range_equality_consistent", eq.consistent()));

    if t.is_square() {
        let scale = 1.0 + t.norm();
        let normality = is_normal(t, NORMAL_TOL)?;
        let cn = c_normal_criterion(t, NORMAL_TOL, tol)?;
        report.note("normal", normality.normal);
        report.note("c_normal_residual", cn.residual);
        report.push(CheckRecord::holds("c_normal_agrees", cn.normal == normality.normal));
        report.push(CheckRecord::holds("normality_criteria_agree", normality.criteria_agree()));
        if normality.normal {
            let comm = check_polar_commutation(t, NORMAL_TOL, tol)?;
            report.push(CheckRecord::new("polar_commutation", comm, 10.0 * tol.rtol * scale));
            for k in 1..=3 {
                let r = power_commute(t, k, NORMAL_TOL)?;
                report.push(CheckRecord::new(
                    format!("power_commute_{k}"),
                    r,
                    tol.sing * scale.powi(2 * k as i32),
                ));
            }
        }
    }
    Ok(())
}

fn spectrum(report: &mut Report, t: &AntilinearOperator, tol: &Tolerances) -> Result<(), Error> {
    let desc = antilinear_spectrum(t, tol)?;
    report.note("spectrum_radii", &desc.radii);
    report.note("spectrum_kind", format!("{:?}", desc.kind));
    let cross = spectrum_crosscheck(t, 8, 3, tol)?;
    report.note("probes_on_circle", cross.on_circle());
    report.note("probes_off_circle", cross.off_circle());
    report.push(CheckRecord::new("crosscheck_disagreements", cross.disagreements() as f64, 0.0));

    // Every probe's membership must be invariant under rotation.
    let op = t.to_real_linear();
    let mut broken = 0usize;
    for probe in &cross.probes {
        for k in 1..6 {
            let rotated = probe.lambda * C64::from_polar(1.0, 1.1 * k as f64);
            if is_in_spectrum(&op, rotated, tol)? != probe.observed {
                broken += 1;
            }
        }
    }
    report.push(CheckRecord::new("phase_invariance_violations", broken as f64, 0.0));
    Ok(())
}

fn numrange(report: &mut Report, t: &AntilinearOperator, targets: &[C64], tol: &Tolerances, seed: u64) -> Result<(), Error> {
    let disk = nr_disk(t, tol)?;
    let n = t.dim_in();
    report.note("radius", disk.radius);
    report.note("circle_only", disk.circle_only);
    let sup = sampled_sup(t, SUP_SAMPLES, seed)?;
    report.note("sampled_sup", sup.sup);
    report.push(CheckRecord::new("sampled_sup_upper", sup.sup - disk.radius, 1e-8));
    report.push(CheckRecord::new("sampled_sup_lower", disk.radius - sup.sup, 0.05 * disk.radius));

    for (k, &target) in targets.iter().enumerate() {
        let name = format!("witness_{k}");
        let x = if n == 1 {
            scalar_witness(t, target, disk.radius)
        } else {
            match witness_disk(t, target, tol) {
                Ok(x) => Some(x),
                Err(Error::OutsideRange { .. }) => None,
                Err(e) => return Err(e),
            }
        };
        match x {
            Some(x) => report.push(CheckRecord::new(name, (nr_value(t, &x)? - target).norm(), 1e-8)),
            None => report.push(CheckRecord::new(name, f64::NAN, 1e-8)),
        }
    }

    if n >= 2 {
        let mut rng = sampling::rng(seed ^ 0x9e37_79b9_7f4a_7c15);
        let x1 = sampling::unit_vector(&mut rng, n);
        let x2 = sampling::unit_vector(&mut rng, n);
        let lambda = sampling::uniform(&mut rng, 0.0, 1.0);
        let w = witness_convex(t, &x1, &x2, lambda, tol)?;
        let route = match w.route {
            WitnessRoute::Construction { .. } => "construction",
            WitnessRoute::Fallback => "fallback",
            WitnessRoute::Degenerate => "degenerate",
        };
        report.note("convex_witness_route", route);
        report.push(CheckRecord::new("convex_witness", (nr_value(t, &w.vector)? - w.target).norm(), 1e-7));
    }
    Ok(())
}

/// On C^1 the range is the circle `|z| = |a|`: `a conj(x)^2 = target`.
fn scalar_witness(t: &AntilinearOperator, target: C64, radius: f64) -> Option<CVec> {
    if (target.norm() - radius).abs() > 1e-8 * (1.0 + radius) {
        return None;
    }
    let a = t.canon()[(0, 0)];
    let z = if radius == 0.0 { c(1.0, 0.0) } else { (target / a).sqrt() };
    let x = CVec::from_element(1, z / c(z.norm(), 0.0));
    Some(conj_vec(&x))
}

fn block(report: &mut Report, blk: &BlockAntilinearMatrix, mus: &[C64], tol: &Tolerances, seed: u64) -> Result<(), Error> {
    report.note("block_dims", [blk.n(), blk.m()]);
    report.note("spectrum_radii", antilinear_spectrum(&blk.flatten(), tol)?.radii);
    for (k, &mu) in mus.iter().enumerate() {
        for which in Factorization::ALL {
            let selector = which.selector();
            let key = format!("{}_mu{k}", which.name());
            if !pivot_ok(blk, selector, mu, tol)? {
                report.note(format!("{key}_skipped"), format!("pivot {} not invertible", selector.pivot()));
                continue;
            }
            let comp = complement(blk, selector, mu, tol)?;
            report.note(format!("{selector}_mu{k}_pivot_min_singular"), comp.pivot_condition);
            report.note(format!("{selector}_mu{k}_lin"), pairs(comp.op.lin()));
            report.note(format!("{selector}_mu{k}_anti"), pairs(comp.op.anti()));
            report.push(CheckRecord::new(
                format!("factorization_{key}"),
                verify_factorization(blk, mu, which, tol)?,
                tol.sing,
            ));
        }
    }

    let mut samples = structured_samples(blk, SCAN_SAMPLES, seed, tol)?;
    samples.extend_from_slice(mus);
    let scan = correspondence_scan(blk, &samples, tol)?;
    report.note("scan_samples", samples.len());
    for (part, tallies) in [("spectrum", &scan.spectrum), ("point_spectrum", &scan.point_spectrum)] {
        for (corr, tally) in tallies {
            let key = format!("{}_{part}", corr.name());
            report.note(
                format!("{key}_tally"),
                json!({"agreements": tally.agreements, "disagreements": tally.disagreements, "skipped": tally.skipped}),
            );
            report.push(CheckRecord::new(format!("{key}_disagreements"), tally.disagreements as f64, 0.0));
        }
    }

    if pivot_ok(blk, Selector::S2, c(0.0, 0.0), tol)? {
        let link = rank_link(blk, tol)?;
        report.note("rank_full", link.rank_full);
        report.note("rank_s2", link.rank_s2);
        report.note("relative_bound", link.relative_bound);
        report.push(CheckRecord::holds("rank_link_s2", link.holds_s2));
        if let (Some(r), Some(ok)) = (link.rank_s1, link.holds_s1) {
            report.note("rank_s1", r);
            report.push(CheckRecord::holds("rank_link_s1", ok));
        }
    } else {
        report.note("rank_link_skipped", "A not invertible");
    }
    Ok(())
}

fn pairs(m: &antilin::CMat) -> Vec<[f64; 2]> {
    antilin::opfile::encode(m)
}

fn extension(report: &mut Report, p: &ExtensionProblem, tol: &Tolerances) -> Result<(), Error> {
    let bound = tol.sing * (1.0 + p.ambient().norm());
    let check = check_extension(p);
    if p.restricted().is_some() {
        report.push(CheckRecord::new("extension_residual", check.residual, bound));
    }
    report.note("subspace_invariance_residual", check.range_residual);

    let normality = is_normal(p.ambient(), NORMAL_TOL)?;
    report.push(CheckRecord::holds("ambient_normal", normality.normal));
    if !normality.normal {
        return Ok(());
    }
    let span = minimal_span(p, NORMAL_TOL, tol)?;
    let oracle = word_span_oracle(p, 2 * p.dim(), NORMAL_TOL, tol)?;
    report.note("g_dim", span.g_dim);
    report.note("is_minimal", span.is_minimal);
    report.note("stabilized_at", span.stabilized_at);
    report.note("oracle_dim", oracle);
    report.push(CheckRecord::new("span_oracle_gap", span.g_dim.abs_diff(oracle) as f64, 0.0));
    report.push(CheckRecord::holds("span_stabilized", !span.hit_cap));
    Ok(())
}
