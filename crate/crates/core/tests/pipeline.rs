mod common;

use common::oracle;
use curve_ideal::border::{border_basis_approx, border_basis_exact, ApproxOptions};
use curve_ideal::eval::exact_points_from_integers;
use curve_ideal::minimize::{minimal_basis, minimal_basis_approx, minimal_basis_border};
use curve_ideal::recovery::{rationalize_generators, verify_by_substitution, RationalizationPolicy};
use curve_ideal::sampler::{integer_params, sample_exact_rational, sample_roots_of_unity};
use curve_ideal::{GeneratorKind, MonomialSet, DEFAULT_TOL};

#[test]
fn sextic_exact_minimizers_agree() {
    let p = common::sextic();
    let pts = sample_exact_rational(&p, &integer_params(1, 31)).unwrap();
    let run = border_basis_exact(&pts, 5).unwrap();
    let general = minimal_basis(&run.complement, &run.generators).unwrap();
    let border = minimal_basis_border(&run.complement, &run.generators).unwrap();
    assert_eq!(general.kept, border.kept);
    assert_eq!(general.counts(5), [0, 0, 4, 0, 0]);
    assert!(border.warnings.is_empty(), "{:?}", border.warnings);
    assert!(verify_by_substitution(&general.minimal, &p).unwrap().passed());
}

#[test]
fn twisted_cubic_round_trip_through_rationalization() {
    let p = common::twisted_cubic();
    let pts = sample_roots_of_unity(&p, 7).unwrap();
    let run = border_basis_approx(&pts, 2, &ApproxOptions::default()).unwrap();
    assert_eq!(run.complement.sizes(), [1, 4, 7]);
    let min = minimal_basis_approx(&run.complement, &run.generators, DEFAULT_TOL).unwrap();
    let rec = rationalize_generators(&min.minimal, &RationalizationPolicy::default()).unwrap();
    assert!(rec.is_complete());
    assert!(verify_by_substitution(&rec.exact, &p).unwrap().passed());

    let support = MonomialSet::enumerate(3, 2).unwrap();
    let rows = |fs: &[curve_ideal::HomogeneousPolynomial<_>]| -> Vec<Vec<_>> {
        fs.iter().map(|f| f.coeffs(&support).unwrap()).collect()
    };
    let mut stacked = rows(rec.exact.degree(2));
    stacked.extend(rows(&common::twisted_cubic_quadrics()));
    assert_eq!(oracle::rational_rank(&stacked), 3);
}

#[test]
fn intermediate_generators_minimize_to_the_same_cubics() {
    let p = common::sextic();
    let pts = sample_roots_of_unity(&p, 31).unwrap();
    let options = ApproxOptions {
        border_form: false,
        ..ApproxOptions::default()
    };
    let run = border_basis_approx(&pts, 4, &options).unwrap();
    assert_eq!(run.generators.kind(), GeneratorKind::Intermediate);
    let min = minimal_basis_approx(&run.complement, &run.generators, DEFAULT_TOL).unwrap();
    assert_eq!(min.counts(4), [0, 0, 4, 0]);
}

#[test]
fn planar_points_are_flagged_degenerate() {
    let rows: Vec<Vec<i64>> = (0..6).map(|t| vec![1, t, t * t, 0]).collect();
    let pts = exact_points_from_integers(&rows).unwrap();
    let run = border_basis_exact(&pts, 2).unwrap();
    assert!(run.diagnostics.degenerate);
    assert_eq!(run.diagnostics.linear_forms, 1);
    assert_eq!(run.generators.counts(2)[0], 1);

    let approx = border_basis_approx(&pts.to_approx().unwrap(), 2, &ApproxOptions::default()).unwrap();
    assert!(approx.diagnostics.degenerate);
    assert_eq!(approx.complement.sizes(), run.complement.sizes());
}

#[test]
fn imposed_rank_disagreeing_with_spectrum_is_warned() {
    let pts = sample_roots_of_unity(&common::twisted_cubic(), 7).unwrap();
    let options = ApproxOptions {
        ranks: [(2, 6)].into_iter().collect(),
        ..ApproxOptions::default()
    };
    let run = border_basis_approx(&pts, 2, &options).unwrap();
    assert_eq!(run.complement.sizes(), [1, 4, 6]);
    assert!(run.diagnostics.all_warnings().any(|w| w.contains("imposed rank 6")));
}

#[test]
fn exact_sizes_follow_the_hilbert_function() {
    // five points on a plane conic plus three on a line leaving the plane
    let mut rows: Vec<Vec<i64>> = (0..5).map(|t| vec![1, t, t * t, 0]).collect();
    rows.extend((1..4).map(|t| vec![0, 0, t, 1]));
    let pts = exact_points_from_integers(&rows).unwrap();
    let run = border_basis_exact(&pts, 4).unwrap();
    for k in 1..=4u32 {
        assert_eq!(run.complement.level(k as usize).len(), oracle::hilbert_function(&rows, k), "degree {k}");
    }
}
