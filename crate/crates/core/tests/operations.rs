//! Documented examples for the public operations, with enumeration as the oracle where one applies.

use std::collections::BTreeMap;

use gpat_core::closed_form::{f12k_r_series, f1_23_r_series, r_series, u_poly};
use gpat_core::enumerate::{
    distribution, distribution_restricted, generate_avoiders, generate_avoiders_filter, table,
};
use gpat_core::genfunc::{
    eval_cf, expand_surd, solve_fixed_point, surd_for, CfShape, CfSpec, Equation,
};
use gpat_core::{
    avoids, count_occurrences, gf_series, parse_pattern, GfName, PatternError, Permutation, Route,
    Series, SeriesError, Window, DEFAULT_BUDGET,
};
use num_bigint::BigUint;
use num_rational::BigRational;

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn qs(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| q(x)).collect()
}

fn dist(pairs: &[(u64, u64)]) -> BTreeMap<u64, BigUint> {
    pairs.iter().map(|&(r, c)| (r, BigUint::from(c))).collect()
}

fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

/// Coefficients of `x^n` for `y^0..=y_deg`.
fn x_row(s: &Series, n: usize) -> Vec<BigRational> {
    (0..=s.window().y_deg)
        .map(|r| s.coefficient(n, r).unwrap())
        .collect()
}

#[test]
fn pattern_parsing() {
    assert_eq!(
        parse_pattern("23-1").unwrap().blocks(),
        vec![vec![2, 3], vec![1]]
    );
    assert_eq!(
        parse_pattern("1-3-2").unwrap().blocks(),
        vec![vec![1], vec![3], vec![2]]
    );
    assert!(parse_pattern("").unwrap().is_empty());
    assert!(matches!(
        parse_pattern("12-2"),
        Err(PatternError::Duplicate { .. })
    ));
}

#[test]
fn occurrence_counts() {
    let p = perm("35421");
    assert_eq!(
        count_occurrences(&p, &parse_pattern("23-1").unwrap()),
        BigUint::from(2u32)
    );
    assert_eq!(
        count_occurrences(&p, &parse_pattern("2-3-1").unwrap()),
        BigUint::from(4u32)
    );
    let id = Permutation::identity(7);
    assert_eq!(
        count_occurrences(&id, &parse_pattern("12").unwrap()),
        BigUint::from(6u32)
    );
    assert_eq!(
        count_occurrences(&p, &parse_pattern("").unwrap()),
        BigUint::from(1u32)
    );
    let classical = parse_pattern("1-3-2").unwrap();
    assert!(!avoids(&perm("132"), &classical));
    assert!(avoids(&perm("321"), &classical));
    assert!(!avoids(&p, &parse_pattern("23-1").unwrap()));
}

#[test]
fn avoider_generation() {
    assert_eq!(generate_avoiders(0).len(), 1);
    let mut three: Vec<String> = generate_avoiders(3)
        .iter()
        .map(ToString::to_string)
        .collect();
    three.sort();
    assert_eq!(three, ["123", "213", "231", "312", "321"]);
    assert_eq!(generate_avoiders(6).len(), 132);
    assert_eq!(generate_avoiders_filter(4).unwrap().len(), 14);
    assert_eq!(generate_avoiders_filter(0).unwrap().len(), 1);
}

#[test]
fn distributions() {
    let p = |s: &str| parse_pattern(s).unwrap();
    assert_eq!(distribution(&p("12"), 3), dist(&[(0, 1), (1, 3), (2, 1)]));
    assert_eq!(distribution(&p("123"), 4), dist(&[(0, 9), (1, 4), (2, 1)]));
    assert_eq!(distribution(&p(""), 5), dist(&[(1, 42)]));
    assert_eq!(
        distribution_restricted(&p("123"), &p("231"), 4),
        dist(&[(0, 4), (1, 5)])
    );
    assert_eq!(
        distribution_restricted(&p("123"), &p("231"), 3),
        dist(&[(0, 3), (1, 1)])
    );
    assert_eq!(
        distribution_restricted(&p(""), &p("12"), 3),
        dist(&[(0, 1), (1, 3), (2, 1)])
    );

    let t = table(&p("231"), 4, 3, None, DEFAULT_BUDGET).unwrap();
    assert_eq!(t.rows[4][..2], [BigUint::from(8u32), BigUint::from(6u32)]);
    let t = table(&p("1-23"), 5, 0, None, DEFAULT_BUDGET).unwrap();
    let col: Vec<BigUint> = t.rows.iter().map(|r| r[0].clone()).collect();
    assert_eq!(col, [1u32, 1, 2, 4, 9, 21].map(BigUint::from));
}

#[test]
fn series_ring_examples() {
    let w = Window::new(4, 2);
    let xy = Series::monomial(q(1), 1, 1, w);
    let one = Series::one(w);
    assert_eq!(&(&one + &xy) * &(&one - &xy), &one - &(&xy * &xy));
    let x1 = Series::x(Window::new(1, 0));
    assert!((&x1 * &x1).is_zero());
    let s = Series::from_x_coeffs(&qs(&[1, 1, 1]), 4);
    assert_eq!(s.pow(2).y_slice(0).unwrap(), qs(&[1, 2, 3, 2, 1]));
}

#[test]
fn reciprocal_and_root_examples() {
    let w = Window::new(6, 0);
    let geo = Series::from_x_coeffs(&qs(&[1, -1]), 6)
        .reciprocal()
        .unwrap();
    assert_eq!(geo.y_slice(0).unwrap(), qs(&[1; 7]));
    let den = Series::from_x_coeffs(&qs(&[1, -1, -1]), 6);
    let fib = den.reciprocal().unwrap();
    assert_eq!(fib.y_slice(0).unwrap(), qs(&[1, 1, 2, 3, 5, 8, 13]));
    assert_eq!(&fib * &den, Series::one(w));
    assert!(matches!(
        Series::x(w).reciprocal(),
        Err(SeriesError::NonUnitConstant { .. })
    ));

    for (coeffs, want) in [
        (vec![1, -2, 1], vec![1, -1, 0, 0, 0, 0, 0]),
        (vec![1, -4], vec![1, -2, -2, -4, -10, -28, -84]),
        (vec![1, -2, -3], vec![1, -1, -2, -2, -4, -8, -18]),
    ] {
        let s = Series::from_x_coeffs(&qs(&coeffs), 6);
        let root = s.sqrt_unit().unwrap();
        assert_eq!(&root * &root, s);
        assert_eq!(root.y_slice(0).unwrap(), qs(&want));
    }
}

#[test]
fn division_substitution_and_access() {
    let w = Window::new(3, 2);
    let s = Series::from_terms([(1, 1, q(2)), (2, 1, q(4))], w);
    let d = s.monomial_divide(1, 1).unwrap();
    assert_eq!(
        d,
        Series::from_terms([(0, 0, q(2)), (1, 0, q(4))], Window::new(2, 1))
    );
    let x2 = Series::monomial(q(1), 2, 0, w);
    assert!(matches!(
        x2.monomial_divide(1, 1),
        Err(SeriesError::NotDivisible { .. })
    ));

    let w = Window::new(3, 3);
    let s = Series::from_terms([(0, 0, q(1)), (1, 0, q(1))], w);
    assert_eq!(
        s.substitute_x_scaled(2),
        Series::from_terms([(0, 0, q(1)), (1, 2, q(1))], w)
    );
    let x2 = Series::monomial(q(1), 2, 0, w);
    assert_eq!(x2.substitute_x_scaled(1), Series::monomial(q(1), 2, 2, w));
    assert_eq!(s.substitute_x_scaled(0), s);

    let geo = Series::from_x_coeffs(&qs(&[1, -1]), 5)
        .reciprocal()
        .unwrap();
    assert_eq!(geo.coefficient(5, 0).unwrap(), q(1));
    let m = Series::monomial(q(1), 1, 3, w);
    assert_eq!(m.coefficient(1, 3).unwrap(), q(1));
    assert!(matches!(
        m.coefficient(4, 0),
        Err(SeriesError::OutsideWindow { .. })
    ));
}

#[test]
fn continued_fraction_examples() {
    let cf = |shape, k, w: Window| {
        eval_cf::<BigRational>(&CfSpec::new(shape, k, w.x_deg + 4).unwrap(), w).unwrap()
    };
    assert_eq!(
        x_row(&cf(CfShape::AscentChain, 2, Window::new(3, 2)), 3),
        qs(&[1, 3, 1])
    );
    let full = cf(CfShape::AscentChain, 3, Window::new(5, 10));
    assert_eq!(full.y_totals(), qs(&[1, 1, 2, 5, 14, 42]));
    assert_eq!(
        cf(CfShape::Uniform, 0, Window::new(5, 10)).y_totals(),
        qs(&[1, 1, 2, 4, 9, 21])
    );
    assert_eq!(
        x_row(&cf(CfShape::DoubledLevels, 0, Window::new(3, 1)), 3),
        qs(&[4, 1])
    );
}

#[test]
fn functional_equation_examples() {
    let fp = |eq, w| solve_fixed_point::<BigRational>(eq, w).unwrap();
    assert_eq!(
        x_row(&fp(Equation::IncreasingRun(3), Window::new(4, 2)), 4),
        qs(&[9, 4, 1])
    );
    let f231 = fp(Equation::Consecutive231, Window::new(8, 8));
    assert_eq!(f231.y_totals(), qs(&[1, 1, 2, 5, 14, 42, 132, 429, 1430]));
    assert_eq!(
        x_row(&fp(Equation::Restricted231, Window::new(4, 1)), 4),
        qs(&[4, 5])
    );
    let f1 = fp(Equation::OneThenAscent, Window::new(4, 0));
    assert_eq!(f1.y_slice(0).unwrap(), qs(&[1, 1, 2, 4, 9]));
}

#[test]
fn surd_examples() {
    let sx = |name| {
        expand_surd(&surd_for::<BigRational>(name).unwrap(), Window::new(3, 2))
            .unwrap()
            .0
    };
    assert_eq!(x_row(&sx(GfName::F12k(2)), 3), qs(&[1, 3, 1]));
    assert_eq!(x_row(&sx(GfName::F213), 3), qs(&[4, 1, 0]));
    let full = expand_surd(
        &surd_for::<BigRational>(GfName::G213Avoid123).unwrap(),
        Window::new(3, 6),
    )
    .unwrap()
    .0;
    assert_eq!(full.y_totals(), qs(&[1, 1, 2, 4]));
}

#[test]
fn routes_and_aliases() {
    let w = Window::new(7, 4);
    let g = |n, r| gf_series(n, r, w, None).unwrap();
    assert_eq!(g(GfName::F321, Route::Feq), g(GfName::F123, Route::Feq));
    assert_eq!(
        g(GfName::Fkdots21(4), Route::Feq),
        g(GfName::F12dots(4), Route::Feq)
    );
    let cf = g(GfName::F12k(3), Route::Cf);
    let closed = g(GfName::F12k(3), Route::Closed);
    assert_eq!(cf.y_slice(0).unwrap(), closed.y_slice(0).unwrap());
    assert_eq!(closed.window(), Window::new(7, 1));
}

#[test]
fn rational_slices() {
    let x = |v: &[i64]| qs(v);
    assert_eq!(
        r_series::<BigRational>(1, 5).y_slice(0).unwrap(),
        x(&[1, 0, 0, 0, 0, 0])
    );
    assert_eq!(
        r_series::<BigRational>(3, 5).y_slice(0).unwrap(),
        x(&[1, 1, 2, 4, 8, 16])
    );
    for k in 3..=5 {
        let cf = gf_series(GfName::F12k(k), Route::Cf, Window::new(9, 0), None).unwrap();
        assert_eq!(
            r_series::<BigRational>(k, 9).y_slice(0).unwrap(),
            cf.y_slice(0).unwrap()
        );
    }
    assert_eq!(
        f12k_r_series::<BigRational>(3, 1, 5)
            .unwrap()
            .y_slice(0)
            .unwrap(),
        x(&[0, 0, 0, 1, 5, 17])
    );
    let u3 = u_poly(3).to_series::<BigRational>(8);
    let u4 = u_poly(4).to_series::<BigRational>(8);
    assert_eq!(
        f12k_r_series::<BigRational>(4, 0, 8).unwrap(),
        u3 * u4.reciprocal().unwrap()
    );

    let r2 = f1_23_r_series::<BigRational>(2, 6)
        .unwrap()
        .y_slice(0)
        .unwrap();
    assert_eq!(r2[..6], x(&[0, 0, 0, 0, 1, 3])[..]);
    let one = distribution(&parse_pattern("1-23").unwrap(), 3);
    let r1 = f1_23_r_series::<BigRational>(1, 3)
        .unwrap()
        .y_slice(0)
        .unwrap();
    assert_eq!(r1[3], BigRational::from_integer(one[&1].clone().into()));
}
