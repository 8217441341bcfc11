//! Fast path and oracle against values computed independently with mpmath.

use certgamma::lngamma::{eval_lngamma, Request};
use certgamma::oracle::{oracle_lngamma, oracle_theta};
use certgamma::series::ComplexPoint;
use certgamma::theta::{eval_theta, Terms, ThetaVariant};
use certgamma::{ExtComplex, ExtReal};

const LNGAMMA: [(f64, f64, &str, &str); 4] = [
    (3.0, 4.0, "-1.756626784603784110530604181623275785157", "4.742664438034657928194889407550022740888"),
    (-2.5, 0.5, "-0.9350856212982774786825883849413803034468", "-8.870962885247459198645824716484508629678"),
    (0.25, 100.0, "-157.3119859115198043715206926183313527443", "360.124423683928990239029304979794796987"),
    (1000.0, -1.0, "5905.219922959181336892660126709877247255", "-6.907255362482178618629442777687681485923"),
];

const THETA: [(f64, &str); 4] = [
    (0.5, "-1.125052715405562861575901085071087454762"),
    (2.0, "-2.525910918816132690012872726405365083636"),
    (20.0, "1.186894808444484044812756549489680051378"),
    (100.0, "87.97216523178721962548312911374869086857"),
];

fn ext(s: &str) -> ExtReal {
    ExtReal::parse(s, 50).unwrap()
}

#[test]
fn oracle_lngamma_matches_reference() {
    for (re, im, vr, vi) in LNGAMMA {
        let v = oracle_lngamma(&ExtComplex::from_f64(re, im, 50), 40).unwrap();
        let err = (v.re() - &ext(vr)).abs() + (v.im() - &ext(vi)).abs();
        assert!(err < 1e-35, "z = {re}+{im}i: {v}");
    }
}

#[test]
fn certified_lngamma_contains_reference() {
    for (re, im, vr, vi) in LNGAMMA {
        for req in [Request::Default, Request::Terms(6), Request::Accuracy(1e-8)] {
            let c = eval_lngamma(ComplexPoint::new(re, im).unwrap(), req).unwrap();
            let d = ((ext(vr) - ExtReal::from_f64(c.value.re, 50)).to_f64())
                .hypot((ext(vi) - ExtReal::from_f64(c.value.im, 50)).to_f64());
            assert!(d <= c.radius, "z = {re}+{im}i {req:?}: {d} > {}", c.radius);
        }
    }
}

#[test]
fn theta_matches_reference() {
    for (t, v) in THETA {
        let o = oracle_theta(&ExtReal::from_f64(t, 50), 40).unwrap();
        assert!((&o - &ext(v)).abs() < 1e-35, "t = {t}: {o}");
        for variant in [ThetaVariant::Standard, ThetaVariant::Arctan, ThetaVariant::Empirical] {
            let r = eval_theta(t, Terms::Auto, variant).unwrap();
            let d = (ext(v) - ExtReal::from_f64(r.value, 50)).abs().to_f64();
            assert!(d <= r.radius, "t = {t} {variant:?}");
        }
    }
}
