use brickword::gentle::AlgebraFile;
use brickword::graph_map::Ends;
use brickword::kronecker::{
    classify_infinite, double_kronecker, ABWord, Direction, DkPrefix, DkVerdict, InfiniteDKSpec,
};
use brickword::single_kiss::{
    config_window_witness, generalized_classify, shared_suffix_check, verify_single_kissing,
    verify_single_kissing_file, GeneralVerdict, SingleKissConfig,
};
use brickword::sturmian::{CharacteristicCf, Convention, IntervalSpec, SlopeSpec};
use brickword::word::{BinaryWord, InfiniteWordSpec, Letter, Side};

fn dk_config() -> SingleKissConfig {
    let dk = double_kronecker();
    verify_single_kissing(dk.algebra(), dk.a(), dk.b()).unwrap()
}

fn z1_config() -> SingleKissConfig {
    let file: AlgebraFile = serde_json::from_str(include_str!("../fixtures/single_kiss_z1.json")).unwrap();
    verify_single_kissing_file(&file, "γ α1- α2", "γ β1 β2-").unwrap()
}

fn all_words(max_len: usize) -> Vec<BinaryWord> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        for mask in 0u32..1 << len {
            let letters = (0..len).map(|i| if mask >> i & 1 == 1 { Letter::B } else { Letter::A });
            out.push(BinaryWord::new(letters.collect()));
        }
    }
    out
}

#[test]
fn double_kronecker_configuration() {
    let c = dk_config();
    assert!(c.z().is_lazy());
    assert_eq!(c.algebra().vertex_name(c.x()), "2");
    let dk = double_kronecker();
    let same = verify_single_kissing(dk.algebra(), dk.a(), dk.a()).unwrap_err();
    assert!(!same.is_empty());
    let file: AlgebraFile = serde_json::from_str(include_str!("../fixtures/dk_no_relations.json")).unwrap();
    let loose = verify_single_kissing_file(&file, "α1- α2", "β1 β2-").unwrap_err();
    assert!(loose.iter().any(|v| v.starts_with("not gentle")), "{loose:?}");
}

#[test]
fn configuration_display_names_its_parts() {
    let text = z1_config().to_string();
    for part in ["x x", "z γ", "a γ α1- α2", "b γ β1 β2-"] {
        assert!(text.contains(part), "{text}");
    }
}

#[test]
fn every_double_role_ends_with_z_on_double_kronecker() {
    let c = dk_config();
    let mut violations = Vec::new();
    let mut roles = 0;
    for word in all_words(8) {
        let report = shared_suffix_check(&c, &ABWord::forward(word), Ends::CLOSED);
        roles += report.double_roles.len();
        for d in report.double_roles.iter().filter(|d| !d.holds()) {
            violations.push(format!("{}: {}", report.host, c.algebra().format_string(&d.s)));
        }
    }
    assert!(roles > 0);
    assert!(violations.is_empty(), "{violations:?}");
}

#[test]
fn every_double_role_ends_with_z_away_from_a_closed_right_end() {
    let c = z1_config();
    let open = Ends { left_open: false, right_open: true };
    let mut roles = 0;
    for word in all_words(8) {
        let report = shared_suffix_check(&c, &ABWord::forward(word), open);
        roles += report.double_roles.len();
        for d in &report.double_roles {
            assert!(d.holds(), "{}: {}", report.host, c.algebra().format_string(&d.s));
            assert!(d.s.steps().ends_with(c.z().steps()));
        }
    }
    assert!(roles > 0);
}

fn general_panel() -> Vec<InfiniteWordSpec> {
    let golden_slope = || "(-1+sqrt(5))/2".parse::<SlopeSpec>().unwrap();
    let cut = |slope: SlopeSpec, c: (i64, i64), domain: &str, convention| {
        InfiniteWordSpec::cutting_line(
            slope,
            brickword::exact::Rational::new(c.0, c.1),
            domain.parse::<IntervalSpec>().unwrap(),
            convention,
        )
        .unwrap()
    };
    let cf = |head: Vec<u64>, period: Vec<u64>| {
        InfiniteWordSpec::characteristic(&CharacteristicCf::new(head, period).unwrap())
    };
    vec![
        cf(vec![], vec![1]),
        cf(vec![], vec![2]),
        cf(vec![3], vec![1, 2]),
        cf(vec![2, 5], vec![]),
        cut(golden_slope(), (0, 1), "(0,inf)", Convention::Lower),
        cut(golden_slope(), (0, 1), "(0,inf)", Convention::Upper),
        cut(golden_slope(), (1, 2), "(0,inf)", Convention::Lower),
        cut(golden_slope(), (0, 1), "[0,inf)", Convention::Lower),
        cut("sqrt(2)-1".parse().unwrap(), (2, 1), "(0,inf)", Convention::Lower),
        cut(SlopeSpec::rational(3, 7).unwrap(), (0, 1), "(0,inf)", Convention::Lower),
        cut(golden_slope(), (0, 1), "(-inf,0)", Convention::Upper),
        cut(golden_slope(), (1, 3), "(-inf,0)", Convention::Upper),
        cut(golden_slope(), (0, 1), "(-inf,inf)", Convention::Lower),
        cut("sqrt(2)-1".parse().unwrap(), (1, 5), "(-inf,inf)", Convention::Upper),
        cut(SlopeSpec::rational(2, 5).unwrap(), (0, 1), "(-inf,inf)", Convention::Lower),
        InfiniteWordSpec::eventually_periodic_right("", "ab").unwrap(),
        InfiniteWordSpec::eventually_periodic_right("bb", "aab").unwrap(),
        InfiniteWordSpec::eventually_periodic_left("abb", "a").unwrap(),
        InfiniteWordSpec::bi_periodic("ab").unwrap(),
        InfiniteWordSpec::bi_periodic("aabab").unwrap(),
    ]
}

fn as_dk_spec(body: InfiniteWordSpec) -> InfiniteDKSpec {
    match body.side() {
        Side::Right => InfiniteDKSpec::right(DkPrefix::None, body, Direction::Forward),
        Side::Left => InfiniteDKSpec::left(DkPrefix::None, body, Direction::Forward),
        Side::Double => InfiniteDKSpec::double(body, Direction::Forward),
    }
}

#[test]
fn general_classification_agrees_with_double_kronecker() {
    let c = dk_config();
    let panel = general_panel();
    assert_eq!(panel.len(), 20);
    let mut bricks = 0;
    for spec in panel {
        let general = generalized_classify(&c, &spec).unwrap();
        let dk = classify_infinite(&as_dk_spec(spec.clone())).unwrap();
        match (&general, &dk) {
            (GeneralVerdict::Brick, DkVerdict::Brick { .. }) => bricks += 1,
            (GeneralVerdict::NotBrick { reason: r }, DkVerdict::NotBrick { reason: s }) => assert_eq!(r, s, "{spec}"),
            _ => panic!("{spec}: {general} vs {dk}"),
        }
    }
    assert_eq!(bricks, 9);
}

#[test]
fn golden_windows_over_positive_z_have_no_graph_map() {
    let c = z1_config();
    let golden = InfiniteWordSpec::characteristic(&CharacteristicCf::golden());
    assert!(generalized_classify(&c, &golden).unwrap().is_brick());
    for n in [8, 21, 55, 100] {
        let w = golden.window(0, n).unwrap();
        assert_eq!(config_window_witness(&c, &w), None, "window {n}");
    }
    let shifted = InfiniteWordSpec::cutting_line(
        "(-1+sqrt(5))/2".parse().unwrap(),
        brickword::exact::Rational::new(1, 2),
        IntervalSpec::positive(),
        Convention::Lower,
    )
    .unwrap();
    assert!(!generalized_classify(&c, &shifted).unwrap().is_brick());
    assert!(config_window_witness(&c, &shifted.window(0, 100).unwrap()).is_some());
}
