//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::HashSet;
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use brickword::gentle::{validate_gentle, AlgebraFile, GentleAlgebra, Quiver, StringWord};
use brickword::graph_map::{graph_maps, strong_inner_witness, Ends};
use brickword::kronecker::{
    brick_window_checks, classify_infinite, double_kronecker, encode_ab, head_and_period_letters, not_brick_evidence,
    strong_inner_witness_ab, ABWord, Direction, DkPrefix, DkVerdict, InfiniteDKSpec,
};
use brickword::representation::{hom_dim_oracle, string_module};
use brickword::single_kiss::{
    generalized_classify, shared_suffix_check, verify_single_kissing, verify_single_kissing_file, GeneralVerdict,
};
use brickword::sturmian::{
    characteristic_word, lower_cutting_word, sturmian_window_witness, CharacteristicCf, Convention, IntervalSpec,
    SlopeSpec,
};
use brickword::word::{
    complexity, is_balanced, transpose, Balance, BinaryWord, InfiniteWordSpec, Letter, Side, WordWindow,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn algebra(name: &str) -> GentleAlgebra {
    GentleAlgebra::from_json(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

/// Runs the binary and returns its exit code and standard output.
fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_brickword")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8 output"))
}

fn expect_cli(args: &[&str], expected: &str) -> Result<(), String> {
    let (code, out) = cli(args);
    if code == 0 && out.trim_end() == expected {
        Ok(())
    } else {
        Err(format!("`{}` gave exit {code}, output {:?}", args.join(" "), out.trim_end()))
    }
}

fn golden() -> InfiniteWordSpec {
    InfiniteWordSpec::characteristic(&CharacteristicCf::golden())
}

fn golden_slope() -> SlopeSpec {
    "(-1+sqrt(5))/2".parse().unwrap()
}

fn criterion_1() -> Outcome {
    expect_cli(&["word", "christoffel", "5", "8"], "bbabbababbaba")?;
    expect_cli(&["word", "cutting", "--slope", "5/8", "--domain", "(0,8)", "--lower"], "babbababbab")?;
    Ok("c(5/8) = bbabbababbaba, r(5/8, 0, (0,8)) = babbababbab".into())
}

fn criterion_2() -> Outcome {
    let m = "(-1+sqrt(5))/2";
    expect_cli(&["word", "cutting", "--slope", m, "--domain", "(0,inf)", "--lower", "--len", "12"], "babbababbabb")?;
    expect_cli(&["word", "cutting", "--slope", m, "--domain", "[0,inf)", "--lower", "--len", "14"], "bababbababbabb")?;
    expect_cli(&["word", "cutting", "--slope", m, "--domain", "[0,inf)", "--upper", "--len", "14"], "abbabbababbabb")?;
    Ok("three golden cutting words match".into())
}

fn criterion_3() -> Outcome {
    let panel = [
        (CharacteristicCf::golden(), golden_slope()),
        (CharacteristicCf::new(vec![], vec![2]).unwrap(), "sqrt(2)-1".parse().unwrap()),
    ];
    for (cf, slope) in panel {
        let standard = characteristic_word(&cf, 500).map_err(|e| e.to_string())?.word;
        let line =
            lower_cutting_word(&slope, 0.into(), &IntervalSpec::positive(), Some(500)).map_err(|e| e.to_string())?.word;
        let bad = standard.iter().zip(line.iter()).filter(|(x, y)| x != y).count();
        if standard.len() != 500 || line.len() != 500 || bad != 0 {
            return Err(format!("{cf}: {bad} mismatched letters"));
        }
    }
    Ok("500 letters, 0 mismatches for [0; (1)] and [0; (2)]".into())
}

fn criterion_4() -> Outcome {
    let w = characteristic_word(&CharacteristicCf::golden(), 200).map_err(|e| e.to_string())?;
    for n in 1..=20 {
        let p = complexity(&w.word, n);
        if p != n + 1 {
            return Err(format!("p({n}) = {p}"));
        }
    }
    if !is_balanced(&w.word).is_balanced() {
        return Err("golden prefix reported unbalanced".into());
    }
    if let Some(x) = sturmian_window_witness(&w) {
        return Err(format!("golden prefix has witness {x}"));
    }
    let bad: BinaryWord = "babbababaa".parse().unwrap();
    match is_balanced(&bad) {
        Balance::Unbalanced { length: 2, .. } => Ok("p(n) = n + 1 for n ≤ 20; babbababaa unbalanced at n = 2".into()),
        other => Err(format!("babbababaa: {other:?}")),
    }
}

fn criterion_5() -> Outcome {
    let file: AlgebraFile = serde_json::from_str(&std::fs::read_to_string(fixture("fig1.json")).unwrap()).unwrap();
    let quiver = Quiver { vertices: file.vertices.clone(), arrows: file.arrows.clone() };
    let violations = validate_gentle(&quiver, &file.relations).map_err(|e| e.to_string())?;
    if !violations.is_empty() {
        return Err(format!("{} violations", violations.len()));
    }
    let alg = algebra("fig1.json");
    let bands: Vec<String> = alg.enumerate_bands(8).iter().map(|b| alg.format_string(&b.representative)).collect();
    if bands != ["β δ- ε θ"] {
        return Err(format!("bands {bands:?}"));
    }
    let maximal = |list: Vec<(StringWord, bool)>| -> Vec<String> {
        list.into_iter().filter(|(_, m)| *m).map(|(w, _)| alg.format_string(&w)).collect()
    };
    if !maximal(alg.direct_strings()).contains(&"ε θ β γ".to_string()) {
        return Err("ε θ β γ is not a maximal direct string".into());
    }
    if !maximal(alg.inverse_strings()).contains(&"γ- β- θ- ε-".to_string()) {
        return Err("γ- β- θ- ε- is not a maximal inverse string".into());
    }
    let w = alg.parse_string("β δ- ε θ α-").map_err(|e| e.to_string())?;
    let dims = string_module(&alg, &w).dimension_vector();
    if dims != [1, 2, 1, 0, 1, 1] {
        return Err(format!("dimension vector {dims:?}"));
    }
    let (code, out) = cli(&["gentle", "bands", fixture("fig1.json").to_str().unwrap(), "--max", "4"]);
    if code != 0 || out.trim_end() != "β δ- ε θ" {
        return Err(format!("gentle bands printed {out:?}"));
    }
    Ok("gentle, one band β δ- ε θ, maximal εθβγ and its inverse, dimension vector (1,2,1,0,1,1)".into())
}

fn criterion_6() -> Outcome {
    let mut details = Vec::new();
    for (name, seed) in [("fig1.json", 6), ("double_kronecker.json", 66)] {
        let alg = algebra(name);
        let mut by_len: Vec<Vec<StringWord>> = vec![Vec::new(); 13];
        for w in alg.enumerate_strings(12) {
            by_len[w.len()].push(w);
        }
        by_len.retain(|l| !l.is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pick = |rng: &mut ChaCha8Rng| {
            let layer = &by_len[rng.gen_range(0..by_len.len())];
            layer[rng.gen_range(0..layer.len())].clone()
        };
        let mut bad = 0;
        for _ in 0..200 {
            let (u, v) = (pick(&mut rng), pick(&mut rng));
            if graph_maps(&alg, &u, &v).len() != hom_dim_oracle(&alg, &u, &v) {
                bad += 1;
            }
        }
        if bad != 0 {
            return Err(format!("{name}: {bad} mismatches"));
        }
        details.push(format!("{name} 200 pairs"));
    }
    Ok(format!("{}, 0 mismatches", details.join(", ")))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let (code, out) = cli(&["bridge", "verify-christoffel", "--max", "10"]);
    let elapsed = start.elapsed();
    let field = |key: &str| -> Option<usize> {
        out.lines().find_map(|l| l.strip_prefix(key).and_then(|v| v.trim().parse().ok()))
    };
    let (bands, bricks, mismatches, padded) =
        (field("bands "), field("brick bands "), field("mismatches "), field("padded reading mismatches "));
    if code != 0 || mismatches != Some(0) || bands != Some(226) {
        return Err(format!("exit {code}, bands {bands:?}, mismatches {mismatches:?}"));
    }
    if elapsed > Duration::from_secs(30) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "226 bands, {} brick bands, 0 mismatches ({} under the padded b·w·a reading), {:.1}s",
        bricks.unwrap_or(0),
        padded.unwrap_or(0),
        elapsed.as_secs_f64()
    ))
}

fn criterion_8() -> Outcome {
    let dk = double_kronecker();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut witnesses = 0;
    for i in 0..1000 {
        let n = rng.gen_range(1..=30);
        let word = BinaryWord::new((0..n).map(|_| if rng.gen() { Letter::B } else { Letter::A }).collect());
        let w = if i % 2 == 0 { ABWord::forward(word) } else { ABWord::inverted(word) };
        let ab = strong_inner_witness_ab(&WordWindow::closed(w.word.clone()));
        let generic = strong_inner_witness(dk.algebra(), &encode_ab(&dk, &w), Ends::CLOSED);
        match (&ab, &generic) {
            (None, None) => {}
            (Some(x), Some(m)) if m.pattern.len() == 2 * x.len() => witnesses += 1,
            _ => return Err(format!("{w}: a,b {ab:?}, generic {generic:?}")),
        }
    }
    Ok(format!("1000 words ({witnesses} with witnesses), 0 disagreements"))
}

fn line(slope: &str, intercept: (i64, i64), domain: &str) -> InfiniteWordSpec {
    InfiniteWordSpec::cutting_line(
        slope.parse().unwrap(),
        brickword::exact::Rational::new(intercept.0, intercept.1),
        domain.parse().unwrap(),
        Convention::Lower,
    )
    .unwrap()
}

fn criterion_9() -> Outcome {
    use Direction::Forward;
    let bricks = [
        (InfiniteDKSpec::right(DkPrefix::None, golden(), Forward), 2),
        (InfiniteDKSpec::right(DkPrefix::Alpha2, golden(), Forward), 1),
        (InfiniteDKSpec::right(DkPrefix::Beta2Inv, golden(), Forward), 3),
        (InfiniteDKSpec::double(line("(-1+sqrt(5))/2", (0, 1), "(-inf,inf)"), Forward), 5),
    ];
    for (spec, case) in &bricks {
        let verdict = classify_infinite(spec).map_err(|e| e.to_string())?;
        if verdict != (DkVerdict::Brick { case: *case, inverse_case: None }) {
            return Err(format!("{spec}: {verdict}"));
        }
        for letters in [10, 50, 100, 200] {
            for check in brick_window_checks(spec, letters).map_err(|e| e.to_string())? {
                if let Some(w) = check.witness {
                    return Err(format!("{spec}: {} witness {w} at {letters} letters", check.name));
                }
            }
        }
    }
    let mut not_bricks = Vec::new();
    for (head, period) in [("", "a"), ("", "ab"), ("bb", "aab"), ("a", "b"), ("abba", "bab")] {
        let body = InfiniteWordSpec::eventually_periodic_right(head, period).unwrap();
        for prefix in [DkPrefix::None, DkPrefix::Alpha2, DkPrefix::Beta2Inv] {
            not_bricks.push(InfiniteDKSpec::right(prefix, body.clone(), Forward));
        }
    }
    for slope in ["5/8", "1/2", "3"] {
        not_bricks.push(InfiniteDKSpec::right(DkPrefix::None, line(slope, (0, 1), "(0,inf)"), Forward));
        not_bricks.push(InfiniteDKSpec::double(line(slope, (1, 3), "(-inf,inf)"), Forward));
    }
    for spec in &not_bricks {
        let verdict = classify_infinite(spec).map_err(|e| e.to_string())?;
        if verdict.is_brick() {
            return Err(format!("{spec}: {verdict}"));
        }
        let (head, period) =
            head_and_period_letters(spec).map_err(|e| e.to_string())?.ok_or_else(|| format!("{spec}: no period"))?;
        let bound = 4 * (head + period);
        let evidence = not_brick_evidence(spec, bound)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("{spec}: no evidence within {bound} letters"))?;
        let letters = evidence.window().len() / 2;
        if !evidence.holds() || letters > bound {
            return Err(format!("{spec}: {evidence} on {letters} letters"));
        }
    }
    Ok(format!("4 bricks clean up to 200 letters, {} non-bricks with bounded graph maps", not_bricks.len()))
}

fn all_words(max_len: usize) -> impl Iterator<Item = BinaryWord> {
    (1..=max_len).flat_map(|len| {
        (0u32..1 << len).map(move |mask| {
            BinaryWord::new((0..len).map(|i| if mask >> i & 1 == 1 { Letter::B } else { Letter::A }).collect())
        })
    })
}

fn criterion_10() -> Outcome {
    let dk = double_kronecker();
    let config = verify_single_kissing(dk.algebra(), dk.a(), dk.b()).map_err(|v| v.join("; "))?;
    if !config.z().is_lazy() {
        return Err("z is not lazy".into());
    }
    let loose: AlgebraFile =
        serde_json::from_str(&std::fs::read_to_string(fixture("dk_no_relations.json")).unwrap()).unwrap();
    match verify_single_kissing_file(&loose, "α1- α2", "β1 β2-") {
        Err(v) if v.iter().any(|x| x.starts_with("not gentle")) => {}
        other => return Err(format!("relation-free quiver: {other:?}")),
    }
    if verify_single_kissing(dk.algebra(), dk.a(), dk.a()).is_ok() {
        return Err("(a, a) accepted".into());
    }
    let mut roles = 0;
    for word in all_words(8) {
        let report = shared_suffix_check(&config, &ABWord::forward(word), Ends::CLOSED);
        roles += report.double_roles.len();
        if report.violations() > 0 {
            return Err(format!("{}: double role without suffix z", report.host));
        }
    }
    let golden_line = |domain: &str, c| line("(-1+sqrt(5))/2", c, domain);
    let panel = vec![
        golden(),
        InfiniteWordSpec::characteristic(&CharacteristicCf::new(vec![], vec![2]).unwrap()),
        InfiniteWordSpec::characteristic(&CharacteristicCf::new(vec![3], vec![1, 2]).unwrap()),
        InfiniteWordSpec::characteristic(&CharacteristicCf::new(vec![2, 5], vec![]).unwrap()),
        golden_line("(0,inf)", (0, 1)),
        golden_line("(0,inf)", (1, 2)),
        golden_line("[0,inf)", (0, 1)),
        line("sqrt(2)-1", (2, 1), "(0,inf)"),
        line("3/7", (0, 1), "(0,inf)"),
        InfiniteWordSpec::cutting_line(golden_slope(), 0.into(), "(-inf,0)".parse().unwrap(), Convention::Upper)
            .unwrap(),
        golden_line("(-inf,0)", (1, 3)),
        golden_line("(-inf,inf)", (0, 1)),
        line("sqrt(2)-1", (1, 5), "(-inf,inf)"),
        line("2/5", (0, 1), "(-inf,inf)"),
        InfiniteWordSpec::eventually_periodic_right("", "ab").unwrap(),
        InfiniteWordSpec::eventually_periodic_right("bb", "aab").unwrap(),
        InfiniteWordSpec::eventually_periodic_left("abb", "a").unwrap(),
        InfiniteWordSpec::eventually_periodic_left("b", "").unwrap(),
        InfiniteWordSpec::bi_periodic("ab").unwrap(),
        InfiniteWordSpec::bi_periodic("aabab").unwrap(),
    ];
    for spec in &panel {
        let general = generalized_classify(&config, spec).map_err(|e| e.to_string())?;
        let dk_spec = match spec.side() {
            Side::Right => InfiniteDKSpec::right(DkPrefix::None, spec.clone(), Direction::Forward),
            Side::Left => InfiniteDKSpec::left(DkPrefix::None, spec.clone(), Direction::Forward),
            Side::Double => InfiniteDKSpec::double(spec.clone(), Direction::Forward),
        };
        let main = classify_infinite(&dk_spec).map_err(|e| e.to_string())?;
        let agree = match (&general, &main) {
            (GeneralVerdict::Brick, DkVerdict::Brick { .. }) => true,
            (GeneralVerdict::NotBrick { reason: r }, DkVerdict::NotBrick { reason: s }) => r == s,
            _ => false,
        };
        if !agree {
            return Err(format!("{spec}: {general} vs {main}"));
        }
    }
    Ok(format!(
        "z lazy, two rejections, {roles} double roles over 510 words all end with z, {} specs agree",
        panel.len()
    ))
}

fn criterion_11() -> Outcome {
    let w = golden().window(0, 300).map_err(|e| e.to_string())?.word;
    let c = characteristic_word(&CharacteristicCf::golden(), 300).map_err(|e| e.to_string())?.word;
    let mut checked = 0;
    for len in 0..w.len() {
        let followed = |l: Letter| -> HashSet<&[Letter]> {
            (0..w.len() - len).filter(|&i| w[i + len] == l).map(|i| &w[i..i + len]).collect()
        };
        let (a, b) = (followed(Letter::A), followed(Letter::B));
        for s in a.intersection(&b) {
            checked += 1;
            if !c.starts_with(&transpose(s)) {
                return Err(format!("{} is not a reversed prefix", BinaryWord::from(*s)));
            }
        }
    }
    Ok(format!("{checked} words s with sa and sb, 0 violations"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("Christoffel and cutting word of slope 5/8", criterion_1),
        ("golden cutting words", criterion_2),
        ("standard words against cutting lines", criterion_3),
        ("complexity and balance", criterion_4),
        ("six-vertex gentle algebra", criterion_5),
        ("graph maps against Hom dimensions", criterion_6),
        ("brick bands and Christoffel words", criterion_7),
        ("a,b envelopes against graph maps", criterion_8),
        ("classification of infinite strings", criterion_9),
        ("double Kronecker as a single-kiss configuration", criterion_10),
        ("words followed by both letters", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
