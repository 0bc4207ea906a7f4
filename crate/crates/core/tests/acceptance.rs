//! Acceptance criteria, one pass/fail line each.
//!
//! Runs without the libtest harness so the lines always reach stdout. The
//! process exits non-zero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use codekit::analysis::{
    affix_class, is_code_regular, is_complete, is_theta_invariant, sardinas_patterson, tree_theta_invariant,
};
use codekit::completion::{build_completion, verify_lemmas};
use codekit::families::{generate, Family, FamilySet, FamilySpec};
use codekit::hull::theta_free_hull;
use codekit::measure::{measure_finite, measure_regular, BernoulliDist, Measure};
use codekit::{Alphabet, FiniteLanguage, Kind, RegularLanguage, ThetaMap};
use num_rational::BigRational;

use common::*;

const E4_BUDGET: Duration = Duration::from_secs(60);
const FAMILY_BUDGET: Duration = Duration::from_secs(30);
const DEFECT_CORPUS: usize = 200;
const LEMMA_TRACES: usize = 50;
const ORACLE_BOUND: usize = 10;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(p.into(), d.into())
}

fn criterion_1() -> Outcome {
    let alphabet = ab();
    let x = RegularLanguage::from_finite(&fin(&alphabet, &X8));
    let t = ThetaMap::swap(&alphabet, Kind::Antimorphism);
    let start = Instant::now();
    let y = alphabet.parse_word("bbaaaba").unwrap();
    let trace = build_completion(&x, &t, Some(&y), false).map_err(|e| e.to_string())?;
    let z = alphabet.render(&trace.z);
    check(z == "aaaaaaabbaaababbbbbbb", || format!("z = {z}"))?;
    let z_set = trace.z_set.rendered();
    check(z_set == ["aaaaaaababbbaabbbbbbb", "aaaaaaabbaaababbbbbbb"], || format!("Z = {z_set:?}"))?;
    let y_set = &trace.completed;
    check(is_code_regular(y_set, false).unwrap().is_code, || "X ∪ T is not a code".into())?;
    check(is_theta_invariant(y_set, &t).unwrap(), || "X ∪ T is not invariant".into())?;
    check(is_complete(y_set).unwrap().0, || "X ∪ T is not complete".into())?;
    check(trace.checks.all_pass(), || format!("{:?}", trace.checks))?;
    let lemmas = verify_lemmas(&trace, &x).map_err(|e| e.to_string())?;
    check(lemmas.all_pass(), || format!("{lemmas:?}"))?;
    // The overlap-free mode turns ba³ba into the same witness.
    let short = alphabet.parse_word("baaaba").unwrap();
    let extended = build_completion(&x, &t, Some(&short), true).map_err(|e| e.to_string())?;
    check(extended.y == y && extended.checks.all_pass(), || {
        format!("overlap-free y = {}", alphabet.render(&extended.y))
    })?;
    let elapsed = start.elapsed();
    check(elapsed < E4_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "z={z}, |Z|=2, Y states={}, checks ok, {:.2}s < {}s",
        y_set.state_count(),
        elapsed.as_secs_f64(),
        E4_BUDGET.as_secs()
    ))
}

fn non_uniform(alphabet: &Alphabet) -> BernoulliDist {
    if alphabet.len() == 2 {
        BernoulliDist::from_fractions(alphabet, &[(1, 3), (2, 3)]).unwrap()
    } else {
        BernoulliDist::from_fractions(alphabet, &[(1, 2), (1, 3), (1, 6)]).unwrap()
    }
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut specs = vec![
        FamilySpec::new(Family::C72, None),
        FamilySpec::new(Family::E2, Some(1)),
        FamilySpec::new(Family::E2, Some(2)),
        FamilySpec::new(Family::E21, Some(1)),
        FamilySpec::new(Family::E22a, Some(1)),
        FamilySpec::new(Family::E22a, Some(2)),
        FamilySpec::new(Family::E22b, Some(1)),
        FamilySpec::new(Family::E3, None),
        FamilySpec::new(Family::E33x, None),
        FamilySpec::new(Family::E33z, None),
        FamilySpec::new(Family::Uniform, Some(3)),
    ];
    specs.extend((3..=6).map(|n| FamilySpec::new(Family::E00, Some(n))));
    for spec in &specs {
        let g = generate(*spec).map_err(|e| e.to_string())?;
        let label = format!("{}{}", spec.family, spec.param.map(|p| format!("({p})")).unwrap_or_default());
        let l = g.language().unwrap();
        let code = is_code_regular(&l, false).unwrap().is_code;
        if let FamilySet::Finite(x) = &g.set {
            check(sardinas_patterson(x).unwrap().is_code == code, || format!("{label}: code tests disagree"))?;
        }
        let affix = affix_class(&l).unwrap();
        let complete = is_complete(&l).unwrap().0;
        let invariant = is_theta_invariant(&l, &g.theta).unwrap();
        let e = g.expected;
        let got = (code, affix.prefix, affix.suffix, complete, invariant);
        let want = (e.code, e.prefix, e.suffix, e.complete, e.theta_invariant);
        check(got == want, || format!("{label}: got {got:?}, expected {want:?}"))?;
        if e.code && e.complete {
            for d in [BernoulliDist::uniform(g.alphabet()), non_uniform(g.alphabet())] {
                let m = measure_regular(&l, &d).unwrap();
                check(m == Measure::Rational(q(1, 1)), || format!("{label}: measure {m}"))?;
            }
        }
    }
    // The k = 1 member of e22a is the one shaped set that is not a code.
    let e22a1 = generate(FamilySpec::new(Family::E22a, Some(1))).unwrap();
    let FamilySet::Finite(x) = &e22a1.set else { unreachable!() };
    let (left, right) = sardinas_patterson(x).unwrap().witness.ok_or("e22a(1) has no witness")?.render(x.alphabet());
    check(first_ambiguous_word(x, 4).is_some(), || "e22a(1): brute force finds no ambiguity".into())?;
    let e22a = e22a1.w.unwrap().len();
    let e22b = generate(FamilySpec::new(Family::E22b, Some(1))).unwrap().w.unwrap().len();
    check(e22a == 6 && e22b == 3, || format!("|W| = {e22a}, {e22b}"))?;
    let elapsed = start.elapsed();
    check(elapsed < FAMILY_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} families match, complete codes have measure exactly 1 (uniform and non-uniform), \
         e22a(1) is a non-code ({left} = {right}), {:.2}s < {}s",
        specs.len(),
        elapsed.as_secs_f64(),
        FAMILY_BUDGET.as_secs()
    ))
}

fn criterion_3() -> Outcome {
    let alphabet = ab();
    let v = sardinas_patterson(&fin(&alphabet, &["a", "ab", "ba"])).unwrap();
    let (left, right) = v.witness.ok_or("no witness")?.render(&alphabet);
    check(!v.is_code && left == "ab a" && right == "a ba", || format!("witness {left} / {right}"))?;
    let x8 = fin(&alphabet, &X8);
    check(sardinas_patterson(&x8).unwrap().is_code, || "finite test rejects X8".into())?;
    let regular = is_code_regular(&RegularLanguage::from_finite(&x8), false).unwrap();
    check(regular.is_code, || "regular test rejects X8".into())?;
    Ok("{a,ab,ba}: ab a = a ba; X8 code by finite and regular tests".into())
}

fn criterion_4() -> Outcome {
    let alphabet = ab();
    let u = BernoulliDist::uniform(&alphabet);
    let oracle: BigRational = X8.iter().map(|w| q(1, 1 << w.len())).sum();
    let x8 = measure_finite(&fin(&alphabet, &X8), &u).unwrap();
    check(oracle == q(17, 32) && x8 == oracle, || format!("π(X8) = {x8}, oracle {oracle}"))?;
    let x8_regular = measure_regular(&RegularLanguage::from_finite(&fin(&alphabet, &X8)), &u).unwrap();
    check(x8_regular == Measure::Rational(oracle.clone()), || format!("regular π(X8) = {x8_regular}"))?;
    let z = measure_regular(&RegularLanguage::parse_regex("b|ab*a", &alphabet).unwrap(), &u).unwrap();
    check(z == Measure::Rational(q(1, 1)), || format!("π(b|ab*a) = {z}"))?;
    let all = measure_regular(&RegularLanguage::parse_regex("(a|b)*", &alphabet).unwrap(), &u).unwrap();
    check(all == Measure::Divergent, || format!("π((a|b)*) = {all}"))?;
    Ok(format!("π(X8) = {oracle} exactly, π(b|ab*a) = 1 exactly, (a|b)* divergent"))
}

fn criterion_5() -> Outcome {
    let corpus = defect_corpus(DEFECT_CORPUS, 0x5eed_0005);
    let mut violations = Vec::new();
    for (x, t) in &corpus {
        let render = || format!("{x} under {t}");
        match theta_free_hull(x, t) {
            Ok(h) => {
                let base_code = sardinas_patterson(&h.base).unwrap().is_code;
                let base_invariant = t.apply_finite(&h.base).unwrap() == h.base;
                let covered = x.iter().all(|w| h.language.contains(w));
                if !(base_code && base_invariant && covered && h.base.len() < x.len() && h.defect_ok) {
                    violations.push(format!("{}: base {}", render(), h.base));
                }
            }
            Err(e) => violations.push(format!("{}: {e}", render())),
        }
    }
    check(violations.is_empty(), || format!("{} violations, first: {}", violations.len(), violations[0]))?;
    let ternary = corpus.iter().filter(|(x, _)| x.alphabet().len() == 3).count();
    Ok(format!(
        "{} θ-closed non-codes ({ternary} ternary): invariant code base, X ⊆ Y*, |Y| <= |X|-1, 0 violations",
        corpus.len()
    ))
}

fn criterion_6() -> Outcome {
    let corpus = invariant_code_corpus(200, 0x5eed_0006, 4);
    let mut traces = 0;
    let mut overlap_free_traces = 0;
    for (x, t) in corpus {
        if traces >= LEMMA_TRACES + 10 {
            break;
        }
        let l = RegularLanguage::from_finite(&x);
        if is_complete(&l).unwrap().0 {
            continue;
        }
        let overlap_free = traces % 2 == 1;
        let trace = build_completion(&l, &t, None, overlap_free).map_err(|e| format!("{x} under {t}: {e}"))?;
        check(trace.checks.all_pass(), || format!("{x} under {t}: {:?}", trace.checks))?;
        check(trace.z_set.iter().all(|z| z.len() == 3 * trace.y.len()), || format!("{x}: |Z| lengths"))?;
        let report = verify_lemmas(&trace, &l).map_err(|e| e.to_string())?;
        check(report.all_pass(), || format!("{x} under {t}: {report:?}"))?;
        traces += 1;
        overlap_free_traces += overlap_free as usize;
    }
    check(traces >= LEMMA_TRACES, || format!("only {traces} traces"))?;
    Ok(format!(
        "{traces} traces ({overlap_free_traces} with overlap-free witness): overlap shape, A+ZA+ ∩ ZX*Z = ∅, X*Z prefix all hold"
    ))
}

fn criterion_7() -> Outcome {
    let mut prefix_seen = 0;
    let mut checked = 0;
    let antimorphisms: Vec<ThetaMap> = vec![
        ThetaMap::swap(&ab(), Kind::Antimorphism),
        ThetaMap::mirror(&ab()),
        ThetaMap::mirror(&abc()),
        ThetaMap::cycle(&abc(), Kind::Antimorphism),
        ThetaMap::swap(&abc(), Kind::Antimorphism),
    ];
    let mut corpus: Vec<(FiniteLanguage, ThetaMap)> = Vec::new();
    for t in &antimorphisms {
        let max_len = if t.alphabet().len() == 2 { 3 } else { 2 };
        for x in small_subsets(t.alphabet(), max_len, 4) {
            if t.apply_finite(&x).unwrap() == x {
                corpus.push((x, t.clone()));
            }
        }
    }
    corpus
        .extend(invariant_code_corpus(150, 0x5eed_0007, 5).into_iter().filter(|(_, t)| t.kind() == Kind::Antimorphism));
    for family in [Family::C72, Family::E3, Family::E33x] {
        let g = generate(FamilySpec::new(family, None)).unwrap();
        if let FamilySet::Finite(x) = g.set {
            corpus.push((x, g.theta));
        }
    }
    for (x, t) in &corpus {
        if !sardinas_patterson(x).unwrap().is_code {
            continue;
        }
        checked += 1;
        let class = affix_class(&RegularLanguage::from_finite(x)).unwrap();
        check(class.prefix == is_prefix_brute(x) && class.suffix == is_suffix_brute(x), || {
            format!("{x}: affix class")
        })?;
        if class.prefix {
            prefix_seen += 1;
            check(class.bifix(), || format!("{x} under {t}: prefix but not bifix"))?;
        }
    }
    check(prefix_seen > 0, || "no prefix code in the corpus".into())?;

    let automorphisms = vec![
        ThetaMap::identity(&ab()),
        ThetaMap::swap(&ab(), Kind::Morphism),
        ThetaMap::cycle(&abc(), Kind::Morphism),
        ThetaMap::swap(&abc(), Kind::Morphism),
    ];
    let mut trees = 0;
    let mut invariant_trees = 0;
    for t in &automorphisms {
        let max_len = if t.alphabet().len() == 2 { 3 } else { 2 };
        let mut sets = small_subsets(t.alphabet(), max_len, 4);
        for family in [Family::E00] {
            for n in 3..=6 {
                let g = generate(FamilySpec::new(family, Some(n))).unwrap();
                if let FamilySet::Finite(x) = g.set {
                    if x.alphabet() == t.alphabet() {
                        sets.push(x);
                    }
                }
            }
        }
        for x in sets.into_iter().filter(is_prefix_brute) {
            let tree = tree_theta_invariant(&x, t).map_err(|e| format!("{x}: {e}"))?;
            let set = is_theta_invariant(&RegularLanguage::from_finite(&x), t).unwrap();
            check(tree == set, || format!("{x} under {t}: tree {tree}, set {set}"))?;
            trees += 1;
            invariant_trees += tree as usize;
        }
    }
    check(invariant_trees > 0, || "no invariant tree in the corpus".into())?;
    Ok(format!(
        "{checked} invariant codes under antimorphisms, {prefix_seen} prefix, all bifix; \
         tree and set invariance agree on {trees} prefix codes ({invariant_trees} invariant)"
    ))
}

fn criterion_8() -> Outcome {
    let mut corpus: Vec<FiniteLanguage> = small_subsets(&ab(), 3, 3);
    corpus.extend(defect_corpus(40, 0x5eed_0008).into_iter().map(|(x, _)| x));
    corpus.extend(invariant_code_corpus(40, 0x5eed_0009, 4).into_iter().map(|(x, _)| x));
    for spec in
        [FamilySpec::new(Family::C72, None), FamilySpec::new(Family::E3, None), FamilySpec::new(Family::E22a, Some(1))]
    {
        if let FamilySet::Finite(x) = generate(spec).unwrap().set {
            corpus.push(x);
        }
    }
    corpus.push(fin(&ab(), &X8));
    let mut words_checked = 0usize;
    for x in &corpus {
        let alphabet = x.alphabet();
        let l = RegularLanguage::from_finite(x);
        let bound = if alphabet.len() == 2 { ORACLE_BOUND } else { ORACLE_BOUND - 2 };
        let words = alphabet.words_up_to(bound);
        for w in &words {
            if l.contains(w) != x.contains(w) {
                return Err(format!("{x}: membership of {}", alphabet.render(w)));
            }
        }
        words_checked += words.len();

        let d = non_uniform(alphabet);
        let m = measure_regular(&l, &d).unwrap();
        check(m == Measure::Rational(measure_oracle(x, d.weights())), || format!("{x}: measure {m}"))?;

        let finite = sardinas_patterson(x).unwrap();
        let regular = is_code_regular(&l, false).unwrap();
        check(finite.is_code == regular.is_code, || format!("{x}: finite and regular code tests disagree"))?;
        let ambiguous = first_ambiguous_word(x, bound);
        match (&finite.witness, &ambiguous) {
            (None, None) => {}
            (Some(f), Some(a)) => check(f.word().len() >= a.len(), || format!("{x}: witness longer than shortest"))?,
            (Some(f), None) => check(f.word().len() > bound, || format!("{x}: oracle misses witness"))?,
            (None, Some(a)) => return Err(format!("{x}: oracle finds ambiguity {}", alphabet.render(a))),
        }

        let (complete, witness) = is_complete(&l).unwrap();
        let scan = first_non_factor_of_star(x, bound);
        match (witness, scan) {
            (None, None) => check(complete, || format!("{x}: completeness flag"))?,
            (Some(w), Some(s)) => {
                check(w == s, || format!("{x}: non-factor {} vs {}", alphabet.render(&w), alphabet.render(&s)))?
            }
            (Some(w), None) => check(w.len() > bound, || format!("{x}: oracle misses {}", alphabet.render(&w)))?,
            (None, Some(s)) => return Err(format!("{x}: oracle finds non-factor {}", alphabet.render(&s))),
        }
    }
    Ok(format!(
        "{} finite languages, {words_checked} membership probes (length <= {ORACLE_BOUND} binary, <= {} ternary), \
         measure, code and completeness agree with brute force",
        corpus.len(),
        ORACLE_BOUND - 2
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        (1, "golden completion pipeline", criterion_1),
        (2, "family suite", criterion_2),
        (3, "non-code witnesses", criterion_3),
        (4, "measure checks", criterion_4),
        (5, "defect bound", criterion_5),
        (6, "lemma property suite", criterion_6),
        (7, "prefix/bifix and tree invariance claims", criterion_7),
        (8, "oracle equivalence", criterion_8),
    ];
    let mut failed = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {id} ({name}): {detail} [{secs:.2}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {id} ({name}): {detail} [{secs:.2}s]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
