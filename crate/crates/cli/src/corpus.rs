//! Built-in corpus: every case computes an observed string and compares it
//! with a fixed expectation. Cases run in parallel; the report keeps the
//! declaration order.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use stabletype::decomposition::{formal_sum_equal, mobius_f, mw_decompose, psi_rank};
use stabletype::equivalence::{
    normal_sylow_equivalent, pointwise_conjugate_symmetric, stably_equivalent,
};
use stabletype::hom::{enumerate_homs, factorization_check, inj_classes, k_flag};
use stabletype::lattice::{cyclic_mod_p_poset, p_subgroup_iso_classes};
use stabletype::out::{automorphism_group, w_bar_nonzero};
use stabletype::{is_isomorphic, parse_descriptor, FiniteGroup, Result};

const F20: &str = "perm{(1 2 3 4 5),(2 3 5 4)}";

pub struct Case {
    pub id: String,
    pub criterion: u8,
    pub expected: String,
    run: Box<dyn Fn() -> Result<String> + Send + Sync>,
}

fn case(
    id: impl Into<String>,
    criterion: u8,
    expected: &str,
    run: impl Fn() -> Result<String> + Send + Sync + 'static,
) -> Case {
    Case {
        id: id.into(),
        criterion,
        expected: expected.into(),
        run: Box::new(run),
    }
}

fn g(desc: &str) -> Result<FiniteGroup> {
    parse_descriptor(desc)
}

fn slug(desc: &str) -> String {
    if desc == F20 {
        return "f20".into();
    }
    desc.to_lowercase().replace([' ', '^'], "")
}

fn verdict(a: &'static str, b: &'static str, p: u64) -> impl Fn() -> Result<String> {
    move || {
        Ok(format!(
            "{:?}",
            stably_equivalent(&g(a)?, &g(b)?, p)?.result
        ))
    }
}

fn isomorphic(a: &'static str, b: &'static str) -> impl Fn() -> Result<String> {
    move || Ok(is_isomorphic(&g(a)?, &g(b)?).is_some().to_string())
}

fn decomposition(desc: &'static str, p: u64) -> impl Fn() -> Result<String> {
    move || Ok(mw_decompose(&g(desc)?, p)?.sum.to_string())
}

fn consistency(desc: &'static str, p: u64) -> Result<String> {
    let grp = g(desc)?;
    for q in p_subgroup_iso_classes(&grp, p)? {
        if !factorization_check(&q, &grp)?.holds() {
            return Ok(format!("factorization fails at |Q| = {}", q.order()));
        }
        let out = automorphism_group(&q)?;
        for c in &inj_classes(&q, &grp, p)?.classes {
            let alpha = &c.representative;
            if w_bar_nonzero(&q, &grp, &out, alpha, p, true)? != k_flag(&grp, alpha, p) {
                return Ok(format!("W̄ and K disagree at |Q| = {}", q.order()));
            }
        }
    }
    Ok("ok".into())
}

fn oracles(desc: &'static str) -> Result<String> {
    let grp = g(desc)?;
    for n in [2, 3, 4, 6] {
        let homs = enumerate_homs(&g(&format!("C{n}"))?, &grp)?.len();
        let roots = (0..grp.order())
            .filter(|&x| grp.pow(x, n) == grp.identity())
            .count();
        if homs != roots {
            return Ok(format!("|Hom(C{n}, G)| = {homs}, roots {roots}"));
        }
    }
    let classes = grp.conjugacy_classes();
    if classes.class_sizes.iter().sum::<usize>() != grp.order() {
        return Ok("class equation fails".into());
    }
    if (0..grp.order()).any(|x| grp.order() % grp.element_order(x) != 0) {
        return Ok("element order does not divide the group order".into());
    }
    Ok("ok".into())
}

pub fn cases() -> Vec<Case> {
    let mut v = vec![
        case(
            "minami-2",
            1,
            "Equivalent",
            verdict("Q12 x C2", "D6 x C4", 2),
        ),
        case(
            "minami-3",
            1,
            "Equivalent",
            verdict("Q12 x C2", "D6 x C4", 3),
        ),
        case("minami-iso", 1, "false", isomorphic("Q12 x C2", "D6 x C4")),
        case("sylow-c4-e22", 2, "SylowMismatch", verdict("C4", "E2^2", 2)),
        case("sylow-d8-q8", 2, "SylowMismatch", verdict("D8", "Q8", 2)),
        case("sylow-d8-c8", 2, "SylowMismatch", verdict("D8", "C8", 2)),
        case("reduce-c6-c2-2", 3, "Equivalent", verdict("C6", "C2", 2)),
        case("reduce-s3-c2-2", 3, "Equivalent", verdict("S3", "C2", 2)),
        case("reduce-c12-c3-3", 3, "Equivalent", verdict("C12", "C3", 3)),
    ];
    for (a, b, p, want) in [
        ("A4", "A4", 2, "Equivalent"),
        ("S3", "C6", 3, "NotEquivalent"),
        ("A4", "E2^2", 2, "NotEquivalent"),
    ] {
        let expected = format!("{want}/{want}");
        v.push(case(
            format!("nsylow-{}-{}-{p}", slug(a), slug(b)),
            4,
            &expected,
            move || {
                let (x, y) = (g(a)?, g(b)?);
                Ok(format!(
                    "{:?}/{:?}",
                    stably_equivalent(&x, &y, p)?.result,
                    normal_sylow_equivalent(&x, &y, p)?.result
                ))
            },
        ));
    }
    v.extend([
        case(
            "rcyclic-s3-c3-3",
            5,
            "NotEquivalent",
            verdict("S3", "C3", 3),
        ),
        case(
            "rcyclic-f20-d10-5",
            5,
            "NotEquivalent",
            verdict(F20, "D10", 5),
        ),
        case("rcyclic-f20-f20-5", 5, "Equivalent", verdict(F20, F20, 5)),
        case("heisenberg-pointwise", 6, "true", || {
            let e = g("E3^3")?.regular_representation()?;
            Ok(pointwise_conjugate_symmetric(&e, &g("H3")?).to_string())
        }),
        case("heisenberg-iso", 6, "false", isomorphic("E3^3", "H3")),
        case("mw-s3-3", 7, "1·[S3]", decomposition("S3", 3)),
        case("mw-s3-2", 7, "1·[C2]", decomposition("S3", 2)),
        case("mw-c2-2", 7, "1·[C2]", decomposition("C2", 2)),
        case("mw-c3-3", 7, "1·[C3]", decomposition("C3", 3)),
        case("mw-c5-5", 7, "1·[C5]", decomposition("C5", 5)),
        case("mobius-s4-2", 7, "ok", || {
            mobius_f(cyclic_mod_p_poset(&g("S4")?, 2)?)?;
            Ok("ok".into())
        }),
        case("mw-minami-2", 8, "true", || {
            let a = mw_decompose(&g("Q12 x C2")?, 2)?;
            let b = mw_decompose(&g("D6 x C4")?, 2)?;
            Ok(formal_sum_equal(&a.sum, &b.sum).to_string())
        }),
        case("collapse-a4-2", 8, "1·[A4]", decomposition("A4", 2)),
        case("collapse-f20-5", 8, "1·[[order 20]]", decomposition(F20, 5)),
        case("collapse-d10-5", 8, "1·[D10]", decomposition("D10", 5)),
    ]);
    for desc in ["S3", "A4", "S4", "Q8", "D8 x C3", "C6"] {
        for p in [2, 3] {
            v.push(case(
                format!("psi-{}-{p}", slug(desc)),
                9,
                "holds",
                move || {
                    let r = psi_rank(&g(desc)?, p)?;
                    Ok(if r.holds() {
                        "holds".into()
                    } else {
                        format!("rank {} vs {} classes", r.rank, r.cyclic_class_count)
                    })
                },
            ));
        }
    }
    for desc in ["S3", "S4", "A4", "Q12 x C2", "D6 x C4"] {
        for p in [2, 3] {
            v.push(case(
                format!("consistency-{}-{p}", slug(desc)),
                10,
                "ok",
                move || consistency(desc, p),
            ));
        }
    }
    for desc in [
        "C4", "E2^2", "S3", "D8", "Q8", "A4", "S4", "Q12 x C2", "D6 x C4", "H3",
    ] {
        v.push(case(
            format!("oracle-{}", slug(desc)),
            11,
            "ok",
            move || oracles(desc),
        ));
    }
    v
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub criterion: u8,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusReport {
    pub cases: Vec<CaseResult>,
    pub passed: usize,
    pub failed: usize,
}

impl CorpusReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.cases {
            let status = if c.pass { "PASS" } else { "FAIL" };
            write!(
                s,
                "{status} [{:>2}] {:<24} {}",
                c.criterion, c.id, c.observed
            )
            .unwrap();
            if !c.pass {
                write!(s, " (expected {})", c.expected).unwrap();
            }
            s.push('\n');
        }
        writeln!(s, "{} passed, {} failed", self.passed, self.failed).unwrap();
        s
    }
}

/// Runs the cases whose id contains `filter`. With `inject_wrong`, that
/// case's expectation is replaced by a value it can never produce.
pub fn run(filter: Option<&str>, inject_wrong: Option<&str>) -> CorpusReport {
    let selected: Vec<Case> = cases()
        .into_iter()
        .filter(|c| filter.is_none_or(|f| c.id.contains(f)))
        .map(|mut c| {
            if inject_wrong == Some(c.id.as_str()) {
                c.expected = "<injected>".into();
            }
            c
        })
        .collect();
    let cases: Vec<CaseResult> = selected
        .par_iter()
        .map(|c| {
            let observed = match (c.run)() {
                Ok(s) => s,
                Err(e) => format!("error: {e}"),
            };
            CaseResult {
                id: c.id.clone(),
                criterion: c.criterion,
                pass: observed == c.expected,
                expected: c.expected.clone(),
                observed,
            }
        })
        .collect();
    let passed = cases.iter().filter(|c| c.pass).count();
    CorpusReport {
        failed: cases.len() - passed,
        passed,
        cases,
    }
}
