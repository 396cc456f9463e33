//! Command-line front end: argument definitions and command execution.
//!
//! Every command produces an [`Outcome`]: the text written to stdout and the
//! process exit code. Library errors are returned to the caller, which prints
//! them as a one-line JSON record and exits with status 2.

pub mod corpus;

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use stabletype::decomposition::{integral_form, mw_decompose, psi_rank};
use stabletype::equivalence::{
    decide, pointwise_conjugate, pointwise_conjugate_symmetric, Method, MethodChoice, Verdict,
};
use stabletype::group::{is_prime, p_part};
use stabletype::hom::rep_classes;
use stabletype::lattice::{all_subgroups, is_cyclic_mod_p};
use stabletype::out::{marks, weyl_group, Family, PermAction};
use stabletype::{identify, parse_descriptor_with, Caps, Error, FiniteGroup, Result};

pub const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "stabletype",
    version,
    about = "p-local stable types of classifying spaces of finite groups"
)]
pub struct Cli {
    /// Largest group order that will be enumerated.
    #[arg(long, global = true, env = "ORDER_CAP")]
    pub order_cap: Option<usize>,
    /// Largest group order whose subgroup lattice will be enumerated.
    #[arg(long, global = true, env = "SUBGROUP_CAP")]
    pub subgroup_cap: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Basic structure of a group.
    Info {
        group: String,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether BG1 and BG2 are stably equivalent at p.
    Equiv {
        g1: String,
        g2: String,
        #[arg(long)]
        prime: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[arg(long)]
        json: bool,
    },
    /// Conjugacy classes of homomorphisms Q -> G.
    RepTable {
        q: String,
        g: String,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        json: bool,
    },
    /// Weyl group of a Sylow p-subgroup inside its outer automorphism group.
    Weyl {
        group: String,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        json: bool,
    },
    /// Pointwise conjugacy of two groups, in an ambient group or in the symmetric group.
    Pointwise {
        h: String,
        k: String,
        #[arg(long)]
        ambient: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Decomposition of BG into classifying spaces of reduced cyclic mod p groups.
    MwDecompose {
        group: String,
        #[arg(long)]
        prime: u64,
        /// Also list every class before reduction and aggregation.
        #[arg(long)]
        raw: bool,
        #[arg(long)]
        json: bool,
    },
    /// Rank of the Burnside-to-Brauer-character map against the cyclic p'-class count.
    BurnsideRank {
        group: String,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        json: bool,
    },
    /// Run the built-in corpus of checks.
    Corpus {
        /// Only cases whose id contains this string.
        #[arg(long)]
        filter: Option<String>,
        /// Replace the expectation of this case with a wrong one.
        #[arg(long, value_name = "ID")]
        inject_wrong: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    General,
    NormalSylow,
    ReducedCyclic,
}

impl From<MethodArg> for MethodChoice {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => MethodChoice::Auto,
            MethodArg::General => MethodChoice::Fixed(Method::General),
            MethodArg::NormalSylow => MethodChoice::Fixed(Method::NormalSylow),
            MethodArg::ReducedCyclic => MethodChoice::Fixed(Method::ReducedCyclic),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }

    fn verdict(stdout: String, pass: bool) -> Self {
        Outcome {
            stdout,
            code: if pass { 0 } else { 1 },
        }
    }
}

impl Cli {
    pub fn caps(&self) -> Caps {
        let mut caps = Caps::default();
        if let Some(v) = self.order_cap {
            caps.order = v;
        }
        if let Some(v) = self.subgroup_cap {
            caps.subgroup_order = v;
        }
        caps
    }
}

/// One-line JSON error record.
pub fn error_record(e: &Error) -> String {
    let mut v = json!({
        "schema": SCHEMA,
        "error": e.kind(),
        "message": e.to_string(),
    });
    if let Error::Stage { stage, .. } = e {
        v["stage"] = json!(stage);
    }
    let mut inner = e;
    while let Error::Stage { source, .. } = inner {
        inner = source;
    }
    if let Error::Parse { pos, .. } = inner {
        v["position"] = json!(pos);
    }
    v.to_string()
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

fn with_schema(mut v: Value) -> Value {
    v.as_object_mut()
        .expect("report is an object")
        .insert("schema".into(), json!(SCHEMA));
    v
}

fn parse(desc: &str, caps: Caps, which: &str) -> Result<FiniteGroup> {
    parse_descriptor_with(desc, caps).map_err(|e| match e {
        Error::Parse { .. } => e,
        other => other.in_stage(format!("building {which}")),
    })
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::BadPrime(p))
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let caps = cli.caps();
    match &cli.command {
        Command::Info { group, json } => info(&parse(group, caps, "group")?, group, *json),
        Command::Equiv {
            g1,
            g2,
            prime,
            method,
            json,
        } => {
            check_prime(*prime)?;
            let a = parse(g1, caps, "G1")?;
            let b = parse(g2, caps, "G2")?;
            equiv(&a, &b, g1, g2, *prime, *method, *json)
        }
        Command::RepTable { q, g, prime, json } => {
            check_prime(*prime)?;
            rep_table(&parse(q, caps, "Q")?, &parse(g, caps, "G")?, *prime, *json)
        }
        Command::Weyl { group, prime, json } => {
            check_prime(*prime)?;
            weyl(&parse(group, caps, "group")?, *prime, *json)
        }
        Command::Pointwise {
            h,
            k,
            ambient,
            json,
        } => {
            let hg = parse(h, caps, "H")?;
            let kg = parse(k, caps, "K")?;
            let amb = ambient
                .as_deref()
                .map(|a| parse(a, caps, "ambient"))
                .transpose()?;
            pointwise(&hg, &kg, amb.as_ref(), *json)
        }
        Command::MwDecompose {
            group,
            prime,
            raw,
            json,
        } => {
            check_prime(*prime)?;
            decompose(&parse(group, caps, "group")?, group, *prime, *raw, *json)
        }
        Command::BurnsideRank { group, prime, json } => {
            check_prime(*prime)?;
            burnside(&parse(group, caps, "group")?, *prime, *json)
        }
        Command::Corpus {
            filter,
            inject_wrong,
            json,
        } => {
            let report = corpus::run(filter.as_deref(), inject_wrong.as_deref());
            let pass = report.all_passed();
            let out = if *json {
                to_json(&with_schema(serde_json::to_value(&report).expect("report")))
            } else {
                report.to_text()
            };
            Ok(Outcome::verdict(out, pass))
        }
    }
}

fn primes_dividing(n: usize) -> Vec<u64> {
    (2..=n as u64)
        .filter(|&p| is_prime(p) && (n as u64).is_multiple_of(p))
        .collect()
}

fn info(g: &FiniteGroup, desc: &str, json_out: bool) -> Result<Outcome> {
    let n = g.order();
    let mut order_counts = std::collections::BTreeMap::new();
    for x in 0..n {
        *order_counts.entry(g.element_order(x)).or_insert(0usize) += 1;
    }
    let subgroups = if n <= g.caps().subgroup_order {
        Some(all_subgroups(g)?.len())
    } else {
        None
    };
    let primes: Vec<Value> = primes_dividing(n)
        .into_iter()
        .map(|p| {
            let s = g.sylow(p);
            json!({
                "prime": p,
                "sylow_order": p_part(n, p),
                "sylow": identify(&g.subgroup_as_group(&s)),
                "sylow_normal": g.is_normal(&s),
                "o_p_prime_order": g.o_p_prime(p).order(),
                "cyclic_mod_p": is_cyclic_mod_p(g, p),
            })
        })
        .collect();
    let report = json!({
        "schema": SCHEMA,
        "descriptor": desc,
        "name": identify(g),
        "order": n,
        "degree": g.degree(),
        "abelian": g.is_abelian(),
        "conjugacy_classes": g.conjugacy_classes().len(),
        "center_order": g.center().order(),
        "element_orders": order_counts.iter().map(|(o, c)| json!([o, c])).collect::<Vec<_>>(),
        "subgroups": subgroups,
        "primes": primes,
    });
    if json_out {
        return Ok(Outcome::ok(to_json(&report)));
    }
    let mut s = String::new();
    writeln!(
        s,
        "group      {} ({})",
        desc,
        report["name"].as_str().unwrap()
    )
    .unwrap();
    writeln!(s, "order      {n}").unwrap();
    writeln!(s, "degree     {}", g.degree()).unwrap();
    writeln!(s, "abelian    {}", g.is_abelian()).unwrap();
    writeln!(s, "classes    {}", report["conjugacy_classes"]).unwrap();
    writeln!(s, "center     {}", report["center_order"]).unwrap();
    let orders: Vec<String> = order_counts
        .iter()
        .map(|(o, c)| format!("{o}:{c}"))
        .collect();
    writeln!(s, "orders     {}", orders.join(" ")).unwrap();
    match subgroups {
        Some(k) => writeln!(s, "subgroups  {k}").unwrap(),
        None => writeln!(s, "subgroups  (order above subgroup cap)").unwrap(),
    }
    for p in report["primes"].as_array().unwrap() {
        writeln!(
            s,
            "p = {}: Sylow {} (order {}, normal {}), |O_p'| = {}, cyclic mod p {}",
            p["prime"],
            p["sylow"].as_str().unwrap(),
            p["sylow_order"],
            p["sylow_normal"],
            p["o_p_prime_order"],
            p["cyclic_mod_p"]
        )
        .unwrap();
    }
    Ok(Outcome::ok(s))
}

fn equiv(
    a: &FiniteGroup,
    b: &FiniteGroup,
    d1: &str,
    d2: &str,
    p: u64,
    method: MethodArg,
    json_out: bool,
) -> Result<Outcome> {
    let v = decide(a, b, p, method.into())?;
    let pass = v.result == Verdict::Equivalent;
    if json_out {
        let mut value = serde_json::to_value(&v).expect("verdict");
        value["g1"] = json!(d1);
        value["g2"] = json!(d2);
        return Ok(Outcome::verdict(to_json(&with_schema(value)), pass));
    }
    let mut s = String::new();
    writeln!(
        s,
        "{d1} vs {d2} at p = {p}: {:?} (method {:?})",
        v.result, v.method
    )
    .unwrap();
    for q in &v.per_q {
        writeln!(s, "  Q = {} (|Out(Q)| = {})", q.q, q.out_order).unwrap();
        for (i, label) in q.family.iter().enumerate() {
            let flag = if q.marks1[i] == q.marks2[i] {
                ""
            } else {
                "  *"
            };
            writeln!(
                s,
                "    {label:<8} {:>5} {:>5}{flag}",
                q.marks1[i], q.marks2[i]
            )
            .unwrap();
        }
    }
    if let Some(pw) = &v.pointwise {
        writeln!(
            s,
            "  Weyl groups in Out(P), per class: count in W1, count in W2"
        )
        .unwrap();
        for r in &pw.rows {
            writeln!(
                s,
                "    class of {:<4} {:>3} {:>3}",
                r.representative, r.count1, r.count2
            )
            .unwrap();
        }
    }
    if let Some(w) = &v.witness {
        writeln!(s, "witness: Q = {}, {}", w.q, w.label).unwrap();
    }
    Ok(Outcome::verdict(s, pass))
}

fn rep_table(q: &FiniteGroup, g: &FiniteGroup, p: u64, json_out: bool) -> Result<Outcome> {
    let reps = rep_classes(q, g, p)?;
    if json_out {
        let v = json!({
            "schema": SCHEMA,
            "prime": p,
            "hom_count": reps.hom_count,
            "classes": reps.classes,
        });
        return Ok(Outcome::ok(to_json(&v)));
    }
    let mut s = String::new();
    writeln!(s, "|Hom(Q,G)| = {}, {} classes", reps.hom_count, reps.len()).unwrap();
    writeln!(
        s,
        "{:>4} {:>6} {:>4} {:>5} {:>2}",
        "#", "orbit", "inj", "surj", "K"
    )
    .unwrap();
    for (i, c) in reps.classes.iter().enumerate() {
        let b = |x: bool| if x { "y" } else { "-" };
        writeln!(
            s,
            "{i:>4} {:>6} {:>4} {:>5} {:>2}",
            c.orbit_size,
            b(c.injective),
            b(c.surjective),
            b(c.in_k)
        )
        .unwrap();
    }
    Ok(Outcome::ok(s))
}

fn weyl(g: &FiniteGroup, p: u64, json_out: bool) -> Result<Outcome> {
    let sylow = g.sylow(p);
    let w = weyl_group(g, &sylow)?;
    let out = w.out.out_group();
    let mut orders: Vec<usize> = w
        .subgroup
        .members()
        .iter()
        .map(|&x| out.element_order(x))
        .collect();
    orders.sort_unstable();
    let family = Family::cyclic_mod_p(out, p)?;
    let fingerprint = marks(&PermAction::on_cosets(out, &w.subgroup), &family);
    if json_out {
        let v = json!({
            "schema": SCHEMA,
            "prime": p,
            "sylow": identify(&w.group),
            "sylow_order": sylow.order(),
            "out_order": w.out.order(),
            "weyl_order": w.order(),
            "element_orders": orders,
            "marks": fingerprint,
        });
        return Ok(Outcome::ok(to_json(&v)));
    }
    let mut s = String::new();
    writeln!(
        s,
        "P = {} (order {}), |Out(P)| = {}",
        identify(&w.group),
        sylow.order(),
        w.out.order()
    )
    .unwrap();
    writeln!(s, "|W_G(P)| = {}", w.order()).unwrap();
    let o: Vec<String> = orders.iter().map(usize::to_string).collect();
    writeln!(s, "element orders {}", o.join(" ")).unwrap();
    writeln!(s, "marks of Out(P)/W").unwrap();
    for (l, c) in fingerprint.family.iter().zip(&fingerprint.counts) {
        writeln!(s, "  {l:<8} {c}").unwrap();
    }
    Ok(Outcome::ok(s))
}

fn pointwise(
    h: &FiniteGroup,
    k: &FiniteGroup,
    ambient: Option<&FiniteGroup>,
    json_out: bool,
) -> Result<Outcome> {
    let (equal, rows) = match ambient {
        None => {
            if h.degree() != k.degree() {
                return Err(Error::BadParameter(format!(
                    "degrees differ: {} and {}",
                    h.degree(),
                    k.degree()
                )));
            }
            (pointwise_conjugate_symmetric(h, k), None)
        }
        Some(g) => {
            let sub = |x: &FiniteGroup, which: &str| -> Result<_> {
                let idx = x
                    .elements()
                    .iter()
                    .map(|e| {
                        // points beyond the descriptor's largest one are fixed
                        if e.degree() > g.degree() {
                            return None;
                        }
                        g.index_of(&e.embed(g.degree(), 0))
                    })
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| {
                        Error::BadParameter(format!(
                            "{which} is not a subgroup of the ambient group"
                        ))
                    })?;
                Ok(g.subgroup_from_members(idx))
            };
            let r = pointwise_conjugate(g, &sub(h, "H")?, &sub(k, "K")?);
            (r.equal, Some(r.rows))
        }
    };
    if json_out {
        let mut v = json!({ "schema": SCHEMA, "pointwise_conjugate": equal });
        if let Some(rows) = &rows {
            v["classes"] = json!(rows);
        }
        return Ok(Outcome::verdict(to_json(&v), equal));
    }
    let mut s = String::new();
    if let Some(rows) = &rows {
        writeln!(s, "{:>6} {:>6} {:>4} {:>4}", "class", "size", "H", "K").unwrap();
        for r in rows {
            writeln!(
                s,
                "{:>6} {:>6} {:>4} {:>4}",
                r.representative, r.class_size, r.count1, r.count2
            )
            .unwrap();
        }
    }
    writeln!(s, "pointwise conjugate: {equal}").unwrap();
    Ok(Outcome::verdict(s, equal))
}

fn decompose(g: &FiniteGroup, desc: &str, p: u64, raw: bool, json_out: bool) -> Result<Outcome> {
    let d = mw_decompose(g, p)?;
    let integral = integral_form(&d.sum);
    let dropped: Vec<_> = d.dropped().collect();
    if json_out {
        let terms: Vec<Value> = d
            .sum
            .terms()
            .iter()
            .map(|t| json!({ "group": t.name, "coeff": t.coefficient.to_string() }))
            .collect();
        let mut v = json!({
            "schema": SCHEMA,
            "group": desc,
            "prime": p,
            "terms": terms,
            "integral": integral,
            "dropped": dropped,
        });
        if raw {
            v["raw"] = json!(d.raw);
        }
        return Ok(Outcome::ok(to_json(&v)));
    }
    let mut s = String::new();
    writeln!(s, "BG at p = {p}: {}", d.sum).unwrap();
    let side = |v: &[(String, String)]| -> String {
        if v.is_empty() {
            "*".into()
        } else {
            v.iter()
                .map(|(n, c)| format!("{c}·B{n}"))
                .collect::<Vec<_>>()
                .join(" ∨ ")
        }
    };
    writeln!(
        s,
        "integral: {}·BG ∨ {} ≃ {}",
        integral.denominator,
        side(&integral.negative),
        side(&integral.positive)
    )
    .unwrap();
    for t in &dropped {
        writeln!(
            s,
            "dropped: {} (reduces to {}, order prime to p), coefficient {}",
            t.name, t.reduced, t.coefficient
        )
        .unwrap();
    }
    if raw {
        writeln!(
            s,
            "{:>6} {:<12} {:>6} {:>6} {:>8}  reduced",
            "|H|", "H", "f", "[N:H]", "coeff"
        )
        .unwrap();
        for t in &d.raw {
            writeln!(
                s,
                "{:>6} {:<12} {:>6} {:>6} {:>8}  {}",
                t.subgroup_order,
                t.name,
                t.f.to_string(),
                t.normalizer_index,
                t.coefficient.to_string(),
                t.reduced
            )
            .unwrap();
        }
    }
    Ok(Outcome::ok(s))
}

fn burnside(g: &FiniteGroup, p: u64, json_out: bool) -> Result<Outcome> {
    let r = psi_rank(g, p)?;
    let pass = r.holds();
    if json_out {
        let mut v = serde_json::to_value(&r).expect("report");
        v["holds"] = json!(pass);
        return Ok(Outcome::verdict(to_json(&with_schema(v)), pass));
    }
    let mut s = String::new();
    writeln!(
        s,
        "rank {}, cyclic p'-classes {}: {}",
        r.rank,
        r.cyclic_class_count,
        if pass { "PASS" } else { "FAIL" }
    )
    .unwrap();
    Ok(Outcome::verdict(s, pass))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_records_are_single_line_json() {
        let e = Error::Parse {
            pos: 4,
            message: "expected a group".into(),
        }
        .in_stage("building G1");
        let line = error_record(&e);
        assert!(!line.contains('\n'));
        let v: Value = serde_json::from_str(&line).unwrap();
        assert_eq!(v["error"], "ParseError");
        assert_eq!(v["stage"], "building G1");
        assert_eq!(v["position"], 4);
    }

    #[test]
    fn caps_from_flags() {
        let cli = Cli::parse_from(["stabletype", "--order-cap", "50", "info", "C2"]);
        assert_eq!(cli.caps().order, 50);
        assert_eq!(cli.caps().subgroup_order, Caps::default().subgroup_order);
    }

    #[test]
    fn method_names() {
        let cli = Cli::parse_from([
            "stabletype",
            "equiv",
            "C2",
            "C2",
            "--prime",
            "2",
            "--method",
            "reduced-cyclic",
        ]);
        match cli.command {
            Command::Equiv { method, .. } => assert_eq!(method, MethodArg::ReducedCyclic),
            _ => unreachable!(),
        }
    }
}
