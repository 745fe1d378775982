use std::collections::BTreeSet;
use std::fmt::Write as _;

use liecascade_core::cascade::{cascade as cascade_of, verify_gamma_partition};
use liecascade_core::centralizer::{
    nonregular_locus, regularity_check, special_strata, subpair, SubpairReport,
};
use liecascade_core::field::{q, qi};
use liecascade_core::matrix_model::{
    characteristic_check, characteristic_from_h, even_sheet_witness, matrix_strings,
    minimal_orbit_not_distinguished, normal_triple_for, orbit_representative,
    random_admissible_element, semisimple_part_check, SoPair,
};
use liecascade_core::orbits::{
    characteristic, enumerate_dyo, enumerate_yd, forget_signs, is_even, Ambient, Characteristics,
    SignedYoungDiagram, YoungDiagram,
};
use liecascade_core::parabolic::{catalog_types, scan_type, AbelianParabolic};
use liecascade_core::report::{self, VerificationReport};
use liecascade_core::root_system::fmt_simple_set;
use liecascade_core::{CartanType, RootSystem, Q};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::Verify;

pub struct Context {
    pub seed: u64,
    pub max_rank: usize,
}

pub struct Outcome {
    pub report: VerificationReport,
    pub text: String,
}

type CmdResult = Result<Outcome, String>;

fn parse_type(s: &str) -> Result<CartanType, String> {
    s.parse::<CartanType>().map_err(|e| e.to_string())
}

pub fn pairs(ctx: &Context) -> CmdResult {
    let mut r = VerificationReport::new("pairs", json!({ "max_rank": ctx.max_rank }), ctx.seed);
    let mut rows = Vec::new();
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{:<5} {:<5} {:<34} {:<5} E",
        "type", "node", "pair", "rank"
    );
    for t in catalog_types(ctx.max_rank) {
        match scan_type(t) {
            Err(e) => r.error(format!("table/{t}"), json!("scan matches reference"), e),
            Ok(entries) => {
                r.check(format!("table/{t}"), true, true);
                for e in entries {
                    let labels: Vec<String> = e.parabolic.e_set.iter().map(|k| k.label()).collect();
                    let _ = writeln!(
                        text,
                        "{:<5} a{:<4} {:<34} {:<5} {}",
                        t.to_string(),
                        e.row.node + 1,
                        e.row.label,
                        e.parabolic.rank(),
                        labels.join(" ")
                    );
                    rows.push(json!({
                        "type": t.to_string(),
                        "node": e.row.node + 1,
                        "pair": e.row.label,
                        "rank": e.parabolic.rank(),
                        "E": labels,
                    }));
                }
            }
        }
    }
    r.data = Value::Array(rows);
    Ok(Outcome { report: r, text })
}

pub fn cascade(ctx: &Context, family: &str, rank: usize, subset: Option<Vec<usize>>) -> CmdResult {
    let t = parse_type(&format!("{family}{rank}"))?;
    let rs = RootSystem::build(t).map_err(|e| e.to_string())?;
    let subset: BTreeSet<usize> = match subset {
        None => (0..rank).collect(),
        Some(v) => v
            .into_iter()
            .map(|i| {
                if (1..=rank).contains(&i) {
                    Ok(i - 1)
                } else {
                    Err(format!("simple root {i} out of range"))
                }
            })
            .collect::<Result<_, _>>()?,
    };
    let entries = cascade_of(&rs, &subset);
    let mut r = VerificationReport::new(
        "cascade",
        json!({ "type": t.to_string(), "subset": fmt_simple_set(&subset) }),
        ctx.seed,
    );
    match verify_gamma_partition(&rs, &subset) {
        Ok(g) => {
            r.check(
                "gamma partition covers R_T+",
                rs.positive_roots_in(&subset).len(),
                g.gamma_sizes.iter().sum::<usize>(),
            );
        }
        Err(e) => r.error("gamma partition covers R_T+", json!(true), e),
    }
    let mut orth = true;
    for (i, a) in entries.iter().enumerate() {
        for b in &entries[i + 1..] {
            orth &= rs
                .strongly_orthogonal(&a.epsilon, &b.epsilon)
                .unwrap_or(false);
        }
    }
    r.check_true("highest roots pairwise strongly orthogonal", orth);
    let mut text = String::new();
    for e in &entries {
        let _ = writeln!(
            text,
            "{:<24} eps = {:<24} |Gamma| = {}",
            e.label(),
            e.epsilon.to_string(),
            e.gamma.len()
        );
    }
    r.data = json!(entries
        .iter()
        .map(|e| json!({ "K": e.label(), "epsilon": e.epsilon, "gamma": e.gamma }))
        .collect::<Vec<_>>());
    Ok(Outcome { report: r, text })
}

fn yd_row(d: &YoungDiagram, amb: Ambient, with_char: bool) -> (Value, String) {
    let mut v = json!({ "shape": d.shape_label(), "numerals": d.numeral.map(|n| vec![n]).unwrap_or_default() });
    let mut line = d.to_string();
    if with_char {
        let c = characteristic(
            &YoungDiagram {
                rows: d.rows.clone(),
                numeral: None,
            },
            amb,
        )
        .expect("sizes agree");
        let c = match (&c, d.numeral) {
            (Characteristics::VeryEven { .. }, n) => c.select(n).clone(),
            _ => c.all()[0].clone(),
        };
        let _ = write!(
            line,
            "  {c}  {}",
            if is_even(&c) { "even" } else { "not even" }
        );
        v["characteristic"] = json!(c.entries);
        v["even"] = json!(is_even(&c));
    }
    (v, line)
}

fn dyo_row(d: &SignedYoungDiagram, amb: Ambient, with_char: bool) -> (Value, String) {
    let mut v = json!({ "shape": liecascade_core::orbits::shape_label(&d.shape()), "signs": d.pattern(), "numerals": d.numerals });
    let mut line = d.to_string();
    if with_char {
        let f = forget_signs(d);
        let c = characteristic(&f.diagram, amb).expect("sizes agree");
        let all: Vec<_> = c.all().into_iter().cloned().collect();
        let even = all.iter().all(is_even);
        let shown: Vec<String> = all.iter().map(|c| c.to_string()).collect();
        let _ = write!(
            line,
            "  {}  {}",
            shown.join(" or "),
            if even { "even" } else { "not even" }
        );
        v["characteristic"] = if all.len() == 1 {
            json!(all[0].entries)
        } else {
            json!(all.iter().map(|c| &c.entries).collect::<Vec<_>>())
        };
        v["even"] = json!(even);
        if f.numeral_undetermined {
            v["numeral_pairing"] = json!("undetermined");
        }
    }
    (v, line)
}

pub fn orbits(ctx: &Context, p: usize, signed: bool, with_char: bool) -> CmdResult {
    if p < 2 {
        return Err(format!("p must be at least 2, got {p}"));
    }
    let amb = Ambient::for_size(p + 2);
    let mut r = VerificationReport::new(
        "orbits",
        json!({ "p": p, "signed": signed, "characteristics": with_char }),
        ctx.seed,
    );
    let (rows, lines): (Vec<Value>, Vec<String>) = if signed {
        let all = enumerate_dyo(p);
        r.check("every real orbit complexifies to a listed orbit", true, {
            let yds = enumerate_yd(p + 2);
            all.iter()
                .all(|d| yds.iter().any(|y| y.rows == forget_signs(d).diagram.rows))
        });
        r.check("max row <= 5", true, all.iter().all(|d| d.max_row() <= 5));
        all.iter().map(|d| dyo_row(d, amb, with_char)).unzip()
    } else {
        enumerate_yd(p + 2)
            .iter()
            .map(|d| yd_row(d, amb, with_char))
            .unzip()
    };
    let text = lines.iter().map(|l| format!("{l}\n")).collect::<String>()
        + &format!("{} orbits\n", rows.len());
    r.data = Value::Array(rows);
    Ok(Outcome { report: r, text })
}

fn parse_pair(s: &str) -> Result<AbelianParabolic, String> {
    let (t, i) = s
        .rsplit_once('-')
        .ok_or_else(|| format!("expected <type>-<i>, got {s:?}"))?;
    let t = parse_type(t)?;
    let i: usize = i
        .parse()
        .map_err(|_| format!("bad simple root index {i:?}"))?;
    if !(1..=t.rank).contains(&i) {
        return Err(format!("simple root {i} out of range for {t}"));
    }
    AbelianParabolic::maximal(t, i - 1).map_err(|e| e.to_string())
}

fn subpair_text(s: &SubpairReport) -> String {
    format!(
        "X = ({})\ndim g^X = {} (k: {}, p: {})\nsemisimple part {} (dim {}), center dim {}\nr-pair {}\np-regular: {}\n",
        s.x.join(", "),
        s.dim_g_x,
        s.dim_k_x,
        s.dim_p_x,
        s.l_type_label,
        s.l_dim,
        s.center_dim,
        s.r_pair_label,
        s.p_regular
    )
}

pub fn centralizer(ctx: &Context, pair: &str, line: Option<Vec<String>>, locus: bool) -> CmdResult {
    let p = parse_pair(pair)?;
    let e_labels: Vec<String> = p.e_set.iter().map(|e| e.label()).collect();
    let mut r = VerificationReport::new(
        "centralizer",
        json!({ "pair": pair, "line": line, "locus": locus, "E": e_labels }),
        ctx.seed,
    );
    let mut text = format!("{}  E = {}\n", p.pair_label, e_labels.join(" "));
    if locus {
        if p.rank() == 2 {
            let l = nonregular_locus(&p, 0, 1).map_err(|e| e.to_string())?;
            for [lam, mu] in &l.special_lines {
                let x = p.cartan_element(&[qi(*mu), qi(*lam)]);
                r.check(
                    format!("[{lam}:{mu}] is not p-regular"),
                    false,
                    regularity_check(&p, &x).map_err(|e| e.to_string())?,
                );
                let _ = writeln!(text, "[{lam}:{mu}]");
            }
            let generic = p.cartan_element(&[q(3, 1), q(7, 2)]);
            r.check(
                "[7/2:3] is p-regular",
                true,
                regularity_check(&p, &generic).map_err(|e| e.to_string())?,
            );
            let _ = writeln!(
                text,
                "lines [lambda:mu] with X = mu X_{} + lambda X_{}",
                e_labels[0], e_labels[1]
            );
            r.data = json!(l);
        } else {
            let strata = special_strata(&p, ctx.seed);
            let mut rows = Vec::new();
            for s in &strata {
                let rep = subpair(&p, &p.cartan_element(&s.sample_q)).map_err(|e| e.to_string())?;
                r.check(
                    format!("stratum {:?}: dim g = dim k^X + dim p^X", s.hyperplanes),
                    rep.dim_g_x,
                    rep.dim_k_x + rep.dim_p_x,
                );
                let _ = writeln!(
                    text,
                    "dim {} through ({}): dim g^X {}, {}, r-pair {}",
                    s.dim,
                    s.sample.join(", "),
                    rep.dim_g_x,
                    rep.l_type_label,
                    rep.r_pair_label
                );
                rows.push(json!({ "stratum": s, "subpair": rep }));
            }
            r.data = Value::Array(rows);
        }
        return Ok(Outcome { report: r, text });
    }
    let coeffs: Vec<Q> = match line {
        Some(v) => v
            .iter()
            .map(|c| {
                c.trim()
                    .parse::<Q>()
                    .map_err(|_| format!("bad coefficient {c:?}"))
            })
            .collect::<Result<_, _>>()?,
        None => vec![q(1, 1); p.rank()],
    };
    if coeffs.len() != p.rank() {
        return Err(format!(
            "expected {} coefficients (one per member of E), got {}",
            p.rank(),
            coeffs.len()
        ));
    }
    let rep = subpair(&p, &p.cartan_element(&coeffs)).map_err(|e| e.to_string())?;
    r.check(
        "dim g^X = dim k^X + dim p^X",
        rep.dim_g_x,
        rep.dim_k_x + rep.dim_p_x,
    );
    r.check_true("semisimple part identified", rep.l_type.is_some());
    text += &subpair_text(&rep);
    r.data = json!(rep);
    Ok(Outcome { report: r, text })
}

fn orbit_arg(p: usize, orbit: Option<&str>) -> Result<SignedYoungDiagram, String> {
    let s = orbit.ok_or("--orbit is required for this check")?;
    SignedYoungDiagram::parse(p, s).map_err(|e| {
        let options: Vec<String> = enumerate_dyo(p).iter().map(|d| d.to_string()).collect();
        format!("{e}; orbits for p = {p}: {}", options.join("; "))
    })
}

fn is_minimal_shape(d: &SignedYoungDiagram) -> bool {
    let s = d.shape();
    s.len() >= 2 && s[..2] == [2, 2] && s[2..].iter().all(|&x| x == 1)
}

pub fn model(
    ctx: &Context,
    p: usize,
    orbit: Option<&str>,
    verify: Verify,
    trials: usize,
) -> CmdResult {
    let pair = SoPair::new(p).map_err(|e| e.to_string())?;
    let inputs = json!({ "p": p, "orbit": orbit, "verify": format!("{verify:?}").to_lowercase(), "trials": trials });
    let mut r = VerificationReport::new("model", inputs, ctx.seed);
    let mut text = String::new();
    match verify {
        Verify::SemisimplePart => {
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
            let x = random_admissible_element(&pair, &mut rng).map_err(|e| e.to_string())?;
            let rep = semisimple_part_check(&pair, &x, trials, ctx.seed);
            r.check_true("X admissible", rep.admissible);
            r.check("Y_s in C X_s for every sample", trials, rep.passed);
            let _ = writeln!(
                text,
                "dim p^X = {}, {} of {} samples pass",
                rep.dim_p_x, rep.passed, rep.trials
            );
            r.data = json!({ "x": matrix_strings(&x), "report": rep });
        }
        Verify::Triple => {
            let d = orbit_arg(p, orbit)?;
            let x = orbit_representative(&pair, &d).map_err(|e| e.to_string())?;
            let t = normal_triple_for(&pair, &x).map_err(|e| e.to_string())?;
            r.check(
                "sl2 relations, H in k, X and Y in p",
                Ok(()),
                t.check(&pair).map_err(|e| e.to_string()),
            );
            let _ = writeln!(text, "orbit {d}\nX =\n{}\nH =\n{}\nY =\n{}", t.x, t.h, t.y);
            r.data = json!({ "orbit": d.to_string(), "h": matrix_strings(&t.h), "x": matrix_strings(&t.x), "y": matrix_strings(&t.y) });
        }
        Verify::Characteristic => {
            let d = orbit_arg(p, orbit)?;
            let c = characteristic_check(&pair, &d).map_err(|e| e.to_string())?;
            r.check_true("matrix characteristic is one of the recipe's", c.agrees);
            let shown: Vec<String> = c.recipe.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(
                text,
                "orbit {d}\nrecipe {}\nmatrix {}\ndim p^X = {}",
                shown.join(" or "),
                c.computed,
                c.dim_p_x
            );
            r.data = json!(c);
        }
        Verify::Sheet => {
            let d = orbit_arg(p, orbit)?;
            let x = orbit_representative(&pair, &d).map_err(|e| e.to_string())?;
            let t = normal_triple_for(&pair, &x).map_err(|e| e.to_string())?;
            let lambdas = [q(0, 1), q(1, 1), q(2, 1), q(3, 1)];
            let rep = even_sheet_witness(&pair, &t, &lambdas).map_err(|e| e.to_string())?;
            for pt in &rep.points {
                r.check(
                    format!("dim p^(X+{}Y) = dim p^X", pt.lambda),
                    rep.dim_p_x,
                    pt.dim_p,
                );
                if pt.lambda != "0" {
                    r.check_true(format!("X+{}Y semisimple", pt.lambda), pt.semisimple);
                }
            }
            let _ = writeln!(
                text,
                "orbit {d}, characteristic {}, dim p^X = {}",
                rep.characteristic, rep.dim_p_x
            );
            r.data = json!(rep);
        }
        Verify::Distinguished => {
            let d = orbit_arg(p, orbit)?;
            if is_minimal_shape(&d) {
                if p < 3 {
                    return Err("the witness is constructed for p >= 3".into());
                }
                let numeral = d
                    .numerals
                    .first()
                    .copied()
                    .ok_or("minimal orbit carries a numeral")?;
                let w = minimal_orbit_not_distinguished(p, numeral).map_err(|e| e.to_string())?;
                r.check_true("[H, X] = 0", w.commutes);
                r.check_true("H in p", w.h_in_p);
                r.check_true("H nonzero", w.h_nonzero);
                r.check_true("H semisimple", w.h_semisimple);
                r.check_true("X nilpotent", w.x_nilpotent);
                let chain = characteristic_check(&pair, &d).map_err(|e| e.to_string())?;
                r.check(
                    "characteristic matches the chain representative",
                    true,
                    chain.recipe.contains(&w.characteristic),
                );
                r.check(
                    "dim p^X matches the chain representative",
                    chain.dim_p_x,
                    pair.p_centralizer(&w.x.entries).len(),
                );
                let _ = writeln!(
                    text,
                    "orbit {d}: X not p-distinguished, witness H =\n{}",
                    w.h.entries
                );
                r.data = json!(w);
            } else {
                let x = orbit_representative(&pair, &d).map_err(|e| e.to_string())?;
                let c = if x.is_zero() {
                    None
                } else {
                    let t = normal_triple_for(&pair, &x).map_err(|e| e.to_string())?;
                    characteristic_from_h(&pair, &t.h)
                };
                r.check_true("characteristic is even", c.as_ref().is_none_or(is_even));
                r.skip(
                    "semisimple witness",
                    "constructed for the (2,2,1,..) orbits only",
                );
                let _ = writeln!(
                    text,
                    "orbit {d}: characteristic {}",
                    c.map_or("(0,..)".into(), |c| c.to_string())
                );
            }
        }
    }
    Ok(Outcome { report: r, text })
}

pub fn verify_all(ctx: &Context) -> CmdResult {
    let r = report::verify_all(ctx.max_rank, ctx.seed);
    Ok(Outcome {
        report: r,
        text: String::new(),
    })
}
