use invar::invariants::{
    curve_conductor_rational, delta_general, delta_qgorenstein, delta_rational, genus_reduced,
    is_symmetric, semigroup_genus, CurveData, DeltaReport, PgData,
};
use invar::laufer::{is_rational, laufer_closure, minimal_class_cycle, minimal_cycle, ComputationSequence};
use invar::pgseries::{equivariant_pg, pg_table, pinkham_pg, PgRow};
use invar::rational::{format_rational, int};
use invar::seifert::{conductor_formula, scalar_invariants, semigroup, SemigroupView};
use invar::{Graph, QCycle};
use serde_json::{json, Value};

use crate::{dual_channel, load, CliError, Report, Source};

fn rat(r: &invar::Rational) -> String {
    format_rational(r)
}

/// `[{"add": v, "cycle": [...]}]`, one entry per added `E_v`.
pub fn trace_json(seq: &ComputationSequence) -> Value {
    seq.steps()
        .map(|(cycle, v)| json!({ "add": v, "cycle": cycle }))
        .collect()
}

pub fn graph_info(source: &Source, duals: bool, trace: bool) -> Result<Report, CliError> {
    let loaded = load(source)?;
    let g = &loaded.graph;
    let mut r = Report::for_input("graph-info", &loaded);
    r.put("vertices", g.num_vertices());
    r.put("det", g.det_abs());
    r.put("h_order", g.group_order());
    r.put("group_factors", g.group().factors());
    r.put("zk", g.canonical_cycle());
    r.put("numerically_gorenstein", g.is_numerically_gorenstein());
    let zmin = minimal_cycle(g);
    r.put("z_min", &zmin);
    r.put("chi_z_min", rat(&g.chi(&zmin)));
    r.put("rational", is_rational(g));
    match loaded.star() {
        Ok(star) => r.put("seifert", star.data().to_string()),
        Err(_) => r.put("seifert", Value::Null),
    }
    if duals {
        let list: Vec<Value> = (0..g.num_vertices())
            .map(|v| json!({ "vertex": v, "cycle": g.dual(v) }))
            .collect();
        r.put("duals", list);
    }
    if trace {
        let n = g.num_vertices();
        let (_, seq) = laufer_closure(g, &QCycle::basis(n, 0))?;
        r.put("trace", trace_json(&seq));
    }
    Ok(r)
}

pub fn seifert_info(source: &Source) -> Result<Report, CliError> {
    let loaded = load(source)?;
    let star = loaded.star()?;
    let g = star.graph();
    let sf = star.data();
    let sc = scalar_invariants(sf);
    let mut r = Report::for_input("seifert-info", &loaded);
    r.put("seifert", sf.to_string());
    r.put("b0", sf.b0());
    r.put("legs", sf.legs());
    r.put("central", star.central());
    r.put("leg_vertices", star.legs());
    r.put("eulers", g.eulers());
    r.put("e", rat(&sc.e));
    r.put("alpha_lcm", sc.alpha_lcm);
    r.put("h_order", dual_channel(rat(&sc.h_order), g.group_order().to_string()));
    let o = g.order_of(&star.central_class());
    r.put("o", dual_channel(rat(&sc.o_order), o.to_string()));
    let zk0 = &g.canonical_cycle()[star.central()] - int(1);
    r.put("gamma", dual_channel(rat(&sc.gamma), rat(&zk0)));
    r.put("zk", g.canonical_cycle());
    Ok(r)
}

/// Minimal generators of a numerical semigroup given by its view.
pub fn generators(view: &SemigroupView) -> Vec<i64> {
    let Some(m) = (1..).find(|&l| view.contains(l)) else {
        return Vec::new();
    };
    let limit = view.conductor + m;
    let members: Vec<i64> = (1..limit).filter(|&l| view.contains(l)).collect();
    members
        .iter()
        .copied()
        .filter(|&l| !members.iter().any(|&a| a < l && view.contains(l - a) && l - a > 0))
        .collect()
}

pub fn semigroup_cmd(source: &Source) -> Result<Report, CliError> {
    let loaded = load(source)?;
    let star = loaded.star()?;
    let table = pg_table(&star);
    let view = semigroup(star.data());
    let mut r = Report::for_input("semigroup", &loaded);
    r.put("seifert", star.data().to_string());
    r.put("gaps", &view.gaps);
    r.put("small_elements", &view.small_elements);
    r.put("generators", generators(&view));
    r.put("genus", dual_channel(genus_reduced(&star, &table)?, view.genus));
    r.put("genus_full_formula", semigroup_genus(&star, &table)?);
    let c = conductor_formula(&star);
    r.put("conductor", dual_channel(rat(&c), view.conductor.to_string()));
    r.put("frobenius", view.frobenius);
    let v = is_symmetric(&star, &table)?;
    r.put(
        "symmetric",
        json!({
            "direct": v.direct,
            "criterion": v.criterion,
            "sufficient_zk_e0": v.sufficient_zk_e0,
            "rational_criterion": v.rational_criterion,
            "consistent": v.direct == v.criterion,
        }),
    );
    if v.rational_criterion == Some(false) && v.direct {
        r.warn("symmetric although b0 < d and [Z_K + E*_0] != 0; the rational criterion is only sufficient");
    }
    Ok(r)
}

fn delta_json(report: &DeltaReport) -> Value {
    json!({ "delta": report.delta, "path": report.path, "terms": report.terms })
}

pub fn delta(path: &std::path::Path, trace: bool) -> Result<Report, CliError> {
    let loaded = load(&Source::File(path.to_path_buf()))?;
    let g = &loaded.graph;
    if g.arrows().is_empty() {
        return Err(CliError::Domain("graph has no arrows; delta needs a curve".into()));
    }
    let curve = CurveData::from_graph(g)?;
    let pg = PgData::for_graph(g)?;
    let mut r = Report::for_input("delta", &loaded);
    r.put("arrows", curve.arrows());
    r.put("curve_cycle", curve.cycle());
    r.put("curve_class", curve.class().rep());
    r.put("path", pg.path());

    let mut values = Vec::new();
    let general = delta_general(g, &curve, &pg)?;
    values.push(general.delta);
    let q = delta_qgorenstein(g, &curve, &pg);
    let rational = if is_rational(g) { Some(delta_rational(g, &curve)?) } else { None };
    let mut formulas = serde_json::Map::new();
    formulas.insert("general".into(), delta_json(&general));
    match &q {
        Ok(rep) => {
            values.push(rep.delta);
            formulas.insert("qgorenstein".into(), delta_json(rep));
        }
        Err(e) => {
            r.warn(format!("q-Gorenstein form not applicable: {e}"));
            formulas.insert("qgorenstein".into(), Value::Null);
        }
    }
    if let Some(rep) = &rational {
        values.push(rep.delta);
        formulas.insert("rational".into(), delta_json(rep));
    }
    let main = q.as_ref().unwrap_or(&general);
    r.put("delta", main.delta);
    r.put("terms", main.terms.iter().map(|t| rat(&t.value)).collect::<Vec<_>>());
    r.put("formulas", formulas);
    r.put("consistent", values.windows(2).all(|w| w[0] == w[1]));
    if rational.is_some() {
        match curve_conductor_rational(g, &curve) {
            Ok(map) => r.put("conductor_exponents", map),
            Err(e) => r.warn(format!("conductor exponents: {e}")),
        }
    }
    if trace {
        let h = g.class_add(&g.canonical_class(), curve.class());
        let (_, seq) = laufer_closure(g, h.rep())?;
        r.put("trace", trace_json(&seq));
    }
    Ok(r)
}

fn rational_rows(g: &Graph) -> Vec<PgRow> {
    g.classes()
        .map(|k| {
            let h = g.class_from_key(&k);
            let s = minimal_class_cycle(g, &h);
            let pg = g.chi(h.rep()) - g.chi(&s);
            PgRow {
                class: h.rep().clone(),
                pg: invar::rational::to_i64(&pg).expect("integral"),
            }
        })
        .collect()
}

pub fn pg(source: &Source) -> Result<Report, CliError> {
    let loaded = load(source)?;
    let g = &loaded.graph;
    let mut r = Report::for_input("pg", &loaded);
    match loaded.star() {
        Ok(star) => {
            let table = pg_table(&star);
            let counting = equivariant_pg(g, &g.class_zero())?;
            r.put("path", "star-shaped");
            r.put("pg", table.total());
            r.put(
                "pg_checks",
                json!({
                    "graded": table.total(),
                    "pinkham": pinkham_pg(star.data()),
                    "counting": counting,
                    "consistent": table.total() == counting && counting == pinkham_pg(star.data()),
                }),
            );
            r.put("classes", table.rows(g));
        }
        Err(e) if is_rational(g) => {
            r.warn(format!("not star-shaped ({e}); using the rational identity p_g_h = chi(r_h) - chi(s_h)"));
            r.put("path", "rational");
            r.put("pg", 0);
            r.put("classes", rational_rows(g));
        }
        Err(e) => return Err(e),
    }
    Ok(r)
}
