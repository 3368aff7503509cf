//! One function per subcommand, each producing a [`Report`].

use std::path::Path;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use orbwidth::characters::{dixon_table, CharacterTable, Residuals, TableJson};
use orbwidth::constructions::{
    nu, nu_ratio_bound, singer_matrix, transvection, AutSelector, Construction, FiniteField, GroupSpec, MatrixFq,
};
use orbwidth::diagonal::{
    bound_certificate, construct_path, distances_from, gamma0, make_geometry, orbital_graph, orbital_record,
    orbital_representatives, suborbits, to_dot, widths_for, BoundCertificate, DiagonalGeometry, DiagonalReport,
    GeometryOptions, OrbitalRecord, Variant,
};
use orbwidth::group::{EnumeratedGroup, Permutation};
use orbwidth::widths::{class_widths, covering_number_of_class, AutomorphismSet, WidthReport};
use orbwidth::{Error, Result};

use crate::config::RunConfig;
use crate::output::{Report, Table};

/// Soft wall-clock limit; work checks it between independent pieces.
#[derive(Debug, Clone, Copy)]
pub struct Deadline(Option<Instant>);

impl Deadline {
    pub fn new(seconds: Option<f64>) -> Self {
        Deadline(seconds.map(|s| Instant::now() + Duration::from_secs_f64(s)))
    }

    pub fn none() -> Self {
        Deadline(None)
    }

    pub fn expired(&self) -> bool {
        self.0.is_some_and(|d| Instant::now() >= d)
    }
}

pub struct Context {
    pub config: RunConfig,
    pub deadline: Deadline,
}

impl Context {
    pub fn new(config: RunConfig) -> Self {
        let deadline = Deadline::new(config.max_seconds);
        Context { config, deadline }
    }

    pub fn build(&self, spec: &str) -> Result<Construction> {
        spec.parse::<GroupSpec>()?.build(self.config.caps.order_cap)
    }
}

fn automorphisms(construction: &Construction, selector: &str) -> Result<AutomorphismSet> {
    let auts = selector.parse::<AutSelector>()?.resolve(construction)?;
    AutomorphismSet::new(&construction.group, &auts)
}

pub fn parse_element(group: &EnumeratedGroup, cycles: &str) -> Result<u32> {
    let p = Permutation::parse_cycles(group.degree(), cycles)?;
    group
        .index_of(&p)
        .ok_or_else(|| Error::InvalidArgument(format!("{cycles} is not in the group")))
}

/// Runs `f` on every nontrivial class id, in class order, until the
/// deadline passes. The flag reports whether every class was done.
fn per_class<R: Send>(
    group: &EnumeratedGroup,
    deadline: Deadline,
    f: impl Fn(usize) -> Result<R> + Sync,
) -> Result<(Vec<R>, bool)> {
    let results: Vec<Option<Result<R>>> = (1..group.classes().len())
        .into_par_iter()
        .map(|id| (!deadline.expired()).then(|| f(id)))
        .collect();
    let complete = results.iter().all(Option::is_some);
    let done = results.into_iter().flatten().collect::<Result<Vec<_>>>()?;
    Ok((done, complete))
}

#[derive(Debug, Serialize)]
struct ClassInfo {
    index: usize,
    representative: String,
    size: usize,
    rep_order: u64,
}

#[derive(Debug, Serialize)]
struct InfoReport {
    group: String,
    degree: usize,
    order: usize,
    class_count: usize,
    classes: Vec<ClassInfo>,
}

pub fn info(ctx: &Context, spec: &str) -> Result<Report> {
    let c = ctx.build(spec)?;
    let g = &c.group;
    let classes: Vec<ClassInfo> = g
        .classes()
        .classes()
        .iter()
        .enumerate()
        .map(|(index, cl)| ClassInfo {
            index,
            representative: g.element(cl.representative).to_cycle_string(),
            size: cl.size(),
            rep_order: g.element_order(cl.representative),
        })
        .collect();
    let mut table = Table::new(&["class", "representative", "size", "order"]);
    for cl in &classes {
        table.push(vec![
            cl.index.to_string(),
            cl.representative.clone(),
            cl.size.to_string(),
            cl.rep_order.to_string(),
        ]);
    }
    let body = InfoReport {
        group: c.name.clone(),
        degree: g.degree(),
        order: g.order(),
        class_count: classes.len(),
        classes,
    };
    Report::new(&body, true, table)
}

pub fn width_report(ctx: &Context, spec: &str, selector: &str) -> Result<(WidthReport, bool)> {
    let c = ctx.build(spec)?;
    let auts = automorphisms(&c, selector)?;
    let g = &c.group;
    g.ensure_mul_table();
    g.class_products();
    let cap = ctx.config.caps.cn_cap;
    let (classes, complete) = per_class(g, ctx.deadline, |id| class_widths(g, id, &auts, cap))?;
    Ok((
        WidthReport::assemble(c.name.clone(), g.order(), selector.to_string(), classes),
        complete,
    ))
}

pub fn widths(ctx: &Context, spec: &str, selector: &str) -> Result<Report> {
    let (report, complete) = width_report(ctx, spec, selector)?;
    let mut table = Table::new(&["representative", "size", "order", "c", "c_i", "c_x", "cn"]);
    for cl in &report.classes {
        table.push(vec![
            cl.rep_cycles.clone(),
            cl.size.to_string(),
            cl.element_order.to_string(),
            cl.c.to_string(),
            cl.c_i.to_string(),
            cl.c_x.to_string(),
            cl.cn.to_string(),
        ]);
    }
    let m = report.maxima;
    table.push(vec![
        "max".into(),
        String::new(),
        String::new(),
        m.c.to_string(),
        m.c_i.to_string(),
        m.c_a.to_string(),
        m.cn.to_string(),
    ]);
    Report::new(&report, complete, table)
}

#[derive(Debug, Serialize)]
struct CoveringClass {
    representative: String,
    size: usize,
    element_order: u64,
    cn: u32,
}

#[derive(Debug, Serialize)]
struct CoveringReport {
    group: String,
    order: usize,
    classes: Vec<CoveringClass>,
    cn: u32,
}

pub fn covering(ctx: &Context, spec: &str) -> Result<Report> {
    let c = ctx.build(spec)?;
    let g = &c.group;
    g.ensure_mul_table();
    g.class_products();
    let cap = ctx.config.caps.cn_cap;
    let (classes, complete) = per_class(g, ctx.deadline, |id| {
        let cl = g.classes().class(id);
        Ok(CoveringClass {
            representative: g.element(cl.representative).to_cycle_string(),
            size: cl.size(),
            element_order: g.element_order(cl.representative),
            cn: covering_number_of_class(g, id, cap)?,
        })
    })?;
    let mut table = Table::new(&["representative", "size", "order", "cn"]);
    for cl in &classes {
        table.push(vec![
            cl.representative.clone(),
            cl.size.to_string(),
            cl.element_order.to_string(),
            cl.cn.to_string(),
        ]);
    }
    let body = CoveringReport {
        group: c.name.clone(),
        order: g.order(),
        cn: classes.iter().map(|c| c.cn).max().unwrap_or(0),
        classes,
    };
    Report::new(&body, complete, table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    F64,
    F32,
}

#[derive(Debug, Serialize)]
struct ChartableReport {
    group: String,
    precision: Precision,
    tolerance: f64,
    residuals: ResidualsJson,
    table: TableJson,
}

#[derive(Debug, Serialize)]
struct ResidualsJson {
    rows: f64,
    columns: f64,
}

fn format_complex(re: f64, im: f64) -> String {
    let clean = |x: f64| {
        let r = (x * 1e6).round() / 1e6;
        if r == 0.0 {
            0.0
        } else {
            r
        }
    };
    let (re, im) = (clean(re), clean(im));
    match (re, im) {
        (_, 0.0) => format!("{re}"),
        (0.0, _) => format!("{im}i"),
        _ if im < 0.0 => format!("{re}-{}i", -im),
        _ => format!("{re}+{im}i"),
    }
}

fn table_report<T: num_traits::Float>(
    name: &str,
    precision: Precision,
    t: &CharacterTable<T>,
    res: Residuals<T>,
) -> Result<Report> {
    let json = t.to_json();
    let mut header = vec!["character".to_string(), "degree".to_string()];
    header.extend((0..t.rank()).map(|i| format!("class{i}")));
    let mut table = Table {
        header,
        rows: Vec::new(),
    };
    for (chi, row) in json.values.iter().enumerate() {
        let mut cells = vec![chi.to_string(), json.degrees[chi].to_string()];
        cells.extend(row.iter().map(|&[re, im]| format_complex(re, im)));
        table.push(cells);
    }
    let f = |x: T| x.to_f64().unwrap_or(f64::NAN);
    let body = ChartableReport {
        group: name.to_string(),
        precision,
        tolerance: f(t.tolerance),
        residuals: ResidualsJson {
            rows: f(res.rows),
            columns: f(res.columns),
        },
        table: json,
    };
    Report::new(&body, true, table)
}

pub fn chartable(ctx: &Context, spec: &str, precision: Precision) -> Result<Report> {
    let c = ctx.build(spec)?;
    let cap = ctx.config.caps.table_cap;
    match precision {
        Precision::F64 => {
            let t = dixon_table::<f64>(&c.group, cap)?;
            let res = t.validate()?;
            table_report(&c.name, precision, &t, res)
        }
        Precision::F32 => {
            let t = dixon_table::<f32>(&c.group, cap)?;
            let res = t.validate()?;
            table_report(&c.name, precision, &t, res)
        }
    }
}

/// Parameters shared by the diagonal commands.
#[derive(Debug, Clone)]
pub struct GeometryRequest {
    pub group: String,
    pub k: usize,
    pub variant: String,
    pub aut: Option<String>,
    pub coords: Vec<String>,
    pub allow_imprimitive: bool,
}

fn variant_for(construction: &Construction, req: &GeometryRequest) -> Result<Variant> {
    let aut = |default: &str| automorphisms(construction, req.aut.as_deref().unwrap_or(default));
    match req.variant.to_ascii_lowercase().as_str() {
        "tk" => Ok(Variant::Tk),
        "tksk" => Ok(Variant::TkSk),
        "dkt" => Ok(Variant::DkT(aut("aut")?)),
        "custom" => Ok(Variant::Custom {
            automorphisms: aut("inn")?,
            coordinates: req
                .coords
                .iter()
                .map(|s| Permutation::parse_cycles(req.k, s))
                .collect::<Result<_>>()?,
        }),
        other => Err(Error::Parse(format!(
            "unknown variant {other:?}; expected Tk, TkSk, DkT or custom"
        ))),
    }
}

fn with_geometry<R>(
    ctx: &Context,
    req: &GeometryRequest,
    f: impl FnOnce(&Construction, &DiagonalGeometry<'_>) -> Result<R>,
) -> Result<R> {
    let c = ctx.build(&req.group)?;
    let variant = variant_for(&c, req)?;
    let options = GeometryOptions {
        point_cap: ctx.config.caps.point_cap,
        allow_imprimitive: req.allow_imprimitive,
    };
    let geometry = make_geometry(&c.group, req.k, variant, options)?;
    f(&c, &geometry)
}

fn certificate_row(table: &mut Table, cert: &BoundCertificate) {
    table.push(vec![
        format!("Gamma_0^{}", cert.t),
        String::new(),
        String::new(),
        cert.measured.to_string(),
        format!(
            "{} <= d <= {}{}",
            cert.lower,
            cert.upper,
            cert.upper_quadratic.map(|u| format!(", d <= {u}")).unwrap_or_default()
        ),
    ]);
}

pub fn orbdiam(ctx: &Context, req: &GeometryRequest) -> Result<Report> {
    with_geometry(ctx, req, |c, geom| {
        let subs = suborbits(geom);
        let reps = orbital_representatives(&subs, geom);
        let visits: u128 = reps
            .iter()
            .map(|&b| {
                let paired = subs.orbit_of[geom.reversal(b)] as usize;
                let id = subs.orbit_of[b] as usize;
                let valency = subs.orbits[id].len() + if paired == id { 0 } else { subs.orbits[paired].len() };
                valency as u128 * geom.size() as u128
            })
            .sum();
        eprintln!(
            "work estimate: {} points, rank {}, {} orbital graphs, {visits} neighbor visits",
            geom.size(),
            subs.rank(),
            reps.len()
        );
        let mut complete = true;
        let mut orbitals = Vec::new();
        for beta in reps {
            if ctx.deadline.expired() {
                complete = false;
                break;
            }
            orbitals.push(orbital_record(&orbital_graph(geom, &subs, beta)?, &subs)?);
        }
        let mut certificates = Vec::new();
        for cl in &geom.group().classes().classes()[1..] {
            if ctx.deadline.expired() {
                complete = false;
                break;
            }
            let t = cl.representative;
            certificates.push(bound_certificate(geom, &subs, t, widths_for(geom, t)?)?);
        }
        let report = DiagonalReport {
            group: c.name.clone(),
            k: geom.k(),
            variant: geom.kind().name(),
            omega_size: geom.size(),
            rank: subs.rank(),
            orbdiam: orbitals.iter().map(|r| r.diameter).max().unwrap_or(0),
            orbitals,
            certificates,
        };
        let mut table = Table::new(&["graph", "suborbit_size", "valency", "diameter", "bounds"]);
        for r in &report.orbitals {
            table.push(vec![
                format!("orbital of {}", r.representative),
                r.suborbit_size.to_string(),
                r.valency.to_string(),
                r.diameter.to_string(),
                String::new(),
            ]);
        }
        for cert in &report.certificates {
            certificate_row(&mut table, cert);
        }
        table.push(vec![
            "orbdiam".into(),
            String::new(),
            String::new(),
            report.orbdiam.to_string(),
            String::new(),
        ]);
        Report::new(&report, complete, table)
    })
}

#[derive(Debug, Serialize)]
struct Gamma0Report {
    #[serde(rename = "T")]
    group: String,
    k: usize,
    variant: &'static str,
    t: String,
    orbital: OrbitalRecord,
    certificate: BoundCertificate,
}

pub fn gamma0_cmd(ctx: &Context, req: &GeometryRequest, t: &str, dot: Option<&Path>) -> Result<Report> {
    with_geometry(ctx, req, |c, geom| {
        let t = parse_element(geom.group(), t)?;
        let subs = suborbits(geom);
        let graph = gamma0(geom, &subs, t)?;
        if let Some(path) = dot {
            std::fs::write(path, to_dot(&graph)?).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        }
        let orbital = orbital_record(&graph, &subs)?;
        let certificate = bound_certificate(geom, &subs, t, widths_for(geom, t)?)?;
        let mut table = Table::new(&["graph", "suborbit_size", "valency", "diameter", "bounds"]);
        table.push(vec![
            format!("Gamma_0^{}", certificate.t),
            orbital.suborbit_size.to_string(),
            orbital.valency.to_string(),
            orbital.diameter.to_string(),
            String::new(),
        ]);
        certificate_row(&mut table, &certificate);
        let body = Gamma0Report {
            group: c.name.clone(),
            k: geom.k(),
            variant: geom.kind().name(),
            t: certificate.t.clone(),
            orbital,
            certificate,
        };
        Report::new(&body, true, table)
    })
}

/// A point from `k-1` coordinates `x_2; ...; x_k` or `k` coset entries
/// `h_1; ...; h_k`, each in cycle notation.
pub fn parse_point(geom: &DiagonalGeometry<'_>, text: &str) -> Result<usize> {
    let g = geom.group();
    let entries = text
        .split(';')
        .map(|s| parse_element(g, s.trim()))
        .collect::<Result<Vec<_>>>()?;
    let coords = match entries.len() {
        n if n == geom.k() - 1 => entries,
        n if n == geom.k() => {
            let h1 = g.inv(entries[0]);
            entries[1..].iter().map(|&h| g.mul(h1, h)).collect()
        }
        n => {
            return Err(Error::Parse(format!(
                "target has {n} entries, expected {} or {}",
                geom.k() - 1,
                geom.k()
            )))
        }
    };
    Ok(geom.encode(&coords))
}

#[derive(Debug, Serialize)]
struct PathReport {
    #[serde(rename = "T")]
    group: String,
    k: usize,
    variant: &'static str,
    t: String,
    target: Vec<String>,
    distance: u32,
    length: usize,
    bound: u32,
    path: Vec<Vec<String>>,
}

pub fn path(ctx: &Context, req: &GeometryRequest, t: &str, target: &str) -> Result<Report> {
    with_geometry(ctx, req, |c, geom| {
        let g = geom.group();
        let t = parse_element(g, t)?;
        let target = parse_point(geom, target)?;
        let subs = suborbits(geom);
        let graph = gamma0(geom, &subs, t)?;
        let steps = construct_path(&graph, target)?;
        let distance = distances_from(&graph, 0)[target];
        let name = |p: usize| -> Vec<String> {
            geom.decode(p)
                .into_iter()
                .map(|x| g.element(x).to_cycle_string())
                .collect()
        };
        let bound = (geom.k() as u32 - 1) * widths_for(geom, t)?.c_i;
        let mut table = Table::new(&["step", "point"]);
        for (i, &p) in steps.iter().enumerate() {
            table.push(vec![(i + 1).to_string(), name(p).join("; ")]);
        }
        let body = PathReport {
            group: c.name.clone(),
            k: geom.k(),
            variant: geom.kind().name(),
            t: g.element(t).to_cycle_string(),
            target: name(target),
            distance,
            length: steps.len(),
            bound,
            path: steps.iter().map(|&p| name(p)).collect(),
        };
        Report::new(&body, true, table)
    })
}

#[derive(Debug, Serialize)]
struct NuReport {
    n: usize,
    q: u64,
    transvection: usize,
    singer: usize,
    ratio: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    element: Option<usize>,
}

/// Rows separated by `;`, entries by whitespace, as field element codes.
pub fn parse_matrix(text: &str) -> Result<MatrixFq> {
    let rows = text
        .split(';')
        .map(|r| {
            r.split_whitespace()
                .map(|x| x.parse().map_err(|_| Error::Parse(format!("bad matrix entry {x:?}"))))
                .collect::<Result<Vec<u32>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    MatrixFq::from_rows(&rows)
}

pub fn nu_cmd(n: usize, q: u64, rows: Option<&str>) -> Result<Report> {
    if n < 2 {
        return Err(Error::InvalidArgument("need n >= 2".into()));
    }
    let f = FiniteField::new(q)?;
    let nu_trans = nu(&f, &transvection(n));
    let nu_singer = nu(&f, &singer_matrix(&f, n)?);
    // largest value over the group against the value on the class
    let ratio = nu_ratio_bound(nu_singer as u32, nu_trans as u32)?;
    let element = rows
        .map(|r| {
            let m = parse_matrix(r)?;
            if m.size() != n || m.rows().iter().flatten().any(|&x| x >= f.order()) {
                return Err(Error::InvalidArgument(format!("matrix is not {n}x{n} over F_{q}")));
            }
            Ok(nu(&f, &m))
        })
        .transpose()?;
    let mut table = Table::new(&["element", "nu"]);
    table.push(vec!["transvection".into(), nu_trans.to_string()]);
    table.push(vec!["singer".into(), nu_singer.to_string()]);
    table.push(vec!["singer/transvection".into(), ratio.to_string()]);
    if let Some(v) = element {
        table.push(vec!["given".into(), v.to_string()]);
    }
    let body = NuReport {
        n,
        q,
        transvection: nu_trans,
        singer: nu_singer,
        ratio: ratio.to_string(),
        element,
    };
    Report::new(&body, true, table)
}
