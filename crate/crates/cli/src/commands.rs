use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use vcinv::hilbert::closed_form_series_sl2;
use vcinv::invariants::{basis_degrees, verify_h_relations, verify_identity, IdentityTag};
use vcinv::ringcalc::{
    dimension_table, gl2_generators, relative_trace, sl2_generators_with_h1, subalgebra_nonmembership_h1,
    verify_free_basis, verify_generators,
};
use vcinv::{BasisId, FieldSpec, GroupKind, HilbertSeries, IdentityReport, InvariantCatalog, Poly, Status};

use crate::output::{csv, json, Rendered};
use crate::{Cli, Command, Format, GroupArg};

pub fn run(cli: &Cli) -> Result<Rendered> {
    let f = cli.format;
    match &cli.command {
        Command::Identities { q } => identities(f, q),
        Command::Dims { group, q, max_deg } => dims(f, *group, q, *max_deg),
        Command::Hilbert { group, q, expand } => hilbert(f, *group, q, *expand),
        Command::Gorenstein { group, q } => gorenstein(f, *group, q),
        Command::BasisCheck { basis, q, max_deg } => basis_check(f, *basis, q, *max_deg),
        Command::GeneratorsCheck { group, q, max_deg } => generators_check(f, *group, q, *max_deg),
        Command::NonmembershipH1 { q } => nonmembership(f, q),
        Command::Trace { q, poly } => trace(f, q, poly),
    }
}

fn catalog(q: &FieldSpec) -> Result<InvariantCatalog> {
    InvariantCatalog::new(q).context("building the invariant catalog")
}

#[derive(Serialize)]
struct IdentitiesOut {
    q: u32,
    field: String,
    identities: Vec<IdentityReport>,
    h_relations: Vec<IdentityReport>,
    status: Status,
}

fn identities(f: Format, q: &FieldSpec) -> Result<Rendered> {
    let cat = catalog(q)?;
    let identities: Vec<_> = IdentityTag::ALL.iter().map(|&t| verify_identity(&cat, t)).collect();
    let h_relations = verify_h_relations(&cat);
    let pass = identities.iter().chain(&h_relations).all(|r| r.status.is_pass());
    let out = IdentitiesOut {
        q: cat.q(),
        field: q.to_string(),
        identities,
        h_relations,
        status: Status::from_bool(pass),
    };
    let text = match f {
        Format::Json => json(&out)?,
        Format::Csv => csv(
            &["tag", "status", "witness"],
            out.identities
                .iter()
                .chain(&out.h_relations)
                .map(|r| [r.tag.clone(), r.status.to_string(), r.witness.clone().unwrap_or_default()]),
        )?,
        Format::Plain => {
            let mut s = format!("q = {} (field {})\n", out.q, out.field);
            for (r, tag) in out.identities.iter().zip(IdentityTag::ALL) {
                writeln!(s, "{:<6} {}  {}", r.tag, r.status, tag.statement())?;
                if let Some(w) = &r.witness {
                    writeln!(s, "       lhs - rhs = {w}")?;
                }
            }
            for r in &out.h_relations {
                writeln!(s, "{:<12} {}", r.tag, r.status)?;
                if let Some(w) = &r.witness {
                    writeln!(s, "       difference: {w}")?;
                }
            }
            let n_id = out.identities.iter().filter(|r| r.status.is_pass()).count();
            let n_h = out.h_relations.iter().filter(|r| r.status.is_pass()).count();
            writeln!(
                s,
                "{n_id}/{} identities PASS; {n_h}/{} h relations PASS",
                out.identities.len(),
                out.h_relations.len()
            )?;
            s
        }
    };
    Ok(Rendered::new(text, pass))
}

fn dims(f: Format, group: GroupArg, q: &FieldSpec, max_deg: u32) -> Result<Rendered> {
    let g = vcinv::Group::new(group.kind(), q);
    let table = dimension_table(&g, max_deg)?;
    let text = match f {
        Format::Json => json(&table)?,
        Format::Csv => csv(&["degree", "dim"], table.rows().map(|(d, n)| [d.to_string(), n.to_string()]))?,
        Format::Plain => {
            let mut s = format!("{} over {}: invariant dimensions by degree\n", table.group, q);
            for (d, n) in table.rows() {
                writeln!(s, "{d:>3}  {n}")?;
            }
            s
        }
    };
    Ok(Rendered::new(text, true))
}

/// Largest basis enumerated to build a Hilbert series.
const MAX_BASIS_TERMS: u64 = 2_000_000;

/// The series used for each group: closed form for `SL2`, basis series otherwise.
fn series_for(group: GroupArg, q: u32) -> Result<(HilbertSeries, Option<bool>)> {
    let id = match group {
        GroupArg::Sl2 => BasisId::S,
        GroupArg::Gl2 => BasisId::D,
        GroupArg::P2 => BasisId::P,
    };
    if id.rank(q) > MAX_BASIS_TERMS {
        bail!("basis {id} has {} elements at q = {q}, above the limit {MAX_BASIS_TERMS}", id.rank(q));
    }
    let basis = |id: BasisId, hsop: BasisId| HilbertSeries::from_free_module(&basis_degrees(q, id), &hsop.hsop_degrees(q));
    Ok(match group {
        GroupArg::Sl2 => {
            let closed = closed_form_series_sl2(q);
            let agrees = closed.series_equal(&basis(BasisId::S, BasisId::S));
            (closed, Some(agrees))
        }
        _ => (basis(id, id), None),
    })
}

#[derive(Serialize)]
struct HilbertOut {
    group: GroupKind,
    q: u32,
    series: HilbertSeries,
    #[serde(skip_serializing_if = "Option::is_none")]
    matches_basis_series: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    expansion: Option<Vec<u64>>,
}

fn hilbert(f: Format, group: GroupArg, q: &FieldSpec, expand: Option<u32>) -> Result<Rendered> {
    let qn = q.order();
    let (series, agrees) = series_for(group, qn)?;
    let expansion = expand
        .map(|d| {
            series
                .expand(d as usize)
                .iter()
                .map(|c| u64::try_from(c).context("coefficient out of range"))
                .collect::<Result<Vec<u64>>>()
        })
        .transpose()?;
    let pass = agrees.unwrap_or(true);
    let out = HilbertOut { group: group.kind(), q: qn, series, matches_basis_series: agrees, expansion };
    let text = match f {
        Format::Json => json(&out)?,
        Format::Csv => match &out.expansion {
            Some(e) => csv(&["degree", "coefficient"], e.iter().enumerate().map(|(d, c)| [d.to_string(), c.to_string()]))?,
            None => csv(
                &["exponent", "coefficient"],
                out.series.numerator_terms().map(|(e, c)| [e.to_string(), c.to_string()]),
            )?,
        },
        Format::Plain => {
            let mut s = format!("H({}, F_{qn}) = {}\n", out.group, out.series);
            if let Some(a) = agrees {
                writeln!(s, "closed form equals basis series: {}", if a { "PASS" } else { "FAIL" })?;
            }
            if let Some(e) = &out.expansion {
                let parts: Vec<String> = e.iter().map(u64::to_string).collect();
                writeln!(s, "expansion: {}", parts.join(", "))?;
            }
            s
        }
    };
    Ok(Rendered::new(text, pass))
}

#[derive(Serialize)]
struct GorensteinOut {
    group: GroupKind,
    q: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    i: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    status: Status,
}

fn gorenstein(f: Format, group: GroupArg, q: &FieldSpec) -> Result<Rendered> {
    let (series, _) = series_for(group, q.order())?;
    let r = series.gorenstein_check();
    let out = GorensteinOut {
        group: group.kind(),
        q: q.order(),
        i: r.as_ref().ok().copied(),
        error: r.as_ref().err().map(ToString::to_string),
        status: Status::from_bool(r.is_ok()),
    };
    let text = match f {
        Format::Json => json(&out)?,
        Format::Csv => csv(
            &["group", "q", "i", "status"],
            [[out.group.to_string(), out.q.to_string(), out.i.map(|i| i.to_string()).unwrap_or_default(), out.status.to_string()]],
        )?,
        Format::Plain => match (&out.i, &out.error) {
            (Some(i), _) => format!("i = {i}\n"),
            (None, Some(e)) => format!("not Gorenstein-symmetric: {e}\n"),
            (None, None) => unreachable!(),
        },
    };
    Ok(Rendered::new(text, out.status.is_pass()))
}

fn basis_check(f: Format, basis: BasisId, q: &FieldSpec, max_deg: u32) -> Result<Rendered> {
    let cat = catalog(q)?;
    let r = verify_free_basis(&cat, basis, max_deg)?;
    let text = match f {
        Format::Json => json(&r)?,
        Format::Csv => csv(
            &["degree", "count", "rank", "dim", "ok"],
            r.degrees.iter().map(|c| {
                [c.degree.to_string(), c.count.to_string(), c.rank.to_string(), c.dim.to_string(), c.ok().to_string()]
            }),
        )?,
        Format::Plain => {
            let mut s = format!(
                "basis {} over {}: {} invariants, hsop degrees {:?}, degrees 0..={}\n",
                r.basis, q, r.group, r.hsop_degrees, r.max_degree
            );
            writeln!(s, "{:>6} {:>6} {:>6} {:>6}", "degree", "count", "rank", "dim")?;
            for c in &r.degrees {
                writeln!(s, "{:>6} {:>6} {:>6} {:>6}{}", c.degree, c.count, c.rank, c.dim, if c.ok() { "" } else { "  <-" })?;
            }
            writeln!(s, "{}", r.status)?;
            s
        }
    };
    Ok(Rendered::new(text, r.status.is_pass()))
}

fn generators_check(f: Format, group: GroupArg, q: &FieldSpec, max_deg: u32) -> Result<Rendered> {
    let cat = catalog(q)?;
    let gens = match group {
        GroupArg::Gl2 => gl2_generators(cat.q()),
        GroupArg::Sl2 if cat.q() >= 3 => sl2_generators_with_h1(),
        GroupArg::Sl2 => bail!("the SL2 generating set with h_1 needs q >= 3"),
        GroupArg::P2 => bail!("no generating set is recorded for P2"),
    };
    let r = verify_generators(&cat, &gens, group.kind(), max_deg)?;
    let text = match f {
        Format::Json => json(&r)?,
        Format::Csv => csv(
            &["degree", "monomials", "rank", "dim"],
            r.degrees.iter().map(|c| [c.degree.to_string(), c.monomials.to_string(), c.rank.to_string(), c.dim.to_string()]),
        )?,
        Format::Plain => {
            let mut s = format!("generators {{{}}} for {} over {}\n", r.generators.join(", "), r.group, q);
            writeln!(s, "{:>6} {:>9} {:>6} {:>6}", "degree", "monomials", "rank", "dim")?;
            for c in &r.degrees {
                let flag = if c.rank == c.dim { "" } else { "  <-" };
                writeln!(s, "{:>6} {:>9} {:>6} {:>6}{flag}", c.degree, c.monomials, c.rank, c.dim)?;
            }
            writeln!(s, "{}", r.status)?;
            s
        }
    };
    Ok(Rendered::new(text, r.status.is_pass()))
}

fn nonmembership(f: Format, q: &FieldSpec) -> Result<Rendered> {
    let cat = catalog(q)?;
    let r = subalgebra_nonmembership_h1(&cat)?;
    let text = match f {
        Format::Json => json(&r)?,
        Format::Csv => csv(
            &["element", "in_span"],
            [("h_1", r.h1_in_span), ("c21", r.c21_in_span), ("h_0", r.h0_in_span)]
                .map(|(n, b)| [n.to_string(), b.to_string()]),
        )?,
        Format::Plain => {
            let word = |b: bool| if b { "inside" } else { "outside" };
            format!(
                "q = {}: subalgebra generated by d22, c21, d22s, c21s, u1s, u0, u1 in degree {}\n\
                 h_1 {}\nc21 {} (control)\nh_0 {} (control)\n{}\n",
                r.q,
                r.degree,
                word(r.h1_in_span),
                word(r.c21_in_span),
                word(r.h0_in_span),
                r.status
            )
        }
    };
    Ok(Rendered::new(text, r.status.is_pass()))
}

#[derive(Serialize)]
struct TraceOut {
    q: u32,
    input: String,
    trace: String,
}

fn trace(f: Format, q: &FieldSpec, poly: &str) -> Result<Rendered> {
    let p = Poly::parse(q, poly).context("parsing polynomial")?;
    let t = relative_trace(&p)?;
    let out = TraceOut { q: q.order(), input: p.to_string(), trace: t.to_string() };
    let text = match f {
        Format::Json => json(&out)?,
        Format::Csv => csv(&["q", "input", "trace"], [[out.q.to_string(), out.input.clone(), out.trace.clone()]])?,
        Format::Plain => format!("{}\n", out.trace),
    };
    Ok(Rendered::new(text, true))
}
