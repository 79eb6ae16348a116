//! Deterministic text serialization of bases, cones, fans and slices.

use std::fmt::Write as _;

use tfan::cone::{dd_rays, implicit_equalities, irredundant_inequalities, ConeData, HCone, Slice};
use tfan::division::StandardBasis;
use tfan::exact::{IVector, Int, Rat};
use tfan::fan::Fan;
use tfan::poly::{MonomialOrdering, Polynomial};

use crate::parse::{parse_polynomial, parse_rational_list, parse_tiebreak};

pub fn int_row(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn rat_row(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn ring_line(names: &[String]) -> String {
    format!("RING {}; {}", names[0], names[1..].join(", "))
}

pub fn order_line(ord: &MonomialOrdering, names: &[String]) -> String {
    let ws: Vec<String> = ord.weights().iter().map(|w| rat_row(w)).collect();
    let tb: Vec<&str> = ord.tiebreak().iter().map(|&i| names[i + 1].as_str()).collect();
    format!("ORDER weights {}; tiebreak {}", ws.join(", "), tb.join(" > "))
}

fn polys(out: &mut String, indent: &str, gs: &[Polynomial], names: &[String]) {
    for g in gs {
        let _ = writeln!(out, "{indent}{}", g.fmt_with(names));
    }
}

pub fn sb_block(sb: &StandardBasis, names: &[String]) -> String {
    let mut out = String::from("SB\n");
    let _ = writeln!(out, "{}", ring_line(names));
    let _ = writeln!(out, "{}", order_line(&sb.ordering, names));
    let _ = writeln!(out, "ELEMENTS {}", sb.len());
    polys(&mut out, "  ", &sb.elements, names);
    out.push_str("END\n");
    out
}

pub fn initial_block(w: &[Rat], forms: &[Polynomial], names: &[String]) -> String {
    let mut out = String::from("INITIAL\n");
    let _ = writeln!(out, "WEIGHT {}", rat_row(w));
    let _ = writeln!(out, "ELEMENTS {}", forms.len());
    polys(&mut out, "  ", forms, names);
    out.push_str("END\n");
    out
}

fn sorted(mut rows: Vec<IVector>) -> Vec<IVector> {
    rows.sort();
    rows
}

fn cone_body(out: &mut String, indent: &str, c: &HCone, data: &ConeData) {
    let rows = |out: &mut String, title: &str, rs: &[IVector]| {
        let _ = writeln!(out, "{indent}{title}");
        for r in rs {
            let _ = writeln!(out, "{indent}  {}", int_row(r));
        }
    };
    let _ = writeln!(out, "{indent}DIM {}", data.dim);
    rows(out, "LINEALITY", &data.lineality);
    rows(out, "RAYS", &data.rays);
    rows(out, "INEQ", &sorted(irredundant_inequalities(c)));
    rows(out, "EQ", &sorted(implicit_equalities(c)));
}

pub fn cone_block(c: &HCone) -> String {
    let mut out = String::from("CONE\n");
    let _ = writeln!(out, "AMBIENT {}", c.ambient);
    cone_body(&mut out, "", c, &dd_rays(c));
    out.push_str("END\n");
    out
}

pub fn fan_block(fan: &Fan, names: &[String]) -> String {
    let mut out = String::from("FAN\n");
    let _ = writeln!(out, "AMBIENT {}", names.len());
    let _ = writeln!(out, "CONES {}", fan.len());
    for (i, c) in fan.maximal_cones.iter().enumerate() {
        let _ = writeln!(out, "MAXCONE {i}");
        let _ = writeln!(out, "  WEIGHT {}", rat_row(&c.interior_weight));
        let lts: Vec<String> = c.basis.leading_terms().into_iter().map(|t| Polynomial::from_term(t).fmt_with(names)).collect();
        let _ = writeln!(out, "  LEADING {}", lts.join(", "));
        out.push_str("  BASIS\n");
        polys(&mut out, "    ", &c.basis.elements, names);
        cone_body(&mut out, "  ", &c.hcone, &c.data);
    }
    for e in &fan.adjacency {
        let _ = writeln!(out, "ADJ {} {}", e.a, e.b);
    }
    out.push_str("END\n");
    out
}

pub fn slice_block(label: Option<usize>, fix: &[(usize, Rat)], s: &Slice) -> String {
    let mut out = String::from("SLICE\n");
    if let Some(i) = label {
        let _ = writeln!(out, "CONE {i}");
    }
    let fixes: Vec<String> = fix.iter().map(|(i, v)| format!("{i}={v}")).collect();
    let _ = writeln!(out, "FIX {}", fixes.join(","));
    out.push_str("VERTICES\n");
    for v in &s.vertices {
        let _ = writeln!(out, "  {}", rat_row(v));
    }
    out.push_str("RAYS\n");
    for r in &s.rays {
        let _ = writeln!(out, "  {}", int_row(r));
    }
    if !s.pointed {
        out.push_str("POINTS\n");
        for v in &s.points {
            let _ = writeln!(out, "  {}", rat_row(v));
        }
    }
    out.push_str("END\n");
    out
}

fn int_list(s: &str) -> Result<IVector, String> {
    let q = parse_rational_list(s)?;
    q.into_iter()
        .map(|x| if x.is_integer() { Ok(x.to_integer()) } else { Err(format!("non-integer entry {x}")) })
        .collect()
}

/// Reads back a `CONE` block.
pub fn parse_cone_block(text: &str) -> Result<HCone, String> {
    let mut ambient = None;
    let mut section = "";
    let (mut ineqs, mut eqs) = (Vec::new(), Vec::new());
    for line in text.lines() {
        let l = line.trim();
        if let Some(a) = l.strip_prefix("AMBIENT ") {
            ambient = Some(a.trim().parse::<usize>().map_err(|e| e.to_string())?);
        } else if l.starts_with('(') {
            match section {
                "INEQ" => ineqs.push(int_list(l)?),
                "EQ" => eqs.push(int_list(l)?),
                _ => {}
            }
        } else {
            section = l.split_whitespace().next().unwrap_or("");
        }
    }
    let ambient = ambient.ok_or("missing AMBIENT")?;
    HCone::new(ambient, ineqs, eqs).map_err(|e| e.to_string())
}

/// Reads back an `SB` block as variable names and a basis.
pub fn parse_sb_block(text: &str) -> Result<(Vec<String>, StandardBasis), String> {
    let mut names: Vec<String> = Vec::new();
    let mut ord = None;
    let mut elements = Vec::new();
    let mut in_elements = false;
    for line in text.lines() {
        let l = line.trim();
        if let Some(r) = l.strip_prefix("RING ") {
            let (t, xs) = r.split_once(';').ok_or("bad RING line")?;
            names = std::iter::once(t.trim().to_string())
                .chain(xs.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()))
                .collect();
        } else if let Some(r) = l.strip_prefix("ORDER weights ") {
            let (ws, tb) = r.split_once("; tiebreak ").ok_or("bad ORDER line")?;
            let weights = ws
                .split("), ")
                .map(|w| parse_rational_list(w))
                .collect::<Result<Vec<_>, _>>()?;
            let tiebreak = parse_tiebreak(tb, &names)?;
            ord = Some(MonomialOrdering::new(names.len() - 1, weights, tiebreak).map_err(|e| e.to_string())?);
        } else if l.starts_with("ELEMENTS") {
            in_elements = true;
        } else if l == "END" {
            in_elements = false;
        } else if in_elements {
            elements.push(parse_polynomial(l, &names).map_err(|(_, m)| m)?);
        }
    }
    let ord = ord.ok_or("missing ORDER")?;
    Ok((names, StandardBasis::new(elements, ord)))
}
