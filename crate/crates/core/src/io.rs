//! Text formats for matrices, matroids, phirotopes and signatures.
//!
//! Element labels are one-based in every file. `#` starts a comment.

use crate::error::{Error, Result};
use crate::gauss::GaussRational;
use crate::linalg::GaussMatrix;
use crate::matroid::Matroid;
use crate::phase::{Phase, PhaseVector};
use crate::phirotope::Phirotope;
use crate::set::{ElemSet, MAX_GROUND};
use crate::signature::{PhasedSignature, SignatureKind};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Non-empty lines with comments stripped, paired with one-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_label(tok: &str, line: usize) -> Result<usize> {
    let v: usize = tok
        .parse()
        .map_err(|_| perr(line, format!("bad element label `{tok}`")))?;
    if v == 0 {
        return Err(perr(line, "element labels start at 1"));
    }
    if v > MAX_GROUND {
        return Err(Error::GroundTooLarge(v));
    }
    Ok(v - 1)
}

fn parse_phase(tok: &str, line: usize) -> Result<Phase> {
    tok.trim()
        .parse()
        .map_err(|_| perr(line, format!("bad phase literal `{}`", tok.trim())))
}

/// One row per line of whitespace-separated Gaussian rational literals.
pub fn parse_matrix(text: &str) -> Result<GaussMatrix> {
    let mut rows = Vec::new();
    let mut width = None;
    for (ln, l) in content_lines(text) {
        let row: Vec<GaussRational> = l
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| perr(ln, format!("bad entry `{t}`"))))
            .collect::<Result<_>>()?;
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(Error::Arity(format!("line {ln} has {} entries, expected {w}", row.len())))
            }
            _ => {}
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(perr(0, "empty matrix"));
    }
    if width.unwrap_or(0) > MAX_GROUND {
        return Err(Error::GroundTooLarge(width.unwrap_or(0)));
    }
    GaussMatrix::new(rows)
}

pub fn write_matrix(m: &GaussMatrix) -> String {
    m.to_string()
}

fn labels(s: ElemSet) -> String {
    s.iter().map(|e| (e + 1).to_string()).collect::<Vec<_>>().join(" ")
}

/// `ground=n` for `{1..n}`, otherwise the comma-separated label list.
fn ground_field(g: ElemSet) -> String {
    if g == ElemSet::full(g.len()) {
        g.len().to_string()
    } else {
        g.iter().map(|e| (e + 1).to_string()).collect::<Vec<_>>().join(",")
    }
}

fn parse_ground_field(v: &str, line: usize) -> Result<ElemSet> {
    if v.contains(',') {
        return v
            .split(',')
            .map(|t| parse_label(t.trim(), line))
            .collect::<Result<Vec<_>>>()
            .map(ElemSet::from_elems);
    }
    let n: usize = v
        .parse()
        .map_err(|_| perr(line, format!("bad ground `{v}`")))?;
    if n > MAX_GROUND {
        return Err(Error::GroundTooLarge(n));
    }
    // a single label list like `ground=3` is read as a size
    Ok(ElemSet::full(n))
}

/// `key=value` pairs after the header keyword.
fn header_fields(rest: &str, line: usize) -> Result<Vec<(&str, &str)>> {
    rest.split_whitespace()
        .map(|kv| kv.split_once('=').ok_or_else(|| perr(line, format!("expected key=value, got `{kv}`"))))
        .collect()
}

/// Header `phirotope rank=d ground=n` then lines `i1 .. id : <phase>`.
pub fn parse_phirotope(text: &str) -> Result<Phirotope> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| perr(0, "missing phirotope header"))?;
    let rest = header
        .strip_prefix("phirotope")
        .ok_or_else(|| perr(hl, "expected `phirotope rank=d ground=n`"))?;
    let (mut rank, mut ground) = (None, None);
    for (k, v) in header_fields(rest, hl)? {
        match k {
            "rank" => rank = Some(v.parse::<usize>().map_err(|_| perr(hl, "bad rank"))?),
            "ground" => ground = Some(parse_ground_field(v, hl)?),
            _ => return Err(perr(hl, format!("unknown header field `{k}`"))),
        }
    }
    let rank = rank.ok_or_else(|| perr(hl, "missing rank"))?;
    let ground = ground.ok_or_else(|| perr(hl, "missing ground"))?;
    if rank > ground.len() {
        return Err(Error::Arity(format!("rank {rank} exceeds ground size {}", ground.len())));
    }
    let mut values: Vec<(ElemSet, Phase)> = Vec::new();
    for (ln, l) in lines {
        let (lhs, rhs) = l
            .split_once(':')
            .ok_or_else(|| perr(ln, "expected `i1 .. id : <phase>`"))?;
        let tuple: Vec<usize> = lhs
            .split_whitespace()
            .map(|t| parse_label(t, ln))
            .collect::<Result<_>>()?;
        if tuple.len() != rank {
            return Err(Error::Arity(format!("line {ln}: {} labels for rank {rank}", tuple.len())));
        }
        let set = ElemSet::from_elems(tuple.iter().copied());
        if set.len() != tuple.len() {
            return Err(perr(ln, "repeated label"));
        }
        if !set.is_subset(ground) {
            return Err(perr(ln, format!("{set} is outside the ground set")));
        }
        if values.iter().any(|(s, _)| *s == set) {
            return Err(perr(ln, format!("duplicate entry for {set}")));
        }
        // values on unsorted tuples are converted to the sorted representative
        let p = parse_phase(rhs, ln)?;
        let sign = crate::set::sort_sign(&tuple).expect("distinct");
        values.push((set, p.signed(sign < 0)));
    }
    Phirotope::new(ground, rank, values)
}

pub fn write_phirotope(phi: &Phirotope) -> String {
    let mut out = format!("phirotope rank={} ground={}\n", phi.rank(), ground_field(phi.ground()));
    for (s, v) in phi.entries() {
        if s.is_empty() {
            out.push_str(&format!(": {v}\n"));
        } else {
            out.push_str(&format!("{} : {v}\n", labels(s)));
        }
    }
    out
}

/// Optional header `circuits ground=..` or `cocircuits ground=..`, then one
/// member per line as `e1:<phase>,e2:<phase>,..`. Without a header the kind
/// is `default_kind` and the ground set is `default_ground`, or the labels used.
pub fn parse_signature(
    text: &str,
    default_kind: SignatureKind,
    default_ground: Option<ElemSet>,
) -> Result<PhasedSignature> {
    let mut kind = default_kind;
    let mut ground = default_ground;
    let mut raw: Vec<(usize, Vec<(usize, Phase)>)> = Vec::new();
    for (idx, (ln, l)) in content_lines(text).enumerate() {
        let head = l.split_whitespace().next().unwrap_or("");
        if idx == 0 && (head == "circuits" || head == "cocircuits") {
            kind = if head == "circuits" {
                SignatureKind::Circuits
            } else {
                SignatureKind::Cocircuits
            };
            for (k, v) in header_fields(&l[head.len()..], ln)? {
                match k {
                    "ground" => ground = Some(parse_ground_field(v, ln)?),
                    _ => return Err(perr(ln, format!("unknown header field `{k}`"))),
                }
            }
            continue;
        }
        let mut entries = Vec::new();
        for item in l.split(',') {
            let (e, p) = item
                .split_once(':')
                .ok_or_else(|| perr(ln, format!("expected `e:<phase>`, got `{}`", item.trim())))?;
            let e = parse_label(e.trim(), ln)?;
            if entries.iter().any(|(x, _)| *x == e) {
                return Err(perr(ln, format!("element {} listed twice", e + 1)));
            }
            entries.push((e, parse_phase(p, ln)?));
        }
        raw.push((ln, entries));
    }
    let ground = ground.unwrap_or_else(|| {
        let top = raw
            .iter()
            .flat_map(|(_, es)| es.iter().map(|(e, _)| *e + 1))
            .max()
            .unwrap_or(0);
        ElemSet::full(top)
    });
    let mut members = Vec::new();
    for (ln, entries) in raw {
        let v = PhaseVector::new(ground, entries).map_err(|_| perr(ln, format!("member outside the ground set {ground}")))?;
        if v.is_zero() {
            return Err(perr(ln, "zero member"));
        }
        members.push(v);
    }
    PhasedSignature::new(ground, kind, members)
}

pub fn write_signature(sig: &PhasedSignature) -> String {
    let mut out = format!("{} ground={}\n", sig.kind().name(), ground_field(sig.ground()));
    for m in sig.members() {
        out.push_str(&format!("{m}\n"));
    }
    out
}

/// `ground: 1 2 3` followed by `basis: ..` lines.
pub fn parse_matroid(text: &str) -> Result<Matroid> {
    let mut ground = None;
    let mut bases = Vec::new();
    for (ln, l) in content_lines(text) {
        let (key, rest) = l.split_once(':').ok_or_else(|| perr(ln, "expected `ground:` or `basis:`"))?;
        let set = rest
            .split_whitespace()
            .map(|t| parse_label(t, ln))
            .collect::<Result<Vec<_>>>()
            .map(ElemSet::from_elems)?;
        match key.trim() {
            "ground" => ground = Some(set),
            "basis" => bases.push(set),
            k => return Err(perr(ln, format!("unknown key `{k}`"))),
        }
    }
    let ground = ground.ok_or_else(|| perr(0, "missing ground line"))?;
    Matroid::from_bases(ground, bases)
}

pub fn write_matroid(m: &Matroid) -> String {
    m.to_string()
}
