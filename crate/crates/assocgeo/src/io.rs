//! Text formats for subspaces, quintuples, relations and structure
//! constants, shared by the CLI and the verification reports.
//!
//! Subspace block:
//! ```text
//! field p=2
//! ambient 3
//! 1 0 1
//! 0 1 0
//! ```
//! An empty row list is the zero subspace. Rational entries are written
//! `a/b`. A quintuple file holds five labeled blocks (`x`, `a`, `y`, `b`,
//! `z`), separated by blank lines. A relation file starts with
//! `relation <n> <m>` followed by the graph block with ambient n+m.

use crate::error::GeomError;
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::gamma::Quintuple;
use crate::relations::LinearRelation;
use crate::subspace::Subspace;

/// A parsed subspace over whichever field the file declared.
#[derive(Debug)]
pub enum ParsedSubspace {
    Gf(Subspace<PrimeField>),
    Q(Subspace<Rationals>),
}

impl ParsedSubspace {
    pub fn field_spec(&self) -> FieldSpec {
        match self {
            ParsedSubspace::Gf(s) => FieldSpec::Prime(s.field().modulus()),
            ParsedSubspace::Q(_) => FieldSpec::Rational,
        }
    }

    pub fn ambient(&self) -> usize {
        match self {
            ParsedSubspace::Gf(s) => s.ambient(),
            ParsedSubspace::Q(s) => s.ambient(),
        }
    }
}

struct Cursor<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            lines: text
                .lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .collect(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    fn next_nonblank(&mut self) -> Option<(usize, &'a str)> {
        while let Some((no, l)) = self.peek() {
            self.pos += 1;
            if !l.is_empty() {
                return Some((no, l));
            }
        }
        None
    }

    fn err(line: usize, msg: impl Into<String>) -> GeomError {
        GeomError::Parse(format!("line {line}: {}", msg.into()))
    }
}

fn parse_header(cur: &mut Cursor) -> Result<(FieldSpec, usize), GeomError> {
    let (no, l) = cur
        .next_nonblank()
        .ok_or_else(|| GeomError::Parse("unexpected end of input, expected `field ...`".into()))?;
    let spec = l
        .strip_prefix("field ")
        .ok_or_else(|| Cursor::err(no, format!("expected `field p=<prime>` or `field q`, got `{l}`")))?;
    let field = FieldSpec::parse(spec.trim()).map_err(|e| Cursor::err(no, e.to_string()))?;
    let (no, l) = cur
        .next_nonblank()
        .ok_or_else(|| GeomError::Parse("unexpected end of input, expected `ambient <n>`".into()))?;
    let n = l
        .strip_prefix("ambient ")
        .and_then(|v| v.trim().parse::<usize>().ok())
        .ok_or_else(|| Cursor::err(no, format!("expected `ambient <n>`, got `{l}`")))?;
    Ok((field, n))
}

fn parse_rows<F: Field>(
    cur: &mut Cursor,
    field: &F,
    ambient: usize,
) -> Result<Vec<Vec<F::Elem>>, GeomError> {
    let mut rows = Vec::new();
    while let Some((no, l)) = cur.peek() {
        if l.is_empty() {
            break;
        }
        // a label line or a new header terminates the block
        if !l
            .chars()
            .next()
            .map(|c| c.is_ascii_digit() || c == '-')
            .unwrap_or(false)
        {
            break;
        }
        cur.pos += 1;
        let entries: Result<Vec<F::Elem>, GeomError> = l
            .split_whitespace()
            .map(|tok| field.parse_elem(tok).map_err(|e| Cursor::err(no, e.to_string())))
            .collect();
        let entries = entries?;
        if entries.len() != ambient {
            return Err(Cursor::err(
                no,
                format!("row has {} entries, ambient is {ambient}", entries.len()),
            ));
        }
        rows.push(entries);
    }
    Ok(rows)
}

fn parse_block(cur: &mut Cursor) -> Result<ParsedSubspace, GeomError> {
    let (spec, n) = parse_header(cur)?;
    match spec {
        FieldSpec::Prime(p) => {
            let f = PrimeField::new(p)?;
            let rows = parse_rows(cur, &f, n)?;
            Ok(ParsedSubspace::Gf(Subspace::from_rows(f, n, rows)))
        }
        FieldSpec::Rational => {
            let rows = parse_rows(cur, &Rationals, n)?;
            Ok(ParsedSubspace::Q(Subspace::from_rows(Rationals, n, rows)))
        }
    }
}

/// Parse a single subspace document.
pub fn parse_subspace(text: &str) -> Result<ParsedSubspace, GeomError> {
    let mut cur = Cursor::new(text);
    parse_block(&mut cur)
}

pub fn format_subspace<F: Field>(s: &Subspace<F>) -> String {
    let mut out = format!("field {}\nambient {}\n", s.field().name(), s.ambient());
    for r in 0..s.dim() {
        let line: Vec<String> = s
            .basis()
            .row(r)
            .iter()
            .map(|e| s.field().format_elem(e))
            .collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// One-line form used by `enumerate`: rows joined by `;`, `-` for the zero
/// subspace.
pub fn format_subspace_line<F: Field>(s: &Subspace<F>) -> String {
    if s.is_zero() {
        return "-".to_string();
    }
    (0..s.dim())
        .map(|r| {
            s.basis()
                .row(r)
                .iter()
                .map(|e| s.field().format_elem(e))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("; ")
}

/// Parsed quintuple over whichever field the blocks declared.
#[derive(Debug)]
pub enum ParsedQuintuple {
    Gf(Quintuple<PrimeField>),
    Q(Quintuple<Rationals>),
}

const QUINTUPLE_LABELS: [&str; 5] = ["x", "a", "y", "b", "z"];

/// Parse a quintuple document of five labeled subspace blocks.
pub fn parse_quintuple(text: &str) -> Result<ParsedQuintuple, GeomError> {
    let mut cur = Cursor::new(text);
    let mut blocks = Vec::new();
    for label in QUINTUPLE_LABELS {
        let (no, l) = cur.next_nonblank().ok_or_else(|| {
            GeomError::Parse(format!("unexpected end of input, expected label `{label}`"))
        })?;
        if l != label {
            return Err(Cursor::err(no, format!("expected label `{label}`, got `{l}`")));
        }
        blocks.push(parse_block(&mut cur)?);
    }
    let all_gf = blocks.iter().all(|b| matches!(b, ParsedSubspace::Gf(_)));
    let all_q = blocks.iter().all(|b| matches!(b, ParsedSubspace::Q(_)));
    if all_gf {
        let mut it = blocks.into_iter().map(|b| match b {
            ParsedSubspace::Gf(s) => s,
            _ => unreachable!(),
        });
        let q = Quintuple::new(
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
        )?;
        Ok(ParsedQuintuple::Gf(q))
    } else if all_q {
        let mut it = blocks.into_iter().map(|b| match b {
            ParsedSubspace::Q(s) => s,
            _ => unreachable!(),
        });
        let q = Quintuple::new(
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
        )?;
        Ok(ParsedQuintuple::Q(q))
    } else {
        Err(GeomError::Parse(
            "quintuple blocks declare different fields".into(),
        ))
    }
}

pub fn format_quintuple<F: Field>(q: &Quintuple<F>) -> String {
    let mut out = String::new();
    for (label, s) in QUINTUPLE_LABELS
        .iter()
        .zip([&q.x, &q.a, &q.y, &q.b, &q.z])
    {
        out.push_str(label);
        out.push('\n');
        out.push_str(&format_subspace(s));
        out.push('\n');
    }
    out
}

/// Parsed relation over whichever field the graph block declared.
#[derive(Debug)]
pub enum ParsedRelation {
    Gf(LinearRelation<PrimeField>),
    Q(LinearRelation<Rationals>),
}

/// Parse `relation <n> <m>` followed by a subspace block of ambient n+m.
pub fn parse_relation(text: &str) -> Result<ParsedRelation, GeomError> {
    let mut cur = Cursor::new(text);
    let (no, l) = cur
        .next_nonblank()
        .ok_or_else(|| GeomError::Parse("unexpected end of input, expected `relation n m`".into()))?;
    let rest = l
        .strip_prefix("relation ")
        .ok_or_else(|| Cursor::err(no, format!("expected `relation <n> <m>`, got `{l}`")))?;
    let dims: Vec<usize> = rest
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| Cursor::err(no, "expected two dimensions"))?;
    if dims.len() != 2 {
        return Err(Cursor::err(no, "expected exactly two dimensions"));
    }
    let graph = parse_block(&mut cur)?;
    match graph {
        ParsedSubspace::Gf(s) => Ok(ParsedRelation::Gf(LinearRelation::new(dims[0], dims[1], s)?)),
        ParsedSubspace::Q(s) => Ok(ParsedRelation::Q(LinearRelation::new(dims[0], dims[1], s)?)),
    }
}

pub fn format_relation<F: Field>(r: &LinearRelation<F>) -> String {
    format!(
        "relation {} {}\n{}",
        r.src_dim(),
        r.dst_dim(),
        format_subspace(r.graph())
    )
}

/// Structure constants of an algebra: header `algebra dim=<d> field <spec>`
/// followed by d² lines of d entries (line (i,j) holds the coordinates of
/// e_i·e_j).
pub fn format_algebra<F: Field>(
    field: &F,
    dim: usize,
    consts: &[F::Elem],
) -> String {
    let mut out = format!("algebra dim={dim} field {}\n", field.name());
    for i in 0..dim {
        for j in 0..dim {
            let line: Vec<String> = (0..dim)
                .map(|k| field.format_elem(&consts[(i * dim + j) * dim + k]))
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
    }
    out
}

fn parse_scalar_lines<F: Field>(
    cur: &mut Cursor,
    field: &F,
    lines: usize,
    width: usize,
) -> Result<Vec<Vec<F::Elem>>, GeomError> {
    let mut out = Vec::with_capacity(lines);
    for _ in 0..lines {
        let (no, l) = cur
            .next_nonblank()
            .ok_or_else(|| GeomError::Parse("unexpected end of constants".into()))?;
        let row: Vec<F::Elem> = l
            .split_whitespace()
            .map(|tok| field.parse_elem(tok).map_err(|e| Cursor::err(no, e.to_string())))
            .collect::<Result<_, _>>()?;
        if row.len() != width {
            return Err(Cursor::err(
                no,
                format!("expected {width} entries, got {}", row.len()),
            ));
        }
        out.push(row);
    }
    Ok(out)
}

/// Parse an `algebra dim=<d> field p=<p>` document into structure constants.
pub fn parse_algebra(text: &str) -> Result<crate::pairs::StructureAlgebra<PrimeField>, GeomError> {
    let mut cur = Cursor::new(text);
    let (no, l) = cur
        .next_nonblank()
        .ok_or_else(|| GeomError::Parse("unexpected end of input".into()))?;
    let rest = l
        .strip_prefix("algebra ")
        .ok_or_else(|| Cursor::err(no, format!("expected `algebra dim=<d> field <f>`, got `{l}`")))?;
    let mut dim = None;
    let mut field = None;
    for tok in rest.split_whitespace() {
        if let Some(d) = tok.strip_prefix("dim=") {
            dim = d.parse::<usize>().ok();
        } else if tok == "field" {
            continue;
        } else {
            field = Some(FieldSpec::parse(tok).map_err(|e| Cursor::err(no, e.to_string()))?);
        }
    }
    let dim = dim.ok_or_else(|| Cursor::err(no, "missing dim=<d>"))?;
    let FieldSpec::Prime(p) = field.ok_or_else(|| Cursor::err(no, "missing field spec"))? else {
        return Err(Cursor::err(no, "algebra constants need a prime field"));
    };
    let f = PrimeField::new(p)?;
    let rows = parse_scalar_lines(&mut cur, &f, dim * dim, dim)?;
    let consts: Vec<u64> = rows.into_iter().flatten().collect();
    crate::pairs::StructureAlgebra::new(f, dim, consts)
}

/// Write an associative pair as structure constants: header
/// `pair plus=<dp> minus=<dm> field <f>`, then a `plus` block of dp·dm·dp
/// lines of dp entries (line (i,j,k) holds ⟨e_i f_j e_k⟩⁺) and the matching
/// `minus` block.
pub fn format_pair_constants<F: Field>(pair: &crate::pairs::TablePair<F>) -> String {
    use crate::pairs::AssociativePair;
    let f = pair.field();
    let mut out = format!(
        "pair plus={} minus={} field {}\nplus\n",
        pair.dim_plus(),
        pair.dim_minus(),
        f.name()
    );
    for row in pair.plus_consts() {
        let cells: Vec<String> = row.iter().map(|v| f.format_elem(v)).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out.push_str("minus\n");
    for row in pair.minus_consts() {
        let cells: Vec<String> = row.iter().map(|v| f.format_elem(v)).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Parse the two-block pair constants format (prime fields).
pub fn parse_pair_constants(
    text: &str,
) -> Result<crate::pairs::TablePair<PrimeField>, GeomError> {
    let mut cur = Cursor::new(text);
    let (no, l) = cur
        .next_nonblank()
        .ok_or_else(|| GeomError::Parse("unexpected end of input".into()))?;
    let rest = l.strip_prefix("pair ").ok_or_else(|| {
        Cursor::err(no, format!("expected `pair plus=<dp> minus=<dm> field <f>`, got `{l}`"))
    })?;
    let mut dp = None;
    let mut dm = None;
    let mut field = None;
    for tok in rest.split_whitespace() {
        if let Some(d) = tok.strip_prefix("plus=") {
            dp = d.parse::<usize>().ok();
        } else if let Some(d) = tok.strip_prefix("minus=") {
            dm = d.parse::<usize>().ok();
        } else if tok == "field" {
            continue;
        } else {
            field = Some(FieldSpec::parse(tok).map_err(|e| Cursor::err(no, e.to_string()))?);
        }
    }
    let dp = dp.ok_or_else(|| Cursor::err(no, "missing plus=<dp>"))?;
    let dm = dm.ok_or_else(|| Cursor::err(no, "missing minus=<dm>"))?;
    let FieldSpec::Prime(p) = field.ok_or_else(|| Cursor::err(no, "missing field spec"))? else {
        return Err(Cursor::err(no, "pair constants need a prime field"));
    };
    let f = PrimeField::new(p)?;
    let expect_label = |cur: &mut Cursor, want: &str| -> Result<(), GeomError> {
        let (no, l) = cur
            .next_nonblank()
            .ok_or_else(|| GeomError::Parse(format!("missing `{want}` block")))?;
        if l != want {
            return Err(Cursor::err(no, format!("expected `{want}`, got `{l}`")));
        }
        Ok(())
    };
    expect_label(&mut cur, "plus")?;
    let plus = parse_scalar_lines(&mut cur, &f, dp * dm * dp, dp)?;
    expect_label(&mut cur, "minus")?;
    let minus = parse_scalar_lines(&mut cur, &f, dm * dp * dm, dm)?;
    crate::pairs::TablePair::new(f, dp, dm, plus, minus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn subspace_round_trip() {
        let f = PrimeField::new(5).unwrap();
        let s = Subspace::from_i64(f, 3, &[&[1, 2, 3], &[0, 1, 4]]);
        let text = format_subspace(&s);
        match parse_subspace(&text).unwrap() {
            ParsedSubspace::Gf(t) => assert_eq!(t, s),
            _ => panic!("wrong field"),
        }
        // zero subspace
        let z = Subspace::zero(f, 2);
        match parse_subspace(&format_subspace(&z)).unwrap() {
            ParsedSubspace::Gf(t) => assert_eq!(t, z),
            _ => panic!("wrong field"),
        }
    }

    #[test]
    fn rational_subspace_round_trip() {
        let s = Subspace::from_rows(
            Rationals,
            2,
            vec![vec![
                Rationals.parse_elem("1/2").unwrap(),
                Rationals.parse_elem("-3").unwrap(),
            ]],
        );
        let text = format_subspace(&s);
        assert!(text.contains("field q"));
        match parse_subspace(&text).unwrap() {
            ParsedSubspace::Q(t) => assert_eq!(t, s),
            _ => panic!("wrong field"),
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "field p=2\nambient 2\n1 0 1\n";
        let err = parse_subspace(bad).unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");

        let bad = "field p=4\nambient 2\n";
        let err = parse_subspace(bad).unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");
    }

    #[test]
    fn quintuple_round_trip() {
        let f = PrimeField::new(2).unwrap();
        let e1 = Subspace::from_i64(f, 2, &[&[1, 0]]);
        let e2 = Subspace::from_i64(f, 2, &[&[0, 1]]);
        let d = Subspace::from_i64(f, 2, &[&[1, 1]]);
        let q = Quintuple::new(e1.clone(), e2.clone(), d, e1.clone(), e2).unwrap();
        let text = format_quintuple(&q);
        match parse_quintuple(&text).unwrap() {
            ParsedQuintuple::Gf(p) => assert_eq!(p, q),
            _ => panic!("wrong field"),
        }
    }

    #[test]
    fn algebra_and_pair_constant_round_trips() {
        use crate::pairs::{HomPair, StructureAlgebra, TablePair};
        let f = PrimeField::new(2).unwrap();
        let m2 = StructureAlgebra::matrix_algebra(f, 2);
        let text = format_algebra(&f, m2.dim(), m2.consts());
        let back = parse_algebra(&text).unwrap();
        assert_eq!(back, m2);

        let pair = TablePair::from_hom(&HomPair::new(f, 1, 2));
        let text = format_pair_constants(&pair);
        let back = parse_pair_constants(&text).unwrap();
        assert_eq!(back, pair);

        assert!(parse_algebra("algebra dim=2 field q\n").is_err());
        assert!(parse_pair_constants("pair plus=1 field p=2\nplus\n1\n").is_err());
    }

    #[test]
    fn relation_round_trip() {
        let f = PrimeField::new(3).unwrap();
        let g = Subspace::from_i64(f, 3, &[&[1, 0, 2]]);
        let r = LinearRelation::new(2, 1, g).unwrap();
        let text = format_relation(&r);
        match parse_relation(&text).unwrap() {
            ParsedRelation::Gf(p) => assert_eq!(p, r),
            _ => panic!("wrong field"),
        }
        // dimension mismatch is caught
        let bad = "relation 2 2\nfield p=3\nambient 3\n1 0 2\n";
        assert!(parse_relation(bad).is_err());
    }
}
