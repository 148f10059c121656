//! Text formats for algebras, representations and complexes.
//!
//! An algebra file has three sections:
//!
//! ```text
//! [field]
//! rationals            # or: prime = 7
//!
//! [quiver]
//! vertices: 1 2 3
//! a: 1 -> 2
//! b: 2 -> 3
//!
//! [relations]
//! b*a                  # a first, then b
//! ```
//!
//! A relation is a sum of terms `c w`, where `c` is an optional rational
//! coefficient (`2`, `-1/3`) and `w` a path word written right to left.
//! Serialization is canonical, so `serialize(parse(s))` is a fixed point of
//! `parse` followed by `serialize`.
//!
//! Representations use a `[module]` section with `dims = ...` and one line
//! `arrow = [r11 r12; r21 r22]` per arrow. Complexes use a `[complex]` section
//! with `term j dims = ...`, `term j arrow = [...]` and `diff j vertex = [...]`
//! for the vertex blocks of `d_j: X_j -> X_{j-1}`. Omitted matrices are zero.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::algebra::{Algebra, Quiver, WordCombination};
use crate::complex::Complex;
use crate::error::{Error, ParseError, Result};
use crate::field::{is_prime, Field, Rational};
use crate::matrix::Matrix;
use crate::module::{Morphism, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

/// A parsed algebra file. Relation words are stored in traversal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub field: FieldSpec,
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String, String)>,
    pub relations: Vec<Vec<(Rational, Vec<String>)>>,
}

fn perr<T>(line: usize, column: usize, message: impl Into<String>) -> std::result::Result<T, ParseError> {
    Err(ParseError { line, column, message: message.into() })
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

/// Characters of one line with their 1-based columns, comments removed.
struct Line<'a> {
    no: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> Line<'a> {
    fn new(no: usize, raw: &'a str) -> Self {
        let text = raw.split('#').next().unwrap_or("");
        Line { no, text: text.trim_end(), pos: 0 }
    }

    fn col(&self) -> usize {
        self.text[..self.pos].chars().count() + 1
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.text.len()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> std::result::Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            perr(self.no, self.col(), format!("expected `{c}`"))
        }
    }

    fn expect_str(&mut self, s: &str) -> std::result::Result<(), ParseError> {
        self.skip_ws();
        if self.text[self.pos..].starts_with(s) {
            self.pos += s.len();
            Ok(())
        } else {
            perr(self.no, self.col(), format!("expected `{s}`"))
        }
    }

    /// A maximal run of name characters, with its column.
    fn name(&mut self) -> std::result::Result<(String, usize), ParseError> {
        self.skip_ws();
        let col = self.col();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if !is_name_char(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        if start == self.pos {
            return perr(self.no, col, "expected a name");
        }
        Ok((self.text[start..self.pos].to_string(), col))
    }

    fn unsigned(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (start != self.pos).then(|| self.text[start..self.pos].to_string())
    }

    /// `p` or `p/q` with an optional leading minus sign.
    fn scalar_text(&mut self) -> std::result::Result<String, ParseError> {
        self.skip_ws();
        let col = self.col();
        let neg = self.eat('-');
        let num = match self.unsigned() {
            Some(n) => n,
            None => return perr(self.no, col, "expected a number"),
        };
        let mut out = if neg { format!("-{num}") } else { num };
        if self.eat('/') {
            match self.unsigned() {
                Some(d) => {
                    out.push('/');
                    out.push_str(&d);
                }
                None => return perr(self.no, self.col(), "expected a denominator"),
            }
        }
        Ok(out)
    }

    fn end(&mut self) -> std::result::Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            perr(self.no, self.col(), "unexpected trailing input")
        }
    }
}

/// Splits text into `(section, lines)` groups; text before the first header is
/// an error unless blank.
fn sections(text: &str) -> std::result::Result<Vec<(String, usize, Vec<Line<'_>>)>, ParseError> {
    let mut out: Vec<(String, usize, Vec<Line<'_>>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let mut line = Line::new(i + 1, raw);
        if line.at_end() {
            continue;
        }
        if line.eat('[') {
            let start = line.pos;
            let close = match line.text[start..].find(']') {
                Some(k) => start + k,
                None => return perr(line.no, line.col(), "unterminated section header"),
            };
            let name = line.text[start..close].trim().to_string();
            line.pos = close + 1;
            line.end()?;
            out.push((name, line.no, Vec::new()));
        } else {
            match out.last_mut() {
                Some(s) => s.2.push(line),
                None => return perr(line.no, line.col(), "expected a section header"),
            }
        }
    }
    Ok(out)
}

fn parse_field(lines: &mut [Line<'_>], header: usize) -> std::result::Result<FieldSpec, ParseError> {
    let [line] = lines else {
        let no = lines.get(1).map_or(header, |l| l.no);
        return perr(no, 1, "the field section takes exactly one line");
    };
    let (word, col) = line.name()?;
    match word.as_str() {
        "rationals" => {
            line.end()?;
            Ok(FieldSpec::Rationals)
        }
        "prime" => {
            line.expect('=')?;
            let c = {
                line.skip_ws();
                line.col()
            };
            let p: u64 = match line.unsigned().and_then(|s| s.parse().ok()) {
                Some(p) => p,
                None => return perr(line.no, c, "expected a prime"),
            };
            if !is_prime(p) || p > u32::MAX as u64 {
                return perr(line.no, c, format!("{p} is not a supported prime"));
            }
            line.end()?;
            Ok(FieldSpec::Prime(p))
        }
        _ => perr(line.no, col, format!("unknown field `{word}`")),
    }
}

type Located = (String, usize, usize);

fn parse_quiver(lines: &mut [Line<'_>]) -> std::result::Result<(Vec<Located>, Vec<(Located, Located, Located)>), ParseError> {
    let mut vertices: Vec<Located> = Vec::new();
    let mut arrows = Vec::new();
    for line in lines.iter_mut() {
        let (head, col) = line.name()?;
        line.expect(':')?;
        let is_arrow = line.text[line.pos..].contains("->");
        if head == "vertices" && !is_arrow {
            while !line.at_end() {
                let (v, c) = line.name()?;
                vertices.push((v, line.no, c));
                line.eat(',');
            }
        } else {
            let (s, sc) = line.name()?;
            line.expect_str("->")?;
            let (t, tc) = line.name()?;
            line.end()?;
            arrows.push(((head, line.no, col), (s, line.no, sc), (t, line.no, tc)));
        }
    }
    for (i, (v, l, c)) in vertices.iter().enumerate() {
        if vertices[..i].iter().any(|x| &x.0 == v) {
            return perr(*l, *c, format!("duplicate vertex `{v}`"));
        }
    }
    for (i, ((a, l, c), s, t)) in arrows.iter().enumerate() {
        if !a.starts_with(|ch: char| ch.is_ascii_alphabetic() || ch == '_') {
            return perr(*l, *c, format!("arrow name `{a}` must start with a letter"));
        }
        if arrows[..i].iter().any(|x| &x.0 .0 == a) {
            return perr(*l, *c, format!("duplicate arrow `{a}`"));
        }
        if vertices.iter().any(|x| &x.0 == a) {
            return perr(*l, *c, format!("arrow `{a}` shares its name with a vertex"));
        }
        for end in [s, t] {
            if !vertices.iter().any(|x| x.0 == end.0) {
                return perr(end.1, end.2, format!("unknown vertex `{}`", end.0));
            }
        }
    }
    Ok((vertices, arrows))
}

fn parse_relation(line: &mut Line<'_>, quiver: &Quiver) -> std::result::Result<Vec<(Rational, Vec<String>)>, ParseError> {
    let mut terms = Vec::new();
    let mut first = true;
    while !line.at_end() {
        let term_col = line.col();
        let mut sign = 1i64;
        if line.eat('+') {
            if first {
                return perr(line.no, term_col, "a relation cannot start with `+`");
            }
        } else if line.eat('-') {
            sign = -1;
        } else if !first {
            return perr(line.no, term_col, "expected `+` or `-`");
        }
        first = false;
        line.skip_ws();
        let mut coeff = Rational::one();
        if line.peek().is_some_and(|c| c.is_ascii_digit()) {
            let c = line.col();
            let text = line.scalar_text()?;
            coeff = Rational::parse_scalar(&text).ok_or(ParseError { line: line.no, column: c, message: "zero denominator".into() })?;
            line.eat('*');
        }
        if sign < 0 {
            coeff = coeff.neg();
        }
        if coeff.is_zero() {
            return perr(line.no, term_col, "zero coefficient");
        }
        let (head, hc) = line.name()?;
        let mut written = vec![(head, hc)];
        while line.eat('*') {
            written.push(line.name()?);
        }
        let mut word = Vec::with_capacity(written.len());
        for (name, c) in written.iter().rev() {
            match quiver.arrow_index(name) {
                Some(a) => word.push(a),
                None => return perr(line.no, *c, format!("unknown arrow `{name}`")),
            }
        }
        if let Err(e) = quiver.word_endpoints(&word) {
            return perr(line.no, hc, e.to_string());
        }
        terms.push((coeff, written.into_iter().rev().map(|(n, _)| n).collect()));
    }
    if terms.is_empty() {
        return perr(line.no, 1, "empty relation");
    }
    Ok(terms)
}

impl AlgebraSpec {
    pub fn parse(text: &str) -> std::result::Result<Self, ParseError> {
        let mut field = None;
        let mut quiver = None;
        let mut relation_lines = None;
        for (name, no, mut lines) in sections(text)? {
            let seen = match name.as_str() {
                "field" => field.replace(parse_field(&mut lines, no)?).is_some(),
                "quiver" => quiver.replace(parse_quiver(&mut lines)?).is_some(),
                "relations" => relation_lines.replace(lines).is_some(),
                _ => return perr(no, 2, format!("unknown section `{name}`")),
            };
            if seen {
                return perr(no, 2, format!("repeated section `{name}`"));
            }
        }
        let Some((vertices, arrows)) = quiver else {
            return perr(text.lines().count().max(1), 1, "missing [quiver] section");
        };
        let vertices: Vec<String> = vertices.into_iter().map(|v| v.0).collect();
        let arrows: Vec<(String, String, String)> = arrows.into_iter().map(|(a, s, t)| (a.0, s.0, t.0)).collect();
        let q = Quiver::new(&vertices, &arrows).map_err(|e| ParseError { line: 1, column: 1, message: e.to_string() })?;
        let mut relations = Vec::new();
        for mut line in relation_lines.unwrap_or_default() {
            relations.push(parse_relation(&mut line, &q)?);
        }
        Ok(AlgebraSpec { field: field.unwrap_or(FieldSpec::Rationals), vertices, arrows, relations })
    }

    pub fn serialize(&self) -> String {
        let mut out = String::from("[field]\n");
        match self.field {
            FieldSpec::Rationals => out.push_str("rationals\n"),
            FieldSpec::Prime(p) => {
                let _ = writeln!(out, "prime = {p}");
            }
        }
        out.push_str("\n[quiver]\n");
        let _ = writeln!(out, "vertices: {}", self.vertices.join(" "));
        for (a, s, t) in &self.arrows {
            let _ = writeln!(out, "{a}: {s} -> {t}");
        }
        if !self.relations.is_empty() {
            out.push_str("\n[relations]\n");
            for rel in &self.relations {
                out.push_str(&relation_text(rel));
                out.push('\n');
            }
        }
        out
    }

    pub fn quiver(&self) -> Result<Quiver> {
        Quiver::new(&self.vertices, &self.arrows)
    }

    /// The algebra over `F`. Coefficients are reduced into `F`.
    pub fn build<F: Field>(&self) -> Result<Algebra<F>> {
        let q = self.quiver()?;
        let mut relations: Vec<WordCombination<F>> = Vec::new();
        for rel in &self.relations {
            let mut combo = Vec::with_capacity(rel.len());
            for (c, word) in rel {
                let val = F::parse_scalar(&c.to_string())
                    .ok_or_else(|| Error::Invalid(format!("coefficient {c} is not defined in the chosen field")))?;
                let ids = word
                    .iter()
                    .map(|a| q.arrow_index(a).ok_or_else(|| Error::Invalid(format!("unknown arrow `{a}`"))))
                    .collect::<Result<Vec<_>>>()?;
                combo.push((val, ids));
            }
            relations.push(combo);
        }
        Algebra::new(q, relations)
    }
}

fn relation_text(rel: &[(Rational, Vec<String>)]) -> String {
    let mut s = String::new();
    for (k, (c, word)) in rel.iter().enumerate() {
        let negative = c.lt(&Rational::zero());
        let mag = if negative { c.neg() } else { c.clone() };
        match (k, negative) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        if !mag.is_one() {
            let _ = write!(s, "{mag} ");
        }
        let written: Vec<&str> = word.iter().rev().map(|w| w.as_str()).collect();
        s.push_str(&written.join("*"));
    }
    s
}

/// Parses a whole algebra file into the field choice and the algebra over `F`.
pub fn parse_algebra<F: Field>(text: &str) -> Result<(AlgebraSpec, Algebra<F>)> {
    let spec = AlgebraSpec::parse(text)?;
    let alg = spec.build()?;
    Ok((spec, alg))
}

fn matrix_text<F: Field>(m: &Matrix<F>) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|r| m.row(r).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
        .collect();
    format!("[{}]", rows.join("; "))
}

/// `[a b; c d]`, checked against the expected shape. `[]` is any empty matrix.
fn parse_matrix<F: Field>(line: &mut Line<'_>, rows: usize, cols: usize) -> std::result::Result<Matrix<F>, ParseError> {
    line.skip_ws();
    let start = line.col();
    line.expect('[')?;
    let mut data: Vec<Vec<F>> = vec![Vec::new()];
    loop {
        line.skip_ws();
        match line.peek() {
            Some(']') => {
                line.pos += 1;
                break;
            }
            Some(';') => {
                line.pos += 1;
                data.push(Vec::new());
            }
            Some(_) => {
                let c = line.col();
                let text = line.scalar_text()?;
                let v = F::parse_scalar(&text).ok_or(ParseError {
                    line: line.no,
                    column: c,
                    message: format!("`{text}` is not a scalar of the field"),
                })?;
                data.last_mut().expect("row").push(v);
            }
            None => return perr(line.no, line.col(), "unterminated matrix"),
        }
    }
    let empty = data.len() == 1 && data[0].is_empty();
    if empty && (rows == 0 || cols == 0) {
        return Ok(Matrix::zeros(rows, cols));
    }
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return perr(line.no, start, format!("expected a {rows}x{cols} matrix"));
    }
    Ok(Matrix::from_rows(data))
}

fn parse_dims(line: &mut Line<'_>, n: usize) -> std::result::Result<Vec<usize>, ParseError> {
    line.expect('=')?;
    let mut dims = Vec::new();
    let col = {
        line.skip_ws();
        line.col()
    };
    while !line.at_end() {
        let c = line.col();
        match line.unsigned().and_then(|s| s.parse::<usize>().ok()) {
            Some(d) => dims.push(d),
            None => return perr(line.no, c, "expected a dimension"),
        }
    }
    if dims.len() != n {
        return perr(line.no, col, format!("expected {n} dimensions"));
    }
    Ok(dims)
}

fn rep_error(no: usize, e: Error) -> ParseError {
    ParseError { line: no, column: 1, message: e.to_string() }
}

/// Representation body: arrow lines following a `dims` line.
struct RepDraft<F: Field> {
    dims: Vec<usize>,
    maps: Vec<Option<Matrix<F>>>,
    line: usize,
}

impl<F: Field> RepDraft<F> {
    fn new(dims: Vec<usize>, arrows: usize, line: usize) -> Self {
        RepDraft { dims, maps: vec![None; arrows], line }
    }

    fn set(&mut self, alg: &Algebra<F>, line: &mut Line<'_>, arrow: &str, col: usize) -> std::result::Result<(), ParseError> {
        let q = alg.quiver();
        let Some(a) = q.arrow_index(arrow) else {
            return perr(line.no, col, format!("unknown arrow `{arrow}`"));
        };
        if self.maps[a].is_some() {
            return perr(line.no, col, format!("arrow `{arrow}` given twice"));
        }
        line.expect('=')?;
        let arr = q.arrow(a);
        let m = parse_matrix(line, self.dims[arr.target], self.dims[arr.source])?;
        line.end()?;
        self.maps[a] = Some(m);
        Ok(())
    }

    fn finish(self, alg: &Arc<Algebra<F>>) -> std::result::Result<Representation<F>, ParseError> {
        let q = alg.quiver();
        let maps = self
            .maps
            .into_iter()
            .enumerate()
            .map(|(a, m)| m.unwrap_or_else(|| Matrix::zeros(self.dims[q.arrow(a).target], self.dims[q.arrow(a).source])))
            .collect();
        Representation::new(alg.clone(), self.dims, maps).map_err(|e| rep_error(self.line, e))
    }
}

fn rep_lines<F: Field>(out: &mut String, prefix: &str, m: &Representation<F>) {
    let dims: Vec<String> = m.dims().iter().map(|d| d.to_string()).collect();
    let _ = writeln!(out, "{prefix}dims = {}", dims.join(" "));
    for (a, arrow) in m.algebra().quiver().arrows().iter().enumerate() {
        let mat = m.arrow_map(a);
        if mat.rows() > 0 && mat.cols() > 0 {
            let _ = writeln!(out, "{prefix}{} = {}", arrow.name, matrix_text(mat));
        }
    }
}

fn single_section<'a>(text: &'a str, want: &str) -> std::result::Result<(usize, Vec<Line<'a>>), ParseError> {
    let mut found = None;
    for (name, no, lines) in sections(text)? {
        if name != want {
            return perr(no, 2, format!("expected only a [{want}] section, found `{name}`"));
        }
        if found.replace((no, lines)).is_some() {
            return perr(no, 2, format!("repeated section `{want}`"));
        }
    }
    found.ok_or(ParseError { line: 1, column: 1, message: format!("missing [{want}] section") })
}

pub fn serialize_representation<F: Field>(m: &Representation<F>) -> String {
    let mut out = String::from("[module]\n");
    rep_lines(&mut out, "", m);
    out
}

pub fn parse_representation<F: Field>(alg: &Arc<Algebra<F>>, text: &str) -> std::result::Result<Representation<F>, ParseError> {
    let (header, mut lines) = single_section(text, "module")?;
    let n = alg.num_vertices();
    let mut draft: Option<RepDraft<F>> = None;
    for line in lines.iter_mut() {
        let (key, col) = line.name()?;
        match (&mut draft, key.as_str()) {
            (None, "dims") => draft = Some(RepDraft::new(parse_dims(line, n)?, alg.num_arrows(), line.no)),
            (None, _) => return perr(line.no, col, "the dims line comes first"),
            (Some(_), "dims") => return perr(line.no, col, "dims given twice"),
            (Some(d), arrow) => d.set(alg, line, arrow, col)?,
        }
    }
    match draft {
        Some(d) => d.finish(alg),
        None => perr(header, 1, "missing dims line"),
    }
}

pub fn serialize_complex<F: Field>(x: &Complex<F>) -> String {
    let mut out = String::from("[complex]\n");
    let q = x.algebra().quiver();
    for j in x.degrees() {
        rep_lines(&mut out, &format!("term {j} "), x.term(j));
    }
    for j in x.degrees() {
        if j == x.low() {
            continue;
        }
        let d = x.diff(j);
        for (v, name) in q.vertices().iter().enumerate() {
            let mat = &d.maps()[v];
            if mat.rows() > 0 && mat.cols() > 0 && !mat.is_zero() {
                let _ = writeln!(out, "diff {j} {name} = {}", matrix_text(mat));
            }
        }
    }
    out
}

fn signed_degree(line: &mut Line<'_>) -> std::result::Result<i64, ParseError> {
    line.skip_ws();
    let c = line.col();
    let neg = line.eat('-');
    match line.unsigned().and_then(|s| s.parse::<i64>().ok()) {
        Some(d) => Ok(if neg { -d } else { d }),
        None => perr(line.no, c, "expected a degree"),
    }
}

pub fn parse_complex<F: Field>(alg: &Arc<Algebra<F>>, text: &str) -> std::result::Result<Complex<F>, ParseError> {
    let (_, mut lines) = single_section(text, "complex")?;
    let n = alg.num_vertices();
    let q = alg.quiver();
    let mut terms: BTreeMap<i64, RepDraft<F>> = BTreeMap::new();
    let mut diffs: BTreeMap<i64, (usize, Vec<Option<Matrix<F>>>)> = BTreeMap::new();
    for line in lines.iter_mut() {
        let (kind, col) = line.name()?;
        let j = signed_degree(line)?;
        let (key, kc) = line.name()?;
        match kind.as_str() {
            "term" => match (terms.get_mut(&j), key.as_str()) {
                (None, "dims") => {
                    let dims = parse_dims(line, n)?;
                    terms.insert(j, RepDraft::new(dims, alg.num_arrows(), line.no));
                }
                (None, _) => return perr(line.no, kc, format!("term {j}: the dims line comes first")),
                (Some(_), "dims") => return perr(line.no, kc, format!("term {j}: dims given twice")),
                (Some(d), arrow) => d.set(alg, line, arrow, kc)?,
            },
            "diff" => {
                let Some(v) = q.vertex_index(&key) else {
                    return perr(line.no, kc, format!("unknown vertex `{key}`"));
                };
                let (Some(src), Some(dst)) = (terms.get(&j), terms.get(&(j - 1))) else {
                    return perr(line.no, col, format!("diff {j} needs terms {j} and {} declared first", j - 1));
                };
                let (rows, cols) = (dst.dims[v], src.dims[v]);
                line.expect('=')?;
                let m = parse_matrix(line, rows, cols)?;
                line.end()?;
                let entry = diffs.entry(j).or_insert_with(|| (line.no, vec![None; n]));
                if entry.1[v].replace(m).is_some() {
                    return perr(line.no, kc, format!("diff {j} at `{key}` given twice"));
                }
            }
            _ => return perr(line.no, col, format!("expected `term` or `diff`, found `{kind}`")),
        }
    }
    if terms.is_empty() {
        return Complex::new(alg.clone(), 0, Vec::new(), Vec::new()).map_err(|e| rep_error(1, e));
    }
    let low = *terms.keys().next().expect("nonempty");
    let high = *terms.keys().last().expect("nonempty");
    if let Some((&j, (no, _))) = diffs.iter().find(|(&j, _)| j <= low || j > high) {
        return perr(*no, 1, format!("diff {j} lies outside the terms"));
    }
    let mut built: BTreeMap<i64, Arc<Representation<F>>> = BTreeMap::new();
    for (j, d) in terms {
        built.insert(j, Arc::new(d.finish(alg)?));
    }
    let zero = Arc::new(Representation::zero(alg.clone()));
    let term = |j: i64| built.get(&j).cloned().unwrap_or_else(|| zero.clone());
    let all: Vec<Arc<Representation<F>>> = (low..=high).map(term).collect();
    let mut ds = Vec::new();
    for j in low + 1..=high {
        let (src, dst) = (term(j), term(j - 1));
        let (no, blocks) = diffs.remove(&j).unwrap_or((1, vec![None; n]));
        let maps = blocks
            .into_iter()
            .enumerate()
            .map(|(v, m)| m.unwrap_or_else(|| Matrix::zeros(dst.dims()[v], src.dims()[v])))
            .collect();
        ds.push(Morphism::new(src, dst, maps).map_err(|e| rep_error(no, e))?);
    }
    Complex::new(alg.clone(), low, all, ds).map_err(|e| rep_error(1, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    const RAD2: &str = "[quiver]\nvertices: 1 2 3\na: 1 -> 2\nb: 2 -> 3\n\n[relations]\nb*a\n";

    #[test]
    fn round_trip_is_canonical() {
        let text = "# square\n[field]\nprime = 7\n[quiver]\nvertices: 1, 2\nvertices: 3 4\na : 1 -> 2\nb: 1 -> 3\nc: 2 -> 4\nd: 3 -> 4\n[relations]\nc*a - 2/3 d*b\n";
        let spec = AlgebraSpec::parse(text).unwrap();
        assert_eq!(spec.relations[0][0].1, vec!["a".to_string(), "c".to_string()]);
        let s = spec.serialize();
        let again = AlgebraSpec::parse(&s).unwrap();
        assert_eq!(again, spec);
        assert_eq!(again.serialize(), s);
        assert!(s.contains("c*a - 2/3 d*b"));
    }

    #[test]
    fn relation_words_compose_in_traversal_order() {
        let (_, alg) = parse_algebra::<Rational>(RAD2).unwrap();
        assert_eq!(alg.dimension(), 5);
        assert!(AlgebraSpec::parse("[quiver]\nvertices: 1 2 3\na: 1 -> 2\nb: 2 -> 3\n[relations]\na*b\n").is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let e = AlgebraSpec::parse("[quiver]\nvertices: 1 2\na: 1 -> 3\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 9));
        let e = AlgebraSpec::parse(RAD2.replace("b*a", "b*q").as_str()).unwrap_err();
        assert_eq!((e.line, e.column), (7, 3));
        let e = AlgebraSpec::parse("[field]\nprime = 8\n[quiver]\nvertices: 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 9));
    }

    #[test]
    fn module_and_complex_round_trip() {
        let (_, alg) = parse_algebra::<Rational>(RAD2).unwrap();
        let alg = Arc::new(alg);
        let m = parse_representation(&alg, "[module]\ndims = 1 1 0\na = [-1/2]\n").unwrap();
        assert_eq!(parse_representation(&alg, &serialize_representation(&m)).unwrap(), m);
        let text = "[complex]\nterm 0 dims = 0 1 1\nterm 0 b = [1]\nterm 1 dims = 0 0 1\ndiff 1 3 = [1]\n";
        let x = parse_complex(&alg, text).unwrap();
        assert_eq!(x.low(), 0);
        let s = serialize_complex(&x);
        assert_eq!(parse_complex(&alg, &s).unwrap(), x);
        assert!(parse_complex(&alg, "[complex]\nterm 0 dims = 0 1 0\nterm 1 dims = 0 1 0\nterm 2 dims = 0 1 0\ndiff 1 2 = [1]\ndiff 2 2 = [1]\n").is_err());
    }
}
