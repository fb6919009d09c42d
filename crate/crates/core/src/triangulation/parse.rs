//! Line-oriented triangulation files.
//!
//! ```text
//! name m137
//! tetrahedra 4
//! 0: 1:(0132) 1:(3201) 2:(0132) 3:(0132)
//! ...
//! equation E1 a=(1,0,1,0) b=(-1,1,-1,1) sign=+1
//! curve alpha a=(0,0,0,-1) b=(-1,1,0,1) sign=-1
//! seed 0.5,0.5 1,1 0.5,0.5 1,1
//! ```
//!
//! `#` starts a comment. `equation`, `curve` and `seed` lines are optional
//! and may appear in any order after the gluing rows.

use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use super::{Gluing, MonomialEquation, Perm, Sign, Tetrahedron, Triangulation, TriangulationError};

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("expected `{0}`")]
    Expected(&'static str),
    #[error("unexpected end of file, {0}")]
    UnexpectedEof(&'static str),
    #[error("invalid integer `{0}`")]
    BadInteger(String),
    #[error("invalid number `{0}`")]
    BadNumber(String),
    #[error("malformed permutation `{0}`")]
    MalformedPermutation(String),
    #[error("malformed gluing entry: {0}")]
    MalformedEntry(String),
    #[error("gluing row for tetrahedron {0} appears twice")]
    DuplicateRow(usize),
    #[error("row index {index} out of range for {count} tetrahedra")]
    RowOutOfRange { index: usize, count: usize },
    #[error("exponent vector has length {found}, expected {expected}")]
    VectorLength { expected: usize, found: usize },
    #[error("invalid sign `{0}` (use +1 or -1)")]
    BadSign(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("seed has {found} shapes, expected {expected}")]
    SeedLength { expected: usize, found: usize },
    #[error("unknown directive `{0}`")]
    UnknownDirective(String),
    #[error(transparent)]
    Gluing(#[from] TriangulationError),
}

/// Everything a triangulation file can carry.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangulationFile {
    pub triangulation: Triangulation,
    /// Explicit edge equations, in the file's own shape labeling.
    pub equations: Vec<MonomialEquation>,
    /// Peripheral holonomy functions.
    pub curves: Vec<MonomialEquation>,
    pub seed: Option<Vec<Complex64>>,
}

impl TriangulationFile {
    pub fn curve(&self, label: &str) -> Option<&MonomialEquation> {
        self.curves.iter().find(|c| c.label == label)
    }

    pub fn orientable(&self) -> bool {
        self.triangulation.orientations().is_some()
    }
}

/// Parse a triangulation file, ignoring any optional blocks beyond syntax
/// checking.
pub fn parse_triangulation(text: &str) -> Result<Triangulation, ParseError> {
    parse_triangulation_file(text).map(|f| f.triangulation)
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Significant lines with comments stripped, tagged with 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_usize(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.parse()
        .map_err(|_| err(line, ParseErrorKind::BadInteger(tok.to_string())))
}

/// Minimal cursor over one line.
struct Cursor<'a> {
    s: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str, line: usize) -> Self {
        Cursor { s, pos: 0, line }
    }

    fn skip_ws(&mut self) {
        let rest = &self.s[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.s.len()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, what: &'static str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(err(self.line, ParseErrorKind::Expected(what)))
        }
    }

    /// Characters up to (not including) the first one in `stops` or whitespace.
    fn word(&mut self, stops: &[char]) -> &'a str {
        self.skip_ws();
        let rest = &self.s[self.pos..];
        let end = rest
            .find(|c: char| c.is_whitespace() || stops.contains(&c))
            .unwrap_or(rest.len());
        self.pos += end;
        &rest[..end]
    }

    /// Text between the next `(` and its `)`.
    fn parenthesized(&mut self, what: &'static str) -> Result<&'a str, ParseError> {
        self.expect('(', what)?;
        let rest = &self.s[self.pos..];
        let end = rest
            .find(')')
            .ok_or_else(|| err(self.line, ParseErrorKind::Expected(what)))?;
        self.pos += end + 1;
        Ok(&rest[..end])
    }
}

fn parse_row(line: usize, text: &str, n: usize) -> Result<(usize, Tetrahedron), ParseError> {
    let mut cur = Cursor::new(text, line);
    let index = parse_usize(cur.word(&[':']), line)?;
    if index >= n {
        return Err(err(line, ParseErrorKind::RowOutOfRange { index, count: n }));
    }
    cur.expect(':', "`:` after row index")?;
    let mut gluings = Vec::with_capacity(4);
    for face in 0..4 {
        if cur.at_end() {
            return Err(err(
                line,
                ParseErrorKind::MalformedEntry(format!("row {index} has {face} entries, expected 4")),
            ));
        }
        let k = parse_usize(cur.word(&[':', '(']), line)?;
        cur.expect(':', "`:` inside gluing entry")?;
        let p = cur.parenthesized("parenthesized permutation")?;
        let perm: Perm = p
            .trim()
            .parse()
            .map_err(|_| err(line, ParseErrorKind::MalformedPermutation(p.to_string())))?;
        gluings.push(Gluing { neighbor: k, perm });
    }
    if !cur.at_end() {
        return Err(err(
            line,
            ParseErrorKind::MalformedEntry(format!("trailing text `{}`", cur.s[cur.pos..].trim())),
        ));
    }
    let gluings: [Gluing; 4] = gluings.try_into().expect("exactly four entries");
    Ok((index, Tetrahedron { gluings }))
}

fn parse_int_vector(body: &str, n: usize, line: usize) -> Result<Vec<i32>, ParseError> {
    let items: Vec<&str> = body.split(',').map(str::trim).collect();
    let items = if items == [""] { Vec::new() } else { items };
    if items.len() != n {
        return Err(err(
            line,
            ParseErrorKind::VectorLength {
                expected: n,
                found: items.len(),
            },
        ));
    }
    items
        .iter()
        .map(|t| {
            // accept a unicode minus as printed in some sources
            let t = t.replace('\u{2212}', "-");
            t.parse::<i32>()
                .map_err(|_| err(line, ParseErrorKind::BadInteger(t.to_string())))
        })
        .collect()
}

fn parse_monomial(cur: &mut Cursor<'_>, n: usize) -> Result<MonomialEquation, ParseError> {
    let line = cur.line;
    let label = cur.word(&[]);
    if label.is_empty() {
        return Err(err(line, ParseErrorKind::Expected("a label")));
    }
    let (mut a, mut b, mut sign) = (None, None, None);
    while !cur.at_end() {
        let key = cur.word(&['=']);
        cur.expect('=', "`=` after key")?;
        match key {
            "a" => a = Some(parse_int_vector(cur.parenthesized("`(` for a")?, n, line)?),
            "b" => b = Some(parse_int_vector(cur.parenthesized("`(` for b")?, n, line)?),
            "sign" => {
                let tok = cur.word(&[]);
                sign = Some(match tok {
                    "+1" | "1" => Sign::Plus,
                    "-1" => Sign::Minus,
                    other => return Err(err(line, ParseErrorKind::BadSign(other.to_string()))),
                });
            }
            _ => return Err(err(line, ParseErrorKind::UnknownDirective(key.to_string()))),
        }
    }
    Ok(MonomialEquation {
        label: label.to_string(),
        a: a.ok_or_else(|| err(line, ParseErrorKind::Expected("a=(...)")))?,
        b: b.ok_or_else(|| err(line, ParseErrorKind::Expected("b=(...)")))?,
        sign: sign.ok_or_else(|| err(line, ParseErrorKind::Expected("sign=+1|-1")))?,
    })
}

fn parse_seed(rest: &str, n: usize, line: usize) -> Result<Vec<Complex64>, ParseError> {
    let shapes = rest
        .split_whitespace()
        .map(|pair| {
            let (re, im) = pair
                .split_once(',')
                .ok_or_else(|| err(line, ParseErrorKind::BadNumber(pair.to_string())))?;
            let num = |t: &str| {
                t.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| err(line, ParseErrorKind::BadNumber(t.to_string())))
            };
            Ok(Complex64::new(num(re)?, num(im)?))
        })
        .collect::<Result<Vec<_>, ParseError>>()?;
    if shapes.len() != n {
        return Err(err(
            line,
            ParseErrorKind::SeedLength {
                expected: n,
                found: shapes.len(),
            },
        ));
    }
    Ok(shapes)
}

/// Parse a full triangulation file, including explicit equations, curves
/// and seed. Every error carries the 1-based line it was found on.
pub fn parse_triangulation_file(text: &str) -> Result<TriangulationFile, ParseError> {
    let mut it = lines(text).peekable();
    let last_line = text.lines().count().max(1);

    let (line, l) = it
        .next()
        .ok_or_else(|| err(last_line, ParseErrorKind::UnexpectedEof("expected `name`")))?;
    let name = l
        .strip_prefix("name")
        .filter(|r| r.starts_with(char::is_whitespace))
        .map(str::trim)
        .filter(|r| !r.is_empty())
        .ok_or_else(|| err(line, ParseErrorKind::Expected("name <string>")))?;

    let (line, l) = it
        .next()
        .ok_or_else(|| err(last_line, ParseErrorKind::UnexpectedEof("expected `tetrahedra`")))?;
    let count = match l.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["tetrahedra", n] => parse_usize(n, line)?,
        _ => return Err(err(line, ParseErrorKind::Expected("tetrahedra <n>"))),
    };

    // rows are only collected here; `count` is bounded by the text actually read
    let mut rows: Vec<(usize, usize, Tetrahedron)> = Vec::new();
    let mut seen = BTreeSet::new();
    for _ in 0..count {
        let (line, l) = it.next().ok_or_else(|| {
            err(last_line, ParseErrorKind::UnexpectedEof("missing gluing rows"))
        })?;
        let (index, tet) = parse_row(line, l, count)?;
        if !seen.insert(index) {
            return Err(err(line, ParseErrorKind::DuplicateRow(index)));
        }
        rows.push((index, line, tet));
    }
    // `count` distinct indices below `count`: a permutation of 0..count
    rows.sort_by_key(|r| r.0);
    let (row_lines, tets): (Vec<usize>, Vec<Tetrahedron>) =
        rows.into_iter().map(|(_, line, tet)| (line, tet)).unzip();

    let triangulation = Triangulation::new(name, tets).map_err(|e| {
        let tet = match &e {
            TriangulationError::DanglingIndex { tet, .. }
            | TriangulationError::FaceGluedToItself { tet, .. }
            | TriangulationError::NonInvolutive { tet, .. } => Some(*tet),
            TriangulationError::Empty | TriangulationError::NonOrientable => None,
        };
        err(tet.map_or(line, |t| row_lines[t]), ParseErrorKind::Gluing(e))
    })?;

    let mut equations: Vec<MonomialEquation> = Vec::new();
    let mut curves: Vec<MonomialEquation> = Vec::new();
    let mut seed = None;
    for (line, l) in it {
        let mut cur = Cursor::new(l, line);
        match cur.word(&[]) {
            "equation" | "curve" => {
                let is_curve = l.starts_with("curve");
                let eq = parse_monomial(&mut cur, count)?;
                let bucket = if is_curve { &mut curves } else { &mut equations };
                if bucket.iter().any(|e| e.label == eq.label) {
                    return Err(err(line, ParseErrorKind::DuplicateLabel(eq.label)));
                }
                bucket.push(eq);
            }
            "seed" => {
                if seed.is_some() {
                    return Err(err(line, ParseErrorKind::DuplicateLabel("seed".into())));
                }
                seed = Some(parse_seed(&l[cur.pos..], count, line)?);
            }
            other => return Err(err(line, ParseErrorKind::UnknownDirective(other.to_string()))),
        }
    }

    Ok(TriangulationFile {
        triangulation,
        equations,
        curves,
        seed,
    })
}

fn write_vec(f: &mut fmt::Formatter<'_>, v: &[i32]) -> fmt::Result {
    f.write_str("(")?;
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}

fn write_monomial(f: &mut fmt::Formatter<'_>, kw: &str, eq: &MonomialEquation) -> fmt::Result {
    write!(f, "{kw} {} a=", eq.label)?;
    write_vec(f, &eq.a)?;
    f.write_str(" b=")?;
    write_vec(f, &eq.b)?;
    writeln!(f, " sign={}", eq.sign)
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "name {}", self.name())?;
        writeln!(f, "tetrahedra {}", self.len())?;
        for (i, tet) in self.tets().iter().enumerate() {
            write!(f, "{i}:")?;
            for g in &tet.gluings {
                write!(f, " {}:({})", g.neighbor, g.perm)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Display for TriangulationFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.triangulation)?;
        for eq in &self.equations {
            write_monomial(f, "equation", eq)?;
        }
        for eq in &self.curves {
            write_monomial(f, "curve", eq)?;
        }
        if let Some(seed) = &self.seed {
            f.write_str("seed")?;
            for z in seed {
                write!(f, " {:?},{:?}", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const M137: &str = include_str!("../../../../data/m137.tri");

    #[test]
    fn parses_m137() {
        let file = parse_triangulation_file(M137).unwrap();
        let tri = &file.triangulation;
        assert_eq!(tri.name(), "m137");
        assert_eq!(tri.len(), 4);
        let g = tri.tets()[0].gluings[0];
        assert_eq!((g.neighbor, g.perm.to_string()), (1, "0132".to_string()));
        let g = tri.tets()[2].gluings[1];
        assert_eq!((g.neighbor, g.perm.to_string()), (3, "3012".to_string()));
        assert_eq!(file.equations.len(), 4);
        let labels: Vec<&str> = file.curves.iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, ["alpha", "beta"]);
        let alpha = file.curve("alpha").unwrap();
        assert_eq!(alpha.a, vec![0, 0, 0, -1]);
        assert_eq!(alpha.b, vec![-1, 1, 0, 1]);
        assert_eq!(alpha.sign, Sign::Minus);
        assert!(file.orientable());
    }

    #[test]
    fn display_round_trips() {
        let mut file = parse_triangulation_file(M137).unwrap();
        file.seed = Some(vec![Complex64::new(0.1, 1e-17); 4]);
        let again = parse_triangulation_file(&file.to_string()).unwrap();
        assert_eq!(again, file);
    }

    #[test]
    fn tolerates_spaces_around_colons() {
        let text = "name t\ntetrahedra 4\n\
            0: 1 : (0132) 1 : (3201) 2 : (0132) 3 : (0132)\n\
            1: 0:(0132) 2:(1230) 0:(2310) 3:(3201)\n\
            2: 3:(3120) 3:(3012) 1:(3012) 0:(0132)\n\
            3: 2:(1230) 1:(2310) 0:(0132) 2:(3120)\n";
        assert_eq!(parse_triangulation(text).unwrap().len(), 4);
    }

    fn error_of(text: &str) -> ParseError {
        parse_triangulation_file(text).unwrap_err()
    }

    #[test]
    fn malformed_permutation_reports_line() {
        let text = M137.replace("2:(1230) 0:(2310)", "2:(1233) 0:(2310)");
        let e = error_of(&text);
        assert_eq!(e.line, 7);
        assert!(matches!(e.kind, ParseErrorKind::MalformedPermutation(ref p) if p == "1233"));
    }

    #[test]
    fn non_involutive_reports_faces() {
        // tet 0 face 3 now points at tet 2 face 3 instead of tet 3 face 2
        let text = M137.replace("0: 1:(0132) 1:(3201) 2:(0132) 3:(0132)", "0: 1:(0132) 1:(3201) 2:(0132) 2:(0123)");
        let e = error_of(&text);
        assert_eq!(e.line, 6);
        let msg = e.to_string();
        assert!(msg.contains("tetrahedron 0 face 3"), "{msg}");
    }

    #[test]
    fn dangling_index() {
        let text = M137.replace("3: 2:(1230)", "3: 7:(1230)");
        let e = error_of(&text);
        assert_eq!(e.line, 9);
        assert!(matches!(e.kind, ParseErrorKind::Gluing(TriangulationError::DanglingIndex { neighbor: 7, .. })));
    }

    #[test]
    fn single_tet_identity_self_gluing() {
        let text = "name bad\ntetrahedra 1\n0: 0:(0123) 0:(0123) 0:(0123) 0:(0123)\n";
        let e = error_of(text);
        assert_eq!(e.line, 3);
        assert!(matches!(e.kind, ParseErrorKind::Gluing(TriangulationError::FaceGluedToItself { .. })));
        // face 0 -> face 1 but face 1 -> face 2: not an involution
        let text = "name bad\ntetrahedra 1\n0: 0:(1023) 0:(2103) 0:(0132) 0:(0132)\n";
        assert!(matches!(
            error_of(text).kind,
            ParseErrorKind::Gluing(TriangulationError::NonInvolutive { .. })
        ));
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(error_of("").kind, ParseErrorKind::UnexpectedEof(_)));
        assert!(matches!(error_of("tetrahedra 1").kind, ParseErrorKind::Expected(_)));
        assert!(matches!(error_of("name x\ntetrahedra two").kind, ParseErrorKind::BadInteger(_)));
        assert!(matches!(error_of("name x\ntetrahedra 2\n0: 1:(0132) 1:(0132) 1:(0132) 1:(0132)").kind,
            ParseErrorKind::UnexpectedEof(_)));
        let dup = M137.replace("1: 0:(0132)", "0: 0:(0132)");
        assert!(matches!(error_of(&dup).kind, ParseErrorKind::DuplicateRow(0)));
        let short = M137.replace("a=(1,0,1,0)", "a=(1,0,1)");
        let e = error_of(&short);
        assert_eq!(e.line, 17);
        assert!(matches!(e.kind, ParseErrorKind::VectorLength { expected: 4, found: 3 }));
        let bad_sign = M137.replace("sign=-1\ncurve beta", "sign=2\ncurve beta");
        assert!(matches!(error_of(&bad_sign).kind, ParseErrorKind::BadSign(_)));
        let unknown = format!("{M137}\nfrobnicate 3\n");
        assert!(matches!(error_of(&unknown).kind, ParseErrorKind::UnknownDirective(_)));
        let seed = format!("{M137}\nseed 1,1 2,2\n");
        assert!(matches!(error_of(&seed).kind, ParseErrorKind::SeedLength { expected: 4, found: 2 }));
        let dup_curve = format!("{M137}\ncurve alpha a=(0,0,0,0) b=(0,0,0,0) sign=+1\n");
        assert!(matches!(error_of(&dup_curve).kind, ParseErrorKind::DuplicateLabel(_)));
    }

    #[test]
    fn equations_are_optional() {
        let bare: String = M137
            .lines()
            .filter(|l| !l.starts_with("equation") && !l.starts_with("curve"))
            .map(|l| format!("{l}\n"))
            .collect();
        let file = parse_triangulation_file(&bare).unwrap();
        assert!(file.equations.is_empty() && file.curves.is_empty());
    }

    proptest::proptest! {
        #[test]
        fn printed_tables_parse_back(t in crate::triangulation::testing::triangulation(false)) {
            proptest::prop_assert_eq!(parse_triangulation(&t.to_string()).unwrap(), t);
        }
    }
}
