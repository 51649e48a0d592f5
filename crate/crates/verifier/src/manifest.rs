//! Manifest files: a named Lie algebra given by its structure equations, the
//! structure to put on it, and optional expected values.

use std::collections::BTreeMap;
use std::ops::Range;
use std::path::{Path, PathBuf};

use holonomy_core::exterior::MultiIndex;
use holonomy_core::{KForm, LieAlgebra, Rational, Scalar, Tolerance};
use serde::Deserialize;
use thiserror::Error;
use toml::Spanned;

use crate::corpus;

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{origin}:{line}:{column}: {message}")]
    Syntax {
        origin: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{origin}: structure equations violate the Jacobi identity (residual {residual})")]
    Jacobi { origin: String, residual: String },
    #[error("{origin}: {message}")]
    Invalid { origin: String, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarMode {
    Exact,
    Float,
}

impl ScalarMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ScalarMode::Exact => "exact",
            ScalarMode::Float => "float",
        }
    }
}

#[derive(Clone, Debug)]
pub enum StructureKind {
    G2,
    Spin7,
    /// The Spin(7) structure on `ℝ ⊕ g` induced by a G₂ structure on `g`.
    Spin7Extension(Box<Manifest>),
}

/// Faults injected after the geometry is built, to exercise the checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    Curvature,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expected {
    Form(KForm<Rational>),
    Scalar(Rational),
    Flag(bool),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Form(usize),
    Scalar,
    Flag,
}

/// Quantities a manifest may state expected values for.
pub const QUANTITIES: &[(&str, &str)] = &[
    ("torsion", "3-form"),
    ("lee_form", "1-form"),
    ("d_lee_form", "2-form"),
    ("lambda", "scalar"),
    ("torsion_norm", "scalar"),
    ("scalar_curvature", "scalar"),
    ("flat", "flag"),
    ("zero_connection", "flag"),
    ("parallel_torsion", "flag"),
    ("closed_torsion", "flag"),
    ("coclosed_torsion", "flag"),
    ("closed_lee_form", "flag"),
    ("instanton", "flag"),
    ("hull_instanton", "flag"),
    ("unimodular", "flag"),
];

fn kind_of(name: &str) -> Option<Kind> {
    QUANTITIES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, k)| match *k {
            "3-form" => Kind::Form(3),
            "2-form" => Kind::Form(2),
            "1-form" => Kind::Form(1),
            "scalar" => Kind::Scalar,
            _ => Kind::Flag,
        })
}

#[derive(Clone, Debug)]
pub struct Manifest {
    pub name: String,
    pub dim: usize,
    pub structure: StructureKind,
    pub scalar_mode: ScalarMode,
    /// `d e^k` for each basis covector, in internal indexing.
    pub differentials: Vec<KForm<Rational>>,
    pub expectations: BTreeMap<String, Expected>,
    pub fault: Option<Fault>,
}

impl Manifest {
    /// Label of the first basis vector: `e1` in dimension 7, `e0` in dimension 8.
    pub fn label_base(&self) -> usize {
        label_base(self.dim)
    }

    pub fn algebra<S: Scalar>(&self) -> LieAlgebra<S> {
        let des = self.differentials.iter().map(convert_form).collect();
        LieAlgebra::from_differentials(des)
            .expect("validated at parse time")
            .with_name(self.name.clone())
    }
}

pub fn label_base(dim: usize) -> usize {
    if dim == 8 {
        0
    } else {
        1
    }
}

pub fn convert_form<S: Scalar>(a: &KForm<Rational>) -> KForm<S> {
    let coeffs = a.coefficients().iter().map(S::from_rational).collect();
    KForm::from_coefficients(a.dim(), a.degree(), coeffs)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    name: String,
    dim: Spanned<usize>,
    structure: Spanned<String>,
    #[serde(default)]
    scalar_mode: Option<Spanned<String>>,
    #[serde(default)]
    structure_equations: Vec<Spanned<String>>,
    #[serde(default)]
    expectations: BTreeMap<String, Spanned<toml::Value>>,
    #[serde(default)]
    inject_fault: Option<Spanned<String>>,
}

/// Looks up base manifests named by `spin7-extension-of`.
pub trait Resolver {
    fn resolve(&self, name: &str) -> Option<Result<Manifest, ManifestError>>;
}

/// Resolves names against sibling files first, then the bundled corpus.
pub struct FileResolver {
    pub dir: PathBuf,
}

impl Resolver for FileResolver {
    fn resolve(&self, name: &str) -> Option<Result<Manifest, ManifestError>> {
        let path = self.dir.join(format!("{name}.toml"));
        if path.is_file() {
            return Some(parse_manifest(&path));
        }
        corpus::BundledResolver.resolve(name)
    }
}

pub fn parse_manifest(path: &Path) -> Result<Manifest, ManifestError> {
    let origin = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| ManifestError::Io {
        path: origin.clone(),
        source,
    })?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    parse_manifest_str(&text, &origin, &FileResolver { dir })
}

struct Ctx<'a> {
    text: &'a str,
    origin: &'a str,
}

impl Ctx<'_> {
    fn syntax(&self, offset: usize, message: impl Into<String>) -> ManifestError {
        let (line, column) = line_column(self.text, offset);
        ManifestError::Syntax {
            origin: self.origin.to_string(),
            line,
            column,
            message: message.into(),
        }
    }

    fn invalid(&self, message: impl Into<String>) -> ManifestError {
        ManifestError::Invalid {
            origin: self.origin.to_string(),
            message: message.into(),
        }
    }

    /// Byte offset of the first character inside a quoted string value.
    fn string_start(&self, span: &Range<usize>) -> usize {
        let rest = &self.text[span.start.min(self.text.len())..];
        let width = if rest.starts_with("\"\"\"") || rest.starts_with("'''") {
            3
        } else if rest.starts_with('"') || rest.starts_with('\'') {
            1
        } else {
            0
        };
        span.start + width
    }
}

/// One-based line and column of a byte offset.
pub fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

pub fn parse_manifest_str(
    text: &str,
    origin: &str,
    resolver: &dyn Resolver,
) -> Result<Manifest, ManifestError> {
    let ctx = Ctx { text, origin };
    let raw: RawManifest = toml::from_str(text).map_err(|e| {
        let offset = e.span().map_or(0, |s| s.start);
        ctx.syntax(offset, e.message().to_string())
    })?;

    let dim = *raw.dim.get_ref();
    if dim != 7 && dim != 8 {
        return Err(ctx.syntax(
            raw.dim.span().start,
            format!("dim must be 7 or 8, got {dim}"),
        ));
    }

    let scalar_mode = match &raw.scalar_mode {
        None => ScalarMode::Exact,
        Some(m) => match m.get_ref().as_str() {
            "exact" => ScalarMode::Exact,
            "float" => ScalarMode::Float,
            other => {
                return Err(ctx.syntax(
                    ctx.string_start(&m.span()),
                    format!("unknown scalar_mode `{other}` (expected exact or float)"),
                ))
            }
        },
    };

    let tag = raw.structure.get_ref().trim();
    let tag_at = ctx.string_start(&raw.structure.span());
    let structure = if tag == "g2" {
        StructureKind::G2
    } else if tag == "spin7" {
        StructureKind::Spin7
    } else if let Some(base) = tag.strip_prefix("spin7-extension-of ") {
        let base = base.trim();
        let m = resolver
            .resolve(base)
            .ok_or_else(|| ctx.invalid(format!("base manifest `{base}` not found")))??;
        if m.dim != 7 || !matches!(m.structure, StructureKind::G2) {
            return Err(ctx.invalid(format!(
                "base manifest `{base}` is not a 7-dimensional g2 manifest"
            )));
        }
        StructureKind::Spin7Extension(Box::new(m))
    } else {
        return Err(ctx.syntax(
            tag_at,
            format!("unknown structure `{tag}` (expected g2, spin7 or spin7-extension-of <name>)"),
        ));
    };
    let expected_dim = if matches!(structure, StructureKind::G2) {
        7
    } else {
        8
    };
    if dim != expected_dim {
        return Err(ctx.syntax(
            raw.dim.span().start,
            format!("structure `{tag}` needs dim {expected_dim}, got {dim}"),
        ));
    }

    let differentials = match &structure {
        StructureKind::Spin7Extension(base) => {
            if let Some(eq) = raw.structure_equations.first() {
                return Err(ctx.syntax(
                    ctx.string_start(&eq.span()),
                    "extension manifests take their structure equations from the base manifest",
                ));
            }
            let mut des = vec![KForm::zero(8, 2)];
            des.extend(base.differentials.iter().map(|de| shift_form(de, 8)));
            des
        }
        _ => {
            let mut des: Vec<Option<KForm<Rational>>> = vec![None; dim];
            for eq in &raw.structure_equations {
                let start = ctx.string_start(&eq.span());
                let (k, form) = parse_equation(eq.get_ref(), dim)
                    .map_err(|(at, msg)| ctx.syntax(start + at, msg))?;
                if des[k].is_some() {
                    return Err(ctx.syntax(
                        start,
                        format!("duplicate equation for d e{}", k + label_base(dim)),
                    ));
                }
                des[k] = Some(form);
            }
            des.into_iter()
                .map(|d| d.unwrap_or_else(|| KForm::zero(dim, 2)))
                .collect()
        }
    };

    let algebra = LieAlgebra::from_differentials(differentials.clone())
        .map_err(|e| ctx.invalid(e.to_string()))?;
    let cert = algebra.validate();
    if !cert.holds(Tolerance::Exact) {
        return Err(ManifestError::Jacobi {
            origin: origin.to_string(),
            residual: cert.residual.render(),
        });
    }

    let mut expectations = BTreeMap::new();
    for (name, value) in &raw.expectations {
        let kind = kind_of(name).ok_or_else(|| {
            ctx.syntax(value.span().start, format!("unknown expectation `{name}`"))
        })?;
        let expected = parse_expectation(&ctx, kind, value, dim)?;
        expectations.insert(name.clone(), expected);
    }

    let fault = match &raw.inject_fault {
        None => None,
        Some(f) if f.get_ref() == "curvature" => Some(Fault::Curvature),
        Some(f) => {
            return Err(ctx.syntax(
                ctx.string_start(&f.span()),
                format!("unknown fault `{}` (expected curvature)", f.get_ref()),
            ))
        }
    };

    Ok(Manifest {
        name: raw.name,
        dim,
        structure,
        scalar_mode,
        differentials,
        expectations,
        fault,
    })
}

/// Moves a form on `ℝ⁷` to `ℝ⁸`, keeping labels (`e_k ↦ e_k`, `e_0` new).
fn shift_form(a: &KForm<Rational>, dim: usize) -> KForm<Rational> {
    KForm::from_terms(
        dim,
        a.degree(),
        a.terms()
            .map(|(mi, c)| (MultiIndex::from_mask(mi.mask() << 1), c.clone()))
            .collect::<Vec<_>>(),
    )
}

fn parse_expectation(
    ctx: &Ctx,
    kind: Kind,
    value: &Spanned<toml::Value>,
    dim: usize,
) -> Result<Expected, ManifestError> {
    let span = value.span();
    let at = ctx.string_start(&span);
    match (kind, value.get_ref()) {
        (Kind::Flag, toml::Value::Boolean(b)) => Ok(Expected::Flag(*b)),
        (Kind::Scalar, toml::Value::Integer(k)) => Ok(Expected::Scalar(Rational::integer(*k))),
        (Kind::Scalar, toml::Value::String(s)) => s
            .trim()
            .parse::<Rational>()
            .map(Expected::Scalar)
            .map_err(|_| ctx.syntax(at, format!("expected a rational number, got `{s}`"))),
        (Kind::Form(k), toml::Value::String(s)) => parse_form(s, dim, k)
            .map(Expected::Form)
            .map_err(|(off, msg)| ctx.syntax(at + off, msg)),
        (Kind::Flag, _) => Err(ctx.syntax(span.start, "expected true or false")),
        (Kind::Scalar, _) => {
            Err(ctx.syntax(span.start, "expected an integer or a rational string"))
        }
        (Kind::Form(_), _) => {
            Err(ctx.syntax(span.start, "expected a form string such as \"e123 + e456\""))
        }
    }
}

type ParseResult<T> = Result<T, (usize, String)>;

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.s[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if !f(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.s[start..self.pos]
    }

    fn at_end(&self) -> bool {
        self.pos >= self.s.len()
    }

    fn error<T>(&self, msg: impl Into<String>) -> ParseResult<T> {
        Err((self.pos, msg.into()))
    }
}

/// Parses `d e<k> = <sum of 2-form monomials>`; returns the internal index of
/// `e^k` and `d e^k`.
pub fn parse_equation(s: &str, dim: usize) -> ParseResult<(usize, KForm<Rational>)> {
    let mut cur = Cursor { s, pos: 0 };
    cur.skip_ws();
    if !cur.eat('d') {
        return cur.error("expected `d e<k> = ...`");
    }
    cur.skip_ws();
    if !cur.eat('e') {
        return cur.error("expected `e<k>` after `d`");
    }
    let at = cur.pos;
    let digits = cur.take_while(|c| c.is_ascii_digit());
    if digits.len() != 1 {
        return Err((
            at,
            format!("expected a single basis label after `d e`, got `{digits}`"),
        ));
    }
    let k = label_to_index(digits.as_bytes()[0], dim).map_err(|m| (at, m))?;
    cur.skip_ws();
    if !cur.eat('=') {
        return cur.error("expected `=`");
    }
    let form = parse_sum(&mut cur, dim, 2)?;
    Ok((k, form))
}

/// Parses a sum of monomials such as `e123 - 1/2*e456`, or `0`.
pub fn parse_form(s: &str, dim: usize, degree: usize) -> ParseResult<KForm<Rational>> {
    let mut cur = Cursor { s, pos: 0 };
    parse_sum(&mut cur, dim, degree)
}

fn label_to_index(b: u8, dim: usize) -> Result<usize, String> {
    let label = (b - b'0') as usize;
    let base = label_base(dim);
    if label < base || label >= base + dim {
        return Err(format!(
            "basis label e{label} out of range for dimension {dim} (e{base}..e{})",
            base + dim - 1
        ));
    }
    Ok(label - base)
}

fn parse_sum(cur: &mut Cursor, dim: usize, degree: usize) -> ParseResult<KForm<Rational>> {
    cur.skip_ws();
    let mut form = KForm::zero(dim, degree);
    let save = cur.pos;
    if cur.eat('0') {
        cur.skip_ws();
        if cur.at_end() {
            return Ok(form);
        }
        cur.pos = save;
    }
    let mut first = true;
    loop {
        cur.skip_ws();
        if cur.at_end() {
            if first {
                return cur.error("expected a monomial such as `e12`");
            }
            return Ok(form);
        }
        let mut sign = Rational::integer(1);
        if cur.eat('-') {
            sign = Rational::integer(-1);
        } else if !cur.eat('+') && !first {
            return cur.error("expected `+` or `-` between monomials");
        }
        cur.skip_ws();
        let coef_at = cur.pos;
        let coef_text = cur.take_while(|c| c.is_ascii_digit() || c == '/');
        let coef = if coef_text.is_empty() {
            Rational::integer(1)
        } else {
            coef_text
                .parse::<Rational>()
                .map_err(|_| (coef_at, format!("invalid coefficient `{coef_text}`")))?
        };
        cur.skip_ws();
        cur.eat('*');
        cur.skip_ws();
        if !cur.eat('e') {
            return cur.error("expected a monomial such as `e12`");
        }
        let at = cur.pos;
        let digits = cur.take_while(|c| c.is_ascii_digit());
        if digits.len() != degree {
            return Err((
                at,
                format!("expected {degree} basis labels in monomial, got `e{digits}`"),
            ));
        }
        let mut indices = Vec::with_capacity(degree);
        for b in digits.bytes() {
            let i = label_to_index(b, dim).map_err(|m| (at, m))?;
            if indices.contains(&i) {
                return Err((at, format!("repeated index in monomial `e{digits}`")));
            }
            indices.push(i);
        }
        let (perm_sign, mi) =
            holonomy_core::exterior::sort_sign(&indices).expect("distinct indices");
        let value = sign * coef * Rational::integer(perm_sign);
        let current = form.get(mi).clone();
        form.set(mi, current + value);
        first = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_column_counts_from_one() {
        assert_eq!(line_column("ab\ncd", 0), (1, 1));
        assert_eq!(line_column("ab\ncd", 4), (2, 2));
    }

    #[test]
    fn equation_grammar() {
        let (k, f) = parse_equation("d e1 = e23 - e45", 7).unwrap();
        assert_eq!(k, 0);
        assert_eq!(f.render(1), "e23 - e45");
        let (_, f) = parse_equation("de3=-e21+1/2*e67", 7).unwrap();
        assert_eq!(f.render(1), "e12 + 1/2*e67");
        let (k, f) = parse_equation("d e0 = 0", 8).unwrap();
        assert_eq!(k, 0);
        assert!(f.is_zero());
    }

    #[test]
    fn equation_errors_point_at_the_offending_token() {
        let (at, msg) = parse_equation("d e1 = e11", 7).unwrap_err();
        assert_eq!(at, 8);
        assert!(msg.contains("repeated index"));
        assert!(parse_equation("d e8 = e12", 7)
            .unwrap_err()
            .1
            .contains("out of range"));
        assert!(parse_equation("d e1 = e123", 7)
            .unwrap_err()
            .1
            .contains("2 basis labels"));
        assert!(parse_equation("d e1 = e12 e34", 7).is_err());
        assert!(parse_equation("e1 = e12", 7).is_err());
    }
}
