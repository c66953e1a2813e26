//! Text formats for presentations, diagrams, move certificates and Tietze
//! paths, and the human-readable diagram listing.
//!
//! All parsers report errors by line and column (both 1-based) and accept
//! `#` comments and blank lines. Writers emit the canonical spelling, so
//! `parse(write(v)) == v` for every format.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::classify::{TietzePath, TietzeStep};
use crate::diagram::{NormalFormDiagram, RawDiagram};
use crate::error::{Error, Result};
use crate::moves::{Move, MoveCertificate};
use crate::presentation::{parse_letters, Letter, Presentation, Word, ALPHABET_SIZE};

/// A whitespace-separated token with its 1-based column.
#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

/// Non-empty lines with comments stripped, as (line number, tokens).
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<Token<'_>>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, c) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push(Token { text: &body[s..pos], column: body[..s].chars().count() + 1 });
                    start = None;
                }
                _ => {}
            }
        }
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

/// `key=value` fields of a line after its keyword.
struct Fields<'a> {
    line: usize,
    end_column: usize,
    map: BTreeMap<&'a str, Token<'a>>,
}

impl<'a> Fields<'a> {
    fn new(line: usize, keyword: Token<'a>, rest: &[Token<'a>]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for t in rest {
            let Some((k, v)) = t.text.split_once('=') else {
                return Err(Error::parse(line, t.column, format!("expected key=value, found {:?}", t.text)));
            };
            let value = Token { text: v, column: t.column + k.chars().count() + 1 };
            if map.insert(k, value).is_some() {
                return Err(Error::parse(line, t.column, format!("duplicate field {k:?}")));
            }
        }
        let end_column = rest.last().unwrap_or(&keyword);
        let end_column = end_column.column + end_column.text.chars().count();
        Ok(Fields { line, end_column, map })
    }

    fn take(&mut self, key: &str) -> Result<Token<'a>> {
        self.map
            .remove(key)
            .ok_or_else(|| Error::parse(self.line, self.end_column, format!("missing field {key:?}")))
    }

    fn usize(&mut self, key: &str) -> Result<usize> {
        let t = self.take(key)?;
        t.text
            .parse()
            .map_err(|_| Error::parse(self.line, t.column, format!("{key} must be a non-negative integer")))
    }

    /// A 1-based index field, returned 0-based.
    fn index(&mut self, key: &str) -> Result<usize> {
        let t = self.take(key)?;
        match t.text.parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v - 1),
            _ => Err(Error::parse(self.line, t.column, format!("{key} must be an index starting at 1"))),
        }
    }

    fn i64(&mut self, key: &str) -> Result<i64> {
        let t = self.take(key)?;
        t.text
            .parse()
            .map_err(|_| Error::parse(self.line, t.column, format!("{key} must be an integer")))
    }

    fn word(&mut self, key: &str) -> Result<Word> {
        let t = self.take(key)?;
        word_token(self.line, t)
    }

    fn generator(&mut self, key: &str) -> Result<usize> {
        let t = self.take(key)?;
        let mut chars = t.text.chars();
        match (chars.next().and_then(Letter::from_char), chars.next()) {
            (Some(l), None) if !l.inverse => Ok(l.generator),
            _ => Err(Error::parse(self.line, t.column, format!("{key} must be a lowercase generator letter"))),
        }
    }

    fn sign(&mut self, key: &str) -> Result<i8> {
        let t = self.take(key)?;
        match t.text {
            "+" => Ok(1),
            "-" => Ok(-1),
            _ => Err(Error::parse(self.line, t.column, format!("{key} must be + or -"))),
        }
    }

    fn flag(&mut self, key: &str) -> Result<bool> {
        let t = self.take(key)?;
        match t.text {
            "0" => Ok(false),
            "1" => Ok(true),
            _ => Err(Error::parse(self.line, t.column, format!("{key} must be 0 or 1"))),
        }
    }

    fn finish(self) -> Result<()> {
        match self.map.into_iter().next() {
            None => Ok(()),
            Some((k, t)) => Err(Error::parse(self.line, t.column.saturating_sub(k.len() + 1), format!("unknown field {k:?}"))),
        }
    }
}

/// A word in the positional alphabet; reduced on the way in.
fn word_token(line: usize, t: Token<'_>) -> Result<Word> {
    raw_word_token(line, t).map(Word::reduce)
}

fn raw_word_token(line: usize, t: Token<'_>) -> Result<Vec<Letter>> {
    parse_letters(t.text).map_err(|_| {
        let offset = t.text.chars().position(|c| Letter::from_char(c).is_none()).unwrap_or(0);
        Error::parse(line, t.column + offset, format!("invalid word {:?}", t.text))
    })
}

fn sign_token(sign: i8) -> &'static str {
    if sign < 0 {
        "-"
    } else {
        "+"
    }
}

fn letter(g: usize) -> char {
    Letter::pos(g).to_char()
}

// ---------------------------------------------------------------------------
// presentations

/// A parsed presentation file. `framings` is present when every relator
/// line carries a `framing=` annotation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationFile {
    pub presentation: Presentation,
    pub framings: Option<Vec<i64>>,
}

/// Parses `gens: a b ...` followed by `rel: <word> [framing=<int>]` lines.
///
/// Generator names are single lowercase letters in any order; the k-th
/// name listed becomes generator k. In relator words the uppercase letter
/// is the inverse and `-` is the empty word.
pub fn parse_presentation(text: &str) -> Result<PresentationFile> {
    let mut names: Option<BTreeMap<char, usize>> = None;
    let mut relators = Vec::new();
    let mut framings: Vec<Option<i64>> = Vec::new();
    let mut last_line = 0;

    for (line, tokens) in lines(text) {
        last_line = line;
        let head = tokens[0];
        match head.text {
            "gens:" => {
                if names.is_some() {
                    return Err(Error::parse(line, head.column, "second gens line"));
                }
                let mut map = BTreeMap::new();
                for t in &tokens[1..] {
                    let mut cs = t.text.chars();
                    let c = match (cs.next(), cs.next()) {
                        (Some(c), None) if c.is_ascii_lowercase() => c,
                        _ => {
                            return Err(Error::parse(
                                line,
                                t.column,
                                format!("generator name {:?} is not a single lowercase letter", t.text),
                            ))
                        }
                    };
                    if map.insert(c, map.len()).is_some() {
                        return Err(Error::parse(line, t.column, format!("duplicate generator name {c:?}")));
                    }
                }
                names = Some(map);
            }
            "rel:" => {
                let Some(names) = &names else {
                    return Err(Error::parse(line, head.column, "rel line before gens line"));
                };
                let Some(wt) = tokens.get(1) else {
                    return Err(Error::parse(line, head.column + 4, "missing relator word"));
                };
                let mut letters = Vec::new();
                if wt.text != "-" {
                    for (offset, c) in wt.text.chars().enumerate() {
                        let Some(&g) = names.get(&c.to_ascii_lowercase()) else {
                            return Err(Error::parse(line, wt.column + offset, format!("unknown generator {c:?}")));
                        };
                        letters.push(Letter::new(g, c.is_ascii_uppercase()));
                    }
                }
                relators.push(Word::reduce(letters));
                framings.push(if tokens.len() > 2 {
                    let mut fields = Fields::new(line, *wt, &tokens[2..])?;
                    let f = fields.i64("framing")?;
                    fields.finish()?;
                    Some(f)
                } else {
                    None
                });
            }
            other => {
                return Err(Error::parse(line, head.column, format!("expected gens: or rel:, found {other:?}")))
            }
        }
    }

    let Some(names) = names else {
        return Err(Error::parse(last_line.max(1), 1, "missing gens line"));
    };
    let framings = match framings.iter().filter(|f| f.is_some()).count() {
        0 => None,
        n if n == framings.len() => Some(framings.into_iter().flatten().collect()),
        _ => {
            return Err(Error::malformed(
                "framing annotations must be given on every relator or on none",
            ))
        }
    };
    Ok(PresentationFile {
        presentation: Presentation::new(names.len(), relators)?,
        framings,
    })
}

/// Writes a presentation with generators named a, b, c, ...
pub fn write_presentation(p: &Presentation, framings: Option<&[i64]>) -> String {
    let mut out = String::from("gens:");
    for g in 0..p.num_generators {
        write!(out, " {}", letter(g)).unwrap();
    }
    out.push('\n');
    for (i, r) in p.relators.iter().enumerate() {
        write!(out, "rel: {}", r.token()).unwrap();
        if let Some(f) = framings {
            write!(out, " framing={}", f[i]).unwrap();
        }
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// diagrams

/// Parses `one_handles: <n>` followed by `handle: <word|-> <framing>`
/// lines. Nothing is checked beyond the syntax; see
/// [`RawDiagram::validate`] and [`RawDiagram::into_diagram`].
pub fn parse_diagram(text: &str) -> Result<RawDiagram> {
    let mut num_one_handles = None;
    let mut handles = Vec::new();
    let mut last_line = 0;
    for (line, tokens) in lines(text) {
        last_line = line;
        let head = tokens[0];
        match head.text {
            "one_handles:" => {
                if num_one_handles.is_some() {
                    return Err(Error::parse(line, head.column, "second one_handles line"));
                }
                let (Some(t), None) = (tokens.get(1), tokens.get(2)) else {
                    return Err(Error::parse(line, head.column, "expected one_handles: <count>"));
                };
                let n = t
                    .text
                    .parse::<usize>()
                    .map_err(|_| Error::parse(line, t.column, "1-handle count must be a non-negative integer"))?;
                if n > ALPHABET_SIZE {
                    return Err(Error::parse(line, t.column, format!("at most {ALPHABET_SIZE} 1-handles")));
                }
                num_one_handles = Some(n);
            }
            "handle:" => {
                if num_one_handles.is_none() {
                    return Err(Error::parse(line, head.column, "handle line before one_handles line"));
                }
                let (Some(w), Some(f), None) = (tokens.get(1), tokens.get(2), tokens.get(3)) else {
                    return Err(Error::parse(line, head.column, "expected handle: <word> <framing>"));
                };
                let letters = raw_word_token(line, *w)?;
                let framing = f
                    .text
                    .parse::<i64>()
                    .map_err(|_| Error::parse(line, f.column, "framing must be an integer"))?;
                handles.push((letters, framing));
            }
            other => {
                return Err(Error::parse(
                    line,
                    head.column,
                    format!("expected one_handles: or handle:, found {other:?}"),
                ))
            }
        }
    }
    let Some(num_one_handles) = num_one_handles else {
        return Err(Error::parse(last_line.max(1), 1, "missing one_handles line"));
    };
    Ok(RawDiagram { num_one_handles, handles })
}

pub fn write_raw_diagram(d: &RawDiagram) -> String {
    let mut out = format!("one_handles: {}\n", d.num_one_handles);
    for (letters, f) in &d.handles {
        let word: String = if letters.is_empty() {
            "-".into()
        } else {
            letters.iter().map(|l| l.to_char()).collect()
        };
        writeln!(out, "handle: {word} {f}").unwrap();
    }
    out
}

pub fn write_diagram(d: &NormalFormDiagram) -> String {
    write_raw_diagram(&RawDiagram::from(d))
}

/// Parses and checks a diagram file in one go.
pub fn read_diagram(text: &str) -> Result<NormalFormDiagram> {
    parse_diagram(text)?.into_diagram()
}

/// Multi-line listing of a diagram, without a trailing newline.
pub fn render_diagram_text(d: &NormalFormDiagram) -> String {
    let mut lines = vec![format!("1-handles: {}", d.num_one_handles)];
    if d.handles.is_empty() {
        lines.push("(no 2-handle pairs)".to_string());
    }
    for (i, h) in d.handles.iter().enumerate() {
        lines.push(format!(
            "h_{k}: {} [f={}]  m_{k}: 0-framed meridian",
            h.word.token(),
            h.framing,
            k = i + 1
        ));
    }
    lines.join("\n")
}

// ---------------------------------------------------------------------------
// certificates

/// Parses a certificate: a `k=<int> l=<int>` header, then one move per
/// line. Handle indices are 1-based; generators are letters.
pub fn parse_certificate(text: &str) -> Result<MoveCertificate> {
    let mut it = lines(text);
    let Some((line, header)) = it.next() else {
        return Err(Error::parse(1, 1, "missing k=<int> l=<int> header"));
    };
    let mut fields = Fields::new(line, header[0], &header)?;
    let left_stabilizations = fields.usize("k")?;
    let right_stabilizations = fields.usize("l")?;
    fields.finish()?;

    let mut moves = Vec::new();
    for (line, tokens) in it {
        let head = tokens[0];
        let mut f = Fields::new(line, head, &tokens[1..])?;
        let m = match head.text {
            "S1" => Move::RelatorMultiply {
                i: f.index("i")?,
                j: f.index("j")?,
                sign: f.sign("sign")?,
                w: f.word("w")?,
            },
            "MSLIDE" => Move::MeridianFrameSlide { i: f.index("i")?, delta: f.i64("delta")? },
            "TWIST" => Move::HandleTwist { generator: f.generator("g")? },
            "ISO" => Move::Isotopy { i: f.index("i")?, w: f.word("w")?, invert: f.flag("inv")? },
            "ADDGEN" => Move::AddGenerator { x: f.word("x")? },
            "CANCEL" => Move::CancelPair { generator: f.generator("gen")?, rel: f.index("rel")? },
            "STAB" => Move::Stabilize,
            "DESTAB" => Move::Destabilize { rel: f.index("rel")? },
            other => return Err(Error::parse(line, head.column, format!("unknown move {other:?}"))),
        };
        f.finish()?;
        moves.push(m);
    }
    Ok(MoveCertificate { moves, left_stabilizations, right_stabilizations })
}

pub fn write_move(m: &Move) -> String {
    match m {
        Move::RelatorMultiply { i, j, sign, w } => {
            format!("S1 i={} j={} sign={} w={}", i + 1, j + 1, sign_token(*sign), w.token())
        }
        Move::MeridianFrameSlide { i, delta } => format!("MSLIDE i={} delta={delta}", i + 1),
        Move::HandleTwist { generator } => format!("TWIST g={}", letter(*generator)),
        Move::Isotopy { i, w, invert } => format!("ISO i={} w={} inv={}", i + 1, w.token(), u8::from(*invert)),
        Move::AddGenerator { x } => format!("ADDGEN x={}", x.token()),
        Move::CancelPair { generator, rel } => format!("CANCEL gen={} rel={}", letter(*generator), rel + 1),
        Move::Stabilize => "STAB".to_string(),
        Move::Destabilize { rel } => format!("DESTAB rel={}", rel + 1),
    }
}

pub fn write_certificate(c: &MoveCertificate) -> String {
    let mut out = format!("k={} l={}\n", c.left_stabilizations, c.right_stabilizations);
    for m in &c.moves {
        out.push_str(&write_move(m));
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Tietze paths

pub fn parse_path(text: &str) -> Result<TietzePath> {
    let mut steps = Vec::new();
    for (line, tokens) in lines(text) {
        let head = tokens[0];
        let mut f = Fields::new(line, head, &tokens[1..])?;
        let step = match head.text {
            "T1" => TietzeStep::T1 { x: f.word("x")? },
            "T1INV" => TietzeStep::T1Inverse { generator: f.generator("gen")?, rel: f.index("rel")? },
            "S1" => TietzeStep::S1 {
                i: f.index("i")?,
                j: f.index("j")?,
                sign: f.sign("sign")?,
                w: f.word("w")?,
            },
            "S2" => TietzeStep::S2Add,
            "S2DEL" => TietzeStep::S2Delete { rel: f.index("rel")? },
            other => return Err(Error::parse(line, head.column, format!("unknown Tietze step {other:?}"))),
        };
        f.finish()?;
        steps.push(step);
    }
    Ok(TietzePath::new(steps))
}

pub fn write_step(s: &TietzeStep) -> String {
    match s {
        TietzeStep::T1 { x } => format!("T1 x={}", x.token()),
        TietzeStep::T1Inverse { generator, rel } => format!("T1INV gen={} rel={}", letter(*generator), rel + 1),
        TietzeStep::S1 { i, j, sign, w } => {
            format!("S1 i={} j={} sign={} w={}", i + 1, j + 1, sign_token(*sign), w.token())
        }
        TietzeStep::S2Add => "S2".to_string(),
        TietzeStep::S2Delete { rel } => format!("S2DEL rel={}", rel + 1),
    }
}

pub fn write_path(p: &TietzePath) -> String {
    p.steps.iter().map(|s| write_step(s) + "\n").collect()
}
