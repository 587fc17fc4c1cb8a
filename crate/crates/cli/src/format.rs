//! The `simplegame 1` text format.
//!
//! ```text
//! simplegame 1
//! players <n>
//! form <explicit|weighted|intersection|union>
//! win <bitstring>            # explicit: one line per minimal winning coalition
//! wmg <q> : <w1> ... <wn>    # other forms: one line per weighted game
//! ```
//!
//! Bitstrings have length `n` and list player 1 first. Blank lines and lines
//! starting with `#` are ignored when parsing.

use std::fmt::Write as _;

use simplegame_core::{
    Coalition, Combination, ExplicitMode, GameError, GameForm, SimpleGame, WeightedGame, N_MAX,
};
use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected header `{0}`")]
    BadHeader(&'static str),
    #[error("player count must be an integer in 1..={N_MAX}, found `{0}`")]
    BadPlayerCount(String),
    #[error("{0} players exceeds the supported maximum of {N_MAX}")]
    TooManyPlayers(usize),
    #[error("unknown form `{0}`")]
    UnknownForm(String),
    #[error("bitstring has length {found}, expected {expected}")]
    BitstringLength { expected: usize, found: usize },
    #[error("bitstring may only contain `0` and `1`")]
    BadBitstring,
    #[error("coalition is comparable with the one on line {0}; explicit bodies must be antichains")]
    NotAntichain(usize),
    #[error("malformed weighted game, expected `wmg <q> : <w1> ... <wn>`")]
    BadWeightedLine,
    #[error("weighted game lists {found} weights, expected {expected}")]
    WeightCount { expected: usize, found: usize },
    #[error("invalid weighted game: {0}")]
    InvalidWeights(GameError),
    #[error("invalid game: {0}")]
    InvalidGame(GameError),
    #[error("line does not belong to a `{0}` body")]
    UnexpectedLine(String),
    #[error("body is empty")]
    EmptyBody,
    #[error("a `weighted` body holds exactly one `wmg` line")]
    ExtraWeightedLine,
}

impl ParseErrorKind {
    /// Stable code, prefixed with the format version.
    pub fn code(&self) -> &'static str {
        match self {
            ParseErrorKind::BadHeader(_) => "SG1-E01",
            ParseErrorKind::BadPlayerCount(_) => "SG1-E02",
            ParseErrorKind::TooManyPlayers(_) => "SG1-E03",
            ParseErrorKind::UnknownForm(_) => "SG1-E04",
            ParseErrorKind::BitstringLength { .. } => "SG1-E05",
            ParseErrorKind::BadBitstring => "SG1-E06",
            ParseErrorKind::NotAntichain(_) => "SG1-E07",
            ParseErrorKind::BadWeightedLine => "SG1-E08",
            ParseErrorKind::WeightCount { .. } => "SG1-E09",
            ParseErrorKind::InvalidWeights(_) => "SG1-E10",
            ParseErrorKind::InvalidGame(_) => "SG1-E11",
            ParseErrorKind::UnexpectedLine(_) => "SG1-E12",
            ParseErrorKind::EmptyBody => "SG1-E13",
            ParseErrorKind::ExtraWeightedLine => "SG1-E14",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: [{}] {kind}", kind.code())]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn is_size_limit(&self) -> bool {
        matches!(self.kind, ParseErrorKind::TooManyPlayers(_))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum FormTag {
    Explicit,
    Weighted,
    Intersection,
    Union,
}

impl FormTag {
    fn name(self) -> &'static str {
        match self {
            FormTag::Explicit => "explicit",
            FormTag::Weighted => "weighted",
            FormTag::Intersection => "intersection",
            FormTag::Union => "union",
        }
    }
}

pub fn parse_game(text: &str) -> Result<SimpleGame, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let err = |line, kind| ParseError { line, kind };

    let (no, header) = lines.next().ok_or(err(1, ParseErrorKind::BadHeader("simplegame 1")))?;
    if header.split_whitespace().collect::<Vec<_>>() != ["simplegame", "1"] {
        return Err(err(no, ParseErrorKind::BadHeader("simplegame 1")));
    }

    let (no, players) = lines.next().ok_or(err(no + 1, ParseErrorKind::BadHeader("players <n>")))?;
    let n = match players.split_whitespace().collect::<Vec<_>>()[..] {
        ["players", count] => count
            .parse::<usize>()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| err(no, ParseErrorKind::BadPlayerCount(count.to_string())))?,
        _ => return Err(err(no, ParseErrorKind::BadHeader("players <n>"))),
    };
    if n > N_MAX {
        return Err(err(no, ParseErrorKind::TooManyPlayers(n)));
    }

    let form_header = "form <explicit|weighted|intersection|union>";
    let (no, form) = lines.next().ok_or(err(no + 1, ParseErrorKind::BadHeader(form_header)))?;
    let tag = match form.split_whitespace().collect::<Vec<_>>()[..] {
        ["form", "explicit"] => FormTag::Explicit,
        ["form", "weighted"] => FormTag::Weighted,
        ["form", "intersection"] => FormTag::Intersection,
        ["form", "union"] => FormTag::Union,
        ["form", other] => return Err(err(no, ParseErrorKind::UnknownForm(other.to_string()))),
        _ => return Err(err(no, ParseErrorKind::BadHeader(form_header))),
    };
    let header_end = no;

    if tag == FormTag::Explicit {
        let mut coalitions: Vec<(usize, Coalition)> = Vec::new();
        for (no, line) in lines {
            let bits = match line.split_whitespace().collect::<Vec<_>>()[..] {
                ["win", bits] => bits,
                _ => return Err(err(no, ParseErrorKind::UnexpectedLine(tag.name().into()))),
            };
            let c = parse_bitstring(n, bits).map_err(|kind| err(no, kind))?;
            if c.is_empty() {
                return Err(err(no, ParseErrorKind::InvalidGame(GameError::EmptyWinningCoalition)));
            }
            if let Some((prev, _)) =
                coalitions.iter().find(|(_, o)| o.is_subset_of(&c) || c.is_subset_of(o))
            {
                return Err(err(no, ParseErrorKind::NotAntichain(*prev)));
            }
            coalitions.push((no, c));
        }
        if coalitions.is_empty() {
            return Err(err(header_end, ParseErrorKind::EmptyBody));
        }
        let list = coalitions.into_iter().map(|(_, c)| c).collect();
        return SimpleGame::explicit(n, list, ExplicitMode::MinimalGiven)
            .map_err(|e| err(header_end, ParseErrorKind::InvalidGame(e)));
    }

    let mut parts = Vec::new();
    for (no, line) in lines {
        if !line.starts_with("wmg") {
            return Err(err(no, ParseErrorKind::UnexpectedLine(tag.name().into())));
        }
        if tag == FormTag::Weighted && !parts.is_empty() {
            return Err(err(no, ParseErrorKind::ExtraWeightedLine));
        }
        parts.push(parse_wmg(n, line).map_err(|kind| err(no, kind))?);
    }
    let game = match tag {
        FormTag::Weighted => parts.pop().map(SimpleGame::weighted),
        FormTag::Intersection if !parts.is_empty() => {
            Some(SimpleGame::combine(Combination::Intersection, parts).expect("parts validated"))
        }
        FormTag::Union if !parts.is_empty() => {
            Some(SimpleGame::combine(Combination::Union, parts).expect("parts validated"))
        }
        _ => None,
    };
    game.ok_or(err(header_end, ParseErrorKind::EmptyBody))
}

fn parse_bitstring(n: usize, bits: &str) -> Result<Coalition, ParseErrorKind> {
    if bits.chars().count() != n {
        return Err(ParseErrorKind::BitstringLength { expected: n, found: bits.chars().count() });
    }
    let mut players = Vec::new();
    for (i, ch) in bits.chars().enumerate() {
        match ch {
            '1' => players.push(i + 1),
            '0' => {}
            _ => return Err(ParseErrorKind::BadBitstring),
        }
    }
    Ok(Coalition::new(n, players).expect("player indices are in range"))
}

fn parse_wmg(n: usize, line: &str) -> Result<WeightedGame, ParseErrorKind> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    let (quota, weights) = match tokens[..] {
        ["wmg", q, ":", ref rest @ ..] => (q, rest),
        _ => return Err(ParseErrorKind::BadWeightedLine),
    };
    let number = |t: &str| t.parse::<i64>().map_err(|_| ParseErrorKind::BadWeightedLine);
    let quota = number(quota)?;
    let weights = weights.iter().map(|t| number(t)).collect::<Result<Vec<_>, _>>()?;
    if weights.len() != n {
        return Err(ParseErrorKind::WeightCount { expected: n, found: weights.len() });
    }
    WeightedGame::new(quota, &weights).map_err(ParseErrorKind::InvalidWeights)
}

pub fn wmg_line(game: &WeightedGame) -> String {
    let mut s = format!("wmg {} :", game.quota());
    for w in game.weights() {
        write!(s, " {w}").unwrap();
    }
    s
}

/// Canonical text: explicit coalitions ascending by mask, parts in stored order.
pub fn serialize_game(game: &SimpleGame) -> String {
    let mut out = format!("simplegame {FORMAT_VERSION}\nplayers {}\n", game.n());
    let (tag, parts): (FormTag, &[WeightedGame]) = match game.form() {
        GameForm::Explicit(mwc) => {
            out.push_str("form explicit\n");
            let mut sorted = mwc.clone();
            sorted.sort();
            for c in sorted {
                writeln!(out, "win {}", c.to_bitstring()).unwrap();
            }
            return out;
        }
        GameForm::Weighted(g) => (FormTag::Weighted, std::slice::from_ref(g)),
        GameForm::Intersection(p) => (FormTag::Intersection, p),
        GameForm::Union(p) => (FormTag::Union, p),
    };
    writeln!(out, "form {}", tag.name()).unwrap();
    for p in parts {
        writeln!(out, "{}", wmg_line(p)).unwrap();
    }
    out
}

/// A composite game file holding the given parts.
pub fn serialize_parts(kind: Combination, parts: &[WeightedGame]) -> String {
    let game = SimpleGame::combine(kind, parts.to_vec()).expect("parts are nonempty and aligned");
    serialize_game(&game)
}
