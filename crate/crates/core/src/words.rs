//! Step alphabets, word parsing and formatting, lattice geometry, and
//! membership predicates for the walk classes the bijections act on.
//!
//! A [`Word`] is an immutable sequence of [`Letter`]s tied to one
//! [`AlphabetSpec`]; every operation returns a fresh word. The text encoding
//! is whitespace-separated tokens, one word per line in walk files, with
//! `#`-prefixed comment lines ignored by the tools built on top.

use std::fmt;

use thiserror::Error;

/// Colour carried by the letters of the bicoloured three-step alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Colour {
    Solid,
    Striped,
}

/// Vertical direction of a three-step letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir3 {
    Up,
    Level,
    Down,
}

/// Compass direction of a six-step letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymDir {
    N,
    S,
    E,
    W,
    Se,
    Nw,
}

impl SymDir {
    pub const ALL: [SymDir; 6] = [
        SymDir::N,
        SymDir::S,
        SymDir::E,
        SymDir::W,
        SymDir::Se,
        SymDir::Nw,
    ];

    /// Mirror through the main diagonal `y = x`.
    pub fn reflected(self) -> SymDir {
        match self {
            SymDir::N => SymDir::E,
            SymDir::E => SymDir::N,
            SymDir::S => SymDir::W,
            SymDir::W => SymDir::S,
            SymDir::Se => SymDir::Nw,
            SymDir::Nw => SymDir::Se,
        }
    }
}

/// One of the step alphabets. The `p`-indexed alphabets generalize the
/// three-step case; `p` must be at least 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlphabetSpec {
    /// Height letters `-1..=p`, each standing for the step `(1, value)`.
    Lukasiewicz(u32),
    /// The small step `(1,-1)` plus the `p+1` long steps `(rise - p, rise)`.
    Tandem(u32),
    /// Up/level/down in two colours, all with unit horizontal displacement.
    BicolMotzkin,
    /// The six unit compass steps N, S, E, W, SE, NW.
    SymSix,
    /// Digits 1, 2, 3.
    Yamanouchi3,
}

impl AlphabetSpec {
    /// The `p` of a `p`-indexed alphabet.
    pub fn p(&self) -> Option<u32> {
        match self {
            AlphabetSpec::Lukasiewicz(p) | AlphabetSpec::Tandem(p) => Some(*p),
            _ => None,
        }
    }

    fn name(&self) -> String {
        match self {
            AlphabetSpec::Lukasiewicz(p) => format!("lukasiewicz({p})"),
            AlphabetSpec::Tandem(p) => format!("tandem({p})"),
            AlphabetSpec::BicolMotzkin => "bicoloured-motzkin".into(),
            AlphabetSpec::SymSix => "six-step".into(),
            AlphabetSpec::Yamanouchi3 => "yamanouchi".into(),
        }
    }
}

impl fmt::Display for AlphabetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A single step. The variant must match the ambient [`AlphabetSpec`]; a
/// letter only ever lives inside a [`Word`] that enforces this.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    /// Height letter `value` with `-1 <= value <= p`; the step `(1, value)`.
    Luk(i32),
    /// The small south-east step `(1, -1)` of a tandem alphabet.
    TandemSe,
    /// A long step `(rise - p, rise)` with `0 <= rise <= p`.
    TandemLong(u32),
    /// A coloured three-step letter; the step `(1, -1/0/+1)` ignoring colour.
    Bicol(Dir3, Colour),
    /// A six-step compass letter.
    Sym(SymDir),
    /// A Yamanouchi digit in `1..=3`.
    Yam(u8),
}

impl Letter {
    fn fits(&self, alphabet: AlphabetSpec) -> bool {
        match (self, alphabet) {
            (Letter::Luk(mu), AlphabetSpec::Lukasiewicz(p)) => -1 <= *mu && *mu <= p as i32,
            (Letter::TandemSe, AlphabetSpec::Tandem(_)) => true,
            (Letter::TandemLong(rise), AlphabetSpec::Tandem(p)) => *rise <= p,
            (Letter::Bicol(..), AlphabetSpec::BicolMotzkin) => true,
            (Letter::Sym(_), AlphabetSpec::SymSix) => true,
            (Letter::Yam(d), AlphabetSpec::Yamanouchi3) => (1..=3).contains(d),
            _ => false,
        }
    }

    /// Canonical token for this letter inside the given alphabet.
    pub fn token(&self, alphabet: AlphabetSpec) -> String {
        match (self, alphabet) {
            (Letter::Luk(-1), AlphabetSpec::Lukasiewicz(1)) => "D".into(),
            (Letter::Luk(0), AlphabetSpec::Lukasiewicz(1)) => "L".into(),
            (Letter::Luk(1), AlphabetSpec::Lukasiewicz(1)) => "U".into(),
            (Letter::Luk(-1), _) => "D".into(),
            (Letter::Luk(mu), _) => mu.to_string(),
            (Letter::TandemSe, AlphabetSpec::Tandem(1)) => "SE".into(),
            (Letter::TandemLong(0), AlphabetSpec::Tandem(1)) => "W".into(),
            (Letter::TandemLong(1), AlphabetSpec::Tandem(1)) => "N".into(),
            (Letter::TandemSe, _) => "D".into(),
            (Letter::TandemLong(rise), _) => rise.to_string(),
            (Letter::Bicol(dir, colour), _) => {
                let c = match dir {
                    Dir3::Up => 'U',
                    Dir3::Level => 'L',
                    Dir3::Down => 'D',
                };
                match colour {
                    Colour::Solid => c.to_string(),
                    Colour::Striped => c.to_ascii_lowercase().to_string(),
                }
            }
            (Letter::Sym(dir), _) => match dir {
                SymDir::N => "N".into(),
                SymDir::S => "S".into(),
                SymDir::E => "E".into(),
                SymDir::W => "W".into(),
                SymDir::Se => "SE".into(),
                SymDir::Nw => "NW".into(),
            },
            (Letter::Yam(d), _) => d.to_string(),
        }
    }
}

/// A point of the square lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }
}

/// Errors raised by parsing, recoding, and membership checks.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("unknown token '{token}' for alphabet {alphabet}")]
    UnknownToken { token: String, alphabet: String },
    #[error("token '{token}' out of range for p = {p}")]
    OutOfRange { token: String, p: u32 },
    #[error("expected a word over {expected}, got one over {found}")]
    AlphabetMismatch { expected: String, found: String },
    #[error("letter does not belong to alphabet {alphabet}")]
    ForeignLetter { alphabet: String },
    #[error("class {class} does not admit words over {alphabet}")]
    ClassMismatch { class: String, alphabet: String },
    #[error("position {position} out of range for word of length {len}")]
    PositionOutOfRange { position: usize, len: usize },
}

/// An immutable word over one fixed alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: AlphabetSpec,
    letters: Vec<Letter>,
}

impl Word {
    /// Builds a word, rejecting letters that do not belong to `alphabet`.
    pub fn new(alphabet: AlphabetSpec, letters: Vec<Letter>) -> Result<Self, WordError> {
        if letters.iter().any(|l| !l.fits(alphabet)) {
            return Err(WordError::ForeignLetter {
                alphabet: alphabet.name(),
            });
        }
        Ok(Word { alphabet, letters })
    }

    /// The empty word over `alphabet`.
    pub fn empty(alphabet: AlphabetSpec) -> Self {
        Word {
            alphabet,
            letters: Vec::new(),
        }
    }

    /// Parses whitespace-separated tokens.
    pub fn parse(text: &str, alphabet: AlphabetSpec) -> Result<Self, WordError> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            letters.push(parse_token(token, alphabet)?);
        }
        Ok(Word { alphabet, letters })
    }

    pub fn alphabet(&self) -> AlphabetSpec {
        self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter at 1-based `position`.
    pub fn letter_at(&self, position: usize) -> Option<Letter> {
        (1..=self.len())
            .contains(&position)
            .then(|| self.letters[position - 1])
    }

    /// Verifies the word is over the expected alphabet.
    pub fn expect_alphabet(&self, expected: AlphabetSpec) -> Result<(), WordError> {
        if self.alphabet == expected {
            Ok(())
        } else {
            Err(WordError::AlphabetMismatch {
                expected: expected.name(),
                found: self.alphabet.name(),
            })
        }
    }

    /// The lattice points visited when walking the word from `origin`;
    /// `len() + 1` points, successive differences given by [`step_vector`].
    pub fn prefix_path(&self, origin: LatticePoint) -> Vec<LatticePoint> {
        let mut points = Vec::with_capacity(self.len() + 1);
        let mut current = origin;
        points.push(current);
        for &letter in &self.letters {
            let (dx, dy) = step_vector(letter, self.alphabet);
            current = LatticePoint::new(current.x + dx, current.y + dy);
            points.push(current);
        }
        points
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, letter) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&letter.token(self.alphabet))?;
        }
        Ok(())
    }
}

fn parse_token(token: &str, alphabet: AlphabetSpec) -> Result<Letter, WordError> {
    let unknown = || WordError::UnknownToken {
        token: token.to_string(),
        alphabet: alphabet.name(),
    };
    match alphabet {
        AlphabetSpec::Lukasiewicz(p) => {
            let letter = match token {
                "D" => Letter::Luk(-1),
                "U" if p == 1 => Letter::Luk(1),
                "L" if p == 1 => Letter::Luk(0),
                _ => Letter::Luk(token.parse::<i32>().map_err(|_| unknown())?),
            };
            match letter {
                Letter::Luk(mu) if -1 <= mu && mu <= p as i32 => Ok(letter),
                _ => Err(WordError::OutOfRange {
                    token: token.to_string(),
                    p,
                }),
            }
        }
        AlphabetSpec::Tandem(p) => {
            let letter = match token {
                "D" => Letter::TandemSe,
                "SE" if p == 1 => Letter::TandemSe,
                "N" if p == 1 => Letter::TandemLong(1),
                "W" if p == 1 => Letter::TandemLong(0),
                _ => Letter::TandemLong(token.parse::<u32>().map_err(|_| unknown())?),
            };
            match letter {
                Letter::TandemLong(rise) if rise > p => Err(WordError::OutOfRange {
                    token: token.to_string(),
                    p,
                }),
                _ => Ok(letter),
            }
        }
        AlphabetSpec::BicolMotzkin => match token {
            "U" => Ok(Letter::Bicol(Dir3::Up, Colour::Solid)),
            "L" => Ok(Letter::Bicol(Dir3::Level, Colour::Solid)),
            "D" => Ok(Letter::Bicol(Dir3::Down, Colour::Solid)),
            "u" => Ok(Letter::Bicol(Dir3::Up, Colour::Striped)),
            "l" => Ok(Letter::Bicol(Dir3::Level, Colour::Striped)),
            "d" => Ok(Letter::Bicol(Dir3::Down, Colour::Striped)),
            _ => Err(unknown()),
        },
        AlphabetSpec::SymSix => match token {
            "N" => Ok(Letter::Sym(SymDir::N)),
            "S" => Ok(Letter::Sym(SymDir::S)),
            "E" => Ok(Letter::Sym(SymDir::E)),
            "W" => Ok(Letter::Sym(SymDir::W)),
            "SE" => Ok(Letter::Sym(SymDir::Se)),
            "NW" => Ok(Letter::Sym(SymDir::Nw)),
            _ => Err(unknown()),
        },
        AlphabetSpec::Yamanouchi3 => match token {
            "1" => Ok(Letter::Yam(1)),
            "2" => Ok(Letter::Yam(2)),
            "3" => Ok(Letter::Yam(3)),
            _ => Err(unknown()),
        },
    }
}

/// Displacement of one letter. Yamanouchi digits move like the quarter-plane
/// steps they encode (1 as N, 2 as SE, 3 as W).
pub fn step_vector(letter: Letter, alphabet: AlphabetSpec) -> (i64, i64) {
    match letter {
        Letter::Luk(mu) => (1, mu as i64),
        Letter::TandemSe => (1, -1),
        Letter::TandemLong(rise) => {
            let p = alphabet.p().unwrap_or(0) as i64;
            (rise as i64 - p, rise as i64)
        }
        Letter::Bicol(dir, _) => match dir {
            Dir3::Up => (1, 1),
            Dir3::Level => (1, 0),
            Dir3::Down => (1, -1),
        },
        Letter::Sym(dir) => match dir {
            SymDir::N => (0, 1),
            SymDir::S => (0, -1),
            SymDir::E => (1, 0),
            SymDir::W => (-1, 0),
            SymDir::Se => (1, -1),
            SymDir::Nw => (-1, 1),
        },
        Letter::Yam(d) => match d {
            1 => (0, 1),
            2 => (1, -1),
            _ => (-1, 0),
        },
    }
}

/// One of the walk classes the bijections relate. The class determines the
/// admissible alphabet of its words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WalkClass {
    /// Words over `Lukasiewicz(1)` with nonnegative prefix heights, final height 0.
    Motzkin,
    /// Words over `Tandem(1)` with nonnegative prefix heights, final height 0.
    HalfPlaneTandem,
    /// Words over `Tandem(1)` whose walks stay in the quarter plane.
    QuarterTandem1,
    /// Words over digits 1..3 where every prefix has #1 >= #2 >= #3.
    Yamanouchi3,
    /// Six-step words whose walks stay in the quarter plane.
    QSym,
    /// Bicoloured words that are Motzkin words once colours are forgotten.
    BicolMotzkin,
    /// Words over `Lukasiewicz(p)` with nonnegative prefix heights, final height 0.
    Lukasiewicz(u32),
    /// Words over `Tandem(p)` whose walks stay in the quarter plane.
    PTandem(u32),
}

impl WalkClass {
    /// The alphabet whose words this class is a subset of.
    pub fn admissible_alphabet(&self) -> AlphabetSpec {
        match self {
            WalkClass::Motzkin => AlphabetSpec::Lukasiewicz(1),
            WalkClass::HalfPlaneTandem | WalkClass::QuarterTandem1 => AlphabetSpec::Tandem(1),
            WalkClass::Yamanouchi3 => AlphabetSpec::Yamanouchi3,
            WalkClass::QSym => AlphabetSpec::SymSix,
            WalkClass::BicolMotzkin => AlphabetSpec::BicolMotzkin,
            WalkClass::Lukasiewicz(p) => AlphabetSpec::Lukasiewicz(*p),
            WalkClass::PTandem(p) => AlphabetSpec::Tandem(*p),
        }
    }

    pub fn name(&self) -> String {
        match self {
            WalkClass::Motzkin => "motzkin".into(),
            WalkClass::HalfPlaneTandem => "half-plane-tandem".into(),
            WalkClass::QuarterTandem1 => "quarter-tandem".into(),
            WalkClass::Yamanouchi3 => "yamanouchi".into(),
            WalkClass::QSym => "quarter-six-step".into(),
            WalkClass::BicolMotzkin => "bicoloured-motzkin".into(),
            WalkClass::Lukasiewicz(p) => format!("lukasiewicz({p})"),
            WalkClass::PTandem(p) => format!("tandem({p})"),
        }
    }
}

impl fmt::Display for WalkClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Does `word` satisfy the prefix inequalities (and, where the class demands
/// it, the return-to-axis condition) defining `class`?
pub fn is_member(word: &Word, class: WalkClass) -> Result<bool, WordError> {
    let expected = class.admissible_alphabet();
    if word.alphabet() != expected {
        return Err(WordError::ClassMismatch {
            class: class.name(),
            alphabet: word.alphabet().name(),
        });
    }
    let path = word.prefix_path(LatticePoint::default());
    Ok(match class {
        WalkClass::Motzkin
        | WalkClass::HalfPlaneTandem
        | WalkClass::BicolMotzkin
        | WalkClass::Lukasiewicz(_) => {
            path.iter().all(|pt| pt.y >= 0) && path.last().is_some_and(|pt| pt.y == 0)
        }
        WalkClass::QuarterTandem1
        | WalkClass::Yamanouchi3
        | WalkClass::QSym
        | WalkClass::PTandem(_) => path.iter().all(|pt| pt.x >= 0 && pt.y >= 0),
    })
}

/// Letterwise recodings between the pairs of obviously isomorphic classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecodeScheme {
    /// U -> N, L -> W, D -> SE.
    MotzkinToHalfPlane,
    /// N -> U, W -> L, SE -> D.
    HalfPlaneToMotzkin,
    /// 1 -> N, 2 -> SE, 3 -> W.
    YamanouchiToQuarter,
    /// N -> 1, SE -> 2, W -> 3.
    QuarterToYamanouchi,
}

impl RecodeScheme {
    pub fn source(&self) -> AlphabetSpec {
        match self {
            RecodeScheme::MotzkinToHalfPlane => AlphabetSpec::Lukasiewicz(1),
            RecodeScheme::HalfPlaneToMotzkin => AlphabetSpec::Tandem(1),
            RecodeScheme::YamanouchiToQuarter => AlphabetSpec::Yamanouchi3,
            RecodeScheme::QuarterToYamanouchi => AlphabetSpec::Tandem(1),
        }
    }

    pub fn target(&self) -> AlphabetSpec {
        match self {
            RecodeScheme::MotzkinToHalfPlane => AlphabetSpec::Tandem(1),
            RecodeScheme::HalfPlaneToMotzkin => AlphabetSpec::Lukasiewicz(1),
            RecodeScheme::YamanouchiToQuarter => AlphabetSpec::Tandem(1),
            RecodeScheme::QuarterToYamanouchi => AlphabetSpec::Yamanouchi3,
        }
    }
}

/// Applies a [`RecodeScheme`] letter by letter. Applying a scheme and then its
/// flipped counterpart is the identity.
pub fn recode(word: &Word, scheme: RecodeScheme) -> Result<Word, WordError> {
    word.expect_alphabet(scheme.source())?;
    let letters = word
        .letters()
        .iter()
        .map(|&l| match (scheme, l) {
            (RecodeScheme::MotzkinToHalfPlane, Letter::Luk(1)) => Letter::TandemLong(1),
            (RecodeScheme::MotzkinToHalfPlane, Letter::Luk(0)) => Letter::TandemLong(0),
            (RecodeScheme::MotzkinToHalfPlane, _) => Letter::TandemSe,
            (RecodeScheme::HalfPlaneToMotzkin, Letter::TandemLong(1)) => Letter::Luk(1),
            (RecodeScheme::HalfPlaneToMotzkin, Letter::TandemLong(_)) => Letter::Luk(0),
            (RecodeScheme::HalfPlaneToMotzkin, _) => Letter::Luk(-1),
            (RecodeScheme::YamanouchiToQuarter, Letter::Yam(1)) => Letter::TandemLong(1),
            (RecodeScheme::YamanouchiToQuarter, Letter::Yam(2)) => Letter::TandemSe,
            (RecodeScheme::YamanouchiToQuarter, _) => Letter::TandemLong(0),
            (RecodeScheme::QuarterToYamanouchi, Letter::TandemLong(1)) => Letter::Yam(1),
            (RecodeScheme::QuarterToYamanouchi, Letter::TandemSe) => Letter::Yam(2),
            (RecodeScheme::QuarterToYamanouchi, _) => Letter::Yam(3),
        })
        .collect();
    Word::new(scheme.target(), letters)
}

/// Mirror a six-step word through the main diagonal `y = x`.
pub fn reflect_sym(word: &Word) -> Result<Word, WordError> {
    word.expect_alphabet(AlphabetSpec::SymSix)?;
    let letters = word
        .letters()
        .iter()
        .map(|&l| match l {
            Letter::Sym(dir) => Letter::Sym(dir.reflected()),
            other => other,
        })
        .collect();
    Word::new(AlphabetSpec::SymSix, letters)
}
