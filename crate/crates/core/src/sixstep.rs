//! The symmetric six-step model: single-pass maps between bicoloured
//! three-step words and six-step quarter-plane words, colour bookkeeping, and
//! the projection that factors a six-step quarter walk into a plain
//! quarter-plane walk plus a subset of positions.
//!
//! The memory is a plain pair of counters. Solid letters drive one copy of
//! the three-step transitions; striped letters drive the mirrored copy with
//! the two counters swapping roles.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::transducer::{phi_p, TraceTable, TransducerError};
use crate::words::{AlphabetSpec, Colour, Dir3, Letter, SymDir, Word, WordError};

/// The two counters of the six-step transducer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct CounterPair {
    pub h: u32,
    pub v: u32,
}

impl CounterPair {
    pub fn new(h: u32, v: u32) -> Self {
        CounterPair { h, v }
    }

    pub fn is_initial(&self) -> bool {
        self.h == 0 && self.v == 0
    }
}

impl fmt::Display for CounterPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.h, self.v)
    }
}

/// Transition names of the six-step model; primed tags fire on striped
/// letters only. The two `E` tags are the blocking cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymTag {
    U1,
    L1,
    L2,
    D2,
    D3,
    De,
    U1p,
    L1p,
    L2p,
    D2p,
    D3p,
    Dep,
}

impl SymTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            SymTag::U1 => "U1",
            SymTag::L1 => "L1",
            SymTag::L2 => "L2",
            SymTag::D2 => "D2",
            SymTag::D3 => "D3",
            SymTag::De => "DE",
            SymTag::U1p => "U1'",
            SymTag::L1p => "L1'",
            SymTag::L2p => "L2'",
            SymTag::D2p => "D2'",
            SymTag::D3p => "D3'",
            SymTag::Dep => "DE'",
        }
    }
}

impl fmt::Display for SymTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One step of a completed six-step run; `h`/`v` are the counters at the
/// row's word index, under the same convention as the general transducer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymTraceRow {
    pub position: usize,
    pub input: Letter,
    pub tag: SymTag,
    pub h: u32,
    pub v: u32,
    pub output: Letter,
}

/// Forward six-step transduction failed on a down letter at exhausted
/// counters.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("blocked at position {position} ({tag}): down step on empty counters")]
pub struct SymTransduceError {
    pub position: usize,
    pub tag: SymTag,
    pub state: CounterPair,
}

/// Errors of the six-step entry points.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SixStepError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Blocked(#[from] SymTransduceError),
    #[error("word leaves the quarter plane (counters {state} after the backward run)")]
    NotQuarterPlane { state: CounterPair },
    #[error(transparent)]
    Transducer(#[from] TransducerError),
}

/// A completed six-step run in either direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymRun {
    pub input: Word,
    pub output: Word,
    pub final_state: CounterPair,
    pub rows: Vec<SymTraceRow>,
}

impl SymRun {
    pub fn closes(&self) -> bool {
        self.final_state.is_initial()
    }
}

fn sym(dir: SymDir) -> Letter {
    Letter::Sym(dir)
}

fn bicol(dir: Dir3, colour: Colour) -> Letter {
    Letter::Bicol(dir, colour)
}

/// One forward transition; `Err` carries the blocking tag.
fn forward_apply(input: (Dir3, Colour), s: &mut CounterPair) -> Result<(SymTag, Letter), SymTag> {
    match input {
        (Dir3::Up, Colour::Solid) => {
            s.v += 1;
            Ok((SymTag::U1, sym(SymDir::N)))
        }
        (Dir3::Level, Colour::Solid) => {
            if s.v > 0 {
                s.h += 1;
                s.v -= 1;
                Ok((SymTag::L2, sym(SymDir::Se)))
            } else {
                Ok((SymTag::L1, sym(SymDir::N)))
            }
        }
        (Dir3::Down, Colour::Solid) => {
            if s.h > 0 {
                s.h -= 1;
                Ok((SymTag::D3, sym(SymDir::W)))
            } else if s.v > 0 {
                s.v -= 1;
                Ok((SymTag::D2, sym(SymDir::Se)))
            } else {
                Err(SymTag::De)
            }
        }
        (Dir3::Up, Colour::Striped) => {
            s.h += 1;
            Ok((SymTag::U1p, sym(SymDir::E)))
        }
        (Dir3::Level, Colour::Striped) => {
            if s.h > 0 {
                s.h -= 1;
                s.v += 1;
                Ok((SymTag::L2p, sym(SymDir::Nw)))
            } else {
                Ok((SymTag::L1p, sym(SymDir::E)))
            }
        }
        (Dir3::Down, Colour::Striped) => {
            if s.v > 0 {
                s.v -= 1;
                Ok((SymTag::D3p, sym(SymDir::S)))
            } else if s.h > 0 {
                s.h -= 1;
                Ok((SymTag::D2p, sym(SymDir::Nw)))
            } else {
                Err(SymTag::Dep)
            }
        }
    }
}

/// One backward transition; total.
fn backward_apply(input: SymDir, s: &mut CounterPair) -> (SymTag, Letter) {
    match input {
        SymDir::N => {
            if s.v > 0 {
                s.v -= 1;
                (SymTag::U1, bicol(Dir3::Up, Colour::Solid))
            } else {
                (SymTag::L1, bicol(Dir3::Level, Colour::Solid))
            }
        }
        SymDir::Se => {
            if s.h > 0 {
                s.h -= 1;
                s.v += 1;
                (SymTag::L2, bicol(Dir3::Level, Colour::Solid))
            } else {
                s.v += 1;
                (SymTag::D2, bicol(Dir3::Down, Colour::Solid))
            }
        }
        SymDir::W => {
            s.h += 1;
            (SymTag::D3, bicol(Dir3::Down, Colour::Solid))
        }
        SymDir::E => {
            if s.h > 0 {
                s.h -= 1;
                (SymTag::U1p, bicol(Dir3::Up, Colour::Striped))
            } else {
                (SymTag::L1p, bicol(Dir3::Level, Colour::Striped))
            }
        }
        SymDir::Nw => {
            if s.v > 0 {
                s.v -= 1;
                s.h += 1;
                (SymTag::L2p, bicol(Dir3::Level, Colour::Striped))
            } else {
                s.h += 1;
                (SymTag::D2p, bicol(Dir3::Down, Colour::Striped))
            }
        }
        SymDir::S => {
            s.v += 1;
            (SymTag::D3p, bicol(Dir3::Down, Colour::Striped))
        }
    }
}

/// One forward transition on an explicit counter pair; `Err` carries the
/// blocking tag.
pub fn sym_step(
    input: (Dir3, Colour),
    state: CounterPair,
) -> Result<(SymTag, CounterPair, Letter), SymTag> {
    let mut next = state;
    let (tag, output) = forward_apply(input, &mut next)?;
    Ok((tag, next, output))
}

/// One backward transition on an explicit counter pair; total.
pub fn sym_step_backward(input: SymDir, state: CounterPair) -> (SymTag, CounterPair, Letter) {
    let mut next = state;
    let (tag, output) = backward_apply(input, &mut next);
    (tag, next, output)
}

/// Forward fold over a bicoloured word. The run closes on the zero counters
/// exactly when the input decolours to a Motzkin word, and then the output is
/// a six-step quarter-plane walk.
pub fn phi_sym(word: &Word) -> Result<SymRun, SixStepError> {
    word.expect_alphabet(AlphabetSpec::BicolMotzkin)?;
    let mut state = CounterPair::default();
    let mut rows = Vec::with_capacity(word.len());
    let mut outputs = Vec::with_capacity(word.len());
    for (i, &letter) in word.letters().iter().enumerate() {
        let input = match letter {
            Letter::Bicol(dir, colour) => (dir, colour),
            _ => unreachable!("validated alphabet"),
        };
        let (tag, output) = forward_apply(input, &mut state).map_err(|tag| SymTransduceError {
            position: i + 1,
            tag,
            state,
        })?;
        outputs.push(output);
        rows.push(SymTraceRow {
            position: i + 1,
            input: letter,
            tag,
            h: state.h,
            v: state.v,
            output,
        });
    }
    Ok(SymRun {
        input: word.clone(),
        output: Word::new(AlphabetSpec::SymSix, outputs).expect("letters fit"),
        final_state: state,
        rows,
    })
}

/// Backward fold over a six-step word, right to left; total. The run closes
/// exactly when the input is a quarter-plane walk, and then the output is a
/// bicoloured Motzkin word mapped back by [`phi_sym`].
pub fn psi_sym(word: &Word) -> Result<SymRun, SixStepError> {
    word.expect_alphabet(AlphabetSpec::SymSix)?;
    let n = word.len();
    let mut state = CounterPair::default();
    let mut rows = vec![None; n];
    let mut outputs = vec![Letter::Bicol(Dir3::Level, Colour::Solid); n];
    for i in (1..=n).rev() {
        let letter = word.letter_at(i).expect("in range");
        let dir = match letter {
            Letter::Sym(dir) => dir,
            _ => unreachable!("validated alphabet"),
        };
        let (h, v) = (state.h, state.v);
        let (tag, output) = backward_apply(dir, &mut state);
        outputs[i - 1] = output;
        rows[i - 1] = Some(SymTraceRow {
            position: i,
            input: letter,
            tag,
            h,
            v,
            output,
        });
    }
    Ok(SymRun {
        input: word.clone(),
        output: Word::new(AlphabetSpec::BicolMotzkin, outputs).expect("letters fit"),
        final_state: state,
        rows: rows.into_iter().map(|r| r.expect("filled")).collect(),
    })
}

/// Forgets the colours of a bicoloured word, returning the underlying
/// three-step word and the 1-based striped positions.
pub fn decolor(word: &Word) -> Result<(Word, BTreeSet<usize>), SixStepError> {
    word.expect_alphabet(AlphabetSpec::BicolMotzkin)?;
    let mut striped = BTreeSet::new();
    let mut letters = Vec::with_capacity(word.len());
    for (i, &letter) in word.letters().iter().enumerate() {
        let (dir, colour) = match letter {
            Letter::Bicol(dir, colour) => (dir, colour),
            _ => unreachable!("validated alphabet"),
        };
        if colour == Colour::Striped {
            striped.insert(i + 1);
        }
        letters.push(Letter::Luk(match dir {
            Dir3::Up => 1,
            Dir3::Level => 0,
            Dir3::Down => -1,
        }));
    }
    Ok((
        Word::new(AlphabetSpec::Lukasiewicz(1), letters).expect("letters fit"),
        striped,
    ))
}

/// Inverse of [`decolor`]: stripes exactly the given positions.
pub fn recolor(word: &Word, striped: &BTreeSet<usize>) -> Result<Word, SixStepError> {
    word.expect_alphabet(AlphabetSpec::Lukasiewicz(1))?;
    if let Some(&position) = striped.iter().find(|&&pos| pos == 0 || pos > word.len()) {
        return Err(SixStepError::Word(WordError::PositionOutOfRange {
            position,
            len: word.len(),
        }));
    }
    let letters = word
        .letters()
        .iter()
        .enumerate()
        .map(|(i, &letter)| {
            let dir = match letter {
                Letter::Luk(1) => Dir3::Up,
                Letter::Luk(0) => Dir3::Level,
                _ => Dir3::Down,
            };
            let colour = if striped.contains(&(i + 1)) {
                Colour::Striped
            } else {
                Colour::Solid
            };
            Letter::Bicol(dir, colour)
        })
        .collect();
    Ok(Word::new(AlphabetSpec::BicolMotzkin, letters).expect("letters fit"))
}

/// Factors a six-step quarter-plane walk into a plain quarter-plane walk and
/// the set of positions whose letters came from the mirrored step set. The
/// induced map is a bijection onto pairs (walk, subset of positions).
pub fn two_n_projection(word: &Word) -> Result<(Word, BTreeSet<usize>), SixStepError> {
    let back = psi_sym(word)?;
    if !back.closes() {
        return Err(SixStepError::NotQuarterPlane {
            state: back.final_state,
        });
    }
    let (motzkin, striped) = decolor(&back.output)?;
    let forward = phi_p(1, &motzkin)?;
    debug_assert!(forward.closes());
    Ok((forward.output, striped))
}

/// Builds the trace table of a six-step run: columns `i`, `in`, `tr`, `h`,
/// `v`, `out`, with primed tag names.
pub fn sym_trace_table(rows: &[SymTraceRow], input_alphabet: AlphabetSpec, output_alphabet: AlphabetSpec) -> TraceTable {
    TraceTable {
        header: ["i", "in", "tr", "h", "v", "out"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        rows: rows
            .iter()
            .map(|row| {
                vec![
                    row.position.to_string(),
                    row.input.token(input_alphabet),
                    row.tag.as_str().to_string(),
                    row.h.to_string(),
                    row.v.to_string(),
                    row.output.token(output_alphabet),
                ]
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{is_member, reflect_sym, WalkClass};
    use proptest::prelude::*;

    fn bic(text: &str) -> Word {
        Word::parse(text, AlphabetSpec::BicolMotzkin).unwrap()
    }

    fn six(text: &str) -> Word {
        Word::parse(text, AlphabetSpec::SymSix).unwrap()
    }

    #[test]
    fn forward_examples() {
        let run = phi_sym(&bic("U D")).unwrap();
        assert_eq!(run.output.to_string(), "N SE");
        assert!(run.closes());

        // the all-striped copy is the mirror image: the down letter arrives
        // with v = 0 and h = 1, so it leaves through the NW branch
        let run = phi_sym(&bic("u d")).unwrap();
        assert_eq!(run.output.to_string(), "E NW");
        assert!(run.closes());

        let err = phi_sym(&bic("d")).unwrap_err();
        match err {
            SixStepError::Blocked(e) => {
                assert_eq!(e.position, 1);
                assert_eq!(e.tag, SymTag::Dep);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn backward_examples() {
        let run = psi_sym(&six("E")).unwrap();
        assert_eq!(run.output.to_string(), "l");
        assert!(run.closes());

        let run = psi_sym(&six("NW")).unwrap();
        assert_eq!(run.output.to_string(), "d");
        assert_eq!(run.final_state, CounterPair::new(1, 0));
        assert!(!run.closes());

        let run = psi_sym(&six("N SE")).unwrap();
        assert_eq!(run.output.to_string(), "U D");
        assert!(run.closes());
    }

    #[test]
    fn decolor_recolor_invert() {
        let w = bic("U d l");
        let (plain, striped) = decolor(&w).unwrap();
        assert_eq!(plain.to_string(), "U D L");
        assert_eq!(striped, BTreeSet::from([2, 3]));
        assert_eq!(recolor(&plain, &striped).unwrap(), w);

        let solid = bic("U L D");
        let (plain, striped) = decolor(&solid).unwrap();
        assert!(striped.is_empty());
        assert_eq!(recolor(&plain, &striped).unwrap(), solid);

        let err = recolor(&plain, &BTreeSet::from([4])).unwrap_err();
        assert!(matches!(
            err,
            SixStepError::Word(WordError::PositionOutOfRange { .. })
        ));
    }

    #[test]
    fn projection_examples() {
        let (q, striped) = two_n_projection(&six("N SE")).unwrap();
        assert_eq!(q.to_string(), "N SE");
        assert!(striped.is_empty());

        // pure mirrored walks project to their reflections
        let (q, striped) = two_n_projection(&six("E NW")).unwrap();
        assert_eq!(q.to_string(), "N SE");
        assert_eq!(striped, BTreeSet::from([1, 2]));

        assert!(matches!(
            two_n_projection(&six("E S")),
            Err(SixStepError::NotQuarterPlane { .. })
        ));
    }

    #[test]
    fn restrictions_agree_with_the_three_step_maps() {
        use crate::transducer::psi_p;
        // words over {N, W, SE} behave like the plain backward map, solid
        let w = six("N W SE SE N");
        let run = psi_sym(&w).unwrap();
        let (plain, striped) = decolor(&run.output).unwrap();
        assert!(striped.is_empty());
        let tandem1 = Word::parse(&w.to_string(), AlphabetSpec::Tandem(1)).unwrap();
        let back = psi_p(1, &tandem1).unwrap();
        assert_eq!(plain, back.output);

        // words over {S, E, NW} behave like the backward map on the mirror, striped
        let w = six("E S NW NW E");
        let run = psi_sym(&w).unwrap();
        let (plain, striped) = decolor(&run.output).unwrap();
        assert_eq!(striped, BTreeSet::from([1, 2, 3, 4, 5]));
        let mirrored = reflect_sym(&w).unwrap();
        let tandem1 = Word::parse(&mirrored.to_string(), AlphabetSpec::Tandem(1)).unwrap();
        let back = psi_p(1, &tandem1).unwrap();
        assert_eq!(plain, back.output);
    }

    fn forward_transitions_containing(input: (Dir3, Colour), s: CounterPair) -> Vec<SymTag> {
        let mut tags = Vec::new();
        let CounterPair { h, v } = s;
        match input {
            (Dir3::Up, Colour::Solid) => tags.push(SymTag::U1),
            (Dir3::Level, Colour::Solid) => tags.push(if v > 0 { SymTag::L2 } else { SymTag::L1 }),
            (Dir3::Down, Colour::Solid) => tags.push(if h > 0 {
                SymTag::D3
            } else if v > 0 {
                SymTag::D2
            } else {
                SymTag::De
            }),
            (Dir3::Up, Colour::Striped) => tags.push(SymTag::U1p),
            (Dir3::Level, Colour::Striped) => {
                tags.push(if h > 0 { SymTag::L2p } else { SymTag::L1p })
            }
            (Dir3::Down, Colour::Striped) => tags.push(if v > 0 {
                SymTag::D3p
            } else if h > 0 {
                SymTag::D2p
            } else {
                SymTag::Dep
            }),
        }
        tags
    }

    #[test]
    fn steps_reverse_each_other_locally() {
        let dirs = [Dir3::Up, Dir3::Level, Dir3::Down];
        let colours = [Colour::Solid, Colour::Striped];
        for h in 0..3 {
            for v in 0..3 {
                let s = CounterPair::new(h, v);
                for dir in dirs {
                    for colour in colours {
                        let expected = forward_transitions_containing((dir, colour), s);
                        assert_eq!(expected.len(), 1);
                        let mut state = s;
                        match forward_apply((dir, colour), &mut state) {
                            Ok((tag, out)) => {
                                assert_eq!(tag, expected[0]);
                                let out_dir = match out {
                                    Letter::Sym(d) => d,
                                    _ => unreachable!(),
                                };
                                let mut back = state;
                                let (back_tag, back_letter) = backward_apply(out_dir, &mut back);
                                assert_eq!(back_tag, tag);
                                assert_eq!(back, s);
                                assert_eq!(back_letter, Letter::Bicol(dir, colour));
                            }
                            Err(tag) => assert_eq!(tag, expected[0]),
                        }
                    }
                }
                for dir in SymDir::ALL {
                    let mut before = s;
                    let (tag, letter) = backward_apply(dir, &mut before);
                    let input = match letter {
                        Letter::Bicol(d, c) => (d, c),
                        _ => unreachable!(),
                    };
                    let mut fwd = before;
                    let (fwd_tag, fwd_out) =
                        forward_apply(input, &mut fwd).expect("reverse of total step");
                    assert_eq!(fwd_tag, tag);
                    assert_eq!(fwd, s);
                    assert_eq!(fwd_out, Letter::Sym(dir));
                }
            }
        }
    }

    fn arbitrary_bicol_word() -> impl Strategy<Value = Word> {
        proptest::collection::vec((0..3usize, proptest::bool::ANY), 0..24).prop_map(|codes| {
            let letters = codes
                .into_iter()
                .map(|(d, striped)| {
                    let dir = [Dir3::Up, Dir3::Level, Dir3::Down][d];
                    let colour = if striped { Colour::Striped } else { Colour::Solid };
                    Letter::Bicol(dir, colour)
                })
                .collect();
            Word::new(AlphabetSpec::BicolMotzkin, letters).unwrap()
        })
    }

    fn arbitrary_six_word() -> impl Strategy<Value = Word> {
        proptest::collection::vec(0..6usize, 0..24).prop_map(|codes| {
            let letters = codes.into_iter().map(|d| Letter::Sym(SymDir::ALL[d])).collect();
            Word::new(AlphabetSpec::SymSix, letters).unwrap()
        })
    }

    proptest! {
        #[test]
        fn closing_forward_runs_invert(w in arbitrary_bicol_word()) {
            if let Ok(run) = phi_sym(&w) {
                if run.closes() {
                    prop_assert!(is_member(&run.output, WalkClass::QSym).unwrap());
                    let back = psi_sym(&run.output).unwrap();
                    prop_assert!(back.closes());
                    prop_assert_eq!(back.output, w);
                }
            }
        }

        #[test]
        fn closing_backward_runs_invert(w in arbitrary_six_word()) {
            let run = psi_sym(&w).unwrap();
            let member = is_member(&w, WalkClass::QSym).unwrap();
            prop_assert_eq!(run.closes(), member);
            if run.closes() {
                prop_assert!(is_member(&run.output, WalkClass::BicolMotzkin).unwrap());
                let fwd = phi_sym(&run.output).unwrap();
                prop_assert!(fwd.closes());
                prop_assert_eq!(fwd.output, w);
            }
        }

        #[test]
        fn recolor_undoes_decolor(w in arbitrary_bicol_word()) {
            let (plain, striped) = decolor(&w).unwrap();
            prop_assert_eq!(recolor(&plain, &striped).unwrap(), w);
        }
    }
}
