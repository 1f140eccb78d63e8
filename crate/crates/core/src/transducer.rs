//! The single-pass counter transducers between height words and quarter-plane
//! words, in both directions, together with trace recording and the
//! stack-augmented backward run used by the raising correspondence checks.
//!
//! Both directions share one internal memory, a [`CounterState`]: a stack of
//! deferred letters plus a unit counter. The forward run folds the input left
//! to right from the empty state; the backward run folds right to left from
//! the empty state and is total. Exactly one transition applies at every step
//! of either direction, and each backward transition undoes the matching
//! forward one locally.

use std::fmt;

use thiserror::Error;

use crate::words::{AlphabetSpec, Letter, Word, WordError};

/// One stack entry. `pending` is the letter value whose handling has been
/// deferred (it is restored to the unit counter when the entry is popped);
/// `absorbed` counts the down-steps folded into the entry since its push, and
/// fixes the west span of the long step emitted on pop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StackLetter {
    pub pending: u32,
    pub absorbed: u32,
}

impl StackLetter {
    pub fn new(pending: u32, absorbed: u32) -> Self {
        StackLetter { pending, absorbed }
    }

    /// Entries must satisfy `pending + absorbed <= p - 1`.
    pub fn valid_for(&self, p: u32) -> bool {
        self.pending + self.absorbed <= p - 1
    }
}

impl fmt::Display for StackLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.pending, self.absorbed)
    }
}

/// Transducer memory: a stack of [`StackLetter`]s (last element is the top)
/// plus a nonnegative unit counter.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CounterState {
    pub stack: Vec<StackLetter>,
    pub v: u32,
}

impl CounterState {
    pub fn new() -> Self {
        CounterState::default()
    }

    pub fn is_initial(&self) -> bool {
        self.stack.is_empty() && self.v == 0
    }
}

impl fmt::Display for CounterState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", stack_cell(&self.stack), self.v)
    }
}

/// Names of the transitions of the general model. `T8` is the blocking case
/// of the forward direction; it never appears in a completed trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransitionTag {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
}

impl TransitionTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            TransitionTag::T1 => "T1",
            TransitionTag::T2 => "T2",
            TransitionTag::T3 => "T3",
            TransitionTag::T4 => "T4",
            TransitionTag::T5 => "T5",
            TransitionTag::T6 => "T6",
            TransitionTag::T7 => "T7",
            TransitionTag::T8 => "T8",
        }
    }

    /// Display name in the three-step model. At `p = 1` the pop transitions
    /// `T3` and `T4` both show as `D3`; `T6` cannot fire there.
    pub fn three_step_alias(&self) -> &'static str {
        match self {
            TransitionTag::T1 => "U1",
            TransitionTag::T2 => "L1",
            TransitionTag::T3 | TransitionTag::T4 => "D3",
            TransitionTag::T5 => "L2",
            TransitionTag::T6 => "T6",
            TransitionTag::T7 => "D2",
            TransitionTag::T8 => "DE",
        }
    }
}

impl fmt::Display for TransitionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One step of a completed run. `stack` and `v` are the counters at word
/// index `position`: the forward run reaches them after consuming the letter,
/// the backward run holds them just before consuming it, so corresponding
/// runs agree row by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRow {
    pub position: usize,
    pub input: Letter,
    pub tag: TransitionTag,
    pub stack: Vec<StackLetter>,
    pub v: u32,
    pub output: Letter,
}

/// Forward transduction failed: a down letter arrived on empty counters.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("blocked at position {position}: down step on empty counters")]
pub struct TransduceError {
    pub position: usize,
    pub state: CounterState,
}

/// Errors of the transducer entry points.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransducerError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Blocked(#[from] TransduceError),
}

/// Marker for the blocking case of a single forward step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepBlocked;

fn long(p: u32, rise: u32) -> Letter {
    debug_assert!(rise <= p);
    Letter::TandemLong(rise)
}

/// Applies one forward transition in place and returns its tag and output.
fn lr_apply(p: u32, mu: i32, s: &mut CounterState) -> Result<(TransitionTag, Letter), StepBlocked> {
    debug_assert!(p >= 1 && -1 <= mu && mu <= p as i32);
    if mu == p as i32 {
        s.v += p;
        return Ok((TransitionTag::T1, long(p, p)));
    }
    if mu >= 0 {
        if s.v == 0 {
            s.v = mu as u32;
            return Ok((TransitionTag::T2, long(p, p)));
        }
        s.stack.push(StackLetter::new(mu as u32, 0));
        s.v -= 1;
        return Ok((TransitionTag::T5, Letter::TandemSe));
    }
    if s.v == 0 {
        return match s.stack.pop() {
            None => Err(StepBlocked),
            Some(top) => {
                s.v = top.pending;
                Ok((TransitionTag::T3, long(p, p - top.absorbed - 1)))
            }
        };
    }
    match s.stack.last().copied() {
        None => {
            s.v -= 1;
            Ok((TransitionTag::T7, Letter::TandemSe))
        }
        Some(top) if top.pending + top.absorbed == p - 1 => {
            s.stack.pop();
            s.v += top.pending;
            Ok((TransitionTag::T4, long(p, p - top.absorbed - 1)))
        }
        Some(_) => {
            let top = s.stack.last_mut().expect("nonempty");
            top.absorbed += 1;
            s.v -= 1;
            Ok((TransitionTag::T6, Letter::TandemSe))
        }
    }
}

/// Applies one backward transition in place; total on its input space.
fn rl_apply(p: u32, abar: Letter, s: &mut CounterState) -> (TransitionTag, Letter) {
    debug_assert!(p >= 1);
    match abar {
        Letter::TandemLong(rise) if rise == p => {
            if s.v <= p - 1 {
                let q = s.v;
                s.v = 0;
                (TransitionTag::T2, Letter::Luk(q as i32))
            } else {
                s.v -= p;
                (TransitionTag::T1, Letter::Luk(p as i32))
            }
        }
        Letter::TandemLong(rise) => {
            let absorbed = p - rise - 1;
            if s.v <= rise {
                s.stack.push(StackLetter::new(s.v, absorbed));
                s.v = 0;
                (TransitionTag::T3, Letter::Luk(-1))
            } else {
                s.stack.push(StackLetter::new(rise, absorbed));
                s.v -= rise;
                (TransitionTag::T4, Letter::Luk(-1))
            }
        }
        Letter::TandemSe => match s.stack.last().copied() {
            None => {
                s.v += 1;
                (TransitionTag::T7, Letter::Luk(-1))
            }
            Some(top) if top.absorbed == 0 => {
                s.stack.pop();
                s.v += 1;
                (TransitionTag::T5, Letter::Luk(top.pending as i32))
            }
            Some(_) => {
                let top = s.stack.last_mut().expect("nonempty");
                top.absorbed -= 1;
                s.v += 1;
                (TransitionTag::T6, Letter::Luk(-1))
            }
        },
        _ => unreachable!("validated alphabet"),
    }
}

/// One forward step on an explicit state; the blocking case is the error.
pub fn lr_step(
    p: u32,
    input: Letter,
    state: &CounterState,
) -> Result<(TransitionTag, CounterState, Letter), StepBlocked> {
    let mu = match input {
        Letter::Luk(mu) => mu,
        _ => panic!("forward step expects a height letter"),
    };
    let mut next = state.clone();
    let (tag, output) = lr_apply(p, mu, &mut next)?;
    Ok((tag, next, output))
}

/// One backward step on an explicit state; total.
pub fn rl_step(p: u32, input: Letter, state: &CounterState) -> (TransitionTag, CounterState, Letter) {
    let mut next = state.clone();
    let (tag, output) = rl_apply(p, input, &mut next);
    (tag, next, output)
}

/// A completed forward run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiRun {
    pub input: Word,
    pub output: Word,
    pub final_state: CounterState,
    pub rows: Vec<TraceRow>,
}

impl PhiRun {
    /// The run consumed a class member: it ended on empty counters.
    pub fn closes(&self) -> bool {
        self.final_state.is_initial()
    }
}

/// A completed backward run. `final_state` is the state after the whole word
/// has been consumed (word index 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiRun {
    pub input: Word,
    pub output: Word,
    pub final_state: CounterState,
    pub rows: Vec<TraceRow>,
}

impl PsiRun {
    pub fn closes(&self) -> bool {
        self.final_state.is_initial()
    }
}

/// Folds the forward transducer over a height word. Partial: reports the
/// first blocking position. The input need not be a class member; it is one
/// exactly when the run succeeds and [`PhiRun::closes`].
pub fn phi_p(p: u32, word: &Word) -> Result<PhiRun, TransducerError> {
    word.expect_alphabet(AlphabetSpec::Lukasiewicz(p))?;
    let mut state = CounterState::new();
    let mut rows = Vec::with_capacity(word.len());
    let mut outputs = Vec::with_capacity(word.len());
    for (i, &letter) in word.letters().iter().enumerate() {
        let mu = match letter {
            Letter::Luk(mu) => mu,
            _ => unreachable!("validated alphabet"),
        };
        let (tag, output) = lr_apply(p, mu, &mut state).map_err(|_| TransduceError {
            position: i + 1,
            state: state.clone(),
        })?;
        outputs.push(output);
        rows.push(TraceRow {
            position: i + 1,
            input: letter,
            tag,
            stack: state.stack.clone(),
            v: state.v,
            output,
        });
    }
    Ok(PhiRun {
        input: word.clone(),
        output: Word::new(AlphabetSpec::Tandem(p), outputs).expect("letters fit"),
        final_state: state,
        rows,
    })
}

/// Folds the backward transducer over a quarter-plane-alphabet word, right to
/// left. Total. The input is a quarter-plane walk exactly when
/// [`PsiRun::closes`], and then the output is a class member mapped back by
/// [`phi_p`].
pub fn psi_p(p: u32, word: &Word) -> Result<PsiRun, TransducerError> {
    Ok(psi_p_augmented(p, word)?.run)
}

/// Event on the position stack of the augmented backward run, recorded while
/// processing one input position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VEvent {
    /// The position itself was pushed.
    Push { source: usize },
    /// `count` positions were popped, most recent first.
    Pop { count: usize, sources: Vec<usize> },
}

/// Lifetime of one element of the letter stack during the backward run:
/// where it was pushed, which positions decremented it, and where it was
/// popped (descending positions, since the run moves right to left).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackElementLifetime {
    pub pushed_at: usize,
    pub letter: StackLetter,
    pub decremented_at: Vec<usize>,
    pub popped_at: Option<usize>,
}

/// A backward run augmented with provenance: the unit counter is mirrored by
/// a stack of source positions (one event per input position), and every
/// letter-stack element records the positions that touched it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiAugmentedRun {
    pub run: PsiRun,
    /// `v_events[i - 1]` is the event recorded while processing position `i`.
    pub v_events: Vec<VEvent>,
    /// Lifetimes in push order (descending `pushed_at`).
    pub h_events: Vec<StackElementLifetime>,
}

/// Backward run with position-provenance recording.
pub fn psi_p_augmented(p: u32, word: &Word) -> Result<PsiAugmentedRun, TransducerError> {
    word.expect_alphabet(AlphabetSpec::Tandem(p))?;
    let n = word.len();
    let mut state = CounterState::new();
    let mut rows = vec![None; n];
    let mut outputs = vec![Letter::Luk(-1); n];
    let mut v_events = vec![None; n];
    let mut v_stack: Vec<usize> = Vec::new();
    let mut h_events: Vec<StackElementLifetime> = Vec::new();
    let mut live: Vec<usize> = Vec::new(); // indices into h_events, parallel to state.stack
    for i in (1..=n).rev() {
        let letter = word.letter_at(i).expect("in range");
        let before = (state.stack.clone(), state.v);
        rows[i - 1] = Some(TraceRow {
            position: i,
            input: letter,
            tag: TransitionTag::T8, // patched below
            stack: before.0,
            v: before.1,
            output: letter, // patched below
        });
        let v_before = state.v;
        let depth_before = state.stack.len();
        let (tag, output) = rl_apply(p, letter, &mut state);
        outputs[i - 1] = output;
        let row = rows[i - 1].as_mut().expect("just set");
        row.tag = tag;
        row.output = output;
        // mirror the unit counter on the position stack
        if state.v == v_before + 1 {
            v_stack.push(i);
            v_events[i - 1] = Some(VEvent::Push { source: i });
        } else {
            let count = (v_before - state.v) as usize;
            let mut sources = Vec::with_capacity(count);
            for _ in 0..count {
                sources.push(v_stack.pop().expect("stack mirrors counter"));
            }
            v_events[i - 1] = Some(VEvent::Pop { count, sources });
        }
        debug_assert_eq!(v_stack.len() as u32, state.v);
        // track letter-stack provenance
        match tag {
            TransitionTag::T3 | TransitionTag::T4 => {
                debug_assert_eq!(state.stack.len(), depth_before + 1);
                live.push(h_events.len());
                h_events.push(StackElementLifetime {
                    pushed_at: i,
                    letter: *state.stack.last().expect("just pushed"),
                    decremented_at: Vec::new(),
                    popped_at: None,
                });
            }
            TransitionTag::T5 => {
                let idx = live.pop().expect("pop matches a push");
                h_events[idx].popped_at = Some(i);
            }
            TransitionTag::T6 => {
                let idx = *live.last().expect("top exists");
                h_events[idx].decremented_at.push(i);
            }
            _ => {}
        }
    }
    let rows = rows.into_iter().map(|r| r.expect("filled")).collect();
    let v_events = v_events.into_iter().map(|e| e.expect("filled")).collect();
    Ok(PsiAugmentedRun {
        run: PsiRun {
            input: word.clone(),
            output: Word::new(AlphabetSpec::Lukasiewicz(p), outputs).expect("letters fit"),
            final_state: state,
            rows,
        },
        v_events,
        h_events,
    })
}

/// Replays the position-stack events into the stack contents at every word
/// index, bottom to top; entry `i` of the result is the stack at index `i`.
pub fn v_stacks(n: usize, events: &[VEvent]) -> Vec<Vec<usize>> {
    debug_assert_eq!(events.len(), n);
    let mut stacks = vec![Vec::new(); n + 1];
    let mut current: Vec<usize> = Vec::new();
    for i in (1..=n).rev() {
        match &events[i - 1] {
            VEvent::Push { source } => current.push(*source),
            VEvent::Pop { count, .. } => {
                current.truncate(current.len() - count);
            }
        }
        stacks[i - 1] = current.clone();
    }
    stacks
}

/// `"[]"` or `"[[2,0],[1,1]]"`, bottom of the stack first.
pub fn stack_cell(stack: &[StackLetter]) -> String {
    let mut out = String::from("[");
    for (i, letter) in stack.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&letter.to_string());
    }
    out.push(']');
    out
}

/// `"[]"` or `"[21,20,19]"`, bottom of the stack first.
pub fn position_cell(stack: &[usize]) -> String {
    let mut out = String::from("[");
    for (i, position) in stack.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&position.to_string());
    }
    out.push(']');
    out
}

/// A rendered trace table: a header plus one cell row per word position,
/// shared by the TSV and JSON-lines encodings.
pub struct TraceTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl TraceTable {
    pub fn to_tsv(&self) -> String {
        let mut out = self.header.join("\t");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        out
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let mut object = serde_json::Map::new();
            for (key, cell) in self.header.iter().zip(row) {
                let value = serde_json::from_str::<serde_json::Value>(cell)
                    .unwrap_or_else(|_| serde_json::Value::String(cell.clone()));
                object.insert(key.clone(), value);
            }
            out.push_str(&serde_json::Value::Object(object).to_string());
            out.push('\n');
        }
        out
    }
}

/// Options for [`trace_table`].
#[derive(Default)]
pub struct TraceTableOptions<'a> {
    /// Use the three-step display aliases for the tags.
    pub three_step_tags: bool,
    /// Position-stack contents per word index (`n + 1` entries).
    pub v_stacks: Option<&'a [Vec<usize>]>,
    /// Extra named columns of per-index values (`n + 1` entries each).
    pub parameters: &'a [(String, Vec<i64>)],
}

/// Builds the trace table of a run: columns `i`, `in`, `tr`, `H`, `v`, `out`,
/// then optionally `V` and one column per parameter. Row `i` shows the
/// counters and stacks at word index `i`.
pub fn trace_table(
    rows: &[TraceRow],
    input_alphabet: AlphabetSpec,
    output_alphabet: AlphabetSpec,
    options: &TraceTableOptions<'_>,
) -> TraceTable {
    let mut header: Vec<String> = ["i", "in", "tr", "H", "v", "out"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    if options.v_stacks.is_some() {
        header.push("V".into());
    }
    for (name, _) in options.parameters {
        header.push(name.clone());
    }
    let mut table_rows = Vec::with_capacity(rows.len());
    for row in rows {
        let mut cells = vec![
            row.position.to_string(),
            row.input.token(input_alphabet),
            if options.three_step_tags {
                row.tag.three_step_alias().to_string()
            } else {
                row.tag.as_str().to_string()
            },
            stack_cell(&row.stack),
            row.v.to_string(),
            row.output.token(output_alphabet),
        ];
        if let Some(stacks) = options.v_stacks {
            cells.push(position_cell(&stacks[row.position]));
        }
        for (_, values) in options.parameters {
            cells.push(values[row.position].to_string());
        }
        table_rows.push(cells);
    }
    TraceTable {
        header,
        rows: table_rows,
    }
}
