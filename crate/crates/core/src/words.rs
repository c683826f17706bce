// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Color-sequence predicates and generators, and the pluggable
//! [`SequenceProperty`] interface that the connectivity searches are
//! parameterized by.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Color;

/// A property of color sequences.
///
/// Implementations used with the path searches must be closed under taking
/// nonempty blocks, so that an invalid prefix can be pruned.
pub trait SequenceProperty: Sync {
    fn name(&self) -> &str;

    fn is_valid(&self, seq: &[Color]) -> bool;

    /// Validity of `seq` given that `seq[..seq.len() - 1]` is already valid.
    fn extends_valid(&self, seq: &[Color]) -> bool {
        self.is_valid(seq)
    }

    /// Size of the alphabet the generator draws from.
    fn alphabet_size(&self) -> usize;

    /// A valid sequence of exactly `len` symbols over `1..=alphabet_size()`.
    fn generate(&self, len: usize) -> Vec<Color>;

    fn reversal_closed(&self) -> bool;

    /// `Some(w)` if validity is decided by windows of `w + 1` consecutive
    /// symbols. Enables walk-based pre-filtering.
    fn window(&self) -> Option<usize> {
        None
    }
}

/// The three built-in properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    /// No two consecutive colors equal.
    Proper,
    /// No two colors at distance one or two equal.
    Strong,
    /// No block of the form `XX`.
    Nonrepetitive,
}

impl Property {
    pub const ALL: [Property; 3] = [Property::Proper, Property::Strong, Property::Nonrepetitive];

    pub fn as_str(self) -> &'static str {
        match self {
            Property::Proper => "proper",
            Property::Strong => "strong",
            Property::Nonrepetitive => "nonrep",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "proper" => Ok(Property::Proper),
            "strong" => Ok(Property::Strong),
            "nonrep" => Ok(Property::Nonrepetitive),
            other => Err(Error::InvalidParameter(format!(
                "unknown property `{other}` (expected proper, strong or nonrep)"
            ))),
        }
    }
}

impl SequenceProperty for Property {
    fn name(&self) -> &str {
        self.as_str()
    }

    fn is_valid(&self, seq: &[Color]) -> bool {
        match self {
            Property::Proper => is_proper(seq),
            Property::Strong => is_strongly_proper(seq),
            Property::Nonrepetitive => is_nonrepetitive(seq),
        }
    }

    fn extends_valid(&self, seq: &[Color]) -> bool {
        let n = seq.len();
        match self {
            Property::Proper => n < 2 || seq[n - 1] != seq[n - 2],
            Property::Strong => {
                (n < 2 || seq[n - 1] != seq[n - 2]) && (n < 3 || seq[n - 1] != seq[n - 3])
            }
            Property::Nonrepetitive => !ends_with_square(seq),
        }
    }

    fn alphabet_size(&self) -> usize {
        match self {
            Property::Proper => 2,
            Property::Strong | Property::Nonrepetitive => 3,
        }
    }

    fn generate(&self, len: usize) -> Vec<Color> {
        match self {
            Property::Proper => (0..len).map(|i| 1 + (i % 2) as Color).collect(),
            Property::Strong => canonical_sequence(len, 1).expect("start 1 is valid"),
            Property::Nonrepetitive => thue_sequence(len),
        }
    }

    fn reversal_closed(&self) -> bool {
        true
    }

    fn window(&self) -> Option<usize> {
        match self {
            Property::Proper => Some(1),
            Property::Strong => Some(2),
            Property::Nonrepetitive => None,
        }
    }
}

pub fn is_proper(seq: &[Color]) -> bool {
    seq.windows(2).all(|w| w[0] != w[1])
}

/// Every window of at most three consecutive symbols is rainbow.
pub fn is_strongly_proper(seq: &[Color]) -> bool {
    is_proper(seq) && seq.windows(3).all(|w| w[0] != w[2])
}

/// True iff no block of `seq` has the form `XX` with `X` nonempty.
///
/// A square of period `p` is a run of `p` consecutive positions with
/// `seq[i] == seq[i + p]`, so each period costs one linear scan.
pub fn is_nonrepetitive(seq: &[Color]) -> bool {
    let n = seq.len();
    for p in 1..=n / 2 {
        let mut run = 0;
        for i in 0..n - p {
            if seq[i] == seq[i + p] {
                run += 1;
                if run >= p {
                    return false;
                }
            } else {
                run = 0;
            }
        }
    }
    true
}

/// True iff some square ends at the last position of `seq`.
pub fn ends_with_square(seq: &[Color]) -> bool {
    let n = seq.len();
    (1..=n / 2).any(|p| seq[n - 2 * p..n - p] == seq[n - p..])
}

/// `n` consecutive terms of `1, 2, 3, 1, 2, 3, ...` starting at `start`.
pub fn canonical_sequence(n: usize, start: Color) -> Result<Vec<Color>> {
    if !(1..=3).contains(&start) {
        return Err(Error::InvalidParameter(format!(
            "canonical start color must be 1, 2 or 3, got {start}"
        )));
    }
    Ok((0..n).map(|i| (start - 1 + i as Color) % 3 + 1).collect())
}

/// Prefix of length `n` of the squarefree ternary word generated by the
/// morphism `1 -> 123, 2 -> 13, 3 -> 2` from the seed `1`.
pub fn thue_sequence(n: usize) -> Vec<Color> {
    let mut word: Vec<Color> = vec![1];
    while word.len() < n {
        word = word
            .iter()
            .flat_map(|&c| -> &[Color] {
                match c {
                    1 => &[1, 2, 3],
                    2 => &[1, 3],
                    _ => &[2],
                }
            })
            .copied()
            .collect();
    }
    word.truncate(n);
    word
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HonestyCheck {
    /// Nonempty blocks of valid sequences are valid.
    Blocks,
    /// Valid sequences over disjoint alphabets concatenate to a valid one.
    Concatenation,
    /// The generator yields valid sequences of every length over `1..=m`.
    Generator,
    /// Reversals of valid sequences are valid (only if the flag is set).
    Reversal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HonestyViolation {
    pub check: HonestyCheck,
    /// The offending sequence.
    pub witness: Vec<Color>,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct HonestyReport {
    pub samples: usize,
    pub violations: Vec<HonestyViolation>,
}

impl HonestyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn failed(&self, check: HonestyCheck) -> bool {
        self.violations.iter().any(|v| v.check == check)
    }

    fn record(&mut self, check: HonestyCheck, witness: Vec<Color>, detail: String) {
        // one witness per check is enough
        if !self.failed(check) {
            self.violations.push(HonestyViolation {
                check,
                witness,
                detail,
            });
        }
    }
}

/// A random valid sequence grown symbol by symbol, stopping early if no
/// symbol extends it.
fn random_valid_sequence(p: &dyn SequenceProperty, len: usize, rng: &mut ChaCha8Rng) -> Vec<Color> {
    let mut alphabet: Vec<Color> = (1..=p.alphabet_size() as Color).collect();
    let mut seq = Vec::with_capacity(len);
    while seq.len() < len {
        alphabet.shuffle(rng);
        let extended = alphabet.iter().any(|&c| {
            seq.push(c);
            if p.extends_valid(&seq) {
                true
            } else {
                seq.pop();
                false
            }
        });
        if !extended {
            break;
        }
    }
    seq
}

/// Empirically checks the honesty conditions (and reversal closure when
/// claimed) on generated and random valid sequences of length at most
/// `sample_len`.
pub fn check_honesty(p: &dyn SequenceProperty, sample_len: usize, trials: usize) -> HonestyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(0x686f_6e65_7374);
    let mut report = HonestyReport::default();
    let m = p.alphabet_size() as Color;

    for len in 1..=sample_len {
        let seq = p.generate(len);
        if seq.len() != len {
            report.record(
                HonestyCheck::Generator,
                seq.clone(),
                format!("requested length {len}, got {}", seq.len()),
            );
        }
        if seq.iter().any(|&c| c == 0 || c > m) {
            report.record(
                HonestyCheck::Generator,
                seq.clone(),
                format!("symbol outside 1..={m}"),
            );
        }
        if !p.is_valid(&seq) {
            report.record(
                HonestyCheck::Generator,
                seq,
                format!("generated length-{len} sequence invalid"),
            );
        }
    }

    let mut samples: Vec<Vec<Color>> = Vec::with_capacity(trials);
    for t in 0..trials {
        let len = rng.gen_range(1..=sample_len.max(1));
        let candidate = if t % 2 == 0 {
            let offset = rng.gen_range(0..=sample_len);
            p.generate(len + offset)[offset..].to_vec()
        } else {
            random_valid_sequence(p, len, &mut rng)
        };
        if !candidate.is_empty() && p.is_valid(&candidate) {
            samples.push(candidate);
        }
    }
    report.samples = samples.len();

    for seq in &samples {
        'blocks: for i in 0..seq.len() {
            for j in i + 1..=seq.len() {
                if (i, j) != (0, seq.len()) && !p.is_valid(&seq[i..j]) {
                    report.record(
                        HonestyCheck::Blocks,
                        seq[i..j].to_vec(),
                        format!("block {i}..{j} of valid {seq:?} is invalid"),
                    );
                    break 'blocks;
                }
            }
        }
        if p.reversal_closed() {
            let reversed: Vec<Color> = seq.iter().rev().copied().collect();
            if !p.is_valid(&reversed) {
                report.record(
                    HonestyCheck::Reversal,
                    reversed,
                    format!("reversal of {seq:?} is invalid"),
                );
            }
        }
    }

    for pair in samples.chunks(2) {
        if let [s, t] = pair {
            let shift = s.iter().copied().max().unwrap_or(0);
            let joined: Vec<Color> = s
                .iter()
                .copied()
                .chain(t.iter().map(|c| c + shift))
                .collect();
            if !p.is_valid(&joined) {
                report.record(
                    HonestyCheck::Concatenation,
                    joined,
                    format!("{s:?} followed by renamed {t:?} is invalid"),
                );
            }
        }
    }
    report
}
