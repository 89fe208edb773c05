//! Dialog dataset parsing, tokenization, vocabularies, and analysis subsets.
//!
//! Datasets arrive as UTF-8 JSON with a top-level `dialogs` array; each
//! record holds an `image_id`, a `caption`, and a `dialog` array of
//! question/answer turns. Everything is tokenized on load. Subset labels
//! (binary / coreference / audio-related) are deterministic keyword rules
//! so that per-subset evaluation is reproducible.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};

/// Version tag recorded on every subset labeling, so reports can state
/// which rule set produced them.
pub const SUBSET_RULE_VERSION: &str = "subset-rules-v1";

/// Pronouns that flag a question as coreferential.
pub const COREFERENCE_PRONOUNS: &[&str] = &[
    "he", "she", "it", "they", "him", "her", "them", "his", "hers", "its", "their", "theirs",
    "this", "that", "these", "those", "one", "ones",
];

/// Keywords that flag a question as audio-related.
pub const AUDIO_KEYWORDS: &[&str] = &[
    "sound", "sounds", "hear", "heard", "audio", "noise", "noises", "music", "talking", "talk",
    "say", "says", "said", "speak", "speaking", "sing", "singing", "loud",
];

const YES_TOKENS: &[&str] = &["yes", "yeah", "yep"];
const NO_TOKENS: &[&str] = &["no", "nope"];
const PUNCTUATION: &[char] = &['.', ',', '?', '!'];

/// Dataset split. Test-split answers may be withheld in official
/// releases, so validation is laxer there.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Split {
    Train,
    Val,
    Test,
}

impl Split {
    pub fn parse(s: &str) -> Result<Split> {
        match s {
            "train" => Ok(Split::Train),
            "val" => Ok(Split::Val),
            "test" => Ok(Split::Test),
            other => Err(Error::config(format!(
                "unknown split `{other}` (expected train, val, or test)"
            ))),
        }
    }
}

/// One question/answer exchange. The answer may be empty only in the
/// test split of official releases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Turn {
    pub question: Vec<String>,
    pub answer: Vec<String>,
}

/// One video's caption plus its ordered dialog turns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dialog {
    pub video_id: String,
    pub caption: Vec<String>,
    pub turns: Vec<Turn>,
}

/// Counts over one split: dialogs, turns, and tokens over all questions,
/// answers, and captions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DatasetStats {
    pub num_dialogs: usize,
    pub num_turns: usize,
    pub num_words: usize,
}

/// Lowercases, splits on whitespace, and peels the terminal punctuation
/// marks `. , ? !` off token ends into their own tokens. Idempotent on
/// text that is already tokenized.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    for raw in text.split_whitespace() {
        let word = raw.to_lowercase();
        let mut stack = Vec::new();
        let mut rest = word.as_str();
        while rest.len() > 1 {
            match rest.chars().last() {
                Some(c) if PUNCTUATION.contains(&c) => {
                    stack.push(c.to_string());
                    rest = &rest[..rest.len() - c.len_utf8()];
                }
                _ => break,
            }
        }
        if !rest.is_empty() {
            out.push(rest.to_string());
        }
        out.extend(stack.into_iter().rev());
    }
    out
}

#[derive(Deserialize)]
struct RawDataset {
    dialogs: Option<Vec<RawDialog>>,
}

#[derive(Deserialize)]
struct RawDialog {
    image_id: Option<String>,
    caption: Option<String>,
    dialog: Option<Vec<RawTurn>>,
}

#[derive(Deserialize)]
struct RawTurn {
    question: Option<String>,
    answer: Option<String>,
}

/// Parses a dataset file, tokenizing everything and computing stats from
/// the parsed content.
pub fn load_dataset(path: &Path, split: Split) -> Result<(Vec<Dialog>, DatasetStats)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::data(format!("cannot read {}: {e}", path.display())))?;
    let raw: RawDataset = serde_json::from_str(&text)
        .map_err(|e| Error::data(format!("{}: invalid JSON: {e}", path.display())))?;
    let raw_dialogs = raw
        .dialogs
        .ok_or_else(|| Error::data(format!("{}: missing top-level field `dialogs`", path.display())))?;
    if raw_dialogs.is_empty() {
        return Err(Error::data(format!("{}: empty dataset", path.display())));
    }

    let strict_answers = split != Split::Test;
    let mut dialogs = Vec::with_capacity(raw_dialogs.len());
    let mut seen_ids: HashMap<String, usize> = HashMap::new();
    for (idx, rec) in raw_dialogs.into_iter().enumerate() {
        let video_id = rec
            .image_id
            .ok_or_else(|| Error::data(format!("dialog record {idx}: missing field `image_id`")))?;
        let caption_text = rec
            .caption
            .ok_or_else(|| Error::data(format!("dialog record {idx}: missing field `caption`")))?;
        let raw_turns = rec
            .dialog
            .ok_or_else(|| Error::data(format!("dialog record {idx}: missing field `dialog`")))?;
        if let Some(first) = seen_ids.insert(video_id.clone(), idx) {
            return Err(Error::data(format!(
                "dialog record {idx}: duplicate video_id `{video_id}` (first at record {first})"
            )));
        }
        if strict_answers && raw_turns.is_empty() {
            return Err(Error::data(format!(
                "dialog record {idx}: empty `dialog` turn list"
            )));
        }
        let mut turns = Vec::with_capacity(raw_turns.len());
        for (t, turn) in raw_turns.into_iter().enumerate() {
            let question_text = turn.question.ok_or_else(|| {
                Error::data(format!("dialog record {idx} turn {t}: missing field `question`"))
            })?;
            let question = tokenize(&question_text);
            if question.is_empty() {
                return Err(Error::data(format!(
                    "dialog record {idx} turn {t}: empty question"
                )));
            }
            let answer = match turn.answer {
                Some(a) => tokenize(&a),
                None if strict_answers => {
                    return Err(Error::data(format!(
                        "dialog record {idx} turn {t}: missing field `answer`"
                    )))
                }
                None => Vec::new(),
            };
            if strict_answers && answer.is_empty() {
                return Err(Error::data(format!(
                    "dialog record {idx} turn {t}: empty answer"
                )));
            }
            turns.push(Turn { question, answer });
        }
        dialogs.push(Dialog {
            video_id,
            caption: tokenize(&caption_text),
            turns,
        });
    }

    let num_turns = dialogs.iter().map(|d| d.turns.len()).sum();
    let num_words = dialogs
        .iter()
        .map(|d| {
            d.caption.len()
                + d.turns
                    .iter()
                    .map(|t| t.question.len() + t.answer.len())
                    .sum::<usize>()
        })
        .sum();
    let stats = DatasetStats {
        num_dialogs: dialogs.len(),
        num_turns,
        num_words,
    };
    Ok((dialogs, stats))
}

/// Token/index bijection with four reserved slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    token_to_index: HashMap<String, usize>,
    index_to_token: Vec<String>,
    pub min_count: usize,
}

impl Vocabulary {
    pub const PAD: usize = 0;
    pub const UNK: usize = 1;
    pub const BOS: usize = 2;
    pub const EOS: usize = 3;
    pub const RESERVED: &'static [&'static str] = &["<pad>", "<unk>", "<bos>", "<eos>"];

    pub fn len(&self) -> usize {
        self.index_to_token.len()
    }

    pub fn is_empty(&self) -> bool {
        false // reserved tokens are always present
    }

    /// Index for a token, falling back to UNK.
    pub fn index(&self, token: &str) -> usize {
        self.token_to_index.get(token).copied().unwrap_or(Self::UNK)
    }

    /// Index only if the token is retained (reserved tokens included).
    pub fn lookup(&self, token: &str) -> Option<usize> {
        self.token_to_index.get(token).copied()
    }

    pub fn token(&self, index: usize) -> &str {
        &self.index_to_token[index]
    }

    pub fn encode(&self, tokens: &[String]) -> Vec<usize> {
        tokens.iter().map(|t| self.index(t)).collect()
    }

    pub fn decode(&self, indices: &[usize]) -> Vec<String> {
        indices.iter().map(|&i| self.index_to_token[i].clone()).collect()
    }

    /// One token per line, in index order (reserved slots included).
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut out = String::new();
        for tok in &self.index_to_token {
            out.push_str(tok);
            out.push('\n');
        }
        std::fs::write(path, out)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Vocabulary> {
        let text = std::fs::read_to_string(path)?;
        let tokens: Vec<String> = text.lines().map(|l| l.to_string()).collect();
        if tokens.len() < Self::RESERVED.len() {
            return Err(Error::data(format!(
                "{}: vocabulary file shorter than the reserved slots",
                path.display()
            )));
        }
        for (i, expect) in Self::RESERVED.iter().enumerate() {
            if tokens[i] != *expect {
                return Err(Error::data(format!(
                    "{}: reserved slot {i} is `{}`, expected `{expect}`",
                    path.display(),
                    tokens[i]
                )));
            }
        }
        let token_to_index = tokens
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        Ok(Vocabulary {
            token_to_index,
            index_to_token: tokens,
            min_count: 0,
        })
    }
}

/// Builds a vocabulary over all captions, questions, and answers.
/// Indices are assigned frequency-descending with lexicographic
/// tie-breaks, after the four reserved slots.
pub fn build_vocab(dialogs: &[Dialog], min_count: usize) -> Vocabulary {
    let mut counts: HashMap<&str, usize> = HashMap::new();
    let mut bump = |tokens: &[String]| {
        // borrow dance: count keys live as long as `dialogs`
    };
    bump(&[]);
    drop(bump);
    for d in dialogs {
        for tok in d
            .caption
            .iter()
            .chain(d.turns.iter().flat_map(|t| t.question.iter().chain(t.answer.iter())))
        {
            *counts.entry(tok.as_str()).or_insert(0) += 1;
        }
    }
    let mut retained: Vec<(&str, usize)> = counts
        .into_iter()
        .filter(|&(_, c)| c >= min_count.max(1))
        .collect();
    retained.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));

    let mut index_to_token: Vec<String> =
        Vocabulary::RESERVED.iter().map(|s| s.to_string()).collect();
    index_to_token.extend(retained.iter().map(|(t, _)| t.to_string()));
    let token_to_index = index_to_token
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i))
        .collect();
    Vocabulary {
        token_to_index,
        index_to_token,
        min_count,
    }
}

/// Yes/no polarity of a binary answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    Yes,
    No,
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Polarity::Yes => write!(f, "yes"),
            Polarity::No => write!(f, "no"),
        }
    }
}

/// Deterministic subset labels for one turn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TurnLabels {
    /// Answer leads with a yes/no token.
    pub binary: bool,
    pub polarity: Option<Polarity>,
    /// Question contains a closed-class pronoun.
    pub coreference: bool,
    /// Question contains an audio keyword.
    pub audio_related: bool,
    pub rule_version: &'static str,
}

/// Leading-token polarity of an answer, skipping punctuation tokens.
pub fn answer_polarity(answer: &[String]) -> Option<Polarity> {
    let first = answer
        .iter()
        .find(|t| !(t.len() == 1 && PUNCTUATION.contains(&t.chars().next().unwrap())))?;
    if YES_TOKENS.contains(&first.as_str()) {
        Some(Polarity::Yes)
    } else if NO_TOKENS.contains(&first.as_str()) {
        Some(Polarity::No)
    } else {
        None
    }
}

/// Labels one turn under the fixed keyword rules.
pub fn label_turn(turn: &Turn) -> TurnLabels {
    let polarity = answer_polarity(&turn.answer);
    let coreference = turn
        .question
        .iter()
        .any(|t| COREFERENCE_PRONOUNS.contains(&t.as_str()));
    let audio_related = turn
        .question
        .iter()
        .any(|t| AUDIO_KEYWORDS.contains(&t.as_str()));
    TurnLabels {
        binary: polarity.is_some(),
        polarity,
        coreference,
        audio_related,
        rule_version: SUBSET_RULE_VERSION,
    }
}

/// Labels every turn of every dialog, in dataset order.
pub fn label_subsets(dialogs: &[Dialog]) -> Vec<Vec<TurnLabels>> {
    dialogs
        .iter()
        .map(|d| d.turns.iter().map(label_turn).collect())
        .collect()
}

/// Aggregate subset counts over one split, as printed by ingestion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SubsetCounts {
    pub binary: usize,
    pub binary_yes: usize,
    pub binary_no: usize,
    pub non_binary: usize,
    pub coreference: usize,
    pub audio_related: usize,
}

pub fn subset_counts(labels: &[Vec<TurnLabels>]) -> SubsetCounts {
    let mut c = SubsetCounts::default();
    for l in labels.iter().flatten() {
        if l.binary {
            c.binary += 1;
            match l.polarity {
                Some(Polarity::Yes) => c.binary_yes += 1,
                Some(Polarity::No) => c.binary_no += 1,
                None => {}
            }
        } else {
            c.non_binary += 1;
        }
        if l.coreference {
            c.coreference += 1;
        }
        if l.audio_related {
            c.audio_related += 1;
        }
    }
    c
}
