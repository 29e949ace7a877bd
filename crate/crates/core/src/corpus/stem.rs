//! Porter suffix-stripping stemmer.
//!
//! Implements the Porter algorithm over ASCII lowercase tokens, with the
//! Porter2 refinement of step 1c (y becomes i only after a consonant).
//! Words of length <= 2 and non-ASCII input are returned unchanged. Within
//! each step the longest matching suffix is selected first; if its condition
//! fails no other rule in that step is tried, matching the reference
//! implementation's behavior.

use serde::{Deserialize, Serialize};

/// Which stemmer the preprocessing pipeline applies to tokens.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum StemmerKind {
    /// Porter suffix stripping.
    #[default]
    Porter,
    /// Leave tokens untouched.
    None,
}

impl StemmerKind {
    pub fn stem(self, word: &str) -> String {
        match self {
            StemmerKind::Porter => porter_stem(word),
            StemmerKind::None => word.to_string(),
        }
    }
}

/// Stem a single lowercase word with the Porter algorithm.
pub fn porter_stem(word: &str) -> String {
    if word.len() <= 2 || !word.is_ascii() {
        return word.to_string();
    }
    let mut w: Vec<u8> = word.as_bytes().to_vec();
    step_1a(&mut w);
    step_1b(&mut w);
    step_1c(&mut w);
    step_2(&mut w);
    step_3(&mut w);
    step_4(&mut w);
    step_5a(&mut w);
    step_5b(&mut w);
    String::from_utf8(w).expect("ascii in, ascii out")
}

fn is_consonant(w: &[u8], i: usize) -> bool {
    match w[i] {
        b'a' | b'e' | b'i' | b'o' | b'u' => false,
        b'y' => i == 0 || !is_consonant(w, i - 1),
        _ => true,
    }
}

/// The measure m of w[..len]: the number of vowel-run/consonant-run pairs.
fn measure(w: &[u8], len: usize) -> usize {
    let mut m = 0;
    let mut i = 0;
    // Skip the optional leading consonant run.
    while i < len && is_consonant(w, i) {
        i += 1;
    }
    loop {
        while i < len && !is_consonant(w, i) {
            i += 1;
        }
        if i == len {
            return m;
        }
        while i < len && is_consonant(w, i) {
            i += 1;
        }
        m += 1;
        if i == len {
            return m;
        }
    }
}

fn has_vowel(w: &[u8], len: usize) -> bool {
    (0..len).any(|i| !is_consonant(w, i))
}

/// *d: w[..len] ends with a doubled consonant.
fn ends_double_consonant(w: &[u8], len: usize) -> bool {
    len >= 2 && w[len - 1] == w[len - 2] && is_consonant(w, len - 1)
}

/// *o: w[..len] ends consonant-vowel-consonant where the final consonant
/// is not w, x or y.
fn ends_cvc(w: &[u8], len: usize) -> bool {
    if len < 3 {
        return false;
    }
    is_consonant(w, len - 3)
        && !is_consonant(w, len - 2)
        && is_consonant(w, len - 1)
        && !matches!(w[len - 1], b'w' | b'x' | b'y')
}

fn ends_with(w: &[u8], suffix: &[u8]) -> bool {
    w.len() >= suffix.len() && &w[w.len() - suffix.len()..] == suffix
}

fn set_suffix(w: &mut Vec<u8>, old_len: usize, replacement: &[u8]) {
    w.truncate(w.len() - old_len);
    w.extend_from_slice(replacement);
}

fn step_1a(w: &mut Vec<u8>) {
    if ends_with(w, b"sses") {
        w.truncate(w.len() - 2);
    } else if ends_with(w, b"ies") {
        w.truncate(w.len() - 2);
    } else if ends_with(w, b"ss") {
        // keep
    } else if ends_with(w, b"s") {
        w.truncate(w.len() - 1);
    }
}

fn step_1b(w: &mut Vec<u8>) {
    if ends_with(w, b"eed") {
        if measure(w, w.len() - 3) > 0 {
            w.truncate(w.len() - 1);
        }
        return;
    }
    let stripped = if ends_with(w, b"ed") && has_vowel(w, w.len() - 2) {
        w.truncate(w.len() - 2);
        true
    } else if ends_with(w, b"ing") && has_vowel(w, w.len() - 3) {
        w.truncate(w.len() - 3);
        true
    } else {
        false
    };
    if !stripped {
        return;
    }
    if ends_with(w, b"at") || ends_with(w, b"bl") || ends_with(w, b"iz") {
        w.push(b'e');
    } else if ends_double_consonant(w, w.len()) && !matches!(w[w.len() - 1], b'l' | b's' | b'z') {
        w.truncate(w.len() - 1);
    } else if measure(w, w.len()) == 1 && ends_cvc(w, w.len()) {
        w.push(b'e');
    }
}

// Replaces y with i only when the y follows a consonant, so "delay" and
// "enjoy" keep their y (the Porter2 refinement of the original rule).
fn step_1c(w: &mut Vec<u8>) {
    let len = w.len();
    if len >= 3
        && ends_with(w, b"y")
        && is_consonant(w, len - 2)
        && has_vowel(w, len - 1)
    {
        w[len - 1] = b'i';
    }
}

/// Apply the longest matching (suffix, replacement) pair whose stem
/// measure exceeds `min_measure`; once a suffix matches, no shorter
/// suffix is tried.
fn apply_rules(w: &mut Vec<u8>, rules: &[(&[u8], &[u8])], min_measure: usize) {
    for &(suffix, replacement) in rules {
        if ends_with(w, suffix) {
            if measure(w, w.len() - suffix.len()) > min_measure {
                set_suffix(w, suffix.len(), replacement);
            }
            return;
        }
    }
}

fn step_2(w: &mut Vec<u8>) {
    const RULES: &[(&[u8], &[u8])] = &[
        (b"ational", b"ate"),
        (b"ization", b"ize"),
        (b"iveness", b"ive"),
        (b"fulness", b"ful"),
        (b"ousness", b"ous"),
        (b"tional", b"tion"),
        (b"biliti", b"ble"),
        (b"ation", b"ate"),
        (b"aliti", b"al"),
        (b"iviti", b"ive"),
        (b"ousli", b"ous"),
        (b"entli", b"ent"),
        (b"alism", b"al"),
        (b"enci", b"ence"),
        (b"anci", b"ance"),
        (b"izer", b"ize"),
        (b"abli", b"able"),
        (b"alli", b"al"),
        (b"ator", b"ate"),
        (b"eli", b"e"),
    ];
    apply_rules(w, RULES, 0);
}

fn step_3(w: &mut Vec<u8>) {
    const RULES: &[(&[u8], &[u8])] = &[
        (b"icate", b"ic"),
        (b"ative", b""),
        (b"alize", b"al"),
        (b"iciti", b"ic"),
        (b"ical", b"ic"),
        (b"ness", b""),
        (b"ful", b""),
    ];
    apply_rules(w, RULES, 0);
}

fn step_4(w: &mut Vec<u8>) {
    const RULES: &[(&[u8], &[u8])] = &[
        (b"ement", b""),
        (b"ance", b""),
        (b"ence", b""),
        (b"able", b""),
        (b"ible", b""),
        (b"ment", b""),
        (b"ant", b""),
        (b"ent", b""),
        (b"ism", b""),
        (b"ate", b""),
        (b"iti", b""),
        (b"ous", b""),
        (b"ive", b""),
        (b"ize", b""),
        (b"al", b""),
        (b"er", b""),
        (b"ic", b""),
        (b"ou", b""),
    ];
    // "ion" additionally requires the stem to end in s or t.
    if ends_with(w, b"ion") {
        let stem_len = w.len() - 3;
        if measure(w, stem_len) > 1 && stem_len > 0 && matches!(w[stem_len - 1], b's' | b't') {
            w.truncate(stem_len);
        }
        return;
    }
    apply_rules(w, RULES, 1);
}

fn step_5a(w: &mut Vec<u8>) {
    if !ends_with(w, b"e") {
        return;
    }
    let stem_len = w.len() - 1;
    let m = measure(w, stem_len);
    if m > 1 || (m == 1 && !ends_cvc(w, stem_len)) {
        w.truncate(stem_len);
    }
}

fn step_5b(w: &mut Vec<u8>) {
    if measure(w, w.len()) > 1 && ends_double_consonant(w, w.len()) && w[w.len() - 1] == b'l' {
        w.truncate(w.len() - 1);
    }
}
