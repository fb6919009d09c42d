use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

use super::Mat2;

/// A generator or its inverse. Written `a`, `A` (= a⁻¹), `b`, `B` (= b⁻¹).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    AInv,
    B,
    BInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::AInv, Letter::B, Letter::BInv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }

    pub fn is_a(self) -> bool {
        matches!(self, Letter::A | Letter::AInv)
    }

    pub fn is_inverse(self) -> bool {
        matches!(self, Letter::AInv | Letter::BInv)
    }

    fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::AInv => 'A',
            Letter::B => 'b',
            Letter::BInv => 'B',
        }
    }
}

/// A freely reduced word in `a, b`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unexpected character {found:?} at offset {offset}; words use a, A, b, B")]
pub struct ParseWordError {
    pub offset: usize,
    pub found: char,
}

impl Word {
    /// Freely reduces `letters`.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn identity() -> Word {
        Word::default()
    }

    pub fn letter(l: Letter) -> Word {
        Word { letters: vec![l] }
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

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::new(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn pow(&self, k: i32) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Word::identity(), |acc, _| acc.concat(&base))
    }

    /// Strip `x … x⁻¹` from the ends; the result is conjugate to `self`.
    pub fn cyclically_reduced(&self) -> Word {
        let l = &self.letters;
        let mut i = 0;
        let mut j = l.len();
        while j - i >= 2 && l[i] == l[j - 1].inverse() {
            i += 1;
            j -= 1;
        }
        Word {
            letters: l[i..j].to_vec(),
        }
    }

    /// All freely reduced words of length exactly `n`, in lexicographic order.
    pub fn all_of_length(n: usize) -> Vec<Word> {
        let mut words = vec![Word::identity()];
        for _ in 0..n {
            let mut next = Vec::with_capacity(words.len() * 3);
            for w in &words {
                for l in Letter::ALL {
                    if w.letters.last() != Some(&l.inverse()) {
                        let mut letters = w.letters.clone();
                        letters.push(l);
                        next.push(Word { letters });
                    }
                }
            }
            words = next;
        }
        words
    }

    /// The image of the word with `a ↦ A`, `b ↦ B`.
    pub fn eval(&self, a: &Mat2, b: &Mat2) -> Mat2 {
        let (ai, bi) = (a.inverse(), b.inverse());
        self.letters.iter().fold(Mat2::IDENTITY, |acc, l| {
            acc * match l {
                Letter::A => *a,
                Letter::AInv => ai,
                Letter::B => *b,
                Letter::BInv => bi,
            }
        })
    }
}

/// `tr` of the word's image under `a ↦ A`, `b ↦ B`.
pub fn eval_word(w: &Word, a: &Mat2, b: &Mat2) -> Complex64 {
    w.eval(a, b).trace()
}

impl FromStr for Word {
    type Err = ParseWordError;

    /// Letters `a A b B`; whitespace is ignored and `1` alone is the identity.
    fn from_str(s: &str) -> Result<Word, ParseWordError> {
        if s.trim() == "1" {
            return Ok(Word::identity());
        }
        let mut letters = Vec::new();
        for (offset, ch) in s.char_indices() {
            letters.push(match ch {
                'a' => Letter::A,
                'A' => Letter::AInv,
                'b' => Letter::B,
                'B' => Letter::BInv,
                c if c.is_whitespace() => continue,
                found => return Err(ParseWordError { offset, found }),
            });
        }
        Ok(Word::new(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        self.letters.iter().try_for_each(|l| write!(f, "{}", l.as_char()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_reduces_and_round_trips() {
        let w: Word = "abBA b".parse().unwrap();
        assert_eq!(w.to_string(), "b");
        assert_eq!("aA".parse::<Word>().unwrap(), Word::identity());
        assert_eq!("1".parse::<Word>().unwrap().to_string(), "1");
        let w: Word = "abAB".parse().unwrap();
        assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
        assert_eq!("abx".parse::<Word>(), Err(ParseWordError { offset: 2, found: 'x' }));
    }

    #[test]
    fn inverse_and_cyclic_reduction() {
        let w: Word = "abAB".parse().unwrap();
        assert_eq!(w.inverse().to_string(), "baBA");
        assert!(w.concat(&w.inverse()).is_empty());
        let conj: Word = "bab AB".parse().unwrap();
        assert_eq!(conj.cyclically_reduced().to_string(), "b");
        assert_eq!("a".parse::<Word>().unwrap().cyclically_reduced().to_string(), "a");
    }

    #[test]
    fn reduced_word_counts() {
        // 4 · 3^(n−1) freely reduced words of length n
        assert_eq!(Word::all_of_length(0).len(), 1);
        for n in 1..6 {
            assert_eq!(Word::all_of_length(n).len(), 4 * 3usize.pow(n as u32 - 1));
        }
    }

    #[test]
    fn identity_trace() {
        let id = Mat2::IDENTITY;
        assert_eq!(eval_word(&"a".parse().unwrap(), &id, &id), Complex64::new(2.0, 0.0));
    }

    proptest::proptest! {
        #[test]
        fn stored_words_are_freely_reduced(v in proptest::collection::vec(0usize..4, 0..30)) {
            let w = Word::new(v.iter().map(|&i| Letter::ALL[i]));
            for pair in w.letters().windows(2) {
                proptest::prop_assert_ne!(pair[1], pair[0].inverse());
            }
            proptest::prop_assert_eq!(w.to_string().parse::<Word>().unwrap(), w.clone());
            let mut doubled = w.letters().to_vec();
            doubled.extend(w.inverse().letters());
            proptest::prop_assert!(Word::new(doubled).is_empty());
        }
    }
}
