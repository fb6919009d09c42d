//! Fricke-Vogt reduction of `tr w` to a polynomial in `tr A`, `tr B`, `tr AB`.
//!
//! Uses `tr X = tr X⁻¹`, `tr XY = tr YX` and `tr XY = tr X tr Y − tr XY⁻¹`:
//!
//! * a syllable `x^e` with `e ≥ 2`: `tr(xᵉR) = tr x · tr(xᵉ⁻¹R) − tr(xᵉ⁻²R)`;
//! * a generator occurring with both signs, `w = x U x⁻¹ V`:
//!   `tr w = tr(xU) tr(x⁻¹V) − tr(x U V⁻¹ x)`;
//! * otherwise `w` is a power of `x y` with `x ∈ {a, a⁻¹}`, `y ∈ {b, b⁻¹}`,
//!   handled by the Chebyshev recursion `Tₖ = t Tₖ₋₁ − Tₖ₋₂`.

use std::collections::HashMap;

use super::poly::{OverflowError, TracePolynomial};
use super::word::{Letter, Word};

/// Memoizing reducer; the memo is keyed on the least rotation of the word
/// or of its inverse.
#[derive(Debug, Default, Clone)]
pub struct TraceReducer {
    memo: HashMap<Vec<Letter>, TracePolynomial>,
}

/// `T₀ = 2`, `T₁ = t`, `Tₖ = t Tₖ₋₁ − Tₖ₋₂`: the trace of the k-th power of
/// a matrix with trace `t`.
fn chebyshev(t: &TracePolynomial, k: usize) -> Result<TracePolynomial, OverflowError> {
    let mut prev = TracePolynomial::constant(2);
    if k == 0 {
        return Ok(prev);
    }
    let mut cur = t.clone();
    for _ in 1..k {
        let next = t.checked_mul(&cur)?.checked_sub(&prev)?;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

fn canonical_key(letters: &[Letter]) -> Vec<Letter> {
    let inv: Vec<Letter> = letters.iter().rev().map(|l| l.inverse()).collect();
    let n = letters.len();
    let mut best: Option<Vec<Letter>> = None;
    for src in [letters, &inv[..]] {
        for r in 0..n {
            let cand: Vec<Letter> = src[r..].iter().chain(&src[..r]).copied().collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

fn rotated(letters: &[Letter], start: usize) -> Vec<Letter> {
    letters[start..].iter().chain(&letters[..start]).copied().collect()
}

fn generator_trace(l: Letter) -> TracePolynomial {
    if l.is_a() {
        TracePolynomial::alpha()
    } else {
        TracePolynomial::beta()
    }
}

impl TraceReducer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn trace(&mut self, w: &Word) -> Result<TracePolynomial, OverflowError> {
        let w = w.cyclically_reduced();
        if w.is_empty() {
            return Ok(TracePolynomial::constant(2));
        }
        let key = canonical_key(w.letters());
        if let Some(p) = self.memo.get(&key) {
            return Ok(p.clone());
        }
        let p = self.reduce(&key)?;
        self.memo.insert(key, p.clone());
        Ok(p)
    }

    /// `letters` is cyclically reduced and nonempty.
    fn reduce(&mut self, letters: &[Letter]) -> Result<TracePolynomial, OverflowError> {
        let n = letters.len();
        let first_a = letters[0].is_a();
        if letters.iter().all(|l| l.is_a() == first_a) {
            return chebyshev(&generator_trace(letters[0]), n);
        }
        // rotate to a syllable boundary
        let start = (0..n)
            .find(|&i| letters[i].is_a() != letters[(i + n - 1) % n].is_a())
            .expect("two generators present");
        let w = rotated(letters, start);

        // a syllable of length ≥ 2
        if let Some(i) = (0..n).find(|&i| w[i] == w[(i + 1) % n]) {
            let w = rotated(&w, i);
            let x = generator_trace(w[0]);
            let once = self.trace(&Word::new(w[1..].iter().copied()))?;
            let twice = self.trace(&Word::new(w[2..].iter().copied()))?;
            return x.checked_mul(&once)?.checked_sub(&twice);
        }

        // a generator with both signs
        for i in 0..n {
            if let Some(j) = (i + 1..n).find(|&j| w[j] == w[i].inverse()) {
                let w = rotated(&w, i);
                let j = j - i;
                let x = Word::new(w[..j].iter().copied());
                let y = Word::new(w[j..].iter().copied());
                let tx = self.trace(&x)?;
                let ty = self.trace(&y)?;
                let txy = self.trace(&x.concat(&y.inverse()))?;
                return tx.checked_mul(&ty)?.checked_sub(&txy);
            }
        }

        // (x y)^k with fixed signs
        let (x, y) = if w[0].is_a() { (w[0], w[1]) } else { (w[1], w[0]) };
        let t = if x.is_inverse() == y.is_inverse() {
            TracePolynomial::gamma()
        } else {
            TracePolynomial::alpha()
                .checked_mul(&TracePolynomial::beta())?
                .checked_sub(&TracePolynomial::gamma())?
        };
        chebyshev(&t, n / 2)
    }
}

/// Reduce `tr w` with a fresh reducer.
pub fn trace_reduce(w: &Word) -> Result<TracePolynomial, OverflowError> {
    TraceReducer::new().trace(w)
}

/// `tr(ABA⁻¹B⁻¹) = α² + β² + γ² − αβγ − 2`.
pub fn commutator_trace() -> TracePolynomial {
    trace_reduce(&Word::new([Letter::A, Letter::B, Letter::AInv, Letter::BInv])).expect("small word")
}
