use std::fmt;

use serde::{Deserialize, Serialize};

use super::{compute_edge_classes, EdgeClass, Slot, Triangulation, TriangulationError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn flip_if(self, cond: bool) -> Sign {
        if cond {
            self.flip()
        } else {
            self
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// `∏ zᵢ^aᵢ (1 − zᵢ)^bᵢ = sign`.
///
/// Also used for peripheral holonomies, where it denotes the function
/// `h = sign · ∏ zᵢ^aᵢ (1 − zᵢ)^bᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialEquation {
    pub label: String,
    pub a: Vec<i32>,
    pub b: Vec<i32>,
    pub sign: Sign,
}

impl MonomialEquation {
    pub fn new(label: impl Into<String>, a: Vec<i32>, b: Vec<i32>, sign: Sign) -> Self {
        assert_eq!(a.len(), b.len(), "exponent vectors differ in length");
        MonomialEquation {
            label: label.into(),
            a,
            b,
            sign,
        }
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// Sum of absolute exponents: the total degree of the cleared form.
    pub fn degree(&self) -> u32 {
        self.a.iter().chain(&self.b).map(|e| e.unsigned_abs()).sum()
    }

    /// Rewrite an equation in variables `zᵢ` as one in variables `wᵢ`, where
    /// `zᵢ` is the `slots[i]` parameter of `wᵢ` (`z = w`, `z = 1/(1-w)` or
    /// `z = (w-1)/w`).
    pub fn substitute(&self, slots: &[Slot]) -> MonomialEquation {
        assert_eq!(slots.len(), self.len());
        let mut out = self.clone();
        for (i, slot) in slots.iter().enumerate() {
            let (a, b) = (self.a[i], self.b[i]);
            match slot {
                Slot::Z => {}
                // z = (1-w)^-1, 1-z = -w (1-w)^-1
                Slot::ZPrime => {
                    out.a[i] = b;
                    out.b[i] = -a - b;
                    out.sign = out.sign.flip_if(b.rem_euclid(2) == 1);
                }
                // z = -(1-w) w^-1, 1-z = w^-1
                Slot::ZDoublePrime => {
                    out.a[i] = -a - b;
                    out.b[i] = a;
                    out.sign = out.sign.flip_if(a.rem_euclid(2) == 1);
                }
            }
        }
        out
    }

    /// The equation with both sides inverted.
    pub fn inverted(&self) -> MonomialEquation {
        MonomialEquation {
            label: self.label.clone(),
            a: self.a.iter().map(|e| -e).collect(),
            b: self.b.iter().map(|e| -e).collect(),
            sign: self.sign,
        }
    }
}

/// One gluing equation per edge class.
///
/// Each member contributes its slot: `z` adds 1 to `a`, `z' = (1-z)^-1` adds
/// -1 to `b`, and `z'' = -(1-z) z^-1` adds (-1, +1) to (`a`, `b`) and flips
/// the sign. Equations are labeled `edge0`, `edge1`, ...
pub fn build_gluing_equations(
    tri: &Triangulation,
    classes: &[EdgeClass],
) -> Vec<MonomialEquation> {
    let n = tri.len();
    classes
        .iter()
        .enumerate()
        .map(|(c, class)| {
            let mut eq = MonomialEquation::new(format!("edge{c}"), vec![0; n], vec![0; n], Sign::Plus);
            for m in &class.members {
                match m.slot {
                    Slot::Z => eq.a[m.tet] += 1,
                    Slot::ZPrime => eq.b[m.tet] -= 1,
                    Slot::ZDoublePrime => {
                        eq.a[m.tet] -= 1;
                        eq.b[m.tet] += 1;
                        eq.sign = eq.sign.flip();
                    }
                }
            }
            eq
        })
        .collect()
}

impl Triangulation {
    /// Edge classes and gluing equations in one go.
    pub fn gluing_equations(&self) -> Result<Vec<MonomialEquation>, TriangulationError> {
        let classes = compute_edge_classes(self)?;
        Ok(build_gluing_equations(self, &classes))
    }
}
