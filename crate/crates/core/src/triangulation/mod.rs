//! Ideal triangulations given as face-gluing tables.
//!
//! Tetrahedra and their vertices are numbered from 0. Face `j` of a
//! tetrahedron is the face opposite vertex `j`. A gluing entry `k:σ` in row
//! `i`, column `j` says face `j` of tetrahedron `i` is glued to face `σ(j)` of
//! tetrahedron `k`, with vertex `l` of `i` going to vertex `σ(l)` of `k`.

mod edges;
mod equations;
mod labeling;
mod parse;
#[cfg(test)]
pub(crate) mod testing;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use edges::{compute_edge_classes, EdgeClass, EdgeMember, Slot, EDGE_PAIRS};
pub use equations::{build_gluing_equations, MonomialEquation, Sign};
pub use labeling::{align_labeling, row_space_rank};
pub use parse::{parse_triangulation, parse_triangulation_file, ParseError, ParseErrorKind, TriangulationFile};

/// A permutation of `{0,1,2,3}` stored as its image string `σ(0)σ(1)σ(2)σ(3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Perm([u8; 4]);

impl Perm {
    pub const IDENTITY: Perm = Perm([0, 1, 2, 3]);

    pub fn new(images: [u8; 4]) -> Option<Perm> {
        let mut seen = [false; 4];
        for &v in &images {
            if v > 3 || seen[v as usize] {
                return None;
            }
            seen[v as usize] = true;
        }
        Some(Perm(images))
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.0[v] as usize
    }

    pub fn images(&self) -> [u8; 4] {
        self.0
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = [0u8; 4];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Perm(inv)
    }

    /// Odd permutations are the orientation-reversing relabelings; a face
    /// pairing between consistently oriented tetrahedra is always odd.
    pub fn is_odd(&self) -> bool {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 1
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

impl FromStr for Perm {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        if bytes.len() != 4 {
            return Err(());
        }
        let mut images = [0u8; 4];
        for (slot, &c) in images.iter_mut().zip(bytes) {
            if !c.is_ascii_digit() {
                return Err(());
            }
            *slot = c - b'0';
        }
        Perm::new(images).ok_or(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gluing {
    pub neighbor: usize,
    pub perm: Perm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tetrahedron {
    pub gluings: [Gluing; 4],
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangulationError {
    #[error("triangulation has no tetrahedra")]
    Empty,
    #[error("tetrahedron {tet} face {face} points at tetrahedron {neighbor}, but only {count} exist")]
    DanglingIndex {
        tet: usize,
        face: usize,
        neighbor: usize,
        count: usize,
    },
    #[error("face {face} of tetrahedron {tet} is glued to itself")]
    FaceGluedToItself { tet: usize, face: usize },
    #[error(
        "gluing is not involutive: tetrahedron {tet} face {face} -> tetrahedron {neighbor} face {neighbor_face}, \
         but the reverse entry is {found}"
    )]
    NonInvolutive {
        tet: usize,
        face: usize,
        neighbor: usize,
        neighbor_face: usize,
        found: String,
    },
    #[error("triangulation is not orientable")]
    NonOrientable,
}

/// An ideal triangulation: a named list of tetrahedra with involutive face
/// gluings. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangulation {
    name: String,
    tets: Vec<Tetrahedron>,
}

impl Triangulation {
    pub fn new(name: impl Into<String>, tets: Vec<Tetrahedron>) -> Result<Self, TriangulationError> {
        let tri = Triangulation {
            name: name.into(),
            tets,
        };
        tri.validate()?;
        Ok(tri)
    }

    fn validate(&self) -> Result<(), TriangulationError> {
        let n = self.tets.len();
        if n == 0 {
            return Err(TriangulationError::Empty);
        }
        for (i, tet) in self.tets.iter().enumerate() {
            for (j, g) in tet.gluings.iter().enumerate() {
                if g.neighbor >= n {
                    return Err(TriangulationError::DanglingIndex {
                        tet: i,
                        face: j,
                        neighbor: g.neighbor,
                        count: n,
                    });
                }
            }
        }
        for (i, tet) in self.tets.iter().enumerate() {
            for (j, g) in tet.gluings.iter().enumerate() {
                let target_face = g.perm.apply(j);
                if g.neighbor == i && target_face == j {
                    return Err(TriangulationError::FaceGluedToItself { tet: i, face: j });
                }
                let back = self.tets[g.neighbor].gluings[target_face];
                if back.neighbor != i || back.perm != g.perm.inverse() {
                    return Err(TriangulationError::NonInvolutive {
                        tet: i,
                        face: j,
                        neighbor: g.neighbor,
                        neighbor_face: target_face,
                        found: format!("{}:({})", back.neighbor, back.perm),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn tets(&self) -> &[Tetrahedron] {
        &self.tets
    }

    pub fn len(&self) -> usize {
        self.tets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tets.is_empty()
    }

    /// Orientation of each tetrahedron's vertex labeling relative to
    /// tetrahedron 0 (`true` = same as tetrahedron 0), or `None` when the
    /// manifold is non-orientable.
    pub fn orientations(&self) -> Option<Vec<bool>> {
        let n = self.tets.len();
        let mut orient: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if orient[start].is_some() {
                continue;
            }
            orient[start] = Some(true);
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                let oi = orient[i].expect("visited");
                for g in &self.tets[i].gluings {
                    // An odd gluing preserves the ambient orientation.
                    let ok = if g.perm.is_odd() { oi } else { !oi };
                    match orient[g.neighbor] {
                        None => {
                            orient[g.neighbor] = Some(ok);
                            stack.push(g.neighbor);
                        }
                        Some(o) if o != ok => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(orient.into_iter().map(|o| o.expect("all visited")).collect())
    }

    /// Relabel tetrahedra: tetrahedron `i` becomes tetrahedron `map[i]`.
    /// `map` must be a permutation of `0..len`.
    pub fn relabeled(&self, map: &[usize]) -> Result<Triangulation, TriangulationError> {
        assert_eq!(map.len(), self.tets.len(), "relabeling map has wrong length");
        let mut tets = self.tets.clone();
        for (i, tet) in self.tets.iter().enumerate() {
            let mut gluings = tet.gluings;
            for g in gluings.iter_mut() {
                g.neighbor = map[g.neighbor];
            }
            tets[map[i]] = Tetrahedron { gluings };
        }
        Triangulation::new(self.name.clone(), tets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perm_parse_and_inverse() {
        let p: Perm = "3201".parse().unwrap();
        assert_eq!(p.apply(0), 3);
        assert_eq!(p.inverse().to_string(), "2310");
        assert_eq!(p.inverse().inverse(), p);
        assert!("0012".parse::<Perm>().is_err());
        assert!("01234".parse::<Perm>().is_err());
        assert!("0a12".parse::<Perm>().is_err());
        assert!("0142".parse::<Perm>().is_err());
    }

    #[test]
    fn parity() {
        assert!(!Perm::IDENTITY.is_odd());
        assert!("0132".parse::<Perm>().unwrap().is_odd());
        assert!("1230".parse::<Perm>().unwrap().is_odd());
        assert!(!"1032".parse::<Perm>().unwrap().is_odd());
    }

    fn g(k: usize, p: &str) -> Gluing {
        Gluing {
            neighbor: k,
            perm: p.parse().unwrap(),
        }
    }

    #[test]
    fn rejects_self_gluing_and_dangling() {
        let tet = Tetrahedron {
            gluings: [g(0, "0123"), g(0, "0123"), g(0, "0123"), g(0, "0123")],
        };
        assert_eq!(
            Triangulation::new("x", vec![tet]),
            Err(TriangulationError::FaceGluedToItself { tet: 0, face: 0 })
        );
        let tet = Tetrahedron {
            gluings: [g(1, "0123"), g(0, "0123"), g(0, "0123"), g(0, "0123")],
        };
        assert!(matches!(
            Triangulation::new("x", vec![tet]),
            Err(TriangulationError::DanglingIndex { neighbor: 1, .. })
        ));
    }

    #[test]
    fn one_tet_closed_gluing_is_valid() {
        // faces 0<->1 via (01), faces 2<->3 via (23)
        let tet = Tetrahedron {
            gluings: [g(0, "1023"), g(0, "1023"), g(0, "0132"), g(0, "0132")],
        };
        let tri = Triangulation::new("pairs", vec![tet]).unwrap();
        assert_eq!(tri.len(), 1);
        // both pairings are transpositions, hence odd
        assert_eq!(tri.orientations(), Some(vec![true]));
        let tet = Tetrahedron {
            gluings: [g(0, "1032"), g(0, "1032"), g(0, "0132"), g(0, "0132")],
        };
        let tri = Triangulation::new("twisted", vec![tet]).unwrap();
        assert!(tri.orientations().is_none());
    }

    proptest::proptest! {
        #[test]
        fn generated_gluings_are_involutive(t in testing::triangulation(false)) {
            for (i, tet) in t.tets().iter().enumerate() {
                for (j, g) in tet.gluings.iter().enumerate() {
                    let back = t.tets()[g.neighbor].gluings[g.perm.apply(j)];
                    proptest::prop_assert_eq!(back.neighbor, i);
                    proptest::prop_assert_eq!(back.perm.apply(g.perm.apply(j)), j);
                    let mut seen = g.perm.images();
                    seen.sort();
                    proptest::prop_assert_eq!(seen, [0, 1, 2, 3]);
                }
            }
        }

        #[test]
        fn odd_gluings_are_orientable(t in testing::triangulation(true)) {
            proptest::prop_assert!(t.orientations().is_some());
        }
    }
}
