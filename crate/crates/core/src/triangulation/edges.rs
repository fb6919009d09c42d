use serde::{Deserialize, Serialize};

use super::{Triangulation, TriangulationError};

/// The six edges of a tetrahedron as vertex pairs, in index order.
pub const EDGE_PAIRS: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn edge_index(u: usize, v: usize) -> usize {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    match (u, v) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => unreachable!("not an edge: {u}{v}"),
    }
}

/// Which of the three shape parameters `z`, `z' = 1/(1-z)`,
/// `z'' = (z-1)/z` sits on an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Slot {
    Z,
    ZPrime,
    ZDoublePrime,
}

impl Slot {
    /// Slot on edge `EDGE_PAIRS[edge]` of a tetrahedron whose labeling has the
    /// given orientation. Positively labeled: `z` on 01/23, `z'` on 02/13,
    /// `z''` on 03/12. A negatively labeled tetrahedron swaps `z'` and `z''`.
    pub fn for_edge(edge: usize, positive: bool) -> Slot {
        let base = match edge {
            0 | 5 => Slot::Z,
            1 | 4 => Slot::ZPrime,
            2 | 3 => Slot::ZDoublePrime,
            _ => panic!("edge index out of range: {edge}"),
        };
        match (base, positive) {
            (Slot::ZPrime, false) => Slot::ZDoublePrime,
            (Slot::ZDoublePrime, false) => Slot::ZPrime,
            (s, _) => s,
        }
    }

    /// The next slot in the cyclic order `z -> z' -> z'' -> z`.
    pub fn next(self) -> Slot {
        match self {
            Slot::Z => Slot::ZPrime,
            Slot::ZPrime => Slot::ZDoublePrime,
            Slot::ZDoublePrime => Slot::Z,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeMember {
    pub tet: usize,
    pub edge: (u8, u8),
    pub slot: Slot,
}

/// One edge of the triangulation: the orbit of tetrahedron edges identified
/// by the face gluings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeClass {
    pub members: Vec<EdgeMember>,
}

impl EdgeClass {
    pub fn valence(&self) -> usize {
        self.members.len()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Partition the `6n` tetrahedron edges into edge classes.
///
/// Classes are ordered by their first member in (tetrahedron, edge index)
/// order; members within a class follow the same order.
pub fn compute_edge_classes(tri: &Triangulation) -> Result<Vec<EdgeClass>, TriangulationError> {
    let orientation = tri.orientations().ok_or(TriangulationError::NonOrientable)?;
    let n = tri.len();
    let mut parent: Vec<usize> = (0..6 * n).collect();
    for (i, tet) in tri.tets().iter().enumerate() {
        for (j, g) in tet.gluings.iter().enumerate() {
            for (e, &(u, v)) in EDGE_PAIRS.iter().enumerate() {
                let (u, v) = (u as usize, v as usize);
                if u == j || v == j {
                    continue;
                }
                let here = 6 * i + e;
                let there = 6 * g.neighbor + edge_index(g.perm.apply(u), g.perm.apply(v));
                let (a, b) = (find(&mut parent, here), find(&mut parent, there));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }

    let mut class_of_root: Vec<Option<usize>> = vec![None; 6 * n];
    let mut classes: Vec<EdgeClass> = Vec::new();
    for idx in 0..6 * n {
        let root = find(&mut parent, idx);
        let c = *class_of_root[root].get_or_insert_with(|| {
            classes.push(EdgeClass { members: Vec::new() });
            classes.len() - 1
        });
        let (tet, e) = (idx / 6, idx % 6);
        classes[c].members.push(EdgeMember {
            tet,
            edge: EDGE_PAIRS[e],
            slot: Slot::for_edge(e, orientation[tet]),
        });
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::parse_triangulation;

    const M137: &str = include_str!("../../../../data/m137.tri");

    #[test]
    fn m137_has_four_edge_classes() {
        let tri = parse_triangulation(M137).unwrap();
        let classes = compute_edge_classes(&tri).unwrap();
        assert_eq!(classes.len(), 4);
        let valences: Vec<usize> = classes.iter().map(EdgeClass::valence).collect();
        // orbit sizes computed by hand from the gluing table
        assert_eq!(valences, vec![8, 5, 6, 5]);
        assert_eq!(valences.iter().sum::<usize>(), 24);
    }

    #[test]
    fn classes_partition_edges() {
        let tri = parse_triangulation(M137).unwrap();
        let classes = compute_edge_classes(&tri).unwrap();
        let mut seen = [[false; 6]; 4];
        for m in classes.iter().flat_map(|c| &c.members) {
            let e = edge_index(m.edge.0 as usize, m.edge.1 as usize);
            assert!(!seen[m.tet][e], "edge listed twice");
            seen[m.tet][e] = true;
        }
        assert!(seen.iter().flatten().all(|&s| s));
    }

    #[test]
    fn slot_convention() {
        assert_eq!(Slot::for_edge(0, true), Slot::Z);
        assert_eq!(Slot::for_edge(5, true), Slot::Z);
        assert_eq!(Slot::for_edge(1, true), Slot::ZPrime);
        assert_eq!(Slot::for_edge(4, true), Slot::ZPrime);
        assert_eq!(Slot::for_edge(2, true), Slot::ZDoublePrime);
        assert_eq!(Slot::for_edge(3, true), Slot::ZDoublePrime);
        assert_eq!(Slot::for_edge(1, false), Slot::ZDoublePrime);
        assert_eq!(Slot::for_edge(2, false), Slot::ZPrime);
        assert_eq!(Slot::Z.next().next().next(), Slot::Z);
    }

    proptest::proptest! {
        #[test]
        fn edge_classes_partition_random_tables(t in crate::triangulation::testing::triangulation(true)) {
            let classes = compute_edge_classes(&t).unwrap();
            let mut seen = vec![false; 6 * t.len()];
            for m in classes.iter().flat_map(|c| &c.members) {
                let e = EDGE_PAIRS.iter().position(|&p| p == m.edge).unwrap();
                proptest::prop_assert!(!seen[6 * m.tet + e], "{:?} appears twice", m);
                seen[6 * m.tet + e] = true;
            }
            proptest::prop_assert!(seen.iter().all(|&s| s));
        }
    }
}
