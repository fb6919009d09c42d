//! Matching a hand-labeled equation system against the built one.
//!
//! A published system picks, per tetrahedron, one of the three shape
//! parameters as "the" edge parameter. Two systems describe the same
//! deformation variety when, after rotating each tetrahedron's parameter
//! into the builder's slot, their exponent rows span the same rational space.

use super::{MonomialEquation, Slot};

/// Largest tetrahedron count for which the `3^n` slot search is attempted.
pub const MAX_ALIGN_TETS: usize = 12;

/// Rank over `Q` of the `[a | b]` exponent rows (signs ignored).
pub fn row_space_rank(eqs: &[&MonomialEquation]) -> usize {
    let mut rows: Vec<Vec<i128>> = eqs
        .iter()
        .map(|e| e.a.iter().chain(&e.b).map(|&x| x as i128).collect())
        .collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for (x, &pv) in row.iter_mut().zip(&pivot) {
                *x = *x * pivot[col] - f * pv;
            }
            let g = row.iter().fold(0i128, |g, &x| gcd(g, x));
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Find per-tetrahedron slots `s` such that `explicit`, rewritten with
/// `zᵢ = sᵢ(wᵢ)`, spans the same exponent space as `built`.
///
/// Returns the first match in lexicographic slot order (`Z` first), or
/// `None` if there is none or the triangulation is too large to search.
pub fn align_labeling(explicit: &[MonomialEquation], built: &[MonomialEquation]) -> Option<Vec<Slot>> {
    let n = built.first()?.len();
    if n == 0 || n > MAX_ALIGN_TETS || explicit.iter().any(|e| e.len() != n) {
        return None;
    }
    let built_refs: Vec<&MonomialEquation> = built.iter().collect();
    let built_rank = row_space_rank(&built_refs);
    let total = 3usize.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let slots: Vec<Slot> = (0..n)
            .map(|_| {
                let s = match c % 3 {
                    0 => Slot::Z,
                    1 => Slot::ZPrime,
                    _ => Slot::ZDoublePrime,
                };
                c /= 3;
                s
            })
            .collect();
        let rotated: Vec<MonomialEquation> = explicit.iter().map(|e| e.substitute(&slots)).collect();
        let rot_refs: Vec<&MonomialEquation> = rotated.iter().collect();
        if row_space_rank(&rot_refs) != built_rank {
            continue;
        }
        let both: Vec<&MonomialEquation> = rot_refs.iter().chain(&built_refs).copied().collect();
        if row_space_rank(&both) == built_rank {
            return Some(slots);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::parse_triangulation_file;

    #[test]
    fn rank_of_small_rows() {
        let e1 = MonomialEquation::new("x", vec![1, 0], vec![0, 0], super::super::Sign::Plus);
        let e2 = MonomialEquation::new("y", vec![2, 0], vec![0, 0], super::super::Sign::Plus);
        let e3 = MonomialEquation::new("z", vec![0, 1], vec![1, 0], super::super::Sign::Plus);
        assert_eq!(row_space_rank(&[&e1, &e2]), 1);
        assert_eq!(row_space_rank(&[&e1, &e2, &e3]), 2);
        assert_eq!(row_space_rank(&[]), 0);
    }

    #[test]
    fn m137_published_labels_differ_only_at_second_tet() {
        let file = parse_triangulation_file(include_str!("../../../../data/m137.tri")).unwrap();
        let built = file.triangulation.gluing_equations().unwrap();
        let slots = align_labeling(&file.equations, &built).unwrap();
        assert_eq!(slots, vec![Slot::Z, Slot::ZDoublePrime, Slot::Z, Slot::Z]);
        // with this rotation the systems agree equation by equation
        for (e, b) in file.equations.iter().zip(&built) {
            let r = e.substitute(&slots);
            assert_eq!((&r.a, &r.b, r.sign), (&b.a, &b.b, b.sign));
        }
    }
}
