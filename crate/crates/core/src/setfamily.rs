//! Families of vertex subsets encoded as `u64` bit masks (bit `v-1` is vertex `v`).
//!
//! Two dual enumeration problems show up repeatedly: the minimal sets not
//! covered by a list of facets (minimal nonfaces) and the maximal sets that
//! avoid a list of forbidden sets (facets of a Stanley-Reisner complex). Both
//! are solved level-wise over the face poset when it is small, and by Berge's
//! minimal-transversal algorithm otherwise.

use std::collections::HashSet;

pub type Mask = u64;

#[inline]
pub fn popcount(m: Mask) -> u32 {
    m.count_ones()
}

#[inline]
pub fn full_mask(n: usize) -> Mask {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub fn is_subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

pub fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

/// All submasks of `m`, including 0 and `m`.
pub fn submasks(m: Mask) -> impl Iterator<Item = Mask> {
    let mut next = Some(m);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & m) };
        Some(cur)
    })
}

/// The `k`-element submasks of `m`.
pub fn submasks_of_size(m: Mask, k: usize) -> Vec<Mask> {
    let elems: Vec<usize> = bits(m).collect();
    let mut out = Vec::new();
    if k > elems.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| 1 << elems[i]).sum());
        let Some(j) = (0..k).rev().find(|&j| idx[j] < elems.len() - k + j) else {
            return out;
        };
        idx[j] += 1;
        for t in j + 1..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

/// Keep only inclusion-minimal members; output sorted by (size, mask).
pub fn minimalize(mut sets: Vec<Mask>) -> Vec<Mask> {
    sets.sort_by_key(|&s| (popcount(s), s));
    sets.dedup();
    let mut kept: Vec<Mask> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|&k| is_subset(k, s)) {
            kept.push(s);
        }
    }
    kept
}

/// Keep only inclusion-maximal members; output sorted by mask.
pub fn maximalize(mut sets: Vec<Mask>) -> Vec<Mask> {
    sets.sort_by_key(|&s| (std::cmp::Reverse(popcount(s)), s));
    sets.dedup();
    let mut kept: Vec<Mask> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|&k| is_subset(s, k)) {
            kept.push(s);
        }
    }
    kept.sort_unstable();
    kept
}

/// Minimal transversals (hitting sets) of a family, by Berge's algorithm.
/// The empty family has the single transversal ∅; a family containing ∅ has none.
pub fn minimal_transversals(family: &[Mask]) -> Vec<Mask> {
    let mut trans: Vec<Mask> = vec![0];
    let mut family: Vec<Mask> = minimalize(family.to_vec());
    family.sort_by_key(|&s| popcount(s));
    for &edge in &family {
        let mut next = Vec::with_capacity(trans.len());
        for &t in &trans {
            if t & edge != 0 {
                next.push(t);
            } else {
                for v in bits(edge) {
                    next.push(t | (1 << v));
                }
            }
        }
        trans = minimalize(next);
        if trans.is_empty() {
            break;
        }
    }
    trans
}

/// Every face of the complex generated by `facets`, or `None` if that would
/// exceed `limit` faces.
pub fn down_closure(facets: &[Mask], limit: usize) -> Option<HashSet<Mask>> {
    let estimate: usize = facets
        .iter()
        .map(|&f| 1usize.checked_shl(popcount(f)).unwrap_or(usize::MAX))
        .fold(0usize, |a, b| a.saturating_add(b));
    if estimate > limit {
        return None;
    }
    let mut faces = HashSet::with_capacity(estimate);
    for &f in facets {
        faces.extend(submasks(f));
    }
    Some(faces)
}

/// Minimal subsets of {1..n} not contained in any facet.
pub fn minimal_uncovered(n: usize, facets: &[Mask], limit: usize) -> Vec<Mask> {
    if facets.is_empty() {
        return vec![0];
    }
    match down_closure(facets, limit) {
        Some(faces) => {
            let mut out = Vec::new();
            for &f in &faces {
                let start = if f == 0 { 0 } else { 64 - f.leading_zeros() as usize };
                for v in start..n {
                    let s = f | (1 << v);
                    if faces.contains(&s) {
                        continue;
                    }
                    if bits(f).all(|u| faces.contains(&(s & !(1 << u)))) {
                        out.push(s);
                    }
                }
            }
            out.sort_by_key(|&s| (popcount(s), s));
            out
        }
        None => {
            let all = full_mask(n);
            let complements: Vec<Mask> = facets.iter().map(|&f| all & !f).collect();
            minimal_transversals(&complements)
        }
    }
}

/// Maximal subsets of {1..n} containing no member of `forbidden`.
pub fn maximal_avoiding(n: usize, forbidden: &[Mask], limit: usize) -> Vec<Mask> {
    let forbidden = minimalize(forbidden.to_vec());
    if forbidden.first() == Some(&0) {
        return vec![];
    }
    if let Some(faces) = faces_avoiding(n, &forbidden, limit) {
        let by_vertex = forbidden_by_vertex(n, &forbidden);
        let blocked = |f: Mask, v: usize| {
            let s = f | (1 << v);
            by_vertex[v].iter().any(|&g| is_subset(g, s))
        };
        let mut out: Vec<Mask> = faces
            .into_iter()
            .filter(|&f| (0..n).filter(|v| f & (1 << v) == 0).all(|v| blocked(f, v)))
            .collect();
        out.sort_unstable();
        return out;
    }
    let all = full_mask(n);
    let mut out: Vec<Mask> = minimal_transversals(&forbidden)
        .into_iter()
        .map(|t| all & !t)
        .collect();
    out.sort_unstable();
    out
}

fn forbidden_by_vertex(n: usize, forbidden: &[Mask]) -> Vec<Vec<Mask>> {
    let mut by_vertex = vec![Vec::new(); n];
    for &g in forbidden {
        for v in bits(g) {
            by_vertex[v].push(g);
        }
    }
    by_vertex
}

/// Level-wise enumeration of all sets avoiding `forbidden` (which must be
/// minimalized and not contain ∅); `None` past `limit`.
fn faces_avoiding(n: usize, forbidden: &[Mask], limit: usize) -> Option<Vec<Mask>> {
    let by_vertex = forbidden_by_vertex(n, forbidden);
    let mut all = vec![0u64];
    let mut level = vec![0u64];
    while !level.is_empty() {
        let mut next = Vec::new();
        for &f in &level {
            let start = if f == 0 { 0 } else { 64 - f.leading_zeros() as usize };
            for v in start..n {
                let s = f | (1 << v);
                if by_vertex[v].iter().all(|&g| !is_subset(g, s)) {
                    next.push(s);
                }
            }
        }
        if all.len() + next.len() > limit {
            return None;
        }
        all.extend_from_slice(&next);
        level = next;
    }
    Some(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_minimal_uncovered(n: usize, facets: &[Mask]) -> Vec<Mask> {
        let covered = |s: Mask| facets.iter().any(|&f| is_subset(s, f));
        let mut out: Vec<Mask> = (0..1u64 << n)
            .filter(|&s| !covered(s) && bits(s).all(|u| covered(s & !(1 << u))))
            .collect();
        out.sort_by_key(|&s| (popcount(s), s));
        out
    }

    fn brute_maximal_avoiding(n: usize, forbidden: &[Mask]) -> Vec<Mask> {
        let ok = |s: Mask| forbidden.iter().all(|&g| !is_subset(g, s));
        let mut out: Vec<Mask> = (0..1u64 << n)
            .filter(|&s| ok(s) && (0..n).all(|v| s & (1 << v) != 0 || !ok(s | (1 << v))))
            .collect();
        out.sort_unstable();
        out
    }

    #[test]
    fn submask_enumeration() {
        let subs: Vec<Mask> = submasks(0b101).collect();
        assert_eq!(subs, vec![0b101, 0b100, 0b001, 0]);
        assert_eq!(submasks(0).count(), 1);
    }

    #[test]
    fn transversals_small() {
        assert_eq!(minimal_transversals(&[]), vec![0]);
        assert_eq!(minimal_transversals(&[0]), Vec::<Mask>::new());
        let t = minimal_transversals(&[0b011, 0b110]);
        assert_eq!(t, vec![0b010, 0b101]);
    }

    #[test]
    fn both_routes_agree_with_brute_force() {
        // every antichain-ish family on 4 vertices built from a seed pattern
        let n = 4;
        for seed in 0u64..400 {
            let mut fam = Vec::new();
            let mut x = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
            for _ in 0..(seed % 5) {
                x ^= x << 13;
                x ^= x >> 7;
                x ^= x << 17;
                fam.push(x & full_mask(n));
            }
            let facets = maximalize(fam.clone());
            let expect = brute_minimal_uncovered(n, &facets);
            assert_eq!(minimal_uncovered(n, &facets, 1 << 20), expect);
            assert_eq!(minimal_uncovered(n, &facets, 0), expect, "berge path");

            let forb = minimalize(fam);
            let expect = brute_maximal_avoiding(n, &forb);
            assert_eq!(maximal_avoiding(n, &forb, 1 << 20), expect);
            assert_eq!(maximal_avoiding(n, &forb, 0), expect, "berge path");
        }
    }
}
