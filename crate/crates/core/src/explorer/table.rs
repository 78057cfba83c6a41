use serde::Serialize;

use crate::error::{Error, Result};
use crate::explorer::ball::SemigroupBall;
use crate::semantics::CanonicalTransducer;

/// Orders up to which associativity is checked on every triple.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 64;

/// Isomorphism invariants of one element: idempotency, torsion, and how often it appears
/// as a one-sided absorbing product or as a square.
type Signature = (bool, (usize, usize), usize, usize, usize);

/// Cayley table of a closed ball; `table[i][j]` is the index of `e_i e_j` (`e_j` acts first).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicationTable {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

pub fn multiplication_table(ball: &SemigroupBall) -> Result<MultiplicationTable> {
    if !ball.closed {
        return Err(Error::NotClosed);
    }
    let table = ball
        .elements
        .iter()
        .map(|x| {
            ball.elements
                .iter()
                .map(|y| {
                    ball.position(&CanonicalTransducer::compose(&x.key, &y.key))
                        .ok_or(Error::NotClosed)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MultiplicationTable {
        order: ball.len(),
        table,
    })
}

impl MultiplicationTable {
    pub fn product(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    /// `None` when the order is above [`ASSOCIATIVITY_CHECK_LIMIT`].
    pub fn is_associative(&self) -> Option<bool> {
        if self.order > ASSOCIATIVITY_CHECK_LIMIT {
            return None;
        }
        let t = &self.table;
        Some((0..self.order).all(|i| (0..self.order).all(|j| (0..self.order).all(|k| t[t[i][j]][k] == t[i][t[j][k]]))))
    }

    pub fn zero(&self) -> Option<usize> {
        (0..self.order).find(|&z| (0..self.order).all(|x| self.table[z][x] == z && self.table[x][z] == z))
    }

    pub fn identity(&self) -> Option<usize> {
        (0..self.order).find(|&e| (0..self.order).all(|x| self.table[e][x] == x && self.table[x][e] == x))
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.order).filter(|&i| self.table[i][i] == i).collect()
    }

    /// Index and period of the cyclic subsemigroup generated by `i`.
    fn torsion(&self, i: usize) -> (usize, usize) {
        let mut seen = vec![usize::MAX; self.order];
        let mut x = i;
        let mut k = 1;
        loop {
            if seen[x] != usize::MAX {
                return (seen[x], k - seen[x]);
            }
            seen[x] = k;
            x = self.table[x][i];
            k += 1;
        }
    }

    fn signature(&self, i: usize) -> Signature {
        let n = self.order;
        (
            self.table[i][i] == i,
            self.torsion(i),
            (0..n).filter(|&x| self.table[i][x] == i).count(),
            (0..n).filter(|&x| self.table[x][i] == i).count(),
            (0..n).filter(|&x| self.table[x][x] == i).count(),
        )
    }

    /// A bijection `f` with `f(x y) = f(x) f(y)`, if one exists.
    pub fn isomorphism_to(&self, other: &MultiplicationTable) -> Option<Vec<usize>> {
        if self.order != other.order {
            return None;
        }
        let sig_a: Vec<_> = (0..self.order).map(|i| self.signature(i)).collect();
        let sig_b: Vec<_> = (0..other.order).map(|i| other.signature(i)).collect();
        let mut a_sorted = sig_a.clone();
        let mut b_sorted = sig_b.clone();
        a_sorted.sort();
        b_sorted.sort();
        if a_sorted != b_sorted {
            return None;
        }
        let mut map = vec![None; self.order];
        let mut used = vec![false; self.order];
        self.extend(other, &sig_a, &sig_b, &mut map, &mut used)
            .then(|| map.into_iter().map(Option::unwrap).collect())
    }

    fn extend(
        &self,
        other: &MultiplicationTable,
        sig_a: &[Signature],
        sig_b: &[Signature],
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> bool {
        let Some(i) = map.iter().position(Option::is_none) else {
            return true;
        };
        for c in 0..other.order {
            if used[c] || sig_a[i] != sig_b[c] {
                continue;
            }
            let (saved_map, saved_used) = (map.clone(), used.clone());
            if self.assign(other, sig_a, sig_b, map, used, i, c) && self.extend(other, sig_a, sig_b, map, used) {
                return true;
            }
            *map = saved_map;
            *used = saved_used;
        }
        false
    }

    /// Sets `i ↦ c` and propagates every product forced by the mapped elements.
    #[allow(clippy::too_many_arguments)]
    fn assign(
        &self,
        other: &MultiplicationTable,
        sig_a: &[Signature],
        sig_b: &[Signature],
        map: &mut [Option<usize>],
        used: &mut [bool],
        i: usize,
        c: usize,
    ) -> bool {
        let mut pending = vec![(i, c)];
        while let Some((x, y)) = pending.pop() {
            match map[x] {
                Some(z) if z == y => continue,
                Some(_) => return false,
                None => {}
            }
            if used[y] || sig_a[x] != sig_b[y] {
                return false;
            }
            map[x] = Some(y);
            used[y] = true;
            for (u, &mapped) in map.iter().enumerate() {
                let Some(v) = mapped else { continue };
                pending.push((self.table[x][u], other.table[y][v]));
                pending.push((self.table[u][x], other.table[v][y]));
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::explorer::enumerate_ball;

    #[test]
    fn b2_relations() {
        let b = corpus::get("b2_partial").unwrap();
        let ball = enumerate_ball(&b, 4, 100).unwrap();
        let t = multiplication_table(&ball).unwrap();
        assert_eq!(t.order, 5);
        assert_eq!(t.is_associative(), Some(true));
        let (p, q, z) = (0, 1, 2);
        assert_eq!(t.zero(), Some(z));
        assert_eq!(t.product(p, p), z);
        assert_eq!(t.product(q, q), z);
        assert_eq!(t.product(t.product(p, q), p), p);
        assert_eq!(t.product(t.product(q, p), q), q);
        assert_eq!(t.identity(), None);
    }

    #[test]
    fn trivial_table() {
        let i = corpus::get("identity1").unwrap();
        let t = multiplication_table(&enumerate_ball(&i, 2, 10).unwrap()).unwrap();
        assert_eq!(t.table, vec![vec![0]]);
        assert_eq!(t.identity(), Some(0));
    }

    #[test]
    fn open_ball_has_no_table() {
        let a = corpus::get("adding").unwrap();
        let ball = enumerate_ball(&a, 3, 100).unwrap();
        assert_eq!(multiplication_table(&ball).unwrap_err(), Error::NotClosed);
    }

    #[test]
    fn complete_and_partial_b2_are_isomorphic() {
        let p = multiplication_table(&enumerate_ball(&corpus::get("b2_partial").unwrap(), 4, 100).unwrap()).unwrap();
        let c = multiplication_table(&enumerate_ball(&corpus::get("b2_complete").unwrap(), 4, 100).unwrap()).unwrap();
        let f = p.isomorphism_to(&c).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(f[p.product(i, j)], c.product(f[i], f[j]));
            }
        }
        let l = multiplication_table(&enumerate_ball(&corpus::get("left_zero").unwrap(), 4, 100).unwrap()).unwrap();
        assert!(p.isomorphism_to(&l).is_none());
    }

    #[test]
    fn isomorphism_search_agrees_with_brute_force() {
        // brute force over all permutations of a 5-element table
        let p = multiplication_table(&enumerate_ball(&corpus::get("b2_partial").unwrap(), 4, 100).unwrap()).unwrap();
        let c = multiplication_table(&enumerate_ball(&corpus::get("b2_complete").unwrap(), 4, 100).unwrap()).unwrap();
        let mut count = 0;
        let mut perm: Vec<usize> = (0..5).collect();
        permutations(&mut perm, 0, &mut |f| {
            if (0..5).all(|i| (0..5).all(|j| f[p.product(i, j)] == c.product(f[i], f[j]))) {
                count += 1;
            }
        });
        // B2 has exactly two automorphisms (identity and swapping p, q)
        assert_eq!(count, 2);
    }

    fn permutations(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permutations(v, k + 1, f);
            v.swap(k, i);
        }
    }
}
