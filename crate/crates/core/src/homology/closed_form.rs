//! ε₀ and ε₁ on H₁ from the group ring alone.
//!
//! H₁ is cyclic over R = ℤ[x,y]/(xⁿ−1, yⁿ−1) on s = (1−ε₀)(1−ε₁)γ, and the
//! norms N₀ = Σxⁱ, N₁ = Σyʲ, N₀₁ = Σ(xy)ᵏ kill it. Using N₀ and N₁ every
//! element is written on the monomials xⁱyʲ with i, j ≤ n−2. The n−1
//! relations xˡN₀₁ (l ≤ n−2) are then solved for the monomials with i = 0,
//! which leaves exactly the s-basis monomials with 1 ≤ i ≤ n−2.
//!
//! The relations alone span a sublattice of finite index (3 already for
//! n = 3), so solving them needs a division. H₁ is torsion-free, which makes
//! the saturation of the relation lattice valid as well; the elimination
//! runs on the saturated lattice and stays integral.

use fermat_lattice::{hnf, kernel_basis, IntMatrix};
use num_bigint::BigInt;
use num_traits::Zero;

use super::group_ring::GroupRingElement;
use super::HomologyError;

struct MonomialSpace {
    n: usize,
    m: usize,
}

impl MonomialSpace {
    fn index(&self, i: usize, j: usize) -> usize {
        i * self.m + j
    }

    /// Exponent e as a combination of exponents ≤ n−2, via xⁿ⁻¹ = −Σ_{k<n−1} xᵏ.
    fn expand(&self, e: usize) -> Vec<(usize, i64)> {
        if e == self.n - 1 {
            (0..self.m).map(|k| (k, -1)).collect()
        } else {
            vec![(e, 1)]
        }
    }

    fn reduce(&self, g: &GroupRingElement) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.m * self.m];
        for (&(p, q), c) in g.terms() {
            for (i, a) in self.expand(p) {
                for (j, b) in self.expand(q) {
                    v[self.index(i, j)] += c * (a * b);
                }
            }
        }
        v
    }
}

/// Coordinates of g·s in the s-basis, computed in the group ring. Empty
/// for n ≤ 2.
pub fn closed_form_coordinates(g: &GroupRingElement) -> Result<Vec<BigInt>, HomologyError> {
    Ok(NormSystem::new(g.level())?.coordinates(g))
}

struct NormSystem {
    space: MonomialSpace,
    /// Row j: yʲ·s = −(row j)·basis.
    elim: IntMatrix,
}

impl NormSystem {
    fn new(n: usize) -> Result<Self, HomologyError> {
        let m = n.saturating_sub(1);
        let space = MonomialSpace { n, m };
        if n < 3 {
            return Ok(NormSystem { space, elim: IntMatrix::zeros(m, 0) });
        }
        let norm = GroupRingElement::norm(&GroupRingElement::monomial(n, 1, 1));
        let lead: Vec<usize> = (0..m).map(|j| space.index(0, j)).collect();
        let rest: Vec<usize> = (m..m * m).collect();
        let relations: Vec<Vec<BigInt>> = (0..m)
            .map(|l| space.reduce(&(&GroupRingElement::monomial(n, l as i64, 0) * &norm)))
            .collect();
        let rel = IntMatrix::from_rows(m * m, relations);
        let orthogonal = kernel_basis(&rel.transpose());
        let saturated = kernel_basis(&orthogonal.transpose());
        if saturated.nrows() != m {
            return Err(HomologyError::InconsistentSystem { n });
        }
        let r = hnf(&saturated.select_columns(&lead));
        if !r.h.is_identity() {
            return Err(HomologyError::InconsistentSystem { n });
        }
        // u·C = I, so the relations become yʲ + (u·D)_j = 0.
        let elim = &r.u * &saturated.select_columns(&rest);
        Ok(NormSystem { space, elim })
    }

    fn coordinates(&self, g: &GroupRingElement) -> Vec<BigInt> {
        let m = self.space.m;
        if self.space.n < 3 {
            return Vec::new();
        }
        let v = self.space.reduce(g);
        let mut out: Vec<BigInt> = v[m..].to_vec();
        for (j, cj) in v[..m].iter().enumerate() {
            if !cj.is_zero() {
                for (o, e) in out.iter_mut().zip(self.elim.row(j)) {
                    *o -= cj * e;
                }
            }
        }
        out
    }
}

/// Matrices of ε₀ and ε₁ on H₁ in the s-basis, columns are images, built
/// without any kernel computation.
pub fn closed_form_action(n: usize) -> Result<(IntMatrix, IntMatrix), HomologyError> {
    if n < 3 {
        return Ok((IntMatrix::zeros(0, 0), IntMatrix::zeros(0, 0)));
    }
    let system = NormSystem::new(n)?;
    let m = n - 1;
    let rank = m * (m - 1);
    let mut e0_cols = Vec::with_capacity(rank);
    let mut e1_cols = Vec::with_capacity(rank);
    for i in 1..m as i64 {
        for j in 0..m as i64 {
            e0_cols.push(system.coordinates(&GroupRingElement::monomial(n, i + 1, j)));
            e1_cols.push(system.coordinates(&GroupRingElement::monomial(n, i, j + 1)));
        }
    }
    Ok((
        IntMatrix::from_rows(rank, e0_cols).transpose(),
        IntMatrix::from_rows(rank, e1_cols).transpose(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{action_on_homology, homology, s_cycle, Generator};

    #[test]
    fn level_three() {
        let n = 3;
        let coords = |p, q| closed_form_coordinates(&GroupRingElement::monomial(n, p, q)).unwrap();
        let v = |xs: [i64; 2]| xs.map(BigInt::from).to_vec();
        // ε₁s = ε₀s = s[1,0], and s = −ε₀s − ε₀ε₁s
        assert_eq!(coords(0, 1), v([1, 0]));
        assert_eq!(coords(1, 0), v([1, 0]));
        assert_eq!(coords(0, 0), v([-1, -1]));
        let (e0, e1) = closed_form_action(n).unwrap();
        let m = &e1 * &e0;
        assert_eq!(m, IntMatrix::from_i64(&[vec![-1, 1], vec![-1, 0]]));
    }

    #[test]
    fn matches_linear_algebra() {
        for n in 3..=6 {
            let h = homology(n).unwrap();
            let (e0, e1) = closed_form_action(n).unwrap();
            assert_eq!(e0, action_on_homology(Generator::E0, &h).unwrap(), "n={n}");
            assert_eq!(e1, action_on_homology(Generator::E1, &h).unwrap(), "n={n}");
        }
    }

    #[test]
    fn coordinates_match_s_cycles() {
        for n in 3..=6 {
            let h = homology(n).unwrap();
            for p in 0..n as i64 {
                for q in 0..n as i64 {
                    let g = GroupRingElement::monomial(n, p, q);
                    let direct = h.s_coordinates(&s_cycle(h.presentation(), p, q)).unwrap();
                    assert_eq!(closed_form_coordinates(&g).unwrap(), direct, "n={n} {p},{q}");
                }
            }
        }
    }

    #[test]
    fn unsaturated_relations_have_index_three_at_level_three() {
        let rel = IntMatrix::from_i64(&[vec![2, 1, 1, 2], vec![-1, -2, 1, -1]]);
        let lead = rel.select_columns(&[0, 1]);
        assert_eq!(lead.determinant(), BigInt::from(-3));
    }

    #[test]
    fn degenerate_levels() {
        for n in 1..=2 {
            let (a, b) = closed_form_action(n).unwrap();
            assert_eq!((a.nrows(), b.nrows()), (0, 0));
        }
    }
}
