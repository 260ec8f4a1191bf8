use fermat_lattice::{kernel_basis, same_row_lattice, IntMatrix, RowLattice};
use num_bigint::BigInt;

use super::group_ring::{geometric_to_coords, GeometricSymbol, GroupRingElement};
use super::HomologyError;
use crate::manin::{Presentation, ReducedCoords};

/// The cycle `y[i,0] − y[i+1,n−1] + y[i+1,j] − y[i,j+1]` for
/// 1 ≤ i ≤ n−2, 0 ≤ j ≤ n−1.
pub fn gamma_cycle(p: &Presentation, i: i64, j: i64) -> Result<ReducedCoords, HomologyError> {
    let n = p.level() as i64;
    if !(1..=n - 2).contains(&i) || !(0..n).contains(&j) {
        return Err(HomologyError::IndexOutOfRange { i, j, max_i: n - 2, max_j: n - 1 });
    }
    let v = &p.y(i, 0) - &p.y(i + 1, n - 1);
    let v = &v + &p.y(i + 1, j);
    Ok(&v - &p.y(i, j + 1))
}

/// Coordinates of ε₀ⁱε₁ʲ(1−ε₀)(1−ε₁)γ, any exponents.
pub fn s_cycle(p: &Presentation, i: i64, j: i64) -> ReducedCoords {
    let n = p.level();
    let one = GroupRingElement::one(n);
    let r = &(&one - &GroupRingElement::e0(n)) * &(&one - &GroupRingElement::e1(n));
    let r = &GroupRingElement::monomial(n, i, j) * &r;
    geometric_to_coords(&GeometricSymbol::gamma(n).scale(&r), p)
}

/// Rows ε₀ⁱε₁ʲg for 0 ≤ i ≤ n−2, 0 ≤ j ≤ n−3, where
/// g = ε₀^{(n−1)/2}ε₁^{(n−1)/2}(1−ε₀)(1−ε₁)γ for odd n and
/// g = (1−ε₀^{n−1})(1−ε₁^{n−1})γ for even n.
pub fn lim_basis(p: &Presentation) -> IntMatrix {
    let n = p.level();
    let width = p.rank();
    if n < 3 {
        return IntMatrix::zeros(0, width);
    }
    let one = GroupRingElement::one(n);
    let e0 = GroupRingElement::e0(n);
    let e1 = GroupRingElement::e1(n);
    let top = n as u32 - 1;
    let g = if n % 2 == 1 {
        let h = (top / 2) as i64;
        let r = &(&one - &e0) * &(&one - &e1);
        &GroupRingElement::monomial(n, h, h) * &r
    } else {
        &(&one - &e0.pow(top)) * &(&one - &e1.pow(top))
    };
    let rows = (0..n - 1)
        .flat_map(|i| (0..n - 2).map(move |j| (i, j)))
        .map(|(i, j)| {
            let r = &GroupRingElement::monomial(n, i as i64, j as i64) * &g;
            geometric_to_coords(&GeometricSymbol::gamma(n).scale(&r), p).into_vec()
        })
        .collect();
    IntMatrix::from_rows(width, rows)
}

/// H₁ with its three bases. Both explicit bases are indexed by
/// 1 ≤ i ≤ n−2 (outer) and 0 ≤ j ≤ n−2 (inner); for n ≤ 2 all are empty.
#[derive(Clone, Debug)]
pub struct HomologyData {
    presentation: Presentation,
    kernel: IntMatrix,
    s_basis: IntMatrix,
    gamma_basis: IntMatrix,
    s_in_gamma: IntMatrix,
    s_lattice: RowLattice,
}

pub fn homology(n: usize) -> Result<HomologyData, HomologyError> {
    HomologyData::new(Presentation::new(n)?)
}

impl HomologyData {
    pub fn new(presentation: Presentation) -> Result<Self, HomologyError> {
        let p = &presentation;
        let n = p.level();
        let width = p.rank();
        let kernel = kernel_basis(&p.boundary_matrix());
        let index: Vec<(i64, i64)> = (1..n.saturating_sub(1) as i64)
            .flat_map(|i| (0..n as i64 - 1).map(move |j| (i, j)))
            .collect();
        let s_rows = index.iter().map(|&(i, j)| s_cycle(p, i, j).into_vec()).collect();
        let s_basis = IntMatrix::from_rows(width, s_rows);
        let mut g_rows = Vec::with_capacity(index.len());
        for &(i, j) in &index {
            g_rows.push(gamma_cycle(p, i, j)?.into_vec());
        }
        let gamma_basis = IntMatrix::from_rows(width, g_rows);

        if !same_row_lattice(&s_basis, &kernel) || s_basis.nrows() != kernel.nrows() {
            return Err(HomologyError::NotABasis { n, what: "the s-basis" });
        }
        if !same_row_lattice(&gamma_basis, &kernel) || gamma_basis.nrows() != kernel.nrows() {
            return Err(HomologyError::NotABasis { n, what: "the gamma-basis" });
        }
        let not_basis = |_| HomologyError::NotABasis { n, what: "the s-basis" };
        let s_lattice = RowLattice::new(&s_basis).map_err(not_basis)?;
        let gamma_lattice = RowLattice::new(&gamma_basis)
            .map_err(|_| HomologyError::NotABasis { n, what: "the gamma-basis" })?;
        let mut transition = Vec::with_capacity(index.len());
        for row in s_basis.rows_iter() {
            let c = gamma_lattice
                .solve(row)
                .ok()
                .flatten()
                .ok_or(HomologyError::NotABasis { n, what: "the s-basis" })?;
            transition.push(c);
        }
        let s_in_gamma = IntMatrix::from_rows(index.len(), transition);
        Ok(HomologyData { presentation, kernel, s_basis, gamma_basis, s_in_gamma, s_lattice })
    }

    pub fn level(&self) -> usize {
        self.presentation.level()
    }

    /// (n−1)(n−2), twice the genus.
    pub fn rank(&self) -> usize {
        self.s_basis.nrows()
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// Hermite-reduced ℤ-basis of the boundary kernel.
    pub fn kernel_basis(&self) -> &IntMatrix {
        &self.kernel
    }

    pub fn s_basis(&self) -> &IntMatrix {
        &self.s_basis
    }

    pub fn gamma_basis(&self) -> &IntMatrix {
        &self.gamma_basis
    }

    /// Row t: coordinates of `s` basis vector t in the gamma basis.
    pub fn s_in_gamma(&self) -> &IntMatrix {
        &self.s_in_gamma
    }

    pub fn index_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.level();
        (1..n.saturating_sub(1))
            .flat_map(|i| (0..n - 1).map(move |j| (i, j)))
            .collect()
    }

    pub fn s_labels(&self) -> Vec<String> {
        self.index_pairs().iter().map(|(i, j)| format!("s[{i},{j}]")).collect()
    }

    pub fn gamma_labels(&self) -> Vec<String> {
        self.index_pairs().iter().map(|(i, j)| format!("gamma[{i},{j}]")).collect()
    }

    /// Coordinates of a cycle in the s-basis, `None` if it is not in H₁.
    pub fn s_coordinates(&self, v: &ReducedCoords) -> Option<Vec<BigInt>> {
        self.s_lattice.solve(v.coords()).ok().flatten()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manin::boundary;
    use crate::manin::SymbolVector;
    use fermat_lattice::rank;

    #[test]
    fn ranks() {
        for (n, r) in [(1, 0), (2, 0), (3, 2), (4, 6), (5, 12), (6, 20)] {
            assert_eq!(homology(n).unwrap().rank(), r);
        }
    }

    #[test]
    fn gamma_last_column_vanishes() {
        for n in 3..=7 {
            let p = Presentation::new(n).unwrap();
            for i in 1..=n as i64 - 2 {
                assert!(gamma_cycle(&p, i, n as i64 - 1).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn gamma_index_checked() {
        let p = Presentation::new(4).unwrap();
        assert!(gamma_cycle(&p, 0, 0).is_err());
        assert!(gamma_cycle(&p, 3, 0).is_err());
        assert!(gamma_cycle(&p, 1, 4).is_err());
        assert!(gamma_cycle(&p, 2, 3).is_ok());
    }

    #[test]
    fn gamma_cycles_have_zero_boundary_as_symbols() {
        // the raw four-term combination, before reduction
        use crate::psl2::CosetLabel;
        for n in 3..=6 {
            for i in 1..n - 1 {
                for j in 0..n {
                    let mut v = SymbolVector::zero(n);
                    v.add_term(CosetLabel::new(i, 0, 2), 1);
                    v.add_term(CosetLabel::new(i + 1, n - 1, 2), -1);
                    v.add_term(CosetLabel::new(i + 1, j, 2), 1);
                    v.add_term(CosetLabel::new(i, (j + 1) % n, 2), -1);
                    assert!(boundary(&v).is_zero());
                }
            }
        }
    }

    #[test]
    fn s_is_gamma_difference() {
        // s[i,j] = gamma[i,j'+1] − gamma[i,j'] with j' ≡ −j−2
        for n in 3..=7 {
            let p = Presentation::new(n).unwrap();
            let ni = n as i64;
            for i in 1..=ni - 2 {
                for j in 0..=ni - 2 {
                    let jp = (-j - 2).rem_euclid(ni);
                    let diff = &gamma_cycle(&p, i, (jp + 1) % ni).unwrap()
                        - &gamma_cycle(&p, i, jp).unwrap();
                    assert_eq!(s_cycle(&p, i, j), diff, "n={n} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn lim_basis_spans() {
        for n in 3..=6 {
            let h = homology(n).unwrap();
            let l = lim_basis(h.presentation());
            assert_eq!(l.nrows(), h.rank());
            assert_eq!(rank(&l), h.rank());
            assert!(same_row_lattice(&l, h.s_basis()));
        }
    }

    #[test]
    fn transition_is_unimodular() {
        for n in 3..=6 {
            let d = homology(n).unwrap().s_in_gamma().determinant();
            assert!(d == BigInt::from(1) || d == BigInt::from(-1));
        }
    }
}
