use fermat_lattice::IntMatrix;
use num_bigint::BigInt;

use super::bases::HomologyData;
use super::{Generator, HomologyError};
use crate::manin::{left_multiply, Presentation, ReducedCoords};

/// (n²+1)-square matrix of `gen` on the free symbol module; column t is the
/// reduced image of basis symbol t.
pub fn action_on_symbols(gen: Generator, p: &Presentation) -> IntMatrix {
    let g = gen.matrix();
    let images: Vec<Vec<BigInt>> = p
        .basis()
        .iter()
        .map(|b| p.reduce_label(&left_multiply(&g, &b.coset(), p.level())).into_vec())
        .collect();
    IntMatrix::from_rows(p.rank(), images).transpose()
}

/// (n−1)(n−2)-square matrix of `gen` on H₁ in the s-basis, columns are
/// images.
pub fn action_on_homology(gen: Generator, h: &HomologyData) -> Result<IntMatrix, HomologyError> {
    let m = action_on_symbols(gen, h.presentation());
    let n = h.level();
    let labels = h.s_labels();
    let mut columns = Vec::with_capacity(h.rank());
    for (row, label) in h.s_basis().rows_iter().zip(&labels) {
        let image = ReducedCoords::from_vec(n, m.mul_vec(row));
        let c = h.s_coordinates(&image).ok_or_else(|| HomologyError::SolveFailed {
            n,
            what: format!("{gen}·{label}"),
        })?;
        columns.push(c);
    }
    Ok(IntMatrix::from_rows(h.rank(), columns).transpose())
}

/// Outcome of the norm-element checks Σ gⁱ = 0 on H₁.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilatorReport {
    pub n: usize,
    pub checks: Vec<(String, bool)>,
}

impl AnnihilatorReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// Checks that Σ_{i<n} gⁱ acts as zero on H₁ for g = ε₀, ε₁, ε₀ε₁.
pub fn annihilator_check(h: &HomologyData) -> Result<AnnihilatorReport, HomologyError> {
    let n = h.level();
    let mut checks = Vec::new();
    for gen in [Generator::E0, Generator::E1, Generator::E0E1] {
        let m = action_on_homology(gen, h)?;
        let mut power = IntMatrix::identity(m.nrows());
        let mut sum = IntMatrix::zeros(m.nrows(), m.ncols());
        for _ in 0..n {
            sum = &sum + &power;
            power = &power * &m;
        }
        checks.push((format!("sum of {gen}^i"), sum.is_zero()));
    }
    Ok(AnnihilatorReport { n, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{homology, s_cycle};

    fn sym(gen: Generator, n: usize) -> IntMatrix {
        action_on_symbols(gen, &Presentation::new(n).unwrap())
    }

    #[test]
    fn e0_shifts_y() {
        for n in 2..=5 {
            let p = Presentation::new(n).unwrap();
            let m = action_on_symbols(Generator::E0, &p);
            for i in 0..n as i64 {
                for j in 0..n as i64 {
                    let v = p.y(i, j);
                    assert_eq!(m.mul_vec(v.coords()), p.y(i + 1, j).into_vec());
                }
            }
        }
    }

    #[test]
    fn symbol_group_relations() {
        for n in 1..=6 {
            let e0 = sym(Generator::E0, n);
            let e1 = sym(Generator::E1, n);
            let e01 = sym(Generator::E0E1, n);
            let phi = sym(Generator::Phi, n);
            let id = IntMatrix::identity(e0.nrows());
            assert_eq!(&e0 * &e1, &e1 * &e0);
            assert_eq!(&e1 * &e0, e01);
            assert_eq!(e0.pow(n as u32), id);
            assert_eq!(e1.pow(n as u32), id);
            assert_eq!(phi.pow(3), id);
            assert_eq!(&phi * &e0, &e1 * &phi);
            // φε₁ = (ε₀ε₁)⁻¹φ, i.e. ε₀ε₁φε₁ = φ
            assert_eq!(&(&e01 * &phi) * &e1, phi);
        }
    }

    #[test]
    fn homology_actions_at_level_three() {
        let h = homology(3).unwrap();
        let m = action_on_homology(Generator::E0E1, &h).unwrap();
        // s[1,0] ↦ −s[1,0] − s[1,1], s[1,1] ↦ s[1,0]
        assert_eq!(m, IntMatrix::from_i64(&[vec![-1, 1], vec![-1, 0]]));
        assert_eq!(m.trace(), BigInt::from(-1));
        assert_eq!(m.determinant(), BigInt::from(1));
        assert_eq!(m.characteristic_polynomial(), [1, 1, 1].map(BigInt::from).to_vec());

        let p = h.presentation();
        let e1 = action_on_symbols(Generator::E1, p);
        let s = s_cycle(p, 0, 0);
        let lhs = e1.mul_vec(s.coords());
        let rhs = &(&s_cycle(p, 1, 0).scale(&BigInt::from(2)) + &s_cycle(p, 1, 1)) + &s;
        assert_eq!(lhs, rhs.into_vec());
    }

    #[test]
    fn e0_shifts_s_in_homology() {
        for n in 3..=6 {
            let h = homology(n).unwrap();
            let m = action_on_homology(Generator::E0, &h).unwrap();
            let pairs = h.index_pairs();
            for (t, &(i, j)) in pairs.iter().enumerate() {
                if i + 1 <= n - 2 {
                    let target = pairs.iter().position(|&q| q == (i + 1, j)).unwrap();
                    let col = m.column(t);
                    for (r, x) in col.iter().enumerate() {
                        assert_eq!(*x, BigInt::from((r == target) as i64));
                    }
                }
            }
        }
    }

    #[test]
    fn annihilators() {
        for n in 3..=6 {
            let r = annihilator_check(&homology(n).unwrap()).unwrap();
            assert_eq!(r.checks.len(), 3);
            assert!(r.all_pass(), "{r:?}");
        }
    }
}
