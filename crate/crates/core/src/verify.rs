//! The invariant suite run by `fermat-modsym verify`.
//!
//! Each level is checked independently, so levels run on separate threads.
//! A [`Fault`] swaps in a corrupted relation matrix at one level, which the
//! suite must catch.

use std::thread;

use fermat_lattice::{rank, same_row_lattice, IntMatrix};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::homology::{
    action_on_homology, action_on_symbols, annihilator_check, closed_form_action,
    gamma_cycle, geometric_basis, geometric_to_coords, lim_basis, GeometricSymbol, Generator,
    GroupRingElement, HomologyData,
};
use crate::manin::{
    boundary, enumerate_cosets, relation_matrix, Presentation, SymbolVector,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub n: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub results: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.passed)
    }
}

/// Corrupts one relation row at level `n`: the last coefficient of `row`
/// changes sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fault {
    pub n: usize,
    pub row: usize,
}

pub fn corrupt_relation_row(m: &mut IntMatrix, row: usize) {
    if let Some(c) = (0..m.ncols()).rev().find(|&c| !m.get(row, c).is_zero()) {
        let v = -m.get(row, c);
        m.set(row, c, v);
    }
}

/// Runs every check for n = 1…n_max.
pub fn verify(n_max: usize, fault: Option<Fault>) -> VerifyReport {
    let per_level: Vec<Vec<CheckResult>> = thread::scope(|s| {
        let handles: Vec<_> = (1..=n_max)
            .map(|n| s.spawn(move || verify_level(n, fault.filter(|f| f.n == n))))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification thread panicked"))
            .collect()
    });
    VerifyReport { results: per_level.into_iter().flatten().collect() }
}

struct Recorder {
    n: usize,
    results: Vec<CheckResult>,
}

impl Recorder {
    fn check(&mut self, name: &'static str, passed: bool) {
        self.results.push(CheckResult { n: self.n, name, passed, detail: None });
    }

    fn fail(&mut self, name: &'static str, detail: String) {
        self.results.push(CheckResult { n: self.n, name, passed: false, detail: Some(detail) });
    }
}

fn unit_det(m: &IntMatrix) -> bool {
    m.determinant().abs().is_one()
}

pub fn verify_level(n: usize, fault: Option<Fault>) -> Vec<CheckResult> {
    let mut rec = Recorder { n, results: Vec::new() };
    let mut relations = relation_matrix(n).expect("positive level");
    if let Some(f) = fault {
        corrupt_relation_row(&mut relations, f.row);
    }

    let supports_ok = relations.rows_iter().enumerate().all(|(r, row)| {
        let nz: Vec<&BigInt> = row.iter().filter(|x| !x.is_zero()).collect();
        nz.len() == if r < 6 * n * n { 2 } else { 3 } && nz.iter().all(|x| x.is_one())
    });
    rec.check("relation rows are sigma pairs and tau triples", supports_ok);

    let p = match Presentation::from_relations(n, &relations) {
        Ok(p) => p,
        Err(e) => {
            rec.fail("symbol module is free of rank n^2+1", e.to_string());
            return rec.results;
        }
    };
    rec.check("symbol module is free of rank n^2+1", p.rank() == n * n + 1);

    let cosets = enumerate_cosets(n);
    let relations_vanish = relations.rows_iter().all(|row| {
        let mut v = SymbolVector::zero(n);
        for (c, x) in row.iter().enumerate() {
            if !x.is_zero() {
                v.add_term(cosets[c], x.clone());
            }
        }
        p.reduce(&v).is_zero() && boundary(&v).is_zero()
    });
    rec.check("relations reduce to zero and have zero boundary", relations_vanish);

    let ni = n as i64;
    let xy_ok = (0..ni).all(|i| {
        (0..ni).all(|j| &p.x(i, j) + &p.y(i, j) == &p.x(i + 1, j) + &p.y(i + 1, j - 1))
    });
    rec.check("x[i,j] + y[i,j] = x[i+1,j] + y[i+1,j-1]", xy_ok);

    let b = p.boundary_matrix();
    let br = rank(&b);
    rec.check(
        "boundary rank 3n-1, kernel rank (n-1)(n-2)",
        br == 3 * n - 1 && p.rank() - br == (n - 1) * n.saturating_sub(2),
    );

    let mut hit = vec![false; p.rank()];
    let onto = geometric_basis(n).iter().all(|g| {
        let v = geometric_to_coords(g, &p);
        let nz: Vec<usize> = (0..p.rank()).filter(|&t| !v.coords()[t].is_zero()).collect();
        let ok = nz.len() == 1 && v.coords()[nz[0]].is_one() && !hit[nz[0]];
        if ok {
            hit[nz[0]] = true;
        }
        ok
    }) && hit.iter().all(|&h| h);
    rec.check("generators of relative homology map onto the free basis", onto);

    let gamma = GeometricSymbol::gamma(n);
    let gammabar = GeometricSymbol::gammabar(n);
    let e0 = GroupRingElement::e0(n);
    let e01 = GroupRingElement::monomial(n, 1, 1);
    let one = GroupRingElement::one(n);
    let lhs = &gamma.scale(&e0) + &gammabar.scale(&e01);
    let rel = geometric_to_coords(&(&lhs - &(&gamma + &gammabar)), &p);
    let rel2 = &gamma.scale(&(&one - &e0)) - &gammabar.scale(&(&e01 - &one));
    rec.check(
        "e0 gamma + e0e1 gammabar = gamma + gammabar",
        rel.is_zero() && geometric_to_coords(&rel2, &p).is_zero(),
    );

    let sym = |g| action_on_symbols(g, &p);
    let (s0, s1, s01, sphi) =
        (sym(Generator::E0), sym(Generator::E1), sym(Generator::E0E1), sym(Generator::Phi));
    let id = IntMatrix::identity(p.rank());
    rec.check(
        "symbol actions: commuting, orders n and 3, phi intertwines",
        &s0 * &s1 == &s1 * &s0
            && &s1 * &s0 == s01
            && s0.pow(n as u32) == id
            && s1.pow(n as u32) == id
            && sphi.pow(3) == id
            && &sphi * &s0 == &s1 * &sphi
            && &(&s01 * &sphi) * &s1 == sphi,
    );

    if n < 3 {
        return rec.results;
    }
    let h = match HomologyData::new(p) {
        Ok(h) => h,
        Err(e) => {
            rec.fail("s-basis and gamma-basis are bases of ker boundary", e.to_string());
            return rec.results;
        }
    };
    rec.check(
        "s-basis and gamma-basis are bases of ker boundary",
        h.rank() == (n - 1) * (n - 2) && unit_det(h.s_in_gamma()),
    );
    let p = h.presentation();
    let gamma_last = (1..=ni - 2).all(|i| gamma_cycle(p, i, ni - 1).is_ok_and(|v| v.is_zero()));
    rec.check("gamma[i,n-1] = 0", gamma_last);

    match annihilator_check(&h) {
        Ok(r) => rec.check("norm elements act as zero on H1", r.all_pass()),
        Err(e) => rec.fail("norm elements act as zero on H1", e.to_string()),
    }

    let actions: Result<Vec<IntMatrix>, _> =
        Generator::ALL.iter().map(|&g| action_on_homology(g, &h)).collect();
    match actions {
        Ok(m) => {
            let id = IntMatrix::identity(h.rank());
            let (h0, h1, h01, hphi) = (&m[0], &m[1], &m[2], &m[3]);
            rec.check(
                "homology actions: commuting, order n, unimodular",
                &(h0 * h1) == &(h1 * h0)
                    && &(h1 * h0) == h01
                    && h0.pow(n as u32) == id
                    && h1.pow(n as u32) == id
                    && h01.pow(n as u32) == id
                    && hphi.pow(3) == id
                    && m.iter().all(unit_det),
            );
            match closed_form_action(n) {
                Ok((c0, c1)) => {
                    rec.check("closed-form action equals kernel solve", &c0 == h0 && &c1 == h1)
                }
                Err(e) => rec.fail("closed-form action equals kernel solve", e.to_string()),
            }
        }
        Err(e) => rec.fail("homology actions: commuting, order n, unimodular", e.to_string()),
    }

    let lim = lim_basis(p);
    rec.check(
        "Lim basis spans H1",
        lim.nrows() == h.rank() && same_row_lattice(&lim, h.s_basis()),
    );
    rec.results
}
