use serde::Serialize;

use super::{LieAlgebra, LieVector, Scope};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::linalg::{self, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum GeneratorKind {
    /// `exp(ad(t x_a))`.
    RootGroup { root: usize, t: Elem },
    /// `a_i^v(lambda)`.
    Cocharacter { i: usize, lambda: Elem },
    /// `x_{a_i}(1) x_{-a_i}(-1) x_{a_i}(1)`.
    WeylRep { i: usize },
    Product(Vec<GeneratorKind>),
}

/// A group element acting on `g`; column `j` of `matrix` is the image of basis vector `j`.
#[derive(Debug, Clone)]
pub struct GroupGenerator {
    pub kind: GeneratorKind,
    pub matrix: Matrix,
}

impl GroupGenerator {
    pub fn apply_coeffs(&self, alg: &LieAlgebra, v: &[Elem]) -> Vec<Elem> {
        let f = alg.field();
        let d = self.matrix.len();
        let mut out = vec![0; d];
        for (j, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, row) in out.iter_mut().zip(&self.matrix) {
                let m = row[j];
                if m != 0 {
                    *o = f.add(*o, f.mul(c, m));
                }
            }
        }
        out
    }

    /// Image of a vector; the result is in `g`.
    pub fn apply(&self, alg: &LieAlgebra, v: &LieVector) -> LieVector {
        let coeffs = self.apply_coeffs(alg, &v.coeffs);
        LieVector { field: v.field, scope: Scope::G, coeffs }
    }

    /// `self` after `other`.
    pub fn compose(&self, alg: &LieAlgebra, other: &GroupGenerator) -> GroupGenerator {
        let mut kinds = Vec::new();
        for k in [&self.kind, &other.kind] {
            match k {
                GeneratorKind::Product(v) => kinds.extend(v.iter().cloned()),
                k => kinds.push(k.clone()),
            }
        }
        GroupGenerator {
            kind: GeneratorKind::Product(kinds),
            matrix: linalg::mat_mul(alg.field(), &self.matrix, &other.matrix),
        }
    }
}

impl LieAlgebra {
    /// `ad(x_a)^k / k!` over the integers for `k = 0, 1, ...` until it vanishes.
    pub fn divided_powers(&self, a: usize) -> Vec<Vec<Vec<i128>>> {
        let d = self.dim(Scope::G);
        let ad = self.ad_int(a);
        let mut out = vec![linalg::identity(d).into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect::<Vec<Vec<i128>>>()];
        for k in 1.. {
            let prod = linalg::int_mat_mul(out.last().unwrap(), &ad);
            if prod.iter().all(|r| r.iter().all(|&x| x == 0)) {
                break;
            }
            let next: Vec<Vec<i128>> = prod
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|x| {
                            assert_eq!(x % k, 0, "non-integral divided power");
                            x / k
                        })
                        .collect()
                })
                .collect();
            out.push(next);
        }
        out
    }

    /// `x_a(t)` acting on `g`, from the integral divided powers reduced mod p.
    pub fn root_group(&self, a: usize, t: Elem) -> GroupGenerator {
        let f = self.field();
        let d = self.dim(Scope::G);
        let mut m = vec![vec![0; d]; d];
        let mut tk: Elem = 1;
        for dk in self.divided_powers(a) {
            for (row, drow) in m.iter_mut().zip(&dk) {
                for (x, &v) in row.iter_mut().zip(drow) {
                    if v != 0 {
                        *x = f.add(*x, f.mul(tk, f.from_int((v % f.p() as i128) as i64)));
                    }
                }
            }
            tk = f.mul(tk, t);
        }
        GroupGenerator { kind: GeneratorKind::RootGroup { root: a, t }, matrix: m }
    }

    /// `a_i^v(lambda)`: scales `x_b` by `lambda^<b, a_i^v>` and fixes the Cartan part.
    pub fn cocharacter(&self, i: usize, lambda: Elem) -> Result<GroupGenerator> {
        let f = self.field();
        if lambda == 0 {
            return Err(Error::InvalidField("cocharacter parameter must be nonzero".into()));
        }
        let sys = self.system();
        let d = self.dim(Scope::G);
        let mut m = linalg::identity(d);
        for (b, row) in m.iter_mut().enumerate().take(sys.num_roots()) {
            row[b] = f.pow_signed(lambda, sys.pairing(b, i)).expect("nonzero");
        }
        Ok(GroupGenerator { kind: GeneratorKind::Cocharacter { i, lambda }, matrix: m })
    }

    pub fn weyl_rep(&self, i: usize) -> GroupGenerator {
        let f = self.field();
        let sys = self.system();
        let x = self.root_group(i, 1);
        let y = self.root_group(sys.neg(i), f.neg(1));
        let m = linalg::mat_mul(f, &linalg::mat_mul(f, &x.matrix, &y.matrix), &x.matrix);
        GroupGenerator { kind: GeneratorKind::WeylRep { i }, matrix: m }
    }

    pub fn identity_element(&self) -> GroupGenerator {
        GroupGenerator {
            kind: GeneratorKind::Product(Vec::new()),
            matrix: linalg::identity(self.dim(Scope::G)),
        }
    }
}
