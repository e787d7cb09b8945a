//! Metabelian crossed products of a line over an n-dimensional abelian
//! kernel, parameterized by matrix triples (A, B, γ) with
//!
//! ```text
//! AB = BA = -B^2,    Bγ = 0
//! ```
//!
//! The associated algebra on E_1..E_{n+1} has {E_i, E_{n+1}} = sum a_ji E_j,
//! {E_{n+1}, E_i} = sum b_ji E_j, {E_{n+1}, E_{n+1}} = sum γ_j E_j. Two
//! triples are cohomologous iff A = A', B = B' and γ - γ' lies in the image
//! of B + A, so the quotient is a linear-image test with no search.

use super::{ClassificationReport, Component, ComponentKey, Representative, REPRESENTATIVE_LIMIT};
use crate::algebra::{samples, LeibnizAlgebra, StructureTensor};
use crate::crossed::{crossed_product, Bilin, CrossedSystem, PreCrossedDatum};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{vector_at, MatrixS, Subspace, VectorS};

/// A matrix triple; membership is not assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TnTriple {
    pub a: MatrixS,
    pub b: MatrixS,
    pub gamma: VectorS,
}

impl TnTriple {
    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn field(&self) -> FieldSpec {
        self.a.field()
    }
}

/// AB = BA = -B^2 and Bγ = 0.
pub fn tn_is_member(t: &TnTriple) -> bool {
    let neg_b2 = t.b.mul_mat(&t.b).neg();
    t.a.mul_mat(&t.b) == neg_b2 && t.b.mul_mat(&t.a) == neg_b2 && t.b.mul_vec(&t.gamma).is_zero()
}

/// All members for the given size, enumerated lexicographically over the
/// 2n^2 + n coefficients.
pub fn tn_enumerate(n: usize, field: FieldSpec, cap: u64) -> Result<Vec<TnTriple>> {
    let p = field
        .modulus()
        .ok_or_else(|| Error::Unsupported("triple enumeration needs a prime field".into()))?;
    let params = (2 * n * n + n) as u32;
    let count = crate::linalg::budget_check(p, params, cap)?;
    let mut out = Vec::new();
    for idx in 0..count {
        let flat = vector_at(2 * n * n + n, field, idx);
        let mut a = MatrixS::zeros(field, n, n);
        let mut b = MatrixS::zeros(field, n, n);
        let mut gamma = VectorS::zeros(field, n);
        for i in 0..n {
            for j in 0..n {
                a[(i, j)] = flat[i * n + j].clone();
                b[(i, j)] = flat[n * n + i * n + j].clone();
            }
            gamma[i] = flat[2 * n * n + i].clone();
        }
        let t = TnTriple { a, b, gamma };
        if tn_is_member(&t) {
            out.push(t);
        }
    }
    Ok(out)
}

/// The crossed system of the line k_0 by the abelian kernel k^n carried by
/// a triple: e_i ◁ 1 = A e_i, 1 ▷ e_j = B e_j, f(1,1) = γ.
pub fn tn_to_system(t: &TnTriple) -> Result<CrossedSystem> {
    let field = t.field();
    let n = t.n();
    let l = samples::abelian(field, 1);
    let mut left = Bilin::zeros(field, n, 1, n);
    let mut right = Bilin::zeros(field, 1, n, n);
    let mut cocycle = Bilin::zeros(field, 1, 1, n);
    for i in 0..n {
        left.set_vec(i, 0, &t.a.col(i));
        right.set_vec(0, i, &t.b.col(i));
    }
    cocycle.set_vec(0, 0, &t.gamma);
    let datum =
        PreCrossedDatum::new(l, n, left, right, cocycle, StructureTensor::zeros(field, n))?;
    CrossedSystem::new(datum)
}

/// The (n+1)-dimensional algebra of a member triple.
pub fn tn_algebra(t: &TnTriple) -> Result<LeibnizAlgebra> {
    Ok(crossed_product(&tn_to_system(t)?))
}

/// Quotient of a member list: γ modulo the image of B + A, per (A, B) pair.
pub fn tn_quotient(triples: &[TnTriple]) -> Result<ClassificationReport> {
    if triples.is_empty() {
        return Err(Error::InvalidInput("empty triple list".into()));
    }
    let field = triples[0].field();
    let n = triples[0].n();
    let p = field
        .modulus()
        .ok_or_else(|| Error::Unsupported("triple quotient needs a prime field".into()))?;

    let mut pairs: Vec<(MatrixS, MatrixS)> = Vec::new();
    let mut gammas: Vec<Vec<VectorS>> = Vec::new();
    for t in triples {
        if !tn_is_member(t) {
            return Err(Error::InvalidInput("list contains a non-member triple".into()));
        }
        let key = (t.a.clone(), t.b.clone());
        match pairs.iter().position(|k| *k == key) {
            Some(i) => gammas[i].push(t.gamma.clone()),
            None => {
                pairs.push(key);
                gammas.push(vec![t.gamma.clone()]);
            }
        }
    }
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    order.sort_by(|&x, &y| {
        (pairs[x].0.entries(), pairs[x].1.entries())
            .cmp(&(pairs[y].0.entries(), pairs[y].1.entries()))
    });

    let mut components = Vec::new();
    let mut orbit_count: u128 = 0;
    for pi in order {
        let (a, b) = &pairs[pi];
        let image = Subspace::from_spanning(
            field,
            n,
            (0..n).map(|j| a.add(b).col(j)),
        );
        // Canonical coset representative: reduce γ against the echelonized
        // image basis.
        let reduce = |g: &VectorS| -> VectorS {
            let mut rem = g.clone();
            for bv in image.basis() {
                let pivot = bv.entries().iter().position(|e| !e.is_zero()).expect("no zero rows");
                if !rem[pivot].is_zero() {
                    let c = field.neg(&rem[pivot]);
                    rem.add_scaled(&c, bv);
                }
            }
            rem
        };
        let mut cosets: Vec<(VectorS, VectorS)> = Vec::new(); // (reduced, lex-min member)
        for g in &gammas[pi] {
            let red = reduce(g);
            match cosets.iter_mut().find(|(r, _)| *r == red) {
                Some((_, min)) => {
                    if g.entries() < min.entries() {
                        *min = g.clone();
                    }
                }
                None => cosets.push((red, g.clone())),
            }
        }
        cosets.sort_by(|x, y| x.1.entries().cmp(y.1.entries()));
        orbit_count += cosets.len() as u128;
        let mut reps = Vec::new();
        let mut truncated = false;
        for (_, gamma) in &cosets {
            if reps.len() >= REPRESENTATIVE_LIMIT {
                truncated = true;
                break;
            }
            let t = TnTriple { a: a.clone(), b: b.clone(), gamma: gamma.clone() };
            let sys = tn_to_system(&t)?;
            reps.push(Representative {
                product: sys.datum().product_tensor_unconditional(),
                datum: sys.into_datum(),
            });
        }
        components.push(Component {
            key: ComponentKey::ActionPair { a: a.clone(), b: b.clone() },
            size: gammas[pi].len() as u128,
            class_count: Some(cosets.len() as u128),
            representatives: reps,
            representatives_truncated: truncated,
        });
    }

    Ok(ClassificationReport {
        l: samples::abelian(field, 1),
        g_dim: n,
        field,
        total_candidates: (p as u128).saturating_pow((2 * n * n + n) as u32),
        valid_count: triples.len() as u128,
        orbit_count: Some(orbit_count),
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::leibniz_defect;
    use crate::DEFAULT_CAP;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn membership_examples() {
        let f = gf(3);
        // Zero matrices admit any gamma.
        for g in [[0, 0], [1, 2], [2, 0]] {
            let t = TnTriple {
                a: MatrixS::zeros(f, 2, 2),
                b: MatrixS::zeros(f, 2, 2),
                gamma: VectorS::from_i64(f, &[g[0], g[1]]),
            };
            assert!(tn_is_member(&t));
        }
        // A = B = I, gamma = e1: B gamma != 0 and AB != -B^2.
        let t = TnTriple {
            a: MatrixS::identity(f, 2),
            b: MatrixS::identity(f, 2),
            gamma: VectorS::from_i64(f, &[1, 0]),
        };
        assert!(!tn_is_member(&t));
    }

    #[test]
    fn membership_matches_the_axiom_validator() {
        // Over GF(2), n = 1: every candidate triple is a member exactly when
        // the constructed datum validates.
        let f = gf(2);
        for bits in 0..8u32 {
            let t = TnTriple {
                a: MatrixS::from_i64(f, &[&[(bits & 1) as i64]]),
                b: MatrixS::from_i64(f, &[&[((bits >> 1) & 1) as i64]]),
                gamma: VectorS::from_i64(f, &[((bits >> 2) & 1) as i64]),
            };
            let member = tn_is_member(&t);
            let valid = tn_system_unchecked(&t).validate().valid();
            assert_eq!(member, valid);
        }
    }

    fn tn_system_unchecked(t: &TnTriple) -> PreCrossedDatum {
        let field = t.field();
        let n = t.n();
        let l = samples::abelian(field, 1);
        let mut left = Bilin::zeros(field, n, 1, n);
        let mut right = Bilin::zeros(field, 1, n, n);
        let mut cocycle = Bilin::zeros(field, 1, 1, n);
        for i in 0..n {
            left.set_vec(i, 0, &t.a.col(i));
            right.set_vec(0, i, &t.b.col(i));
        }
        cocycle.set_vec(0, 0, &t.gamma);
        PreCrossedDatum::new(l, n, left, right, cocycle, StructureTensor::zeros(field, n))
            .unwrap()
    }

    #[test]
    fn enumerate_counts_match_the_brute_force_oracle() {
        // Independent oracle counts: 5 members / 4 classes over GF(2) at
        // n = 1; 11 / 7 over GF(3); 106 / 61 over GF(2) at n = 2;
        // 1065 / 361 over GF(3) at n = 2.
        let t1_gf2 = tn_enumerate(1, gf(2), DEFAULT_CAP).unwrap();
        assert_eq!(t1_gf2.len(), 5);
        assert_eq!(tn_quotient(&t1_gf2).unwrap().orbit_count, Some(4));

        let t1_gf3 = tn_enumerate(1, gf(3), DEFAULT_CAP).unwrap();
        assert_eq!(t1_gf3.len(), 11);
        assert_eq!(tn_quotient(&t1_gf3).unwrap().orbit_count, Some(7));

        let t2_gf2 = tn_enumerate(2, gf(2), DEFAULT_CAP).unwrap();
        assert_eq!(t2_gf2.len(), 106);
        assert_eq!(tn_quotient(&t2_gf2).unwrap().orbit_count, Some(61));

        let t2_gf3 = tn_enumerate(2, gf(3), DEFAULT_CAP).unwrap();
        assert_eq!(t2_gf3.len(), 1065);
        assert_eq!(tn_quotient(&t2_gf3).unwrap().orbit_count, Some(361));
    }

    #[test]
    fn algebra_bracket_table() {
        // {E_i, E_{n+1}} = sum a_ji E_j etc., with the kernel block first.
        let f = gf(5);
        let a = MatrixS::from_i64(f, &[&[1, 2], &[3, 4]]);
        let b = MatrixS::zeros(f, 2, 2);
        let gamma = VectorS::from_i64(f, &[2, 1]);
        let t = TnTriple { a: a.clone(), b, gamma: gamma.clone() };
        assert!(tn_is_member(&t));
        let alg = tn_algebra(&t).unwrap();
        assert!(leibniz_defect(alg.tensor()).is_empty());
        let e = |i| VectorS::unit(f, 3, i);
        // {E_1, E_3} = a_11 E_1 + a_21 E_2 = column 1 of A.
        let mut expect = VectorS::zeros(f, 3);
        expect[0] = a[(0, 0)].clone();
        expect[1] = a[(1, 0)].clone();
        assert_eq!(alg.bracket(&e(0), &e(2)).unwrap(), expect);
        // {E_3, E_3} = gamma.
        let mut expect = VectorS::zeros(f, 3);
        expect[0] = gamma[0].clone();
        expect[1] = gamma[1].clone();
        assert_eq!(alg.bracket(&e(2), &e(2)).unwrap(), expect);
    }

    #[test]
    fn budget_error() {
        let err = tn_enumerate(3, gf(251), DEFAULT_CAP).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { params: 21, .. }));
    }
}
