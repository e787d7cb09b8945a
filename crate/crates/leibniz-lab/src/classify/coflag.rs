//! One-dimensional kernels via co-flag data.
//!
//! A co-flag datum of L is a triple (λ, Λ, f) with λ, Λ : L -> k and
//! f : L x L -> k bilinear such that
//!
//! ```text
//! λ([x,y]) = Λ([x,y]) = 0,    Λ(x)Λ(y) = -Λ(x)λ(y),
//! f([x,y],z) - f([x,z],y) - f(x,[y,z]) = Λ(x)f(y,z) - λ(z)f(x,y) + λ(y)f(x,z)
//! ```
//!
//! Such triples are exactly the crossed systems of L by a line, and two of
//! them are cohomologous iff the weights agree and f - f' lies in the image
//! of r -> -r([x,y]) + Λ(x)r(y) + r(x)λ(y). Everything here is linear
//! algebra per weight pair, so no global enumeration is ever needed; this is
//! what makes perfect base algebras (only the zero pair survives) tractable
//! over any field.

use super::{ClassificationReport, Component, ComponentKey, Representative, REPRESENTATIVE_LIMIT};
use crate::algebra::{derived_subalgebra, LeibnizAlgebra, StructureTensor};
use crate::crossed::{crossed_product, Bilin, CrossedSystem, PreCrossedDatum};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{enumeration_count, vector_at, MatrixS, Subspace, VectorS};

/// A validated co-flag datum of L.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoflagDatum {
    /// λ, the weight of the right L-action on the line (g ◁ x = λ(x) g).
    pub lambda: VectorS,
    /// Λ, the weight of the left L-action (x ▷ g = Λ(x) g).
    pub big_lambda: VectorS,
    /// The scalar cocycle on basis pairs.
    pub f: MatrixS,
}

impl CoflagDatum {
    pub fn new(l: &LeibnizAlgebra, lambda: VectorS, big_lambda: VectorS, f: MatrixS) -> Result<Self> {
        let m = l.dim();
        if lambda.dim() != m || big_lambda.dim() != m || f.rows() != m || f.cols() != m {
            return Err(Error::DimensionMismatch(
                "co-flag datum shapes must match the base algebra".into(),
            ));
        }
        let d = CoflagDatum { lambda, big_lambda, f };
        if !d.satisfies_conditions(l) {
            return Err(Error::InvalidInput("not a co-flag datum of this algebra".into()));
        }
        Ok(d)
    }

    fn satisfies_conditions(&self, l: &LeibnizAlgebra) -> bool {
        let field = l.field();
        let m = l.dim();
        let lt = l.tensor();
        let dot = |w: &VectorS, v: &VectorS| {
            let mut acc = field.zero();
            for i in 0..m {
                acc = field.add(&acc, &field.mul(&w[i], &v[i]));
            }
            acc
        };
        for x in 0..m {
            for y in 0..m {
                let br = lt.bracket_basis(x, y);
                if !dot(&self.lambda, &br).is_zero() || !dot(&self.big_lambda, &br).is_zero() {
                    return false;
                }
                let quad = field.add(
                    &field.mul(&self.big_lambda[x], &self.big_lambda[y]),
                    &field.mul(&self.big_lambda[x], &self.lambda[y]),
                );
                if !quad.is_zero() {
                    return false;
                }
            }
        }
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    if !cocycle_defect(l, &self.lambda, &self.big_lambda, &self.f, x, y, z)
                        .is_zero()
                    {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// f([x,y],z) - f([x,z],y) - f(x,[y,z]) - Λ(x)f(y,z) + λ(z)f(x,y) - λ(y)f(x,z)
fn cocycle_defect(
    l: &LeibnizAlgebra,
    lambda: &VectorS,
    big_lambda: &VectorS,
    f: &MatrixS,
    x: usize,
    y: usize,
    z: usize,
) -> Scalar {
    let field = l.field();
    let lt = l.tensor();
    let m = l.dim();
    let f_vec_basis = |v: &VectorS, j: usize| {
        let mut acc = field.zero();
        for i in 0..m {
            acc = field.add(&acc, &field.mul(&v[i], &f[(i, j)]));
        }
        acc
    };
    let f_basis_vec = |i: usize, v: &VectorS| {
        let mut acc = field.zero();
        for j in 0..m {
            acc = field.add(&acc, &field.mul(&v[j], &f[(i, j)]));
        }
        acc
    };
    let mut acc = f_vec_basis(&lt.bracket_basis(x, y), z);
    acc = field.sub(&acc, &f_vec_basis(&lt.bracket_basis(x, z), y));
    acc = field.sub(&acc, &f_basis_vec(x, &lt.bracket_basis(y, z)));
    acc = field.sub(&acc, &field.mul(&big_lambda[x], &f[(y, z)]));
    acc = field.add(&acc, &field.mul(&lambda[z], &f[(x, y)]));
    acc = field.sub(&acc, &field.mul(&lambda[y], &f[(x, z)]));
    acc
}

/// The crossed system of L by a line carried by a co-flag datum:
/// g ◁ x = λ(x) g, x ▷ g = Λ(x) g, f scalar, zero kernel bracket.
pub fn coflag_to_system(l: &LeibnizAlgebra, d: &CoflagDatum) -> Result<CrossedSystem> {
    let field = l.field();
    let m = l.dim();
    let mut left = Bilin::zeros(field, 1, m, 1);
    let mut right = Bilin::zeros(field, m, 1, 1);
    let mut cocycle = Bilin::zeros(field, m, m, 1);
    for x in 0..m {
        left.set(0, x, 0, d.lambda[x].clone());
        right.set(x, 0, 0, d.big_lambda[x].clone());
        for y in 0..m {
            cocycle.set(x, y, 0, d.f[(x, y)].clone());
        }
    }
    let datum = PreCrossedDatum::new(
        l.clone(),
        1,
        left,
        right,
        cocycle,
        StructureTensor::zeros(field, 1),
    )?;
    CrossedSystem::new(datum)
}

/// The (dim L + 1)-dimensional algebra carried by a co-flag datum.
pub fn coflag_algebra(l: &LeibnizAlgebra, d: &CoflagDatum) -> Result<LeibnizAlgebra> {
    Ok(crossed_product(&coflag_to_system(l, d)?))
}

/// The f-solution space attached to one admissible weight pair: the kernel
/// of the cocycle system, flattened row-major to length m^2.
#[derive(Clone, Debug)]
pub struct CoflagPairSpace {
    pub lambda: VectorS,
    pub big_lambda: VectorS,
    pub f_basis: Vec<VectorS>,
}

impl CoflagPairSpace {
    pub fn f_dim(&self) -> usize {
        self.f_basis.len()
    }
}

fn unflatten(field: FieldSpec, m: usize, flat: &VectorS) -> MatrixS {
    let mut out = MatrixS::zeros(field, m, m);
    for x in 0..m {
        for y in 0..m {
            out[(x, y)] = flat[x * m + y].clone();
        }
    }
    out
}

/// All co-flag data of L, described structurally: one f-space per admissible
/// weight pair. Steps: (i) weights are constrained to the annihilator of
/// [L, L]; (ii) the surviving pairs are filtered by the quadratic condition
/// (enumerated over a prime field; over the rationals only a perfect base,
/// where the annihilator is zero, avoids an infinite search); (iii) per
/// pair, the f cocycle condition is a homogeneous linear system, returned
/// as a kernel basis.
pub fn coflag_data(l: &LeibnizAlgebra, cap: u64) -> Result<Vec<CoflagPairSpace>> {
    let field = l.field();
    let m = l.dim();
    let derived = derived_subalgebra(l);

    // Annihilator of the derived subalgebra.
    let ann: Vec<VectorS> = if derived.is_zero() {
        (0..m).map(|i| VectorS::unit(field, m, i)).collect()
    } else {
        let rows: Vec<Vec<Scalar>> =
            derived.basis().iter().map(|v| v.entries().to_vec()).collect();
        MatrixS::from_rows(field, rows)?.kernel_basis()
    };

    let pairs: Vec<(VectorS, VectorS)> = if ann.is_empty() {
        vec![(VectorS::zeros(field, m), VectorS::zeros(field, m))]
    } else {
        if !field.is_prime_field() {
            return Err(Error::Unsupported(
                "weight-pair enumeration over the rationals needs a perfect base algebra; \
                 use a prime field"
                    .into(),
            ));
        }
        let a = ann.len();
        let count = enumeration_count(2 * a, field, cap)?;
        let mut pairs = Vec::new();
        for idx in 0..count {
            let coeffs = vector_at(2 * a, field, idx);
            let mut lambda = VectorS::zeros(field, m);
            let mut big = VectorS::zeros(field, m);
            for (t, base) in ann.iter().enumerate() {
                lambda.add_scaled(&coeffs[t], base);
                big.add_scaled(&coeffs[a + t], base);
            }
            pairs.push((lambda, big));
        }
        pairs
    };

    let mut out = Vec::new();
    for (lambda, big_lambda) in pairs {
        // Quadratic gate: Λ(x)Λ(y) + Λ(x)λ(y) = 0 on basis pairs.
        let ok = (0..m).all(|x| {
            (0..m).all(|y| {
                field
                    .add(
                        &field.mul(&big_lambda[x], &big_lambda[y]),
                        &field.mul(&big_lambda[x], &lambda[y]),
                    )
                    .is_zero()
            })
        });
        if !ok {
            continue;
        }
        // Linear system for f: unknowns f[xy] (row-major), one equation per
        // basis triple.
        let lt = l.tensor();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    let mut row = vec![field.zero(); m * m];
                    let mut bump = |i: usize, j: usize, c: &Scalar| {
                        row[i * m + j] = field.add(&row[i * m + j], c);
                    };
                    let bxy = lt.bracket_basis(x, y);
                    for i in 0..m {
                        if !bxy[i].is_zero() {
                            bump(i, z, &bxy[i].clone());
                        }
                    }
                    let bxz = lt.bracket_basis(x, z);
                    for i in 0..m {
                        if !bxz[i].is_zero() {
                            bump(i, y, &field.neg(&bxz[i]));
                        }
                    }
                    let byz = lt.bracket_basis(y, z);
                    for j in 0..m {
                        if !byz[j].is_zero() {
                            bump(x, j, &field.neg(&byz[j]));
                        }
                    }
                    bump(y, z, &field.neg(&big_lambda[x]));
                    bump(x, y, &lambda[z].clone());
                    bump(x, z, &field.neg(&lambda[y]));
                    if row.iter().any(|c| !c.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let f_basis = if rows.is_empty() {
            (0..m * m).map(|i| VectorS::unit(field, m * m, i)).collect()
        } else {
            MatrixS::from_rows(field, rows)?.kernel_basis()
        };
        out.push(CoflagPairSpace { lambda, big_lambda, f_basis });
    }
    Ok(out)
}

/// Enumerate the actual co-flag data of one pair space (prime fields).
pub fn enumerate_pair_data(
    l: &LeibnizAlgebra,
    space: &CoflagPairSpace,
    cap: u64,
) -> Result<Vec<CoflagDatum>> {
    let field = l.field();
    let m = l.dim();
    let dim = space.f_dim();
    let count = enumeration_count(dim, field, cap)?;
    let mut out = Vec::with_capacity(count as usize);
    for idx in 0..count {
        let coeffs = vector_at(dim, field, idx);
        let mut flat = VectorS::zeros(field, m * m);
        for (t, base) in space.f_basis.iter().enumerate() {
            flat.add_scaled(&coeffs[t], base);
        }
        out.push(CoflagDatum {
            lambda: space.lambda.clone(),
            big_lambda: space.big_lambda.clone(),
            f: unflatten(field, m, &flat),
        });
    }
    Ok(out)
}

/// The coboundary generators of a pair: delta_l(x,y) = -[x,y]_l + Λ(x)[y=l]
/// + [x=l]λ(y), flattened.
fn coboundary_generators(l: &LeibnizAlgebra, lambda: &VectorS, big_lambda: &VectorS) -> Vec<VectorS> {
    let field = l.field();
    let m = l.dim();
    let lt = l.tensor();
    (0..m)
        .map(|t| {
            let mut flat = VectorS::zeros(field, m * m);
            for x in 0..m {
                for y in 0..m {
                    let mut v = field.neg(&lt.bracket_basis(x, y)[t]);
                    if y == t {
                        v = field.add(&v, &big_lambda[x]);
                    }
                    if x == t {
                        v = field.add(&v, &lambda[y]);
                    }
                    flat[x * m + y] = v;
                }
            }
            flat
        })
        .collect()
}

/// The full classification of crossed systems of L by a line: per weight
/// pair, cocycles modulo coboundaries by pure linear algebra.
pub fn coflag_ghl2(l: &LeibnizAlgebra, cap: u64) -> Result<ClassificationReport> {
    let field = l.field();
    let m = l.dim();
    let spaces = coflag_data(l, cap)?;
    let p = field.modulus();

    let mut components = Vec::new();
    let mut total: u128 = 0;
    let mut orbits: Option<u128> = Some(0);

    for space in &spaces {
        let z = Subspace::from_spanning(field, m * m, space.f_basis.iter().cloned());
        let gens = coboundary_generators(l, &space.lambda, &space.big_lambda);
        let b = Subspace::from_spanning(field, m * m, gens);
        assert!(
            z.contains_subspace(&b),
            "coboundaries must be cocycles for an admissible weight pair"
        );
        let quot_dim = z.dim() - b.dim();

        let (size, class_count) = match p {
            Some(p) => {
                let size = (p as u128).pow(z.dim() as u32);
                (size, Some((p as u128).pow(quot_dim as u32)))
            }
            // Over the rationals the f-space is infinite once positive
            // dimensional; the quotient is a point iff the dims agree.
            None => {
                let size = if z.dim() == 0 { 1 } else { u128::MAX };
                (size, if quot_dim == 0 { Some(1) } else { None })
            }
        };

        // Complement basis of B inside Z gives canonical coset representatives.
        let mut complement: Vec<VectorS> = Vec::new();
        {
            let mut span = b.clone();
            for v in &space.f_basis {
                if !span.contains(v) {
                    complement.push(v.clone());
                    let mut vs: Vec<VectorS> = span.basis().to_vec();
                    vs.push(v.clone());
                    span = Subspace::from_spanning(field, m * m, vs);
                }
            }
            debug_assert_eq!(complement.len(), quot_dim);
        }

        let mut reps = Vec::new();
        let mut truncated = false;
        match (p, class_count) {
            (Some(p), Some(count)) => {
                if count as usize <= REPRESENTATIVE_LIMIT {
                    for idx in 0..count as u64 {
                        let coeffs = vector_at(complement.len(), field, idx);
                        let mut flat = VectorS::zeros(field, m * m);
                        for (t, base) in complement.iter().enumerate() {
                            flat.add_scaled(&coeffs[t], base);
                        }
                        let datum = CoflagDatum {
                            lambda: space.lambda.clone(),
                            big_lambda: space.big_lambda.clone(),
                            f: unflatten(field, m, &flat),
                        };
                        let sys = coflag_to_system(l, &datum)?;
                        reps.push(Representative {
                            product: sys.datum().product_tensor_unconditional(),
                            datum: sys.into_datum(),
                        });
                    }
                } else {
                    truncated = true;
                    let datum = CoflagDatum {
                        lambda: space.lambda.clone(),
                        big_lambda: space.big_lambda.clone(),
                        f: MatrixS::zeros(field, m, m),
                    };
                    let sys = coflag_to_system(l, &datum)?;
                    reps.push(Representative {
                        product: sys.datum().product_tensor_unconditional(),
                        datum: sys.into_datum(),
                    });
                }
                let _ = p;
            }
            _ => {
                // Rational point or infinite family: report the zero cocycle.
                let datum = CoflagDatum {
                    lambda: space.lambda.clone(),
                    big_lambda: space.big_lambda.clone(),
                    f: MatrixS::zeros(field, m, m),
                };
                let sys = coflag_to_system(l, &datum)?;
                reps.push(Representative {
                    product: sys.datum().product_tensor_unconditional(),
                    datum: sys.into_datum(),
                });
                truncated = class_count.is_none();
            }
        }

        total = total.saturating_add(size);
        orbits = match (orbits, class_count) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        components.push(Component {
            key: ComponentKey::CoflagPair {
                lambda: space.lambda.clone(),
                big_lambda: space.big_lambda.clone(),
            },
            size,
            class_count,
            representatives: reps,
            representatives_truncated: truncated,
        });
    }

    components.sort_by(|a, b| {
        let key = |c: &Component| match &c.key {
            ComponentKey::CoflagPair { lambda, big_lambda } => {
                (lambda.clone(), big_lambda.clone())
            }
            _ => unreachable!("co-flag components"),
        };
        key(a).cmp(&key(b))
    });

    Ok(ClassificationReport {
        l: l.clone(),
        g_dim: 1,
        field,
        total_candidates: total,
        valid_count: total,
        orbit_count: orbits,
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{samples, structural_predicates};
    use crate::DEFAULT_CAP;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn perfect_base_has_single_zero_pair() {
        // Perfect base: the only weight pair is (0,0) and the f-space is the
        // classical cocycle space, here 3-dimensional, over GF(5) and Q alike.
        for field in [gf(5), FieldSpec::Rationals] {
            let sl2 = samples::sl2(field).unwrap();
            let spaces = coflag_data(&sl2, DEFAULT_CAP).unwrap();
            assert_eq!(spaces.len(), 1);
            assert!(spaces[0].lambda.is_zero() && spaces[0].big_lambda.is_zero());
            assert_eq!(spaces[0].f_dim(), 3);
        }
    }

    #[test]
    fn sl2_cocycles_are_antisymmetric() {
        let field = FieldSpec::Rationals;
        let sl2 = samples::sl2(field).unwrap();
        let spaces = coflag_data(&sl2, DEFAULT_CAP).unwrap();
        for flat in &spaces[0].f_basis {
            let f = unflatten(field, 3, flat);
            for i in 0..3 {
                assert!(f[(i, i)].is_zero());
                for j in 0..3 {
                    assert!(field.add(&f[(i, j)], &f[(j, i)]).is_zero());
                }
            }
        }
    }

    #[test]
    fn nonperfect_rational_base_is_unsupported() {
        let l = samples::abelian(FieldSpec::Rationals, 2);
        assert!(matches!(coflag_data(&l, DEFAULT_CAP), Err(Error::Unsupported(_))));
    }

    #[test]
    fn dim3_base_pair_spaces_match_hand_solution() {
        // Base [e1,e3] = e2, [e3,e3] = e1 over GF(3): three zero-weight
        // pairs of f-dimension 3 (81 data) and two opposite-weight pairs of
        // f-dimension 2 (18 data).
        let l = samples::dim3_coflag_base(gf(3));
        let spaces = coflag_data(&l, DEFAULT_CAP).unwrap();
        assert_eq!(spaces.len(), 5);
        let zero_pairs: Vec<_> = spaces.iter().filter(|s| s.big_lambda.is_zero()).collect();
        let nonzero: Vec<_> = spaces.iter().filter(|s| !s.big_lambda.is_zero()).collect();
        assert_eq!(zero_pairs.len(), 3);
        assert_eq!(nonzero.len(), 2);
        let size1: u128 = zero_pairs.iter().map(|s| 3u128.pow(s.f_dim() as u32)).sum();
        let size2: u128 = nonzero.iter().map(|s| 3u128.pow(s.f_dim() as u32)).sum();
        assert_eq!(size1, 81);
        assert_eq!(size2, 18);
        // Lambda nonzero forces lambda = -Lambda.
        for s in nonzero {
            assert_eq!(s.lambda, s.big_lambda.neg());
        }
    }

    #[test]
    fn coflag_systems_validate_and_build_known_brackets() {
        // The (a,b,c,d) datum family over the 3-dim base, from the table:
        // lambda(e3) = a, Lambda = 0, f(e1,e3) = b, f(e2,e3) = c, f(e3,e3) = d.
        let field = gf(3);
        let l = samples::dim3_coflag_base(field);
        let (a, b, c, d) = (2, 1, 0, 2);
        let lambda = VectorS::from_i64(field, &[0, 0, a]);
        let big = VectorS::zeros(field, 3);
        let mut f = MatrixS::zeros(field, 3, 3);
        f[(0, 2)] = field.from_i64(b);
        f[(1, 2)] = field.from_i64(c);
        f[(2, 2)] = field.from_i64(d);
        let datum = CoflagDatum::new(&l, lambda, big, f).unwrap();
        let alg = coflag_algebra(&l, &datum).unwrap();
        // Product basis: f4 = line (index 0), f1..f3 = base (indices 1..3).
        // {f3,f3} = f1 + d f4, {f4,f3} = a f4, {f1,f3} = f2 + b f4.
        let e = |i| VectorS::unit(field, 4, i);
        let mut expect = VectorS::zeros(field, 4);
        expect[1] = field.one();
        expect[0] = field.from_i64(d);
        assert_eq!(alg.bracket(&e(3), &e(3)).unwrap(), expect);
        assert_eq!(alg.bracket(&e(0), &e(3)).unwrap(), e(0).scale(&field.from_i64(a)));
        let mut expect = VectorS::zeros(field, 4);
        expect[2] = field.one();
        expect[0] = field.from_i64(b);
        assert_eq!(alg.bracket(&e(1), &e(3)).unwrap(), expect);
    }

    #[test]
    fn dim4_u_family_brackets() {
        // The (u, beta, gamma) family: lambda(e3) = -u, Lambda(e3) = u,
        // f(e1,e3)=beta, f(e2,e3)=u beta - u^2 gamma, f(e3,e1)=-u gamma,
        // f(e3,e2)=u^2 gamma - u beta, f(e3,e3)=gamma.
        let field = gf(5);
        let l = samples::dim3_coflag_base(field);
        let (u, beta, gamma) = (2i64, 3i64, 1i64);
        let lambda = VectorS::from_i64(field, &[0, 0, -u]);
        let big = VectorS::from_i64(field, &[0, 0, u]);
        let mut f = MatrixS::zeros(field, 3, 3);
        f[(0, 2)] = field.from_i64(beta);
        f[(1, 2)] = field.from_i64(u * beta - u * u * gamma);
        f[(2, 0)] = field.from_i64(-u * gamma);
        f[(2, 1)] = field.from_i64(u * u * gamma - u * beta);
        f[(2, 2)] = field.from_i64(gamma);
        let datum = CoflagDatum::new(&l, lambda, big, f).unwrap();
        let alg = coflag_algebra(&l, &datum).unwrap();
        let e = |i| VectorS::unit(field, 4, i);
        // {f3, f4} = u f4 and {f4, f3} = -u f4 (f4 = line = index 0).
        assert_eq!(alg.bracket(&e(3), &e(0)).unwrap(), e(0).scale(&field.from_i64(u)));
        assert_eq!(alg.bracket(&e(0), &e(3)).unwrap(), e(0).scale(&field.from_i64(-u)));
    }

    #[test]
    fn zero_datum_gives_direct_product() {
        let field = gf(3);
        let l = samples::dim3_coflag_base(field);
        let datum = CoflagDatum::new(
            &l,
            VectorS::zeros(field, 3),
            VectorS::zeros(field, 3),
            MatrixS::zeros(field, 3, 3),
        )
        .unwrap();
        let alg = coflag_algebra(&l, &datum).unwrap();
        let direct =
            crate::algebra::direct_product(&samples::abelian(field, 1), &l).unwrap();
        assert_eq!(alg, direct);
    }

    #[test]
    fn ghl2_counts_for_the_named_bases() {
        // (base, field, expected orbit count): dim-1 abelian over GF(3) gives
        // 7 = 3 + 2 + 2; dim-2 abelian over GF(2) gives 22; the 3-dim base
        // over GF(3) gives 7 = 2 + 3 + 2; sl(2) over GF(5)/GF(7) is a point.
        let cases: Vec<(LeibnizAlgebra, u128)> = vec![
            (samples::abelian(gf(3), 1), 7),
            (samples::abelian(gf(2), 2), 22),
            (samples::dim3_coflag_base(gf(3)), 7),
            (samples::sl2(gf(5)).unwrap(), 1),
            (samples::sl2(gf(7)).unwrap(), 1),
        ];
        for (l, expect) in cases {
            let report = coflag_ghl2(&l, DEFAULT_CAP).unwrap();
            assert_eq!(report.orbit_count, Some(expect), "base dim {}", l.dim());
            assert_eq!(report.sum_components(), Some(expect));
            if structural_predicates(&l).is_perfect {
                assert_eq!(report.components.len(), 1);
            }
        }
    }

    #[test]
    fn sl2_singleton_representative_is_trivial() {
        let report = coflag_ghl2(&samples::sl2(gf(5)).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(report.orbit_count, Some(1));
        let rep = &report.components[0].representatives[0];
        assert!(rep.datum.left().is_zero());
        assert!(rep.datum.right().is_zero());
        assert!(rep.datum.cocycle().is_zero());
    }

    #[test]
    fn representatives_all_validate() {
        let l = samples::abelian(gf(2), 2);
        let report = coflag_ghl2(&l, DEFAULT_CAP).unwrap();
        for comp in &report.components {
            for rep in &comp.representatives {
                assert!(rep.datum.validate().valid());
                assert!(crate::algebra::leibniz_defect(&rep.product).is_empty());
            }
        }
    }
}
