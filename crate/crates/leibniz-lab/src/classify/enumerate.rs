//! Exhaustive enumeration of crossed systems over a prime field, and the
//! dispatcher that picks between it and the structured one-dimensional
//! solver.

use rayon::prelude::*;

use super::coflag::coflag_ghl2;
use super::{ClassificationReport, Component, ComponentKey, Representative, REPRESENTATIVE_LIMIT};
use crate::algebra::{LeibnizAlgebra, StructureTensor};
use crate::crossed::{Bilin, CrossedSystem, PreCrossedDatum};
use crate::equiv::quotient;
use crate::error::{Error, Result};
use crate::field::Scalar;

/// Coefficient count of the naive candidate space.
pub fn parameter_count(l_dim: usize, g_dim: usize) -> u32 {
    let (m, n) = (l_dim, g_dim);
    (n * m * n + m * n * n + m * m * n + n * n * n) as u32
}

/// Number of raw candidates for an instance, after the budget check.
pub fn candidate_count(l: &LeibnizAlgebra, g_dim: usize, cap: u64) -> Result<u64> {
    let p = l
        .field()
        .modulus()
        .ok_or_else(|| Error::Unsupported("exhaustive enumeration needs a prime field".into()))?;
    crate::linalg::budget_check(p, parameter_count(l.dim(), g_dim), cap)
}

/// The index-th pre-crossed datum in lexicographic coefficient order.
pub fn candidate_at(l: &LeibnizAlgebra, g_dim: usize, index: u64) -> PreCrossedDatum {
    decode_candidate(l, g_dim, index)
}

fn decode_candidate(l: &LeibnizAlgebra, g_dim: usize, index: u64) -> PreCrossedDatum {
    let field = l.field();
    let p = field.modulus().expect("prime field enumeration");
    let m = l.dim();
    let n = g_dim;
    let params = parameter_count(m, n) as usize;
    let mut digits = vec![field.zero(); params];
    let mut rem = index;
    for slot in (0..params).rev() {
        digits[slot] = field.element(rem % p);
        rem /= p;
    }
    let mut it = digits.into_iter();
    let mut take = |count: usize| -> Vec<Scalar> { it.by_ref().take(count).collect() };
    let left = Bilin::from_entries(field, n, m, n, take(n * m * n)).expect("shape");
    let right = Bilin::from_entries(field, m, n, n, take(m * n * n)).expect("shape");
    let cocycle = Bilin::from_entries(field, m, m, n, take(m * m * n)).expect("shape");
    let g_bracket = StructureTensor::from_entries(field, n, take(n * n * n)).expect("shape");
    PreCrossedDatum::new(l.clone(), g_dim, left, right, cocycle, g_bracket).expect("shapes agree")
}

/// Every pre-crossed datum of L by a g of the given dimension, filtered by
/// the validator, in lexicographic coefficient order.
pub fn enumerate_crossed_systems(
    l: &LeibnizAlgebra,
    g_dim: usize,
    cap: u64,
) -> Result<Vec<CrossedSystem>> {
    let field = l.field();
    let p = field.modulus().ok_or_else(|| {
        Error::Unsupported("exhaustive enumeration needs a prime field".into())
    })?;
    let _ = p;
    let count = candidate_count(l, g_dim, cap)?;
    let systems: Vec<CrossedSystem> = (0..count)
        .into_par_iter()
        .filter_map(|idx| {
            let datum = decode_candidate(l, g_dim, idx);
            datum.validate().valid().then(|| CrossedSystem::new(datum).expect("just validated"))
        })
        .collect();
    Ok(systems)
}

/// Classify by full enumeration plus the pairwise quotient. Kept as the
/// cross-check path for small instances; the one-dimensional solver is
/// preferred whenever it applies.
pub fn compute_ghl2_enumerated(
    l: &LeibnizAlgebra,
    g_dim: usize,
    cap: u64,
) -> Result<ClassificationReport> {
    let field = l.field();
    let p = field
        .modulus()
        .ok_or_else(|| Error::Unsupported("exhaustive enumeration needs a prime field".into()))?;
    let total = (p as u128).saturating_pow(parameter_count(l.dim(), g_dim));
    let systems = enumerate_crossed_systems(l, g_dim, cap)?;
    let valid_count = systems.len() as u128;

    // Partition by the kernel bracket: the relation never crosses it.
    let mut brackets: Vec<StructureTensor> = Vec::new();
    let mut groups: Vec<Vec<CrossedSystem>> = Vec::new();
    for s in systems {
        let gb = s.datum().g_bracket().clone();
        match brackets.iter().position(|b| *b == gb) {
            Some(i) => groups[i].push(s),
            None => {
                brackets.push(gb);
                groups.push(vec![s]);
            }
        }
    }
    let mut order: Vec<usize> = (0..brackets.len()).collect();
    order.sort_by(|&a, &b| brackets[a].entries().cmp(brackets[b].entries()));

    let mut components = Vec::new();
    let mut orbit_count: u128 = 0;
    for gi in order {
        let group = &groups[gi];
        let q = quotient(group, cap)?;
        orbit_count += q.orbits.len() as u128;
        let mut reps = Vec::new();
        let mut truncated = false;
        for &idx in &q.representatives {
            if reps.len() >= REPRESENTATIVE_LIMIT {
                truncated = true;
                break;
            }
            let datum = group[idx].datum().clone();
            reps.push(Representative { product: datum.product_tensor_unconditional(), datum });
        }
        components.push(Component {
            key: ComponentKey::GBracket(brackets[gi].clone()),
            size: group.len() as u128,
            class_count: Some(q.orbits.len() as u128),
            representatives: reps,
            representatives_truncated: truncated,
        });
    }

    Ok(ClassificationReport {
        l: l.clone(),
        g_dim,
        field,
        total_candidates: total,
        valid_count,
        orbit_count: Some(orbit_count),
        components,
    })
}

/// Classify crossed systems of L by a g_dim-dimensional kernel. A line
/// kernel always routes through the structured co-flag solver (the naive
/// space is p^(m^2 + 2m + 1) and already infeasible for a 3-dimensional
/// perfect base); other kernels enumerate under the cap.
pub fn compute_ghl2(l: &LeibnizAlgebra, g_dim: usize, cap: u64) -> Result<ClassificationReport> {
    if g_dim == 1 {
        coflag_ghl2(l, cap)
    } else {
        compute_ghl2_enumerated(l, g_dim, cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::samples;
    use crate::field::FieldSpec;
    use crate::DEFAULT_CAP;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn dim1_gf2_sixteen_candidates_five_valid() {
        let l = samples::abelian(gf(2), 1);
        let systems = enumerate_crossed_systems(&l, 1, DEFAULT_CAP).unwrap();
        assert_eq!(parameter_count(1, 1), 4);
        assert_eq!(systems.len(), 5);
        // The trivial datum is always among the valid ones.
        assert!(systems.iter().any(|s| {
            s.datum().left().is_zero()
                && s.datum().right().is_zero()
                && s.datum().cocycle().is_zero()
                && s.datum().g_bracket().is_zero()
        }));
    }

    #[test]
    fn dim1_gf3_census() {
        let l = samples::abelian(gf(3), 1);
        let systems = enumerate_crossed_systems(&l, 1, DEFAULT_CAP).unwrap();
        assert_eq!(systems.len(), 11);
        let report = compute_ghl2_enumerated(&l, 1, DEFAULT_CAP).unwrap();
        assert_eq!(report.total_candidates, 81);
        assert_eq!(report.orbit_count, Some(7));
        // Only the abelian kernel bracket survives in a one-dimensional kernel.
        assert_eq!(report.components.len(), 1);
    }

    #[test]
    fn budget_error_reports_parameter_count() {
        let l = samples::sl2(gf(3)).unwrap();
        let err = enumerate_crossed_systems(&l, 1, DEFAULT_CAP).unwrap_err();
        match err {
            Error::BudgetExceeded { base, params, .. } => {
                assert_eq!(base, 3);
                assert_eq!(params, 16);
                let msg = err.to_string();
                assert!(msg.contains("16"), "{msg}");
            }
            other => panic!("expected budget error, got {other}"),
        }
    }

    #[test]
    fn dispatcher_routes_lines_through_the_structured_solver() {
        // sl(2) over GF(5) with a line kernel is far over the naive budget,
        // so only the structured path can answer; it reports a single class.
        let l = samples::sl2(gf(5)).unwrap();
        let report = compute_ghl2(&l, 1, DEFAULT_CAP).unwrap();
        assert_eq!(report.orbit_count, Some(1));
    }

    #[test]
    fn enumerated_and_structured_paths_agree() {
        for (l, p) in [
            (samples::abelian(gf(2), 1), 2u64),
            (samples::abelian(gf(3), 1), 3),
            (samples::abelian(gf(2), 2), 2),
            (samples::dim2_metabelian(gf(2), 1, 0), 2),
            (samples::dim2_lie(gf(3), 1), 3),
        ] {
            let _ = p;
            let by_enum = compute_ghl2_enumerated(&l, 1, DEFAULT_CAP).unwrap();
            let by_coflag = coflag_ghl2(&l, DEFAULT_CAP).unwrap();
            assert_eq!(by_enum.orbit_count, by_coflag.orbit_count, "dim {}", l.dim());
            assert_eq!(by_enum.valid_count, by_coflag.valid_count);
        }
    }
}
