//! The cohomologous relation between crossed systems: witness verification,
//! the comparison isomorphism ψ_r, the decision procedure, and orbit
//! quotients.
//!
//! Two systems over the same L and g are cohomologous when their g brackets
//! agree and a linear map r : L -> g satisfies
//!
//! ```text
//! g ◁ x = g ◁' x + [g, r(x)]_g
//! x ▷ g = x ▷' g + [r(x), g]_g
//! f(x,y) = f'(x,y) + [r(x), r(y)]_g - r([x,y]) + x ▷' r(y) + r(x) ◁' y
//! ```
//!
//! For an abelian g bracket the quadratic term vanishes and the conditions
//! force ◁ = ◁', ▷ = ▷' with f - f' a coboundary, a pure linear solve. For a
//! nonabelian bracket over a prime field the witness space is finite and is
//! searched exhaustively under the enumeration cap; over the rationals there
//! is no finite decision procedure and the call reports unsupported.

use std::collections::HashMap;

use crate::algebra::evaluate_bracket;
use crate::crossed::{CrossedSystem, PreCrossedDatum};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{solve_linear, vector_at, MatrixS, SolveOutcome, VectorS};

/// A linear map r : L -> g witnessing the relation, as an n x m matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub r: MatrixS,
}

/// How a relation was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    LinearSolve,
    BruteForce,
}

/// Outcome of the decision procedure; `witness` is present exactly when
/// `related` holds and always passes [`verify_witness`].
#[derive(Clone, Debug)]
pub struct EquivalenceResult {
    pub related: bool,
    pub witness: Option<Witness>,
    pub method: Method,
}

fn check_shapes(s: &PreCrossedDatum, s2: &PreCrossedDatum) -> Result<()> {
    if s.field() != s2.field() {
        return Err(Error::FieldMismatch);
    }
    if s.l_dim() != s2.l_dim() || s.g_dim() != s2.g_dim() || s.base() != s2.base() {
        return Err(Error::DimensionMismatch(
            "systems must share the base algebra L and the kernel dimension".into(),
        ));
    }
    Ok(())
}

/// Check the witness equations on all basis tuples.
pub fn verify_witness(s: &PreCrossedDatum, s2: &PreCrossedDatum, r: &Witness) -> Result<bool> {
    check_shapes(s, s2)?;
    let n = s.g_dim();
    let m = s.l_dim();
    if r.r.rows() != n || r.r.cols() != m {
        return Err(Error::DimensionMismatch(format!(
            "witness must be {n}x{m}, got {}x{}",
            r.r.rows(),
            r.r.cols()
        )));
    }
    if s.g_bracket() != s2.g_bracket() {
        return Ok(false);
    }
    let gb = s.g_bracket();
    let r = &r.r;
    for gi in 0..n {
        for x in 0..m {
            let lhs = s.left().apply_basis(gi, x);
            let rhs = s2.left().apply_basis(gi, x).add(&gb.bracket_basis_vec(gi, &r.col(x)));
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    for x in 0..m {
        for gj in 0..n {
            let lhs = s.right().apply_basis(x, gj);
            let rhs = s2.right().apply_basis(x, gj).add(&gb.bracket_vec_basis(&r.col(x), gj));
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    let lt = s.base().tensor();
    for x in 0..m {
        for y in 0..m {
            let lhs = s.cocycle().apply_basis(x, y);
            let mut rhs = s2.cocycle().apply_basis(x, y);
            rhs = rhs.add(&evaluate_bracket(gb, &r.col(x), &r.col(y))?);
            rhs = rhs.sub(&r.mul_vec(&lt.bracket_basis(x, y)));
            rhs = rhs.add(&s2.right().apply_basis_vec(x, &r.col(y)));
            rhs = rhs.add(&s2.left().apply_vec_basis(&r.col(x), y));
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// ψ_r as a block matrix [[I, r], [0, I]] on g x L coordinates; ψ_r(g, x) =
/// (g + r(x), x), so ψ_r ∘ ψ_{-r} = id.
pub fn psi_of_witness(r: &Witness) -> MatrixS {
    let n = r.r.rows();
    let m = r.r.cols();
    let f = r.r.field();
    let mut psi = MatrixS::identity(f, n + m);
    for i in 0..n {
        for j in 0..m {
            psi[(i, n + j)] = r.r[(i, j)].clone();
        }
    }
    psi
}

/// Transport a structure tensor along an invertible map p: the bracket of
/// the image algebra, [u,v]' = p([p^-1 u, p^-1 v]).
pub fn transport_tensor(
    t: &crate::algebra::StructureTensor,
    p: &MatrixS,
) -> Result<crate::algebra::StructureTensor> {
    let d = t.dim();
    if p.rows() != d || p.cols() != d {
        return Err(Error::DimensionMismatch("transport map must be square of matching size".into()));
    }
    let p_inv = p
        .inverse()
        .ok_or_else(|| Error::InvalidInput("transport map is not invertible".into()))?;
    let mut out = crate::algebra::StructureTensor::zeros(t.field(), d);
    for i in 0..d {
        for j in 0..d {
            let v = p.mul_vec(&evaluate_bracket(t, &p_inv.col(i), &p_inv.col(j))?);
            for k in 0..d {
                out.set(i, j, k, v[k].clone());
            }
        }
    }
    Ok(out)
}

/// Decide the relation between two validated systems.
pub fn find_witness(a: &CrossedSystem, b: &CrossedSystem, cap: u64) -> Result<EquivalenceResult> {
    let s = a.datum();
    let s2 = b.datum();
    check_shapes(s, s2)?;
    // Different g brackets are never related.
    if s.g_bracket() != s2.g_bracket() {
        return Ok(EquivalenceResult { related: false, witness: None, method: Method::LinearSolve });
    }
    if s.g_bracket().is_zero() {
        find_witness_linear(s, s2)
    } else {
        find_witness_brute(s, s2, cap)
    }
}

/// Abelian-kernel path: the actions must match on the nose and f - f' must
/// be in the image of the coboundary map, which is linear in r.
fn find_witness_linear(s: &PreCrossedDatum, s2: &PreCrossedDatum) -> Result<EquivalenceResult> {
    let miss = EquivalenceResult { related: false, witness: None, method: Method::LinearSolve };
    if s.left() != s2.left() || s.right() != s2.right() {
        return Ok(miss);
    }
    let f = s.field();
    let n = s.g_dim();
    let m = s.l_dim();
    let lt = s.base().tensor();
    // Unknowns: r as n*m entries, column-major by L index (r(e_x) = column x).
    let unknowns = n * m;
    let var = |gi: usize, x: usize| x * n + gi;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs_entries: Vec<Scalar> = Vec::new();
    for x in 0..m {
        for y in 0..m {
            let target = s.cocycle().apply_basis(x, y).sub(&s2.cocycle().apply_basis(x, y));
            // f - f' = -r([x,y]) + x ▷' r(y) + r(x) ◁' y, linear in r.
            for k in 0..n {
                let mut row = vec![f.zero(); unknowns];
                // -r([x,y]) component k: -sum_l [x,y]_l r[k][l]
                let v = lt.bracket_basis(x, y);
                for l in 0..m {
                    if !v[l].is_zero() {
                        let idx = var(k, l);
                        row[idx] = f.sub(&row[idx], &v[l]);
                    }
                }
                // (x ▷' r(y))_k = sum_g r[g][y] right'[x][g][k]
                for gi in 0..n {
                    let c = s2.right().get(x, gi, k).clone();
                    if !c.is_zero() {
                        let idx = var(gi, y);
                        row[idx] = f.add(&row[idx], &c);
                    }
                }
                // (r(x) ◁' y)_k = sum_g r[g][x] left'[g][y][k]
                for gi in 0..n {
                    let c = s2.left().get(gi, y, k).clone();
                    if !c.is_zero() {
                        let idx = var(gi, x);
                        row[idx] = f.add(&row[idx], &c);
                    }
                }
                rows.push(row);
                rhs_entries.push(target[k].clone());
            }
        }
    }
    let mat = MatrixS::from_rows(f, rows)?;
    let rhs = VectorS::from_entries(f, rhs_entries);
    match solve_linear(&mat, &rhs)? {
        SolveOutcome::NoSolution => Ok(miss),
        SolveOutcome::Solution { particular, .. } => {
            let mut r = MatrixS::zeros(f, n, m);
            for x in 0..m {
                for gi in 0..n {
                    r[(gi, x)] = particular[var(gi, x)].clone();
                }
            }
            let witness = Witness { r };
            debug_assert!(verify_witness(s, s2, &witness)?);
            Ok(EquivalenceResult { related: true, witness: Some(witness), method: Method::LinearSolve })
        }
    }
}

/// Nonabelian-kernel path: exhaust all p^(n*m) candidate witnesses.
fn find_witness_brute(s: &PreCrossedDatum, s2: &PreCrossedDatum, cap: u64) -> Result<EquivalenceResult> {
    let f = s.field();
    let n = s.g_dim();
    let m = s.l_dim();
    let p = f.modulus().ok_or_else(|| {
        Error::Unsupported(
            "no decision procedure for a nonabelian kernel bracket over the rationals".into(),
        )
    })?;
    let params = (n * m) as u32;
    let count = crate::linalg::budget_check(p, params, cap)?;
    for idx in 0..count {
        let flat = vector_at(n * m, f, idx);
        let mut r = MatrixS::zeros(f, n, m);
        for x in 0..m {
            for gi in 0..n {
                r[(gi, x)] = flat[x * n + gi].clone();
            }
        }
        let witness = Witness { r };
        if verify_witness(s, s2, &witness)? {
            return Ok(EquivalenceResult {
                related: true,
                witness: Some(witness),
                method: Method::BruteForce,
            });
        }
    }
    Ok(EquivalenceResult { related: false, witness: None, method: Method::BruteForce })
}

/// Orbit partition of a list of systems under the relation.
#[derive(Clone, Debug)]
pub struct QuotientResult {
    /// Index sets per orbit, each sorted; orbits ordered by their
    /// representative's coefficient key.
    pub orbits: Vec<Vec<usize>>,
    /// Per orbit, the index of the member with the lexicographically
    /// smallest flattened coefficient tuple.
    pub representatives: Vec<usize>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Partition systems into orbits. Pairs are examined in a fixed order and
/// pairs already known equivalent are skipped, which is sound because the
/// relation is transitive.
pub fn quotient(systems: &[CrossedSystem], cap: u64) -> Result<QuotientResult> {
    let mut uf = UnionFind::new(systems.len());
    for i in 0..systems.len() {
        for j in (i + 1)..systems.len() {
            if uf.find(i) == uf.find(j) {
                continue;
            }
            // The g-bracket gate makes unrelated pairs cheap; group lookups
            // are not needed at desk scale.
            if find_witness(&systems[i], &systems[j], cap)?.related {
                uf.union(i, j);
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..systems.len() {
        groups.entry(uf.find(i)).or_default().push(i);
    }
    let mut orbits: Vec<Vec<usize>> = groups.into_values().collect();
    for orbit in &mut orbits {
        orbit.sort_unstable();
    }
    let representatives: Vec<usize> = orbits
        .iter()
        .map(|orbit| {
            *orbit
                .iter()
                .min_by(|&&a, &&b| {
                    systems[a]
                        .datum()
                        .coefficient_key()
                        .cmp(&systems[b].datum().coefficient_key())
                })
                .expect("orbits are nonempty")
        })
        .collect();
    let mut order: Vec<usize> = (0..orbits.len()).collect();
    order.sort_by(|&a, &b| {
        systems[representatives[a]]
            .datum()
            .coefficient_key()
            .cmp(&systems[representatives[b]].datum().coefficient_key())
    });
    Ok(QuotientResult {
        orbits: order.iter().map(|&i| orbits[i].clone()).collect(),
        representatives: order.iter().map(|&i| representatives[i]).collect(),
    })
}
