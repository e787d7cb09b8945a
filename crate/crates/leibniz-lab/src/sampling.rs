//! Seeded random generation of *valid* crossed systems.
//!
//! Rejection sampling over raw coefficient space is hopeless (valid systems
//! are a thin slice), so the sampler draws from structured families that are
//! valid by construction — trivial systems over a conjugated kernel bracket,
//! matrix-triple systems solved exactly, co-flag systems from the structured
//! solver — and then twists by random witness maps. Twisting walks within a
//! cohomology class, so it changes every map of the datum while preserving
//! validity; the resulting stream exercises all four maps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{samples, LeibnizAlgebra};
use crate::classify::{coflag_data, coflag_to_system, CoflagDatum};
use crate::crossed::{CrossedSystem, PreCrossedDatum};
use crate::equiv::transport_tensor;
use crate::error::Result;
use crate::field::FieldSpec;
use crate::linalg::{solve_linear, MatrixS, SolveOutcome, VectorS};

pub struct SystemSampler {
    field: FieldSpec,
    rng: ChaCha8Rng,
    /// Largest base-algebra dimension to draw.
    pub max_l_dim: usize,
    /// Largest kernel dimension to draw.
    pub max_g_dim: usize,
}

impl SystemSampler {
    pub fn new(field: FieldSpec, seed: u64) -> Self {
        assert!(field.is_prime_field(), "the sampler draws coefficients from a prime field");
        SystemSampler { field, rng: ChaCha8Rng::seed_from_u64(seed), max_l_dim: 2, max_g_dim: 2 }
    }

    fn scalar(&mut self) -> i64 {
        let p = self.field.modulus().unwrap();
        self.rng.gen_range(0..p) as i64
    }

    fn matrix(&mut self, rows: usize, cols: usize) -> MatrixS {
        let mut m = MatrixS::zeros(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let c = self.scalar();
                m[(i, j)] = self.field.from_i64(c);
            }
        }
        m
    }

    fn invertible(&mut self, n: usize) -> MatrixS {
        loop {
            let m = self.matrix(n, n);
            if m.inverse().is_some() {
                return m;
            }
        }
    }

    fn random_base(&mut self) -> LeibnizAlgebra {
        let dim = self.rng.gen_range(1..=self.max_l_dim);
        match dim {
            1 => samples::abelian(self.field, 1),
            2 => match self.rng.gen_range(0..4) {
                0 => samples::abelian(self.field, 2),
                1 => samples::dim2_metabelian(self.field, self.scalar(), self.scalar()),
                2 => {
                    let p = self.field.modulus().unwrap() as i64;
                    samples::dim2_lie(self.field, self.rng.gen_range(1..p))
                }
                _ => {
                    let (a, c) = (self.scalar(), self.scalar());
                    self.conjugated(&samples::dim2_metabelian(self.field, a, c))
                }
            },
            _ => samples::dim3_coflag_base(self.field),
        }
    }

    /// Transport along a random invertible map; the law is preserved.
    fn conjugated(&mut self, a: &LeibnizAlgebra) -> LeibnizAlgebra {
        let p = self.invertible(a.dim());
        LeibnizAlgebra::new(transport_tensor(a.tensor(), &p).expect("invertible"))
            .expect("transport preserves the law")
    }

    fn random_kernel_bracket(&mut self, n: usize) -> LeibnizAlgebra {
        match n {
            1 => samples::abelian(self.field, 1),
            2 => match self.rng.gen_range(0..3) {
                0 => samples::abelian(self.field, 2),
                _ => {
                    let (a, c) = (self.scalar(), self.scalar());
                    self.conjugated(&samples::dim2_metabelian(self.field, a, c))
                }
            },
            _ => samples::abelian(self.field, n),
        }
    }

    /// A matrix-triple system of the line by k^n: draw B, solve the linear
    /// conditions AB = BA = -B^2 for A, draw γ from the kernel of B.
    fn triple_system(&mut self, n: usize) -> Result<CrossedSystem> {
        let f = self.field;
        loop {
            let b = self.matrix(n, n);
            // Unknown A (n^2, row-major); rows: (AB)_{ik} = -(B^2)_{ik} and
            // (BA)_{ik} = -(B^2)_{ik}.
            let b2 = b.mul_mat(&b).neg();
            let mut rows = Vec::new();
            let mut rhs = Vec::new();
            for i in 0..n {
                for k in 0..n {
                    let mut row = vec![f.zero(); n * n];
                    for j in 0..n {
                        row[i * n + j] = b[(j, k)].clone();
                    }
                    rows.push(row);
                    rhs.push(b2[(i, k)].clone());
                    let mut row = vec![f.zero(); n * n];
                    for j in 0..n {
                        row[j * n + k] = b[(i, j)].clone();
                    }
                    rows.push(row);
                    rhs.push(b2[(i, k)].clone());
                }
            }
            let mat = MatrixS::from_rows(f, rows)?;
            let rhs = VectorS::from_entries(f, rhs);
            let SolveOutcome::Solution { particular, kernel_basis } = solve_linear(&mat, &rhs)?
            else {
                continue;
            };
            let mut flat = particular;
            for k in &kernel_basis {
                let c = f.from_i64(self.scalar());
                flat.add_scaled(&c, k);
            }
            let mut a = MatrixS::zeros(f, n, n);
            for i in 0..n {
                for j in 0..n {
                    a[(i, j)] = flat[i * n + j].clone();
                }
            }
            let mut gamma = VectorS::zeros(f, n);
            for k in &b.kernel_basis() {
                let c = f.from_i64(self.scalar());
                gamma.add_scaled(&c, k);
            }
            let t = crate::classify::TnTriple { a, b, gamma };
            debug_assert!(crate::classify::tn_is_member(&t));
            return crate::classify::tn_to_system(&t);
        }
    }

    fn coflag_system(&mut self, cap: u64) -> Result<CrossedSystem> {
        let l = self.random_base();
        let spaces = coflag_data(&l, cap)?;
        let space = &spaces[self.rng.gen_range(0..spaces.len())];
        let m = l.dim();
        let mut flat = VectorS::zeros(self.field, m * m);
        let coeffs: Vec<_> = (0..space.f_basis.len()).map(|_| self.scalar()).collect();
        for (b, c) in space.f_basis.iter().zip(coeffs) {
            flat.add_scaled(&self.field.from_i64(c), b);
        }
        let mut fm = MatrixS::zeros(self.field, m, m);
        for x in 0..m {
            for y in 0..m {
                fm[(x, y)] = flat[x * m + y].clone();
            }
        }
        let datum =
            CoflagDatum::new(&l, space.lambda.clone(), space.big_lambda.clone(), fm)?;
        coflag_to_system(&l, &datum)
    }

    /// One random valid system; every draw is re-validated.
    pub fn sample(&mut self, cap: u64) -> Result<CrossedSystem> {
        let base = match self.rng.gen_range(0..3) {
            0 => {
                let l = self.random_base();
                let g_dim = self.rng.gen_range(1..=self.max_g_dim);
                let g = self.random_kernel_bracket(g_dim);
                CrossedSystem::new(PreCrossedDatum::trivial_with_bracket(l, &g))?
            }
            1 => {
                let n = self.rng.gen_range(1..=self.max_g_dim);
                self.triple_system(n)?
            }
            _ => self.coflag_system(cap)?,
        };
        // Twist once or twice through the class.
        let mut sys = base;
        for _ in 0..self.rng.gen_range(1..=2) {
            let r = self.matrix(sys.datum().g_dim(), sys.datum().l_dim());
            sys = sys.twist_by_witness(&r)?;
        }
        assert!(sys.datum().validate().valid());
        Ok(sys)
    }
}
