//! Small dense complex matrices and the tensor-index plumbing around them.
//!
//! Storage is row-major with `m[(out, in)]`: the column carries the input
//! (upper) multi-index and the row the output (lower) one, so the element
//! `R^{ε₁ε₂}_{ε₁'ε₂'}` of an operator sits at row `(ε₁',ε₂')`, column
//! `(ε₁,ε₂)`. Multi-indices over tensor factors are flattened row-major.
//!
//! Basis orders: `V` is `(v₊, v₋)`, `V^(2)` is `(v₂, v₀, v₋₂)` with
//! `v₀ = ½(v₊⊗v₋ + v₋⊗v₊)`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::elliptic::c;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, " ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, " {:+.6e}{:+.6e}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![c(0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c(1.0);
        }
        m
    }

    pub fn from_rows<const N: usize>(rows: &[[Complex64; N]]) -> Self {
        let mut m = Self::zeros(rows.len(), N);
        for (i, row) in rows.iter().enumerate() {
            for (j, &z) in row.iter().enumerate() {
                m[(i, j)] = z;
            }
        }
        m
    }

    pub fn from_real_rows<const N: usize>(rows: &[[f64; N]]) -> Self {
        let mut m = Self::zeros(rows.len(), N);
        for (i, row) in rows.iter().enumerate() {
            for (j, &z) in row.iter().enumerate() {
                m[(i, j)] = c(z);
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols, "vector length does not match matrix");
        (0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum()).collect()
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::Argument(format!("cannot invert a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        let scale = self.max_abs().max(1.0);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| a[(i, col)].norm().total_cmp(&a[(j, col)].norm()))
                .expect("non-empty range");
            if a[(pivot, col)].norm() < 1e-14 * scale {
                return Err(Error::Argument("matrix is numerically singular".into()));
            }
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let d = a[(col, col)];
            for j in 0..n {
                a[(col, j)] /= d;
                inv[(col, j)] /= d;
            }
            for i in 0..n {
                if i == col {
                    continue;
                }
                let f = a[(i, col)];
                if f == c(0.0) {
                    continue;
                }
                for j in 0..n {
                    let (aj, ij) = (a[(col, j)], inv[(col, j)]);
                    a[(i, j)] -= f * aj;
                    inv[(i, j)] -= f * ij;
                }
            }
        }
        Ok(inv)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == c(0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Product of a chain of matrices, left to right.
pub fn product(chain: &[&ComplexMatrix]) -> ComplexMatrix {
    let (first, rest) = chain.split_first().expect("empty matrix chain");
    rest.iter().fold((*first).clone(), |acc, m| &acc * m)
}

/// `(A⊗B)[(i,k),(j,l)] = A[i,j]·B[k,l]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(a.rows * b.rows, a.cols * b.cols, |row, col| {
        let (i, k) = (row / b.rows, row % b.rows);
        let (j, l) = (col / b.cols, col % b.cols);
        a[(i, j)] * b[(k, l)]
    })
}

/// Scale-normalised distance: `max|A−B| / max(1, max|A|, max|B|)`.
pub fn residual(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(Error::Argument(format!(
            "residual of mismatched shapes {:?} and {:?}",
            a.shape(),
            b.shape()
        )));
    }
    let diff = a.data.iter().zip(&b.data).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    Ok(diff / 1f64.max(a.max_abs()).max(b.max_abs()))
}

/// The same metric for plain slices of values.
pub fn residual_slices(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len(), "residual of slices with different lengths");
    let max = |v: &[Complex64]| v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let diff = a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    diff / 1f64.max(max(a)).max(max(b))
}

pub fn residual_scalar(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / 1f64.max(a.norm()).max(b.norm())
}

/// Transpose with respect to the first tensor factor:
/// `out[(i',k),(i,l)] = M[(i,k),(i',l)]`.
pub fn partial_transpose_first(m: &ComplexMatrix, d1: usize, d2: usize) -> Result<ComplexMatrix> {
    let n = d1 * d2;
    if m.shape() != (n, n) {
        return Err(Error::Argument(format!(
            "partial transpose of {:?} over factors {d1}x{d2}",
            m.shape()
        )));
    }
    Ok(ComplexMatrix::from_fn(n, n, |row, col| {
        let (ip, k) = (row / d2, row % d2);
        let (i, l) = (col / d2, col % d2);
        m[(i * d2 + k, ip * d2 + l)]
    }))
}

/// Row-major flattening of a multi-index.
pub fn flatten(indices: &[usize], dims: &[usize]) -> usize {
    assert_eq!(indices.len(), dims.len());
    indices.iter().zip(dims).fold(0, |acc, (&i, &d)| {
        assert!(i < d, "index {i} out of range for dimension {d}");
        acc * d + i
    })
}

pub fn unflatten(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
    out
}

/// Lift an operator on factors `(i, j)` (in that order) to the full tensor
/// product with factor dimensions `dims`.
pub fn embed_two_site(m: &ComplexMatrix, i: usize, j: usize, dims: &[usize]) -> ComplexMatrix {
    assert!(i != j && i < dims.len() && j < dims.len());
    let (di, dj) = (dims[i], dims[j]);
    assert_eq!(m.shape(), (di * dj, di * dj), "operator does not match factor dimensions");
    let total: usize = dims.iter().product();
    let mut out = ComplexMatrix::zeros(total, total);
    for col in 0..total {
        let inp = unflatten(col, dims);
        let local_in = inp[i] * dj + inp[j];
        let mut outp = inp.clone();
        for a in 0..di {
            for b in 0..dj {
                let v = m[(a * dj + b, local_in)];
                if v == c(0.0) {
                    continue;
                }
                outp[i] = a;
                outp[j] = b;
                out[(flatten(&outp, dims), col)] = v;
            }
        }
    }
    out
}

/// `R₁₂(u−v) R₁₃(u) R₂₃(v) − R₂₃(v) R₁₃(u) R₁₂(u−v)` on `(C^d)^{⊗3}`,
/// as a scale-normalised residual.
pub fn ybe_residual(r_uv: &ComplexMatrix, r_u: &ComplexMatrix, r_v: &ComplexMatrix, d: usize) -> Result<f64> {
    let dims = [d, d, d];
    let r12 = embed_two_site(r_uv, 0, 1, &dims);
    let r13 = embed_two_site(r_u, 0, 2, &dims);
    let r23 = embed_two_site(r_v, 1, 2, &dims);
    residual(&product(&[&r12, &r13, &r23]), &product(&[&r23, &r13, &r12]))
}

/// `V` index of a spin `ε = ±1`.
pub fn spin_index(eps: i32) -> usize {
    match eps {
        1 => 0,
        -1 => 1,
        _ => panic!("spin must be ±1, got {eps}"),
    }
}

pub const SPINS: [i32; 2] = [1, -1];

/// `V^(2)` index of a weight `μ ∈ {2, 0, −2}`.
pub fn weight_index(mu: i32) -> usize {
    match mu {
        2 => 0,
        0 => 1,
        -2 => 2,
        _ => panic!("weight must be 2, 0 or -2, got {mu}"),
    }
}

pub const WEIGHTS: [i32; 3] = [2, 0, -2];

/// Flip operator on `C^d ⊗ C^d` (`P` for d = 2, `P^(2)` for d = 3).
pub fn flip(d: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            m[(j * d + i, i * d + j)] = c(1.0);
        }
    }
    m
}

pub fn sigma_y() -> ComplexMatrix {
    let i = Complex64::new(0.0, 1.0);
    ComplexMatrix::from_rows(&[[c(0.0), -i], [i, c(0.0)]])
}

/// `Π = ½(P + id)`.
pub fn symmetrizer() -> ComplexMatrix {
    (&flip(2) + &ComplexMatrix::identity(4)).scale(c(0.5))
}

/// ι: `V^(2) → V⊗V` as a 4×3 matrix.
pub fn embedding() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[[1.0, 0.0, 0.0], [0.0, 0.5, 0.0], [0.0, 0.5, 0.0], [0.0, 0.0, 1.0]])
}

/// π: `V⊗V → V^(2)` as a 3×4 matrix.
pub fn restriction() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[[1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]])
}

pub fn sym_embed(v: [Complex64; 3]) -> [Complex64; 4] {
    [v[0], 0.5 * v[1], 0.5 * v[1], v[2]]
}

pub fn sym_restrict(w: [Complex64; 4]) -> [Complex64; 3] {
    [w[0], w[1] + w[2], w[3]]
}

pub fn kron_vec<const N: usize, const M: usize>(a: [Complex64; N], b: [Complex64; M]) -> Vec<Complex64> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| x * y)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cz(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn arb_matrix(n: usize, m: usize) -> impl Strategy<Value = ComplexMatrix> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * m).prop_map(move |v| {
            let mut out = ComplexMatrix::zeros(n, m);
            for (k, (re, im)) in v.into_iter().enumerate() {
                out[(k / m, k % m)] = cz(re, im);
            }
            out
        })
    }

    #[test]
    fn kron_identity_and_spot_check() {
        let id2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&id2, &id2), ComplexMatrix::identity(4));
        let m = kron(&sigma_y(), &id2);
        // row (0,0), column (1,0)
        assert_eq!(m[(0, 2)], cz(0.0, -1.0));
    }

    #[test]
    fn constants_square_correctly() {
        assert_eq!(&flip(2) * &flip(2), ComplexMatrix::identity(4));
        assert_eq!(&flip(3) * &flip(3), ComplexMatrix::identity(9));
        assert_eq!(&sigma_y() * &sigma_y(), ComplexMatrix::identity(2));
        let pi = symmetrizer();
        assert!(residual(&(&pi * &pi), &pi).unwrap() < 1e-15);
        assert!((pi.trace() - 3.0).norm() < 1e-13);
    }

    #[test]
    fn embed_restrict_round_trip() {
        for k in 0..3 {
            let mut e = [c(0.0); 3];
            e[k] = c(1.0);
            assert_eq!(sym_restrict(sym_embed(e)), e);
        }
        let anti = [c(0.0), c(1.0), c(-1.0), c(0.0)];
        assert_eq!(sym_restrict(anti), [c(0.0); 3]);
        let pi_iota = &restriction() * &embedding();
        assert_eq!(pi_iota, ComplexMatrix::identity(3));
        let iota_pi = &embedding() * &restriction();
        assert!(residual(&iota_pi, &symmetrizer()).unwrap() < 1e-15);
    }

    #[test]
    fn flatten_round_trip() {
        for dims in [[2, 2], [2, 3], [3, 2], [3, 3]] {
            for idx in 0..dims[0] * dims[1] {
                assert_eq!(flatten(&unflatten(idx, &dims), &dims), idx);
            }
        }
    }

    #[test]
    fn residual_basics() {
        let a = ComplexMatrix::identity(3);
        assert_eq!(residual(&a, &a).unwrap(), 0.0);
        let z = ComplexMatrix::zeros(2, 2);
        assert_eq!(residual(&z, &z).unwrap(), 0.0);
        assert_eq!(residual(&a, &a.scale(c(2.0))).unwrap(), 0.5);
        assert!(residual(&a, &z).is_err());
    }

    #[test]
    fn partial_transpose_matches_index_oracle() {
        // independent quadruple-loop re-indexing
        let m = ComplexMatrix::from_fn(9, 9, |i, j| cz((i * 9 + j) as f64, (i as f64) - 2.0 * j as f64));
        let pt = partial_transpose_first(&m, 3, 3).unwrap();
        for i in 0..3 {
            for k in 0..3 {
                for ip in 0..3 {
                    for l in 0..3 {
                        assert_eq!(pt[(ip * 3 + k, i * 3 + l)], m[(i * 3 + k, ip * 3 + l)]);
                    }
                }
            }
        }
        assert!(partial_transpose_first(&m, 2, 3).is_err());
    }

    #[test]
    fn embed_two_site_matches_kron() {
        let a = ComplexMatrix::from_fn(2, 2, |i, j| cz(i as f64 + 1.0, j as f64));
        let b = ComplexMatrix::from_fn(3, 3, |i, j| cz((i * j) as f64, 1.0));
        let ab = kron(&a, &b);
        assert_eq!(embed_two_site(&ab, 0, 1, &[2, 3]), ab);
        // acting on (1,0) with the factors reversed is the flipped operator
        let ba = kron(&b, &a);
        let lifted = embed_two_site(&ba, 1, 0, &[2, 3]);
        assert!(residual(&lifted, &ab).unwrap() < 1e-15);
        let three = embed_two_site(&ab, 0, 2, &[2, 2, 3]);
        let expect = {
            // a on factor 0, identity on 1, b on 2
            let mut m = ComplexMatrix::zeros(12, 12);
            for r in 0..12 {
                for col in 0..12 {
                    let (ro, cl) = (unflatten(r, &[2, 2, 3]), unflatten(col, &[2, 2, 3]));
                    if ro[1] == cl[1] {
                        m[(r, col)] = a[(ro[0], cl[0])] * b[(ro[2], cl[2])];
                    }
                }
            }
            m
        };
        assert_eq!(three, expect);
    }

    #[test]
    fn inverse_of_singular_fails() {
        let m = ComplexMatrix::from_real_rows(&[[1.0, 2.0], [2.0, 4.0]]);
        assert!(m.inverse().is_err());
    }

    proptest! {
        #[test]
        fn kron_mixed_product(a in arb_matrix(2, 2), b in arb_matrix(2, 2), cc in arb_matrix(2, 2), d in arb_matrix(2, 2)) {
            let lhs = &kron(&a, &b) * &kron(&cc, &d);
            let rhs = kron(&(&a * &cc), &(&b * &d));
            prop_assert!(residual(&lhs, &rhs).unwrap() < 1e-13);
        }

        #[test]
        fn partial_transpose_of_kron(a in arb_matrix(3, 3), b in arb_matrix(2, 2)) {
            let pt = partial_transpose_first(&kron(&a, &b), 3, 2).unwrap();
            prop_assert_eq!(&pt, &kron(&a.transpose(), &b));
            prop_assert_eq!(partial_transpose_first(&pt, 3, 2).unwrap(), kron(&a, &b));
        }

        #[test]
        fn embed_of_restrict_is_symmetrizer(v in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 4)) {
            let w: Vec<Complex64> = v.into_iter().map(|(re, im)| cz(re, im)).collect();
            let w4 = [w[0], w[1], w[2], w[3]];
            let lhs = sym_embed(sym_restrict(w4));
            let rhs = symmetrizer().apply(&w);
            prop_assert!(residual_slices(&lhs, &rhs) < 1e-15);
        }

        #[test]
        fn compressed_operator_is_symmetric_block(m in arb_matrix(4, 4)) {
            let compressed = product(&[&restriction(), &m, &embedding()]);
            let pi = symmetrizer();
            let projected = product(&[&pi, &m, &pi]);
            // Π M Π in the (v₂, v₀, v₋₂) basis
            let in_basis = product(&[&restriction(), &projected, &embedding()]);
            prop_assert!(residual(&compressed, &in_basis).unwrap() < 1e-14);
        }

        #[test]
        fn inverse_round_trip(m in arb_matrix(3, 3)) {
            if let Ok(inv) = m.inverse() {
                let id = &m * &inv;
                // condition numbers of random matrices vary; loose bound
                prop_assert!(residual(&id, &ComplexMatrix::identity(3)).unwrap() < 1e-8);
            }
        }
    }
}
