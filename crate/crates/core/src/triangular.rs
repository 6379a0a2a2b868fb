//! Forward substitution with small dense real lower-triangular systems.

/// Row-major real lower-triangular matrix. Entries above the diagonal are
/// stored but never read.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerTriangular {
    n: usize,
    data: Vec<f64>,
}

impl LowerTriangular {
    pub fn new(n: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), n * n, "lower-triangular data length");
        Self { n, data }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Solves `T x = b` by forward substitution. The diagonal must be
    /// nonzero; callers are expected to have checked it.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        assert_eq!(b.len(), self.n, "rhs length");
        let mut x = vec![0.0; self.n];
        for i in 0..self.n {
            let mut acc = b[i];
            for (j, xj) in x.iter().enumerate().take(i) {
                acc -= self.get(i, j) * xj;
            }
            x[i] = acc / self.get(i, i);
        }
        x
    }
}
