//! Minimal square-matrix container; entry arithmetic lives at the use sites.

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat<T> {
    n: usize,
    rows: Vec<Vec<T>>,
}

impl<T> Mat<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Mat { n, rows }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.rows[i][j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Mat<U> {
        Mat {
            n: self.n,
            rows: self.rows.iter().map(|r| r.iter().map(&mut f).collect()).collect(),
        }
    }

    pub fn build(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        Mat {
            n,
            rows: (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect(),
        }
    }
}
