use crate::error::{check_len, Error, Result};

/// Dense row-major table of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Table {
    rows: usize,
    cols: usize,
    data: Vec<usize>,
}

impl Table {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> usize) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Table { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, value: usize) -> Self {
        Table {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    /// Builds a table from nested rows, checking the shape.
    pub fn from_rows(name: &str, rows: &[Vec<usize>], shape: (usize, usize)) -> Result<Self> {
        check_len(name, shape.0, rows.len())?;
        let mut data = Vec::with_capacity(shape.0 * shape.1);
        for (i, row) in rows.iter().enumerate() {
            check_len(&format!("{name}[{i}]"), shape.1, row.len())?;
            data.extend_from_slice(row);
        }
        Ok(Table {
            rows: shape.0,
            cols: shape.1,
            data,
        })
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> usize {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: usize) {
        self.data[r * self.cols + c] = value;
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

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        self.data.chunks(self.cols.max(1)).map(<[usize]>::to_vec).collect()
    }

    pub(crate) fn check_entries(&self, name: &str, bound: usize) -> Result<()> {
        match self.data.iter().position(|&v| v >= bound) {
            Some(i) => Err(Error::OutOfRange {
                table: name.to_string(),
                position: format!("[{}][{}]", i / self.cols, i % self.cols),
                value: self.data[i],
                bound,
            }),
            None => Ok(()),
        }
    }

    pub(crate) fn check_shape(&self, name: &str, shape: (usize, usize)) -> Result<()> {
        check_len(name, shape.0, self.rows)?;
        check_len(&format!("{name} columns"), shape.1, self.cols)
    }
}
