//! Mixed-radix indexing over a product of finite coordinate domains.
//!
//! States are numbered lexicographically with coordinate 0 as the most
//! significant digit. Every deterministic ordering in the crate (witness
//! choice, anchor search, table layout) derives from this numbering.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSpace {
    sizes: Vec<usize>,
    strides: Vec<usize>,
    len: usize,
}

impl StateSpace {
    /// Builds the space, refusing products larger than `cap`.
    pub fn new(sizes: Vec<usize>, cap: usize) -> Result<Self> {
        if let Some(i) = sizes.iter().position(|&d| d == 0) {
            return Err(Error::InvalidProblem(format!(
                "coordinate {i} has an empty domain"
            )));
        }
        let len = checked_product(&sizes, cap)?;
        let mut strides = vec![1; sizes.len()];
        for i in (0..sizes.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * sizes[i + 1];
        }
        Ok(StateSpace {
            sizes,
            strides,
            len,
        })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn dims(&self) -> usize {
        self.sizes.len()
    }

    /// Number of states N.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn stride(&self, coord: usize) -> usize {
        self.strides[coord]
    }

    /// Value of coordinate `coord` in the state numbered `index`.
    #[inline]
    pub fn digit(&self, index: usize, coord: usize) -> usize {
        (index / self.strides[coord]) % self.sizes[coord]
    }

    pub fn decode(&self, index: usize) -> Vec<usize> {
        (0..self.dims()).map(|c| self.digit(index, c)).collect()
    }

    pub fn encode(&self, values: &[usize]) -> Result<usize> {
        if values.len() != self.dims() {
            return Err(Error::InvalidState(format!(
                "state has {} values, problem has {} coordinates",
                values.len(),
                self.dims()
            )));
        }
        let mut index = 0;
        for (c, (&v, &d)) in values.iter().zip(&self.sizes).enumerate() {
            if v >= d {
                return Err(Error::InvalidState(format!(
                    "coordinate {c} has value {v}, domain size is {d}"
                )));
            }
            index += v * self.strides[c];
        }
        Ok(index)
    }

    /// Rank of the projection of state `index` onto `coords` within the
    /// sub-space spanned by those coordinates (same digit order).
    #[inline]
    pub fn projection_key(&self, index: usize, coords: &[usize]) -> usize {
        coords
            .iter()
            .fold(0, |key, &c| key * self.sizes[c] + self.digit(index, c))
    }

    /// Size of the sub-space spanned by `coords`.
    pub fn projected_len(&self, coords: &[usize]) -> usize {
        coords.iter().map(|&c| self.sizes[c]).product()
    }

    /// All states in index order.
    pub fn states(&self) -> Odometer {
        Odometer::new(self.sizes.clone())
    }
}

/// Lexicographic iterator over a mixed-radix digit vector, last digit fastest.
#[derive(Debug, Clone)]
pub struct Odometer {
    sizes: Vec<usize>,
    current: Option<Vec<usize>>,
}

impl Odometer {
    pub fn new(sizes: Vec<usize>) -> Self {
        let current = if sizes.contains(&0) {
            None
        } else {
            Some(vec![0; sizes.len()])
        };
        Odometer { sizes, current }
    }
}

impl Iterator for Odometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        let mut pos = cur.len();
        loop {
            if pos == 0 {
                self.current = None;
                break;
            }
            pos -= 1;
            cur[pos] += 1;
            if cur[pos] < self.sizes[pos] {
                break;
            }
            cur[pos] = 0;
        }
        Some(out)
    }
}

/// Product of `sizes`, failing with `StateSpaceTooLarge` above `cap`.
pub fn checked_product(sizes: &[usize], cap: usize) -> Result<usize> {
    let mut acc: usize = 1;
    for &d in sizes {
        match acc.checked_mul(d) {
            Some(v) if v <= cap => acc = v,
            Some(v) => {
                return Err(Error::StateSpaceTooLarge {
                    states: v.to_string(),
                    cap,
                })
            }
            None => {
                return Err(Error::StateSpaceTooLarge {
                    states: "overflow".into(),
                    cap,
                })
            }
        }
    }
    Ok(acc)
}
