use crate::error::{Error, Result};

/// Row-major flattening of a multi-index into `{0..d^n}`:
/// `idx = sum_k i_k * d^(n-1-k)`. The empty multi-index maps to 0, the
/// single coordinate of the ground field.
pub fn tensor_index(indices: &[usize], d: usize) -> Result<usize> {
    let mut idx = 0usize;
    for &i in indices {
        if i >= d {
            return Err(Error::IndexOutOfRange { index: i, bound: d });
        }
        idx = idx * d + i;
    }
    Ok(idx)
}

/// Inverse of [`tensor_index`] for a fixed length `n`.
pub fn tensor_unflatten(mut idx: usize, n: usize, d: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for k in (0..n).rev() {
        out[k] = idx % d;
        idx /= d;
    }
    out
}

/// Shape of a tensor power `A^{(x)n}` with `dim A = d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TensorShape {
    pub d: usize,
    pub n: usize,
}

impl TensorShape {
    pub fn new(d: usize, n: usize) -> Self {
        TensorShape { d, n }
    }

    pub fn size(&self) -> usize {
        self.d.pow(self.n as u32)
    }

    /// Checked size, for resource guards.
    pub fn checked_size(&self) -> Option<usize> {
        self.d.checked_pow(self.n as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(tensor_index(&[1, 0], 2).unwrap(), 2);
        assert_eq!(tensor_index(&[0, 0, 0], 4).unwrap(), 0);
        assert_eq!(tensor_index(&[], 7).unwrap(), 0);
        assert!(tensor_index(&[2], 2).is_err());
    }

    #[test]
    fn bijection_exhaustive() {
        for d in 1..=4 {
            for n in 0..=4 {
                let size = TensorShape::new(d, n).size();
                let mut seen = vec![false; size];
                for idx in 0..size {
                    let multi = tensor_unflatten(idx, n, d);
                    let back = tensor_index(&multi, d).unwrap();
                    assert_eq!(back, idx);
                    assert!(!seen[back]);
                    seen[back] = true;
                }
                assert!(seen.iter().all(|x| *x));
            }
        }
    }
}
