//! Dense row-major tensors over a generic float element.

use super::{NnError, NnResult, Scalar};

/// A dense tensor with row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor<F> {
    dims: Vec<usize>,
    data: Vec<F>,
}

impl<F> Tensor<F> {
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[F] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [F] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<F> {
        self.data
    }
}

impl<F: Scalar> Tensor<F> {
    pub fn zeros(dims: &[usize]) -> Self {
        let len = dims.iter().product();
        Tensor {
            dims: dims.to_vec(),
            data: vec![F::zero(); len],
        }
    }

    pub fn from_vec(dims: &[usize], data: Vec<F>) -> NnResult<Self> {
        let len: usize = dims.iter().product();
        if data.len() != len {
            return Err(NnError::Length {
                len: data.len(),
                dims: dims.to_vec(),
            });
        }
        Ok(Tensor {
            dims: dims.to_vec(),
            data,
        })
    }

    pub fn scalar(v: F) -> Self {
        Tensor {
            dims: vec![1],
            data: vec![v],
        }
    }

    /// Reinterpret the tensor with new dims of identical total length.
    pub fn reshaped(mut self, dims: &[usize]) -> NnResult<Self> {
        let len: usize = dims.iter().product();
        if len != self.data.len() {
            return Err(NnError::Length {
                len: self.data.len(),
                dims: dims.to_vec(),
            });
        }
        self.dims = dims.to_vec();
        Ok(self)
    }

    pub fn fill(&mut self, v: F) {
        for x in &mut self.data {
            *x = v;
        }
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn check_finite(&self, context: &str) -> NnResult<()> {
        if self.all_finite() {
            Ok(())
        } else {
            Err(NnError::NonFinite {
                context: context.to_string(),
            })
        }
    }

    /// Convert the element type (used to move between f32 training tensors
    /// and f64 gradient-check tensors).
    pub fn cast<G: Scalar>(&self) -> Tensor<G> {
        Tensor {
            dims: self.dims.clone(),
            data: self.data.iter().map(|v| G::from_f64(v.as_f64())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_vec_rejects_bad_length() {
        let err = Tensor::<f32>::from_vec(&[2, 3], vec![0.0; 5]).unwrap_err();
        match err {
            NnError::Length { len, dims } => {
                assert_eq!(len, 5);
                assert_eq!(dims, vec![2, 3]);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn reshape_preserves_data() {
        let t = Tensor::<f64>::from_vec(&[2, 3], (0..6).map(|v| v as f64).collect()).unwrap();
        let r = t.clone().reshaped(&[3, 2]).unwrap();
        assert_eq!(r.data(), t.data());
        assert!(t.clone().reshaped(&[4, 2]).is_err());
    }

    #[test]
    fn finiteness_check() {
        let mut t = Tensor::<f32>::zeros(&[4]);
        assert!(t.check_finite("test").is_ok());
        t.data_mut()[2] = f32::NAN;
        assert!(t.check_finite("test").is_err());
    }
}
