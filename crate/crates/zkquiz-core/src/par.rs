//! Feature-gated iteration helpers.
//!
//! With the `parallel` feature the macro expands to a rayon parallel
//! iterator; without it, to the plain sequential equivalent. Every use
//! site performs exact group or field arithmetic, so the result does not
//! depend on evaluation order.

macro_rules! cfg_into_iter {
    ($e:expr) => {{
        #[cfg(feature = "parallel")]
        let iter = rayon::iter::IntoParallelIterator::into_par_iter($e);
        #[cfg(not(feature = "parallel"))]
        let iter = $e.into_iter();
        iter
    }};
}

pub(crate) use cfg_into_iter;
