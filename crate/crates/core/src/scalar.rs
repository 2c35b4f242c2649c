// SPDX-License-Identifier: Apache-2.0

//! Scalar types the swap-cost aggregates can be evaluated in.
//!
//! Exact rationals are the default (see [`crate::Rational`]); floating point
//! instantiations exist for quick diagnostics but sign decisions near zero
//! are only trustworthy in the exact instantiation.

use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Num, Signed};

pub trait Scalar: Num + Signed + FromPrimitive + PartialOrd + Clone + Debug + Display + Send + Sync + 'static {
    fn from_count(k: i64) -> Self {
        Self::from_i64(k).expect("count representable in scalar type")
    }

    /// `numerator / denominator`; the denominator must be non-zero.
    fn ratio(numerator: i64, denominator: i64) -> Self {
        assert!(denominator != 0, "zero denominator");
        Self::from_count(numerator) / Self::from_count(denominator)
    }
}

impl<T> Scalar for T where T: Num + Signed + FromPrimitive + PartialOrd + Clone + Debug + Display + Send + Sync + 'static
{}
