//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! All math is written against [`Real`], which is implemented for `f32` and
//! `f64`. Each implementation owns a static [`Tables`] holding the lazily
//! computed quadrature rule, the elastica constants and the inversion seed
//! grid for that precision.

use std::fmt::{Debug, Display};
use std::sync::OnceLock;

use num_traits::{Float, FloatConst, FromPrimitive};

use crate::elastica::ElasticaConstants;
use crate::hermite::SeedGrid;

/// Floating point type usable by the elastica and spline routines.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    #[doc(hidden)]
    fn tables() -> &'static Tables<Self>;
}

/// Per-precision caches. Everything in here is immutable once initialized.
#[doc(hidden)]
pub struct Tables<T> {
    pub(crate) gauss: OnceLock<Vec<(T, T)>>,
    pub(crate) half_period: OnceLock<T>,
    pub(crate) constants: OnceLock<ElasticaConstants<T>>,
    pub(crate) seeds: OnceLock<SeedGrid<T>>,
}

impl<T> Tables<T> {
    const fn new() -> Self {
        Self {
            gauss: OnceLock::new(),
            half_period: OnceLock::new(),
            constants: OnceLock::new(),
            seeds: OnceLock::new(),
        }
    }
}

macro_rules! impl_real {
    ($t:ty) => {
        impl Real for $t {
            fn tables() -> &'static Tables<Self> {
                static TABLES: Tables<$t> = Tables::new();
                &TABLES
            }
        }
    };
}

impl_real!(f32);
impl_real!(f64);

/// Converts an `f64` literal into `T`.
#[inline]
pub(crate) fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable")
}

/// A tolerance that is `x` in double precision but never finer than what
/// `T` can resolve.
#[inline]
pub(crate) fn tol<T: Real>(x: f64) -> T {
    lit::<T>(x).max(T::epsilon() * lit(64.0))
}
