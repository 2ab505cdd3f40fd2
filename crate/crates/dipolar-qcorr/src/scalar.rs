//! Scalar abstraction: the whole library is generic over the floating-point
//! type through this trait. `f64` is the type used by the CLI and the
//! verification battery; `f32` compiles and works at reduced precision.

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    fn real(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 must convert")
    }

    fn cplx(re: f64, im: f64) -> Complex<Self> {
        Complex::new(Self::real(re), Self::real(im))
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
