use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, PrimInt, Signed, ToPrimitive};

/// Signed integer type usable as a profile value.
///
/// Every solver is generic over this trait. Values are exact; there is no
/// floating-point instantiation because concavity checks and the integer
/// Lagrangian search both rely on exact arithmetic.
pub trait Scalar:
    PrimInt
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + FromStr
    + Hash
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Magnitude every validated input and intermediate sum must stay under.
    ///
    /// This is `2^(bits - 9)`, i.e. 2^55 for `i64`, which leaves headroom for
    /// Lagrangian penalties added on top of path values.
    fn guard_limit() -> i128;

    fn to_wide(self) -> i128;

    fn from_wide(v: i128) -> Option<Self>;

    fn from_count(v: usize) -> Self {
        Self::from_usize(v).expect("count does not fit the scalar type")
    }
}

macro_rules! impl_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            #[inline]
            fn guard_limit() -> i128 {
                let bits = <$t>::BITS as i128;
                if bits >= 128 {
                    1i128 << 119
                } else {
                    1i128 << (bits - 9)
                }
            }

            #[inline]
            fn to_wide(self) -> i128 {
                self as i128
            }

            #[inline]
            fn from_wide(v: i128) -> Option<Self> {
                <$t>::try_from(v).ok()
            }
        }
    )*};
}

impl_scalar!(i32, i64, i128);

/// Checks `|value| <= S::guard_limit()`, computed without overflow.
pub(crate) fn within_guard<S: Scalar>(value: Option<i128>) -> bool {
    matches!(value, Some(v) if v.checked_abs().is_some_and(|a| a <= S::guard_limit()))
}
