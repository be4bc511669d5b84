//! Operator boilerplate shared by the scalar newtypes.

/// Implements the four arithmetic operators and negation for `$t`, given
/// by-reference implementations `add_ref`, `sub_ref`, `mul_ref`, `div_ref`
/// and `neg_ref`.
macro_rules! scalar_ops {
    ($t:ty) => {
        scalar_ops!(@bin $t, Add, add, add_ref);
        scalar_ops!(@bin $t, Sub, sub, sub_ref);
        scalar_ops!(@bin $t, Mul, mul, mul_ref);
        scalar_ops!(@bin $t, Div, div, div_ref);

        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                crate::Field::neg_ref(&self)
            }
        }

        impl std::ops::Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                crate::Field::neg_ref(self)
            }
        }

        impl std::ops::AddAssign for $t {
            fn add_assign(&mut self, rhs: $t) {
                *self = crate::Field::add_ref(self, &rhs);
            }
        }

        impl std::ops::SubAssign for $t {
            fn sub_assign(&mut self, rhs: $t) {
                *self = crate::Field::sub_ref(self, &rhs);
            }
        }

        impl std::ops::MulAssign for $t {
            fn mul_assign(&mut self, rhs: $t) {
                *self = crate::Field::mul_ref(self, &rhs);
            }
        }
    };
    (@bin $t:ty, $tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                crate::Field::$f(&self, &rhs)
            }
        }

        impl std::ops::$tr<&$t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t {
                crate::Field::$f(&self, rhs)
            }
        }

        impl std::ops::$tr<&$t> for &$t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t {
                crate::Field::$f(self, rhs)
            }
        }

        impl std::ops::$tr<$t> for &$t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                crate::Field::$f(self, &rhs)
            }
        }
    };
}

pub(crate) use scalar_ops;
