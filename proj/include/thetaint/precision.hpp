#pragma once

// Extended-precision scalars (MPFR backed, expression templates off so they
// behave like plain value types inside std::complex and generic code).

#include <boost/multiprecision/mpfr.hpp>

namespace thetaint {

namespace mp = boost::multiprecision;

using real50 = mp::number<mp::mpfr_float_backend<50>, mp::et_off>;
using real100 = mp::number<mp::mpfr_float_backend<100>, mp::et_off>;
using real150 = mp::number<mp::mpfr_float_backend<150>, mp::et_off>;

}  // namespace thetaint
