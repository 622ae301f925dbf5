#pragma once

// Independent checks for the main computation: real-axis Fourier transforms,
// lattice counts for r3, Poisson sums and numerical derivatives at 0.
// Nothing in the evaluation path calls into this module.

#include <complex>
#include <functional>
#include <stdexcept>

#include "thetaint/forms.hpp"

namespace thetaint {

struct TransformRequest {
  Parity parity = Parity::even;
  std::function<double(double)> integrand;  // real function on [0, cutoff]
  double cutoff = 12;
  double xi = 0;
};

class CutoffError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// even: 2 \int_0^X f(x) cos(2 pi xi x) dx; odd: -2i \int_0^X f(x) sin(2 pi xi x) dx.
// |f| must be below 1e-12 near X (checked on [X - 1/2, X]).
cplx fourier_numeric(const TransformRequest& req, double abs_tol = 1e-9);

// ordered representations as a sum of three squares, by exhaustive search
long long r3(long long m);
// lattice points with a^2 + b^2 + c^2 <= M, counted along one axis at a time
long long lattice_points_in_ball(long long M);

// |sum_{|n| <= N} f(n) - sum_{|n| <= N} fhat(n)|
double poisson_residual(const std::function<cplx(double)>& f, const std::function<cplx(double)>& fhat, int N);

struct DerivativeEstimate {
  double value;
  double error;
};
struct ComplexDerivativeEstimate {
  cplx value;
  double error;
};
// central differences at h and h/2 combined by one Richardson step
DerivativeEstimate numeric_derivative_at_zero(const std::function<double(double)>& f, double h);
ComplexDerivativeEstimate numeric_derivative_at_zero_complex(const std::function<cplx(double)>& f, double h);

}  // namespace thetaint
