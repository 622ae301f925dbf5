#include "thetaint/oracle.hpp"

#include <cmath>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace thetaint {

cplx fourier_numeric(const TransformRequest& req, double abs_tol) {
  if (!req.integrand) throw std::invalid_argument("fourier_numeric: no integrand");
  if (!(req.cutoff > 0)) throw std::invalid_argument("fourier_numeric: cutoff must be positive");
  // a single point can sit on a zero of f, so look at a short stretch before X
  for (int i = 0; i <= 16; ++i) {
    const double x = req.cutoff - 0.5 * i / 16;
    if (x >= 0 && std::abs(req.integrand(x)) >= 1e-12)
      throw CutoffError("fourier_numeric: integrand is not negligible at the cutoff");
  }
  const double w = 2 * boost::math::constants::pi<double>() * req.xi;
  const bool even = req.parity == Parity::even;
  auto g = [&](double x) { return req.integrand(x) * (even ? std::cos(w * x) : std::sin(w * x)); };
  // split into unit pieces so each holds a bounded number of oscillations
  const int pieces = static_cast<int>(std::ceil(req.cutoff * std::max(1.0, std::abs(req.xi))));
  double total = 0, err = 0;
  for (int k = 0; k < pieces; ++k) {
    const double a = req.cutoff * k / pieces, b = req.cutoff * (k + 1) / pieces;
    // the library's tolerance is relative to the piece's L1 norm
    double e = 0, l1 = 0;
    const double coarse = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, a, b, 0, 0, &e, &l1);
    const double rel = abs_tol / (4 * pieces * std::max(l1, 1e-300));
    if (rel >= 1 || e < abs_tol / (4 * pieces)) {
      total += coarse;
    } else {
      total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, a, b, 15, std::max(rel, 1e-15), &e);
    }
    err += e;
  }
  if (!(err < abs_tol)) throw OracleError("fourier_numeric: quadrature did not reach the tolerance");
  return even ? cplx(2 * total, 0) : cplx(0, -2 * total);
}

long long r3(long long m) {
  if (m < 0) throw std::invalid_argument("r3: m must be >= 0");
  long long r = 0;
  while (r * r < m) ++r;
  long long count = 0;
  for (long long a = -r; a <= r; ++a)
    for (long long b = -r; b <= r; ++b)
      for (long long c = -r; c <= r; ++c)
        if (a * a + b * b + c * c == m) ++count;
  return count;
}

long long lattice_points_in_ball(long long M) {
  if (M < 0) return 0;
  long long count = 0;
  for (long long a = 0; a * a <= M; ++a) {
    for (long long b = 0; a * a + b * b <= M; ++b) {
      // number of c with c^2 <= rest
      const long long rest = M - a * a - b * b;
      long long c = static_cast<long long>(std::sqrt(double(rest)));
      while (c * c > rest) --c;
      while ((c + 1) * (c + 1) <= rest) ++c;
      const long long line = 2 * c + 1;
      count += line * (a ? 2 : 1) * (b ? 2 : 1);
    }
  }
  return count;
}

double poisson_residual(const std::function<cplx(double)>& f, const std::function<cplx(double)>& fhat, int N) {
  if (N < 0) throw std::invalid_argument("poisson_residual: N must be >= 0");
  cplx s = f(0) - fhat(0);
  for (int n = 1; n <= N; ++n) s += f(n) + f(-n) - fhat(n) - fhat(-n);
  return std::abs(s);
}

namespace {

template <class V, class F>
std::pair<V, double> richardson(const F& f, double h) {
  if (!(h > 0 && h <= 0.1)) throw std::invalid_argument("numeric_derivative_at_zero: h must be in (0, 0.1]");
  const V d1 = (f(h) - f(-h)) / (2 * h);
  const V d2 = (f(h / 2) - f(-h / 2)) / h;
  const V r = (4.0 * d2 - d1) / 3.0;
  return {r, std::abs(r - d2)};
}

}  // namespace

DerivativeEstimate numeric_derivative_at_zero(const std::function<double(double)>& f, double h) {
  auto [v, e] = richardson<double>(f, h);
  return {v, e};
}

ComplexDerivativeEstimate numeric_derivative_at_zero_complex(const std::function<cplx(double)>& f, double h) {
  auto [v, e] = richardson<cplx>(f, h);
  return {v, e};
}

}  // namespace thetaint
