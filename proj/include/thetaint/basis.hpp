#pragma once

// Interpolation basis functions
//   b_n^eps(x) = 1/2 \int_{-1}^{1} g_n^eps(z) e^{i pi x^2 z} dz        (even)
//   d_n^eps(x) = 1/2 \int_{-1}^{1} h_n^eps(z) x e^{i pi x^2 z} dz      (odd)
// evaluated either on the semicircle through -1, i, 1 ("contour") or on the
// vertical line 1 + it ("laplace"). On the line the principal part
// sum_{k<=0} c_k p^k is split off when x^2 is not safely above n, which
// turns it into elementary sinc terms; the rest of the integral over t > 1
// comes from the q-expansion in closed form.

#include <complex>
#include <stdexcept>
#include <string>

#include "thetaint/forms.hpp"

namespace thetaint {

enum class Method { automatic, contour, laplace, closed_form, series_tail };
std::string to_string(Method m);

struct EvalReport {
  double value = 0;
  double abs_error_estimate = 0;
  Method method = Method::closed_form;
  double imag_residual = 0;
  int digits = 16;  // working precision in decimal digits
};

struct EvalOptions {
  Method method = Method::automatic;
  // 0 picks from n; otherwise 16 (double), 50, 100 or 150
  int digits = 0;
  double abs_tol = 1e-13;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, EvalReport best) : std::runtime_error(what), best(best) {}
  EvalReport best;
};

// x^2 margin above n beyond which the plain line integral is used
constexpr double kLaplaceMargin = 2.0;

EvalReport eval_b(Eps eps, int n, double x, const EvalOptions& opt = {});
EvalReport eval_d(Eps eps, int n, double x, const EvalOptions& opt = {});

struct APair {
  EvalReport a, ahat;
};
// a_n = (b_n^+ + b_n^-)/2, ahat_n = (b_n^+ - b_n^-)/2, b_0^- = 0
APair eval_a(int n, double x, const EvalOptions& opt = {});

// c_n = (d_n^+ + d_n^-)/2 and s_n = (d_n^+ - d_n^-)/2; the transform of c_n is -i s_n
struct CPair {
  EvalReport c, s;
};
CPair eval_c(int n, double x, const EvalOptions& opt = {});

// sin(pi x^2) / sinh(pi x), with value 0 at x = 0
double d0_closed_form(double x);

// Heuristic growth constants: |b_n(x)| <= kGrowthEven (1 + n^2) and
// |d_n(x)| <= kGrowthOdd (1 + n)^{5/2}, measured on n <= 8 with headroom.
extern const double kGrowthEven;
extern const double kGrowthOdd;

struct FResult {
  cplx value;
  double tail_bound = 0;  // heuristic, from the growth constants
  int terms_evaluated = 0;
};

// sum_{n <= N} b_n^eps(x) e^{i pi n tau} (even) or with d_n^eps (odd).
// Terms whose envelope bound is below 1e-18 are not evaluated; they are
// counted in tail_bound instead.
FResult generating_F(Parity parity, Eps eps, cplx tau, double x, int N);

// working precision chosen for index n (decimal digits)
int default_digits(int n);

// drop cached basis values and node data (tests and benchmarks)
void clear_basis_caches();

}  // namespace thetaint
