#pragma once

// Weakly holomorphic forms g_n^eps (weight 3/2, "even") and h_n^eps
// (weight 1/2, "odd") on the theta group:
//   even: theta^3 * [1 - 2 lambda if eps = -] * P(J^-1)
//   odd:  theta   * [1 - 2 lambda if eps = -] * Q(J^-1)

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "thetaint/modular.hpp"
#include "thetaint/qseries.hpp"

namespace thetaint {

enum class Parity { even, odd };
enum class Eps { plus, minus };

inline int sign(Eps e) { return e == Eps::plus ? 1 : -1; }
std::string to_string(Parity p);
std::string to_string(Eps e);
Parity parity_from_string(const std::string& s);
Eps eps_from_string(const std::string& s);

struct FormSpec {
  Parity parity = Parity::even;
  Eps eps = Eps::plus;
  int n = 0;
  std::vector<Rational> poly;  // poly[k] multiplies (J^-1)^k; monic of degree n

  bool operator==(const FormSpec&) const = default;
};

class PoleProximityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// memoized; throws std::invalid_argument for n < 0 or (eps = -, n = 0)
const FormSpec& build_form(Parity parity, Eps eps, int n);

// p-expansion accurate below `order` (memoized by the largest order requested)
PuiseuxSeries form_q_expansion(const FormSpec& spec, int order);

// theta^w * [1 - 2 lambda] as a series, the common factor of every form in a family
PuiseuxSeries form_prefactor(Parity parity, Eps eps, int order);

template <class Real>
Real to_real(const Rational& r) {
  if constexpr (std::is_same_v<Real, double>) {
    return r.get_d();
  } else {
    return Real(r.get_num().get_str()) / Real(r.get_den().get_str());
  }
}

template <class Real>
std::vector<Real> poly_as(const FormSpec& spec) {
  std::vector<Real> c;
  c.reserve(spec.poly.size());
  for (const auto& r : spec.poly) c.push_back(to_real<Real>(r));
  return c;
}

// The form at z from modular values and the polynomial in working precision.
// For eps = - the constant term vanishes and (1 - 2 lambda) J^-1 is used as one
// factor, which stays finite where lambda blows up.
template <class Scalar, class Coef>
Scalar form_from_values(Parity parity, Eps eps, const std::vector<Coef>& poly, const Scalar& theta,
                        const Scalar& J_inv, const Scalar& m2l_J_inv) {
  const std::size_t lo = eps == Eps::minus ? 1 : 0;
  Scalar acc(poly.back());
  for (std::size_t k = poly.size() - 1; k-- > lo;) acc = acc * J_inv + Scalar(poly[k]);
  Scalar pre = parity == Parity::even ? theta * theta * theta : theta;
  if (eps == Eps::minus) pre = pre * m2l_J_inv;
  return pre * acc;
}

template <class Real>
std::complex<Real> eval_form(const FormSpec& spec, const std::vector<Real>& poly, const std::complex<Real>& z) {
  const auto m = eval_modular(z);
  return form_from_values(spec.parity, spec.eps, poly, m.theta, m.J_inv, m.one_minus_2lambda_J_inv);
}

cplx eval_form(const FormSpec& spec, cplx z);

// even: K_eps(tau, z); odd: -K_{-eps}(z, tau). Throws PoleProximityError near J(tau) = J(z).
cplx eval_kernel(Parity parity, Eps eps, cplx tau, cplx z);

void to_json(nlohmann::json& j, const FormSpec& f);
void from_json(const nlohmann::json& j, FormSpec& f);

}  // namespace thetaint
