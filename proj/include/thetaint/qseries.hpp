#pragma once

// Truncated Laurent series in p = e^{i pi z} with exact rational coefficients.

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace thetaint {

using Rational = mpq_class;

class PuiseuxSeries {
 public:
  // zero series, accurate below `order`
  explicit PuiseuxSeries(int order = 0);
  // coefficient list starting at p^min_exp, accurate below `order`;
  // entries at or beyond `order` are dropped
  PuiseuxSeries(int min_exp, std::vector<Rational> coeffs, int order);

  static PuiseuxSeries monomial(const Rational& c, int e, int order);
  static PuiseuxSeries one(int order) { return monomial(1, 0, order); }

  int min_exp() const { return min_exp_; }
  int order() const { return order_; }
  // stored coefficients from p^min_exp; trailing zeros below order() are implicit
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  // all stored coefficients are integers
  bool integral() const;

  // coefficient of p^e; throws std::out_of_range when e >= order()
  Rational coefficient(int e) const;

  PuiseuxSeries truncate(int order) const;
  PuiseuxSeries operator-() const;

  bool operator==(const PuiseuxSeries& o) const = default;

 private:
  void normalize();

  int min_exp_ = 0;
  int order_ = 0;
  std::vector<Rational> coeffs_;
};

PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries operator*(const Rational& c, const PuiseuxSeries& a);
PuiseuxSeries operator/(const PuiseuxSeries& a, const PuiseuxSeries& b);

PuiseuxSeries series_add(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries series_mul(const PuiseuxSeries& a, const PuiseuxSeries& b);
// throws std::domain_error on the zero series
PuiseuxSeries series_invert(const PuiseuxSeries& a);
PuiseuxSeries series_pow(const PuiseuxSeries& a, unsigned k);
Rational coefficient(const PuiseuxSeries& a, int e);

enum class ModularName { theta3, theta3_cubed, theta2_4, theta4_4, lambda, one_minus_2lambda, J, J_inv };

ModularName modular_name_from_string(std::string_view s);
std::string to_string(ModularName n);

// named expansion, accurate at least below `order` (order >= 1)
PuiseuxSeries modular_series(ModularName name, int order);

// num/den in lowest terms (mpq_class(n, d) does not reduce on its own)
Rational make_rational(long num, long den);
std::string rational_to_string(const Rational& r);
Rational rational_from_string(const std::string& s);

void to_json(nlohmann::json& j, const PuiseuxSeries& s);
void from_json(const nlohmann::json& j, PuiseuxSeries& s);

}  // namespace thetaint
