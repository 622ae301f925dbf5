#include "thetaint/qseries.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

namespace thetaint {

PuiseuxSeries::PuiseuxSeries(int order) : min_exp_(order), order_(order) {}

PuiseuxSeries::PuiseuxSeries(int min_exp, std::vector<Rational> coeffs, int order)
    : min_exp_(min_exp), order_(order), coeffs_(std::move(coeffs)) {
  if (min_exp_ > order_) min_exp_ = order_;
  if (static_cast<long>(coeffs_.size()) > static_cast<long>(order_) - min_exp_)
    coeffs_.resize(order_ - min_exp_);
  for (auto& c : coeffs_) c.canonicalize();
  normalize();
}

void PuiseuxSeries::normalize() {
  // trailing zeros are implicit; leading zeros are stripped
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
  if (lead == coeffs_.size()) {
    coeffs_.clear();
    min_exp_ = order_;
    return;
  }
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + lead);
    min_exp_ += static_cast<int>(lead);
  }
}

PuiseuxSeries PuiseuxSeries::monomial(const Rational& c, int e, int order) {
  if (e >= order || c == 0) return PuiseuxSeries(order);
  return PuiseuxSeries(e, {c}, order);
}

bool PuiseuxSeries::integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Rational& c) { return c.get_den() == 1; });
}

Rational PuiseuxSeries::coefficient(int e) const {
  if (e >= order_) throw std::out_of_range("coefficient beyond truncation order");
  if (e < min_exp_ || e - min_exp_ >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[e - min_exp_];
}

PuiseuxSeries PuiseuxSeries::truncate(int order) const {
  if (order >= order_) return *this;
  return PuiseuxSeries(min_exp_, coeffs_, order);
}

PuiseuxSeries PuiseuxSeries::operator-() const {
  PuiseuxSeries r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  int order = std::min(a.order(), b.order());
  int lo = std::min(a.min_exp(), b.min_exp());
  if (lo >= order) return PuiseuxSeries(order);
  long hi = std::max(a.min_exp() + static_cast<long>(a.coeffs().size()),
                     b.min_exp() + static_cast<long>(b.coeffs().size()));
  std::vector<Rational> c(std::min<long>(order, hi) - lo);
  for (std::size_t k = 0; k < a.coeffs().size(); ++k) {
    int e = a.min_exp() + static_cast<int>(k);
    if (e >= order) break;
    c[e - lo] += a.coeffs()[k];
  }
  for (std::size_t k = 0; k < b.coeffs().size(); ++k) {
    int e = b.min_exp() + static_cast<int>(k);
    if (e >= order) break;
    c[e - lo] += b.coeffs()[k];
  }
  return PuiseuxSeries(lo, std::move(c), order);
}

PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b) { return a + (-b); }

PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  // a = p^ma (a0 + ... ) known below Oa, so a*b is known below min(Oa + mb, Ob + ma)
  long oa = static_cast<long>(a.order()) + b.min_exp();
  long ob = static_cast<long>(b.order()) + a.min_exp();
  int order = static_cast<int>(std::clamp(std::min(oa, ob), long(INT_MIN / 2), long(INT_MAX / 2)));
  if (a.is_zero() || b.is_zero()) return PuiseuxSeries(order);
  int lo = a.min_exp() + b.min_exp();
  if (lo >= order) return PuiseuxSeries(order);
  const auto& ac = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t len = std::min<long>(static_cast<long>(order) - lo, ac.size() + bc.size() - 1);
  std::vector<Rational> c(len);
  if (a.integral() && b.integral()) {
    // integer fast path: accumulate numerators with addmul, no gcd work
    mpz_class acc;
    for (std::size_t k = 0; k < len; ++k) {
      acc = 0;
      std::size_t i0 = k + 1 > bc.size() ? k + 1 - bc.size() : 0;
      std::size_t i1 = std::min(k, ac.size() - 1);
      for (std::size_t i = i0; i <= i1 && i < ac.size(); ++i)
        mpz_addmul(acc.get_mpz_t(), ac[i].get_num_mpz_t(), bc[k - i].get_num_mpz_t());
      c[k] = Rational(acc);
    }
  } else {
    for (std::size_t k = 0; k < len; ++k) {
      std::size_t i0 = k + 1 > bc.size() ? k + 1 - bc.size() : 0;
      for (std::size_t i = i0; i <= k && i < ac.size(); ++i) c[k] += ac[i] * bc[k - i];
    }
  }
  return PuiseuxSeries(lo, std::move(c), order);
}

PuiseuxSeries operator*(const Rational& s, const PuiseuxSeries& a) {
  if (s == 0) return PuiseuxSeries(a.order());
  std::vector<Rational> c = a.coeffs();
  for (auto& x : c) x *= s;
  return PuiseuxSeries(a.min_exp(), std::move(c), a.order());
}

PuiseuxSeries operator/(const PuiseuxSeries& a, const PuiseuxSeries& b) { return a * series_invert(b); }

PuiseuxSeries series_add(const PuiseuxSeries& a, const PuiseuxSeries& b) { return a + b; }
PuiseuxSeries series_mul(const PuiseuxSeries& a, const PuiseuxSeries& b) { return a * b; }

PuiseuxSeries series_invert(const PuiseuxSeries& a) {
  if (a.is_zero()) throw std::domain_error("series_invert: zero series is not invertible");
  const int m = a.min_exp();
  const auto& ac = a.coeffs();
  if (ac.size() == 1) return PuiseuxSeries::monomial(1 / ac[0], -m, a.order() - 2 * m);
  const long full = static_cast<long>(a.order()) - m;
  if (full > 1000000) throw std::domain_error("series_invert: truncation order too large");
  const std::size_t len = full;
  std::vector<Rational> b(len);
  const Rational inv0 = 1 / ac[0];
  const bool integer_unit = a.integral() && (ac[0] == 1 || ac[0] == -1);
  b[0] = inv0;
  if (integer_unit) {
    mpz_class acc;
    for (std::size_t k = 1; k < len; ++k) {
      acc = 0;
      for (std::size_t j = 1; j <= k && j < ac.size(); ++j)
        mpz_addmul(acc.get_mpz_t(), ac[j].get_num_mpz_t(), b[k - j].get_num_mpz_t());
      b[k] = Rational(-acc * inv0.get_num());
    }
  } else {
    for (std::size_t k = 1; k < len; ++k) {
      Rational acc = 0;
      for (std::size_t j = 1; j <= k && j < ac.size(); ++j) acc += ac[j] * b[k - j];
      b[k] = -acc * inv0;
    }
  }
  return PuiseuxSeries(-m, std::move(b), a.order() - 2 * m);
}

PuiseuxSeries series_pow(const PuiseuxSeries& a, unsigned k) {
  PuiseuxSeries r = PuiseuxSeries::one(INT_MAX / 4);
  PuiseuxSeries base = a;
  while (k) {
    if (k & 1u) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

Rational coefficient(const PuiseuxSeries& a, int e) { return a.coefficient(e); }

ModularName modular_name_from_string(std::string_view s) {
  if (s == "theta3") return ModularName::theta3;
  if (s == "theta3_cubed") return ModularName::theta3_cubed;
  if (s == "theta2_4") return ModularName::theta2_4;
  if (s == "theta4_4") return ModularName::theta4_4;
  if (s == "lambda") return ModularName::lambda;
  if (s == "one_minus_2lambda") return ModularName::one_minus_2lambda;
  if (s == "J") return ModularName::J;
  if (s == "J_inv") return ModularName::J_inv;
  throw std::invalid_argument("unknown modular series name: " + std::string(s));
}

std::string to_string(ModularName n) {
  switch (n) {
    case ModularName::theta3: return "theta3";
    case ModularName::theta3_cubed: return "theta3_cubed";
    case ModularName::theta2_4: return "theta2_4";
    case ModularName::theta4_4: return "theta4_4";
    case ModularName::lambda: return "lambda";
    case ModularName::one_minus_2lambda: return "one_minus_2lambda";
    case ModularName::J: return "J";
    case ModularName::J_inv: return "J_inv";
  }
  return "?";
}

namespace {

PuiseuxSeries theta3_series(int order) {
  std::vector<Rational> c(std::max(order, 1));
  for (long n = 0; n * n < order; ++n) c[n * n] += n == 0 ? 1 : 2;
  return PuiseuxSeries(0, std::move(c), order);
}

PuiseuxSeries theta4_series(int order) {
  std::vector<Rational> c(std::max(order, 1));
  for (long n = 0; n * n < order; ++n) c[n * n] += n == 0 ? 1 : (n % 2 ? -2 : 2);
  return PuiseuxSeries(0, std::move(c), order);
}

PuiseuxSeries theta2_4_series(int order) {
  // p * (sum_{k>=0} 2 p^{k(k+1)})^4
  std::vector<Rational> c(std::max(order, 1));
  for (long k = 0; k * (k + 1) < order - 1; ++k) c[k * (k + 1)] = 2;
  PuiseuxSeries s(0, std::move(c), order - 1);
  return PuiseuxSeries::monomial(1, 1, INT_MAX / 4) * series_pow(s, 4);
}

}  // namespace

PuiseuxSeries modular_series(ModularName name, int order) {
  if (order < 1) throw std::invalid_argument("modular_series: order must be >= 1");
  switch (name) {
    case ModularName::theta3: return theta3_series(order);
    case ModularName::theta3_cubed: return series_pow(theta3_series(order), 3);
    case ModularName::theta2_4: return theta2_4_series(order);
    case ModularName::theta4_4: return series_pow(theta4_series(order), 4);
    case ModularName::lambda:
      return theta2_4_series(order) / series_pow(theta3_series(order), 4);
    case ModularName::one_minus_2lambda:
      return (series_pow(theta4_series(order), 4) - theta2_4_series(order)) /
             series_pow(theta3_series(order), 4);
    case ModularName::J: {
      PuiseuxSeries lam = modular_series(ModularName::lambda, order);
      return Rational(1, 16) * (lam * (PuiseuxSeries::one(order) - lam));
    }
    case ModularName::J_inv:
      return series_invert(modular_series(ModularName::J, order + 2)).truncate(order);
  }
  throw std::invalid_argument("modular_series: unknown name");
}

Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string rational_to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational rational_from_string(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

void to_json(nlohmann::json& j, const PuiseuxSeries& s) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (int e = s.min_exp(); e < s.order(); ++e) coeffs.push_back(rational_to_string(s.coefficient(e)));
  j = nlohmann::json{{"min_exp", s.min_exp()}, {"order", s.order()}, {"coeffs", coeffs}};
}

void from_json(const nlohmann::json& j, PuiseuxSeries& s) {
  std::vector<Rational> c;
  for (const auto& x : j.at("coeffs")) c.push_back(rational_from_string(x.get<std::string>()));
  s = PuiseuxSeries(j.at("min_exp").get<int>(), std::move(c), j.at("order").get<int>());
}

}  // namespace thetaint
