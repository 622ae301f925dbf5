#include "thetaint/forms.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace thetaint {

std::string to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }
std::string to_string(Eps e) { return e == Eps::plus ? "+" : "-"; }

Parity parity_from_string(const std::string& s) {
  if (s == "even") return Parity::even;
  if (s == "odd") return Parity::odd;
  throw std::invalid_argument("parity must be even or odd: " + s);
}

Eps eps_from_string(const std::string& s) {
  if (s == "+" || s == "plus") return Eps::plus;
  if (s == "-" || s == "minus") return Eps::minus;
  throw std::invalid_argument("eps must be + or -: " + s);
}

PuiseuxSeries form_prefactor(Parity parity, Eps eps, int order) {
  PuiseuxSeries pre = parity == Parity::even ? modular_series(ModularName::theta3_cubed, order)
                                             : modular_series(ModularName::theta3, order);
  if (eps == Eps::minus) pre = pre * modular_series(ModularName::one_minus_2lambda, order);
  return pre;
}

namespace {

using Key = std::tuple<Parity, Eps, int>;

struct FormCache {
  std::mutex mu;
  std::map<Key, std::unique_ptr<FormSpec>> forms;
  std::map<Key, PuiseuxSeries> expansions;
};

FormCache& cache() {
  static FormCache c;
  return c;
}

FormSpec solve_form(Parity parity, Eps eps, int n) {
  // only coefficients of p^{-n} .. p^0 matter; columns B J^{-k} are known below 1
  const int order = 1;
  const PuiseuxSeries jinv = modular_series(ModularName::J_inv, order + n);
  std::vector<PuiseuxSeries> cols;
  cols.push_back(form_prefactor(parity, eps, order + n));
  for (int k = 1; k <= n; ++k) cols.push_back(cols.back() * jinv);

  std::vector<Rational> a(n + 1);
  a[n] = 1;
  // column k starts with p^{-k}, so the p^{-j} condition determines a_j
  const int last = eps == Eps::plus ? 0 : 1;
  for (int j = n - 1; j >= last; --j) {
    Rational s = 0;
    for (int k = j + 1; k <= n; ++k) s += a[k] * cols[k].coefficient(-j);
    a[j] = -s / cols[j].coefficient(-j);
  }
  return FormSpec{parity, eps, n, std::move(a)};
}

PuiseuxSeries expand(const FormSpec& spec, int order) {
  const int n = spec.n;
  const PuiseuxSeries jinv = modular_series(ModularName::J_inv, order + n);
  PuiseuxSeries acc = PuiseuxSeries::monomial(spec.poly[n], 0, order + 2 * n + 8);
  for (int k = n - 1; k >= 0; --k) acc = acc * jinv + PuiseuxSeries::monomial(spec.poly[k], 0, acc.order() + 8);
  return (acc * form_prefactor(spec.parity, spec.eps, order + n)).truncate(order);
}

}  // namespace

const FormSpec& build_form(Parity parity, Eps eps, int n) {
  if (n < 0) throw std::invalid_argument("build_form: n must be >= 0");
  if (eps == Eps::minus && n == 0) throw std::invalid_argument("build_form: no form with eps = - and n = 0");
  auto& c = cache();
  const Key key{parity, eps, n};
  {
    std::lock_guard<std::mutex> lock(c.mu);
    auto it = c.forms.find(key);
    if (it != c.forms.end()) return *it->second;
  }
  // solved outside the lock; a concurrent duplicate computes the same table and is discarded
  auto spec = std::make_unique<FormSpec>(solve_form(parity, eps, n));
  std::lock_guard<std::mutex> lock(c.mu);
  auto [it, inserted] = c.forms.emplace(key, std::move(spec));
  return *it->second;
}

PuiseuxSeries form_q_expansion(const FormSpec& spec, int order) {
  auto& c = cache();
  const Key key{spec.parity, spec.eps, spec.n};
  const bool canonical = spec == build_form(spec.parity, spec.eps, spec.n);
  if (canonical) {
    std::lock_guard<std::mutex> lock(c.mu);
    auto it = c.expansions.find(key);
    if (it != c.expansions.end() && it->second.order() >= order) return it->second.truncate(order);
  }
  PuiseuxSeries s = expand(spec, order);
  if (canonical) {
    std::lock_guard<std::mutex> lock(c.mu);
    auto& slot = c.expansions[key];
    if (slot.order() < s.order()) slot = s;
  }
  return s;
}

cplx eval_form(const FormSpec& spec, cplx z) { return eval_form<double>(spec, poly_as<double>(spec), z); }

cplx eval_kernel(Parity parity, Eps eps, cplx tau, cplx z) {
  if (parity == Parity::odd) {
    // h kernels are the even ones with the arguments switched
    return -eval_kernel(Parity::even, eps == Eps::plus ? Eps::minus : Eps::plus, z, tau);
  }
  const auto mt = eval_modular(tau);
  const auto mz = eval_modular(z);
  const cplx den = mz.J - mt.J;
  if (std::abs(den) < 1e-10 * (std::abs(mz.J) + std::abs(mt.J)))
    throw PoleProximityError("eval_kernel: z is too close to a pole J(z) = J(tau)");
  if (eps == Eps::plus) return mt.theta * mt.one_minus_2lambda * mz.theta_cubed * mz.J / den;
  return mt.theta * mt.J * mz.theta_cubed * mz.one_minus_2lambda / den;
}

void to_json(nlohmann::json& j, const FormSpec& f) {
  nlohmann::json poly = nlohmann::json::array();
  for (const auto& c : f.poly) poly.push_back(rational_to_string(c));
  j = nlohmann::json{{"parity", to_string(f.parity)}, {"eps", to_string(f.eps)}, {"n", f.n}, {"poly", poly}};
}

void from_json(const nlohmann::json& j, FormSpec& f) {
  f.parity = parity_from_string(j.at("parity").get<std::string>());
  f.eps = eps_from_string(j.at("eps").get<std::string>());
  f.n = j.at("n").get<int>();
  f.poly.clear();
  for (const auto& x : j.at("poly")) f.poly.push_back(rational_from_string(x.get<std::string>()));
  if (static_cast<int>(f.poly.size()) != f.n + 1) throw std::invalid_argument("FormSpec: poly must have n + 1 entries");
}

}  // namespace thetaint
