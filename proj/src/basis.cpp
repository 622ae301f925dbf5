#include "thetaint/basis.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <unordered_map>

#include "thetaint/modular.hpp"
#include "thetaint/precision.hpp"
#include "thetaint/quadrature.hpp"

namespace thetaint {

const double kGrowthEven = 2.0;
const double kGrowthOdd = 0.5;

std::string to_string(Method m) {
  switch (m) {
    case Method::automatic: return "automatic";
    case Method::contour: return "contour";
    case Method::laplace: return "laplace";
    case Method::closed_form: return "closed_form";
    case Method::series_tail: return "series_tail";
  }
  return "?";
}

int default_digits(int n) {
  // the line integrand is ~e^{pi n} before the principal part cancels
  const double need = 1.37 * n + 14;
  if (need <= 16) return 16;
  if (need <= 50) return 50;
  if (need <= 100) return 100;
  if (need <= 150) return 150;
  throw std::invalid_argument("basis index too large for the available precision tiers");
}

double d0_closed_form(double x) {
  if (x == 0) return 0;
  const double pi = boost::math::constants::pi<double>();
  // sinh overflows long after sin(pi x^2)/sinh(pi x) underflows
  if (std::abs(x) > 230) return 0;
  return std::sin(pi * x * x) / std::sinh(pi * x);
}

namespace {

using FormKey = std::tuple<Parity, Eps, int>;

template <class Real>
int digits_of() {
  if constexpr (std::is_same_v<Real, double>) return 16;
  else return std::numeric_limits<Real>::digits10;
}

template <class Real>
double to_double(const Real& r) {
  if constexpr (std::is_same_v<Real, double>) return r;
  else return r.template convert_to<double>();
}

// natural log of |c|, for coefficients far outside the double range
double log_abs(const Rational& c) {
  long e = 0;
  double m = mpz_get_d_2exp(&e, c.get_num_mpz_t());
  long ed = 0;
  double md = mpz_get_d_2exp(&ed, c.get_den_mpz_t());
  return std::log(std::abs(m)) - std::log(md) + (e - ed) * std::log(2.0);
}

int expansion_order(int n, int digits) {
  const double L = digits * std::log(10.0) / boost::math::constants::pi<double>() + 8;
  const double r = std::sqrt(double(n)) + std::sqrt(n + L);
  return static_cast<int>(1.2 * r * r) + 10;
}

// Everything about one form needed on the line 1 + it, in one precision.
template <class Real>
struct LineData {
  Parity parity;
  Eps eps;
  int n = 0;
  std::vector<Real> poly;
  std::vector<Real> coef;  // coef[k + n] = coefficient of p^k, -n <= k < K
  int K = 0;

  std::mutex mu;
  std::unordered_map<std::uint64_t, std::pair<Real, Real>> nodes;  // g(1+it), principal part

  const Real& c(int k) const { return coef[k + n]; }

  void build(Parity par, Eps e, int idx) {
    parity = par;
    eps = e;
    n = idx;
    const FormSpec& spec = build_form(par, e, idx);
    poly = poly_as<Real>(spec);
    const double pi = boost::math::constants::pi<double>();
    const int digits = digits_of<Real>();
    K = expansion_order(idx, digits);
    for (int attempt = 0;; ++attempt) {
      PuiseuxSeries s = form_q_expansion(spec, K);
      // the last few terms of sum c_k e^{-pi k} must be negligible
      double peak = 0, last = -1e300;
      for (int k = 1; k < K; ++k) {
        const Rational ck = s.coefficient(k);
        if (ck == 0) continue;
        const double lg = log_abs(ck) - pi * k;
        peak = std::max(peak, lg);
        if (k >= K - 5) last = std::max(last, lg);
      }
      if (last < peak - digits * std::log(10.0) - 5 || attempt == 3) {
        coef.clear();
        for (int k = -idx; k < K; ++k) coef.push_back(to_real<Real>(s.coefficient(k)));
        break;
      }
      K = static_cast<int>(K * 1.5);
    }
  }

  std::pair<Real, Real> node(const Real& t, const NodeId& id) {
    const auto key = id.key();
    {
      std::lock_guard<std::mutex> lock(mu);
      auto it = nodes.find(key);
      if (it != nodes.end()) return it->second;
    }
    using std::exp;
    const Real pi = boost::math::constants::pi<Real>();
    const LineValues<Real> v = line_values<Real>(t);
    const Real g = form_from_values(parity, eps, poly, v.theta, v.J_inv, v.m2l_J_inv);
    // p^k at 1 + it is (-1)^k e^{-pi k t}
    const Real rinv = exp(pi * t);
    Real pp(0), pw(1);
    for (int k = 0; k >= -n; --k) {
      if (c(k) != 0) pp += ((-k) % 2 ? Real(-c(k)) : c(k)) * pw;
      pw *= rinv;
    }
    std::pair<Real, Real> val{g, pp};
    std::lock_guard<std::mutex> lock(mu);
    nodes.emplace(key, val);
    return val;
  }
};

// Half the form times dz/ds on the semicircle z(s) = e^{i pi (1 - s)}.
template <class Real>
struct ContourData {
  using C = std::complex<Real>;
  FormSpec spec;
  std::vector<Real> poly;
  Real delta;

  std::mutex mu;
  std::unordered_map<std::uint64_t, std::pair<C, C>> nodes;

  std::pair<C, C> compute(const Real& s) const {
    const Real pi = boost::math::constants::pi<Real>();
    const C z = std::polar(Real(1), pi * (Real(1) - s));
    const C g = eval_form<Real>(spec, poly, z);
    return {z, Real(0.5) * g * C(Real(0), -pi) * z};
  }

  void build(Parity par, Eps e, int idx) {
    spec = build_form(par, e, idx);
    poly = poly_as<Real>(spec);
    // clip where the form has decayed at both cusps; |e^{i pi x^2 z}| <= 1 so this is x-independent
    using std::abs;
    const Real scale = std::max(Real(1), Real(std::abs(compute(Real(0.5)).second)));
    const Real thr = Real(1e-17) * scale;
    delta = Real(0.25);
    for (int k = 0; k < 40; ++k) {
      bool small = true;
      for (Real s : {delta, Real(delta / 2), Real(1 - delta), Real(1 - delta / 2)})
        if (Real(std::abs(compute(s).second)) > thr) small = false;
      if (small) break;
      delta /= 2;
    }
  }

  std::pair<C, C> node(const Real& s, const NodeId& id) {
    const auto key = id.key();
    {
      std::lock_guard<std::mutex> lock(mu);
      auto it = nodes.find(key);
      if (it != nodes.end()) return it->second;
    }
    auto val = compute(s);
    std::lock_guard<std::mutex> lock(mu);
    nodes.emplace(key, val);
    return val;
  }
};

template <class Data>
struct Registry {
  struct Entry {
    std::once_flag once;
    Data data;
  };
  std::mutex mu;
  std::map<FormKey, std::shared_ptr<Entry>> entries;

  Data& get(Parity par, Eps e, int n) {
    std::shared_ptr<Entry> entry;
    {
      std::lock_guard<std::mutex> lock(mu);
      auto& slot = entries[{par, e, n}];
      if (!slot) slot = std::make_shared<Entry>();
      entry = slot;
    }
    std::call_once(entry->once, [&] { entry->data.build(par, e, n); });
    return entry->data;
  }
  void clear() {
    std::lock_guard<std::mutex> lock(mu);
    entries.clear();
  }
};

template <class Real>
Registry<LineData<Real>>& line_registry() {
  static Registry<LineData<Real>> r;
  return r;
}

template <class Real>
Registry<ContourData<Real>>& contour_registry() {
  static Registry<ContourData<Real>> r;
  return r;
}

// 1/2 \int form(z) e^{i pi x^2 z} dz through the vertical line, x >= 0
template <class Real>
EvalReport line_integral(Parity par, Eps e, int n, double xd, bool subtract, const EvalOptions& opt) {
  using std::abs;
  using std::exp;
  using std::sin;
  LineData<Real>& D = line_registry<Real>().get(par, e, n);
  const Real pi = boost::math::constants::pi<Real>();
  const Real x(xd);
  const Real X2 = x * x;
  if (!subtract && !(X2 > Real(n))) throw std::invalid_argument("plain line integral needs x^2 > n");

  Real sincsum(0), sincmag(0);
  if (subtract) {
    for (int k = -n; k <= 0; ++k) {
      if (D.c(k) == 0) continue;
      const Real u = X2 + Real(k);
      const Real sc = u == 0 ? Real(1) : Real(sin(pi * u) / (pi * u));
      sincsum += D.c(k) * sc;
      sincmag += abs(D.c(k));
    }
  }
  const Real S = sin(pi * X2);

  Real maxmag(0);
  auto f = [&](const Real& t, const NodeId& id) -> Real {
    auto [g, pp] = D.node(t, id);
    const Real m = abs(g) + abs(pp);
    if (m > maxmag) maxmag = m;
    return (subtract ? Real(g - pp) : g) * exp(-pi * X2 * t);
  };
  QuadOptions qo;
  qo.abs_tol = opt.abs_tol;
  auto q = adaptive_gauss_legendre<Real, Real>(f, Real(0), Real(1), qo);

  // \int_1^\infty of the q-expansion part, term by term
  const int k0 = subtract ? 1 : -n;
  const Real em = exp(-pi);
  Real ek = exp(-pi * (X2 + Real(k0)));
  Real tail(0), tailmag(0), lastterm(0);
  for (int k = k0; k < D.K; ++k, ek *= em) {
    const Real& ck = D.c(k);
    if (ck == 0) continue;
    const Real term = (k % 2 ? Real(-ck) : ck) * ek / (pi * (Real(k) + X2));
    tail += term;
    tailmag += abs(term);
    lastterm = abs(term);
  }

  EvalReport rep;
  rep.method = Method::laplace;
  rep.digits = digits_of<Real>();
  rep.value = to_double(Real(sincsum + S * (q.value + tail)));
  const Real eps = std::numeric_limits<Real>::epsilon();
  const Real err = abs(S) * (q.error + 10 * lastterm + eps * 100 * (maxmag + tailmag)) + eps * 10 * sincmag;
  rep.abs_error_estimate = to_double(err) + 1e-16 * std::abs(rep.value);
  rep.imag_residual = 0;
  if (!q.converged) throw QuadratureError("line integral did not converge", rep);
  return rep;
}

template <class Real>
EvalReport contour_integral(Parity par, Eps e, int n, double xd, const EvalOptions& opt) {
  using C = std::complex<Real>;
  ContourData<Real>& D = contour_registry<Real>().get(par, e, n);
  const Real pi = boost::math::constants::pi<Real>();
  const Real X2 = Real(xd) * Real(xd);
  auto f = [&](const Real& s, const NodeId& id) -> C {
    auto [z, w] = D.node(s, id);
    return w * std::exp(C(Real(0), pi * X2) * z);
  };
  QuadOptions qo;
  qo.abs_tol = opt.abs_tol;
  auto q = adaptive_gauss_legendre<Real, C>(f, D.delta, Real(1) - D.delta, qo);
  EvalReport rep;
  rep.method = Method::contour;
  rep.digits = digits_of<Real>();
  rep.value = to_double(q.value.real());
  rep.imag_residual = std::abs(to_double(q.value.imag()));
  rep.abs_error_estimate =
      to_double(Real(q.error + 16 * std::numeric_limits<Real>::epsilon() * q.magnitude)) + 1e-16 * std::abs(rep.value);
  if (!q.converged) throw QuadratureError("contour integral did not converge", rep);
  // b and d are real, so a sizeable imaginary part means the value is wrong
  if (!(rep.imag_residual < 1e-8 * (1 + std::abs(rep.value))))
    throw QuadratureError("contour integral has a large imaginary part", rep);
  return rep;
}

template <class Real>
EvalReport dispatch_t(Method m, Parity par, Eps e, int n, double x, bool subtract, const EvalOptions& opt) {
  if (m == Method::contour) return contour_integral<Real>(par, e, n, x, opt);
  return line_integral<Real>(par, e, n, x, subtract, opt);
}

EvalReport dispatch(int digits, Method m, Parity par, Eps e, int n, double x, bool subtract, const EvalOptions& opt) {
  switch (digits) {
    case 16: return dispatch_t<double>(m, par, e, n, x, subtract, opt);
    case 50: return dispatch_t<real50>(m, par, e, n, x, subtract, opt);
    case 100: return dispatch_t<real100>(m, par, e, n, x, subtract, opt);
    case 150: return dispatch_t<real150>(m, par, e, n, x, subtract, opt);
    default: throw std::invalid_argument("digits must be 16, 50, 100 or 150");
  }
}

struct ResultCache {
  std::mutex mu;
  std::map<std::tuple<int, int, int, std::uint64_t, int, int, double>, EvalReport> values;
};

ResultCache& results() {
  static ResultCache c;
  return c;
}

// 1/2 \int form e^{i pi x^2 z} dz, x >= 0
EvalReport eval_integral(Parity par, Eps e, int n, double x, const EvalOptions& opt) {
  if (n < 0) throw std::invalid_argument("basis index must be >= 0");
  if (!std::isfinite(x)) throw std::invalid_argument("x must be finite");
  if (e == Eps::minus && n == 0) return EvalReport{0, 0, Method::closed_form, 0, 16};
  x = std::abs(x);
  std::uint64_t bits;
  std::memcpy(&bits, &x, sizeof bits);
  const auto key = std::make_tuple(int(par), int(e), n, bits, int(opt.method), opt.digits, opt.abs_tol);
  {
    auto& c = results();
    std::lock_guard<std::mutex> lock(c.mu);
    auto it = c.values.find(key);
    if (it != c.values.end()) return it->second;
  }
  const bool above = x * x > n + kLaplaceMargin;
  Method m = opt.method;
  int digits = opt.digits;
  bool subtract = !above;
  switch (m) {
    case Method::automatic:
      if (above) {
        m = Method::laplace;
      } else if (n <= 4) {
        m = Method::contour;
        if (!digits) digits = 16;
      } else {
        m = Method::laplace;
      }
      break;
    case Method::contour:
    case Method::laplace: break;
    default: throw std::invalid_argument("method must be automatic, contour or laplace");
  }
  if (!digits) digits = default_digits(n);
  EvalReport rep = dispatch(digits, m, par, e, n, x, subtract, opt);
  auto& c = results();
  std::lock_guard<std::mutex> lock(c.mu);
  c.values.emplace(key, rep);
  return rep;
}

}  // namespace

EvalReport eval_b(Eps eps, int n, double x, const EvalOptions& opt) {
  return eval_integral(Parity::even, eps, n, x, opt);
}

EvalReport eval_d(Eps eps, int n, double x, const EvalOptions& opt) {
  if (eps == Eps::minus && n == 0) return EvalReport{0, 0, Method::closed_form, 0, 16};
  if (x == 0) {
    if (n < 0) throw std::invalid_argument("basis index must be >= 0");
    return EvalReport{0, 0, Method::closed_form, 0, 16};
  }
  EvalReport r = eval_integral(Parity::odd, eps, n, x, opt);
  const double ax = std::abs(x);
  r.value *= x;
  r.abs_error_estimate *= ax;
  r.imag_residual *= ax;
  return r;
}

namespace {

EvalReport combine(const EvalReport& p, const EvalReport& m, double sm) {
  EvalReport r;
  r.value = 0.5 * (p.value + sm * m.value);
  r.abs_error_estimate = 0.5 * (p.abs_error_estimate + m.abs_error_estimate);
  r.imag_residual = 0.5 * (p.imag_residual + m.imag_residual);
  r.method = p.method;
  r.digits = std::min(p.digits, m.digits);
  return r;
}

}  // namespace

APair eval_a(int n, double x, const EvalOptions& opt) {
  const EvalReport p = eval_b(Eps::plus, n, x, opt);
  const EvalReport m = eval_b(Eps::minus, n, x, opt);
  return {combine(p, m, 1), combine(p, m, -1)};
}

CPair eval_c(int n, double x, const EvalOptions& opt) {
  const EvalReport p = eval_d(Eps::plus, n, x, opt);
  const EvalReport m = eval_d(Eps::minus, n, x, opt);
  return {combine(p, m, 1), combine(p, m, -1)};
}

FResult generating_F(Parity parity, Eps eps, cplx tau, double x, int N) {
  if (!(tau.imag() > 0)) throw std::invalid_argument("generating_F: Im(tau) must be positive");
  if (N < 1) throw std::invalid_argument("generating_F: N must be >= 1");
  const double pi = boost::math::constants::pi<double>();
  const double qa = std::exp(-pi * tau.imag());
  auto envelope = [&](int n) {
    const double g = parity == Parity::even ? kGrowthEven * (1.0 + double(n) * n)
                                            : kGrowthOdd * std::pow(1.0 + n, 2.5) * std::max(1.0, std::abs(x));
    return g * std::pow(qa, n);
  };
  FResult r{cplx(0), 0, 0};
  for (int n = eps == Eps::plus ? 0 : 1; n <= N; ++n) {
    const double env = envelope(n);
    if (env < 1e-18) {
      r.tail_bound += env;
      continue;
    }
    const EvalReport b = parity == Parity::even ? eval_b(eps, n, x) : eval_d(eps, n, x);
    r.value += b.value * std::exp(cplx(0, pi * n) * tau);
    r.tail_bound += b.abs_error_estimate * std::pow(qa, n);
    ++r.terms_evaluated;
  }
  // sum_{n > N} envelope(n), bounded by a geometric series once the ratio is below 1
  for (int n = N + 1; n < N + 10000; ++n) {
    const double env = envelope(n);
    r.tail_bound += env;
    if (env < 1e-30) break;
  }
  return r;
}

void clear_basis_caches() {
  {
    auto& c = results();
    std::lock_guard<std::mutex> lock(c.mu);
    c.values.clear();
  }
  line_registry<double>().clear();
  line_registry<real50>().clear();
  line_registry<real100>().clear();
  line_registry<real150>().clear();
  contour_registry<double>().clear();
  contour_registry<real50>().clear();
  contour_registry<real100>().clear();
  contour_registry<real150>().clear();
}

}  // namespace thetaint
