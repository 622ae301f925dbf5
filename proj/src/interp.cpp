#include "thetaint/interp.hpp"

#include <cmath>

#include "thetaint/basis.hpp"
#include "thetaint/oracle.hpp"

namespace thetaint {

namespace {

const double kPi = boost::math::constants::pi<double>();
const cplx kI(0, 1);

nlohmann::json complex_list(const std::vector<cplx>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const cplx& z : v) a.push_back({z.real(), z.imag()});
  return a;
}

cplx complex_from(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0};
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("SampleSet: complex numbers are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

// Sum over n > N of envelope(n) * m_N * r^{n-N}, with r the decay ratio of the last samples.
double extrapolated_tail(const std::vector<double>& mags, const std::function<double(int)>& envelope, int N) {
  if (mags.size() < 2) return mags.empty() ? 0 : INFINITY;
  const std::size_t last = mags.size() - 1;
  const std::size_t back = std::min<std::size_t>(4, last);
  const double mN = mags[last];
  if (mN == 0) return 0;
  const double m0 = mags[last - back];
  if (m0 == 0) return INFINITY;
  const double r = std::pow(mN / m0, 1.0 / back);
  if (!(r < 1)) return INFINITY;
  double s = 0, term = mN;
  for (int n = N + 1; n < N + 100000; ++n) {
    term *= r;
    const double t = envelope(n) * term;
    s += t;
    if (t < 1e-30 * (s + 1e-300)) break;
  }
  return s;
}

}  // namespace

void SampleSet::validate() const {
  if (N < 0) throw std::invalid_argument("SampleSet: N must be >= 0");
  const std::size_t want = parity == Parity::even ? N + 1 : N;
  if (f.size() != want || fhat.size() != want)
    throw std::invalid_argument("SampleSet: sample count does not match parity and N");
  if (parity == Parity::odd && !deriv_pair) throw std::invalid_argument("SampleSet: odd sets need deriv_pair");
  if (parity == Parity::even && deriv_pair) throw std::invalid_argument("SampleSet: deriv_pair is for odd sets only");
}

void to_json(nlohmann::json& j, const SampleSet& s) {
  j = nlohmann::json{{"parity", to_string(s.parity)}, {"N", s.N}, {"f", complex_list(s.f)}, {"fhat", complex_list(s.fhat)}};
  if (s.deriv_pair) {
    const auto [a, b] = *s.deriv_pair;
    j["deriv_pair"] = {a.real(), a.imag(), b.real(), b.imag()};
  }
}

void from_json(const nlohmann::json& j, SampleSet& s) {
  s.parity = parity_from_string(j.at("parity").get<std::string>());
  s.N = j.at("N").get<int>();
  s.f.clear();
  s.fhat.clear();
  for (const auto& z : j.at("f")) s.f.push_back(complex_from(z));
  for (const auto& z : j.at("fhat")) s.fhat.push_back(complex_from(z));
  s.deriv_pair.reset();
  if (j.contains("deriv_pair")) {
    const auto& d = j.at("deriv_pair");
    if (!d.is_array() || d.size() != 4) throw std::invalid_argument("SampleSet: deriv_pair is [re, im, re, im]");
    s.deriv_pair = std::make_pair(cplx(d[0].get<double>(), d[1].get<double>()), cplx(d[2].get<double>(), d[3].get<double>()));
  }
  s.validate();
}

SampleSet gaussian_samples(Parity parity, cplx tau, int N) {
  if (!(tau.imag() > 0)) throw std::invalid_argument("gaussian_samples: Im(tau) must be positive");
  if (N < 0) throw std::invalid_argument("gaussian_samples: N must be >= 0");
  SampleSet s;
  s.parity = parity;
  s.N = N;
  const cplx dual = -1.0 / tau;
  const cplx w = -kI * tau;
  // transforms: e_tau -> (-i tau)^{-1/2} e_{-1/tau}, o_tau -> -i (-i tau)^{-3/2} o_{-1/tau}
  const cplx factor = parity == Parity::even ? std::pow(w, -0.5) : -kI * std::pow(w, -1.5);
  for (int n = parity == Parity::even ? 0 : 1; n <= N; ++n) {
    s.f.push_back(std::exp(kI * kPi * tau * double(n)));
    s.fhat.push_back(factor * std::exp(kI * kPi * dual * double(n)));
  }
  if (parity == Parity::odd) s.deriv_pair = std::make_pair(cplx(1), factor);
  return s;
}

Reconstruction reconstruct_even(const SampleSet& s, double x) {
  if (s.parity != Parity::even) throw std::invalid_argument("reconstruct_even: sample set is odd");
  s.validate();
  Reconstruction r;
  std::vector<double> mags;
  for (int n = 0; n <= s.N; ++n) {
    const APair a = eval_a(n, x);
    r.value += a.a.value * s.f[n] + a.ahat.value * s.fhat[n];
    r.basis_error += a.a.abs_error_estimate * std::abs(s.f[n]) + a.ahat.abs_error_estimate * std::abs(s.fhat[n]);
    mags.push_back(std::max(std::abs(s.f[n]), std::abs(s.fhat[n])));
    ++r.terms;
  }
  r.tail_estimate = extrapolated_tail(mags, [](int n) { return 2 * kGrowthEven * (1.0 + double(n) * n); }, s.N);
  return r;
}

Reconstruction reconstruct_odd(const SampleSet& s, double x) {
  if (s.parity != Parity::odd) throw std::invalid_argument("reconstruct_odd: sample set is even");
  s.validate();
  Reconstruction r;
  const auto [d0, dh0] = *s.deriv_pair;
  r.value = d0_closed_form(x) * (d0 + kI * dh0) / 2.0;
  std::vector<double> mags;
  for (int n = 1; n <= s.N; ++n) {
    const CPair c = eval_c(n, x);
    const cplx chat = -kI * c.s.value;
    r.value += c.c.value * s.f[n - 1] - chat * s.fhat[n - 1];
    r.basis_error += c.c.abs_error_estimate * std::abs(s.f[n - 1]) + c.s.abs_error_estimate * std::abs(s.fhat[n - 1]);
    mags.push_back(std::max(std::abs(s.f[n - 1]), std::abs(s.fhat[n - 1])));
    ++r.terms;
  }
  const double ax = std::max(1.0, std::abs(x));
  r.tail_estimate =
      extrapolated_tail(mags, [ax](int n) { return 2 * kGrowthOdd * std::pow(1.0 + n, 2.5) * ax; }, s.N);
  return r;
}

Reconstruction reconstruct(const SampleSet& s, double x) {
  return s.parity == Parity::even ? reconstruct_even(s, x) : reconstruct_odd(s, x);
}

R3Check r3_identity_check(const std::function<cplx(double)>& f, const std::function<cplx(double)>& fhat, int N,
                          std::optional<std::pair<cplx, cplx>> deriv) {
  if (N < 0) throw std::invalid_argument("r3_identity_check: N must be >= 0");
  cplx df, dfh;
  if (deriv) {
    std::tie(df, dfh) = *deriv;
  } else {
    df = numeric_derivative_at_zero_complex(f, 1e-3).value;
    dfh = numeric_derivative_at_zero_complex(fhat, 1e-3).value;
  }
  cplx s = df - kI * dfh;
  std::vector<double> mags;
  for (int n = 1; n <= N; ++n) {
    const double rt = std::sqrt(double(n));
    const cplx fn = f(rt) / rt, fhn = fhat(rt) / rt;
    s += double(r3(n)) * (fn - kI * fhn);
    mags.push_back(std::max(std::abs(fn), std::abs(fhn)));
  }
  // r3(n) <= 12 n (crudely) for the tail
  const double tail = extrapolated_tail(mags, [](int n) { return 2 * 12.0 * n; }, N);
  return {std::abs(s), tail};
}

}  // namespace thetaint
