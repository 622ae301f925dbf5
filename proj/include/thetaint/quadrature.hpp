#pragma once

// Adaptive composite Gauss-Legendre quadrature on dyadic panels.
// A panel is accepted once its rule and the rule on its two halves agree to
// the panel's share of the tolerance; the halves' sum is kept.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

#include <boost/math/constants/constants.hpp>

namespace thetaint {

template <class Real>
struct GaussRule {
  std::vector<Real> x, w;  // nodes and weights on [-1, 1]
};

// Newton iteration on P_m from the Chebyshev guesses, in the working precision.
template <class Real>
GaussRule<Real> make_gauss_rule(int m) {
  using std::abs;
  using std::cos;
  GaussRule<Real> r;
  r.x.resize(m);
  r.w.resize(m);
  const Real pi = boost::math::constants::pi<Real>();
  const Real eps = std::numeric_limits<Real>::epsilon();
  for (int i = 0; i < (m + 1) / 2; ++i) {
    Real z = cos(pi * (Real(i) + Real(0.75)) / (Real(m) + Real(0.5)));
    Real dp(0);
    for (int it = 0; it < 100; ++it) {
      Real p0(1), p1 = z;
      for (int k = 2; k <= m; ++k) {
        Real p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (m == 1) p0 = Real(1);
      dp = m * (z * p1 - p0) / (z * z - 1);
      Real dz = p1 / dp;
      z -= dz;
      if (abs(dz) < eps * 4) break;
    }
    // recompute the derivative at the converged node
    Real p0(1), p1 = z;
    for (int k = 2; k <= m; ++k) {
      Real p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = m * (z * p1 - p0) / (z * z - 1);
    r.x[i] = -z;
    r.x[m - 1 - i] = z;
    r.w[i] = r.w[m - 1 - i] = Real(2) / ((1 - z * z) * dp * dp);
  }
  return r;
}

template <class Real>
const GaussRule<Real>& gauss_rule(int m) {
  static std::mutex mu;
  static std::map<int, GaussRule<Real>> rules;
  std::lock_guard<std::mutex> lock(mu);
  auto it = rules.find(m);
  if (it == rules.end()) it = rules.emplace(m, make_gauss_rule<Real>(m)).first;
  return it->second;
}

template <class Real>
Real magnitude(const Real& v) {
  using std::abs;
  return abs(v);
}
template <class Real>
Real magnitude(const std::complex<Real>& v) {
  return std::abs(v);
}

// identifies a node: panel [j, j+1] / 2^level of the base interval, node index i
struct NodeId {
  int level;
  std::int64_t j;
  int i;
  std::uint64_t key() const {
    return (static_cast<std::uint64_t>(level) << 56) ^ (static_cast<std::uint64_t>(j) << 8) ^
           static_cast<std::uint64_t>(i);
  }
};

template <class Real, class V>
struct QuadResult {
  V value{};
  Real error{};
  Real magnitude{};  // integral of |f|, scale of the rounding error
  int panels = 0;
  int evaluations = 0;
  bool converged = true;
};

struct QuadOptions {
  double abs_tol = 1e-13;
  double rel_tol = 0;
  int points = 15;
  int max_level = 40;
  int min_level = 2;
  long max_evaluations = 200000;
};

// f(t, id) -> V. The panel tree is dyadic on [a, b], so ids repeat across calls
// and callers can cache expensive parts of f by id.
template <class Real, class V, class F>
QuadResult<Real, V> adaptive_gauss_legendre(F&& f, const Real& a, const Real& b, const QuadOptions& opt) {
  const auto& rule = gauss_rule<Real>(opt.points);
  QuadResult<Real, V> res;
  res.value = V(0);
  res.error = Real(0);
  res.magnitude = Real(0);
  auto panel = [&](int level, std::int64_t j) {
    const Real h = (b - a) / Real(std::int64_t(1) << level);
    const Real lo = a + h * Real(j);
    const Real half = h / 2;
    V s = V(0);
    Real mag(0);
    for (int i = 0; i < opt.points; ++i) {
      const Real t = lo + half * (rule.x[i] + 1);
      const V v = f(t, NodeId{level, j, i});
      s += v * rule.w[i];
      mag += magnitude(v) * rule.w[i];
    }
    res.evaluations += opt.points;
    return std::pair<V, Real>(V(s * half), Real(mag * half));
  };

  // coarse pass so the first accept/reject decision is not made on one panel
  struct Item {
    int level;
    std::int64_t j;
    std::pair<V, Real> whole;
  };
  std::vector<Item> stack;
  for (std::int64_t j = (std::int64_t(1) << opt.min_level) - 1; j >= 0; --j)
    stack.push_back({opt.min_level, j, panel(opt.min_level, j)});

  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    const auto left = panel(it.level + 1, 2 * it.j);
    const auto right = panel(it.level + 1, 2 * it.j + 1);
    const V refined = left.first + right.first;
    const Real diff = magnitude(refined - it.whole.first);
    const Real share = Real(1) / Real(std::int64_t(1) << it.level);
    Real tol = Real(opt.abs_tol) * share;
    if (opt.rel_tol > 0) {
      Real r = Real(opt.rel_tol) * magnitude(refined);
      if (r > tol) tol = r;
    }
    // nothing is gained by refining below the rounding level of the panel sum
    const Real floor = Real(64) * std::numeric_limits<Real>::epsilon() * (left.second + right.second);
    if (floor > tol) tol = floor;
    const bool exhausted = it.level + 1 >= opt.max_level || res.evaluations >= opt.max_evaluations;
    if (diff <= tol || exhausted) {
      if (diff > tol) res.converged = false;
      res.value += refined;
      res.error += diff;
      res.magnitude += left.second + right.second;
      ++res.panels;
    } else {
      stack.push_back({it.level + 1, 2 * it.j + 1, right});
      stack.push_back({it.level + 1, 2 * it.j, left});
    }
  }
  return res;
}

}  // namespace thetaint
