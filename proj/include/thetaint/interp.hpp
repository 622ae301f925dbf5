#pragma once

// Reconstruction of f from f(sqrt n) and fhat(sqrt n).
//   even: f(x) = sum a_n(x) f(sqrt n) + sum ahat_n(x) fhat(sqrt n)
//   odd:  f(x) = d_0^+(x) (f'(0) + i fhat'(0)) / 2
//                + sum_{n>=1} c_n(x) f(sqrt n)/sqrt n - sum_{n>=1} chat_n(x) fhat(sqrt n)/sqrt n
// with chat_n = -i (d_n^+ - d_n^-)/2, the transform of c_n.

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "thetaint/forms.hpp"

namespace thetaint {

struct SampleSet {
  Parity parity = Parity::even;
  int N = 0;
  // even: f(sqrt n), n = 0..N; odd: f(sqrt n)/sqrt n, n = 1..N
  std::vector<cplx> f, fhat;
  std::optional<std::pair<cplx, cplx>> deriv_pair;  // (f'(0), fhat'(0)), odd only

  void validate() const;  // throws std::invalid_argument
};

void to_json(nlohmann::json& j, const SampleSet& s);
void from_json(const nlohmann::json& j, SampleSet& s);

// e_tau(x) = e^{i pi tau x^2} (even) or o_tau(x) = x e^{i pi tau x^2} (odd)
SampleSet gaussian_samples(Parity parity, cplx tau, int N);

struct Reconstruction {
  cplx value;
  double basis_error = 0;    // propagated from the basis error estimates
  double tail_estimate = 0;  // heuristic: growth envelope times extrapolated sample decay
  int terms = 0;
};

Reconstruction reconstruct_even(const SampleSet& s, double x);
Reconstruction reconstruct_odd(const SampleSet& s, double x);
Reconstruction reconstruct(const SampleSet& s, double x);

struct R3Check {
  double residual;
  double tail_estimate;
};

// |f'(0) + sum r3(n) f(sqrt n)/sqrt n - i fhat'(0) - i sum r3(n) fhat(sqrt n)/sqrt n| over n <= N.
// Derivatives at 0 are taken numerically unless supplied.
R3Check r3_identity_check(const std::function<cplx(double)>& f, const std::function<cplx(double)>& fhat, int N,
                          std::optional<std::pair<cplx, cplx>> deriv = std::nullopt);

}  // namespace thetaint
