#pragma once

// Theta constants, lambda and J at points of the upper half-plane.
// Everything is templated on the real scalar so the same code runs in double
// and in the MPFR-backed types of precision.hpp.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/constants/constants.hpp>

namespace thetaint {

using cplx = std::complex<double>;

enum class Letter { S, T, Tinv, T2, T2inv };

// Word L1 L2 ... Lk in the generators; matrix = M(L1) ... M(Lk) as (a, b, c, d).
struct MoebiusWord {
  std::vector<Letter> letters;
  std::array<long, 4> matrix{1, 0, 0, 1};

  void append(Letter l);
  bool theta_alphabet() const;
  std::string str() const;

  template <class Real>
  std::complex<Real> apply(const std::complex<Real>& z) const {
    const auto [a, b, c, d] = matrix;
    return (Real(a) * z + Real(b)) / (Real(c) * z + Real(d));
  }
};

class ReductionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class Real>
struct ThetaTripleT {
  std::complex<Real> t2, t3, t4, z;
  // |t3^4 - t2^4 - t4^4| / max(|t2|, |t3|, |t4|)^4
  Real residual;
};
using ThetaTriple = ThetaTripleT<double>;

template <class Real>
struct ModularValuesT {
  std::complex<Real> theta, theta_cubed, lambda, one_minus_2lambda, J, J_inv;
  // Theta4^4 / Theta3^4, i.e. 1 - lambda without cancellation near lambda = 1
  std::complex<Real> one_minus_lambda;
  // (1 - 2 lambda) / J, finite at the cusp 1 where both factors degenerate
  std::complex<Real> one_minus_2lambda_J_inv;
};
using ModularValues = ModularValuesT<double>;

namespace detail {

constexpr int kMaxReductionSteps = 10000;

template <class Real>
Real tiny_term() {
  return std::numeric_limits<Real>::epsilon() * Real(1e-3);
}

// sums at a point with |p| small (reduced points have |p| <= e^{-pi sqrt3/2})
template <class Real>
void theta_sums(const std::complex<Real>& z, std::complex<Real>& t2, std::complex<Real>& t3,
                std::complex<Real>& t4) {
  using C = std::complex<Real>;
  const Real pi = boost::math::constants::pi<Real>();
  const C ipi(Real(0), pi);
  const C p = std::exp(ipi * z);
  const Real tol = tiny_term<Real>();
  C s3(Real(1)), s4(Real(1)), s2(Real(1));
  // p^{n^2} via ratios p^{2n+1}; p^{n(n+1)} via ratios p^{2n}
  C pn2(Real(1)), step = p, pnn1(Real(1)), step2 = p * p;
  for (int n = 1; n < 200; ++n) {
    pn2 *= step;
    step *= p * p;
    const C term = Real(2) * pn2;
    s3 += term;
    s4 += (n % 2) ? -term : term;
    pnn1 *= step2;
    step2 *= p * p;
    s2 += pnn1;
    if (std::abs(pn2) < tol && std::abs(pnn1) < tol) break;
  }
  t3 = s3;
  t4 = s4;
  t2 = Real(2) * std::exp(ipi * z / Real(4)) * s2;
}

}  // namespace detail

// z = w(z') with z' in the SL2(Z) fundamental domain
template <class Real>
std::complex<Real> reduce_sl2(std::complex<Real> z, MoebiusWord& w) {
  using std::abs;
  using std::floor;
  w = MoebiusWord{};
  if (!(z.imag() > 0)) throw ReductionError("reduce_sl2: Im(z) must be positive");
  const Real half(0.5);
  for (int step = 0; step < detail::kMaxReductionSteps; ++step) {
    Real re = z.real();
    long n = 0;
    if (abs(re) > half) {
      Real fl = floor(re + half);
      n = static_cast<long>(fl);
      if (n > 1000000 || n < -1000000) throw ReductionError("reduce_sl2: real part too large");
      z -= Real(n);
      for (long k = 0; k < (n > 0 ? n : -n); ++k) w.append(n > 0 ? Letter::T : Letter::Tinv);
    }
    if (std::norm(z) < Real(1) - Real(1e-14)) {
      z = Real(-1) / z;
      w.append(Letter::S);
      continue;
    }
    return z;
  }
  throw ReductionError("reduce_sl2: no convergence");
}

// tau = w(tau') with tau' in {|tau'| >= 1, |Re tau'| <= 1}, w over {S, T^2, T^-2}
template <class Real>
std::complex<Real> reduce_gamma_theta(std::complex<Real> z, MoebiusWord& w) {
  using std::abs;
  using std::floor;
  w = MoebiusWord{};
  if (!(z.imag() > 0)) throw ReductionError("reduce_gamma_theta: Im(tau) must be positive");
  for (int step = 0; step < detail::kMaxReductionSteps; ++step) {
    Real re = z.real();
    if (abs(re) > Real(1) + Real(1e-14)) {
      long n = static_cast<long>(floor((re + Real(1)) / Real(2)));
      if (n > 1000000 || n < -1000000) throw ReductionError("reduce_gamma_theta: real part too large");
      z -= Real(2 * n);
      for (long k = 0; k < (n > 0 ? n : -n); ++k) w.append(n > 0 ? Letter::T2 : Letter::T2inv);
    }
    if (std::norm(z) < Real(1) - Real(1e-14)) {
      z = Real(-1) / z;
      w.append(Letter::S);
      continue;
    }
    return z;
  }
  throw ReductionError("reduce_gamma_theta: no convergence");
}

template <class Real>
ThetaTripleT<Real> theta_constants(const std::complex<Real>& z) {
  using C = std::complex<Real>;
  MoebiusWord w;
  const C zr = reduce_sl2(z, w);
  C t2, t3, t4;
  detail::theta_sums(zr, t2, t3, t4);
  // replay the word from the innermost letter outwards: z_{j-1} = L_j(z_j)
  const Real pi = boost::math::constants::pi<Real>();
  const C e8 = std::polar(Real(1), pi / Real(4));
  C cur = zr;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    switch (*it) {
      case Letter::T:
      case Letter::Tinv: {
        t2 *= (*it == Letter::T) ? e8 : std::conj(e8);
        std::swap(t3, t4);
        cur += Real(*it == Letter::T ? 1 : -1);
        break;
      }
      case Letter::T2:
      case Letter::T2inv: {
        t2 *= (*it == Letter::T2) ? e8 * e8 : std::conj(e8 * e8);
        cur += Real(*it == Letter::T2 ? 2 : -2);
        break;
      }
      case Letter::S: {
        // Theta3(-1/z) = sqrt(-iz) Theta3(z), Theta2 and Theta4 swap
        const C r = std::sqrt(C(Real(0), Real(-1)) * cur);
        C n2 = r * t4, n3 = r * t3, n4 = r * t2;
        t2 = n2;
        t3 = n3;
        t4 = n4;
        cur = Real(-1) / cur;
        break;
      }
    }
  }
  ThetaTripleT<Real> out{t2, t3, t4, z, Real(0)};
  const C a = t2 * t2, b = t3 * t3, c = t4 * t4;
  Real scale = std::max({std::norm(a), std::norm(b), std::norm(c)});
  out.residual = std::abs(b * b - a * a - c * c) / scale;
  return out;
}

template <class Real>
ModularValuesT<Real> modular_values(const ThetaTripleT<Real>& th) {
  using C = std::complex<Real>;
  ModularValuesT<Real> m;
  const C a = th.t2 * th.t2, b = th.t3 * th.t3, c = th.t4 * th.t4;
  const C t24 = a * a, t34 = b * b, t44 = c * c;
  m.theta = th.t3;
  m.theta_cubed = th.t3 * b;
  m.lambda = t24 / t34;
  m.one_minus_lambda = t44 / t34;
  m.one_minus_2lambda = (t44 - t24) / t34;
  m.J = t24 * t44 / (Real(16) * t34 * t34);
  m.J_inv = Real(16) * t34 * t34 / (t24 * t44);
  m.one_minus_2lambda_J_inv = Real(16) * (t44 - t24) * t34 / (t24 * t44);
  return m;
}

template <class Real>
ModularValuesT<Real> eval_modular(const std::complex<Real>& z) {
  return modular_values(theta_constants(z));
}

// j_theta(z, w) by the cocycle rule; w over {S, T^2, T^-2}
template <class Real>
std::complex<Real> automorphy_jtheta(const std::complex<Real>& z, const MoebiusWord& w) {
  using C = std::complex<Real>;
  if (!w.theta_alphabet()) throw std::invalid_argument("automorphy_jtheta: word must use S, T^2, T^-2");
  // j(z, L1...Lk) = j(z, Lk) j(Lk z, L1...L_{k-1})
  C j(Real(1)), cur = z;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    switch (*it) {
      case Letter::S:
        j *= C(Real(1)) / std::sqrt(C(Real(0), Real(-1)) * cur);
        cur = Real(-1) / cur;
        break;
      case Letter::T2: cur += Real(2); break;
      case Letter::T2inv: cur -= Real(2); break;
      default: break;
    }
  }
  return j;
}

// Values on the vertical line 1 + it (t > 0), where theta, J^-1 and 1 - 2 lambda are real.
template <class Real>
struct LineValues {
  Real theta;          // Theta3(1+it) = Theta4(it)
  Real J_inv;          // -16 Theta4^8 / (Theta2^4 Theta3^4) at it
  Real m2l;            // 1 - 2 lambda = (Theta3^4 + Theta2^4) / Theta4^4 at it
  Real m2l_J_inv;      // product of the two, without the Theta4 cancellation
};

// Theta2, Theta3, Theta4 at i t for real t > 0
template <class Real>
void theta_imag_axis(const Real& t, Real& t2, Real& t3, Real& t4) {
  using std::exp;
  using std::sqrt;
  const Real pi = boost::math::constants::pi<Real>();
  auto sums = [&](const Real& s, Real& a2, Real& a3, Real& a4) {
    const Real r = exp(-pi * s);
    const Real tol = detail::tiny_term<Real>();
    Real s3(1), s4(1), s2(1), pn2(1), step = r, pnn1(1), step2 = r * r;
    for (int n = 1; n < 400; ++n) {
      pn2 *= step;
      step *= r * r;
      s3 += 2 * pn2;
      s4 += (n % 2) ? Real(-2 * pn2) : Real(2 * pn2);
      pnn1 *= step2;
      step2 *= r * r;
      s2 += pnn1;
      if (pn2 < tol && pnn1 < tol) break;
    }
    a3 = s3;
    a4 = s4;
    a2 = 2 * exp(-pi * s / 4) * s2;
  };
  if (t >= Real(1)) {
    sums(t, t2, t3, t4);
  } else {
    const Real s = Real(1) / t;
    Real a2, a3, a4;
    sums(s, a2, a3, a4);
    const Real f = sqrt(s);
    t3 = f * a3;
    t2 = f * a4;
    t4 = f * a2;
  }
}

template <class Real>
LineValues<Real> line_values(const Real& t) {
  Real t2, t3, t4;
  theta_imag_axis(t, t2, t3, t4);
  const Real a = t2 * t2, b = t3 * t3, c = t4 * t4;
  const Real t24 = a * a, t34 = b * b, t44 = c * c;
  LineValues<Real> v;
  v.theta = t4;
  v.J_inv = Real(-16) * t44 * t44 / (t24 * t34);
  v.m2l = (t34 + t24) / t44;
  v.m2l_J_inv = Real(-16) * t44 * (t34 + t24) / (t24 * t34);
  return v;
}

// double-precision entry points
std::complex<double> reduce_sl2(std::complex<double> z, MoebiusWord& w);
std::complex<double> reduce_gamma_theta(std::complex<double> z, MoebiusWord& w);
ThetaTriple theta_constants(cplx z);
ModularValues eval_modular(cplx z);
cplx automorphy_jtheta(cplx z, const MoebiusWord& w);

}  // namespace thetaint
