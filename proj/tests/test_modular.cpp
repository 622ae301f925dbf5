#include <doctest.h>

#include <random>

#include "thetaint/modular.hpp"
#include "thetaint/precision.hpp"

using namespace thetaint;

namespace {

const double kPi = 3.14159265358979323846;
const cplx I(0, 1);

// plain sums, usable when Im z is not small
void direct_theta(cplx z, cplx& t2, cplx& t3, cplx& t4) {
  t2 = t3 = t4 = 0;
  for (int n = -40; n <= 40; ++n) {
    t3 += std::exp(I * kPi * double(n * n) * z);
    t4 += double(n % 2 ? -1 : 1) * std::exp(I * kPi * double(n * n) * z);
    double h = n + 0.5;
    t2 += std::exp(I * kPi * h * h * z);
  }
}

std::vector<cplx> random_points(int count, unsigned seed, double re_lo, double re_hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(re_lo, re_hi), lim(std::log(0.01), std::log(10.0));
  std::vector<cplx> out;
  for (int k = 0; k < count; ++k) out.emplace_back(re(rng), std::exp(lim(rng)));
  return out;
}

bool in_sl2_domain(cplx z) { return std::abs(z) >= 1 - 1e-12 && std::abs(z.real()) <= 0.5 + 1e-12; }
bool in_theta_domain(cplx z) { return std::abs(z) >= 1 - 1e-12 && std::abs(z.real()) <= 1 + 1e-12; }

}  // namespace

TEST_CASE("word bookkeeping") {
  MoebiusWord w;
  w.append(Letter::T2);
  w.append(Letter::S);
  CHECK(w.matrix == std::array<long, 4>{2, -1, 1, 0});
  CHECK(w.str() == "T^2 S");
  CHECK(w.theta_alphabet());
  cplx z = w.apply(cplx(0, 2));
  CHECK(std::abs(z - cplx(2, 0.5)) < 1e-15);
}

TEST_CASE("reduce_sl2") {
  MoebiusWord w;
  CHECK(reduce_sl2(cplx(0, 2), w) == cplx(0, 2));
  CHECK(w.letters.empty());
  cplx zr = reduce_sl2(cplx(0, 0.5), w);
  CHECK(std::abs(zr - cplx(0, 2)) < 1e-15);
  CHECK(w.str() == "S");
  CHECK(std::abs(w.apply(zr) - cplx(0, 0.5)) < 1e-15);
  zr = reduce_sl2(cplx(1, 0.1), w);
  CHECK(zr.imag() >= std::sqrt(3.0) / 2 - 1e-12);
  CHECK(std::abs(w.apply(zr) - cplx(1, 0.1)) < 1e-12);
  for (cplx z : random_points(200, 7, -3, 3)) {
    zr = reduce_sl2(z, w);
    CHECK(in_sl2_domain(zr));
    CHECK(w.matrix[0] * w.matrix[3] - w.matrix[1] * w.matrix[2] == 1);
    CHECK(std::abs(w.apply(zr) - z) < 1e-9 * (1 + std::abs(z)));
  }
  CHECK_THROWS_AS(reduce_sl2(cplx(0.3, 0), w), ReductionError);
  CHECK_THROWS_AS(reduce_sl2(cplx(0.3, -1), w), ReductionError);
}

TEST_CASE("reduce_gamma_theta") {
  MoebiusWord w;
  CHECK(reduce_gamma_theta(cplx(0, 3), w) == cplx(0, 3));
  CHECK(w.letters.empty());
  cplx zr = reduce_gamma_theta(cplx(2, 0.5), w);
  CHECK(std::abs(zr - cplx(0, 2)) < 1e-14);
  CHECK(w.str() == "T^2 S");

  // oracle: no short word moves the point higher than the reduced point
  cplx tau(0.1, 0.05);
  zr = reduce_gamma_theta(tau, w);
  CHECK(in_theta_domain(zr));
  CHECK(w.theta_alphabet());
  CHECK(std::abs(w.apply(zr) - tau) < 1e-12);
  double best = 0;
  std::vector<cplx> frontier{tau};
  for (int depth = 0; depth < 7; ++depth) {
    std::vector<cplx> next;
    for (cplx z : frontier) {
      for (cplx y : {-1.0 / z, z + 2.0, z - 2.0}) {
        if (std::abs(y.real()) > 9) continue;
        best = std::max(best, y.imag());
        next.push_back(y);
      }
    }
    frontier.swap(next);
  }
  CHECK(zr.imag() >= best - 1e-12);

  for (cplx z : random_points(200, 8, -5, 5)) {
    zr = reduce_gamma_theta(z, w);
    CHECK(in_theta_domain(zr));
    CHECK(std::abs(w.apply(zr) - z) < 1e-9 * (1 + std::abs(z)));
  }
}

TEST_CASE("S and T laws calibrated at 2i against direct sums") {
  cplx a2, a3, a4, b2, b3, b4;
  const cplx z(0, 2);
  direct_theta(z, a2, a3, a4);
  direct_theta(-1.0 / z, b2, b3, b4);
  const cplx r = std::sqrt(-I * z);
  // Theta3(-1/z) = +sqrt(-iz) Theta3(z); the minus sign variant is wrong
  CHECK(std::abs(b3 - r * a3) < 1e-14);
  CHECK(std::abs(b3 + r * a3) > 1);
  CHECK(std::abs(b2 - r * a4) < 1e-14);
  CHECK(std::abs(b4 - r * a2) < 1e-14);
  direct_theta(z + 1.0, b2, b3, b4);
  CHECK(std::abs(b2 - std::exp(I * kPi / 4.0) * a2) < 1e-14);
  CHECK(std::abs(b3 - a4) < 1e-14);
  CHECK(std::abs(b4 - a3) < 1e-14);
}

TEST_CASE("theta_constants") {
  auto th = theta_constants(cplx(0, 1));
  CHECK(std::abs(std::pow(th.t2 / th.t3, 4.0) - 0.5) < 1e-12);
  th = theta_constants(cplx(0, 2));
  double s = 0;
  for (int n = -10; n <= 10; ++n) s += std::exp(-2 * kPi * n * n);
  CHECK(std::abs(th.t3 - s) < 1e-15);
  for (cplx z : random_points(100, 11, -1, 1)) {
    th = theta_constants(z);
    CHECK(th.residual < 1e-10);
    CHECK(std::abs(th.t2 * th.t3 * th.t4) > 0);
  }
  // agreement with direct summation where it converges quickly
  for (cplx z : random_points(100, 12, -2, 2)) {
    z = cplx(z.real(), 1 + z.imag());
    cplx a2, a3, a4;
    direct_theta(z, a2, a3, a4);
    th = theta_constants(z);
    CHECK(std::abs(th.t2 - a2) < 1e-10);
    CHECK(std::abs(th.t3 - a3) < 1e-10);
    CHECK(std::abs(th.t4 - a4) < 1e-10);
  }
}

TEST_CASE("transformation laws at random points") {
  for (cplx z : random_points(100, 13, -1, 1)) {
    auto m = eval_modular(z);
    auto ms = eval_modular(-1.0 / z);
    auto m1 = eval_modular(z + 1.0);
    auto m2 = eval_modular(z + 2.0);
    CHECK(std::abs(ms.theta - std::sqrt(-I * z) * m.theta) < 1e-10 * std::abs(ms.theta));
    CHECK(std::abs(ms.lambda - m.one_minus_lambda) < 1e-10 * (1 + std::abs(ms.lambda)));
    CHECK(std::abs(m1.lambda + m.lambda / m.one_minus_lambda) < 1e-10 * (1 + std::abs(m1.lambda)));
    CHECK(std::abs(ms.J - m.J) < 1e-10 * (1 + std::abs(m.J)));
    CHECK(std::abs(m2.J - m.J) < 1e-10 * (1 + std::abs(m.J)));
  }
}

TEST_CASE("eval_modular special values") {
  CHECK(std::abs(eval_modular(cplx(0, 1)).J - 1.0 / 64) < 1e-12);
  cplx z(0.3, 0.8);
  CHECK(std::abs(eval_modular(z + 2.0).J - eval_modular(z).J) < 1e-11);
  auto m = eval_modular(cplx(0, 10));
  CHECK(std::abs(m.lambda / (16 * std::exp(-10 * kPi)) - 1.0) < 1e-6);
  CHECK(std::abs(m.J * m.J_inv - 1.0) < 1e-12);
}

TEST_CASE("sign of Im J on the two halves of the fundamental domain") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> re(-1, 1), im(0, 3);
  int count = 0;
  while (count < 200) {
    cplx t(re(rng), im(rng));
    if (std::abs(t) < 1 || std::abs(t.real()) < 1e-3 || std::abs(t.real()) > 1 - 1e-3) continue;
    ++count;
    double ij = eval_modular(t).J.imag();
    if (t.real() < 0) CHECK(ij < 0);
    else CHECK(ij >= 0);
  }
}

TEST_CASE("automorphy factor") {
  MoebiusWord t2;
  t2.append(Letter::T2);
  CHECK(automorphy_jtheta(cplx(0.2, 0.7), t2) == cplx(1, 0));
  MoebiusWord s;
  s.append(Letter::S);
  CHECK(std::abs(automorphy_jtheta(cplx(0, 1), s) - 1.0) < 1e-15);
  MoebiusWord ss = s;
  ss.append(Letter::S);
  CHECK(std::abs(automorphy_jtheta(cplx(-0.4, 0.3), ss) - 1.0) < 1e-12);
  // j(z, w) = theta(z) / theta(w z) for assorted words
  std::mt19937_64 rng(15);
  for (cplx z : random_points(50, 16, -1, 1)) {
    MoebiusWord w;
    for (int k = 0; k < 5; ++k) w.append(static_cast<Letter>(rng() % 2 ? 0 : 3 + rng() % 2));
    const cplx j = automorphy_jtheta(z, w);
    const cplx q = eval_modular(z).theta / eval_modular(w.apply(z)).theta;
    CHECK(std::abs(j - q) < 1e-8 * std::abs(q));
  }
  MoebiusWord bad;
  bad.append(Letter::T);
  CHECK_THROWS(automorphy_jtheta(cplx(0, 1), bad));
}

TEST_CASE("line values in extended precision") {
  for (double t : {0.05, 0.3, 0.9, 1.0, 1.7, 4.0}) {
    auto m = eval_modular(cplx(1, t));
    auto v = line_values<real50>(real50(t));
    CHECK(std::abs(m.theta.imag()) < 1e-12 * (1 + std::abs(m.theta)));
    CHECK(std::abs(double(v.theta) - m.theta.real()) < 1e-12 * (1 + std::abs(m.theta)));
    CHECK(std::abs(double(v.J_inv) - m.J_inv.real()) < 1e-10 * (1 + std::abs(m.J_inv)));
    CHECK(std::abs(double(v.m2l) - m.one_minus_2lambda.real()) < 1e-10 * (1 + std::abs(m.one_minus_2lambda)));
    CHECK(abs(v.m2l_J_inv - v.m2l * v.J_inv) < real50(1e-40) * (1 + abs(v.m2l * v.J_inv)));
  }
  // continuity across the inversion point t = 1
  auto a = line_values<real50>(real50(1) - real50(1e-30));
  auto b = line_values<real50>(real50(1));
  CHECK(abs(a.J_inv - b.J_inv) < real50(1e-25));
  // complex extended-precision path against double
  auto th = theta_constants<real50>(std::complex<real50>(real50(0.3), real50(0.02)));
  auto td = theta_constants(cplx(0.3, 0.02));
  CHECK(std::abs(cplx(double(th.t3.real()), double(th.t3.imag())) - td.t3) < 1e-10 * std::abs(td.t3));
  CHECK(th.residual < real50(1e-40));
}
