#include <doctest.h>

#include <random>
#include <thread>

#include "thetaint/forms.hpp"

using namespace thetaint;

namespace {

const double kPi = 3.14159265358979323846;
const cplx I(0, 1);

std::vector<long> poly_ints(const FormSpec& f) {
  std::vector<long> out;
  for (const auto& c : f.poly) {
    REQUIRE(c.get_den() == 1);
    out.push_back(c.get_num().get_si());
  }
  return out;
}

}  // namespace

TEST_CASE("listed polynomials") {
  using V = std::vector<long>;
  CHECK(poly_ints(build_form(Parity::even, Eps::plus, 0)) == V{1});
  CHECK(poly_ints(build_form(Parity::even, Eps::plus, 1)) == V{-30, 1});
  CHECK(poly_ints(build_form(Parity::even, Eps::plus, 2)) == V{192, -54, 1});
  CHECK(poly_ints(build_form(Parity::even, Eps::minus, 1)) == V{0, 1});
  CHECK(poly_ints(build_form(Parity::even, Eps::minus, 2)) == V{0, -22, 1});
  CHECK(poly_ints(build_form(Parity::even, Eps::minus, 3)) == V{0, 252, -46, 1});
  CHECK(poly_ints(build_form(Parity::odd, Eps::plus, 0)) == V{1});
  CHECK(poly_ints(build_form(Parity::odd, Eps::plus, 1)) == V{-26, 1});
  CHECK(poly_ints(build_form(Parity::odd, Eps::plus, 2)) == V{76, -50, 1});
  CHECK(poly_ints(build_form(Parity::odd, Eps::minus, 1)) == V{0, 1});
  CHECK(poly_ints(build_form(Parity::odd, Eps::minus, 2)) == V{0, -18, 1});
  CHECK(poly_ints(build_form(Parity::odd, Eps::minus, 3)) == V{0, 168, -42, 1});
  CHECK_THROWS_AS(build_form(Parity::even, Eps::minus, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_form(Parity::odd, Eps::plus, -1), std::invalid_argument);
}

TEST_CASE("defining coefficient conditions") {
  for (Parity par : {Parity::even, Parity::odd}) {
    for (Eps eps : {Eps::plus, Eps::minus}) {
      for (int n = eps == Eps::plus ? 0 : 1; n <= 24; ++n) {
        const auto& f = build_form(par, eps, n);
        CHECK(f.poly.size() == static_cast<std::size_t>(n + 1));
        CHECK(f.poly[n] == 1);
        if (eps == Eps::minus) CHECK(f.poly[0] == 0);
        auto s = form_q_expansion(f, 2);
        CHECK(s.min_exp() == -n);
        CHECK(s.coefficient(-n) == 1);
        const int top = eps == Eps::plus ? 0 : -1;
        for (int m = -n + 1; m <= top; ++m) CHECK(s.coefficient(m) == 0);
      }
    }
  }
  CHECK(form_q_expansion(build_form(Parity::even, Eps::minus, 1), 1).coefficient(0) == -2);
  auto h3 = form_q_expansion(build_form(Parity::odd, Eps::minus, 3), 1);
  CHECK(h3.coefficient(-3) == 1);
  CHECK(h3.coefficient(-2) == 0);
  CHECK(h3.coefficient(-1) == 0);
}

TEST_CASE("memoization is idempotent across threads") {
  std::vector<const FormSpec*> seen(8);
  std::vector<std::thread> ts;
  for (int i = 0; i < 8; ++i) ts.emplace_back([&, i] { seen[i] = &build_form(Parity::odd, Eps::plus, 27); });
  for (auto& t : ts) t.join();
  for (auto* p : seen) CHECK(p == seen[0]);
  auto a = form_q_expansion(*seen[0], 40);
  auto b = form_q_expansion(*seen[0], 20);
  CHECK(a.truncate(20) == b);
}

TEST_CASE("json") {
  nlohmann::json j = build_form(Parity::even, Eps::minus, 3);
  CHECK(j.dump() == R"({"eps":"-","n":3,"parity":"even","poly":["0/1","252/1","-46/1","1/1"]})");
  CHECK(j.get<FormSpec>() == build_form(Parity::even, Eps::minus, 3));
}

TEST_CASE("numerical evaluation") {
  const auto& g0 = build_form(Parity::even, Eps::plus, 0);
  auto th = eval_modular(cplx(0, 1)).theta;
  CHECK(std::abs(eval_form(g0, cplx(0, 1)) - th * th * th) < 1e-14);
  const auto& g2 = build_form(Parity::even, Eps::plus, 2);
  cplx z(0.4, 0.9);
  CHECK(std::abs(eval_form(g2, z + 2.0) - eval_form(g2, z)) < 1e-9);
  const auto& g2m = build_form(Parity::even, Eps::minus, 2);
  z = cplx(0, 1.3);
  cplx lhs = std::pow(-I * z, -1.5) * eval_form(g2m, -1.0 / z);
  CHECK(std::abs(lhs + eval_form(g2m, z)) < 1e-9);
  // weight and sign for every family
  for (Parity par : {Parity::even, Parity::odd}) {
    for (Eps eps : {Eps::plus, Eps::minus}) {
      const double w = par == Parity::even ? 1.5 : 0.5;
      for (int n = eps == Eps::plus ? 0 : 1; n <= 5; ++n) {
        const auto& f = build_form(par, eps, n);
        for (cplx zz : {cplx(0.2, 1.1), cplx(-0.6, 0.9)}) {
          cplx v = eval_form(f, zz);
          cplx t = std::pow(-I * zz, -w) * eval_form(f, -1.0 / zz);
          CHECK(std::abs(t - double(sign(eps)) * v) < 1e-9 * (1 + std::abs(v)));
        }
        // vanishing at the cusp 1; the weight 1/2 family decays more slowly
        if (par == Parity::even) CHECK(std::abs(eval_form(f, cplx(1, 1.0 / 20))) < 1e-3);
        else CHECK(std::abs(eval_form(f, cplx(1, 1.0 / 40))) < 1e-8);
      }
    }
  }
  // against the q-expansion at a point high up
  const auto& h3 = build_form(Parity::odd, Eps::minus, 3);
  auto s = form_q_expansion(h3, 30);
  z = cplx(0.3, 1.4);
  cplx ser = 0;
  for (int e = s.min_exp(); e < s.order(); ++e) ser += s.coefficient(e).get_d() * std::exp(I * kPi * double(e) * z);
  CHECK(std::abs(ser - eval_form(h3, z)) < 1e-9 * std::abs(ser));
}

TEST_CASE("kernels") {
  const cplx tau(0, 1.7);
  cplx z = tau + 1e-4;
  cplx r = (z - tau) * eval_kernel(Parity::even, Eps::plus, tau, z);
  CHECK(std::abs(r - 1.0 / (I * kPi)) < 1e-3 * std::abs(1.0 / kPi));
  r = (z - tau) * eval_kernel(Parity::even, Eps::minus, tau, z);
  CHECK(std::abs(r - 1.0 / (I * kPi)) < 1e-3 * std::abs(1.0 / kPi));
  CHECK_THROWS_AS(eval_kernel(Parity::even, Eps::plus, tau, tau), PoleProximityError);

  cplx t1(0, 1.5), z1(0, 2.5);
  cplx k = eval_kernel(Parity::even, Eps::plus, t1, z1);
  CHECK(std::abs(eval_kernel(Parity::even, Eps::plus, -1.0 / t1, z1) + std::sqrt(-I * t1) * k) < 1e-9 * std::abs(k));

  // generating series
  for (Parity par : {Parity::even, Parity::odd}) {
    for (Eps eps : {Eps::plus, Eps::minus}) {
      const cplx t4(0, 4), zz(0, 1.2);
      cplx sum = 0;
      for (int n = eps == Eps::plus ? 0 : 1; n <= 8; ++n)
        sum += eval_form(build_form(par, eps, n), zz) * std::exp(I * kPi * double(n) * t4);
      CHECK(std::abs(sum - eval_kernel(par, eps, t4, zz)) < 1e-6);
    }
  }

  // transformation identities at random pairs
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> re(-0.9, 0.9), im(0.6, 2.0);
  int tested = 0;
  while (tested < 50) {
    cplx t(re(rng), im(rng)), zz(re(rng), im(rng));
    for (Eps eps : {Eps::plus, Eps::minus}) {
      cplx base;
      try {
        base = eval_kernel(Parity::even, eps, t, zz);
      } catch (const PoleProximityError&) {
        continue;
      }
      const double e = sign(eps);
      cplx a = eval_kernel(Parity::even, eps, t, -1.0 / zz);
      cplx b = eval_kernel(Parity::even, eps, -1.0 / t, zz);
      CHECK(std::abs(a - e * std::pow(-I * zz, 1.5) * base) < 1e-9 * (1 + std::abs(a)));
      CHECK(std::abs(b + e * std::sqrt(-I * t) * base) < 1e-9 * (1 + std::abs(b)));
    }
    ++tested;
  }
}
