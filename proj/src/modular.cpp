#include "thetaint/modular.hpp"

namespace thetaint {

namespace {

std::array<long, 4> generator(Letter l) {
  switch (l) {
    case Letter::S: return {0, -1, 1, 0};
    case Letter::T: return {1, 1, 0, 1};
    case Letter::Tinv: return {1, -1, 0, 1};
    case Letter::T2: return {1, 2, 0, 1};
    case Letter::T2inv: return {1, -2, 0, 1};
  }
  return {1, 0, 0, 1};
}

}  // namespace

void MoebiusWord::append(Letter l) {
  letters.push_back(l);
  const auto g = generator(l);
  const auto m = matrix;
  matrix = {m[0] * g[0] + m[1] * g[2], m[0] * g[1] + m[1] * g[3],
            m[2] * g[0] + m[3] * g[2], m[2] * g[1] + m[3] * g[3]};
}

bool MoebiusWord::theta_alphabet() const {
  for (Letter l : letters)
    if (l == Letter::T || l == Letter::Tinv) return false;
  return true;
}

std::string MoebiusWord::str() const {
  std::string s;
  for (Letter l : letters) {
    if (!s.empty()) s += ' ';
    switch (l) {
      case Letter::S: s += "S"; break;
      case Letter::T: s += "T"; break;
      case Letter::Tinv: s += "T^-1"; break;
      case Letter::T2: s += "T^2"; break;
      case Letter::T2inv: s += "T^-2"; break;
    }
  }
  return s;
}

std::complex<double> reduce_sl2(std::complex<double> z, MoebiusWord& w) { return reduce_sl2<double>(z, w); }

std::complex<double> reduce_gamma_theta(std::complex<double> z, MoebiusWord& w) {
  return reduce_gamma_theta<double>(z, w);
}

ThetaTriple theta_constants(cplx z) { return theta_constants<double>(z); }

ModularValues eval_modular(cplx z) { return eval_modular<double>(z); }

cplx automorphy_jtheta(cplx z, const MoebiusWord& w) { return automorphy_jtheta<double>(z, w); }

}  // namespace thetaint
