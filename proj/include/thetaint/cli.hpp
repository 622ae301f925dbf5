#pragma once

// theta_interp command line: coeffs, eval-basis, plot-data, interpolate, verify.
// Exit status: 0 success, 1 failure (verification or evaluation), 2 usage error.

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace thetaint {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct Grid {
  double lo = 0, hi = 0;
  int steps = 0;
  double at(int i) const;
};
// "a:b:steps" with a < b and steps >= 2; throws std::invalid_argument
Grid parse_grid(const std::string& s);

// THETA_INTERP_THREADS, 0 or unset meaning the hardware count
int thread_count();

// f(0..count-1) on up to `threads` workers; results come back in index order
void parallel_for(int count, int threads, const std::function<void(int)>& f);

// 17 significant digits, enough to read back the same double
std::string format_double(double v);

}  // namespace thetaint
