#include "thetaint/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "thetaint/basis.hpp"
#include "thetaint/forms.hpp"
#include "thetaint/interp.hpp"
#include "thetaint/verify.hpp"

namespace thetaint {

double Grid::at(int i) const {
  if (i == steps - 1) return hi;
  return lo + (hi - lo) * i / (steps - 1);
}

Grid parse_grid(const std::string& s) {
  Grid g;
  char tail = 0;
  if (std::sscanf(s.c_str(), "%lf:%lf:%d%c", &g.lo, &g.hi, &g.steps, &tail) != 3)
    throw std::invalid_argument("grid must look like a:b:steps, got " + s);
  if (!(g.lo < g.hi)) throw std::invalid_argument("grid needs a < b");
  if (g.steps < 2) throw std::invalid_argument("grid needs at least 2 steps");
  return g;
}

int thread_count() {
  const char* env = std::getenv("THETA_INTERP_THREADS");
  int n = 0;
  if (env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != 0 || v < 0) throw std::invalid_argument("THETA_INTERP_THREADS must be a non-negative integer");
    n = static_cast<int>(v);
  }
  if (n == 0) n = static_cast<int>(std::thread::hardware_concurrency());
  return std::max(1, n);
}

void parallel_for(int count, int threads, const std::function<void(int)>& f) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i; (i = next++) < count;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::pair<int, int> parse_range(const std::string& s) {
  int a = 0, b = 0;
  char tail = 0;
  if (std::sscanf(s.c_str(), "%d:%d%c", &a, &b, &tail) == 2) {
    if (a < 0 || b < a) throw UsageError("n range must be lo:hi with 0 <= lo <= hi");
    return {a, b};
  }
  if (std::sscanf(s.c_str(), "%d%c", &a, &tail) == 1 && a >= 0) return {a, a};
  throw UsageError("n must be a non-negative integer or lo:hi");
}

Eps parse_eps(const std::string& s) {
  try {
    return eps_from_string(s);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

Parity parse_parity(const std::string& s) {
  try {
    return parity_from_string(s);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

Grid grid_or_usage(const std::string& s) {
  try {
    return parse_grid(s);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

Method parse_method(const std::string& s) {
  if (s == "auto" || s == "automatic") return Method::automatic;
  if (s == "contour") return Method::contour;
  if (s == "laplace") return Method::laplace;
  throw UsageError("method must be auto, contour or laplace");
}

// writes to the file if a path is given, else to out
struct Sink {
  std::ofstream file;
  std::ostream* os;
  Sink(const std::string& path, std::ostream& out) : os(&out) {
    if (!path.empty()) {
      file.open(path, std::ios::binary);
      if (!file) throw std::runtime_error("cannot open " + path + " for writing");
      os = &file;
    }
  }
  std::ostream& operator*() { return *os; }
};

std::string eps_word(Eps e) { return e == Eps::plus ? "plus" : "minus"; }

std::string poly_text(const FormSpec& f) {
  std::string s = "[";
  for (std::size_t i = 0; i < f.poly.size(); ++i) {
    if (i) s += ", ";
    const Rational& c = f.poly[i];
    s += c.get_den() == 1 ? c.get_num().get_str() : rational_to_string(c);
  }
  return s + "]";
}

struct Options {
  std::string parity = "even", eps = "+", n = "0", grid, output, format = "csv", method = "auto", samples, criteria;
  std::string coeffs_format = "text", plot_n = "0:2";
  int digits = 0;
  int threads = -1;
  bool timings = false;
  double abs_tol = 1e-13;
};

int cmd_coeffs(const Options& o, std::ostream& out) {
  const Parity p = parse_parity(o.parity);
  const Eps e = parse_eps(o.eps);
  const auto [lo, hi] = parse_range(o.n);
  if (o.coeffs_format != "text" && o.coeffs_format != "json") throw UsageError("coeffs format must be text or json");
  std::vector<FormSpec> forms;
  for (int n = lo; n <= hi; ++n) {
    if (e == Eps::minus && n == 0) {
      if (lo == hi) throw UsageError("there is no form with eps = - and n = 0");
      continue;
    }
    forms.push_back(build_form(p, e, n));
  }
  if (o.coeffs_format == "json") {
    const nlohmann::json j = forms.size() == 1 && lo == hi ? nlohmann::json(forms[0]) : nlohmann::json(forms);
    out << j.dump() << "\n";
  } else {
    for (const FormSpec& f : forms) out << (lo == hi ? "" : "n=" + std::to_string(f.n) + " ") << poly_text(f) << "\n";
  }
  return 0;
}

EvalOptions eval_options(const Options& o) {
  EvalOptions eo;
  eo.method = parse_method(o.method);
  if (o.digits != 0 && o.digits != 16 && o.digits != 50 && o.digits != 100 && o.digits != 150)
    throw UsageError("digits must be 16, 50, 100 or 150");
  eo.digits = o.digits;
  if (!(o.abs_tol > 0)) throw UsageError("tolerance must be positive");
  eo.abs_tol = o.abs_tol;
  return eo;
}

int threads_for(const Options& o) { return o.threads >= 0 ? (o.threads == 0 ? thread_count() : o.threads) : thread_count(); }

int cmd_eval_basis(const Options& o, std::ostream& out) {
  const Parity p = parse_parity(o.parity);
  const Eps e = parse_eps(o.eps);
  const auto [n, hi] = parse_range(o.n);
  if (n != hi) throw UsageError("eval-basis takes a single n");
  if (e == Eps::minus && n == 0) throw UsageError("there is no basis function with eps = - and n = 0");
  const Grid g = grid_or_usage(o.grid.empty() ? "0:4:401" : o.grid);
  const EvalOptions eo = eval_options(o);
  if (o.format != "csv" && o.format != "json") throw UsageError("format must be csv or json");
  std::vector<EvalReport> rows(g.steps);
  parallel_for(g.steps, threads_for(o), [&](int i) {
    rows[i] = p == Parity::even ? eval_b(e, n, g.at(i), eo) : eval_d(e, n, g.at(i), eo);
  });
  Sink sink(o.output, out);
  const std::string col = std::string(p == Parity::even ? "b_" : "d_") + eps_word(e) + "_" + std::to_string(n);
  if (o.format == "csv") {
    *sink << "x," << col << "\n";
    for (int i = 0; i < g.steps; ++i) *sink << format_double(g.at(i)) << "," << format_double(rows[i].value) << "\n";
  } else {
    nlohmann::json j = nlohmann::json::array();
    for (int i = 0; i < g.steps; ++i)
      j.push_back({{"x", g.at(i)},
                   {"value", rows[i].value},
                   {"abs_error_estimate", rows[i].abs_error_estimate},
                   {"method", to_string(rows[i].method)},
                   {"imag_residual", rows[i].imag_residual}});
    *sink << j.dump() << "\n";
  }
  return 0;
}

int cmd_plot_data(const Options& o, std::ostream& out) {
  const auto [lo, hi] = parse_range(o.plot_n);
  const Grid g = grid_or_usage(o.grid.empty() ? "-4:4:801" : o.grid);
  const EvalOptions eo = eval_options(o);
  const int cols = hi - lo + 1;
  std::vector<APair> vals(static_cast<std::size_t>(g.steps) * cols);
  parallel_for(g.steps * cols, threads_for(o), [&](int k) { vals[k] = eval_a(lo + k % cols, g.at(k / cols), eo); });
  Sink sink(o.output, out);
  *sink << "x";
  for (int n = lo; n <= hi; ++n) *sink << ",a_" << n << ",ahat_" << n;
  *sink << "\n";
  for (int i = 0; i < g.steps; ++i) {
    *sink << format_double(g.at(i));
    for (int c = 0; c < cols; ++c) {
      const APair& a = vals[static_cast<std::size_t>(i) * cols + c];
      *sink << "," << format_double(a.a.value) << "," << format_double(a.ahat.value);
    }
    *sink << "\n";
  }
  return 0;
}

int cmd_interpolate(const Options& o, std::ostream& out) {
  if (o.samples.empty()) throw UsageError("interpolate needs --samples");
  std::ifstream in(o.samples);
  if (!in) throw UsageError("cannot read " + o.samples);
  SampleSet s;
  try {
    s = nlohmann::json::parse(in).get<SampleSet>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad sample set: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad sample set: ") + e.what());
  }
  const Grid g = grid_or_usage(o.grid.empty() ? "0:3:31" : o.grid);
  std::vector<Reconstruction> rows(g.steps);
  parallel_for(g.steps, threads_for(o), [&](int i) { rows[i] = reconstruct(s, g.at(i)); });
  Sink sink(o.output, out);
  *sink << "x,re,im,basis_error,tail_estimate\n";
  for (int i = 0; i < g.steps; ++i)
    *sink << format_double(g.at(i)) << "," << format_double(rows[i].value.real()) << ","
          << format_double(rows[i].value.imag()) << "," << format_double(rows[i].basis_error) << ","
          << format_double(rows[i].tail_estimate) << "\n";
  return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
  std::set<int> ids;
  if (!o.criteria.empty()) {
    std::stringstream ss(o.criteria);
    for (std::string item; std::getline(ss, item, ',');) {
      char* end = nullptr;
      const long v = std::strtol(item.c_str(), &end, 10);
      if (item.empty() || *end != 0 || v < 1 || v > kCriteriaCount)
        throw UsageError("criteria must be a comma-separated list of 1.." + std::to_string(kCriteriaCount));
      ids.insert(static_cast<int>(v));
    }
  }
  int failed = 0;
  run_checks(ids, [&](const CheckResult& r) {
    out << format_check(r, o.timings) << std::endl;
    if (!r.pass) ++failed;
  });
  out << (failed ? "FAILED " : "ALL PASSED ") << "(" << failed << " failing)" << std::endl;
  return failed ? 1 : 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fourier interpolation basis functions and checks", "theta_interp"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--threads", o.threads, "worker threads (default THETA_INTERP_THREADS, 0 = all cores)");

  auto* coeffs = app.add_subcommand("coeffs", "polynomial in J^-1 of the forms");
  coeffs->add_option("--parity", o.parity, "even or odd")->capture_default_str();
  coeffs->add_option("--eps", o.eps, "+ or -")->capture_default_str();
  coeffs->add_option("--n", o.n, "index or lo:hi")->capture_default_str();
  coeffs->add_option("--format", o.coeffs_format, "text or json")->capture_default_str();

  auto* eval = app.add_subcommand("eval-basis", "b_n^eps (even) or d_n^eps (odd) on a grid");
  eval->add_option("--parity", o.parity, "even or odd")->capture_default_str();
  eval->add_option("--eps", o.eps, "+ or -")->capture_default_str();
  eval->add_option("--n", o.n, "index")->capture_default_str();
  eval->add_option("--grid", o.grid, "a:b:steps (default 0:4:401)");
  eval->add_option("--method", o.method, "auto, contour or laplace")->capture_default_str();
  eval->add_option("--digits", o.digits, "working digits: 16, 50, 100, 150 (default from n)");
  eval->add_option("--abs-tol", o.abs_tol, "quadrature tolerance")->capture_default_str();
  eval->add_option("--format", o.format, "csv or json")->capture_default_str();
  eval->add_option("-o,--output", o.output, "output file (default stdout)");

  auto* plot = app.add_subcommand("plot-data", "a_n and ahat_n on a grid");
  plot->add_option("--n", o.plot_n, "index or lo:hi")->capture_default_str();
  plot->add_option("--grid", o.grid, "a:b:steps (default -4:4:801)");
  plot->add_option("--method", o.method, "auto, contour or laplace")->capture_default_str();
  plot->add_option("--digits", o.digits, "working digits");
  plot->add_option("-o,--output", o.output, "output file (default stdout)");

  auto* interp = app.add_subcommand("interpolate", "reconstruct from a sample set");
  interp->add_option("--samples", o.samples, "sample set JSON")->required();
  interp->add_option("--grid", o.grid, "a:b:steps (default 0:3:31)");
  interp->add_option("-o,--output", o.output, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  verify->add_option("--criteria", o.criteria, "comma-separated subset, e.g. 1,2,3");
  verify->add_flag("--timings", o.timings, "append run times (makes the report differ between runs)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    if (*coeffs) return cmd_coeffs(o, out);
    if (*eval) return cmd_eval_basis(o, out);
    if (*plot) return cmd_plot_data(o, out);
    if (*interp) return cmd_interpolate(o, out);
    if (*verify) return cmd_verify(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace thetaint
