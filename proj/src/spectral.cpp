#include "dwave/spectral.hpp"

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "dwave/errors.hpp"
#include "dwave/io.hpp"

namespace dwave {

namespace {

void check_capacity(const GeneratorMatrix& g) {
  if (g.dimension() > kSpectrumCap)
    throw CapacityError("generator dimension " + std::to_string(g.dimension()) +
                        " exceeds the dense limit " + std::to_string(kSpectrumCap));
}

}  // namespace

std::vector<std::complex<double>> spectrum(const GeneratorMatrix& g) {
  check_capacity(g);
  Eigen::MatrixXd a = g.energy_similar_generator();
  const lapack_int n = static_cast<lapack_int>(a.rows());
  std::vector<double> wr(n), wi(n);
  lapack_int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, a.data(), n,
                                  wr.data(), wi.data(), nullptr, 1, nullptr, 1);
  if (info != 0) throw NumericalError("dgeev failed with info " + std::to_string(info));
  std::vector<std::complex<double>> eigs(n);
  for (lapack_int i = 0; i < n; ++i) eigs[i] = {wr[i], wi[i]};
  std::sort(eigs.begin(), eigs.end(), [](auto x, auto y) {
    if (x.imag() != y.imag()) return x.imag() < y.imag();
    return x.real() < y.real();
  });
  return eigs;
}

double spectral_abscissa(const std::vector<std::complex<double>>& eigs) {
  if (eigs.empty()) throw ContractError("empty spectrum");
  double m = -std::numeric_limits<double>::infinity();
  for (auto e : eigs) m = std::max(m, e.real());
  return m;
}

std::string spectrum_csv(const std::vector<std::complex<double>>& eigs) {
  std::ostringstream o;
  o << "re,im\n";
  for (auto e : eigs) o << format_real(e.real()) << ',' << format_real(e.imag()) << '\n';
  return o.str();
}

ResolventEvaluator::ResolventEvaluator(const GeneratorMatrix& g) {
  check_capacity(g);
  aw_ = g.energy_similar_generator();
}

double ResolventEvaluator::norm(double lambda) const {
  const lapack_int n = static_cast<lapack_int>(aw_.rows());
  Eigen::MatrixXcd m = -aw_.cast<std::complex<double>>();
  m.diagonal().array() += std::complex<double>(0.0, lambda);
  std::vector<double> s(n);
  lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', n, n, m.data(), n, s.data(),
                                   nullptr, 1, nullptr, 1);
  if (info != 0) throw NumericalError("zgesdd failed with info " + std::to_string(info));
  const double smax = s.front(), smin = s.back();
  if (smin <= 1e3 * std::numeric_limits<double>::epsilon() * smax)
    return std::numeric_limits<double>::infinity();
  return 1.0 / smin;
}

double resolvent_norm(const GeneratorMatrix& g, double lambda) {
  return ResolventEvaluator(g).norm(lambda);
}

bool ResolventScan::finite() const { return std::isfinite(sup_norm); }

std::string ResolventScan::to_csv() const {
  std::ostringstream o;
  o << "lambda,resolvent_norm\n";
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    o << format_real(lambdas[i]) << ',' << format_real(norms[i]) << '\n';
  return o.str();
}

ResolventScan scan(const GeneratorMatrix& g, const std::vector<double>& grid,
                   int threads) {
  if (grid.empty()) throw ContractError("empty resolvent grid");
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw ContractError("resolvent grid must be sorted");
  ResolventEvaluator ev(g);
  ResolventScan out;
  out.lambdas = grid;
  out.norms.assign(grid.size(), 0.0);

  int workers = threads > 0 ? threads
                            : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min<int>(workers, static_cast<int>(grid.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&]() {
    for (std::size_t i; (i = next.fetch_add(1)) < grid.size();) {
      if (failed) return;
      try {
        out.norms[i] = ev.norm(grid[i]);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  out.sup_norm = *std::max_element(out.norms.begin(), out.norms.end());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double l = grid[i];
    if (l == 0.0) continue;
    out.bound_kappa = std::max(out.bound_kappa, out.norms[i] * l * l / (1.0 + l * l));
  }
  return out;
}

std::vector<double> logspace(double lo, double hi, int n) {
  if (!(lo > 0.0 && hi >= lo) || n < 1)
    throw ConfigurationError("logspace needs 0 < lo <= hi and n >= 1");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log10(lo), b = std::log10(hi);
  for (int i = 0; i < n; ++i) out[i] = std::pow(10.0, a + (b - a) * i / (n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace dwave
