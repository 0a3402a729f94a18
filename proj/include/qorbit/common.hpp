#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace qorbit {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr Complex kImag{0.0, 1.0};

/// Qubit count above which dense 2^n x 2^n expansion is refused by default.
inline constexpr int kDenseQubitCap = 12;

/// Thrown on precondition violations (bad arguments, malformed input).
/// The CLI maps this to exit code 2.
struct validation_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a configured size cap would be exceeded (dense dimension,
/// closure size, ...). The CLI maps this to exit code 3.
struct cap_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw validation_error(msg);
}

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace detail

/// Deterministic per-sample random stream: identical (master_seed,
/// stream_index) always reproduces identical draws, independent of how
/// samples are scheduled across workers.
///
/// Gaussian variates are generated with an explicit Box-Muller transform on
/// top of mt19937_64 so draws do not depend on the standard library's
/// distribution implementation.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
      : master_seed_(master_seed), stream_index_(stream_index) {
    std::uint64_t s = master_seed ^ 0xA5A5A5A55A5A5A5AULL;
    detail::splitmix64(s);
    s ^= stream_index * 0xD2B74407B1CE6E93ULL;
    engine_.seed(detail::splitmix64(s));
    have_spare_ = false;
  }

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal variate (Box-Muller).
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  Complex gaussian_complex() {
    const double re = gaussian();
    const double im = gaussian();
    return Complex(re, im);
  }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_;
};

/// Runs fn(i) for i in [0, count) and stores results into a vector by index.
/// Workers own disjoint index ranges and the reduction happens by index
/// afterwards, so the output is identical for any worker count.
template <typename T>
std::vector<T> indexed_map(std::size_t count, const std::function<T(std::size_t)>& fn,
                           unsigned force_threads = 0) {
  std::vector<T> out(count);
  unsigned workers = force_threads ? force_threads : std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = std::min<std::size_t>(workers, count ? count : 1);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) out[i] = fn(i);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

/// Sample mean and standard error of the mean (sd / sqrt(N), ddof = 1).
struct MeanStdErr {
  double mean = 0.0;
  double std_error = 0.0;
};

inline MeanStdErr mean_std_error(const std::vector<double>& xs) {
  require(!xs.empty(), "mean_std_error: empty sample set");
  double m = 0.0;
  for (double x : xs) m += x;
  m /= static_cast<double>(xs.size());
  if (xs.size() == 1) return {m, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  const double var = ss / static_cast<double>(xs.size() - 1);
  return {m, std::sqrt(var / static_cast<double>(xs.size()))};
}

}  // namespace qorbit
