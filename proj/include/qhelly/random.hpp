#ifndef QHELLY_RANDOM_HPP
#define QHELLY_RANDOM_HPP

#include "qhelly/core.hpp"

#include <cstdint>
#include <random>

namespace qhelly {

/*! \brief Portable seeded generator.

    The engine is std::mt19937_64, whose output sequence is fixed by the
    standard. The standard distributions are implementation-defined, so the
    uniform and normal variates are derived here from raw engine output.

    Stream splitting: instance `i` of a corpus generated from `seed` uses the
    engine seeded with splitmix64(seed ^ splitmix64(i + 1)).
*/
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  /// Standard normal via Box-Muller.
  double normal();

  Vec normal_vector(int dim);
  Vec unit_vector(int dim);
  /// Random matrix with entries N(0,1).
  Mat normal_matrix(int rows, int cols);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);
/// Seed of stream `index`; Rng::stream(seed, index) == Rng(stream_seed(seed, index)).
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace qhelly

#endif  // QHELLY_RANDOM_HPP
