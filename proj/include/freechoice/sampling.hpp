#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "freechoice/joint_distribution.hpp"

namespace freechoice {

/// SplitMix64 (Steele, Lea, Flood 2014):
///   state <- state + 0x9E3779B97F4A7C15
///   z <- state
///   z <- (z xor (z >> 30)) * 0xBF58476D1CE4E5B9
///   z <- (z xor (z >> 27)) * 0x94D049BB133111EB
///   return z xor (z >> 31)
/// Uniform doubles are (next() >> 11) * 2^-53, in [0, 1).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Output mixer without the state increment.
  static std::uint64_t mix(std::uint64_t z);

  /// Generator for batch `index` of a run seeded with `seed`: SplitMix64(mix(seed + index)).
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) { return SplitMix64(mix(seed + index)); }

 private:
  std::uint64_t state_;
};

/// Rows per sampling batch; fixed so results do not depend on thread count.
inline constexpr std::size_t kSampleBatchRows = 4096;

class SampleSet {
 public:
  SampleSet(std::vector<std::string> variables, std::vector<int> cells, std::uint64_t seed);

  const std::vector<std::string>& variables() const { return variables_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t size() const { return variables_.empty() ? 0 : cells_.size() / variables_.size(); }
  std::span<const int> row(std::size_t i) const {
    return {cells_.data() + i * variables_.size(), variables_.size()};
  }
  const std::vector<int>& cells() const { return cells_; }
  std::size_t column(std::string_view name) const;

  friend bool operator==(const SampleSet&, const SampleSet&) = default;

 private:
  std::vector<std::string> variables_;
  std::vector<int> cells_;
  std::uint64_t seed_ = 0;
};

/// n i.i.d. draws by inverse CDF over the lexicographically ordered table.
/// Batch b uses SplitMix64::stream(seed, b); batches may run on `threads`
/// threads and are merged in batch order.
SampleSet sample(const JointDistribution& d, std::size_t n, std::uint64_t seed, unsigned threads = 1);

/// Relative frequencies as an Approx distribution.
JointDistribution empirical_distribution(const SampleSet& s, const std::vector<VariableSpec>& specs);

struct GTestResult {
  double statistic = 0.0;
  int degrees_of_freedom = 1;
  double p_value = 1.0;
  std::map<double, bool> reject_at;
  std::vector<std::string> warnings;
};

inline const std::vector<double> kDefaultAlphas{0.05, 0.01, 0.001};

/// Likelihood-ratio test of independence between the joint values of `lhs`
/// and of `rhs`. Categories are the joint values observed in the sample.
GTestResult g_test(const SampleSet& s, const std::vector<std::string>& lhs, const std::vector<std::string>& rhs,
                   const std::vector<double>& alphas = kDefaultAlphas);

/// Upper tail of the chi-squared distribution.
double chi_squared_survival(double statistic, int degrees_of_freedom);

/// Text layout:
///   # seed=<seed> n=<n>
///   <name>,<name>,...
///   <int>,<int>,...      (one line per row)
void write_samples(std::ostream& out, const SampleSet& s);
SampleSet read_samples(std::istream& in);

}  // namespace freechoice
