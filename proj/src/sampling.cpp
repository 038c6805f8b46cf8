#include "freechoice/sampling.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include <boost/math/special_functions/gamma.hpp>

#include "freechoice/error.hpp"

namespace freechoice {

std::uint64_t SplitMix64::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  return mix(state_);
}

SampleSet::SampleSet(std::vector<std::string> variables, std::vector<int> cells, std::uint64_t seed)
    : variables_(std::move(variables)), cells_(std::move(cells)), seed_(seed) {
  if (variables_.empty() ? !cells_.empty() : cells_.size() % variables_.size() != 0) {
    throw Error(ErrorCode::BadSampleFile, "cell count is not a multiple of the row width");
  }
}

std::size_t SampleSet::column(std::string_view name) const {
  auto it = std::find(variables_.begin(), variables_.end(), name);
  if (it == variables_.end()) {
    throw Error(ErrorCode::UnknownVariable, std::string(name));
  }
  return static_cast<std::size_t>(it - variables_.begin());
}

SampleSet sample(const JointDistribution& d, std::size_t n, std::uint64_t seed, unsigned threads) {
  if (n == 0) {
    throw Error(ErrorCode::InvalidProbability, "sample size must be >= 1");
  }
  std::vector<double> cdf(d.size());
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double p = d.value_at(i);
    acc += p;
    cdf[i] = acc;
    if (p > 0.0) {
      last_positive = i;
    }
  }
  std::vector<Outcome> outcomes(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    outcomes[i] = d.outcome_at(i);
  }

  const std::size_t width = d.variables().size();
  std::vector<int> cells(n * width);
  const std::size_t batches = (n + kSampleBatchRows - 1) / kSampleBatchRows;
  auto run_batch = [&](std::size_t b) {
    auto rng = SplitMix64::stream(seed, b);
    const std::size_t begin = b * kSampleBatchRows;
    const std::size_t end = std::min(n, begin + kSampleBatchRows);
    for (std::size_t r = begin; r < end; ++r) {
      const double u = rng.next_unit();
      auto i = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
      if (i > last_positive) {
        i = last_positive;  // u beyond the rounded total mass
      }
      std::copy(outcomes[i].begin(), outcomes[i].end(), cells.begin() + static_cast<std::ptrdiff_t>(r * width));
    }
  };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(batches)));
  if (threads == 1) {
    for (std::size_t b = 0; b < batches; ++b) {
      run_batch(b);
    }
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t b = t; b < batches; b += threads) {
          run_batch(b);
        }
      });
    }
    for (auto& th : pool) {
      th.join();
    }
  }
  return SampleSet(d.names(), std::move(cells), seed);
}

JointDistribution empirical_distribution(const SampleSet& s, const std::vector<VariableSpec>& specs) {
  if (specs.size() != s.variables().size()) {
    throw Error(ErrorCode::SpecMismatch, "spec count differs from sample columns");
  }
  for (std::size_t k = 0; k < specs.size(); ++k) {
    if (specs[k].name != s.variables()[k]) {
      throw Error(ErrorCode::SpecMismatch, "column " + s.variables()[k] + " vs spec " + specs[k].name);
    }
  }
  if (s.size() == 0) {
    throw Error(ErrorCode::SpecMismatch, "empty sample");
  }
  std::size_t table_size = 1;
  for (const auto& v : specs) {
    if (v.cardinality < 1) {
      throw Error(ErrorCode::SpecMismatch, v.name + " has cardinality < 1");
    }
    table_size *= static_cast<std::size_t>(v.cardinality);
  }
  std::vector<std::size_t> counts(table_size, 0);
  for (std::size_t r = 0; r < s.size(); ++r) {
    const auto row = s.row(r);
    std::size_t index = 0;
    for (std::size_t k = 0; k < specs.size(); ++k) {
      if (row[k] < 0 || row[k] >= specs[k].cardinality) {
        throw Error(ErrorCode::SpecMismatch,
                    "value " + std::to_string(row[k]) + " outside alphabet of " + specs[k].name);
      }
      index = index * static_cast<std::size_t>(specs[k].cardinality) + static_cast<std::size_t>(row[k]);
    }
    ++counts[index];
  }
  std::vector<double> table(table_size);
  const double n = static_cast<double>(s.size());
  std::transform(counts.begin(), counts.end(), table.begin(), [n](std::size_t c) { return static_cast<double>(c) / n; });
  return JointDistribution::from_dense(specs, std::move(table));
}

double chi_squared_survival(double statistic, int degrees_of_freedom) {
  if (statistic <= 0.0) {
    return 1.0;
  }
  return boost::math::gamma_q(degrees_of_freedom / 2.0, statistic / 2.0);
}

namespace {

// Maps each row's joint value on `cols` to a dense category index.
std::vector<std::size_t> categorize(const SampleSet& s, const std::vector<std::size_t>& cols,
                                    std::size_t& categories) {
  std::map<std::vector<int>, std::size_t> ids;
  std::vector<int> key(cols.size());
  for (std::size_t r = 0; r < s.size(); ++r) {
    const auto row = s.row(r);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      key[k] = row[cols[k]];
    }
    ids.emplace(key, 0);
  }
  std::size_t next = 0;
  for (auto& [k, id] : ids) {
    id = next++;
  }
  std::vector<std::size_t> out(s.size());
  for (std::size_t r = 0; r < s.size(); ++r) {
    const auto row = s.row(r);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      key[k] = row[cols[k]];
    }
    out[r] = ids.at(key);
  }
  categories = ids.size();
  return out;
}

std::vector<std::size_t> columns(const SampleSet& s, const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  for (const auto& n : names) {
    out.push_back(s.column(n));
  }
  return out;
}

}  // namespace

GTestResult g_test(const SampleSet& s, const std::vector<std::string>& lhs, const std::vector<std::string>& rhs,
                   const std::vector<double>& alphas) {
  if (lhs.empty() || rhs.empty()) {
    throw Error(ErrorCode::EmptyKeepSet, "both sides of the test need variables");
  }
  const std::unordered_set<std::string> left(lhs.begin(), lhs.end());
  for (const auto& n : rhs) {
    if (left.count(n)) {
      throw Error(ErrorCode::OverlappingSets, n);
    }
  }
  const auto lcols = columns(s, lhs);
  const auto rcols = columns(s, rhs);
  if (s.size() == 0) {
    throw Error(ErrorCode::DegenerateTable, "empty sample");
  }
  std::size_t nl = 0, nr = 0;
  const auto lcat = categorize(s, lcols, nl);
  const auto rcat = categorize(s, rcols, nr);
  if (nl < 2 || nr < 2) {
    throw Error(ErrorCode::DegenerateTable, nl < 2 ? "left side has a single category" : "right side has a single category");
  }

  std::vector<double> observed(nl * nr, 0.0), row_sum(nl, 0.0), col_sum(nr, 0.0);
  for (std::size_t r = 0; r < s.size(); ++r) {
    observed[lcat[r] * nr + rcat[r]] += 1.0;
    row_sum[lcat[r]] += 1.0;
    col_sum[rcat[r]] += 1.0;
  }
  const double n = static_cast<double>(s.size());
  GTestResult out;
  double g = 0.0;
  bool low = false;
  for (std::size_t i = 0; i < nl; ++i) {
    for (std::size_t j = 0; j < nr; ++j) {
      const double e = row_sum[i] * col_sum[j] / n;
      const double o = observed[i * nr + j];
      low = low || e < 5.0;
      if (o > 0.0) {
        g += o * std::log(o / e);
      }
    }
  }
  out.statistic = std::max(0.0, 2.0 * g);
  out.degrees_of_freedom = static_cast<int>((nl - 1) * (nr - 1));
  out.p_value = chi_squared_survival(out.statistic, out.degrees_of_freedom);
  for (double a : alphas) {
    out.reject_at[a] = out.p_value < a;
  }
  if (low) {
    out.warnings.push_back("some expected cell counts are below 5; the chi-squared approximation may be poor");
  }
  return out;
}

void write_samples(std::ostream& out, const SampleSet& s) {
  out << "# seed=" << s.seed() << " n=" << s.size() << '\n';
  for (std::size_t k = 0; k < s.variables().size(); ++k) {
    out << (k ? "," : "") << s.variables()[k];
  }
  out << '\n';
  std::string line;
  for (std::size_t r = 0; r < s.size(); ++r) {
    line.clear();
    const auto row = s.row(r);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) {
        line += ',';
      }
      line += std::to_string(row[k]);
    }
    line += '\n';
    out << line;
  }
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    out.push_back(field);
  }
  if (!line.empty() && line.back() == ',') {
    out.emplace_back();
  }
  return out;
}

template <class T>
bool parse_number(std::string_view text, T& value) {
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  return res.ec == std::errc() && res.ptr == text.data() + text.size();
}

}  // namespace

SampleSet read_samples(std::istream& in) {
  std::string line;
  std::uint64_t seed = 0;
  std::optional<std::size_t> declared_n;
  std::vector<std::string> header;
  std::vector<int> cells;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::BadSampleFile, "line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    if (line.front() == '#') {
      std::istringstream ss(line.substr(1));
      std::string tok;
      while (ss >> tok) {
        if (tok.rfind("seed=", 0) == 0 && !parse_number(std::string_view(tok).substr(5), seed)) {
          fail("bad seed");
        }
        if (tok.rfind("n=", 0) == 0) {
          std::size_t n = 0;
          if (!parse_number(std::string_view(tok).substr(2), n)) {
            fail("bad n");
          }
          declared_n = n;
        }
      }
      continue;
    }
    auto fields = split_commas(line);
    if (header.empty()) {
      for (const auto& f : fields) {
        if (!is_identifier(f)) {
          fail("bad column name '" + f + "'");
        }
      }
      if (std::unordered_set<std::string>(fields.begin(), fields.end()).size() != fields.size()) {
        fail("duplicate column name");
      }
      header = std::move(fields);
      continue;
    }
    if (fields.size() != header.size()) {
      fail("expected " + std::to_string(header.size()) + " fields");
    }
    for (const auto& f : fields) {
      int v = 0;
      if (!parse_number(std::string_view(f), v) || v < 0) {
        fail("bad outcome '" + f + "'");
      }
      cells.push_back(v);
    }
  }
  if (header.empty()) {
    throw Error(ErrorCode::BadSampleFile, "missing header row");
  }
  SampleSet s(std::move(header), std::move(cells), seed);
  if (declared_n && *declared_n != s.size()) {
    throw Error(ErrorCode::BadSampleFile, "declared n=" + std::to_string(*declared_n) + " but found " +
                                              std::to_string(s.size()) + " rows");
  }
  return s;
}

}  // namespace freechoice
