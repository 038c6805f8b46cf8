#include "freechoice/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "freechoice/dsl.hpp"
#include "freechoice/error.hpp"

namespace freechoice::cli {
namespace {

std::string braced(const std::vector<std::string>& labels) {
  std::string out = "{";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out += (i ? ", " : "") + labels[i];
  }
  return out + "}";
}

nlohmann::ordered_json assignment_json(const Assignment& a) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [name, value] : a) {
    j[name] = value;
  }
  return j;
}

std::string verdict_line(const FreedomVerdict& v) {
  return std::string(to_string(v.criterion)) + ": " + v.subject + (v.free ? " free" : " not free") +
         " (reference set " + braced(v.reference_set) + ")";
}

std::string witness_line(const FreedomVerdict& v) {
  const auto& w = *v.witness;
  const std::string ref = format_assignment(w.reference_assignment);
  const std::string subj = format_assignment(w.subject_assignment);
  return "P(" + subj + ", " + ref + ") = " + w.lhs.to_string() + " but P(" + subj + ") P(" + ref +
         ") = " + w.rhs.to_string() + "; deviation " + w.deviation.to_string();
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) {
    s.append(width - s.size(), ' ');
  }
  return s;
}

bool any_not_free(const std::vector<FreedomVerdict>& vs) {
  return std::any_of(vs.begin(), vs.end(), [](const auto& v) { return !v.free; });
}

std::vector<std::string> split_names(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    std::stringstream ss(item);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (!name.empty()) {
        out.push_back(name);
      }
    }
  }
  return out;
}

std::string format_double(double v) {
  std::ostringstream ss;
  ss << std::setprecision(10) << v;
  return ss.str();
}

struct GlobalFlags {
  bool json = false;
  bool fail_on_not_free = false;
};

int emit_audit(const std::string& name, const JointDistribution& d, const CausalOrder& o, bool past_only,
               const GlobalFlags& flags, std::ostream& out) {
  const auto verdicts = audit(d, o, Criterion::NonFuture);
  std::vector<FreedomVerdict> past;
  if (past_only) {
    past = audit(d, o, Criterion::PastOnly);
  }
  if (flags.json) {
    out << audit_json(name, verdicts, past).dump(2) << '\n';
  } else {
    out << audit_text(name, verdicts, past);
  }
  return flags.fail_on_not_free && any_not_free(verdicts) ? kNotFree : kSuccess;
}

int run_demo(const std::string& demo, const GlobalFlags& flags, std::ostream& out) {
  constexpr double pi = std::numbers::pi;
  if (demo == "counterexample") {
    const Scenario s = correlated_settings();
    const auto& d = s.require_distribution();
    const auto definition = audit(d, s.order, Criterion::NonFuture);
    const auto variant = audit(d, s.order, Criterion::PastOnly);
    if (flags.json) {
      out << audit_json(s.name, definition, variant).dump(2) << '\n';
    } else {
      out << "scenario: " << s.name << "\n\n";
      for (const char* subject : {"A", "B"}) {
        const auto def = is_free(d, s.order, subject);
        const auto var = is_free_past_only(d, s.order, subject);
        out << verdict_line(def) << '\n';
        if (def.witness) {
          out << "  witness: " << witness_line(def) << '\n';
        }
        out << verdict_line(var) << '\n';
      }
      const auto a_def = is_free(d, s.order, "A");
      const auto a_var = is_free_past_only(d, s.order, "A");
      out << "\nThe past-only variant tests each setting only against its causal past (A: "
          << braced(a_var.reference_set) << ", B: " << braced(is_free_past_only(d, s.order, "B").reference_set)
          << "). The settings are independent of Z, so the variant accepts both even though A = B on every run. "
          << "The non-future criterion tests A against everything outside its causal future, "
          << braced(a_def.reference_set) << ", which contains B; the perfect correlation between the two "
          << "settings is detected and neither choice counts as free.\n";
    }
    return flags.fail_on_not_free && any_not_free(definition) ? kNotFree : kSuccess;
  }
  Scenario s = [&] {
    if (demo == "single") {
      return single_measurement();
    }
    if (demo == "prbox") {
      return pr_box(true);
    }
    if (demo == "singlet") {
      return singlet({0.0, pi / 2}, {pi / 4, 3 * pi / 4});
    }
    if (demo == "lhv") {
      return local_hidden_variable(2, {{0, 1}, {0, 1}}, {{0, 1}, {0, 1}}, {mpq_class(1, 2), mpq_class(1, 2)});
    }
    throw Error(ErrorCode::UnknownDemo, "'" + demo + "' (choose single, counterexample, prbox, singlet, lhv)");
  }();
  const int code = emit_audit(s.name, s.require_distribution(), s.order, false, flags, out);
  if (!flags.json && demo != "single") {
    const auto c = chsh(s.require_distribution());
    out << "CHSH value: " << (c.exact ? c.exact->get_str() : format_double(c.value)) << '\n';
  }
  return code;
}

}  // namespace

std::string format_assignment(const Assignment& a) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    out += (i ? ", " : "") + a[i].first + "=" + std::to_string(a[i].second);
  }
  return out;
}

std::string audit_text(const std::string& scenario, const std::vector<FreedomVerdict>& verdicts,
                       const std::vector<FreedomVerdict>& past_only) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"subject", "PaperDefinition", "reference set"});
  if (!past_only.empty()) {
    rows.front().insert(rows.front().end(), {"PastOnlyVariant", "past set"});
  }
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    const auto& v = verdicts[i];
    std::vector<std::string> row{v.subject, v.free ? "free" : "not free", braced(v.reference_set)};
    if (!past_only.empty()) {
      row.push_back(past_only[i].free ? "free" : "not free");
      row.push_back(braced(past_only[i].reference_set));
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> widths(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }
  std::string out = "scenario: " + scenario + "\n";
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += c + 1 < row.size() ? pad(row[c], widths[c] + 2) : row[c];
    }
    out += line + "\n";
  }
  bool header = false;
  for (const auto& v : verdicts) {
    if (v.witness) {
      if (!header) {
        out += "\nwitnesses:\n";
        header = true;
      }
      out += "  " + v.subject + ": " + witness_line(v) + "\n";
    }
  }
  return out;
}

nlohmann::ordered_json verdict_json(const FreedomVerdict& v) {
  nlohmann::ordered_json j;
  j["subject"] = v.subject;
  j["free"] = v.free;
  j["criterion"] = to_string(v.criterion);
  j["reference_set"] = v.reference_set;
  if (v.witness) {
    const auto& w = *v.witness;
    j["witness"] = {{"subject_assignment", assignment_json(w.subject_assignment)},
                    {"reference_assignment", assignment_json(w.reference_assignment)},
                    {"lhs", w.lhs.value()},
                    {"rhs", w.rhs.value()},
                    {"deviation", w.deviation.value()}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

nlohmann::ordered_json audit_json(const std::string& scenario, const std::vector<FreedomVerdict>& verdicts,
                                  const std::vector<FreedomVerdict>& past_only) {
  nlohmann::ordered_json j;
  j["scenario"] = scenario;
  j["verdicts"] = nlohmann::ordered_json::array();
  for (const auto& v : verdicts) {
    j["verdicts"].push_back(verdict_json(v));
  }
  for (const auto& v : past_only) {
    j["verdicts"].push_back(verdict_json(v));
  }
  return j;
}

namespace {

std::vector<Edge> unordered_pairs(const CausalOrder& o) {
  std::vector<Edge> out;
  const auto& labels = o.labels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      if (o.mutually_unordered(labels[i], labels[j])) {
        out.emplace_back(labels[i], labels[j]);
      }
    }
  }
  return out;
}

}  // namespace

std::string derive_order_text(const Scenario& s) {
  std::string out = "scenario: " + s.name + "\nedges:\n";
  for (const auto& [a, b] : s.order.pairs()) {
    out += "  " + a + " -> " + b + "\n";
  }
  out += "mutually unordered:\n";
  for (const auto& [a, b] : unordered_pairs(s.order)) {
    out += "  " + a + ", " + b + "\n";
  }
  return out;
}

nlohmann::ordered_json derive_order_json(const Scenario& s) {
  nlohmann::ordered_json j;
  j["scenario"] = s.name;
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& [a, b] : s.order.pairs()) {
    j["edges"].push_back({a, b});
  }
  j["unordered"] = nlohmann::ordered_json::array();
  for (const auto& [a, b] : unordered_pairs(s.order)) {
    j["unordered"].push_back({a, b});
  }
  return j;
}

std::string gtest_text(const GTestResult& r, const std::vector<std::string>& lhs, const std::vector<std::string>& rhs) {
  std::string out = "G-test " + braced(lhs) + " vs " + braced(rhs) + "\n";
  out += "G = " + format_double(r.statistic) + "\n";
  out += "df = " + std::to_string(r.degrees_of_freedom) + "\n";
  out += "p-value = " + format_double(r.p_value) + "\n";
  for (const auto& [alpha, reject] : r.reject_at) {
    out += "alpha " + format_double(alpha) + ": " + (reject ? "reject independence" : "do not reject") + "\n";
  }
  for (const auto& w : r.warnings) {
    out += "warning: " + w + "\n";
  }
  return out;
}

nlohmann::ordered_json gtest_json(const GTestResult& r, const std::vector<std::string>& lhs,
                                  const std::vector<std::string>& rhs) {
  nlohmann::ordered_json j;
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["statistic"] = r.statistic;
  j["degrees_of_freedom"] = r.degrees_of_freedom;
  j["p_value"] = r.p_value;
  j["reject_at"] = nlohmann::ordered_json::array();
  for (const auto& [alpha, reject] : r.reject_at) {
    j["reject_at"].push_back({{"alpha", alpha}, {"reject", reject}});
  }
  j["warnings"] = r.warnings;
  return j;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Free-choice audits for discrete causal scenarios", "freechoice"};
  app.require_subcommand(1);
  GlobalFlags flags;
  app.add_flag("--json", flags.json, "Structured JSON output");
  app.add_flag("--fail-on-not-free", flags.fail_on_not_free, "Exit with status 1 when a variable is not free");

  std::string file;
  bool past_only = false;
  auto* audit_cmd = app.add_subcommand("audit", "Check every variable of a scenario file for freeness");
  audit_cmd->add_option("file", file, "Scenario file")->required();
  audit_cmd->add_flag("--past-only", past_only, "Also show the past-only variant");

  auto* derive_cmd = app.add_subcommand("derive-order", "Print the causal order implied by a spacetime block");
  derive_cmd->add_option("file", file, "Scenario file")->required();

  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string out_path;
  unsigned threads = 1;
  auto* sample_cmd = app.add_subcommand("sample", "Draw seeded samples from a scenario's distribution");
  sample_cmd->add_option("file", file, "Scenario file")->required();
  sample_cmd->add_option("--n", n, "Number of samples")->required()->check(CLI::PositiveNumber);
  sample_cmd->add_option("--seed", seed, "64-bit seed")->required();
  sample_cmd->add_option("--out", out_path, "Output sample file")->required();
  sample_cmd->add_option("--threads", threads, "Worker threads (output does not depend on this)");

  std::vector<std::string> lhs_raw, rhs_raw;
  std::vector<double> alphas;
  auto* gtest_cmd = app.add_subcommand("gtest", "G-test of independence on a sample file");
  gtest_cmd->add_option("datafile", file, "Sample file")->required();
  gtest_cmd->add_option("--lhs", lhs_raw, "Left variables (comma separated)")->required();
  gtest_cmd->add_option("--rhs", rhs_raw, "Right variables (comma separated)")->required();
  gtest_cmd->add_option("--alpha", alphas, "Significance levels");

  std::string demo;
  auto* demo_cmd = app.add_subcommand("demo", "Run a built-in scenario: single, counterexample, prbox, singlet, lhv");
  demo_cmd->add_option("name", demo, "Demo name")->required();

  for (auto* sub : {audit_cmd, derive_cmd, sample_cmd, gtest_cmd, demo_cmd}) {
    sub->fallthrough();
  }

  std::vector<const char*> argv{"freechoice"};
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return e.get_exit_code() == 0 ? kSuccess : kUsageError;
  }

  try {
    if (audit_cmd->parsed()) {
      const auto sf = load_scenario_file(file);
      return emit_audit(sf.parsed.name, sf.parsed.require_distribution(), sf.parsed.order, past_only, flags, out);
    }
    if (derive_cmd->parsed()) {
      const auto sf = load_scenario_file(file);
      if (!sf.parsed.embedding) {
        throw Error(ErrorCode::MissingSpacetimeBlock, file + " has no spacetime block");
      }
      if (flags.json) {
        out << derive_order_json(sf.parsed).dump(2) << '\n';
      } else {
        out << derive_order_text(sf.parsed);
      }
      return kSuccess;
    }
    if (sample_cmd->parsed()) {
      const auto sf = load_scenario_file(file);
      const auto samples = sample(sf.parsed.require_distribution(), n, seed, threads);
      std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
      if (!f) {
        err << "error: cannot write " << out_path << '\n';
        return kUsageError;
      }
      write_samples(f, samples);
      f.close();
      if (!f) {
        err << "error: failed writing " << out_path << '\n';
        return kUsageError;
      }
      if (flags.json) {
        nlohmann::ordered_json j{{"n", n}, {"seed", seed}, {"output", out_path}};
        out << j.dump(2) << '\n';
      } else {
        out << "n = " << n << "\nseed = " << seed << "\noutput = " << out_path << '\n';
      }
      return kSuccess;
    }
    if (gtest_cmd->parsed()) {
      std::ifstream f(file, std::ios::binary);
      if (!f) {
        err << "error: cannot open " << file << '\n';
        return kUsageError;
      }
      const auto samples = read_samples(f);
      const auto lhs = split_names(lhs_raw);
      const auto rhs = split_names(rhs_raw);
      const auto result = g_test(samples, lhs, rhs, alphas.empty() ? kDefaultAlphas : alphas);
      if (flags.json) {
        out << gtest_json(result, lhs, rhs).dump(2) << '\n';
      } else {
        out << gtest_text(result, lhs, rhs);
      }
      return kSuccess;
    }
    if (demo_cmd->parsed()) {
      return run_demo(demo, flags, out);
    }
  } catch (const ParseError& e) {
    for (const auto& d : e.diagnostics()) {
      err << file << ":" << d.to_string() << '\n';
    }
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace freechoice::cli
