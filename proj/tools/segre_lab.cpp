// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// segre_lab: analyze point sets, generate the example families, run the
// statement verifiers and search for sets with prescribed invariants.
//
// Exit codes: 0 ok, 1 internal error, 2 counterexample found (or a
// generator's claimed invariant failed), 3 budget refusal, 64 usage or input
// error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "segre/constructions.hpp"
#include "segre/dependence.hpp"
#include "segre/error.hpp"
#include "segre/harness.hpp"
#include "segre/io.hpp"
#include "segre/theorems.hpp"

#ifndef SEGRE_LAB_VERSION
#define SEGRE_LAB_VERSION "unknown"
#endif

namespace segre::cli {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitCounterexample = 2;
constexpr int kExitBudget = 3;
constexpr int kExitUsage = 64;

std::string g_command_line;

Json provenance(std::optional<std::uint64_t> seed = std::nullopt) {
  Json j = Json::object();
  j["tool"] = "segre_lab";
  j["version"] = SEGRE_LAB_VERSION;
  j["command"] = g_command_line;
  if (seed) j["seed"] = *seed;
  return j;
}

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(item, &used);
      if (used != item.size() || n < 0) throw std::invalid_argument(item);
      dims.push_back(n);
    } catch (const std::exception&) {
      throw InputError("bad space '" + text + "': expected comma-separated dimensions like 1,1,2");
    }
  }
  if (dims.empty()) throw InputError("empty space");
  return dims;
}

// Accepts plain integers and scientific forms such as 5e8.
std::uint64_t parse_count(const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || v < 0 || v > 1.8e19 || v != static_cast<double>(static_cast<std::uint64_t>(v))) {
      throw std::invalid_argument(text);
    }
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw InputError("bad count '" + text + "'");
  }
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_output(const Json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

Json family_to_json(const FamilyMatch& m) {
  Json j = Json::object();
  j["kind"] = to_string(m.family);
  if (m.family != FamilyKind::kNone) {
    Json labels = Json::object();
    for (const auto& [name, p] : m.labels) labels[name] = multipoint_to_json(p);
    j["labels"] = labels;
    j["factors"] = {m.factor_a + 1, m.factor_b + 1};  // 1-based, as in the notation
  }
  return j;
}

// --- analyze ---

struct AnalyzeArgs {
  std::string input = "-";
  std::string out;
};

int cmd_analyze(const AnalyzeArgs& a) {
  const PointSet s = parse_point_set(read_input(a.input));
  Json j = analysis_to_json(s, analyze(s));
  j["analysis"]["family"] = family_to_json(s.size() == 6 ? match_family(s) : FamilyMatch{});
  j["provenance"] = provenance();
  write_output(j, a.out);
  return kExitOk;
}

// --- gen ---

struct GenArgs {
  std::string family;
  int k = 2, n1 = 1, n2 = 1, n = 1, s = 6;
  std::string field = "gf3";
  std::string space;
  std::uint64_t seed = 0;
  bool no_check = false;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  const FieldSpec f = FieldSpec::parse(a.field);
  const bool check = !a.no_check;
  Json j;
  if (a.family == "random") {
    if (a.space.empty()) throw InputError("gen random needs --space");
    const MultiprojectiveSpace y(f, parse_dims(a.space));
    j = point_set_to_json(random_concise_set(y, static_cast<std::size_t>(a.s), a.seed));
    j["family"] = "random";
  } else {
    const auto build = [&]() -> ExampleSet {
      if (a.family == "k2") return gen_example_k2(a.k, a.n1, a.n2, f, a.seed, check);
      if (a.family == "k3") return gen_example_k3(a.k, a.n, f, a.seed, check);
      if (a.family == "k4") return gen_example_k4(a.k, a.n, a.s, f, a.seed, check);
      if (a.family == "z1") return gen_example_z1(f, a.seed, check);
      throw InputError("unknown family '" + a.family + "' (k2, k3, k4, z1, random)");
    };
    const ExampleSet ex = build();
    j = point_set_to_json(ex.set);
    j["family"] = ex.family;
    Json labels = Json::object();
    for (const auto& [name, p] : ex.labels) labels[name] = multipoint_to_json(p);
    j["labels"] = labels;
  }
  j["provenance"] = provenance(a.seed);
  write_output(j, a.out);
  return kExitOk;
}

// --- domain flags shared by verify and search ---

struct DomainArgs {
  std::string field = "gf3";
  std::vector<std::string> spaces;
  std::string sizes;
  std::size_t min_size = 0, max_size = 0;
  std::size_t max_length = 32;
  int max_dim = 4;
  std::string mode = "exhaustive";
  std::string reduction;
  std::string samples = "10000";
  std::string proposal = "dependent";
  std::uint64_t seed = 0;
  std::string budget;
  bool high_budget = false;
  unsigned threads = 0;
};

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dash = item.find('-');
    if (dash != std::string::npos) {
      const std::size_t lo = parse_count(item.substr(0, dash)), hi = parse_count(item.substr(dash + 1));
      if (lo > hi) throw InputError("bad size range '" + item + "'");
      for (std::size_t s = lo; s <= hi; ++s) out.push_back(s);
    } else {
      out.push_back(parse_count(item));
    }
  }
  return out;
}

Proposal parse_proposal(const std::string& text) {
  if (text == "uniform") return Proposal::kUniform;
  if (text == "dependent") return Proposal::kDependent;
  if (text == "clustered") return Proposal::kClustered;
  if (text == "circuit") return Proposal::kCircuit;
  throw InputError("unknown proposal '" + text + "'");
}

// Fills a domain from the flags; `default_sizes` applies when no size flag
// is given. Without --space the domain is every shape with at most
// --max-length Segre coordinates, walked by projective classes.
DomainSpec build_domain(const DomainArgs& a, std::vector<std::size_t> default_sizes,
                        bool classes_by_default) {
  DomainSpec d;
  d.field = FieldSpec::parse(a.field);
  if (!d.field.is_finite()) throw InputError("enumeration needs a finite field");
  for (const auto& s : a.spaces) d.shapes.push_back(parse_dims(s));
  if (!a.sizes.empty()) {
    d.sizes = parse_sizes(a.sizes);
  } else if (a.max_size > 0) {
    const std::size_t lo = a.min_size > 0 ? a.min_size : std::min<std::size_t>(3, a.max_size);
    for (std::size_t s = lo; s <= a.max_size; ++s) d.sizes.push_back(s);
  } else {
    d.sizes = std::move(default_sizes);
  }
  d.mode = parse_mode(a.mode);
  if (!a.reduction.empty()) {
    d.reduction = parse_reduction(a.reduction);
  } else if (d.shapes.empty() && classes_by_default && d.mode == Mode::kExhaustive) {
    d.reduction = Reduction::kProjectiveClass;
  }
  if (d.shapes.empty()) d.shapes = shapes_up_to(a.max_length, a.max_dim);
  d.samples = parse_count(a.samples);
  d.proposal = parse_proposal(a.proposal);
  d.seed = a.seed;
  return d;
}

std::uint64_t budget_of(const DomainArgs& a) {
  if (!a.budget.empty()) return parse_count(a.budget);
  return a.high_budget ? kHighBudget : kDefaultBudget;
}

// --- verify ---

struct VerifyArgs {
  std::string statement;
  DomainArgs domain;
  bool timing = false;
  std::string out;
};

std::vector<std::size_t> default_sizes(Statement st) {
  switch (st) {
    case Statement::kZ3: return {3};
    case Statement::kF1: return {4};
    case Statement::kF2: return {5};
    case Statement::kIs1:
    case Statement::kO8: return {6};
    case Statement::kA1:
    case Statement::kA2: return {3};
    case Statement::kCp1: return {};
    default: return {3, 4, 5};
  }
}

int cmd_verify(const VerifyArgs& a) {
  const Statement st = parse_statement(a.statement);
  DomainArgs da = a.domain;
  if (da.spaces.empty()) {
    // Statements whose natural domain is not "every small shape".
    if (st == Statement::kCp1) da.spaces = {"1,1"};
    if (st == Statement::kA1 || st == Statement::kA2) da.spaces = {"1,1,1,1,1,1,1"};
  }
  const bool classes = st != Statement::kCp1 && st != Statement::kA1 && st != Statement::kA2;
  VerificationJob job{st, build_domain(da, default_sizes(st), classes), budget_of(da), da.threads};
  const auto r = verify(job);
  Json j = provenance(job.domain.seed);
  const Json report = job_report_to_json(job, r, a.timing);
  for (const auto& [k, v] : report.items()) j[k] = v;
  write_output(j, a.out);
  std::fprintf(stderr, "%s: %s -- %llu instances, %llu counterexamples, %llu triage\n",
               to_string(st).c_str(), r.passed() ? "no counterexamples" : "COUNTEREXAMPLES",
               static_cast<unsigned long long>(r.instances),
               static_cast<unsigned long long>(r.counterexample_count),
               static_cast<unsigned long long>(r.triage_count));
  return r.passed() ? kExitOk : kExitCounterexample;
}

// --- search ---

struct SearchArgs {
  DomainArgs domain;
  std::string cls;
  int defect = -1;
  int width = -1;
  bool concise = false;
  std::uint64_t limit = 0;
};

struct LimitReached {};

int cmd_search(const SearchArgs& a) {
  const DomainSpec d = build_domain(a.domain, {3}, false);
  std::optional<DependencyClass> want;
  if (!a.cls.empty()) {
    for (auto c : {DependencyClass::kIndependent, DependencyClass::kCircuit,
                   DependencyClass::kUniformlyDependent, DependencyClass::kECircuit,
                   DependencyClass::kEquallyDependent, DependencyClass::kDependentOther}) {
      if (to_string(c) == a.cls) want = c;
    }
    if (!want) throw InputError("unknown class '" + a.cls + "'");
  }
  std::set<std::string> seen;
  std::uint64_t matches = 0;
  // One worker, so matches stream in enumeration order.
  const Visitor visit = [&](const Instance& inst, VerificationReport&) {
    if (a.defect >= 0 && inst.defect() != static_cast<std::size_t>(a.defect)) return true;
    if (a.width >= 0 && inst.width() != a.width) return true;
    if (a.concise) {
      const auto& h = inst.hull_dims();
      for (std::size_t i = 0; i < h.size(); ++i) {
        if (h[i] != inst.space().dim(i)) return true;
      }
    }
    const PointSet s = inst.to_point_set();
    if (want && analyze(s).dependency_class != *want) return true;
    std::string line = point_set_to_json(s).dump();
    if (!seen.insert(line).second) return true;
    std::cout << line << "\n";
    if (a.limit > 0 && ++matches >= a.limit) throw LimitReached{};
    return true;
  };
  try {
    enumerate_domain(d, budget_of(a.domain), 1, visit);
  } catch (const LimitReached&) {
  }
  std::cout.flush();
  std::fprintf(stderr, "%zu matches\n", seen.size());
  return kExitOk;
}

void add_domain_flags(CLI::App* app, DomainArgs& d) {
  app->add_option("--field", d.field, "GF(p) as gf3, 3 or GF(3)")->capture_default_str();
  app->add_option("--space", d.spaces, "Space shape as comma-separated dims, e.g. 1,1,2 (repeatable)");
  app->add_option("--size", d.sizes, "Set sizes, e.g. 6 or 3-5 or 3,5");
  app->add_option("--min-size", d.min_size, "Smallest set size (with --max-size)");
  app->add_option("--max-size", d.max_size, "Largest set size");
  app->add_option("--max-length", d.max_length, "Without --space: largest Segre length")
      ->capture_default_str();
  app->add_option("--max-dim", d.max_dim, "Without --space: largest factor dimension")
      ->capture_default_str();
  app->add_option("--mode", d.mode, "exhaustive or sampled")->capture_default_str();
  app->add_option("--reduction", d.reduction, "none, perm or class");
  app->add_option("--samples", d.samples, "Sampled mode: instances per (shape, size)")
      ->capture_default_str();
  app->add_option("--proposal", d.proposal, "Sampled mode: uniform, dependent, clustered or circuit")
      ->capture_default_str();
  app->add_option("--seed", d.seed, "Seed for sampled mode")->capture_default_str();
  app->add_option("--budget", d.budget, "Exhaustive instance budget (e.g. 5e8)");
  app->add_flag("--high-budget", d.high_budget, "Use the high budget (5e8)");
  app->add_option("--threads", d.threads, "Worker threads (default: SEGRE_LAB_THREADS or all cores)");
}

int run(int argc, char** argv) {
  for (int i = 0; i < argc; ++i) g_command_line += (i ? " " : "") + std::string(argv[i]);

  CLI::App app{"Dependent point sets under the Segre embedding"};
  app.set_version_flag("--version", SEGRE_LAB_VERSION);
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze", "Invariants of a point set (JSON)");
  analyze_cmd->add_option("input", analyze_args.input, "Point-set JSON file, or - for stdin")
      ->capture_default_str();
  analyze_cmd->add_option("--out", analyze_args.out, "Output file (default stdout)");

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an example set (k2, k3, k4, z1, random)");
  gen_cmd->add_option("family", gen_args.family, "k2, k3, k4, z1 or random")->required();
  gen_cmd->add_option("--k", gen_args.k, "Number of factors")->capture_default_str();
  gen_cmd->add_option("--n1", gen_args.n1, "k2: dimension of factor 1")->capture_default_str();
  gen_cmd->add_option("--n2", gen_args.n2, "k2: dimension of factor 2")->capture_default_str();
  gen_cmd->add_option("--n", gen_args.n, "k3, k4: dimension of factor 1")->capture_default_str();
  gen_cmd->add_option("--s", gen_args.s, "k4, random: number of points")->capture_default_str();
  gen_cmd->add_option("--field", gen_args.field, "Field")->capture_default_str();
  gen_cmd->add_option("--space", gen_args.space, "random: space shape");
  gen_cmd->add_option("--seed", gen_args.seed, "Seed")->capture_default_str();
  gen_cmd->add_flag("--no-check", gen_args.no_check, "Skip the construction's self-check");
  gen_cmd->add_option("--out", gen_args.out, "Output file (default stdout)");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Run a statement verifier over a domain");
  verify_cmd->add_option("statement", verify_args.statement,
                         "a1, a2, x1, x1.1, o4.1, z3, f1, f2, cp1, is1 or o8")
      ->required();
  add_domain_flags(verify_cmd, verify_args.domain);
  verify_cmd->add_flag("--timing", verify_args.timing, "Include wall time in the report");
  verify_cmd->add_option("--out", verify_args.out, "Report file (default stdout)");

  SearchArgs search_args;
  auto* search_cmd = app.add_subcommand("search", "Stream sets with prescribed invariants (JSON lines)");
  add_domain_flags(search_cmd, search_args.domain);
  search_cmd->add_option("--class", search_args.cls,
                         "independent, circuit, uniformly-dependent, e-circuit, "
                         "equally-dependent or dependent-other");
  search_cmd->add_option("--defect", search_args.defect, "Required defect");
  search_cmd->add_option("--width", search_args.width, "Required width");
  search_cmd->add_flag("--concise", search_args.concise, "Only sets concise for the space");
  search_cmd->add_option("--limit", search_args.limit, "Stop after this many matches");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(analyze_args);
    if (*gen_cmd) return cmd_gen(gen_args);
    if (*verify_cmd) return cmd_verify(verify_args);
    if (*search_cmd) return cmd_search(search_args);
  } catch (const BudgetExceeded& e) {
    std::fprintf(stderr, "budget refusal: %s\n", e.what());
    return kExitBudget;
  } catch (const SelfCheckFailed& e) {
    std::fprintf(stderr, "self-check failed: %s\n", e.what());
    return kExitCounterexample;
  } catch (const FieldTooSmall& e) {
    std::fprintf(stderr, "field too small: %s\n", e.what());
    return kExitUsage;
  } catch (const InputError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace
}  // namespace segre::cli

int main(int argc, char** argv) {
  try {
    return segre::cli::run(argc, argv);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
}
