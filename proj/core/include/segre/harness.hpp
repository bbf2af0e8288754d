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


// Enumeration and sampling harness shared by the verifiers.
//
// A domain is a list of space shapes and set sizes over one finite field.
// Three ways of walking it:
//
//  * literal: every s-subset of Y(F) in lexicographic index order, optionally
//    keeping only the lexicographically least subset of each orbit under
//    permutations of equal-dimension factors;
//  * projective classes: one representative per orbit of concise labeled
//    s-sets under PGL of every factor and factor permutations (see
//    factor_classes); exhaustive for every statement that only depends on
//    ranks of Segre images;
//  * sampled: seeded draws, each redrawn until the statement applies.
//
// Work is split into chunks that run on worker threads; every chunk yields a
// VerificationReport and the merge is commutative, so results do not depend
// on the worker count.

#ifndef SEGRE_HARNESS_HPP_
#define SEGRE_HARNESS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "segre/io.hpp"
#include "segre/multiproj.hpp"

namespace segre {

enum class Statement { kA1, kA2, kX1, kX1_1, kO4_1, kZ3, kF1, kF2, kCp1, kIs1, kO8 };
std::string to_string(Statement s);
// Throws InputError for an unknown id.
Statement parse_statement(std::string_view text);

enum class Mode { kExhaustive, kSampled };
enum class Reduction { kNone, kFactorPermutation, kProjectiveClass };
// How sampled mode draws candidate sets.
enum class Proposal {
  kUniform,    // distinct uniform points
  kDependent,  // points added at random or decoded from spans of earlier ones
  kClustered,  // each point copies an earlier one and changes 1-2 factors
  kCircuit,    // s - 1 random points and a full-support point of their span
};

std::string to_string(Mode m);
std::string to_string(Reduction r);
std::string to_string(Proposal p);
Mode parse_mode(std::string_view text);
Reduction parse_reduction(std::string_view text);

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;
inline constexpr std::uint64_t kHighBudget = 500'000'000;

struct DomainSpec {
  FieldSpec field = FieldSpec::prime(3);
  std::vector<std::vector<int>> shapes;
  std::vector<std::size_t> sizes;
  Mode mode = Mode::kExhaustive;
  Reduction reduction = Reduction::kNone;
  Proposal proposal = Proposal::kUniform;
  // Sampled mode: accepted instances per (shape, size) pair.
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

// Every shape with n_i in [1, max_dim] (sorted ascending) and
// prod(n_i + 1) <= max_length.
std::vector<std::vector<int>> shapes_up_to(std::size_t max_length, int max_dim);
// Sorted positive-dimension shapes of all concision hulls that sets in Y
// can have (every n'_i <= n_i, zero factors dropped), excluding the empty one.
std::vector<std::vector<int>> sub_shapes(const std::vector<int>& dims);

// A point set held as residue vectors; cheap enough for the inner loops.
// Point j's components are stored back to back, factor 1 first.
class Instance {
 public:
  Instance(MultiprojectiveSpace y, std::size_t count, std::vector<std::uint32_t> coords);
  static Instance from_table(const PointTable& table, std::span<const std::size_t> indices);
  // Finite fields only.
  static Instance from_point_set(const PointSet& s);

  const MultiprojectiveSpace& space() const { return space_; }
  std::uint32_t modulus() const { return p_; }
  std::size_t size() const { return count_; }
  std::size_t factors() const { return space_.factors(); }
  std::span<const std::uint32_t> component(std::size_t j, std::size_t i) const;
  std::span<const std::uint32_t> segre(std::size_t j) const;

  // Rank of the Segre images of the points selected by mask.
  std::size_t rank_mask(std::uint64_t mask) const;
  std::size_t rank() const;
  std::size_t defect() const { return count_ - rank(); }
  bool equally_dependent() const;
  // Projective dimension of <pi_i(S)> per factor.
  const std::vector<int>& hull_dims() const;
  // Positive hull dims, ascending: the shape of the concision hull.
  std::vector<int> hull_shape() const;
  int width() const;
  std::size_t distinct_in_factor(std::size_t i) const;

  PointSet to_point_set() const;

 private:
  Instance(MultiprojectiveSpace y, std::size_t count);
  void fill_segre() const;

  MultiprojectiveSpace space_;
  std::uint32_t p_;
  std::size_t count_;
  std::vector<std::size_t> offsets_;  // component offsets within a point
  std::size_t stride_ = 0;            // coordinates per point
  std::vector<std::uint32_t> coords_;
  std::size_t length_ = 0;            // Segre length
  mutable std::vector<std::uint32_t> segre_;  // filled on first use
  mutable std::optional<std::size_t> rank_;
  mutable std::optional<std::vector<int>> hull_;
};

// Rank of `rows` row-major residue rows of length `length` mod p.
std::size_t small_rank(std::span<const std::uint32_t> rows, std::size_t count,
                       std::size_t length, std::uint32_t p);

// One representative per orbit of spanning labeled z-tuples in P^n(GF(p))
// under PGL(n+1). Such a tuple is the column set of an (n+1) x z matrix of
// full rank; its row space is an (n+1)-dimensional subspace of F^z outside
// every coordinate hyperplane, and rescaling the points moves that subspace
// by the diagonal torus. The representatives are the lexicographically least
// RREF matrices in their torus orbits; entry [c][j] is point j of class c.
// Throws BudgetExceeded when the orbit computation would be too large.
std::vector<std::vector<std::vector<std::uint32_t>>> factor_classes(std::uint32_t p,
                                                                    std::size_t z, int n);

// --- reports ---

struct Finding {
  std::string reason;
  PointSet set;
  Json detail;  // statement-specific context, may be null
  std::string key;  // ordering key; filled in by VerificationReport
};

struct VerificationReport {
  static constexpr std::size_t kMaxFindings = 50;

  std::string statement;
  std::uint64_t enumerated = 0;  // candidate sets generated
  std::uint64_t instances = 0;   // sets the statement applied to
  std::uint64_t proposals = 0;   // sampled draws, accepted or not
  std::uint64_t counterexample_count = 0;
  std::uint64_t triage_count = 0;
  // The kMaxFindings smallest findings in a fixed total order.
  std::vector<Finding> counterexamples;
  std::vector<Finding> triage;
  std::map<std::string, std::uint64_t> tallies;
  std::map<std::string, std::int64_t> maxima;
  double seconds = 0;

  void tally(const std::string& key, std::uint64_t n = 1) { tallies[key] += n; }
  void observe_max(const std::string& key, std::int64_t v);
  void add_counterexample(Finding f);
  void add_triage(Finding f);
  // Commutative and associative (seconds are summed).
  void merge(const VerificationReport& other);
  bool passed() const { return counterexample_count == 0; }
};

// Deterministic JSON: no timing unless include_timing.
Json report_to_json(const VerificationReport& r, bool include_timing = false);
Json domain_to_json(const DomainSpec& d);

// --- drivers ---

// Worker count: `requested` if nonzero, else SEGRE_LAB_THREADS, else the
// hardware concurrency; always at least 1.
unsigned worker_count(unsigned requested = 0);

// Runs chunk(c) for c in [0, chunks) on the workers and merges the results.
VerificationReport run_chunks(std::size_t chunks, unsigned threads,
                              const std::function<VerificationReport(std::size_t)>& chunk);

// Applies visit to every instance of the domain. visit returns whether the
// statement applied; sampled mode redraws until it does. With
// dependent_only, literal enumeration skips independent sets before building
// an Instance (they still count as enumerated).
//
// Instance counts: literal C(|Y(F)|, s) per (shape, size); projective
// classes: the number of class tuples. Exhaustive mode throws
// BudgetExceeded when the total exceeds budget; sampled mode throws it when
// a single sample needs more than 10^5 draws.
using Visitor = std::function<bool(const Instance&, VerificationReport&)>;
VerificationReport enumerate_domain(const DomainSpec& domain, std::uint64_t budget,
                                    unsigned threads, const Visitor& visit,
                                    bool dependent_only = false);

// Number of instances exhaustive mode would produce (saturating).
std::uint64_t exhaustive_count(const DomainSpec& domain);

// Lexicographically least image of a sorted index set under permutations of
// equal-dimension factors of the table's space.
std::vector<std::size_t> canonical_under_factor_permutations(
    const PointTable& table, std::span<const std::size_t> indices);

}  // namespace segre

#endif  // SEGRE_HARNESS_HPP_
