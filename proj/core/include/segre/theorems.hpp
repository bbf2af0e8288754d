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


// Executable checks of the classification statements.
//
// Each verifier walks a domain with the harness and applies one predicate per
// instance. Predicates are evaluated on the concision hull of the set, so a
// literal walk over Y(F) covers every hull shape that sets in Y can have,
// and a projective-class walk over concise sets covers the same statements
// shape by shape.
//
// Statement ids: a1, a2 (injective projections), x1, x1.1 (width bounds for
// circuits and e-circuits), o4.1 (defect bound for concise sets), z3
// (dependent triples), f1, f2 (equally dependent 4- and 5-sets), cp1 (sets
// of three points irredundantly spanning a rank-2 point), is1 (equally
// dependent 6-sets), o8 (6-sets spanning a single projective space).

#ifndef SEGRE_THEOREMS_HPP_
#define SEGRE_THEOREMS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "segre/harness.hpp"
#include "segre/multiproj.hpp"

namespace segre {

struct VerificationJob {
  Statement statement = Statement::kO4_1;
  DomainSpec domain;
  std::uint64_t budget = kDefaultBudget;
  unsigned threads = 0;  // see worker_count
};

// --- injective projections ---

// Whether eta_i (forget factor i) is injective on S. With one factor, eta
// maps to a point, so it is injective only on singletons.
bool eta_injective(const PointSet& s, std::size_t i);
// Whether forgetting the factors in e is injective on S; e must leave at
// least one factor.
bool eta_set_injective(const PointSet& s, const std::vector<std::size_t>& e);

// The least 0-based i with eta_i injective on S, if any. Guaranteed to exist
// when k > C(s, 2). Throws InputError on an empty set.
std::optional<std::size_t> find_injective_eta(const PointSet& s);
// Greedy: pick an injective eta, project, repeat until #E = s. Returns E
// sorted (0-based, in the original factor numbering). Guaranteed when
// k > C(s, 2) + s. Throws InputError on an empty set.
std::optional<std::vector<std::size_t>> find_injective_eta_set(const PointSet& s);

// --- predicates ---

// Applies the statement to one set, recording tallies and findings in rep.
// Returns whether the statement applies to the set (e.g. only equally
// dependent 6-sets for is1). Not for cp1.
bool check_instance(Statement st, const Instance& inst, VerificationReport& rep);

// True if replaying the set through check_instance records a counterexample
// or a triage entry.
bool replay_is_violation(Statement st, const PointSet& s);

// The cp1 check for one pair: a in Y = (P^1)^k embedded in W, b concise for
// W, both irredundantly spanning the same point.
bool check_cp1_pair(const PointSet& a_in_w, const PointSet& b, std::size_t k,
                    VerificationReport& rep);

// Admissible ambient spaces for cp1: each factor of (P^1)^k kept or raised
// to P^2, followed by no extra factor, P^1, P^1 x P^1, or P^2. Y sits in the
// first coordinates of each factor and at (1:0:...) in the extra ones.
std::vector<MultiprojectiveSpace> cp1_spaces(const FieldSpec& field, std::size_t k);

// Every point nu(a) + c nu(b) with a, b differing in all factors, c != 0:
// exactly the rank-2 points concise for (P^1)^k. Canonical residue vectors,
// sorted.
std::vector<std::vector<std::uint32_t>> concise_rank2_points(const PointTable& y);

// --- verifiers ---

VerificationReport verify(const VerificationJob& job);

VerificationReport verify_a1(const VerificationJob& job);
VerificationReport verify_a2(const VerificationJob& job);
VerificationReport verify_x1(const VerificationJob& job);
VerificationReport verify_x1_1(const VerificationJob& job);
VerificationReport verify_o4_1(const VerificationJob& job);
VerificationReport verify_z3(const VerificationJob& job);
VerificationReport verify_f1(const VerificationJob& job);
VerificationReport verify_f2(const VerificationJob& job);
// Shapes must be (P^1)^k, k >= 2. Exhaustive: every q, A, admissible W and
// concise B. Sampled: `samples` draws of (q, W), each checked for every A
// and B.
VerificationReport verify_cp1(const VerificationJob& job);
VerificationReport verify_is1(const VerificationJob& job);
VerificationReport verify_o8(const VerificationJob& job);

// Report JSON preceded by the job description.
Json job_report_to_json(const VerificationJob& job, const VerificationReport& r,
                        bool include_timing = false);

}  // namespace segre

#endif  // SEGRE_THEOREMS_HPP_
