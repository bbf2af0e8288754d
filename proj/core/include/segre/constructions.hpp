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


// Example families of equally dependent sets, the elementary increasing
// operation, and recognition of the two six-point families.
//
// Every build_* function validates the side conditions of its family and then
// re-derives the claimed invariants (defect, concision, subset behaviour) by
// rank computations; a mismatch throws SelfCheckFailed. gen_* functions draw
// parameters from a seed and call the matching build_*.

#ifndef SEGRE_CONSTRUCTIONS_HPP_
#define SEGRE_CONSTRUCTIONS_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "segre/multiproj.hpp"
#include "segre/random.hpp"

namespace segre {

struct ExampleSet {
  std::string family;  // "k2", "k3", "k4", "z1"
  PointSet set;
  // Role of each point, e.g. "o" -> o. Roles follow the family's notation.
  std::map<std::string, MultiPoint> labels;

  const MultiprojectiveSpace& space() const { return set.space(); }
};

// Six points: o, p with p_h != o_h everywhere; u, v equal to o off factor 1;
// w, z equal to p off factor 2. Y = P^{n1} x P^{n2} x (P^1)^{k-2}.
struct K2Params {
  MultiPoint o, p;
  ProjPoint u1, v1, w2, z2;
};

// Y = P^n x (P^1)^{k-1}; {o, u, v} differ only in factor 1 and lie on a line
// L there, {p, w, z} likewise on a line D.
struct K3Params {
  MultiPoint o, p;
  ProjPoint u1, v1, w1, z1;
};

// Three points on L x {o'} and s - 3 points on D x {p'}.
struct K4Params {
  std::vector<ProjPoint> on_l;  // 3 first-factor points
  std::vector<ProjPoint> on_d;  // s - 3 first-factor points
  std::vector<ProjPoint> o_tail, p_tail;  // factors 2..k
};

// Y = P^2; three points on a line L and two points off it.
struct Z1Params {
  std::vector<ProjPoint> e;  // 3 collinear points
  std::vector<ProjPoint> g;  // 2 points off the line
};

// All build_* functions throw InputError when a side condition fails and
// SelfCheckFailed when the claimed invariants do not hold.
ExampleSet build_example_k2(const K2Params& params, bool self_check = true);
ExampleSet build_example_k3(const K3Params& params, bool self_check = true);
ExampleSet build_example_k4(const K4Params& params, bool self_check = true);
ExampleSet build_example_z1(const Z1Params& params, bool self_check = true);

// gen_* additionally throw FieldTooSmall when the field cannot realize the
// side conditions, naming the violated cardinality constraint.
ExampleSet gen_example_k2(int k, int n1, int n2, const FieldSpec& field,
                          std::uint64_t seed, bool self_check = true);
ExampleSet gen_example_k3(int k, int n, const FieldSpec& field, std::uint64_t seed,
                          bool self_check = true);
ExampleSet gen_example_k4(int k, int n, int s, const FieldSpec& field,
                          std::uint64_t seed, bool self_check = true);
ExampleSet gen_example_z1(const FieldSpec& field, std::uint64_t seed,
                          bool self_check = true);

// Distinct uniformly drawn points, redrawn until the set is concise for Y.
// Throws InputError if concision is impossible (s < n_i + 1 for some i, or
// |Y(F)| < s) or not reached within the attempt limit.
PointSet random_concise_set(const MultiprojectiveSpace& y, std::size_t s,
                            std::uint64_t seed);

// --- elementary increasing ---

struct ElementaryIncreasingSpec {
  PointSet base;       // E, in Y
  MultiPoint pivot;    // o in Y, not in E
  std::size_t factor;  // i
  int target_dim;      // m_i in {n_i, n_i + 1}; m_i = 1 when n_i = 0
  ProjPoint u, v;      // u_i, v_i in P^{m_i}; v_i on <o_i, u_i>, v_i != o_i, u_i
};

struct ElementaryIncreasingResult {
  MultiprojectiveSpace w;
  PointSet f;  // E + {o}, embedded in W
  PointSet g;  // E + {u, v}
};

// Y sits in W as the hyperplane where the last coordinate of factor i
// vanishes.
ElementaryIncreasingResult elementary_increasing(const ElementaryIncreasingSpec& spec);

// Embeds S into W factorwise by appending zero coordinates; W must have the
// same factor count and dims at least those of S's space.
PointSet embed_padded(const PointSet& s, const MultiprojectiveSpace& w);
MultiPoint embed_padded(const MultiPoint& p, const MultiprojectiveSpace& w);

struct IncreasingWitness {
  MultiPoint pivot;
  std::size_t factor;
};

// Whether G (same space as F) is an elementary increasing of F: G = E + {u, v}
// and F = E + {o}, with u, v equal to o off one factor i, u_i outside
// E_i + {o_i}, v_i on the line <o_i, u_i>, v_i outside E_i + {o_i, u_i}.
// With fresh_coordinates = false the conditions against E_i are dropped
// (u and v only need to be new points), which is the shape rank-2
// decompositions meeting in a point actually take.
std::optional<IncreasingWitness> find_elementary_increasing(const PointSet& f,
                                                            const PointSet& g,
                                                            bool fresh_coordinates = true);

// --- six-point family recognition ---

enum class FamilyKind { kNone, kK2, kK3 };
std::string to_string(FamilyKind f);

struct FamilyMatch {
  FamilyKind family = FamilyKind::kNone;
  // o, u, v, p, w, z.
  std::map<std::string, MultiPoint> labels;
  // Factor in which {o,u,v} varies, and the one in which {p,w,z} varies
  // (equal for K3).
  std::size_t factor_a = 0, factor_b = 0;
};

// The structural conditions of each family for a given labeling and factor
// choice; both also check the shape of the space.
bool satisfies_k2(const PointSet& s, const std::map<std::string, MultiPoint>& labels,
                  std::size_t i, std::size_t j);
bool satisfies_k3(const PointSet& s, const std::map<std::string, MultiPoint>& labels,
                  std::size_t i);

// Requires #S = 6 (InputError otherwise). Tries K2 before K3.
FamilyMatch match_family(const PointSet& s);
bool validate_match(const PointSet& s, const FamilyMatch& m);

}  // namespace segre

#endif  // SEGRE_CONSTRUCTIONS_HPP_
