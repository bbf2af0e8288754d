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


#include "segre/theorems.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <set>
#include <string>
#include <utility>

#include "segre/constructions.hpp"
#include "segre/dependence.hpp"
#include "segre/error.hpp"
#include "segre/random.hpp"

namespace segre {
namespace {

std::size_t choose2(std::size_t s) { return s * (s - 1) / 2; }

// Bit h set iff the two points differ in factor h.
std::vector<std::uint64_t> pair_differences(const PointSet& s) {
  if (s.space().factors() > 64) throw InputError("at most 64 factors are supported");
  std::vector<std::uint64_t> out;
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      std::uint64_t m = 0;
      for (std::size_t h = 0; h < s.space().factors(); ++h) {
        if (s[a][h] != s[b][h]) m |= std::uint64_t{1} << h;
      }
      out.push_back(m);
    }
  }
  return out;
}

std::string shape_name(const std::vector<int>& dims) {
  if (dims.empty()) return "P^0";
  std::string s;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) s += "x";
    s += "P^" + std::to_string(dims[i]);
  }
  return s;
}

bool is_shape(const std::vector<int>& sorted, std::initializer_list<int> want) {
  return sorted == std::vector<int>(want);
}

std::vector<int> ones(std::size_t k) { return std::vector<int>(k, 1); }

void violation(VerificationReport& rep, bool triage, std::string reason, PointSet set,
               Json detail = nullptr) {
  Finding f{std::move(reason), std::move(set), std::move(detail), {}};
  if (triage) {
    rep.add_triage(std::move(f));
  } else {
    rep.add_counterexample(std::move(f));
  }
}

std::string sz(std::size_t n) { return std::to_string(n); }

// Defects of both halves and the intersection dimension for all ten splits
// of a 6-set; attached to is1 findings.
Json split_summary(const PointSet& s) {
  Json out = Json::array();
  for (std::uint64_t m = 0; m < 64; ++m) {
    if (std::popcount(m) != 3 || !(m & 1)) continue;
    std::vector<std::size_t> a, b;
    for (std::size_t i = 0; i < 6; ++i) ((m >> i) & 1 ? a : b).push_back(i);
    const auto pa = partition_analysis(s, a, b);
    out.push_back(Json{{"a", a},
                       {"b", b},
                       {"defect_a", pa.defect_a},
                       {"defect_b", pa.defect_b},
                       {"dim_intersection", pa.dim_intersection}});
  }
  return out;
}

bool check_a1(const Instance& inst, VerificationReport& rep) {
  const PointSet s = inst.to_point_set();
  const std::size_t n = s.size(), k = s.space().factors();
  const bool guaranteed = k > choose2(n);
  const auto i = find_injective_eta(s);
  rep.tally(i ? "found" : "absent");
  if (guaranteed) rep.tally("guaranteed");
  if (i && !eta_injective(s, *i)) {
    violation(rep, false, "returned eta is not injective", s, Json{{"index", *i}});
  } else if (!i && guaranteed) {
    violation(rep, false, "no injective eta although k > C(s,2)", s);
  }
  return true;
}

bool check_a2(const Instance& inst, VerificationReport& rep) {
  const PointSet s = inst.to_point_set();
  const std::size_t n = s.size(), k = s.space().factors();
  const bool guaranteed = k > choose2(n) + n;
  const auto e = find_injective_eta_set(s);
  rep.tally(e ? "found" : "absent");
  if (guaranteed) rep.tally("guaranteed");
  if (e && (e->size() != n || !eta_set_injective(s, *e))) {
    violation(rep, false, "returned E does not re-validate", s, Json{{"E", *e}});
  } else if (!e && guaranteed) {
    violation(rep, false, "no E although k > C(s,2) + s", s);
  }
  return true;
}

bool check_o4_1(const Instance& inst, VerificationReport& rep) {
  const std::size_t z = inst.size(), e = inst.defect();
  if (e == 0 || z < 3) return false;
  const auto shape = inst.hull_shape();
  rep.tally("dependent/z=" + sz(z));
  rep.observe_max("max_defect/z=" + sz(z), static_cast<std::int64_t>(e));
  const bool line = is_shape(shape, {1});
  if (e + 2 > z) {
    violation(rep, false, "defect exceeds #Z - 2", inst.to_point_set());
  } else if ((e + 2 == z) != line) {
    violation(rep, false, line ? "P^1 hull without equality" : "equality with hull other than P^1",
              inst.to_point_set());
  } else if (line) {
    rep.tally("equality/z=" + sz(z));
  }
  return true;
}

bool check_z3(const Instance& inst, VerificationReport& rep) {
  if (inst.size() != 3 || inst.defect() == 0) return false;
  rep.tally("dependent");
  std::size_t varying = 0, three = 0;
  bool collinear = true;
  for (std::size_t i = 0; i < inst.factors(); ++i) {
    const std::size_t d = inst.distinct_in_factor(i);
    if (d > 1) ++varying;
    if (d == 3) {
      ++three;
      collinear = inst.hull_dims()[i] == 1;
    }
  }
  if (varying != 1 || three != 1 || !collinear || !is_shape(inst.hull_shape(), {1})) {
    violation(rep, false, "dependent triple without the single collinear factor", inst.to_point_set());
  }
  return true;
}

bool check_f1(const Instance& inst, VerificationReport& rep) {
  if (inst.size() != 4 || !inst.equally_dependent()) return false;
  const std::size_t e = inst.defect();
  rep.tally("equally_dependent/e=" + sz(e));
  if (e < 2) return true;
  if (e != 2 || !is_shape(inst.hull_shape(), {1})) {
    violation(rep, false, "equally dependent 4-set with e >= 2 is not 4 points of P^1",
              inst.to_point_set());
  }
  return true;
}

bool check_f2(const Instance& inst, VerificationReport& rep) {
  if (inst.size() != 5 || !inst.equally_dependent()) return false;
  const std::size_t e = inst.defect();
  const auto shape = inst.hull_shape();
  rep.tally("equally_dependent/e=" + sz(e));
  if (e < 2) return true;
  rep.tally("e=" + sz(e) + "/hull=" + shape_name(shape));
  if (e > 3) {
    violation(rep, false, "equally dependent 5-set with e > 3", inst.to_point_set());
  } else if (e == 3 && !is_shape(shape, {1})) {
    violation(rep, false, "e = 3 with hull other than P^1", inst.to_point_set());
  } else if (e == 2) {
    if (is_shape(shape, {1, 1})) {
      // A nonzero (1,1)-form vanishing on S is a kernel vector of the
      // embedding matrix in hull coordinates.
      const PointSet hull = concision_hull(inst.to_point_set()).reduced;
      if (kernel_basis(embed_set(hull)).empty()) {
        violation(rep, false, "no (1,1)-form vanishes on the set", inst.to_point_set());
      } else {
        rep.tally("kernel_test_passed");
      }
    } else if (!is_shape(shape, {2})) {
      violation(rep, false, "e = 2 with hull other than P^2 or P^1xP^1", inst.to_point_set());
    }
  }
  return true;
}

bool check_x1(const Instance& inst, VerificationReport& rep) {
  if (inst.defect() != 1 || !inst.equally_dependent()) return false;
  const std::size_t s = inst.size();
  const int w = inst.width();
  rep.tally("circuits/s=" + sz(s));
  rep.tally("hull/s=" + sz(s) + "/" + shape_name(inst.hull_shape()));
  rep.observe_max("max_width/s=" + sz(s), w);
  if (static_cast<std::size_t>(w) > choose2(s) + s) {
    violation(rep, false, "circuit wider than C(s,2) + s", inst.to_point_set());
  }
  return true;
}

bool check_x1_1(const Instance& inst, VerificationReport& rep) {
  if (inst.defect() == 0 || inst.size() < 3) return false;
  const PointSet s = inst.to_point_set();
  const auto e = e_circuit_degree(s);
  if (!e) return false;
  const std::size_t z = s.size() - *e + 1;
  const int w = inst.width();
  rep.tally("e_circuits/e=" + sz(*e) + "/z=" + sz(z));
  rep.observe_max("max_width/z=" + sz(z), w);
  if (static_cast<std::size_t>(w) > choose2(z) + z) {
    violation(rep, false, "e-circuit wider than C(z,2) + z", s, Json{{"e", *e}, {"z", z}});
  }
  return true;
}

bool check_o8(const Instance& inst, VerificationReport& rep) {
  const auto shape = inst.hull_shape();
  if (inst.size() != 6 || shape.size() != 1) return false;
  const int n = shape[0];
  rep.tally("P^" + std::to_string(n));
  if (static_cast<long long>(inst.defect()) != 6 - n - 1) {
    violation(rep, false, "six points spanning P^n without e = 6 - n - 1", inst.to_point_set());
  }
  return true;
}

bool check_is1(const Instance& inst, VerificationReport& rep) {
  if (inst.size() != 6 || !inst.equally_dependent()) return false;
  const std::size_t e = inst.defect();
  const auto shape = inst.hull_shape();
  const int w = inst.width();
  rep.tally("equally_dependent/e=" + sz(e));
  rep.observe_max("max_width", w);
  if (shape.size() == 1) check_o8(inst, rep);
  FamilyKind family = FamilyKind::kNone;
  if (e >= 2) {
    family = match_family(concision_hull(inst.to_point_set()).reduced).family;
  }
  const bool first = family != FamilyKind::kNone;
  const bool second = w <= 4 && (w < 4 || shape == ones(4));
  if (first) {
    rep.tally(to_string(family));
  } else if (second) {
    rep.tally("width-bound");
  } else {
    const PointSet s = inst.to_point_set();
    violation(rep, inst.modulus() == 2, "equally dependent 6-set outside both alternatives", s,
              Json{{"hull", shape_name(shape)}, {"defect", e}, {"splits", split_summary(s)}});
  }
  return true;
}

}  // namespace

// --- injective projections ---

bool eta_injective(const PointSet& s, std::size_t i) {
  if (i >= s.space().factors()) throw InputError("factor index out of range");
  for (std::uint64_t d : pair_differences(s)) {
    if (d == (std::uint64_t{1} << i)) return false;
  }
  return true;
}

bool eta_set_injective(const PointSet& s, const std::vector<std::size_t>& e) {
  const std::size_t k = s.space().factors();
  std::uint64_t forget = 0;
  for (std::size_t i : e) {
    if (i >= k) throw InputError("factor index out of range");
    forget |= std::uint64_t{1} << i;
  }
  if (static_cast<std::size_t>(std::popcount(forget)) >= k) {
    throw InputError("E must leave at least one factor");
  }
  for (std::uint64_t d : pair_differences(s)) {
    if ((d & ~forget) == 0) return false;
  }
  return true;
}

std::optional<std::size_t> find_injective_eta(const PointSet& s) {
  if (s.empty()) throw InputError("find_injective_eta needs a nonempty set");
  const std::size_t k = s.space().factors();
  std::uint64_t bad = 0;
  for (std::uint64_t d : pair_differences(s)) {
    if (std::popcount(d) == 1) bad |= d;
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (!((bad >> i) & 1)) return i;
  }
  return std::nullopt;
}

std::optional<std::vector<std::size_t>> find_injective_eta_set(const PointSet& s) {
  if (s.empty()) throw InputError("find_injective_eta_set needs a nonempty set");
  const std::size_t k = s.space().factors(), n = s.size();
  if (k <= n) return std::nullopt;
  const auto diffs = pair_differences(s);
  std::uint64_t forget = 0;
  std::vector<std::size_t> e;
  for (std::size_t step = 0; step < n; ++step) {
    // One application of the single-factor search to the image of S after
    // forgetting E: pairs of that image differ exactly outside E.
    std::uint64_t bad = 0;
    for (std::uint64_t d : diffs) {
      const std::uint64_t rest = d & ~forget;
      if (std::popcount(rest) == 1) bad |= rest;
    }
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < k && !pick; ++i) {
      if (!((forget >> i) & 1) && !((bad >> i) & 1)) pick = i;
    }
    if (!pick) return std::nullopt;
    forget |= std::uint64_t{1} << *pick;
    e.push_back(*pick);
  }
  std::sort(e.begin(), e.end());
  return e;
}

// --- predicates ---

bool check_instance(Statement st, const Instance& inst, VerificationReport& rep) {
  switch (st) {
    case Statement::kA1: return check_a1(inst, rep);
    case Statement::kA2: return check_a2(inst, rep);
    case Statement::kX1: return check_x1(inst, rep);
    case Statement::kX1_1: return check_x1_1(inst, rep);
    case Statement::kO4_1: return check_o4_1(inst, rep);
    case Statement::kZ3: return check_z3(inst, rep);
    case Statement::kF1: return check_f1(inst, rep);
    case Statement::kF2: return check_f2(inst, rep);
    case Statement::kIs1: return check_is1(inst, rep);
    case Statement::kO8: return check_o8(inst, rep);
    case Statement::kCp1: break;
  }
  throw InputError("cp1 is checked per pair, see check_cp1_pair");
}

bool replay_is_violation(Statement st, const PointSet& s) {
  VerificationReport rep;
  check_instance(st, Instance::from_point_set(s), rep);
  return rep.counterexample_count + rep.triage_count > 0;
}

// --- cp1 ---

std::vector<MultiprojectiveSpace> cp1_spaces(const FieldSpec& field, std::size_t k) {
  const std::vector<std::vector<int>> extras{{}, {1}, {1, 1}, {2}};
  std::vector<MultiprojectiveSpace> out;
  for (std::uint64_t raise = 0; raise < (std::uint64_t{1} << k); ++raise) {
    for (const auto& x : extras) {
      std::vector<int> dims;
      for (std::size_t i = 0; i < k; ++i) dims.push_back((raise >> i) & 1 ? 2 : 1);
      dims.insert(dims.end(), x.begin(), x.end());
      out.emplace_back(field, dims);
    }
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> concise_rank2_points(const PointTable& y) {
  const std::uint32_t p = y.modulus();
  std::set<std::vector<std::uint32_t>> found;
  std::vector<std::uint32_t> v(y.segre_length());
  for (std::size_t a = 0; a < y.size(); ++a) {
    for (std::size_t b = a + 1; b < y.size(); ++b) {
      bool everywhere = true;
      for (std::size_t i = 0; i < y.factors() && everywhere; ++i) everywhere = y.digit(a, i) != y.digit(b, i);
      if (!everywhere) continue;
      for (std::uint32_t c = 1; c < p; ++c) {
        const auto sa = y.segre(a), sb = y.segre(b);
        for (std::size_t l = 0; l < v.size(); ++l) {
          v[l] = static_cast<std::uint32_t>((sa[l] + std::uint64_t{c} * sb[l]) % p);
        }
        auto w = v;
        normalize_residues(w, p);
        found.insert(std::move(w));
      }
    }
  }
  return {found.begin(), found.end()};
}

namespace {

// Y = (P^1)^k into W: pad the first k factors with zeros, put (1:0:...) in
// the extra ones.
MultiPoint embed_in_w(const MultiPoint& a, const MultiprojectiveSpace& w) {
  std::vector<ProjPoint> comps;
  const FieldSpec& f = w.field();
  for (std::size_t h = 0; h < w.factors(); ++h) {
    Vector v(static_cast<std::size_t>(w.dim(h)) + 1, Scalar::zero(f));
    if (h < a.factors()) {
      std::copy(a[h].coords().begin(), a[h].coords().end(), v.begin());
    } else {
      v[0] = Scalar::one(f);
    }
    comps.push_back(ProjPoint::normalized(std::move(v)));
  }
  return MultiPoint(std::move(comps));
}

std::vector<std::uint32_t> embed_tensor(const std::vector<std::uint32_t>& q, std::size_t k,
                                        const MultiprojectiveSpace& w) {
  std::vector<std::uint32_t> out(w.segre_length(), 0);
  for (std::size_t y = 0; y < q.size(); ++y) {
    // Digits of y in base 2, factor 1 most significant; extras at 0.
    std::size_t idx = 0;
    for (std::size_t h = 0; h < w.factors(); ++h) {
      const std::size_t digit = h < k ? (y >> (k - 1 - h)) & 1 : 0;
      idx = idx * (static_cast<std::size_t>(w.dim(h)) + 1) + digit;
    }
    out[idx] = q[y];
  }
  return out;
}

struct Cp1Context {
  std::size_t k;
  FieldSpec field;
  std::uint64_t budget;
  std::unique_ptr<PointTable> y;
  std::vector<MultiprojectiveSpace> spaces;
  std::vector<std::unique_ptr<PointTable>> tables;
};

// All (A, B) pairs for one q and one W.
void check_q_w(const Cp1Context& ctx, const std::vector<std::uint32_t>& q, std::size_t wi,
               VerificationReport& rep) {
  const auto a_sets = decompositions(*ctx.y, q, 2, ctx.budget);
  const PointTable& tw = *ctx.tables[wi];
  const MultiprojectiveSpace& w = ctx.spaces[wi];
  const auto qw = embed_tensor(q, ctx.k, w);
  std::vector<PointSet> bs;
  for (const auto& b : decompositions(tw, qw, 3, ctx.budget)) {
    const Instance inst = Instance::from_table(tw, b);
    if (inst.hull_dims() == w.dims()) bs.push_back(tw.make_set(b));
  }
  rep.tally("searches");
  for (const auto& a : a_sets) {
    std::vector<MultiPoint> pts;
    for (std::size_t x : a) pts.push_back(embed_in_w(ctx.y->point(x), w));
    const PointSet aw(w, std::move(pts));
    for (const auto& b : bs) {
      check_cp1_pair(aw, b, ctx.k, rep);
      ++rep.instances;
      ++rep.enumerated;
    }
  }
}

}  // namespace

bool check_cp1_pair(const PointSet& a, const PointSet& b, std::size_t k, VerificationReport& rep) {
  const MultiprojectiveSpace& w = b.space();
  auto sorted = w.dims();
  std::sort(sorted.begin(), sorted.end());
  const std::string wname = shape_name(sorted);
  const bool triage = w.field().is_finite() && w.field().modulus() == 2;
  std::size_t common = 0;
  for (const auto& x : a) common += b.contains(x) ? 1 : 0;
  const PointSet s = a.united(b);
  auto detail = [&] {
    return Json{{"W", w.dims()}, {"A", point_set_to_json(a)}, {"B", point_set_to_json(b)}};
  };
  if (common > 0) {
    rep.tally("case1");
    rep.tally("case1/W=" + wname);
    auto raised = ones(k - 1);
    raised.push_back(2);
    const bool shape_ok = sorted == ones(k) || sorted == raised || sorted == ones(k + 1);
    // Two distinct failures: B minus A is not obtained from the pivot by
    // changing one factor at all, or it is, but u_i or v_i lies in
    // pi_i(A minus the pivot), which the definition excludes.
    if (!find_elementary_increasing(a, b, false)) {
      rep.tally("case1/not-increasing");
      violation(rep, triage, "A and B meet but B is not an elementary increasing of A", s, detail());
      return false;
    }
    if (!find_elementary_increasing(a, b, true)) {
      rep.tally("case1/coordinate-overlap");
      violation(rep, triage,
                "A and B meet; B changes the pivot in one factor, but with a coordinate of A",
                s, detail());
      return false;
    }
    if (!shape_ok) {
      violation(rep, triage, "A and B meet but W is not Y, P^2x(P^1)^(k-1) or (P^1)^(k+1)", s,
                detail());
      return false;
    }
    return true;
  }
  rep.tally("case2");
  rep.tally("case2/W=" + wname);
  if (!is_shape(sorted, {1, 2}) && !is_shape(sorted, {1, 1}) && !is_shape(sorted, {1, 1, 1})) {
    violation(rep, triage, "A and B disjoint but W is not P^2xP^1, P^1xP^1 or (P^1)^3", s, detail());
    return false;
  }
  // The two-way dichotomy for the disjoint case.
  const Instance inst = Instance::from_point_set(s);
  const std::size_t e = inst.defect();
  rep.tally("case2/e=" + sz(e));
  bool ok = inst.equally_dependent();
  if (ok && e != 1) {
    ok = e == 2 && k == 2 && is_shape(sorted, {1, 1}) && !kernel_basis(embed_set(s)).empty();
  }
  if (!ok) {
    violation(rep, triage, "disjoint case: S is neither a circuit nor on a (1,1) divisor", s, detail());
  }
  return ok;
}

// --- verifiers ---

namespace {

void require_sizes(const VerificationJob& job, std::size_t size) {
  for (std::size_t s : job.domain.sizes) {
    if (s != size) {
      throw InputError(to_string(job.statement) + " is about sets of size " + sz(size));
    }
  }
}

VerificationReport run_subset_job(const VerificationJob& job, Proposal proposal, bool dependent_only) {
  const auto start = std::chrono::steady_clock::now();
  DomainSpec d = job.domain;
  d.proposal = proposal;
  const Statement st = job.statement;
  VerificationReport r = enumerate_domain(
      d, job.budget, job.threads,
      [st](const Instance& inst, VerificationReport& rep) { return check_instance(st, inst, rep); },
      dependent_only);
  r.statement = to_string(st);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

VerificationJob as(Statement st, VerificationJob job) {
  job.statement = st;
  return job;
}

}  // namespace

VerificationReport verify_a1(const VerificationJob& job) {
  return run_subset_job(as(Statement::kA1, job), Proposal::kClustered, false);
}

VerificationReport verify_a2(const VerificationJob& job) {
  return run_subset_job(as(Statement::kA2, job), Proposal::kClustered, false);
}

VerificationReport verify_x1(const VerificationJob& job) {
  return run_subset_job(as(Statement::kX1, job), Proposal::kCircuit, true);
}

VerificationReport verify_x1_1(const VerificationJob& job) {
  return run_subset_job(as(Statement::kX1_1, job), Proposal::kDependent, true);
}

VerificationReport verify_o4_1(const VerificationJob& job) {
  return run_subset_job(as(Statement::kO4_1, job), Proposal::kDependent, true);
}

VerificationReport verify_z3(const VerificationJob& job) {
  require_sizes(job, 3);
  return run_subset_job(as(Statement::kZ3, job), Proposal::kDependent, true);
}

VerificationReport verify_f1(const VerificationJob& job) {
  require_sizes(job, 4);
  return run_subset_job(as(Statement::kF1, job), Proposal::kDependent, true);
}

VerificationReport verify_f2(const VerificationJob& job) {
  require_sizes(job, 5);
  return run_subset_job(as(Statement::kF2, job), Proposal::kDependent, true);
}

VerificationReport verify_is1(const VerificationJob& job) {
  require_sizes(job, 6);
  return run_subset_job(as(Statement::kIs1, job), Proposal::kDependent, true);
}

VerificationReport verify_o8(const VerificationJob& job) {
  require_sizes(job, 6);
  return run_subset_job(as(Statement::kO8, job), Proposal::kUniform, false);
}

VerificationReport verify_cp1(const VerificationJob& job) {
  const auto start = std::chrono::steady_clock::now();
  const DomainSpec& d = job.domain;
  if (!d.field.is_finite()) throw InputError("cp1 needs a finite field");
  if (d.shapes.empty()) throw InputError("cp1 needs at least one shape (P^1)^k");
  VerificationReport total;
  for (std::size_t si = 0; si < d.shapes.size(); ++si) {
    const auto& shape = d.shapes[si];
    if (shape.size() < 2 || shape != ones(shape.size())) {
      throw InputError("cp1 shapes must be (P^1)^k with k >= 2");
    }
    Cp1Context ctx{shape.size(), d.field, job.budget, nullptr, {}, {}};
    ctx.y = std::make_unique<PointTable>(MultiprojectiveSpace(d.field, shape));
    ctx.spaces = cp1_spaces(d.field, ctx.k);
    for (const auto& w : ctx.spaces) ctx.tables.push_back(std::make_unique<PointTable>(w));
    if (d.mode == Mode::kExhaustive) {
      const auto qs = concise_rank2_points(*ctx.y);
      const std::size_t nw = ctx.spaces.size();
      total.merge(run_chunks(qs.size() * nw, job.threads, [&](std::size_t c) {
        VerificationReport rep;
        check_q_w(ctx, qs[c / nw], c % nw, rep);
        return rep;
      }));
    } else {
      total.merge(run_chunks(d.samples, job.threads, [&](std::size_t i) {
        VerificationReport rep;
        Rng rng = make_rng(d.seed, (std::uint64_t{si} << 40) | i);
        const PointTable& y = *ctx.y;
        std::size_t a = 0, b = 0;
        bool everywhere = false;
        while (!everywhere) {
          ++rep.proposals;
          a = draw_below(rng, y.size());
          b = draw_below(rng, y.size());
          everywhere = true;
          for (std::size_t h = 0; h < y.factors() && everywhere; ++h) everywhere = y.digit(a, h) != y.digit(b, h);
        }
        const std::uint32_t p = y.modulus();
        const std::uint32_t c = 1 + static_cast<std::uint32_t>(draw_below(rng, p - 1));
        std::vector<std::uint32_t> q(y.segre_length());
        for (std::size_t l = 0; l < q.size(); ++l) {
          q[l] = static_cast<std::uint32_t>((y.segre(a)[l] + std::uint64_t{c} * y.segre(b)[l]) % p);
        }
        normalize_residues(q, p);
        check_q_w(ctx, q, draw_below(rng, ctx.spaces.size()), rep);
        return rep;
      }));
    }
  }
  total.statement = to_string(Statement::kCp1);
  total.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return total;
}

VerificationReport verify(const VerificationJob& job) {
  switch (job.statement) {
    case Statement::kA1: return verify_a1(job);
    case Statement::kA2: return verify_a2(job);
    case Statement::kX1: return verify_x1(job);
    case Statement::kX1_1: return verify_x1_1(job);
    case Statement::kO4_1: return verify_o4_1(job);
    case Statement::kZ3: return verify_z3(job);
    case Statement::kF1: return verify_f1(job);
    case Statement::kF2: return verify_f2(job);
    case Statement::kCp1: return verify_cp1(job);
    case Statement::kIs1: return verify_is1(job);
    case Statement::kO8: return verify_o8(job);
  }
  throw InputError("unknown statement");
}

Json job_report_to_json(const VerificationJob& job, const VerificationReport& r, bool include_timing) {
  Json j = Json::object();
  j["statement"] = to_string(job.statement);
  j["domain"] = domain_to_json(job.domain);
  j["budget"] = job.budget;
  j["report"] = report_to_json(r, include_timing);
  return j;
}

}  // namespace segre
