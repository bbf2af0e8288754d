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


#include "segre/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>
#include <utility>

#include "segre/error.hpp"
#include "segre/linalg.hpp"
#include "segre/random.hpp"

namespace segre {
namespace {

constexpr std::uint64_t kSaturated = ~std::uint64_t{0};

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  // Exact while it fits: C(n, i) * (n - i) / (i + 1) stays integral.
  unsigned __int128 r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    r = r * (n - i) / (i + 1);
    if (r > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(r);
}

std::uint32_t mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
}

// Gaussian elimination in place; returns the rank.
std::size_t eliminate(std::uint32_t* m, std::size_t rows, std::size_t cols, std::uint32_t p) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      std::swap_ranges(m + piv * cols, m + piv * cols + cols, m + r * cols);
    }
    const std::uint32_t inv = mod_inverse(m[r * cols + c], p);
    for (std::size_t j = c; j < cols; ++j) m[r * cols + j] = mulmod(m[r * cols + j], inv, p);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const std::uint32_t f = m[i * cols + c];
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        m[i * cols + j] = (m[i * cols + j] + p - mulmod(f, m[r * cols + j], p)) % p;
      }
    }
    ++r;
  }
  return r;
}

}  // namespace

// --- names ---

std::string to_string(Statement s) {
  switch (s) {
    case Statement::kA1: return "a1";
    case Statement::kA2: return "a2";
    case Statement::kX1: return "x1";
    case Statement::kX1_1: return "x1.1";
    case Statement::kO4_1: return "o4.1";
    case Statement::kZ3: return "z3";
    case Statement::kF1: return "f1";
    case Statement::kF2: return "f2";
    case Statement::kCp1: return "cp1";
    case Statement::kIs1: return "is1";
    case Statement::kO8: return "o8";
  }
  return "?";
}

Statement parse_statement(std::string_view text) {
  for (auto s : {Statement::kA1, Statement::kA2, Statement::kX1, Statement::kX1_1,
                 Statement::kO4_1, Statement::kZ3, Statement::kF1, Statement::kF2,
                 Statement::kCp1, Statement::kIs1, Statement::kO8}) {
    if (to_string(s) == text) return s;
  }
  throw InputError("unknown statement '" + std::string(text) + "'");
}

std::string to_string(Mode m) { return m == Mode::kExhaustive ? "exhaustive" : "sampled"; }

std::string to_string(Reduction r) {
  switch (r) {
    case Reduction::kNone: return "none";
    case Reduction::kFactorPermutation: return "factor-permutation";
    case Reduction::kProjectiveClass: return "projective-class";
  }
  return "?";
}

std::string to_string(Proposal p) {
  switch (p) {
    case Proposal::kUniform: return "uniform";
    case Proposal::kDependent: return "dependent";
    case Proposal::kClustered: return "clustered";
    case Proposal::kCircuit: return "circuit";
  }
  return "?";
}

Mode parse_mode(std::string_view text) {
  if (text == "exhaustive") return Mode::kExhaustive;
  if (text == "sampled") return Mode::kSampled;
  throw InputError("unknown mode '" + std::string(text) + "'");
}

Reduction parse_reduction(std::string_view text) {
  if (text == "none") return Reduction::kNone;
  if (text == "factor-permutation" || text == "perm") return Reduction::kFactorPermutation;
  if (text == "projective-class" || text == "class") return Reduction::kProjectiveClass;
  throw InputError("unknown reduction '" + std::string(text) + "'");
}

// --- shapes ---

std::vector<std::vector<int>> shapes_up_to(std::size_t max_length, int max_dim) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, std::size_t)> rec = [&](int lo, std::size_t len) {
    if (!cur.empty()) out.push_back(cur);
    for (int n = lo; n <= max_dim; ++n) {
      if (len * static_cast<std::size_t>(n + 1) > max_length) break;
      cur.push_back(n);
      rec(n, len * static_cast<std::size_t>(n + 1));
      cur.pop_back();
    }
  };
  rec(1, 1);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

std::vector<std::vector<int>> sub_shapes(const std::vector<int>& dims) {
  std::set<std::vector<int>> found;
  std::vector<int> cur(dims.size(), 0);
  while (true) {
    std::vector<int> s;
    for (int d : cur) {
      if (d > 0) s.push_back(d);
    }
    std::sort(s.begin(), s.end());
    if (!s.empty()) found.insert(s);
    std::size_t i = 0;
    while (i < cur.size() && cur[i] == dims[i]) cur[i++] = 0;
    if (i == cur.size()) break;
    ++cur[i];
  }
  std::vector<std::vector<int>> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

// --- Instance ---

std::size_t small_rank(std::span<const std::uint32_t> rows, std::size_t count,
                       std::size_t length, std::uint32_t p) {
  if (p == 2 && length <= 64) {
    std::uint64_t basis[64] = {};
    std::size_t r = 0;
    for (std::size_t i = 0; i < count; ++i) {
      std::uint64_t v = 0;
      for (std::size_t c = 0; c < length; ++c) v |= std::uint64_t{rows[i * length + c] & 1u} << c;
      while (v != 0) {
        const int hb = 63 - std::countl_zero(v);
        if (basis[hb] == 0) {
          basis[hb] = v;
          ++r;
          break;
        }
        v ^= basis[hb];
      }
    }
    return r;
  }
  thread_local std::vector<std::uint32_t> m;
  m.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(count * length));
  return eliminate(m.data(), count, length, p);
}

Instance::Instance(MultiprojectiveSpace y, std::size_t count)
    : space_(std::move(y)), p_(space_.field().modulus()), count_(count) {
  if (!space_.field().is_finite()) throw InputError("instances need a finite field");
  if (count_ > 64) throw InputError("instances hold at most 64 points");
  for (int d : space_.dims()) {
    offsets_.push_back(stride_);
    stride_ += static_cast<std::size_t>(d) + 1;
  }
  length_ = space_.segre_length();
}

Instance::Instance(MultiprojectiveSpace y, std::size_t count, std::vector<std::uint32_t> coords)
    : Instance(std::move(y), count) {
  if (coords.size() != count_ * stride_) throw InputError("instance coordinate count mismatch");
  coords_ = std::move(coords);
}

Instance Instance::from_table(const PointTable& table, std::span<const std::size_t> indices) {
  Instance inst(table.space(), indices.size());
  inst.coords_.reserve(inst.count_ * inst.stride_);
  inst.segre_.reserve(inst.count_ * inst.length_);
  for (std::size_t idx : indices) {
    for (std::size_t i = 0; i < table.factors(); ++i) {
      const auto c = table.factor_point(i, table.digit(idx, i));
      inst.coords_.insert(inst.coords_.end(), c.begin(), c.end());
    }
    const auto s = table.segre(idx);
    inst.segre_.insert(inst.segre_.end(), s.begin(), s.end());
  }
  return inst;
}

Instance Instance::from_point_set(const PointSet& s) {
  Instance inst(s.space(), s.size());
  for (const auto& pt : s) {
    for (const auto& c : pt.components()) {
      for (const auto& x : c.coords()) inst.coords_.push_back(x.residue_value());
    }
  }
  return inst;
}

void Instance::fill_segre() const {
  segre_.assign(count_ * length_, 0);
  std::vector<std::uint32_t> cur, next;
  for (std::size_t j = 0; j < count_; ++j) {
    cur.assign(1, 1);
    for (std::size_t i = 0; i < factors(); ++i) {
      const auto c = component(j, i);
      next.assign(cur.size() * c.size(), 0);
      for (std::size_t a = 0; a < cur.size(); ++a) {
        for (std::size_t b = 0; b < c.size(); ++b) next[a * c.size() + b] = mulmod(cur[a], c[b], p_);
      }
      cur.swap(next);
    }
    std::copy(cur.begin(), cur.end(), segre_.begin() + static_cast<std::ptrdiff_t>(j * length_));
  }
}

std::span<const std::uint32_t> Instance::component(std::size_t j, std::size_t i) const {
  return {coords_.data() + j * stride_ + offsets_[i],
          static_cast<std::size_t>(space_.dim(i)) + 1};
}

std::span<const std::uint32_t> Instance::segre(std::size_t j) const {
  if (segre_.empty()) fill_segre();
  return {segre_.data() + j * length_, length_};
}

std::size_t Instance::rank_mask(std::uint64_t mask) const {
  thread_local std::vector<std::uint32_t> rows;
  rows.clear();
  std::size_t n = 0;
  for (std::size_t j = 0; j < count_; ++j) {
    if ((mask >> j) & 1) {
      const auto s = segre(j);
      rows.insert(rows.end(), s.begin(), s.end());
      ++n;
    }
  }
  return small_rank(rows, n, length_, p_);
}

std::size_t Instance::rank() const {
  if (!rank_) {
    const std::uint64_t all = count_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count_) - 1;
    rank_ = rank_mask(all);
  }
  return *rank_;
}

bool Instance::equally_dependent() const {
  const std::size_t r = rank();
  if (r == count_) return false;
  const std::uint64_t all = count_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count_) - 1;
  for (std::size_t j = 0; j < count_; ++j) {
    if (rank_mask(all & ~(std::uint64_t{1} << j)) != r) return false;
  }
  return true;
}

const std::vector<int>& Instance::hull_dims() const {
  if (!hull_) {
    std::vector<int> dims;
    std::vector<std::uint32_t> rows;
    for (std::size_t i = 0; i < factors(); ++i) {
      rows.clear();
      for (std::size_t j = 0; j < count_; ++j) {
        const auto c = component(j, i);
        rows.insert(rows.end(), c.begin(), c.end());
      }
      const std::size_t len = static_cast<std::size_t>(space_.dim(i)) + 1;
      dims.push_back(static_cast<int>(small_rank(rows, count_, len, p_)) - 1);
    }
    hull_ = std::move(dims);
  }
  return *hull_;
}

std::vector<int> Instance::hull_shape() const {
  std::vector<int> s;
  for (int d : hull_dims()) {
    if (d > 0) s.push_back(d);
  }
  std::sort(s.begin(), s.end());
  return s;
}

int Instance::width() const {
  return static_cast<int>(std::count_if(hull_dims().begin(), hull_dims().end(),
                                        [](int d) { return d > 0; }));
}

std::size_t Instance::distinct_in_factor(std::size_t i) const {
  std::size_t n = 0;
  for (std::size_t j = 0; j < count_; ++j) {
    bool seen = false;
    for (std::size_t l = 0; l < j && !seen; ++l) {
      const auto a = component(j, i), b = component(l, i);
      seen = std::equal(a.begin(), a.end(), b.begin());
    }
    if (!seen) ++n;
  }
  return n;
}

PointSet Instance::to_point_set() const {
  std::vector<MultiPoint> pts;
  for (std::size_t j = 0; j < count_; ++j) {
    std::vector<ProjPoint> comps;
    for (std::size_t i = 0; i < factors(); ++i) comps.push_back(ProjPoint::from_residues(component(j, i), p_));
    pts.emplace_back(std::move(comps));
  }
  return PointSet(space_, std::move(pts));
}

// --- projective classes ---

std::vector<std::vector<std::vector<std::uint32_t>>> factor_classes(std::uint32_t p, std::size_t z,
                                                                    int n) {
  const std::size_t d = static_cast<std::size_t>(n) + 1;
  std::vector<std::vector<std::vector<std::uint32_t>>> out;
  if (n < 0 || d > z) return out;

  // Count RREF matrices first so the torus sweep can be budgeted.
  std::vector<std::vector<std::size_t>> pivot_sets;
  std::vector<std::size_t> piv(d);
  std::iota(piv.begin(), piv.end(), 0);
  std::uint64_t total = 0;
  while (true) {
    pivot_sets.push_back(piv);
    std::uint64_t free = 0;
    for (std::size_t r = 0; r < d; ++r) free += (z - 1 - piv[r]) - (d - 1 - r);
    std::uint64_t c = 1;
    for (std::uint64_t f = 0; f < free; ++f) c = sat_mul(c, p);
    total = sat_add(total, c);
    std::size_t r = d;
    while (r > 0 && piv[r - 1] == z - d + r - 1) --r;
    if (r == 0) break;
    ++piv[r - 1];
    for (std::size_t q = r; q < d; ++q) piv[q] = piv[q - 1] + 1;
  }
  std::uint64_t torus = 1;
  for (std::size_t j = 1; j < z; ++j) torus = sat_mul(torus, p - 1);
  const std::uint64_t work = sat_mul(total, torus);
  constexpr std::uint64_t kWorkCap = 2'000'000'000;
  if (work > kWorkCap) {
    throw BudgetExceeded("projective class computation too large", work, kWorkCap);
  }

  std::vector<std::uint32_t> m(d * z), scaled(d * z), t(z);
  for (const auto& pv : pivot_sets) {
    std::vector<std::pair<std::size_t, std::size_t>> free_pos;
    std::vector<bool> is_pivot(z, false);
    for (std::size_t c : pv) is_pivot[c] = true;
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = pv[r] + 1; c < z; ++c) {
        if (!is_pivot[c]) free_pos.emplace_back(r, c);
      }
    }
    std::vector<std::uint32_t> vals(free_pos.size(), 0);
    while (true) {
      std::fill(m.begin(), m.end(), 0);
      for (std::size_t r = 0; r < d; ++r) m[r * z + pv[r]] = 1;
      for (std::size_t f = 0; f < free_pos.size(); ++f) {
        m[free_pos[f].first * z + free_pos[f].second] = vals[f];
      }
      bool spanning = true;
      for (std::size_t c = 0; c < z && spanning; ++c) {
        bool nonzero = false;
        for (std::size_t r = 0; r < d; ++r) nonzero |= m[r * z + c] != 0;
        spanning = nonzero;
      }
      bool least = spanning;
      if (least) {
        // Column scaling keeps the pivot columns; renormalizing row r by
        // t[pivot r] gives the RREF of the scaled matrix directly.
        std::fill(t.begin(), t.end(), 1);
        while (least) {
          std::size_t j = 1;
          while (j < z && t[j] == p - 1) t[j++] = 1;
          if (j == z) break;
          ++t[j];
          for (std::size_t r = 0; r < d; ++r) {
            const std::uint32_t inv = mod_inverse(t[pv[r]], p);
            for (std::size_t c = 0; c < z; ++c) {
              scaled[r * z + c] = mulmod(mulmod(m[r * z + c], t[c], p), inv, p);
            }
          }
          if (scaled < m) least = false;
        }
      }
      if (least) {
        std::vector<std::vector<std::uint32_t>> pts(z, std::vector<std::uint32_t>(d));
        for (std::size_t c = 0; c < z; ++c) {
          for (std::size_t r = 0; r < d; ++r) pts[c][r] = m[r * z + c];
          normalize_residues(pts[c], p);
        }
        out.push_back(std::move(pts));
      }
      std::size_t f = 0;
      while (f < vals.size() && vals[f] == p - 1) vals[f++] = 0;
      if (f == vals.size()) break;
      ++vals[f];
    }
  }
  return out;
}

// --- reports ---

void VerificationReport::observe_max(const std::string& key, std::int64_t v) {
  auto [it, inserted] = maxima.emplace(key, v);
  if (!inserted) it->second = std::max(it->second, v);
}

namespace {

void fill_key(Finding& f) {
  if (f.key.empty()) f.key = f.reason + "\n" + point_set_to_json(f.set).dump() + "\n" + f.detail.dump();
}

void keep_smallest(std::vector<Finding>& v) {
  std::sort(v.begin(), v.end(), [](const Finding& a, const Finding& b) { return a.key < b.key; });
  if (v.size() > VerificationReport::kMaxFindings) {
    v.erase(v.begin() + VerificationReport::kMaxFindings, v.end());
  }
}

Json finding_to_json(const Finding& f) {
  Json j = Json::object();
  j["reason"] = f.reason;
  j["set"] = point_set_to_json(f.set);
  if (!f.detail.is_null()) j["detail"] = f.detail;
  return j;
}

}  // namespace

void VerificationReport::add_counterexample(Finding f) {
  fill_key(f);
  ++counterexample_count;
  counterexamples.push_back(std::move(f));
  keep_smallest(counterexamples);
}

void VerificationReport::add_triage(Finding f) {
  fill_key(f);
  ++triage_count;
  triage.push_back(std::move(f));
  keep_smallest(triage);
}

void VerificationReport::merge(const VerificationReport& o) {
  if (statement.empty()) statement = o.statement;
  enumerated += o.enumerated;
  instances += o.instances;
  proposals += o.proposals;
  counterexample_count += o.counterexample_count;
  triage_count += o.triage_count;
  counterexamples.insert(counterexamples.end(), o.counterexamples.begin(), o.counterexamples.end());
  keep_smallest(counterexamples);
  triage.insert(triage.end(), o.triage.begin(), o.triage.end());
  keep_smallest(triage);
  for (const auto& [k, v] : o.tallies) tallies[k] += v;
  for (const auto& [k, v] : o.maxima) observe_max(k, v);
  seconds += o.seconds;
}

Json domain_to_json(const DomainSpec& d) {
  Json j = Json::object();
  j["field"] = field_to_json(d.field);
  j["shapes"] = d.shapes;
  j["sizes"] = d.sizes;
  j["mode"] = to_string(d.mode);
  if (d.mode == Mode::kExhaustive) {
    j["reduction"] = to_string(d.reduction);
  } else {
    j["proposal"] = to_string(d.proposal);
    j["samples"] = d.samples;
  }
  j["seed"] = d.seed;
  return j;
}

Json report_to_json(const VerificationReport& r, bool include_timing) {
  Json j = Json::object();
  j["statement"] = r.statement;
  j["passed"] = r.passed();
  j["enumerated"] = r.enumerated;
  j["instances"] = r.instances;
  j["proposals"] = r.proposals;
  j["counterexample_count"] = r.counterexample_count;
  Json ce = Json::array();
  for (const auto& f : r.counterexamples) ce.push_back(finding_to_json(f));
  j["counterexamples"] = std::move(ce);
  j["triage_count"] = r.triage_count;
  Json tr = Json::array();
  for (const auto& f : r.triage) tr.push_back(finding_to_json(f));
  j["triage"] = std::move(tr);
  Json tallies = Json::object();
  for (const auto& [k, v] : r.tallies) tallies[k] = v;
  j["tallies"] = std::move(tallies);
  Json maxima = Json::object();
  for (const auto& [k, v] : r.maxima) maxima[k] = v;
  j["maxima"] = std::move(maxima);
  if (include_timing) j["seconds"] = r.seconds;
  return j;
}

// --- drivers ---

unsigned worker_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SEGRE_LAB_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(std::min(v, 1024ul));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

VerificationReport run_chunks(std::size_t chunks, unsigned threads,
                              const std::function<VerificationReport(std::size_t)>& chunk) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(worker_count(threads), std::max<std::size_t>(chunks, 1)));
  VerificationReport total;
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) total.merge(chunk(c));
    return total;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<VerificationReport> partial(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t c; !failed && (c = next++) < chunks;) partial[w].merge(chunk(c));
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
        failed = true;
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  for (const auto& p : partial) total.merge(p);
  return total;
}

namespace {

// Point-index permutations induced by permuting equal-dimension factors
// (identity excluded).
std::vector<std::vector<std::uint32_t>> factor_permutation_images(const PointTable& t) {
  const std::size_t k = t.factors();
  const auto& dims = t.space().dims();
  std::vector<std::size_t> sigma(k);
  std::iota(sigma.begin(), sigma.end(), 0);
  // Blocks of equal dimension; permutations act within each block.
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < k; ++i) {
    bool placed = false;
    for (auto& b : blocks) {
      if (dims[b[0]] == dims[i]) {
        b.push_back(i);
        placed = true;
      }
    }
    if (!placed) blocks.push_back({i});
  }
  std::vector<std::vector<std::size_t>> perms{sigma};
  for (const auto& b : blocks) {
    std::vector<std::vector<std::size_t>> grown;
    std::vector<std::size_t> order = b;
    do {
      for (const auto& base : perms) {
        auto s = base;
        for (std::size_t q = 0; q < b.size(); ++q) s[b[q]] = order[q];
        grown.push_back(std::move(s));
      }
    } while (std::next_permutation(order.begin(), order.end()));
    perms = std::move(grown);
  }
  std::vector<std::vector<std::uint32_t>> images;
  std::vector<std::size_t> digits(k);
  for (const auto& s : perms) {
    bool identity = true;
    for (std::size_t i = 0; i < k; ++i) identity &= s[i] == i;
    if (identity) continue;
    std::vector<std::uint32_t> img(t.size());
    for (std::size_t x = 0; x < t.size(); ++x) {
      for (std::size_t i = 0; i < k; ++i) digits[s[i]] = t.digit(x, i);
      img[x] = static_cast<std::uint32_t>(t.compose(digits));
    }
    images.push_back(std::move(img));
  }
  return images;
}

bool is_least_image(const std::vector<std::vector<std::uint32_t>>& images,
                    std::span<const std::size_t> idx, std::vector<std::size_t>& scratch) {
  for (const auto& img : images) {
    scratch.assign(idx.size(), 0);
    for (std::size_t q = 0; q < idx.size(); ++q) scratch[q] = img[idx[q]];
    std::sort(scratch.begin(), scratch.end());
    if (std::lexicographical_compare(scratch.begin(), scratch.end(), idx.begin(), idx.end())) {
      return false;
    }
  }
  return true;
}

struct Pair {
  MultiprojectiveSpace space;
  std::size_t size;
};

std::vector<Pair> domain_pairs(const DomainSpec& d) {
  if (!d.field.is_finite()) throw InputError("verification domains need a finite field");
  if (d.shapes.empty() || d.sizes.empty()) throw InputError("domain needs shapes and sizes");
  std::vector<Pair> out;
  for (const auto& sh : d.shapes) {
    for (std::size_t s : d.sizes) {
      if (s == 0 || s > 64) throw InputError("set sizes must lie in [1, 64]");
      out.push_back({MultiprojectiveSpace(d.field, sh), s});
    }
  }
  return out;
}

std::uint64_t class_tuple_count(const std::vector<int>& dims, const std::vector<std::size_t>& classes) {
  std::uint64_t total = 1;
  std::size_t i = 0;
  while (i < dims.size()) {
    std::size_t g = 1;
    while (i + g < dims.size() && dims[i + g] == dims[i]) ++g;
    const std::size_t c = classes[i];
    total = sat_mul(total, c == 0 ? 0 : binomial(c + g - 1, g));
    i += g;
  }
  return total;
}

std::vector<int> sorted_dims(const MultiprojectiveSpace& y) {
  auto d = y.dims();
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

std::vector<std::size_t> canonical_under_factor_permutations(const PointTable& table,
                                                             std::span<const std::size_t> indices) {
  std::vector<std::size_t> best(indices.begin(), indices.end());
  std::sort(best.begin(), best.end());
  std::vector<std::size_t> cur;
  for (const auto& img : factor_permutation_images(table)) {
    cur.clear();
    for (std::size_t x : indices) cur.push_back(img[x]);
    std::sort(cur.begin(), cur.end());
    if (cur < best) best = cur;
  }
  return best;
}

std::uint64_t exhaustive_count(const DomainSpec& domain) {
  std::uint64_t total = 0;
  for (const auto& pr : domain_pairs(domain)) {
    if (domain.reduction == Reduction::kProjectiveClass) {
      const auto dims = sorted_dims(pr.space);
      std::vector<std::size_t> classes;
      for (int n : dims) {
        if (n < 1) throw InputError("projective-class reduction needs every n_i >= 1");
        classes.push_back(factor_classes(domain.field.modulus(), pr.size, n).size());
      }
      total = sat_add(total, class_tuple_count(dims, classes));
    } else {
      total = sat_add(total, binomial(pr.space.point_count(), pr.size));
    }
  }
  return total;
}

namespace {

VerificationReport literal_pair(const Pair& pr, bool reduce, unsigned threads, const Visitor& visit,
                                bool dependent_only) {
  const PointTable table(pr.space);
  const std::size_t n = table.size(), s = pr.size;
  if (s > n) return {};
  const auto images = reduce ? factor_permutation_images(table) : std::vector<std::vector<std::uint32_t>>{};
  return run_chunks(n - s + 1, threads, [&](std::size_t first) {
    VerificationReport rep;
    PackedSpan span(table.modulus(), table.segre_length());
    std::vector<std::size_t> idx(s), scratch;
    std::vector<bool> inserted(s);
    idx[0] = first;
    inserted[0] = span.insert(table.segre(first));
    // Iterative DFS over the remaining positions.
    std::size_t depth = 1;
    std::vector<std::size_t> next(s + 1, 0);
    next[1] = first + 1;
    auto leaf = [&] {
      ++rep.enumerated;
      if (dependent_only && span.rank() == s) return;
      if (reduce && !is_least_image(images, idx, scratch)) return;
      const Instance inst = Instance::from_table(table, idx);
      if (visit(inst, rep)) ++rep.instances;
    };
    if (s == 1) {
      leaf();
      return rep;
    }
    while (depth > 0) {
      if (depth == s) {
        leaf();
        --depth;
        if (inserted[depth]) span.pop();
        continue;
      }
      const std::size_t i = next[depth];
      if (i + (s - depth) > n) {
        // Exhausted this position; backtrack.
        --depth;
        if (depth == 0) break;
        if (inserted[depth]) span.pop();
        continue;
      }
      idx[depth] = i;
      next[depth] = i + 1;
      inserted[depth] = span.insert(table.segre(i));
      ++depth;
      if (depth < s) next[depth] = i + 1;
    }
    return rep;
  });
}

VerificationReport class_pair(const Pair& pr, unsigned threads, const Visitor& visit) {
  const auto dims = sorted_dims(pr.space);
  const std::uint32_t p = pr.space.field().modulus();
  const std::size_t z = pr.size, k = dims.size();
  std::map<int, std::vector<std::vector<std::vector<std::uint32_t>>>> by_dim;
  for (int n : dims) {
    if (n < 1) throw InputError("projective-class reduction needs every n_i >= 1");
    if (!by_dim.count(n)) by_dim[n] = factor_classes(p, z, n);
    if (by_dim[n].empty()) return {};
  }
  const MultiprojectiveSpace y(pr.space.field(), dims);
  std::vector<const std::vector<std::vector<std::vector<std::uint32_t>>>*> cls(k);
  for (std::size_t i = 0; i < k; ++i) cls[i] = &by_dim[dims[i]];
  return run_chunks(cls[0]->size(), threads, [&](std::size_t first) {
    VerificationReport rep;
    std::vector<std::size_t> t(k, 0);
    t[0] = first;
    auto lower = [&](std::size_t i) { return (i > 0 && dims[i] == dims[i - 1]) ? t[i - 1] : 0; };
    for (std::size_t i = 1; i < k; ++i) t[i] = lower(i);
    std::vector<std::uint32_t> coords;
    while (true) {
      ++rep.enumerated;
      coords.clear();
      for (std::size_t j = 0; j < z; ++j) {
        for (std::size_t i = 0; i < k; ++i) {
          const auto& c = (*cls[i])[t[i]][j];
          coords.insert(coords.end(), c.begin(), c.end());
        }
      }
      const std::size_t stride = coords.size() / z;
      bool distinct = true;
      for (std::size_t a = 0; a < z && distinct; ++a) {
        for (std::size_t b = a + 1; b < z && distinct; ++b) {
          distinct = !std::equal(coords.begin() + a * stride, coords.begin() + (a + 1) * stride,
                                 coords.begin() + b * stride);
        }
      }
      if (distinct) {
        const Instance inst(y, z, coords);
        if (visit(inst, rep)) ++rep.instances;
      }
      // Odometer over factors 2..k, keeping runs of equal dims nondecreasing.
      bool advanced = false;
      for (std::size_t i = k; i > 1 && !advanced;) {
        --i;
        if (t[i] + 1 < cls[i]->size()) {
          ++t[i];
          for (std::size_t q = i + 1; q < k; ++q) t[q] = lower(q);
          advanced = true;
        }
      }
      if (!advanced) break;
    }
    return rep;
  });
}

}  // namespace

namespace {

// A random point x outside pts with nu(x) = sum c_j nu(pts_j), every c_j
// nonzero, if there is one. Tries every coefficient vector (up to scaling)
// when there are at most 64 of them, otherwise 64 random ones.
std::optional<std::size_t> full_support_decode(const PointTable& table,
                                               const std::vector<std::size_t>& pts, Rng& rng) {
  const std::uint32_t p = table.modulus();
  const std::size_t t = pts.size();
  std::uint64_t combos = 1;
  for (std::size_t q = 1; q < t; ++q) combos = sat_mul(combos, p - 1);
  std::vector<std::size_t> found;
  const std::size_t len = table.segre_length();
  std::vector<std::uint32_t> c(t, 1), v(len, 0);
  auto add = [&](std::size_t q, std::uint32_t times) {
    const auto sv = table.segre(pts[q]);
    for (std::uint32_t r = 0; r < times; ++r) {
      for (std::size_t l = 0; l < len; ++l) {
        const std::uint32_t x = v[l] + sv[l];
        v[l] = x >= p ? x - p : x;
      }
    }
  };
  auto try_decode = [&] {
    if (auto d = table.decode(v)) {
      if (std::find(pts.begin(), pts.end(), *d) == pts.end()) found.push_back(*d);
    }
  };
  if (combos <= 64) {
    // Odometer over c_2..c_t in [1, p-1] with c_1 = 1, updating v by
    // additions only: an increment adds nu_q, a wrap from p-1 to 1 adds
    // 2 nu_q.
    for (std::size_t q = 0; q < t; ++q) add(q, 1);
    while (true) {
      try_decode();
      std::size_t q = 1;
      while (q < t && c[q] == p - 1) {
        c[q] = 1;
        add(q, 2 % p);
        ++q;
      }
      if (q >= t) break;
      ++c[q];
      add(q, 1);
    }
  } else {
    for (int it = 0; it < 64; ++it) {
      std::fill(v.begin(), v.end(), 0);
      for (std::size_t q = 0; q < t; ++q) {
        const std::uint32_t cq = q == 0 ? 1 : 1 + static_cast<std::uint32_t>(draw_below(rng, p - 1));
        const auto sv = table.segre(pts[q]);
        for (std::size_t l = 0; l < len; ++l) v[l] = (v[l] + mulmod(cq, sv[l], p)) % p;
      }
      try_decode();
    }
  }
  if (found.empty()) return std::nullopt;
  return found[draw_below(rng, found.size())];
}

// Draws one candidate index set for sampled mode; empty on failure.
std::vector<std::size_t> propose(const PointTable& table, std::size_t s, Proposal kind, Rng& rng) {
  const std::size_t n = table.size(), k = table.factors();
  std::vector<std::size_t> pts;
  if (s > n) return pts;
  auto has = [&](std::size_t x) { return std::find(pts.begin(), pts.end(), x) != pts.end(); };
  std::vector<std::size_t> digits(k);
  switch (kind) {
    case Proposal::kUniform:
      while (pts.size() < s) {
        const std::size_t x = draw_below(rng, n);
        if (!has(x)) pts.push_back(x);
      }
      break;
    case Proposal::kClustered: {
      pts.push_back(draw_below(rng, n));
      for (int guard = 0; pts.size() < s && guard < 1000; ++guard) {
        const std::size_t base = pts[draw_below(rng, pts.size())];
        for (std::size_t i = 0; i < k; ++i) digits[i] = table.digit(base, i);
        const std::size_t changes = 1 + draw_below(rng, 2);
        for (std::size_t c = 0; c < changes; ++c) {
          const std::size_t i = draw_below(rng, k);
          if (table.factor_size(i) < 2) continue;
          const std::size_t old = digits[i];
          do {
            digits[i] = draw_below(rng, table.factor_size(i));
          } while (digits[i] == old);
        }
        const std::size_t x = table.compose(digits);
        if (!has(x)) pts.push_back(x);
      }
      if (pts.size() < s) pts.clear();
      break;
    }
    case Proposal::kDependent:
    case Proposal::kCircuit: {
      // Each factor draws from a palette of 1, 2 or 3 distinct points or from
      // the whole factor; small palettes make dependent sets common.
      thread_local std::vector<std::vector<std::size_t>> palette;
      palette.resize(k);
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t size = table.factor_size(i);
        const std::size_t r = 1 + draw_below(rng, 4);
        palette[i].clear();
        if (r == 4 || r >= size) continue;  // empty palette: whole factor
        while (palette[i].size() < r) {
          const std::size_t v = draw_below(rng, size);
          if (std::find(palette[i].begin(), palette[i].end(), v) == palette[i].end()) {
            palette[i].push_back(v);
          }
        }
      }
      auto random_point = [&] {
        for (std::size_t i = 0; i < k; ++i) {
          digits[i] = palette[i].empty() ? draw_below(rng, table.factor_size(i))
                                         : palette[i][draw_below(rng, palette[i].size())];
        }
        return table.compose(digits);
      };
      // style 0: points added one at a time, each either random or decoded
      // from a random subset; style 1: s - 1 random points closed by one
      // full-support decode (a circuit when they are independent); style 2:
      // two chained full-support decodes (equally dependent).
      std::size_t style = kind == Proposal::kCircuit ? 1 : draw_below(rng, 3);
      if (s < 3) style = 0;
      if (style == 0) {
        for (int guard = 0; pts.size() < s && guard < 1000; ++guard) {
          std::size_t x = n;
          if (pts.size() >= 2 && draw_below(rng, 2) == 0) {
            std::vector<std::size_t> sub;
            while (sub.size() < 2) {
              sub.clear();
              for (std::size_t q : pts) {
                if (draw_below(rng, 2) == 0) sub.push_back(q);
              }
            }
            if (auto d = full_support_decode(table, sub, rng)) x = *d;
          }
          if (x == n) x = random_point();
          if (!has(x)) pts.push_back(x);
        }
      } else {
        for (int guard = 0; pts.size() + style < s && guard < 1000; ++guard) {
          const std::size_t x = random_point();
          if (!has(x)) pts.push_back(x);
        }
        for (std::size_t r = 0; r < style && pts.size() + style - r == s; ++r) {
          const auto x = full_support_decode(table, pts, rng);
          if (!x || has(*x)) break;
          pts.push_back(*x);
        }
      }
      if (pts.size() < s) pts.clear();
      break;
    }
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

VerificationReport sampled_pair(const Pair& pr, std::size_t pair_index, const DomainSpec& d,
                                unsigned threads, const Visitor& visit, bool dependent_only) {
  constexpr std::uint64_t kChunk = 256;
  constexpr std::uint64_t kAttempts = 100'000;
  const PointTable table(pr.space);
  const std::uint64_t chunks = (d.samples + kChunk - 1) / kChunk;
  return run_chunks(chunks, threads, [&](std::size_t c) {
    VerificationReport rep;
    const std::uint64_t end = std::min(d.samples, (c + 1) * kChunk);
    for (std::uint64_t i = c * kChunk; i < end; ++i) {
      Rng rng = make_rng(d.seed, (std::uint64_t{pair_index} << 40) | i);
      bool done = false;
      for (std::uint64_t a = 0; a < kAttempts && !done; ++a) {
        ++rep.proposals;
        const auto idx = propose(table, pr.size, d.proposal, rng);
        if (idx.size() != pr.size) continue;
        ++rep.enumerated;
        if (dependent_only) {
          thread_local std::vector<std::uint32_t> rows;
          rows.clear();
          for (std::size_t x : idx) rows.insert(rows.end(), table.segre(x).begin(), table.segre(x).end());
          if (small_rank(rows, idx.size(), table.segre_length(), table.modulus()) == idx.size()) continue;
        }
        done = visit(Instance::from_table(table, idx), rep);
      }
      if (!done) {
        throw BudgetExceeded("sampled mode found no applicable set for sample " + std::to_string(i) +
                                 " in " + pr.space.shape_string(),
                             kAttempts, kAttempts);
      }
      ++rep.instances;
    }
    return rep;
  });
}

}  // namespace

VerificationReport enumerate_domain(const DomainSpec& domain, std::uint64_t budget, unsigned threads,
                                    const Visitor& visit, bool dependent_only) {
  const auto pairs = domain_pairs(domain);
  VerificationReport total;
  if (domain.mode == Mode::kExhaustive) {
    const std::uint64_t count = exhaustive_count(domain);
    if (count > budget) {
      throw BudgetExceeded("exhaustive enumeration needs " + std::to_string(count) +
                               " instances, above the budget of " + std::to_string(budget),
                           count, budget);
    }
    for (const auto& pr : pairs) {
      if (domain.reduction == Reduction::kProjectiveClass) {
        total.merge(class_pair(pr, threads, visit));
      } else {
        total.merge(literal_pair(pr, domain.reduction == Reduction::kFactorPermutation, threads, visit,
                                 dependent_only));
      }
    }
  } else {
    for (std::size_t c = 0; c < pairs.size(); ++c) {
      total.merge(sampled_pair(pairs[c], c, domain, threads, visit, dependent_only));
    }
  }
  return total;
}

}  // namespace segre
