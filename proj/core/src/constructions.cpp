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


#include "segre/constructions.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "segre/dependence.hpp"
#include "segre/error.hpp"
#include "segre/linalg.hpp"

namespace segre {
namespace {

constexpr int kMaxAttempts = 100'000;

std::size_t point_rank(const std::vector<ProjPoint>& pts) {
  if (pts.empty()) return 0;
  std::vector<Vector> rows;
  for (const auto& x : pts) rows.push_back(x.coords());
  return span_dimension(rows);
}

bool in_point_span(const ProjPoint& x, const std::vector<ProjPoint>& basis) {
  std::vector<ProjPoint> all = basis;
  all.push_back(x);
  return point_rank(all) == point_rank(basis);
}

bool all_distinct(std::vector<ProjPoint> pts) {
  std::sort(pts.begin(), pts.end());
  return std::adjacent_find(pts.begin(), pts.end()) == pts.end();
}

bool distinct_collinear(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c) {
  return all_distinct({a, b, c}) && point_rank({a, b, c}) == 2;
}

bool contains(const std::vector<ProjPoint>& pts, const ProjPoint& x) {
  return std::find(pts.begin(), pts.end(), x) != pts.end();
}

ProjPoint combine(const Scalar& la, const ProjPoint& a, const Scalar& mu, const ProjPoint& b) {
  Vector v(a.size(), Scalar::zero(a[0].field()));
  for (std::size_t i = 0; i < a.size(); ++i) v[i] = la * a[i] + mu * b[i];
  return ProjPoint::normalized(std::move(v));
}

std::string field_points(const FieldSpec& f, int n) {
  return "P^" + std::to_string(n) + "(" + f.name() + ") has " +
         std::to_string(projective_point_count(f.modulus(), n)) + " points";
}

// `count` distinct points on the line <a, b>, avoiding `exclude`.
std::vector<ProjPoint> points_on_line(Rng& rng, const ProjPoint& a, const ProjPoint& b,
                                      std::size_t count,
                                      const std::vector<ProjPoint>& exclude,
                                      const std::string& what) {
  const FieldSpec f = a[0].field();
  std::vector<ProjPoint> out;
  if (f.is_finite()) {
    std::vector<ProjPoint> pool;
    for (const auto& lm : projective_points(f.modulus(), 1)) {
      const ProjPoint x = combine(Scalar::residue(lm[0], f.modulus()), a,
                                  Scalar::residue(lm[1], f.modulus()), b);
      if (!contains(exclude, x)) pool.push_back(x);
    }
    if (pool.size() < count) {
      throw FieldTooSmall(what + " needs " + std::to_string(count) +
                          " suitable points on a line, but only " +
                          std::to_string(pool.size()) + " are available over " + f.name());
    }
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t j = i + draw_below(rng, pool.size() - i);
      std::swap(pool[i], pool[j]);
      out.push_back(pool[i]);
    }
    return out;
  }
  for (int attempt = 0; out.size() < count; ++attempt) {
    if (attempt > kMaxAttempts) throw SelfCheckFailed("rational line sampling did not converge");
    const Scalar la = random_scalar(rng, f), mu = random_scalar(rng, f);
    if (la.is_zero() && mu.is_zero()) continue;
    const ProjPoint x = combine(la, a, mu, b);
    if (!contains(exclude, x) && !contains(out, x)) out.push_back(x);
  }
  return out;
}

// A point of P^n outside span(basis) and outside `exclude`.
ProjPoint point_off(Rng& rng, const FieldSpec& f, int n, const std::vector<ProjPoint>& basis,
                    const std::vector<ProjPoint>& exclude = {}) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const ProjPoint x = random_factor_point(rng, f, n);
    if (!contains(exclude, x) && (basis.empty() || !in_point_span(x, basis))) return x;
  }
  throw FieldTooSmall("no point of P^" + std::to_string(n) + " over " + f.name() +
                      " avoids the required subspace");
}

std::vector<ProjPoint> distinct_points(Rng& rng, const FieldSpec& f, int n, std::size_t count,
                                       const std::string& what) {
  if (f.is_finite() && projective_point_count(f.modulus(), n) < count) {
    throw FieldTooSmall(what + " needs " + std::to_string(count) + " distinct points, but " +
                        field_points(f, n));
  }
  std::vector<ProjPoint> out;
  while (out.size() < count) out.push_back(point_off(rng, f, n, {}, out));
  return out;
}

// Random line of P^n as two spanning points, optionally avoiding a span.
std::array<ProjPoint, 2> random_line(Rng& rng, const FieldSpec& f, int n) {
  const ProjPoint a = random_factor_point(rng, f, n);
  return {a, point_off(rng, f, n, {a})};
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw InputError(msg);
}

void self_check(bool ok, const std::string& family, const std::string& msg) {
  if (!ok) throw SelfCheckFailed("Example " + family + " self-check failed: " + msg);
}

std::vector<int> dims_of(const MultiPoint& p) {
  std::vector<int> d;
  for (const auto& c : p.components()) d.push_back(c.dim());
  return d;
}

FieldSpec field_of(const MultiPoint& p) { return p[0][0].field(); }

const MultiPoint& label(const std::map<std::string, MultiPoint>& labels, const char* name) {
  const auto it = labels.find(name);
  if (it == labels.end()) throw InputError(std::string("missing label ") + name);
  return it->second;
}

// Single factor in which the three points differ, with three distinct values.
std::optional<std::size_t> varying_factor(const MultiPoint& a, const MultiPoint& b,
                                          const MultiPoint& c) {
  std::optional<std::size_t> found;
  for (std::size_t h = 0; h < a.factors(); ++h) {
    if (a[h] == b[h] && b[h] == c[h]) continue;
    if (found) return std::nullopt;
    if (!all_distinct({a[h], b[h], c[h]})) return std::nullopt;
    found = h;
  }
  return found;
}

}  // namespace

// --- Example k2 ---

ExampleSet build_example_k2(const K2Params& prm, bool check) {
  const auto dims = dims_of(prm.o);
  const std::size_t k = dims.size();
  require(k >= 2, "Example k2 needs k >= 2");
  require(dims_of(prm.p) == dims, "o and p must live in the same space");
  require(dims[0] == 1 || dims[0] == 2, "Example k2 needs n1 in {1, 2}");
  require(dims[1] == 1 || dims[1] == 2, "Example k2 needs n2 in {1, 2}");
  for (std::size_t h = 2; h < k; ++h) require(dims[h] == 1, "factors 3..k must be P^1");
  const MultiprojectiveSpace y(field_of(prm.o), dims);
  validate_point(prm.o, y);
  validate_point(prm.p, y);
  for (std::size_t h = 0; h < k; ++h) require(prm.o[h] != prm.p[h], "need p_i != o_i for all i");
  const MultiPoint u = prm.o.with_component(0, prm.u1);
  const MultiPoint v = prm.o.with_component(0, prm.v1);
  const MultiPoint w = prm.p.with_component(1, prm.w2);
  const MultiPoint z = prm.p.with_component(1, prm.z2);
  std::map<std::string, MultiPoint> labels{{"o", prm.o}, {"p", prm.p}, {"u", u},
                                           {"v", v},     {"w", w},     {"z", z}};
  for (const auto& [name, x] : labels) validate_point(x, y);
  if (!satisfies_k2(PointSet(y, {prm.o, prm.p, u, v, w, z}), labels, 0, 1)) {
    throw InputError("Example k2 side conditions violated");
  }
  const PointSet s(y, {prm.o, prm.p, u, v, w, z});
  if (check) {
    self_check(concision_hull(s).concise, "k2", "S is not concise");
    const std::size_t e = defect(s);
    self_check(e == 2, "k2", "e(S) = " + std::to_string(e) + ", expected 2");
    for (std::size_t i = 0; i < 6; ++i) {
      const std::size_t e5 = defect(s.without(i));
      self_check(e5 == 1, "k2", "a 5-subset has e = " + std::to_string(e5) + ", expected 1");
    }
  }
  return {"k2", s, labels};
}

ExampleSet gen_example_k2(int k, int n1, int n2, const FieldSpec& f, std::uint64_t seed,
                          bool check) {
  require(k >= 2, "Example k2 needs k >= 2");
  require((n1 == 1 || n1 == 2) && (n2 == 1 || n2 == 2), "Example k2 needs n1, n2 in {1, 2}");
  for (int n : {n1, n2}) {
    if (n == 1 && f.is_finite() && projective_point_count(f.modulus(), 1) < 4) {
      throw FieldTooSmall("Example k2 with n = 1 needs #{u1,v1,o1,p1} = 4 distinct points of P^1, but " +
                          field_points(f, 1));
    }
  }
  Rng rng = make_rng(seed, 0x6b32);
  // Factor "a" carries three points of one group and the other group's
  // constant point; returns {three collinear..., outsider}.
  auto factor = [&](int n) {
    std::vector<ProjPoint> out;
    if (n == 1) {
      out = distinct_points(rng, f, 1, 4, "Example k2");
    } else {
      const auto line = random_line(rng, f, 2);
      out = points_on_line(rng, line[0], line[1], 3, {}, "Example k2");
      out.push_back(point_off(rng, f, 2, {line[0], line[1]}));
    }
    return out;
  };
  const auto f1 = factor(n1);  // u1, v1, o1 | p1
  const auto f2 = factor(n2);  // w2, z2, p2 | o2
  std::vector<ProjPoint> o{f1[2], f2[3]}, p{f1[3], f2[2]};
  for (int h = 2; h < k; ++h) {
    const auto pair = distinct_points(rng, f, 1, 2, "Example k2");
    o.push_back(pair[0]);
    p.push_back(pair[1]);
  }
  return build_example_k2({MultiPoint(o), MultiPoint(p), f1[0], f1[1], f2[0], f2[1]}, check);
}

// --- Example k3 ---

ExampleSet build_example_k3(const K3Params& prm, bool check) {
  const auto dims = dims_of(prm.o);
  const std::size_t k = dims.size();
  require(dims_of(prm.p) == dims, "o and p must live in the same space");
  const int n = dims[0];
  require(n >= 1 && n <= 3, "Example k3 needs n in {1, 2, 3}");
  for (std::size_t h = 1; h < k; ++h) require(dims[h] == 1, "factors 2..k must be P^1");
  const MultiprojectiveSpace y(field_of(prm.o), dims);
  const MultiPoint u = prm.o.with_component(0, prm.u1);
  const MultiPoint v = prm.o.with_component(0, prm.v1);
  const MultiPoint w = prm.p.with_component(0, prm.w1);
  const MultiPoint z = prm.p.with_component(0, prm.z1);
  std::map<std::string, MultiPoint> labels{{"o", prm.o}, {"p", prm.p}, {"u", u},
                                           {"v", v},     {"w", w},     {"z", z}};
  for (const auto& [name, x] : labels) validate_point(x, y);
  const PointSet s(y, {prm.o, prm.p, u, v, w, z});
  require(s.size() == 6, "Example k3 needs six distinct points");
  if (!satisfies_k3(s, labels, 0)) {
    // Name the most specific violated condition.
    const auto& o1 = prm.o[0];
    const auto& p1 = prm.p[0];
    if (n == 3 && point_rank({o1, prm.u1, p1, prm.w1}) < 4) {
      throw InputError("Example k3 with n = 3 needs L and D disjoint");
    }
    if (n == 2 && point_rank({o1, prm.u1, p1, prm.w1}) < 3) {
      throw InputError("Example k3 with n = 2 needs L != D");
    }
    throw InputError("Example k3 side conditions violated");
  }
  if (check) {
    self_check(concision_hull(s).concise, "k3", "S is not concise");
    const std::size_t want = k > 1 ? 2 : static_cast<std::size_t>(5 - n);
    const std::size_t e = defect(s);
    self_check(e == want, "k3",
               "e(S) = " + std::to_string(e) + ", expected " + std::to_string(want));
    self_check(defect(PointSet(y, {prm.o, u, v})) == 1 && defect(PointSet(y, {prm.p, w, z})) == 1,
               "k3", "the triples A, B are not both dependent");
    self_check(is_equally_dependent(s), "k3", "S is not equally dependent");
  }
  return {"k3", s, labels};
}

ExampleSet gen_example_k3(int k, int n, const FieldSpec& f, std::uint64_t seed, bool check) {
  require(k >= 1, "Example k3 needs k >= 1");
  require(n >= 1 && n <= 3, "Example k3 needs n in {1, 2, 3}");
  Rng rng = make_rng(seed, 0x6b33);
  std::vector<ProjPoint> a, b;  // {o1, u1, v1} on L, {p1, w1, z1} on D
  if (n == 1) {
    if (f.is_finite() && projective_point_count(f.modulus(), 1) < 6) {
      throw FieldTooSmall("Example k3 with n = 1 needs #{o1,p1,u1,v1,w1,z1} = 6, but " +
                          field_points(f, 1));
    }
    const auto six = distinct_points(rng, f, 1, 6, "Example k3");
    a.assign(six.begin(), six.begin() + 3);
    b.assign(six.begin() + 3, six.end());
  } else if (n == 2) {
    if (f.is_finite() && f.modulus() < 3) {
      throw FieldTooSmall("Example k3 with n = 2 needs 3 points on each line off L cap D, but "
                          "lines of P^2(GF(2)) have 3 points");
    }
    const auto l = random_line(rng, f, 2);
    ProjPoint d0 = point_off(rng, f, 2, {l[0], l[1]});
    const ProjPoint d1 = point_off(rng, f, 2, {d0}, {l[0], l[1]});
    // x = L cap D.
    const auto x = subspace_intersection({l[0].coords(), l[1].coords()},
                                         {d0.coords(), d1.coords()});
    const std::vector<ProjPoint> meet{ProjPoint::normalized(x.at(0))};
    a = points_on_line(rng, l[0], l[1], 3, meet, "Example k3");
    b = points_on_line(rng, d0, d1, 3, meet, "Example k3");
  } else {
    const auto l = random_line(rng, f, 3);
    const ProjPoint d0 = point_off(rng, f, 3, {l[0], l[1]});
    const ProjPoint d1 = point_off(rng, f, 3, {l[0], l[1], d0});
    a = points_on_line(rng, l[0], l[1], 3, {}, "Example k3");
    b = points_on_line(rng, d0, d1, 3, {}, "Example k3");
  }
  std::vector<ProjPoint> o{a[0]}, p{b[0]};
  for (int h = 1; h < k; ++h) {
    const auto pair = distinct_points(rng, f, 1, 2, "Example k3");
    o.push_back(pair[0]);
    p.push_back(pair[1]);
  }
  return build_example_k3({MultiPoint(o), MultiPoint(p), a[1], a[2], b[1], b[2]}, check);
}

// --- Example k4 ---

ExampleSet build_example_k4(const K4Params& prm, bool check) {
  require(prm.on_l.size() == 3, "Example k4 needs exactly 3 points on L");
  const std::size_t s_size = prm.on_l.size() + prm.on_d.size();
  require(s_size >= 6, "Example k4 needs s >= 6");
  require(!prm.o_tail.empty() && prm.o_tail.size() == prm.p_tail.size(),
          "Example k4 needs k > 1 and matching tails");
  const int n = prm.on_l[0].dim();
  require(n >= 1 && n <= 3, "Example k4 needs n in {1, 2, 3}");
  for (const auto& x : prm.on_l) require(x.dim() == n, "first-factor points must lie in P^n");
  for (const auto& x : prm.on_d) require(x.dim() == n, "first-factor points must lie in P^n");
  for (std::size_t h = 0; h < prm.o_tail.size(); ++h) {
    require(prm.o_tail[h].dim() == 1 && prm.p_tail[h].dim() == 1, "factors 2..k must be P^1");
    require(prm.o_tail[h] != prm.p_tail[h], "need o_i != p_i for i >= 2");
  }
  require(distinct_collinear(prm.on_l[0], prm.on_l[1], prm.on_l[2]),
          "the L points must be 3 distinct collinear points");
  require(all_distinct(prm.on_d) && point_rank(prm.on_d) == 2,
          "the D points must be distinct and collinear");
  const std::size_t joint = point_rank({prm.on_l[0], prm.on_l[1], prm.on_d[0], prm.on_d[1]});
  if (n == 2) require(joint == 3, "Example k4 with n = 2 needs L != D");
  if (n == 3) require(joint == 4, "Example k4 with n = 3 needs L and D disjoint");

  std::vector<int> dims{n};
  dims.insert(dims.end(), prm.o_tail.size(), 1);
  const MultiprojectiveSpace y(prm.on_l[0][0].field(), dims);
  std::map<std::string, MultiPoint> labels;
  std::vector<MultiPoint> pts;
  auto add = [&](const std::string& name, const ProjPoint& first,
                 const std::vector<ProjPoint>& tail) {
    std::vector<ProjPoint> c{first};
    c.insert(c.end(), tail.begin(), tail.end());
    MultiPoint x(std::move(c));
    validate_point(x, y);
    labels.emplace(name, x);
    pts.push_back(x);
  };
  for (std::size_t i = 0; i < prm.on_l.size(); ++i) add("a" + std::to_string(i + 1), prm.on_l[i], prm.o_tail);
  for (std::size_t i = 0; i < prm.on_d.size(); ++i) add("b" + std::to_string(i + 1), prm.on_d[i], prm.p_tail);
  const PointSet s(y, pts);
  if (check) {
    self_check(concision_hull(s).concise, "k4", "S is not concise");
    const std::size_t e = defect(s);
    self_check(e + 4 == s_size, "k4",
               "e(S) = " + std::to_string(e) + ", expected " + std::to_string(s_size - 4));
    // Strict drop on every proper subset follows from the maximal ones by
    // monotonicity of the defect.
    self_check(is_equally_dependent(s), "k4", "some proper subset keeps the defect");
  }
  return {"k4", s, labels};
}

ExampleSet gen_example_k4(int k, int n, int s, const FieldSpec& f, std::uint64_t seed,
                          bool check) {
  require(k > 1, "Example k4 needs k > 1");
  require(n >= 1 && n <= 3, "Example k4 needs n in {1, 2, 3}");
  require(s >= 6, "Example k4 needs s >= 6");
  const auto d_count = static_cast<std::size_t>(s - 3);
  if (f.is_finite() && projective_point_count(f.modulus(), 1) < d_count) {
    throw FieldTooSmall("Example k4 with s = " + std::to_string(s) + " needs " +
                        std::to_string(d_count) + " distinct points on a line, but " +
                        field_points(f, 1));
  }
  Rng rng = make_rng(seed, 0x6b34);
  K4Params prm;
  if (n == 1) {
    const ProjPoint e0 = ProjPoint::from_ints(f, {1, 0}), e1 = ProjPoint::from_ints(f, {0, 1});
    prm.on_l = points_on_line(rng, e0, e1, 3, {}, "Example k4");
    prm.on_d = points_on_line(rng, e0, e1, d_count, {}, "Example k4");
  } else {
    const auto l = random_line(rng, f, n);
    const ProjPoint d0 = point_off(rng, f, n, {l[0], l[1]});
    const ProjPoint d1 = n == 2 ? point_off(rng, f, n, {d0}, {l[0], l[1]})
                                : point_off(rng, f, n, {l[0], l[1], d0});
    prm.on_l = points_on_line(rng, l[0], l[1], 3, {}, "Example k4");
    prm.on_d = points_on_line(rng, d0, d1, d_count, {}, "Example k4");
  }
  for (int h = 1; h < k; ++h) {
    const auto pair = distinct_points(rng, f, 1, 2, "Example k4");
    prm.o_tail.push_back(pair[0]);
    prm.p_tail.push_back(pair[1]);
  }
  return build_example_k4(prm, check);
}

// --- Example z1 ---

ExampleSet build_example_z1(const Z1Params& prm, bool check) {
  require(prm.e.size() == 3 && prm.g.size() == 2, "Example z1 needs #E = 3 and #G = 2");
  for (const auto& x : prm.e) require(x.dim() == 2, "Example z1 lives in P^2");
  for (const auto& x : prm.g) require(x.dim() == 2, "Example z1 lives in P^2");
  require(distinct_collinear(prm.e[0], prm.e[1], prm.e[2]), "E must be 3 distinct collinear points");
  const std::vector<ProjPoint> line{prm.e[0], prm.e[1]};
  require(prm.g[0] != prm.g[1], "G must have two points");
  for (const auto& x : prm.g) require(!in_point_span(x, line), "G must avoid the line L");
  const auto meet = subspace_intersection({prm.e[0].coords(), prm.e[1].coords()},
                                          {prm.g[0].coords(), prm.g[1].coords()});
  require(!contains(prm.e, ProjPoint::normalized(meet.at(0))),
          "the line through G must meet L outside E");
  const MultiprojectiveSpace y(prm.e[0][0].field(), {2});
  std::map<std::string, MultiPoint> labels;
  std::vector<MultiPoint> pts;
  for (std::size_t i = 0; i < 3; ++i) labels.emplace("e" + std::to_string(i + 1), MultiPoint({prm.e[i]}));
  for (std::size_t i = 0; i < 2; ++i) labels.emplace("g" + std::to_string(i + 1), MultiPoint({prm.g[i]}));
  for (const auto& [name, x] : labels) pts.push_back(x);
  const PointSet s(y, pts);
  if (check) {
    const std::size_t e = defect(s);
    self_check(e == 2, "z1", "e(S) = " + std::to_string(e) + ", expected 2");
    for (std::size_t i = 0; i < 3; ++i) {
      const auto idx = *s.find(MultiPoint({prm.e[i]}));
      self_check(is_circuit(s.without(idx)), "z1", "S minus a point of E is not a circuit");
    }
    self_check(!is_uniformly_dependent(s), "z1", "S is uniformly dependent");
  }
  return {"z1", s, labels};
}

ExampleSet gen_example_z1(const FieldSpec& f, std::uint64_t seed, bool check) {
  if (f.is_finite() && f.modulus() < 3) {
    throw FieldTooSmall(
        "Example z1 needs the line through G to meet L outside E, but lines of P^2(GF(2)) "
        "have only 3 points");
  }
  Rng rng = make_rng(seed, 0x7a31);
  const auto l = random_line(rng, f, 2);
  Z1Params prm;
  prm.e = points_on_line(rng, l[0], l[1], 3, {}, "Example z1");
  for (int attempt = 0;; ++attempt) {
    if (attempt > kMaxAttempts) throw SelfCheckFailed("Example z1 sampling did not converge");
    const ProjPoint g1 = point_off(rng, f, 2, {l[0], l[1]});
    const ProjPoint g2 = point_off(rng, f, 2, {l[0], l[1]}, {g1});
    const auto meet = subspace_intersection({l[0].coords(), l[1].coords()},
                                            {g1.coords(), g2.coords()});
    if (contains(prm.e, ProjPoint::normalized(meet.at(0)))) continue;
    prm.g = {g1, g2};
    break;
  }
  return build_example_z1(prm, check);
}

// --- random concise sets ---

PointSet random_concise_set(const MultiprojectiveSpace& y, std::size_t s, std::uint64_t seed) {
  for (int n : y.dims()) {
    if (s < static_cast<std::size_t>(n) + 1) {
      throw InputError("a concise set in " + y.shape_string() + " needs at least " +
                       std::to_string(n + 1) + " points");
    }
  }
  if (y.field().is_finite() && y.point_count() < s) {
    throw InputError(y.shape_string() + " over " + y.field().name() + " has fewer than " +
                     std::to_string(s) + " points");
  }
  Rng rng = make_rng(seed, 0x636f);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::set<MultiPoint> pts;
    while (pts.size() < s) pts.insert(random_point(rng, y));
    PointSet out(y, std::vector<MultiPoint>(pts.begin(), pts.end()));
    if (concision_hull(out).concise) return out;
  }
  throw InputError("no concise set of size " + std::to_string(s) + " found in " +
                   y.shape_string());
}

// --- elementary increasing ---

MultiPoint embed_padded(const MultiPoint& p, const MultiprojectiveSpace& w) {
  if (p.factors() != w.factors()) throw InputError("factor count mismatch in embedding");
  std::vector<ProjPoint> comps;
  for (std::size_t h = 0; h < p.factors(); ++h) {
    if (p[h].dim() > w.dim(h)) throw InputError("target factor is too small for embedding");
    Vector v = p[h].coords();
    v.resize(static_cast<std::size_t>(w.dim(h)) + 1, Scalar::zero(w.field()));
    comps.push_back(ProjPoint::normalized(std::move(v)));
  }
  return MultiPoint(std::move(comps));
}

PointSet embed_padded(const PointSet& s, const MultiprojectiveSpace& w) {
  std::vector<MultiPoint> pts;
  for (const auto& p : s) pts.push_back(embed_padded(p, w));
  return PointSet(w, pts);
}

ElementaryIncreasingResult elementary_increasing(const ElementaryIncreasingSpec& spec) {
  const MultiprojectiveSpace& y = spec.base.space();
  const std::size_t i = spec.factor;
  require(i < y.factors(), "factor index out of range");
  validate_point(spec.pivot, y);
  require(!spec.base.contains(spec.pivot), "the pivot o must not belong to E");
  for (std::size_t h = 0; h < y.factors(); ++h) {
    require(h == i || y.dim(h) > 0, "factors other than i must have positive dimension");
  }
  const int n = y.dim(i), m = spec.target_dim;
  require(m == n || m == n + 1, "target dimension must be n_i or n_i + 1");
  require(n > 0 || m == 1, "a zero-dimensional factor must be raised to P^1");
  std::vector<int> dims = y.dims();
  dims[i] = m;
  const MultiprojectiveSpace w(y.field(), dims);
  require(spec.u.dim() == m && spec.v.dim() == m, "u_i and v_i must lie in P^{m_i}");
  const PointSet e = embed_padded(spec.base, w);
  const MultiPoint o = embed_padded(spec.pivot, w);
  const auto ei = e.empty() ? std::vector<ProjPoint>{} : project_pi(e, i);
  require(!contains(ei, spec.u) && spec.u != o[i], "u_i must avoid E_i and o_i");
  require(spec.v != spec.u && spec.v != o[i], "v_i must differ from u_i and o_i");
  require(in_point_span(spec.v, {o[i], spec.u}), "v_i must lie on the line <o_i, u_i>");
  require(!contains(ei, spec.v), "v_i must avoid E_i");
  const MultiPoint u = o.with_component(i, spec.u), v = o.with_component(i, spec.v);
  const PointSet g = e.with(u).with(v);
  const PointSet f = e.with(o);
  if (g.size() != e.size() + 2) throw SelfCheckFailed("elementary increasing lost points");
  const Matrix gm = embed_set(g);
  if (!in_span(segre_embed(o, w), gm.row_list())) {
    throw SelfCheckFailed("elementary increasing: <nu(F)> is not inside <nu(G)>");
  }
  return {w, f, g};
}

std::optional<IncreasingWitness> find_elementary_increasing(const PointSet& f, const PointSet& g,
                                                            bool fresh_coordinates) {
  if (f.space() != g.space()) throw InputError("F and G must share a space");
  if (f.empty() || g.size() != f.size() + 1) return std::nullopt;
  std::vector<MultiPoint> only_f, only_g, common;
  for (const auto& x : f) (g.contains(x) ? common : only_f).push_back(x);
  for (const auto& x : g) {
    if (!f.contains(x)) only_g.push_back(x);
  }
  if (only_f.size() != 1 || only_g.size() != 2) return std::nullopt;
  const MultiPoint& o = only_f[0];
  const PointSet e(f.space(), common);
  for (std::size_t i = 0; i < o.factors(); ++i) {
    bool same_elsewhere = true;
    for (std::size_t h = 0; h < o.factors() && same_elsewhere; ++h) {
      if (h != i) same_elsewhere = only_g[0][h] == o[h] && only_g[1][h] == o[h];
    }
    if (!same_elsewhere) continue;
    const auto ei =
        e.empty() || !fresh_coordinates ? std::vector<ProjPoint>{} : project_pi(e, i);
    for (int swap = 0; swap < 2; ++swap) {
      const ProjPoint& u = only_g[swap][i];
      const ProjPoint& v = only_g[1 - swap][i];
      if (contains(ei, u) || u == o[i] || v == u || v == o[i] || contains(ei, v)) continue;
      if (in_point_span(v, {o[i], u})) return IncreasingWitness{o, i};
    }
  }
  return std::nullopt;
}

// --- family recognition ---

std::string to_string(FamilyKind f) {
  switch (f) {
    case FamilyKind::kNone: return "none";
    case FamilyKind::kK2: return "K2";
    case FamilyKind::kK3: return "K3";
  }
  return "unknown";
}

namespace {

struct Six {
  MultiPoint o, u, v, p, w, z;
};

std::optional<Six> six_labels(const PointSet& s, const std::map<std::string, MultiPoint>& labels) {
  if (labels.size() != 6) return std::nullopt;
  Six x{label(labels, "o"), label(labels, "u"), label(labels, "v"),
        label(labels, "p"), label(labels, "w"), label(labels, "z")};
  const PointSet pts(s.space(), {x.o, x.u, x.v, x.p, x.w, x.z});
  if (pts.size() != 6 || !(pts == s)) return std::nullopt;
  return x;
}

}  // namespace

bool satisfies_k2(const PointSet& s, const std::map<std::string, MultiPoint>& labels,
                  std::size_t i, std::size_t j) {
  const auto six = six_labels(s, labels);
  if (!six) return false;
  const auto& [o, u, v, p, w, z] = *six;
  const auto& y = s.space();
  const std::size_t k = y.factors();
  if (k < 2 || i >= k || j >= k || i == j) return false;
  for (std::size_t h = 0; h < k; ++h) {
    const int want_max = (h == i || h == j) ? 2 : 1;
    if (y.dim(h) < 1 || y.dim(h) > want_max) return false;
    if (h != i && !(u[h] == o[h] && v[h] == o[h])) return false;
    if (h != j && !(w[h] == p[h] && z[h] == p[h])) return false;
    if (p[h] == o[h]) return false;
  }
  if (!all_distinct({u[i], v[i], o[i], p[i]})) return false;
  if (!all_distinct({o[j], p[j], w[j], z[j]})) return false;
  if (y.dim(i) == 2 &&
      !(point_rank({u[i], v[i], o[i]}) == 2 && !in_point_span(p[i], {u[i], v[i]}))) {
    return false;
  }
  if (y.dim(j) == 2 &&
      !(point_rank({w[j], z[j], p[j]}) == 2 && !in_point_span(o[j], {w[j], z[j]}))) {
    return false;
  }
  return true;
}

bool satisfies_k3(const PointSet& s, const std::map<std::string, MultiPoint>& labels,
                  std::size_t i) {
  const auto six = six_labels(s, labels);
  if (!six) return false;
  const auto& [o, u, v, p, w, z] = *six;
  const auto& y = s.space();
  const std::size_t k = y.factors();
  if (i >= k) return false;
  const int n = y.dim(i);
  if (n < 1 || n > 3) return false;
  for (std::size_t h = 0; h < k; ++h) {
    if (h == i) continue;
    if (y.dim(h) != 1) return false;
    if (!(u[h] == o[h] && v[h] == o[h] && w[h] == p[h] && z[h] == p[h])) return false;
    if (o[h] == p[h]) return false;
  }
  if (!distinct_collinear(o[i], u[i], v[i]) || !distinct_collinear(p[i], w[i], z[i])) return false;
  const std::vector<ProjPoint> six_first{o[i], u[i], v[i], p[i], w[i], z[i]};
  const std::size_t joint = point_rank({o[i], u[i], p[i], w[i]});
  switch (n) {
    case 1:
      return all_distinct(six_first);
    case 2: {
      if (joint != 3) return false;
      const auto meet = subspace_intersection({o[i].coords(), u[i].coords()},
                                              {p[i].coords(), w[i].coords()});
      return !contains(six_first, ProjPoint::normalized(meet.at(0)));
    }
    default:
      return joint == 4;
  }
}

FamilyMatch match_family(const PointSet& s) {
  if (s.size() != 6) throw InputError("family matching needs #S = 6");
  struct Split {
    std::array<std::size_t, 3> a, b;
    std::optional<std::size_t> fa, fb;
  };
  std::vector<Split> splits;
  for (std::size_t x = 1; x < 6; ++x) {
    for (std::size_t y = x + 1; y < 6; ++y) {
      Split sp{};
      sp.a = {0, x, y};
      std::size_t t = 0;
      for (std::size_t r = 1; r < 6; ++r) {
        if (r != x && r != y) sp.b[t++] = r;
      }
      sp.fa = varying_factor(s[0], s[x], s[y]);
      sp.fb = varying_factor(s[sp.b[0]], s[sp.b[1]], s[sp.b[2]]);
      if (sp.fa && sp.fb) splits.push_back(sp);
    }
  }
  auto labels_of = [&](const std::array<std::size_t, 3>& a, const std::array<std::size_t, 3>& b) {
    return std::map<std::string, MultiPoint>{{"o", s[a[0]]}, {"u", s[a[1]]}, {"v", s[a[2]]},
                                             {"p", s[b[0]]}, {"w", s[b[1]]}, {"z", s[b[2]]}};
  };
  // The constraints are symmetric within each triple, so one labeling per
  // ordered split suffices.
  for (const auto& sp : splits) {
    if (*sp.fa == *sp.fb) continue;
    for (int swap = 0; swap < 2; ++swap) {
      const auto& a = swap ? sp.b : sp.a;
      const auto& b = swap ? sp.a : sp.b;
      const std::size_t i = swap ? *sp.fb : *sp.fa, j = swap ? *sp.fa : *sp.fb;
      auto labels = labels_of(a, b);
      if (satisfies_k2(s, labels, i, j)) return {FamilyKind::kK2, std::move(labels), i, j};
    }
  }
  for (const auto& sp : splits) {
    if (*sp.fa != *sp.fb) continue;
    auto labels = labels_of(sp.a, sp.b);
    if (satisfies_k3(s, labels, *sp.fa)) return {FamilyKind::kK3, std::move(labels), *sp.fa, *sp.fa};
  }
  return {};
}

bool validate_match(const PointSet& s, const FamilyMatch& m) {
  switch (m.family) {
    case FamilyKind::kK2: return satisfies_k2(s, m.labels, m.factor_a, m.factor_b);
    case FamilyKind::kK3:
      return m.factor_a == m.factor_b && satisfies_k3(s, m.labels, m.factor_a);
    case FamilyKind::kNone: return false;
  }
  return false;
}

}  // namespace segre
