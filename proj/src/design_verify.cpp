#include "qspace/design_verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "qspace/error.hpp"
#include "qspace/parallel.hpp"

namespace qspace {

namespace {

using Counts = std::unordered_map<Subspace, std::uint64_t>;

// t-subspaces of a word X, as coefficient subspaces of F_q^k pushed through
// X's basis.
class SubBasis {
 public:
  SubBasis(const Field& f, unsigned t) : f_(f), t_(t) {}

  const std::vector<Subspace>& of_dim(unsigned k) {
    auto it = cache_.find(k);
    if (it == cache_.end()) it = cache_.emplace(k, enumerate_grassmannian(f_, k, t_)).first;
    return it->second;
  }

  void for_each(const Subspace& x, const std::function<void(const Subspace&)>& fn) {
    const Matrix basis = x.matrix();
    for (const auto& coeff : of_dim(x.k())) fn(Subspace::row_space(f_, mat_mul(f_, coeff.matrix(), basis)));
  }

 private:
  const Field& f_;
  unsigned t_;
  std::map<unsigned, std::vector<Subspace>> cache_;
};

Counts count_tsubspaces(const SubspaceCode& c, unsigned t) {
  const auto& words = c.words();
  for (const auto& w : words)
    if (w.k() < t)
      throw Error(Errc::DimTooSmall, "word of dimension " + std::to_string(w.k()) + " < t = " + std::to_string(t));
  std::vector<Counts> partial(worker_count());
  parallel_chunks(words.size(), [&](unsigned w, std::size_t b, std::size_t e) {
    SubBasis sub(c.f(), t);
    for (std::size_t i = b; i < e; ++i) sub.for_each(words[i], [&](const Subspace& s) { ++partial[w][s]; });
  });
  Counts all = std::move(partial[0]);
  for (std::size_t w = 1; w < partial.size(); ++w)
    for (const auto& [s, m] : partial[w]) all[s] += m;
  return all;
}

void check_cap(unsigned n, unsigned t, std::uint64_t q, std::uint64_t cap) {
  if (gaussian_binomial(n, t, q) > cap)
    throw Error(Errc::CapExceeded, "[" + std::to_string(n) + "," + std::to_string(t) + "]_" + std::to_string(q) +
                                       " exceeds the enumeration cap " + std::to_string(cap));
}

bool is_full_layer(const SubspaceCode& c) {
  const auto k = c.constant_dimension();
  return k && !c.empty() && gaussian_binomial(c.n(), *k, c.f().q()) == c.size();
}

// Rank of the first k columns of x.
unsigned prefix_rank(const Field& f, const Subspace& x, unsigned k) {
  Matrix m(x.k(), k);
  for (unsigned r = 0; r < x.k(); ++r)
    for (unsigned j = 0; j < k; ++j) m.at(r, j) = x.at(r, j);
  return rank(f, m);
}

// Normalized nonzero vectors (first nonzero entry 1), one per projective point.
std::vector<Vec> points_of(const Field& f, const Subspace& x) {
  std::vector<Vec> out;
  for (auto& v : vectors_of(f, x)) {
    auto it = std::find_if(v.begin(), v.end(), [](Digit d) { return d != 0; });
    if (it != v.end() && *it == 1) out.push_back(std::move(v));
  }
  return out;
}

// Index of the projective point spanned by the first k entries of v, or -1
// for a zero prefix. Points are indexed by their normalized base-q value.
std::int64_t prefix_point(const Field& f, const Vec& v, unsigned k) {
  unsigned lead = k;
  for (unsigned i = 0; i < k; ++i)
    if (v[i]) {
      lead = i;
      break;
    }
  if (lead == k) return -1;
  const Digit s = f.inv(v[lead]);
  std::int64_t code = 0;
  for (unsigned i = 0; i < k; ++i) code = code * f.q() + f.mul(v[i], s);
  return code;
}

}  // namespace

bool CoverageReport::is_design(std::uint64_t lambda) const {
  for (std::size_t m = 0; m < histogram.size(); ++m)
    if (histogram[m] && m != lambda) return false;
  return total > 0 && lambda < histogram.size() && histogram[lambda] == total;
}

bool CoverageReport::is_covering() const { return histogram.empty() || histogram[0] == 0; }

CoverageReport coverage(const SubspaceCode& c, unsigned t, std::uint64_t cap) {
  if (t > c.n()) throw Error(Errc::BadParams, "t exceeds the ambient dimension");
  check_cap(c.n(), t, c.f().q(), cap);
  CoverageReport rep;
  rep.t = t;
  rep.n = c.n();
  rep.total = static_cast<std::uint64_t>(gaussian_binomial(c.n(), t, c.f().q()));
  rep.trivial = is_full_layer(c);
  const Counts counts = count_tsubspaces(c, t);
  std::uint64_t maxm = 0;
  for (const auto& [s, m] : counts) maxm = std::max(maxm, m);
  rep.histogram.assign(maxm + 1, 0);
  for (const auto& [s, m] : counts) ++rep.histogram[m];
  rep.histogram[0] = rep.total - counts.size();
  return rep;
}

bool verify_steiner(const SubspaceCode& c, unsigned t) {
  if (c.empty() || !c.constant_dimension()) return false;
  return coverage(c, t).is_steiner();
}

bool verify_design(const SubspaceCode& c, unsigned t, std::uint64_t lambda) {
  if (c.empty() || !c.constant_dimension()) return false;
  return coverage(c, t).is_design(lambda);
}

bool verify_covering(const SubspaceCode& c, unsigned r) { return coverage(c, r).is_covering(); }

DivisibilityReport steiner_divisibility(unsigned t, unsigned k, unsigned n, std::uint64_t q) {
  if (!(t < k && k < n)) throw Error(Errc::BadParams, "divisibility conditions need t < k < n");
  if (q < 2) throw Error(Errc::BadParams, "q must be at least 2");
  DivisibilityReport rep;
  for (unsigned i = 0; i < t; ++i) {
    DivisibilityTerm term;
    term.i = i;
    term.quotient = Rational(gaussian_binomial(n - i, t - i, q), gaussian_binomial(k - i, t - i, q));
    term.integral = denominator(term.quotient) == 1;
    rep.pass = rep.pass && term.integral;
    rep.terms.push_back(std::move(term));
  }
  return rep;
}

bool verify_partial_spread(const SubspaceCode& c) {
  if (!c.constant_dimension()) return c.empty();
  const auto& w = c.words();
  if (*c.constant_dimension() == 0) return w.size() <= 1;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (intersection_dim(c.f(), w[i], w[j]) != 0) return false;
  return true;
}

bool verify_spread(const SubspaceCode& c) {
  const auto k = c.constant_dimension();
  if (!k || *k == 0 || !verify_partial_spread(c)) return false;
  const std::uint64_t q = c.f().q();
  return BigInt(c.size()) * (ipow(BigInt(q), *k) - 1) == ipow(BigInt(q), c.n()) - 1;
}

STDReport verify_std(const SubspaceCode& c, unsigned k, unsigned n, unsigned t, std::uint64_t cap) {
  if (c.n() != n) throw Error(Errc::AmbientMismatch, "code length " + std::to_string(c.n()) + " != n");
  if (!c.empty() && c.constant_dimension() != k)
    throw Error(Errc::NotConstantDimension, "blocks must all have dimension k = " + std::to_string(k));
  if (k < 1 || k >= n || t < 1 || t > k) throw Error(Errc::BadParams, "needs 1 <= t <= k < n");
  const Field& f = c.f();
  const std::uint64_t q = f.q();
  check_cap(n, t, q, cap);

  STDReport rep;
  rep.k = k;
  rep.n = n;
  rep.t = t;
  const std::uint64_t expect_groups = static_cast<std::uint64_t>(gaussian_binomial(k, 1, q));
  const std::uint64_t expect_size = static_cast<std::uint64_t>(ipow(BigInt(q), n - k));

  // (1) and (2): walk all projective points, bucket by prefix direction.
  std::map<std::int64_t, std::uint64_t> groups;
  std::uint64_t points = 0;
  for (const auto& v : points_of(f, Subspace::full(n))) {
    const auto g = prefix_point(f, v, k);
    if (g < 0) continue;
    ++points;
    ++groups[g];
  }
  rep.group_count = groups.size();
  rep.group_size = groups.empty() ? 0 : groups.begin()->second;
  rep.point_count = points == expect_groups * expect_size;
  rep.groups_partition = groups.size() == expect_groups &&
                         std::all_of(groups.begin(), groups.end(), [&](const auto& g) { return g.second == expect_size; });

  // (3) and (4)
  rep.blocks_avoid_v0 = true;
  rep.one_point_per_group = true;
  for (const auto& b : c.words()) {
    std::map<std::int64_t, unsigned> hits;
    for (const auto& v : points_of(f, b)) ++hits[prefix_point(f, v, k)];
    if (hits.count(-1)) rep.blocks_avoid_v0 = false;
    hits.erase(-1);
    if (hits.size() != expect_groups ||
        !std::all_of(hits.begin(), hits.end(), [](const auto& h) { return h.second == 1; }))
      rep.one_point_per_group = false;
  }

  // (5): a t-subspace meets every group at most once and avoids V_0 exactly
  // when its prefix projection is injective.
  const Counts counts = count_tsubspaces(c, t);
  rep.strength = true;
  for_each_grassmannian(f, n, t, [&](const Subspace& s) {
    if (prefix_rank(f, s, k) != t) return;
    ++rep.admissible;
    auto it = counts.find(s);
    if (it == counts.end() || it->second != 1) rep.strength = false;
  }, cap);
  return rep;
}

bool cover_check(const SubspaceCode& c) {
  SubspaceCode nonzero(c.field(), c.n(), c.metric());
  for (const auto& w : c.words())
    if (w.k() > 0) nonzero.insert(w);
  return coverage(nonzero, 1).is_covering();
}

double complement_limit(std::uint64_t q) {
  double prod = 1.0;
  const double inv = 1.0 / static_cast<double>(q);
  double term = inv;
  for (int i = 1; i < 200 && term > 1e-17; ++i, term *= inv) prod /= 1.0 + term;
  return prod;
}

ComplementCensus complements_census(const Field& f, unsigned n, std::uint64_t cap) {
  ComplementCensus rep;
  rep.n = n;
  rep.q = f.q();
  for_each_projective(f, n, [&](const Subspace& x) {
    ++rep.total;
    if (intersection_dim(f, x, dual(f, x)) == 0) ++rep.count;
  }, cap);
  rep.ratio = rep.total ? static_cast<double>(rep.count) / static_cast<double>(rep.total) : 0.0;
  rep.limit = complement_limit(f.q());
  return rep;
}

}  // namespace qspace
