#include "qspace/code_builder.hpp"

#include <algorithm>
#include <set>

namespace qspace {

unsigned hamming_distance(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "skeleton words of different length");
  unsigned d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

unsigned asymmetric_distance(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "skeleton words of different length");
  unsigned ab = 0, ba = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] == '1' && b[i] == '0';
    ba += a[i] == '0' && b[i] == '1';
  }
  return std::max(ab, ba);
}

unsigned SkeletonCode::min_distance(SkeletonDistance k) const {
  unsigned best = ~0u;
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = i + 1; j < words.size(); ++j)
      best = std::min(best, k == SkeletonDistance::Hamming ? hamming_distance(words[i], words[j])
                                                           : asymmetric_distance(words[i], words[j]));
  return words.size() < 2 ? 0 : best;
}

unsigned SkeletonCode::min_distance() const { return min_distance(kind); }

bool SkeletonCode::verify() const {
  for (const auto& w : words) {
    if (w.size() != n) return false;
    if (constant_weight && static_cast<unsigned>(std::count(w.begin(), w.end(), '1')) != *constant_weight) return false;
  }
  return words.size() < 2 || min_distance() >= distance;
}

SkeletonCode skeleton_default(unsigned n, unsigned k, unsigned delta, Metric metric) {
  if (n == 0 || n > 24 || k > n || delta == 0) throw Error(Errc::BadParams, "skeleton parameters out of range");
  SkeletonCode s;
  s.n = n;
  switch (metric) {
    case Metric::Grassmannian:
      s.kind = SkeletonDistance::Hamming;
      s.distance = 2 * delta;
      s.constant_weight = k;
      break;
    case Metric::Subspace:
      s.kind = SkeletonDistance::Hamming;
      s.distance = 2 * delta - 1;
      break;
    case Metric::Injection:
      s.kind = SkeletonDistance::Asymmetric;
      s.distance = delta;
      break;
  }
  auto to_string = [n](std::uint32_t v) {
    std::string w(n, '0');
    for (unsigned i = 0; i < n; ++i)
      if (v >> (n - 1 - i) & 1u) w[i] = '1';
    return w;
  };
  const std::string seed = std::string(k, '1') + std::string(n - k, '0');
  s.words.push_back(seed);
  for (std::uint32_t v = (1u << n); v-- > 0;) {
    const std::string w = to_string(v);
    if (w == seed) continue;
    if (s.constant_weight && static_cast<unsigned>(std::count(w.begin(), w.end(), '1')) != k) continue;
    bool ok = true;
    for (const auto& c : s.words) {
      const unsigned d = s.kind == SkeletonDistance::Hamming ? hamming_distance(w, c) : asymmetric_distance(w, c);
      if (d < s.distance) {
        ok = false;
        break;
      }
    }
    if (ok) s.words.push_back(w);
  }
  return s;
}

std::vector<Subspace> embed_layer(const Field& f, const std::string& word, const RankCode& code) {
  (void)f;
  const unsigned n = static_cast<unsigned>(word.size());
  std::vector<unsigned> piv, nonpiv;
  for (unsigned i = 0; i < n; ++i) (word[i] == '1' ? piv : nonpiv).push_back(i);
  const unsigned k = static_cast<unsigned>(piv.size());
  if (k == 0) return {Subspace::zero(n)};
  const unsigned eta = code.cols;
  std::vector<Subspace> out;
  for (const auto& a : code.codewords()) {
    std::vector<Digit> rows(static_cast<std::size_t>(k) * n, 0);
    for (unsigned i = 0; i < k; ++i) rows[static_cast<std::size_t>(i) * n + piv[i]] = 1;
    for (unsigned i = 0; i < code.rows; ++i)
      for (unsigned j = 0; j < eta; ++j)
        if (a.at(i, j)) rows[static_cast<std::size_t>(i) * n + nonpiv[n - k - eta + j]] = a.at(i, j);
    out.push_back(Subspace::from_rref(n, k, std::move(rows)));
  }
  return out;
}

MultilevelResult multilevel(FieldPtr field, const SkeletonCode& skeleton, unsigned delta, Metric metric, bool verify) {
  if (delta == 0) throw Error(Errc::BadDelta, "delta must be at least 1");
  for (const auto& w : skeleton.words)
    if (w.size() != skeleton.n || w.find_first_not_of("01") != std::string::npos)
      throw Error(Errc::ParseError, "skeleton word '" + w + "' is not a binary word of length " + std::to_string(skeleton.n));
  const bool several = skeleton.words.size() >= 2;
  MultilevelResult res{SubspaceCode(field, skeleton.n, metric), {}, 0, std::nullopt};
  switch (metric) {
    case Metric::Grassmannian: {
      std::set<std::size_t> weights;
      for (const auto& w : skeleton.words) weights.insert(std::count(w.begin(), w.end(), '1'));
      if (weights.size() > 1) throw Error(Errc::MetricMismatch, "Grassmannian target needs a constant-weight skeleton");
      const unsigned d = skeleton.min_distance(SkeletonDistance::Hamming);
      if (several && d < 2 * delta)
        throw Error(Errc::SkeletonDistanceTooSmall,
                    "Hamming distance " + std::to_string(d) + " < " + std::to_string(2 * delta));
      res.target = delta;
      break;
    }
    case Metric::Subspace: {
      if (skeleton.kind != SkeletonDistance::Hamming)
        throw Error(Errc::MetricMismatch, "subspace target needs a Hamming-distance skeleton");
      const unsigned d = skeleton.min_distance(SkeletonDistance::Hamming);
      if (several && d < 2 * delta - 1)
        throw Error(Errc::SkeletonDistanceTooSmall,
                    "Hamming distance " + std::to_string(d) + " < " + std::to_string(2 * delta - 1));
      res.target = several ? std::min(d, 2 * delta) : 2 * delta;
      break;
    }
    case Metric::Injection: {
      if (skeleton.kind != SkeletonDistance::Asymmetric)
        throw Error(Errc::MetricMismatch, "injection target needs an asymmetric-distance skeleton");
      const unsigned d = skeleton.min_distance(SkeletonDistance::Asymmetric);
      if (several && d < delta)
        throw Error(Errc::SkeletonDistanceTooSmall,
                    "asymmetric distance " + std::to_string(d) + " < " + std::to_string(delta));
      res.target = delta;
      break;
    }
  }
  for (const auto& w : skeleton.words) {
    MultilevelPart part;
    part.word = w;
    if (w.find('1') == std::string::npos) {
      part.method = "zero";
      part.size = 1;
      res.code.insert(Subspace::zero(skeleton.n));
      res.parts.push_back(std::move(part));
      continue;
    }
    part.diagram = ferrers_of(w);
    auto fdrm = fdrm_construct(field, part.diagram, delta);
    part.dim = fdrm.code.dim();
    part.bound = fdrm.bound;
    part.method = fdrm.method;
    part.size = static_cast<std::uint64_t>(fdrm.code.size());
    for (auto& x : embed_layer(*field, w, fdrm.code)) res.code.insert(x);
    res.parts.push_back(std::move(part));
  }
  res.code.claimed_distance = res.target;
  if (verify && res.code.size() >= 2) res.verified_distance = code_min_distance(res.code, metric);
  return res;
}

Subspace puncture_subspace(const Field& f, const Subspace& x, unsigned i) {
  const unsigned n = x.n();
  if (i >= n) throw Error(Errc::BadParams, "coordinate " + std::to_string(i) + " outside F^" + std::to_string(n));
  Vec e(n, 0);
  e[i] = 1;
  if (contains(f, x, e)) throw Error(Errc::UnitVectorInside, "unit vector e_" + std::to_string(i) + " lies in X");
  Matrix m(x.k(), n - 1);
  for (unsigned r = 0; r < x.k(); ++r)
    for (unsigned c = 0, cc = 0; c < n; ++c)
      if (c != i) m.at(r, cc++) = x.at(r, c);
  return Subspace::row_space(f, m);
}

namespace {

unsigned missing_pivot(const Subspace& q) {
  const auto piv = q.pivots();
  unsigned tau = 0;
  while (tau < piv.size() && piv[tau] == tau) ++tau;
  return tau;
}

}  // namespace

SubspaceCode puncture_code(const SubspaceCode& c, const Subspace& hyperplane, const Vec& v) {
  const Field& f = c.f();
  const unsigned n = c.n();
  if (hyperplane.n() != n || hyperplane.k() + 1 != n)
    throw Error(Errc::BadHyperplane, "Q must be a hyperplane of F^" + std::to_string(n));
  if (v.size() != n) throw Error(Errc::DimensionMismatch, "v has the wrong length");
  if (contains(f, hyperplane, v)) throw Error(Errc::VInQ, "v lies in Q");
  const unsigned tau = missing_pivot(hyperplane);
  SubspaceCode out(c.field(), n - 1, Metric::Subspace);
  for (const auto& x : c.words()) {
    if (is_subspace_of(f, x, hyperplane)) out.insert(puncture_subspace(f, x, tau));
    if (contains(f, x, v)) out.insert(puncture_subspace(f, intersect(f, x, hyperplane), tau));
  }
  if (c.claimed_distance && *c.claimed_distance > 0) out.claimed_distance = *c.claimed_distance - 1;
  return out;
}

PunctureChoice choose_Q(const SubspaceCode& c, std::uint64_t cap) {
  const Field& f = c.f();
  const unsigned n = c.n();
  if (n == 0) throw Error(Errc::BadParams, "cannot puncture F^0");
  const BigInt pairs = gaussian_binomial(n, n - 1, f.q()) * ipow(BigInt(f.q()), n - 1);
  if (pairs > cap) throw Error(Errc::CapExceeded, "hyperplane/vector search exceeds cap " + std::to_string(cap));
  // normalized vectors: first nonzero coordinate equal to 1, lexicographic order
  std::vector<Vec> normalized;
  for (const auto& x : enumerate_grassmannian(f, n, 1)) normalized.push_back(x.row(0));
  std::sort(normalized.begin(), normalized.end());
  PunctureChoice best;
  bool have = false;
  for_each_grassmannian(f, n, n - 1, [&](const Subspace& q) {
    std::size_t base = 0;
    for (const auto& x : c.words())
      if (is_subspace_of(f, x, q)) ++base;
    for (const auto& v : normalized) {
      if (contains(f, q, v)) continue;
      if (have && base + c.size() <= best.size) break;
      const std::size_t size = puncture_code(c, q, v).size();
      if (!have || size > best.size) {
        best = {q, v, size};
        have = true;
      }
    }
  });
  return best;
}

SubspaceCode augment_greedy(const SubspaceCode& c, Metric metric, unsigned target, std::size_t max_add) {
  SubspaceCode out = c;
  const Field& f = c.f();
  std::size_t added = 0;
  for_each_projective(f, c.n(), [&](const Subspace& x) {
    if (added >= max_add || out.has(x)) return;
    if (metric == Metric::Grassmannian && out.constant_dimension() && x.k() != *out.constant_dimension()) return;
    for (const auto& w : out.words())
      if (distance(f, metric, x, w) < target) return;
    out.insert(x);
    ++added;
  });
  return out;
}

SubspaceCode augment_trivial(const SubspaceCode& c, Metric metric, unsigned target) {
  SubspaceCode out = c;
  const Field& f = c.f();
  for (const auto& x : {Subspace::zero(c.n()), Subspace::full(c.n())}) {
    if (out.has(x)) continue;
    if (metric == Metric::Grassmannian && out.constant_dimension() && x.k() != *out.constant_dimension()) continue;
    bool ok = true;
    for (const auto& w : out.words())
      if (distance(f, metric, x, w) < target) ok = false;
    if (ok) out.insert(x);
  }
  return out;
}

SubspaceCode spread(FieldPtr base, unsigned n, unsigned k) {
  if (k == 0 || n % k != 0)
    throw Error(Errc::NotDivisible, std::to_string(k) + " does not divide " + std::to_string(n));
  const Extension ext = Extension::over(base, n);
  const Field& big = *ext.big();
  const std::int64_t order = big.q() - 1;
  std::int64_t sub = 1;
  for (unsigned i = 0; i < k; ++i) sub *= base->q();
  const std::int64_t count = order / (sub - 1);
  SubspaceCode out(base, n, Metric::Grassmannian);
  for (std::int64_t i = 0; i < count; ++i) {
    std::vector<Vec> gens;
    for (unsigned t = 0; t < k; ++t) gens.push_back(ext.elem_to_vec(big.primitive_power(i + count * t)));
    out.insert(span(*base, n, gens));
  }
  out.claimed_distance = k;
  return out;
}

SubspaceCode partial_spread(FieldPtr base, unsigned n, unsigned k) {
  if (k == 0 || k > n) throw Error(Errc::BadParams, "need 1 <= k <= n");
  if (n % k == 0) return spread(base, n, k);
  const Field& f = *base;
  SubspaceCode out(base, n, Metric::Grassmannian);
  // Layer at offset: lifted MRD words inside the last n - offset coordinates,
  // then recurse into the part whose first k of those coordinates vanish.
  unsigned offset = 0;
  while (n - offset >= 2 * k) {
    const unsigned rest = n - offset;
    const RankCode mrd = gabidulin(base, k, rest - k, k);
    for (const auto& a : mrd.codewords()) {
      const Subspace local = lift(f, a);
      std::vector<Digit> rows(static_cast<std::size_t>(k) * n, 0);
      for (unsigned r = 0; r < k; ++r)
        for (unsigned c = 0; c < rest; ++c) rows[static_cast<std::size_t>(r) * n + offset + c] = local.at(r, c);
      out.insert(Subspace::from_rref(n, k, std::move(rows)));
    }
    offset += k;
  }
  if (n - offset >= k) {
    std::vector<Digit> rows(static_cast<std::size_t>(k) * n, 0);
    for (unsigned r = 0; r < k; ++r) rows[static_cast<std::size_t>(r) * n + offset + r] = 1;
    out.insert(Subspace::from_rref(n, k, std::move(rows)));
  }
  out.claimed_distance = k;
  return out;
}

Subspace generator_subspace(const Extension& ext, const OrbitGenerator& g) {
  const Field& big = *ext.big();
  const Field& base = *ext.base();
  std::set<Digit> elems{0};
  std::vector<Vec> vecs;
  for (auto e : g) {
    const Digit x = big.primitive_power(e);
    if (elems.insert(x).second) vecs.push_back(ext.elem_to_vec(x));
  }
  const Subspace s = span(base, ext.degree(), vecs);
  if (ipow(BigInt(base.q()), s.k()) != BigInt(elems.size()))
    throw Error(Errc::NotASubspace, "generator of " + std::to_string(elems.size()) +
                                        " elements is not closed under addition (span has dimension " +
                                        std::to_string(s.k()) + ")");
  return s;
}

Subspace shift_map(const Extension& ext, const Subspace& x, std::int64_t j) {
  const Field& big = *ext.big();
  const Digit a = big.primitive_power(j);
  std::vector<Vec> vecs;
  for (unsigned r = 0; r < x.k(); ++r) {
    const Vec row = x.row(r);
    vecs.push_back(ext.elem_to_vec(big.mul(a, ext.vec_to_elem(row))));
  }
  return span(*ext.base(), x.n(), vecs);
}

Subspace frobenius_map(const Extension& ext, const Subspace& x, unsigned l) {
  const Field& big = *ext.big();
  std::int64_t e = 1;
  for (unsigned i = 0; i < l % ext.degree(); ++i) e *= ext.base()->q();
  std::vector<Vec> vecs;
  for (unsigned r = 0; r < x.k(); ++r) {
    const Vec row = x.row(r);
    vecs.push_back(ext.elem_to_vec(big.pow(ext.vec_to_elem(row), e)));
  }
  return span(*ext.base(), x.n(), vecs);
}

std::vector<Subspace> equivalence_class(const Extension& ext, const Subspace& x) {
  std::set<Subspace> out;
  const std::int64_t order = ext.big()->q() - 1;
  for (unsigned l = 0; l < ext.degree(); ++l) {
    const Subspace y = frobenius_map(ext, x, l);
    for (std::int64_t j = 0; j < order; ++j) out.insert(shift_map(ext, y, j));
  }
  return {out.begin(), out.end()};
}

SubspaceCode cyclic_orbit_code(const Extension& ext, const std::vector<OrbitGenerator>& gens, bool add_zero,
                               bool add_full, Metric metric) {
  const unsigned n = ext.degree();
  SubspaceCode out(ext.base(), n, metric);
  const std::int64_t order = ext.big()->q() - 1;
  for (const auto& g : gens) {
    const Subspace s = generator_subspace(ext, g);
    for (std::int64_t j = 0; j < order; ++j) out.insert(shift_map(ext, s, j));
  }
  if (add_zero) out.insert(Subspace::zero(n));
  if (add_full) out.insert(Subspace::full(n));
  return out;
}

}  // namespace qspace
