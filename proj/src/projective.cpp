#include "qspace/projective.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "qspace/parallel.hpp"

namespace qspace {

BigInt ipow(const BigInt& base, unsigned exp) {
  BigInt r = 1, b = base;
  while (exp) {
    if (exp & 1) r *= b;
    b *= b;
    exp >>= 1;
  }
  return r;
}

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw Error(Errc::BadParams, "square root of a negative number");
  return boost::multiprecision::sqrt(n);
}

// Matrix

Matrix Matrix::from_rows(unsigned cols, const std::vector<Vec>& rows) {
  Matrix m(static_cast<unsigned>(rows.size()), cols);
  for (unsigned r = 0; r < m.rows; ++r) {
    if (rows[r].size() != cols)
      throw Error(Errc::DimensionMismatch,
                  "row of length " + std::to_string(rows[r].size()) + ", expected " + std::to_string(cols));
    std::copy(rows[r].begin(), rows[r].end(), m.data.begin() + static_cast<std::ptrdiff_t>(r) * cols);
  }
  return m;
}

Vec Matrix::row(unsigned r) const {
  auto b = data.begin() + static_cast<std::ptrdiff_t>(r) * cols;
  return Vec(b, b + cols);
}

RrefResult rref(const Field& f, Matrix m) {
  RrefResult res;
  unsigned rank = 0;
  const unsigned cols = m.cols;
  for (unsigned c = 0; c < cols && rank < m.rows; ++c) {
    unsigned piv = rank;
    while (piv < m.rows && m.at(piv, c) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != rank)
      for (unsigned j = 0; j < cols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
    const Digit s = f.inv(m.at(rank, c));
    if (s != 1)
      for (unsigned j = c; j < cols; ++j) m.at(rank, j) = f.mul(m.at(rank, j), s);
    for (unsigned r = 0; r < m.rows; ++r) {
      if (r == rank) continue;
      const Digit factor = m.at(r, c);
      if (factor == 0) continue;
      const Digit nf = f.neg(factor);
      for (unsigned j = c; j < cols; ++j)
        if (m.at(rank, j)) m.at(r, j) = f.add(m.at(r, j), f.mul(nf, m.at(rank, j)));
    }
    res.pivots.push_back(c);
    ++rank;
  }
  m.rows = rank;
  m.data.resize(static_cast<std::size_t>(rank) * cols);
  res.rank = rank;
  res.matrix = std::move(m);
  return res;
}

unsigned rank(const Field& f, Matrix m) { return rref(f, std::move(m)).rank; }

namespace {
void check_shape(const Matrix& a, const Matrix& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw Error(Errc::ShapeMismatch, std::to_string(a.rows) + "x" + std::to_string(a.cols) + " vs " +
                                         std::to_string(b.rows) + "x" + std::to_string(b.cols));
}
}  // namespace

Matrix mat_add(const Field& f, const Matrix& a, const Matrix& b) {
  check_shape(a, b);
  Matrix r = a;
  for (std::size_t i = 0; i < r.data.size(); ++i) r.data[i] = f.add(a.data[i], b.data[i]);
  return r;
}

Matrix mat_sub(const Field& f, const Matrix& a, const Matrix& b) {
  check_shape(a, b);
  Matrix r = a;
  for (std::size_t i = 0; i < r.data.size(); ++i) r.data[i] = f.sub(a.data[i], b.data[i]);
  return r;
}

Matrix mat_scale(const Field& f, Digit s, const Matrix& a) {
  Matrix r = a;
  for (auto& v : r.data) v = f.mul(s, v);
  return r;
}

Matrix mat_mul(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) throw Error(Errc::ShapeMismatch, "inner dimensions differ");
  Matrix r(a.rows, b.cols);
  for (unsigned i = 0; i < a.rows; ++i)
    for (unsigned l = 0; l < a.cols; ++l) {
      const Digit x = a.at(i, l);
      if (!x) continue;
      for (unsigned j = 0; j < b.cols; ++j) r.at(i, j) = f.add(r.at(i, j), f.mul(x, b.at(l, j)));
    }
  return r;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols, a.rows);
  for (unsigned i = 0; i < a.rows; ++i)
    for (unsigned j = 0; j < a.cols; ++j) t.at(j, i) = a.at(i, j);
  return t;
}

std::vector<Vec> null_space(const Field& f, const Matrix& m) {
  const auto r = rref(f, m);
  std::vector<bool> is_piv(m.cols, false);
  for (unsigned p : r.pivots) is_piv[p] = true;
  std::vector<Vec> out;
  for (unsigned j = 0; j < m.cols; ++j) {
    if (is_piv[j]) continue;
    Vec v(m.cols, 0);
    v[j] = 1;
    for (unsigned i = 0; i < r.rank; ++i) v[r.pivots[i]] = f.neg(r.matrix.at(i, j));
    out.push_back(std::move(v));
  }
  return out;
}

// Subspace

Subspace Subspace::from_rref(unsigned n, unsigned k, std::vector<Digit> rows) {
  Subspace s;
  s.n_ = n;
  s.k_ = k;
  s.rows_ = std::move(rows);
  return s;
}

Subspace Subspace::row_space(const Field& f, const Matrix& m) {
  auto r = rref(f, m);
  return from_rref(m.cols, r.rank, std::move(r.matrix.data));
}

Subspace Subspace::full(unsigned n) {
  std::vector<Digit> rows(static_cast<std::size_t>(n) * n, 0);
  for (unsigned i = 0; i < n; ++i) rows[static_cast<std::size_t>(i) * n + i] = 1;
  return from_rref(n, n, std::move(rows));
}

Vec Subspace::row(unsigned r) const {
  auto b = rows_.begin() + static_cast<std::ptrdiff_t>(r) * n_;
  return Vec(b, b + n_);
}

Matrix Subspace::matrix() const {
  Matrix m(k_, n_);
  m.data = rows_;
  return m;
}

std::vector<unsigned> Subspace::pivots() const {
  std::vector<unsigned> p;
  p.reserve(k_);
  for (unsigned r = 0; r < k_; ++r) {
    unsigned c = 0;
    while (c < n_ && at(r, c) == 0) ++c;
    p.push_back(c);
  }
  return p;
}

std::vector<std::string> Subspace::row_strings(unsigned q) const {
  std::vector<std::string> out;
  for (unsigned r = 0; r < k_; ++r) {
    std::string s;
    for (unsigned c = 0; c < n_; ++c) {
      if (q <= 10) {
        s.push_back(static_cast<char>('0' + at(r, c)));
      } else {
        if (c) s.push_back(' ');
        s += std::to_string(at(r, c));
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::strong_ordering Subspace::operator<=>(const Subspace& o) const {
  if (auto c = n_ <=> o.n_; c != 0) return c;
  if (auto c = k_ <=> o.k_; c != 0) return c;
  const auto pa = pivots(), pb = o.pivots();
  for (unsigned i = k_; i-- > 0;)
    if (auto c = pa[i] <=> pb[i]; c != 0) return c;
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (auto c = rows_[i] <=> o.rows_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

Subspace span(const Field& f, unsigned n, const std::vector<Vec>& vectors) {
  return Subspace::row_space(f, Matrix::from_rows(n, vectors));
}

namespace {

void check_ambient(const Subspace& x, const Subspace& y) {
  if (x.n() != y.n())
    throw Error(Errc::AmbientMismatch, "F^" + std::to_string(x.n()) + " vs F^" + std::to_string(y.n()));
}

Matrix stack(const Subspace& x, const Subspace& y) {
  Matrix m(x.k() + y.k(), x.n());
  std::copy(x.data().begin(), x.data().end(), m.data.begin());
  std::copy(y.data().begin(), y.data().end(), m.data.begin() + static_cast<std::ptrdiff_t>(x.data().size()));
  return m;
}

}  // namespace

bool contains(const Field& f, const Subspace& x, std::span<const Digit> v) {
  if (v.size() != x.n()) throw Error(Errc::DimensionMismatch, "vector length differs from ambient dimension");
  // Reduce v against the RREF rows; v is inside iff the remainder vanishes.
  Vec w(v.begin(), v.end());
  const auto piv = x.pivots();
  for (unsigned r = 0; r < x.k(); ++r) {
    const Digit c = w[piv[r]];
    if (!c) continue;
    const Digit nc = f.neg(c);
    for (unsigned j = 0; j < x.n(); ++j)
      if (x.at(r, j)) w[j] = f.add(w[j], f.mul(nc, x.at(r, j)));
  }
  return std::all_of(w.begin(), w.end(), [](Digit d) { return d == 0; });
}

std::vector<Vec> vectors_of(const Field& f, const Subspace& x) {
  const unsigned q = f.q();
  std::uint64_t total = 1;
  for (unsigned i = 0; i < x.k(); ++i) {
    total *= q;
    if (total > kDefaultEnumCap) throw Error(Errc::CapExceeded, "subspace has too many vectors");
  }
  std::vector<Vec> out;
  out.reserve(total);
  std::vector<Digit> coef(x.k(), 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Vec v(x.n(), 0);
    for (unsigned r = 0; r < x.k(); ++r) {
      if (!coef[r]) continue;
      for (unsigned j = 0; j < x.n(); ++j)
        if (x.at(r, j)) v[j] = f.add(v[j], f.mul(coef[r], x.at(r, j)));
    }
    out.push_back(std::move(v));
    for (unsigned r = x.k(); r-- > 0;) {
      if (++coef[r] < q) break;
      coef[r] = 0;
    }
  }
  return out;
}

unsigned intersection_dim(const Field& f, const Subspace& x, const Subspace& y) {
  check_ambient(x, y);
  if (x.k() == 0 || y.k() == 0) return 0;
  return x.k() + y.k() - rank(f, stack(x, y));
}

Subspace sum_subspace(const Field& f, const Subspace& x, const Subspace& y) {
  check_ambient(x, y);
  return Subspace::row_space(f, stack(x, y));
}

Subspace dual(const Field& f, const Subspace& x) {
  const unsigned n = x.n(), k = x.k();
  const auto piv = x.pivots();
  std::vector<bool> is_piv(n, false);
  for (unsigned p : piv) is_piv[p] = true;
  Matrix m(n - k, n);
  unsigned r = 0;
  for (unsigned j = 0; j < n; ++j) {
    if (is_piv[j]) continue;
    m.at(r, j) = 1;
    for (unsigned i = 0; i < k; ++i) m.at(r, piv[i]) = f.neg(x.at(i, j));
    ++r;
  }
  return Subspace::row_space(f, m);
}

Subspace intersect(const Field& f, const Subspace& x, const Subspace& y) {
  check_ambient(x, y);
  return dual(f, sum_subspace(f, dual(f, x), dual(f, y)));
}

bool is_subspace_of(const Field& f, const Subspace& x, const Subspace& y) {
  check_ambient(x, y);
  if (x.k() > y.k()) return false;
  for (unsigned r = 0; r < x.k(); ++r) {
    const Vec v = x.row(r);
    if (!contains(f, y, v)) return false;
  }
  return true;
}

unsigned d_S(const Field& f, const Subspace& x, const Subspace& y) {
  return x.k() + y.k() - 2 * intersection_dim(f, x, y);
}

unsigned d_I(const Field& f, const Subspace& x, const Subspace& y) {
  return std::max(x.k(), y.k()) - intersection_dim(f, x, y);
}

unsigned d_G(const Field& f, const Subspace& x, const Subspace& y) {
  check_ambient(x, y);
  if (x.k() != y.k())
    throw Error(Errc::UnequalDimensions, "dim " + std::to_string(x.k()) + " vs " + std::to_string(y.k()));
  return x.k() - intersection_dim(f, x, y);
}

std::string metric_name(Metric m) {
  switch (m) {
    case Metric::Subspace: return "subspace";
    case Metric::Injection: return "injection";
    case Metric::Grassmannian: return "grassmannian";
  }
  return "?";
}

Metric parse_metric(std::string_view s) {
  if (s == "subspace") return Metric::Subspace;
  if (s == "injection") return Metric::Injection;
  if (s == "grassmannian") return Metric::Grassmannian;
  throw Error(Errc::ParseError, "unknown metric '" + std::string(s) + "'");
}

unsigned distance(const Field& f, Metric m, const Subspace& x, const Subspace& y) {
  switch (m) {
    case Metric::Subspace: return d_S(f, x, y);
    case Metric::Injection: return d_I(f, x, y);
    case Metric::Grassmannian: return d_G(f, x, y);
  }
  return 0;
}

BigInt gaussian_binomial(unsigned n, unsigned k, std::uint64_t q) {
  if (k > n) return 0;
  BigInt num = 1, den = 1;
  const BigInt bq = q;
  for (unsigned i = 0; i < k; ++i) {
    num *= ipow(bq, n - i) - 1;
    den *= ipow(bq, i + 1) - 1;
  }
  return num / den;
}

BigInt projective_size(unsigned n, std::uint64_t q) {
  BigInt s = 0;
  for (unsigned k = 0; k <= n; ++k) s += gaussian_binomial(n, k, q);
  return s;
}

std::string identifying_vector(const Subspace& x) {
  std::string v(x.n(), '0');
  for (unsigned p : x.pivots()) v[p] = '1';
  return v;
}

void for_each_with_pivots(const Field& f, unsigned n, const std::vector<unsigned>& piv,
                          const std::function<void(const Subspace&)>& fn) {
  const unsigned k = static_cast<unsigned>(piv.size());
  std::vector<bool> is_piv(n, false);
  for (unsigned p : piv) is_piv[p] = true;
  std::vector<Digit> rows(static_cast<std::size_t>(k) * n, 0);
  std::vector<std::size_t> free;  // row-major positions of the dots
  for (unsigned r = 0; r < k; ++r) {
    rows[static_cast<std::size_t>(r) * n + piv[r]] = 1;
    for (unsigned c = piv[r] + 1; c < n; ++c)
      if (!is_piv[c]) free.push_back(static_cast<std::size_t>(r) * n + c);
  }
  const Digit q = f.q();
  while (true) {
    fn(Subspace::from_rref(n, k, rows));
    bool carry = true;
    for (std::size_t i = free.size(); carry && i-- > 0;) {
      if (++rows[free[i]] < q) carry = false;
      else rows[free[i]] = 0;
    }
    if (carry) return;
  }
}

void for_each_grassmannian(const Field& f, unsigned n, unsigned k, const std::function<void(const Subspace&)>& fn,
                           std::uint64_t cap) {
  if (k > n) return;
  if (gaussian_binomial(n, k, f.q()) > cap)
    throw Error(Errc::CapExceeded, "[" + std::to_string(n) + "," + std::to_string(k) + "]_" + std::to_string(f.q()) +
                                       " exceeds enumeration cap " + std::to_string(cap));
  std::vector<unsigned> piv(k);
  for (unsigned i = 0; i < k; ++i) piv[i] = i;
  while (true) {
    for_each_with_pivots(f, n, piv, fn);
    // next k-subset in colex order
    unsigned i = 0;
    while (i < k && ((i + 1 < k) ? piv[i] + 1 == piv[i + 1] : piv[i] + 1 == n)) ++i;
    if (i == k) return;
    ++piv[i];
    for (unsigned j = 0; j < i; ++j) piv[j] = j;
  }
}

std::vector<Subspace> enumerate_grassmannian(const Field& f, unsigned n, unsigned k, std::uint64_t cap) {
  std::vector<Subspace> out;
  for_each_grassmannian(f, n, k, [&](const Subspace& s) { out.push_back(s); }, cap);
  return out;
}

void for_each_projective(const Field& f, unsigned n, const std::function<void(const Subspace&)>& fn,
                         std::uint64_t cap) {
  if (projective_size(n, f.q()) > cap)
    throw Error(Errc::CapExceeded, "|P_" + std::to_string(f.q()) + "(" + std::to_string(n) +
                                       ")| exceeds enumeration cap " + std::to_string(cap));
  for (unsigned k = 0; k <= n; ++k) for_each_grassmannian(f, n, k, fn, cap);
}

std::vector<Subspace> enumerate_projective(const Field& f, unsigned n, std::uint64_t cap) {
  std::vector<Subspace> out;
  for_each_projective(f, n, [&](const Subspace& s) { out.push_back(s); }, cap);
  return out;
}

// SubspaceCode

SubspaceCode::SubspaceCode(FieldPtr field, unsigned n, Metric metric)
    : field_(std::move(field)), n_(n), metric_(metric) {}

bool SubspaceCode::insert(const Subspace& x) {
  if (x.n() != n_)
    throw Error(Errc::AmbientMismatch, "word in F^" + std::to_string(x.n()) + " added to code in F^" + std::to_string(n_));
  auto it = std::lower_bound(words_.begin(), words_.end(), x);
  if (it != words_.end() && *it == x) return false;
  words_.insert(it, x);
  return true;
}

bool SubspaceCode::has(const Subspace& x) const {
  return std::binary_search(words_.begin(), words_.end(), x);
}

std::optional<unsigned> SubspaceCode::constant_dimension() const {
  if (words_.empty()) return std::nullopt;
  const unsigned k = words_.front().k();
  for (const auto& w : words_)
    if (w.k() != k) return std::nullopt;
  return k;
}

unsigned code_min_distance(const SubspaceCode& c, Metric m) {
  const auto& w = c.words();
  if (w.size() < 2) throw Error(Errc::TooFewWords, "minimum distance needs at least two words");
  if (m == Metric::Grassmannian && !c.constant_dimension())
    throw Error(Errc::UnequalDimensions, "Grassmannian distance needs a constant-dimension code");
  const Field& f = c.f();
  std::mutex mu;
  unsigned best = ~0u;
  parallel_chunks(w.size(), [&](unsigned, std::size_t b, std::size_t e) {
    unsigned local = ~0u;
    for (std::size_t i = b; i < e; ++i)
      for (std::size_t j = i + 1; j < w.size(); ++j) local = std::min(local, distance(f, m, w[i], w[j]));
    std::lock_guard lock(mu);
    best = std::min(best, local);
  });
  return best;
}

unsigned code_min_distance(const SubspaceCode& c) { return code_min_distance(c, c.metric()); }

SubspaceCode code_dual(const SubspaceCode& c) {
  SubspaceCode out(c.field(), c.n(), c.metric());
  for (const auto& w : c.words()) out.insert(dual(c.f(), w));
  out.claimed_distance = c.claimed_distance;
  return out;
}

}  // namespace qspace

std::size_t std::hash<qspace::Subspace>::operator()(const qspace::Subspace& s) const noexcept {
  std::size_t h = s.n() * 1315423911u + s.k();
  for (auto d : s.data()) h = h * 1099511628211ull ^ (d + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
  return h;
}
