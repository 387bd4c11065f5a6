#include "qspace/rank_metric.hpp"

#include <algorithm>
#include <charconv>
#include <random>
#include <sstream>

namespace qspace {

// FerrersDiagram

FerrersDiagram::FerrersDiagram(std::vector<unsigned> row_lengths) {
  while (!row_lengths.empty() && row_lengths.back() == 0) row_lengths.pop_back();
  for (std::size_t i = 1; i < row_lengths.size(); ++i)
    if (row_lengths[i] > row_lengths[i - 1] || row_lengths[i] == 0)
      throw Error(Errc::BadParams, "Ferrers row lengths must be positive and nonincreasing");
  rows_ = std::move(row_lengths);
}

FerrersDiagram FerrersDiagram::rectangle(unsigned m, unsigned eta) {
  if (eta == 0) return FerrersDiagram{};
  return FerrersDiagram(std::vector<unsigned>(m, eta));
}

FerrersDiagram FerrersDiagram::parse(std::string_view text) {
  std::vector<unsigned> rows;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto tok = text.substr(0, comma);
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty())
      throw Error(Errc::ParseError, "bad Ferrers row length '" + std::string(tok) + "'");
    rows.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return FerrersDiagram(std::move(rows));
}

unsigned FerrersDiagram::dots() const noexcept {
  unsigned s = 0;
  for (unsigned r : rows_) s += r;
  return s;
}

std::string FerrersDiagram::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < rows_.size(); ++i) s += (i ? "," : "") + std::to_string(rows_[i]);
  return s;
}

// RankCode

BigInt RankCode::size() const { return ipow(BigInt(field->q()), dim()); }

std::vector<Matrix> RankCode::codewords(std::uint64_t cap) const {
  const Field& f = *field;
  if (size() > cap) throw Error(Errc::CapExceeded, "rank code has more than " + std::to_string(cap) + " codewords");
  const std::uint64_t total = static_cast<std::uint64_t>(size());
  std::vector<Matrix> out;
  out.reserve(total);
  std::vector<Digit> coef(dim(), 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Matrix m(rows, cols);
    for (unsigned b = 0; b < dim(); ++b) {
      if (!coef[b]) continue;
      for (std::size_t i = 0; i < m.data.size(); ++i)
        if (basis[b].data[i]) m.data[i] = f.add(m.data[i], f.mul(coef[b], basis[b].data[i]));
    }
    out.push_back(std::move(m));
    for (unsigned b = dim(); b-- > 0;) {
      if (++coef[b] < f.q()) break;
      coef[b] = 0;
    }
  }
  return out;
}

unsigned d_R(const Field& f, const Matrix& a, const Matrix& b) { return rank(f, mat_sub(f, a, b)); }

unsigned singleton_rank(unsigned k, unsigned l, unsigned delta) {
  if (delta < 1 || delta > std::min(k, l))
    throw Error(Errc::BadDelta, "delta " + std::to_string(delta) + " outside [1, " + std::to_string(std::min(k, l)) + "]");
  return std::min(k * (l - delta + 1), l * (k - delta + 1));
}

namespace {

std::vector<Matrix> unit_matrices(unsigned rows, unsigned cols, const FerrersDiagram* d) {
  std::vector<Matrix> out;
  for (unsigned i = 0; i < rows; ++i)
    for (unsigned j = 0; j < cols; ++j) {
      if (d && !d->has_dot(i, j)) continue;
      Matrix m(rows, cols);
      m.at(i, j) = 1;
      out.push_back(std::move(m));
    }
  return out;
}

// Basis of the subcode of span(basis) vanishing off the diagram.
std::vector<Matrix> support_subcode(const Field& f, const std::vector<Matrix>& basis, const FerrersDiagram& d) {
  if (basis.empty()) return {};
  const unsigned rows = basis.front().rows, cols = basis.front().cols;
  std::vector<Vec> constraints;
  for (unsigned i = 0; i < rows; ++i)
    for (unsigned j = 0; j < cols; ++j) {
      if (d.has_dot(i, j)) continue;
      Vec c(basis.size());
      for (std::size_t b = 0; b < basis.size(); ++b) c[b] = basis[b].at(i, j);
      constraints.push_back(std::move(c));
    }
  const auto ns = null_space(f, Matrix::from_rows(static_cast<unsigned>(basis.size()), constraints));
  std::vector<Matrix> out;
  for (const auto& c : ns) {
    Matrix m(rows, cols);
    for (std::size_t b = 0; b < basis.size(); ++b)
      if (c[b]) m = mat_add(f, m, mat_scale(f, c[b], basis[b]));
    out.push_back(std::move(m));
  }
  return out;
}

// Rank >= 2 construction: the rows (or columns) of A, read as elements of
// GF(q^L), must satisfy sum_r beta_r a_r = 0 with F_q-independent beta_r and
// beta = 1 on the full line. A rank-one matrix u v^T maps to v * sum u_r beta_r,
// which is nonzero.
std::vector<Matrix> parity_code(const FieldPtr& base, const FerrersDiagram& d) {
  const Field& f = *base;
  const unsigned m = d.height(), eta = d.width();
  const bool by_rows = m <= eta;
  const unsigned len = by_rows ? eta : m;
  const Extension ext = Extension::over(base, len);
  const Field& big = *ext.big();
  std::vector<std::pair<unsigned, unsigned>> dots;
  for (unsigned i = 0; i < m; ++i)
    for (unsigned j = 0; j < eta; ++j)
      if (d.has_dot(i, j)) dots.emplace_back(i, j);
  Matrix cons(len, static_cast<unsigned>(dots.size()));
  for (unsigned v = 0; v < dots.size(); ++v) {
    const auto [i, j] = dots[v];
    const std::int64_t e = by_rows ? static_cast<std::int64_t>(i + j) : static_cast<std::int64_t>(i + eta - 1 - j);
    const auto coords = ext.elem_to_vec(big.primitive_power(e));
    for (unsigned r = 0; r < len; ++r) cons.at(r, v) = coords[r];
  }
  std::vector<Matrix> out;
  for (const auto& c : null_space(f, cons)) {
    Matrix a(m, eta);
    for (unsigned v = 0; v < dots.size(); ++v) a.at(dots[v].first, dots[v].second) = c[v];
    out.push_back(std::move(a));
  }
  return out;
}

Matrix random_invertible(const Field& f, unsigned n, std::mt19937_64& rng) {
  while (true) {
    Matrix m(n, n);
    for (auto& v : m.data) v = static_cast<Digit>(rng() % f.q());
    if (rank(f, m) == n) return m;
  }
}

}  // namespace

RankCode gabidulin(FieldPtr base, unsigned k, unsigned l, unsigned delta) {
  singleton_rank(k, l, delta);  // validates delta
  RankCode code;
  code.field = base;
  code.rows = k;
  code.cols = l;
  code.delta = delta;
  if (delta == 1) {
    code.basis = unit_matrices(k, l, nullptr);
    return code;
  }
  const unsigned big_n = std::max(k, l), small = std::min(k, l);
  const unsigned kappa = small - delta + 1;
  const Extension ext = Extension::over(base, big_n);
  const Field& big = *ext.big();
  const std::int64_t q = base->q();
  std::int64_t qi = 1;
  for (unsigned i = 0; i < kappa; ++i, qi *= q) {
    for (unsigned t = 0; t < big_n; ++t) {
      // codeword of c x^{q^i} with c = alpha^t, evaluated at alpha^0..alpha^{s-1}
      Matrix m(big_n, small);
      for (unsigned j = 0; j < small; ++j) {
        const Digit g = big.primitive_power(j);
        const Digit val = big.mul(big.primitive_power(t), big.pow(g, qi));
        const auto col = ext.elem_to_vec(val);
        for (unsigned r = 0; r < big_n; ++r) m.at(r, j) = col[r];
      }
      code.basis.push_back(k == big_n ? std::move(m) : transpose(m));
    }
  }
  return code;
}

unsigned rank_code_min_distance(const RankCode& c, std::uint64_t cap) {
  const auto words = c.codewords(cap);
  unsigned best = std::min(c.rows, c.cols) + 1;
  for (std::size_t i = 1; i < words.size(); ++i) best = std::min(best, rank(*c.field, words[i]));
  return words.size() <= 1 ? 0 : best;
}

bool is_mrd(const RankCode& c, std::uint64_t cap) {
  if (c.delta < 1 || c.delta > std::min(c.rows, c.cols)) return false;
  if (c.dim() != singleton_rank(c.rows, c.cols, c.delta)) return false;
  return rank_code_min_distance(c, cap) == c.delta;
}

Subspace lift(const Field& f, const Matrix& a) {
  (void)f;
  const unsigned k = a.rows, n = a.rows + a.cols;
  std::vector<Digit> rows(static_cast<std::size_t>(k) * n, 0);
  for (unsigned i = 0; i < k; ++i) {
    rows[static_cast<std::size_t>(i) * n + i] = 1;
    for (unsigned j = 0; j < a.cols; ++j) rows[static_cast<std::size_t>(i) * n + k + j] = a.at(i, j);
  }
  return Subspace::from_rref(n, k, std::move(rows));
}

SubspaceCode lift_code(const RankCode& c) {
  SubspaceCode out(c.field, c.rows + c.cols, Metric::Grassmannian);
  for (const auto& w : c.codewords()) out.insert(lift(*c.field, w));
  out.claimed_distance = c.delta;
  return out;
}

FerrersDiagram ferrers_of(const std::string& v) {
  const unsigned n = static_cast<unsigned>(v.size());
  std::vector<unsigned> piv;
  for (unsigned i = 0; i < n; ++i) {
    if (v[i] == '1') piv.push_back(i);
    else if (v[i] != '0') throw Error(Errc::ParseError, "identifying vector must be binary: " + v);
  }
  const unsigned k = static_cast<unsigned>(piv.size());
  if (k == 0) throw Error(Errc::ZeroWeight, "identifying vector of weight 0 has no echelon Ferrers form");
  std::vector<unsigned> rows;
  for (unsigned j = 0; j < k; ++j) rows.push_back(n - piv[j] - k + j);
  return FerrersDiagram(std::move(rows));
}

unsigned ferrers_bound(const FerrersDiagram& d, unsigned delta) {
  if (delta < 1) throw Error(Errc::BadDelta, "delta must be at least 1");
  unsigned best = d.dots();
  for (unsigned i = 0; i < delta; ++i) {
    const unsigned cut = delta - 1 - i;
    unsigned nu = 0;
    for (unsigned j = i; j < d.height(); ++j) nu += d.rows()[j] > cut ? d.rows()[j] - cut : 0;
    best = std::min(best, nu);
  }
  return best;
}

FdrmResult fdrm_construct(FieldPtr base, const FerrersDiagram& d, unsigned delta, std::uint64_t seed,
                          unsigned budget) {
  if (delta < 1) throw Error(Errc::BadDelta, "delta must be at least 1");
  const Field& f = *base;
  FdrmResult res;
  res.bound = ferrers_bound(d, delta);
  res.code.field = base;
  res.code.rows = d.height();
  res.code.cols = d.width();
  res.code.delta = delta;
  res.code.diagram = d;
  if (d.empty() || res.bound == 0) {
    res.method = "zero";
    return res;
  }
  if (delta == 1) {
    res.code.basis = unit_matrices(d.height(), d.width(), &d);
    res.method = "unit";
    return res;
  }
  const RankCode mrd = gabidulin(base, d.height(), d.width(), delta);
  res.code.basis = support_subcode(f, mrd.basis, d);
  res.method = "subcode";
  if (res.code.dim() >= res.bound) return res;

  if (delta == 2) {
    res.code.basis = parity_code(base, d);
    res.method = "parity";
    return res;
  }
  std::mt19937_64 rng(seed);
  for (unsigned attempt = 0; attempt < budget && res.code.dim() < res.bound; ++attempt) {
    const Matrix p = random_invertible(f, d.height(), rng);
    const Matrix q = random_invertible(f, d.width(), rng);
    std::vector<Matrix> moved;
    moved.reserve(mrd.basis.size());
    for (const auto& b : mrd.basis) moved.push_back(mat_mul(f, mat_mul(f, p, b), q));
    auto sub = support_subcode(f, moved, d);
    if (sub.size() > res.code.dim()) {
      res.code.basis = std::move(sub);
      res.method = "transformed-subcode";
    }
  }
  return res;
}

}  // namespace qspace
