#include "qspace/projections.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "qspace/design_verify.hpp"
#include "qspace/error.hpp"
#include "qspace/parallel.hpp"

namespace qspace {

namespace {

void check_grassmannian_cap(unsigned n, unsigned t, std::uint64_t q, std::uint64_t cap) {
  if (gaussian_binomial(n, t, q) > cap)
    throw Error(Errc::CapExceeded, "[" + std::to_string(n) + "," + std::to_string(t) + "]_" + std::to_string(q) +
                                       " exceeds the enumeration cap " + std::to_string(cap));
}

// Calls fn on every t-subspace of K.
void for_each_sub(const Field& f, const Subspace& kk, unsigned t, const std::function<void(const Subspace&)>& fn) {
  const Matrix basis = kk.matrix();
  for_each_grassmannian(f, kk.k(), t, [&](const Subspace& c) {
    fn(Subspace::row_space(f, mat_mul(f, c.matrix(), basis)));
  });
}

}  // namespace

Subspace project(const Field& f, const Subspace& z, unsigned rho) {
  if (rho > z.n()) throw Error(Errc::BadParams, "rho exceeds the ambient dimension");
  Matrix m(z.k(), rho);
  for (unsigned r = 0; r < z.k(); ++r)
    for (unsigned c = 0; c < rho; ++c) m.at(r, c) = z.at(r, c);
  return Subspace::row_space(f, m);
}

BigInt delta_count(const Field& f, const Subspace& x, unsigned n, unsigned t, std::uint64_t cap) {
  const unsigned rho = x.n();
  if (rho < 1 || rho > n || x.k() > std::min(rho, t)) throw Error(Errc::BadParams, "needs dim X <= min(rho, t), rho <= n");
  check_grassmannian_cap(n, t, f.q(), cap);
  BigInt count = 0;
  for_each_grassmannian(f, n, t, [&](const Subspace& s) {
    if (project(f, s, rho) == x) ++count;
  }, cap);
  return count;
}

std::optional<Subspace> canonical_lift(const Field& f, const Subspace& y, unsigned n, unsigned k) {
  const unsigned rho = y.n(), j = y.k();
  if (j > k || rho > n) throw Error(Errc::BadParams, "Y does not fit a k-subspace of F_q^n");
  if (k - j > n - rho) return std::nullopt;
  std::vector<Vec> rows;
  for (unsigned r = 0; r < j; ++r) {
    Vec v(n, 0);
    for (unsigned c = 0; c < rho; ++c) v[c] = y.at(r, c);
    rows.push_back(std::move(v));
  }
  for (unsigned i = 0; i < k - j; ++i) {
    Vec v(n, 0);
    v[rho + i] = 1;
    rows.push_back(std::move(v));
  }
  return span(f, n, rows);
}

BigInt gamma_count_in(const Field& f, const Subspace& k_rep, const Subspace& x, unsigned t) {
  const unsigned rho = x.n();
  if (x.k() > t || t > k_rep.k() || rho > k_rep.n()) throw Error(Errc::BadParams, "needs dim X <= t <= dim K");
  BigInt count = 0;
  for_each_sub(f, k_rep, t, [&](const Subspace& s) {
    if (project(f, s, rho) == x) ++count;
  });
  return count;
}

BigInt gamma_count(const Field& f, const Subspace& x, const Subspace& y, unsigned n, unsigned k, unsigned t) {
  if (x.n() != y.n()) throw Error(Errc::AmbientMismatch, "X and Y live in different spaces");
  if (x.k() > y.k()) throw Error(Errc::BadParams, "needs dim X <= dim Y");
  const auto rep = canonical_lift(f, y, n, k);
  if (!rep) return 0;
  return gamma_count_in(f, *rep, x, t);
}

std::optional<std::size_t> EquationSystem::variable_index(const Subspace& y) const {
  auto it = std::lower_bound(variables.begin(), variables.end(), y);
  if (it == variables.end() || *it != y) return std::nullopt;
  return static_cast<std::size_t>(it - variables.begin());
}

bool EquationSystem::satisfied_by(const std::vector<BigInt>& a) const {
  if (a.size() != variables.size()) return false;
  for (std::size_t v = 0; v < a.size(); ++v)
    if (a[v] < 0 || (fixed_zero[v] && a[v] != 0)) return false;
  for (const auto& e : equations) {
    BigInt s = 0;
    for (const auto& [v, c] : e.terms) s += c * a[v];
    if (s != e.delta) return false;
  }
  return true;
}

EquationSystem build_system(FieldPtr field, unsigned n, unsigned k, unsigned t, unsigned rho, std::uint64_t cap) {
  if (rho < 1 || rho > n) throw Error(Errc::BadParams, "needs 1 <= rho <= n");
  if (!(t < k && k < n)) throw Error(Errc::BadParams, "needs t < k < n");
  const Field& f = *field;
  check_grassmannian_cap(n, t, f.q(), cap);

  EquationSystem sys;
  sys.field = field;
  sys.n = n;
  sys.k = k;
  sys.t = t;
  sys.rho = rho;
  std::vector<Subspace> subjects;
  for_each_projective(f, rho, [&](const Subspace& s) {
    if (s.k() <= std::min(rho, k)) sys.variables.push_back(s);
    if (s.k() <= std::min(rho, t)) subjects.push_back(s);
  }, cap);

  // delta_X: one pass over G_q(n, t).
  std::unordered_map<Subspace, BigInt> delta;
  for_each_grassmannian(f, n, t, [&](const Subspace& s) { ++delta[project(f, s, rho)]; }, cap);

  // Gamma_{X,Y}: t-subspaces of each canonical lift, bucketed by projection.
  std::vector<std::unordered_map<Subspace, BigInt>> gamma(sys.variables.size());
  sys.fixed_zero.assign(sys.variables.size(), false);
  parallel_chunks(sys.variables.size(), [&](unsigned, std::size_t b, std::size_t e) {
    for (std::size_t v = b; v < e; ++v) {
      const auto rep = canonical_lift(f, sys.variables[v], n, k);
      if (!rep) {
        sys.fixed_zero[v] = true;
        continue;
      }
      for_each_sub(f, *rep, t, [&](const Subspace& s) { ++gamma[v][project(f, s, rho)]; });
    }
  });

  std::unordered_map<Subspace, std::size_t> subject_index;
  for (std::size_t i = 0; i < subjects.size(); ++i) subject_index.emplace(subjects[i], i);
  sys.equations.resize(subjects.size());
  for (std::size_t i = 0; i < subjects.size(); ++i) {
    sys.equations[i].subject = subjects[i];
    auto it = delta.find(subjects[i]);
    sys.equations[i].delta = it == delta.end() ? BigInt(0) : it->second;
  }
  for (std::size_t v = 0; v < sys.variables.size(); ++v)
    for (const auto& [x, g] : gamma[v]) sys.equations[subject_index.at(x)].terms.emplace_back(v, g);
  for (auto& e : sys.equations) std::sort(e.terms.begin(), e.terms.end());
  return sys;
}

std::string solve_tag_name(SolveTag t) {
  switch (t) {
    case SolveTag::Infeasible: return "Infeasible";
    case SolveTag::Unique: return "Unique";
    case SolveTag::Multiple: return "Multiple";
    case SolveTag::CapReached: return "CapReached";
  }
  return "Infeasible";
}

namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt d = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
  return d;
}
BigInt ceil_div(const BigInt& a, const BigInt& b) { return -floor_div(-a, b); }

struct Interval {
  BigInt lo = 0;
  std::optional<BigInt> hi;  // nullopt = unbounded
};

// Tightens bounds with each equation sum c_v x_v = delta, all c_v > 0.
// Returns false on an empty interval.
bool propagate(const EquationSystem& sys, std::vector<Interval>& iv) {
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& e : sys.equations) {
      BigInt lo_sum = 0, hi_sum = 0;
      std::size_t unbounded = 0;
      for (const auto& [v, c] : e.terms) {
        lo_sum += c * iv[v].lo;
        if (iv[v].hi) hi_sum += c * *iv[v].hi;
        else ++unbounded;
      }
      if (lo_sum > e.delta) return false;
      if (unbounded == 0 && hi_sum < e.delta) return false;
      for (const auto& [v, c] : e.terms) {
        const BigInt others_lo = lo_sum - c * iv[v].lo;
        const std::optional<BigInt> old_hi = iv[v].hi;
        const BigInt hi = floor_div(e.delta - others_lo, c);
        if (!iv[v].hi || hi < *iv[v].hi) {
          iv[v].hi = hi;
          changed = true;
        }
        if (unbounded == 0) {
          const BigInt others_hi = hi_sum - c * *old_hi;
          const BigInt lo = ceil_div(e.delta - others_hi, c);
          if (lo > iv[v].lo) {
            iv[v].lo = lo;
            changed = true;
          }
        }
        if (iv[v].hi && *iv[v].hi < iv[v].lo) return false;
      }
    }
  }
  return true;
}

class Search {
 public:
  Search(const EquationSystem& sys, const SolveOptions& opt, SolveOutcome& out) : sys_(sys), opt_(opt), out_(out) {}

  bool unbounded() const { return unbounded_; }

  void run(std::vector<Interval> iv) {
    const std::size_t nv = sys_.variables.size();
    std::vector<std::size_t> unknown;
    for (std::size_t v = 0; v < nv; ++v) {
      if (!iv[v].hi) {
        out_.note = "variable " + std::to_string(v) + " is unconstrained";
        unbounded_ = true;
        return;
      }
      if (*iv[v].hi != iv[v].lo) unknown.push_back(v);
    }
    // Wide domains become pivots, so branching happens on narrow ones.
    std::stable_sort(unknown.begin(), unknown.end(), [&](std::size_t x, std::size_t y) {
      return *iv[x].hi - iv[x].lo > *iv[y].hi - iv[y].lo;
    });
    std::vector<std::size_t> col_of(nv, SIZE_MAX);
    for (std::size_t i = 0; i < unknown.size(); ++i) col_of[unknown[i]] = i;

    const std::size_t ncols = unknown.size();
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> rhs;
    for (const auto& e : sys_.equations) {
      std::vector<Rational> row(ncols, 0);
      BigInt b = e.delta;
      for (const auto& [v, c] : e.terms) {
        if (col_of[v] == SIZE_MAX) b -= c * iv[v].lo;
        else row[col_of[v]] = c;
      }
      a.push_back(std::move(row));
      rhs.emplace_back(b);
    }
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < a.size(); ++c) {
      std::size_t p = r;
      while (p < a.size() && a[p][c] == 0) ++p;
      if (p == a.size()) continue;
      std::swap(a[p], a[r]);
      std::swap(rhs[p], rhs[r]);
      const Rational inv = 1 / a[r][c];
      for (std::size_t j = c; j < ncols; ++j) a[r][j] *= inv;
      rhs[r] *= inv;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (i == r || a[i][c] == 0) continue;
        const Rational m = a[i][c];
        for (std::size_t j = c; j < ncols; ++j)
          if (a[r][j] != 0) a[i][j] -= m * a[r][j];
        rhs[i] -= m * rhs[r];
      }
      pivot_col.push_back(c);
      ++r;
    }
    for (std::size_t i = r; i < a.size(); ++i)
      if (rhs[i] != 0) {
        out_.note = "linear system inconsistent";
        return;
      }
    std::vector<bool> is_pivot(ncols, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    for (std::size_t c = 0; c < ncols; ++c)
      if (!is_pivot[c]) free_.push_back(unknown[c]);

    // Integer rows: den * x_pivot = beta - sum coef * x_free.
    for (std::size_t i = 0; i < r; ++i) {
      BigInt l = denominator(rhs[i]);
      for (std::size_t c = 0; c < ncols; ++c)
        if (!is_pivot[c] && a[i][c] != 0) l = boost::multiprecision::lcm(l, BigInt(denominator(a[i][c])));
      Row row;
      row.pivot = unknown[pivot_col[i]];
      row.den = l;
      row.beta = BigInt(numerator(Rational(rhs[i] * l)));
      for (std::size_t c = 0; c < ncols; ++c)
        if (!is_pivot[c] && a[i][c] != 0) row.terms.emplace_back(unknown[c], BigInt(numerator(Rational(a[i][c] * l))));
      rows_.push_back(std::move(row));
    }
    dfs(std::move(iv));
  }

 private:
  struct Row {
    std::size_t pivot = 0;
    BigInt den, beta;
    std::vector<std::pair<std::size_t, BigInt>> terms;
  };

  // Narrows pivot intervals from the eliminated rows; false when one empties.
  bool tighten_rows(std::vector<Interval>& iv, bool& changed) const {
    for (const auto& row : rows_) {
      BigInt mn = row.beta, mx = row.beta;
      for (const auto& [v, c] : row.terms) {
        const BigInt x1 = -c * iv[v].lo, x2 = -c * *iv[v].hi;
        mn += std::min(x1, x2);
        mx += std::max(x1, x2);
      }
      auto& b = iv[row.pivot];
      const BigInt lo = ceil_div(mn, row.den), hi = floor_div(mx, row.den);
      if (lo > b.lo) {
        b.lo = lo;
        changed = true;
      }
      if (hi < *b.hi) {
        b.hi = hi;
        changed = true;
      }
      if (*b.hi < b.lo) return false;
    }
    return true;
  }

  bool stop() const { return out_.count >= opt_.solution_cap || out_.nodes >= opt_.node_cap; }

  void dfs(std::vector<Interval> iv) {
    if (stop()) return;
    for (bool changed = true; changed;) {
      changed = false;
      if (!propagate(sys_, iv) || !tighten_rows(iv, changed)) return;
    }
    std::optional<std::size_t> branch;
    for (auto v : free_)
      if (*iv[v].hi != iv[v].lo && (!branch || *iv[v].hi - iv[v].lo < *iv[*branch].hi - iv[*branch].lo)) branch = v;
    if (!branch) {
      std::vector<BigInt> sol(iv.size());
      for (std::size_t v = 0; v < iv.size(); ++v) sol[v] = iv[v].lo;
      for (const auto& row : rows_) {
        BigInt num = row.beta;
        for (const auto& [v, c] : row.terms) num -= c * sol[v];
        if (num % row.den != 0) return;
        sol[row.pivot] = num / row.den;
      }
      if (!sys_.satisfied_by(sol)) return;
      ++out_.count;
      if (out_.solutions.size() < opt_.samples) out_.solutions.push_back(std::move(sol));
      return;
    }
    const std::size_t v = *branch;
    for (BigInt x = iv[v].lo, hi = *iv[v].hi; x <= hi; ++x) {
      if (stop()) return;
      ++out_.nodes;
      auto next = iv;
      next[v].lo = x;
      next[v].hi = x;
      dfs(std::move(next));
    }
  }

  const EquationSystem& sys_;
  const SolveOptions& opt_;
  SolveOutcome& out_;
  std::vector<Row> rows_;
  std::vector<std::size_t> free_;
  bool unbounded_ = false;
};

}  // namespace

SolveOutcome solve(const EquationSystem& sys, const SolveOptions& opt) {
  const std::size_t nv = sys.variables.size();
  std::vector<Interval> iv(nv);
  for (std::size_t v = 0; v < nv; ++v)
    if (sys.fixed_zero[v]) iv[v].hi = BigInt(0);
  for (const auto& [v, val] : opt.pins) {
    if (v >= nv) throw Error(Errc::InconsistentPins, "pin index " + std::to_string(v) + " out of range");
    if (val < 0) throw Error(Errc::InconsistentPins, "pin value for variable " + std::to_string(v) + " is negative");
    if (sys.fixed_zero[v] && val != 0)
      throw Error(Errc::InconsistentPins, "variable " + std::to_string(v) + " has no lift and must be 0");
    iv[v].lo = val;
    iv[v].hi = val;
  }

  SolveOutcome out;
  if (!propagate(sys, iv)) {
    out.tag = SolveTag::Infeasible;
    out.note = "bounds propagation";
    return out;
  }
  Search search(sys, opt, out);
  search.run(std::move(iv));
  if (search.unbounded()) {
    out.tag = SolveTag::CapReached;
    out.count_capped = true;
    return out;
  }
  out.count_capped = out.nodes >= opt.node_cap || out.count >= opt.solution_cap;
  if (!out.count_capped)
    out.tag = out.count == 0 ? SolveTag::Infeasible : out.count == 1 ? SolveTag::Unique : SolveTag::Multiple;
  else
    out.tag = out.count >= 2 ? SolveTag::Multiple : SolveTag::CapReached;
  return out;
}

FeasibilityReport feasibility_report(FieldPtr field, unsigned n, unsigned k, unsigned t, unsigned rho_lo,
                                     unsigned rho_hi, bool allow_large, std::uint64_t node_cap) {
  if (rho_lo < 1 || rho_lo > rho_hi || rho_hi > n) throw Error(Errc::BadParams, "needs 1 <= rho_lo <= rho_hi <= n");
  FeasibilityReport rep;
  rep.divisibility_ok = steiner_divisibility(t, k, n, field->q()).pass;
  if (!rep.divisibility_ok) {
    rep.verdict = "excluded by divisibility";
    return rep;
  }
  rep.verdict = "not excluded";
  for (unsigned rho = rho_lo; rho <= rho_hi; ++rho) {
    RhoReport rr;
    rr.rho = rho;
    if (rho > 4 && !allow_large) {
      rr.status = "skipped: rho > 4 needs the large-budget flag";
      rep.per_rho.push_back(std::move(rr));
      continue;
    }
    const EquationSystem sys = build_system(field, n, k, t, rho);
    rr.variables = sys.variables.size();
    rr.equations = sys.equations.size();
    SolveOptions opt;
    opt.node_cap = node_cap;
    opt.solution_cap = 2;
    opt.samples = 1;
    rr.outcome = solve(sys, opt);
    switch (rr.outcome->tag) {
      case SolveTag::Infeasible:
        rr.status = "excluded";
        if (rep.verdict == "not excluded") rep.verdict = "excluded at rho=" + std::to_string(rho);
        break;
      case SolveTag::CapReached:
        rr.status = rr.outcome->count ? "solution found, search capped" : "undecided, search capped";
        break;
      default:
        rr.status = "solutions found";
    }
    rep.per_rho.push_back(std::move(rr));
  }
  return rep;
}

}  // namespace qspace
