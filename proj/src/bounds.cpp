#include "qspace/bounds.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

#include "literature_data.hpp"
#include "qspace/code_builder.hpp"
#include "qspace/projective.hpp"
#include "qspace/rank_metric.hpp"

namespace qspace {

namespace {

BigInt qp(std::uint64_t q, unsigned e) { return ipow(BigInt(q), e); }

BigInt ceil_div(const BigInt& a, const BigInt& b) { return (a + b - 1) / b; }

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt d = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
  return d;
}

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::BadParams, what); }

void check_q(std::uint64_t q) {
  if (!is_prime_power(q)) bad("q = " + std::to_string(q) + " is not a prime power");
}

std::string triple(unsigned n, unsigned d, unsigned k) {
  return "(" + std::to_string(n) + "," + std::to_string(d) + "," + std::to_string(k) + ")";
}

}  // namespace

std::string kind_name(BoundKind k) {
  switch (k) {
    case BoundKind::Lower: return "lower";
    case BoundKind::Upper: return "upper";
    case BoundKind::Exact: return "exact";
    case BoundKind::Unknown: return "unknown";
  }
  return "unknown";
}

bool is_prime_power(std::uint64_t q) noexcept {
  if (q < 2) return false;
  std::uint64_t p = 2;
  while (p * p <= q && q % p) ++p;
  if (q % p) p = q;
  while (q % p == 0) q /= p;
  return q == 1;
}

// ---- A_q(n, delta, k) ----

BigInt johnson_step(unsigned n, unsigned delta, unsigned k, std::uint64_t q, const BigInt& inner) {
  check_q(q);
  if (k < 1 || k > n || delta < 1) bad("johnson step needs 1 <= k <= n, delta >= 1");
  return (qp(q, n) - 1) * inner / (qp(q, k) - 1);
}

BigInt iterated_johnson(unsigned n, unsigned delta, unsigned k, std::uint64_t q) {
  check_q(q);
  if (delta < 1 || delta > k || k > n) bad("iterated Johnson needs 1 <= delta <= k <= n, got " + triple(n, delta, k));
  BigInt v = 1;
  for (unsigned i = k - delta + 1; i-- > 0;) v = (qp(q, n - i) - 1) * v / (qp(q, k - i) - 1);
  return v;
}

BigInt packing_upper(unsigned n, unsigned delta, unsigned k, std::uint64_t q) {
  check_q(q);
  if (delta < 1 || delta > k || k > n) bad("packing bound needs 1 <= delta <= k <= n, got " + triple(n, delta, k));
  return gaussian_binomial(n, k - delta + 1, q) / gaussian_binomial(k, k - delta + 1, q);
}

BigInt lifted_mrd_lower(unsigned n, unsigned delta, unsigned k, std::uint64_t q) {
  check_q(q);
  if (k > n) bad("k > n");
  const unsigned kk = std::min(k, n - k);
  if (delta < 1 || delta > kk) bad("lifted MRD needs 1 <= delta <= min(k, n-k), got " + triple(n, delta, k));
  return qp(q, (n - kk) * (kk - delta + 1));
}

BigInt spread_exact(unsigned n, unsigned k, std::uint64_t q) {
  check_q(q);
  if (k < 1 || n % k != 0) throw Error(Errc::NotDivisible, std::to_string(k) + " does not divide " + std::to_string(n));
  return (qp(q, n) - 1) / (qp(q, k) - 1);
}

BigInt partial_spread_upper(unsigned n, unsigned k, std::uint64_t q) {
  check_q(q);
  if (k < 1 || k > n || n % k == 0) bad("partial spread upper bound needs k <= n and k not dividing n");
  return (qp(q, n) - 1) / (qp(q, k) - 1) - 1;
}

BigInt partial_spread_lower(unsigned n, unsigned k, std::uint64_t q) {
  check_q(q);
  if (k < 1 || k > n) bad("partial spread lower bound needs 1 <= k <= n");
  const unsigned r = n % k;
  return (qp(q, n) - qp(q, k) * (qp(q, r) - 1) - 1) / (qp(q, k) - 1);
}

BigInt partial_spread_mod1_exact(unsigned n, unsigned k, std::uint64_t q) {
  check_q(q);
  if (k < 2 || n <= k || n % k != 1) bad("needs k >= 2, n > k and n = 1 mod k");
  return (qp(q, n) - q) / (qp(q, k) - 1) - q + 1;
}

BigInt partial_3spread_binary_exact(unsigned n) {
  if (n < 3 || n == 5) bad("binary 3-spread formula holds for n = 3, 4 and n >= 6");
  const unsigned c = n % 3;
  return (qp(2, n) - qp(2, c)) / 7 - c;
}

BigInt drake_freeman_omega_floor(unsigned k, unsigned c, std::uint64_t q) {
  const BigInt qk = qp(q, k), qc = qp(q, c);
  const BigInt disc = 1 + 4 * qk * (qk - qc);
  const BigInt b = 2 * qk - 2 * qc + 1;
  return floor_div(isqrt(disc) - b, 2);
}

BigInt drake_freeman_upper(unsigned n, unsigned k, std::uint64_t q) {
  check_q(q);
  if (k < 2) bad("needs k >= 2");
  const unsigned l = n / k, c = n % k;
  if (l < 1 || c == 0) bad("needs n = k*l + c with l >= 1 and 0 < c < k");
  BigInt s = 0;
  for (unsigned i = 0; i < l; ++i) s += qp(q, i * k + c);
  return s - drake_freeman_omega_floor(k, c, q) - 1;
}

// ---- A^S_q(n, d) ----

SmallDistanceExact subspace_code_small_distance(unsigned n, std::uint64_t q) {
  check_q(q);
  SmallDistanceExact r;
  r.d1 = projective_size(n, q);
  r.d2 = 0;
  for (unsigned k = 0; k <= n; k += 2) r.d2 += gaussian_binomial(n, k, q);
  return r;
}

BigInt subspace_code_2n_exact(unsigned n) {
  if (n < 1) bad("needs n >= 1");
  return qp(2, n + 1) + 1;
}

Bracket subspace_code_2n_minus1_bracket(unsigned n) {
  if (n < 1) bad("needs n >= 1");
  return {{qp(2, n + 2) + 1, BoundKind::Lower, "punctured-lifted-mrd"},
          {qp(2, n + 2) + 2, BoundKind::Upper, "punctured-lifted-mrd"}};
}

// ---- C_q(n, k, r) ----

BigInt schonheim_step(unsigned n, unsigned k, unsigned r, std::uint64_t q, const BigInt& inner) {
  check_q(q);
  if (r < 1 || r > k || k > n) bad("Schonheim step needs 1 <= r <= k <= n");
  return ceil_div((qp(q, n) - 1) * inner, qp(q, k) - 1);
}

BigInt iterated_schonheim(unsigned n, unsigned k, unsigned r, std::uint64_t q) {
  check_q(q);
  if (r < 1 || r > k || k > n) bad("iterated Schonheim needs 1 <= r <= k <= n");
  BigInt v = 1;
  for (unsigned i = r; i-- > 0;) v = ceil_div((qp(q, n - i) - 1) * v, qp(q, k - i) - 1);
  return v;
}

BigInt covering_lower(unsigned n, unsigned k, unsigned r, std::uint64_t q) {
  check_q(q);
  if (r > k || k > n) bad("covering bound needs r <= k <= n");
  return ceil_div(gaussian_binomial(n, r, q), gaussian_binomial(k, r, q));
}

BigInt de_caen_lower(unsigned n, unsigned k, std::uint64_t q) {
  check_q(q);
  if (k < 1 || k >= n) bad("de Caen bound needs 1 <= k < n");
  const BigInt den = (qp(q, n - k) - 1) * (qp(q, n - k) - 1);
  return ceil_div((qp(q, k) - 1) * (q - 1) * gaussian_binomial(n, k + 1, q), den);
}

BigInt cover_dim1_exact(unsigned n, unsigned k, std::uint64_t q) {
  check_q(q);
  if (k < 1 || k > n) bad("needs 1 <= k <= n");
  return ceil_div(qp(q, n) - 1, qp(q, k) - 1);
}

BigInt cover_hyperplane_exact(unsigned n, unsigned r, std::uint64_t q) {
  check_q(q);
  if (r < 1 || r + 1 > n) bad("needs 1 <= r <= n - 1");
  return (qp(q, r + 1) - 1) / (q - 1);
}

BigInt cover_lines_lower(unsigned s, std::uint64_t q) {
  check_q(q);
  if (s < 2) bad("needs s >= 2");
  return (qp(q, 2 * s + 2) - q * q) / (q * q - 1) + (qp(q, s + 1) - 1) / (q - 1);
}

BigInt cover_lines_upper(unsigned s, unsigned x, std::uint64_t q) {
  check_q(q);
  if (x < 1 || x > s) bad("needs 1 <= x <= s");
  return (qp(q, 2 * s + 2 * x) - qp(q, 2 * x)) / (q * q - 1) +
         (qp(q, x) - 1) / (q - 1) * ((qp(q, s + x) - qp(q, x - 1)) / (q - 1));
}

BigInt covering_upper_step(unsigned n, unsigned k, std::uint64_t q, const BigInt& smaller_k, const BigInt& same_k) {
  check_q(q);
  if (k < 1 || k > n) bad("needs 1 <= k <= n");
  return qp(q, n - k) * smaller_k + same_k;
}

BigInt normal_spread_cover_exact(unsigned v, unsigned m, unsigned delta, std::uint64_t q) {
  (void)delta;
  check_q(q);
  if (v < 2 || m < 2) bad("needs v >= 2 and m >= 2");
  return (qp(q, v * m) - 1) / (qp(q, m) - 1);
}

BigInt covering_monotone_upper(const BigInt& known) { return known; }

BigInt covering_upper_from_packing(unsigned n, unsigned k, unsigned d, std::uint64_t q, const BigInt& a_lower) {
  check_q(q);
  if (d > k || k > n) bad("needs d <= k <= n");
  return a_lower + gaussian_binomial(n, k - d, q) - gaussian_binomial(k, k - d, q) * a_lower;
}

BigInt packing_lower_from_covering(unsigned n, unsigned k, unsigned d, std::uint64_t q, const BigInt& c_upper) {
  check_q(q);
  if (d > k || k > n) bad("needs d <= k <= n");
  const BigInt v = c_upper + gaussian_binomial(n, k - d, q) - gaussian_binomial(k, k - d, q) * c_upper;
  return v < 0 ? BigInt(0) : v;
}

// ---- literature ----

std::vector<LiteratureEntry> parse_literature(std::string_view csv) {
  std::vector<LiteratureEntry> out;
  std::istringstream in{std::string(csv)};
  std::string line;
  unsigned lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#' || line.rfind("quantity,", 0) == 0) continue;
    std::vector<std::string> f;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (f.size() != 8) throw Error(Errc::ParseError, "literature line " + std::to_string(lineno) + ": expected 8 fields");
    LiteratureEntry e;
    try {
      e.quantity = f[0];
      e.q = std::stoull(f[1]);
      e.n = static_cast<unsigned>(std::stoul(f[2]));
      e.d = static_cast<unsigned>(std::stoul(f[3]));
      e.k = f[4].empty() ? 0 : static_cast<unsigned>(std::stoul(f[4]));
      e.value = BigInt(f[5]);
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, "literature line " + std::to_string(lineno) + ": bad number");
    }
    if (f[6] == "lower") e.kind = BoundKind::Lower;
    else if (f[6] == "upper") e.kind = BoundKind::Upper;
    else if (f[6] == "exact") e.kind = BoundKind::Exact;
    else throw Error(Errc::ParseError, "literature line " + std::to_string(lineno) + ": bad kind '" + f[6] + "'");
    e.citation = f[7];
    out.push_back(std::move(e));
  }
  return out;
}

const std::vector<LiteratureEntry>& literature() {
  static const std::vector<LiteratureEntry> entries = parse_literature(kLiteratureCsv);
  return entries;
}

// ---- aggregation ----

namespace {

void add(std::vector<BoundResult>& out, BigInt v, BoundKind kind, std::string src) {
  out.push_back({std::move(v), kind, std::move(src)});
}

// Exact or closed-form results that depend only on (n, delta, k'), delta = k'.
void spread_family(std::vector<BoundResult>& out, unsigned n, unsigned k, std::uint64_t q) {
  if (n % k == 0) {
    add(out, spread_exact(n, k, q), BoundKind::Exact, "spread");
    return;
  }
  if (k >= 2 && n > k && n % k == 1) add(out, partial_spread_mod1_exact(n, k, q), BoundKind::Exact, "partial-spread-mod1");
  if (q == 2 && k == 3 && n >= 6) add(out, partial_3spread_binary_exact(n), BoundKind::Exact, "binary-3-spread");
  add(out, partial_spread_lower(n, k, q), BoundKind::Lower, "partial-spread-lower");
  add(out, partial_spread_upper(n, k, q), BoundKind::Upper, "partial-spread-upper");
  if (k >= 2 && n / k >= 1) add(out, drake_freeman_upper(n, k, q), BoundKind::Upper, "drake-freeman");
}

void literature_for(std::vector<BoundResult>& out, unsigned n, unsigned delta, unsigned k, std::uint64_t q) {
  for (const auto& e : literature())
    if (e.quantity == "A" && e.q == q && e.n == n && e.d == delta && (e.k == k || e.k == n - k))
      add(out, e.value, e.kind, "literature:" + e.citation);
}

BigInt multilevel_lower(unsigned n, unsigned delta, unsigned k, std::uint64_t q) {
  const SkeletonCode sk = skeleton_default(n, k, delta, Metric::Grassmannian);
  BigInt total = 0;
  for (std::size_t i = 0; i < sk.words.size(); ++i) {
    const unsigned bound = ferrers_bound(ferrers_of(sk.words[i]), delta);
    // delta <= 2 constructions attain the Ferrers bound; otherwise only the
    // rectangular first layer is known to.
    if (i == 0 || delta <= 2) total += qp(q, bound);
    else total += 1;
  }
  return total;
}

using Key = std::tuple<unsigned, unsigned, unsigned, std::uint64_t>;

BigInt direct_upper(unsigned n, unsigned delta, unsigned kk, std::uint64_t q);

BigInt recursive_upper(unsigned n, unsigned delta, unsigned k, std::uint64_t q, std::map<Key, BigInt>& memo) {
  const unsigned kk = std::min(k, n - k);
  if (delta > kk) return 1;
  if (delta == 1) return gaussian_binomial(n, kk, q);
  const Key key{n, delta, kk, q};
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  BigInt best = direct_upper(n, delta, kk, q);
  for (unsigned side : {kk, n - kk}) {
    if (side < 1) continue;
    const BigInt inner = recursive_upper(n - 1, delta, side - 1, q, memo);
    best = std::min(best, (qp(q, n) - 1) * inner / (qp(q, side) - 1));
  }
  memo[key] = best;
  return best;
}

std::vector<BoundResult> direct_bounds(unsigned n, unsigned delta, unsigned k, std::uint64_t q) {
  std::vector<BoundResult> out;
  const unsigned kk = std::min(k, n - k);
  if (delta == kk) spread_family(out, n, kk, q);
  add(out, iterated_johnson(n, delta, kk, q), BoundKind::Upper, "iterated-johnson");
  add(out, iterated_johnson(n, delta, n - kk, q), BoundKind::Upper, "iterated-johnson-complement");
  add(out, packing_upper(n, delta, kk, q), BoundKind::Upper, "packing");
  literature_for(out, n, delta, kk, q);
  return out;
}

BigInt direct_upper(unsigned n, unsigned delta, unsigned kk, std::uint64_t q) {
  BigInt best = -1;
  for (const auto& b : direct_bounds(n, delta, kk, q))
    if (b.kind == BoundKind::Upper || b.kind == BoundKind::Exact)
      if (best < 0 || b.value < best) best = b.value;
  return best;
}

}  // namespace

std::vector<BoundResult> applicable_bounds(unsigned n, unsigned delta, unsigned k, std::uint64_t q) {
  check_q(q);
  if (k > n) bad("k > n");
  if (delta < 1) bad("delta must be at least 1");
  std::vector<BoundResult> out;
  const unsigned kk = std::min(k, n - k);
  if (delta > kk) {
    add(out, 1, BoundKind::Exact, "single-word");
    return out;
  }
  if (delta == 1) {
    add(out, gaussian_binomial(n, k, q), BoundKind::Exact, "full-grassmannian");
    return out;
  }
  out = direct_bounds(n, delta, kk, q);
  std::map<Key, BigInt> memo;
  BigInt rec = recursive_upper(n, delta, kk, q, memo);
  add(out, rec, BoundKind::Upper, "johnson");
  if (n <= 20) add(out, multilevel_lower(n, delta, kk, q), BoundKind::Lower, "multilevel");
  add(out, lifted_mrd_lower(n, delta, kk, q), BoundKind::Lower, "lifted-mrd");
  return out;
}

Bracket best_bounds(unsigned n, unsigned delta, unsigned k, std::uint64_t q) {
  const auto all = applicable_bounds(n, delta, k, q);
  Bracket b;
  bool have_lo = false, have_hi = false;
  for (const auto& r : all) {
    if ((r.kind == BoundKind::Lower || r.kind == BoundKind::Exact) && (!have_lo || r.value > b.lower.value)) {
      b.lower = {r.value, BoundKind::Lower, r.source};
      have_lo = true;
    }
    if ((r.kind == BoundKind::Upper || r.kind == BoundKind::Exact) && (!have_hi || r.value < b.upper.value)) {
      b.upper = {r.value, BoundKind::Upper, r.source};
      have_hi = true;
    }
  }
  if (!have_lo || !have_hi) bad("no bound applies to " + triple(n, delta, k));
  if (b.lower.value > b.upper.value)
    throw Error(Errc::BadParams, "inconsistent bounds at " + triple(n, delta, k) + ": lower " +
                                     b.lower.value.str() + " > upper " + b.upper.value.str());
  if (b.exact()) b.lower.kind = b.upper.kind = BoundKind::Exact;
  return b;
}

std::optional<Bracket> subspace_metric_bounds(unsigned n, unsigned d, std::uint64_t q) {
  check_q(q);
  std::vector<BoundResult> all;
  if (d == 1) add(all, projective_size(n, q), BoundKind::Exact, "full-projective-space");
  if (d == 2 && q == 2) add(all, subspace_code_small_distance(n, q).d2, BoundKind::Exact, "even-dimensions");
  if (q == 2 && n % 2 == 1 && n >= 3) {
    const unsigned m = (n - 1) / 2;
    if (d == 2 * m) add(all, subspace_code_2n_exact(m), BoundKind::Exact, "dual-partial-spread");
    if (d + 1 == 2 * m && m >= 2) {
      const auto br = subspace_code_2n_minus1_bracket(m);
      all.push_back(br.lower);
      all.push_back(br.upper);
    }
  }
  for (const auto& e : literature())
    if (e.quantity == "AS" && e.q == q && e.n == n && e.d == d) add(all, e.value, e.kind, "literature:" + e.citation);
  if (all.empty()) return std::nullopt;
  Bracket b;
  bool lo = false, hi = false;
  for (const auto& r : all) {
    if ((r.kind == BoundKind::Lower || r.kind == BoundKind::Exact) && (!lo || r.value > b.lower.value)) {
      b.lower = {r.value, BoundKind::Lower, r.source};
      lo = true;
    }
    if ((r.kind == BoundKind::Upper || r.kind == BoundKind::Exact) && (!hi || r.value < b.upper.value)) {
      b.upper = {r.value, BoundKind::Upper, r.source};
      hi = true;
    }
  }
  if (!lo) b.lower = {0, BoundKind::Unknown, ""};
  if (!hi) b.upper = {0, BoundKind::Unknown, ""};
  if (lo && hi && b.exact()) b.lower.kind = b.upper.kind = BoundKind::Exact;
  return b;
}

Bracket constant_rank_bounds(unsigned m, unsigned n, unsigned d, unsigned r, std::uint64_t q) {
  check_q(q);
  const unsigned s = std::min(m, n), big = std::max(m, n);
  if (r < 1 || r > s || d < 1) bad("constant rank bounds need 1 <= r <= min(m, n), d >= 1");
  auto from = [](const Bracket& b, const std::string& src) {
    Bracket out = b;
    out.lower.source = src + "/" + b.lower.source;
    out.upper.source = src + "/" + b.upper.source;
    return out;
  };
  if (d == r + 1) {
    const BigInt v = gaussian_binomial(s, r, q);
    return {{v, BoundKind::Exact, "constant-rank-adjacent"}, {v, BoundKind::Exact, "constant-rank-adjacent"}};
  }
  if (d == 2 * r) return from(best_bounds(s, r, r, q), "constant-rank-spread");
  if (d > r && d - r <= r && 2 * r <= s) {
    const unsigned delta = d - r;
    if (delta == r || big >= (s - r) * (r - delta + 1) + r + 1)
      return from(best_bounds(s, delta, r, q), "constant-rank-grassmannian");
  }
  return {{0, BoundKind::Unknown, "none"}, {0, BoundKind::Unknown, "none"}};
}

Rational density(const BigInt& size, unsigned n, unsigned delta, unsigned k, std::uint64_t q) {
  if (size <= 0) bad("density needs a positive code size");
  const BigInt up = packing_upper(n, delta, k, q);
  if (size > up) bad("size " + size.str() + " exceeds the packing bound " + up.str());
  return Rational(size, up);
}

std::vector<TableRow> emit_table(std::uint64_t q, unsigned n_lo, unsigned n_hi, unsigned d_lo, unsigned d_hi,
                                 unsigned k_lo, unsigned k_hi) {
  check_q(q);
  std::vector<TableRow> rows;
  for (unsigned n = n_lo; n <= n_hi; ++n)
    for (unsigned delta = std::max(1u, d_lo); delta <= d_hi; ++delta)
      for (unsigned k = std::max(delta, k_lo); k <= k_hi && 2 * k <= n; ++k)
        rows.push_back({q, n, delta, k, best_bounds(n, delta, k, q)});
  return rows;
}

std::string table_csv(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  os << "q,n,delta,k,lower,upper,lower_src,upper_src\n";
  for (const auto& r : rows)
    os << r.q << ',' << r.n << ',' << r.delta << ',' << r.k << ',' << r.bounds.lower.value << ','
       << r.bounds.upper.value << ',' << r.bounds.lower.source << ',' << r.bounds.upper.source << '\n';
  return os.str();
}

}  // namespace qspace
