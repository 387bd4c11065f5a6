#include "qspace/code_io.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "qspace/error.hpp"

namespace qspace {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void parse_fail(std::string_view context, const std::string& what) {
  throw Error(Errc::ParseError, std::string(context) + ": " + what);
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(Errc::ParseError, std::string("malformed JSON: ") + e.what());
  }
}

const Json& member(const Json& j, const char* key, std::string_view context) {
  if (!j.is_object() || !j.contains(key)) parse_fail(context, std::string("missing \"") + key + "\"");
  return j.at(key);
}

unsigned as_unsigned(const Json& j, std::string_view context) {
  if (!j.is_number_unsigned()) parse_fail(context, "expected a nonnegative integer");
  return j.get<unsigned>();
}

std::string as_string(const Json& j, std::string_view context) {
  if (!j.is_string()) parse_fail(context, "expected a string");
  return j.get<std::string>();
}

FieldPtr as_field(const Json& j, std::string_view context) {
  const std::string d = as_string(j, context);
  try {
    return Field::parse(d);
  } catch (const Error& e) {
    parse_fail(context, e.what());
  }
}

std::vector<std::string> as_rows(const Json& j, std::string_view context) {
  if (!j.is_array()) parse_fail(context, "expected an array of row strings");
  std::vector<std::string> rows;
  for (std::size_t i = 0; i < j.size(); ++i)
    rows.push_back(as_string(j[i], std::string(context) + "[" + std::to_string(i) + "]"));
  return rows;
}

Json big_to_json(const BigInt& v) {
  if (v >= 0 && v <= BigInt(std::numeric_limits<std::uint64_t>::max())) return Json(static_cast<std::uint64_t>(v));
  return Json(v.str());
}

BigInt json_to_big(const Json& j, std::string_view context) {
  if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return BigInt(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  parse_fail(context, "expected an integer");
}

Json rows_json(const Subspace& s, unsigned q) {
  Json a = Json::array();
  for (const auto& r : s.row_strings(q)) a.push_back(r);
  return a;
}

Json matrix_json(const Matrix& m, unsigned q) {
  Json a = Json::array();
  for (unsigned r = 0; r < m.rows; ++r) {
    std::string s;
    for (unsigned c = 0; c < m.cols; ++c) {
      if (q <= 10) {
        s.push_back(static_cast<char>('0' + m.at(r, c)));
      } else {
        if (c) s.push_back(' ');
        s += std::to_string(m.at(r, c));
      }
    }
    a.push_back(s);
  }
  return a;
}

}  // namespace

Vec parse_row(const Field& f, std::string_view text, std::string_view context) {
  Vec v;
  if (text.find(' ') != std::string_view::npos || f.q() > 10) {
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) {
      Digit d = 0;
      for (char ch : tok) {
        if (ch < '0' || ch > '9') parse_fail(context, "bad entry '" + tok + "'");
        d = d * 10 + static_cast<Digit>(ch - '0');
        if (d >= f.q()) parse_fail(context, "entry '" + tok + "' is not an element of " + f.descriptor());
      }
      v.push_back(d);
    }
    return v;
  }
  for (char ch : text) {
    if (ch < '0' || ch > '9') parse_fail(context, std::string("bad digit '") + ch + "'");
    const Digit d = static_cast<Digit>(ch - '0');
    if (d >= f.q()) parse_fail(context, std::string("digit '") + ch + "' is not an element of " + f.descriptor());
    v.push_back(d);
  }
  return v;
}

Subspace parse_subspace(const Field& f, unsigned n, const std::vector<std::string>& rows, std::string_view context,
                        bool* canonical) {
  Matrix m(static_cast<unsigned>(rows.size()), n);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string ctx = std::string(context) + " row " + std::to_string(r);
    const Vec v = parse_row(f, rows[r], ctx);
    if (v.size() != n) parse_fail(ctx, "expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
    for (unsigned c = 0; c < n; ++c) m.at(static_cast<unsigned>(r), c) = v[c];
  }
  Subspace s = Subspace::row_space(f, m);
  if (canonical) *canonical = s.k() == m.rows && s.matrix() == m;
  return s;
}

std::string write_code(const SubspaceCode& c) {
  const unsigned q = c.f().q();
  std::ostringstream os;
  os << "{\n  \"field\": " << Json(c.f().descriptor()).dump() << ",\n  \"n\": " << c.n()
     << ",\n  \"metric\": " << Json(metric_name(c.metric())).dump() << ",\n  \"subspaces\": [";
  const auto& w = c.words();
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? ",\n    " : "\n    ") << rows_json(w[i], q).dump();
  os << (w.empty() ? "]\n}\n" : "\n  ]\n}\n");
  return os.str();
}

CodeReadResult read_code(std::string_view text) {
  const Json j = parse_json(text);
  const FieldPtr f = as_field(member(j, "field", "code"), "field");
  const unsigned n = as_unsigned(member(j, "n", "code"), "n");
  Metric metric;
  try {
    metric = parse_metric(as_string(member(j, "metric", "code"), "metric"));
  } catch (const Error& e) {
    parse_fail("metric", e.what());
  }
  const Json& subs = member(j, "subspaces", "code");
  if (!subs.is_array()) parse_fail("subspaces", "expected an array");
  CodeReadResult out{SubspaceCode(f, n, metric), {}};
  bool reordered = false;
  std::optional<Subspace> prev;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const std::string ctx = "subspaces[" + std::to_string(i) + "]";
    bool canonical = true;
    Subspace s = parse_subspace(*f, n, as_rows(subs[i], ctx), ctx, &canonical);
    if (!canonical) out.warnings.push_back(ctx + ": rows not in reduced echelon form; canonicalized");
    if (prev && !(*prev < s)) reordered = true;
    prev = s;
    if (!out.code.insert(s)) out.warnings.push_back(ctx + ": duplicate subspace dropped");
  }
  if (reordered) out.warnings.push_back("subspaces were not in canonical order; sorted");
  return out;
}

std::string write_rank_code(const RankCode& c) {
  const unsigned q = c.field->q();
  std::ostringstream os;
  os << "{\n  \"field\": " << Json(c.field->descriptor()).dump() << ",\n  \"rows\": " << c.rows
     << ",\n  \"cols\": " << c.cols << ",\n  \"delta\": " << c.delta;
  if (c.diagram) os << ",\n  \"diagram\": " << Json(c.diagram->to_string()).dump();
  os << ",\n  \"basis\": [";
  for (std::size_t i = 0; i < c.basis.size(); ++i) os << (i ? ",\n    " : "\n    ") << matrix_json(c.basis[i], q).dump();
  os << (c.basis.empty() ? "]\n}\n" : "\n  ]\n}\n");
  return os.str();
}

RankCode read_rank_code(std::string_view text) {
  const Json j = parse_json(text);
  RankCode c;
  c.field = as_field(member(j, "field", "rank code"), "field");
  c.rows = as_unsigned(member(j, "rows", "rank code"), "rows");
  c.cols = as_unsigned(member(j, "cols", "rank code"), "cols");
  c.delta = as_unsigned(member(j, "delta", "rank code"), "delta");
  if (j.contains("diagram")) {
    try {
      c.diagram = FerrersDiagram::parse(as_string(j.at("diagram"), "diagram"));
    } catch (const Error& e) {
      parse_fail("diagram", e.what());
    }
  }
  const Json& basis = member(j, "basis", "rank code");
  if (!basis.is_array()) parse_fail("basis", "expected an array");
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::string ctx = "basis[" + std::to_string(i) + "]";
    const auto rows = as_rows(basis[i], ctx);
    if (rows.size() != c.rows) parse_fail(ctx, "expected " + std::to_string(c.rows) + " rows");
    Matrix m(c.rows, c.cols);
    for (unsigned r = 0; r < c.rows; ++r) {
      const std::string rctx = ctx + " row " + std::to_string(r);
      const Vec v = parse_row(*c.field, rows[r], rctx);
      if (v.size() != c.cols) parse_fail(rctx, "expected " + std::to_string(c.cols) + " entries");
      for (unsigned col = 0; col < c.cols; ++col) m.at(r, col) = v[col];
    }
    c.basis.push_back(std::move(m));
  }
  return c;
}

SkeletonCode read_skeleton(std::string_view text, SkeletonDistance kind) {
  SkeletonCode s;
  s.kind = kind;
  std::istringstream in{std::string(text)};
  std::string line;
  unsigned lineno = 0;
  std::optional<unsigned> weight;
  bool constant = true;
  while (std::getline(in, line)) {
    ++lineno;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    const std::string w = line.substr(b, e - b + 1);
    const std::string ctx = "line " + std::to_string(lineno);
    if (w.find_first_not_of("01") != std::string::npos) parse_fail(ctx, "skeleton words are binary strings");
    if (s.words.empty()) s.n = static_cast<unsigned>(w.size());
    else if (w.size() != s.n) parse_fail(ctx, "word length " + std::to_string(w.size()) + " != " + std::to_string(s.n));
    const unsigned wt = static_cast<unsigned>(std::count(w.begin(), w.end(), '1'));
    if (!weight) weight = wt;
    else if (*weight != wt) constant = false;
    s.words.push_back(w);
  }
  if (s.words.empty()) parse_fail("skeleton", "no words");
  if (constant) s.constant_weight = weight;
  s.distance = s.min_distance();
  return s;
}

std::string write_skeleton(const SkeletonCode& s) {
  std::string out;
  for (const auto& w : s.words) out += w + "\n";
  return out;
}

std::string write_system(const EquationSystem& sys) {
  const unsigned q = sys.field->q();
  std::ostringstream os;
  os << "{\n  \"field\": " << Json(sys.field->descriptor()).dump() << ",\n  \"n\": " << sys.n << ",\n  \"k\": " << sys.k
     << ",\n  \"t\": " << sys.t << ",\n  \"rho\": " << sys.rho << ",\n  \"variables\": [";
  for (std::size_t v = 0; v < sys.variables.size(); ++v) {
    Json j;
    j["index"] = v;
    j["dim"] = sys.variables[v].k();
    j["rows"] = rows_json(sys.variables[v], q);
    j["fixed_zero"] = static_cast<bool>(sys.fixed_zero[v]);
    os << (v ? ",\n    " : "\n    ") << j.dump();
  }
  os << "\n  ],\n  \"equations\": [";
  for (std::size_t i = 0; i < sys.equations.size(); ++i) {
    const auto& e = sys.equations[i];
    Json j;
    j["subject"] = rows_json(e.subject, q);
    j["delta"] = big_to_json(e.delta);
    Json terms = Json::array();
    for (const auto& [v, c] : e.terms) terms.push_back(Json::array({v, big_to_json(c)}));
    j["terms"] = terms;
    os << (i ? ",\n    " : "\n    ") << j.dump();
  }
  os << "\n  ]\n}\n";
  return os.str();
}

EquationSystem read_system(std::string_view text) {
  const Json j = parse_json(text);
  EquationSystem sys;
  sys.field = as_field(member(j, "field", "system"), "field");
  sys.n = as_unsigned(member(j, "n", "system"), "n");
  sys.k = as_unsigned(member(j, "k", "system"), "k");
  sys.t = as_unsigned(member(j, "t", "system"), "t");
  sys.rho = as_unsigned(member(j, "rho", "system"), "rho");
  const Json& vars = member(j, "variables", "system");
  if (!vars.is_array()) parse_fail("variables", "expected an array");
  for (std::size_t v = 0; v < vars.size(); ++v) {
    const std::string ctx = "variables[" + std::to_string(v) + "]";
    if (as_unsigned(member(vars[v], "index", ctx), ctx + ".index") != v) parse_fail(ctx, "indices must be 0, 1, 2, ...");
    sys.variables.push_back(parse_subspace(*sys.field, sys.rho, as_rows(member(vars[v], "rows", ctx), ctx), ctx));
    const Json& fz = member(vars[v], "fixed_zero", ctx);
    if (!fz.is_boolean()) parse_fail(ctx + ".fixed_zero", "expected a boolean");
    sys.fixed_zero.push_back(fz.get<bool>());
  }
  const Json& eqs = member(j, "equations", "system");
  if (!eqs.is_array()) parse_fail("equations", "expected an array");
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    const std::string ctx = "equations[" + std::to_string(i) + "]";
    Equation e;
    e.subject = parse_subspace(*sys.field, sys.rho, as_rows(member(eqs[i], "subject", ctx), ctx + ".subject"), ctx);
    e.delta = json_to_big(member(eqs[i], "delta", ctx), ctx + ".delta");
    const Json& terms = member(eqs[i], "terms", ctx);
    if (!terms.is_array()) parse_fail(ctx + ".terms", "expected an array");
    for (const auto& t : terms) {
      if (!t.is_array() || t.size() != 2) parse_fail(ctx + ".terms", "expected [variable, coefficient] pairs");
      const unsigned v = as_unsigned(t[0], ctx + ".terms");
      if (v >= sys.variables.size()) parse_fail(ctx + ".terms", "variable " + std::to_string(v) + " out of range");
      e.terms.emplace_back(v, json_to_big(t[1], ctx + ".terms"));
    }
    sys.equations.push_back(std::move(e));
  }
  return sys;
}

}  // namespace qspace
