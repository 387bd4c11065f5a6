#include "qspace/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qspace/bounds.hpp"
#include "qspace/code_builder.hpp"
#include "qspace/code_io.hpp"
#include "qspace/design_verify.hpp"
#include "qspace/error.hpp"
#include "qspace/projections.hpp"
#include "qspace/rank_metric.hpp"

namespace qspace {

namespace {

using Json = nlohmann::ordered_json;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Range {
  unsigned lo = 0, hi = 0;
};

Range parse_range(const std::string& s, const char* what) {
  try {
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
      const unsigned v = static_cast<unsigned>(std::stoul(s));
      return {v, v};
    }
    Range r{static_cast<unsigned>(std::stoul(s.substr(0, dots))), static_cast<unsigned>(std::stoul(s.substr(dots + 2)))};
    if (r.lo > r.hi) throw Usage("");
    return r;
  } catch (const std::exception&) {
    throw Usage(std::string("--") + what + " expects N or LO..HI, got '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

FieldPtr field_for_q(std::uint64_t q) {
  if (!is_prime_power(q)) throw Error(Errc::BadParams, "q = " + std::to_string(q) + " is not a prime power");
  unsigned p = 2;
  while (q % p) ++p;
  unsigned m = 0;
  for (std::uint64_t r = q; r > 1; r /= p) ++m;
  return Field::make(p, m);
}

class Cli {
 public:
  Cli(std::istream& in, std::ostream& out, std::ostream& err) : in_(in), out_(out), err_(err) {}

  std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") return std::string(std::istreambuf_iterator<char>(in_), {});
    std::ifstream f(path);
    if (!f) throw Usage("cannot open '" + path + "'");
    return std::string(std::istreambuf_iterator<char>(f), {});
  }

  void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
      out_ << text;
      return;
    }
    std::ofstream f(path);
    if (!f) throw Usage("cannot write '" + path + "'");
    f << text;
  }

  SubspaceCode load_code(const std::string& path) {
    auto r = read_code(read_input(path));
    for (const auto& w : r.warnings) err_ << "warning: " << w << "\n";
    return std::move(r.code);
  }

  int verdict(Json j, bool ok, const std::string& summary) {
    j["verdict"] = ok;
    out_ << j.dump(2) << "\n";
    err_ << summary << (ok ? " [ok]" : " [FAILED]") << "\n";
    return ok ? 0 : 1;
  }

  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
};

Json histogram_json(const CoverageReport& r) {
  Json h = Json::array();
  for (auto v : r.histogram) h.push_back(v);
  return h;
}

Json bracket_json(const Bracket& b) {
  return Json{{"lower", b.lower.value.str()},
              {"upper", b.upper.value.str()},
              {"lower_src", b.lower.source},
              {"upper_src", b.upper.source},
              {"exact", b.lower.kind == BoundKind::Exact}};
}

Json outcome_json(const SolveOutcome& o) {
  Json sols = Json::array();
  for (const auto& s : o.solutions) {
    Json a = Json::array();
    for (const auto& v : s) a.push_back(v.str());
    sols.push_back(a);
  }
  return Json{{"outcome", solve_tag_name(o.tag)}, {"count", o.count},   {"capped", o.count_capped},
              {"nodes", o.nodes},                 {"note", o.note},     {"solutions", sols}};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  Cli io(in, out, err);
  CLI::App app{"Subspace codes, bounds and q-analog designs over finite fields", "qspace"};
  app.require_subcommand(1);

  // Shared option storage.
  std::string field_desc = "GF(2)", in_path, out_path, metric_s, format = "text";
  unsigned n = 0, k = 0, l = 0, delta = 0, t = 0, rho = 0, r = 0;
  std::uint64_t q = 2, cap = kDefaultEnumCap;
  std::optional<unsigned> k_opt, at_least, dist_n;
  bool flag_a = false, flag_b = false;

  // field
  auto* c_field = app.add_subcommand("field", "Describe a finite field");
  c_field->add_option("--field", field_desc, "Descriptor, e.g. GF(2^6)/1,1,0,0,0,0,1")->required();
  c_field->add_flag("--table", flag_a, "List alpha^i as coordinate vectors");

  // gauss
  auto* c_gauss = app.add_subcommand("gauss", "Gaussian coefficient [n, k]_q");
  c_gauss->add_option("--n", n)->required();
  c_gauss->add_option("--k", k_opt, "Omit to list every k");
  c_gauss->add_option("--q", q);

  // enum
  auto* c_enum = app.add_subcommand("enum", "Enumerate a Grassmannian or the projective space");
  c_enum->add_option("--field", field_desc);
  c_enum->add_option("--n", n)->required();
  c_enum->add_option("--k", k_opt, "Omit for all dimensions");
  c_enum->add_option("--cap", cap);
  c_enum->add_flag("--count", flag_a, "Print only the number of subspaces");
  c_enum->add_option("--out", out_path);

  // dist
  std::string rows_a, rows_b;
  auto* c_dist = app.add_subcommand("dist", "Distance between two subspaces given by comma-separated rows");
  c_dist->add_option("--field", field_desc);
  c_dist->add_option("--metric", metric_s, "subspace | injection | grassmannian")->required();
  c_dist->add_option("--a", rows_a)->required();
  c_dist->add_option("--b", rows_b)->required();
  c_dist->add_option("--n", dist_n, "Ambient dimension (needed when both are zero)");

  // construct
  auto* c_con = app.add_subcommand("construct", "Build codes");
  c_con->require_subcommand(1);
  auto* c_mrd = c_con->add_subcommand("mrd", "Gabidulin code of k x l matrices");
  c_mrd->add_option("--field", field_desc);
  c_mrd->add_option("--k", k)->required();
  c_mrd->add_option("--l", l)->required();
  c_mrd->add_option("--delta", delta)->required();
  c_mrd->add_flag("--lift", flag_a, "Emit the lifted subspace code");
  c_mrd->add_option("--out", out_path);

  auto* c_lift = c_con->add_subcommand("lift", "Lift a rank code file into the Grassmannian");
  c_lift->add_option("--in", in_path);
  c_lift->add_option("--out", out_path);

  std::string skeleton_path;
  bool no_verify = false;
  auto* c_ml = c_con->add_subcommand("multilevel", "Multilevel construction from a skeleton code");
  c_ml->add_option("--field", field_desc);
  c_ml->add_option("--skeleton", skeleton_path, "File of binary words; omit to build one greedily from --n, --k");
  c_ml->add_option("--n", n);
  c_ml->add_option("--k", k);
  c_ml->add_option("--delta", delta)->required();
  c_ml->add_option("--metric", metric_s, "grassmannian (default) | subspace | injection");
  c_ml->add_flag("--no-verify", no_verify, "Skip the exhaustive distance check");
  c_ml->add_option("--out", out_path);

  auto* c_sp = c_con->add_subcommand("spread", "k-spread of F_q^n (k | n)");
  c_sp->add_option("--field", field_desc);
  c_sp->add_option("--n", n)->required();
  c_sp->add_option("--k", k)->required();
  c_sp->add_option("--out", out_path);

  auto* c_psp = c_con->add_subcommand("partial-spread", "Partial k-spread of F_q^n");
  c_psp->add_option("--field", field_desc);
  c_psp->add_option("--n", n)->required();
  c_psp->add_option("--k", k)->required();
  c_psp->add_option("--out", out_path);

  std::vector<std::string> gens;
  std::string base_desc;
  bool add_zero = false, add_full = false, add_trivial = false;
  auto* c_cyc = c_con->add_subcommand("cyclic", "Cyclic orbit code in GF(q^n) viewed as F_q^n");
  c_cyc->add_option("--field", field_desc, "Extension field GF(q^n)")->required();
  c_cyc->add_option("--base", base_desc, "Base field (default GF(p))");
  c_cyc->add_option("--gens", gens, "Exponent list of one generator, e.g. 0,21,42; repeatable")->required();
  c_cyc->add_flag("--add-zero", add_zero);
  c_cyc->add_flag("--add-full", add_full);
  c_cyc->add_flag("--add-trivial", add_trivial, "Same as --add-zero --add-full");
  c_cyc->add_option("--metric", metric_s, "Metric tag of the output (default injection)");
  c_cyc->add_option("--out", out_path);

  std::string hyper_rows, v_digits;
  std::size_t augment = 0;
  std::optional<unsigned> target;
  auto* c_pun = c_con->add_subcommand("puncture", "Puncture a code through a hyperplane");
  c_pun->add_option("--in", in_path);
  c_pun->add_option("--hyperplane", hyper_rows, "Comma-separated rows of Q; omit to search all Q and v");
  c_pun->add_option("--v", v_digits, "Vector outside Q");
  c_pun->add_option("--augment", augment, "Greedily add up to this many subspaces afterwards");
  c_pun->add_option("--target", target, "Distance kept by augmentation (default: verified minimum)");
  c_pun->add_option("--cap", cap);
  c_pun->add_option("--out", out_path);

  // verify
  auto* c_ver = app.add_subcommand("verify", "Exhaustive checks of a code file (stdin by default)");
  c_ver->require_subcommand(1);
  auto add_in = [&](CLI::App* a) { a->add_option("--in", in_path, "Code file (default stdin)"); };
  auto* v_md = c_ver->add_subcommand("mindist", "Minimum distance");
  add_in(v_md);
  v_md->add_option("--metric", metric_s, "Default: the file's metric");
  v_md->add_option("--at-least", at_least, "Fail unless the minimum distance is at least this");
  auto* v_st = c_ver->add_subcommand("steiner", "Every t-subspace in exactly one word");
  add_in(v_st);
  v_st->add_option("--t", t)->required();
  std::uint64_t lambda = 1;
  auto* v_de = c_ver->add_subcommand("design", "Every t-subspace in exactly lambda words");
  add_in(v_de);
  v_de->add_option("--t", t)->required();
  v_de->add_option("--lambda", lambda)->required();
  auto* v_cv = c_ver->add_subcommand("covering", "Every r-subspace in at least one word");
  add_in(v_cv);
  v_cv->add_option("--r", r)->required();
  auto* v_sp = c_ver->add_subcommand("spread", "Pairwise trivially intersecting and covering all points");
  add_in(v_sp);
  v_sp->add_flag("--partial", flag_b, "Only require pairwise trivial intersection");
  auto* v_std = c_ver->add_subcommand("std", "Subspace transversal design properties");
  add_in(v_std);
  v_std->add_option("--t", t)->required();
  v_std->add_option("--k", k_opt, "Block dimension (default: the code's)");
  auto* v_cover = c_ver->add_subcommand("cover", "Every 1-subspace lies in some word");
  add_in(v_cover);

  // bounds
  auto* c_b = app.add_subcommand("bounds", "Bounds on code sizes");
  c_b->require_subcommand(1);
  std::optional<unsigned> b_delta, b_k, b_d;
  auto* b_single = c_b->add_subcommand("single", "A_q(n, delta, k), or A^S_q(n, d) with --d");
  b_single->add_option("--q", q);
  b_single->add_option("--n", n)->required();
  b_single->add_option("--delta", b_delta);
  b_single->add_option("--k", b_k);
  b_single->add_option("--d", b_d, "Subspace-metric distance");
  b_single->add_flag("--all", flag_a, "List every applicable bound");
  b_single->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
  std::string n_range, d_range, k_range;
  auto* b_table = c_b->add_subcommand("table", "Bounds table over parameter ranges");
  b_table->add_option("--q", q);
  b_table->add_option("--n", n_range)->required();
  b_table->add_option("--delta", d_range)->required();
  b_table->add_option("--k", k_range)->required();
  std::string table_format = "csv";
  b_table->add_option("--format", table_format, "csv | json | text (default csv)")->check(CLI::IsMember({"csv", "json", "text"}));
  b_table->add_option("--out", out_path);

  // projections
  auto* c_p = app.add_subcommand("projections", "Projection equations for a q-Steiner system S_q(t, k, n)");
  c_p->require_subcommand(1);
  auto* p_gen = c_p->add_subcommand("gen", "Emit the equation system");
  p_gen->add_option("--n", n)->required();
  p_gen->add_option("--k", k)->required();
  p_gen->add_option("--t", t)->required();
  p_gen->add_option("--q", q);
  p_gen->add_option("--rho", rho)->required();
  p_gen->add_option("--cap", cap);
  p_gen->add_option("--out", out_path);
  std::vector<std::string> pins;
  std::uint64_t node_cap = kDefaultNodeCap, solution_cap = 1000;
  std::size_t samples = 3;
  auto* p_solve = c_p->add_subcommand("solve", "Solve a system file (stdin by default)");
  p_solve->add_option("--in", in_path);
  p_solve->add_option("--pin", pins, "INDEX=VALUE; repeatable");
  p_solve->add_option("--node-cap", node_cap);
  p_solve->add_option("--solution-cap", solution_cap);
  p_solve->add_option("--samples", samples);
  std::string rho_range = "1..4";
  auto* p_rep = c_p->add_subcommand("report", "Feasibility over a range of rho");
  p_rep->add_option("--n", n)->required();
  p_rep->add_option("--k", k)->required();
  p_rep->add_option("--t", t)->required();
  p_rep->add_option("--q", q);
  p_rep->add_option("--rho", rho_range, "LO..HI (default 1..4)");
  p_rep->add_flag("--allow-large", flag_a, "Run rho > 4");
  p_rep->add_option("--node-cap", node_cap);

  // complements
  auto* c_comp = app.add_subcommand("complements", "Census of subspaces meeting their dual trivially");
  c_comp->add_option("--q", q);
  c_comp->add_option("--n", n_range)->required();
  c_comp->add_option("--cap", cap);
  c_comp->add_option("--format", format, "text | csv | json")->check(CLI::IsMember({"text", "csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_field->parsed()) {
      const FieldPtr f = Field::parse(field_desc);
      Json j{{"descriptor", f->descriptor()}, {"p", f->p()}, {"m", f->m()}, {"q", f->q()}};
      if (flag_a) {
        Json tab = Json::array();
        const Extension ext(f, Field::make(f->p(), 1));
        for (std::uint32_t i = 0; i + 1 < f->q(); ++i) {
          std::string v;
          for (auto d : ext.elem_to_vec(f->primitive_power(i))) v += std::to_string(d);
          tab.push_back(Json{{"i", i}, {"vector", v}});
        }
        j["powers"] = tab;
      }
      out << j.dump(2) << "\n";
      return 0;
    }
    if (c_gauss->parsed()) {
      if (k_opt) {
        out << gaussian_binomial(n, *k_opt, q) << "\n";
      } else {
        for (unsigned kk = 0; kk <= n; ++kk) out << kk << " " << gaussian_binomial(n, kk, q) << "\n";
      }
      return 0;
    }
    if (c_enum->parsed()) {
      const FieldPtr f = Field::parse(field_desc);
      if (flag_a) {
        out << (k_opt ? gaussian_binomial(n, *k_opt, f->q()) : projective_size(n, f->q())) << "\n";
        return 0;
      }
      SubspaceCode c(f, n, k_opt ? Metric::Grassmannian : Metric::Subspace);
      const auto all = k_opt ? enumerate_grassmannian(*f, n, *k_opt, cap) : enumerate_projective(*f, n, cap);
      for (const auto& s : all) c.insert(s);
      io.emit(write_code(c), out_path);
      return 0;
    }
    if (c_dist->parsed()) {
      const FieldPtr f = Field::parse(field_desc);
      const auto ra = rows_a.empty() ? std::vector<std::string>{} : split(rows_a, ',');
      const auto rb = rows_b.empty() ? std::vector<std::string>{} : split(rows_b, ',');
      unsigned nn = dist_n.value_or(0);
      if (!dist_n) {
        if (!ra.empty()) nn = static_cast<unsigned>(parse_row(*f, ra[0], "--a").size());
        else if (!rb.empty()) nn = static_cast<unsigned>(parse_row(*f, rb[0], "--b").size());
        else throw Usage("--n is required when both subspaces are zero");
      }
      const Subspace a = parse_subspace(*f, nn, ra, "--a"), b = parse_subspace(*f, nn, rb, "--b");
      out << distance(*f, parse_metric(metric_s), a, b) << "\n";
      return 0;
    }
    if (c_con->parsed()) {
      if (c_mrd->parsed()) {
        const RankCode g = gabidulin(Field::parse(field_desc), k, l, delta);
        io.emit(flag_a ? write_code(lift_code(g)) : write_rank_code(g), out_path);
        err << "gabidulin " << k << "x" << l << " delta=" << delta << " dim=" << g.dim() << " size=" << g.size() << "\n";
        return 0;
      }
      if (c_lift->parsed()) {
        io.emit(write_code(lift_code(read_rank_code(io.read_input(in_path)))), out_path);
        return 0;
      }
      if (c_ml->parsed()) {
        const FieldPtr f = Field::parse(field_desc);
        const Metric m = metric_s.empty() ? Metric::Grassmannian : parse_metric(metric_s);
        SkeletonCode sk;
        if (!skeleton_path.empty()) {
          sk = read_skeleton(io.read_input(skeleton_path),
                             m == Metric::Injection ? SkeletonDistance::Asymmetric : SkeletonDistance::Hamming);
        } else {
          if (!n) throw Usage("give --skeleton, or --n and --k for a greedy skeleton");
          sk = skeleton_default(n, k, delta, m);
          err << "skeleton:";
          for (const auto& w : sk.words) err << " " << w;
          err << "\n";
        }
        const MultilevelResult res = multilevel(f, sk, delta, m, !no_verify);
        for (const auto& p : res.parts)
          err << p.word << " diagram=" << (p.diagram.empty() ? "-" : p.diagram.to_string()) << " dim=" << p.dim
              << " bound=" << p.bound << " method=" << p.method << " size=" << p.size << "\n";
        err << "size=" << res.code.size();
        if (res.verified_distance) err << " verified_distance=" << *res.verified_distance;
        err << " target=" << res.target << "\n";
        io.emit(write_code(res.code), out_path);
        return 0;
      }
      if (c_sp->parsed()) {
        io.emit(write_code(spread(Field::parse(field_desc), n, k)), out_path);
        return 0;
      }
      if (c_psp->parsed()) {
        io.emit(write_code(partial_spread(Field::parse(field_desc), n, k)), out_path);
        return 0;
      }
      if (c_cyc->parsed()) {
        const FieldPtr big = Field::parse(field_desc);
        const FieldPtr base = base_desc.empty() ? Field::make(big->p(), 1) : Field::parse(base_desc);
        const Extension ext(big, base);
        std::vector<OrbitGenerator> gs;
        for (const auto& g : gens) {
          OrbitGenerator og;
          for (const auto& tok : split(g, ',')) {
            try {
              og.push_back(std::stoll(tok));
            } catch (const std::exception&) {
              throw Usage("--gens expects comma-separated exponents, got '" + g + "'");
            }
          }
          gs.push_back(std::move(og));
        }
        const Metric m = metric_s.empty() ? Metric::Injection : parse_metric(metric_s);
        const SubspaceCode c = cyclic_orbit_code(ext, gs, add_zero || add_trivial, add_full || add_trivial, m);
        err << "size=" << c.size() << "\n";
        io.emit(write_code(c), out_path);
        return 0;
      }
      if (c_pun->parsed()) {
        const SubspaceCode c = io.load_code(in_path);
        Subspace hq;
        Vec v;
        if (hyper_rows.empty()) {
          const PunctureChoice ch = choose_Q(c, cap);
          hq = ch.hyperplane;
          v = ch.v;
        } else {
          if (v_digits.empty()) throw Usage("--hyperplane needs --v");
          hq = parse_subspace(c.f(), c.n(), split(hyper_rows, ','), "--hyperplane");
          v = parse_row(c.f(), v_digits, "--v");
        }
        SubspaceCode p = puncture_code(c, hq, v);
        err << "hyperplane:";
        for (const auto& row : hq.row_strings(c.f().q())) err << " " << row;
        err << " v: ";
        for (auto d : v) err << d;
        err << " size=" << p.size() << "\n";
        if (augment > 0) {
          const unsigned tgt =
              target ? *target : (p.size() >= 2 ? code_min_distance(p, Metric::Subspace) : 1u);
          p = augment_greedy(p, Metric::Subspace, tgt, augment);
          err << "augmented size=" << p.size() << " target=" << tgt << "\n";
        }
        io.emit(write_code(p), out_path);
        return 0;
      }
    }
    if (c_ver->parsed()) {
      const SubspaceCode c = io.load_code(in_path);
      Json j{{"check", ""}, {"size", c.size()}, {"n", c.n()}};
      if (v_md->parsed()) {
        const Metric m = metric_s.empty() ? c.metric() : parse_metric(metric_s);
        j["check"] = "mindist";
        j["metric"] = metric_name(m);
        if (c.size() < 2) {
          j["min_distance"] = nullptr;
          return io.verdict(j, !at_least, "fewer than two words");
        }
        const unsigned d = code_min_distance(c, m);
        j["min_distance"] = d;
        return io.verdict(j, !at_least || d >= *at_least,
                          "size " + std::to_string(c.size()) + ", minimum " + metric_name(m) + " distance " +
                              std::to_string(d));
      }
      if (v_st->parsed() || v_de->parsed() || v_cv->parsed()) {
        const unsigned tt = v_cv->parsed() ? r : t;
        const CoverageReport rep = coverage(c, tt);
        j["check"] = v_st->parsed() ? "steiner" : v_de->parsed() ? "design" : "covering";
        j["t"] = tt;
        j["total"] = rep.total;
        j["histogram"] = histogram_json(rep);
        j["trivial"] = rep.trivial;
        bool ok;
        if (v_cv->parsed()) {
          ok = rep.is_covering();
        } else {
          const std::uint64_t lam = v_st->parsed() ? 1 : lambda;
          j["lambda"] = lam;
          ok = c.constant_dimension().has_value() && rep.is_design(lam);
        }
        std::string summary = std::string(j["check"].get<std::string>()) + " t=" + std::to_string(tt) + ":";
        for (std::size_t m = 0; m < rep.histogram.size(); ++m)
          if (rep.histogram[m]) summary += " " + std::to_string(rep.histogram[m]) + " covered " + std::to_string(m) + "x";
        if (rep.trivial) summary += " (trivial)";
        return io.verdict(j, ok, summary);
      }
      if (v_sp->parsed()) {
        j["check"] = flag_b ? "partial-spread" : "spread";
        const bool ok = flag_b ? verify_partial_spread(c) : verify_spread(c);
        return io.verdict(j, ok, j["check"].get<std::string>() + " of size " + std::to_string(c.size()));
      }
      if (v_std->parsed()) {
        const unsigned kk = k_opt ? *k_opt : c.constant_dimension().value_or(0);
        const STDReport rep = verify_std(c, kk, c.n(), t);
        j["check"] = "std";
        j["k"] = kk;
        j["t"] = t;
        j["group_count"] = rep.group_count;
        j["group_size"] = rep.group_size;
        j["admissible"] = rep.admissible;
        j["properties"] = Json{{"point_count", rep.point_count},
                               {"groups_partition", rep.groups_partition},
                               {"blocks_avoid_v0", rep.blocks_avoid_v0},
                               {"one_point_per_group", rep.one_point_per_group},
                               {"strength", rep.strength}};
        return io.verdict(j, rep.all(),
                          "STD_" + std::to_string(c.f().q()) + "(" + std::to_string(t) + "," + std::to_string(kk) +
                              "," + std::to_string(c.n() - kk) + ")");
      }
      if (v_cover->parsed()) {
        j["check"] = "cover";
        return io.verdict(j, cover_check(c), "every point covered");
      }
    }
    if (c_b->parsed()) {
      if (b_single->parsed()) {
        if (b_d) {
          if (b_delta || b_k) throw Usage("--d excludes --delta and --k");
          const auto b = subspace_metric_bounds(n, *b_d, q);
          Json j{{"quantity", "AS"}, {"q", q}, {"n", n}, {"d", *b_d}};
          if (b) j.update(bracket_json(*b));
          if (format == "json") {
            out << j.dump(2) << "\n";
          } else if (b) {
            out << "A^S_" << q << "(" << n << "," << *b_d << "): " << b->lower.value << " <= A <= " << b->upper.value
                << " (lower: " << b->lower.source << ", upper: " << b->upper.source << ")\n";
          } else {
            out << "A^S_" << q << "(" << n << "," << *b_d << "): no bound known\n";
          }
          return 0;
        }
        if (!b_delta || !b_k) throw Usage("bounds single needs --delta and --k (or --d)");
        const Bracket b = best_bounds(n, *b_delta, *b_k, q);
        Json j{{"quantity", "A"}, {"q", q}, {"n", n}, {"delta", *b_delta}, {"k", *b_k}};
        j.update(bracket_json(b));
        if (flag_a) {
          Json all = Json::array();
          for (const auto& x : applicable_bounds(n, *b_delta, *b_k, q))
            all.push_back(Json{{"value", x.value.str()}, {"kind", kind_name(x.kind)}, {"source", x.source}});
          j["applicable"] = all;
        }
        if (format == "json") {
          out << j.dump(2) << "\n";
        } else {
          out << "A_" << q << "(" << n << "," << *b_delta << "," << *b_k << "): ";
          if (b.exact()) out << "= " << b.lower.value << " (" << b.lower.source << ")\n";
          else
            out << b.lower.value << " <= A <= " << b.upper.value << " (lower: " << b.lower.source
                << ", upper: " << b.upper.source << ")\n";
          if (flag_a)
            for (const auto& x : applicable_bounds(n, *b_delta, *b_k, q))
              out << "  " << kind_name(x.kind) << " " << x.value << " " << x.source << "\n";
        }
        return 0;
      }
      if (b_table->parsed()) {
        const Range nr = parse_range(n_range, "n"), dr = parse_range(d_range, "delta"), kr = parse_range(k_range, "k");
        const auto rows = emit_table(q, nr.lo, nr.hi, dr.lo, dr.hi, kr.lo, kr.hi);
        std::string text;
        if (table_format == "json") {
          Json a = Json::array();
          for (const auto& row : rows) {
            Json j{{"q", row.q}, {"n", row.n}, {"delta", row.delta}, {"k", row.k}};
            j.update(bracket_json(row.bounds));
            a.push_back(j);
          }
          text = a.dump(2) + "\n";
        } else if (table_format == "text") {
          std::ostringstream os;
          for (const auto& row : rows)
            os << "A_" << row.q << "(" << row.n << "," << row.delta << "," << row.k << ") in [" << row.bounds.lower.value
               << ", " << row.bounds.upper.value << "]\n";
          text = os.str();
        } else {
          text = table_csv(rows);
        }
        io.emit(text, out_path);
        return 0;
      }
    }
    if (c_p->parsed()) {
      if (p_gen->parsed()) {
        io.emit(write_system(build_system(field_for_q(q), n, k, t, rho, cap)), out_path);
        return 0;
      }
      if (p_solve->parsed()) {
        const EquationSystem sys = read_system(io.read_input(in_path));
        SolveOptions opt;
        opt.node_cap = node_cap;
        opt.solution_cap = solution_cap;
        opt.samples = samples;
        for (const auto& p : pins) {
          const auto eq = p.find('=');
          if (eq == std::string::npos) throw Usage("--pin expects INDEX=VALUE, got '" + p + "'");
          try {
            opt.pins[std::stoull(p.substr(0, eq))] = BigInt(p.substr(eq + 1));
          } catch (const std::exception&) {
            throw Usage("--pin expects INDEX=VALUE, got '" + p + "'");
          }
        }
        const SolveOutcome o = solve(sys, opt);
        for (const auto& s : o.solutions)
          if (!sys.satisfied_by(s)) throw std::logic_error("solver returned a non-solution");
        out << outcome_json(o).dump(2) << "\n";
        err << solve_tag_name(o.tag) << ": " << o.count << (o.count_capped ? "+" : "") << " solution(s), " << o.nodes
            << " nodes\n";
        switch (o.tag) {
          case SolveTag::Infeasible: return 1;
          case SolveTag::CapReached: return 3;
          default: return 0;
        }
      }
      if (p_rep->parsed()) {
        const Range rr = parse_range(rho_range, "rho");
        const FeasibilityReport rep = feasibility_report(field_for_q(q), n, k, t, rr.lo, rr.hi, flag_a, node_cap);
        Json per = Json::array();
        for (const auto& x : rep.per_rho) {
          Json j{{"rho", x.rho}, {"variables", x.variables}, {"equations", x.equations}, {"status", x.status}};
          if (x.outcome) j["outcome"] = solve_tag_name(x.outcome->tag);
          per.push_back(j);
        }
        out << Json{{"divisibility", rep.divisibility_ok}, {"per_rho", per}, {"verdict", rep.verdict}}.dump(2) << "\n";
        err << rep.verdict << "\n";
        return 0;
      }
    }
    if (c_comp->parsed()) {
      const Range nr = parse_range(n_range, "n");
      const FieldPtr f = field_for_q(q);
      std::ostringstream os;
      Json a = Json::array();
      if (format == "csv") os << "q,n,count,total,ratio,limit\n";
      for (unsigned nn = nr.lo; nn <= nr.hi; ++nn) {
        const ComplementCensus cc = complements_census(*f, nn, cap);
        char ratio[32], lim[32];
        std::snprintf(ratio, sizeof ratio, "%.10f", cc.ratio);
        std::snprintf(lim, sizeof lim, "%.10f", cc.limit);
        if (format == "csv") os << q << "," << nn << "," << cc.count << "," << cc.total << "," << ratio << "," << lim << "\n";
        else if (format == "text") os << "n=" << nn << " " << cc.count << "/" << cc.total << " = " << ratio << "\n";
        a.push_back(Json{{"n", nn}, {"count", cc.count}, {"total", cc.total}, {"ratio", cc.ratio}});
      }
      if (format == "json") {
        os << Json{{"q", q}, {"limit", complement_limit(q)}, {"census", a}}.dump(2) << "\n";
      } else if (format == "text") {
        char lim[32];
        std::snprintf(lim, sizeof lim, "%.10f", complement_limit(q));
        os << "limit " << lim << "\n";
      }
      out << os.str();
      return 0;
    }
  } catch (const Usage& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::CapExceeded ? 3 : 2;
  }
  err << app.help();
  return 2;
}

}  // namespace qspace
