#include "iqp/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "iqp/errors.hpp"
#include "iqp/oracle.hpp"
#include "iqp/parametric.hpp"

namespace iqp {

namespace {

constexpr int kSchemaVersion = 1;

const Json& need(const Json& spec, const char* key) {
  if (!spec.contains(key)) throw schema_error(std::string("missing \"") + key + "\"");
  return spec[key];
}

IntMatrix mu_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty())
    throw schema_error("\"mu\" must be a non-empty matrix");
  int N = static_cast<int>(j.size()), d = static_cast<int>(j[0].size());
  IntMatrix m(N, d);
  for (int i = 0; i < N; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != d) throw schema_error("\"mu\" rows differ in length");
    for (int k = 0; k < d; ++k) {
      Rat q = rat_from_json(j[i][k]);
      if (!is_integer(q)) throw schema_error("\"mu\" entries must be integers");
      m(i, k) = q.get_num();
    }
  }
  return m;
}

RatVec vec_of_length(const Json& j, int n, const char* what) {
  RatVec v = ratvec_from_json(j);
  if (static_cast<int>(v.size()) != n)
    throw schema_error(std::string(what) + " must have length " + std::to_string(n));
  return v;
}

Weight weight_from_json(const Json& spec, int d) {
  if (!spec.contains("weight")) return Weight::one(d);
  const Json& w = spec["weight"];
  if (!w.is_array()) throw schema_error("\"weight\" must be a list of terms");
  Weight h;
  for (const auto& t : w) {
    if (!t.is_object()) throw schema_error("weight term must be an object");
    WeightTerm term;
    term.coeff = t.contains("coeff") ? rat_from_json(t["coeff"]) : Rat(1);
    term.ell = t.contains("ell") ? vec_of_length(t["ell"], d, "weight \"ell\"") : RatVec(d, Rat(0));
    if (t.contains("power")) {
      if (!t["power"].is_number_integer() || t["power"].get<int>() < 0)
        throw schema_error("weight \"power\" must be a non-negative integer");
      term.power = t["power"].get<int>();
    }
    h.terms.push_back(term);
  }
  return h;
}

Subspace subspace_from_json(const Json& j, int d) {
  if (j.is_string()) {
    if (j == "zero") return Subspace::zero(d);
    if (j == "full") return Subspace::full(d);
    throw schema_error("subspace keyword must be \"zero\" or \"full\"");
  }
  if (!j.is_array()) throw schema_error("subspace must be \"zero\", \"full\" or a list of generators");
  std::vector<RatVec> g;
  for (const auto& row : j) g.push_back(vec_of_length(row, d, "subspace generator"));
  return Subspace::span(d, g);
}

Json subspace_to_json(const Subspace& L) {
  Json rows = Json::array();
  for (const auto& r : L.basis_rows()) rows.push_back(ratvec_to_json(to_rat(r)));
  return rows;
}

Json bases_to_json(const std::vector<BasisSubset>& bases) {
  Json out = Json::array();
  for (const auto& B : bases) {
    Json one = Json::array();
    for (int i : B.B) one.push_back(i + 1);
    out.push_back(one);
  }
  return out;
}

Json chamber_to_json(const Chamber& ch) {
  return Json{{"sample", ratvec_to_json(ch.sample)}, {"bases", bases_to_json(ch.bases)}};
}

Json error_to_json(const Error& e) {
  const char* kind = e.kind() == ErrorKind::Schema     ? "schema"
                     : e.kind() == ErrorKind::Domain   ? "domain"
                     : e.kind() == ErrorKind::Resource ? "resource"
                                                       : "internal";
  return Json{{"kind", kind}, {"code", e.code()}, {"message", e.message()}};
}

Variant variant_from(const Json& spec, const CliOptions& opt, int d) {
  std::string name = opt.variant ? *opt.variant : spec.value("variant", std::string("exact"));
  Variant v;
  if (name == "exact")
    v.kind = Variant::Exact;
  else if (name == "barvinok")
    v.kind = Variant::Barvinok;
  else if (name == "conebycone")
    v.kind = Variant::ConeByCone;
  else
    throw schema_error("variant must be exact, barvinok or conebycone");
  if (opt.k)
    v.k = *opt.k;
  else if (spec.contains("k")) {
    if (!spec["k"].is_number_integer()) throw schema_error("\"k\" must be an integer");
    v.k = spec["k"].get<int>();
  } else {
    v.k = d;
  }
  v.L = spec.contains("subspace") ? subspace_from_json(spec["subspace"], d) : Subspace::zero(d);
  return v;
}

std::string variant_name(const Variant& v) {
  return v.kind == Variant::Exact ? "exact" : v.kind == Variant::Barvinok ? "barvinok" : "conebycone";
}

// The parametric family of a problem: which chamber, and how the output variables map to b.
struct Family {
  ParametricPolytope pp;
  Chamber ch;
  RatMatrix T;  // b = T·vars
  std::vector<std::string> names;
  bool specialized = false;

  RatVec b_at(const RatVec& vars) const { return specialized ? T * vars : vars; }
};

Chamber chamber_for(const ParametricPolytope& pp, const Json& spec, const RatVec& fallback) {
  if (spec.contains("b")) return chamber_of(pp, vec_of_length(spec["b"], pp.N, "\"b\""));
  // a sample on a wall is moved into an adjacent chamber whose closure still contains it
  return minkowski_chamber(pp, {fallback});
}

Family family_from_json(const Json& spec) {
  Family f;
  f.pp = make_polytope(mu_from_json(need(spec, "mu")));
  int N = f.pp.N;
  if (spec.contains("ray_b0")) {
    RatVec b0 = vec_of_length(spec["ray_b0"], N, "\"ray_b0\"");
    f.ch = chamber_for(f.pp, spec, b0);
    if (!in_closure(f.pp, f.ch, b0)) throw domain_error("OutsideChamber", "ray_b0 is not in the closure of the chamber");
    f.T = RatMatrix(N, 1);
    for (int j = 0; j < N; ++j) f.T(j, 0) = b0[j];
    f.names = {"t"};
    f.specialized = true;
  } else if (spec.contains("minkowski")) {
    const Json& m = spec["minkowski"];
    std::vector<RatVec> bs;
    if (m.contains("vertices")) {
      std::vector<std::vector<RatVec>> lists;
      for (const auto& poly : m["vertices"]) {
        std::vector<RatVec> verts;
        for (const auto& v : poly) verts.push_back(vec_of_length(v, f.pp.d, "vertex"));
        lists.push_back(verts);
      }
      bs = minkowski_support(lists, f.pp.mu);
    } else if (m.contains("b")) {
      for (const auto& b : m["b"]) bs.push_back(vec_of_length(b, N, "minkowski \"b\""));
    } else {
      throw schema_error("\"minkowski\" needs \"vertices\" or \"b\"");
    }
    if (bs.empty()) throw schema_error("\"minkowski\" has no summands");
    f.ch = spec.contains("b") ? chamber_of(f.pp, vec_of_length(spec["b"], N, "\"b\"")) : minkowski_chamber(f.pp, bs);
    for (const auto& b : bs)
      if (!in_closure(f.pp, f.ch, b)) throw domain_error("OutsideChamber", "a summand is not in the chamber closure");
    f.T = RatMatrix(N, static_cast<int>(bs.size()));
    for (size_t i = 0; i < bs.size(); ++i)
      for (int j = 0; j < N; ++j) f.T(j, static_cast<int>(i)) = bs[i][j];
    f.names = default_names(static_cast<int>(bs.size()), "t");
    f.specialized = true;
  } else {
    f.ch = chamber_of(f.pp, vec_of_length(need(spec, "b"), N, "\"b\""));
    f.names = default_names(N, "b");
  }
  return f;
}

int nvars(const Family& f) { return f.specialized ? f.T.cols : f.pp.N; }

QP family_qp(const Family& f, const Variant& v, const Weight& h) {
  QP q = chamber_qp(f.pp, f.ch, v, h);
  return f.specialized ? q.specialize(f.T) : q;
}

// evaluation points: --eval (flattened) or "eval" in the document
std::vector<RatVec> eval_points(const Json& spec, const CliOptions& opt, int n) {
  std::vector<RatVec> out;
  std::vector<Rat> flat = opt.eval;
  if (flat.empty() && spec.contains("eval")) {
    for (const auto& p : spec["eval"]) {
      if (p.is_array())
        out.push_back(vec_of_length(p, n, "evaluation point"));
      else
        flat.push_back(rat_from_json(p));
    }
  }
  if (flat.size() % n != 0) throw schema_error("evaluation list length is not a multiple of " + std::to_string(n));
  for (size_t i = 0; i < flat.size(); i += n) out.emplace_back(flat.begin() + i, flat.begin() + i + n);
  return out;
}

Rat oracle_value(const Family& f, const RatVec& vars, const Subspace& L, const Weight& h) {
  return brute_intermediate_sum(vpolytope(f.pp, f.b_at(vars)), L, h);
}

std::vector<Rat> grid_from(const Json& spec, const CliOptions& opt) {
  std::vector<Rat> g;
  if (opt.grid)
    g = *opt.grid;
  else if (spec.contains("grid"))
    g = ratvec_from_json(spec["grid"]);
  else
    throw schema_error("plotdata needs --grid min,max,step or \"grid\"");
  if (g.size() != 3 || g[2] <= 0 || g[1] < g[0]) throw schema_error("grid must be min,max,step with step > 0");
  std::vector<Rat> pts;
  for (Rat t = g[0]; t <= g[1]; t += g[2]) pts.push_back(t);
  if (pts.size() > 100000) throw resource_error("grid has more than 100000 points");
  return pts;
}

}  // namespace

Json cmd_chambers(const Json& spec, const CliOptions&) {
  auto pp = make_polytope(mu_from_json(need(spec, "mu")));
  Json out{{"schema", kSchemaVersion}, {"N", pp.N}, {"d", pp.d}, {"bases", bases_to_json(enumerate_bases(pp))}};
  std::vector<RatVec> samples;
  if (spec.contains("samples"))
    for (const auto& s : spec["samples"]) samples.push_back(vec_of_length(s, pp.N, "sample"));
  else if (spec.contains("b"))
    samples.push_back(vec_of_length(spec["b"], pp.N, "\"b\""));
  Json chambers = Json::array();
  for (const auto& s : samples) {
    try {
      Chamber ch = chamber_of(pp, s);
      Json c = chamber_to_json(ch);
      Json redundant = Json::array();
      for (int j = 0; j < pp.N; ++j) {
        bool used = false;
        for (const auto& B : ch.bases) used = used || std::find(B.B.begin(), B.B.end(), j) != B.B.end();
        if (!used) redundant.push_back(j + 1);
      }
      c["redundant"] = redundant;
      chambers.push_back(c);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Domain) throw;
      chambers.push_back(Json{{"sample", ratvec_to_json(s)}, {"error", error_to_json(e)}});
    }
  }
  out["chambers"] = chambers;
  return out;
}

Json cmd_ehrhart(const Json& spec, const CliOptions& opt) {
  Family f = family_from_json(spec);
  Variant v = variant_from(spec, opt, f.pp.d);
  Weight h = weight_from_json(spec, f.pp.d);
  QP q = family_qp(f, v, h);
  auto deg = q.degrees();
  Json out{{"schema", kSchemaVersion},
           {"variant", variant_name(v)},
           {"chamber", chamber_to_json(f.ch)},
           {"variables", f.names},
           {"qp", qp_to_json(q)},
           {"text", q.to_string(f.names)},
           {"degrees", Json{{"poly", deg.poly}, {"step", deg.step}, {"local", deg.local}}}};
  if (v.kind == Variant::Exact)
    out["subspace"] = subspace_to_json(v.L);
  else
    out["k"] = v.k;
  Json evals = Json::array();
  bool all_ok = true;
  for (const auto& p : eval_points(spec, opt, nvars(f))) {
    Json e{{"at", ratvec_to_json(p)}, {"value", rat_to_json(q.eval(p))}};
    if (opt.oracle_check) {
      if (v.kind != Variant::Exact) throw schema_error("--oracle-check applies to the exact variant only");
      Rat o = oracle_value(f, p, v.L, h);
      e["oracle"] = rat_to_json(o);
      e["agree"] = o == q.eval(p);
      all_ok = all_ok && o == q.eval(p);
    }
    evals.push_back(e);
  }
  if (!evals.empty()) out["evaluations"] = evals;
  if (opt.oracle_check) out["oracle_agrees"] = all_ok;
  return out;
}

Json cmd_plotdata(const Json& spec, const CliOptions& opt) {
  Family f = family_from_json(spec);
  if (nvars(f) != 1) throw schema_error("plotdata needs a one-parameter family (\"ray_b0\")");
  Weight h = weight_from_json(spec, f.pp.d);
  struct Column {
    std::string name;
    Variant v;
    QP q;
  };
  std::vector<Column> cols;
  auto make = [&](const Json& cspec) {
    Variant v = variant_from(cspec, CliOptions{}, f.pp.d);
    std::string name = variant_name(v);
    if (v.kind == Variant::Exact)
      name += v.L.dim() == 0 ? ":zero" : v.L.dim() == f.pp.d ? ":full" : ":dim" + std::to_string(v.L.dim());
    else
      name += ":k" + std::to_string(v.k);
    if (cspec.contains("name")) name = cspec["name"].get<std::string>();
    cols.push_back(Column{name, v, family_qp(f, v, h)});
  };
  if (spec.contains("columns")) {
    for (const auto& c : spec["columns"]) make(c);
  } else {
    Json top = Json::object();
    for (const char* key : {"variant", "k", "subspace"})
      if (spec.contains(key)) top[key] = spec[key];
    Variant v = variant_from(top, opt, f.pp.d);
    cols.push_back(Column{variant_name(v), v, family_qp(f, v, h)});
  }
  auto ts = grid_from(spec, opt);
  std::ostringstream csv;
  csv << "t";
  for (const auto& c : cols) csv << "," << c.name;
  csv << "\n";
  Json rows = Json::array();
  bool all_ok = true;
  for (const auto& t : ts) {
    csv << to_decimal(t, 12);
    Json row{{"t", rat_to_json(t)}};
    for (const auto& c : cols) {
      Rat val = c.q.eval(RatVec{t});
      csv << "," << to_decimal(val, 12);
      row[c.name] = rat_to_json(val);
      if (opt.oracle_check && c.v.kind == Variant::Exact) {
        bool ok = oracle_value(f, RatVec{t}, c.v.L, h) == val;
        all_ok = all_ok && ok;
      }
    }
    csv << "\n";
    rows.push_back(row);
  }
  Json out{{"schema", kSchemaVersion}, {"chamber", chamber_to_json(f.ch)}, {"rows", rows}, {"csv", csv.str()}};
  Json names = Json::array();
  for (const auto& c : cols) names.push_back(c.name);
  out["columns"] = names;
  if (opt.oracle_check) out["oracle_agrees"] = all_ok;
  return out;
}

Json cmd_oracle(const Json& spec, const CliOptions& opt) {
  Json results = Json::array();
  if (spec.contains("vertices")) {
    const Json& vs = spec["vertices"];
    if (!vs.is_array() || vs.empty()) throw schema_error("\"vertices\" must be a non-empty list");
    int d = static_cast<int>(vs[0].size());
    std::vector<RatVec> verts;
    for (const auto& v : vs) verts.push_back(vec_of_length(v, d, "vertex"));
    Weight h = weight_from_json(spec, d);
    Subspace L = spec.contains("subspace") ? subspace_from_json(spec["subspace"], d) : Subspace::zero(d);
    std::vector<Rat> scales = opt.eval.empty() ? std::vector<Rat>{Rat(1)} : opt.eval;
    for (const auto& t : scales) {
      std::vector<RatVec> sv;
      for (const auto& v : verts) {
        RatVec w = v;
        for (auto& x : w) x *= t;
        sv.push_back(w);
      }
      auto p = vpolytope(d, sv);
      results.push_back(Json{{"at", rat_to_json(t)},
                             {"value", rat_to_json(brute_intermediate_sum(p, L, h))},
                             {"integral", rat_to_json(integrate_polytope(p, h))}});
    }
  } else {
    auto pp = make_polytope(mu_from_json(need(spec, "mu")));
    Weight h = weight_from_json(spec, pp.d);
    Subspace L = spec.contains("subspace") ? subspace_from_json(spec["subspace"], pp.d) : Subspace::zero(pp.d);
    std::vector<std::pair<Json, RatVec>> bs;
    if (spec.contains("ray_b0")) {
      RatVec b0 = vec_of_length(spec["ray_b0"], pp.N, "\"ray_b0\"");
      std::vector<Rat> ts = opt.eval;
      if (ts.empty() && spec.contains("eval"))
        for (const auto& t : spec["eval"]) ts.push_back(rat_from_json(t));
      if (ts.empty()) ts.push_back(Rat(1));
      for (const auto& t : ts) {
        RatVec b = b0;
        for (auto& x : b) x *= t;
        bs.emplace_back(rat_to_json(t), b);
      }
    } else {
      RatVec b = vec_of_length(need(spec, "b"), pp.N, "\"b\"");
      bs.emplace_back(ratvec_to_json(b), b);
    }
    for (const auto& [at, b] : bs) {
      auto p = vpolytope(pp, b);
      results.push_back(Json{{"at", at},
                             {"value", rat_to_json(brute_intermediate_sum(p, L, h))},
                             {"integral", rat_to_json(integrate_polytope(p, h))}});
    }
  }
  return Json{{"schema", kSchemaVersion}, {"results", results}};
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Intermediate and Ehrhart quasi-polynomials of parametric polytopes"};
  app.require_subcommand(1);
  std::string input, output, variant, eval, grid;
  CliOptions opt;
  int k = -1;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", input, "problem document (JSON); '-' for stdin")->required();
    sub->add_option("--output", output, "write here instead of stdout");
    sub->add_option("--format", opt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--variant", variant, "exact, barvinok or conebycone")
        ->check(CLI::IsMember({"exact", "barvinok", "conebycone"}));
    sub->add_option("--k", k, "codimension for the patched variants");
    sub->add_option("--eval", eval, "comma-separated rationals");
    sub->add_option("--grid", grid, "min,max,step");
    sub->add_flag("--oracle-check", opt.oracle_check, "compare against brute-force enumeration");
  };
  auto* chambers = app.add_subcommand("chambers", "bases and chamber memberships");
  auto* ehrhart = app.add_subcommand("ehrhart", "chamber quasi-polynomial, optionally specialized");
  auto* plotdata = app.add_subcommand("plotdata", "values on a grid of dilations");
  auto* oracle = app.add_subcommand("oracle", "brute-force intermediate sum and integral");
  for (auto* s : {chambers, ehrhart, plotdata, oracle}) add_common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  auto emit = [&](const std::string& text) {
    if (output.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(output);
      if (!f) {
        std::cerr << "cannot write " << output << "\n";
        return false;
      }
      f << text;
    }
    return true;
  };

  try {
    if (!variant.empty()) opt.variant = variant;
    if (k >= 0) opt.k = k;
    auto split = [](const std::string& s) {
      std::vector<Rat> out;
      std::stringstream ss(s);
      std::string item;
      while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse_rat(item));
      return out;
    };
    if (!eval.empty()) opt.eval = split(eval);
    if (!grid.empty()) opt.grid = split(grid);

    Json spec;
    try {
      if (input == "-") {
        spec = Json::parse(std::cin);
      } else {
        std::ifstream f(input);
        if (!f) throw schema_error("cannot read " + input);
        spec = Json::parse(f);
      }
    } catch (const Json::exception& e) {
      throw schema_error(std::string("invalid JSON: ") + e.what());
    }
    if (!spec.is_object()) throw schema_error("problem document must be a JSON object");
    if (spec.contains("schema") && spec["schema"] != kSchemaVersion)
      throw schema_error("unsupported schema version");

    Json out;
    if (chambers->parsed())
      out = cmd_chambers(spec, opt);
    else if (ehrhart->parsed())
      out = cmd_ehrhart(spec, opt);
    else if (plotdata->parsed())
      out = cmd_plotdata(spec, opt);
    else
      out = cmd_oracle(spec, opt);

    std::string text;
    if (opt.format == "csv") {
      if (!out.contains("csv")) throw schema_error("csv output is only available for plotdata");
      text = out["csv"].get<std::string>();
    } else {
      text = out.dump(2) + "\n";
    }
    if (!emit(text)) return 2;

    int rc = 0;
    if (out.contains("chambers"))
      for (const auto& c : out["chambers"])
        if (c.contains("error")) rc = 3;
    if (out.contains("oracle_agrees") && !out["oracle_agrees"].get<bool>()) {
      std::cerr << "oracle check failed\n";
      rc = 1;
    }
    return rc;
  } catch (const Error& e) {
    Json diag{{"schema", kSchemaVersion}, {"error", error_to_json(e)}};
    emit(diag.dump(2) + "\n");
    std::cerr << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::Schema:
        return 2;
      case ErrorKind::Domain:
        return 3;
      case ErrorKind::Resource:
        return 4;
      default:
        return 1;
    }
  }
}

}  // namespace iqp
