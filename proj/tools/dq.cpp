#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "dq/io.hpp"
#include "dq/selftest.hpp"

using namespace dq;

namespace {

enum class Format { Json, Latex, Text };

// A consistency failure found while computing; exit status 1.
struct Inconsistent : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RRange {
  int lo = 0, hi = 0;
};

RRange parse_range(const std::string& s) {
  RRange r;
  auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      r.lo = r.hi = std::stoi(s);
    } else {
      r.lo = std::stoi(s.substr(0, dots));
      r.hi = std::stoi(s.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("bad range: " + s);
  }
  if (r.lo < 0 || r.hi < r.lo) throw std::invalid_argument("bad range: " + s);
  return r;
}

void check_length(const SurfaceModel& S, size_t n, const char* what) {
  if (static_cast<int>(n) != S.rank())
    throw std::invalid_argument(std::string(what) + " has " + std::to_string(n) + " entries, surface rank is " +
                                std::to_string(S.rank()));
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string latex_class(const IVec& v) { return "(" + format_class(v) + ")"; }

json class_rows_json(const std::vector<ClassRow>& rows) {
  json a = json::array();
  for (const auto& r : rows)
    a.push_back({{"class", format_class(r.w)}, {"vector", to_json(r.w)}, {"order", r.order}, {"set", r.set},
                 {"epsilon", r.epsilon}});
  return a;
}

void print_class_rows(const std::vector<ClassRow>& rows, Format fmt, bool with_orders) {
  if (fmt == Format::Latex) {
    std::cout << "\\begin{tabular}{l" << (with_orders ? "r" : "") << "l}\n";
    for (const auto& r : rows) {
      std::cout << "$" << latex_class(r.w) << "$";
      if (with_orders) std::cout << " & " << r.order;
      std::cout << " & " << r.set << " \\\\\n";
    }
    std::cout << "\\end{tabular}\n";
    return;
  }
  for (const auto& r : rows) {
    std::cout << r.set << "  (" << format_class(r.w) << ")";
    if (with_orders) std::cout << "  order " << r.order;
    std::cout << "\n";
  }
}

std::vector<ClassRow> rows_of(const SurfaceModel& S, const IVec& F, const IVec& G, const BasicClassSets& B) {
  std::vector<ClassRow> rows;
  auto add = [&](const std::vector<BasicClass>& v, const char* name) {
    for (const auto& b : v) rows.push_back({b.w, b.order, name, epsilon_W(S, F, G, b.w)});
  };
  add(B.BF, "BF");
  add(B.BG, "BG");
  add(B.BI, "BI");
  return rows;
}

// ---------------------------------------------------------------- subcommands

struct Common {
  std::string surface = "p2blow:9";
  std::string C, F, G, x;
  int zorder = 8;
  std::string qorder;
};

InvariantQuery make_query(const Common& c) {
  InvariantQuery q;
  q.S = parse_surface(c.surface);
  q.F = parse_class(c.F);
  check_length(q.S, q.F.size(), "F");
  if (!is_cusp_class(q.S, q.F)) throw std::invalid_argument("F is not a cusp class");
  q.C = c.C.empty() ? IVec(q.S.rank(), 0) : parse_class(c.C);
  check_length(q.S, q.C.size(), "C");
  if (!c.G.empty()) {
    q.G = parse_class(c.G);
    check_length(q.S, q.G->size(), "G");
  }
  q.x = parse_rational_class(c.x);
  check_length(q.S, q.x.size(), "x");
  q.zorder = c.zorder;
  if (!c.qorder.empty()) q.qorder = parse_rational(c.qorder);
  return q;
}

int cmd_mfseries(const std::string& name, const std::string& qorder, bool list, Format fmt) {
  if (list) {
    for (const auto& n : catalog_names()) std::cout << n << "\n";
    return 0;
  }
  QSeries s = named_series(name, parse_rational(qorder));
  if (fmt == Format::Json) {
    json j = to_json(s);
    j["name"] = name;
    emit(j);
  } else {
    std::cout << (fmt == Format::Latex ? s.latex() : s.str()) << "\n";
  }
  return 0;
}

int cmd_donaldson(const Common& c, const std::string& rspec, const std::string& period, Format fmt) {
  InvariantQuery q = make_query(c);
  RRange rr = parse_range(rspec);
  std::vector<NumericZ> vals;
  if (period.empty()) {
    vals = psi_boundary_range(q, rr.hi);
  } else {
    QVec ab = parse_rational_class(period);
    if (ab.size() != 2) throw std::invalid_argument("--period takes two rationals a,b");
    vals = interior_invariant_range(q.S, q.C, ab[0], ab[1], q.x, rr.hi, q.zorder);
  }
  if (fmt == Format::Json) {
    json out;
    out["surface"] = q.S.name();
    out["C"] = format_class(q.C);
    out["F"] = format_class(q.F);
    out["G"] = format_class(reference_cusp(q));
    out["x"] = rational_vector_json(q.x);
    if (!period.empty()) out["period"] = period;
    json by_r = json::array();
    for (int r = rr.lo; r <= rr.hi; ++r) by_r.push_back({{"r", r}, {"value", to_json(vals[r])}});
    out["invariants"] = by_r;
    emit(out);
    return 0;
  }
  for (int r = rr.lo; r <= rr.hi; ++r) {
    if (fmt == Format::Latex)
      std::cout << "p^{" << r << "}: & " << latex(vals[r]) << " \\\\\n";
    else
      std::cout << "r=" << r << ": " << str(vals[r]) << "\n";
  }
  return 0;
}

int cmd_structure(const Common& c, int R, Format fmt) {
  InvariantQuery q = make_query(c);
  if (R < 0) {
    BasicClassSets B = basic_classes(q.S, q.F, reference_cusp(q));
    R = 2 * std::max(B.k(), 0) + 3;
  }
  StructureReport rep = structure_theorem(q, R);
  if (fmt == Format::Json) {
    json out;
    out["sigma"] = rep.sigma;
    out["M"] = rep.M ? json(*rep.M) : json(nullptr);
    out["k"] = rep.k;
    out["classes"] = class_rows_json(rep.classes);
    json P = json::object();
    for (const auto& [n, p] : rep.P_expand) P[std::to_string(n)] = to_json(p);
    out["P"] = P;
    out["leading"] = to_json(rep.leading);
    out["leading_expected"] = to_json(rep.leading_expected);
    out["simple_type"] = rep.simple_type;
    out["parts_agree"] = rep.parts_agree;
    out["leading_ok"] = rep.leading_ok;
    out["mismatches"] = rep.mismatches;
    emit(out);
  } else if (fmt == Format::Latex) {
    std::cout << "\\begin{tabular}{rl}\n";
    for (const auto& [n, p] : rep.P_expand) std::cout << "$P_{" << n << "}$ & $" << p.str("t") << "$ \\\\\n";
    std::cout << "\\end{tabular}\n";
    std::cout << "leading: $" << latex(rep.leading) << "$\n";
  } else {
    std::cout << "sigma = " << rep.sigma << ", k = " << rep.k << "\n";
    for (const auto& [n, p] : rep.P_expand) std::cout << "P_" << n << " = " << p.str("t") << "\n";
    std::cout << "leading: " << str(rep.leading) << "\n";
    std::cout << "expected: " << str(rep.leading_expected) << "\n";
  }
  if (!rep.ok()) {
    std::string why = "structure theorem check failed";
    for (const auto& m : rep.mismatches) why += "; " + m;
    throw Inconsistent(why);
  }
  return 0;
}

int cmd_basic_classes(const std::string& surface, const std::string& Ft, const std::string& Gt, bool with_orders,
                      Format fmt) {
  SurfaceModel S = parse_surface(surface);
  IVec F = parse_class(Ft);
  check_length(S, F.size(), "F");
  if (!is_cusp_class(S, F)) throw std::invalid_argument("F is not a cusp class");
  IVec G = Gt.empty() ? S.default_G(1) : parse_class(Gt);
  check_length(S, G.size(), "G");
  BasicClassSets B = basic_classes(S, F, G);
  auto rows = rows_of(S, F, G, B);
  if (fmt == Format::Json) {
    json out;
    out["surface"] = S.name();
    out["F"] = format_class(F);
    out["G"] = format_class(G);
    out["sigma"] = B.sigma;
    out["k"] = B.k();
    out["classes"] = class_rows_json(rows);
    emit(out);
  } else {
    if (fmt == Format::Text) std::cout << "sigma = " << B.sigma << ", k = " << B.k() << "\n";
    print_class_rows(rows, fmt, with_orders);
  }
  return 0;
}

int cmd_blowup(int max_k, const std::string& reading, Format fmt) {
  GaussianReading rd;
  if (reading == "f2") rd = GaussianReading::OverFSquared;
  else if (reading == "f") rd = GaussianReading::OverF;
  else throw std::invalid_argument("--reading is f2 or f");
  BlowupSeries bs;
  try {
    bs = blowup_polys(max_k, rd);
  } catch (const std::domain_error& e) {
    throw Inconsistent(e.what());
  }
  if (fmt == Format::Json) {
    json out;
    json B = json::array(), Sj = json::array();
    for (int k = 0; k <= max_k; ++k) {
      B.push_back(to_json(bs.B[k]));
      Sj.push_back(to_json(bs.S[k]));
    }
    out["B"] = B;
    out["S"] = Sj;
    out["variable"] = "U";
    emit(out);
    return 0;
  }
  for (int k = 0; k <= max_k; ++k) {
    if (fmt == Format::Latex)
      std::cout << "$B_{" << k << "}$ & $" << bs.B[k].str() << "$ & $S_{" << k << "}$ & $" << bs.S[k].str()
                << "$ \\\\\n";
    else
      std::cout << "B_" << k << " = " << bs.B[k].str() << "    S_" << k << " = " << bs.S[k].str() << "\n";
  }
  return 0;
}

int cmd_swreport(const std::string& surface, const std::string& Ft, Format fmt) {
  SurfaceModel S = parse_surface(surface);
  IVec F = parse_class(Ft);
  check_length(S, F.size(), "F");
  if (!is_cusp_class(S, F)) throw std::invalid_argument("F is not a cusp class");
  SWReport rep = sw_report(S, F);
  if (fmt == Format::Json) {
    json out;
    out["R_F"] = class_rows_json(rep.rf);
    out["sw_basic"] = class_rows_json(rep.sw_basic);
    out["omega"] = rep.omega_template;
    emit(out);
    return 0;
  }
  std::cout << "R_F:\n";
  print_class_rows(rep.rf, fmt, true);
  std::cout << "SW basic classes:\n";
  print_class_rows(rep.sw_basic, fmt, true);
  std::cout << rep.omega_template << "\n";
  return 0;
}

std::string seconds_str(double s) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << s;
  return os.str();
}

int cmd_selftest(const std::string& suite, Format fmt) {
  bool all_pass = true;
  json rows = json::array();
  run_suite(suite, [&](const CriterionResult& r) {
    all_pass = all_pass && r.pass;
    if (fmt == Format::Json) {
      rows.push_back({{"id", r.id}, {"suite", r.suite}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail},
                      {"seconds", seconds_str(r.seconds)}});
    } else {
      std::cout << format_result(r) << "\n";
      if (!r.pass) {
        std::istringstream in(r.detail);
        for (std::string line; std::getline(in, line);) std::cout << "    " << line << "\n";
      }
      std::cout.flush();
    }
  });
  if (fmt == Format::Json) emit(rows);
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Donaldson invariants of rational surfaces from modular and indefinite theta series"};
  app.require_subcommand(1);
  app.footer("The theta normalization uses the phase 1^{-3Q(c)/4}, i.e. exp(2 pi i (-3 c.c/8)).");
  std::string format = "json";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "latex", "text"}));

  auto add_common = [](CLI::App* sub, Common& c) {
    sub->add_option("--surface", c.surface, "p2blow:N, p1xp1, p1xp1blow:N or custom:<file>");
    sub->add_option("--C", c.C, "class C (default 0)");
    sub->add_option("--F", c.F, "cusp class F")->required();
    sub->add_option("--G", c.G, "reference cusp G");
    sub->add_option("--x", c.x, "rational class x")->required();
    sub->add_option("--zorder", c.zorder, "highest z-power")->check(CLI::Range(0, 40));
    sub->add_option("--qorder", c.qorder, "q-order override");
  };

  std::string mf_name = "R", mf_qorder = "5";
  bool mf_list = false;
  auto* mf = app.add_subcommand("mfseries", "q-expansion of a catalog modular form");
  mf->add_option("--name", mf_name, "catalog name");
  mf->add_option("--qorder", mf_qorder, "exponents below this are exact");
  mf->add_flag("--list", mf_list, "print the catalog names");

  Common dc;
  std::string r_spec = "0", period;
  auto* don = app.add_subcommand("donaldson", "boundary or interior invariants on e^{xz} p^r");
  add_common(don, dc);
  don->add_option("--r", r_spec, "r or lo..hi");
  don->add_option("--period", period, "a,b for the interior chamber a F + b G");

  Common sc;
  int R = -1;
  auto* st = app.add_subcommand("structure", "structure theorem decomposition and checks");
  add_common(st, sc);
  st->add_option("--R", R, "highest p-power used (default 2k + 3)");

  std::string bc_surface = "p2blow:9", bc_F, bc_G;
  bool with_orders = false;
  auto* bc = app.add_subcommand("basic-classes", "basic classes for a cusp pair");
  bc->add_option("--surface", bc_surface);
  bc->add_option("--F", bc_F)->required();
  bc->add_option("--G", bc_G);
  bc->add_flag("--with-orders", with_orders);

  int max_k = 6;
  std::string reading = "f2";
  auto* bl = app.add_subcommand("blowup", "blowup polynomials B_k, S_k in U");
  bl->add_option("--max-k", max_k)->check(CLI::Range(0, 20));
  bl->add_option("--reading", reading, "Gaussian over f^2 (f2) or over f (f)");

  std::string sw_surface = "p2blow:9", sw_F;
  auto* sw = app.add_subcommand("swreport", "B_F, the SW basic set and the Omega template");
  sw->add_option("--surface", sw_surface);
  sw->add_option("--F", sw_F)->required();

  std::string suite = "all";
  auto* self = app.add_subcommand("selftest", "run the acceptance checks");
  self->add_option("--suite", suite)->check(CLI::IsMember(suite_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Format fmt = format == "latex" ? Format::Latex : format == "text" ? Format::Text : Format::Json;
  try {
    if (*mf) return cmd_mfseries(mf_name, mf_qorder, mf_list, fmt);
    if (*don) return cmd_donaldson(dc, r_spec, period, fmt);
    if (*st) return cmd_structure(sc, R, fmt);
    if (*bc) return cmd_basic_classes(bc_surface, bc_F, bc_G, with_orders, fmt);
    if (*bl) return cmd_blowup(max_k, reading, fmt);
    if (*sw) return cmd_swreport(sw_surface, sw_F, fmt);
    if (*self) return cmd_selftest(suite, fmt);
  } catch (const Inconsistent& e) {
    std::cerr << "inconsistent: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
