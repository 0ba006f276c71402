#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dq/io.hpp"
#include "dq/selftest.hpp"

namespace py = pybind11;
using namespace dq;

namespace {

// Everything crosses the boundary as JSON text so that numbers stay exact strings.
std::string dump(const json& j) { return j.dump(); }

json classes_json(const BasicClassSets& B) {
  json rows = json::array();
  auto add = [&](const std::vector<BasicClass>& v, const char* set) {
    for (const auto& b : v) rows.push_back({{"class", format_class(b.w)}, {"order", b.order}, {"set", set}});
  };
  add(B.BF, "BF");
  add(B.BG, "BG");
  add(B.BI, "BI");
  return {{"sigma", B.sigma}, {"k", B.k()}, {"M", B.M ? json(*B.M) : json(nullptr)}, {"classes", rows}};
}

InvariantQuery make_query(const std::string& surface, const std::string& C, const std::string& F,
                          const std::string& x, const std::string& G, int zorder) {
  InvariantQuery q;
  q.S = parse_surface(surface);
  q.C = C.empty() ? IVec(q.S.rank(), 0) : parse_class(C);
  q.F = parse_class(F);
  if (!G.empty()) q.G = parse_class(G);
  q.x = parse_rational_class(x);
  q.zorder = zorder;
  for (size_t n : {q.C.size(), q.F.size(), q.x.size()})
    if (static_cast<int>(n) != q.S.rank()) throw std::invalid_argument("class length does not match the surface");
  return q;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact q-series, indefinite theta functions and Donaldson invariants of rational surfaces";

  m.def("catalog_names", &catalog_names);
  m.def("parse_class", &parse_class);
  m.def("format_class", [](const IVec& v) { return format_class(v); });

  m.def(
      "mfseries",
      [](const std::string& name, const std::string& qorder) {
        return dump(to_json(named_series(name, parse_rational(qorder))));
      },
      py::arg("name"), py::arg("qorder"));

  m.def(
      "basic_classes",
      [](const std::string& surface, const std::string& F, const std::string& G) {
        SurfaceModel S = parse_surface(surface);
        IVec f = parse_class(F);
        return dump(classes_json(basic_classes(S, f, G.empty() ? S.default_G(1) : parse_class(G))));
      },
      py::arg("surface"), py::arg("F"), py::arg("G") = "");

  m.def(
      "donaldson",
      [](const std::string& surface, const std::string& C, const std::string& F, const std::string& x, int rmax,
         int zorder, const std::string& G) {
        InvariantQuery q = make_query(surface, C, F, x, G, zorder);
        json out = json::array();
        for (const auto& v : psi_boundary_range(q, rmax)) out.push_back(to_json(v));
        return dump(out);
      },
      py::arg("surface"), py::arg("C"), py::arg("F"), py::arg("x"), py::arg("rmax") = 0, py::arg("zorder") = 8,
      py::arg("G") = "");

  m.def(
      "structure",
      [](const std::string& surface, const std::string& C, const std::string& F, const std::string& x, int R,
         int zorder) {
        StructureReport r = structure_theorem(make_query(surface, C, F, x, "", zorder), R);
        json P = json::object();
        for (const auto& [n, p] : r.P_expand) P[std::to_string(n)] = to_json(p);
        return dump({{"k", r.k}, {"ok", r.ok()}, {"P", P}, {"leading", to_json(r.leading)},
                     {"mismatches", r.mismatches}});
      },
      py::arg("surface"), py::arg("C"), py::arg("F"), py::arg("x"), py::arg("R") = 5, py::arg("zorder") = 8);

  m.def(
      "blowup",
      [](int max_k) {
        BlowupSeries bs = blowup_polys(max_k);
        json B = json::array(), S = json::array();
        for (int k = 0; k <= max_k; ++k) {
          B.push_back(to_json(bs.B[k]));
          S.push_back(to_json(bs.S[k]));
        }
        return dump({{"B", B}, {"S", S}});
      },
      py::arg("max_k") = 6);

  m.def(
      "selftest",
      [](const std::string& suite) {
        json out = json::array();
        for (const auto& r : run_suite(suite))
          out.push_back({{"id", r.id}, {"suite", r.suite}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
        return dump(out);
      },
      py::arg("suite") = "all");

  py::register_exception<OrderStarvation>(m, "OrderStarvation", PyExc_ArithmeticError);
}
