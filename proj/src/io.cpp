#include "dq/io.hpp"

#include <sstream>

namespace dq {

json to_json(const Cyclo8& c) {
  if (c.is_rational()) return c[0].get_str();
  json a = json::array();
  for (int k = 0; k < 4; ++k) a.push_back(c[k].get_str());
  return a;
}

Cyclo8 cyclo_from_json(const json& j) {
  if (j.is_string()) return Cyclo8(parse_rational(j.get<std::string>()));
  if (j.is_number_integer()) return Cyclo8(j.get<long>());
  if (!j.is_array() || j.size() != 4) throw std::invalid_argument("cyclotomic number must be a string or 4 strings");
  Rational c[4];
  for (int k = 0; k < 4; ++k) c[k] = parse_rational(j[k].get<std::string>());
  return Cyclo8(c[0], c[1], c[2], c[3]);
}

json to_json(const QSeries& s) {
  json terms = json::array();
  for (const auto& [e, c] : s.terms()) terms.push_back(json::array({e, to_json(c)}));
  json out;
  out["grid"] = kGrid;
  out["trunc"] = s.exact() ? json(nullptr) : json(s.trunc());
  out["terms"] = std::move(terms);
  return out;
}

QSeries qseries_from_json(const json& j) {
  if (j.at("grid").get<int64_t>() != kGrid) throw std::invalid_argument("unsupported exponent grid");
  QSeries s = j.at("trunc").is_null() ? QSeries() : QSeries(j.at("trunc").get<int64_t>());
  for (const auto& t : j.at("terms")) s.add_term(t.at(0).get<int64_t>(), cyclo_from_json(t.at(1)));
  return s;
}

namespace {

template <class C>
json zs_json(const ZSeries<C>& a) {
  json terms = json::array();
  for (const auto& [n, c] : a.terms()) terms.push_back(json::array({n, to_json(c)}));
  json out;
  out["zorder"] = a.zorder();
  out["terms"] = std::move(terms);
  return out;
}

}  // namespace

json to_json(const NumericZ& a) { return zs_json(a); }
json to_json(const FormalZ& a) { return zs_json(a); }

NumericZ numericz_from_json(const json& j) {
  NumericZ a(j.at("zorder").get<int>());
  for (const auto& t : j.at("terms")) a.set(t.at(0).get<int>(), cyclo_from_json(t.at(1)));
  return a;
}

FormalZ formalz_from_json(const json& j) {
  FormalZ a(j.at("zorder").get<int>());
  for (const auto& t : j.at("terms")) a.set(t.at(0).get<int>(), qseries_from_json(t.at(1)));
  return a;
}

json to_json(const UPoly& p) {
  json a = json::array();
  for (const auto& c : p.c) a.push_back(to_json(c));
  return a;
}

json to_json(const TPoly& p) {
  json a = json::array();
  for (const auto& c : p.p) a.push_back(to_json(c));
  return a;
}

json to_json(const IVec& v) { return json(std::vector<int64_t>(v.begin(), v.end())); }

json rational_vector_json(const QVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

std::string latex(const NumericZ& a, const std::string& var) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, c] : a.terms()) {
    bool simple = c.is_rational();
    bool neg = simple && c[0] < 0;
    std::string cs = neg ? (-c).latex() : c.latex();
    if (!simple) cs = "\\left(" + cs + "\\right)";
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    first = false;
    if (n == 0) {
      os << cs;
      continue;
    }
    if (cs != "1") os << cs;
    os << var;
    if (n != 1) os << "^{" << n << "}";
  }
  if (!first) os << " + ";
  os << "O(" << var << "^{" << a.zorder() + 1 << "})";
  return os.str();
}

}  // namespace dq
