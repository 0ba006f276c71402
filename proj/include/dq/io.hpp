#pragma once

#include <json.hpp>

#include "dq/donaldson.hpp"

namespace dq {

using json = nlohmann::json;

// A rational element is a single "p/q" string, anything else an array of four.
json to_json(const Cyclo8& c);
Cyclo8 cyclo_from_json(const json& j);

// {"grid": 48, "trunc": T, "terms": [[e, coeff], ...]}; trunc is null when exact.
json to_json(const QSeries& s);
QSeries qseries_from_json(const json& j);

// {"zorder": Z, "terms": [[n, coeff], ...]} with coeff a number or a q-series.
json to_json(const NumericZ& a);
json to_json(const FormalZ& a);
NumericZ numericz_from_json(const json& j);
FormalZ formalz_from_json(const json& j);

json to_json(const UPoly& p);
json to_json(const TPoly& p);
json to_json(const IVec& v);
json rational_vector_json(const QVec& v);

// LaTeX of a z-series: one line per z-power.
std::string latex(const NumericZ& a, const std::string& var = "z");

}  // namespace dq
