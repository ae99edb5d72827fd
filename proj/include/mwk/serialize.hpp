#pragma once

#include <json.hpp>

#include "mwk/kmw.hpp"

namespace mwk {

using Json = nlohmann::ordered_json;

Json to_json(const DiagonalForm& f);
Json to_json(const GramMatrix& g);
Json to_json(const GWElement& x);
/// {form, degree}
Json to_json(const WittClass& w, int degree = 0);
Json to_json(const IFiltClass& c);
Json to_json(const MilnorSymbolSum& s);
Json to_json(const JElement& j);
/// {degree, kind, payload}
Json to_json(const CanonicalKMW& c);
Json to_json(const Decision& d);

DiagonalForm diagonal_from_json(const Field& field, const Json& j);
GramMatrix gram_from_json(const Field& field, const Json& j);
GWElement gw_from_json(const Field& field, const Json& j);
/// Recomputes the anisotropic representative of the stored form.
WittClass witt_from_json(const Field& field, const Json& j);
MilnorSymbolSum symbols_from_json(const Field& field, const Json& j);

}  // namespace mwk
