#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "legdef/germs.hpp"

namespace legdef {

using Json = nlohmann::json;

/*
 * Curve document format (UTF-8 JSON, no floats anywhere):
 *
 *   {
 *     "coordinate_system": "plane" | "legendrian" | "fake",
 *     "params": ["s1", ...],          // optional; non-empty => family
 *     "trunc": 64,                    // optional materialization order
 *     "branches": [ {"x": [...], "y": [...], "p": [...]}, ... ]
 *   }
 *
 * A series is a list of terms. Without parameters a term is the triple
 * [num, den, exp]; with parameters it is [coeff, exp] where coeff is the
 * lexicographically sorted list [[exponent-vector, [num, den]], ...].
 * Rationals are in lowest terms with positive denominator; integers that do
 * not fit in 64 bits are decimal strings.
 */

using ParsedCurve = std::variant<PlaneGerm, LegendrianGerm, FakeGerm, DeformationFamily>;

Json rat_json(const Rat& q);
Rat rat_from_json(const Json& j, const std::string& path);

Json param_poly_json(const ParamPoly& p);

Json series_terms_json(const TruncSeries& s);

Json germ_document(const PlaneGerm& g);
Json germ_document(const LegendrianGerm& g);
Json germ_document(const FakeGerm& g);
Json family_document(const DeformationFamily& f);

/*
 * trunc_override > 0 forces the materialization order; otherwise the
 * document's own "trunc" (or a slack above its largest exponent) is used,
 * raised to at least min_trunc.
 */
ParsedCurve parse_curve_document(const Json& doc, int trunc_override = 0, int min_trunc = 0);
ParsedCurve parse_curve_file(const std::string& path, int trunc_override = 0, int min_trunc = 0);

}  // namespace legdef
