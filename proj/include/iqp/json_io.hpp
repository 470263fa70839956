#pragma once

#include <json.hpp>

#include "iqp/steppoly.hpp"

namespace iqp {

using Json = nlohmann::json;

Json rat_to_json(const Rat& q);
// accepts "p/q" strings and JSON integers
Rat rat_from_json(const Json& j);
Json ratvec_to_json(const RatVec& v);
RatVec ratvec_from_json(const Json& j);

// {"N": n, "terms": [{"coeff": "p/q", "step": [[[..], e], ...], "poly": [[[..], e], ...]}]}
Json qp_to_json(const QP& p);
QP qp_from_json(const Json& j);

}  // namespace iqp
