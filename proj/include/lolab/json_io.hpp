#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "lolab/algebra.hpp"
#include "lolab/decoupling.hpp"
#include "lolab/gap.hpp"
#include "lolab/lattice.hpp"
#include "lolab/matroid.hpp"
#include "lolab/membership.hpp"

namespace lolab::json_io {

using nlohmann::json;

/// Scalars are strings "p", "p/q", "p/q+r/s*i"; integers are accepted too.
GaussianRational scalar(const json& j);
mpq_class rational(const json& j);
ExactVector vector(const json& j);
std::vector<ExactVector> vectors(const json& j);

/// {"k": int, "vectors": [[scalar, ...], ...]}
VectorSequence sequence(const json& j);
/// {"nvars": int, "terms": [{"exps": [...], "coef": scalar}, ...]}
SparsePoly polynomial(const json& j);
/// {"k": int, "polys": [polynomial, ...], "dim": int?, "deg": int?}
Variety variety(const json& j);
/// {"n": int, "k": int, "forms": [[scalar, ...], ...], "outer": polynomial}
ChowRepresentation chow(const json& j);
/// {"k": int?, "generators": [[scalar, ...], ...], "radii": [int, ...]}
SymmetricGAP gap(const json& j);
/// {"type": "points", "k", "points"} | {"type": "variety", ...variety} |
/// {"type": "subspace", "k", "basis"} | {"type": "translate", "base": set, "shift": vector}
MembershipSet membership(const json& j);
/// [[index, ...], ...]
Partition partition(const json& j);
/// {"u": [...], "w": [...], "s_prime": variety, "surviving": [...], "delta", "c", "c1",
///  "witness": [...], "translates": [...]}
StructureCertificate certificate(const json& j);
/// {"matrix": [[...]], "shift": [...], "label": str?}
AffineMap affine_map(const json& j);

json to_json(const GaussianRational& x);
json to_json(const mpq_class& q);
json to_json(const ExactVector& v);
json to_json(const std::vector<ExactVector>& vs);
json to_json(const VectorSequence& a);
json to_json(const SparsePoly& f);
json to_json(const Variety& v);
json to_json(const BasisPacking& p);

json read_file(const std::string& path);

}  // namespace lolab::json_io
