#pragma once

#include <string>

#include "json.hpp"
#include "minorank/certificate.hpp"
#include "minorank/partition.hpp"
#include "minorank/tensor.hpp"
#include "minorank/tensor_ops.hpp"

namespace minorank {

using Json = nlohmann::ordered_json;

// {"field_order": p, "axes": [[labels...], ...], "entries": [[[x1..xd], v], ...]}
// Entries are sparse, in row-major order; labels strictly increasing per axis.
Json tensor_to_json(const Tensor& t);
Tensor tensor_from_json(const Json& j);

// {"d": d, "partitions": [[[1],[2,3]], ...]}, parts as 1-based axes.
Json family_to_json(const PartitionFamily& r);
PartitionFamily family_from_json(const Json& j);

// {"notion", "value", "terms": [{"partition", "factors": {"[1,3]": {"[x1,x3]": v}}}], "modifier"?}
Json certificate_to_json(const RankCertificate& cert, const Tensor& like);
RankCertificate certificate_from_json(const Json& j, const Tensor& like);

// {"disjoint": bool, "sets": [[labels...], ...]}
Json selection_to_json(const MinorSelection& sel);

// Canonical text form: compact dump with a trailing newline.
std::string canonical_dump(const Json& j);

}  // namespace minorank
