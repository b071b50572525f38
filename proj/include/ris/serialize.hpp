// SPDX-License-Identifier: Apache-2.0
//
// JSON snapshots of matrices, networks, and cascades. Matrices are stored as
// {"rows": r, "cols": c, "data": [[re, im], ...]} in row-major order.
#pragma once

#include <json.hpp>

#include "ris/linalg.hpp"
#include "ris/multiport.hpp"
#include "ris/scattering.hpp"

namespace ris {

nlohmann::json matrix_to_json(const CMat& m);
CMat matrix_from_json(const nlohmann::json& j);

/// Debug dump: dimensions, Z0, asserted flags, and the nine partitions.
nlohmann::json network_to_json(const MultiportNetwork& net);

nlohmann::json cascade_to_json(const CascadeChannels& ch);
CascadeChannels cascade_from_json(const nlohmann::json& j);

}  // namespace ris
