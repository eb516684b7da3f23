#pragma once

#include <string>

#include "json.hpp"
#include "qrate/channels.hpp"
#include "qrate/states.hpp"

namespace qrate {

/// JSON wire formats. Complex entries are [re, im] pairs.
/// State:   {"dim": d, "mat": [[[re,im], ...], ...]}
/// Channel: {"dim_in": di, "dim_out": do, "kraus": [[[[re,im], ...], ...], ...]}
/// Parsers reject non-density / non-CPTP inputs (NotDensityMatrix / NotCPTP)
/// and malformed documents (ParseError).

nlohmann::json state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const nlohmann::json& j);
DensityMatrix load_state(const std::string& path);

nlohmann::json channel_to_json(const QuantumChannel& n);
QuantumChannel channel_from_json(const nlohmann::json& j);
QuantumChannel load_channel(const std::string& path);

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j, std::size_t rows,
                               std::size_t cols);

nlohmann::json load_json_file(const std::string& path);

}  // namespace qrate
