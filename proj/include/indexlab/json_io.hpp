// json_io.hpp — serialization of symbols and reports.
//
// Symbol JSON: {"l": int, "coeffs": [{"k": int, "re": [[..]], "im": [[..]]}]}
// with coefficients sorted by k on output; duplicate k rejected on input.

#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "indexlab/circle_toeplitz.hpp"
#include "indexlab/grid_model.hpp"
#include "indexlab/roe_pairing.hpp"
#include "indexlab/trig_symbol.hpp"

namespace indexlab {

using Json = nlohmann::ordered_json;

Json symbol_to_json(const TrigSymbol& phi);
TrigSymbol symbol_from_json(const Json& j);

TrigSymbol load_symbol(const std::string& path);
void save_symbol(const TrigSymbol& phi, const std::string& path);

Json index_report_to_json(const IndexReport& r);
Json grid_report_to_json(const GridIndexReport& r, const CylinderGrid& grid);
Json pairing_report_to_json(const PairingReport& pairing, const TraceIdentityReport& identity);
Json grid_config_to_json(const CylinderGrid& g);
CylinderGrid grid_config_from_json(const Json& j);

// FNV-1a over the canonical dump; embedded in every CLI report.
std::string config_hash(const Json& j);

}  // namespace indexlab
