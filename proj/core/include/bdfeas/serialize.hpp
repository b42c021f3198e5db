#pragma once

#include <nlohmann/json.hpp>
#include <vector>

#include "bdfeas/bounds.hpp"
#include "bdfeas/categorical.hpp"
#include "bdfeas/harness.hpp"
#include "bdfeas/ks.hpp"
#include "bdfeas/toy.hpp"

namespace bdfeas {

using json = nlohmann::json;

// JSON encodings:
//   Categorical       [p_0, ..., p_{K-1}]
//   SymbolDataset     {"alphabet_size": K, "symbols": [...]}
//   DistributionPair  {"p0": [...], "pb": [...], "gamma": g, "beta": b}
//   DatasetSpec       {"name": s, "kind": "image", "width", "height", "channels", "color_depth"}
//                     {"name": s, "kind": "features", "cardinalities": [...]}
//                     {"name": s, "kind": "log10", "log10_alphabet": x}
// Malformed documents raise ConfigError.

void to_json(json& j, const Categorical& p);
void to_json(json& j, const SymbolDataset& d);
void to_json(json& j, const DistributionPair& pair);
void to_json(json& j, const RiskEstimate& r);
void to_json(json& j, const BoundReport& r);
void to_json(json& j, const DatasetSpec& s);
void to_json(json& j, const KsResult& r);
void to_json(json& j, const ToyReport& r);

Categorical categorical_from_json(const json& j);
SymbolDataset dataset_from_json(const json& j);
DistributionPair pair_from_json(const json& j);
DatasetSpec dataset_spec_from_json(const json& j);
std::vector<DatasetSpec> catalog_from_json(const json& j);

}  // namespace bdfeas
