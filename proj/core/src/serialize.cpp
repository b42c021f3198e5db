#include "bdfeas/serialize.hpp"

#include <string>

#include "bdfeas/error.hpp"

namespace bdfeas {

namespace {

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad field '") + key + "': " + e.what());
  }
}

}  // namespace

void to_json(json& j, const Categorical& p) { j = std::vector<double>(p.probs().begin(), p.probs().end()); }

void to_json(json& j, const SymbolDataset& d) {
  j = json{{"alphabet_size", d.alphabet_size()},
           {"symbols", std::vector<Symbol>(d.symbols().begin(), d.symbols().end())}};
}

void to_json(json& j, const DistributionPair& pair) {
  j = json{{"p0", pair.p0}, {"pb", pair.pb}, {"gamma", pair.gamma}, {"beta", pair.beta}};
}

void to_json(json& j, const RiskEstimate& r) {
  j = json{{"p_hat", r.p_hat},   {"ci_low", r.ci_low}, {"ci_high", r.ci_high},
           {"trials", r.trials}, {"errors", r.errors}};
}

void to_json(json& j, const BoundReport& r) {
  j = json{{"name", r.name}, {"log10_alphabet", r.log10_alphabet}, {"exponent", r.exponent}};
  if (r.min_n.is_zero()) {
    j["log10_min_n"] = nullptr;
  } else {
    j["log10_min_n"] = r.min_n.log10();
  }
}

void to_json(json& j, const DatasetSpec& s) {
  j = json{{"name", s.name}};
  std::visit(
      [&j](const auto& a) {
        using A = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<A, ImageDims>) {
          j["kind"] = "image";
          j["width"] = a.width;
          j["height"] = a.height;
          j["channels"] = a.channels;
          j["color_depth"] = a.color_depth;
        } else if constexpr (std::is_same_v<A, FeatureCardinalities>) {
          j["kind"] = "features";
          j["cardinalities"] = a.cardinalities;
        } else {
          j["kind"] = "log10";
          j["log10_alphabet"] = a.log10_alphabet;
        }
      },
      s.alphabet);
}

void to_json(json& j, const KsResult& r) {
  j = json{{"statistic", r.statistic}, {"p_value", r.p_value}, {"n", r.n}};
}

void to_json(json& j, const ToyReport& r) {
  j = json{{"p_value", r.p_value},
           {"ks_statistic", r.ks_statistic},
           {"clean_accuracy", r.clean_accuracy},
           {"attack_success_rate", r.attack_success_rate}};
}

Categorical categorical_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("distribution must be a JSON array");
  try {
    return Categorical(j.get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad distribution: ") + e.what());
  }
}

SymbolDataset dataset_from_json(const json& j) {
  return SymbolDataset(field<std::vector<Symbol>>(j, "symbols"),
                       field<std::size_t>(j, "alphabet_size"));
}

DistributionPair pair_from_json(const json& j) {
  if (!j.is_object() || !j.contains("p0") || !j.contains("pb"))
    throw ConfigError("pair needs 'p0' and 'pb'");
  return DistributionPair(categorical_from_json(j.at("p0")), categorical_from_json(j.at("pb")),
                          field<double>(j, "gamma"), field<double>(j, "beta"));
}

DatasetSpec dataset_spec_from_json(const json& j) {
  DatasetSpec s;
  s.name = field<std::string>(j, "name");
  const auto kind = field<std::string>(j, "kind");
  if (kind == "image") {
    s.alphabet = ImageDims{field<std::uint64_t>(j, "width"), field<std::uint64_t>(j, "height"),
                           field<std::uint64_t>(j, "channels"),
                           field<std::uint64_t>(j, "color_depth")};
  } else if (kind == "features") {
    s.alphabet = FeatureCardinalities{field<std::vector<std::uint64_t>>(j, "cardinalities")};
  } else if (kind == "log10") {
    s.alphabet = DirectLog10{field<double>(j, "log10_alphabet")};
  } else {
    throw ConfigError("unknown dataset kind '" + kind + "'");
  }
  return s;
}

std::vector<DatasetSpec> catalog_from_json(const json& j) {
  const json& list = j.is_object() && j.contains("datasets") ? j.at("datasets") : j;
  if (!list.is_array()) throw ConfigError("catalog must be an array of datasets");
  std::vector<DatasetSpec> out;
  for (const auto& e : list) out.push_back(dataset_spec_from_json(e));
  return out;
}

}  // namespace bdfeas
