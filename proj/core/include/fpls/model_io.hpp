#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fpls/basis.hpp"
#include "fpls/discriminant.hpp"

namespace fpls {

/// A fitted classifier plus what is needed to featurize new curves: the basis
/// (functional variants) or the required observation grid (multivariate).
struct StoredModel {
    DiscriminantModel model;
    std::optional<BasisSystem> basis;
    std::vector<double> grid;
};

/// Versioned JSON document; doubles are written so they round-trip exactly,
/// which keeps reloaded predictions bit-identical.
std::string model_to_json(const StoredModel& stored);
StoredModel model_from_json(const std::string& text);

void save_model(const StoredModel& stored, const std::string& path);
StoredModel load_model(const std::string& path);

}  // namespace fpls
