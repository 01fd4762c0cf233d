#pragma once

// JSON form of an OnticModel, used for inspection and regression fixtures.
//
//   {
//     "format": "cloning-ontic-model/1",
//     "c_requested": 0.5, "c_used": 0.5,
//     "input_grid":  {"dimension": 1, "resolution": 200, "domain": [0, 2]},
//     "output_grid": {"dimension": 2, "resolution": 200, "domain": [0, 2]},
//     "states":    {"a": {"grid": "input", "runs": [[value, count], ...]}, ...},
//     "responses": {"a": {"grid": "input", "runs": [[value, count], ...]}, ...},
//     "cloner": {"kind": "saturating", "resolution": 200, "overlap_cells": 50}
//             | {"kind": "sparse", "rows": [[[target, p], ...], ...]} | null,
//     "pairs": [["a", "b"], ["alpha", "aa"], ["beta", "bb"]]
//   }
//
// Runs are row-major, first coordinate outermost.

#include <nlohmann/json.hpp>

#include <optional>

#include "cloning/ontic.hpp"

namespace cloning::ontic {

/// `saturating_overlap_cells` selects the compact cloner encoding.
nlohmann::json to_json(const OnticModel& model,
                       std::optional<int> saturating_overlap_cells = std::nullopt);

OnticModel model_from_json(const nlohmann::json& doc);

}  // namespace cloning::ontic
