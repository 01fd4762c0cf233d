#pragma once

// Figure-data emitters. CSV files carry a single header row (`x,y` for
// curves, `v,c_lo,c_hi` for regions; empty regions leave c_lo/c_hi blank).
// JSON curves follow {"label": ..., "mode": ..., "points": [[x, y], ...]}.

#include <nlohmann/json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cloning/scan.hpp"

namespace cloning::scan {

void write_csv(std::ostream& os, const CurveSeries& s);
void write_csv(std::ostream& os, const std::vector<ViolationRegion>& regions);

nlohmann::json to_json(const CurveSeries& s);
nlohmann::json to_json(const ViolationRegion& r);
CurveSeries curve_from_json(const nlohmann::json& j);
CurveSeries curve_from_csv(std::istream& is, std::string label, std::string mode);

/// Shortest round-trip decimal form of x.
std::string format_number(double x);

}  // namespace cloning::scan
