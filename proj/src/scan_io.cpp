#include "cloning/scan_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace cloning::scan {

std::string format_number(double x) { return fmt::format("{}", x); }

void write_csv(std::ostream& os, const CurveSeries& s) {
  s.validate();
  os << "x,y\n";
  for (const auto& [x, y] : s.points) os << format_number(x) << ',' << format_number(y) << '\n';
}

void write_csv(std::ostream& os, const std::vector<ViolationRegion>& regions) {
  os << "v,c_lo,c_hi\n";
  for (const auto& r : regions) {
    os << format_number(r.v) << ',';
    if (!r.empty) os << format_number(r.c_lo) << ',' << format_number(r.c_hi);
    else os << ',';
    os << '\n';
  }
}

nlohmann::json to_json(const CurveSeries& s) {
  s.validate();
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& [x, y] : s.points) pts.push_back({x, y});
  return {{"label", s.label}, {"mode", s.mode}, {"points", std::move(pts)}};
}

nlohmann::json to_json(const ViolationRegion& r) {
  nlohmann::json j{{"v", r.v},
                   {"empty", r.empty},
                   {"err_mode", std::string(to_string(r.err_mode))},
                   {"c_mode", std::string(to_string(r.c_mode))},
                   {"anomaly", r.anomaly},
                   {"roots", r.roots}};
  if (r.empty) {
    j["c_lo"] = nullptr;
    j["c_hi"] = nullptr;
  } else {
    j["c_lo"] = r.c_lo;
    j["c_hi"] = r.c_hi;
  }
  return j;
}

CurveSeries curve_from_json(const nlohmann::json& j) {
  CurveSeries s;
  s.label = j.at("label").get<std::string>();
  s.mode = j.at("mode").get<std::string>();
  for (const auto& p : j.at("points")) s.points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  s.validate();
  return s;
}

CurveSeries curve_from_csv(std::istream& is, std::string label, std::string mode) {
  CurveSeries s;
  s.label = std::move(label);
  s.mode = std::move(mode);
  std::string line;
  if (!std::getline(is, line) || line != "x,y") throw std::invalid_argument("curve_from_csv: bad header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("curve_from_csv: malformed row");
    s.points.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
  }
  s.validate();
  return s;
}

}  // namespace cloning::scan
