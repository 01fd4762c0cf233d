#include "cloning/ontic_json.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace cloning::ontic {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "cloning-ontic-model/1";

json encode_runs(std::span<const double> values) {
  json runs = json::array();
  std::size_t i = 0;
  while (i < values.size()) {
    std::size_t j = i + 1;
    while (j < values.size() && values[j] == values[i]) ++j;
    runs.push_back(json::array({values[i], j - i}));
    i = j;
  }
  return runs;
}

std::vector<double> decode_runs(const json& runs, std::size_t expected) {
  std::vector<double> out;
  out.reserve(expected);
  for (const auto& run : runs) {
    const double value = run.at(0).get<double>();
    const auto count = run.at(1).get<std::size_t>();
    if (out.size() + count > expected) throw std::invalid_argument("model_from_json: runs overflow the grid");
    out.insert(out.end(), count, value);
  }
  if (out.size() != expected) throw std::invalid_argument("model_from_json: runs do not cover the grid");
  return out;
}

json encode_grid(const LambdaGrid& g) {
  return {{"dimension", g.dimension()}, {"resolution", g.resolution()}, {"domain", {0.0, 2.0}}};
}

LambdaGrid decode_grid(const json& j) {
  return LambdaGrid(j.at("dimension").get<int>(), j.at("resolution").get<int>());
}

bool on_input_grid(Prep p) {
  return p == Prep::a || p == Prep::b || p == Prep::a_perp || p == Prep::b_perp;
}

bool on_input_grid(Test t) { return t == Test::a || t == Test::b; }

}  // namespace

json to_json(const OnticModel& model, std::optional<int> saturating_overlap_cells) {
  json doc;
  doc["format"] = kFormat;
  doc["c_requested"] = model.c_requested;
  doc["c_used"] = model.c_used;
  doc["input_grid"] = encode_grid(model.input_grid);
  doc["output_grid"] = encode_grid(model.output_grid);

  json states = json::object();
  for (const auto& [p, mu] : model.states) {
    states[std::string(to_string(p))] = {{"grid", on_input_grid(p) ? "input" : "output"},
                                         {"runs", encode_runs(mu.density())}};
  }
  doc["states"] = std::move(states);

  json responses = json::object();
  for (const auto& [t, xi] : model.responses) {
    responses[std::string(to_string(t))] = {{"grid", on_input_grid(t) ? "input" : "output"},
                                            {"runs", encode_runs(xi.values())}};
  }
  doc["responses"] = std::move(responses);

  if (!model.cloner) {
    doc["cloner"] = nullptr;
  } else if (saturating_overlap_cells) {
    doc["cloner"] = {{"kind", "saturating"},
                     {"resolution", model.input_grid.resolution()},
                     {"overlap_cells", *saturating_overlap_cells}};
  } else {
    const auto& k = model.cloner->kernel();
    json rows = json::array();
    for (std::size_t r = 0; r < k.rows; ++r) {
      json row = json::array();
      for (std::size_t e = k.row_ptr[r]; e < k.row_ptr[r + 1]; ++e) {
        row.push_back(json::array({k.col_idx[e], k.values[e]}));
      }
      rows.push_back(std::move(row));
    }
    doc["cloner"] = {{"kind", "sparse"}, {"rows", std::move(rows)}};
  }

  json pairs = json::array();
  for (const auto& pr : model.pairs) {
    pairs.push_back(json::array({std::string(to_string(pr.s)), std::string(to_string(pr.t))}));
  }
  doc["pairs"] = std::move(pairs);
  if (!model.warnings.empty()) doc["warnings"] = model.warnings;
  return doc;
}

OnticModel model_from_json(const json& doc) {
  if (doc.at("format").get<std::string>() != kFormat) {
    throw std::invalid_argument("model_from_json: unsupported format tag");
  }
  OnticModel m{decode_grid(doc.at("input_grid")),
               decode_grid(doc.at("output_grid")),
               {},
               {},
               std::nullopt,
               {},
               doc.at("c_requested").get<double>(),
               doc.at("c_used").get<double>(),
               doc.value("warnings", std::vector<std::string>{})};

  auto grid_for = [&](const json& entry) -> const LambdaGrid& {
    return entry.at("grid").get<std::string>() == "input" ? m.input_grid : m.output_grid;
  };

  for (const auto& [name, entry] : doc.at("states").items()) {
    auto p = prep_from_string(name);
    if (!p) throw std::invalid_argument("model_from_json: unknown preparation " + name);
    const LambdaGrid& g = grid_for(entry);
    m.states.emplace(*p, EpistemicState(g, decode_runs(entry.at("runs"), g.cells())));
  }
  for (const auto& [name, entry] : doc.at("responses").items()) {
    auto t = test_from_string(name);
    if (!t) throw std::invalid_argument("model_from_json: unknown test " + name);
    const LambdaGrid& g = grid_for(entry);
    m.responses.emplace(*t, ResponseFunction(g, decode_runs(entry.at("runs"), g.cells())));
  }

  const json& cl = doc.at("cloner");
  if (!cl.is_null()) {
    const std::string kind = cl.at("kind").get<std::string>();
    if (kind == "saturating") {
      m.cloner = saturating_cloner(cl.at("resolution").get<int>(), cl.at("overlap_cells").get<int>());
    } else if (kind == "sparse") {
      kernels::Csr k;
      k.rows = m.input_grid.cells();
      k.cols = m.output_grid.cells();
      k.row_ptr.push_back(0);
      for (const auto& row : cl.at("rows")) {
        for (const auto& e : row) {
          k.col_idx.push_back(e.at(0).get<std::size_t>());
          k.values.push_back(e.at(1).get<double>());
        }
        k.row_ptr.push_back(k.col_idx.size());
      }
      m.cloner = StochasticMap(m.input_grid, m.output_grid, std::move(k));
    } else {
      throw std::invalid_argument("model_from_json: unknown cloner kind " + kind);
    }
  }

  for (const auto& pr : doc.at("pairs")) {
    auto s = test_from_string(pr.at(0).get<std::string>());
    auto t = test_from_string(pr.at(1).get<std::string>());
    if (!s || !t) throw std::invalid_argument("model_from_json: unknown test in pair list");
    m.pairs.push_back({*s, *t});
  }
  m.validate();
  return m;
}

}  // namespace cloning::ontic
