#include "fdw/corpus.hpp"

#include <cmath>

#include "fdw/errors.hpp"
#include "json.hpp"

namespace fdw {

namespace {

double param(const CorpusEntry& e, const char* key) {
  auto it = e.params.find(key);
  if (it == e.params.end()) throw InvalidInput("corpus entry '" + e.name + "' lacks parameter '" + key + "'");
  return it->second;
}

double squared_distance(const std::array<double, 3>& x, int dim, double shift_x1) {
  double d = 0.0;
  for (int a = 0; a < dim; ++a) {
    const double c = a == 0 ? x[a] - shift_x1 : x[a];
    d += c * c;
  }
  return d;
}

}  // namespace

double CorpusEntry::evaluate(const std::array<double, 3>& x, int dim) const {
  const double r2 = squared_distance(x, dim, 0.0);
  const double r = std::sqrt(r2);
  if (family == "gaussian") {
    const double w = param(*this, "width");
    return std::exp(-r2 / (w * w));
  }
  if (family == "shifted_gaussian") {
    const double w = param(*this, "width");
    return std::exp(-squared_distance(x, dim, param(*this, "shift")) / (w * w));
  }
  if (family == "bump") {
    const double rho = r / param(*this, "radius");
    return rho < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - rho * rho)) : 0.0;
  }
  if (family == "cos_packet" || family == "sin_packet") {
    const double w = param(*this, "width");
    const double k = param(*this, "wavenumber");
    const double env = std::exp(-r2 / (w * w));
    return env * (family == "cos_packet" ? std::cos(k * x[0]) : std::sin(k * x[0]));
  }
  if (family == "sech") return 1.0 / std::cosh(r / param(*this, "width"));
  if (family == "rational") {
    const double w = param(*this, "width");
    return std::pow(1.0 + r2 / (w * w), -param(*this, "power"));
  }
  if (family == "gaussian_pair") {
    const double c = param(*this, "shift");
    return std::exp(-squared_distance(x, dim, -c)) - param(*this, "ratio") * std::exp(-0.5 * squared_distance(x, dim, c));
  }
  if (family == "soft_singular") {
    const double core = param(*this, "core");
    const double w = param(*this, "width");
    return std::pow(r2 + core * core, -0.5 * param(*this, "exponent")) * std::exp(-r2 / (w * w));
  }
  throw InvalidInput("unknown corpus family '" + family + "'");
}

RealField CorpusEntry::sample(const Grid& grid) const {
  return RealField::sample(grid, [&](const std::array<double, 3>& x) { return evaluate(x, grid.dim()); });
}

const std::vector<CorpusEntry>& standard_corpus() {
  static const std::vector<CorpusEntry> corpus = {
      {"gaussian", "gaussian", {{"width", 1.0}}},
      {"wide_gaussian", "gaussian", {{"width", 2.0}}},
      {"shifted_gaussian", "shifted_gaussian", {{"width", 1.0}, {"shift", 1.5}}},
      {"bump", "bump", {{"radius", 3.0}}},
      {"cos_packet", "cos_packet", {{"width", 2.0}, {"wavenumber", 3.0}}},
      {"sin_packet", "sin_packet", {{"width", std::sqrt(2.0)}, {"wavenumber", 2.0}}},
      {"sech", "sech", {{"width", 1.0}}},
      {"rational", "rational", {{"width", 1.0}, {"power", 2.0}}},
      {"gaussian_pair", "gaussian_pair", {{"shift", 2.0}, {"ratio", 0.5}}},
      {"soft_singular", "soft_singular", {{"core", 0.25}, {"exponent", 0.3}, {"width", std::sqrt(8.0)}}},
  };
  return corpus;
}

std::string corpus_manifest(const std::vector<CorpusEntry>& corpus) {
  nlohmann::ordered_json doc;
  doc["format"] = "fdw-corpus";
  doc["version"] = 1;
  auto& entries = doc["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : corpus) {
    nlohmann::ordered_json item;
    item["name"] = e.name;
    item["family"] = e.family;
    item["params"] = e.params;
    entries.push_back(item);
  }
  return doc.dump(2);
}

std::vector<CorpusEntry> corpus_from_manifest(const std::string& json) {
  const auto doc = nlohmann::json::parse(json);
  if (doc.value("format", "") != "fdw-corpus") throw InvalidInput("not a corpus manifest");
  std::vector<CorpusEntry> out;
  for (const auto& item : doc.at("entries")) {
    CorpusEntry e;
    e.name = item.at("name").get<std::string>();
    e.family = item.at("family").get<std::string>();
    e.params = item.at("params").get<std::map<std::string, double>>();
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace fdw
