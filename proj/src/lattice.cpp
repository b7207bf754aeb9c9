#include "saddlepairs/lattice.hpp"

#include <cstdio>

#include <json.hpp>

#include "saddlepairs/errors.hpp"

namespace saddlepairs {

namespace {

void validate(const CuspData& data) {
  require(!data.cusps.empty(), ErrorCode::EmptyCusps,
          "cusp data must contain at least one cusp");
  for (std::size_t i = 0; i < data.cusps.size(); ++i) {
    const Cusp& cusp = data.cusps[i];
    require(!cusp.lengths.empty(), ErrorCode::EmptyCusps,
            "cusp " + std::to_string(i) + " has no core-curve lengths");
    require(cusp.c1 > 0.0, ErrorCode::NonPositiveParams,
            "cusp " + std::to_string(i) + " needs a positive orbit constant");
    for (std::size_t j = 0; j < cusp.lengths.size(); ++j) {
      require(cusp.lengths[j] > 0.0, ErrorCode::NonPositiveParams,
              "cusp " + std::to_string(i) + " has a non-positive length");
      require(j == 0 || cusp.lengths[j] <= cusp.lengths[j - 1],
              ErrorCode::NonDescendingLengths,
              "cusp " + std::to_string(i) +
                  " lengths must be sorted descending");
    }
  }
}

}  // namespace

double lattice_constant(const CuspData& data, LatticeConvention convention) {
  validate(data);
  double total = 0.0;
  for (const Cusp& cusp : data.cusps) {
    const std::size_t m = cusp.lengths.size();
    double inner = 0.0;
    for (std::size_t j = 1; j <= m; ++j) {
      const double r = cusp.lengths[0] / cusp.lengths[j - 1];
      const double weight =
          convention == LatticeConvention::AsPrinted
              ? (j <= m - 1 ? static_cast<double>(j - 1) : 0.0)
              : static_cast<double>(m - j);
      inner += weight * r * r;
    }
    total += cusp.c1 * inner;
  }
  return total;
}

CuspData cusp_data_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::BadConfig, std::string("cusp data is not valid JSON: ") +
                                   e.what());
  }
  CuspData data;
  try {
    for (const auto& entry : doc.at("cusps")) {
      Cusp cusp;
      cusp.c1 = entry.at("c1").get<double>();
      for (const auto& len : entry.at("lengths"))
        cusp.lengths.push_back(len.get<double>());
      data.cusps.push_back(std::move(cusp));
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::BadConfig,
         std::string("cusp data is missing a required field: ") + e.what());
  }
  validate(data);
  return data;
}

std::string cusp_data_to_json(const CuspData& data) {
  nlohmann::ordered_json doc;
  doc["cusps"] = nlohmann::ordered_json::array();
  for (const Cusp& cusp : data.cusps) {
    nlohmann::ordered_json entry;
    entry["c1"] = cusp.c1;
    entry["lengths"] = cusp.lengths;
    doc["cusps"].push_back(entry);
  }
  return doc.dump(2) + "\n";
}

GrowthFit parallel_growth(const HolonomySet& set,
                          const std::vector<double>& radii) {
  require(radii.size() >= 3, ErrorCode::InsufficientRadii,
          "parallel growth needs at least three radii");
  std::vector<double> counts;
  for (double R : radii)
    counts.push_back(static_cast<double>(
        count_parallel(set, R, /*include_equal=*/false)));
  return fit_growth(radii, counts);
}

}  // namespace saddlepairs
