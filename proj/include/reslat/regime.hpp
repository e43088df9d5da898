#ifndef RESLAT_REGIME_HPP
#define RESLAT_REGIME_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace reslat {

// Classified long-run outcome of the density dynamics. The criteria behind
// these labels are sufficient, not exhaustive, so UNCLASSIFIED is a valid
// result. Parameterized labels carry `param`: the winning species (1-based)
// for CHEATER_WINS, the scenario index 0..3 for PERMANENT_CASE.
enum class RegimeLabel {
  CheaterWins,
  Bistable,
  CooperationCoexist,
  Tristable,
  HeteroclinicStable,
  HeteroclinicRepellingPermanent,
  PermanentCase,
  BoundaryStable,
  Unclassified,
};

const char* regime_label_name(RegimeLabel l);
RegimeLabel regime_label_from_name(const std::string& name);
bool regime_label_parameterized(RegimeLabel l);

struct RegimeReport {
  RegimeLabel label = RegimeLabel::Unclassified;
  int param = 0;
  bool degenerate = false;
  // Supporting numbers: eigenvalues, invadibilities, psi values, thresholds.
  std::map<std::string, double> values;
  // Equilibria found, as named density vectors.
  std::vector<std::pair<std::string, std::vector<double>>> equilibria;

  bool is(RegimeLabel l) const { return label == l; }
  bool is(RegimeLabel l, int p) const { return label == l && param == p; }
  std::string describe() const;

  nlohmann::json to_json() const;
  static RegimeReport from_json(const nlohmann::json& j);
};

}  // namespace reslat

#endif
