#include "reslat/regime.hpp"

#include "reslat/error.hpp"

namespace reslat {

const char* regime_label_name(RegimeLabel l) {
  switch (l) {
    case RegimeLabel::CheaterWins: return "CHEATER_WINS";
    case RegimeLabel::Bistable: return "BISTABLE";
    case RegimeLabel::CooperationCoexist: return "COOPERATION_COEXIST";
    case RegimeLabel::Tristable: return "TRISTABLE";
    case RegimeLabel::HeteroclinicStable: return "HETEROCLINIC_STABLE";
    case RegimeLabel::HeteroclinicRepellingPermanent: return "HETEROCLINIC_REPELLING_PERMANENT";
    case RegimeLabel::PermanentCase: return "PERMANENT_CASE";
    case RegimeLabel::BoundaryStable: return "BOUNDARY_STABLE";
    case RegimeLabel::Unclassified: return "UNCLASSIFIED";
  }
  return "?";
}

RegimeLabel regime_label_from_name(const std::string& name) {
  for (RegimeLabel l : {RegimeLabel::CheaterWins, RegimeLabel::Bistable, RegimeLabel::CooperationCoexist,
                        RegimeLabel::Tristable, RegimeLabel::HeteroclinicStable,
                        RegimeLabel::HeteroclinicRepellingPermanent, RegimeLabel::PermanentCase,
                        RegimeLabel::BoundaryStable, RegimeLabel::Unclassified})
    if (name == regime_label_name(l)) return l;
  fail(Errc::ParseError, "unknown regime label '" + name + "'");
}

bool regime_label_parameterized(RegimeLabel l) {
  return l == RegimeLabel::CheaterWins || l == RegimeLabel::PermanentCase;
}

std::string RegimeReport::describe() const {
  std::string s = regime_label_name(label);
  if (regime_label_parameterized(label)) s += "(" + std::to_string(param) + ")";
  if (degenerate) s += " [degenerate]";
  return s;
}

nlohmann::json RegimeReport::to_json() const {
  nlohmann::json j;
  // Parameterized labels serialize as a single-key object, plain ones as a
  // string: {"label": {"PERMANENT_CASE": 0}} vs {"label": "TRISTABLE"}.
  if (regime_label_parameterized(label))
    j["label"] = nlohmann::json{{regime_label_name(label), param}};
  else
    j["label"] = regime_label_name(label);
  j["degenerate"] = degenerate;
  j["values"] = values;
  nlohmann::json eq = nlohmann::json::array();
  for (const auto& [name, point] : equilibria) eq.push_back({{"name", name}, {"point", point}});
  j["equilibria"] = eq;
  return j;
}

RegimeReport RegimeReport::from_json(const nlohmann::json& j) {
  RegimeReport r;
  const auto& lbl = j.at("label");
  if (lbl.is_string()) {
    r.label = regime_label_from_name(lbl.get<std::string>());
  } else if (lbl.is_object() && lbl.size() == 1) {
    auto it = lbl.begin();
    r.label = regime_label_from_name(it.key());
    r.param = it.value().get<int>();
  } else {
    fail(Errc::ParseError, "regime label must be a string or a single-key object");
  }
  r.degenerate = j.value("degenerate", false);
  if (j.contains("values")) r.values = j.at("values").get<std::map<std::string, double>>();
  if (j.contains("equilibria"))
    for (const auto& e : j.at("equilibria"))
      r.equilibria.emplace_back(e.at("name").get<std::string>(),
                                e.at("point").get<std::vector<double>>());
  return r;
}

}  // namespace reslat
