#include "reslat/matrix.hpp"

#include <cmath>
#include <sstream>

namespace reslat {

std::vector<double> InteractionMatrix::column_major() const {
  std::vector<double> c(a_.size());
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) c[size_t(j) * n_ + i] = at(i, j);
  return c;
}

std::vector<std::vector<double>> InteractionMatrix::rows() const {
  std::vector<std::vector<double>> r(n_);
  for (int i = 0; i < n_; ++i) r[i].assign(a_.begin() + size_t(i) * n_, a_.begin() + size_t(i + 1) * n_);
  return r;
}

InteractionMatrix validate_matrix(const std::vector<std::vector<double>>& entries) {
  const int n = int(entries.size());
  if (n < 2) fail(Errc::ValidationError, "matrix must be at least 2x2");
  for (const auto& row : entries)
    if (int(row.size()) != n) fail(Errc::ValidationError, "matrix must be square");

  InteractionMatrix m;
  m.n_ = n;
  m.a_.reserve(size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double v = entries[i][j];
      if (!std::isfinite(v)) fail(Errc::ValidationError, "entries must be finite");
      if (v < 0) {
        std::ostringstream os;
        os << "entry (" << i + 1 << "," << j + 1 << ") = " << v;
        fail(Errc::NegativeEntry, os.str());
      }
      m.a_.push_back(v);
    }
  for (int j = 0; j < n; ++j) {
    bool any = false;
    for (int i = 0; i < n; ++i) any = any || m.at(i, j) > 0;
    if (!any) {
      std::ostringstream os;
      os << "column " << j + 1 << " has no positive entry";
      fail(Errc::ZeroColumn, os.str());
    }
  }
  return m;
}

std::pair<double, double> theta_of_two_type(const InteractionMatrix& m) {
  if (m.n() != 2) fail(Errc::ValidationError, "theta_of_two_type needs n = 2");
  double t1 = m.at(0, 0) / (m.at(0, 0) + m.at(1, 0));
  double t2 = m.at(1, 1) / (m.at(0, 1) + m.at(1, 1));
  return {t1, t2};
}

const char* family_name(ThetaFamily f) {
  switch (f) {
    case ThetaFamily::TwoType: return "two";
    case ThetaFamily::M8: return "M8";
    case ThetaFamily::M9: return "M9";
  }
  return "?";
}

ThetaFamily family_from_name(std::string_view name) {
  if (name == "two" || name == "TWO_TYPE" || name == "TwoType") return ThetaFamily::TwoType;
  if (name == "M8" || name == "m8") return ThetaFamily::M8;
  if (name == "M9" || name == "m9") return ThetaFamily::M9;
  fail(Errc::UnknownName, "unknown theta family '" + std::string(name) + "'");
}

InteractionMatrix family_matrix(const ThetaParams& p) {
  const size_t want = p.family == ThetaFamily::TwoType ? 2 : 3;
  if (p.theta.size() != want)
    fail(Errc::ValidationError, std::string("family ") + family_name(p.family) + " needs " +
                                    std::to_string(want) + " theta values");
  for (double t : p.theta)
    if (!(t >= 0.0 && t <= 1.0)) fail(Errc::ValidationError, "theta values must lie in [0,1]");

  const auto& t = p.theta;
  std::vector<std::vector<double>> e;
  switch (p.family) {
    case ThetaFamily::TwoType:
      e = {{t[0], 1 - t[1]}, {1 - t[0], t[1]}};
      break;
    case ThetaFamily::M8:
      e.assign(3, std::vector<double>(3));
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) e[i][j] = (i == j) ? 2 * t[j] : 1 - t[j];
      break;
    case ThetaFamily::M9:
      e.assign(3, std::vector<double>(3, 0.0));
      for (int j = 0; j < 3; ++j) {
        e[j][j] = t[j];
        e[(j + 1) % 3][j] = 1.0;  // each species beats its cyclic predecessor
      }
      break;
  }
  return validate_matrix(e);
}

InteractionMatrix builtin_matrix(std::string_view name, std::optional<double> eps,
                                 std::optional<std::vector<double>> theta) {
  auto need_theta = [&](ThetaFamily f) {
    if (!theta) fail(Errc::ValidationError, std::string(name) + " needs three theta values");
    return family_matrix(ThetaParams{f, *theta});
  };
  if (name == "M0") return validate_matrix({{1, 0, 4}, {4, 1, 0}, {0, 4, 1}});
  if (name == "M1") return validate_matrix({{1, 1, 2}, {2, 0, 0}, {0, 8, 1}});
  if (name == "M2") return validate_matrix({{1, 1, 2}, {2, 0, 1}, {0, 4, 0}});
  if (name == "M3") return validate_matrix({{1, 2, 2}, {2, 1, 2}, {2, 2, 1}});
  if (name == "M4") {
    double e = eps.value_or(0.1);
    return validate_matrix({{1 - e, 0}, {e, 1}});
  }
  if (name == "M5") {
    double e = eps.value_or(0.2);
    return validate_matrix({{1 - e, 1 - e}, {1 + e, 1 + e}});
  }
  if (name == "M6") return validate_matrix({{0, 1}, {1, 0}});
  if (name == "M7") return validate_matrix({{0, 1}, {1, 1}});
  if (name == "M8") return need_theta(ThetaFamily::M8);
  if (name == "M9") return need_theta(ThetaFamily::M9);
  if (name == "voter2") return validate_matrix({{1, 1}, {1, 1}});
  if (name == "voter3") return validate_matrix({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}});
  fail(Errc::UnknownName, "unknown matrix name '" + std::string(name) + "'");
}

InteractionMatrix parse_builtin_spec(std::string_view spec) {
  auto colon = spec.find(':');
  std::string_view name = spec.substr(0, colon);
  if (colon == std::string_view::npos) return builtin_matrix(name);

  std::string params(spec.substr(colon + 1));
  std::vector<double> vals;
  std::istringstream is(params);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    try {
      size_t pos = 0;
      double v = std::stod(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      vals.push_back(v);
    } catch (const std::exception&) {
      fail(Errc::ParseError, "bad numeric parameter '" + tok + "' in matrix spec");
    }
  }
  if (vals.size() == 1) return builtin_matrix(name, vals[0]);
  return builtin_matrix(name, std::nullopt, vals);
}

nlohmann::json matrix_to_json(const InteractionMatrix& m) {
  return nlohmann::json{{"n", m.n()}, {"entries", m.rows()}};
}

InteractionMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("entries"))
    fail(Errc::ParseError, "matrix JSON must be {\"n\": int, \"entries\": [[..],..]}");
  auto entries = j.at("entries").get<std::vector<std::vector<double>>>();
  auto m = validate_matrix(entries);
  if (j.contains("n") && j.at("n").get<int>() != m.n())
    fail(Errc::ValidationError, "matrix JSON field n disagrees with entries shape");
  return m;
}

nlohmann::json theta_to_json(const ThetaParams& p) {
  return nlohmann::json{{"family", family_name(p.family)}, {"theta", p.theta}};
}

ThetaParams theta_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("family") || !j.contains("theta"))
    fail(Errc::ParseError, "theta JSON must be {\"family\": name, \"theta\": [..]}");
  ThetaParams p;
  p.family = family_from_name(j.at("family").get<std::string>());
  p.theta = j.at("theta").get<std::vector<double>>();
  family_matrix(p);  // validates ranges and arity
  return p;
}

}  // namespace reslat
