#ifndef RESLAT_MATRIX_HPP
#define RESLAT_MATRIX_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "reslat/error.hpp"

namespace reslat {

// Nonnegative n-by-n ability matrix. Entry (i,j) is the ability of species i
// to exploit the resource produced by species j, so column j lists how well
// everybody exploits resource j. Every column must have a positive entry
// (every resource is exploitable by someone). Immutable after construction.
class InteractionMatrix {
 public:
  InteractionMatrix() = default;

  int n() const { return n_; }
  double at(int i, int j) const { return a_[size_t(i) * n_ + j]; }
  const std::vector<double>& entries() const { return a_; }

  // Column-major copy, used by the lattice update kernel.
  std::vector<double> column_major() const;

  std::vector<std::vector<double>> rows() const;

  friend InteractionMatrix validate_matrix(const std::vector<std::vector<double>>& entries);

 private:
  int n_ = 0;
  std::vector<double> a_;  // row-major
};

// Checks shape, nonnegativity and column positivity.
// Errors: VALIDATION_ERROR (shape), NEGATIVE_ENTRY, ZERO_COLUMN.
InteractionMatrix validate_matrix(const std::vector<std::vector<double>>& entries);

// Relative ability of each species to exploit its own resource (n = 2):
// theta_1 = a11/(a11+a21), theta_2 = a22/(a12+a22). Species i cooperates when
// theta_i < 1/2 and defects when theta_i > 1/2.
std::pair<double, double> theta_of_two_type(const InteractionMatrix& m);

enum class ThetaFamily { TwoType, M8, M9 };

const char* family_name(ThetaFamily f);
ThetaFamily family_from_name(std::string_view name);

// A point in one of the named theta-parameterized matrix families.
struct ThetaParams {
  ThetaFamily family = ThetaFamily::TwoType;
  std::vector<double> theta;  // each in [0,1]; size 2 (TwoType) or 3 (M8/M9)
};

// Builds the family matrix:
//   TwoType: columns normalized to 1, [[t1, 1-t2], [1-t1, t2]]
//   M8: column j has 2*t_j on the diagonal and 1-t_j off it
//   M9: diagonal t_i with the cyclic pattern of ones (rock-paper-scissors)
InteractionMatrix family_matrix(const ThetaParams& p);

// Named matrices M0..M9 used throughout the experiments. M4/M5 take an
// epsilon (defaults 0.1 and 0.2), M8/M9 take a theta triple. "voter2"/
// "voter3" are the all-ones matrices.
InteractionMatrix builtin_matrix(std::string_view name,
                                 std::optional<double> eps = std::nullopt,
                                 std::optional<std::vector<double>> theta = std::nullopt);

// Parses "M0", "M4:0.05", "M9:0.8,0.8,0.8", "voter2", ...
InteractionMatrix parse_builtin_spec(std::string_view spec);

nlohmann::json matrix_to_json(const InteractionMatrix& m);
InteractionMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json theta_to_json(const ThetaParams& p);
ThetaParams theta_from_json(const nlohmann::json& j);

}  // namespace reslat

#endif
