#ifndef RESLAT_MEANFIELD_HPP
#define RESLAT_MEANFIELD_HPP

#include <array>
#include <optional>
#include <ostream>
#include <vector>

#include "reslat/matrix.hpp"
#include "reslat/regime.hpp"
#include "reslat/simplex.hpp"

namespace reslat::meanfield {

// Density growth rates du/dt of the well-mixed model: species i gains mass at
// the rate at which it claims each resource pool relative to everyone else,
// and loses mass at unit per-capita rate. A resource column whose weighted
// density is zero contributes nothing (its updates are canceled), which also
// cancels the matching death term, so the components always sum to zero.
std::vector<double> rhs(const InteractionMatrix& m, const SimplexPoint& u);

// Raw buffer version used by the integrator (no simplex checks).
void rhs_raw(const InteractionMatrix& m, const double* u, double* out);

struct Trajectory {
  std::vector<double> times;
  std::vector<SimplexPoint> states;

  const SimplexPoint& final_state() const { return states.back(); }
  // Smallest recorded coordinate over states with time >= t_from.
  double min_coordinate(double t_from = 0.0) const;
  // Header "t,u1,...,un".
  void write_csv(std::ostream& os) const;
};

// One classical 4th-order step in place: clamps roundoff-scale negatives in
// [-1e-12, 0) to zero and renormalizes the sum to 1. Coordinates that are
// exactly zero stay exactly zero. Throws STEP_TOO_LARGE if any intermediate
// coordinate falls below -1e-6.
void step_rk4(const InteractionMatrix& m, std::vector<double>& u, double h);

// Fixed-step integration from u0, recording every step (plus a final partial
// step when t_end is not a multiple of step).
Trajectory integrate(const InteractionMatrix& m, const SimplexPoint& u0, double t_end,
                     double step = 0.01);

// Interior rest point of the two-species model, (u1bar, 1-u1bar), present
// exactly when both species cooperate or both defect (strictly).
// Errors: DEGENERATE when a sign comparison ties.
std::optional<SimplexPoint> two_type_equilibrium(const InteractionMatrix& m);

// Global two-species outcome: CHEATER_WINS(i), BISTABLE (with the basin
// threshold on u1) or COOPERATION_COEXIST (with the interior equilibrium).
RegimeReport classify_two_type(const InteractionMatrix& m);

// Guaranteed decay rate of species j when species i strictly dominates it in
// every column: min_k (a(i,k)-a(j,k)) / max_m a(m,k). Empty when i does not
// strictly dominate j.
std::optional<double> extinction_rate(const InteractionMatrix& m, int i, int j);

enum class TrivialStability { Sink, Source, Saddle };

struct TrivialStabilityResult {
  TrivialStability kind;
  // Transversal eigenvalues (a(j,i)-a(i,i))/a(i,i), in increasing j != i.
  std::array<double, 2> eigenvalues;
};

// Local stability of the single-species equilibrium e_i, n = 3.
// Errors: ZERO_DIAGONAL when a(i,i) = 0, DEGENERATE on eigenvalue sign ties.
TrivialStabilityResult trivial_equilibrium_stability(const InteractionMatrix& m, int i);

// Invadibility of the third species k against the pair (i,j), n = 3:
//   (2a(k,i)-a(i,i)-a(j,i))(a(i,j)-a(j,j)) + (2a(k,j)-a(i,j)-a(j,j))(a(j,i)-a(i,i)).
// Its sign decides whether k can invade the pair equilibrium e_{i,j}.
double invadibility(const InteractionMatrix& m, int i, int j);

enum class NontrivialStability { Stable, Repelling, Source, Saddle, Absent };

struct NontrivialStabilityResult {
  NontrivialStability kind;
  std::optional<SimplexPoint> point;  // e_{i,j} embedded in the 3-simplex
  double delta = 0;                   // invadibility of the third species
};

// Local stability of the pair equilibrium e_{i,j} (n = 3): Absent when the
// pair is a cheating relationship; otherwise classified by (cooperation vs
// competition) x sign(delta). Errors: DEGENERATE on ties.
NontrivialStabilityResult nontrivial_equilibrium_stability(const InteractionMatrix& m, int i, int j);

enum class CycleClass { NoCycle, StableCycle, RepellingCycle, Indeterminate };

struct HeteroclinicResult {
  CycleClass cls = CycleClass::NoCycle;
  // (a(j,i)+a(k,i)-2a(i,i))/a(i,i) per species i; all negative means the
  // cycle attracts, all positive means it repels (so the system is permanent).
  std::array<double, 3> row_sums{};
  // +1: e1->e2->e3->e1, -1: reversed orientation, 0: no cycle.
  int orientation = 0;
};

// Detects a boundary heteroclinic cycle (both orientations) and classifies
// its stability. Errors: DEGENERATE on ties.
HeteroclinicResult heteroclinic_analysis(const InteractionMatrix& m);

// true iff a(i,i) > a(j,i) for all i != j (all three one-species equilibria
// simultaneously attract).
bool tristability_check(const InteractionMatrix& m);

// Permanence of the three-species system by the four sufficient scenarios
// (checked under all species permutations), with the boundary census and the
// per-equilibrium psi values as evidence. Falls back to TRISTABLE /
// HETEROCLINIC_STABLE / BOUNDARY_STABLE / UNCLASSIFIED when not permanent.
RegimeReport permanence_check(const InteractionMatrix& m);

}  // namespace reslat::meanfield

#endif
