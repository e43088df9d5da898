#include "reslat/meanfield.hpp"

#include <algorithm>
#include <cmath>

#include "reslat/csv.hpp"

namespace reslat::meanfield {

namespace {

constexpr double kNegClamp = 1e-12;   // roundoff-scale negatives snapped to 0
constexpr double kBlowup = 1e-6;      // beyond this the step is unstable

// Tri-state condition algebra: 1 true, 0 false, -1 tie (within kSignTol).
int lt(double x, double y) {
  int s = tie_sign(y - x);
  return s == 0 ? -1 : (s > 0 ? 1 : 0);
}

int conj(std::initializer_list<int> cs) {
  int r = 1;
  for (int c : cs) {
    if (c == 0) return 0;
    if (c < 0) r = -1;
  }
  return r;
}

void rhs_into(const InteractionMatrix& m, const double* u, double* out, double* denom) {
  const int n = m.n();
  for (int j = 0; j < n; ++j) {
    double d = 0;
    for (int i = 0; i < n; ++i) d += m.at(i, j) * u[i];
    denom[j] = d;
  }
  for (int i = 0; i < n; ++i) {
    double gain = 0;
    for (int j = 0; j < n; ++j)
      if (denom[j] > 0) gain += m.at(i, j) * u[j] / denom[j];
    // The unit death rate is the outflow through column i; it is canceled
    // together with the column when nobody can exploit resource i.
    double loss = denom[i] > 0 ? 1.0 : 0.0;
    out[i] = (gain - loss) * u[i];
  }
}

}  // namespace

void rhs_raw(const InteractionMatrix& m, const double* u, double* out) {
  std::vector<double> denom(size_t(m.n()));
  rhs_into(m, u, out, denom.data());
}

std::vector<double> rhs(const InteractionMatrix& m, const SimplexPoint& u) {
  if (u.size() != m.n()) fail(Errc::ValidationError, "state size disagrees with matrix size");
  std::vector<double> out(size_t(m.n()));
  rhs_raw(m, u.coords().data(), out.data());
  return out;
}

// Reusable RK4 stepper (no per-step allocation).
class Stepper {
 public:
  explicit Stepper(const InteractionMatrix& m)
      : m_(m), k1_(m.n()), k2_(m.n()), k3_(m.n()), k4_(m.n()), y_(m.n()), denom_(m.n()) {}

  void step(std::vector<double>& u, double h) {
    const int n = m_.n();
    rhs_into(m_, u.data(), k1_.data(), denom_.data());
    stage(u, k1_, h / 2);
    rhs_into(m_, y_.data(), k2_.data(), denom_.data());
    stage(u, k2_, h / 2);
    rhs_into(m_, y_.data(), k3_.data(), denom_.data());
    stage(u, k3_, h);
    rhs_into(m_, y_.data(), k4_.data(), denom_.data());

    double sum = 0;
    for (int i = 0; i < n; ++i) {
      u[i] += h / 6 * (k1_[i] + 2 * (k2_[i] + k3_[i]) + k4_[i]);
      if (u[i] < 0) {
        if (u[i] < -kBlowup) fail(Errc::StepTooLarge, "state left the simplex; reduce the step");
        if (u[i] >= -kNegClamp) u[i] = 0;
      }
      sum += u[i];
    }
    for (int i = 0; i < n; ++i) u[i] /= sum;
  }

 private:
  void stage(const std::vector<double>& u, const std::vector<double>& k, double h) {
    for (size_t i = 0; i < u.size(); ++i) {
      y_[i] = u[i] + h * k[i];
      if (y_[i] < -kBlowup) fail(Errc::StepTooLarge, "intermediate state left the simplex");
    }
  }

  const InteractionMatrix& m_;
  std::vector<double> k1_, k2_, k3_, k4_, y_, denom_;
};

void step_rk4(const InteractionMatrix& m, std::vector<double>& u, double h) {
  Stepper(m).step(u, h);
}

double Trajectory::min_coordinate(double t_from) const {
  double lo = 1.0;
  for (size_t k = 0; k < times.size(); ++k) {
    if (times[k] < t_from) continue;
    for (int i = 0; i < states[k].size(); ++i) lo = std::min(lo, states[k][i]);
  }
  return lo;
}

void Trajectory::write_csv(std::ostream& os) const {
  const int n = states.empty() ? 0 : states.front().size();
  os << "t";
  for (int i = 1; i <= n; ++i) os << ",u" << i;
  os << "\n";
  for (size_t k = 0; k < times.size(); ++k) {
    put_double(os, times[k]);
    for (int i = 0; i < n; ++i) {
      os << ',';
      put_double(os, states[k][i]);
    }
    os << "\n";
  }
}

Trajectory integrate(const InteractionMatrix& m, const SimplexPoint& u0, double t_end,
                     double step) {
  if (!(t_end > 0) || !(step > 0)) fail(Errc::ValidationError, "t_end and step must be positive");
  if (u0.size() != m.n()) fail(Errc::ValidationError, "state size disagrees with matrix size");

  Stepper st(m);
  std::vector<double> u = u0.coords();
  Trajectory traj;
  const long long nsteps = (long long)std::floor(t_end / step + 1e-9);
  traj.times.reserve(size_t(nsteps) + 2);
  traj.states.reserve(size_t(nsteps) + 2);
  traj.times.push_back(0);
  traj.states.push_back(u0);
  for (long long k = 1; k <= nsteps; ++k) {
    st.step(u, step);
    traj.times.push_back(double(k) * step);
    traj.states.push_back(SimplexPoint(u));
  }
  const double rest = t_end - double(nsteps) * step;
  if (rest > 1e-12) {
    st.step(u, rest);
    traj.times.push_back(t_end);
    traj.states.push_back(SimplexPoint(u));
  }
  return traj;
}

std::optional<SimplexPoint> two_type_equilibrium(const InteractionMatrix& m) {
  if (m.n() != 2) fail(Errc::ValidationError, "two_type_equilibrium needs n = 2");
  int s1 = strict_sign(m.at(0, 0) - m.at(1, 0), "a11 vs a21");
  int s2 = strict_sign(m.at(1, 1) - m.at(0, 1), "a22 vs a12");
  if (s1 * s2 < 0) return std::nullopt;  // cheating pair: no interior rest point
  double num = m.at(1, 0) * (m.at(0, 1) - m.at(1, 1));
  double den = m.at(0, 1) * (m.at(1, 0) - m.at(0, 0)) + num;
  double u1 = num / den;
  return SimplexPoint({u1, 1 - u1});
}

RegimeReport classify_two_type(const InteractionMatrix& m) {
  if (m.n() != 2) fail(Errc::ValidationError, "classify_two_type needs n = 2");
  int s1 = strict_sign(m.at(0, 0) - m.at(1, 0), "a11 vs a21");
  int s2 = strict_sign(m.at(1, 1) - m.at(0, 1), "a22 vs a12");

  RegimeReport r;
  auto [t1, t2] = theta_of_two_type(m);
  r.values["theta1"] = t1;
  r.values["theta2"] = t2;
  r.equilibria.emplace_back("e1", std::vector<double>{1, 0});
  r.equilibria.emplace_back("e2", std::vector<double>{0, 1});
  if (m.at(0, 0) > 0) r.values["growth(e1,u2)"] = (m.at(1, 0) - m.at(0, 0)) / m.at(0, 0);
  if (m.at(1, 1) > 0) r.values["growth(e2,u1)"] = (m.at(0, 1) - m.at(1, 1)) / m.at(1, 1);

  if (s1 * s2 < 0) {
    r.label = RegimeLabel::CheaterWins;
    r.param = s1 > 0 ? 1 : 2;
    return r;
  }
  auto eq = two_type_equilibrium(m);
  r.values["u1_bar"] = (*eq)[0];
  r.equilibria.emplace_back("e_{1,2}", eq->coords());
  r.label = s1 > 0 ? RegimeLabel::Bistable : RegimeLabel::CooperationCoexist;
  return r;
}

std::optional<double> extinction_rate(const InteractionMatrix& m, int i, int j) {
  const int n = m.n();
  double rate = HUGE_VAL;
  for (int k = 0; k < n; ++k) {
    double diff = m.at(i, k) - m.at(j, k);
    if (!(diff > 0)) return std::nullopt;
    double colmax = 0;
    for (int r = 0; r < n; ++r) colmax = std::max(colmax, m.at(r, k));
    rate = std::min(rate, diff / colmax);
  }
  return rate;
}

TrivialStabilityResult trivial_equilibrium_stability(const InteractionMatrix& m, int i) {
  if (m.n() != 3) fail(Errc::ValidationError, "trivial_equilibrium_stability needs n = 3");
  double aii = m.at(i, i);
  if (!(aii > kSignTol))
    fail(Errc::ZeroDiagonal, "a(i,i) = 0: transversal growth at e_i is unbounded");

  TrivialStabilityResult res{};
  int signs[2];
  int k = 0;
  for (int j = 0; j < 3; ++j) {
    if (j == i) continue;
    res.eigenvalues[k] = (m.at(j, i) - aii) / aii;
    signs[k] = strict_sign(res.eigenvalues[k], "transversal eigenvalue");
    ++k;
  }
  if (signs[0] < 0 && signs[1] < 0)
    res.kind = TrivialStability::Sink;
  else if (signs[0] > 0 && signs[1] > 0)
    res.kind = TrivialStability::Source;
  else
    res.kind = TrivialStability::Saddle;
  return res;
}

double invadibility(const InteractionMatrix& m, int i, int j) {
  if (m.n() != 3) fail(Errc::ValidationError, "invadibility needs n = 3");
  if (i == j || i < 0 || j < 0 || i > 2 || j > 2) fail(Errc::ValidationError, "bad species pair");
  const int k = 3 - i - j;
  return (2 * m.at(k, i) - m.at(i, i) - m.at(j, i)) * (m.at(i, j) - m.at(j, j)) +
         (2 * m.at(k, j) - m.at(i, j) - m.at(j, j)) * (m.at(j, i) - m.at(i, i));
}

NontrivialStabilityResult nontrivial_equilibrium_stability(const InteractionMatrix& m, int i,
                                                           int j) {
  if (m.n() != 3) fail(Errc::ValidationError, "nontrivial_equilibrium_stability needs n = 3");
  NontrivialStabilityResult res{};
  res.delta = invadibility(m, i, j);

  int s1 = strict_sign(m.at(i, i) - m.at(j, i), "a(i,i) vs a(j,i)");
  int s2 = strict_sign(m.at(j, j) - m.at(i, j), "a(j,j) vs a(i,j)");
  if (s1 * s2 < 0) {
    res.kind = NontrivialStability::Absent;
    return res;
  }

  double num = m.at(j, i) * (m.at(i, j) - m.at(j, j));
  double den = m.at(i, j) * (m.at(j, i) - m.at(i, i)) + num;
  double uij = num / den;
  std::vector<double> p(3, 0.0);
  p[size_t(i)] = uij;
  p[size_t(j)] = 1 - uij;
  res.point = SimplexPoint(p);

  int sd = strict_sign(res.delta, "invadibility");
  if (s1 < 0)  // the pair cooperates
    res.kind = sd < 0 ? NontrivialStability::Stable : NontrivialStability::Repelling;
  else  // the pair competes
    res.kind = sd < 0 ? NontrivialStability::Source : NontrivialStability::Saddle;
  return res;
}

namespace {

// Cycle existence for a given successor map: at each vertex the successor
// invades and the predecessor is repelled, column by column.
int cycle_exists(const InteractionMatrix& m, const int succ[3]) {
  int c = 1;
  for (int i = 0; i < 3; ++i) {
    int pred = succ[succ[i]];
    c = conj({c, lt(m.at(pred, i), m.at(i, i)), lt(m.at(i, i), m.at(succ[i], i))});
    if (c == 0) return 0;
  }
  return c;
}

std::array<double, 3> characteristic_row_sums(const InteractionMatrix& m) {
  std::array<double, 3> r{};
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3, k = (i + 2) % 3;
    r[size_t(i)] = (m.at(j, i) + m.at(k, i) - 2 * m.at(i, i)) / m.at(i, i);
  }
  return r;
}

}  // namespace

HeteroclinicResult heteroclinic_analysis(const InteractionMatrix& m) {
  if (m.n() != 3) fail(Errc::ValidationError, "heteroclinic_analysis needs n = 3");
  static constexpr int kForward[3] = {1, 2, 0};
  static constexpr int kReverse[3] = {2, 0, 1};

  HeteroclinicResult res;
  int fwd = cycle_exists(m, kForward);
  int rev = cycle_exists(m, kReverse);
  if (fwd == 1)
    res.orientation = 1;
  else if (rev == 1)
    res.orientation = -1;
  else if (fwd < 0 || rev < 0)
    fail(Errc::Degenerate, "cycle existence comparison ties");

  bool diag_pos = m.at(0, 0) > 0 && m.at(1, 1) > 0 && m.at(2, 2) > 0;
  if (diag_pos) res.row_sums = characteristic_row_sums(m);
  if (res.orientation == 0) {
    res.cls = CycleClass::NoCycle;
    return res;
  }

  int neg = 0, pos = 0;
  for (double v : res.row_sums) {
    int s = strict_sign(v, "characteristic row sum");
    (s > 0 ? pos : neg)++;
  }
  res.cls = neg == 3  ? CycleClass::StableCycle
            : pos == 3 ? CycleClass::RepellingCycle
                       : CycleClass::Indeterminate;
  return res;
}

bool tristability_check(const InteractionMatrix& m) {
  if (m.n() != 3) fail(Errc::ValidationError, "tristability_check needs n = 3");
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && !(m.at(i, i) > m.at(j, i))) return false;
  return true;
}

namespace {

struct PermutedView {
  const InteractionMatrix& m;
  const int* s;
  double operator()(int i, int j) const { return m.at(s[i], s[j]); }
};

double perm_invadibility(const PermutedView& b, int i, int j) {
  const int k = 3 - i - j;
  return (2 * b(k, i) - b(i, i) - b(j, i)) * (b(i, j) - b(j, j)) +
         (2 * b(k, j) - b(i, j) - b(j, j)) * (b(j, i) - b(i, i));
}

// The four sufficient permanence scenarios, indexed by the number of pair
// equilibria on the boundary.
int permanence_case(const InteractionMatrix& m, const int* sig, int k) {
  PermutedView b{m, sig};
  switch (k) {
    case 0: {
      static constexpr int fwd[3] = {1, 2, 0};
      // existence plus all characteristic row sums positive (repelling cycle)
      int c = 1;
      for (int i = 0; i < 3; ++i) {
        int pred = fwd[fwd[i]];
        c = conj({c, lt(b(pred, i), b(i, i)), lt(b(i, i), b(fwd[i], i))});
      }
      for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3, kk = (i + 2) % 3;
        c = conj({c, lt(2 * b(i, i), b(j, i) + b(kk, i))});
      }
      return c;
    }
    case 1:
      return conj({lt(b(2, 0), b(0, 0)), lt(b(0, 0), b(1, 0)),
                   lt(b(1, 1), std::min(b(2, 1), b(0, 1))),
                   lt(b(1, 2), b(2, 2)), lt(b(2, 2), b(0, 2)),
                   lt(0, perm_invadibility(b, 0, 1))});
    case 2:
      return conj({lt(b(2, 0), b(0, 0)), lt(b(0, 0), b(1, 0)),
                   lt(b(1, 1), std::min(b(2, 1), b(0, 1))),
                   lt(b(2, 2), std::min(b(0, 2), b(1, 2))),
                   lt(0, perm_invadibility(b, 0, 1)), lt(0, perm_invadibility(b, 1, 2))});
    case 3:
      return conj({lt(b(0, 0), std::min(b(1, 0), b(2, 0))),
                   lt(b(1, 1), std::min(b(2, 1), b(0, 1))),
                   lt(b(2, 2), std::min(b(0, 2), b(1, 2))),
                   lt(0, perm_invadibility(b, 0, 1)), lt(0, perm_invadibility(b, 1, 2)),
                   lt(0, perm_invadibility(b, 2, 0))});
  }
  return 0;
}

}  // namespace

RegimeReport permanence_check(const InteractionMatrix& m) {
  if (m.n() != 3) fail(Errc::ValidationError, "permanence_check needs n = 3");
  static constexpr int kPerm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                      {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  bool saw_tie = false;

  RegimeReport r;
  // Boundary census and psi values as evidence, independent of the outcome.
  for (int i = 0; i < 3; ++i) {
    std::vector<double> e(3, 0.0);
    e[size_t(i)] = 1.0;
    r.equilibria.emplace_back("e" + std::to_string(i + 1), e);
    if (m.at(i, i) > 0) {
      int j = (i + 1) % 3, k = (i + 2) % 3;
      r.values["psi(e" + std::to_string(i + 1) + ")"] =
          (m.at(j, i) + m.at(k, i) - 2 * m.at(i, i)) / m.at(i, i);
      for (int t : {j, k})
        r.values["lambda(e" + std::to_string(i + 1) + ",u" + std::to_string(t + 1) + ")"] =
            (m.at(t, i) - m.at(i, i)) / m.at(i, i);
    }
  }
  static constexpr int kPairs[3][2] = {{0, 1}, {1, 2}, {2, 0}};
  for (auto [i, j] : kPairs) {
    std::string pair = std::to_string(i + 1) + "," + std::to_string(j + 1);
    double delta = invadibility(m, i, j);
    r.values["Delta(" + pair + ")"] = delta;
    int s1 = tie_sign(m.at(i, i) - m.at(j, i));
    int s2 = tie_sign(m.at(j, j) - m.at(i, j));
    if (s1 == 0 || s2 == 0) saw_tie = true;
    if (s1 * s2 == 1) {
      double num = m.at(j, i) * (m.at(i, j) - m.at(j, j));
      double den = m.at(i, j) * (m.at(j, i) - m.at(i, i)) + num;
      double uij = num / den;
      std::vector<double> p(3, 0.0);
      p[size_t(i)] = uij;
      p[size_t(j)] = 1 - uij;
      r.equilibria.emplace_back("e_{" + pair + "}", p);
      double det = m.at(i, j) * m.at(j, i) - m.at(i, i) * m.at(j, j);
      if (det != 0) r.values["psi(e_{" + pair + "})"] = delta / det;
    }
  }

  for (int k = 0; k <= 3; ++k)
    for (const auto& sig : kPerm) {
      int c = permanence_case(m, sig, k);
      if (c == 1) {
        r.label = RegimeLabel::PermanentCase;
        r.param = k;
        r.values["case_permutation"] =
            double(100 * (sig[0] + 1) + 10 * (sig[1] + 1) + (sig[2] + 1));
        return r;
      }
      if (c < 0) saw_tie = true;
    }

  // Not recognizably permanent: look for a clean negative certificate.
  {
    int tri = 1;
    for (int i = 0; i < 3 && tri != 0; ++i)
      for (int j = 0; j < 3 && tri != 0; ++j)
        if (i != j) tri = conj({tri, lt(m.at(j, i), m.at(i, i))});
    if (tri == 1) {
      r.label = RegimeLabel::Tristable;
      return r;
    }
    if (tri < 0) saw_tie = true;
  }
  try {
    HeteroclinicResult hc = heteroclinic_analysis(m);
    if (hc.cls == CycleClass::StableCycle) {
      r.label = RegimeLabel::HeteroclinicStable;
      for (int i = 0; i < 3; ++i)
        r.values["row_sum" + std::to_string(i + 1)] = hc.row_sums[size_t(i)];
      return r;
    }
  } catch (const Error& e) {
    if (e.code() != Errc::Degenerate) throw;
    saw_tie = true;
  }
  // A locally stable vertex or pair equilibrium rules permanence out.
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3, k = (i + 2) % 3;
    int sink = conj({lt(m.at(j, i), m.at(i, i)), lt(m.at(k, i), m.at(i, i))});
    if (sink == 1) {
      r.label = RegimeLabel::BoundaryStable;
      r.param = 0;
      return r;
    }
    if (sink < 0) saw_tie = true;
  }
  for (auto [i, j] : kPairs) {
    try {
      auto st = nontrivial_equilibrium_stability(m, i, j);
      if (st.kind == NontrivialStability::Stable) {
        r.label = RegimeLabel::BoundaryStable;
        return r;
      }
    } catch (const Error& e) {
      if (e.code() != Errc::Degenerate) throw;
      saw_tie = true;
    }
  }

  if (saw_tie) fail(Errc::Degenerate, "classification blocked by comparison ties");
  r.label = RegimeLabel::Unclassified;
  return r;
}

}  // namespace reslat::meanfield
