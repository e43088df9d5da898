#ifndef RESLAT_LATTICE_HPP
#define RESLAT_LATTICE_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "reslat/matrix.hpp"
#include "reslat/rng.hpp"
#include "reslat/simplex.hpp"

namespace reslat::lattice {

// Species configuration on a 1D or 2D torus. Sites update sequentially at
// uniformly random positions; each update advances time by 1/num_sites, so
// time after U updates is exactly U/num_sites. Internals use 0-based species,
// all reporting surfaces use 1-based labels.
struct LatticeState {
  std::vector<int> dims;        // {L} or {Lx, Ly}
  int n = 0;                    // number of species
  std::vector<uint8_t> cell;    // row-major species per site
  std::vector<uint64_t> count;  // sites per species
  uint64_t same_edges = 0;      // same-type unordered torus edges
  uint64_t updates = 0;

  int64_t num_sites() const {
    int64_t p = 1;
    for (int d : dims) p *= d;
    return p;
  }
  int degree() const { return dims.size() == 1 ? 2 : 4; }
  int64_t num_edges() const { return num_sites() * degree() / 2; }
  double time() const { return double(updates) / double(num_sites()); }

  // true when one species occupies every site (absorbing).
  bool fixated() const;
  // The fixated species, 1-based.
  int fixated_species() const;
};

// Independent site assignment with the given densities; bit-exact for a seed.
LatticeState init_product_measure(const std::vector<int>& dims, const SimplexPoint& densities,
                                  uint64_t seed);

// Applies the local update rule at `site`: the site adopts the species of a
// neighbor sampled with probability proportional to that neighbor's ability
// to exploit the resource produced by the current occupant. Keeping the
// current species is a possible outcome (via its own neighbors); when no
// neighbor can exploit the local resource the update is canceled. `colmaj`
// is the matrix in column-major order. Returns true when the site changed.
bool update_site(LatticeState& st, const double* colmaj, int64_t site, Xoshiro256pp& rng);

// One update at a uniformly random site; advances the update counter.
void step(LatticeState& st, const InteractionMatrix& m, Xoshiro256pp& rng);

// Fraction of unordered torus edges whose endpoints share a species
// (full recount; the run loop tracks the same quantity incrementally).
double clustering_coefficient(const LatticeState& st);

struct Snapshot {
  double time = 0;
  std::vector<int> dims;
  int n = 0;
  std::vector<uint8_t> cell;  // 0-based species
};

// Grid snapshot of a 2D state.
Snapshot snapshot(const LatticeState& st);

// Binary PPM (P6), one pixel per site; species 1 black, 2 grey, 3 white.
void write_ppm(const Snapshot& s, std::ostream& os);
void write_ppm_file(const Snapshot& s, const std::string& path);

struct SimConfig {
  uint64_t seed = 1;
  uint64_t total_updates = 0;  // e.g. 3.2e8 on 400x400 is 2000 time units
  std::vector<double> snapshot_times;
  double density_sample_interval = 2.0;
};

struct RunRecord {
  int n = 0;
  std::vector<int> dims;
  uint64_t seed = 0;
  uint64_t total_updates = 0;
  std::vector<double> times;
  std::vector<std::vector<double>> density;  // per sample, length n
  std::vector<double> clustering;            // per sample
  std::optional<std::pair<int, double>> fixation;  // 1-based species, time
  std::vector<Snapshot> snapshots;
  std::vector<uint8_t> final_cell;

  double final_density(int species_1based) const;
  double min_density(int species_1based) const;
  double final_clustering() const { return clustering.back(); }
  // Header "t,u1,...,un,clustering".
  void write_density_csv(std::ostream& os) const;
  nlohmann::json meta_json() const;
};

// Executes config.total_updates updates (stopping early at fixation, with the
// remaining samples filled in as constants), sampling densities and the
// clustering coefficient on the configured schedule.
RunRecord run(LatticeState& st, const InteractionMatrix& m, const SimConfig& cfg);

// Full protocol from a single seed: product-measure start plus run, with the
// two random streams derived from cfg.seed.
RunRecord simulate_experiment(const InteractionMatrix& m, const std::vector<int>& dims,
                              const SimplexPoint& densities, const SimConfig& cfg);

// Voter-model clustering baselines at the standard scale; runs whose final
// coefficient reaches these are classified as clustering rather than
// coexistence.
inline constexpr double kVoterClustering2 = 0.86;
inline constexpr double kVoterClustering3 = 0.81;

struct Outcome {
  enum Kind { Dominant, Clustering, Coexistence } kind = Coexistence;
  int species = 0;  // 1-based winner for Dominant
  std::string describe() const;
};

// Fixation means a dominant type; otherwise the final clustering coefficient
// against the voter baseline separates clustering from coexistence.
Outcome classify_outcome(const RunRecord& rec, int n);

struct InterfaceRecord {
  double theta1 = 0, theta2 = 0;
  int length = 0;
  std::vector<double> times;
  std::vector<int> displacement;  // interface position minus start position
  std::vector<uint8_t> final_cell;
  // Header "t,displacement".
  void write_csv(std::ostream& os) const;
};

// Two-species segment with a sharp left/right interface and frozen end
// sites. Only the two sites flanking the interface can flip (with switch
// probabilities 1-theta1 and 1-theta2), so the interface performs a random
// walk whose displacement is tracked on a unit-time grid.
InterfaceRecord run_1d_interface(double theta1, double theta2, int length, double t_end,
                                 uint64_t seed, double sample_interval = 1.0);

}  // namespace reslat::lattice

#endif
