#include "reslat/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "reslat/csv.hpp"

namespace reslat::lattice {

namespace {

inline int wrap_dec(int x, int L) { return x == 0 ? L - 1 : x - 1; }
inline int wrap_inc(int x, int L) { return x + 1 == L ? 0 : x + 1; }

// Local flip rule shared by every update path. The new species is the species
// of a neighbor drawn with weight a(neighbor_species, current_species); a
// zero total weight cancels the update.
template <int Deg>
inline bool flip(LatticeState& st, const double* colmaj, int64_t site, const int64_t* nb,
                 Xoshiro256pp& rng) {
  uint8_t* cells = st.cell.data();
  const uint8_t j = cells[site];
  uint8_t s[Deg];
  bool all_same = true;
  for (int d = 0; d < Deg; ++d) {
    s[d] = cells[nb[d]];
    all_same = all_same && s[d] == j;
  }
  if (all_same) return false;  // stays or cancels either way

  const double* wj = colmaj + size_t(j) * st.n;
  double w[Deg];
  double total = 0;
  for (int d = 0; d < Deg; ++d) {
    w[d] = wj[s[d]];
    total += w[d];
  }
  if (total == 0) return false;  // nobody here can exploit the local resource

  double x = rng.next_double() * total;
  int d = 0;
  double acc = w[0];
  while (x >= acc && d + 1 < Deg) acc += w[++d];
  const uint8_t i = s[d];
  if (i == j) return false;

  cells[site] = i;
  st.count[j]--;
  st.count[i]++;
  int64_t delta = 0;
  for (int d2 = 0; d2 < Deg; ++d2) delta += int(s[d2] == i) - int(s[d2] == j);
  st.same_edges += uint64_t(delta);
  return true;
}

inline bool update_2d(LatticeState& st, const double* colmaj, int x, int y, int Lx, int Ly,
                      Xoshiro256pp& rng) {
  const int64_t row = int64_t(y) * Lx;
  const int64_t nb[4] = {row + wrap_dec(x, Lx), row + wrap_inc(x, Lx),
                         int64_t(wrap_dec(y, Ly)) * Lx + x, int64_t(wrap_inc(y, Ly)) * Lx + x};
  return flip<4>(st, colmaj, row + x, nb, rng);
}

inline bool update_1d(LatticeState& st, const double* colmaj, int x, int L, Xoshiro256pp& rng) {
  const int64_t nb[2] = {wrap_dec(x, L), wrap_inc(x, L)};
  return flip<2>(st, colmaj, x, nb, rng);
}

uint64_t recount_same_edges(const LatticeState& st) {
  uint64_t cnt = 0;
  const uint8_t* c = st.cell.data();
  if (st.dims.size() == 1) {
    const int L = st.dims[0];
    for (int x = 0; x < L; ++x) cnt += c[x] == c[wrap_inc(x, L)];
  } else {
    const int Lx = st.dims[0], Ly = st.dims[1];
    for (int y = 0; y < Ly; ++y) {
      const int64_t row = int64_t(y) * Lx;
      const int64_t down = int64_t(wrap_inc(y, Ly)) * Lx;
      for (int x = 0; x < Lx; ++x) {
        cnt += c[row + x] == c[row + wrap_inc(x, Lx)];
        cnt += c[row + x] == c[down + x];
      }
    }
  }
  return cnt;
}

void check_dims(const std::vector<int>& dims) {
  if (dims.empty() || dims.size() > 2) fail(Errc::ValidationError, "dims must be {L} or {Lx,Ly}");
  for (int d : dims)
    if (d < 2) fail(Errc::ValidationError, "each lattice dimension must be at least 2");
}

}  // namespace

bool LatticeState::fixated() const {
  const uint64_t N = uint64_t(num_sites());
  for (uint64_t c : count)
    if (c == N) return true;
  return false;
}

int LatticeState::fixated_species() const {
  const uint64_t N = uint64_t(num_sites());
  for (size_t i = 0; i < count.size(); ++i)
    if (count[i] == N) return int(i) + 1;
  return 0;
}

LatticeState init_product_measure(const std::vector<int>& dims, const SimplexPoint& densities,
                                  uint64_t seed) {
  check_dims(dims);
  const int n = densities.size();
  if (n < 2 || n > 250) fail(Errc::ValidationError, "need between 2 and 250 species");

  LatticeState st;
  st.dims = dims;
  st.n = n;
  st.count.assign(size_t(n), 0);
  st.cell.resize(size_t(st.num_sites()));

  std::vector<double> cum(size_t(n));
  double acc = 0;
  for (int i = 0; i < n; ++i) cum[size_t(i)] = (acc += densities[i]);

  Xoshiro256pp rng(seed);
  for (auto& c : st.cell) {
    const double u = rng.next_double() * acc;
    int k = 0;
    while (u >= cum[size_t(k)] && k + 1 < n) ++k;
    c = uint8_t(k);
    st.count[size_t(k)]++;
  }
  st.same_edges = recount_same_edges(st);
  return st;
}

bool update_site(LatticeState& st, const double* colmaj, int64_t site, Xoshiro256pp& rng) {
  if (st.dims.size() == 1) return update_1d(st, colmaj, int(site), st.dims[0], rng);
  const int Lx = st.dims[0];
  return update_2d(st, colmaj, int(site % Lx), int(site / Lx), Lx, st.dims[1], rng);
}

void step(LatticeState& st, const InteractionMatrix& m, Xoshiro256pp& rng) {
  if (m.n() != st.n) fail(Errc::ValidationError, "matrix size disagrees with lattice species");
  const auto col = m.column_major();
  if (st.dims.size() == 1) {
    update_1d(st, col.data(), int(rng.next_below(uint32_t(st.dims[0]))), st.dims[0], rng);
  } else {
    const int x = int(rng.next_below(uint32_t(st.dims[0])));
    const int y = int(rng.next_below(uint32_t(st.dims[1])));
    update_2d(st, col.data(), x, y, st.dims[0], st.dims[1], rng);
  }
  st.updates++;
}

double clustering_coefficient(const LatticeState& st) {
  return double(recount_same_edges(st)) / double(st.num_edges());
}

Snapshot snapshot(const LatticeState& st) {
  if (st.dims.size() != 2) fail(Errc::ValidationError, "snapshots need a 2D state");
  return Snapshot{st.time(), st.dims, st.n, st.cell};
}

namespace {
std::array<uint8_t, 3> palette(int k0) {
  switch (k0) {
    case 0: return {0, 0, 0};
    case 1: return {128, 128, 128};
    case 2: return {255, 255, 255};
    default: {
      uint8_t g = uint8_t((k0 * 61) % 256);
      return {g, g, g};
    }
  }
}
}  // namespace

void write_ppm(const Snapshot& s, std::ostream& os) {
  const int w = s.dims[0];
  const int h = s.dims.size() == 2 ? s.dims[1] : 1;
  os << "P6\n" << w << " " << h << "\n255\n";
  std::string buf;
  buf.reserve(s.cell.size() * 3);
  for (uint8_t c : s.cell) {
    auto rgb = palette(c);
    buf.append(reinterpret_cast<const char*>(rgb.data()), 3);
  }
  os.write(buf.data(), std::streamsize(buf.size()));
}

void write_ppm_file(const Snapshot& s, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(Errc::ValidationError, "cannot open '" + path + "' for writing");
  write_ppm(s, os);
}

double RunRecord::final_density(int species_1based) const {
  return density.back()[size_t(species_1based - 1)];
}

double RunRecord::min_density(int species_1based) const {
  double lo = 1.0;
  for (const auto& row : density) lo = std::min(lo, row[size_t(species_1based - 1)]);
  return lo;
}

void RunRecord::write_density_csv(std::ostream& os) const {
  os << "t";
  for (int i = 1; i <= n; ++i) os << ",u" << i;
  os << ",clustering\n";
  for (size_t k = 0; k < times.size(); ++k) {
    put_double(os, times[k]);
    for (int i = 0; i < n; ++i) {
      os << ',';
      put_double(os, density[k][size_t(i)]);
    }
    os << ',';
    put_double(os, clustering[k]);
    os << "\n";
  }
}

nlohmann::json RunRecord::meta_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["dims"] = dims;
  j["seed"] = seed;
  j["total_updates"] = total_updates;
  j["samples"] = times.size();
  if (fixation)
    j["fixation"] = {{"species", fixation->first}, {"time", fixation->second}};
  else
    j["fixation"] = nullptr;
  j["final_density"] = density.back();
  j["final_clustering"] = clustering.back();
  j["outcome"] = classify_outcome(*this, n).describe();
  return j;
}

std::string Outcome::describe() const {
  switch (kind) {
    case Dominant: return "DOMINANT(" + std::to_string(species) + ")";
    case Clustering: return "CLUSTERING";
    case Coexistence: return "COEXISTENCE";
  }
  return "?";
}

Outcome classify_outcome(const RunRecord& rec, int n) {
  if (rec.fixation) return Outcome{Outcome::Dominant, rec.fixation->first};
  const double threshold = n == 2 ? kVoterClustering2 : kVoterClustering3;
  if (rec.final_clustering() >= threshold) return Outcome{Outcome::Clustering, 0};
  return Outcome{Outcome::Coexistence, 0};
}

RunRecord run(LatticeState& st, const InteractionMatrix& m, const SimConfig& cfg) {
  if (m.n() != st.n) fail(Errc::ValidationError, "matrix size disagrees with lattice species");
  const auto col = m.column_major();
  const double* colp = col.data();
  Xoshiro256pp rng(cfg.seed);

  const int64_t N = st.num_sites();
  const double Nd = double(N);
  const uint64_t base = st.updates;
  const uint64_t target = base + cfg.total_updates;
  const double interval = cfg.density_sample_interval > 0 ? cfg.density_sample_interval : 2.0;

  RunRecord rec;
  rec.n = st.n;
  rec.dims = st.dims;
  rec.seed = cfg.seed;
  rec.total_updates = cfg.total_updates;

  auto sample_updates = [&](uint64_t k) { return base + uint64_t(std::llround(double(k) * interval * Nd)); };
  auto snap_updates = [&](double t) { return base + uint64_t(std::llround(t * Nd)); };

  auto take_sample = [&](double t, bool constant_fill) {
    rec.times.push_back(t);
    std::vector<double> d(size_t(st.n));
    for (int i = 0; i < st.n; ++i) d[size_t(i)] = double(st.count[size_t(i)]) / Nd;
    rec.density.push_back(std::move(d));
    rec.clustering.push_back(double(st.same_edges) / double(st.num_edges()));
    (void)constant_fill;
  };

  std::vector<double> snaps = cfg.snapshot_times;
  std::sort(snaps.begin(), snaps.end());
  size_t snap_i = 0;
  const bool want_snaps = st.dims.size() == 2;

  uint64_t k = 0;
  take_sample(st.time(), false);
  bool fix = st.fixated();
  if (fix) rec.fixation = {st.fixated_species(), st.time()};

  const bool two_d = st.dims.size() == 2;
  const int Lx = st.dims[0];
  const int Ly = two_d ? st.dims[1] : 1;

  while (!fix && st.updates < target) {
    uint64_t stop = target;
    const uint64_t next_sample = sample_updates(k + 1);
    if (next_sample <= target) stop = std::min(stop, next_sample);
    uint64_t next_snap = UINT64_MAX;
    if (want_snaps && snap_i < snaps.size()) {
      next_snap = std::min(snap_updates(snaps[snap_i]), target);
      stop = std::min(stop, next_snap);
    }

    if (two_d) {
      while (st.updates < stop) {
        const int x = int(rng.next_below(uint32_t(Lx)));
        const int y = int(rng.next_below(uint32_t(Ly)));
        const bool changed = update_2d(st, colp, x, y, Lx, Ly, rng);
        st.updates++;
        if (changed && st.fixated()) {
          fix = true;
          break;
        }
      }
    } else {
      while (st.updates < stop) {
        const int x = int(rng.next_below(uint32_t(Lx)));
        const bool changed = update_1d(st, colp, x, Lx, rng);
        st.updates++;
        if (changed && st.fixated()) {
          fix = true;
          break;
        }
      }
    }
    if (fix) rec.fixation = {st.fixated_species(), st.time()};

    while (want_snaps && snap_i < snaps.size() && snap_updates(snaps[snap_i]) <= st.updates) {
      rec.snapshots.push_back(Snapshot{snaps[snap_i], st.dims, st.n, st.cell});
      snap_i++;
    }
    while (sample_updates(k + 1) <= st.updates) {
      ++k;
      take_sample(double(sample_updates(k)) / Nd, false);
    }
  }

  // Monochromatic states never change again: the remaining schedule is
  // filled with constant samples and snapshots.
  if (fix) {
    while (sample_updates(k + 1) <= target) {
      ++k;
      take_sample(double(sample_updates(k)) / Nd, true);
    }
    while (want_snaps && snap_i < snaps.size() && snap_updates(snaps[snap_i]) <= target) {
      rec.snapshots.push_back(Snapshot{snaps[snap_i], st.dims, st.n, st.cell});
      snap_i++;
    }
  }
  if (rec.times.empty() || rec.times.back() < double(target) / Nd)
    take_sample(double(target) / Nd, fix);

  rec.final_cell = st.cell;
  return rec;
}

RunRecord simulate_experiment(const InteractionMatrix& m, const std::vector<int>& dims,
                              const SimplexPoint& densities, const SimConfig& cfg) {
  LatticeState st = init_product_measure(dims, densities, derive_seed(cfg.seed, 1));
  SimConfig run_cfg = cfg;
  run_cfg.seed = derive_seed(cfg.seed, 2);
  RunRecord rec = run(st, m, run_cfg);
  rec.seed = cfg.seed;
  return rec;
}

void InterfaceRecord::write_csv(std::ostream& os) const {
  os << "t,displacement\n";
  for (size_t k = 0; k < times.size(); ++k) {
    put_double(os, times[k]);
    os << ',' << displacement[k] << "\n";
  }
}

InterfaceRecord run_1d_interface(double theta1, double theta2, int length, double t_end,
                                 uint64_t seed, double sample_interval) {
  if (!(theta1 >= 0 && theta1 <= 1 && theta2 >= 0 && theta2 <= 1))
    fail(Errc::ValidationError, "theta values must lie in [0,1]");
  if (length < 4 || length % 2 != 0) fail(Errc::ValidationError, "length must be even and >= 4");
  if (!(t_end > 0) || !(sample_interval > 0))
    fail(Errc::ValidationError, "t_end and sample_interval must be positive");

  const auto m = family_matrix(ThetaParams{ThetaFamily::TwoType, {theta1, theta2}});
  const auto col = m.column_major();
  const double* colp = col.data();

  std::vector<uint8_t> cells(size_t(length), 0);
  for (int x = length / 2; x < length; ++x) cells[size_t(x)] = 1;
  const int pos0 = length / 2 - 1;  // rightmost type-1 site
  int pos = pos0;

  InterfaceRecord rec;
  rec.theta1 = theta1;
  rec.theta2 = theta2;
  rec.length = length;

  Xoshiro256pp rng(seed);
  const uint64_t total = uint64_t(std::llround(t_end * length));
  uint64_t next_sample = 0;
  uint64_t sample_k = 0;

  for (uint64_t u = 0; u <= total; ++u) {
    if (u == next_sample) {
      rec.times.push_back(double(u) / length);
      rec.displacement.push_back(pos - pos0);
      ++sample_k;
      next_sample = uint64_t(std::llround(double(sample_k) * sample_interval * length));
    }
    if (u == total) break;

    const int site = int(rng.next_below(uint32_t(length)));
    if (site == 0 || site == length - 1) continue;  // frozen boundary columns

    const uint8_t j = cells[size_t(site)];
    const uint8_t sl = cells[size_t(site - 1)], sr = cells[size_t(site + 1)];
    if (sl == j && sr == j) continue;
    const double* wj = colp + size_t(j) * 2;
    const double wl = wj[sl], wr = wj[sr];
    const double total_w = wl + wr;
    if (total_w == 0) continue;
    const double x = rng.next_double() * total_w;
    const uint8_t silhouette = x < wl ? sl : sr;
    if (silhouette == j) continue;
    cells[size_t(site)] = silhouette;
    if (site == pos)
      --pos;
    else if (site == pos + 1)
      ++pos;
  }

  rec.final_cell = std::move(cells);
  return rec;
}

}  // namespace reslat::lattice
