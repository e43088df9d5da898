#ifndef RESLAT_SIMPLEX_HPP
#define RESLAT_SIMPLEX_HPP

#include <vector>

#include "reslat/error.hpp"
#include "reslat/rng.hpp"

namespace reslat {

// Species-density vector on the unit simplex: coordinates in [0,1] summing to
// 1 within kSimplexTol.
class SimplexPoint {
 public:
  SimplexPoint() = default;
  explicit SimplexPoint(std::vector<double> u);

  int size() const { return int(u_.size()); }
  double operator[](int i) const { return u_[size_t(i)]; }
  const std::vector<double>& coords() const { return u_; }

 private:
  std::vector<double> u_;
};

// Uniform point on the n-simplex (normalized exponentials).
SimplexPoint random_simplex(int n, Xoshiro256pp& rng);

// Uniform point conditioned on min coordinate >= floor.
SimplexPoint random_interior(int n, Xoshiro256pp& rng, double floor);

}  // namespace reslat

#endif
