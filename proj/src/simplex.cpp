#include "reslat/simplex.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace reslat {

SimplexPoint::SimplexPoint(std::vector<double> u) : u_(std::move(u)) {
  if (u_.empty()) fail(Errc::ValidationError, "simplex point must be nonempty");
  double sum = 0;
  for (double v : u_) {
    if (!(v >= -kSimplexTol && v <= 1 + kSimplexTol)) {
      std::ostringstream os;
      os << "coordinate " << v << " outside [0,1]";
      fail(Errc::ValidationError, os.str());
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSimplexTol) {
    std::ostringstream os;
    os << "coordinates sum to " << sum << ", not 1";
    fail(Errc::ValidationError, os.str());
  }
}

SimplexPoint random_simplex(int n, Xoshiro256pp& rng) {
  std::vector<double> u(size_t(n));
  double sum = 0;
  for (auto& v : u) {
    v = -std::log(1.0 - rng.next_double());
    sum += v;
  }
  for (auto& v : u) v /= sum;
  return SimplexPoint(std::move(u));
}

SimplexPoint random_interior(int n, Xoshiro256pp& rng, double floor) {
  for (;;) {
    SimplexPoint p = random_simplex(n, rng);
    bool ok = true;
    for (int i = 0; i < n; ++i) ok = ok && p[i] >= floor;
    if (ok) return p;
  }
}

}  // namespace reslat
