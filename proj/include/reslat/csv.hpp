#ifndef RESLAT_CSV_HPP
#define RESLAT_CSV_HPP

#include <charconv>
#include <ostream>
#include <string>

namespace reslat {

// Shortest round-trip representation; keeps CSV artifacts byte-stable.
inline std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline void put_double(std::ostream& os, double v) { os << format_double(v); }

}  // namespace reslat

#endif
