#include "evdep/report.hpp"

#include <cmath>

namespace evdep {

double corrected_p_value(double observed, const double* replicates, std::size_t count) {
  std::size_t exceed = 0;
  for (std::size_t b = 0; b < count; ++b) exceed += replicates[b] >= observed;
  return static_cast<double>(1 + exceed) / static_cast<double>(count + 1);
}

double two_sided_normal_p(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

}  // namespace evdep
