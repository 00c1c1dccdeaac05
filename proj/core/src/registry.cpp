#include "evdep/registry.hpp"

#include "evdep/kendall_tests.hpp"
#include "evdep/maxstab.hpp"
#include "evdep/pickands.hpp"

#include <algorithm>
#include <stdexcept>

namespace evdep {

const std::vector<std::string>& known_tests() {
  static const std::vector<std::string> ids{"s2n", "s3n", "maxstab", "pickands_a", "aplot_resid"};
  return ids;
}

bool is_known_test(const std::string& id) {
  const auto& ids = known_tests();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

TestReport run_named_test(const std::string& id, const PseudoObs& pobs, const TestOptions& opts) {
  MultiplierConfig mult;
  mult.replicates = opts.replicates;
  mult.law = opts.law;
  mult.seed = opts.seed;
  if (id == "s2n") return test_s2n(pobs.values());
  if (id == "s3n") return test_s3n(pobs.values());
  if (id == "maxstab") {
    MaxStabConfig cfg;
    cfg.r_values = opts.r_values;
    cfg.multiplier = mult;
    cfg.tail_threshold = opts.threshold;
    return test_maxstab(pobs, cfg);
  }
  if (id == "pickands_a") return test_pickands_a(pobs, mult);
  if (id == "aplot_resid") {
    AplotTestConfig cfg;
    cfg.replicates = opts.replicates;
    cfg.seed = opts.seed;
    cfg.threshold = opts.threshold;
    cfg.interior_knots = opts.interior_knots;
    return test_aplot_residual(pobs, cfg);
  }
  throw std::invalid_argument("unknown test '" + id + "'");
}

}  // namespace evdep
