#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pskchan {

struct SelftestCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SelftestReport {
    std::vector<SelftestCheck> checks;

    bool all_pass() const;
    const SelftestCheck* first_failure() const;
};

/// Cross-checks the dual numerical routes: quadrature vs closed-form sigma,
/// Monte-Carlo vs analytic dephasing, POVM completeness, measurement
/// covariance, and the amplifier gain series.
SelftestReport run_selftest(std::uint64_t rng_seed = 20240901,
                            std::int64_t mc_samples = 1000000);

}  // namespace pskchan
