#pragma once

#include <cstdint>
#include <string>

namespace weil_atlas {

struct RunConfig {
    unsigned precision_bits = 128;
    double lll_bound_multiplier = 4.0;
    unsigned exp_cap = 99;
    unsigned hmax = 6;
    std::uint64_t pointcount_cap = 2'000'000;
    std::string output_path;
    // Upper bound on concurrent orbit workers; never affects results.
    unsigned workers = 1;

    // Throws InputError if any numeric field is not positive.
    void validate() const;
};

// Worker count from WEIL_ATLAS_WORKERS, else the hardware concurrency.
// Throws InputError on a malformed value.
unsigned workers_from_env();

} // namespace weil_atlas
