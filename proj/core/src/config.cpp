#include "weil_atlas/config.hpp"

#include <cstdlib>
#include <thread>

#include "weil_atlas/errors.hpp"

namespace weil_atlas {

void RunConfig::validate() const
{
    if (precision_bits < 64)
        throw InputError("precision must be at least 64 bits");
    if (!(lll_bound_multiplier > 0))
        throw InputError("LLL bound multiplier must be positive");
    if (exp_cap == 0)
        throw InputError("exponent cap must be positive");
    if (hmax == 0)
        throw InputError("hmax must be positive");
    if (pointcount_cap == 0)
        throw InputError("point-count cap must be positive");
    if (workers == 0)
        throw InputError("worker count must be positive");
}

unsigned workers_from_env()
{
    const char *env = std::getenv("WEIL_ATLAS_WORKERS");
    if (env == nullptr || *env == '\0') {
        unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : hw;
    }
    char *end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (*end != '\0' || v == 0 || v > 1024)
        throw InputError(std::string("WEIL_ATLAS_WORKERS must be an integer in [1, 1024], got '") + env + "'");
    return static_cast<unsigned>(v);
}

} // namespace weil_atlas
