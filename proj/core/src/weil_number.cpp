#include "weil_atlas/weil_number.hpp"

#include "weil_atlas/errors.hpp"

namespace weil_atlas {

Int WeilNumber::q() const
{
    return int_pow(Int(static_cast<unsigned long>(p)), j);
}

bool is_weil(const KElem &x, std::uint64_t p, unsigned j)
{
    if (!x.is_integral() || j == 0)
        return false;
    KElem prod = x * x.conj();
    return prod.is_rational() && prod.to_rational() == Rat(int_pow(Int(static_cast<unsigned long>(p)), j));
}

WeilNumber make_weil(const KElem &value, std::uint64_t p, unsigned j)
{
    if (!is_weil(value, p, j))
        throw InputError(value.str() + " is not a Weil " + std::to_string(p) + "^" + std::to_string(j) + "-number");
    return WeilNumber{value, p, j, {}, min_poly(value)};
}

WeilNumber make_weil(const KElem &value, const SplitFiber &fiber, unsigned j)
{
    WeilNumber w = make_weil(value, fiber.p(), j);
    w.slopes.reserve(fiber.size());
    for (std::size_t i = 0; i < fiber.size(); ++i)
        w.slopes.emplace_back(fiber.ord(value, i), j);
    for (auto &s : w.slopes)
        s.canonicalize();
    return w;
}

} // namespace weil_atlas
