#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "weil_atlas/config.hpp"
#include "weil_atlas/weil.hpp"

namespace weil_atlas {

using Json = nlohmann::ordered_json;

// Keys r, p, n, m, q, class_count, records; coordinates as exact decimal
// strings over the period basis, charpoly ascending.
Json to_certificate(const Classification &classes);

// Named pass/fail tally of exact checks.
class CheckReport {
  public:
    void check(const std::string &name, bool ok, const std::string &detail = {});
    // Runs fn, recording any thrown Error as a failure of `name`.
    template <class Fn> void guarded(const std::string &name, Fn &&fn);

    std::size_t passed() const { return passed_; }
    std::size_t total() const { return passed_ + failures_.size(); }
    const std::vector<std::string> &failures() const { return failures_; }
    const std::map<std::string, std::size_t> &counts() const { return counts_; }
    bool ok() const { return failures_.empty(); }
    void merge(const CheckReport &o);

  private:
    std::size_t passed_ = 0;
    std::vector<std::string> failures_;
    std::map<std::string, std::size_t> counts_;
};

// Re-derives every record check from the serialized coordinates alone.
// Malformed documents raise InputError.
CheckReport verify_certificate(const Json &doc, const RunConfig &config);

} // namespace weil_atlas

#include "weil_atlas/errors.hpp"

template <class Fn> void weil_atlas::CheckReport::guarded(const std::string &name, Fn &&fn)
{
    try {
        fn();
    } catch (const InputError &) {
        throw;
    } catch (const Error &e) {
        check(name, false, e.what());
    }
}
