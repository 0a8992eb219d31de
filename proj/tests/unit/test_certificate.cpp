#include <gtest/gtest.h>

#include "weil_atlas/certificate.hpp"
#include "weil_atlas/config.hpp"
#include "weil_atlas/errors.hpp"
#include "weil_atlas/invariants.hpp"
#include "weil_atlas/weil.hpp"

using namespace weil_atlas;

namespace {

const Json &eisenstein_doc()
{
    static const Json doc = to_certificate(classify_all(3, 7, RunConfig{}));
    return doc;
}

bool failed_check(const CheckReport &rep, const std::string &name)
{
    for (const auto &f : rep.failures())
        if (f.rfind(name, 0) == 0)
            return true;
    return false;
}

} // namespace

TEST(Certificate, LayoutOfEisensteinExample)
{
    const Json &doc = eisenstein_doc();
    std::vector<std::string> keys;
    for (auto it = doc.begin(); it != doc.end(); ++it)
        keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"r", "p", "n", "m", "q", "class_count", "records"}));
    EXPECT_EQ(doc["class_count"], 1);
    EXPECT_EQ(doc["q"], 7);
    const Json &rec = doc["records"][0];
    EXPECT_EQ(rec["charpoly"], Json::parse("[7, -5, 1]"));
    EXPECT_EQ(rec["dim"], 1);
    EXPECT_EQ(rec["fod_exponent"], 1);
    for (const char *k : {"z_coords", "u_coords", "u0_coords", "pi_coords", "pi0_coords"})
        for (const auto &c : rec[k])
            EXPECT_TRUE(c.is_string()) << k;
}

TEST(Certificate, RoundTripVerifies)
{
    RunConfig cfg;
    for (auto [r, p] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{3, 7}, {5, 11}, {7, 11}, {13, 3}}) {
        Json doc = to_certificate(classify_all(r, p, cfg));
        Json back = Json::parse(doc.dump(2));
        EXPECT_EQ(back.dump(), doc.dump());
        CheckReport rep = verify_certificate(back, cfg);
        EXPECT_TRUE(rep.ok()) << (rep.failures().empty() ? "" : rep.failures().front());
        EXPECT_GT(rep.passed(), 10u);
    }
}

TEST(Certificate, TamperingIsDetected)
{
    RunConfig cfg;
    Json charpoly = eisenstein_doc();
    charpoly["records"][0]["charpoly"][1] = 5;
    EXPECT_TRUE(failed_check(verify_certificate(charpoly, cfg), "charpoly"));

    Json pi = eisenstein_doc();
    pi["records"][0]["pi_coords"][0] = "4";
    CheckReport rep = verify_certificate(pi, cfg);
    EXPECT_FALSE(rep.ok());
    EXPECT_TRUE(failed_check(rep, "pi-formula"));

    Json count = eisenstein_doc();
    count["class_count"] = 2;
    EXPECT_FALSE(verify_certificate(count, cfg).ok());

    Json dim = eisenstein_doc();
    dim["records"][0]["dim"] = 2;
    EXPECT_TRUE(failed_check(verify_certificate(dim, cfg), "dim"));
}

TEST(Certificate, MalformedDocumentsAreInputErrors)
{
    RunConfig cfg;
    EXPECT_THROW(verify_certificate(Json::array(), cfg), InputError);
    Json missing = eisenstein_doc();
    missing.erase("records");
    EXPECT_THROW(verify_certificate(missing, cfg), InputError);
    Json bad_r = eisenstein_doc();
    bad_r["r"] = 9;
    EXPECT_THROW(verify_certificate(bad_r, cfg), InputError);
    Json short_coords = eisenstein_doc();
    short_coords["records"][0]["z_coords"] = Json::parse(R"(["1"])");
    EXPECT_THROW(verify_certificate(short_coords, cfg), InputError);
    Json bad_number = eisenstein_doc();
    bad_number["records"][0]["u_coords"][0] = "1/0";
    EXPECT_THROW(verify_certificate(bad_number, cfg), InputError);
    Json half_null = eisenstein_doc();
    half_null["records"][0]["u0_coords"] = nullptr;
    EXPECT_THROW(verify_certificate(half_null, cfg), InputError);
}

TEST(Certificate, InvariantSuitePasses)
{
    RunConfig cfg;
    for (auto [r, p] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{3, 7}, {5, 31}, {13, 3}}) {
        CheckReport rep = run_invariant_suite(classify_all(r, p, cfg), cfg);
        EXPECT_TRUE(rep.ok()) << (rep.failures().empty() ? "" : rep.failures().front());
        EXPECT_GT(rep.counts().at("kronecker"), 0u);
    }
    EXPECT_TRUE(nonsplit_sanity(3, 5).ok());
    EXPECT_TRUE(nonsplit_sanity(7, 3).ok());
    EXPECT_THROW(nonsplit_sanity(3, 7), InputError);
}

TEST(Certificate, ConfigValidation)
{
    RunConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.hmax = 0;
    EXPECT_THROW(cfg.validate(), InputError);
    RunConfig low;
    low.precision_bits = 32;
    EXPECT_THROW(low.validate(), InputError);
}
