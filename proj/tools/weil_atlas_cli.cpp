#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "weil_atlas/arith.hpp"
#include "weil_atlas/certificate.hpp"
#include "weil_atlas/config.hpp"
#include "weil_atlas/errors.hpp"
#include "weil_atlas/invariants.hpp"
#include "weil_atlas/oracle.hpp"
#include "weil_atlas/weil.hpp"

namespace wa = weil_atlas;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInput = 2;

struct Options {
    std::uint64_t r = 0;
    std::uint64_t p = 0;
    std::uint64_t min = 2;
    std::uint64_t max = 0;
    std::string from_file;
    wa::RunConfig config;
};

void write_output(const std::string &text, const std::string &path)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw wa::InputError("cannot open output file " + path);
    out << text;
    if (!out)
        throw wa::InputError("failed writing " + path);
}

void require_odd_prime(std::uint64_t r)
{
    if (r < 3 || !wa::is_prime(r))
        throw wa::InputError("--r must be an odd prime");
}

int cmd_split(const Options &o)
{
    require_odd_prime(o.r);
    if (o.max < 2)
        throw wa::InputError("--max must be at least 2");
    std::uint64_t n = 0;
    std::uint64_t r = o.r - 1;
    while (r % 2 == 0) {
        r /= 2;
        ++n;
    }
    std::ostringstream out;
    std::uint64_t primes = 0;
    std::uint64_t split = 0;
    bool first = true;
    for (std::uint64_t p = std::max<std::uint64_t>(o.min, 2); p <= o.max; ++p) {
        if (p == o.r || !wa::is_prime(p))
            continue;
        ++primes;
        if (wa::splits_completely(o.r, p)) {
            ++split;
            out << (first ? "" : ", ") << p;
            first = false;
        }
    }
    out << "\n";
    const double density = primes ? static_cast<double>(split) / static_cast<double>(primes) : 0.0;
    out << "density: " << split << "/" << primes << " = " << density << " (expected 1/" << (std::uint64_t(1) << n)
        << ")\n";
    write_output(out.str(), o.config.output_path);
    return kExitOk;
}

int cmd_classes(const Options &o)
{
    require_odd_prime(o.r);
    wa::Classification cl = wa::classify_all(o.r, o.p, o.config);
    write_output(wa::to_certificate(cl).dump(2) + "\n", o.config.output_path);
    return kExitOk;
}

void print_report(const wa::CheckReport &rep, std::ostream &out)
{
    for (const auto &[name, count] : rep.counts())
        out << "  " << name << ": " << count << "\n";
    out << rep.passed() << "/" << rep.total() << " checks passed\n";
    for (const auto &f : rep.failures())
        out << "FAILED " << f << "\n";
}

int cmd_verify(const Options &o)
{
    wa::CheckReport rep;
    if (!o.from_file.empty()) {
        std::ifstream in(o.from_file);
        if (!in)
            throw wa::InputError("cannot open " + o.from_file);
        wa::Json doc;
        try {
            doc = wa::Json::parse(in);
        } catch (const wa::Json::exception &e) {
            throw wa::InputError(std::string("malformed JSON: ") + e.what());
        }
        rep = wa::verify_certificate(doc, o.config);
    } else {
        require_odd_prime(o.r);
        wa::Classification cl = wa::classify_all(o.r, o.p, o.config);
        rep = wa::run_invariant_suite(cl, o.config);
    }
    std::ostringstream out;
    print_report(rep, out);
    write_output(out.str(), o.config.output_path);
    return rep.ok() ? kExitOk : kExitVerifyFailed;
}

int cmd_oracle(const Options &o)
{
    require_odd_prime(o.r);
    if (wa::build_field(o.r)->m() != 1)
        throw wa::InputError("oracle needs a Fermat prime r; " + std::to_string(o.r) + " - 1 is not a power of 2");
    wa::Classification cl = wa::classify_all(o.r, o.p, o.config);
    wa::OracleReport rep = wa::oracle_match(cl, o.config);
    std::ostringstream out;
    out << "curve: y^2 = x^" << o.r << " - 1 over F_" << o.p << "\n";
    for (const auto &pc : rep.counts)
        out << "#C(F_" << o.p << "^" << pc.k << ") = " << pc.count << "\n";
    out << "sign: " << (rep.eigenvalues.empty() ? 1 : rep.eigenvalues.front().sign) << "\n";
    for (const auto &e : rep.eigenvalues)
        out << "alpha_" << e.j << " = " << e.value.str() << "  orbit " << *e.matched_orbit << "\n";
    out << "matched orbit: " << rep.matched_orbit << "\n";
    write_output(out.str(), o.config.output_path);
    return kExitOk;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Isogeny classes of ordinary abelian varieties with CM by K^(r) over F_p"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App *sub, bool needs_p) {
        sub->add_option("--r", o.r, "odd prime r")->required();
        if (needs_p)
            sub->add_option("--p", o.p, "prime p splitting completely in K^(r)")->required();
        sub->add_option("--out", o.config.output_path, "write output to this file instead of stdout");
    };
    auto add_config = [&](CLI::App *sub) {
        sub->add_option("--precision", o.config.precision_bits, "interval precision in bits")->capture_default_str();
        sub->add_option("--exp-cap", o.config.exp_cap, "cap on the per-orbit class exponent search")
            ->capture_default_str();
        sub->add_option("--hmax", o.config.hmax, "powers checked for full-field generation")->capture_default_str();
        sub->add_option("--lll-multiplier", o.config.lll_bound_multiplier, "generator search bound multiplier")
            ->capture_default_str();
    };

    CLI::App *split = app.add_subcommand("split", "list primes splitting completely in K^(r)");
    add_common(split, false);
    split->add_option("--min", o.min, "smallest prime listed")->capture_default_str();
    split->add_option("--max", o.max, "largest prime listed")->required();

    CLI::App *classes = app.add_subcommand("classes", "emit the JSON certificate of all isogeny classes");
    add_common(classes, true);
    add_config(classes);

    CLI::App *verify = app.add_subcommand("verify", "run every invariant check, or re-check a certificate");
    verify->add_option("--r", o.r, "odd prime r");
    verify->add_option("--p", o.p, "prime p");
    verify->add_option("--from-file", o.from_file, "certificate produced by `classes`");
    verify->add_option("--out", o.config.output_path, "write the report to this file");
    add_config(verify);

    CLI::App *oracle = app.add_subcommand("oracle", "match y^2 = x^r - 1 against the classes (Fermat r)");
    add_common(oracle, true);
    add_config(oracle);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        o.config.workers = wa::workers_from_env();
        o.config.validate();
        if (*split)
            return cmd_split(o);
        if (*classes)
            return cmd_classes(o);
        if (*verify) {
            if (o.from_file.empty() && (o.r == 0 || o.p == 0))
                throw wa::InputError("verify needs --r and --p, or --from-file");
            return cmd_verify(o);
        }
        return cmd_oracle(o);
    } catch (const wa::InputError &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const wa::Error &e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return kExitVerifyFailed;
    }
}
