#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fricke/report.hpp"
#include "fricke/suites.hpp"
#include "fricke/zeros.hpp"

namespace {

enum Exit { Ok = 0, VerifyFailed = 1, Usage = 2, Inconclusive = 3 };

void emit(const fricke::OutputRecord& r, const std::string& format)
{
    if (format == "json")
        std::cout << fricke::to_json(r).dump(2) << '\n';
    else if (format == "csv")
        fricke::write_csv(std::cout, r);
    else
        fricke::write_table(std::cout, r);
}

int cmd_zeros(int p, int k, double tol, int max_k, const std::string& format, const std::string& svg)
{
    fricke::ScanOptions opt;
    opt.tol = tol;
    opt.max_k = max_k;
    fricke::ScanReport s = fricke::scan_and_locate(fricke::Level(p), fricke::Weight(k), opt);
    emit(fricke::zeros_record(s, tol), format);
    if (!svg.empty()) {
        std::ofstream f(svg, std::ios::binary);
        if (!f)
            throw fricke::DomainError("cannot write " + svg);
        f << fricke::render_svg(s);
    }
    for (const auto& e : s.endpoints)
        if (!e.ok)
            std::cerr << "endpoint " << e.point << ": |F| = " << e.value << " disagrees with forced order "
                      << e.forced_order << '\n';
    for (const auto& i : s.inconclusive)
        std::cerr << "inconclusive sample: arc " << static_cast<int>(i.arc) << " theta " << fricke::fixed(i.theta, 15)
                  << " |F| " << std::abs(i.value) << " below error budget " << i.budget << '\n';
    return s.inconclusive.empty() ? Ok : Inconclusive;
}

int cmd_verify(const std::string& suite)
{
    if (!fricke::is_suite_name(suite))
        throw CLI::ValidationError("--suite", "must be one of bounds, lemmas, envelopes, all");
    bool all = true;
    for (const auto& c : fricke::run_suite(suite)) {
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.id << ' ' << fricke::sci(c.computed, 8) << ' '
                  << fricke::sci(c.published, 8) << ' ' << fricke::sci(c.margin, 3);
        if (!c.note.empty())
            std::cout << "  # " << c.note;
        std::cout << '\n';
        all = all && c.pass;
    }
    return all ? Ok : VerifyFailed;
}

int cmd_sweep(int p, int k_min, int k_max, double tol, int max_k, const std::string& format)
{
    if (k_min < 4 || k_max > max_k)
        throw CLI::ValidationError("range", "k must lie in [4, " + std::to_string(max_k) + "]");
    std::vector<int> ks;
    for (int k = k_min + (k_min % 2); k <= k_max; k += 2)
        ks.push_back(k);
    fricke::ScanOptions opt;
    opt.tol = tol;
    opt.max_k = max_k;
    auto rows = fricke::conjecture_sweep(fricke::Level(p), ks, opt);
    emit(fricke::sweep_record(p, k_min, k_max, rows), format);
    for (const auto& r : rows)
        if (r.inconclusive)
            return Inconclusive;
    return Ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Zeros of Eisenstein series for the Fricke groups of level 5 and 7"};
    app.require_subcommand(1);

    int p = 5, k = 4, k_min = 4, k_max = 100, max_k = 200;
    double tol = fricke::default_tol;
    std::string format = "table", svg, suite;
    const std::vector<std::string> formats{"table", "csv", "json"};

    auto* zeros = app.add_subcommand("zeros", "locate the zeros on both arcs for one weight");
    zeros->add_option("--p", p, "level (5 or 7)")->required();
    zeros->add_option("--k", k, "even weight >= 4")->required();
    zeros->add_option("--tol", tol, "series truncation tolerance");
    zeros->add_option("--max-k", max_k, "largest accepted weight");
    zeros->add_option("--format", format)->check(CLI::IsMember(formats));
    zeros->add_option("--svg", svg, "write a plot of the arcs and zeros");

    auto* verify = app.add_subcommand("verify", "check published constants and certificates");
    verify->add_option("--suite", suite, "bounds, lemmas, envelopes or all")->required();

    auto* sweep = app.add_subcommand("sweep", "count arc zeros over a range of weights");
    sweep->add_option("--p", p, "level (5 or 7)")->required();
    sweep->add_option("--k-min", k_min);
    sweep->add_option("--k-max", k_max);
    sweep->add_option("--tol", tol);
    sweep->add_option("--max-k", max_k);
    sweep->add_option("--format", format)->check(CLI::IsMember(formats));

    try {
        app.parse(argc, argv);
        if (zeros->parsed())
            return cmd_zeros(p, k, tol, max_k, format, svg);
        if (verify->parsed())
            return cmd_verify(suite);
        return cmd_sweep(p, k_min, k_max, tol, max_k, format);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return Usage;
    } catch (const fricke::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Usage;
    } catch (const fricke::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return VerifyFailed;
    }
}
