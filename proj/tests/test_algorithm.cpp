#include <catch_amalgamated.hpp>

#include <set>

#include "fricke/algorithm.hpp"

using namespace fricke;

namespace {

const CatalogCase& case_by_id(const std::string& id)
{
    for (const auto& L : catalog())
        if (L.id == id)
            return L;
    throw std::logic_error("no case " + id);
}

} // namespace

TEST_CASE("catalog contents")
{
    const auto& cat = catalog();
    CHECK(cat.size() == 52);
    const CatalogCase& a = case_by_id("4.3(1)");
    CHECK(*a.x == 121);
    CHECK(*a.y == 126);
    const CatalogCase& b = case_by_id("5.8(5)");
    CHECK(*b.x == Catch::Approx(108.42));
    CHECK(*b.y == Catch::Approx(108.5));
    CHECK(b.params.k0 == 1000);
    CHECK(b.params.t == Catch::Approx(113.0 / 1000));
    std::set<std::string> ids;
    for (const auto& L : cat)
        CHECK(ids.insert(L.id).second);
}

TEST_CASE("published discriminants")
{
    CertReport r = certify_report(case_by_id("4.2(1)"));
    CHECK(r.terms.at(0).Y == Catch::Approx(0.38101).margin(1e-5));
    CHECK(r.ok);
    CertReport k8 = certify_report(case_by_id("5.2(4)k8"));
    CHECK(k8.terms.at(0).Y == Catch::Approx(0.00012586).margin(1e-8));
    CertReport k26 = certify_report(case_by_id("5.2(5)k26"));
    CHECK(k26.terms.at(0).Y == Catch::Approx(0.0032434).margin(1e-7));
}

TEST_CASE("discriminant formula against an independent evaluation")
{
    double u = 2.0 / 3, c = 2, a2 = 111, t = 1.0 / 6;
    int k0 = 12;
    double L = std::log(c), ck = std::pow(c, 2.0 / k0);
    double expect = u * pi - 2 * L - 2 * L * L * ck / k0 - 2 * a2 * t * t * pi * pi / c * ck / (k0 * k0);
    CHECK(discriminant_Y(u, c, a2, t, k0) == Catch::Approx(expect).epsilon(1e-14));
}

TEST_CASE("certification outcome over the catalog")
{
    std::set<std::string> failing;
    for (const auto& L : catalog()) {
        CertReport r = certify_report(L);
        if (!r.ok) {
            failing.insert(L.id);
            CHECK_THROWS_AS(certify(L), CertificateMismatch);
        } else {
            CHECK_NOTHROW(certify(L));
        }
    }
    // Cases whose printed data do not reproduce; each is analysed in the notes.
    const std::set<std::string> known{"4.3(3)", "4.3(9)", "4.3(10)", "4.4(3)", "5.3(2)", "5.3(3)"};
    CHECK(failing == known);
}

TEST_CASE("the a1 constraint is tight")
{
    for (const auto& L : catalog()) {
        if (L.kx > 0)
            continue;
        AlgoDerived d = derive_unchecked(L.params, L.a1);
        double edge = d.a1_min;
        INFO(L.id);
        CHECK_FALSE(derive_unchecked(L.params, edge * (1 - 1e-9)).ok16);
        CHECK(derive_unchecked(L.params, edge * (1 + 1e-9)).ok16);
    }
}

TEST_CASE("derive rejects a violated constraint")
{
    const CatalogCase& L = case_by_id("4.2(1)");
    AlgoDerived d = derive_unchecked(L.params, L.a1);
    std::vector<double> a2;
    for (const auto& T : L.params.terms)
        a2.push_back(T.a2);
    CHECK_NOTHROW(derive(L.params, L.a1, a2));
    CHECK_THROWS_AS(derive(L.params, d.a1_min / 2, a2), ConstraintViolation);
}

TEST_CASE("sufficiency chain: certified bounds hold numerically")
{
    for (const auto& L : catalog()) {
        if (L.family != "direct" || !L.c0_prime)
            continue;
        CertReport r = certify_report(L);
        bool all_positive = true;
        for (const auto& T : r.terms)
            all_positive = all_positive && T.Y > 0;
        if (!all_positive)
            continue;
        const double limit = 2 * std::cos(*L.c0_prime * pi);
        const double t = L.params.t;
        std::vector<int> ks = L.kx > 0 ? std::vector<int>{L.kx}
                                       : std::vector<int>{L.params.k0, L.params.k0 + 2, L.params.k0 + 50};
        for (int k : ks) {
            const double a = alpha_of(L.p);
            double lo, hi;
            if (L.arc == Arc::One) {
                lo = pi / 2;
                hi = pi / 2 + a - t * pi / k;
            } else {
                lo = (L.p == 5 ? a : a - pi / 6) + t * pi / k;
                hi = pi / 2;
            }
            double worst = 0;
            for (int i = 0; i < 50; ++i) {
                double th = lo + (hi - lo) * i / 49.0;
                double R = F_arc(Level(L.p), L.arc, th, Weight(k)).value - 2 * std::cos(k * th / 2);
                worst = std::max(worst, std::abs(R));
            }
            INFO(L.id << " k=" << k << " max|R|=" << worst << " limit=" << limit);
            CHECK(worst < limit);
        }
    }
}

TEST_CASE("remaining-case windows")
{
    CHECK_FALSE(remaining_window(Level(5), Weight(8)).has_value());
    CHECK_FALSE(remaining_window(Level(7), Weight(12)).has_value());
    auto w = remaining_window(Level(5), Weight(10));
    REQUIRE(w);
    CHECK(w->lo == Catch::Approx(116 * pi / 180));
    CHECK(w->hi == Catch::Approx(117 * pi / 180));
    CHECK(in_remaining_window(Level(5), Weight(330)));
    CHECK_THROWS_AS(remaining_case_probe(Level(5), Weight(10), 1e-3), DomainError);
}

TEST_CASE("probe envelopes vanish at t = 0 and have the stated slope for p = 5")
{
    for (int k : {330, 1238, 4138}) {
        ProbeRecord r = remaining_case_probe(Level(5), Weight(k), 1e-9);
        CHECK(std::abs(r.A1) < 1e-7);
        CHECK(std::abs(r.B1) < 1e-7);
        CHECK(std::abs(r.A2) < 1e-7);
        CHECK(std::abs(r.B2) < 1e-7);
        double h = 1e-6;
        ProbeRecord q = remaining_case_probe(Level(5), Weight(k), h);
        double slope = pi * (std::tan(r.alpha_pk) + 2);
        INFO("k=" << k);
        CHECK(q.A1_prime / h == Catch::Approx(slope).margin(1e-3));
        CHECK(q.B1_prime / h == Catch::Approx(slope).margin(1e-3));
    }
}

TEST_CASE("probe attribution for p = 5 follows the threshold")
{
    for (int k : {330, 1238, 2810, 4138}) {
        ProbeRecord r = remaining_case_probe(Level(5), Weight(k), 1e-3);
        INFO("k=" << k);
        CHECK(r.predicted_arc == r.threshold_arc);
    }
}
