#include <catch_amalgamated.hpp>

#include <random>

#include "fricke/eisenstein.hpp"
#include "oracle.hpp"

using namespace fricke;
using fricke::testing::mp;
using fricke::testing::q_expansion_oracle;

TEST_CASE("oracle constants: Bernoulli normalisation")
{
    CHECK(std::abs(q_expansion_oracle({0, 50}, 4) - 1.0) < 1e-15);
    // coefficient of q in E_4 is 240
    double y = 2.0;
    cplx e = q_expansion_oracle({0, y}, 4, 1);
    CHECK(std::abs((e.real() - 1) / std::exp(-2 * pi * y) - 240) < 1e-9);
}

TEST_CASE("E_k agrees with the q-expansion oracle at interior points")
{
    for (int k : {4, 6, 12}) {
        for (cplx z : fricke::testing::interior_points()) {
            cplx oracle = q_expansion_oracle(z, k);
            TruncatedValue v = eisenstein_Ek(z, Weight(k));
            INFO("k=" << k << " z=" << z.real() << "+" << z.imag() << "i");
            CHECK(std::abs(v.value - oracle) <= 1e-10 * std::max(1.0, std::abs(oracle)));
        }
    }
}

TEST_CASE("direct lattice sum agrees with the oracle for k = 12")
{
    for (cplx z : {cplx(0.1, 0.9), cplx(-0.3, 1.1), cplx(0.45, 0.95)}) {
        TruncatedValue v = eisenstein_Ek_shells(z, Weight(12));
        CHECK(v.tail_bound <= default_tol);
        CHECK(std::abs(v.value - q_expansion_oracle(z, 12)) <= 1e-10);
    }
}

TEST_CASE("Fricke involution and translation")
{
    for (int p : {5, 7})
        for (int k : {4, 6, 8, 12, 18}) {
            for (cplx z : {cplx(0.13, 0.52), cplx(-0.31, 0.61), cplx(0.4, 0.9)}) {
                cplx e = eisenstein_star(z, Weight(k), Level(p)).value;
                cplx w = -1.0 / (double(p) * z);
                cplx ew = eisenstein_star(w, Weight(k), Level(p)).value;
                cplx factor = std::pow(std::sqrt(double(p)) * z, k);
                INFO("p=" << p << " k=" << k);
                CHECK(std::abs(ew - factor * e) <= 1e-9 * std::max(1.0, std::abs(ew)));
                cplx e1 = eisenstein_star(z + 1.0, Weight(k), Level(p)).value;
                CHECK(std::abs(e1 - e) <= 1e-9 * std::max(1.0, std::abs(e)));
            }
        }
}

TEST_CASE("coset form matches the two-term form for k >= 12")
{
    for (int p : {5, 7})
        for (int k : {12, 16, 24}) {
            cplx z(0.1, 0.6);
            cplx a = eisenstein_star(z, Weight(k), Level(p)).value;
            cplx b = eisenstein_star_coset(z, Weight(k), Level(p), 1e-12).value;
            CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)));
        }
}

TEST_CASE("coset form reports non-convergence at weight 4")
{
    CHECK_THROWS_AS(eisenstein_star_coset({0.1, 0.6}, Weight(4), Level(5), 1e-6), NonConvergence);
}

TEST_CASE("arc values are real within the error budget")
{
    std::mt19937 rng(20261016);
    long checked = 0;
    for (int i = 0; i < 1000; ++i) {
        int p = (rng() % 2) ? 5 : 7;
        Arc arc = (rng() % 2) ? Arc::One : Arc::Two;
        int k = 4 + 2 * static_cast<int>(rng() % 19);
        ArcRange r = arc_range(Level(p), arc);
        double th = std::uniform_real_distribution<double>(r.lo, r.hi)(rng);
        RealValue v = F_arc(Level(p), arc, th, Weight(k));
        INFO("p=" << p << " arc=" << int(arc) << " k=" << k << " theta=" << th);
        CHECK(std::abs(v.imag) <= std::max(v.error, default_tol));
        ++checked;
    }
    CHECK(checked == 1000);
}

TEST_CASE("F equals 2cos(k theta/2) plus a small remainder at large weight")
{
    // Far from the junction the remainder decays geometrically.
    for (int p : {5, 7}) {
        double th = pi / 2 + 0.3 * alpha_of(p);
        RealValue v = F_arc(Level(p), Arc::One, th, Weight(200));
        CHECK(std::abs(v.value - 2 * std::cos(100 * th)) < 1e-3);
    }
}

TEST_CASE("lattice tail is monotone and shells reach the tolerance")
{
    double lam = 0.5;
    for (int k : {4, 8, 12})
        for (double M = 10; M < 1e5; M *= 3)
            CHECK(lattice_tail(k, lam, 3 * M) < lattice_tail(k, lam, M));
    TruncatedValue v = eisenstein_Ek_shells({0, 1}, Weight(16));
    CHECK(v.tail_bound <= default_tol);
}

TEST_CASE("glued function is continuous across the junction")
{
    for (int p : {5, 7})
        for (int k : {8, 12, 16, 24, 36}) {
            ArcRange g = glued_range(Level(p));
            double j = pi / 2 + alpha_of(p);
            double d = 1e-7;
            GluedValue a = F_glued(Level(p), Weight(k), j - d);
            GluedValue b = F_glued(Level(p), Weight(k), j + d);
            INFO("p=" << p << " k=" << k);
            CHECK(a.branch == Arc::One);
            CHECK(b.branch == Arc::Two);
            CHECK(std::abs(a.value - b.value) < 1e-4);
            CHECK(g.lo == Catch::Approx(pi / 2));
        }
}

TEST_CASE("input validation")
{
    CHECK_THROWS_WITH(Weight(3), "k must be even and ≥ 4");
    CHECK_THROWS_AS(Weight(2), DomainError);
    CHECK_THROWS_AS(Level(6), DomainError);
    CHECK_THROWS_AS(ArcCoordinate(Level(5), Arc::One, 0.1), DomainError);
    CHECK_THROWS_AS(eisenstein_Ek({0.1, -1}, Weight(4)), DomainError);
}

TEST_CASE("alpha_{p,k} matches a 50-digit reduction")
{
    const mp pi50 = boost::math::constants::pi<mp>();
    for (int p : {5, 7}) {
        mp ap = p == 5 ? boost::multiprecision::atan(mp(2)) : boost::multiprecision::atan(mp(5) / boost::multiprecision::sqrt(mp(3)));
        for (int k : {4, 6, 10, 62, 330, 1238, 2078, 4228, 16720}) {
            mp x = mp(k) * pi50 / 4 + mp(k) * ap / 2;
            mp r = x - pi50 * boost::multiprecision::floor(x / pi50);
            INFO("p=" << p << " k=" << k);
            CHECK(std::abs(angle_constants(Level(p), Weight(k)).alpha_pk - r.convert_to<double>()) < 1e-12);
        }
    }
}
