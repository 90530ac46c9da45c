#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "fricke/algorithm.hpp"
#include "fricke/eisenstein.hpp"
#include "fricke/errors.hpp"

namespace fricke {

struct ValenceBudget {
    int p = 0;
    int k = 0;
    double total = 0;  // k/4 or k/3
    int s_k = 0;
    int t_k = 0;
    int arc_budget = 0;
};

// 2 s_k = k (mod 4) and -2 t_k = k (mod 6).
inline ValenceBudget valence_budget(Level p, Weight k)
{
    ValenceBudget b;
    b.p = p;
    b.k = k;
    b.s_k = (k / 2) % 2;
    if (p == 5) {
        b.total = k / 4.0;
        b.arc_budget = (k - 6 * b.s_k) / 4;
    } else {
        b.t_k = k % 6 == 0 ? 0 : (k % 6 == 2 ? 2 : 1);
        b.total = k / 3.0;
        b.arc_budget = (k - 3 * b.s_k - b.t_k) / 3;
    }
    return b;
}

struct EllipticOrders {
    int v_inf = 0;
    int v_i = 0;     // i / sqrt(p)
    int v_rho1 = 0;
    int v_rho2 = 0;
};

inline EllipticOrders forced_orders(Level p, Weight k)
{
    ValenceBudget b = valence_budget(p, k);
    return {0, b.s_k, b.s_k, p == 5 ? b.s_k : b.t_k};
}

struct IntegerPoint {
    long m = 0;
    double theta = 0;
    Arc arc = Arc::One;
};

// theta = 2 m pi / k inside the arc range (closed).
inline std::vector<IntegerPoint> integer_points(Level p, Weight k, Arc arc)
{
    ArcRange r = arc_range(p, arc);
    std::vector<IntegerPoint> out;
    const double step = 2 * pi / k;
    long m0 = static_cast<long>(std::ceil(r.lo / step - 1e-12));
    long m1 = static_cast<long>(std::floor(r.hi / step + 1e-12));
    for (long m = m0; m <= m1; ++m) {
        double th = std::clamp(m * step, r.lo, r.hi);
        out.push_back({m, th, arc});
    }
    return out;
}

// theta in [pi/2, pi] (p = 5) or [pi/2, 7 pi/6] (p = 7) with k theta / 2 = m pi.
inline std::vector<double> glued_integer_points(Level p, Weight k)
{
    ArcRange g = glued_range(p);
    std::vector<double> out;
    const double step = 2 * pi / k;
    long m0 = static_cast<long>(std::ceil(g.lo / step - 1e-12));
    long m1 = static_cast<long>(std::floor(g.hi / step + 1e-12));
    for (long m = m0; m <= m1; ++m)
        out.push_back(m * step);
    return out;
}

struct ZeroRecord {
    Arc arc = Arc::One;
    double theta_lo = 0;
    double theta_hi = 0;
    double theta_star = 0;
    cplx z;
    double residual = 0;
};

struct Inconclusive {
    Arc arc;
    double theta;
    double value;
    double budget;
};

struct EndpointCheck {
    std::string point;
    int forced_order = 0;
    double value = 0;
    double budget = 0;
    bool vanishes = false;
    bool ok = false;
};

enum class CountStatus { Exact, Shortfall, Excess };

inline const char* status_name(CountStatus s)
{
    switch (s) {
    case CountStatus::Exact: return "EXACT";
    case CountStatus::Shortfall: return "SHORTFALL";
    case CountStatus::Excess: return "EXCESS";
    }
    return "";
}

struct ScanOptions {
    double tol = default_tol;
    int max_k = 200;
    double bisect_width = 1e-10;
};

struct ScanReport {
    int p = 0;
    int k = 0;
    ValenceBudget budget;
    EllipticOrders orders;
    std::vector<ZeroRecord> zeros;
    int count_arc1 = 0;
    int count_arc2 = 0;
    int count = 0;
    CountStatus status = CountStatus::Exact;
    std::vector<Inconclusive> inconclusive;
    std::vector<EndpointCheck> endpoints;
    bool elliptic_ok = true;
};

namespace detail {

struct Sample {
    double theta;
    double value;
    double budget;
};

inline Sample sample_arc(Level p, Arc arc, double th, Weight k, double tol)
{
    RealValue v = F_arc(p, arc, th, k, tol);
    return {th, v.value, std::max(v.error, 0.0)};
}

inline ZeroRecord bisect(Level p, Arc arc, Weight k, Sample lo, Sample hi, const ScanOptions& opt)
{
    ZeroRecord z;
    z.arc = arc;
    z.theta_lo = lo.theta;
    z.theta_hi = hi.theta;
    double flo = lo.value;
    Sample mid = lo;
    for (int it = 0; it < 200; ++it) {
        double m = 0.5 * (lo.theta + hi.theta);
        if (m <= lo.theta || m >= hi.theta)
            break;
        mid = sample_arc(p, arc, m, k, opt.tol);
        if ((mid.value < 0) == (flo < 0)) {
            lo = mid;
            flo = mid.value;
        } else {
            hi = mid;
        }
        if (hi.theta - lo.theta <= opt.bisect_width && std::abs(mid.value) <= opt.tol)
            break;
    }
    z.theta_lo = lo.theta;
    z.theta_hi = hi.theta;
    Sample a = std::abs(lo.value) < std::abs(hi.value) ? lo : hi;
    z.theta_star = a.theta;
    z.residual = std::abs(a.value);
    z.z = arc_to_halfplane(ArcCoordinate(p, arc, a.theta));
    return z;
}

} // namespace detail

// Sign scan at the integer points, the arc endpoints and two interior points of
// every gap, then bisection of every sign change. Endpoints where the weight
// forces vanishing are checked, not searched.
inline ScanReport scan_and_locate(Level p, Weight k, const ScanOptions& opt = {})
{
    if (k.k > opt.max_k)
        throw DomainError("k exceeds the configured maximum " + std::to_string(opt.max_k));
    ScanReport R;
    R.p = p;
    R.k = k;
    R.budget = valence_budget(p, k);
    R.orders = forced_orders(p, k);
    const int forced_i = R.orders.v_i, forced_rho1 = R.orders.v_rho1, forced_rho2 = R.orders.v_rho2;

    auto check_endpoint = [&](const char* name, Arc arc, double th, int order) {
        detail::Sample s = detail::sample_arc(p, arc, th, k, opt.tol);
        EndpointCheck e;
        e.point = name;
        e.forced_order = order;
        e.value = s.value;
        e.budget = 10 * std::max(s.budget, opt.tol);
        e.vanishes = std::abs(s.value) <= e.budget;
        e.ok = (order > 0) == e.vanishes;
        if (!e.ok)
            R.elliptic_ok = false;
        R.endpoints.push_back(e);
    };

    for (Arc arc : {Arc::One, Arc::Two}) {
        ArcRange r = arc_range(p, arc);
        const double width = r.hi - r.lo;
        bool lo_forced = arc == Arc::One ? forced_i > 0 : forced_rho2 > 0;
        bool hi_forced = arc == Arc::One ? forced_rho2 > 0 : forced_rho1 > 0;
        if (arc == Arc::One) {
            check_endpoint("i/sqrt(p)", arc, r.lo, forced_i);
            check_endpoint("rho2", arc, r.hi, forced_rho2);
        } else {
            check_endpoint("rho1", arc, r.hi, forced_rho1);
        }

        std::vector<double> nodes;
        nodes.push_back(lo_forced ? r.lo + 1e-6 * width : r.lo);
        for (const auto& ip : integer_points(p, k, arc))
            if (ip.theta > r.lo + 1e-6 * width && ip.theta < r.hi - 1e-6 * width)
                nodes.push_back(ip.theta);
        nodes.push_back(hi_forced ? r.hi - 1e-6 * width : r.hi);
        // Exact midpoints are where 2cos(k theta/2) vanishes, so the interior
        // samples sit off-centre.
        std::vector<double> thetas;
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
            for (double f : {0.0, 0.3, 0.7})
                thetas.push_back(nodes[i] + (nodes[i + 1] - nodes[i]) * f);
        }
        thetas.push_back(nodes.back());

        std::vector<detail::Sample> samples;
        for (double th : thetas) {
            detail::Sample s = detail::sample_arc(p, arc, th, k, opt.tol);
            if (std::abs(s.value) <= s.budget) {
                R.inconclusive.push_back({arc, th, s.value, s.budget});
                continue;
            }
            samples.push_back(s);
        }
        for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
            if ((samples[i].value < 0) != (samples[i + 1].value < 0)) {
                R.zeros.push_back(detail::bisect(p, arc, k, samples[i], samples[i + 1], opt));
                (arc == Arc::One ? R.count_arc1 : R.count_arc2) += 1;
            }
        }
    }
    R.count = R.count_arc1 + R.count_arc2;
    R.status = R.count == R.budget.arc_budget ? CountStatus::Exact
               : R.count < R.budget.arc_budget ? CountStatus::Shortfall
                                               : CountStatus::Excess;
    return R;
}

enum class WindowStatus { Full, AllButOne, Remaining };

inline const char* window_status_name(WindowStatus s)
{
    switch (s) {
    case WindowStatus::Full: return "PROVEN_WINDOW_FULL";
    case WindowStatus::AllButOne: return "PROVEN_WINDOW_ALL_BUT_ONE";
    case WindowStatus::Remaining: return "REMAINING_CASE";
    }
    return "";
}

// Boundary points of the unproven windows are reported as all-but-one.
inline WindowStatus classify_weight(Level p, Weight k)
{
    auto w = remaining_window(p, k);
    if (!w)
        return WindowStatus::Full;
    double a = angle_constants(p, k).alpha_pk;
    if (std::abs(a - w->lo) <= 1e-9 || std::abs(a - w->hi) <= 1e-9)
        return WindowStatus::AllButOne;
    return (w->lo < a && a < w->hi) ? WindowStatus::Remaining : WindowStatus::Full;
}

struct SweepRow {
    int k = 0;
    double alpha_pk = 0;
    WindowStatus window = WindowStatus::Full;
    int count = 0;
    int budget = 0;
    CountStatus count_status = CountStatus::Exact;
    int inconclusive = 0;
};

inline std::vector<SweepRow> conjecture_sweep(Level p, const std::vector<int>& ks, const ScanOptions& opt = {})
{
    std::vector<SweepRow> rows;
    for (int kv : ks) {
        Weight k(kv);
        ScanReport s = scan_and_locate(p, k, opt);
        SweepRow r;
        r.k = kv;
        r.alpha_pk = angle_constants(p, k).alpha_pk;
        r.window = classify_weight(p, k);
        r.count = s.count;
        r.budget = s.budget.arc_budget;
        r.count_status = s.status;
        r.inconclusive = static_cast<int>(s.inconclusive.size());
        rows.push_back(r);
    }
    return rows;
}

struct JunctionZero {
    int arc = 0;  // 0 unless exactly one zero sits next to the junction
    int edge_arc1 = 0;
    int edge_arc2 = 0;
    double theta = 0;
    int count = 0;
    int budget = 0;
};

// The zero left between the last integer point on arc 1 and the first integer
// point on arc 2. The junction itself is a forced zero in every unproven class,
// so the full scan (which steps off forced endpoints) is used.
inline JunctionZero junction_zero(Level p, Weight k, double tol = default_tol)
{
    ScanOptions opt;
    opt.tol = tol;
    opt.max_k = std::max<int>(k, opt.max_k);
    ScanReport s = scan_and_locate(p, k, opt);
    auto ip1 = integer_points(p, k, Arc::One);
    auto ip2 = integer_points(p, k, Arc::Two);
    if (ip1.empty() || ip2.empty())
        throw DomainError("an arc carries no integer point at this weight");
    JunctionZero out;
    out.count = s.count;
    out.budget = s.budget.arc_budget;
    for (const ZeroRecord& z : s.zeros) {
        if (z.arc == Arc::One && z.theta_star > ip1.back().theta) {
            ++out.edge_arc1;
            out.theta = z.theta_star;
        } else if (z.arc == Arc::Two && z.theta_star < ip2.front().theta) {
            ++out.edge_arc2;
            out.theta = z.theta_star;
        }
    }
    if (out.edge_arc1 + out.edge_arc2 == 1)
        out.arc = out.edge_arc1 ? 1 : 2;
    return out;
}

struct LadderRow {
    int level = 0;  // K
    int p = 0;
    int residue = 0;  // k mod 4 (p = 5) or k mod 6 (p = 7)
    int k = 0;
    double alpha_pk = 0;
    JunctionZero located;
    ProbeRecord probe;
    bool agree = false;            // located arc equals the envelope-sign prediction
    bool threshold_agree = false;  // located arc equals the alpha-threshold rule
};

// For K = 16, 32, ..., max_level the smallest k >= K inside each unproven window.
inline std::vector<LadderRow> remaining_case_ladder(int max_level = 16384, double t = 1e-3)
{
    std::vector<LadderRow> rows;
    struct Cls {
        int p;
        int mod;
        int res;
    };
    const Cls classes[] = {{5, 4, 2}, {7, 6, 2}, {7, 6, 4}};
    for (int K = 16; K <= max_level; K *= 2) {
        for (const Cls& c : classes) {
            int k = K + ((c.res - K % c.mod) % c.mod + c.mod) % c.mod;
            while (!in_remaining_window(Level(c.p), Weight(k)))
                k += c.mod;
            LadderRow r;
            r.level = K;
            r.p = c.p;
            r.residue = c.res;
            r.k = k;
            r.alpha_pk = angle_constants(Level(c.p), Weight(k)).alpha_pk;
            r.located = junction_zero(Level(c.p), Weight(k));
            r.probe = remaining_case_probe(Level(c.p), Weight(k), t);
            r.agree = r.located.arc != 0 && r.located.arc == r.probe.predicted_arc;
            r.threshold_agree = r.located.arc != 0 && r.located.arc == r.probe.threshold_arc;
            rows.push_back(r);
        }
    }
    return rows;
}

} // namespace fricke
