#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "fricke/errors.hpp"

namespace fricke {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double eps = std::numeric_limits<double>::epsilon();
inline constexpr double default_tol = 1e-10;

struct Level {
    int p;
    explicit Level(int v) : p(v)
    {
        if (v != 5 && v != 7)
            throw DomainError("p must be 5 or 7");
    }
    operator int() const { return p; }
};

struct Weight {
    int k;
    explicit Weight(int v) : k(v)
    {
        if (v < 4 || v % 2 != 0)
            throw DomainError("k must be even and ≥ 4");
    }
    operator int() const { return k; }
};

enum class Arc { One = 1, Two = 2 };

inline double alpha_of(int p)
{
    return p == 5 ? std::atan(2.0) : std::atan(5.0 / std::sqrt(3.0));
}

struct ArcRange {
    double lo;
    double hi;
};

inline ArcRange arc_range(Level p, Arc arc)
{
    double a = alpha_of(p);
    if (arc == Arc::One)
        return {pi / 2, pi / 2 + a};
    return {p == 5 ? a : a - pi / 6, pi / 2};
}

struct ArcCoordinate {
    Level level;
    Arc arc;
    double theta;

    ArcCoordinate(Level p, Arc a, double th) : level(p), arc(a), theta(th)
    {
        ArcRange r = arc_range(p, a);
        if (!(th >= r.lo - 1e-12 && th <= r.hi + 1e-12))
            throw DomainError("theta outside arc range");
    }
};

inline cplx arc_to_halfplane(const ArcCoordinate& a)
{
    double rp = std::sqrt(static_cast<double>(a.level.p));
    if (a.arc == Arc::One)
        return std::polar(1.0 / rp, a.theta);
    return std::polar(1.0 / (2 * rp), a.theta) - 0.5;
}

struct AngleConstants {
    double alpha_p;
    double alpha_pk;
    double beta_pk;
};

namespace detail {

inline long double mod_pi(long double x)
{
    const long double p = std::numbers::pi_v<long double>;
    long double r = x - p * std::floor(x / p);
    if (r >= p)
        r -= p;
    if (r < 0)
        r += p;
    return r;
}

} // namespace detail

// The multiples of pi/4 and pi/12 are reduced exactly on k before the
// irrational part is added, so the only rounding is in (k/2)*alpha_p.
inline AngleConstants angle_constants(Level p, Weight k)
{
    const long double P = std::numbers::pi_v<long double>;
    long double a = p == 5 ? std::atan(2.0L) : std::atan(5.0L / std::sqrt(3.0L));
    long double half_k_alpha = std::fmod(static_cast<long double>(k / 2) * a, P);
    long double alpha_pk = detail::mod_pi(static_cast<long double>(k % 4) * P / 4 + half_k_alpha);
    long double beta_pk;
    if (p == 5)
        beta_pk = detail::mod_pi(half_k_alpha);
    else
        beta_pk = detail::mod_pi(half_k_alpha - static_cast<long double>(k % 12) * P / 12);
    return {static_cast<double>(a), static_cast<double>(alpha_pk), static_cast<double>(beta_pk)};
}

struct TruncatedValue {
    cplx value;
    double tail_bound = 0;
    long n_max = 0;
};

struct RealValue {
    double value = 0;
    double error = 0;
    double imag = 0;
};

inline long default_max_shell()
{
    if (const char* s = std::getenv("FRICKE_ZEROS_MAX_SHELL")) {
        char* end = nullptr;
        long v = std::strtol(s, &end, 10);
        if (end != s && v > 0)
            return v;
    }
    return 1000000;
}

inline long binary_gcd(long a, long b)
{
    a = std::labs(a);
    b = std::labs(b);
    if (a == 0)
        return b;
    if (b == 0)
        return a;
    int shift = __builtin_ctzl(a | b);
    a >>= __builtin_ctzl(a);
    do {
        b >>= __builtin_ctzl(b);
        if (a > b)
            std::swap(a, b);
        b -= a;
    } while (b != 0);
    return a << shift;
}

struct Pair {
    int c;
    int d;
    long N;
};

// Coprime pairs with c > 0, ordered by shell N, then c, then d.
// The (0, 1) pair is left out; callers add its contribution separately.
inline std::vector<Pair> half_plane_pairs(long max_N, int skip_c_mod = 0, int skip_d_mod = 0)
{
    std::vector<Pair> out;
    int cmax = static_cast<int>(std::sqrt(static_cast<double>(max_N))) + 1;
    for (int c = 1; c <= cmax; ++c) {
        if (skip_c_mod && c % skip_c_mod == 0)
            continue;
        long rem = max_N - static_cast<long>(c) * c;
        if (rem < 0)
            break;
        int dmax = static_cast<int>(std::sqrt(static_cast<double>(rem)));
        while (static_cast<long>(dmax + 1) * (dmax + 1) <= rem)
            ++dmax;
        while (static_cast<long>(dmax) * dmax > rem)
            --dmax;
        for (int d = -dmax; d <= dmax; ++d) {
            if (skip_d_mod && d % skip_d_mod == 0)
                continue;
            if (binary_gcd(c, d) != 1)
                continue;
            out.push_back({c, d, static_cast<long>(c) * c + static_cast<long>(d) * d});
        }
    }
    std::sort(out.begin(), out.end(), [](const Pair& x, const Pair& y) {
        if (x.N != y.N)
            return x.N < y.N;
        if (x.c != y.c)
            return x.c < y.c;
        return x.d < y.d;
    });
    return out;
}

inline constexpr long cached_shell = 4096;

inline const std::vector<Pair>& cached_pairs()
{
    static const std::vector<Pair> pairs = half_plane_pairs(cached_shell);
    return pairs;
}

// Smallest eigenvalue of the form c^2|z|^2 + 2cd Re z + d^2.
inline double lambda_min(cplx z)
{
    double n = std::norm(z);
    double x = z.real();
    double disc = std::sqrt((n - 1) * (n - 1) + 4 * x * x);
    double lam = ((n + 1) - disc) / 2;
    // The product of the eigenvalues is y^2; this form avoids cancellation.
    double other = ((n + 1) + disc) / 2;
    double y = z.imag();
    return std::min(lam, y * y / other);
}

// Bound on the half-plane terms with N > M, using at most 3 sqrt(N) pairs per shell
// and |cz+d|^2 >= lam N.
inline double lattice_tail(int k, double lam, double M)
{
    double lg = std::log(6.0) - 0.5 * k * std::log(lam) + 0.5 * (3.0 - k) * std::log(M) - std::log(k - 3.0);
    return std::exp(lg);
}

inline double lattice_shell_needed(int k, double lam, double tol)
{
    double lg = (std::log(6.0) - 0.5 * k * std::log(lam) - std::log(k - 3.0) - std::log(tol)) * 2.0 / (k - 3.0);
    if (lg > 50)
        return std::numeric_limits<double>::infinity();
    return std::max(1.0, std::ceil(std::exp(lg)));
}

namespace detail {

struct Partial {
    cplx sum;
    double round = 0;
};

// Sum of (c w + d)^{-k} * exp(-k shift) over the listed pairs with N <= M.
template <class Keep>
Partial lattice_partial(cplx w, int k, long M, const std::vector<Pair>& pairs, double shift, Keep keep)
{
    Partial out;
    for (const Pair& pr : pairs) {
        if (pr.N > M)
            break;
        if (!keep(pr))
            continue;
        cplx base = static_cast<double>(pr.c) * w + static_cast<double>(pr.d);
        cplx lg = std::log(base) + shift;
        cplx t = std::exp(-static_cast<double>(k) * lg);
        out.sum += t;
        out.round += std::abs(t) * eps * (4 + k * (std::abs(lg) + 1));
    }
    return out;
}

inline const std::vector<Pair>& pairs_up_to(long M, std::vector<Pair>& scratch)
{
    if (M <= cached_shell)
        return cached_pairs();
    scratch = half_plane_pairs(M);
    return scratch;
}

} // namespace detail

// Direct shell-ordered lattice sum E_k(z) = 1 + sum_{c>0, (c,d)=1} (cz+d)^{-k}.
inline TruncatedValue eisenstein_Ek_shells(cplx z, Weight k, double tol = default_tol, long max_shell = default_max_shell())
{
    if (!(z.imag() > 0))
        throw DomainError("Im z must be positive");
    if (!(tol > 0))
        throw DomainError("tol must be positive");
    double lam = lambda_min(z);
    double M = lattice_shell_needed(k, lam, tol / 2);
    if (M > static_cast<double>(max_shell))
        throw NonConvergence("tail bound does not reach tolerance within shell " + std::to_string(max_shell));
    long Mi = static_cast<long>(M);
    std::vector<Pair> scratch;
    const auto& pairs = detail::pairs_up_to(Mi, scratch);
    auto part = detail::lattice_partial(z, k, Mi, pairs, 0.0, [](const Pair&) { return true; });
    return {1.0 + part.sum, lattice_tail(k, lam, static_cast<double>(Mi)) + part.round, Mi};
}

// Lipschitz form at a reduced point:
// E_k = 1 + (-1)^{k/2} (2 pi)^k / ((k-1)! zeta(k)) sum_n n^{k-1} q^n / (1 - q^n).
inline TruncatedValue ek_lipschitz(cplx tau, int k, double tol)
{
    double y = tau.imag();
    double x = tau.real();
    double logC = k * std::log(2 * pi) - std::lgamma(static_cast<double>(k)) - std::log(std::riemann_zeta(static_cast<double>(k)));
    double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
    double peak = (k - 1) / (2 * pi * y);
    cplx sum = 0;
    double round = 0;
    double tail = 0;
    long n = 1;
    for (;; ++n) {
        if (n > 200000)
            throw NonConvergence("q-series did not converge");
        double lm = logC + (k - 1) * std::log(static_cast<double>(n)) - 2 * pi * y * n;
        cplx qn = std::exp(cplx(0, 2 * pi) * tau * static_cast<double>(n));
        cplx t = sign * std::exp(cplx(lm, 2 * pi * x * n)) / (1.0 - qn);
        sum += t;
        round += std::abs(t) * eps * (8 + std::abs(lm) + 2 * pi * n * (std::abs(x) + y));
        if (n > peak) {
            double r = std::pow((n + 1.0) / n, k - 1) * std::exp(-2 * pi * y);
            if (r < 1) {
                double next = std::exp(logC + (k - 1) * std::log(n + 1.0) - 2 * pi * y * (n + 1))
                              / (1 - std::exp(-2 * pi * y * (n + 1)));
                tail = next / (1 - r);
                if (tail <= 0.1 * tol)
                    break;
            }
        }
    }
    return {1.0 + sum, tail + round + eps, n};
}

struct Reduction {
    cplx tau;
    // E_k(z) = exp(-k log_factor) E_k(tau)
    cplx log_factor;
};

inline Reduction reduce_to_fundamental(cplx z)
{
    cplx L = 0;
    for (int it = 0; it < 10000; ++it) {
        z -= std::round(z.real());
        if (std::norm(z) < 1 - 1e-15) {
            L += std::log(z);
            z = -1.0 / z;
        } else {
            break;
        }
    }
    return {z, L};
}

inline constexpr long lattice_switch = 2000;

// E_k at a point of the standard fundamental domain. The lattice sum is used
// when few shells suffice; otherwise the q-series.
inline TruncatedValue ek_reduced(cplx tau, int k, double tol)
{
    double lam = lambda_min(tau);
    double M = lattice_shell_needed(k, lam, tol / 2);
    if (M <= static_cast<double>(lattice_switch)) {
        long Mi = static_cast<long>(M);
        auto part = detail::lattice_partial(tau, k, Mi, cached_pairs(), 0.0, [](const Pair&) { return true; });
        return {1.0 + part.sum, lattice_tail(k, lam, static_cast<double>(Mi)) + part.round, Mi};
    }
    return ek_lipschitz(tau, k, tol);
}

namespace detail {

struct Scaled {
    cplx factor;
    cplx value;
    double err;
};

// exp(-k (log_factor + shift)) E_k(tau) with the factor's own rounding folded in.
inline Scaled scaled_ek(cplx z, int k, double shift, double tol)
{
    Reduction r = reduce_to_fundamental(z);
    cplx lg = r.log_factor + shift;
    cplx f = std::exp(-static_cast<double>(k) * lg);
    double af = std::abs(f);
    double want = af > 0 ? tol / (2 * af) : 1e-3;
    want = std::clamp(want, 1e-15, 1e-3);
    TruncatedValue e = ek_reduced(r.tau, k, want);
    cplx v = f * e.value;
    double err = af * e.tail_bound + std::abs(v) * eps * (4 + k * (std::abs(lg) + 1));
    return {f, v, err};
}

} // namespace detail

inline TruncatedValue eisenstein_Ek(cplx z, Weight k, double tol = default_tol)
{
    if (!(z.imag() > 0))
        throw DomainError("Im z must be positive");
    if (!(tol > 0))
        throw DomainError("tol must be positive");
    auto s = detail::scaled_ek(z, k, 0.0, tol);
    return {s.value, s.err, 0};
}

// (p^{k/2} E_k(pz) + E_k(z)) / (p^{k/2} + 1), evaluated as
// (E_k(pz) + p^{-k/2} E_k(z)) / (1 + p^{-k/2}) to keep large weights finite.
inline TruncatedValue eisenstein_star(cplx z, Weight k, Level p, double tol = default_tol)
{
    if (!(z.imag() > 0))
        throw DomainError("Im z must be positive");
    if (!(tol > 0))
        throw DomainError("tol must be positive");
    double half_log_p = 0.5 * std::log(static_cast<double>(p.p));
    auto a = detail::scaled_ek(static_cast<double>(p.p) * z, k, 0.0, tol);
    auto b = detail::scaled_ek(z, k, half_log_p, tol);
    double den = 1 + std::exp(-k * half_log_p);
    cplx v = (a.value + b.value) / den;
    double err = (a.err + b.err) / den + std::abs(v) * 4 * eps;
    return {v, err, 0};
}

// Coset form: A + p^{-k/2} B with A = 1/2 sum_{p not| d} (c pz + d)^{-k}
// and B = 1/2 sum_{p not| c} (cz + d)^{-k}.
inline TruncatedValue eisenstein_star_coset(cplx z, Weight k, Level p, double tol = default_tol,
                                            long max_shell = default_max_shell())
{
    if (!(z.imag() > 0))
        throw DomainError("Im z must be positive");
    double P = p.p;
    cplx pz = P * z;
    double lamA = lambda_min(pz);
    double lamB = P * lambda_min(z);
    double MA = lattice_shell_needed(k, lamA, tol / 4);
    double MB = lattice_shell_needed(k, lamB, tol / 4);
    double M = std::max(MA, MB);
    if (M > static_cast<double>(max_shell))
        throw NonConvergence("coset sums do not reach tolerance within shell " + std::to_string(max_shell));
    long Mi = static_cast<long>(M);
    std::vector<Pair> scratch;
    const auto& pairs = detail::pairs_up_to(Mi, scratch);
    int pp = p.p;
    auto A = detail::lattice_partial(pz, k, Mi, pairs, 0.0, [pp](const Pair& x) { return x.d % pp != 0; });
    auto B = detail::lattice_partial(z, k, Mi, pairs, 0.5 * std::log(P), [pp](const Pair& x) { return x.c % pp != 0; });
    double tail = lattice_tail(k, lamA, static_cast<double>(Mi)) + lattice_tail(k, lamB, static_cast<double>(Mi));
    return {1.0 + A.sum + B.sum, tail + A.round + B.round, Mi};
}

inline RealValue F_arc(const ArcCoordinate& a, Weight k, double tol = default_tol)
{
    if (!(tol > 0))
        throw DomainError("tol must be positive");
    cplx z = arc_to_halfplane(a);
    TruncatedValue e = eisenstein_star(z, k, a.level, tol);
    cplx w = std::polar(1.0, 0.5 * k * a.theta) * e.value;
    double budget = e.tail_bound + std::abs(e.value) * eps * (4 + 0.5 * k * std::abs(a.theta));
    RealValue out{w.real(), budget, w.imag()};
    if (std::abs(out.imag) > 10 * std::max(tol, budget))
        throw RealnessViolation("imaginary part " + std::to_string(out.imag) + " exceeds error budget");
    return out;
}

inline RealValue F_arc(Level p, Arc arc, double theta, Weight k, double tol = default_tol)
{
    return F_arc(ArcCoordinate(p, arc, theta), k, tol);
}

// Offset from the glued angle to the arc-2 angle.
inline double glue_offset(Level p)
{
    return p == 5 ? pi / 2 : 2 * pi / 3;
}

inline ArcRange glued_range(Level p)
{
    return {pi / 2, p == 5 ? pi : 7 * pi / 6};
}

// F_1(junction) = phase * F_2(junction) with phase e^{i pi k/4} (p = 5) or e^{i pi k/3} (p = 7).
inline cplx junction_phase(Level p, Weight k)
{
    int num = p == 5 ? k % 8 : k % 6;
    double den = p == 5 ? 4.0 : 3.0;
    return std::polar(1.0, pi * num / den);
}

inline double junction_sign(Level p, Weight k)
{
    return junction_phase(p, k).real() < -1e-12 ? -1.0 : 1.0;
}

struct GluedValue {
    double value = 0;
    double raw = 0;
    Arc branch = Arc::One;
    double error = 0;
};

inline GluedValue F_glued(Level p, Weight k, double theta, double tol = default_tol)
{
    ArcRange g = glued_range(p);
    if (!(theta >= g.lo - 1e-12 && theta <= g.hi + 1e-12))
        throw DomainError("theta outside the glued range");
    double junction = pi / 2 + alpha_of(p);
    if (theta <= junction) {
        RealValue v = F_arc(p, Arc::One, std::min(theta, junction), k, tol);
        return {v.value, v.value, Arc::One, v.error};
    }
    ArcRange r2 = arc_range(p, Arc::Two);
    double th2 = std::clamp(theta - glue_offset(p), r2.lo, r2.hi);
    RealValue v = F_arc(p, Arc::Two, th2, k, tol);
    double s = junction_sign(p, k);
    return {s * v.value, v.value, Arc::Two, v.error};
}

// Elliptic points of the Fricke group.
inline cplx elliptic_i(Level p)
{
    return cplx(0, 1 / std::sqrt(static_cast<double>(p.p)));
}

inline cplx elliptic_rho1(Level p)
{
    return cplx(-0.5, 0.5 / std::sqrt(static_cast<double>(p.p)));
}

inline cplx elliptic_rho2(Level p)
{
    return p == 5 ? cplx(-0.4, 0.2) : std::polar(1 / std::sqrt(7.0), pi / 2 + alpha_of(p));
}

} // namespace fricke
