#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <string_view>

#include "fricke/eisenstein.hpp"
#include "fricke/errors.hpp"

namespace fricke {

// Dominant lattice terms near the arc endpoints. Theta1_* live on arc 1,
// Theta2_* on arc 2; p = 5 has only the *_1 variants.
enum class Primed { Theta1_1, Theta1_2, Theta2_1, Theta2_2 };

inline std::string_view primed_name(Primed w)
{
    switch (w) {
    case Primed::Theta1_1: return "theta1_1";
    case Primed::Theta1_2: return "theta1_2";
    case Primed::Theta2_1: return "theta2_1";
    case Primed::Theta2_2: return "theta2_2";
    }
    return "";
}

inline Arc primed_arc(Primed w)
{
    return (w == Primed::Theta1_1 || w == Primed::Theta1_2) ? Arc::One : Arc::Two;
}

struct PrimedVariant {
    double a;       // coefficient of e^{i theta/2}
    double b;       // coefficient of e^{-i theta/2}
    double base;    // theta' at the arc endpoint
    double lo_mul;  // window is (base + lo_mul h, base + hi_mul h), with d in place of 'd' slots
    double hi_mul;
    bool d_on_lo;   // d replaces lo_mul (window opens upward) or hi_mul (downward)
};

inline PrimedVariant primed_variant(Level p, Primed w)
{
    double a = alpha_of(p);
    if (p == 5) {
        const double s5 = std::sqrt(5.0);
        if (w == Primed::Theta1_1)
            return {2, s5, -pi / 2 + a, 0, 1, true};
        if (w == Primed::Theta2_1)
            return {-1, s5, -pi + a, -1, 0, false};
        throw DomainError("p = 5 has only theta1_1 and theta2_1");
    }
    const double s7 = std::sqrt(7.0);
    switch (w) {
    case Primed::Theta1_1: return {2, s7, 2 * pi / 3 + pi / 2 + a, 0, 3, true};
    case Primed::Theta1_2: return {3, s7, -2 * pi / 3 + pi / 2 + a, -2, 0, false};
    case Primed::Theta2_1: return {-1, s7, -2 * pi / 3 + a - pi / 6, -1.5, 0, false};
    case Primed::Theta2_2: return {-3, s7, 2 * pi / 3 + a - pi / 6, 0, 0.5, true};
    }
    throw DomainError("unknown primed variant");
}

// tan(theta'/2) = slope * tan(theta/2) with slope = (a - b)/(a + b).
inline double slope_constant(Level p, Primed w)
{
    PrimedVariant v = primed_variant(p, w);
    return (v.a - v.b) / (v.a + v.b);
}

// 2 Arg(a e^{i theta/2} + b e^{-i theta/2}), reduced to (-pi, pi].
inline double primed_angle_raw(double a, double b, double theta)
{
    double t = 2 * std::arg(a * std::polar(1.0, theta / 2) + b * std::polar(1.0, -theta / 2));
    return std::remainder(t, 2 * pi);
}

struct PrimedAngle {
    int p;
    Primed which;
    double theta;
    double theta_prime;
    double slope_constant;
};

inline PrimedAngle primed_angle(Level p, Primed w, double theta)
{
    ArcRange r = arc_range(p, primed_arc(w));
    if (!(theta >= r.lo - 1e-12 && theta <= r.hi + 1e-12))
        throw DomainError("theta outside the arc of this term");
    PrimedVariant v = primed_variant(p, w);
    double tp = 2 * std::arg(v.a * std::polar(1.0, theta / 2) + v.b * std::polar(1.0, -theta / 2));
    tp += 2 * pi * std::round((v.base - tp) / (2 * pi));
    return {p.p, w, theta, tp, (v.a - v.b) / (v.a + v.b)};
}

// theta at distance h = t pi / k from the endpoint where the term dominates.
inline double primed_theta_at(Level p, Primed w, double h)
{
    double a = alpha_of(p);
    if (primed_arc(w) == Arc::One)
        return pi / 2 + a - h;
    return (p == 5 ? a : a - pi / 6) + h;
}

struct DWindow {
    double d_value = 0;  // the closed-form window constant
    double d_exact = 0;  // the largest d for which theta' is inside the window
    double d_limit = 0;  // value as t -> 0 or k -> infinity
    double t = 0;
    int k = 0;
    double theta_prime = 0;
    double window_lo = 0;
    double window_hi = 0;
    // Rounding scale of d_exact: theta' carries absolute error ~ eps |theta'|, divided by h.
    double resolution = 0;
    // theta' lies inside the window built from d_value, up to the resolution.
    bool admissible = false;
};

inline DWindow d_window(Level p, Primed w, double t, Weight k)
{
    if (!(t > 0))
        throw DomainError("t must be positive");
    double h = t * pi / k;
    if (!(h / 2 < pi / 2))
        throw DomainError("t pi / (2k) must be below pi / 2");
    ArcRange r = arc_range(p, primed_arc(w));
    if (h > r.hi - r.lo)
        throw DomainError("t pi / k exceeds the arc width");
    double T = std::tan(h / 2);
    const double s3 = std::sqrt(3.0);
    DWindow out;
    out.t = t;
    out.k = k;
    if (p == 5) {
        out.d_value = w == Primed::Theta1_1 ? 1 / (1 + 4 * T) : 1 / (1 + T);
        out.d_limit = 1;
    } else {
        switch (w) {
        case Primed::Theta1_1: out.d_value = 3 / (1 + 2 * s3 * T); out.d_limit = 3; break;
        case Primed::Theta1_2: out.d_value = 2 / (1 + s3 * T); out.d_limit = 2; break;
        case Primed::Theta2_1: out.d_value = 3 / (2 + s3 * T); out.d_limit = 1.5; break;
        case Primed::Theta2_2: out.d_value = 1 / (2 + 3 * s3 * T); out.d_limit = 0.5; break;
        }
    }
    PrimedVariant v = primed_variant(p, w);
    PrimedAngle pa = primed_angle(p, w, primed_theta_at(p, w, h));
    out.theta_prime = pa.theta_prime;
    out.d_exact = v.d_on_lo ? (pa.theta_prime - v.base) / h : (v.base - pa.theta_prime) / h;
    if (v.d_on_lo) {
        out.window_lo = v.base + out.d_value * h;
        out.window_hi = v.base + v.hi_mul * h;
    } else {
        out.window_lo = v.base + v.lo_mul * h;
        out.window_hi = v.base - out.d_value * h;
    }
    double slack = 64 * eps * std::max(1.0, std::abs(v.base));
    out.resolution = slack / h;
    out.admissible = out.window_lo < pa.theta_prime + slack && pa.theta_prime < out.window_hi + slack;
    return out;
}

// The six quadratic forms of the absolute-value envelopes, as functions of h = t pi / k.
enum class Envelope { Q1, Q2, Q3, Q4, Q5, Q6 };

inline constexpr std::array<Envelope, 6> all_envelopes{Envelope::Q1, Envelope::Q2, Envelope::Q3,
                                                      Envelope::Q4, Envelope::Q5, Envelope::Q6};

inline std::string_view envelope_name(Envelope e)
{
    static constexpr std::array<std::string_view, 6> names{
        "9+4sqrt5cos(pi/2+a5-h)",     "(6-2sqrt5cos(a5+h))/4",      "11+4sqrt7cos(pi/2+a7-h)",
        "16+6sqrt7cos(pi/2+a7-h)",    "(8-2sqrt7cos(a7-pi/6+h))/4", "(16-6sqrt7cos(a7-pi/6+h))/4"};
    return names[static_cast<int>(e)];
}

inline int envelope_level(Envelope e)
{
    return (e == Envelope::Q1 || e == Envelope::Q2) ? 5 : 7;
}

inline double envelope_form(Envelope e, double h)
{
    const double s5 = std::sqrt(5.0), s7 = std::sqrt(7.0);
    const double a5 = alpha_of(5), a7 = alpha_of(7);
    switch (e) {
    case Envelope::Q1: return 9 + 4 * s5 * std::cos(pi / 2 + a5 - h);
    case Envelope::Q2: return (6 - 2 * s5 * std::cos(a5 + h)) / 4;
    case Envelope::Q3: return 11 + 4 * s7 * std::cos(pi / 2 + a7 - h);
    case Envelope::Q4: return 16 + 6 * s7 * std::cos(pi / 2 + a7 - h);
    case Envelope::Q5: return (8 - 2 * s7 * std::cos(a7 - pi / 6 + h)) / 4;
    case Envelope::Q6: return (16 - 6 * s7 * std::cos(a7 - pi / 6 + h)) / 4;
    }
    return 0;
}

// Growth rate r with 1 + r h <= Q(h) <= e^{r h}.
inline double envelope_rate(Envelope e)
{
    const double s3 = std::sqrt(3.0);
    switch (e) {
    case Envelope::Q1: return 4;
    case Envelope::Q2: return 1;
    case Envelope::Q3: return 2 * s3;
    case Envelope::Q4: return 3 * s3;
    case Envelope::Q5: return s3 / 2;
    case Envelope::Q6: return 3 * s3 / 2;
    }
    return 0;
}

struct EnvelopeCheck {
    double value = 0;
    double lower = 0;
    double upper = 0;
    double lower_slack = 0;
    double upper_slack = 0;
    bool lower_ok = false;
    bool upper_ok = false;
    // Q5 only: e^{(sqrt3/2) h} <= Q5, valid for t/k <= 1/10.
    bool exp_lower_applies = false;
    double exp_lower_slack = 0;
    bool exp_lower_ok = true;
};

inline double q5_exp_lower_slack(double t, Weight k)
{
    if (!(t > 0) || t / k > 0.1)
        throw DomainError("the exponential lower envelope needs 0 < t/k <= 1/10");
    double h = t * pi / k;
    return envelope_form(Envelope::Q5, h) - std::exp(envelope_rate(Envelope::Q5) * h);
}

inline EnvelopeCheck envelope_check(Envelope e, double t, Weight k)
{
    if (!(t > 0))
        throw DomainError("t must be positive");
    double h = t * pi / k;
    double r = envelope_rate(e);
    EnvelopeCheck c;
    c.value = envelope_form(e, h);
    c.lower = 1 + r * h;
    // Q5 is bounded above by its quadratic, the others by the exponential.
    c.upper = e == Envelope::Q5 ? 1 + r * h + h * h / 2 : std::exp(r * h);
    c.lower_slack = c.value - c.lower;
    c.upper_slack = c.upper - c.value;
    c.lower_ok = c.lower_slack >= 0;
    c.upper_ok = c.upper_slack >= 0;
    if (e == Envelope::Q5 && t / k <= 0.1) {
        c.exp_lower_applies = true;
        c.exp_lower_slack = q5_exp_lower_slack(t, k);
        c.exp_lower_ok = c.exp_lower_slack >= 0;
    }
    return c;
}

// f(s) = e^{(sqrt3/2) s pi} - Q5(s pi); negative on (0, 1/10].
inline double envelope_f(double s)
{
    return std::exp(std::sqrt(3.0) / 2 * s * pi) - envelope_form(Envelope::Q5, s * pi);
}

struct PrimedModAngles {
    int p = 0;
    int k = 0;
    double t = 0;
    // p = 5 uses alpha1 and beta1; p = 7 uses all four.
    double alpha1 = 0;
    double alpha2 = 0;
    double beta1 = 0;
    double beta2 = 0;
};

inline double mod_two_pi(double x)
{
    double r = std::fmod(x, 2 * pi);
    return r < 0 ? r + 2 * pi : r;
}

// k theta'/2 reduced mod 2 pi at distance t pi / k from each endpoint.
inline PrimedModAngles primed_mod_angles(Level p, Weight k, double t)
{
    double h = t * pi / k;
    auto one = [&](Primed w) {
        return mod_two_pi(0.5 * k * primed_angle(p, w, primed_theta_at(p, w, h)).theta_prime);
    };
    PrimedModAngles m;
    m.p = p;
    m.k = k;
    m.t = t;
    m.alpha1 = one(Primed::Theta1_1);
    m.beta1 = one(Primed::Theta2_1);
    if (p == 7) {
        m.alpha2 = one(Primed::Theta1_2);
        m.beta2 = one(Primed::Theta2_2);
    }
    return m;
}

// (k/3) pi mod 2 pi as a multiple of pi/3: 0, 2 or 4.
inline int k_third_pi_thirds(Weight k)
{
    return k % 6;
}

// -(k/2) pi mod 2 pi as a multiple of pi: 0 or 1.
inline int minus_half_k_pi(Weight k)
{
    return (k / 2) % 2;
}

} // namespace fricke
