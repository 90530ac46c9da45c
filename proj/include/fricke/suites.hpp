#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "fricke/algorithm.hpp"
#include "fricke/arguments.hpp"
#include "fricke/bounds.hpp"

namespace fricke {

// One verification line: PASS/FAIL id computed published margin.
struct CheckLine {
    std::string id;
    double computed = 0;
    double published = 0;
    double margin = 0;  // >= 0 when the check passes on its numeric criterion
    bool pass = false;
    std::string note;
};

inline std::vector<CheckLine> suite_bounds()
{
    std::vector<CheckLine> out;
    for (const auto& id : fixed_theta_ids()) {
        const BoundSpec& s = bound_spec(id == "R7_4_neg" ? "R7_half_pi" : id);
        int k = id == "R7_4_neg" ? 4 : s.k_min;
        BoundReport r = fixed_theta_bound(id, Weight(k));
        CheckLine c;
        c.id = id + "@k=" + std::to_string(k);
        c.computed = r.computed;
        c.published = *r.published;
        c.margin = (r.lower ? r.computed - *r.published : *r.published - r.computed) + 1e-4;
        c.pass = r.passes();
        c.note = r.note;
        out.push_back(c);
    }
    R52Refinement q = r52_refined(Weight(12));
    out.push_back({"R52_refined@k=12", q.computed, q.published, q.published + 1e-4 - q.computed,
                   q.computed <= q.published + 1e-4, ""});
    return out;
}

inline std::vector<CheckLine> suite_lemmas()
{
    std::vector<CheckLine> out;
    for (const CatalogCase& L : catalog()) {
        CertReport R = certify_report(L);
        for (std::size_t i = 0; i < R.terms.size(); ++i) {
            const TermCheck& T = R.terms[i];
            CheckLine c;
            c.id = L.id + "/Y" + std::to_string(i + 1);
            c.computed = T.Y;
            c.published = T.published;
            c.margin = T.tol - std::abs(T.Y - T.published);
            c.pass = T.y_positive && T.y_match && T.ok18 && T.conservative && T.u_ok && T.c_prime_ok;
            out.push_back(c);
        }
        CheckLine c;
        c.id = L.id + "/c0";
        c.computed = R.c0;
        c.published = R.c0_bound;
        c.margin = R.c0_bound - R.c0;
        c.pass = R.ok;
        for (const auto& f : R.failures)
            c.note += (c.note.empty() ? "" : "; ") + f;
        out.push_back(c);
    }
    return out;
}

// Sandwich 1 + r h <= Q(h) <= upper on t in {0.01, ..., 0.5}, even k in [4, 400].
inline std::vector<CheckLine> suite_envelopes()
{
    std::vector<CheckLine> out;
    for (Envelope e : all_envelopes) {
        double worst = INFINITY;
        long failures = 0;
        for (int ti = 1; ti <= 50; ++ti) {
            double t = ti / 100.0;
            for (int k = 4; k <= 400; k += 2) {
                EnvelopeCheck c = envelope_check(e, t, Weight(k));
                double m = std::min(c.lower_slack, c.upper_slack);
                if (c.exp_lower_applies)
                    m = std::min(m, c.exp_lower_slack);
                worst = std::min(worst, m);
                failures += m < 0;
            }
        }
        out.push_back({"envelope " + std::string(envelope_name(e)), worst, 0, worst, failures == 0,
                       std::to_string(failures) + " violations"});
    }
    double f = envelope_f(0.1);
    out.push_back({"f(1/10)", f, -0.0038812, 1e-6 - std::abs(f + 0.0038812), std::abs(f + 0.0038812) <= 1e-6, ""});
    return out;
}

inline std::vector<CheckLine> run_suite(const std::string& name)
{
    std::vector<CheckLine> out;
    auto add = [&](std::vector<CheckLine> v) { out.insert(out.end(), v.begin(), v.end()); };
    if (name == "bounds" || name == "all")
        add(suite_bounds());
    if (name == "lemmas" || name == "all")
        add(suite_lemmas());
    if (name == "envelopes" || name == "all")
        add(suite_envelopes());
    return out;
}

inline bool is_suite_name(const std::string& name)
{
    return name == "bounds" || name == "lemmas" || name == "envelopes" || name == "all";
}

} // namespace fricke
