#pragma once

#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "fricke/eisenstein.hpp"
#include "fricke/zeros.hpp"

namespace fricke {

inline constexpr const char* schema_version = "1.0";

// A formatted cell. Numeric cells become JSON numbers, the rest JSON strings;
// both renderings start from the same text.
struct Cell {
    std::string text;
    bool numeric = false;
};

inline std::string fixed(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

inline std::string sci(double v, int digits = 6)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits, v);
    return buf;
}

inline Cell num(std::string s) { return {std::move(s), true}; }
inline Cell num(int v) { return {std::to_string(v), true}; }
inline Cell str(std::string s) { return {std::move(s), false}; }
inline Cell rad(double v) { return num(fixed(v, 15)); }
inline Cell deg(double v) { return num(fixed(v * 180 / pi, 6)); }

struct OutputRecord {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

inline std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

inline void write_csv(std::ostream& os, const OutputRecord& r)
{
    for (std::size_t i = 0; i < r.columns.size(); ++i)
        os << (i ? "," : "") << r.columns[i];
    os << '\n';
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << csv_escape(row[i].text);
        os << '\n';
    }
}

inline nlohmann::ordered_json to_json(const OutputRecord& r)
{
    nlohmann::ordered_json j;
    j["schema_version"] = schema_version;
    j["command"] = r.command;
    j["inputs"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.inputs)
        j["inputs"][k] = v;
    j["results"]["columns"] = r.columns;
    j["results"]["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        nlohmann::ordered_json o = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const Cell& c = row[i];
            if (c.numeric && !c.text.empty())
                o[r.columns[i]] = nlohmann::ordered_json::parse(c.text);
            else if (c.numeric)
                o[r.columns[i]] = nullptr;
            else
                o[r.columns[i]] = c.text;
        }
        j["results"]["rows"].push_back(std::move(o));
    }
    return j;
}

inline void write_table(std::ostream& os, const OutputRecord& r)
{
    std::vector<std::size_t> w(r.columns.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] = r.columns[i].size();
    for (const auto& row : r.rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            w[i] = std::max(w[i], row[i].text.size());
    auto line = [&](auto get) {
        for (std::size_t i = 0; i < w.size(); ++i) {
            std::string s = get(i);
            os << (i ? "  " : "") << s << std::string(w[i] - s.size(), ' ');
        }
        os << '\n';
    };
    line([&](std::size_t i) { return r.columns[i]; });
    for (const auto& row : r.rows)
        line([&](std::size_t i) { return row[i].text; });
}

inline OutputRecord zeros_record(const ScanReport& s, double tol)
{
    OutputRecord r;
    r.command = "zeros";
    r.inputs = {{"p", std::to_string(s.p)}, {"k", std::to_string(s.k)}, {"tol", sci(tol, 3)}};
    r.columns = {"p",   "k",      "v_inf",  "v_i",       "v_rho1",    "v_rho2", "V1",   "V2",
                 "budget", "status", "arc", "theta_rad", "theta_deg", "re_z",   "im_z", "residual"};
    std::vector<Cell> head{num(s.p),          num(s.k),          num(s.orders.v_inf),  num(s.orders.v_i),
                           num(s.orders.v_rho1), num(s.orders.v_rho2), num(s.count_arc1), num(s.count_arc2),
                           num(s.budget.arc_budget), str(status_name(s.status))};
    if (s.zeros.empty()) {
        auto row = head;
        for (int i = 0; i < 6; ++i)
            row.push_back(num(""));
        r.rows.push_back(row);
    }
    for (const ZeroRecord& z : s.zeros) {
        auto row = head;
        row.push_back(num(static_cast<int>(z.arc)));
        row.push_back(rad(z.theta_star));
        row.push_back(deg(z.theta_star));
        row.push_back(num(fixed(z.z.real(), 15)));
        row.push_back(num(fixed(z.z.imag(), 15)));
        row.push_back(num(sci(z.residual, 3)));
        r.rows.push_back(row);
    }
    return r;
}

inline OutputRecord sweep_record(int p, int k_min, int k_max, const std::vector<SweepRow>& rows)
{
    OutputRecord r;
    r.command = "sweep";
    r.inputs = {{"p", std::to_string(p)}, {"k_min", std::to_string(k_min)}, {"k_max", std::to_string(k_max)}};
    r.columns = {"p", "k", "alpha_rad", "alpha_deg", "window", "count", "budget", "status", "inconclusive"};
    for (const SweepRow& s : rows)
        r.rows.push_back({num(p), num(s.k), rad(s.alpha_pk), deg(s.alpha_pk), str(window_status_name(s.window)),
                          num(s.count), num(s.budget), str(status_name(s.count_status)), num(s.inconclusive)});
    return r;
}

// Static plot of the lower boundary of the fundamental domain with zero markers.
inline std::string render_svg(const ScanReport& s)
{
    const Level p(s.p);
    const double W = 800, H = 400, scale = W / 1.2;
    auto X = [&](double x) { return fixed((x + 0.6) * scale, 3); };
    auto Y = [&](double y) { return fixed(H - y * scale, 3); };
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 "
      << W << ' ' << H << "\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<line x1=\"0\" y1=\"" << Y(0) << "\" x2=\"" << W << "\" y2=\"" << Y(0) << "\" stroke=\"#888\"/>\n";
    for (double x : {-0.5, 0.5})
        o << "<line x1=\"" << X(x) << "\" y1=\"" << Y(0.6) << "\" x2=\"" << X(x) << "\" y2=\"" << Y(0)
          << "\" stroke=\"#888\" stroke-dasharray=\"4 4\"/>\n";
    for (Arc arc : {Arc::One, Arc::Two}) {
        ArcRange r = arc_range(p, arc);
        for (int mirror : {1, -1}) {
            o << "<polyline fill=\"none\" stroke=\"" << (mirror == 1 ? "black" : "#bbb") << "\" stroke-width=\"2\" points=\"";
            for (int i = 0; i <= 200; ++i) {
                cplx z = arc_to_halfplane(ArcCoordinate(p, arc, r.lo + (r.hi - r.lo) * i / 200));
                o << (i ? " " : "") << X(mirror * z.real()) << ',' << Y(z.imag());
            }
            o << "\"/>\n";
        }
    }
    const std::pair<const char*, cplx> elliptic[] = {
        {"i/sqrt(p)", elliptic_i(p)}, {"rho1", elliptic_rho1(p)}, {"rho2", elliptic_rho2(p)}};
    for (const auto& [name, z] : elliptic)
        o << "<rect x=\"" << fixed((z.real() + 0.6) * scale - 4, 3) << "\" y=\"" << fixed(H - z.imag() * scale - 4, 3)
          << "\" width=\"8\" height=\"8\" fill=\"none\" stroke=\"blue\"><title>" << name << "</title></rect>\n";
    for (const ZeroRecord& z : s.zeros)
        o << "<circle cx=\"" << X(z.z.real()) << "\" cy=\"" << Y(z.z.imag()) << "\" r=\"4\" fill=\"red\"><title>theta="
          << fixed(z.theta_star, 15) << "</title></circle>\n";
    o << "<text x=\"10\" y=\"20\" font-family=\"monospace\" font-size=\"14\">p=" << s.p << " k=" << s.k
      << " zeros=" << s.count << "</text>\n";
    o << "</svg>\n";
    return o.str();
}

} // namespace fricke
