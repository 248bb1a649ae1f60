// Text formats, JSON report rendering and SVG barcode plots.
//
// Complex files: one `simplex v0 v1 ... vk birth` record per line, vertices
// strictly ascending, the final integer being the birth; `#` starts a
// comment.  Cover files: `cover <index>` section headers (numbered
// consecutively from 0) each followed by simplex records for that member;
// the ambient complex is derived by the min rule (ambient birth = min of
// the member births).  Malformed lines are rejected with their line number;
// structural violations surface the offending simplex by name.
//
// All JSON reports carry a schema_version and spell out the doubled-units
// convention: every epsilon and distance field is an integer equal to twice
// the half-grid value, so no fractional value ever appears.

#ifndef MVNERVE_IO_HPP
#define MVNERVE_IO_HPP

#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mvnerve/complex.hpp"
#include "mvnerve/matching.hpp"
#include "mvnerve/nerve.hpp"
#include "mvnerve/persistence.hpp"
#include "mvnerve/spectral.hpp"
#include "mvnerve/verify.hpp"

namespace mvnerve {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;
constexpr const char* kUnitsNote =
    "epsilon and distance fields are doubled integers (value 2e encodes e)";

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_number, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_number) + ": " + what),
          line(line_number) {}
};

namespace detail {

inline std::vector<std::string> tokenize(const std::string& raw) {
    std::string line = raw;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream is(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (is >> tok) tokens.push_back(tok);
    return tokens;
}

inline int64_t parse_int(const std::string& tok, int line) {
    size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(line, "expected an integer, got '" + tok + "'");
    }
    if (pos != tok.size()) throw ParseError(line, "expected an integer, got '" + tok + "'");
    return static_cast<int64_t>(v);
}

// A `simplex` record: ascending vertices then the birth.
inline std::pair<Simplex, birth_t> parse_simplex_record(const std::vector<std::string>& tokens,
                                                        int line) {
    if (tokens.size() < 3)
        throw ParseError(line, "simplex record needs at least one vertex and a birth");
    Simplex s;
    for (size_t i = 1; i + 1 < tokens.size(); ++i)
        s.push_back(static_cast<vertex_t>(parse_int(tokens[i], line)));
    for (size_t i = 1; i < s.size(); ++i)
        if (s[i] <= s[i - 1])
            throw ParseError(line, "vertices must be strictly ascending in " + simplex_name(s));
    birth_t b = parse_int(tokens.back(), line);
    return {std::move(s), b};
}

}  // namespace detail

// Same record shape with a real-valued birth, for grid discretization.
inline std::vector<std::pair<Simplex, double>> parse_real_births(std::istream& in) {
    std::vector<std::pair<Simplex, double>> entries;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto tokens = detail::tokenize(raw);
        if (tokens.empty()) continue;
        if (tokens[0] != "simplex")
            throw ParseError(line, "unknown record '" + tokens[0] + "' (expected 'simplex')");
        if (tokens.size() < 3)
            throw ParseError(line, "simplex record needs at least one vertex and a birth");
        Simplex s;
        for (size_t i = 1; i + 1 < tokens.size(); ++i)
            s.push_back(static_cast<vertex_t>(detail::parse_int(tokens[i], line)));
        for (size_t i = 1; i < s.size(); ++i)
            if (s[i] <= s[i - 1])
                throw ParseError(line, "vertices must be strictly ascending in " + simplex_name(s));
        size_t pos = 0;
        double b = 0;
        try {
            b = std::stod(tokens.back(), &pos);
        } catch (const std::exception&) {
            throw ParseError(line, "expected a number, got '" + tokens.back() + "'");
        }
        if (pos != tokens.back().size())
            throw ParseError(line, "expected a number, got '" + tokens.back() + "'");
        entries.emplace_back(std::move(s), b);
    }
    return entries;
}

inline FilteredComplex parse_complex(std::istream& in) {
    std::vector<std::pair<Simplex, birth_t>> entries;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto tokens = detail::tokenize(raw);
        if (tokens.empty()) continue;
        if (tokens[0] != "simplex")
            throw ParseError(line, "unknown record '" + tokens[0] + "' (expected 'simplex')");
        entries.push_back(detail::parse_simplex_record(tokens, line));
    }
    return FilteredComplex::build(entries);
}

// Member complexes of a cover file, without the derived ambient.
inline std::vector<FilteredComplex> parse_cover_members(std::istream& in) {
    std::vector<std::vector<std::pair<Simplex, birth_t>>> sections;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto tokens = detail::tokenize(raw);
        if (tokens.empty()) continue;
        if (tokens[0] == "cover") {
            if (tokens.size() != 2) throw ParseError(line, "cover header needs exactly one index");
            int64_t idx = detail::parse_int(tokens[1], line);
            if (idx != static_cast<int64_t>(sections.size()))
                throw ParseError(line, "cover sections must be numbered consecutively from 0; got " +
                                           tokens[1] + ", expected " +
                                           std::to_string(sections.size()));
            sections.emplace_back();
        } else if (tokens[0] == "simplex") {
            if (sections.empty())
                throw ParseError(line, "simplex record before the first 'cover' header");
            sections.back().push_back(detail::parse_simplex_record(tokens, line));
        } else {
            throw ParseError(line, "unknown record '" + tokens[0] + "' (expected 'cover' or 'simplex')");
        }
    }
    std::vector<FilteredComplex> members;
    members.reserve(sections.size());
    for (const auto& sec : sections) members.push_back(FilteredComplex::build(sec));
    return members;
}

// Cover with ambient derived by the min rule.
inline FilteredCover parse_cover(std::istream& in) {
    std::vector<FilteredComplex> members = parse_cover_members(in);
    std::map<Simplex, birth_t> ambient;
    for (const auto& m : members)
        for (const auto& c : m.cells()) {
            auto it = ambient.find(c.vertices);
            if (it == ambient.end() || it->second > c.birth) ambient[c.vertices] = c.birth;
        }
    if (ambient.empty()) throw std::invalid_argument("cover file has no simplices");
    return FilteredCover(FilteredComplex::from_births(std::move(ambient)), std::move(members));
}

inline FilteredComplex parse_complex_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_complex(in);
}

inline FilteredCover parse_cover_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_cover(in);
}

inline std::vector<FilteredComplex> parse_cover_members_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_cover_members(in);
}

inline std::string serialize(const FilteredComplex& x) {
    std::ostringstream os;
    for (const auto& c : x.cells()) {
        os << "simplex";
        for (vertex_t v : c.vertices) os << " " << v;
        os << " " << c.birth << "\n";
    }
    return os.str();
}

inline std::string serialize(const FilteredCover& cover) {
    std::ostringstream os;
    for (size_t i = 0; i < cover.arity(); ++i) {
        os << "cover " << i << "\n";
        os << serialize(cover.members()[i]);
    }
    return os.str();
}

// ---- report rendering ----

inline json interval_json(const Interval& iv) {
    json j;
    j["birth"] = iv.birth;
    if (iv.essential())
        j["death"] = "inf";
    else
        j["death"] = iv.death;
    return j;
}

inline json barcode_json(const Barcode& bc) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "barcode";
    j["units"] = kUnitsNote;
    j["degrees"] = json::array();
    for (size_t q = 0; q < bc.degrees.size(); ++q) {
        json d;
        d["degree"] = q;
        d["intervals"] = json::array();
        for (const auto& iv : bc.degrees[q]) d["intervals"].push_back(interval_json(iv));
        j["degrees"].push_back(std::move(d));
    }
    return j;
}

inline std::string barcode_text(const Barcode& bc) {
    std::ostringstream os;
    for (size_t q = 0; q < bc.degrees.size(); ++q) {
        os << "degree " << q << ":";
        if (bc.degrees[q].empty()) os << " (none)";
        for (const auto& iv : bc.degrees[q]) {
            os << " [" << iv.birth << ",";
            if (iv.essential())
                os << "inf)";
            else
                os << iv.death << ")";
        }
        os << "\n";
    }
    return os.str();
}

inline json index_set_json(const std::vector<int>& I) {
    json j = json::array();
    for (int i : I) j.push_back(i);
    return j;
}

inline json acyclicity_json(const AcyclicityReport& rep) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "acyclicity";
    j["units"] = kUnitsNote;
    if (rep.eps2 == kInfCost)
        j["epsilon_2e"] = "inf";
    else
        j["epsilon_2e"] = rep.eps2;
    j["acyclic"] = rep.acyclic();
    j["nerve_dim"] = rep.nerve_dim;
    j["ambient_dim"] = rep.ambient_dim;
    j["degree_cap"] = rep.degree_cap();
    j["intersections"] = json::array();
    for (const auto& r : rep.intersections) {
        json e;
        e["index_set"] = index_set_json(r.index_set);
        if (r.eps2 == kInfCost) {
            e["epsilon_2e"] = "inf";
            e["reason"] = r.reason;
        } else {
            e["epsilon_2e"] = r.eps2;
            e["point_birth"] = r.point_birth;
        }
        j["intersections"].push_back(std::move(e));
    }
    return j;
}

inline json degree_verdict_json(const DegreeVerdict& v) {
    json e;
    e["degree"] = v.degree;
    e["distance_2e"] = v.distance2 == kInfCost ? json("inf") : json(v.distance2);
    e["main_bound_2e"] = v.main_bound2 == kInfCost ? json("inf") : json(v.main_bound2);
    e["degree_bound_2e"] = v.degree_bound2 == kInfCost ? json("inf") : json(v.degree_bound2);
    e["easy_bound_2e"] = v.easy_bound2 == kInfCost ? json("inf") : json(v.easy_bound2);
    e["within"] = v.within;
    return e;
}

inline json bound_json(const BoundReport& rep) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "bound_certificate";
    j["units"] = kUnitsNote;
    j["verdict"] = rep.verdict;
    j["epsilon_2e"] = rep.eps2 == kInfCost ? json("inf") : json(rep.eps2);
    j["nerve_dim"] = rep.nerve_dim;
    j["ambient_dim"] = rep.ambient_dim;
    j["degree_cap"] = rep.degree_cap;
    j["degrees"] = json::array();
    for (const auto& v : rep.degrees) j["degrees"].push_back(degree_verdict_json(v));
    j["ambient_barcode"] = barcode_json(rep.ambient_barcode)["degrees"];
    j["nerve_barcode"] = barcode_json(rep.nerve_barcode)["degrees"];
    if (rep.steps.computed) {
        json s;
        s["nerve_vs_first_page_2e"] =
            rep.steps.nerve_vs_page2_2 == kInfCost ? json("inf") : json(rep.steps.nerve_vs_page2_2);
        s["first_page_bound_2e"] =
            rep.steps.page2_bound2 == kInfCost ? json("inf") : json(rep.steps.page2_bound2);
        s["first_vs_stable_page_2e"] =
            rep.steps.page2_vs_stable2 == kInfCost ? json("inf") : json(rep.steps.page2_vs_stable2);
        s["stable_page_bound_2e"] =
            rep.steps.stable_bound2 == kInfCost ? json("inf") : json(rep.steps.stable_bound2);
        s["stable_vs_ambient"] = json::array();
        for (const auto& v : rep.steps.stable_vs_ambient)
            s["stable_vs_ambient"].push_back(degree_verdict_json(v));
        s["pass"] = rep.steps.pass;
        j["stepwise"] = std::move(s);
    }
    return j;
}

inline json page_json(const SpectralPage& page) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "spectral_page";
    j["units"] = kUnitsNote;
    j["r"] = page.r;
    j["no_nonzero_differential"] = page.no_nonzero_differential();
    j["cells"] = json::array();
    for (const auto& [key, cell] : page.cells) {
        if (cell.bars.empty()) continue;
        json c;
        c["p"] = key.first;
        c["q"] = key.second;
        c["intervals"] = json::array();
        for (const auto& iv : cell.bars) c["intervals"].push_back(interval_json(iv));
        j["cells"].push_back(std::move(c));
    }
    return j;
}

// Minimal deterministic SVG rendering: one horizontal line per bar, grouped
// by degree, essential bars running to the right edge.
inline std::string barcode_svg(const Barcode& bc) {
    birth_t lo = 0, hi = 1;
    bool any = false;
    for (const auto& deg : bc.degrees)
        for (const auto& iv : deg) {
            if (!any) {
                lo = iv.birth;
                hi = iv.birth + 1;
                any = true;
            }
            lo = std::min(lo, iv.birth);
            hi = std::max(hi, iv.birth + 1);
            if (!iv.essential()) hi = std::max(hi, iv.death);
        }
    const int width = 640, row = 14, margin = 48;
    int bars = 0;
    for (const auto& deg : bc.degrees) bars += static_cast<int>(deg.size()) + 1;
    int height = margin + row * std::max(1, bars) + margin / 2;
    double span = static_cast<double>(hi - lo);
    auto xpos = [&](birth_t v) {
        return margin + (static_cast<double>(v - lo) / span) * (width - 2 * margin);
    };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    int y = margin;
    char buf[160];
    for (size_t q = 0; q < bc.degrees.size(); ++q) {
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%d\" y=\"%d\" font-family=\"monospace\" font-size=\"11\">degree "
                      "%zu</text>\n",
                      8, y, q);
        os << buf;
        y += row;
        for (const auto& iv : bc.degrees[q]) {
            double x1 = xpos(iv.birth);
            double x2 = iv.essential() ? static_cast<double>(width - margin / 4) : xpos(iv.death);
            std::snprintf(buf, sizeof buf,
                          "<line x1=\"%.1f\" y1=\"%d\" x2=\"%.1f\" y2=\"%d\" stroke=\"%s\" "
                          "stroke-width=\"3\"/>\n",
                          x1, y, x2, y, iv.essential() ? "#c0392b" : "#2c3e50");
            os << buf;
            y += row;
        }
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace mvnerve

#endif
