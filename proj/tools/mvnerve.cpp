// mvnerve: persistent homology of covered filtered complexes.
//
// Subcommands: barcode, nerve, check-cover, spectral, total, verify-bound,
// examples.  Exit codes: 0 success / verdict pass, 1 verdict fail, 2 input
// or usage error.  Output is deterministic for a fixed configuration and
// seed; the only environment override is MVNERVE_OUT_DIR for the output
// directory of `examples --emit`.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "mvnerve/generators.hpp"
#include "mvnerve/io.hpp"

using namespace mvnerve;

namespace {

struct Options {
    coeff_t field = 2;
    std::string format = "json";
    std::optional<int> max_degree;
    std::optional<int> max_card;
    std::optional<double> grid_step;
    uint64_t seed = 1;
};

void emit(const json& j, const std::string& format, const std::string& fallback_text) {
    if (format == "text")
        std::cout << fallback_text;
    else
        std::cout << j.dump(2) << "\n";
}

std::string degree_line(const char* label, int64_t v) {
    std::string s(label);
    if (v == kInfCost) return s + "inf\n";
    return s + std::to_string(v) + "\n";
}

std::string acyclicity_text(const AcyclicityReport& rep) {
    std::ostringstream os;
    os << degree_line("epsilon (2e units): ", rep.eps2);
    os << "nerve dim: " << rep.nerve_dim << "  ambient dim: " << rep.ambient_dim
       << "  degree cap: " << rep.degree_cap() << "\n";
    for (const auto& r : rep.intersections) {
        os << "  I={";
        for (size_t i = 0; i < r.index_set.size(); ++i) os << (i ? "," : "") << r.index_set[i];
        os << "}: ";
        if (r.eps2 == kInfCost)
            os << "epsilon inf (" << r.reason << ")";
        else
            os << "epsilon " << r.eps2 << " point birth " << r.point_birth;
        os << "\n";
    }
    return os.str();
}

std::string bound_text(const BoundReport& rep) {
    std::ostringstream os;
    os << "verdict: " << rep.verdict << "\n";
    os << degree_line("epsilon (2e units): ", rep.eps2);
    os << "nerve dim: " << rep.nerve_dim << "  ambient dim: " << rep.ambient_dim
       << "  degree cap: " << rep.degree_cap << "\n";
    for (const auto& v : rep.degrees) {
        os << "  degree " << v.degree << ": ";
        os << (v.distance2 == kInfCost ? std::string("distance inf")
                                       : "distance " + std::to_string(v.distance2));
        os << (v.main_bound2 == kInfCost ? std::string(" <= bound inf")
                                         : " <= bound " + std::to_string(v.main_bound2));
        os << (v.within ? "  ok" : "  VIOLATED") << "\n";
    }
    return os.str();
}

FilteredCover load_cover(const std::string& cover_path,
                         const std::optional<std::string>& complex_path) {
    if (!complex_path) return parse_cover_file(cover_path);
    FilteredComplex ambient = parse_complex_file(*complex_path);
    return FilteredCover(ambient, parse_cover_members_file(cover_path));
}

std::string out_dir(const std::optional<std::string>& flag) {
    if (const char* env = std::getenv("MVNERVE_OUT_DIR")) return env;
    if (flag) return *flag;
    return ".";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

int run_barcode(const std::string& path, const Options& opt,
                const std::optional<std::string>& svg_path) {
    FilteredComplex x;
    if (opt.grid_step) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open " + path);
        x = discretize(parse_real_births(in), GridMap(*opt.grid_step));
    } else {
        x = parse_complex_file(path);
    }
    Field F(opt.field);
    int top = opt.max_degree.value_or(x.dim());
    Barcode bc = barcode(x, top, F);
    emit(barcode_json(bc), opt.format, barcode_text(bc));
    if (svg_path) write_file(*svg_path, barcode_svg(bc));
    return 0;
}

int run_nerve(const std::string& path, const Options& opt) {
    FilteredCover cover = parse_cover_file(path);
    NerveComplex nv = nerve(cover, opt.max_card);
    Field F(opt.field);
    AcyclicityReport rep = acyclicity(cover, F);
    std::cout << serialize(nv.complex);
    if (opt.format == "text")
        std::cout << acyclicity_text(rep);
    else
        std::cout << acyclicity_json(rep).dump(2) << "\n";
    return 0;
}

int run_check_cover(const std::string& path, const Options& opt, bool require_acyclic) {
    FilteredCover cover = parse_cover_file(path);
    Field F(opt.field);
    AcyclicityReport rep = acyclicity(cover, F);
    emit(acyclicity_json(rep), opt.format, acyclicity_text(rep));
    if (require_acyclic && !rep.acyclic()) return 1;
    return 0;
}

int run_spectral(const std::string& path, const Options& opt, int r, bool stable) {
    FilteredCover cover = parse_cover_file(path);
    Field F(opt.field);
    SpectralSequence ss(DoubleComplex::build(cover), F);
    SpectralPage page = stable ? ss.infinity() : ss.page(r);
    std::ostringstream text;
    text << "page " << page.r << "\n";
    for (const auto& [key, cell] : page.cells) {
        if (cell.bars.empty()) continue;
        text << "  (" << key.first << "," << key.second << "):";
        Barcode one;
        one.at(0) = cell.bars;
        std::string bt = barcode_text(one);
        text << bt.substr(bt.find(':') + 1);
    }
    emit(page_json(page), opt.format, text.str());
    return 0;
}

int run_total(const std::string& path, const Options& opt) {
    FilteredCover cover = parse_cover_file(path);
    Field F(opt.field);
    DoubleComplex dc = DoubleComplex::build(cover);
    int top = opt.max_degree.value_or(cover.ambient().dim());
    Barcode bc = total_barcode(dc, top, F);
    emit(barcode_json(bc), opt.format, barcode_text(bc));
    return 0;
}

int run_verify(const std::string& cover_path, const std::optional<std::string>& complex_path,
               const Options& opt, bool with_pages) {
    FilteredCover cover = load_cover(cover_path, complex_path);
    CertifyOptions copt;
    copt.prime = opt.field;
    copt.with_pages = with_pages;
    BoundReport rep = certify(cover, copt);
    emit(bound_json(rep), opt.format, bound_text(rep));
    return rep.verdict == "fail" ? 1 : 0;
}

int run_examples(const std::string& family, int dim, const Options& opt, bool do_emit,
                 const std::optional<std::string>& dir_flag) {
    std::string stem;
    std::optional<FilteredCover> cover;
    if (family == "sphere") {
        cover = sphere_example(dim);
        stem = "sphere_d" + std::to_string(dim);
    } else if (family == "bipyramid") {
        cover = bipyramid_example(dim);
        stem = "bipyramid_d" + std::to_string(dim);
    } else if (family == "good") {
        std::mt19937_64 rng(opt.seed);
        RandomComplexParams par;
        par.vertices = 6;
        par.max_dim = 2;
        par.max_simplices = 24;
        cover = good_cover_instance(random_complex(rng, par)).cover;
        stem = "good_s" + std::to_string(opt.seed);
    } else if (family == "random") {
        std::mt19937_64 rng(opt.seed);
        RandomComplexParams par;
        par.vertices = 9;
        par.max_simplices = 120;
        FilteredComplex x = random_complex(rng, par);
        cover = random_cover(rng, x, 3);
        stem = "random_s" + std::to_string(opt.seed);
    } else {
        std::cerr << "unknown example family '" << family
                  << "' (expected sphere, bipyramid, good or random)\n";
        return 2;
    }
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "example";
    j["family"] = family;
    j["ambient_simplices"] = cover->ambient().size();
    j["ambient_dim"] = cover->ambient().dim();
    j["members"] = cover->arity();
    if (do_emit) {
        std::string dir = out_dir(dir_flag);
        std::string cplx = dir + "/" + stem + ".cplx";
        std::string cov = dir + "/" + stem + ".cover";
        write_file(cplx, serialize(cover->ambient()));
        write_file(cov, serialize(*cover));
        j["complex_file"] = cplx;
        j["cover_file"] = cov;
    }
    std::ostringstream text;
    text << family << ": " << cover->ambient().size() << " simplices, dim "
         << cover->ambient().dim() << ", " << cover->arity() << " members\n";
    emit(j, opt.format, text.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Persistent homology of covered filtered complexes: barcodes, nerves,\n"
        "double-complex spectral sequences and nerve-distance certification.\n"
        "File grammar: complexes have one 'simplex v0 v1 ... vk birth' per line\n"
        "(ascending vertices, final integer = birth, '#' comments); covers have\n"
        "'cover <i>' headers (consecutive from 0) each followed by simplex lines;\n"
        "ambient births are derived as the min over members. All epsilon and\n"
        "distance values are doubled integers (2e units)."};
    app.require_subcommand(1);
    // Let --field/--format/--seed appear after the subcommand name too.
    app.fallthrough();

    Options opt;
    app.add_option("--field", opt.field, "coefficient field prime (default 2)");
    app.add_option("--format", opt.format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--seed", opt.seed, "seed for randomized example families");

    std::string in_a, in_b;
    std::optional<std::string> svg_path, dir_flag, second_file;
    int page_r = 2;
    bool stable = false, with_pages = false, do_emit = false, require_acyclic = false;
    int ex_dim = 2;
    std::string family;

    CLI::App* c_barcode = app.add_subcommand("barcode", "barcode of a filtered complex file");
    c_barcode->add_option("complex", in_a, "complex file")->required();
    c_barcode->add_option("--degree", opt.max_degree, "top homology degree (default: complex dim)");
    c_barcode->add_option("--grid-step", opt.grid_step,
                          "treat births as reals and floor onto this grid step");
    c_barcode->add_option("--svg", svg_path, "also write an SVG plot to this path");

    CLI::App* c_nerve =
        app.add_subcommand("nerve", "nerve of a cover (complex text) plus acyclicity report");
    c_nerve->add_option("cover", in_a, "cover file")->required();
    c_nerve->add_option("--max-card", opt.max_card, "max index-set cardinality in the nerve");

    CLI::App* c_check = app.add_subcommand("check-cover", "validate a cover and report its quality");
    c_check->add_option("cover", in_a, "cover file")->required();
    c_check->add_flag("--require-acyclic", require_acyclic,
                      "exit 1 unless every intersection is point-like (epsilon = 0)");

    CLI::App* c_spectral = app.add_subcommand("spectral", "cells of a spectral sequence page");
    c_spectral->add_option("cover", in_a, "cover file")->required();
    c_spectral->add_option("--page", page_r, "page index r (default 2)");
    c_spectral->add_flag("--stable", stable, "use the first stable page instead of --page");

    CLI::App* c_total = app.add_subcommand("total", "barcode of the total double complex");
    c_total->add_option("cover", in_a, "cover file")->required();
    c_total->add_option("--degree", opt.max_degree, "top homology degree");

    CLI::App* c_verify =
        app.add_subcommand("verify-bound", "certify the nerve distance bounds for a cover");
    c_verify->add_option("cover", in_a, "cover file (or ambient complex when two files are given)")
        ->required();
    c_verify->add_option("cover2", in_b, "cover file (members only; ambient from first file)");
    c_verify->add_flag("--pages", with_pages, "also measure the page-by-page route");

    CLI::App* c_examples = app.add_subcommand("examples", "built-in instance families");
    c_examples->add_option("family", family, "sphere | bipyramid | good | random")->required();
    c_examples->add_option("--dim", ex_dim, "dimension parameter D (default 2)");
    c_examples->add_flag("--emit", do_emit, "write complex+cover files");
    c_examples->add_option("--out", dir_flag,
                           "output directory (overridden by MVNERVE_OUT_DIR, default .)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*c_barcode) return run_barcode(in_a, opt, svg_path);
        if (*c_nerve) return run_nerve(in_a, opt);
        if (*c_check) return run_check_cover(in_a, opt, require_acyclic);
        if (*c_spectral) return run_spectral(in_a, opt, page_r, stable);
        if (*c_total) return run_total(in_a, opt);
        if (*c_verify) {
            if (!in_b.empty()) return run_verify(in_b, in_a, opt, with_pages);
            return run_verify(in_a, std::nullopt, opt, with_pages);
        }
        if (*c_examples) return run_examples(family, ex_dim, opt, do_emit, dir_flag);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
