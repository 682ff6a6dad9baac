// betanum: command-line front end for beta-numeration experiments.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>

#include "betanum/error.hpp"
#include "betanum/periodicity.hpp"

namespace fs = std::filesystem;
using namespace betanum;

namespace {

constexpr int kExitNotPisot = 2;
constexpr int kExitParse = 3;
constexpr int kExitNoAxes = 4;
constexpr int kExitConflict = 5;

struct RunConfig {
    std::vector<std::string> field;
    std::string field_file;
    std::string out = "out";
    double eps = 1e-12;
    int padic_digits = 32;
    int depth = 12;
    int max_depth = 24;
    int workers = 0;
    std::uint64_t seed = 20240601;
    // render
    std::string axes;
    bool two_sided = false;
    int width = 512;
    int height = 512;
    // decide / crosscheck
    std::string x;
    int max_q = 50;
    int samples = 0;
    // commutation
    int words = 1000;
    int left_length = 32;
    // measure
    double resolution = 1.0 / 64;
};

void validate(const RunConfig& c) {
    if (c.eps <= 0 || c.padic_digits <= 0 || c.depth < 0 || c.max_depth <= 0 || c.workers < 0 || c.width <= 0 ||
        c.height <= 0 || c.max_q < 2 || c.samples < 0 || c.words <= 0 || c.left_length <= 0 || c.resolution <= 0)
        throw ParseError("numeric settings must be positive");
    if (c.depth > c.max_depth)
        throw ParseError("depth " + std::to_string(c.depth) + " exceeds the cap " + std::to_string(c.max_depth));
}

PisotField load_field(const RunConfig& c) {
    std::string text;
    for (const auto& tok : c.field) text += (text.empty() ? "" : " ") + tok;
    if (!c.field_file.empty()) {
        std::ifstream in(c.field_file);
        if (!in) throw ParseError("cannot read " + c.field_file);
        text.clear();
        for (std::string line; std::getline(in, line);) {
            const auto p = line.find_first_not_of(" \t\r");
            if (p == std::string::npos || line[p] == '#') continue;
            text = line;
            break;
        }
    }
    if (text.empty()) throw ParseError("no field given (use --field or --field-file)");
    return PisotField::make(parse_descriptor(text));
}

RepresentationSpace make_space(const PisotField& f, const RunConfig& c) {
    PrecisionPolicy pol;
    pol.eps = c.eps;
    pol.padic_digits = c.padic_digits;
    return RepresentationSpace(f, pol);
}

// Writes through a temporary so a failed run leaves no partial file.
void write_output(const RunConfig& c, const std::string& name, const std::string& content) {
    fs::create_directories(c.out);
    const fs::path target = fs::path(c.out) / name;
    const fs::path tmp = fs::path(c.out) / (name + ".tmp");
    {
        std::ofstream os(tmp, std::ios::binary);
        os << content;
        if (!os) throw Error("cannot write " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string matrix_text(const Matrix& m) {
    std::ostringstream os;
    for (const auto& row : m) {
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
        os << '\n';
    }
    return os.str();
}

std::string incidence_block(const PisotField& f, const Substitution& sub) {
    const Matrix m = incidence(sub);
    std::ostringstream os;
    os << "incidence\n" << matrix_text(m);
    os << "char poly " << factorization_string(factor_for_display(char_poly(m), {f.minpoly()})) << '\n';
    os << "Pisot type: " << (is_pisot_type(m) ? "yes" : "no") << '\n';
    return os.str();
}

void check_cloud_size(const SoficAutomaton& aut, int depth) {
    Integer total = 0;
    for (const auto& c : piece_counts(aut, depth)) total += c;
    if (total > 20000000) throw OutOfRange("depth " + std::to_string(depth) + " gives " + total.get_str() + " paths");
}

int cmd_classify(const RunConfig& c) {
    const PisotField f = load_field(c);
    const ParryData p = classify_parry(f);
    std::ostringstream os;
    if (f.integer_base()) {
        os << "simple Parry (integer base " << f.floor_beta() << ")\n";
    } else {
        os << (p.kind == ParryKind::SimpleParry ? "simple Parry" : "non-simple Parry") << ", d_β(1)="
           << p.d_beta_one.to_string() << ", d=" << p.d << '\n';
    }
    os << "d_β(1) " << p.d_beta_one.to_string() << '\n';
    os << "d*_β(1) " << p.d_star.to_string() << '\n';
    os << "n " << p.n << " p " << p.p << " d " << p.d << '\n';
    std::cout << os.str();
    write_output(c, "classify.txt", os.str());
    return 0;
}

int cmd_automaton(const RunConfig& c) {
    const PisotField f = load_field(c);
    const ParryData p = classify_parry(f);
    const SoficAutomaton aut = build_automaton(p);
    write_output(c, "automaton.dot", to_dot(aut, "M"));
    write_output(c, "reversed.dot", to_dot(reverse(aut), "Mrev"));
    std::cout << aut.state_count << " states, " << aut.edges.size() << " edges\n"
              << incidence_block(f, build_substitution(p));
    return 0;
}

int cmd_substitution(const RunConfig& c) {
    const PisotField f = load_field(c);
    const Substitution sub = build_substitution(classify_parry(f));
    const std::string text = sub.to_string() + "\n" + incidence_block(f, sub);
    write_output(c, "substitution.txt", text);
    std::cout << text;
    return 0;
}

int cmd_render(const RunConfig& c) {
    const PisotField f = load_field(c);
    const RepresentationSpace space = make_space(f, c);
    const ParryData p = classify_parry(f);
    const SoficAutomaton aut = build_automaton(p);
    check_cloud_size(aut, c.depth);

    std::vector<Axis> axes;
    if (!c.axes.empty()) {
        std::stringstream ss(c.axes);
        for (std::string tok; std::getline(ss, tok, ',');) axes.push_back(parse_axis(tok));
    } else {
        axes = plottable_axes(space);
        if (axes.size() > 2) axes.resize(2);
    }
    std::vector<double> hv;
    const auto heights = cylinder_heights(p, f);
    for (const auto& h : heights) hv.push_back(static_cast<double>(h.approx()));
    const auto is_height = [](const Axis& a) { return a.kind == AxisKind::Height; };
    if (c.two_sided && std::none_of(axes.begin(), axes.end(), is_height)) {
        if (axes.empty()) throw NoPlottableAxes("no K_beta axis for the two-sided view");
        axes.resize(1);
        axes.push_back({AxisKind::Height, 0});
    }

    const FractalApprox approx = iterate_ifs(space, aut, c.depth);
    const Raster r = render(space, approx, axes, c.width, c.height, hv);
    write_output(c, "render.pgm", r.to_pgm());
    write_output(c, "cloud.txt", cloud_text(space, approx));
    std::size_t n = 0;
    for (const auto& pc : approx.pieces) n += pc.size();
    std::cout << n << " points, " << r.distinct_shades() << " shades\n";
    if (c.two_sided) {
        std::ostringstream os;
        os << std::setprecision(12);
        for (std::size_t i = 0; i < heights.size(); ++i)
            os << "piece " << i + 1 << " height " << heights[i].to_string() << " " << hv[i] << '\n';
        write_output(c, "cylinders.txt", os.str());
        std::cout << os.str();
    }
    return 0;
}

int cmd_decide(const RunConfig& c) {
    const PisotField f = load_field(c);
    if (c.x.empty()) throw ParseError("decide needs --x");
    const FieldElement x = parse_element(f, c.x);
    const CylinderSet cyl = make_cylinders(make_space(f, c), classify_parry(f), c.depth);
    const PeriodicityReport rep = decide(cyl, x);
    if (rep.exact_verdict)
        std::cout << "purely periodic, period " << rep.exact_period;
    else
        std::cout << "not purely periodic";
    std::cout << ", geometric: " << verdict_name(rep.geometric_verdict.verdict) << '\n';
    write_output(c, "decide.txt", report_text({rep}));
    if (rep.agreement == Agreement::CONFLICT) {
        std::cout << "CONFLICT\n";
        return kExitConflict;
    }
    return 0;
}

int cmd_crosscheck(const RunConfig& c) {
    const PisotField f = load_field(c);
    const RepresentationSpace space = make_space(f, c);
    const CylinderSet cyl = make_cylinders(space, classify_parry(f), c.depth);
    std::vector<FieldElement> xs;
    for (int q = 1; q <= c.max_q; ++q)
        for (int p = 0; p < q; ++p)
            if (std::gcd(p, q) == 1) xs.push_back(f.from_rational(Rational(p, q)));
    if (c.samples > 0 && f.degree() > 1) {
        auto extra = sample_elements(f, c.samples, c.seed, SampleKind::NonRational);
        xs.insert(xs.end(), extra.begin(), extra.end());
    }
    const auto reports = cross_check(cyl, xs, c.workers);
    write_output(c, "crosscheck.txt", report_text(reports));
    const auto s = summarize(reports);
    std::cout << s.tested << " tested, " << s.conflicts << " conflicts, " << s.undecided << " undecided, "
              << s.periodic << " purely periodic\n";
    return s.conflicts ? kExitConflict : 0;
}

int cmd_commutation(const RunConfig& c) {
    const PisotField f = load_field(c);
    const RepresentationSpace space = make_space(f, c);
    const ParryData p = classify_parry(f);
    const auto words = sample_two_sided(p, c.words, c.left_length, c.seed);
    const auto points = sample_elements(f, c.words, c.seed + 1);
    const CommutationReport rep = check_commutation(space, p, words, points);
    std::ostringstream os;
    os << std::setprecision(3);
    os << "samples " << rep.samples << "\nexcluded " << rep.excluded << "\nminus_excluded " << rep.minus_excluded
       << "\nprop1 " << rep.prop1 << "\nprop2 " << rep.prop2 << "\nminus " << rep.minus << '\n';
    write_output(c, "commutation.txt", os.str());
    std::cout << os.str();
    return 0;
}

int cmd_measure(const RunConfig& c) {
    const PisotField f = load_field(c);
    const RepresentationSpace space = make_space(f, c);
    const ParryData p = classify_parry(f);
    const SoficAutomaton aut = build_automaton(p);
    check_cloud_size(aut, c.depth);
    const auto m = measure_estimate(space, iterate_ifs(space, aut, c.depth), c.resolution);
    const auto pv = perron_vector(incidence(build_substitution(p)));
    std::ostringstream os;
    os << std::setprecision(6);
    for (std::size_t i = 0; i < m.size(); ++i) os << "piece " << i + 1 << " measure " << m[i] << " perron " << pv[i] << '\n';
    os << "angle " << angle_degrees(m, pv) << '\n';
    write_output(c, "measure.txt", os.str());
    std::cout << os.str();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"beta-numeration for Pisot bases"};
    app.set_config("--config", "", "flat key=value settings file");
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--field", cfg.field, "minimal polynomial coefficients, constant term first")
        ->allow_extra_args(false)
        ->expected(1, 64);
    app.add_option("--field-file", cfg.field_file, "file holding the field descriptor");
    app.add_option("--out", cfg.out, "output directory");
    app.add_option("--eps", cfg.eps, "embedding precision");
    app.add_option("--padic-digits", cfg.padic_digits, "p-adic digit target");
    app.add_option("--depth", cfg.depth, "IFS depth");
    app.add_option("--max-depth", cfg.max_depth, "depth hard cap");
    app.add_option("--workers", cfg.workers, "worker threads (0: all cores)");
    app.add_option("--seed", cfg.seed, "random seed");
    app.add_option("--axes", cfg.axes, "comma-separated axes: re0, im0, p0, h");
    app.add_flag("--two-sided", cfg.two_sided, "draw cylinders over the height axis");
    app.add_option("--width", cfg.width, "raster width");
    app.add_option("--height", cfg.height, "raster height");
    app.add_option("--x", cfg.x, "element: p/q or coefficient form");
    app.add_option("--max-q", cfg.max_q, "largest denominator");
    app.add_option("--samples", cfg.samples, "extra non-rational elements");
    app.add_option("--words", cfg.words, "two-sided words to sample");
    app.add_option("--left-length", cfg.left_length, "left word length");
    app.add_option("--resolution", cfg.resolution, "box size");

    struct Command {
        std::string name;
        std::string help;
        int (*run)(const RunConfig&);
    };
    const std::vector<Command> commands{
        {"classify", "d_beta(1), d*_beta(1) and the Parry type", cmd_classify},
        {"automaton", "automaton and its reversal as dot graphs", cmd_automaton},
        {"substitution", "substitution, incidence matrix, char poly", cmd_substitution},
        {"render", "raster and point cloud of the Rauzy pieces", cmd_render},
        {"decide", "pure periodicity of one element", cmd_decide},
        {"crosscheck", "exact vs geometric verdicts over p/q", cmd_crosscheck},
        {"commutation", "natural extension commutation residuals", cmd_commutation},
        {"measure", "box-count measure against the Perron vector", cmd_measure}};
    for (const auto& c : commands) app.add_subcommand(c.name, c.help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        validate(cfg);
        for (const auto& c : commands)
            if (app.got_subcommand(c.name)) return c.run(cfg);
    } catch (const NotPisot& e) {
        std::cerr << e.what() << '\n';
        return kExitNotPisot;
    } catch (const ParseError& e) {
        std::cerr << e.what() << '\n';
        return kExitParse;
    } catch (const NoPlottableAxes& e) {
        std::cerr << e.what() << '\n';
        return kExitNoAxes;
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
    return 1;
}
