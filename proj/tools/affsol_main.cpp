// affsol: classify, synthesize, evolve, and verify affine self-similar
// solutions of the affine curve shortening flow.
//
// Exit codes: 0 ok, 1 usage/parse/runtime error, 2 boundary-ambiguous
// classification, 3 verification failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "affsol/affsol.hpp"
#include "affsol/json_io.hpp"

namespace {

using namespace affsol;

std::vector<double> parse_numbers(const std::string& csv, std::size_t expected,
                                  const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        std::size_t used = 0;
        out.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw CLI::ValidationError(what, "bad number: " + cell);
    }
    if (expected != 0 && out.size() != expected)
        throw CLI::ValidationError(what, "expected " + std::to_string(expected) +
                                             " comma-separated numbers");
    return out;
}

SolitonData parse_data(const std::string& b_csv, const std::string& c_csv) {
    const auto b = parse_numbers(b_csv, 4, "--b");
    const auto c = parse_numbers(c_csv, 2, "--c");
    SolitonData d{Mat2{b[0], b[1], b[2], b[3]}, Vec2{c[0], c[1]}};
    if (!d.finite()) throw CLI::ValidationError("--b/--c", "non-finite entries");
    return d;
}

Window parse_window(const std::string& s) {
    const auto sep = s.find(':');
    if (sep == std::string::npos)
        throw CLI::ValidationError("--window", "expected lo:hi");
    return {std::stod(s.substr(0, sep)), std::stod(s.substr(sep + 1))};
}

std::optional<FamilyVariant> parse_variant(const std::string& name) {
    for (int v = 0; v <= static_cast<int>(FamilyVariant::separatrix_graph); ++v) {
        const auto variant = static_cast<FamilyVariant>(v);
        if (name == family_variant_name(variant)) return variant;
    }
    return std::nullopt;
}

void emit(const nlohmann::json& j, const std::string& out_path) {
    const std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (!out_path.empty()) {
        std::ofstream os(out_path);
        if (!os) throw Error("cannot open for writing: " + out_path);
        os << text;
    }
}

Window default_window(CaseTag tag, FamilyVariant v) {
    switch (v) {
        case FamilyVariant::hyperbola_pos:
        case FamilyVariant::hyperbola_neg: return {0.5, 3.0};
        case FamilyVariant::convex_min:
        case FamilyVariant::concave_max: return {0.0, 3.0};
        case FamilyVariant::inflection_inc:
        case FamilyVariant::inflection_dec: return {-3.0, 3.0};
        case FamilyVariant::phase_graph:
            return tag == CaseTag::deg_1e ? Window{0.0, 40.0} : Window{-2.0, 2.0};
        case FamilyVariant::separatrix_graph: return {-20.0, 2.0};
        default: return {-2.0, 2.0};
    }
}

int cmd_classify(const std::string& b_csv, const std::string& c_csv, double tol,
                 const std::string& out_path) {
    ClassifyOptions opt;
    opt.tol = tol;
    const ClassificationReport rep = classify(parse_data(b_csv, c_csv), opt);
    emit(to_json(rep), out_path);
    return rep.boundary() ? 2 : 0;
}

int cmd_synthesize(const std::string& case_name, const std::string& variant_name,
                   double c1, double c2, double c, const std::string& window_str,
                   std::size_t samples, const std::string& out_path,
                   const std::string& svg_path) {
    const auto tag = parse_case_tag(case_name);
    if (!tag) throw CLI::ValidationError("--case", "unknown case " + case_name);
    const auto variant = parse_variant(variant_name);
    if (!variant)
        throw CLI::ValidationError("--variant", "unknown variant " + variant_name);

    CurveFamily fam{*tag, *variant, c1, c2, c,
                    window_str.empty() ? default_window(*tag, *variant)
                                       : parse_window(window_str),
                    samples};
    const DiscreteCurve curve = synthesize(fam);
    write_curve_csv(out_path, curve);
    if (!svg_path.empty()) {
        std::ofstream os(svg_path);
        if (!os) throw Error("cannot open for writing: " + svg_path);
        os << svg_curve(curve);
    }

    const SolitonData data = canonical_form({*tag, std::nullopt});
    const ResidualReport rep = soliton_residual(curve, data);
    nlohmann::json j;
    j["case"] = case_name;
    j["variant"] = variant_name;
    j["samples"] = curve.size();
    j["residual_sup"] = rep.sup_norm;
    j["tolerance"] = family_tolerance(fam);
    if (*variant == FamilyVariant::periodic) j["period"] = period_1d(c1);
    if (curve.seam) j["seam_index"] = *curve.seam;
    std::cout << j.dump(2) << "\n";
    return rep.sup_norm < family_tolerance(fam) ? 0 : 3;
}

int cmd_evolve(const std::string& b_csv, const std::string& c_csv,
               const std::string& times_csv, const std::string& out_path) {
    const SolitonData data = parse_data(b_csv, c_csv);
    const auto times = parse_numbers(times_csv, 0, "--times");
    const SolitonAction action = make_action(data);
    std::ostringstream rows;
    write_evolve_header(rows);
    for (const double t : times)
        write_evolve_row(rows, t, action_matrix(action, t),
                         action_translation(action, t));
    std::cout << rows.str();
    if (!out_path.empty()) {
        std::ofstream os(out_path);
        if (!os) throw Error("cannot open for writing: " + out_path);
        os << rows.str();
    }
    return 0;
}

int cmd_portrait(const std::string& system_name, const std::string& seeds_csv,
                 const std::string& circle_str, double span, const std::string& out_path,
                 const std::string& csv_path) {
    PhaseSystemTag sys;
    if (system_name == "1c")
        sys = PhaseSystemTag::sys_1c;
    else if (system_name == "1e")
        sys = PhaseSystemTag::sys_1e;
    else if (system_name == "1c-wv")
        sys = PhaseSystemTag::sys_1c_wv;
    else
        throw CLI::ValidationError("--system", "expected 1c, 1e or 1c-wv");

    std::vector<Vec2> seeds;
    if (!seeds_csv.empty()) {
        std::stringstream ss(seeds_csv);
        std::string pair;
        while (std::getline(ss, pair, ';')) {
            const auto uv = parse_numbers(pair, 2, "--seeds");
            seeds.push_back({uv[0], uv[1]});
        }
    }
    if (!circle_str.empty()) {
        const auto nr = parse_numbers(circle_str, 2, "--circle");
        const int n = static_cast<int>(nr[0]);
        for (int i = 0; i < n; ++i) {
            const double angle = 2.0 * std::numbers::pi * i / n;
            seeds.push_back({nr[1] * std::cos(angle), nr[1] * std::sin(angle)});
        }
    }

    std::vector<TrajectorySegment> trajectories;
    StopCondition stop;
    stop.max_span = span;
    stop.max_radius = 40.0;
    for (const Vec2 seed : seeds)
        trajectories.push_back(integrate(sys, seed, +1, stop));

    std::ofstream os(out_path);
    if (!os) throw Error("cannot open for writing: " + out_path);
    os << svg_portrait(trajectories, seeds.empty() ? 1.0 : 0.0);
    if (!csv_path.empty()) {
        std::ofstream cs(csv_path);
        if (!cs) throw Error("cannot open for writing: " + csv_path);
        write_portrait_csv(cs, trajectories);
    }
    return 0;
}

int cmd_verify(const std::string& curve_path, const std::string& b_csv,
               const std::string& c_csv, const std::string& flow_csv, double threshold,
               const std::string& out_path) {
    const DiscreteCurve curve = read_curve_csv(curve_path);
    const SolitonData data = parse_data(b_csv, c_csv);
    ResidualReport rep;
    if (flow_csv.empty()) {
        rep = soliton_residual(curve, data);
    } else {
        const auto times = parse_numbers(flow_csv, 0, "--flow");
        rep = flow_residual(curve, data, times);
    }
    emit(to_json(rep), out_path);
    return rep.sup_norm < threshold ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "affine self-similar solutions of the affine curve shortening flow: "
        "classification, synthesis, evolution, verification"};
    app.require_subcommand(1);

    std::string b_csv, c_csv, out_path, svg_path, csv_path;
    std::string case_name, variant_name, window_str, times_csv;
    std::string system_name = "1e", seeds_csv, circle_str, flow_csv, curve_path;
    double tol = 1e-9, c1 = 0.0, c2 = 0.0, c = 0.0;
    double span = 60.0, threshold = 1e-4;
    std::size_t samples = 1024;

    auto* cls = app.add_subcommand("classify", "classify a soliton datum (B, C)");
    cls->add_option("--b", b_csv, "matrix B, row-major a11,a12,a21,a22")->required();
    cls->add_option("--c", c_csv, "vector C as cx,cy")->required();
    cls->add_option("--tol", tol, "relative decision tolerance");
    cls->add_option("--out", out_path, "also write the JSON report here");

    auto* syn = app.add_subcommand("synthesize", "sample a solution family as CSV");
    syn->add_option("--case", case_name, "case tag, e.g. 1-d")->required();
    syn->add_option("--variant", variant_name,
                    "family variant, e.g. parabola, periodic, scooper")
        ->required();
    syn->add_option("--c1", c1, "first family constant");
    syn->add_option("--c2", c2, "second family constant");
    syn->add_option("--const", c, "single constant of one-constant variants");
    syn->add_option("--window", window_str, "parameter window lo:hi");
    syn->add_option("--samples", samples, "sample budget");
    syn->add_option("--out", out_path, "output curve CSV path")->required();
    syn->add_option("--svg", svg_path, "optional SVG plot path");

    auto* evo = app.add_subcommand("evolve", "tabulate the self-similar action");
    evo->add_option("--b", b_csv, "matrix B, row-major")->required();
    evo->add_option("--c", c_csv, "vector C")->required();
    evo->add_option("--times", times_csv, "comma-separated times in [0, t_max)")
        ->required();
    evo->add_option("--out", out_path, "also write the CSV here");

    auto* por = app.add_subcommand("portrait", "render a phase portrait SVG");
    por->add_option("--system", system_name, "1c, 1e or 1c-wv");
    por->add_option("--seeds", seeds_csv, "initial states u,v;u,v;...");
    por->add_option("--circle", circle_str, "n,r: n seeds on a circle of radius r");
    por->add_option("--span", span, "x-span per trajectory");
    por->add_option("--out", out_path, "output SVG path")->required();
    por->add_option("--csv", csv_path, "optional portrait CSV path");

    auto* ver = app.add_subcommand("verify", "residuals of a curve against (B, C)");
    ver->add_option("--curve", curve_path, "curve CSV path")->required();
    ver->add_option("--b", b_csv, "matrix B, row-major")->required();
    ver->add_option("--c", c_csv, "vector C")->required();
    ver->add_option("--flow", flow_csv, "flow-residual time grid t1,t2,...");
    ver->add_option("--threshold", threshold, "pass/fail residual threshold");
    ver->add_option("--out", out_path, "also write the JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (cls->parsed()) return cmd_classify(b_csv, c_csv, tol, out_path);
        if (syn->parsed())
            return cmd_synthesize(case_name, variant_name, c1, c2, c, window_str,
                                  samples, out_path, svg_path);
        if (evo->parsed()) return cmd_evolve(b_csv, c_csv, times_csv, out_path);
        if (por->parsed())
            return cmd_portrait(system_name, seeds_csv, circle_str, span, out_path,
                                csv_path);
        if (ver->parsed())
            return cmd_verify(curve_path, b_csv, c_csv, flow_csv, threshold, out_path);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
