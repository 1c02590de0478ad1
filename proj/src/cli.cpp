#include <bandedge/cli.hpp>

#include <bandedge/asymptotics.hpp>
#include <bandedge/closed_half.hpp>
#include <bandedge/decay_curve.hpp>
#include <bandedge/oracles.hpp>
#include <bandedge/rational_rep.hpp>
#include <bandedge/series.hpp>
#include <bandedge/validation.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace bandedge::cli {

namespace {

using nlohmann::json;

const std::map<std::string, Command> command_names = {{"decay", Command::decay},
                                                      {"spectrum", Command::spectrum},
                                                      {"timescale", Command::timescale},
                                                      {"critical-n", Command::critical_n},
                                                      {"validate", Command::validate}};
const std::map<std::string, MethodChoice> method_names = {
    {"auto", MethodChoice::automatic}, {"closed-half", MethodChoice::closed_half}, {"series", MethodChoice::series},
    {"volterra", MethodChoice::volterra}, {"modes", MethodChoice::modes},          {"rational", MethodChoice::rational}};
const std::map<std::string, GridKind> grid_names = {{"linear", GridKind::linear}, {"log", GridKind::log}};
const std::map<std::string, OutputFormat> format_names = {{"csv", OutputFormat::csv}, {"json", OutputFormat::json}};

std::string num(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void build_app(CLI::App& app, RunConfig& c) {
    app.add_option("command", c.command, "decay | spectrum | timescale | critical-n | validate")
        ->required()
        ->transform(CLI::CheckedTransformer(command_names, CLI::ignore_case));
    app.add_option("--alpha", c.params.alpha, "spectral exponent in (0,1)")->capture_default_str();
    app.add_option("--A", c.params.bigA, "coupling amplitude A")->capture_default_str();
    app.add_option("--a", c.params.a, "Lorentzian width a")->capture_default_str();
    app.add_option("--omega0", c.params.omega0, "transition frequency (bookkeeping)")->capture_default_str();
    app.add_option("--n-atoms", c.params.n_atoms, "Dicke ensemble size")->capture_default_str();
    app.add_option("--method", c.method, "auto | closed-half | series | volterra | modes | rational")
        ->transform(CLI::CheckedTransformer(method_names, CLI::ignore_case))
        ->default_str("auto");
    app.add_option("--t-max", c.t_max, "final time")->capture_default_str();
    app.add_option("--points", c.points, "number of grid points")->capture_default_str();
    app.add_option("--grid", c.grid_kind, "linear | log")
        ->transform(CLI::CheckedTransformer(grid_names, CLI::ignore_case))
        ->default_str("linear");
    app.add_option("-o,--output", c.output_path, "output file, - for stdout")->capture_default_str();
    app.add_option("--format", c.output_format, "csv | json")
        ->transform(CLI::CheckedTransformer(format_names, CLI::ignore_case))
        ->default_str("csv");
    app.add_option("--dt", c.dt, "oracle time step (default: derived)");
    app.add_option("--modes", c.mode_count, "mode count for --method modes")->capture_default_str();
    app.add_option("--omega-cap", c.omega_cap, "mode grid cutoff (default 2000 a)");
    app.add_option("--omega-max", c.omega_max, "spectrum upper frequency (default omega0 + 10 a)");
    app.set_config("--config", "", "file of key = value lines");
    app.allow_config_extras(CLI::config_extras_mode::error);
}

void check(const RunConfig& c) {
    c.params.validate();
    if (c.command == Command::decay || c.command == Command::spectrum) {
        if (c.points < 2) throw UsageError("--points must be at least 2");
    }
    if (c.command == Command::decay) {
        if (!(c.t_max > 0.0) || !std::isfinite(c.t_max)) throw UsageError("--t-max must be positive");
        if (c.method == MethodChoice::closed_half && c.params.alpha != 0.5)
            throw UsageError("--method closed-half requires alpha = 1/2");
        if (c.method == MethodChoice::rational) {
            const auto ra = RationalAlpha::from_double(c.params.alpha);
            if (!ra) throw UsageError("--method rational requires a rational alpha p/q with q <= 64");
        }
        if (c.dt < 0.0) throw UsageError("--dt must be positive");
        if (c.mode_count < 10) throw UsageError("--modes must be at least 10");
        if (c.omega_cap < 0.0) throw UsageError("--omega-cap must be positive");
    }
    if (c.command == Command::spectrum && c.omega_max < 0.0) throw UsageError("--omega-max must be positive");
}

// Writes to a sibling temporary and renames it over the target.
void emit(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text << std::flush;
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw UsageError("cannot open output file " + path);
        out << text;
        if (!out.flush()) throw UsageError("cannot write output file " + path);
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw UsageError("cannot replace output file " + path);
    }
}

json params_json(const ReservoirParams& p) {
    return {{"alpha", p.alpha}, {"A", p.bigA}, {"a", p.a}, {"omega0", p.omega0}, {"n_atoms", p.n_atoms}};
}

DecayCurve compute_decay(const RunConfig& c, std::string& method_label) {
    const ReservoirParams& p = c.params;
    const std::vector<double> grid = c.grid_kind == GridKind::log ? log_grid(c.t_max, c.points) : linear_grid(c.t_max, c.points);
    MethodChoice m = c.method;
    if (m == MethodChoice::automatic) {
        method_label = "auto";
        return hybrid_population(p, grid);
    }
    switch (m) {
        case MethodChoice::closed_half:
            method_label = "closed-half";
            return population_half(p, grid);
        case MethodChoice::series:
            method_label = "series";
            return population_series(p, grid);
        case MethodChoice::volterra: {
            method_label = "volterra";
            VolterraConfig vc;
            vc.t_max = c.t_max;
            vc.dt = c.dt > 0.0 ? c.dt : std::min(1e-3 / p.a, c.t_max / 1000);
            vc.dt = std::min(vc.dt, c.t_max);
            return resample(volterra_solve(p, vc), grid);
        }
        case MethodChoice::modes: {
            method_label = "modes";
            const double cap = c.omega_cap > 0.0 ? c.omega_cap : 2000.0 * p.a;
            const ModeGrid mg = mode_discretize(p, c.mode_count, cap);
            double max_w = 0.0;
            for (double w : mg.frequencies) max_w = std::max(max_w, std::abs(w));
            const double dt = c.dt > 0.0 ? c.dt : 0.1 / max_w;
            const double steps = std::ceil(c.t_max / dt);
            ModeRun run = mode_evolve(mg, c.t_max, c.t_max / steps);
            if (!mg.warning.empty()) run.curve.notes.push_back(mg.warning);
            run.curve.notes.push_back("max unitarity defect " + num(run.max_unitarity_defect));
            return resample(run.curve, grid);
        }
        case MethodChoice::rational: {
            method_label = "rational";
            const RationalRep rep = build_poly_roots(p, *RationalAlpha::from_double(p.alpha));
            DecayCurve curve;
            curve.params = p;
            for (double t : grid) curve.push(t, amplitude_rational(rep, t).value, Method::rational);
            return curve;
        }
        case MethodChoice::automatic: break;
    }
    throw UsageError("unknown method");
}

std::string decay_output(const RunConfig& c, const DecayCurve& curve, const std::string& label) {
    if (c.output_format == OutputFormat::csv) {
        std::string s = "t,re_c,im_c,p,method\n";
        for (const Sample& x : curve.samples)
            s += num(x.t) + ',' + num(x.c.real()) + ',' + num(x.c.imag()) + ',' + num(x.p) + ',' +
                 std::string(method_name(x.method)) + '\n';
        return s;
    }
    json meta = {{"params", params_json(c.params)}, {"method", label}, {"version", BANDEDGE_VERSION}, {"notes", curve.notes}};
    if (curve.overlap_mismatch) meta["overlap_mismatch"] = *curve.overlap_mismatch;
    json samples = json::array();
    for (const Sample& x : curve.samples)
        samples.push_back(
            {{"t", x.t}, {"re_c", x.c.real()}, {"im_c", x.c.imag()}, {"p", x.p}, {"method", std::string(method_name(x.method))}});
    return json{{"metadata", meta}, {"samples", samples}}.dump(1) + '\n';
}

std::string spectrum_output(const RunConfig& c) {
    const ReservoirParams& p = c.params;
    const double w_max = c.omega_max > 0.0 ? c.omega_max : p.omega0 + 10.0 * p.a;
    std::vector<std::pair<double, double>> rows;
    for (int i = 0; i < c.points; ++i) {
        const double w = i == c.points - 1 ? w_max : w_max * i / (c.points - 1);
        rows.emplace_back(w, spectral_density(p, w));
    }
    if (c.output_format == OutputFormat::csv) {
        std::string s = "omega,j\n";
        for (const auto& [w, j] : rows) s += num(w) + ',' + num(j) + '\n';
        return s;
    }
    const SpectralPeak peak = spectral_peak(p);
    json samples = json::array();
    for (const auto& [w, j] : rows) samples.push_back({{"omega", w}, {"j", j}});
    json meta = {{"params", params_json(p)},
                 {"version", BANDEDGE_VERSION},
                 {"peak", {{"omega", peak.omega_alpha}, {"j", peak.m_alpha}}}};
    return json{{"metadata", meta}, {"samples", samples}}.dump(1) + '\n';
}

std::string timescale_output(const RunConfig& c) {
    std::vector<std::pair<std::string, AsymptoticLaw>> laws;
    if (c.params.alpha == 0.5) laws.emplace_back("roots", law_root_based(c.params));
    laws.emplace_back("constants", law_constant_based(c.params));
    laws.emplace_back("large-n", law_limit(c.params.alpha, c.params.a));
    if (c.output_format == OutputFormat::csv) {
        std::string s = "route,variant,power,zeta,tau,trapped_population\n";
        for (const auto& [route, l] : laws)
            s += route + ',' + std::string(variant_name(l.variant)) + ',' + num(l.power) + ',' + num(l.zeta) + ',' +
                 num(l.tau) + ',' + num(l.trapped_population) + '\n';
        return s;
    }
    json arr = json::array();
    for (const auto& [route, l] : laws)
        arr.push_back({{"route", route},
                       {"variant", std::string(variant_name(l.variant))},
                       {"power", l.power},
                       {"zeta", l.zeta},
                       {"tau", l.tau},
                       {"trapped_population", l.trapped_population}});
    return json{{"metadata", {{"params", params_json(c.params)}, {"version", BANDEDGE_VERSION}}}, {"laws", arr}}.dump(1) +
           '\n';
}

std::string validate_output(const RunConfig& c, const ValidationReport& r) {
    if (c.output_format == OutputFormat::csv) {
        std::string s = "name,max_abs_deviation,tolerance,passed\n";
        for (const ValidationCase& v : r.cases) {
            std::string name = v.name;
            for (char& ch : name)
                if (ch == ',') ch = ';';
            s += name + ',' + num(v.max_abs_deviation) + ',' + num(v.tolerance) + ',' + (v.passed ? "true" : "false") + '\n';
        }
        return s;
    }
    json cases = json::array();
    for (const ValidationCase& v : r.cases)
        cases.push_back({{"name", v.name}, {"max_abs_deviation", v.max_abs_deviation}, {"tolerance", v.tolerance}, {"passed", v.passed}});
    return json{{"cases", cases}, {"overall_passed", r.overall_passed}, {"diagnostics", r.diagnostics}}.dump(1) + '\n';
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
    RunConfig c;
    CLI::App app{"bandedge: excited-state decay near a band edge"};
    build_app(app, c);
    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();  // program name
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        throw;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    check(c);
    return c;
}

int run(const RunConfig& c, std::ostream& log) {
    switch (c.command) {
        case Command::decay: {
            std::string label;
            const DecayCurve curve = compute_decay(c, label);
            for (const std::string& n : curve.notes) log << "warning: " << n << '\n';
            if (curve.overlap_mismatch) log << "overlap mismatch: " << num(*curve.overlap_mismatch) << '\n';
            emit(c.output_path, decay_output(c, curve, label));
            return exit_ok;
        }
        case Command::spectrum:
            emit(c.output_path, spectrum_output(c));
            return exit_ok;
        case Command::timescale:
            emit(c.output_path, timescale_output(c));
            return exit_ok;
        case Command::critical_n: {
            const long n = critical_n(c.params);
            emit(c.output_path, c.output_format == OutputFormat::json ? json{{"critical_n", n}}.dump() + '\n'
                                                                      : std::to_string(n) + '\n');
            return exit_ok;
        }
        case Command::validate: {
            const ValidationReport r = run_acceptance();
            for (const ValidationCase& v : r.cases)
                if (!v.passed) log << "failed: " << v.name << '\n';
            emit(c.output_path, validate_output(c, r));
            return r.overall_passed ? exit_ok : exit_validation;
        }
    }
    return exit_ok;
}

int main_entry(int argc, char** argv) {
    const std::vector<std::string> args(argv, argv + argc);
    RunConfig config;
    try {
        config = parse_config(args);
    } catch (const CLI::CallForHelp&) {
        RunConfig dummy;
        CLI::App app{"bandedge: excited-state decay near a band edge"};
        build_app(app, dummy);
        std::cout << app.help();
        return exit_ok;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    }
    try {
        return run(config, std::cerr);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return exit_numerical;
    }
}

}  // namespace bandedge::cli
