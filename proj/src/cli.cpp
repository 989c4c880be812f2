#include "youngwave/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "youngwave/direct.hpp"
#include "youngwave/errors.hpp"
#include "youngwave/field_io.hpp"
#include "youngwave/noise.hpp"
#include "youngwave/sigma.hpp"
#include "youngwave/solver.hpp"
#include "youngwave/young.hpp"

namespace youngwave {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct NonConvergence : Error {
    using Error::Error;
};
struct CrossCheckFailure : Error {
    using Error::Error;
};

json fit_json(const RegressionFit& f) {
    return {{"status", to_string(f.status)}, {"slope", f.slope},         {"intercept", f.intercept},
            {"r2", f.r2},                    {"pointsUsed", f.pointsUsed}, {"zerosDropped", f.zerosDropped},
            {"scales", f.scales},            {"magnitudes", f.magnitudes}};
}

json seminorm_json(const HolderSeminorms& s) {
    return {{"rect", s.rect}, {"dir1", s.dir1}, {"dir2", s.dir2}, {"sup", s.sup}, {"total", s.total}};
}

// Flags absent from the command line are filled from the JSON config: keys
// at the top level apply to every command, an object under the command's
// name overrides them. A manifest written by an earlier run is accepted too.
std::vector<std::string> merge_config(const std::vector<std::string>& args) {
    std::string path, command;
    for (std::size_t k = 1; k < args.size(); ++k) {
        if (args[k] == "--config" && k + 1 < args.size()) path = args[k + 1];
        if (args[k].rfind("--config=", 0) == 0) path = args[k].substr(9);
        if (command.empty() && !args[k].empty() && args[k][0] != '-' && (k == 1 || args[k - 1].rfind("--", 0) != 0))
            command = args[k];
    }
    if (path.empty()) return args;
    std::ifstream is(path);
    if (!is) throw ParameterError("cannot read config " + path);
    json cfg;
    try {
        cfg = json::parse(is);
    } catch (const json::exception& e) {
        throw ParameterError("malformed config " + path + ": " + e.what());
    }
    if (!cfg.is_object()) throw ParameterError("config must be a JSON object");
    if (cfg.contains("command") && cfg.contains("config")) cfg = cfg["config"];

    json flat = json::object();
    for (auto it = cfg.begin(); it != cfg.end(); ++it)
        if (!it.value().is_object()) flat[it.key()] = it.value();
    if (cfg.contains(command) && cfg[command].is_object())
        for (auto it = cfg[command].begin(); it != cfg[command].end(); ++it) flat[it.key()] = it.value();

    std::vector<std::string> out = args;
    for (auto it = flat.begin(); it != flat.end(); ++it) {
        const std::string flag = "--" + it.key();
        bool present = false;
        for (const auto& a : args) present = present || a == flag || a.rfind(flag + "=", 0) == 0;
        if (present || it.key() == "config") continue;
        const json& v = it.value();
        if (v.is_boolean()) {
            if (v.get<bool>()) out.push_back(flag);
        } else if (v.is_string()) {
            out.push_back(flag);
            out.push_back(v.get<std::string>());
        } else if (v.is_number()) {
            out.push_back(flag);
            out.push_back(v.dump());
        } else {
            throw ParameterError("config value for '" + it.key() + "' must be a scalar");
        }
    }
    return out;
}

json resolved_options(const CLI::App* sub) {
    json j = json::object();
    for (const CLI::Option* opt : sub->get_options()) {
        const std::string name = opt->get_lnames().empty() ? "" : opt->get_lnames().front();
        if (name.empty() || name == "help" || name == "config" || name == "out-dir") continue;
        if (opt->get_type_size() == 0) {
            j[name] = opt->count() > 0;
        } else if (opt->count() > 0) {
            j[name] = opt->results().back();
        } else if (!opt->get_default_str().empty()) {
            j[name] = opt->get_default_str();
        }
    }
    return j;
}

class Run {
public:
    Run(std::string command, std::string outDir) : command_(std::move(command)), outDir_(std::move(outDir)) {}

    std::string path(const std::string& p) const {
        fs::path q(p);
        if (q.is_relative() && !outDir_.empty()) q = fs::path(outDir_) / q;
        if (q.has_parent_path()) fs::create_directories(q.parent_path());
        return q.string();
    }
    void artifact(const std::string& p) { artifacts_.push_back(p); }
    void field(const std::string& p, const GridField& f, const json& meta) {
        write_field_csv(p, f, meta);
        artifact(p);
        artifact(sidecar_path(p));
    }
    void report(const std::string& p, const json& j) {
        write_json(p, j);
        artifact(p);
    }
    void manifest(const std::string& primary, const json& config) const {
        json arts = json::object();
        for (const auto& a : artifacts_) arts[fs::path(a).filename().string()] = sha256_file(a);
        fs::path m(primary);
        m.replace_extension(".manifest.json");
        write_json(m.string(), {{"command", command_}, {"config", config}, {"artifacts", arts}});
    }

private:
    std::string command_, outDir_;
    std::vector<std::string> artifacts_;
};

struct SampleArgs {
    double h = 0.75, nu = 0.5, t = 0.5, window = 0.0;
    std::string frame = "rotated", out = "noise.csv";
    int grid = 48, cap = kDefaultRotatedCap;
    std::uint64_t seed = 42, replicate = 0;
};

void cmd_sample_noise(const SampleArgs& a, Run& run, const json& config) {
    NoiseSpec spec{a.h, a.nu, a.t, a.seed};
    spec.validate();
    if (a.grid < 1) throw ParameterError("grid must be positive");
    json params = {{"H", a.h}, {"nu", a.nu}, {"T", a.t}, {"frame", a.frame}, {"cap", a.cap}, {"replicate", a.replicate}};
    const std::string out = run.path(a.out);
    if (a.frame == "rotated") {
        const RotatedSampler rs(a.h, a.nu, a.t, a.grid, a.cap);
        params["jitter"] = rs.jitter();
        run.field(out, rs.sample(a.seed, a.replicate), {{"seed", a.seed}, {"params", params}});
    } else if (a.frame == "original") {
        const double w = a.window > 0.0 ? a.window : a.t;
        const int nt = static_cast<int>(std::lround(2.0 * w / (a.t / a.grid)));
        if (nt < 2 || nt % 2 != 0) throw ParameterError("spatial window must be a whole, even number of time cells");
        const OriginalSample s = sample_original_field(spec, Rectangle(0.0, a.t, -w, w), a.grid, nt, a.replicate);
        params["jitter"] = s.jitter;
        params["window"] = w;
        run.field(out, s.field, {{"seed", a.seed}, {"params", params}});
    } else {
        throw ParameterError("frame must be 'rotated' or 'original'");
    }
    run.manifest(out, config);
}

struct SolveArgs {
    std::string noise, sigma = "sin", scheme = "marching", out = "solution.csv", pullback;
    double h = 0.75, nu = 0.5, t = 0.5, sigmaA = 1.0, sigmaB = 0.0, tol = 1e-8, kappa = 0.55, kappaHat = 0.55;
    int grid = 48, maxIter = 30, cap = kDefaultRotatedCap;
    std::uint64_t seed = 42;
    bool noFallback = false;
};

void cmd_solve(const SolveArgs& a, Run& run, const json& config, std::ostream& out) {
    GridField x = GridField::zeros(Rectangle(0, 1, 0, 1), 1, 1);
    double T = a.t;
    if (!a.noise.empty()) {
        x = read_field_csv(a.noise);
        const json side = read_sidecar(a.noise);
        T = side.contains("params") && side["params"].contains("T") ? side["params"]["T"].get<double>()
                                                                     : x.domain().s2() * std::sqrt(2.0);
    } else {
        NoiseSpec{a.h, a.nu, a.t, a.seed}.validate();
        x = RotatedSampler(a.h, a.nu, a.t, a.grid, a.cap).sample(a.seed);
    }
    SolverConfig cfg;
    cfg.T = T;
    cfg.n = x.ns();
    cfg.kappa = a.kappa;
    cfg.kappaHat = a.kappaHat;
    cfg.picardTol = a.tol;
    cfg.picardMaxIter = a.maxIter;
    cfg.fallback = !a.noFallback;
    if (a.scheme == "marching")
        cfg.scheme = Scheme::Marching;
    else if (a.scheme == "picard")
        cfg.scheme = Scheme::Picard;
    else
        throw ParameterError("scheme must be 'marching' or 'picard'");

    const SigmaFn sig = sigma_by_name(a.sigma, a.sigmaA, a.sigmaB);
    const SolveResult r = solve(x, sig, cfg);

    json cross = nullptr;
    if (sig.id == "constant") {
        double worst = 0.0, scale = 1.0;
        for (int i = 0; i <= cfg.n; ++i)
            for (int j = 0; j <= cfg.n; ++j) {
                const double ref = a.sigmaA * snapped_cone_sum(x, i, j);
                worst = std::max(worst, std::abs(r.yRotated(i, j) - ref));
                scale = std::max(scale, std::abs(ref));
            }
        cross = {{"maxDeviation", worst}, {"passed", worst <= 1e-10 * scale}};
    }

    const std::string sol = run.path(a.out);
    run.field(sol, r.yRotated, {{"seed", a.seed}, {"params", {{"T", T}, {"frame", "rotated"}, {"sigma", a.sigma}}}});
    if (!a.pullback.empty()) {
        const std::string pb = run.path(a.pullback);
        std::FILE* fp = std::fopen(pb.c_str(), "w");
        if (!fp) throw Error("cannot write " + pb);
        std::fputs("time,space,value\n", fp);
        for (const auto& v : r.yOriginal) std::fprintf(fp, "%.17g,%.17g,%.17g\n", v.time, v.space, v.value);
        std::fclose(fp);
        run.artifact(pb);
    }
    fs::path diag(sol);
    diag.replace_extension(".diagnostics.json");
    const json report = {{"scheme", a.scheme},
                         {"iterations", r.iterations},
                         {"residual", r.residual},
                         {"converged", r.converged},
                         {"fallbackUsed", r.fallbackUsed},
                         {"bands", r.bands},
                         {"seminorms", seminorm_json(r.seminorms)},
                         {"crossCheck", cross}};
    run.report(diag.string(), report);
    run.manifest(sol, config);
    out << report.dump(2) << '\n';
    if (!cross.is_null() && !cross["passed"].get<bool>())
        throw CrossCheckFailure("marching solution differs from the snapped cone sums");
    if (!r.converged) throw NonConvergence("Picard iteration did not converge, fallback included");
}

struct HolderArgs {
    std::string in, filter = "none", out = "holder.json";
    int levels = 5, maxLag = 0;
    double gamma = 0.5, gammaHat = 0.5;
};

void cmd_holder(const HolderArgs& a, Run& run, const json& config, std::ostream& out) {
    const GridField f = read_field_csv(a.in);
    SquareFilter accept;
    if (a.filter == "antidiagonal") {
        if (f.ns() != f.nt()) throw ParameterError("anti-diagonal filter needs a square grid");
        accept = above_antidiagonal(f.ns());
    } else if (a.filter != "none") {
        throw ParameterError("filter must be 'none' or 'antidiagonal'");
    }
    const RegressionFit sum = rect_exponent_sum_estimate(f, a.levels, accept);
    const auto [fs1, fs2] = anisotropic_exponent_estimate(f, a.levels, accept);
    const int lag = a.maxLag > 0 ? a.maxLag : std::min({f.ns(), f.nt(), 32});
    const HolderSeminorms sn = holder_seminorms(f, HolderExponents::rectangular(a.gamma, a.gammaHat), lag);
    const json report = {{"exponentSum", fit_json(sum)},
                         {"anisotropic", {fit_json(fs1), fit_json(fs2)}},
                         {"seminorms", seminorm_json(sn)},
                         {"maxLag", lag}};
    const std::string p = run.path(a.out);
    run.report(p, report);
    run.manifest(p, config);
    out << report.dump(2) << '\n';
}

struct ConvergenceArgs {
    std::string levels = "4:9", pair = "poly", y, x, out = "convergence.json";
    double ex = 0.9, ey = 0.9;
};

std::pair<GridField, GridField> builtin_pair(const std::string& name, int n) {
    const Rectangle d(0.0, 1.0, 0.0, 1.0);
    if (name == "poly")
        return {GridField(d, n, n, [](double u, double v) { return 1.0 + u * v * v; }),
                GridField(d, n, n, [](double u, double v) { return u * u * v + u * v; })};
    if (name == "trig")
        return {GridField(d, n, n, [](double u, double v) { return std::cos(2.0 * u) * std::sin(3.0 * v) + 0.5; }),
                GridField(d, n, n, [](double u, double v) { return std::sin(u) * std::sin(2.0 * v); })};
    throw ParameterError("pair must be 'poly' or 'trig'");
}

void cmd_convergence(const ConvergenceArgs& a, Run& run, const json& config, std::ostream& out) {
    const auto colon = a.levels.find(':');
    if (colon == std::string::npos) throw ParameterError("levels must look like lo:hi");
    int lo = 0, hi = 0;
    try {
        lo = std::stoi(a.levels.substr(0, colon));
        hi = std::stoi(a.levels.substr(colon + 1));
    } catch (const std::exception&) {
        throw ParameterError("levels must look like lo:hi");
    }
    if (lo < 1 || hi <= lo || hi > 14) throw ParameterError("levels need 1 <= lo < hi <= 14");
    std::pair<GridField, GridField> yx = (!a.y.empty() || !a.x.empty())
                                             ? std::pair<GridField, GridField>{read_field_csv(a.y), read_field_csv(a.x)}
                                             : builtin_pair(a.pair, 1 << hi);
    const HolderExponents ex = HolderExponents::uniform(a.ex), ey = HolderExponents::uniform(a.ey);
    const RegressionFit fit = convergence_order(yx.first, yx.second, ex, ey, hi - lo + 1);
    YoungOptions opts;
    opts.levels = hi - lo + 1;
    opts.certificate = false;
    const YoungResult r = young_integral_2d(yx.first, yx.second, ex, ey, opts);
    json lv = json::array();
    for (const auto& l : r.levels) lv.push_back({{"mesh", l.mesh}, {"sum", l.sum}});
    const json report = {{"order", fit.slope}, {"fit", fit_json(fit)}, {"value", r.value}, {"levels", lv}};
    const std::string p = run.path(a.out);
    run.report(p, report);
    run.manifest(p, config);
    out << report.dump(2) << '\n';
}

struct CompareArgs {
    double h = 0.85, nu = 0.3, t = 0.5;
    int seeds = 30, n = 64, ratio = 4, levels = 4, jobs = 1;
    std::uint64_t seed = 42;
    std::string out = "direct_compare.json";
};

void cmd_direct_compare(const CompareArgs& a, Run& run, const json& config, std::ostream& out) {
    ComparisonParams p;
    p.noise = {a.h, a.nu, a.t, a.seed};
    p.seeds = a.seeds;
    p.n = a.n;
    p.ratio = a.ratio;
    p.levels = a.levels;
    p.jobs = a.jobs;
    const ComparisonReport rep = regularity_comparison(p);
    json regs = json::array();
    std::vector<std::uint64_t> seeds;
    for (const auto& s : rep.perSeed) {
        seeds.push_back(s.seed);
        regs.push_back({{"seed", s.seed},
                        {"rotated", fit_json(s.rotated)},
                        {"direct", fit_json(s.direct)},
                        {"gapDecay", fit_json(s.gapDecay)}});
    }
    const json report = {{"rotatedExponentSum", rep.rotatedExponentSum},
                         {"directExponentSum", rep.directExponentSum},
                         {"gap", rep.gap},
                         {"gapDecaySlope", rep.gapDecaySlope},
                         {"seeds", seeds},
                         {"regressions", regs}};
    const std::string path = run.path(a.out);
    run.report(path, report);
    run.manifest(path, config);
    json brief = report;
    brief.erase("regressions");
    out << brief.dump(2) << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rotated-frame solver for the stochastic wave equation driven by fractional noise"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    app.fallthrough();
    app.option_defaults()->always_capture_default();
    std::string configPath;
    const char* envDir = std::getenv(kOutDirEnv);
    std::string outDir = envDir ? envDir : "";
    app.add_option("--config", configPath, "JSON config; command-line flags take precedence");
    app.add_option("--out-dir", outDir, std::string("Directory for relative output paths (default $") + kOutDirEnv + ")");

    SampleArgs sa;
    auto* sample = app.add_subcommand("sample-noise", "Sample the noise field");
    sample->add_option("--h", sa.h, "Hurst index in (1/2,1)");
    sample->add_option("--nu", sa.nu, "Riesz exponent in (0,1)");
    sample->add_option("--frame", sa.frame, "rotated | original");
    sample->add_option("--grid", sa.grid, "Intervals per axis (rotated) or time cells (original)");
    sample->add_option("--t", sa.t, "Time horizon T");
    sample->add_option("--seed", sa.seed, "Random seed");
    sample->add_option("--replicate", sa.replicate, "Replicate index within the seed");
    sample->add_option("--cap", sa.cap, "Largest rotated grid for the dense sampler");
    sample->add_option("--window", sa.window, "Spatial half-width of the original frame (default T)");
    sample->add_option("--out", sa.out, "Output CSV");

    SolveArgs so;
    auto* solveCmd = app.add_subcommand("solve", "Solve the rotated equation");
    solveCmd->add_option("--noise", so.noise, "Rotated noise CSV (sampled inline when absent)");
    solveCmd->add_option("--h", so.h, "Hurst index for inline noise");
    solveCmd->add_option("--nu", so.nu, "Riesz exponent for inline noise");
    solveCmd->add_option("--grid", so.grid, "Intervals per axis for inline noise");
    solveCmd->add_option("--t", so.t, "Time horizon for inline noise");
    solveCmd->add_option("--seed", so.seed, "Seed for inline noise");
    solveCmd->add_option("--cap", so.cap, "Largest rotated grid for the dense sampler");
    solveCmd->add_option("--sigma", so.sigma, "affine | sin | tanh | bump | constant");
    solveCmd->add_option("--sigma-a", so.sigmaA, "Slope (affine) or value (constant)");
    solveCmd->add_option("--sigma-b", so.sigmaB, "Intercept (affine)");
    solveCmd->add_option("--scheme", so.scheme, "marching | picard");
    solveCmd->add_option("--tol", so.tol, "Picard tolerance");
    solveCmd->add_option("--max-iter", so.maxIter, "Picard iteration cap");
    solveCmd->add_option("--kappa", so.kappa, "Solution exponent in s");
    solveCmd->add_option("--kappa-hat", so.kappaHat, "Solution exponent in t");
    solveCmd->add_flag("--no-fallback", so.noFallback, "Disable the banded fallback");
    solveCmd->add_option("--out", so.out, "Solution CSV (rotated frame)");
    solveCmd->add_option("--pullback", so.pullback, "Optional CSV of the solution at original-frame nodes");

    HolderArgs ha;
    auto* holder = app.add_subcommand("holder", "Exponent and semi-norm report for a field");
    holder->add_option("--in", ha.in, "Field CSV")->required();
    holder->add_option("--levels", ha.levels, "Dyadic probe scales");
    holder->add_option("--filter", ha.filter, "none | antidiagonal");
    holder->add_option("--gamma", ha.gamma, "Semi-norm exponent in s");
    holder->add_option("--gamma-hat", ha.gammaHat, "Semi-norm exponent in t");
    holder->add_option("--max-lag", ha.maxLag, "Semi-norm lag cap (default min(ns, nt, 32))");
    holder->add_option("--out", ha.out, "Report JSON");

    ConvergenceArgs ca;
    auto* conv = app.add_subcommand("convergence", "Convergence order of the two-parameter integral");
    conv->add_option("--levels", ca.levels, "lo:hi, meshes 2^-lo .. 2^-hi");
    conv->add_option("--pair", ca.pair, "Built-in pair: poly | trig");
    conv->add_option("--y", ca.y, "Integrand CSV (instead of a built-in pair)");
    conv->add_option("--x", ca.x, "Integrator CSV (instead of a built-in pair)");
    conv->add_option("--ex", ca.ex, "Exponent of the integrator");
    conv->add_option("--ey", ca.ey, "Exponent of the integrand");
    conv->add_option("--out", ca.out, "Report JSON");

    CompareArgs da;
    auto* cmp = app.add_subcommand("direct-compare", "Rotated versus direct integral regularity");
    cmp->add_option("--h", da.h, "Hurst index");
    cmp->add_option("--nu", da.nu, "Riesz exponent");
    cmp->add_option("--t", da.t, "Time horizon");
    cmp->add_option("--seeds", da.seeds, "Number of seeds");
    cmp->add_option("--seed", da.seed, "First seed");
    cmp->add_option("--n", da.n, "Rotated intervals per axis");
    cmp->add_option("--ratio", da.ratio, "Fine original cells per rotated cell");
    cmp->add_option("--levels", da.levels, "Dyadic probe scales");
    cmp->add_option("--jobs", da.jobs, "Worker threads across seeds");
    cmp->add_option("--out", da.out, "Report JSON");

    try {
        std::vector<std::string> args(argv, argv + argc);
        args = merge_config(args);
        std::vector<const char*> cargs;
        for (const auto& s : args) cargs.push_back(s.c_str());
        try {
            app.parse(static_cast<int>(cargs.size()), cargs.data());
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e, out, err);
            return code == 0 ? kExitOk : kExitBadParams;
        }
        CLI::App* sub = app.get_subcommands().front();
        const json config = resolved_options(sub);
        Run run(sub->get_name(), outDir);
        if (sub == sample)
            cmd_sample_noise(sa, run, config);
        else if (sub == solveCmd)
            cmd_solve(so, run, config, out);
        else if (sub == holder)
            cmd_holder(ha, run, config, out);
        else if (sub == conv)
            cmd_convergence(ca, run, config, out);
        else
            cmd_direct_compare(da, run, config, out);
        return kExitOk;
    } catch (const NonConvergence& e) {
        err << "error: " << e.what() << '\n';
        return kExitNonConvergence;
    } catch (const CrossCheckFailure& e) {
        err << "error: " << e.what() << '\n';
        return kExitCrossCheck;
    } catch (const SizeError& e) {
        err << "error: " << e.what() << '\n';
        return kExitSizeCap;
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadParams;
    } catch (const ContractError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadParams;
    } catch (const AlignmentError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadParams;
    } catch (const GeometryError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadParams;
    } catch (const StatisticsError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadParams;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace youngwave
