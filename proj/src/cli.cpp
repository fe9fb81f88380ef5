#include "dsinpaint/cli.hpp"

#include "dsinpaint/error.hpp"
#include "dsinpaint/experiments.hpp"
#include "dsinpaint/image_io.hpp"
#include "dsinpaint/morphology.hpp"
#include "dsinpaint/shock_filter.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>

namespace dsinpaint {

namespace {

using json = nlohmann::json;

template <typename T>
json optional_json(const std::optional<T>& v)
{
    return v ? json(*v) : json(nullptr);
}

json flags_json(const RunConfig& c)
{
    return {{"sigma", optional_json(c.sigma)},   {"rho", optional_json(c.rho)},
            {"nu", optional_json(c.nu)},         {"lambda", optional_json(c.lambda)},
            {"delta", optional_json(c.delta)},   {"tau", optional_json(c.tau)},
            {"tol", optional_json(c.tol)},       {"max_iter", optional_json(c.max_iter)},
            {"init", std::string(to_string(c.init))}, {"seed", c.seed}};
}

json params_json(const SolverParams& p, double tau)
{
    return {{"sigma", p.sigma}, {"rho", p.rho},   {"nu", p.nu},   {"lambda", p.lambda},
            {"delta", p.delta}, {"tau", tau},     {"tol", p.tol}, {"max_iter", p.max_iter}};
}

json params_json(const ShockParams& p, double tau)
{
    return {{"sigma", p.sigma}, {"rho", p.rho}, {"delta", p.delta},
            {"tau", tau},       {"tol", p.tol}, {"max_iter", p.max_iter}};
}

json result_json(const EvolutionResult& r, double seconds)
{
    return {{"iterations", r.iterations},
            {"residual", r.last_update},
            {"converged", r.converged},
            {"wall_time_s", seconds}};
}

void write_report(const json& report, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open report '" + path + "' for writing");
    out << report.dump(2) << '\n';
    if (!out)
        throw IoError("failed writing report '" + path + "'");
}

void require(const std::string& value, const std::string& flag, const std::string& command)
{
    if (value.empty())
        throw UsageError("'" + command + "' requires " + flag);
}

void warn_if_unconverged(const EvolutionResult& r, std::ostream& log)
{
    if (!r.converged)
        log << "warning: no steady state after " << r.iterations
            << " iterations (last update " << r.last_update << ")\n";
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void run_inpaint(const RunConfig& c, std::ostream& log)
{
    require(c.input, "--in", c.command);
    require(c.mask, "--mask", c.command);
    require(c.output, "--out", c.command);

    const ImageGrid f = load_image(c.input);
    const MaskGrid mask = load_mask(c.mask, f);
    const SolverParams p = solver_params(c);
    const double tau = resolve_tau(p, f.spacing());
    const ImageGrid u0 = initialise(f, mask, c.init, c.seed);

    const auto start = std::chrono::steady_clock::now();
    const EvolutionResult r = c.command == "baseline"
                                  ? homogeneous_diffusion_inpaint(u0, mask, p)
                                  : ds_inpaint(u0, mask, p);
    const double seconds = seconds_since(start);
    warn_if_unconverged(r, log);
    save_image(r.u, c.output);

    if (!c.report.empty()) {
        json report = {{"command", c.command}, {"input", c.input}, {"mask", c.mask},
                       {"output", c.output},   {"flags", flags_json(c)},
                       {"params", params_json(p, tau)}};
        report.update(result_json(r, seconds));
        write_report(report, c.report);
    }
}

void run_shock(const RunConfig& c, std::ostream& log)
{
    require(c.input, "--in", c.command);
    require(c.output, "--out", c.command);

    const ImageGrid f = load_image(c.input);
    const ShockParams p = shock_params(c);
    const double tau = resolve_tau(p, f.spacing());

    const auto start = std::chrono::steady_clock::now();
    const EvolutionResult r = shock_filter_evolve(f, p);
    const double seconds = seconds_since(start);
    warn_if_unconverged(r, log);
    save_image(r.u, c.output);

    if (!c.report.empty()) {
        json report = {{"command", c.command}, {"input", c.input}, {"output", c.output},
                       {"flags", flags_json(c)}, {"params", params_json(p, tau)}};
        report.update(result_json(r, seconds));
        write_report(report, c.report);
    }
}

void run_experiment_command(const RunConfig& c, std::ostream& log)
{
    require(c.name, "--name", c.command);
    require(c.output, "--out", c.command);

    const auto names = experiment_names();
    if (std::find(names.begin(), names.end(), c.name) == names.end())
        throw UsageError("unknown experiment '" + c.name + "'");
    ExperimentSpec spec = make_experiment(c.name, c.seed);
    spec.params = solver_params(c, spec.params);
    spec.shock = shock_params(c, spec.shock);
    if (c.init != InitMode::keep)
        spec.init = c.init;

    namespace fs = std::filesystem;
    const fs::path dir(c.output);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create output directory '" + c.output + "': " + ec.message());

    const ExperimentOutcome outcome = run_experiment(spec);
    warn_if_unconverged(outcome.result, log);

    save_image(spec.image, (dir / "input.png").string());
    save_mask(spec.mask, (dir / "mask.png").string());
    save_image(outcome.result.u, (dir / "result.png").string());
    if (spec.expected)
        save_image(*spec.expected, (dir / "truth.png").string());

    json report = {{"command", c.command}, {"name", spec.name}, {"output", c.output},
                   {"flags", flags_json(c)}};
    if (spec.kind == ExperimentKind::shock)
        report["params"] = params_json(spec.shock, resolve_tau(spec.shock, spec.image.spacing()));
    else
        report["params"] = params_json(spec.params, resolve_tau(spec.params, spec.image.spacing()));
    report.update(result_json(outcome.result, outcome.wall_seconds));
    report["metrics"] = outcome.metrics;
    write_report(report, c.report.empty() ? (dir / "report.json").string() : c.report);
}

} // namespace

SolverParams solver_params(const RunConfig& c, SolverParams p)
{
    if (c.sigma) p.sigma = *c.sigma;
    if (c.rho) p.rho = *c.rho;
    if (c.nu) p.nu = *c.nu;
    if (c.lambda) p.lambda = *c.lambda;
    if (c.delta) p.delta = *c.delta;
    if (c.tau) p.tau = *c.tau;
    if (c.tol) p.tol = *c.tol;
    if (c.max_iter) p.max_iter = *c.max_iter;
    return p;
}

ShockParams shock_params(const RunConfig& c, ShockParams p)
{
    if (c.sigma) p.sigma = *c.sigma;
    if (c.rho) p.rho = *c.rho;
    if (c.delta) p.delta = *c.delta;
    if (c.tau) p.tau = *c.tau;
    if (c.tol) p.tol = *c.tol;
    if (c.max_iter) p.max_iter = *c.max_iter;
    return p;
}

std::optional<RunConfig> parse_command_line(const std::vector<std::string>& args,
                                            std::ostream& out)
{
    RunConfig c;
    CLI::App app{"Diffusion-shock inpainting of greyscale images"};
    app.set_config("--config", "", "key=value file supplying any option");
    app.require_subcommand(1);
    app.fallthrough();

    std::string init = "keep";
    app.add_option("--in", c.input, "Input image (PGM or PNG)");
    app.add_option("--mask", c.mask, "Mask image, white = known");
    app.add_option("--out", c.output, "Output image, or directory for 'experiment'");
    app.add_option("--report", c.report, "JSON report path");
    app.add_option("--name", c.name, "Experiment name");
    app.add_option("--sigma", c.sigma, "Presmoothing scale of the shock guidance");
    app.add_option("--rho", c.rho, "Structure tensor integration scale");
    app.add_option("--nu", c.nu, "Presmoothing scale of the diffusion weight");
    app.add_option("--lambda", c.lambda, "Charbonnier contrast parameter");
    app.add_option("--delta", c.delta, "Axial/diagonal stencil weight");
    app.add_option("--tau", c.tau, "Time step (default: stability limit)");
    app.add_option("--tol", c.tol, "Steady-state tolerance on the max-norm update");
    app.add_option("--max-iter", c.max_iter, "Iteration cap");
    app.add_option("--init", init, "Initialisation of unknown pixels")
        ->check(CLI::IsMember({"keep", "zero", "mean", "random"}));
    app.add_option("--seed", c.seed, "Seed for random initialisation and generators");

    app.add_subcommand("inpaint", "Diffusion-shock inpainting");
    app.add_subcommand("baseline", "Homogeneous diffusion inpainting");
    app.add_subcommand("shock", "Coherence-enhancing shock filter to steady state");
    app.add_subcommand("experiment", "Generate, solve and score a named test scene")
        ->footer("names: line bars cross dipole1 dipole4 kanizsa sparse");

    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    c.command = app.get_subcommands().front()->get_name();
    c.init = *parse_init_mode(init);
    return c;
}

void run(const RunConfig& config, std::ostream& log)
{
    if (config.command == "inpaint" || config.command == "baseline")
        run_inpaint(config, log);
    else if (config.command == "shock")
        run_shock(config, log);
    else if (config.command == "experiment")
        run_experiment_command(config, log);
    else
        throw UsageError("unknown command '" + config.command + "'");
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    try {
        const auto config = parse_command_line(args, out);
        if (!config)
            return kExitOk;
        run(*config, err);
        return kExitOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

} // namespace dsinpaint
