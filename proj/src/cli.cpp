#include "photonmol/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "photonmol/errors.hpp"
#include "photonmol/figures.hpp"
#include "photonmol/json_io.hpp"
#include "photonmol/optimal.hpp"
#include "photonmol/sweep.hpp"

namespace photonmol {

namespace {

double parse_eta(const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "Inf")
        return std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size())
            throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("--eta: expected a number or 'inf', got '" + text + "'");
    }
}

struct PointFlags {
    std::string params_file;
    // applied in declaration order on top of the file (or the defaults)
    std::vector<std::pair<std::string, std::optional<double>>> values{
        {"kappa", {}}, {"kappa_a", {}}, {"kappa_b", {}}, {"j", {}},     {"delta", {}},
        {"delta_a", {}}, {"delta_b", {}}, {"u", {}},     {"u_a", {}},   {"u_b", {}},
        {"eps_a", {}}, {"eps_b", {}},   {"eta", {}},     {"eta_inv", {}}, {"phi_b", {}},
        {"phi_a", {}}, {"phi", {}}};
    std::string solver = "MasterEquation";
    int n_max = 3;
};

SystemParams resolve_point_params(const PointFlags& flags) {
    SystemParams p;
    p.eps_a = 0.01;
    if (!flags.params_file.empty())
        p = load_params(flags.params_file);
    for (const auto& [name, value] : flags.values)
        if (value)
            apply_parameter(p, name, *value);
    return p;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Photon statistics of two coupled, coherently driven Kerr cavity modes", "photonmol"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "Worker threads for grids")->check(CLI::PositiveNumber);

    // point
    PointFlags point;
    auto* point_cmd = app.add_subcommand("point", "Evaluate g2 and <n> at one parameter point (JSON output)");
    point_cmd->add_option("--params", point.params_file, "SystemParams JSON file")->check(CLI::ExistingFile);
    for (auto& [name, value] : point.values) {
        std::string flag = "--" + name;
        std::replace(flag.begin(), flag.end(), '_', '-');
        point_cmd->add_option(flag, value, "Set " + name + " (units of kappa; radians for phases)");
    }
    point_cmd->add_option("--solver", point.solver, "MasterEquation | Hierarchy | FullTruncated");
    point_cmd->add_option("--n-max", point.n_max, "Fock cutoff per mode for the master equation")
        ->check(CLI::NonNegativeNumber);

    // sweep
    std::string sweep_config, sweep_out;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a 2D sweep from a JSON config and write CSV");
    sweep_cmd->add_option("--config", sweep_config, "SweepConfig JSON file")->required()->check(CLI::ExistingFile);
    sweep_cmd->add_option("--out", sweep_out, "Output CSV path")->required();

    // optimize
    double opt_j = 10.0, opt_phi = 0.0, opt_kappa = 1.0, opt_eps_a = 0.01;
    std::string opt_eta = "3", opt_solver = "FullTruncated", opt_method = "numeric";
    auto* opt_cmd = app.add_subcommand("optimize", "Locate the antibunching optimum (delta, U); prints JSON");
    opt_cmd->add_option("--j", opt_j, "Coupling J / kappa");
    opt_cmd->add_option("--eta", opt_eta, "Drive ratio eps_a/eps_b, or 'inf' for a single drive");
    opt_cmd->add_option("--phi", opt_phi, "Relative drive phase phi_a - phi_b (radians)");
    opt_cmd->add_option("--kappa", opt_kappa, "Dissipation rate");
    opt_cmd->add_option("--eps-a", opt_eps_a, "Drive strength on mode A");
    opt_cmd->add_option("--solver", opt_solver, "Objective: FullTruncated | Hierarchy | MasterEquation");
    opt_cmd->add_option("--method", opt_method, "numeric | dual-asymptotic | dual-exact | single-asymptotic")
        ->check(CLI::IsMember({"numeric", "dual-asymptotic", "dual-exact", "single-asymptotic"}));

    // figure
    std::string figure_name, figure_dir = ".";
    std::string figure_solver;
    FigureOptions figure_options;
    auto* fig_cmd = app.add_subcommand("figure", "Regenerate a figure dataset and its plot script");
    fig_cmd->add_option("name", figure_name, "Figure name (fig1a ... fig5b)")->required();
    fig_cmd->add_option("--out-dir", figure_dir, "Output directory");
    fig_cmd->add_option("--resolution", figure_options.resolution, "Points per continuous axis")
        ->check(CLI::Range(2, 100000));
    fig_cmd->add_option("--solver", figure_solver, "Override the recipe's solver");
    fig_cmd->add_option("--n-max", figure_options.n_max, "Fock cutoff per mode")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        if (code != 0 && !dynamic_cast<const CLI::CallForHelp*>(&e))
            err << app.help();
        return code == 0 ? 0 : 1;
    }

    try {
        if (*point_cmd) {
            const SystemParams params = resolve_point_params(point);
            const ResultRow row = run_point(params, parse_solver(point.solver),
                                            HilbertSpec(point.n_max, point.n_max));
            out << nlohmann::json{{"params", params}, {"result", row}}.dump(2) << "\n";
        } else if (*sweep_cmd) {
            const SweepConfig config = load_sweep_config(sweep_config);
            const SweepResult result = run_sweep(config, threads);
            const std::filesystem::path csv_path(sweep_out);
            {
                std::ofstream csv(csv_path, std::ios::binary);
                if (!csv)
                    throw ConfigError("cannot write '" + sweep_out + "'");
                write_csv(csv, result);
            }
            std::filesystem::path meta_path = csv_path;
            meta_path.replace_extension(".meta.json");
            std::ofstream meta(meta_path);
            meta << dataset_metadata(nlohmann::json(config), result.rows.size()).dump(2) << "\n";
            std::size_t failed = 0;
            for (const auto& row : result.rows)
                failed += row.error.empty() ? 0 : 1;
            err << "wrote " << result.rows.size() << " rows (" << failed << " failed) to " << sweep_out << "\n";
        } else if (*opt_cmd) {
            const double eta = parse_eta(opt_eta);
            OptimalPoint p;
            if (opt_method == "numeric") {
                NumericOptimumOptions options;
                options.eps_a = opt_eps_a;
                switch (parse_solver(opt_solver)) {
                    case Solver::Hierarchy: options.solver = ObjectiveSolver::Hierarchy; break;
                    case Solver::FullTruncated: options.solver = ObjectiveSolver::FullTruncated; break;
                    case Solver::MasterEquation: options.solver = ObjectiveSolver::MasterEquation; break;
                }
                p = numeric_optimum(opt_kappa, opt_j, eta, opt_phi, options);
            } else if (opt_method == "dual-asymptotic") {
                p = dual_drive_optimum_asymptotic(opt_kappa, opt_j, eta);
            } else if (opt_method == "dual-exact") {
                p = dual_drive_optimum_exact_phi0(opt_kappa, opt_j, eta);
            } else {
                p = single_drive_optimum(opt_kappa, opt_j);
            }
            out << nlohmann::json(p).dump(2) << "\n";
        } else if (*fig_cmd) {
            figure_options.threads = threads;
            if (!figure_solver.empty())
                figure_options.solver = parse_solver(figure_solver);
            const FigureFiles files = generate_figure(figure_name, figure_dir, figure_options);
            out << nlohmann::json{{"csv", files.csv.string()},
                                  {"metadata", files.metadata.string()},
                                  {"plot_script", files.plot_script.string()},
                                  {"rows", files.rows}}
                       .dump(2)
                << "\n";
        }
    } catch (const SolverError& e) {
        err << "solver error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace photonmol
