#include "photonmol/figures.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "photonmol/errors.hpp"
#include "photonmol/json_io.hpp"
#include "photonmol/optimal.hpp"
#include "photonmol/parallel.hpp"

namespace photonmol {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kJ = 10.0;
constexpr double kKappa = 1.0;

const char* const kDualDelta = "delta := dual_drive_delta(j, eta)";
const char* const kDualU = "u := dual_drive_u(kappa, j, eta)";
const char* const kSingleDelta = "delta := single_drive_delta(kappa)";
const char* const kSingleU = "u := single_drive_u(kappa, j)";

Axis range_axis(std::string parameter, double min, double max, int count, AxisScale scale = AxisScale::Linear) {
    Axis a;
    a.parameter = std::move(parameter);
    a.min = min;
    a.max = max;
    a.count = count;
    a.scale = scale;
    return a;
}

Axis list_axis(std::string parameter, std::vector<double> values) {
    Axis a;
    a.parameter = std::move(parameter);
    a.min = values.front();
    a.max = values.back();
    a.count = static_cast<int>(values.size());
    a.values = std::move(values);
    return a;
}

SweepConfig base_sweep(const FigureOptions& options, double phi = 0.0) {
    SweepConfig c;
    c.base = SymmetricSetting{kKappa, kJ, 0.0, 0.0, 0.01, 0.0, phi}.to_params();
    c.solver = options.solver.value_or(Solver::MasterEquation);
    c.spec = HilbertSpec(options.n_max, options.n_max);
    return c;
}

void add_constraints(SweepConfig& c, std::initializer_list<const char*> rules) {
    for (const char* r : rules)
        c.constraints.push_back(Constraint::parse(r));
}

std::string_view kind_name(FigureKind kind) {
    switch (kind) {
        case FigureKind::Heatmap: return "heatmap";
        case FigureKind::Lines: return "lines";
        case FigureKind::OptimumScan: return "optimum_scan";
    }
    return "?";
}

nlohmann::json recipe_json(const FigureRecipe& r, const FigureOptions& options) {
    nlohmann::json j{{"figure", r.name},
                     {"description", r.description},
                     {"kind", std::string(kind_name(r.kind))},
                     {"resolution", options.resolution},
                     {"threads", options.threads}};
    if (r.kind == FigureKind::OptimumScan) {
        j["eta_axis"] = r.sweep.axis1;
        j["quantity"] = r.optimum_quantity;
        j["objective"] = std::string(to_string(r.sweep.solver == Solver::Hierarchy ? ObjectiveSolver::Hierarchy
                                                                                  : ObjectiveSolver::FullTruncated));
        j["base"] = r.sweep.base;
    } else {
        j["sweep"] = r.sweep;
        j["value_column"] = r.value_column;
    }
    return j;
}

std::string python_literal(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '\\' || c == '"')
            out += '\\';
        out += c;
    }
    return out + "\"";
}

const char* const kPlotPrelude = R"(#!/usr/bin/env python3
# Generated by photonmol. Renders the dataset next to this script with matplotlib.
import csv
import math
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

HERE = os.path.dirname(os.path.abspath(__file__))


def load(name):
    with open(os.path.join(HERE, name), newline="") as f:
        return list(csv.DictReader(f))


def log10_or_nan(cell):
    if cell in ("", None):
        return math.nan
    v = float(cell)
    return math.log10(v) if v > 0 else math.nan

)";

std::string heatmap_script(const FigureRecipe& r, const std::optional<std::string>& overlay_file) {
    std::ostringstream os;
    os << kPlotPrelude;
    os << "NAME = " << python_literal(r.name) << "\n"
       << "X, Y, VALUE = " << python_literal(r.sweep.axis1.parameter) << ", "
       << python_literal(r.sweep.axis2.parameter) << ", " << python_literal(r.value_column) << "\n"
       << "X_LOG = " << (r.sweep.axis1.scale == AxisScale::Log ? "True" : "False") << "\n"
       << "Y_LOG = " << (r.sweep.axis2.scale == AxisScale::Log ? "True" : "False") << "\n"
       << "OVERLAY = " << (overlay_file ? python_literal(*overlay_file) : std::string("None")) << "\n\n";
    os << R"(rows = load(NAME + ".csv")
xs = sorted({float(r[X]) for r in rows})
ys = sorted({float(r[Y]) for r in rows})
xi = {v: i for i, v in enumerate(xs)}
yi = {v: i for i, v in enumerate(ys)}
grid = np.full((len(ys), len(xs)), np.nan)
for r in rows:
    grid[yi[float(r[Y])], xi[float(r[X])]] = log10_or_nan(r[VALUE])

fig, ax = plt.subplots(figsize=(5, 4))
mesh = ax.pcolormesh(xs, ys, grid, shading="nearest", cmap="jet")
fig.colorbar(mesh, ax=ax, label="log10 " + VALUE)
if OVERLAY:
    ov = load(OVERLAY)
    ax.plot([float(r["x"]) for r in ov], [float(r["y"]) for r in ov], "w--", lw=1.5,
            marker="o" if len(ov) == 1 else None)
ax.set_xlim(xs[0], xs[-1])
ax.set_ylim(ys[0], ys[-1])
if X_LOG:
    ax.set_xscale("log")
if Y_LOG:
    ax.set_yscale("log")
ax.set_xlabel(X)
ax.set_ylabel(Y)
ax.set_title(NAME)
fig.tight_layout()
fig.savefig(os.path.join(HERE, NAME + ".png"), dpi=150)
)";
    return os.str();
}

std::string lines_script(const FigureRecipe& r) {
    std::ostringstream os;
    os << kPlotPrelude;
    os << "NAME = " << python_literal(r.name) << "\n"
       << "SERIES, X, VALUE = " << python_literal(r.sweep.axis1.parameter) << ", "
       << python_literal(r.sweep.axis2.parameter) << ", " << python_literal(r.value_column) << "\n"
       << "X_LOG = " << (r.sweep.axis2.scale == AxisScale::Log ? "True" : "False") << "\n\n";
    os << R"(rows = load(NAME + ".csv")
series = {}
for r in rows:
    series.setdefault(float(r[SERIES]), []).append((float(r[X]), log10_or_nan(r[VALUE])))

fig, ax = plt.subplots(figsize=(5, 4))
for key, points in series.items():
    ax.plot([p[0] for p in points], [p[1] for p in points], label=f"{SERIES} = {key:g}")
if X_LOG:
    ax.set_xscale("log")
ax.set_xlabel(X)
ax.set_ylabel("log10 " + VALUE)
ax.legend()
ax.set_title(NAME)
fig.tight_layout()
fig.savefig(os.path.join(HERE, NAME + ".png"), dpi=150)
)";
    return os.str();
}

std::string optimum_script(const FigureRecipe& r) {
    std::ostringstream os;
    os << kPlotPrelude;
    os << "NAME = " << python_literal(r.name) << "\n"
       << "Q = " << python_literal(r.optimum_quantity) << "\n\n";
    os << R"(rows = [r for r in load(NAME + ".csv") if not r["error"]]
eta = [float(r["eta"]) for r in rows]
fig, ax = plt.subplots(figsize=(5, 4))
ax.plot(eta, [float(r[Q + "_opt_numeric"]) for r in rows], "k-", label="numeric")
ax.plot(eta, [float(r[Q + "_dual_drive"]) for r in rows], "r--", label="dual-drive asymptotic")
ax.plot(eta, [float(r[Q + "_single_drive"]) for r in rows], "b:", label="single-drive asymptotic")
ax.set_xscale("log")
if Q == "u":
    ax.set_yscale("log")
ax.set_xlabel("eta")
ax.set_ylabel(Q + "_opt / kappa")
ax.legend()
ax.set_title(NAME)
fig.tight_layout()
fig.savefig(os.path.join(HERE, NAME + ".png"), dpi=150)
)";
    return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot write '" + path.string() + "'");
    out << text;
}

}  // namespace

const std::vector<std::string>& figure_names() {
    static const std::vector<std::string> names{"fig1a", "fig1b", "fig2a", "fig2b", "fig3a", "fig3b",
                                                "fig4a", "fig4b", "fig4c", "fig4d", "fig5a", "fig5b"};
    return names;
}

FigureRecipe figure_recipe(std::string_view name, const FigureOptions& options) {
    const int n = options.resolution;
    if (n < 2)
        throw ConfigError("figure resolution must be at least 2");
    FigureRecipe r;
    r.name = std::string(name);
    r.value_column = "g2_a";

    if (name == "fig1a") {
        r.description = "g2_a vs (eta, delta) with U from the dual-drive optimum; J=10, phi=0";
        r.sweep = base_sweep(options);
        r.sweep.axis1 = range_axis("eta", 1.2, 20.0, n);
        r.sweep.axis2 = range_axis("delta", 0.0, 5.0, n);
        add_constraints(r.sweep, {kDualU});
    } else if (name == "fig1b") {
        r.description = "g2_a vs (eta, delta) with U from the single-drive optimum; J=10, phi=0";
        r.sweep = base_sweep(options);
        r.sweep.axis1 = range_axis("eta", 1.0, 100.0, n, AxisScale::Log);
        r.sweep.axis2 = range_axis("delta", 0.0, 1.0, n);
        add_constraints(r.sweep, {kSingleU});
    } else if (name == "fig2a") {
        r.description = "g2_a vs (eta, U) with delta from the dual-drive optimum; J=10, phi=0";
        r.sweep = base_sweep(options);
        r.sweep.axis1 = range_axis("eta", 1.2, 20.0, n);
        r.sweep.axis2 = range_axis("u", 1e-3, 1.0, n, AxisScale::Log);
        add_constraints(r.sweep, {kDualDelta});
    } else if (name == "fig2b") {
        r.description = "g2_a vs (eta, U) with delta from the single-drive optimum; J=10, phi=0";
        r.sweep = base_sweep(options);
        r.sweep.axis1 = range_axis("eta", 1.0, 100.0, n, AxisScale::Log);
        r.sweep.axis2 = range_axis("u", 1e-4, 0.1, n, AxisScale::Log);
        add_constraints(r.sweep, {kSingleDelta});
    } else if (name == "fig3a" || name == "fig3b") {
        r.kind = FigureKind::OptimumScan;
        r.optimum_quantity = name == "fig3a" ? "delta" : "u";
        r.description = "numeric optimum of g2_a over (delta, U) vs eta with both asymptotic references; J=10, phi=0";
        r.sweep = base_sweep(options);
        r.sweep.solver = options.solver.value_or(Solver::FullTruncated);
        if (r.sweep.solver == Solver::MasterEquation)
            throw ConfigError(r.name + ": the optimum scan uses an amplitude solver (Hierarchy or FullTruncated)");
        r.sweep.axis1 = range_axis("eta", 1.1, 100.0, n, AxisScale::Log);
        r.sweep.axis2 = r.sweep.axis1;
        r.value_column = r.optimum_quantity + "_opt_numeric";
    } else if (name == "fig4a" || name == "fig4b") {
        const bool dual = name == "fig4a";
        r.description = std::string("g2_a vs (phi, 1/eta) with delta and U from the ") +
                        (dual ? "dual" : "single") + "-drive optimum; J=10";
        r.sweep = base_sweep(options);
        r.sweep.axis1 = range_axis("phi", 0.0, kPi, n);
        r.sweep.axis2 = range_axis("eta_inv", 0.0, 0.2, n);
        if (dual)
            add_constraints(r.sweep, {kDualDelta, kDualU});
        else
            add_constraints(r.sweep, {kSingleDelta, kSingleU});
    } else if (name == "fig4c" || name == "fig4d") {
        const bool dual = name == "fig4c";
        r.kind = FigureKind::Lines;
        r.description = std::string("g2_a vs phi at fixed 1/eta, delta and U from the ") +
                        (dual ? "dual" : "single") + "-drive optimum; J=10";
        r.sweep = base_sweep(options);
        r.sweep.axis1 = list_axis("eta_inv", dual ? std::vector<double>{0.024, 0.16}
                                                  : std::vector<double>{0.058, 0.116});
        r.sweep.axis2 = range_axis("phi", 0.0, kPi, n);
        if (dual)
            add_constraints(r.sweep, {kDualDelta, kDualU});
        else
            add_constraints(r.sweep, {kSingleDelta, kSingleU});
    } else if (name == "fig5a" || name == "fig5b") {
        r.kind = FigureKind::Lines;
        r.value_column = name == "fig5a" ? "g2_a" : "mean_n_a";
        r.description = "g2_a and <n_a> vs 1/eta for J in {10, 20, 50} (chosen values), phi=pi/3, "
                        "delta and U from the single-drive optimum";
        r.sweep = base_sweep(options, kPi / 3.0);
        r.sweep.axis1 = list_axis("j", {10.0, 20.0, 50.0});
        r.sweep.axis2 = range_axis("eta_inv", 1e-3, 0.3, n, AxisScale::Log);
        add_constraints(r.sweep, {kSingleDelta, kSingleU});
    } else {
        std::string valid;
        for (const auto& v : figure_names())
            valid += (valid.empty() ? "" : ", ") + v;
        throw ConfigError("unknown figure '" + std::string(name) + "'; valid names: " + valid);
    }
    return r;
}

std::optional<OverlayCurve> figure_overlay(const FigureRecipe& r) {
    if (r.kind != FigureKind::Heatmap)
        return std::nullopt;
    OverlayCurve c;
    const double kappa = r.sweep.base.kappa_a;
    const double j = r.sweep.base.coupling_j;
    const auto x = r.sweep.axis1.points();
    if (r.name == "fig1a" || r.name == "fig2a") {
        c.label = r.name == "fig1a" ? "dual-drive optimal delta" : "dual-drive optimal U";
        for (double eta : x) {
            const auto p = dual_drive_optimum_asymptotic(kappa, j, eta);
            c.x.push_back(eta);
            c.y.push_back(r.name == "fig1a" ? p.delta_opt : p.u_opt);
        }
    } else if (r.name == "fig1b" || r.name == "fig2b") {
        c.label = r.name == "fig1b" ? "single-drive optimal delta" : "single-drive optimal U";
        const auto p = single_drive_optimum(kappa, j);
        for (double eta : x) {
            c.x.push_back(eta);
            c.y.push_back(r.name == "fig1b" ? p.delta_opt : p.u_opt);
        }
    } else if (r.name == "fig4a") {
        c.label = "bunching phase curve";
        for (double eta_inv : r.sweep.axis2.points()) {
            if (eta_inv <= 0.0)
                continue;
            c.x.push_back(bunching_phase_curve(kappa, j, 1.0 / eta_inv));
            c.y.push_back(eta_inv);
        }
    } else if (r.name == "fig4b") {
        c.label = "one-photon interference zero";
        const auto b = c10_zero_condition(kappa, j, single_drive_optimum(kappa, j).delta_opt);
        c.x.push_back(b.phi_star);
        c.y.push_back(b.eta_inv_star);
    } else {
        return std::nullopt;
    }
    return c;
}

std::vector<OptimumScanRow> run_optimum_scan(const FigureRecipe& r, int threads) {
    const auto etas = r.sweep.axis1.points();
    const double kappa = r.sweep.base.kappa_a;
    const double j = r.sweep.base.coupling_j;
    NumericOptimumOptions options;
    options.solver = r.sweep.solver == Solver::Hierarchy ? ObjectiveSolver::Hierarchy : ObjectiveSolver::FullTruncated;
    options.eps_a = r.sweep.base.eps_a;
    const bool delta = r.optimum_quantity == "delta";
    const auto single = single_drive_optimum(kappa, j);

    std::vector<OptimumScanRow> rows(etas.size());
    parallel_for(etas.size(), threads, [&](std::size_t i) {
        OptimumScanRow row;
        row.eta = etas[i];
        row.single_drive_reference = delta ? single.delta_opt : single.u_opt;
        try {
            const auto ref = dual_drive_optimum_asymptotic(kappa, j, row.eta);
            row.dual_drive_reference = delta ? ref.delta_opt : ref.u_opt;
            const auto p = numeric_optimum(kappa, j, row.eta, 0.0, options);
            row.numeric = delta ? p.delta_opt : p.u_opt;
            row.g2_min = p.g2_min;
        } catch (const Error& e) {
            row.error = e.what();
        }
        rows[i] = std::move(row);
    });
    return rows;
}

FigureFiles generate_figure(std::string_view name, const std::filesystem::path& out_dir,
                            const FigureOptions& options) {
    const FigureRecipe recipe = figure_recipe(name, options);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw ConfigError("cannot create '" + out_dir.string() + "': " + ec.message());

    FigureFiles files;
    files.csv = out_dir / (recipe.name + ".csv");
    files.metadata = out_dir / (recipe.name + ".meta.json");
    files.plot_script = out_dir / (recipe.name + "_plot.py");

    std::ostringstream csv;
    std::string script;
    if (recipe.kind == FigureKind::OptimumScan) {
        const auto rows = run_optimum_scan(recipe, options.threads);
        const std::string q = recipe.optimum_quantity;
        csv << "eta," << q << "_opt_numeric," << q << "_dual_drive," << q << "_single_drive,g2_min,error\r\n";
        for (const auto& row : rows) {
            csv << format_number(row.eta) << ',';
            if (row.error.empty())
                csv << format_number(row.numeric) << ',' << format_number(row.dual_drive_reference) << ',';
            else
                csv << ",,";
            csv << format_number(row.single_drive_reference) << ','
                << (row.g2_min ? format_number(*row.g2_min) : std::string{}) << ',' << csv_escape(row.error)
                << "\r\n";
        }
        files.rows = rows.size();
        script = optimum_script(recipe);
    } else {
        const SweepResult result = run_sweep(recipe.sweep, options.threads);
        write_csv(csv, result);
        files.rows = result.rows.size();
        std::optional<std::string> overlay_name;
        if (const auto overlay = figure_overlay(recipe)) {
            files.overlay = out_dir / (recipe.name + "_overlay.csv");
            overlay_name = recipe.name + "_overlay.csv";
            std::ostringstream ov;
            ov << "x,y,label\r\n";
            for (std::size_t i = 0; i < overlay->x.size(); ++i)
                ov << format_number(overlay->x[i]) << ',' << format_number(overlay->y[i]) << ','
                   << csv_escape(overlay->label) << "\r\n";
            write_text(*files.overlay, ov.str());
        }
        script = recipe.kind == FigureKind::Heatmap ? heatmap_script(recipe, overlay_name) : lines_script(recipe);
    }

    write_text(files.csv, csv.str());
    write_text(files.metadata, dataset_metadata(recipe_json(recipe, options), files.rows).dump(2) + "\n");
    write_text(files.plot_script, script);
    std::filesystem::permissions(files.plot_script, std::filesystem::perms::owner_exec,
                                 std::filesystem::perm_options::add, ec);
    return files;
}

}  // namespace photonmol
