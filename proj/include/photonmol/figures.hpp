#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "photonmol/sweep.hpp"

namespace photonmol {

enum class FigureKind {
    Heatmap,      ///< 2D grid, log10 colour map of one column
    Lines,        ///< one curve per axis1 value
    OptimumScan,  ///< numeric optimum vs eta with analytic reference columns
};

/// Frozen parameter bindings for one of the regenerated figures. Unless stated
/// otherwise: kappa = 1, J = 10, eps_a = 0.01, master equation with n_max = 3.
struct FigureRecipe {
    std::string name;
    std::string description;
    FigureKind kind = FigureKind::Heatmap;
    SweepConfig sweep;              ///< Heatmap and Lines
    std::string value_column;       ///< column rendered by the plot script
    std::string optimum_quantity;   ///< OptimumScan: "delta" or "u"
};

struct FigureOptions {
    int resolution = 101;           ///< points per continuous axis
    int threads = 1;
    std::optional<Solver> solver;   ///< overrides the recipe's solver
    int n_max = 3;
};

/// fig1a ... fig5b
const std::vector<std::string>& figure_names();

/// Throws ConfigError listing the valid names when `name` is unknown.
FigureRecipe figure_recipe(std::string_view name, const FigureOptions& options = {});

/// Reference curve drawn over a heatmap, as (x, y) pairs in the heatmap's axes.
struct OverlayCurve {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};
std::optional<OverlayCurve> figure_overlay(const FigureRecipe& recipe);

struct OptimumScanRow {
    double eta = 0.0;
    double numeric = 0.0;
    double dual_drive_reference = 0.0;
    double single_drive_reference = 0.0;
    std::optional<double> g2_min;
    std::string error;
};
std::vector<OptimumScanRow> run_optimum_scan(const FigureRecipe& recipe, int threads);

struct FigureFiles {
    std::filesystem::path csv;
    std::filesystem::path metadata;
    std::filesystem::path plot_script;
    std::optional<std::filesystem::path> overlay;
    std::size_t rows = 0;
};

/// Compute the dataset and write <name>.csv, <name>.meta.json, <name>_plot.py and,
/// for heatmaps with a reference curve, <name>_overlay.csv into `out_dir`.
FigureFiles generate_figure(std::string_view name, const std::filesystem::path& out_dir,
                            const FigureOptions& options = {});

}  // namespace photonmol
