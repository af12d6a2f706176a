// experiments.hpp: cooling-strategy configuration and parameter sweeps.

#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hom/model.hpp"

namespace hom {

enum class Strategy { RadiationPressure, DressedCavity, Dopant, Interference };

inline constexpr std::array<Strategy, 4> kAllStrategies{
    Strategy::Interference, Strategy::RadiationPressure, Strategy::DressedCavity,
    Strategy::Dopant};

std::string_view to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);

enum class CellStatus { Cooled, Heated, Unstable, Skipped };

std::string_view to_string(CellStatus s);

struct Axis {
    std::string name;
    std::vector<double> values;
};

Axis linear_axis(std::string name, double min, double max, std::size_t points);
Axis log_axis(std::string name, double min, double max, std::size_t points);

struct SweepCell {
    std::vector<double> coords;  // one value per axis
    LinearParams point{};        // parameters the cell was evaluated at
    std::optional<double> n_f;   // absent when unstable or skipped
    CellStatus status{CellStatus::Skipped};
    bool failed{false};          // numerical failure (reported as unstable)
};

struct SweepSummary {
    std::optional<double> min_n_f;
    std::vector<double> coords;
    std::size_t index{0};
};

struct SweepResult {
    std::vector<Axis> axes;
    std::vector<SweepCell> cells;  // row-major, last axis fastest
    LinearParams config{};
    SweepSummary summary;
};

struct SweepPlan {
    std::vector<Axis> axes;
    LinearParams config{};
    std::function<SweepCell(std::span<const double>)> evaluate;
};

inline constexpr double kLineScanGuard = 1e-3;

/// Zero the couplings absent from a strategy and recompute g_tilde.
LinearParams configure(Strategy strategy, const LinearParams& base);

/// Drift -> stability gate -> Lyapunov -> n_f for a single parameter point.
SweepCell evaluate_point(const LinearParams& lin, std::vector<double> coords = {});

/// Evaluates every cell of the plan on worker_count threads. Output does not
/// depend on worker_count.
SweepResult run_parallel(const SweepPlan& plan, unsigned worker_count);

/// [-120, 1-guard] and [1+guard, 120] (units of omega_m), points per branch.
Axis default_line_grid(std::size_t points_per_branch = 400, double guard = kLineScanGuard,
                       double extent = 120.0);

/// n_f along the polariton sideband relation delta_a = w_m + lambda^2/(delta_c - w_m).
/// Cells within guard of delta_c = w_m are skipped. The radiation-pressure
/// strategy keeps the base dopant detuning.
SweepResult polariton_line_scan(Strategy strategy, const LinearParams& base, const Axis& dc_grid,
                                unsigned worker_count = 1, double guard = kLineScanGuard);

/// n_f over (delta_c, delta_a).
SweepResult detuning_map(const LinearParams& base, const Axis& dc_grid, const Axis& da_grid,
                         unsigned worker_count = 1);

/// n_f over (lambda, g) at delta_c = delta_a = 0 with mu = ratio * lambda.
SweepResult resonant_map(const LinearParams& base, double mu_over_lambda, const Axis& lambda_grid,
                         const Axis& g_grid, unsigned worker_count = 1);

/// Radiation-pressure-only cooling at the red sideband (delta_c = w_m) over g.
SweepResult sideband_reference(const LinearParams& base, const Axis& g_grid,
                               unsigned worker_count = 1);

struct BranchCurve {
    std::string name;                              // "upper" or "lower"
    std::vector<std::array<double, 2>> points;     // (delta_c, delta_a)
};

/// Polariton sideband curves over a dopant-detuning axis: the upper polariton
/// branch for delta_a < w_m, the lower for delta_a > w_m.
std::vector<BranchCurve> polariton_branches(const LinearParams& base, const Axis& da_grid,
                                            double guard = kLineScanGuard);

using Segment = std::array<std::array<double, 2>, 2>;

/// Marching-squares contour of n_f = level on a 2D sweep; missing values count
/// as above the level.
std::vector<Segment> occupation_contour(const SweepResult& map, double level = 1.0);

std::size_t count_below(const SweepResult& result, double level);

}  // namespace hom
