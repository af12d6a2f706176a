#include "hom/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "hom/covariance.hpp"
#include "hom/error.hpp"
#include "hom/spectra.hpp"

namespace hom {

std::string_view to_string(Strategy s) {
    switch (s) {
        case Strategy::RadiationPressure: return "radiation_pressure";
        case Strategy::DressedCavity: return "dressed_cavity";
        case Strategy::Dopant: return "dopant";
        case Strategy::Interference: return "interference";
    }
    return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
    for (const Strategy s : kAllStrategies) {
        if (to_string(s) == name) return s;
    }
    return std::nullopt;
}

std::string_view to_string(CellStatus s) {
    switch (s) {
        case CellStatus::Cooled: return "cooled";
        case CellStatus::Heated: return "heated";
        case CellStatus::Unstable: return "unstable";
        case CellStatus::Skipped: return "skipped";
    }
    return "unknown";
}

Axis linear_axis(std::string name, double min, double max, std::size_t points) {
    Axis axis{std::move(name), {}};
    axis.values.reserve(points);
    for (std::size_t i = 0; i < points; ++i) {
        const double t = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
        axis.values.push_back(i + 1 == points && points > 1 ? max : min + (max - min) * t);
    }
    return axis;
}

Axis log_axis(std::string name, double min, double max, std::size_t points) {
    if (!(min > 0.0) || !(max > 0.0)) {
        throw Error(ErrorKind::BadRange, "log axis '" + name + "' needs positive bounds");
    }
    Axis axis = linear_axis(std::move(name), std::log(min), std::log(max), points);
    for (std::size_t i = 0; i < axis.values.size(); ++i) {
        axis.values[i] = i + 1 == axis.values.size() && i > 0 ? max : std::exp(axis.values[i]);
    }
    if (!axis.values.empty()) axis.values.front() = min;
    return axis;
}

LinearParams configure(Strategy strategy, const LinearParams& base) {
    LinearParams out = base;
    switch (strategy) {
        case Strategy::RadiationPressure:
            out.lambda = 0.0;
            out.mu = 0.0;
            break;
        case Strategy::DressedCavity:
            out.mu = 0.0;
            break;
        case Strategy::Dopant:
            out.g = 0.0;
            break;
        case Strategy::Interference:
            break;
    }
    return with_effective_coupling(out);
}

SweepCell evaluate_point(const LinearParams& lin, std::vector<double> coords) {
    SweepCell cell;
    cell.coords = std::move(coords);
    cell.point = lin;
    cell.status = CellStatus::Unstable;
    try {
        const DriftMatrix a = drift_matrix(lin);
        if (!dynamical_stability(a).stable) return cell;
        const CovarianceState state = solve_lyapunov(a, diffusion_matrix(lin));
        if (!is_physical(state.v)) {
            cell.failed = true;
            return cell;
        }
        const double n = final_occupation(state);
        cell.n_f = n;
        cell.status = n > lin.nbar ? CellStatus::Heated : CellStatus::Cooled;
    } catch (const Error&) {
        cell.failed = true;
    }
    return cell;
}

SweepResult run_parallel(const SweepPlan& plan, unsigned worker_count) {
    SweepResult result;
    result.axes = plan.axes;
    result.config = plan.config;

    std::size_t total = plan.axes.empty() ? 0 : 1;
    for (const auto& axis : plan.axes) total *= axis.values.size();
    result.cells.resize(total);

    const auto coords_of = [&](std::size_t index) {
        std::vector<double> coords(plan.axes.size());
        for (std::size_t k = plan.axes.size(); k-- > 0;) {
            const auto& values = plan.axes[k].values;
            coords[k] = values[index % values.size()];
            index /= values.size();
        }
        return coords;
    };

    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            const auto coords = coords_of(i);
            result.cells[i] = plan.evaluate(coords);
            result.cells[i].coords = coords;
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(worker_count, static_cast<unsigned>(std::max<std::size_t>(total, 1))));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }

    for (std::size_t i = 0; i < total; ++i) {
        const auto& n = result.cells[i].n_f;
        if (n && (!result.summary.min_n_f || *n < *result.summary.min_n_f)) {
            result.summary.min_n_f = *n;
            result.summary.coords = result.cells[i].coords;
            result.summary.index = i;
        }
    }
    return result;
}

Axis default_line_grid(std::size_t points_per_branch, double guard, double extent) {
    Axis lower = linear_axis("delta_c", -extent, 1.0 - guard, points_per_branch);
    const Axis upper = linear_axis("delta_c", 1.0 + guard, extent, points_per_branch);
    lower.values.insert(lower.values.end(), upper.values.begin(), upper.values.end());
    return lower;
}

SweepResult polariton_line_scan(Strategy strategy, const LinearParams& base, const Axis& dc_grid,
                                unsigned worker_count, double guard) {
    const LinearParams configured = configure(strategy, base);
    SweepPlan plan;
    plan.axes = {Axis{"delta_c", dc_grid.values}};
    plan.config = configured;
    plan.evaluate = [configured, strategy, guard](std::span<const double> c) {
        LinearParams lin = configured;
        lin.delta_c = c[0];
        if (strategy != Strategy::RadiationPressure) {
            const double offset = lin.delta_c - lin.omega_m;
            if (!(std::abs(offset) > guard)) {
                SweepCell skipped;
                skipped.point = lin;
                skipped.status = CellStatus::Skipped;
                return skipped;
            }
            lin.delta_a = lin.omega_m + lin.lambda * lin.lambda / offset;
        }
        return evaluate_point(with_effective_coupling(lin));
    };
    return run_parallel(plan, worker_count);
}

SweepResult detuning_map(const LinearParams& base, const Axis& dc_grid, const Axis& da_grid,
                         unsigned worker_count) {
    SweepPlan plan;
    plan.axes = {Axis{"delta_c", dc_grid.values}, Axis{"delta_a", da_grid.values}};
    plan.config = with_effective_coupling(base);
    plan.evaluate = [base](std::span<const double> c) {
        LinearParams lin = base;
        lin.delta_c = c[0];
        lin.delta_a = c[1];
        return evaluate_point(with_effective_coupling(lin));
    };
    return run_parallel(plan, worker_count);
}

SweepResult resonant_map(const LinearParams& base, double mu_over_lambda, const Axis& lambda_grid,
                         const Axis& g_grid, unsigned worker_count) {
    LinearParams resonant = base;
    resonant.delta_c = 0.0;
    resonant.delta_a = 0.0;
    SweepPlan plan;
    plan.axes = {Axis{"lambda", lambda_grid.values}, Axis{"g", g_grid.values}};
    plan.config = with_effective_coupling(resonant);
    plan.evaluate = [resonant, mu_over_lambda](std::span<const double> c) {
        LinearParams lin = resonant;
        lin.lambda = c[0];
        lin.g = c[1];
        lin.mu = mu_over_lambda * c[0];
        return evaluate_point(with_effective_coupling(lin));
    };
    return run_parallel(plan, worker_count);
}

SweepResult sideband_reference(const LinearParams& base, const Axis& g_grid,
                               unsigned worker_count) {
    LinearParams reference = configure(Strategy::RadiationPressure, base);
    reference.delta_c = reference.omega_m;
    SweepPlan plan;
    plan.axes = {Axis{"g", g_grid.values}};
    plan.config = reference;
    plan.evaluate = [reference](std::span<const double> c) {
        LinearParams lin = reference;
        lin.g = c[0];
        return evaluate_point(with_effective_coupling(lin));
    };
    return run_parallel(plan, worker_count);
}

std::vector<BranchCurve> polariton_branches(const LinearParams& base, const Axis& da_grid,
                                            double guard) {
    BranchCurve upper{"upper", {}};
    BranchCurve lower{"lower", {}};
    for (const double da : da_grid.values) {
        if (!(std::abs(da - base.omega_m) > guard)) continue;
        const double dc = optimal_cavity_detuning(da, base.lambda, base.omega_m, guard);
        (da < base.omega_m ? upper : lower).points.push_back({dc, da});
    }
    return {upper, lower};
}

std::vector<Segment> occupation_contour(const SweepResult& map, double level) {
    std::vector<Segment> segments;
    if (map.axes.size() != 2) return segments;
    const auto& xs = map.axes[0].values;
    const auto& ys = map.axes[1].values;
    const std::size_t nx = xs.size();
    const std::size_t ny = ys.size();
    if (nx < 2 || ny < 2) return segments;

    const auto value = [&](std::size_t i, std::size_t j) -> std::optional<double> {
        return map.cells[i * ny + j].n_f;
    };
    const auto below = [&](std::size_t i, std::size_t j) {
        const auto v = value(i, j);
        return v && *v < level;
    };
    // crossing point on the edge between two grid nodes
    const auto cross = [&](std::size_t i0, std::size_t j0, std::size_t i1, std::size_t j1) {
        const auto v0 = value(i0, j0);
        const auto v1 = value(i1, j1);
        double t = 0.5;
        if (v0 && v1 && *v0 != *v1) t = std::clamp((level - *v0) / (*v1 - *v0), 0.0, 1.0);
        return std::array<double, 2>{xs[i0] + t * (xs[i1] - xs[i0]), ys[j0] + t * (ys[j1] - ys[j0])};
    };

    for (std::size_t i = 0; i + 1 < nx; ++i) {
        for (std::size_t j = 0; j + 1 < ny; ++j) {
            // corners counter-clockwise: (i,j) (i+1,j) (i+1,j+1) (i,j+1)
            const int mask = (below(i, j) ? 1 : 0) | (below(i + 1, j) ? 2 : 0)
                             | (below(i + 1, j + 1) ? 4 : 0) | (below(i, j + 1) ? 8 : 0);
            if (mask == 0 || mask == 15) continue;
            const auto e0 = cross(i, j, i + 1, j);          // bottom
            const auto e1 = cross(i + 1, j, i + 1, j + 1);  // right
            const auto e2 = cross(i, j + 1, i + 1, j + 1);  // top
            const auto e3 = cross(i, j, i, j + 1);          // left
            switch (mask) {
                case 1: case 14: segments.push_back({e3, e0}); break;
                case 2: case 13: segments.push_back({e0, e1}); break;
                case 3: case 12: segments.push_back({e3, e1}); break;
                case 4: case 11: segments.push_back({e1, e2}); break;
                case 6: case 9: segments.push_back({e0, e2}); break;
                case 7: case 8: segments.push_back({e3, e2}); break;
                case 5:
                    segments.push_back({e3, e2});
                    segments.push_back({e0, e1});
                    break;
                case 10:
                    segments.push_back({e3, e0});
                    segments.push_back({e1, e2});
                    break;
                default: break;
            }
        }
    }
    return segments;
}

std::size_t count_below(const SweepResult& result, double level) {
    return static_cast<std::size_t>(std::count_if(result.cells.begin(), result.cells.end(),
        [level](const SweepCell& c) { return c.n_f && *c.n_f < level; }));
}

}  // namespace hom
