#pragma once

#include <bandedge/reservoir.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bandedge {

enum class Method { closed_half, series, series_z1zero, volterra, modes, rational, asymptotic };

std::string_view method_name(Method m);

struct Sample {
    double t = 0;
    cplx c;
    double p = 0;
    Method method = Method::closed_half;
};

struct DecayCurve {
    ReservoirParams params;
    std::vector<Sample> samples;
    // Free-form diagnostics: skipped points, overlap mismatches, solver warnings.
    std::vector<std::string> notes;
    std::optional<double> overlap_mismatch;

    void push(double t, cplx c, Method m) { samples.push_back({t, c, std::norm(c), m}); }
};

/// Throws UsageError unless the grid is nonnegative and strictly increasing.
void check_grid(const std::vector<double>& grid);

std::vector<double> linear_grid(double t_max, int points);
/// Log-spaced points with a leading t = 0; the first positive point is t_max·1e-4.
std::vector<double> log_grid(double t_max, int points);

/// Linear interpolation of C from a fine uniform-step curve onto grid; p is recomputed as |C|².
/// Throws UsageError if the grid leaves the fine curve's range.
DecayCurve resample(const DecayCurve& fine, const std::vector<double>& grid);

}  // namespace bandedge
