#include <bandedge/decay_curve.hpp>

#include <cmath>

namespace bandedge {

std::string_view method_name(Method m) {
    switch (m) {
        case Method::closed_half: return "closed-half";
        case Method::series: return "series";
        case Method::series_z1zero: return "series-z1zero";
        case Method::volterra: return "volterra";
        case Method::modes: return "modes";
        case Method::rational: return "rational";
        case Method::asymptotic: return "asymptotic";
    }
    return "unknown";
}

void check_grid(const std::vector<double>& grid) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= 0.0) || !std::isfinite(grid[i])) throw UsageError("time grid must be finite and nonnegative");
        if (i > 0 && !(grid[i] > grid[i - 1])) throw UsageError("time grid must be strictly increasing");
    }
}

std::vector<double> linear_grid(double t_max, int points) {
    if (points < 2) throw UsageError("points must be at least 2");
    if (!(t_max > 0.0)) throw UsageError("t-max must be positive");
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i) g[i] = t_max * i / (points - 1);
    g.back() = t_max;
    return g;
}

std::vector<double> log_grid(double t_max, int points) {
    if (points < 2) throw UsageError("points must be at least 2");
    if (!(t_max > 0.0)) throw UsageError("t-max must be positive");
    std::vector<double> g(points, 0.0);
    const double lo = std::log(t_max * 1e-4);
    const double hi = std::log(t_max);
    for (int i = 1; i < points; ++i)
        g[i] = points == 2 ? t_max : std::exp(lo + (hi - lo) * (i - 1) / (points - 2));
    g.back() = t_max;
    return g;
}

DecayCurve resample(const DecayCurve& fine, const std::vector<double>& grid) {
    check_grid(grid);
    const auto& src = fine.samples;
    if (src.empty()) throw UsageError("resample: empty source curve");
    DecayCurve out;
    out.params = fine.params;
    out.notes = fine.notes;
    std::size_t j = 0;
    for (double t : grid) {
        if (t < src.front().t || t > src.back().t * (1 + 1e-12))
            throw UsageError("resample: t outside the computed range");
        while (j + 1 < src.size() && src[j + 1].t < t) ++j;
        if (j + 1 == src.size() || t <= src[j].t) {
            out.push(t, src[j].c, src[j].method);
            continue;
        }
        const double w = (t - src[j].t) / (src[j + 1].t - src[j].t);
        out.push(t, (1.0 - w) * src[j].c + w * src[j + 1].c, src[j].method);
    }
    return out;
}

}  // namespace bandedge
