#pragma once

#include <bandedge/decay_curve.hpp>
#include <bandedge/reservoir.hpp>

#include <vector>

namespace bandedge {

struct SeriesControls {
    double abs_tol = 1e-12;
    int max_outer_terms = 400;
    // Largest tolerated |last outer block| / |sum| when max_outer_terms runs out.
    double horizon_guard = 1e-3;
    // Largest tolerated max|term| / |sum| before cancellation eats every digit.
    double cancellation_limit = 1e12;
    // Largest tolerated rounding-error estimate of the returned value.
    double max_error = 1e-7;

    void validate() const;
};

struct SeriesValue {
    cplx value;
    double error = 0;      // rounding plus truncation estimate
    int outer_terms = 0;   // outer index n reached
    double cancellation = 0;  // max|term| / |sum|
};

/// Double series over n >= 0, 0 <= k <= n in powers t^{3n-αk} with Wright
/// kernels in z1 t². Throws HorizonError past the reliable range.
SeriesValue amplitude_series(const ReservoirParams& params, double t, const SeriesControls& controls = {});

/// Pure power series at z1 = 0. Throws UsageError when |z1| > 1e-10 a².
SeriesValue amplitude_series_z1zero(const ReservoirParams& params, double t, const SeriesControls& controls = {});

/// |C|² on the grid. Points past the horizon are dropped and listed in notes.
DecayCurve population_series(const ReservoirParams& params, const std::vector<double>& grid,
                             const SeriesControls& controls = {});

}  // namespace bandedge
