#pragma once

#include <bandedge/errors.hpp>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace bandedge::quad {

template <class T>
struct Estimate {
    T value{};
    double error = 0;
};

namespace detail {

inline boost::math::quadrature::tanh_sinh<double>& finite_rule() {
    thread_local boost::math::quadrature::tanh_sinh<double> rule(15);
    return rule;
}

inline boost::math::quadrature::exp_sinh<double>& half_line_rule() {
    thread_local boost::math::quadrature::exp_sinh<double> rule(12);
    return rule;
}

template <class T>
void check(const Estimate<T>& est, double rel_tol, double abs_tol, const std::string& what) {
    const double target = std::max(abs_tol, rel_tol * std::abs(est.value));
    if (!(est.error <= target) || !std::isfinite(std::abs(est.value))) throw QuadratureError(what, est.error);
}

}  // namespace detail

// Double-exponential quadrature on [lo, hi]. Tolerates integrable algebraic
// singularities at either endpoint.
template <class F>
auto integrate(F&& f, double lo, double hi, double rel_tol, double abs_tol, const std::string& what) {
    using T = decltype(f(lo));
    Estimate<T> est;
    double l1 = 0;
    est.value = detail::finite_rule().integrate(f, lo, hi, rel_tol * 0.1, &est.error, &l1);
    detail::check(est, rel_tol, abs_tol, what);
    return est;
}

// ∫_0^∞ f, split at `split` so the finite piece absorbs the endpoint at zero.
template <class F>
auto integrate_half_line(F&& f, double split, double rel_tol, double abs_tol, const std::string& what) {
    using T = decltype(f(split));
    double err_lo = 0, l1_lo = 0, err_hi = 0, l1_hi = 0;
    const T lo = detail::finite_rule().integrate(f, 0.0, split, rel_tol * 0.1, &err_lo, &l1_lo);
    const T hi = detail::half_line_rule().integrate(
        [&](double x) { return f(x + split); }, rel_tol * 0.1, &err_hi, &l1_hi);
    Estimate<T> est;
    est.value = lo + hi;
    est.error = err_lo + err_hi;
    detail::check(est, rel_tol, abs_tol, what);
    return est;
}

}  // namespace bandedge::quad
