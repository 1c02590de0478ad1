#include <bandedge/polyroots.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>

namespace bandedge {

cplx poly_eval(const Polynomial& c, cplx z) {
    cplx acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

cplx poly_derivative_eval(const Polynomial& c, cplx z) {
    cplx acc = 0.0;
    for (std::size_t j = c.size(); j-- > 1;) acc = acc * z + double(j) * c[j];
    return acc;
}

double poly_scale(const Polynomial& c, cplx z) {
    double acc = 0.0;
    const double r = std::abs(z);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + std::abs(*it);
    return acc;
}

std::vector<cplx> polynomial_roots(const Polynomial& c) {
    if (c.size() < 2 || c.back() == 0.0) throw UsageError("polynomial_roots: need degree >= 1 with nonzero leading coefficient");
    const int n = int(c.size()) - 1;
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[i] / c.back();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw RootQualityError("polynomial_roots: eigenvalue iteration failed");

    std::vector<cplx> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    for (cplx& z : roots) {
        for (int it = 0; it < 8; ++it) {
            const cplx d = poly_derivative_eval(c, z);
            if (d == 0.0) break;
            const cplx step = poly_eval(c, z) / d;
            // A step larger than the root itself means Newton is jumping basins.
            if (std::abs(step) > 0.1 * std::max(1.0, std::abs(z))) break;
            z -= step;
            if (std::abs(step) <= 1e-17 * std::abs(z)) break;
        }
    }
    return roots;
}

Polynomial poly_from_roots(const std::vector<cplx>& roots) {
    Polynomial c{1.0};
    for (const cplx& r : roots) {
        Polynomial next(c.size() + 1, 0.0);
        for (std::size_t j = 0; j < c.size(); ++j) {
            next[j + 1] += c[j];
            next[j] -= r * c[j];
        }
        c = std::move(next);
    }
    return c;
}

}  // namespace bandedge
