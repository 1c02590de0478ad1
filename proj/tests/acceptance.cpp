// Acceptance suite driver: one PASS/FAIL line per criterion.
#include <bandedge/errors.hpp>
#include <bandedge/validation.hpp>

#include <CLI11.hpp>

#include <cstdio>

namespace {

bool report(int n) {
    bandedge::ValidationReport r;
    try {
        r = bandedge::run_criterion(n);
    } catch (const std::exception& e) {
        std::printf("criterion %d: FAIL (error: %s)\n", n, e.what());
        return false;
    }
    std::printf("criterion %d: %s (%.3f s)\n", n, r.overall_passed ? "PASS" : "FAIL", r.seconds);
    for (const auto& c : r.cases)
        std::printf("    %-4s %s: %.6g (tol %.3g)\n", c.passed ? "ok" : "FAIL", c.name.c_str(), c.max_abs_deviation, c.tolerance);
    for (const auto& d : r.diagnostics) std::printf("    note %s\n", d.c_str());
    return r.overall_passed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bandedge acceptance suite"};
    int criterion = 0;
    app.add_option("--criterion", criterion, "run a single criterion (1-10); default all")
        ->check(CLI::Range(1, bandedge::criterion_count));
    CLI11_PARSE(app, argc, argv);

    std::setvbuf(stdout, nullptr, _IOLBF, 0);
    bool ok = true;
    if (criterion != 0) {
        ok = report(criterion);
    } else {
        for (int n = 1; n <= bandedge::criterion_count; ++n) ok = report(n) && ok;
    }
    return ok ? 0 : 1;
}
