#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include "wmlab/specfun.hpp"

namespace wmlab {

struct ConvergenceError : std::runtime_error {
    double best_estimate;
    ConvergenceError(const std::string& what, double best)
        : std::runtime_error(what), best_estimate(best) {}
};

struct QuadSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-13;
    int max_subdivisions = 4000;
    int oscillatory_blocks = 64; // zeros-of-weight partition length
    bool throw_on_failure = true;

    void validate() const {
        if (rel_tol <= 0.0 || abs_tol <= 0.0)
            throw std::invalid_argument("QuadSpec: tolerances must be positive");
        if (oscillatory_blocks < 8)
            throw std::invalid_argument("QuadSpec: oscillatory_blocks must be >= 8");
    }
};

using Fn1 = std::function<double(double)>;

// Adaptive Gauss-Kronrod on a finite interval.
SpecFunResult integrate(const Fn1& f, double a, double b, const QuadSpec& spec = {});

// Same, with a graded substitution x = a + (b-a) u^grade toward a singular
// left/right endpoint (grade >= 1; use 3 for log or weak algebraic
// singularities).
SpecFunResult integrate_graded_left(const Fn1& f, double a, double b, double grade,
                                    const QuadSpec& spec = {});

enum class OscWeight { SinOmegaX, BesselJ1OmegaX };

// Semi-infinite integral of f(x) * weight(omega x) from a, partitioned at the
// zeros of the weight and accelerated with Wynn's epsilon algorithm.
SpecFunResult integrate_oscillatory(const Fn1& f, OscWeight weight, double omega, double a,
                                    const QuadSpec& spec = {});

// Semi-infinite integral of g(x) dx from a where g decays; geometric blocks,
// no oscillation weight. Used for absolutely convergent tails.
SpecFunResult integrate_to_infinity(const Fn1& g, double a, const QuadSpec& spec = {});

// Order-1 Hankel transform int_0^inf J1(r xi) f(r) r dr.
SpecFunResult hankel1(const Fn1& f, double xi, const QuadSpec& spec = {});

// int_0^inf f(t) sin(t xi) dt.
SpecFunResult sine_transform(const Fn1& f, double xi, const QuadSpec& spec = {});

} // namespace wmlab
