#pragma once

#include <stdexcept>

#include "wmlab/jet.hpp"

namespace wmlab {

// Value plus an estimate of the absolute error committed by the evaluator.
struct SpecFunResult {
    double value = 0.0;
    double est_abs_err = 0.0;
};

// Bessel functions of the first kind
double bessel_j0(double x);
double bessel_j1(double x);

// Modified Bessel functions
double bessel_i0(double x);
double bessel_i1(double x);
double bessel_k0(double x);
double bessel_k1(double x);
double bessel_k2(double x);

// Dispatch used by the CLI / bindings. kind is one of 'J','I','K'.
double bessel(char kind, int order, double x);

// k-th positive zero of J1 (k = 1, 2, ...)
double bessel_j1_zero(int k);

// Dilogarithm on (-inf, 1] and trilogarithm on (-inf, 0]
double dilog(double x);
double trilog(double x);

double zeta3();

// Jet-composed special functions. These propagate exact Taylor coefficients
// through the composition f(x(t)).
template <int N>
Jet<N> li2(const Jet<N>& x) {
    if (x.c[0] >= 1.0) throw std::domain_error("li2 jet argument must be < 1");
    // Li2'(x) = -log(1-x)/x; near x=0 use the series of the derivative instead
    Jet<N> g;
    if (std::abs(x.c[0]) < 1e-8) {
        // -log(1-x)/x = 1 + x/2 + x^2/3 + ...
        Jet<N> xp = Jet<N>::constant(1.0);
        for (int m = 0; m <= N; ++m) {
            g += xp * (1.0 / (m + 1));
            xp = xp * x;
        }
    } else {
        g = -log(1.0 - x) / x;
    }
    return jet_detail::integrate_chain(dilog(x.c[0]), g, x);
}

template <int N>
void bessel_k01(const Jet<N>& x, Jet<N>& k0j, Jet<N>& k1j) {
    if (x.c[0] <= 0.0) throw std::domain_error("bessel_k01 jet needs positive value");
    k0j = Jet<N>{};
    k1j = Jet<N>{};
    k0j.c[0] = bessel_k0(x.c[0]);
    k1j.c[0] = bessel_k1(x.c[0]);
    Jet<N> d = x.derivative_jet();
    Jet<N> q; // running z/x with z = k1j
    for (int k = 0; k < N; ++k) {
        double s = k1j.c[k];
        for (int j = 1; j <= k; ++j) s -= x.c[j] * q.c[k - j];
        q.c[k] = s / x.c[0];
        double a0 = 0.0, a1 = 0.0;
        for (int j = 0; j <= k; ++j) {
            a0 += k1j.c[j] * d.c[k - j];
            a1 += (k0j.c[j] + q.c[j]) * d.c[k - j];
        }
        k0j.c[k + 1] = -a0 / (k + 1);
        k1j.c[k + 1] = -a1 / (k + 1);
    }
}

template <int N>
void bessel_i01(const Jet<N>& x, Jet<N>& i0j, Jet<N>& i1j) {
    if (x.c[0] < 0.0) throw std::domain_error("bessel_i01 jet needs nonnegative value");
    i0j = Jet<N>{};
    i1j = Jet<N>{};
    i0j.c[0] = bessel_i0(x.c[0]);
    i1j.c[0] = bessel_i1(x.c[0]);
    Jet<N> d = x.derivative_jet();
    Jet<N> q;
    for (int k = 0; k < N; ++k) {
        double s = i1j.c[k];
        for (int j = 1; j <= k; ++j) s -= x.c[j] * q.c[k - j];
        q.c[k] = s / x.c[0];
        double a0 = 0.0, a1 = 0.0;
        for (int j = 0; j <= k; ++j) {
            a0 += i1j.c[j] * d.c[k - j];
            a1 += (i0j.c[j] - q.c[j]) * d.c[k - j];
        }
        i0j.c[k + 1] = a0 / (k + 1);
        i1j.c[k + 1] = a1 / (k + 1);
    }
}

} // namespace wmlab
