#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace wmlab {

// Truncated Taylor series ("jet") arithmetic. A Jet<N> stores the Taylor
// coefficients c[k] = f^(k)(t0)/k! of a scalar function about a point, and
// elementary operations propagate them exactly (up to roundoff). This is how
// every closed-form time derivative in the library is evaluated: no finite
// differences are involved.
template <int N>
struct Jet {
    static_assert(N >= 1);
    std::array<double, N + 1> c{};

    Jet() = default;
    explicit Jet(double v) { c[0] = v; }

    static Jet constant(double v) { return Jet(v); }
    static Jet variable(double v) {
        Jet j(v);
        j.c[1] = 1.0;
        return j;
    }

    double value() const { return c[0]; }
    // k-th derivative (not Taylor coefficient)
    double deriv(int k) const {
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return c[k] * f;
    }

    Jet& operator+=(const Jet& o) {
        for (int k = 0; k <= N; ++k) c[k] += o.c[k];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (int k = 0; k <= N; ++k) c[k] -= o.c[k];
        return *this;
    }
    Jet& operator*=(double s) {
        for (int k = 0; k <= N; ++k) c[k] *= s;
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator-(Jet a) {
        for (auto& x : a.c) x = -x;
        return a;
    }
    friend Jet operator+(Jet a, double s) {
        a.c[0] += s;
        return a;
    }
    friend Jet operator+(double s, Jet a) { return a + s; }
    friend Jet operator-(Jet a, double s) {
        a.c[0] -= s;
        return a;
    }
    friend Jet operator-(double s, const Jet& a) { return -a + s; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator/(Jet a, double s) { return a *= (1.0 / s); }

    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r;
        for (int k = 0; k <= N; ++k) {
            double s = 0.0;
            for (int j = 0; j <= k; ++j) s += a.c[j] * b.c[k - j];
            r.c[k] = s;
        }
        return r;
    }

    friend Jet operator/(const Jet& a, const Jet& b) {
        if (b.c[0] == 0.0) throw std::domain_error("Jet division by zero value");
        Jet q;
        for (int k = 0; k <= N; ++k) {
            double s = a.c[k];
            for (int j = 1; j <= k; ++j) s -= b.c[j] * q.c[k - j];
            q.c[k] = s / b.c[0];
        }
        return q;
    }
    friend Jet operator/(double s, const Jet& b) { return Jet::constant(s) / b; }

    // Jet of f'(t): one order lower but stored in the same size.
    Jet derivative_jet() const {
        Jet d;
        for (int k = 0; k < N; ++k) d.c[k] = (k + 1) * c[k + 1];
        return d;
    }
};

namespace jet_detail {

// y = f(x) where y' = g(x)*x' and g is already available as a jet.
// Integrates the product coefficientwise; y0 supplied by the caller.
template <int N>
Jet<N> integrate_chain(double y0, const Jet<N>& g, const Jet<N>& x) {
    Jet<N> d = x.derivative_jet();
    Jet<N> w = g * d;
    Jet<N> y;
    y.c[0] = y0;
    for (int k = 1; k <= N; ++k) y.c[k] = w.c[k - 1] / k;
    return y;
}

} // namespace jet_detail

template <int N>
Jet<N> exp(const Jet<N>& x) {
    Jet<N> y;
    y.c[0] = std::exp(x.c[0]);
    Jet<N> d = x.derivative_jet();
    for (int k = 1; k <= N; ++k) {
        double s = 0.0;
        for (int j = 0; j < k; ++j) s += y.c[j] * d.c[k - 1 - j];
        y.c[k] = s / k;
    }
    return y;
}

template <int N>
Jet<N> log(const Jet<N>& x) {
    if (x.c[0] <= 0.0) throw std::domain_error("Jet log of non-positive value");
    Jet<N> y;
    y.c[0] = std::log(x.c[0]);
    // y' = x'/x, filled order by order to avoid a separate division pass
    Jet<N> d = x.derivative_jet();
    Jet<N> q; // q = d / x
    for (int k = 0; k < N; ++k) {
        double s = d.c[k];
        for (int j = 1; j <= k; ++j) s -= x.c[j] * q.c[k - j];
        q.c[k] = s / x.c[0];
        y.c[k + 1] = q.c[k] / (k + 1);
    }
    return y;
}

// x^alpha for real alpha, x0 > 0
template <int N>
Jet<N> pow(const Jet<N>& x, double alpha) {
    if (x.c[0] <= 0.0) throw std::domain_error("Jet pow of non-positive base");
    Jet<N> y;
    y.c[0] = std::pow(x.c[0], alpha);
    for (int k = 1; k <= N; ++k) {
        // k*x0*y_k = sum_{j=1..k} (alpha*j - (k-j)) x_j y_{k-j}
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += (alpha * j - (k - j)) * x.c[j] * y.c[k - j];
        y.c[k] = s / (k * x.c[0]);
    }
    return y;
}

template <int N>
Jet<N> sqrt(const Jet<N>& x) {
    return pow(x, 0.5);
}

template <int N>
void sin_cos(const Jet<N>& x, Jet<N>& s, Jet<N>& c) {
    s.c[0] = std::sin(x.c[0]);
    c.c[0] = std::cos(x.c[0]);
    Jet<N> d = x.derivative_jet();
    for (int k = 1; k <= N; ++k) {
        double as = 0.0, ac = 0.0;
        for (int j = 0; j < k; ++j) {
            as += c.c[j] * d.c[k - 1 - j];
            ac += s.c[j] * d.c[k - 1 - j];
        }
        s.c[k] = as / k;
        c.c[k] = -ac / k;
    }
}

template <int N>
Jet<N> sin(const Jet<N>& x) {
    Jet<N> s, c;
    sin_cos(x, s, c);
    return s;
}

template <int N>
Jet<N> cos(const Jet<N>& x) {
    Jet<N> s, c;
    sin_cos(x, s, c);
    return c;
}

template <int N>
Jet<N> atan(const Jet<N>& x) {
    Jet<N> g = 1.0 / (1.0 + x * x);
    return jet_detail::integrate_chain(std::atan(x.c[0]), g, x);
}

// log(1+x) stable for small x0
template <int N>
Jet<N> log1p(const Jet<N>& x) {
    if (x.c[0] <= -1.0) throw std::domain_error("Jet log1p domain");
    Jet<N> g = 1.0 / (1.0 + x);
    return jet_detail::integrate_chain(std::log1p(x.c[0]), g, x);
}

} // namespace wmlab
