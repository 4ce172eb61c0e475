#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace wmlab {

// Cubic Hermite interpolant on a strictly increasing abscissa grid. Slopes are
// supplied by the builder (analytic where available, otherwise finite
// differences of the samples).
class CubicHermite {
  public:
    CubicHermite() = default;
    CubicHermite(std::vector<double> x, std::vector<double> y, std::vector<double> dydx)
        : x_(std::move(x)), y_(std::move(y)), m_(std::move(dydx)) {
        if (x_.size() < 2 || x_.size() != y_.size() || x_.size() != m_.size())
            throw std::invalid_argument("CubicHermite: inconsistent sizes");
    }

    // builds slopes by 4th-order finite differences on a uniform-in-x grid
    static CubicHermite with_fd_slopes(std::vector<double> x, std::vector<double> y) {
        const std::size_t n = x.size();
        if (n < 5) throw std::invalid_argument("CubicHermite: need >= 5 points");
        std::vector<double> m(n);
        const double h = x[1] - x[0];
        for (std::size_t i = 0; i < n; ++i) {
            if (i >= 2 && i + 2 < n)
                m[i] = (-y[i + 2] + 8.0 * y[i + 1] - 8.0 * y[i - 1] + y[i - 2]) / (12.0 * h);
            else if (i == 0)
                m[i] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h);
            else if (i == 1)
                m[i] = (y[2] - y[0]) / (2.0 * h);
            else if (i + 2 == n)
                m[i] = (y[n - 1] - y[n - 3]) / (2.0 * h);
            else
                m[i] = (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]) / (2.0 * h);
        }
        return CubicHermite(std::move(x), std::move(y), std::move(m));
    }

    bool empty() const { return x_.empty(); }
    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

    double operator()(double x) const { return eval(x, nullptr); }

    double eval(double x, double* deriv) const {
        if (x < x_.front() || x > x_.back())
            throw std::domain_error("CubicHermite: x out of range");
        auto it = std::upper_bound(x_.begin(), x_.end(), x);
        std::size_t i = std::min<std::size_t>(
            x_.size() - 2,
            static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - x_.begin() - 1)));
        const double h = x_[i + 1] - x_[i];
        const double s = (x - x_[i]) / h;
        const double s2 = s * s, s3 = s2 * s;
        const double v = (2 * s3 - 3 * s2 + 1) * y_[i] + (s3 - 2 * s2 + s) * h * m_[i] +
                         (-2 * s3 + 3 * s2) * y_[i + 1] + (s3 - s2) * h * m_[i + 1];
        if (deriv) {
            *deriv = ((6 * s2 - 6 * s) * y_[i] + (3 * s2 - 4 * s + 1) * h * m_[i] +
                      (-6 * s2 + 6 * s) * y_[i + 1] + (3 * s2 - 2 * s) * h * m_[i + 1]) /
                     h;
        }
        return v;
    }

  private:
    std::vector<double> x_, y_, m_;
};

// Convenience: function sampled on a log-spaced grid, evaluated in log x.
class LogGridSpline {
  public:
    LogGridSpline() = default;
    LogGridSpline(CubicHermite spline) : s_(std::move(spline)) {}

    static std::vector<double> log_nodes(double x_min, double x_max, int per_decade) {
        if (!(x_max > x_min) || x_min <= 0.0)
            throw std::invalid_argument("log_nodes: bad range");
        const double u0 = std::log(x_min), u1 = std::log(x_max);
        const int n = std::max(8, static_cast<int>((u1 - u0) / std::log(10.0) * per_decade) + 1);
        std::vector<double> u(n + 1);
        for (int i = 0; i <= n; ++i) u[i] = u0 + (u1 - u0) * i / n;
        return u; // nodes in log-space
    }

    bool empty() const { return s_.empty(); }
    bool covers(double x) const {
        const double u = std::log(x);
        return !s_.empty() && u >= s_.x_min() && u <= s_.x_max();
    }
    double x_max() const { return std::exp(s_.x_max()); }
    double x_min() const { return std::exp(s_.x_min()); }

    double operator()(double x) const { return s_(std::log(x)); }
    // derivative with respect to x (not log x)
    double eval(double x, double* ddx) const {
        double du;
        const double v = s_.eval(std::log(x), &du);
        if (ddx) *ddx = du / x;
        return v;
    }

  private:
    CubicHermite s_;
};

} // namespace wmlab
