#include "wmlab/quad.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace wmlab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Gauss-Kronrod 7-15 nodes on [-1,1] (positive half; node 0 included once).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, err;
};

Panel gk15(const Fn1& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);
    double resk = 0.0, resg = 0.0;
    for (int i = 0; i < 7; ++i) resk += kWgk[i] * (fv[i] + fv[14 - i]);
    resk += kWgk[7] * fv[7];
    for (int i = 0; i < 3; ++i) resg += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    resg += kWg[3] * fv[7];
    const double value = resk * h;
    double err = std::abs((resk - resg) * h);
    err = std::min(err, std::abs(value) + 1e-300);
    err = std::pow(200.0 * err, 1.5) < err ? std::pow(200.0 * err, 1.5) : err;
    return {a, b, value, err};
}

} // namespace

SpecFunResult integrate(const Fn1& f, double a, double b, const QuadSpec& spec) {
    spec.validate();
    if (a == b) return {0.0, 0.0};
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    auto cmp = [](const Panel& x, const Panel& y) { return x.err < y.err; };
    std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> heap(cmp);
    Panel p0 = gk15(f, a, b);
    double total = p0.value, toterr = p0.err;
    heap.push(p0);
    int nsplit = 0;
    while (toterr > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
        if (nsplit >= spec.max_subdivisions || heap.empty()) {
            if (spec.throw_on_failure)
                throw ConvergenceError("integrate: subdivision limit reached", sign * total);
            return {sign * total, toterr};
        }
        Panel p = heap.top();
        heap.pop();
        const double m = 0.5 * (p.a + p.b);
        if (m <= p.a || m >= p.b) {
            // interval at roundoff width; accept its contribution as-is
            toterr -= p.err * 0.99;
            continue;
        }
        Panel l = gk15(f, p.a, m);
        Panel r = gk15(f, m, p.b);
        total += l.value + r.value - p.value;
        toterr += l.err + r.err - p.err;
        heap.push(l);
        heap.push(r);
        ++nsplit;
    }
    return {sign * total, toterr};
}

SpecFunResult integrate_graded_left(const Fn1& f, double a, double b, double grade,
                                    const QuadSpec& spec) {
    if (grade < 1.0) throw std::invalid_argument("integrate_graded_left: grade must be >= 1");
    const double len = b - a;
    auto g = [&](double u) {
        const double up = std::pow(u, grade - 1.0);
        return f(a + len * up * u) * grade * up * len;
    };
    return integrate(g, 0.0, 1.0, spec);
}

namespace {

// Wynn epsilon acceleration of the partial-sum sequence. Returns the best
// extrapolated value and a crude error estimate from the last two columns.
struct EpsilonTable {
    std::vector<double> row;
    void push(double s) {
        std::vector<double> prev = row;
        row.assign(prev.size() + 1, 0.0);
        row[0] = s;
        double before = 0.0; // epsilon_{-1} = 0
        for (std::size_t j = 1; j < row.size(); ++j) {
            const double denom = row[j - 1] - prev[j - 1];
            double e = (std::abs(denom) < 1e-300) ? 1e300 : before + 1.0 / denom;
            before = prev[j - 1];
            row[j] = e;
        }
    }
    bool best(double& value, double& err) const {
        if (row.size() < 3) return false;
        // even-index entries are the extrapolants
        std::size_t j = (row.size() - 1) % 2 == 0 ? row.size() - 1 : row.size() - 2;
        value = row[j];
        err = std::abs(row[j] - (j >= 2 ? row[j - 2] : row[0]));
        return std::abs(value) < 1e299;
    }
};

} // namespace

SpecFunResult integrate_oscillatory(const Fn1& f, OscWeight weight, double omega, double a,
                                    const QuadSpec& spec) {
    spec.validate();
    if (omega <= 0.0) throw std::invalid_argument("integrate_oscillatory: omega must be > 0");

    auto zero = [&](int k) -> double {
        if (weight == OscWeight::SinOmegaX) return k * kPi / omega;
        return bessel_j1_zero(k) / omega;
    };
    auto wf = [&](double x) -> double {
        if (weight == OscWeight::SinOmegaX) return std::sin(omega * x);
        return bessel_j1(omega * x);
    };
    auto integrand = [&](double x) { return f(x) * wf(x); };

    QuadSpec block_spec = spec;
    block_spec.rel_tol = std::max(spec.rel_tol * 0.1, 1e-14);
    block_spec.max_subdivisions = std::max(spec.max_subdivisions / 8, 200);
    block_spec.throw_on_failure = false;

    // skip zeros below a
    int k = 1;
    while (zero(k) <= a) ++k;

    double partial = 0.0, block_err = 0.0;
    EpsilonTable eps;
    double best = 0.0, best_err = 1e300;
    double prev_small = 1e300;
    double left = a;
    for (int blocks = 0; blocks < spec.oscillatory_blocks; ++blocks) {
        const double right = zero(k++);
        SpecFunResult r = integrate(integrand, left, right, block_spec);
        partial += r.value;
        block_err += r.est_abs_err;
        left = right;
        eps.push(partial);
        double v, e;
        if (eps.best(v, e)) {
            if (e < best_err) {
                best = v;
                best_err = e;
            }
        }
        const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(partial));
        // stop when the raw block contribution is negligible
        if (std::abs(r.value) < 0.1 * tol && prev_small < 0.1 * tol) {
            if (best_err > std::abs(r.value) + block_err) return {partial, std::abs(r.value) + block_err};
            return {best, best_err + block_err};
        }
        prev_small = std::abs(r.value);
        if (best_err + block_err < tol) return {best, best_err + block_err};
    }
    if (best_err < 1e250) {
        const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(best));
        if (best_err + block_err < 100 * tol || !spec.throw_on_failure)
            return {best, best_err + block_err};
        throw ConvergenceError("integrate_oscillatory: acceleration did not reach tolerance", best);
    }
    if (spec.throw_on_failure)
        throw ConvergenceError("integrate_oscillatory: no convergence", partial);
    return {partial, block_err + std::abs(partial)};
}

SpecFunResult integrate_to_infinity(const Fn1& g, double a, const QuadSpec& spec) {
    spec.validate();
    QuadSpec block_spec = spec;
    block_spec.throw_on_failure = false;
    block_spec.max_subdivisions = std::max(spec.max_subdivisions / 4, 400);
    double left = a;
    double width = std::max(std::abs(a), 1.0);
    double total = 0.0, toterr = 0.0;
    for (int b = 0; b < 80; ++b) {
        SpecFunResult r = integrate(g, left, left + width, block_spec);
        total += r.value;
        toterr += r.est_abs_err;
        left += width;
        width *= 2.0;
        const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
        if (std::abs(r.value) < 0.05 * tol && b > 2) return {total, toterr + std::abs(r.value)};
    }
    if (spec.throw_on_failure)
        throw ConvergenceError("integrate_to_infinity: tail did not decay", total);
    return {total, toterr + std::abs(total)};
}

SpecFunResult hankel1(const Fn1& f, double xi, const QuadSpec& spec) {
    spec.validate();
    if (xi <= 0.0) throw std::invalid_argument("hankel1: xi must be > 0");
    auto g = [&](double r) { return f(r) * r; };
    const double head_end = bessel_j1_zero(3) / xi;
    auto head_integrand = [&](double r) { return g(r) * bessel_j1(r * xi); };
    QuadSpec head_spec = spec;
    head_spec.throw_on_failure = false;
    SpecFunResult head = integrate(head_integrand, 0.0, head_end, head_spec);
    QuadSpec tail_spec = spec;
    tail_spec.abs_tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(head.value) * 0.1);
    SpecFunResult tail = integrate_oscillatory(g, OscWeight::BesselJ1OmegaX, xi, head_end, tail_spec);
    return {head.value + tail.value, head.est_abs_err + tail.est_abs_err};
}

SpecFunResult sine_transform(const Fn1& f, double xi, const QuadSpec& spec) {
    spec.validate();
    if (xi <= 0.0) throw std::invalid_argument("sine_transform: xi must be > 0");
    const double head_end = 3.0 * kPi / xi;
    auto head_integrand = [&](double t) { return f(t) * std::sin(t * xi); };
    QuadSpec head_spec = spec;
    head_spec.throw_on_failure = false;
    SpecFunResult head = integrate(head_integrand, 0.0, head_end, head_spec);
    QuadSpec tail_spec = spec;
    tail_spec.abs_tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(head.value) * 0.1);
    SpecFunResult tail = integrate_oscillatory(f, OscWeight::SinOmegaX, xi, head_end, tail_spec);
    return {head.value + tail.value, head.est_abs_err + tail.est_abs_err};
}

} // namespace wmlab
