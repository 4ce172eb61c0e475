#include <cmath>
#include <mutex>
#include <stdexcept>

#include "wmlab/corrections.hpp"
#include "wmlab/spline.hpp"

namespace wmlab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
using J = LawJet;

// jet of lambda^(m)(c*t) as a function of t
J lambda_shift_jet(const ScalingLaw& law, double t, int m, double c) {
    const J base = law.jet(c * t);
    J out;
    double fact = 1.0, cj = 1.0;
    for (int j = 0; j + m <= kLawOrder; ++j) {
        if (j > 0) {
            fact *= j;
            cj *= c;
        }
        out.c[j] = base.deriv(m + j) * cj / fact;
    }
    return out;
}

} // namespace

namespace symint {

double i1(const ScalingLaw& law, double t, int m, const QuadSpec& spec) {
    const double lm_t = law.eval(t, m);
    auto f = [&](double w) {
        if (w <= 0.0) return law.eval(t, m + 1);
        return (law.eval(t + w, m) - lm_t) / w;
    };
    QuadSpec s = spec;
    s.throw_on_failure = false;
    return integrate(f, 0.0, t, s).value;
}

double i2(const ScalingLaw& law, double t, int m, const QuadSpec& spec) {
    auto f = [&](double v) {
        if (v <= 0.0) return 0.0;
        return law.eval(t + t / v, m) / v;
    };
    QuadSpec s = spec;
    s.throw_on_failure = false;
    return integrate(f, 0.0, 1.0, s).value;
}

double i1_deriv(const ScalingLaw& law, double t, int m, int k, const QuadSpec& spec) {
    if (k == 0) return i1(law, t, m, spec);
    // d/dt i1(t,m) = (lam^(m)(2t) - lam^(m)(t))/t + i1(t, m+1)
    const J bnd = (lambda_shift_jet(law, t, m, 2.0) - lambda_shift_jet(law, t, m, 1.0)) /
                  J::variable(t);
    return i1_deriv(law, t, m + 1, k - 1, spec) + bnd.deriv(k - 1);
}

double i2_deriv(const ScalingLaw& law, double t, int m, int k, const QuadSpec& spec) {
    if (k == 0) return i2(law, t, m, spec);
    const J bnd = lambda_shift_jet(law, t, m, 2.0) / J::variable(t);
    return i2_deriv(law, t, m + 1, k - 1, spec) - bnd.deriv(k - 1);
}

} // namespace symint

// ---------------------------------------------------------------------------
// Radiation tables
// ---------------------------------------------------------------------------

struct RadiationTables {
    double t_max = 0.0;
    LogGridSpline h0, h1, h2;
    LogGridSpline vhat;
    double vhat_xi_min = 0.0, vhat_xi_max = 0.0;
    double vhat_low = 0.0; // constant extrapolation below xi_min
    std::mutex build_mutex;
};

OuterCorrections::OuterCorrections(const ScalingLaw& law)
    : law_(&law), tables_(std::make_unique<RadiationTables>()) {
    quad_spec.rel_tol = 1e-11;
    quad_spec.abs_tol = 1e-14;
}

OuterCorrections::~OuterCorrections() = default;
OuterCorrections::OuterCorrections(OuterCorrections&&) noexcept = default;

// ---------------------------------------------------------------------------
// w1
// ---------------------------------------------------------------------------

double OuterCorrections::w1(double t, double r, int dt) const {
    if (r <= 0.0) throw std::domain_error("w1: r must be > 0");
    const ScalingLaw& law = *law_;
    const double term1 =
        -2.0 / r * (law.eval(t + r, dt) - law.eval(t, dt) - r * law.eval(t + r, dt + 1));
    auto f = [&](double u) {
        if (u <= 0.0) return 0.0;
        const double root = std::sqrt(std::max(0.0, 1.0 - u * u));
        return law.eval(t + r / u, dt + 2) / (u * (1.0 + root));
    };
    QuadSpec s = quad_spec;
    s.throw_on_failure = false;
    const double term2 = 2.0 * r * integrate(f, 0.0, 1.0, s).value;
    return term1 + term2;
}

double OuterCorrections::w1_r(double t, double r) const {
    const ScalingLaw& law = *law_;
    const double d1 = 2.0 / (r * r) * (law.eval(t + r) - law.eval(t) - r * law.eval(t + r, 1)) +
                      2.0 * law.eval(t + r, 2);
    QuadSpec s = quad_spec;
    s.throw_on_failure = false;
    auto f2 = [&](double u) {
        if (u <= 0.0) return 0.0;
        const double root = std::sqrt(std::max(0.0, 1.0 - u * u));
        return law.eval(t + r / u, 2) / (u * (1.0 + root));
    };
    auto f3 = [&](double u) {
        if (u <= 0.0) return 0.0;
        const double root = std::sqrt(std::max(0.0, 1.0 - u * u));
        return law.eval(t + r / u, 3) / (u * u * (1.0 + root));
    };
    const double d2 = 2.0 * integrate(f2, 0.0, 1.0, s).value;
    const double d3 = 2.0 * r * integrate(f3, 0.0, 1.0, s).value;
    return d1 + d2 + d3;
}

double OuterCorrections::w1_main(double t, double r) const {
    const double l2 = law_->eval(t, 2);
    return r * ((std::log(2.0) + 0.5) * l2 + symint::i1(*law_, t, 2, quad_spec) +
                l2 * std::log(t / r) + symint::i2(*law_, t, 2, quad_spec));
}

double OuterCorrections::w1_sub(double t, double r) const { return w1(t, r) - w1_main(t, r); }

double OuterCorrections::w1_cubic_main(double t, double r) const {
    const double l4 = law_->eval(t, 4);
    const double r3 = r * r * r;
    return 3.0 / 32.0 * r3 * l4 +
           r3 / 8.0 *
               ((std::log(2.0) + 0.5) * l4 - std::log(r) * l4 + std::log(t) * l4 +
                symint::i1(*law_, t, 4, quad_spec) + symint::i2(*law_, t, 4, quad_spec));
}

// ---------------------------------------------------------------------------
// psi, H, F
// ---------------------------------------------------------------------------

double OuterCorrections::psi(double t, int k) const {
    const double tl = law_->t_lambda();
    if (t <= tl) return 0.0;
    if (t >= 2.0 * tl) return k == 0 ? 1.0 : 0.0;
    const J u = (J::variable(t) - tl) / tl;
    const J su = exp(-1.0 / u);
    const J sv = exp(-1.0 / (1.0 - u));
    return (su / (su + sv)).deriv(k);
}

double OuterCorrections::H(double t, int k) const {
    const double tl = law_->t_lambda();
    if (t <= tl) return 0.0;
    if (k > 4) throw std::invalid_argument("H: derivative order must be <= 4");
    auto G = [&](int j) -> double {
        const J lam = law_->jet(t);
        const J lamp = lam.derivative_jet();
        const J lampp = lamp.derivative_jet();
        const J closed = (std::log(2.0) - 0.5) * lampp + lampp * log(J::variable(t) / lam) -
                         lamp * lamp / (2.0 * lam);
        return 4.0 * (closed.deriv(j) + symint::i1_deriv(*law_, t, 2, j, quad_spec) +
                      symint::i2_deriv(*law_, t, 2, j, quad_spec));
    };
    if (t >= 2.0 * tl) return G(k);
    double out = 0.0;
    double binom = 1.0;
    for (int j = 0; j <= k; ++j) {
        if (j > 0) binom = binom * (k - j + 1) / j;
        out += binom * psi(t, j) * G(k - j);
    }
    return out;
}

double OuterCorrections::F(double t, int k) const {
    if (t >= 0.0) return H(t, k);
    const double sgn = (k % 2 == 0) ? -1.0 : 1.0;
    return sgn * H(-t, k);
}

// ---------------------------------------------------------------------------
// radiation build + v2
// ---------------------------------------------------------------------------

void OuterCorrections::build_radiation(double t_max) const {
    RadiationTables& tab = *tables_;
    std::lock_guard<std::mutex> lock(tab.build_mutex);
    const double tl = law_->t_lambda();
    const double target = std::max(2e9, 64.0 * t_max);
    if (tab.t_max >= target) return;

    // H, H', H'' on a log grid; slopes in log t are analytic: d/du = t H'
    const auto u = LogGridSpline::log_nodes(tl * (1.0 + 1e-10), target, 100);
    const std::size_t n = u.size();
    std::vector<double> h0(n), h1(n), h2(n), m0(n), m1(n), m2(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = std::exp(u[i]);
        h0[i] = H(t, 0);
        h1[i] = H(t, 1);
        h2[i] = H(t, 2);
        const double h3 = H(t, 3);
        m0[i] = t * h1[i];
        m1[i] = t * h2[i];
        m2[i] = t * h3;
    }
    tab.h0 = LogGridSpline(CubicHermite(u, std::move(h0), std::move(m0)));
    tab.h1 = LogGridSpline(CubicHermite(u, std::move(h1), std::move(m1)));
    tab.h2 = LogGridSpline(CubicHermite(u, std::move(h2), std::move(m2)));
    tab.t_max = target;

    // vhat20 on a log grid in xi
    tab.vhat_xi_min = 1e-7;
    tab.vhat_xi_max = 400.0;
    const auto ux = LogGridSpline::log_nodes(tab.vhat_xi_min, tab.vhat_xi_max, 60);
    std::vector<double> vh(ux.size());
    for (std::size_t i = 0; i < ux.size(); ++i) vh[i] = vhat20_direct(std::exp(ux[i]));
    tab.vhat = LogGridSpline(CubicHermite::with_fd_slopes(ux, std::move(vh)));
    tab.vhat_low = tab.vhat(tab.vhat_xi_min * 1.0000001);
}

bool OuterCorrections::radiation_built() const { return !tables_->h0.empty(); }

namespace {
double spline_H(const RadiationTables& tab, double tl, double x, int k) {
    double ax = std::abs(x);
    if (ax <= tl) return 0.0;
    const LogGridSpline& s = (k == 0) ? tab.h0 : (k == 1 ? tab.h1 : tab.h2);
    if (ax >= tab.t_max) return 0.0;
    double v = s(ax);
    if (x < 0.0 && k % 2 == 0) v = -v;
    return v;
}
} // namespace

double OuterCorrections::vhat20_direct(double xi) const {
    if (xi <= 0.0) throw std::domain_error("vhat20: xi must be > 0");
    const RadiationTables& tab = *tables_;
    const double tl = law_->t_lambda();
    Fn1 h;
    double t_hi;
    if (!tab.h0.empty()) {
        t_hi = tab.t_max;
        h = [this, &tab, tl](double t) { return spline_H(tab, tl, t, 0); };
    } else {
        t_hi = 1e12;
        h = [this, tl](double t) { return t <= tl ? 0.0 : H(t); };
    }
    QuadSpec s = quad_spec;
    s.rel_tol = 1e-11;
    s.abs_tol = 1e-15;
    s.oscillatory_blocks = 200;
    s.throw_on_failure = false;
    auto f = [&](double t) { return t >= t_hi ? 0.0 : h(t); };
    const double head_end = std::min(3.0 * kPi / xi, t_hi);
    double head = 0.0;
    if (head_end > tl) {
        head = integrate([&](double t) { return f(t) * std::sin(t * xi); }, tl, head_end, s).value;
    }
    double tail = 0.0;
    if (head_end < t_hi)
        tail = integrate_oscillatory(f, OscWeight::SinOmegaX, xi, head_end, s).value;
    return -(head + tail) / (kPi * xi);
}

double OuterCorrections::vhat20(double xi) const {
    const RadiationTables& tab = *tables_;
    if (tab.vhat.empty()) throw std::logic_error("vhat20: call build_radiation first");
    if (xi <= tab.vhat_xi_min) return tab.vhat_low;
    if (xi >= tab.vhat_xi_max) return 0.0;
    return tab.vhat(xi);
}

double OuterCorrections::F_from_vhat(double t) const {
    QuadSpec s = quad_spec;
    s.abs_tol = 1e-15;
    s.oscillatory_blocks = 256;
    s.throw_on_failure = false;
    auto f = [&](double xi) { return -2.0 * xi * vhat20(xi); };
    const double head_end = 3.0 * kPi / t;
    const double head =
        integrate([&](double xi) { return f(xi) * std::sin(t * xi); }, 0.0, head_end, s).value;
    const double tail = integrate_oscillatory(f, OscWeight::SinOmegaX, t, head_end, s).value;
    return head + tail;
}

double OuterCorrections::v2_angular(double t, double r, int dt) const {
    const RadiationTables& tab = *tables_;
    const double tl = law_->t_lambda();
    auto Fk = [&](double x) -> double {
        if (!tab.h0.empty()) return spline_H(tab, tl, x, dt);
        const double ax = std::abs(x);
        if (ax <= tl) return 0.0;
        double v = H(ax, dt);
        if (x < 0.0 && dt % 2 == 0) v = -v;
        return v;
    };
    QuadSpec s = quad_spec;
    s.rel_tol = 1e-9;
    s.throw_on_failure = false;
    auto f = [&](double th) {
        const double c = std::cos(th), sn = std::sin(th);
        return sn * sn * (Fk(t + r * c) + Fk(t - r * c));
    };
    return -r / (4.0 * kPi) * integrate(f, 0.0, kPi, s).value;
}

double OuterCorrections::v2_frequency(double t, double r) const {
    const RadiationTables& tab = *tables_;
    if (tab.vhat.empty()) throw std::logic_error("v2_frequency: call build_radiation first");
    QuadSpec s = quad_spec;
    s.rel_tol = 1e-9;
    s.abs_tol = 1e-14;
    s.oscillatory_blocks = 256;
    s.throw_on_failure = false;
    const double om_fast = std::max(t, r), om_slow = std::min(t, r);
    auto slow = [&](double xi) {
        return (om_slow == r) ? bessel_j1(r * xi) * vhat20(xi) : std::sin(t * xi) * vhat20(xi);
    };
    // head: below the third zero of the fast weight, plain adaptive
    const double head_end =
        (om_fast == t) ? 3.0 * kPi / t : bessel_j1_zero(3) / r;
    auto whole = [&](double xi) {
        return bessel_j1(r * xi) * std::sin(t * xi) * vhat20(xi);
    };
    const double head = integrate(whole, 0.0, head_end, s).value;
    const double tail =
        (om_fast == t)
            ? integrate_oscillatory([&](double xi) { return slow(xi); }, OscWeight::SinOmegaX,
                                    t, head_end, s)
                  .value
            : integrate_oscillatory([&](double xi) { return slow(xi); },
                                    OscWeight::BesselJ1OmegaX, r, head_end, s)
                  .value;
    return head + tail;
}

double OuterCorrections::v2(double t, double r, int dt) const {
    if (r <= 0.0) return 0.0;
    if (std::abs(t) < 1e-300) {
        // odd in t by construction
        if (dt == 0) return 0.0;
    }
    if (r <= 0.5 * std::abs(t) || t == 0.0 || !radiation_built()) return v2_angular(t, r, dt);
    if (dt == 0) return v2_frequency(t, r);
    return v2_angular(t, r, dt);
}

double OuterCorrections::v2_r(double t, double r) const {
    const RadiationTables& tab = *tables_;
    const double tl = law_->t_lambda();
    auto F1v = [&](double x) -> double {
        if (!tab.h0.empty()) return spline_H(tab, tl, x, 1);
        const double ax = std::abs(x);
        if (ax <= tl) return 0.0;
        double v = H(ax, 1);
        if (x < 0.0) v = v; // F' is even
        return v;
    };
    QuadSpec s = quad_spec;
    s.rel_tol = 1e-9;
    s.throw_on_failure = false;
    auto f = [&](double th) {
        const double c = std::cos(th), sn = std::sin(th);
        return sn * sn * c * (F1v(t + r * c) - F1v(t - r * c));
    };
    const double d = -r / (4.0 * kPi) * integrate(f, 0.0, kPi, s).value;
    return v2(t, r) / r + d;
}

// ---------------------------------------------------------------------------
// v_ex
// ---------------------------------------------------------------------------

double OuterCorrections::v_ex_ell(double t, double r, int dt) const {
    const J lam = law_->jet(t);
    const J lamp = lam.derivative_jet();
    const J lampp = lamp.derivative_jet();
    const J L = log(1.0 + (r / lam) * (r / lam));
    const J Ls = log(1.0 + (lam / r) * (lam / r));
    const J expr = -(2.0 * lam * L * lamp * lamp + (lam * lam * L + r * r * Ls) * lampp) / (2.0 * r);
    return expr.deriv(dt);
}

void OuterCorrections::v_ex_cont_coeffs(double t, double& a0, double& a1) const {
    const J lam = law_->jet(t);
    const double l = lam.value(), l1 = lam.deriv(1), l2 = lam.deriv(2);
    const double ll = std::log(l);
    a1 = 0.5 * (-4.0 * l * l1 * l1 - 2.0 * l * l * l2);
    a0 = 0.5 * (4.0 * l * ll * l1 * l1 - l * l * l2 + 2.0 * l * l * l2 * ll);
}

double OuterCorrections::v_ex_cont(double t, double r) const {
    double a0, a1;
    v_ex_cont_coeffs(t, a0, a1);
    return (a0 + a1 * std::log(r)) / r;
}

double OuterCorrections::rhs_hat(double s, double xi, int ds) const {
    const J lam = law_->jet(s);
    const J lamp = lam.derivative_jet();
    const J lampp = lamp.derivative_jet();
    const J x = xi * lam;
    J k0j, k1j;
    bessel_k01(x, k0j, k1j);
    const J expr = 2.0 * xi * k0j * lam * lamp * lamp + (2.0 / xi) * lampp * (1.0 - x * k1j);
    return expr.deriv(ds);
}

double OuterCorrections::vexsub_psi(double t, double xi, int k) const {
    QuadSpec s = quad_spec;
    s.rel_tol = 1e-9;
    s.abs_tol = 1e-16;
    s.oscillatory_blocks = 200;
    s.throw_on_failure = false;
    auto g = [&](double w) { return rhs_hat(t + w, xi, 2 + k); };
    return -integrate_oscillatory(g, OscWeight::SinOmegaX, xi, 0.0, s).value;
}

double OuterCorrections::v_ex_sub(double t, double r, int dt) const {
    QuadSpec s = quad_spec;
    s.rel_tol = 1e-8;
    s.abs_tol = 1e-15;
    s.oscillatory_blocks = 200;
    s.throw_on_failure = false;
    auto f = [&](double xi) { return vexsub_psi(t, xi, dt) / (xi * xi); };
    const double head_end = bessel_j1_zero(3) / r;
    const double head =
        integrate([&](double xi) { return bessel_j1(r * xi) * f(xi); }, 0.0, head_end, s).value;
    const double tail =
        integrate_oscillatory(f, OscWeight::BesselJ1OmegaX, r, head_end, s).value;
    return -(head + tail);
}

// ---------------------------------------------------------------------------
// second wave iteration, elliptic part
// ---------------------------------------------------------------------------

double OuterCorrections::potential_V(double t, double s) const {
    const double lam = law_->eval(t);
    const double d = lam * lam + s * s;
    return -8.0 * lam * lam / (d * d);
}

double OuterCorrections::rhs2(double t, double s, int dt) const {
    const J lam = law_->jet(t);
    const J Vj = -8.0 * lam * lam / ((lam * lam + s * s) * (lam * lam + s * s));
    double out = 0.0;
    double binom = 1.0;
    for (int j = 0; j <= dt; ++j) {
        if (j > 0) binom = binom * (dt - j + 1) / j;
        out += binom * Vj.deriv(j) * (w1(t, s, dt - j) + v2(t, s, dt - j));
    }
    return out;
}

double OuterCorrections::uw2_ell(double t, double r, int dt) const {
    QuadSpec s = quad_spec;
    s.rel_tol = 1e-8;
    s.abs_tol = 1e-16;
    s.throw_on_failure = false;
    auto g = [&](double x) { return rhs2(t, x, dt); };
    const double inner =
        integrate([&](double x) { return x * x * g(x); }, 0.0, r, s).value / r;
    const double outer = r * integrate_to_infinity(g, r, s).value;
    return -0.5 * (inner + outer);
}

double OuterCorrections::f1_coeff(double t) const {
    const double lam = law_->eval(t), l1 = law_->eval(t, 1), l2 = law_->eval(t, 2);
    return l2 + l1 * l1 / (2.0 * lam) + l2 * std::log(lam);
}

double OuterCorrections::uw2_ell0(double t, double r) const {
    const double lam = law_->eval(t), l2 = law_->eval(t, 2);
    const double f1t = f1_coeff(t);
    const double q = r * r / (lam * lam);
    const double L = std::log1p(q);
    const double Ls = std::log1p(lam * lam / (r * r));
    const double lr = std::log(r);
    return 2.0 * f1t * lam * lam * L / r -
           lam * lam * l2 * (dilog(-q) + 2.0 * lr * (L - q / (1.0 + q)) + L) / r -
           r * l2 * (2.0 * lam * lam * lr / (lam * lam + r * r) + Ls);
}

void OuterCorrections::uw2_ell0_cont_coeffs(double t, double& b0, double& b1, double& b2) const {
    const double lam = law_->eval(t), l1 = law_->eval(t, 1), l2 = law_->eval(t, 2);
    const double ll = std::log(lam);
    b1 = 2.0 * (lam * l1 * l1 + lam * lam * l2 + 2.0 * lam * lam * ll * l2);
    b2 = -2.0 * lam * lam * l2;
    b0 = -2.0 * (lam * ll * l1 * l1 + lam * lam * ll * l2 + lam * lam * ll * ll * l2 +
                 0.5 * lam * lam * l2 - kPi * kPi / 12.0 * lam * lam * l2);
}

double OuterCorrections::uw2_ell0_cont(double t, double r) const {
    double b0, b1, b2;
    uw2_ell0_cont_coeffs(t, b0, b1, b2);
    const double lr = std::log(r);
    return (b0 + b1 * lr + b2 * lr * lr) / r;
}

// ---------------------------------------------------------------------------
// kernel
// ---------------------------------------------------------------------------

double OuterCorrections::kernel_K(double y, double z) {
    if (y <= 0.0 || z <= 0.0) throw std::domain_error("kernel_K: y, z must be > 0");
    const double lo = std::min(y, z), hi = std::max(y, z);
    return 4.0 * (lo * bessel_i0(lo) * bessel_k1(hi) - hi * bessel_i1(lo) * bessel_k2(hi));
}

double OuterCorrections::kernel_K_quad(double y, double z, const QuadSpec& spec) {
    const double hi = std::max(y, z), lo = std::min(y, z);
    auto f = [&](double x) {
        const double d = 1.0 + x * x;
        return -8.0 * bessel_j1(x * lo) * x / (d * d);
    };
    QuadSpec s = spec;
    s.throw_on_failure = false;
    const double head_end = bessel_j1_zero(3) / hi;
    const double head =
        integrate([&](double x) { return f(x) * bessel_j1(x * hi); }, 0.0, head_end, s).value;
    const double tail = integrate_oscillatory(f, OscWeight::BesselJ1OmegaX, hi, head_end, s).value;
    return head + tail;
}

double OuterCorrections::kernel_K_dz3_jump(double y) {
    using J3 = Jet<3>;
    const J3 z = J3::variable(y);
    // z < y branch: z I0(z) K1(y) - y I1(z) K2(y)
    J3 i0j, i1j;
    bessel_i01(z, i0j, i1j);
    const J3 below = z * i0j * bessel_k1(y) - y * i1j * bessel_k2(y);
    // z > y branch: y I0(y) K1(z) - z I1(y) K2(z)
    J3 k0j, k1j;
    bessel_k01(z, k0j, k1j);
    const J3 k2j = k0j + 2.0 * k1j / z;
    const J3 above = y * bessel_i0(y) * k1j - z * bessel_i1(y) * k2j;
    return 4.0 * (below.deriv(3) - above.deriv(3));
}

} // namespace wmlab
