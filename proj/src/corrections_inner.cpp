#include <cmath>
#include <stdexcept>

#include "wmlab/corrections.hpp"

namespace wmlab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

using J = LawJet;

// jet of v_ell(tau, x/lambda(tau)) at fixed physical radius x, with the c1 term
J v_ell_at_fixed_r(const ScalingLaw& law, const J& c1, double t, double x) {
    const J lam = law.jet(t);
    const J lamp = lam.derivative_jet();
    const J lampp = lamp.derivative_jet();
    const J R = x / lam;
    return f1_profile(R) * (lamp * lamp) + lam * lampp * f2_profile(R) + c1 * R / (1.0 + R * R);
}

J v_ell_lgR_at_fixed_r(const ScalingLaw& law, double t, double x) {
    const J lam = law.jet(t);
    const J lamp = lam.derivative_jet();
    const J lampp = lamp.derivative_jet();
    const J R = x / lam;
    return R * (0.5 * lamp * lamp + lam * lampp - lam * lampp * log(R));
}

J second_derivative_jet(const J& g) {
    J d;
    for (int k = 0; k + 2 <= kLawOrder; ++k) d.c[k] = (k + 2) * (k + 1) * g.c[k + 2];
    return d;
}

// adaptive GK15 for jet-valued integrands on [a,b]
template <class F>
J jet_gk15(const F& f, double a, double b, double& err) {
    static const double xgk[8] = {
        0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.0};
    static const double wgk[8] = {
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    static const double wg[4] = {
        0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    J fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * xgk[i]);
        fv[14 - i] = f(c + h * xgk[i]);
    }
    fv[7] = f(c);
    J resk, resg;
    for (int i = 0; i < 7; ++i) resk += wgk[i] * (fv[i] + fv[14 - i]);
    resk += wgk[7] * fv[7];
    for (int i = 0; i < 3; ++i) resg += wg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    resg += wg[3] * fv[7];
    err = 0.0;
    for (int k = 0; k <= kLawOrder; ++k)
        err = std::max(err, std::abs(resk.c[k] - resg.c[k]) * std::abs(h));
    J out = resk;
    out *= h;
    return out;
}

template <class F>
J jet_integrate(const F& f, double a, double b, const QuadSpec& spec) {
    struct Seg {
        double a, b, err;
        J val;
    };
    std::vector<Seg> stack;
    double err0;
    J v0 = jet_gk15(f, a, b, err0);
    stack.push_back({a, b, err0, v0});
    J total;
    double total_err = 0.0;
    int splits = 0;
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        double scale = 0.0;
        for (int k = 0; k <= kLawOrder; ++k) scale = std::max(scale, std::abs(s.val.c[k]));
        if (s.err <= std::max(spec.abs_tol, spec.rel_tol * (scale + 1e-300)) ||
            splits >= spec.max_subdivisions || (s.b - s.a) < 1e-14 * (b - a)) {
            total += s.val;
            total_err += s.err;
            continue;
        }
        const double m = 0.5 * (s.a + s.b);
        double e1, e2q;
        J v1 = jet_gk15(f, s.a, m, e1);
        J v2 = jet_gk15(f, m, s.b, e2q);
        stack.push_back({s.a, m, e1, v1});
        stack.push_back({m, s.b, e2q, v2});
        ++splits;
    }
    (void)total_err;
    return total;
}

} // namespace

InnerCorrections::InnerCorrections(const ScalingLaw& law, C1Mode mode)
    : law_(&law), mode_(mode) {}

LawJet InnerCorrections::c1_jet(double t) const {
    if (mode_ == C1Mode::Zero) return J{};
    const J lam = law_->jet(t);
    const J lamp = lam.derivative_jet();
    const J lampp = lamp.derivative_jet();
    return 1.5 * lamp * lamp + 0.5 * lam * lampp + (kPi * kPi / 3.0) * lam * lampp;
}

LawJet InnerCorrections::u_ell_jet(double t, double r) const {
    if (r == 0.0) return J{};
    return v_ell_at_fixed_r(*law_, c1_jet(t), t, r);
}

double InnerCorrections::u_ell(double t, double r, int dt) const {
    return u_ell_jet(t, r).deriv(dt);
}

LawJet InnerCorrections::u_ell_lgR_jet(double t, double r) const {
    return v_ell_lgR_at_fixed_r(*law_, t, r);
}

double InnerCorrections::err0(double t, double r) const {
    const J g = u_ell_lgR_jet(t, r);
    const double lam = law_->eval(t);
    return lam * lam * g.deriv(2);
}

double InnerCorrections::err1(double t, double r) const {
    const J g = u_ell_jet(t, r) - u_ell_lgR_jet(t, r);
    const double lam = law_->eval(t);
    return lam * lam * g.deriv(2);
}

LawJet InnerCorrections::u_ell2_jet(double t, double r, const QuadSpec& spec) const {
    if (r == 0.0) return J{};
    const J lam = law_->jet(t);
    const J lam2 = lam * lam;
    const J R = r / lam;
    const J c1 = c1_jet(t);
    // s = R u substitution: both integrals run over u in (0, 1]
    auto integrand_a = [&](double u) { // E(t, Ru) * (Ru) e2(Ru) * R
        const J g2 = second_derivative_jet(v_ell_at_fixed_r(*law_, c1, t, r * u));
        const J s = R * u;
        return lam2 * g2 * s * e2_profile(s) * R;
    };
    auto integrand_b = [&](double u) { // E(t, Ru) * (Ru) phi0(Ru)/2 * R
        const J g2 = second_derivative_jet(v_ell_at_fixed_r(*law_, c1, t, r * u));
        const J s = R * u;
        return lam2 * g2 * s * (0.5 * phi0_profile(s)) * R;
    };
    QuadSpec jspec = spec;
    jspec.rel_tol = std::min(spec.rel_tol, 1e-10);
    const J ia = jet_integrate(integrand_a, 0.0, 1.0, jspec);
    const J ib = jet_integrate(integrand_b, 0.0, 1.0, jspec);
    return -0.5 * phi0_profile(R) * ia + e2_profile(R) * ib;
}

double InnerCorrections::u_ell2(double t, double r, int dt, const QuadSpec& spec) const {
    return u_ell2_jet(t, r, spec).deriv(dt);
}

double InnerCorrections::v_ell20(double t, double R) const {
    const J lamj = law_->jet(t);
    const double lam = lamj.value();
    const double l1 = lamj.deriv(1), l2 = lamj.deriv(2), l3 = lamj.deriv(3), l4 = lamj.deriv(4);
    const double P = 2.0 * l1 * l1 * l1 * l1 - 7.0 * lam * l1 * l1 * l2 +
                     4.0 * lam * lam * l2 * l2 + 6.0 * lam * lam * l1 * l3;
    return f3_inner(R) * P + f4_inner(R) * lam * lam * lam * l4;
}

double InnerCorrections::v_ell20_main(double t, double s) const {
    const J lamj = law_->jet(t);
    const J lamp = lamj.derivative_jet();
    const J lampp = lamp.derivative_jet();
    const J A = lamp * lamp / (2.0 * lamj) + lampp + lampp * log(lamj);
    const double lam = lamj.value();
    const double l4 = lamj.deriv(4);
    return s * s * s * lam * lam * lam / 8.0 *
           (A.deriv(2) - l4 * std::log(s * lam) + 0.75 * l4);
}

double InnerCorrections::v_ell20_main_at_r(double t, double r) const {
    return v_ell20_main(t, r / law_->eval(t));
}

double InnerCorrections::soln1(double t, double s) const {
    const J lamj = law_->jet(t);
    const double lam = lamj.value();
    const double l1 = lamj.deriv(1), l2 = lamj.deriv(2), l3 = lamj.deriv(3), l4 = lamj.deriv(4);
    const double P = 2.0 * l1 * l1 * l1 * l1 - 7.0 * lam * l1 * l1 * l2 +
                     4.0 * lam * lam * l2 * l2 + 6.0 * lam * lam * l1 * l3;
    return (f3_inner(s) - f3_inner_leading(s)) * P +
           (f4_inner(s) - f4_inner_leading(s)) * lam * lam * lam * l4;
}

double InnerCorrections::soln2(double t, double r, const QuadSpec& spec) const {
    // variation of parameters against err1(t, q lambda) over q in (0, R]
    const double lam = law_->eval(t);
    const double R = r / lam;
    auto F = [&](double q) { return err1(t, q * lam); };
    QuadSpec s = spec;
    s.rel_tol = std::min(spec.rel_tol, 1e-10);
    auto ia = integrate([&](double q) { return F(q) * q * e2_profile(q); }, 0.0, R, s);
    auto ib = integrate([&](double q) { return F(q) * q * 0.5 * phi0_profile(q); }, 0.0, R, s);
    return -0.5 * phi0_profile(R) * ia.value + e2_profile(R) * ib.value;
}

double InnerCorrections::v_ell_sub(double t, double R) const {
    const J lamj = law_->jet(t);
    const double c1 = c1_jet(t).value();
    const double l1 = lamj.deriv(1), l2 = lamj.deriv(2);
    return (2.0 * c1 - 3.0 * l1 * l1) * f4s_profile(R) + lamj.value() * l2 * f3s_profile(R);
}

void InnerCorrections::v_ell_sub_cont_coeffs(double t, double& a0, double& a1, double& a2) const {
    const J lamj = law_->jet(t);
    const double lam = lamj.value();
    const double l1 = lamj.deriv(1), l2 = lamj.deriv(2);
    const double c1 = c1_jet(t).value();
    const double ll = std::log(lam);
    a0 = c1 * lam - 1.5 * lam * l1 * l1 -
         lam * lam * l2 * (6.0 * ll * (2.0 * ll + 1.0) + kPi * kPi + 12.0) / 6.0;
    a1 = lam * lam * l2 * (4.0 * ll + 1.0);
    a2 = -2.0 * lam * lam * l2;
}

double InnerCorrections::v_ell_sub_cont(double t, double r) const {
    double a0, a1, a2;
    v_ell_sub_cont_coeffs(t, a0, a1, a2);
    const double lr = std::log(r);
    return (a0 + a1 * lr + a2 * lr * lr) / r;
}

double solve_linearized_elliptic(const Fn1& F, double R, const QuadSpec& spec) {
    auto ia = integrate([&](double s) { return F(s) * s * e2_profile(s); }, 0.0, R, spec);
    auto ib = integrate([&](double s) { return F(s) * s * 0.5 * phi0_profile(s); }, 0.0, R, spec);
    return -0.5 * phi0_profile(R) * ia.value + e2_profile(R) * ib.value;
}

double f3_inner(double R) {
    const double R2 = R * R;
    return 2.0 *
           (R2 * (-2.0 + 6.0 * R2 + R2 * R2) - 2.0 * (R2 * R2 - 1.0) * std::log1p(R2) +
            4.0 * R2 * dilog(-R2)) /
           (32.0 * (R + R * R2));
}

double f4_inner(double R) {
    const double R2 = R * R;
    const double lR = std::log(R);
    const double l1p = std::log1p(R2);
    return (R2 * (-12.0 + 44.0 * R2 + 7.0 * R2 * R2 - 4.0 * (-2.0 + 6.0 * R2 + R2 * R2) * lR) +
            8.0 * (R2 * R2 - 1.0) * (lR - 1.0) * l1p +
            4.0 * (-1.0 + 4.0 * R2 + R2 * R2 - 4.0 * R2 * lR) * dilog(-R2) +
            16.0 * R2 * trilog(-R2)) /
           (32.0 * (R + R * R2));
}

} // namespace wmlab
