#include "wmlab/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wmlab {

LawKind law_kind_from_string(const std::string& s) {
    if (s == "power") return LawKind::Power;
    if (s == "log-power") return LawKind::LogPower;
    if (s == "oscillatory-remark4") return LawKind::OscillatoryR4;
    if (s == "oscillatory-remark5") return LawKind::OscillatoryR5;
    if (s == "shifted-composite-remark6") return LawKind::ShiftedCompositeR6;
    if (s == "user-table") return LawKind::UserTable;
    throw std::invalid_argument("unknown scaling-law kind: " + s);
}

std::string to_string(LawKind k) {
    switch (k) {
        case LawKind::Power: return "power";
        case LawKind::LogPower: return "log-power";
        case LawKind::OscillatoryR4: return "oscillatory-remark4";
        case LawKind::OscillatoryR5: return "oscillatory-remark5";
        case LawKind::ShiftedCompositeR6: return "shifted-composite-remark6";
        case LawKind::UserTable: return "user-table";
    }
    return "?";
}

ScalingLaw::ScalingLaw(LawKind kind, LawParams params, double t_lambda)
    : kind_(kind), params_(params), t_lambda_(t_lambda) {
    if (kind_ == LawKind::UserTable)
        throw std::invalid_argument("use ScalingLaw::from_table for tabulated laws");
}

ScalingLaw ScalingLaw::from_table(std::vector<double> t, std::vector<double> y, double t_lambda) {
    if (t.size() != y.size() || t.size() < 4)
        throw std::invalid_argument("from_table: need >= 4 samples");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (t[i] <= t[i - 1]) throw std::invalid_argument("from_table: times must increase");
    for (double v : y)
        if (v <= 0.0) throw std::invalid_argument("from_table: lambda must be positive");

    ScalingLaw law(LawKind::Power, LawParams{}, t_lambda);
    law.kind_ = LawKind::UserTable;

    // Fritsch-Carlson monotone cubic slopes
    const std::size_t n = t.size();
    std::vector<double> h(n - 1), delta(n - 1), m(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = t[i + 1] - t[i];
        delta[i] = (y[i + 1] - y[i]) / h[i];
    }
    m[0] = delta[0];
    m[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0)
            m[i] = 0.0;
        else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            m[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (delta[i] == 0.0) {
            m[i] = m[i + 1] = 0.0;
            continue;
        }
        const double a = m[i] / delta[i], b = m[i + 1] / delta[i];
        const double s = a * a + b * b;
        if (s > 9.0) {
            const double tau = 3.0 / std::sqrt(s);
            m[i] = tau * a * delta[i];
            m[i + 1] = tau * b * delta[i];
        }
    }
    law.tab_t_ = std::move(t);
    law.tab_y_ = std::move(y);
    law.tab_m_ = std::move(m);
    return law;
}

void ScalingLaw::check_time(double t) const {
    if (!(t > t_lambda_))
        throw std::domain_error("ScalingLaw: t must exceed T_lambda");
    if (kind_ == LawKind::UserTable && (t < tab_t_.front() || t > tab_t_.back()))
        throw std::domain_error("ScalingLaw: t outside table range");
}

LawJet ScalingLaw::jet(double t) const {
    check_time(t);
    const LawJet T = LawJet::variable(t);
    switch (kind_) {
        case LawKind::Power:
            return params_.lambda0 * pow(T, params_.a);
        case LawKind::LogPower:
            return params_.lambda0 * pow(log(T), params_.d);
        case LawKind::OscillatoryR4: {
            const LawJet L = log(T);
            const LawJet lo = params_.lambda0 * pow(L, -params_.alpha0);
            const LawJet hi = params_.lambda1 * pow(L, params_.alpha1);
            return 0.5 * (lo + hi) + 0.5 * (hi - lo) * sin(log(L));
        }
        case LawKind::OscillatoryR5:
            return pow(T, params_.a) * (2.0 + params_.c0 * sin(log(T)));
        case LawKind::ShiftedCompositeR6:
            return params_.lambda0 +
                   pow(T, -std::abs(params_.a)) * (2.0 + params_.c0 * sin(log(T) / params_.d));
        case LawKind::UserTable: {
            // cubic Hermite segment evaluated as a jet in t
            auto it = std::upper_bound(tab_t_.begin(), tab_t_.end(), t);
            std::size_t i = std::min<std::size_t>(
                tab_t_.size() - 2, static_cast<std::size_t>(
                                        std::max<std::ptrdiff_t>(0, it - tab_t_.begin() - 1)));
            const double h = tab_t_[i + 1] - tab_t_[i];
            const LawJet s = (T - tab_t_[i]) / h;
            const LawJet s2 = s * s, s3 = s2 * s;
            const LawJet h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
            const LawJet h10 = s3 - 2.0 * s2 + s;
            const LawJet h01 = -2.0 * s3 + 3.0 * s2;
            const LawJet h11 = s3 - s2;
            return h00 * tab_y_[i] + h10 * (h * tab_m_[i]) + h01 * tab_y_[i + 1] +
                   h11 * (h * tab_m_[i + 1]);
        }
    }
    throw std::logic_error("unreachable");
}

double ScalingLaw::eval(double t, int k) const {
    if (k < 0 || k > max_order())
        throw std::invalid_argument("ScalingLaw::eval: derivative order unsupported for this law");
    return jet(t).deriv(k);
}

AdmissibilityConstants fit_symbol_constants(const ScalingLaw& law,
                                            const std::vector<double>& t_grid) {
    if (t_grid.size() < 32)
        throw std::invalid_argument("fit_symbol_constants: need >= 32 grid points");
    AdmissibilityConstants c;
    const int kmax = law.max_order();
    c.c_k.assign(kmax - 1, 0.0);
    for (double t : t_grid) {
        const LawJet j = law.jet(t);
        const double lam = j.value();
        if (!(lam > 0.0)) throw std::domain_error("fit_symbol_constants: lambda <= 0 on grid");
        const double ratio1 = j.deriv(1) / lam;
        c.c_l = std::max(c.c_l, t * std::max(0.0, -ratio1));
        c.c_u = std::max(c.c_u, t * std::max(0.0, ratio1));
        double tk = t;
        for (int k = 2; k <= kmax; ++k) {
            tk *= t;
            c.c_k[k - 2] = std::max(c.c_k[k - 2], tk * std::abs(j.deriv(k)) / lam);
        }
    }
    c.c2 = c.c_k.empty() ? 0.0 : c.c_k[0];
    return c;
}

bool AdmissibilityReport::all_evaluated_pass() const {
    for (const auto& ck : checks)
        if (ck.status == CheckStatus::Fail) return false;
    return true;
}

const ConstraintCheck& AdmissibilityReport::find(const std::string& name) const {
    for (const auto& ck : checks)
        if (ck.name == name) return ck;
    throw std::out_of_range("no such constraint: " + name);
}

double coupling_f(double x, double y, double z, double norm_K, double norm_comm) {
    constexpr double pi = 3.141592653589793238462643383279502884;
    return x * (1.0 + 2.0 * norm_K) +
           y * (0.25 + 2.0 * norm_comm + norm_K * norm_K) +
           z * (0.5 + norm_K) + 4.0 * (y + z / 3.0 * (3.0 + 2.0 * pi * pi));
}

void alpha_window(double c_l, double c_u, double& lo, double& hi) {
    lo = 0.5 + 0.5 * c_l;
    hi = 2.0 / 3.0 - 5.0 / 6.0 * c_u - c_l / 6.0;
}

AdmissibilityReport check_admissibility(const AdmissibilityConstants& c, double alpha) {
    AdmissibilityReport rep;

    {
        ConstraintCheck ck{"lambdaonlyconstr", CheckStatus::Pass, 0.0};
        ck.margin = (1.0 / 30.0 - c.c_l / 5.0) - c.c_u;
        ck.status = (c.c_u >= 0.0 && ck.margin > 0.0) ? CheckStatus::Pass : CheckStatus::Fail;
        rep.checks.push_back(ck);
    }
    {
        ConstraintCheck ck{"alphaconstr", CheckStatus::Pass, 0.0};
        double lo, hi;
        alpha_window(c.c_l, c.c_u, lo, hi);
        ck.margin = std::min(alpha - lo, hi - alpha);
        ck.status = ck.margin > 0.0 ? CheckStatus::Pass : CheckStatus::Fail;
        rep.checks.push_back(ck);
    }
    const double m = std::max(c.c_l, c.c_u);
    {
        ConstraintCheck ck{"cofconstr1p1", CheckStatus::Unevaluated, 0.0};
        if (c.op_norm_K && c.op_norm_commutator && c.c_rho) {
            const double lhs = std::sqrt(*c.c_rho) * (179.0 / 267.0) *
                               coupling_f(m, m * m, c.c2, *c.op_norm_K, *c.op_norm_commutator);
            ck.margin = 1.0 / 3.0 - lhs;
            ck.status = ck.margin > 0.0 ? CheckStatus::Pass : CheckStatus::Fail;
        }
        rep.checks.push_back(ck);
    }
    {
        ConstraintCheck ck{"cofconstr2", CheckStatus::Unevaluated, 0.0};
        if (c.op_norm_K_half && c.c_rho) {
            const double rhs = (1513.0 / 1044.0) /
                               (3.0 * std::sqrt(*c.c_rho) * (1.0 + 2.0 * *c.op_norm_K_half));
            ck.margin = rhs - m;
            ck.status = ck.margin > 0.0 ? CheckStatus::Pass : CheckStatus::Fail;
        }
        rep.checks.push_back(ck);
    }
    return rep;
}

AdmissibilityConstants oscillatory_recipe_constants(double a, double c0, double norm_K,
                                                    double norm_K_half, double norm_comm,
                                                    double c_rho, double& c0_max) {
    const double m = std::min(
        1513.0 / (3132.0 * std::sqrt(c_rho) * (1.0 + 2.0 * norm_K_half)),
        89.0 / (179.0 * std::sqrt(c_rho) * coupling_f(1.0, 1.0, 1.0, norm_K, norm_comm)));
    c0_max = std::min(2.0 / 73.0, 4.0 * m / (2.0 * m + 9.0));
    if (!(c0 > 0.0 && c0 < c0_max))
        throw std::domain_error("oscillatory_recipe_constants: c0 outside admissible range");
    if (!(std::abs(a) < c0 / (2.0 - c0)))
        throw std::domain_error("oscillatory_recipe_constants: |a| too large for this c0");
    AdmissibilityConstants c;
    c.c_u = c.c_l = std::abs(a) + c0 / (2.0 - c0);
    c.c2 = (std::abs(a) + 2.0 * c0 / (2.0 - c0)) * (1.0 + std::abs(a));
    c.op_norm_K = norm_K;
    c.op_norm_K_half = norm_K_half;
    c.op_norm_commutator = norm_comm;
    c.c_rho = c_rho;
    return c;
}

GrowthEnvelope growth_envelope(const ScalingLaw& law, const AdmissibilityConstants& consts,
                               double t, double x) {
    if (x < t) throw std::invalid_argument("growth_envelope: need x >= t");
    GrowthEnvelope g;
    const double q = x / t;
    g.lower = std::pow(q, -consts.c_l);
    g.upper = std::pow(q, consts.c_u);
    g.ratio = law.eval(x) / law.eval(t);
    const double slack = 1e-12 * (1.0 + g.ratio);
    g.contained = (g.ratio >= g.lower - slack) && (g.ratio <= g.upper + slack);
    return g;
}

} // namespace wmlab
