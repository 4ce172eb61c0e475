#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wmlab/jet.hpp"

namespace wmlab {

inline constexpr int kLawOrder = 8;
using LawJet = Jet<kLawOrder>;

enum class LawKind {
    Power,             // lambda0 * t^a
    LogPower,          // lambda0 * log(t)^d
    OscillatoryR4,     // bounded/unbounded log-scale oscillations
    OscillatoryR5,     // t^a (2 + c0 sin log t)
    ShiftedCompositeR6,// lambda0 + t^(-|a|) (2 + c0 sin(log(t)/d))
    UserTable,
};

LawKind law_kind_from_string(const std::string& s);
std::string to_string(LawKind k);

struct LawParams {
    double a = 0.0;
    double c0 = 0.0;
    double lambda0 = 1.0;
    double lambda1 = 1.0;
    double alpha0 = 0.0;
    double alpha1 = 0.0;
    double d = 1.0;
};

// A scaling law lambda(t) with closed-form derivatives up to order 8
// (order 4 for tabulated laws, which differentiate the interpolant).
class ScalingLaw {
  public:
    ScalingLaw(LawKind kind, LawParams params, double t_lambda = 100.0);

    // monotone cubic interpolation of (t_i, lambda_i)
    static ScalingLaw from_table(std::vector<double> t, std::vector<double> lambda,
                                 double t_lambda = 100.0);

    LawKind kind() const { return kind_; }
    const LawParams& params() const { return params_; }
    double t_lambda() const { return t_lambda_; }
    int max_order() const { return kind_ == LawKind::UserTable ? 4 : kLawOrder; }

    // lambda^(k)(t)
    double eval(double t, int k = 0) const;
    // full jet at t (coefficients above max_order are zero for tables)
    LawJet jet(double t) const;

  private:
    void check_time(double t) const;

    LawKind kind_;
    LawParams params_;
    double t_lambda_;

    // user-table data (Fritsch-Carlson slopes)
    std::vector<double> tab_t_, tab_y_, tab_m_;
};

struct AdmissibilityConstants {
    double c_l = 0.0;
    double c_u = 0.0;
    double c2 = 0.0;
    std::vector<double> c_k; // c_k[i] bounds order i+2 (starts at k=2)

    // externally supplied spectral constants; unset by default
    std::optional<double> op_norm_K;          // ||K|| on L^2_rho
    std::optional<double> op_norm_K_half;     // ||K|| on L^{2,1/2}_rho
    std::optional<double> op_norm_commutator; // ||[xi d_xi, K]||
    std::optional<double> c_rho;
};

// sup over the grid of t*max(0,-lambda'/lambda), t*max(0,lambda'/lambda),
// and t^k |lambda^(k)|/lambda for k = 2..max_order.
AdmissibilityConstants fit_symbol_constants(const ScalingLaw& law,
                                            const std::vector<double>& t_grid);

enum class CheckStatus { Pass, Fail, Unevaluated };

struct ConstraintCheck {
    std::string name;
    CheckStatus status = CheckStatus::Unevaluated;
    double margin = 0.0; // how far inside the constraint (negative = violated)
};

struct AdmissibilityReport {
    std::vector<ConstraintCheck> checks;
    bool all_evaluated_pass() const;
    const ConstraintCheck& find(const std::string& name) const;
};

// Evaluates the smallness constraints on (C_l, C_u, C_2) and the window for
// the matching exponent alpha. Operator-norm constraints are marked
// Unevaluated when the constants are not supplied.
AdmissibilityReport check_admissibility(const AdmissibilityConstants& consts, double alpha);

// combination appearing in the operator-norm constraint
double coupling_f(double x, double y, double z, double norm_K, double norm_comm);

// Admissible-alpha window (lo, hi) for given C_l, C_u.
void alpha_window(double c_l, double c_u, double& lo, double& hi);

// Constants for the oscillatory recipe lambda(t) = t^a (2 + c0 sin log t),
// given the externally supplied operator norms. Also returns the largest
// admissible c0 through `c0_max`.
AdmissibilityConstants oscillatory_recipe_constants(double a, double c0, double norm_K,
                                                    double norm_K_half, double norm_comm,
                                                    double c_rho, double& c0_max);

struct GrowthEnvelope {
    double lower = 0.0, upper = 0.0, ratio = 0.0;
    bool contained = false;
};

// ((x/t)^{-C_l}, (x/t)^{C_u}) and the actual ratio lambda(x)/lambda(t).
GrowthEnvelope growth_envelope(const ScalingLaw& law, const AdmissibilityConstants& consts,
                               double t, double x);

} // namespace wmlab
