#pragma once

#include <memory>
#include <vector>

#include "wmlab/profiles.hpp"
#include "wmlab/quad.hpp"
#include "wmlab/scaling.hpp"

namespace wmlab {

// ---------------------------------------------------------------------------
// symbol-type principal-value-free integrals shared by several corrections:
//   i1(t, m) = int_0^t   (lambda^(m)(t+w) - lambda^(m)(t)) / w dw
//   i2(t, m) = int_t^inf  lambda^(m)(t+w) / w dw
// and their exact t-derivatives (boundary terms assembled from jets).
// ---------------------------------------------------------------------------
namespace symint {
double i1(const ScalingLaw& law, double t, int m, const QuadSpec& spec = {});
double i2(const ScalingLaw& law, double t, int m, const QuadSpec& spec = {});
double i1_deriv(const ScalingLaw& law, double t, int m, int k, const QuadSpec& spec = {});
double i2_deriv(const ScalingLaw& law, double t, int m, int k, const QuadSpec& spec = {});
} // namespace symint

enum class C1Mode { Matched, Zero };

// ---------------------------------------------------------------------------
// Inner (elliptic) corrections: u_ell and u_ell,2 with their exact time jets.
// ---------------------------------------------------------------------------
class InnerCorrections {
  public:
    InnerCorrections(const ScalingLaw& law, C1Mode mode = C1Mode::Matched);

    const ScalingLaw& law() const { return *law_; }
    C1Mode c1_mode() const { return mode_; }

    LawJet c1_jet(double t) const;
    double c1(double t, int k = 0) const { return c1_jet(t).deriv(k); }

    // u_ell(t,r) = v_ell(t, r/lambda) and its time jet at fixed r
    LawJet u_ell_jet(double t, double r) const;
    double u_ell(double t, double r, int dt = 0) const;

    // leading large-R part R(lambda'^2/2 + lam lam'' - lam lam'' log R)
    LawJet u_ell_lgR_jet(double t, double r) const;
    double u_ell_firstorder(double t, double r) const { return u_ell_lgR_jet(t, r).value(); }

    // RHS pieces for the second iteration
    double err0(double t, double r) const;
    double err1(double t, double r) const;

    // u_ell,2(t,r): particular solution by variation of parameters, exact jet
    LawJet u_ell2_jet(double t, double r, const QuadSpec& spec = {}) const;
    double u_ell2(double t, double r, int dt = 0, const QuadSpec& spec = {}) const;

    // closed-form large-R pieces of u_ell,2
    double v_ell20(double t, double R) const;
    double v_ell20_main(double t, double s) const;       // s = r/lambda
    double v_ell20_main_at_r(double t, double r) const;  // evaluated with s = r/lambda
    double soln1(double t, double s) const;
    double soln2(double t, double r, const QuadSpec& spec = {}) const; // VoP with err1

    // second-order matching pieces
    double v_ell_sub(double t, double R) const;
    // (a0 + a1 log r + a2 log^2 r)/r
    void v_ell_sub_cont_coeffs(double t, double& a0, double& a1, double& a2) const;
    double v_ell_sub_cont(double t, double r) const;

  private:
    const ScalingLaw* law_;
    C1Mode mode_;
};

// Particular solution of w'' + w'/R - cos(2Q(R))/R^2 w = F on (0, Rmax]:
//   w(R) = -phi0(R)/2 int_0^R F s e2 ds + e2(R) int_0^R F s phi0/2 ds
double solve_linearized_elliptic(const Fn1& F, double R, const QuadSpec& spec = {});

// ---------------------------------------------------------------------------
// Outer (wave) corrections.
// ---------------------------------------------------------------------------

struct RadiationTables; // opaque: H/H'/H'' splines and the vhat20 table

class OuterCorrections {
  public:
    explicit OuterCorrections(const ScalingLaw& law);
    ~OuterCorrections();
    OuterCorrections(OuterCorrections&&) noexcept;

    const ScalingLaw& law() const { return *law_; }

    // ---- first wave iteration -------------------------------------------
    // w1 and dt^k w1 (k <= 6), plus the r-derivative
    double w1(double t, double r, int dt = 0) const;
    double w1_r(double t, double r) const;
    double w1_main(double t, double r) const;
    double w1_sub(double t, double r) const;
    double w1_cubic_main(double t, double r) const;

    // smooth switch that turns the matching source on over [T_lambda, 2 T_lambda]
    double psi(double t, int k = 0) const;
    // H(t) and derivatives (k <= 4); F is its odd extension in t
    double H(double t, int k = 0) const;
    double F(double t, int k = 0) const;

    // ---- radiation --------------------------------------------------------
    // Builds the H spline (up to t_max) and the vhat20 table. Must be called
    // before v2 / radiation-dependent evaluators. Idempotent for growing t_max.
    void build_radiation(double t_max) const;
    bool radiation_built() const;

    double vhat20(double xi) const;        // table lookup (build required)
    double vhat20_direct(double xi) const; // honest sine integral, no table
    // F from the tabulated vhat20 by the frequency integral (roundtrip check)
    double F_from_vhat(double t) const;

    // v2(t,r): angular form for r <= t/2, frequency form beyond
    double v2(double t, double r, int dt = 0) const;
    double v2_r(double t, double r) const;
    double v2_angular(double t, double r, int dt = 0) const;
    double v2_frequency(double t, double r) const;
    double v2_main(double t, double r) const { return -0.25 * r * F(t); }
    double v2_sub(double t, double r) const { return v2(t, r) - v2_main(t, r); }
    double v2_cubic_main(double t, double r) const { return -r * r * r / 32.0 * F(t, 2); }

    // ---- v_ex --------------------------------------------------------------
    double v_ex_ell(double t, double r, int dt = 0) const;
    void v_ex_cont_coeffs(double t, double& a0, double& a1) const;
    double v_ex_cont(double t, double r) const;
    // \widehat{RHS}(s, xi) and exact s-derivatives (k <= 3)
    double rhs_hat(double s, double xi, int ds = 0) const;
    // Psi_k(t, xi) = int_t^inf sin((t-s)xi) ds^{2+k} RHS-hat ds
    double vexsub_psi(double t, double xi, int k = 0) const;
    // v_ex,sub by the iterated (s, xi) integral; dt <= 1
    double v_ex_sub(double t, double r, int dt = 0) const;

    // ---- second wave iteration (elliptic shortcut part) --------------------
    double potential_V(double t, double s) const; // (cos 2Q_{1/lam} - 1)/s^2
    double rhs2(double t, double s, int dt = 0) const;
    double uw2_ell(double t, double r, int dt = 0) const;
    double uw2_ell0(double t, double r) const;
    void uw2_ell0_cont_coeffs(double t, double& b0, double& b1, double& b2) const;
    double uw2_ell0_cont(double t, double r) const;
    double f1_coeff(double t) const; // lam'' + lam'^2/(2 lam) + lam'' log lam

    // ---- kernel -------------------------------------------------------------
    static double kernel_K(double y, double z);
    static double kernel_K_quad(double y, double z, const QuadSpec& spec = {});
    // jump of the third z-derivative across z = y (scaled by the prefactor 4)
    static double kernel_K_dz3_jump(double y);

    QuadSpec quad_spec; // tolerance profile used by the internal quadratures

  private:
    const ScalingLaw* law_;
    std::unique_ptr<RadiationTables> tables_;
};

// ---------------------------------------------------------------------------
// Matching residuals.
// ---------------------------------------------------------------------------
struct MatchingResiduals {
    double order1 = 0.0;  // [u_ell,fo - w1,main - v2,main] / r
    double order2a = 0.0; // [v_ell20,main - w1,cubic - v2,cubic] / r^3
    double order2b = 0.0; // r * (v_ell_sub_cont - uw2_ell0_cont - v_ex_cont)
    double order2b_expected = 0.0; // -lam(-6c1 + (3+2pi^2) lam lam'' + 9 lam'^2)/6
    double log_coeff_1 = 0.0; // residual coefficient of log r / r
    double log_coeff_2 = 0.0; // residual coefficient of log^2 r / r
};

MatchingResiduals matching_residuals(const InnerCorrections& inner, const OuterCorrections& outer,
                                     double t);

} // namespace wmlab
