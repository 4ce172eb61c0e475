#include <cmath>

#include "wmlab/corrections.hpp"

namespace wmlab {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

MatchingResiduals matching_residuals(const InnerCorrections& inner, const OuterCorrections& outer,
                                     double t) {
    MatchingResiduals out;
    const ScalingLaw& law = inner.law();
    const double lam = law.eval(t);
    const double r = lam * std::pow(t, 0.58); // representative matching radius

    // first order: the radiation datum was chosen to cancel this combination
    const double fo = inner.u_ell_firstorder(t, r);
    const double w1m = outer.w1_main(t, r);
    const double v2m = -0.25 * r * outer.F_from_vhat(t);
    out.order1 = (fo - w1m - v2m) / r;

    // second order, part 1 (cubic terms)
    const double r3 = r * r * r;
    out.order2a = (inner.v_ell20_main_at_r(t, r) - outer.w1_cubic_main(t, r) -
                   outer.v2_cubic_main(t, r)) /
                  r3;

    // second order, part 2 (1/r terms; log r terms cancel identically)
    double a0, a1, a2, b0, b1, b2, c0, c1r;
    inner.v_ell_sub_cont_coeffs(t, a0, a1, a2);
    outer.uw2_ell0_cont_coeffs(t, b0, b1, b2);
    outer.v_ex_cont_coeffs(t, c0, c1r);
    out.order2b = a0 - b0 - c0;
    out.log_coeff_1 = a1 - b1 - c1r;
    out.log_coeff_2 = a2 - b2;
    const double c1 = inner.c1(t);
    const double l1 = law.eval(t, 1), l2 = law.eval(t, 2);
    out.order2b_expected =
        -lam * (-6.0 * c1 + (3.0 + 2.0 * kPi * kPi) * lam * l2 + 9.0 * l1 * l1) / 6.0;
    return out;
}

} // namespace wmlab
