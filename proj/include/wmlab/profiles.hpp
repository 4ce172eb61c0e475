#pragma once

#include "wmlab/jet.hpp"
#include "wmlab/specfun.hpp"

namespace wmlab {

// scalar overloads so the templates below also instantiate with double
inline double li2(double x) { return dilog(x); }
using std::atan;
using std::exp;
using std::log;
using std::pow;
using std::sqrt;

// Soliton profile and the two homogeneous solutions of the linearized
// elliptic operator w'' + w'/R - cos(2 Q(R)) w / R^2.
template <class T>
T soliton_Q(const T& R) {
    return 2.0 * atan(R);
}

template <class T>
T phi0_profile(const T& R) {
    return 2.0 * R / (1.0 + R * R);
}

template <class T>
T e2_profile(const T& R) {
    const T R2 = R * R;
    return (R2 * R2 + 4.0 * R2 * log(R) - 1.0) / (2.0 * R * (R2 + 1.0));
}

// First-iteration inner profiles: v_ell = f1 lambda'^2 + lambda lambda'' f2 + c1 R/(1+R^2)
template <class T>
T f1_profile(const T& R) {
    const T R2 = R * R;
    return R * (R2 - 2.0) / (2.0 * (1.0 + R2));
}

template <class T>
T f2_profile(const T& R) {
    const T R2 = R * R;
    return (R2 * (2.0 * R2 - 1.0) - (R2 * R2 - 1.0) * log(1.0 + R2) + 2.0 * R2 * li2(-R2)) /
           (2.0 * R * (1.0 + R2));
}

// Subtracted profiles entering the second-order matching:
// v_ell_sub = (2 c1 - 3 lambda'^2) f4s + lambda lambda'' f3s
template <class T>
T f4s_profile(const T& R) {
    return R / (2.0 * (1.0 + R * R));
}

template <class T>
T f3s_profile(const T& R) {
    const T R2 = R * R;
    return (R2 * (2.0 * (1.0 + R2) * log(R) - 3.0) - (R2 * R2 - 1.0) * log(1.0 + R2) +
            2.0 * R2 * li2(-R2)) /
           (2.0 * R * (1.0 + R2));
}

// Large-R closed forms of the second-iteration inner correction.
double f3_inner(double R);
double f4_inner(double R);

inline double f3_inner_leading(double R) { return R * R * R / 16.0; }
inline double f4_inner_leading(double R) { return R * R * R * (7.0 - 4.0 * std::log(R)) / 32.0; }

} // namespace wmlab
