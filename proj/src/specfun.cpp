#include "wmlab/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wmlab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kEulerGamma = 0.577215664901532860606512090082402431;

// ---------------------------------------------------------------------------
// J0, J1: long-double power series below the crossover, Hankel asymptotic
// expansion above. The series is summed in long double because the terms
// alternate and grow to ~1e5 before decaying at the crossover point.
// ---------------------------------------------------------------------------

constexpr double kJSeriesMax = 16.0;

long double j_series(long double x, int nu) {
    const long double q = x * 0.5L;
    long double term = 1.0L;
    for (int j = 1; j <= nu; ++j) term *= q / j;
    long double sum = term;
    const long double m = -q * q;
    for (int k = 1; k < 200; ++k) {
        term *= m / (static_cast<long double>(k) * (k + nu));
        sum += term;
        if (std::abs(term) < 1e-22L * (1.0L + std::abs(sum))) break;
    }
    return sum;
}

// Hankel asymptotic P/Q sums for J_nu, truncated at the smallest term.
void hankel_pq(double x, int nu, double& p, double& q) {
    const double mu = 4.0 * nu * nu;
    const double ix = 1.0 / (8.0 * x);
    double term = 1.0;
    p = 1.0;
    q = 0.0;
    double prev = std::numeric_limits<double>::max();
    for (int k = 0; k < 40; ++k) {
        // odd index -> Q, even -> P
        double num = mu - (2.0 * k + 1.0) * (2.0 * k + 1.0);
        term *= num * ix / (k + 1.0);
        double mag = std::abs(term);
        if (mag > prev) break;
        prev = mag;
        if (k % 2 == 0) {
            q += ((k / 2) % 2 == 0) ? term : -term;
        } else {
            p += (((k + 1) / 2) % 2 == 0) ? term : -term;
        }
        if (mag < 1e-18) break;
    }
}

double j_asymptotic(double x, int nu) {
    double p, q;
    hankel_pq(x, nu, p, q);
    const double w = x - (0.5 * nu + 0.25) * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(w) - q * std::sin(w));
}

// ---------------------------------------------------------------------------
// I0, I1: series below crossover, exponential asymptotic expansion above.
// ---------------------------------------------------------------------------

constexpr double kISeriesMax = 18.0;

long double i_series(long double x, int nu) {
    const long double q = x * 0.5L;
    long double term = 1.0L;
    for (int j = 1; j <= nu; ++j) term *= q / j;
    long double sum = term;
    const long double m = q * q;
    for (int k = 1; k < 300; ++k) {
        term *= m / (static_cast<long double>(k) * (k + nu));
        sum += term;
        if (term < 1e-22L * sum) break;
    }
    return sum;
}

double i_asymptotic(double x, int nu) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0, sum = 1.0;
    double prev = std::numeric_limits<double>::max();
    for (int k = 1; k < 40; ++k) {
        term *= -(mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * x * k);
        if (std::abs(term) > prev) break;
        prev = std::abs(term);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return std::exp(x) / std::sqrt(2.0 * kPi * x) * sum;
}

// ---------------------------------------------------------------------------
// K0, K1: log series for small x; for moderate x the integral representation
// K_nu(x) = int_0^inf exp(-x cosh u) cosh(nu u) du evaluated with a fixed
// Gauss-Legendre panel scheme (the integrand is entire, so panels converge
// fast); converging asymptotic series for large x.
// ---------------------------------------------------------------------------

constexpr double kKSeriesMax = 2.0;
constexpr double kKAsymptoticMin = 90.0;

void k01_series(double x, double& k0, double& k1) {
    const long double q = 0.5L * x;
    const long double q2 = q * q;
    const long double lq = std::log((long double)q);
    // I0, I1 partial pieces reused in the log terms
    const long double i0 = i_series(x, 0);
    const long double i1 = i_series(x, 1);

    // K0 = -(log(x/2)+gamma) I0 + sum_{k>=1} q^{2k}/(k!)^2 h_k
    long double term = 1.0L, sum0 = 0.0L, hk = 0.0L;
    for (int k = 1; k < 60; ++k) {
        term *= q2 / ((long double)k * k);
        hk += 1.0L / k;
        sum0 += term * hk;
        if (term * hk < 1e-24L * (1.0L + std::abs(sum0))) break;
    }
    k0 = static_cast<double>(-(lq + (long double)kEulerGamma) * i0 + sum0);

    // K1 = 1/x + log(x/2) I1 - (x/4) sum_k [psi(k+1)+psi(k+2)] q^{2k}/(k!(k+1)!)
    long double sum1 = 0.0L;
    term = 1.0L;
    long double hk1 = 0.0L, hk2 = 1.0L; // h_k and h_{k+1}
    for (int k = 0; k < 60; ++k) {
        if (k > 0) {
            term *= q2 / ((long double)k * (k + 1));
            hk1 += 1.0L / k;
            hk2 += 1.0L / (k + 1);
        }
        long double piece = term * (-2.0L * (long double)kEulerGamma + hk1 + hk2);
        sum1 += piece;
        if (std::abs(piece) < 1e-24L * (1.0L + std::abs(sum1))) break;
    }
    k1 = static_cast<double>(1.0L / (long double)x + lq * i1 - 0.25L * (long double)x * sum1);
}

// 20-point Gauss-Legendre nodes/weights on [0,1]
constexpr int kGLn = 20;
constexpr double kGLx[kGLn] = {
    0.0034357004074525, 0.0180140363610431, 0.0438827858743371, 0.0804415140888906,
    0.1268340467699246, 0.1819731596367425, 0.2445664990245864, 0.3131469556422902,
    0.3861070744291775, 0.4617367394332513, 0.5382632605667487, 0.6138929255708225,
    0.6868530443577098, 0.7554335009754136, 0.8180268403632575, 0.8731659532300754,
    0.9195584859111094, 0.9561172141256629, 0.9819859636389569, 0.9965642995925475};
constexpr double kGLw[kGLn] = {
    0.0088070035695761, 0.0203007149001935, 0.0313360241670545, 0.0416383707883524,
    0.0509650599086202, 0.0590972659807592, 0.0658443192245883, 0.0710480546591910,
    0.0745864932363019, 0.0763766935653629, 0.0763766935653629, 0.0745864932363019,
    0.0710480546591910, 0.0658443192245883, 0.0590972659807592, 0.0509650599086202,
    0.0416383707883524, 0.0313360241670545, 0.0203007149001935, 0.0088070035695761};

double k_integral(double x, int nu) {
    // truncate where exp(-x cosh u) underflows relative to exp(-x)
    const double umax = std::acosh((705.0 + x) / x);
    const int panels = 8;
    const double h = umax / panels;
    long double sum = 0.0L;
    for (int p = 0; p < panels; ++p) {
        const double a = p * h;
        for (int i = 0; i < kGLn; ++i) {
            const double u = a + h * kGLx[i];
            const double f = std::exp(-x * std::cosh(u)) * std::cosh(nu * u);
            sum += (long double)(kGLw[i] * f);
        }
    }
    return static_cast<double>(sum * h);
}

double k_asymptotic(double x, int nu) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 40; ++k) {
        term *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * x * k);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return std::sqrt(kPi / (2.0 * x)) * std::exp(-x) * sum;
}

} // namespace

double bessel_j0(double x) {
    x = std::abs(x);
    if (x < kJSeriesMax) return static_cast<double>(j_series(x, 0));
    return j_asymptotic(x, 0);
}

double bessel_j1(double x) {
    const double s = x < 0 ? -1.0 : 1.0;
    x = std::abs(x);
    if (x < kJSeriesMax) return s * static_cast<double>(j_series(x, 1));
    return s * j_asymptotic(x, 1);
}

double bessel_i0(double x) {
    if (x < 0.0) throw std::domain_error("bessel_i0: x must be >= 0");
    if (x < kISeriesMax) return static_cast<double>(i_series(x, 0));
    return i_asymptotic(x, 0);
}

double bessel_i1(double x) {
    if (x < 0.0) throw std::domain_error("bessel_i1: x must be >= 0");
    if (x < kISeriesMax) return static_cast<double>(i_series(x, 1));
    return i_asymptotic(x, 1);
}

double bessel_k0(double x) {
    if (x <= 0.0) throw std::domain_error("bessel_k0: x must be > 0");
    if (x < kKSeriesMax) {
        double k0, k1;
        k01_series(x, k0, k1);
        return k0;
    }
    if (x < kKAsymptoticMin) return k_integral(x, 0);
    return k_asymptotic(x, 0);
}

double bessel_k1(double x) {
    if (x <= 0.0) throw std::domain_error("bessel_k1: x must be > 0");
    if (x < kKSeriesMax) {
        double k0, k1;
        k01_series(x, k0, k1);
        return k1;
    }
    if (x < kKAsymptoticMin) return k_integral(x, 1);
    return k_asymptotic(x, 1);
}

double bessel_k2(double x) {
    if (x <= 0.0) throw std::domain_error("bessel_k2: x must be > 0");
    return bessel_k0(x) + 2.0 / x * bessel_k1(x);
}

double bessel(char kind, int order, double x) {
    switch (kind) {
        case 'J':
            if (order == 0) return bessel_j0(x);
            if (order == 1) return bessel_j1(x);
            if (order == 2) return (x == 0.0) ? 0.0 : 2.0 / x * bessel_j1(x) - bessel_j0(x);
            break;
        case 'I':
            if (order == 0) return bessel_i0(x);
            if (order == 1) return bessel_i1(x);
            if (order == 2) return (x == 0.0) ? 0.0 : bessel_i0(x) - 2.0 / x * bessel_i1(x);
            break;
        case 'K':
            if (order == 0) return bessel_k0(x);
            if (order == 1) return bessel_k1(x);
            if (order == 2) return bessel_k2(x);
            break;
        default:
            throw std::invalid_argument("bessel: kind must be J, I or K");
    }
    throw std::invalid_argument("bessel: unsupported order");
}

double bessel_j1_zero(int k) {
    if (k < 1) throw std::invalid_argument("bessel_j1_zero: k must be >= 1");
    // McMahon expansion, then two Newton steps with J1' = J0 - J1/x
    const double b = (k + 0.25) * kPi;
    const double b2 = b * b;
    double x = b - 3.0 / (8.0 * b) - 3.0 / (128.0 * b * b2) * (4.0 * 7.0 - 31.0) / 3.0;
    for (int it = 0; it < 3; ++it) {
        const double f = bessel_j1(x);
        const double fp = bessel_j0(x) - f / x;
        x -= f / fp;
    }
    return x;
}

namespace {

double li2_series(double x) {
    // |x| <= 0.5
    long double term = x, sum = x;
    const long double lx = x;
    for (int k = 2; k < 80; ++k) {
        term *= lx;
        sum += term / ((long double)k * k);
        if (std::abs(term) / ((long double)k * k) < 1e-22L) break;
    }
    return static_cast<double>(sum);
}

double li3_series(double x) {
    long double term = x, sum = x;
    const long double lx = x;
    for (int k = 2; k < 120; ++k) {
        term *= lx;
        sum += term / ((long double)k * k * k);
        if (std::abs(term) < 1e-22L * (long double)k * k * k) break;
    }
    return static_cast<double>(sum);
}

// Li3(-e^u) = -sum_k eta(3-k) u^k / k!, |u| < pi. Used for -2 < x < -1/2.
double li3_eta(double u) {
    static const double eta[] = {
        0.9015426773696957140, // eta(3) = 3 zeta(3)/4
        0.8224670334241132182, // eta(2) = pi^2/12
        0.6931471805599453094, // eta(1) = log 2
        0.5,                   // eta(0)
        0.25,                  // eta(-1)
        0.0,
        -0.125,                // eta(-3)
        0.0,
        0.25,                  // eta(-5)
        0.0,
        -1.0625,               // eta(-7)  = -17/16
        0.0,
        7.75,                  // eta(-9)  = 31/4
        0.0,
        -86.375,               // eta(-11) = -691/8
        0.0,
        1365.25,               // eta(-13) = 5461/4
    };
    long double sum = 0.0L, up = 1.0L, fact = 1.0L;
    for (std::size_t k = 0; k < sizeof(eta) / sizeof(eta[0]); ++k) {
        if (k > 0) {
            up *= u;
            fact *= k;
        }
        sum += (long double)eta[k] * up / fact;
    }
    return static_cast<double>(-sum);
}

} // namespace

double dilog(double x) {
    if (x > 1.0) throw std::domain_error("dilog: argument must be <= 1");
    const double pi2_6 = kPi * kPi / 6.0;
    if (x == 1.0) return pi2_6;
    if (std::abs(x) <= 0.5) return li2_series(x);
    if (x > 0.5) {
        // reflection: Li2(x) + Li2(1-x) = pi^2/6 - log(x) log(1-x)
        return pi2_6 - std::log(x) * std::log1p(-x) - li2_series(1.0 - x);
    }
    if (x >= -1.0) {
        // Landen: Li2(x) = -Li2(x/(x-1)) - log^2(1-x)/2, x/(x-1) in (0,1/2]
        const double l = std::log1p(-x);
        return -dilog(x / (x - 1.0)) - 0.5 * l * l;
    }
    // inversion: Li2(x) + Li2(1/x) = -pi^2/6 - log^2(-x)/2
    const double l = std::log(-x);
    return -dilog(1.0 / x) - pi2_6 - 0.5 * l * l;
}

double trilog(double x) {
    if (x > 0.0) throw std::domain_error("trilog: argument must be <= 0");
    if (x == 0.0) return 0.0;
    if (x >= -0.5) return li3_series(x);
    if (x > -2.0) return li3_eta(std::log(-x));
    // inversion: Li3(x) = Li3(1/x) - log(-x) (log^2(-x) + pi^2) / 6
    const double l = std::log(-x);
    return trilog(1.0 / x) - l * (l * l + kPi * kPi) / 6.0;
}

double zeta3() { return 1.202056903159594285399738161511449991; }

} // namespace wmlab
