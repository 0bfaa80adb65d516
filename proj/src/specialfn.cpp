#include "exitbound/specialfn.hpp"

#include "exitbound/errors.hpp"
#include "exitbound/lanczos_coefficients.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace exitbound {

namespace {

constexpr double kSqrtTwoPi = 2.5066282746310002;

// A_g(z) for the shifted argument z = a - 1.
double lanczos_sum(double z) {
    double sum = lanczos::coefficients[0];
    for (std::size_t k = 1; k < lanczos::coefficients.size(); ++k) {
        sum += lanczos::coefficients[k] / (z + static_cast<double>(k));
    }
    return sum;
}

void require_positive(double a, const char* what) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw DomainError(std::string(what) + ": argument must be finite and > 0");
    }
}

// Modified Lentz evaluation of the continued fraction for I_x(a,b).
double beta_continued_fraction(double x, double a, double b) {
    constexpr int kMaxIter = 10000;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    throw DomainError("beta_inc_regularized: continued fraction did not converge");
}

} // namespace

double gamma_fn(double a) {
    require_positive(a, "gamma_fn");
    if (a > 171.6) throw DomainError("gamma_fn: result overflows for a > 171.6");
    if (a < 0.5) return gamma_fn(a + 1.0) / a;
    const double z = a - 1.0;
    const double t = z + lanczos::g + 0.5;
    // t^(z+1/2) is split in two halves so that large arguments do not overflow.
    const double half = std::pow(t, 0.5 * (z + 0.5));
    return kSqrtTwoPi * half * (half * std::exp(-t)) * lanczos_sum(z);
}

double log_gamma(double a) {
    require_positive(a, "log_gamma");
    if (a < 0.5) return log_gamma(a + 1.0) - std::log(a);
    const double z = a - 1.0;
    const double t = z + lanczos::g + 0.5;
    return std::log(kSqrtTwoPi) + (z + 0.5) * std::log(t) - t + std::log(lanczos_sum(z));
}

double beta_fn(double a, double b) {
    require_positive(a, "beta_fn");
    require_positive(b, "beta_fn");
    if (a + b < 170.0) return gamma_fn(a) * gamma_fn(b) / gamma_fn(a + b);
    return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

double beta_inc_regularized(const BetaArgs& args) {
    const double x = args.x;
    const double a = args.a;
    const double b = args.b;
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("beta_inc_regularized: x must lie in [0,1]");
    require_positive(a, "beta_inc_regularized (a)");
    require_positive(b, "beta_inc_regularized (b)");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;

    const double log_front = a * std::log(x) + b * std::log1p(-x)
                             - (log_gamma(a) + log_gamma(b) - log_gamma(a + b));
    const double front = std::exp(log_front);
    double value;
    if (x < (a + 1.0) / (a + b + 2.0)) {
        value = front * beta_continued_fraction(x, a, b) / a;
    } else {
        value = 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
    }
    if (value < 0.0) value = 0.0;
    if (value > 1.0) value = 1.0;
    return value;
}

double beta_inc_regularized(double x, double a, double b) {
    return beta_inc_regularized(BetaArgs{x, a, b});
}

double beta_inc_lower_bound(double x, int d) {
    if (d < 3) throw DomainError("beta_inc_lower_bound: requires d >= 3");
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("beta_inc_lower_bound: x must lie in [0,1]");
    const double dd = static_cast<double>(d);
    return 2.0 / (std::sqrt(std::numbers::pi) * (dd - 1.0)) * std::sqrt(dd / 2.0 - 0.75)
           * std::pow(x, (dd - 1.0) / 2.0);
}

double cap_area_fraction(double omega, int d) {
    if (d < 2) throw DomainError("cap_area_fraction: requires d >= 2");
    if (!(omega >= 0.0 && omega <= std::numbers::pi / 2.0)) {
        throw DomainError("cap_area_fraction: omega must lie in [0, pi/2]");
    }
    const double s = std::sin(omega);
    return 0.5 * beta_inc_regularized(s * s, 0.5 * (d - 1), 0.5);
}

double unit_ball_volume(int d) {
    if (d < 1) throw DomainError("unit_ball_volume: requires d >= 1");
    return std::pow(std::numbers::pi, 0.5 * d) / gamma_fn(0.5 * d + 1.0);
}

double unit_sphere_area(int d) {
    if (d < 1) throw DomainError("unit_sphere_area: requires d >= 1");
    return d * unit_ball_volume(d);
}

} // namespace exitbound
