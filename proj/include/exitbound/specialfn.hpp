#pragma once

namespace exitbound {

struct BetaArgs {
    double x;
    double a;
    double b;
};

// Gamma function for a in (0, 171].
double gamma_fn(double a);

// log Gamma(a) for a > 0.
double log_gamma(double a);

// Euler beta function B(a, b).
double beta_fn(double a, double b);

// Regularized incomplete beta I_x(a, b).
double beta_inc_regularized(const BetaArgs& args);
double beta_inc_regularized(double x, double a, double b);

// Polynomial lower bound for I_x((d-1)/2, 1/2), d >= 3.
double beta_inc_lower_bound(double x, int d);

// Fraction of S^{d-1} covered by the cap of polar half-angle omega in [0, pi/2].
double cap_area_fraction(double omega, int d);

// Volume of the unit ball in R^d.
double unit_ball_volume(int d);

// Surface area of the unit sphere S^{d-1}.
double unit_sphere_area(int d);

} // namespace exitbound
