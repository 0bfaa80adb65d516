#pragma once

#include "exitbound/geometry.hpp"
#include "exitbound/philox.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace exitbound {

enum class DtPolicy { Fixed, BoundaryAdaptive };

std::string to_string(DtPolicy policy);
DtPolicy parse_dt_policy(const std::string& name);

struct PathParams {
    double dt_base = 1e-3;
    double shell_eps = 1e-4;
    DtPolicy dt_policy = DtPolicy::BoundaryAdaptive;
    double kappa = 0.1;
    std::uint64_t max_steps = 10'000'000;
    bool track_running_max = false;

    // Defaults scaled to the domain: dt_base = 1e-3 diam^2, shell_eps = 1e-4 diam.
    static PathParams defaults_for(const DomainSpec& domain);
    void validate() const;
    bool operator==(const PathParams&) const = default;
};

struct ExitSample {
    double tau = 0.0;
    Point exit_point;
    double path_integral = 0.0;
    BoundaryLabel exit_class = BoundaryLabel::Gamma0;
    bool censored = false;
    std::uint64_t steps = 0;
    Point running_max; // max_s |B_s^(k) - x^(k)| per coordinate, when tracked
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
    double ci95_low = 0.0;
    double ci95_high = 0.0;
    std::uint64_t seed = 0;
    std::string estimator;
    std::uint64_t censored = 0;
    std::string warning;
};

// Mergeable (sum, sum of squares, count) triple plus the censored count.
struct Accumulator {
    double sum = 0.0;
    double sumsq = 0.0;
    std::uint64_t count = 0;
    std::uint64_t censored = 0;

    void add(double v) {
        sum += v;
        sumsq += v * v;
        ++count;
    }
    void merge(const Accumulator& other) {
        sum += other.sum;
        sumsq += other.sumsq;
        count += other.count;
        censored += other.censored;
    }
    McEstimate finish(std::uint64_t seed, const std::string& estimator) const;
};

using PointFunction = std::function<double(const Point&)>;

// Run-wide settings shared by all estimators.
struct McBudget {
    std::uint64_t paths = 10000;
    std::uint64_t seed = 1;
    unsigned workers = 0; // 0: hardware concurrency; results do not depend on it
};

inline constexpr std::uint64_t kBlockSize = 256;

// Independent seed for sub-run i of a campaign (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (i + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Runs n independent work items in fixed blocks of kBlockSize; block results are merged in
// block order so that the outcome is independent of the number of workers.
// fn(path_index, rng, out) appends one value per functional, or returns false when censored.
std::vector<Accumulator> run_paths(std::uint64_t n, std::uint64_t seed, unsigned workers, std::size_t functionals,
                                   const std::function<bool(std::uint64_t, PathRng&, double*)>& fn);

ExitSample sample_exit(const DomainSpec& domain, const Point& x, const PathParams& params, const PointFunction* f,
                       PathRng& rng, const DecompositionSpec* decomposition = nullptr);

// Walk-on-spheres exit point; censored when max_steps is exceeded.
ExitSample sample_exit_wos(const DomainSpec& domain, const Point& x, double wos_eps, std::uint64_t max_steps,
                           PathRng& rng);

McEstimate estimate_v_alpha(const DomainSpec& domain, const Point& x, double alpha, std::uint64_t n,
                            const PathParams& params, std::uint64_t seed, unsigned workers = 0);

McEstimate estimate_h(const DomainSpec& domain, const DecompositionSpec& decomposition, const Point& x,
                      std::uint64_t n, const PathParams& params, std::uint64_t seed, unsigned workers = 0);

McEstimate estimate_ug_wos(const DomainSpec& domain, const PointFunction& g, const Point& x, std::uint64_t n,
                           double wos_eps, std::uint64_t seed, unsigned workers = 0,
                           std::uint64_t max_steps = 1'000'000);

McEstimate estimate_uf(const DomainSpec& domain, const PointFunction& f, const Point& x, std::uint64_t n,
                       const PathParams& params, std::uint64_t seed, unsigned workers = 0);

// Several path functionals estimated from the same exits (e.g. v and h at one point).
std::vector<McEstimate> estimate_exit_functionals(
    const DomainSpec& domain, const Point& x, std::uint64_t n, const PathParams& params, std::uint64_t seed,
    const std::vector<std::pair<std::string, std::function<double(const ExitSample&)>>>& functionals,
    const DecompositionSpec* decomposition = nullptr, const PointFunction* f = nullptr, unsigned workers = 0);

// Exit point of Brownian motion from y (|y| < 1) on the unit sphere, drawn from the Poisson kernel.
Point sample_poisson_kernel(const Point& y, PathRng& rng);

// Probability that motion from y killed on S(0,1) lands outside the cap {xi_1 >= cos(omega)}.
McEstimate estimate_h_hat(double omega, const Point& y, std::uint64_t n, std::uint64_t seed, unsigned workers = 0);

// Maximum of estimate_h_hat over start points on the mid-sphere S(0, 1/2) with the given polar
// angles (measured from the cone axis). Reported as a lower bound on delta-hat.
McEstimate estimate_delta_hat(double omega, int d, const std::vector<double>& polar_grid, std::uint64_t n,
                              std::uint64_t seed, unsigned workers = 0);

// Uniform point on the unit sphere S^{d-1}.
Point uniform_on_sphere(int d, PathRng& rng);

} // namespace exitbound
