#include "exitbound/montecarlo.hpp"

#include "exitbound/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <mutex>
#include <thread>

namespace exitbound {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kBisections = 60;

void require_paths(std::uint64_t n, std::uint64_t minimum, const char* who) {
    if (n < minimum)
        throw std::invalid_argument(std::string(who) + ": need at least " + std::to_string(minimum) + " paths");
}

void require_inside(const DomainSpec& domain, const Point& x) {
    if (static_cast<int>(x.size()) != domain.d) throw GeometryError("start point has the wrong dimension");
    if (!contains(domain, x)) throw GeometryError("start point lies outside " + describe(domain));
}

unsigned resolve_workers(unsigned workers, std::uint64_t blocks) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(blocks, 1)));
}

void absorb(const DomainSpec& domain, const Point& x, const DecompositionSpec* decomposition, ExitSample& out) {
    out.exit_point = nearest_boundary_point(domain, x);
    if (decomposition) out.exit_class = classify_boundary(domain, out.exit_point, *decomposition).label;
}

void update_running_max(const Point& x, const Point& start, Point& running) {
    for (std::size_t k = 0; k < x.size(); ++k) running[k] = std::max(running[k], std::abs(x[k] - start[k]));
}

} // namespace

std::string to_string(DtPolicy policy) {
    return policy == DtPolicy::Fixed ? "fixed" : "boundary_adaptive";
}

DtPolicy parse_dt_policy(const std::string& name) {
    if (name == "fixed") return DtPolicy::Fixed;
    if (name == "boundary_adaptive" || name == "adaptive") return DtPolicy::BoundaryAdaptive;
    throw std::invalid_argument("unknown dt policy '" + name + "'");
}

PathParams PathParams::defaults_for(const DomainSpec& domain) {
    const double diam = diameter(domain);
    PathParams p;
    p.dt_base = 1e-3 * diam * diam;
    p.shell_eps = 1e-4 * diam;
    return p;
}

void PathParams::validate() const {
    if (!(dt_base > 0.0)) throw std::invalid_argument("PathParams: dt_base must be > 0");
    if (!(shell_eps > 0.0)) throw std::invalid_argument("PathParams: shell_eps must be > 0");
    if (!(kappa > 0.0 && kappa <= 1.0)) throw std::invalid_argument("PathParams: kappa must lie in (0, 1]");
    if (max_steps == 0) throw std::invalid_argument("PathParams: max_steps must be positive");
}

McEstimate Accumulator::finish(std::uint64_t seed, const std::string& estimator) const {
    McEstimate e;
    e.n = count;
    e.seed = seed;
    e.estimator = estimator;
    e.censored = censored;
    if (count > 0) {
        const double n = static_cast<double>(count);
        e.mean = sum / n;
        if (count > 1) {
            const double var = std::max(0.0, (sumsq - n * e.mean * e.mean) / (n - 1.0));
            e.std_error = std::sqrt(var / n);
        }
    }
    e.ci95_low = e.mean - 1.96 * e.std_error;
    e.ci95_high = e.mean + 1.96 * e.std_error;
    const std::uint64_t total = count + censored;
    if (censored > 0 && static_cast<double>(censored) > 1e-3 * static_cast<double>(total))
        e.warning = "censoring fraction " + std::to_string(static_cast<double>(censored) / static_cast<double>(total)) +
                    " exceeds 0.1%";
    return e;
}

std::vector<Accumulator> run_paths(std::uint64_t n, std::uint64_t seed, unsigned workers, std::size_t functionals,
                                   const std::function<bool(std::uint64_t, PathRng&, double*)>& fn) {
    const std::uint64_t blocks = (n + kBlockSize - 1) / kBlockSize;
    std::vector<std::vector<Accumulator>> per_block(blocks, std::vector<Accumulator>(functionals));
    std::atomic<std::uint64_t> next{0};

    auto worker = [&]() {
        std::vector<double> values(functionals);
        for (;;) {
            const std::uint64_t b = next.fetch_add(1);
            if (b >= blocks) return;
            auto& acc = per_block[b];
            const std::uint64_t end = std::min(n, (b + 1) * kBlockSize);
            for (std::uint64_t i = b * kBlockSize; i < end; ++i) {
                PathRng rng(seed, i);
                if (fn(i, rng, values.data())) {
                    for (std::size_t k = 0; k < functionals; ++k) acc[k].add(values[k]);
                } else {
                    for (auto& a : acc) ++a.censored;
                }
            }
        }
    };

    const unsigned threads = resolve_workers(workers, blocks);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        std::exception_ptr failure;
        std::mutex failure_mutex;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&]() {
                try {
                    worker();
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next.store(blocks);
                }
            });
        }
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }

    std::vector<Accumulator> total(functionals);
    for (const auto& acc : per_block)
        for (std::size_t k = 0; k < functionals; ++k) total[k].merge(acc[k]);
    return total;
}

ExitSample sample_exit(const DomainSpec& domain, const Point& x, const PathParams& params, const PointFunction* f,
                       PathRng& rng, const DecompositionSpec* decomposition) {
    require_inside(domain, x);
    const std::size_t dim = x.size();
    ExitSample out;
    if (params.track_running_max) out.running_max.assign(dim, 0.0);

    Point cur = x;
    Point next(dim);
    Point mid(dim);
    double dist = dist_to_boundary_unchecked(domain, cur);

    while (dist >= params.shell_eps) {
        if (out.steps >= params.max_steps) {
            out.censored = true;
            return out;
        }
        double dt = params.dt_base;
        if (params.dt_policy == DtPolicy::BoundaryAdaptive) dt = std::min(dt, params.kappa * dist * dist);
        const double sd = std::sqrt(dt);
        for (std::size_t k = 0; k < dim; ++k) next[k] = cur[k] + sd * rng.normal();
        ++out.steps;
        out.tau += dt;

        if (!contains(domain, next)) {
            // Locate the crossing on the segment, keep the inside end and snap it to the boundary.
            Point lo = cur;
            Point hi = next;
            for (int it = 0; it < kBisections; ++it) {
                for (std::size_t k = 0; k < dim; ++k) mid[k] = 0.5 * (lo[k] + hi[k]);
                if (contains(domain, mid))
                    lo = mid;
                else
                    hi = mid;
                if (distance(lo, hi) < 1e-3 * params.shell_eps) break;
            }
            absorb(domain, lo, decomposition, out);
            if (f) {
                for (std::size_t k = 0; k < dim; ++k) mid[k] = 0.5 * (cur[k] + lo[k]);
                out.path_integral += (*f)(mid) * dt;
            }
            if (params.track_running_max) update_running_max(out.exit_point, x, out.running_max);
            return out;
        }

        if (f) {
            for (std::size_t k = 0; k < dim; ++k) mid[k] = 0.5 * (cur[k] + next[k]);
            out.path_integral += (*f)(mid) * dt;
        }
        std::swap(cur, next);
        if (params.track_running_max) update_running_max(cur, x, out.running_max);
        dist = dist_to_boundary_unchecked(domain, cur);
    }

    absorb(domain, cur, decomposition, out);
    if (params.track_running_max) update_running_max(out.exit_point, x, out.running_max);
    return out;
}

Point uniform_on_sphere(int d, PathRng& rng) {
    Point v(static_cast<std::size_t>(d));
    double n2 = 0.0;
    do {
        n2 = 0.0;
        for (auto& c : v) {
            c = rng.normal();
            n2 += c * c;
        }
    } while (n2 == 0.0);
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& c : v) c *= inv;
    return v;
}

ExitSample sample_exit_wos(const DomainSpec& domain, const Point& x, double wos_eps, std::uint64_t max_steps,
                           PathRng& rng) {
    require_inside(domain, x);
    ExitSample out;
    Point cur = x;
    double dist = dist_to_boundary_unchecked(domain, cur);
    while (dist >= wos_eps) {
        if (out.steps >= max_steps) {
            out.censored = true;
            return out;
        }
        const Point dir = uniform_on_sphere(domain.d, rng);
        for (std::size_t k = 0; k < cur.size(); ++k) cur[k] += dist * dir[k];
        ++out.steps;
        dist = dist_to_boundary_unchecked(domain, cur);
    }
    out.exit_point = nearest_boundary_point(domain, cur);
    return out;
}

std::vector<McEstimate> estimate_exit_functionals(
    const DomainSpec& domain, const Point& x, std::uint64_t n, const PathParams& params, std::uint64_t seed,
    const std::vector<std::pair<std::string, std::function<double(const ExitSample&)>>>& functionals,
    const DecompositionSpec* decomposition, const PointFunction* f, unsigned workers) {
    domain.validate();
    params.validate();
    require_inside(domain, x);
    auto acc = run_paths(n, seed, workers, functionals.size(), [&](std::uint64_t, PathRng& rng, double* out) {
        const ExitSample s = sample_exit(domain, x, params, f, rng, decomposition);
        if (s.censored) return false;
        for (std::size_t k = 0; k < functionals.size(); ++k) out[k] = functionals[k].second(s);
        return true;
    });
    std::vector<McEstimate> result;
    result.reserve(functionals.size());
    for (std::size_t k = 0; k < functionals.size(); ++k) result.push_back(acc[k].finish(seed, functionals[k].first));
    return result;
}

McEstimate estimate_v_alpha(const DomainSpec& domain, const Point& x, double alpha, std::uint64_t n,
                            const PathParams& params, std::uint64_t seed, unsigned workers) {
    require_paths(n, 100, "estimate_v_alpha");
    if (!(alpha >= 0.0)) throw DomainError("estimate_v_alpha: alpha must be >= 0");
    if (alpha == 0.0) {
        require_inside(domain, x);
        Accumulator a;
        a.sum = static_cast<double>(n);
        a.sumsq = static_cast<double>(n);
        a.count = n;
        return a.finish(seed, "em_tau_pow");
    }
    return estimate_exit_functionals(domain, x, n, params, seed,
                                     {{"em_tau_pow", [alpha](const ExitSample& s) { return std::pow(s.tau, alpha); }}},
                                     nullptr, nullptr, workers)
        .front();
}

McEstimate estimate_h(const DomainSpec& domain, const DecompositionSpec& decomposition, const Point& x,
                      std::uint64_t n, const PathParams& params, std::uint64_t seed, unsigned workers) {
    require_paths(n, 1, "estimate_h");
    if (decomposition.kind == Decomposition::Whole) {
        require_inside(domain, x);
        Accumulator a;
        a.count = n;
        return a.finish(seed, "em_gamma1_fraction");
    }
    return estimate_exit_functionals(
               domain, x, n, params, seed,
               {{"em_gamma1_fraction",
                 [](const ExitSample& s) { return s.exit_class == BoundaryLabel::Gamma1 ? 1.0 : 0.0; }}},
               &decomposition, nullptr, workers)
        .front();
}

McEstimate estimate_ug_wos(const DomainSpec& domain, const PointFunction& g, const Point& x, std::uint64_t n,
                           double wos_eps, std::uint64_t seed, unsigned workers, std::uint64_t max_steps) {
    require_paths(n, 1, "estimate_ug_wos");
    domain.validate();
    if (!(wos_eps > 0.0)) throw std::invalid_argument("estimate_ug_wos: wos_eps must be > 0");
    require_inside(domain, x);
    auto acc = run_paths(n, seed, workers, 1, [&](std::uint64_t, PathRng& rng, double* out) {
        const ExitSample s = sample_exit_wos(domain, x, wos_eps, max_steps, rng);
        if (s.censored) return false;
        out[0] = g(s.exit_point);
        return true;
    });
    return acc.front().finish(seed, "wos_boundary_mean");
}

McEstimate estimate_uf(const DomainSpec& domain, const PointFunction& f, const Point& x, std::uint64_t n,
                       const PathParams& params, std::uint64_t seed, unsigned workers) {
    require_paths(n, 1, "estimate_uf");
    return estimate_exit_functionals(domain, x, n, params, seed,
                                     {{"em_midpoint_integral", [](const ExitSample& s) { return s.path_integral; }}},
                                     nullptr, &f, workers)
        .front();
}

Point sample_poisson_kernel(const Point& y, PathRng& rng) {
    const int d = static_cast<int>(y.size());
    const double ry = norm(y);
    if (!(ry < 1.0)) throw GeometryError("sample_poisson_kernel: start point must lie inside the unit ball");
    const double num = 1.0 - ry * ry;
    const double bound = num / std::pow(1.0 - ry, d);
    for (;;) {
        Point xi = uniform_on_sphere(d, rng);
        const double kernel = num / std::pow(distance(y, xi), d);
        if (rng.uniform() * bound <= kernel) return xi;
    }
}

McEstimate estimate_h_hat(double omega, const Point& y, std::uint64_t n, std::uint64_t seed, unsigned workers) {
    require_paths(n, 1, "estimate_h_hat");
    if (!(omega >= 0.0 && omega <= kPi / 2.0)) throw DomainError("estimate_h_hat: omega must lie in [0, pi/2]");
    if (omega == 0.0) {
        Accumulator a;
        a.sum = a.sumsq = static_cast<double>(n);
        a.count = n;
        return a.finish(seed, "poisson_kernel_fraction");
    }
    const double c = std::cos(omega);
    auto acc = run_paths(n, seed, workers, 1, [&](std::uint64_t, PathRng& rng, double* out) {
        const Point xi = sample_poisson_kernel(y, rng);
        out[0] = xi[0] < c ? 1.0 : 0.0;
        return true;
    });
    return acc.front().finish(seed, "poisson_kernel_fraction");
}

McEstimate estimate_delta_hat(double omega, int d, const std::vector<double>& polar_grid, std::uint64_t n,
                              std::uint64_t seed, unsigned workers) {
    if (d < 2) throw DomainError("estimate_delta_hat: d must be >= 2");
    if (!(omega >= 0.0 && omega <= kPi / 2.0)) throw DomainError("estimate_delta_hat: omega must lie in [0, pi/2]");
    require_paths(n, 1, "estimate_delta_hat");
    if (omega == 0.0) return estimate_h_hat(0.0, Point(static_cast<std::size_t>(d), 0.0), n, seed, workers);
    if (polar_grid.empty()) throw std::invalid_argument("estimate_delta_hat: empty grid");
    McEstimate best;
    bool first = true;
    for (std::size_t i = 0; i < polar_grid.size(); ++i) {
        const double phi = polar_grid[i];
        if (!(phi > omega && phi <= kPi)) throw DomainError("estimate_delta_hat: grid angle must lie in (omega, pi]");
        Point y(static_cast<std::size_t>(d), 0.0);
        y[0] = 0.5 * std::cos(phi);
        y[1] = 0.5 * std::sin(phi);
        // Each grid point gets its own key so the estimates are independent.
        McEstimate e = estimate_h_hat(omega, y, n, derive_seed(seed, i), workers);
        if (first || e.mean > best.mean) {
            best = e;
            first = false;
        }
    }
    best.seed = seed;
    best.estimator = "poisson_kernel_grid_max_lower_bound";
    return best;
}

} // namespace exitbound
