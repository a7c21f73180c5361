#include "darboux/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "darboux/catalog.hpp"
#include "darboux/errors.hpp"
#include "darboux/quadrature.hpp"

namespace darboux {
namespace {

constexpr double kTwoPi = 6.2831853071795864769;

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("DARBOUX_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return std::min(v, 64);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return std::clamp(static_cast<int>(hw), 1, 16);
}

// Reflection overshoots underestimate local time; paired with the mirror
// step they converge to half of it, hence the factor two in the elastic
// kill probability.
constexpr double kLocalTimeFactor = 2.0;

enum class EdgeRule { None, Absorb, Reflect, ElasticKill };

struct Edge {
    EdgeRule rule = EdgeRule::None;
    double at = 0.0;
    double gamma = 0.0;
};

Edge edge_for(const Interval& iv, const BoundaryCondition& bc, bool left) {
    Edge e;
    e.at = left ? iv.left : iv.right;
    if (!std::isfinite(e.at)) return e;
    switch (bc.kind) {
        case BoundaryCondition::Kind::Reflecting:
            e.rule = EdgeRule::Reflect;
            break;
        case BoundaryCondition::Kind::Elastic:
            e.rule = EdgeRule::ElasticKill;
            e.gamma = bc.elastic_param;
            break;
        case BoundaryCondition::Kind::Killing:
        case BoundaryCondition::Kind::NotApplicable:
            // killing boundaries and finite exit/natural endpoints both
            // terminate the path on contact
            e.rule = EdgeRule::Absorb;
            break;
    }
    return e;
}

}  // namespace

PathRng::PathRng(std::uint64_t seed, std::uint64_t path) {
    state_ = mix64(seed) ^ mix64(path * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL);
}

std::uint64_t PathRng::next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double PathRng::uniform() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
}

double PathRng::gaussian() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double a = kTwoPi * uniform();
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
}

double PathRng::exponential() { return -std::log(uniform()); }

long SimReport::alive_count() const {
    long n = 0;
    for (const SimOutcome& o : outcomes) n += o.alive ? 1 : 0;
    return n;
}

double SimReport::survival_fraction() const {
    return outcomes.empty() ? 0.0 : static_cast<double>(alive_count()) / outcomes.size();
}

SimReport simulate_paths(const DiffusionSpec& spec, double x0, double t, const SimConfig& cfg) {
    if (!spec.interval.contains(x0)) throw std::invalid_argument("simulate_paths: x0 not interior");
    if (!(t >= 0.0)) throw std::invalid_argument("simulate_paths: t must be >= 0");
    const long n_steps = t == 0.0 ? 0 : std::max<long>(1, std::lround(t / cfg.dt));
    const double dt = t == 0.0 ? 0.0 : t / static_cast<double>(n_steps);
    const double sqdt = std::sqrt(dt);
    const Edge left = edge_for(spec.interval, spec.left_bc, true);
    const Edge right = edge_for(spec.interval, spec.right_bc, false);

    SimReport rep;
    rep.outcomes.resize(cfg.n_paths);
    std::vector<long> flag_steps(cfg.n_paths, 0);
    std::vector<int> death_kind(cfg.n_paths, 0);  // 0 alive, 1 hazard, 2 boundary

    auto run_path = [&](long p) {
        PathRng rng(cfg.seed, static_cast<std::uint64_t>(p));
        double x = x0;
        const double clock = rng.exponential();
        double hazard = 0.0;
        SimOutcome out;
        long flags = 0;
        for (long k = 0; k < n_steps; ++k) {
            const double c = spec.killing(x);
            const double new_hazard = hazard + c * dt;
            if (new_hazard >= clock) {
                const double frac = (clock - hazard) / std::max(new_hazard - hazard, 1e-300);
                out.alive = false;
                out.kill_time = (k + frac) * dt;
                death_kind[p] = 1;
                rep.outcomes[p] = out;
                flag_steps[p] = flags;
                return;
            }
            hazard = new_hazard;

            const double b = spec.drift(x);
            const double s = spec.sigma(x);
            if (std::abs(b) * dt > 0.5) ++flags;
            double xn = x + b * dt + s * sqdt * rng.gaussian();

            bool dead = false;
            for (const Edge* e : {&left, &right}) {
                if (e->rule == EdgeRule::None) continue;
                const double d_old = (e == &left) ? x - e->at : e->at - x;
                double d_new = (e == &left) ? xn - e->at : e->at - xn;
                switch (e->rule) {
                    case EdgeRule::Absorb:
                        if (d_new <= 0.0) {
                            dead = true;
                        } else {
                            const double p_cross = std::exp(-2.0 * d_old * d_new / (s * s * dt));
                            if (p_cross > 1e-14 && rng.uniform() < p_cross) dead = true;
                        }
                        break;
                    case EdgeRule::Reflect:
                        if (d_new < 0.0) xn = (e == &left) ? 2.0 * e->at - xn : 2.0 * e->at - xn;
                        break;
                    case EdgeRule::ElasticKill:
                        if (d_new < 0.0) {
                            const double depth = -d_new;
                            xn = 2.0 * e->at - xn;
                            const double p_kill =
                                -std::expm1(-e->gamma * kLocalTimeFactor * depth);
                            if (rng.uniform() < p_kill) dead = true;
                        }
                        break;
                    case EdgeRule::None:
                        break;
                }
                if (dead) break;
            }
            if (dead) {
                out.alive = false;
                out.kill_time = (k + 1) * dt;
                death_kind[p] = 2;
                rep.outcomes[p] = out;
                flag_steps[p] = flags;
                return;
            }
            x = xn;
        }
        out.alive = true;
        out.position = x;
        rep.outcomes[p] = out;
        flag_steps[p] = flags;
    };

    const int n_threads = resolve_threads(cfg.threads);
    if (n_threads <= 1 || cfg.n_paths < 256) {
        for (long p = 0; p < cfg.n_paths; ++p) run_path(p);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int w = 0; w < n_threads; ++w) {
            pool.emplace_back([&, w]() {
                for (long p = w; p < cfg.n_paths; p += n_threads) run_path(p);
            });
        }
        for (std::thread& th : pool) th.join();
    }
    for (long p = 0; p < cfg.n_paths; ++p) {
        rep.step_too_large += flag_steps[p];
        if (death_kind[p] == 1) ++rep.hazard_deaths;
        if (death_kind[p] == 2) ++rep.boundary_deaths;
    }
    return rep;
}

HistogramComparison mc_density_error(const std::vector<SimOutcome>& outcomes,
                                     const TransitionKernel& kernel, double t, double x0,
                                     double lo, double hi, int nbins) {
    long alive = 0;
    for (const SimOutcome& o : outcomes) alive += o.alive ? 1 : 0;
    if (alive < 100) {
        throw TooFewSurvivors("mc_density_error: only " + std::to_string(alive) +
                              " surviving paths (need >= 100)");
    }
    const double n = static_cast<double>(outcomes.size());
    HistogramComparison cmp;
    cmp.alive = alive;
    cmp.bins.resize(nbins);
    std::vector<long> counts(nbins, 0);
    for (const SimOutcome& o : outcomes) {
        if (!o.alive) continue;
        if (o.position < lo || o.position >= hi) continue;
        const int b = static_cast<int>((o.position - lo) / (hi - lo) * nbins);
        if (b >= 0 && b < nbins) ++counts[b];
    }
    for (int b = 0; b < nbins; ++b) {
        HistogramBin& bin = cmp.bins[b];
        bin.lo = lo + (hi - lo) * b / nbins;
        bin.hi = lo + (hi - lo) * (b + 1) / nbins;
        bin.mc_mass = counts[b] / n;
        auto f = [&](double u) { return kernel(t, x0, u); };
        bin.kernel_mass = quad_adaptive(f, bin.lo, bin.hi, 1e-10).value;
        const double p = std::clamp(bin.kernel_mass, 0.0, 1.0);
        const double se = std::sqrt(p * (1.0 - p) / n);
        if (se == 0.0) {
            bin.z = counts[b] == 0 ? 0.0 : std::numeric_limits<double>::infinity();
        } else {
            bin.z = (bin.mc_mass - bin.kernel_mass) / se;
        }
        cmp.max_abs_z = std::max(cmp.max_abs_z, std::abs(bin.z));
    }
    return cmp;
}

ExcessiveCheckResult excessive_check(const SeedFunction& seed, double m_h,
                                     const DiffusionSpec& spec_Xtilde, double x0, double t,
                                     const SimConfig& cfg, double slack) {
    const SimReport rep = simulate_paths(spec_Xtilde, x0, t, cfg);
    double sum = 0.0, sumsq = 0.0, comp = 0.0;
    for (const SimOutcome& o : rep.outcomes) {
        const double v = o.alive ? seed.h(o.position) : 0.0;  // h vanishes at the cemetery
        const double y = v - comp;
        const double tt = sum + y;
        comp = (tt - sum) - y;
        sum = tt;
        sumsq += v * v;
    }
    const double n = static_cast<double>(rep.outcomes.size());
    ExcessiveCheckResult res;
    res.mc_mean = sum / n;
    const double var = std::max(0.0, sumsq / n - res.mc_mean * res.mc_mean);
    res.ci_upper = res.mc_mean + 2.576 * std::sqrt(var / n);
    res.bound = std::exp((m_h + seed.lambda) * t) * seed.h(x0);
    res.passed = res.ci_upper <= res.bound * (1.0 + slack);
    return res;
}

McComparison corollary52_check(double gamma, double t, double x, double y, const SimConfig& cfg) {
    if (!(gamma > 0.0) || gamma == 1.0) {
        throw std::invalid_argument("corollary52_check: gamma in (0,inf)\\{1}");
    }
    const double alpha = e3_alpha(gamma);
    if (!(x > alpha) || !(y > alpha)) {
        throw std::invalid_argument("corollary52_check: need x, y > alpha");
    }
    const bool tanh_branch = gamma < 1.0;
    auto kappa = [tanh_branch](double u) {
        const double v = tanh_branch ? std::tanh(u) : 1.0 / std::tanh(u);
        return v * v;
    };

    const long n_steps = std::max<long>(1, std::lround(t / cfg.dt));
    const double dt = t / static_cast<double>(n_steps);
    const double sqdt = std::sqrt(dt);

    std::vector<double> weights(cfg.n_paths, 0.0);
    auto run_path = [&](long p) {
        PathRng rng(cfg.seed, static_cast<std::uint64_t>(p));
        double w = x;
        double hazard = 0.0;
        double barrier_weight = 1.0;
        for (long k = 0; k < n_steps; ++k) {
            hazard += kappa(w) * dt;
            const double wn = w + sqdt * rng.gaussian();
            if (wn <= alpha) return;  // min dipped below alpha
            barrier_weight *= -std::expm1(-2.0 * (w - alpha) * (wn - alpha) / dt);
            w = wn;
        }
        if (w <= y) weights[p] = std::exp(-hazard) * barrier_weight;
    };
    const int n_threads = resolve_threads(cfg.threads);
    if (n_threads <= 1 || cfg.n_paths < 256) {
        for (long p = 0; p < cfg.n_paths; ++p) run_path(p);
    } else {
        std::vector<std::thread> pool;
        for (int wkr = 0; wkr < n_threads; ++wkr) {
            pool.emplace_back([&, wkr]() {
                for (long p = wkr; p < cfg.n_paths; p += n_threads) run_path(p);
            });
        }
        for (std::thread& th : pool) th.join();
    }

    long contributing = 0;
    double sum = 0.0, sumsq = 0.0, comp = 0.0;
    for (double v : weights) {
        if (v > 0.0) ++contributing;
        const double yk = v - comp;
        const double tt = sum + yk;
        comp = (tt - sum) - yk;
        sum = tt;
        sumsq += v * v;
    }
    if (contributing < 100) {
        throw TooFewSurvivors("corollary52_check: only " + std::to_string(contributing) +
                              " contributing paths");
    }
    const double n = static_cast<double>(cfg.n_paths);
    McComparison res;
    res.mc_value = sum / n;
    res.mc_se = std::sqrt(std::max(0.0, sumsq / n - res.mc_value * res.mc_value) / n);

    const ExampleModel m = make_example("e3", gamma);
    auto f = [&](double u) { return pYtilde_eval(m, t, x - alpha, u); };
    res.reference = quad_adaptive(f, 0.0, y - alpha, 1e-10).value;
    res.z = (res.mc_value - res.reference) / std::max(res.mc_se, 1e-300);
    res.passed = std::abs(res.z) <= 3.0;
    return res;
}

}  // namespace darboux
