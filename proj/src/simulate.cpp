#include "esac/simulate.hpp"

#include "esac/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace esac {
namespace {

// Shared closed-loop loop. `on_step` sees every applied step, `on_state`
// every finite state x_k (k = 0 .. horizon, or up to divergence).
template <typename EnvFn, typename OnStep, typename OnState>
bool run_loop(const PlantModel& plant, const SchemeConfig& cfg, int horizon, EnvFn&& env_for, Rng& noise,
              OnStep&& on_step, OnState&& on_state) {
    const PlantMap model = plant.model();
    Buffer buffer(cfg.lambda);
    double x = plant.x0;
    on_state(0, x);
    for (int k = 0; k < horizon; ++k) {
        const bool triggered = std::abs(x) > cfg.d;
        const Environment env = env_for(k, triggered);
        if (!triggered && env.gamma != Gamma::Silent) {
            throw std::invalid_argument("environment at k = " + std::to_string(k) +
                                        " reports a transmission although |x| <= d");
        }

        double u = 0.0;
        switch (cfg.scheme) {
        case Scheme::B1:
        case Scheme::B2:
            u = b_step(cfg.scheme, x, env, cfg.coarse, cfg.fine, cfg.eta);
            break;
        case Scheme::A1: {
            StepResult r = a1_step(buffer, x, env, cfg.coarse, model);
            u = r.u;
            buffer = std::move(r.buffer);
            break;
        }
        case Scheme::A2: {
            StepResult r = a2_step(buffer, x, env, cfg.coarse, cfg.fine, cfg.eta, model);
            u = r.u;
            buffer = std::move(r.buffer);
            break;
        }
        }
        on_step(k, x, u, env, buffer);

        const double w = plant.noise_std > 0.0 ? plant.noise_std * noise.normal() : 0.0;
        x = plant.step(x, u, w);
        if (!std::isfinite(x) || std::abs(x) > kDivergenceBound) {
            return false;
        }
        on_state(k + 1, x);
    }
    return true;
}

Trajectory trajectory_with(const PlantModel& plant, const SchemeConfig& cfg, int horizon, const EnvSource& env,
                           Rng& rng) {
    validate(cfg);
    if (horizon < 1) {
        throw std::invalid_argument("horizon must be >= 1, got " + std::to_string(horizon));
    }
    Trajectory out;
    out.steps.reserve(static_cast<std::size_t>(horizon));
    out.v.reserve(static_cast<std::size_t>(horizon) + 1);
    const bool buffered = cfg.scheme == Scheme::A1 || cfg.scheme == Scheme::A2;
    const bool finished = run_loop(
        plant, cfg, horizon, env, rng,
        [&](int k, double x, double u, Environment e, const Buffer& b) {
            TrajectoryStep s{k, x, u, e.gamma, e.units, b.fine_count(), b.coarse_count(), plant.lyapunov(x), {}};
            if (buffered) {
                s.buffer.assign(b.values().begin(), b.values().end());
            }
            out.steps.push_back(std::move(s));
        },
        [&out, &plant](int, double x) { out.v.push_back(plant.lyapunov(x)); });
    out.divergent = !finished;
    return out;
}

} // namespace

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }

double Rng::normal() {
    if (spare_) {
        const double z = *spare_;
        spare_.reset();
        return z;
    }
    double a = 0.0;
    double b = 0.0;
    double s = 0.0;
    do {
        a = 2.0 * uniform() - 1.0;
        b = 2.0 * uniform() - 1.0;
        s = a * a + b * b;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = b * scale;
    return a * scale;
}

Environment sample_env(Rng& rng, bool trigger, const ChannelModel& channel) {
    if (!trigger) {
        return {Gamma::Silent, 0};
    }
    if (!(rng.uniform() < channel.q())) {
        return {Gamma::Dropout, 0};
    }
    const std::span<const double> p = channel.p();
    const double draw = rng.uniform();
    double cumulative = 0.0;
    int last_possible = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (p[j] > 0.0) {
            last_possible = static_cast<int>(j);
        }
        cumulative += p[j];
        if (draw < cumulative && p[j] > 0.0) {
            return {Gamma::Delivered, static_cast<int>(j)};
        }
    }
    return {Gamma::Delivered, last_possible}; // rounding in the cumulative sum
}

PlantMap PlantModel::model() const {
    return [step = step](double x, double u) { return step(x, u, 0.0); };
}

void validate(const SchemeConfig& cfg) {
    if (cfg.eta < 1) {
        throw std::invalid_argument("eta must be >= 1, got " + std::to_string(cfg.eta));
    }
    if (cfg.lambda < 1) {
        throw std::invalid_argument("buffer length lambda must be >= 1, got " + std::to_string(cfg.lambda));
    }
    if (!std::isfinite(cfg.d) || cfg.d < 0.0) {
        throw std::invalid_argument("trigger threshold d must be finite and >= 0");
    }
    if (!cfg.coarse.evaluate) {
        throw std::invalid_argument("coarse control law is missing");
    }
    if ((cfg.scheme == Scheme::A2 || cfg.scheme == Scheme::B2) && !cfg.fine.evaluate) {
        throw std::invalid_argument("fine control law is missing");
    }
}

Trajectory simulate_trajectory(const PlantModel& plant, const SchemeConfig& cfg, int horizon, std::uint64_t seed) {
    validate(cfg);
    Rng rng(seed);
    // Environment and disturbance share one stream.
    return trajectory_with(
        plant, cfg, horizon,
        [&rng, &cfg](int, bool triggered) { return sample_env(rng, triggered, cfg.channel); }, rng);
}

Trajectory simulate_trajectory(const PlantModel& plant, const SchemeConfig& cfg, int horizon, const EnvSource& env,
                               std::uint64_t seed) {
    Rng rng(seed);
    return trajectory_with(plant, cfg, horizon, env, rng);
}

int default_thread_count() {
    if (const char* env = std::getenv("ESAC_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || n < 1 || n > 4096) {
            throw std::invalid_argument(std::string("ESAC_THREADS must be an integer >= 1, got '") + env + "'");
        }
        return static_cast<int>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

MonteCarloResult monte_carlo(const PlantModel& plant, const SchemeConfig& cfg, int horizon, int runs,
                             std::uint64_t base_seed, int threads) {
    validate(cfg);
    if (runs < 1) {
        throw std::invalid_argument("runs must be >= 1, got " + std::to_string(runs));
    }
    if (horizon < 1) {
        throw std::invalid_argument("horizon must be >= 1, got " + std::to_string(horizon));
    }
    const int workers = std::max(1, std::min(threads > 0 ? threads : default_thread_count(), runs));
    const auto width = static_cast<std::size_t>(horizon) + 1;

    std::vector<double> paths(static_cast<std::size_t>(runs) * width);
    std::vector<std::vector<long>> trigger_counts(static_cast<std::size_t>(workers), std::vector<long>(width, 0));
    std::vector<int> divergent(static_cast<std::size_t>(workers), 0);
    std::atomic<int> next_run{0};

    auto simulate_runs = [&](int id) {
        auto& triggers = trigger_counts[static_cast<std::size_t>(id)];
        for (int r = next_run++; r < runs; r = next_run++) {
            double* path = paths.data() + static_cast<std::size_t>(r) * width;
            Rng rng(base_seed ^ static_cast<std::uint64_t>(r));
            int filled = 0;
            const bool finished = run_loop(
                plant, cfg, horizon,
                [&rng, &cfg](int, bool triggered) { return sample_env(rng, triggered, cfg.channel); }, rng,
                [](int, double, double, Environment, const Buffer&) {},
                [&](int k, double x) {
                    path[k] = plant.lyapunov(x);
                    if (std::abs(x) > cfg.d) {
                        ++triggers[static_cast<std::size_t>(k)];
                    }
                    filled = k + 1;
                });
            if (!finished) {
                // A divergent state stays far outside the trigger band.
                ++divergent[static_cast<std::size_t>(id)];
                std::fill(path + filled, path + width, path[filled - 1]);
                for (std::size_t k = static_cast<std::size_t>(filled); k < width; ++k) {
                    ++triggers[k];
                }
            }
        }
    };

    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&](int id) {
        try {
            simulate_runs(id);
        } catch (...) {
            const std::lock_guard lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
            next_run = runs; // stop handing out work
        }
    };

    if (workers == 1) {
        worker(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int id = 0; id < workers; ++id) {
            pool.emplace_back(worker, id);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    MonteCarloResult result;
    result.horizon = horizon;
    result.runs = runs;
    result.mean_v.assign(width, 0.0);
    for (int r = 0; r < runs; ++r) {
        kernels::accumulate(result.mean_v, {paths.data() + static_cast<std::size_t>(r) * width, width});
    }
    kernels::scale(result.mean_v, 1.0 / static_cast<double>(runs));

    result.trigger_rate_by_step.assign(width, 0.0);
    long total_triggers = 0;
    for (std::size_t k = 0; k < width; ++k) {
        long count = 0;
        for (const auto& t : trigger_counts) {
            count += t[k];
        }
        if (k + 1 < width) {
            total_triggers += count;
        }
        result.trigger_rate_by_step[k] = static_cast<double>(count) / static_cast<double>(runs);
    }
    result.trigger_rate = static_cast<double>(total_triggers) / (static_cast<double>(runs) * horizon);
    for (int d : divergent) {
        result.divergent_runs += d;
    }
    return result;
}

Matrix count_buffer_transitions(const ChannelModel& channel, int eta, int lambda, long steps, std::uint64_t seed) {
    if (lambda < required_buffer_length(channel.n_max(), eta)) {
        throw std::invalid_argument(*buffer_capacity_warning(lambda, channel.n_max(), eta));
    }
    // Input values are irrelevant here; only the (F, C) bookkeeping matters.
    const ControlLaw unit_law{[](double) { return 1.0; }, 1, 0.0};
    const PlantMap model = [](double x, double) { return x; };
    const auto n = static_cast<Eigen::Index>(channel.n_max()) + 1;
    Matrix counts = Matrix::Zero(n, n);

    Rng rng(seed);
    Buffer buffer(lambda);
    auto index_of = [eta](const Buffer& b) { return static_cast<Eigen::Index>(b.fine_count() * eta + b.coarse_count()); };
    for (long s = 0; s < steps; ++s) {
        const Eigen::Index from = index_of(buffer);
        const Environment env = sample_env(rng, true, channel);
        buffer = a2_step(buffer, 0.0, env, unit_law, unit_law, eta, model).buffer;
        counts(from, index_of(buffer)) += 1.0;
    }
    return counts;
}

ControlLaw ExampleSystem::coarse_law(double c1) const {
    return ControlLaw{[c1](double x) { return 1.34 * x - 0.01 * std::sin(x) + c1 * std::abs(x); }, 1, c1};
}

ControlLaw ExampleSystem::fine_law(double c2, int eta) const {
    return ControlLaw{[c2](double x) { return 1.34 * x - 0.01 * std::sin(x) + c2 * std::abs(x); }, eta, c2};
}

ExampleSystem example_system() {
    ExampleSystem sys;
    sys.plant.step = [](double x, double u, double w) { return -1.34 * x + 0.01 * std::sin(x) + u + w; };
    sys.plant.noise_std = 1.0;
    sys.plant.x0 = 20.0;
    sys.plant.lyapunov = [](double x) { return std::abs(x); };
    return sys;
}

} // namespace esac
