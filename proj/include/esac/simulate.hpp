#pragma once
// Closed-loop stochastic simulation of the event-triggered schemes.
//
// Each step k: the sensor triggers when |x_k| > d; a triggered packet is
// delivered with probability q and then finds N_k units with probability
// p_N; the scheme produces u_k; the plant advances with disturbance w_k.
//
// Random numbers: std::mt19937_64 seeded directly with the run seed.
// Uniforms take the top 53 bits of a draw (k >> 11) * 2^-53 in [0, 1);
// normals use Marsaglia's polar method on those uniforms. Monte Carlo run r
// uses seed base_seed XOR r, so every run is reproducible on its own.

#include "esac/linalg.hpp"
#include "esac/markov_core.hpp"
#include "esac/schemes.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace esac {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();

    /// Standard normal (polar method; the second variate is cached).
    double normal();

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

/// Channel outcome and processor availability for one step.
/// Not triggered -> (Silent, 0). Triggered -> delivered with probability q,
/// N drawn from p only when delivered.
Environment sample_env(Rng& rng, bool trigger, const ChannelModel& channel);

struct PlantModel {
    /// x_{k+1} = step(x_k, u_k, w_k)
    std::function<double(double x, double u, double w)> step;
    double noise_std = 0.0;
    double x0 = 0.0;
    std::function<double(double)> lyapunov;

    /// Noise-free model used for buffered predictions.
    PlantMap model() const;
};

struct SchemeConfig {
    Scheme scheme = Scheme::A2;
    int eta = 1;    ///< fine-law cost; forced to 1 by A1 and B1
    int lambda = 1; ///< buffer length
    double d = 1.0; ///< trigger threshold
    ChannelModel channel{1.0, {0.0, 1.0}};
    ControlLaw coarse;
    ControlLaw fine;
};

/// Throws std::invalid_argument for eta < 1, lambda < 1, d < 0 or missing
/// control laws.
void validate(const SchemeConfig& cfg);

struct TrajectoryStep {
    int k = 0;
    double x = 0.0;
    double u = 0.0;
    Gamma gamma = Gamma::Silent;
    int units = 0;
    int fine = 0;
    int coarse = 0;
    double v = 0.0;
    std::vector<double> buffer; ///< contents after the step; empty for B1/B2
};

struct Trajectory {
    std::vector<TrajectoryStep> steps; ///< k = 0 .. horizon-1 (fewer if divergent)
    std::vector<double> v;             ///< V(x_k), k = 0 .. last finite state
    bool divergent = false;
};

/// |x| above this marks a run divergent.
inline constexpr double kDivergenceBound = 1e12;

/// Environment source for forced scenarios: (k, triggered) -> environment.
using EnvSource = std::function<Environment(int k, bool triggered)>;

Trajectory simulate_trajectory(const PlantModel& plant, const SchemeConfig& cfg, int horizon, std::uint64_t seed);

/// Same loop with the environment supplied by `env`; disturbance draws still
/// come from `seed` when plant.noise_std > 0.
Trajectory simulate_trajectory(const PlantModel& plant, const SchemeConfig& cfg, int horizon, const EnvSource& env,
                               std::uint64_t seed = 0);

struct MonteCarloResult {
    int horizon = 0;
    int runs = 0;
    std::vector<double> mean_v;               ///< length horizon+1
    std::vector<double> trigger_rate_by_step; ///< fraction of runs with |x_k| > d, length horizon+1
    double trigger_rate = 0.0;                ///< over all runs and steps k < horizon
    int divergent_runs = 0;
};

/// Thread count from ESAC_THREADS (integer >= 1), else the hardware
/// concurrency. Throws std::invalid_argument on a malformed value.
int default_thread_count();

/// Averages V(x_k) over `runs` independent realizations. Divergent runs
/// carry their last finite V forward and are counted. Per-run paths are
/// reduced in run-index order, so the result does not depend on `threads`.
/// An exception thrown by any run stops the remaining work and is rethrown.
MonteCarloResult monte_carlo(const PlantModel& plant, const SchemeConfig& cfg, int horizon, int runs,
                             std::uint64_t base_seed, int threads = 0);

/// Runs the two-law buffer under always-triggered sampled environments for
/// `steps` transitions and counts state-index transitions. Requires a buffer
/// long enough for the chain (required_buffer_length).
Matrix count_buffer_transitions(const ChannelModel& channel, int eta, int lambda, long steps, std::uint64_t seed);

/// The scalar benchmark plant x+ = -1.34 x + 0.01 sin x + u + w with
/// V(x) = |x|, x0 = 20, unit-variance noise, and the laws
/// kappa(x) = 1.34 x - 0.01 sin x + c |x| which give |f(x, kappa(x))| = c |x|.
struct ExampleSystem {
    PlantModel plant;
    double open_loop_bound = 1.35;

    /// c = 0.9 reproduces the benchmark coarse law.
    ControlLaw coarse_law(double c1 = 0.9) const;
    ControlLaw fine_law(double c2, int eta) const;
};

ExampleSystem example_system();

} // namespace esac
