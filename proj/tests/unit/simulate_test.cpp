#include "esac/simulate.hpp"
#include "esac/stability.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

namespace esac {
namespace {

const ChannelModel kBenchmark(0.5, std::vector<double>(5, 0.2));

SchemeConfig benchmark_config(Scheme scheme, int eta) {
    const ExampleSystem sys = example_system();
    SchemeConfig cfg;
    cfg.scheme = scheme;
    cfg.eta = eta;
    cfg.lambda = 4;
    cfg.d = 1.0;
    cfg.channel = kBenchmark;
    cfg.coarse = sys.coarse_law(0.9);
    cfg.fine = sys.fine_law(0.45, eta);
    return cfg;
}

TEST(Rng, UniformRangeAndMoments) {
    Rng rng(42);
    double sum = 0.0;
    double sq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
        sq += u * u;
    }
    EXPECT_NEAR(sum / n, 0.5, 0.005);
    EXPECT_NEAR(sq / n - (sum / n) * (sum / n), 1.0 / 12.0, 0.005);
}

TEST(Rng, NormalMoments) {
    Rng rng(7);
    const int n = 200000;
    double sum = 0.0;
    double sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        sum += z;
        sq += z * z;
    }
    EXPECT_NEAR(sum / n, 0.0, 0.01);
    EXPECT_NEAR(sq / n, 1.0, 0.02);
}

TEST(Rng, SeedReproducible) {
    Rng a(3), b(3);
    for (int i = 0; i < 10; ++i) {
        EXPECT_EQ(a.normal(), b.normal());
    }
    EXPECT_NE(Rng(3).uniform(), Rng(4).uniform());
}

TEST(SampleEnv, Semantics) {
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        const Environment silent = sample_env(rng, false, kBenchmark);
        EXPECT_EQ(silent.gamma, Gamma::Silent);
        EXPECT_EQ(silent.units, 0);
    }
    const ChannelModel perfect(1.0, {0.0, 0.0, 1.0});
    const ChannelModel dead(0.0, {0.0, 0.5, 0.5});
    for (int i = 0; i < 100; ++i) {
        const Environment e = sample_env(rng, true, perfect);
        EXPECT_EQ(e.gamma, Gamma::Delivered);
        EXPECT_EQ(e.units, 2);
        const Environment d = sample_env(rng, true, dead);
        EXPECT_EQ(d.gamma, Gamma::Dropout);
        EXPECT_EQ(d.units, 0);
    }
}

TEST(SampleEnv, Frequencies) {
    Rng rng(99);
    const int n = 100000;
    std::vector<int> counts(6, 0); // 0..4 units, 5 = dropout
    for (int i = 0; i < n; ++i) {
        const Environment e = sample_env(rng, true, kBenchmark);
        ++counts[e.gamma == Gamma::Dropout ? 5u : static_cast<std::size_t>(e.units)];
    }
    EXPECT_NEAR(counts[5] / double(n), 0.5, 0.01);
    for (int j = 0; j < 5; ++j) {
        EXPECT_NEAR(counts[static_cast<std::size_t>(j)] / double(n), 0.1, 0.01);
    }
}

TEST(ExampleSystem, PlantAndLaws) {
    const ExampleSystem sys = example_system();
    EXPECT_EQ(sys.plant.step(0.0, 0.0, 0.0), 0.0);
    EXPECT_EQ(sys.plant.x0, 20.0);
    EXPECT_EQ(sys.plant.noise_std, 1.0);
    const auto k1 = sys.coarse_law().evaluate;
    const auto k2 = sys.fine_law(0.45, 2).evaluate;
    for (double x = -50.0; x <= 50.0; x += 0.37) {
        EXPECT_NEAR(std::abs(sys.plant.step(x, k1(x), 0.0)), 0.9 * std::abs(x), 1e-12 * (1.0 + std::abs(x)));
        EXPECT_NEAR(std::abs(sys.plant.step(x, k2(x), 0.0)), 0.45 * std::abs(x), 1e-12 * (1.0 + std::abs(x)));
        EXPECT_LE(std::abs(sys.plant.step(x, 0.0, 0.0)), 1.35 * std::abs(x) + 1e-12);
        EXPECT_EQ(sys.plant.lyapunov(x), std::abs(x));
    }
    EXPECT_EQ(sys.fine_law(0.45, 3).cost_units, 3);
}

TEST(SimulateTrajectory, ZeroStateStaysAtRest) {
    ExampleSystem sys = example_system();
    PlantModel plant = sys.plant;
    plant.x0 = 0.0;
    plant.noise_std = 0.0;
    for (const Scheme s : {Scheme::A1, Scheme::A2, Scheme::B1, Scheme::B2}) {
        const Trajectory t = simulate_trajectory(plant, benchmark_config(s, 2), 50, 1);
        for (const TrajectoryStep& step : t.steps) {
            EXPECT_EQ(step.x, 0.0);
            EXPECT_EQ(step.u, 0.0);
            EXPECT_EQ(step.gamma, Gamma::Silent);
        }
        EXPECT_FALSE(t.divergent);
    }
}

TEST(SimulateTrajectory, SeedReproducibleBitwise) {
    const PlantModel plant = example_system().plant;
    const SchemeConfig cfg = benchmark_config(Scheme::A2, 2);
    const Trajectory a = simulate_trajectory(plant, cfg, 200, 12345);
    const Trajectory b = simulate_trajectory(plant, cfg, 200, 12345);
    ASSERT_EQ(a.steps.size(), b.steps.size());
    for (std::size_t k = 0; k < a.steps.size(); ++k) {
        EXPECT_EQ(a.steps[k].x, b.steps[k].x);
        EXPECT_EQ(a.steps[k].u, b.steps[k].u);
        EXPECT_EQ(a.steps[k].buffer, b.steps[k].buffer);
    }
    EXPECT_EQ(a.v, b.v);
}

TEST(SimulateTrajectory, SilentStepsApplyZeroAndClearBuffer) {
    const PlantModel plant = example_system().plant;
    SchemeConfig cfg = benchmark_config(Scheme::A2, 2);
    cfg.d = 3.0;
    const Trajectory t = simulate_trajectory(plant, cfg, 300, 5);
    int silent = 0;
    for (const TrajectoryStep& s : t.steps) {
        if (std::abs(s.x) <= cfg.d) {
            ++silent;
            EXPECT_EQ(s.gamma, Gamma::Silent);
            EXPECT_EQ(s.u, 0.0);
            EXPECT_EQ(s.fine + s.coarse, 0);
        } else {
            EXPECT_NE(s.gamma, Gamma::Silent);
        }
    }
    EXPECT_GT(silent, 0);
}

TEST(SimulateTrajectory, NoiseFreeStableRunEntersTerminalSet) {
    PlantModel plant = example_system().plant;
    plant.noise_std = 0.0;
    SchemeConfig cfg = benchmark_config(Scheme::A2, 2);
    // Reliable channel with at least one unit: every triggered step
    // contracts, so after |x| <= d the state never leaves |x| <= 1.35 d.
    cfg.channel = ChannelModel(1.0, {0.0, 0.25, 0.25, 0.25, 0.25});
    const Trajectory t = simulate_trajectory(plant, cfg, 400, 8);
    ASSERT_FALSE(t.divergent);
    for (std::size_t k = 100; k < t.v.size(); ++k) {
        EXPECT_LE(t.v[k], 1.35 * cfg.d) << "k=" << k;
    }
}

TEST(SimulateTrajectory, DivergenceIsFlagged) {
    ExampleSystem sys = example_system();
    PlantModel plant = sys.plant;
    plant.noise_std = 0.0;
    SchemeConfig cfg = benchmark_config(Scheme::B1, 1);
    cfg.channel = ChannelModel(0.0, {1.0, 0.0}); // never delivers
    const Trajectory t = simulate_trajectory(plant, cfg, 500, 1);
    EXPECT_TRUE(t.divergent);
    EXPECT_LT(t.steps.size(), 500u);
    EXPECT_EQ(t.v.size(), t.steps.size());
}

TEST(SimulateTrajectory, ForcedEnvironmentMustRespectTrigger) {
    PlantModel plant = example_system().plant;
    plant.x0 = 0.5;
    plant.noise_std = 0.0;
    const SchemeConfig cfg = benchmark_config(Scheme::A2, 2);
    EXPECT_THROW(simulate_trajectory(plant, cfg, 3, [](int, bool) { return Environment{Gamma::Delivered, 1}; }),
                 std::invalid_argument);
}

TEST(MonteCarlo, SingleRunEqualsTrajectory) {
    const PlantModel plant = example_system().plant;
    const SchemeConfig cfg = benchmark_config(Scheme::A1, 1);
    const MonteCarloResult mc = monte_carlo(plant, cfg, 100, 1, 77, 1);
    const Trajectory t = simulate_trajectory(plant, cfg, 100, 77);
    ASSERT_FALSE(t.divergent);
    EXPECT_EQ(mc.mean_v, t.v);
    EXPECT_EQ(mc.runs, 1);
}

TEST(MonteCarlo, IndependentOfThreadCount) {
    const PlantModel plant = example_system().plant;
    const SchemeConfig cfg = benchmark_config(Scheme::A2, 2);
    const MonteCarloResult one = monte_carlo(plant, cfg, 100, 300, 5, 1);
    const MonteCarloResult four = monte_carlo(plant, cfg, 100, 300, 5, 4);
    EXPECT_EQ(one.mean_v, four.mean_v);
    EXPECT_EQ(one.trigger_rate_by_step, four.trigger_rate_by_step);
    EXPECT_EQ(one.trigger_rate, four.trigger_rate);
}

TEST(MonteCarlo, RunSeedsAreBaseXorIndex) {
    const PlantModel plant = example_system().plant;
    const SchemeConfig cfg = benchmark_config(Scheme::A2, 2);
    const MonteCarloResult mc = monte_carlo(plant, cfg, 50, 3, 1000, 1);
    std::vector<double> expected(51, 0.0);
    for (std::uint64_t r = 0; r < 3; ++r) {
        const Trajectory t = simulate_trajectory(plant, cfg, 50, 1000 ^ r);
        for (std::size_t k = 0; k < expected.size(); ++k) {
            expected[k] += t.v[k];
        }
    }
    for (std::size_t k = 0; k < expected.size(); ++k) {
        EXPECT_NEAR(mc.mean_v[k], expected[k] / 3.0, 1e-12 * (1.0 + expected[k]));
    }
}

TEST(MonteCarlo, DivergentRunsCarryLastValue) {
    PlantModel plant = example_system().plant;
    plant.noise_std = 0.0;
    SchemeConfig cfg = benchmark_config(Scheme::B1, 1);
    cfg.channel = ChannelModel(0.0, {1.0, 0.0});
    const MonteCarloResult mc = monte_carlo(plant, cfg, 300, 2, 1, 1);
    EXPECT_EQ(mc.divergent_runs, 2);
    EXPECT_EQ(mc.mean_v.size(), 301u);
    EXPECT_EQ(mc.mean_v.back(), mc.mean_v[mc.mean_v.size() - 2]);
    EXPECT_EQ(mc.trigger_rate, 1.0);
}

TEST(MonteCarlo, TriggerRateInUnitInterval) {
    const PlantModel plant = example_system().plant;
    const MonteCarloResult mc = monte_carlo(plant, benchmark_config(Scheme::A2, 2), 200, 100, 3, 1);
    EXPECT_GE(mc.trigger_rate, 0.0);
    EXPECT_LE(mc.trigger_rate, 1.0);
    for (double v : mc.mean_v) {
        EXPECT_GE(v, 0.0);
    }
}

TEST(MonteCarlo, RejectsBadArguments) {
    const PlantModel plant = example_system().plant;
    const SchemeConfig cfg = benchmark_config(Scheme::A2, 2);
    EXPECT_THROW(monte_carlo(plant, cfg, 10, 0, 1, 1), std::invalid_argument);
    EXPECT_THROW(monte_carlo(plant, cfg, 0, 10, 1, 1), std::invalid_argument);
}

TEST(MonteCarlo, ExceptionInsideRunPropagates) {
    PlantModel plant = example_system().plant;
    plant.step = [](double, double, double) -> double { throw std::runtime_error("plant failure"); };
    EXPECT_THROW(monte_carlo(plant, benchmark_config(Scheme::A2, 2), 10, 8, 1, 2), std::runtime_error);
}

TEST(ThreadCount, ReadsEnvironment) {
    ::setenv("ESAC_THREADS", "3", 1);
    EXPECT_EQ(default_thread_count(), 3);
    ::setenv("ESAC_THREADS", "zero", 1);
    EXPECT_THROW(default_thread_count(), std::invalid_argument);
    ::setenv("ESAC_THREADS", "0", 1);
    EXPECT_THROW(default_thread_count(), std::invalid_argument);
    ::unsetenv("ESAC_THREADS");
    EXPECT_GE(default_thread_count(), 1);
}

TEST(BufferChainEmpirics, CountsOnlyReachableTransitions) {
    const Matrix counts = count_buffer_transitions(kBenchmark, 2, 2, 20000, 4);
    const Matrix pi = transition_matrix(kBenchmark.l(), 2).pi;
    EXPECT_EQ(counts.sum(), 20000.0);
    for (Eigen::Index i = 0; i < pi.rows(); ++i) {
        for (Eigen::Index j = 0; j < pi.cols(); ++j) {
            if (pi(i, j) == 0.0) {
                EXPECT_EQ(counts(i, j), 0.0);
            }
        }
    }
    EXPECT_THROW(count_buffer_transitions(kBenchmark, 1, 3, 10, 1), std::invalid_argument);
}

} // namespace
} // namespace esac
