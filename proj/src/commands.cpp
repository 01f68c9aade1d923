#include "esac/commands.hpp"

#include "esac/acceptance.hpp"
#include "esac/example1.hpp"
#include "esac/report.hpp"
#include "esac/simulate.hpp"
#include "esac/stability.hpp"
#include "esac/sweep.hpp"

#include <fstream>
#include <functional>

namespace esac {
namespace {

template <typename T>
T require(const std::optional<T>& v, const char* key, const char* command) {
    if (!v) {
        throw ConfigError(std::string(command) + " needs key '" + key + "'");
    }
    return *v;
}

Scheme require_scheme(const RunConfig& cfg, const char* command) { return require(cfg.scheme, "scheme", command); }

bool is_buffered(Scheme s) { return s == Scheme::A1 || s == Scheme::A2; }
bool uses_fine_law(Scheme s) { return s == Scheme::A2 || s == Scheme::B2; }

void with_output(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& write) {
    if (path == "-") {
        write(out);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw ConfigError("cannot open output file '" + path + "'");
    }
    write(file);
    if (!file) {
        throw ConfigError("write to '" + path + "' failed");
    }
}

void warn_capacity(const RunConfig& cfg, int n_max, int eta, std::ostream& err) {
    const int lambda = cfg.lambda.value_or(n_max);
    if (const auto warning = buffer_capacity_warning(lambda, n_max, eta)) {
        err << "warning: " << *warning << '\n';
    }
}

} // namespace

int run_certify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const Scheme scheme = require_scheme(cfg, "certify");
    if (!is_buffered(scheme)) {
        throw ConfigError("certify covers the buffered schemes A1 and A2, got " + std::string(scheme_name(scheme)));
    }
    const ChannelModel channel = cfg.channel();

    ContractionSpec spec;
    spec.alpha = require(cfg.alpha, "alpha", "certify");
    spec.rho1 = require(cfg.rho1, "rho1", "certify");
    if (scheme == Scheme::A2) {
        spec.eta = require(cfg.eta, "eta", "certify");
        spec.rho2 = require(cfg.resolved_rho2(), "rho2' or 'epsilon", "certify");
    } else {
        spec.eta = 1;
        spec.rho2 = spec.rho1;
    }
    spec.sigma_open = cfg.sigma_open;
    spec.d_bound = cfg.d;

    std::optional<Vector> nu;
    if (cfg.nu) {
        if (static_cast<int>(cfg.nu->size()) != channel.n_max() + 1) {
            throw ConfigError("nu needs n_max + 1 = " + std::to_string(channel.n_max() + 1) + " entries");
        }
        nu = Eigen::Map<const Vector>(cfg.nu->data(), static_cast<Eigen::Index>(cfg.nu->size()));
    }

    warn_capacity(cfg, channel.n_max(), spec.eta, err);
    const CertificationReport report = certify(scheme, spec, channel, nu);
    print_report(out, report);
    return report.verdict == Verdict::CertifiedStable ? kExitOk : kExitNotCertified;
}

int run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    SweepSpec spec;
    spec.scheme = require_scheme(cfg, "sweep");
    spec.channel = cfg.channel();
    if (spec.scheme == Scheme::A1) {
        spec.eta = 1;
        spec.epsilon = 1.0;
    } else {
        spec.eta = require(cfg.eta, "eta", "sweep");
        spec.epsilon = require(cfg.epsilon, "epsilon", "sweep");
    }
    spec.rho1_grid = cfg.rho1_grid.value_or(default_rho1_grid());

    const std::vector<BoundaryPoint> curve = boundary_curve(spec);
    with_output(cfg.output, out, [&curve](std::ostream& os) { write_boundary_csv(os, curve); });
    return kExitOk;
}

int run_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const Scheme scheme = require_scheme(cfg, "simulate");
    const ExampleSystem sys = example_system();

    PlantModel plant = sys.plant;
    plant.x0 = cfg.x0;
    plant.noise_std = cfg.noise_std;

    SchemeConfig sc;
    sc.scheme = scheme;
    sc.channel = cfg.channel();
    sc.eta = uses_fine_law(scheme) ? require(cfg.eta, "eta", "simulate") : 1;
    sc.lambda = cfg.lambda.value_or(sc.channel.n_max());
    sc.d = cfg.d;
    const double c1 = cfg.rho1.value_or(0.9);
    sc.coarse = sys.coarse_law(c1);
    const double c2 = uses_fine_law(scheme) ? require(cfg.resolved_rho2(), "rho2' or 'epsilon", "simulate") : c1;
    sc.fine = sys.fine_law(c2, sc.eta);
    validate(sc);
    if (is_buffered(scheme)) {
        warn_capacity(cfg, sc.channel.n_max(), sc.eta, err);
    }
    if (cfg.horizon < 1 || cfg.runs < 1) {
        throw ConfigError("horizon and runs must be >= 1");
    }

    const MonteCarloResult result = monte_carlo(plant, sc, cfg.horizon, cfg.runs, cfg.seed, default_thread_count());
    if (result.divergent_runs > 0) {
        err << "warning: " << result.divergent_runs << " of " << result.runs << " runs diverged (|x| > 1e12)\n";
    }
    with_output(cfg.output, out, [&result](std::ostream& os) { write_mean_v_csv(os, result); });

    if (cfg.trajectory) {
        // Run 0 of the Monte Carlo set: seed base_seed XOR 0.
        const Trajectory traj = simulate_trajectory(plant, sc, cfg.horizon, cfg.seed);
        with_output(*cfg.trajectory, out, [&traj](std::ostream& os) { write_trajectory_csv(os, traj); });
    }
    return kExitOk;
}

int run_example1(std::ostream& out) {
    bool all_match = true;
    for (const Scheme scheme : {Scheme::A1, Scheme::A2, Scheme::B1, Scheme::B2}) {
        const Example1Trace simulated = simulate_example1(scheme);
        const Example1Trace expected = expected_example1(scheme);
        print_example1(out, scheme, simulated, expected);
        all_match = all_match && traces_identical(simulated, expected);
    }
    out << (all_match ? "example1: all traces match\n" : "example1: MISMATCH\n");
    return all_match ? kExitOk : kExitError;
}

int run_selftest(std::ostream& out) {
    AcceptanceOptions opts;
    opts.threads = default_thread_count();
    const std::vector<CriterionResult> results = run_acceptance(opts);
    print_results(out, results);
    return all_passed(results) ? kExitOk : kExitError;
}

} // namespace esac
