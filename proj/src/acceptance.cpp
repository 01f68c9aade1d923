#include "esac/acceptance.hpp"

#include "esac/example1.hpp"
#include "esac/report.hpp"
#include "esac/simulate.hpp"
#include "esac/stability.hpp"
#include "esac/sweep.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <random>
#include <sstream>

namespace esac {
namespace {

// Channel and gains of the benchmark: q = 0.5, p uniform over 0..4,
// rho1 = 0.9, rho2 = 0.45.
const ChannelModel& benchmark_channel() {
    static const ChannelModel channel(0.5, std::vector<double>(5, 0.2));
    return channel;
}

constexpr double kRho1 = 0.9;
constexpr double kRho2 = 0.45;
constexpr double kAlpha = 1.35;

BoundaryConfig benchmark_boundary(Scheme scheme, int eta) {
    const auto l = benchmark_channel().l();
    return {scheme, eta, kRho1, scheme == Scheme::A1 ? kRho1 : kRho2, {l.begin(), l.end()}};
}

// Independent reference: largest eigenvalue modulus from a dense eigensolver.
double eigen_radius(const Matrix& m) {
    const Eigen::MatrixXd dense = m;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(dense, false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

std::string num(double v) { return format_number(v); }

std::vector<double> random_pmf(std::mt19937_64& rng, int size) {
    std::exponential_distribution<double> draw(1.0);
    std::vector<double> p(static_cast<std::size_t>(size));
    double total = 0.0;
    for (double& v : p) {
        v = draw(rng);
        total += v;
    }
    for (double& v : p) {
        v /= total;
    }
    return p;
}

struct SchemeSetup {
    Scheme scheme;
    int eta;
};

SchemeConfig benchmark_scheme(const SchemeSetup& setup, const ExampleSystem& sys) {
    SchemeConfig cfg;
    cfg.scheme = setup.scheme;
    cfg.eta = setup.eta;
    cfg.lambda = 4;
    cfg.d = 1.0;
    cfg.channel = benchmark_channel();
    cfg.coarse = sys.coarse_law(kRho1);
    cfg.fine = sys.fine_law(kRho2, setup.eta);
    return cfg;
}

CriterionResult boundary_reproduction(const AcceptanceOptions&) {
    struct Case {
        const char* name;
        Scheme scheme;
        int eta;
        double quoted;
        double oracle;
    };
    const Case cases[] = {
        {"Q1", Scheme::A2, 2, 1.3527, 1.3526556777},
        {"Q2", Scheme::A2, 3, 1.266, 1.2660886320},
        {"Q3", Scheme::A1, 1, 1.175, 1.1747753986},
    };
    CriterionResult r{1, "boundary reproduction", true, {}, 0.0};
    std::ostringstream detail;
    for (const Case& c : cases) {
        const BoundaryConfig cfg = benchmark_boundary(c.scheme, c.eta);
        const double closed = critical_alpha_closed(cfg);
        const double spectral = critical_alpha_bisection(cfg);
        const bool ok = std::abs(closed - c.quoted) <= 1e-3 && std::abs(spectral - c.quoted) <= 1e-3 &&
                        std::abs(closed - c.oracle) <= 1e-5 && std::abs(spectral - c.oracle) <= 1e-5;
        r.passed = r.passed && ok;
        detail << c.name << " closed=" << num(closed) << " spectral=" << num(spectral) << (ok ? "" : " (off)")
               << "; ";
    }
    r.detail = detail.str();
    return r;
}

CriterionResult closed_spectral_agreement(const AcceptanceOptions& opts) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int disagreements = 0;
    int banded = 0;
    double worst_eigen_gap = 0.0;
    for (int trial = 0; trial < opts.random_configs; ++trial) {
        const int n_max = 1 + static_cast<int>(rng() % 8);
        const Scheme scheme = rng() % 2 == 0 ? Scheme::A1 : Scheme::A2;
        const int eta = scheme == Scheme::A1 ? 1 : 1 + static_cast<int>(rng() % static_cast<unsigned>(n_max));
        const double q = 0.05 + 0.95 * unit(rng);
        const ChannelModel channel(q, random_pmf(rng, n_max + 1));
        const double rho1 = 0.01 + 0.98 * unit(rng);
        const double rho2 = scheme == Scheme::A1 ? rho1 : unit(rng) * rho1;

        const BoundaryConfig cfg{scheme, eta, rho1, rho2, {channel.l().begin(), channel.l().end()}};
        const double alpha = critical_alpha_closed(cfg) * (0.5 + unit(rng));
        const double index = closed_form_index(cfg, alpha);
        const Matrix t = boundary_matrix(cfg, alpha);
        const double radius = spectral_radius(t);
        worst_eigen_gap = std::max(worst_eigen_gap, std::abs(radius - eigen_radius(t)));

        if (std::abs(radius - 1.0) < 1e-9 || std::abs(index - 1.0) < 1e-9) {
            ++banded;
            continue;
        }
        if ((index < 1.0) != (radius < 1.0)) {
            ++disagreements;
        }
    }

    double worst_grid = 0.0;
    SweepSpec spec;
    spec.channel = benchmark_channel();
    spec.rho1_grid = default_rho1_grid();
    for (const int eta : {1, 2, 3, 4}) {
        for (const double epsilon : {0.25, 0.5, 0.75, 1.0}) {
            spec.scheme = Scheme::A2;
            spec.eta = eta;
            spec.epsilon = epsilon;
            for (const BoundaryPoint& p : boundary_curve(spec)) {
                worst_grid = std::max(worst_grid, p.discrepancy());
            }
        }
    }
    spec.scheme = Scheme::A1;
    spec.epsilon = 1.0;
    for (const BoundaryPoint& p : boundary_curve(spec)) {
        worst_grid = std::max(worst_grid, p.discrepancy());
    }

    CriterionResult r{2, "closed-form/spectral agreement", false, {}, 0.0};
    r.passed = disagreements == 0 && worst_grid < 1e-6 && worst_eigen_gap < 1e-8;
    r.detail = std::to_string(opts.random_configs) + " configs, " + std::to_string(disagreements) +
               " sign disagreements (" + std::to_string(banded) + " in band); max grid |closed - spectral| = " +
               num(worst_grid) + "; max |power - eigensolver| = " + num(worst_eigen_gap);
    return r;
}

// Transition matrix of the one-law scheme written out row by row: rows 0 and
// 1 are l; row i >= 2 is l with l0 added to column i - 1.
Matrix one_law_pattern(std::span<const double> l) {
    const auto n = static_cast<Eigen::Index>(l.size());
    Matrix pi = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            pi(i, j) = j == 0 && i >= 2 ? 0.0 : l[static_cast<std::size_t>(j)];
        }
        if (i >= 2) {
            pi(i, i - 1) = l[static_cast<std::size_t>(i - 1)] + l[0];
        }
    }
    return pi;
}

CriterionResult transition_properties(const AcceptanceOptions& opts) {
    std::mt19937_64 rng(opts.seed + 3);
    double worst_row = 0.0;
    double worst_pattern = 0.0;
    for (int n_max = 1; n_max <= 12; ++n_max) {
        const ChannelModel channel(0.3 + 0.7 * std::generate_canonical<double, 53>(rng),
                                   random_pmf(rng, n_max + 1));
        for (int eta = 1; eta <= 6; ++eta) {
            const Matrix pi = transition_matrix(channel.l(), eta).pi;
            worst_row = std::max(worst_row, (pi.rowwise().sum().array() - 1.0).abs().maxCoeff());
        }
        const Matrix literal = one_law_pattern(channel.l());
        worst_pattern = std::max(worst_pattern, (transition_matrix(channel.l(), 1).pi - literal).cwiseAbs().maxCoeff());
    }

    // Empirical frequencies of the two-law buffer over always-triggered steps.
    int outside = 0;
    int zero_violations = 0;
    double worst_z = 0.0;
    for (const int eta : {1, 2, 3}) {
        const ChannelModel& channel = benchmark_channel();
        const Matrix pi = transition_matrix(channel.l(), eta).pi;
        const int lambda = required_buffer_length(channel.n_max(), eta);
        const Matrix counts = count_buffer_transitions(channel, eta, lambda, opts.chain_steps, opts.seed + eta);
        for (Eigen::Index i = 0; i < pi.rows(); ++i) {
            const double n = counts.row(i).sum();
            if (n == 0.0) {
                continue;
            }
            for (Eigen::Index j = 0; j < pi.cols(); ++j) {
                const double freq = counts(i, j) / n;
                if (pi(i, j) == 0.0) {
                    zero_violations += counts(i, j) > 0.0 ? 1 : 0;
                    continue;
                }
                const double se = std::sqrt(pi(i, j) * (1.0 - pi(i, j)) / n);
                const double gap = std::abs(freq - pi(i, j));
                if (se == 0.0) {
                    outside += gap > 0.0 ? 1 : 0;
                    continue;
                }
                worst_z = std::max(worst_z, gap / se);
                outside += gap > 3.0 * se ? 1 : 0;
            }
        }
    }

    CriterionResult r{3, "transition-matrix properties", false, {}, 0.0};
    r.passed = worst_row <= 1e-12 && worst_pattern == 0.0 && outside == 0 && zero_violations == 0;
    r.detail = "max |row sum - 1| = " + num(worst_row) + "; one-law pattern max diff = " + num(worst_pattern) +
               "; empirical: " + std::to_string(outside) + " entries beyond 3 SE (max z = " + num(worst_z) + "), " +
               std::to_string(zero_violations) + " hits on zero entries";
    return r;
}

CriterionResult example1_exactness(const AcceptanceOptions&) {
    CriterionResult r{4, "three-step trace exactness", true, {}, 0.0};
    for (const Scheme scheme : {Scheme::A1, Scheme::A2, Scheme::B1, Scheme::B2}) {
        const bool same = traces_identical(simulate_example1(scheme), expected_example1(scheme));
        r.passed = r.passed && same;
        r.detail += std::string(scheme_name(scheme)) + (same ? " exact; " : " MISMATCH; ");
    }
    return r;
}

CriterionResult monte_carlo_ordinal(const AcceptanceOptions& opts) {
    const ExampleSystem sys = example_system();
    const int h = opts.horizon;
    auto mean_path = [&](const SchemeSetup& setup) {
        return monte_carlo(sys.plant, benchmark_scheme(setup, sys), h, opts.mc_runs, opts.seed, opts.threads).mean_v;
    };
    const std::vector<double> q1 = mean_path({Scheme::A2, 2});
    const std::vector<double> q2 = mean_path({Scheme::A2, 3});
    const std::vector<double> q3 = mean_path({Scheme::A1, 1});

    const auto tail_begin = q1.begin() + std::min(h, 100);
    const double q1_tail_max = *std::max_element(tail_begin, q1.end());
    const double end1 = q1.back();
    const double end2 = q2.back();
    const double end3 = q3.back();

    CriterionResult r{5, "Monte Carlo ordinal reproduction", false, {}, 0.0};
    r.passed = q1_tail_max < 50.0 && end1 < end3 / 10.0 && end2 >= 10.0 * end1 && end3 >= 10.0 * end1;
    r.detail = std::to_string(opts.mc_runs) + " runs x " + std::to_string(h) + " steps; Q1 tail max = " +
               num(q1_tail_max) + ", mean V at k=" + std::to_string(h) + ": Q1 = " + num(end1) + ", Q2 = " +
               num(end2) + ", Q3 = " + num(end3);
    return r;
}

CriterionResult decay_bound(const AcceptanceOptions& opts) {
    const ExampleSystem sys = example_system();
    PlantModel plant = sys.plant;
    plant.noise_std = 0.0;
    const SchemeConfig cfg = benchmark_scheme({Scheme::A2, 2}, sys);

    ContractionSpec spec;
    spec.alpha = kAlpha;
    spec.rho1 = kRho1;
    spec.rho2 = kRho2;
    spec.eta = 2;
    spec.d_bound = cfg.d;
    const CertificationReport report = certify(Scheme::A2, spec, cfg.channel);
    CriterionResult r{6, "decay bound", false, {}, 0.0};
    if (!report.bounds) {
        r.detail = "configuration not certified (spectral radius " + num(report.spectral_radius) + ")";
        return r;
    }
    const DecayConstants& c = *report.bounds;
    const MonteCarloResult mc = monte_carlo(plant, cfg, opts.horizon, opts.mc_runs, opts.seed, opts.threads);
    const double v0 = plant.lyapunov(plant.x0);
    int violations = 0;
    double min_slack = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < mc.mean_v.size(); ++k) {
        const double bound = c.c1 * std::pow(c.xi, static_cast<double>(k)) * v0 + c.c2;
        min_slack = std::min(min_slack, bound - mc.mean_v[k]);
        violations += mc.mean_v[k] > bound ? 1 : 0;
    }
    r.passed = violations == 0;
    r.detail = "xi = " + num(c.xi) + ", C1 = " + num(c.c1) + ", C2 = " + num(c.c2) + "; " +
               std::to_string(violations) + " violations, min slack = " + num(min_slack);
    return r;
}

CriterionResult block_schur_check(const AcceptanceOptions& opts) {
    std::mt19937_64 rng(opts.seed + 7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int disagreements = 0;
    int banded = 0;
    int stable = 0;
    for (int trial = 0; trial < opts.random_configs; ++trial) {
        const auto n = static_cast<Eigen::Index>(2 + rng() % 7);
        const Eigen::Index m = n - 1;
        Matrix h = Matrix::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                h(i, j) = unit(rng);
            }
        }
        // Rows of the lower-right block rescaled to random sums below 1, so
        // ||M||_inf < 1; trace(M^2) < 1 is checked separately.
        for (Eigen::Index i = 1; i < n; ++i) {
            const double target = unit(rng);
            const double row = h.block(i, 1, 1, m).sum();
            h.block(i, 1, 1, m) *= target / row;
        }
        const Matrix lower = h.block(1, 1, m, m);
        if (!((lower * lower).trace() < 1.0)) {
            --trial;
            continue;
        }
        // Spread the coupling blocks over several decades around the boundary.
        const double coupling = std::pow(10.0, -1.5 + 2.0 * unit(rng));
        h.block(0, 1, 1, m) *= coupling;
        h.block(1, 0, m, 1) *= coupling;

        const double g1 = block_schur_g1(h).g1;
        const double radius = eigen_radius(h);
        if (std::abs(g1) < 1e-9 || std::abs(radius - 1.0) < 1e-9) {
            ++banded;
            continue;
        }
        stable += radius < 1.0 ? 1 : 0;
        if ((g1 > 0.0) != (radius < 1.0)) {
            ++disagreements;
        }
    }
    CriterionResult r{7, "block Schur test", false, {}, 0.0};
    r.passed = disagreements == 0;
    r.detail = std::to_string(opts.random_configs) + " matrices (" + std::to_string(stable) + " Schur), " +
               std::to_string(disagreements) + " disagreements, " + std::to_string(banded) + " in band";
    return r;
}

} // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
    const std::vector<std::pair<int, Criterion>> criteria = {
        {1, boundary_reproduction}, {2, closed_spectral_agreement}, {3, transition_properties},
        {4, example1_exactness},    {5, monte_carlo_ordinal},       {6, decay_bound},
        {7, block_schur_check},
    };
    std::vector<CriterionResult> results;
    for (const auto& [id, criterion] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = criterion(opts);
        } catch (const std::exception& e) {
            r = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what(), 0.0};
        }
        while (r.detail.ends_with("; ")) {
            r.detail.resize(r.detail.size() - 2);
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        results.push_back(r);
    }
    return results;
}

void print_results(std::ostream& os, const std::vector<CriterionResult>& results) {
    for (const CriterionResult& r : results) {
        char seconds[32];
        std::snprintf(seconds, sizeof seconds, "%.2f", r.seconds);
        os << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.title << ": " << r.detail << " (" << seconds
           << " s)\n";
    }
}

bool all_passed(const std::vector<CriterionResult>& results) {
    return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.passed; });
}

} // namespace esac
