#include "esac/example1.hpp"

#include "esac/report.hpp"
#include "esac/simulate.hpp"

#include <array>
#include <string>

namespace esac {
namespace {

constexpr int kNmax = 3;
constexpr int kEta = 2;
constexpr int kLambda = 3;
constexpr double kFineGain = 0.45;
constexpr std::array<int, 3> kUnits{3, 0, 2};

std::string buffer_text(const std::vector<double>& b) {
    std::string out = "[";
    for (std::size_t i = 0; i < b.size(); ++i) {
        out += (i ? ", " : "") + format_number(b[i]);
    }
    return out + "]";
}

} // namespace

Example1Trace simulate_example1(Scheme scheme) {
    const ExampleSystem sys = example_system();
    PlantModel plant = sys.plant;
    plant.noise_std = 0.0;

    SchemeConfig cfg;
    cfg.scheme = scheme;
    cfg.eta = kEta;
    cfg.lambda = kLambda;
    cfg.d = 0.0; // |x_k| > 0 throughout the scenario
    cfg.channel = ChannelModel(1.0, std::vector<double>(kNmax + 1, 1.0 / (kNmax + 1)));
    cfg.coarse = sys.coarse_law();
    cfg.fine = sys.fine_law(kFineGain, kEta);

    const Trajectory traj = simulate_trajectory(
        plant, cfg, static_cast<int>(kUnits.size()),
        [](int k, bool) { return Environment{Gamma::Delivered, kUnits[static_cast<std::size_t>(k)]}; });

    Example1Trace out;
    for (const TrajectoryStep& s : traj.steps) {
        out.push_back({s.u, s.buffer});
    }
    return out;
}

Example1Trace expected_example1(Scheme scheme) {
    const ExampleSystem sys = example_system();
    const auto f = [&sys](double x, double u) { return sys.plant.step(x, u, 0.0); };
    const auto k1 = sys.coarse_law().evaluate;
    const auto k2 = sys.fine_law(kFineGain, kEta).evaluate;
    const double x0 = sys.plant.x0;

    switch (scheme) {
    case Scheme::A1: {
        const double x0_1 = f(x0, k1(x0));        // one-step prediction from x0
        const double x0_2 = f(x0_1, k1(x0_1));    // two-step prediction from x0
        const double u0 = k1(x0);
        const double x1 = f(x0, u0);
        const double u1 = k1(x0_1);
        const double x2 = f(x1, u1);
        return {
            {u0, {k1(x0), k1(x0_1), k1(x0_2)}},
            {u1, {k1(x0_1), k1(x0_2), 0.0}},
            {k1(x2), {k1(x2), k1(f(x2, k1(x2))), 0.0}},
        };
    }
    case Scheme::A2: {
        const double u0 = k2(x0);
        const double x1 = f(x0, u0);
        const double u1 = k1(f(x0, k2(x0)));
        const double x2 = f(x1, u1);
        return {
            {u0, {k2(x0), k1(f(x0, k2(x0))), 0.0}},
            {u1, {k1(f(x0, k2(x0))), 0.0, 0.0}},
            {k2(x2), {k2(x2), 0.0, 0.0}},
        };
    }
    case Scheme::B1: {
        const double x1 = f(x0, k1(x0));
        const double x2 = f(x1, 0.0);
        return {{k1(x0), {}}, {0.0, {}}, {k1(x2), {}}};
    }
    case Scheme::B2: {
        const double x1 = f(x0, k2(x0));
        const double x2 = f(x1, 0.0);
        return {{k2(x0), {}}, {0.0, {}}, {k2(x2), {}}};
    }
    }
    return {};
}

bool traces_identical(const Example1Trace& a, const Example1Trace& b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].u != b[k].u || a[k].buffer != b[k].buffer) {
            return false;
        }
    }
    return true;
}

void print_example1(std::ostream& os, Scheme scheme, const Example1Trace& simulated, const Example1Trace& expected) {
    os << "scheme " << scheme_name(scheme) << '\n';
    for (std::size_t k = 0; k < simulated.size(); ++k) {
        const bool same = k < expected.size() && simulated[k].u == expected[k].u &&
                          simulated[k].buffer == expected[k].buffer;
        os << "  k=" << k << " N=" << kUnits[k] << " u=" << format_number(simulated[k].u);
        if (!simulated[k].buffer.empty()) {
            os << " buffer=" << buffer_text(simulated[k].buffer);
        }
        os << (same ? "  ok" : "  MISMATCH") << '\n';
    }
}

} // namespace esac
