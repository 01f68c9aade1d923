#pragma once
// Run configuration: a line-oriented `key = value` document plus command-line
// overrides using the same keys.
//
//   # comment                      blank lines and '#' comments are ignored
//   scheme = A2                    B1 | B2 | A1 | A2
//   eta = 2                        fine-law cost (A2/B2)
//   lambda = 4                     buffer length (default: n_max)
//   n_max = 4                      optional; must equal len(p) - 1
//   d = 1                          trigger threshold (default 1)
//   q = 0.5                        delivery probability
//   p = 0.2 0.2 0.2 0.2 0.2        processor pmf over N = 0..n_max
//   alpha = 1.35                   open-loop bound (certify)
//   rho1 = 0.9                     coarse-law contraction
//   rho2 = 0.45 | epsilon = 0.5    fine-law contraction, at most one of the two
//   sigma_open = 1.35              silent-mode growth (default alpha)
//   nu = 1 1 1 1 1                 certificate weights (default all ones)
//   rho1_grid = 0.1 0.2 ...        sweep grid (default 0.05 .. 0.95)
//   horizon = 200                  simulation steps (default 200)
//   runs = 10000                   Monte Carlo realizations (default 10000)
//   seed = 1                       base seed (default 1)
//   x0 = 20                        initial state (default 20)
//   noise_std = 1                  disturbance standard deviation (default 1)
//   output = -                     CSV destination, '-' for stdout
//   trajectory = path              optional per-step dump of run 0

#include "esac/markov_core.hpp"
#include "esac/scheme_kind.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace esac {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::optional<Scheme> scheme;
    std::optional<int> eta;
    std::optional<int> lambda;
    std::optional<int> n_max;
    double d = 1.0;
    std::optional<double> q;
    std::optional<std::vector<double>> p;
    std::optional<double> alpha;
    std::optional<double> rho1;
    std::optional<double> rho2;
    std::optional<double> epsilon;
    std::optional<double> sigma_open;
    std::optional<std::vector<double>> nu;
    std::optional<std::vector<double>> rho1_grid;
    int horizon = 200;
    int runs = 10000;
    std::uint64_t seed = 1;
    double x0 = 20.0;
    double noise_std = 1.0;
    std::string output = "-";
    std::optional<std::string> trajectory;

    /// Channel from q and p; ConfigError naming the missing key.
    ChannelModel channel() const;

    /// rho2, or epsilon * rho1; nullopt when neither is given.
    std::optional<double> resolved_rho2() const;
};

/// One `key value` pair from the command line; `origin` labels errors
/// (e.g. "--q").
struct Override {
    std::string key;
    std::string value;
    std::string origin;
};

/// Every recognized key, in documentation order.
const std::vector<std::string_view>& config_keys();

/// Parses `text` then applies `overrides` in order. Errors (unknown key,
/// malformed number, invalid probability vector, conflicting keys) are
/// ConfigError messages that name the offending line or flag.
RunConfig parse_config(std::string_view text, const std::vector<Override>& overrides = {});

} // namespace esac
