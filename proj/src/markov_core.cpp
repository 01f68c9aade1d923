#include "esac/markov_core.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace esac {

void validate_pmf(std::span<const double> v, const std::string& name) {
    if (v.empty()) {
        throw std::invalid_argument(name + " must not be empty");
    }
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (!std::isfinite(v[j]) || v[j] < 0.0 || v[j] > 1.0) {
            throw std::invalid_argument(name + "[" + std::to_string(j) + "] = " + std::to_string(v[j]) +
                                        " is outside [0, 1]");
        }
    }
    const double total = std::accumulate(v.begin(), v.end(), 0.0);
    if (std::abs(total - 1.0) > kProbabilityTolerance) {
        throw std::invalid_argument(name + " sums to " + std::to_string(total) +
                                    ", expected 1 (tolerance 1e-9, no renormalization)");
    }
}

std::vector<double> effective_availability(double q, std::span<const double> p) {
    if (!std::isfinite(q) || q < 0.0 || q > 1.0) {
        throw std::invalid_argument("q = " + std::to_string(q) + " is outside the valid range [0, 1]");
    }
    validate_pmf(p, "p");
    std::vector<double> l(p.size());
    l[0] = p[0] * q + (1.0 - q);
    for (std::size_t j = 1; j < p.size(); ++j) {
        l[j] = p[j] * q;
    }
    return l;
}

ChannelModel::ChannelModel(double q, std::vector<double> p)
    : q_(q), p_(std::move(p)), l_(effective_availability(q_, p_)) {
    if (p_.size() < 2) {
        throw std::invalid_argument("p must cover at least N = 0 and N = 1 (n_max >= 1)");
    }
}

std::vector<BufferState> state_space(int n_max, int eta) {
    if (eta < 1) {
        throw std::invalid_argument("eta must be >= 1, got " + std::to_string(eta));
    }
    if (n_max < 1) {
        throw std::invalid_argument("n_max must be >= 1, got " + std::to_string(n_max));
    }
    std::vector<BufferState> states;
    states.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int i = 0; i <= n_max; ++i) {
        states.push_back({i / eta, i % eta});
    }
    return states;
}

std::size_t shift_target(std::size_t index, int eta) {
    if (eta < 1) {
        throw std::invalid_argument("eta must be >= 1, got " + std::to_string(eta));
    }
    const auto e = static_cast<std::size_t>(eta);
    if (index == 0) {
        return 0;
    }
    if (index < e) {
        return index - 1; // (0, C) -> (0, C-1)
    }
    return index - e; // (F, C) -> (F-1, C)
}

BufferChain transition_matrix(std::span<const double> l, int eta) {
    validate_pmf(l, "l");
    const int n_max = static_cast<int>(l.size()) - 1;
    BufferChain chain;
    chain.eta = eta;
    chain.n_max = n_max;
    chain.states = state_space(n_max, eta);

    const auto n = static_cast<Eigen::Index>(l.size());
    chain.pi = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 1; j < n; ++j) {
            chain.pi(i, j) = l[static_cast<std::size_t>(j)];
        }
        const auto target = static_cast<Eigen::Index>(shift_target(static_cast<std::size_t>(i), eta));
        chain.pi(i, target) += l[0];
    }
    return chain;
}

int required_buffer_length(int n_max, int eta) {
    if (eta < 1 || n_max < 1) {
        throw std::invalid_argument("required_buffer_length: eta and n_max must be >= 1");
    }
    int longest = 0;
    for (int n = 0; n <= n_max; ++n) {
        longest = std::max(longest, n / eta + n % eta);
    }
    return longest;
}

std::optional<std::string> buffer_capacity_warning(int lambda, int n_max, int eta) {
    const int need = required_buffer_length(n_max, eta);
    if (lambda >= need) {
        return std::nullopt;
    }
    return "buffer length " + std::to_string(lambda) + " is shorter than the " + std::to_string(need) +
           " entries a full computation can produce (n_max=" + std::to_string(n_max) +
           ", eta=" + std::to_string(eta) +
           "); the chain model over-approximates the buffer and the certificate does not apply";
}

} // namespace esac
