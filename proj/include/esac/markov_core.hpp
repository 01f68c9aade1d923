#pragma once
// Buffer-content Markov chain of the event-triggered anytime control schemes.
//
// While the sensor keeps transmitting (|x_k| > d), the buffer content
// theta_k = (F; C) -- F fine-law inputs followed by C coarse-law inputs --
// evolves as a Markov chain driven by the i.i.d. processor availability N_k.
// State numbering is zero-based throughout this library: state i holds
// (F, C) = (i / eta, i % eta), and computing N units lands in state N.

#include "esac/linalg.hpp"

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace esac {

/// Absolute tolerance applied when validating user-supplied probability
/// vectors. Vectors outside it are rejected, never renormalized.
inline constexpr double kProbabilityTolerance = 1e-9;

struct BufferState {
    int fine = 0;   ///< F: entries produced by the fine law (front of the buffer)
    int coarse = 0; ///< C: entries produced by the coarse law (after the fine ones)

    friend auto operator<=>(const BufferState&, const BufferState&) = default;
};

/// Transmission and processor statistics.
///
/// q is the probability that a triggered transmission succeeds; p_j is the
/// probability that j processing units are available given success. The
/// effective pmf l folds dropouts into "no computation":
///   l_0 = p_0 q + (1 - q),  l_j = p_j q  (j >= 1).
class ChannelModel {
public:
    /// Validates q in [0,1], p nonempty with entries in [0,1] summing to 1
    /// within kProbabilityTolerance. Throws std::invalid_argument otherwise.
    ChannelModel(double q, std::vector<double> p);

    double q() const noexcept { return q_; }
    std::span<const double> p() const noexcept { return p_; }
    std::span<const double> l() const noexcept { return l_; }
    int n_max() const noexcept { return static_cast<int>(p_.size()) - 1; }

private:
    double q_;
    std::vector<double> p_;
    std::vector<double> l_;
};

/// Effective no-computation/computation pmf. Throws std::invalid_argument on
/// q outside [0,1] or an invalid p.
std::vector<double> effective_availability(double q, std::span<const double> p);

/// Throws std::invalid_argument unless `v` is a nonempty pmf (entries in
/// [0,1], sum within kProbabilityTolerance of 1). `name` labels the message.
void validate_pmf(std::span<const double> v, const std::string& name);

/// The n_max + 1 buffer states, state i = (i / eta, i % eta).
std::vector<BufferState> state_space(int n_max, int eta);

/// Index of the state reached when no new computation arrives:
/// the empty buffer stays empty, a coarse-only buffer drops one coarse entry,
/// otherwise one fine entry is consumed (i - eta).
std::size_t shift_target(std::size_t index, int eta);

struct BufferChain {
    int eta = 1;
    int n_max = 1;
    std::vector<BufferState> states;
    Matrix pi; ///< row-stochastic, (n_max+1) x (n_max+1)
};

/// Builds the conditional transition matrix from the effective pmf l
/// (length n_max+1): computing n >= 1 units overwrites the buffer and lands in
/// state n with probability l_n; no computation (probability l_0) shifts to
/// shift_target(i).
BufferChain transition_matrix(std::span<const double> l, int eta);

/// Largest number of entries the two-law fill can store for any N <= n_max:
/// max_N floor(N/eta) + N mod eta. With eta = 1 this is n_max.
int required_buffer_length(int n_max, int eta);

/// Warning text when a buffer of `lambda` slots is too short for the chain
/// model to describe the buffer exactly; nullopt when it is long enough.
std::optional<std::string> buffer_capacity_warning(int lambda, int n_max, int eta);

} // namespace esac
