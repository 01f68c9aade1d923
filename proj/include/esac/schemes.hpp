#pragma once
// Per-step logic of the four control algorithms.
//
//   B1  coarse law on every successful transmission with >= 1 unit, else 0
//   B2  fine law when >= eta units are available, coarse law with fewer
//   A1  spends all available units on a sequence of coarse-law predictions
//       stored in a buffer; consumes the buffer while nothing new arrives
//   A2  like A1, but fills floor(N/eta) fine-law entries first and
//       N mod eta coarse-law entries after them
//
// Each step sees the channel outcome gamma (0 dropout, 1 delivered,
// 2 sensor silent because |x| <= d) and the available processing units N.

#include "esac/markov_core.hpp"
#include "esac/scheme_kind.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace esac {

enum class Gamma : std::uint8_t { Dropout = 0, Delivered = 1, Silent = 2 };

/// Throws std::invalid_argument unless value is 0, 1 or 2.
Gamma gamma_from_int(int value);

struct Environment {
    Gamma gamma = Gamma::Silent;
    int units = 0; ///< N_k; zero unless gamma == Delivered
};

/// Noise-free plant model x_{k+1} = f(x_k, u_k) used for predictions.
using PlantMap = std::function<double(double x, double u)>;

struct ControlLaw {
    std::function<double(double)> evaluate;
    int cost_units = 1;       ///< 1 for the coarse law, eta for the fine law
    double contraction = 0.0; ///< rho of the law, informational
};

/// Fixed-length input buffer. The first fine_count() entries came from the
/// fine law, the next coarse_count() from the coarse law, the rest are zero.
class Buffer {
public:
    explicit Buffer(int length);

    int length() const noexcept { return static_cast<int>(values_.size()); }
    std::span<const double> values() const noexcept { return values_; }
    int fine_count() const noexcept { return fine_; }
    int coarse_count() const noexcept { return coarse_; }
    int stored() const noexcept { return fine_ + coarse_; }
    BufferState state() const noexcept { return {fine_, coarse_}; }
    double front() const noexcept { return values_.front(); }

    void clear() noexcept;

    /// Drops the head entry and appends a zero; one fine entry is consumed
    /// if any, otherwise one coarse entry.
    void shift() noexcept;

    /// Overwrites the buffer with `fine` fine-law predictions followed by
    /// `coarse` coarse-law predictions, iterating the model from x. Entries
    /// beyond the buffer length are not computed.
    void refill(double x, int fine, int coarse, const ControlLaw& fine_law, const ControlLaw& coarse_law,
                const PlantMap& model);

    friend bool operator==(const Buffer&, const Buffer&) = default;

private:
    std::vector<double> values_;
    int fine_ = 0;
    int coarse_ = 0;
};

/// Value-semantics shift.
Buffer shift(Buffer b);

struct StepResult {
    double u = 0.0;
    Buffer buffer;
};

/// One step of the one-law buffered scheme. Counts are kept in the fine
/// slot, matching the eta = 1 chain. Throws std::invalid_argument when N < 0
/// or N > 0 without a delivered packet.
StepResult a1_step(const Buffer& b, double x, Environment env, const ControlLaw& coarse, const PlantMap& model);

/// One step of the two-law buffered scheme with fine-law cost eta.
StepResult a2_step(const Buffer& b, double x, Environment env, const ControlLaw& coarse, const ControlLaw& fine,
                   int eta, const PlantMap& model);

/// Input of the unbuffered schemes (B1 or B2).
double b_step(Scheme variant, double x, Environment env, const ControlLaw& coarse, const ControlLaw& fine,
              int eta);

} // namespace esac
