#include "esac/schemes.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace esac {
namespace {

void check_environment(Environment env) {
    if (env.units < 0) {
        throw std::invalid_argument("processing units N must be >= 0, got " + std::to_string(env.units));
    }
    if (env.gamma != Gamma::Delivered && env.units != 0) {
        throw std::invalid_argument("N must be 0 unless the packet was delivered (gamma = 1), got N = " +
                                    std::to_string(env.units));
    }
}

} // namespace

Gamma gamma_from_int(int value) {
    switch (value) {
    case 0:
        return Gamma::Dropout;
    case 1:
        return Gamma::Delivered;
    case 2:
        return Gamma::Silent;
    default:
        throw std::invalid_argument("gamma must be 0, 1 or 2, got " + std::to_string(value));
    }
}

Buffer::Buffer(int length) {
    if (length < 1) {
        throw std::invalid_argument("buffer length must be >= 1, got " + std::to_string(length));
    }
    values_.assign(static_cast<std::size_t>(length), 0.0);
}

void Buffer::clear() noexcept {
    std::fill(values_.begin(), values_.end(), 0.0);
    fine_ = 0;
    coarse_ = 0;
}

void Buffer::shift() noexcept {
    std::shift_left(values_.begin(), values_.end(), 1);
    values_.back() = 0.0;
    if (fine_ > 0) {
        --fine_;
    } else if (coarse_ > 0) {
        --coarse_;
    }
}

void Buffer::refill(double x, int fine, int coarse, const ControlLaw& fine_law, const ControlLaw& coarse_law,
                    const PlantMap& model) {
    clear();
    const int len = length();
    double chi = x;
    int slot = 0;
    for (int j = 0; j < fine && slot < len; ++j, ++slot) {
        const double u = fine_law.evaluate(chi);
        values_[static_cast<std::size_t>(slot)] = u;
        chi = model(chi, u);
        ++fine_;
    }
    for (int j = 0; j < coarse && slot < len; ++j, ++slot) {
        const double u = coarse_law.evaluate(chi);
        values_[static_cast<std::size_t>(slot)] = u;
        chi = model(chi, u);
        ++coarse_;
    }
}

Buffer shift(Buffer b) {
    b.shift();
    return b;
}

StepResult a1_step(const Buffer& b, double x, Environment env, const ControlLaw& coarse, const PlantMap& model) {
    check_environment(env);
    StepResult out{0.0, b};
    if (env.gamma == Gamma::Silent) {
        out.buffer.clear();
        return out;
    }
    if (env.gamma == Gamma::Delivered && env.units > 0) {
        // One law only; the eta = 1 chain books every entry as "fine".
        out.buffer.refill(x, env.units, 0, coarse, coarse, model);
    } else {
        out.buffer.shift();
    }
    out.u = out.buffer.front();
    return out;
}

StepResult a2_step(const Buffer& b, double x, Environment env, const ControlLaw& coarse, const ControlLaw& fine,
                   int eta, const PlantMap& model) {
    check_environment(env);
    if (eta < 1) {
        throw std::invalid_argument("eta must be >= 1, got " + std::to_string(eta));
    }
    StepResult out{0.0, b};
    if (env.gamma == Gamma::Silent) {
        out.buffer.clear();
        return out;
    }
    if (env.gamma == Gamma::Delivered && env.units > 0) {
        out.buffer.refill(x, env.units / eta, env.units % eta, fine, coarse, model);
    } else {
        out.buffer.shift();
    }
    out.u = out.buffer.front();
    return out;
}

double b_step(Scheme variant, double x, Environment env, const ControlLaw& coarse, const ControlLaw& fine,
              int eta) {
    check_environment(env);
    if (variant != Scheme::B1 && variant != Scheme::B2) {
        throw std::invalid_argument("b_step handles B1 and B2 only, got " + std::string(scheme_name(variant)));
    }
    if (env.gamma != Gamma::Delivered || env.units == 0) {
        return 0.0;
    }
    if (variant == Scheme::B2 && env.units >= eta) {
        return fine.evaluate(x);
    }
    return coarse.evaluate(x);
}

} // namespace esac
