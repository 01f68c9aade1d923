// Runtime selection of the kernel table. No intrinsics in this file.

#include "esac/kernels.hpp"
#include "kernel_table.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace esac::kernels {
namespace {

using detail::KernelTable;

bool cpu_has_avx2() noexcept {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable* table_for(Backend backend) noexcept {
    switch (backend) {
    case Backend::Scalar:
        return &detail::scalar_table();
    case Backend::Avx2:
        return cpu_has_avx2() ? detail::avx2_table() : nullptr;
    case Backend::Neon:
        return detail::neon_table();
    }
    return nullptr;
}

Backend automatic_backend() noexcept {
    if (const char* env = std::getenv("ESAC_SIMD")) {
        const std::string want(env);
        if (want == "scalar") {
            return Backend::Scalar;
        }
        if (want == "avx2" && table_for(Backend::Avx2) != nullptr) {
            return Backend::Avx2;
        }
        if (want == "neon" && table_for(Backend::Neon) != nullptr) {
            return Backend::Neon;
        }
    }
    if (table_for(Backend::Avx2) != nullptr) {
        return Backend::Avx2;
    }
    if (table_for(Backend::Neon) != nullptr) {
        return Backend::Neon;
    }
    return Backend::Scalar;
}

struct Active {
    std::atomic<const KernelTable*> table{nullptr};
    std::atomic<Backend> backend{Backend::Scalar};

    Active() { reset(); }

    void reset() noexcept {
        const Backend b = automatic_backend();
        backend.store(b);
        table.store(table_for(b));
    }
};

Active& active() {
    static Active instance;
    return instance;
}

const KernelTable& table() { return *active().table.load(std::memory_order_relaxed); }

void require_same_size(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw std::invalid_argument(std::string("kernels::") + what + ": length mismatch (" +
                                    std::to_string(a) + " vs " + std::to_string(b) + ")");
    }
}

} // namespace

std::string_view backend_name(Backend backend) noexcept {
    switch (backend) {
    case Backend::Scalar:
        return "scalar";
    case Backend::Avx2:
        return "avx2";
    case Backend::Neon:
        return "neon";
    }
    return "unknown";
}

bool backend_available(Backend backend) noexcept { return table_for(backend) != nullptr; }

Backend active_backend() noexcept { return active().backend.load(); }

void force_backend(Backend backend) {
    const KernelTable* t = table_for(backend);
    if (t == nullptr) {
        throw std::invalid_argument("kernel backend '" + std::string(backend_name(backend)) +
                                    "' is not available on this host");
    }
    active().backend.store(backend);
    active().table.store(t);
}

void reset_backend() noexcept { active().reset(); }

double dot(std::span<const double> a, std::span<const double> b) {
    require_same_size(a.size(), b.size(), "dot");
    return table().dot(a.data(), b.data(), a.size());
}

double sum(std::span<const double> x) { return table().sum(x.data(), x.size()); }

void gemv(std::span<const double> a, std::size_t rows, std::size_t cols, std::span<const double> x,
          std::span<double> y) {
    require_same_size(a.size(), rows * cols, "gemv");
    require_same_size(x.size(), cols, "gemv");
    require_same_size(y.size(), rows, "gemv");
    table().gemv(a.data(), rows, cols, x.data(), y.data());
}

void scale_rows(std::span<const double> scale, std::span<const double> a, std::size_t rows,
                std::size_t cols, std::span<double> out) {
    require_same_size(scale.size(), rows, "scale_rows");
    require_same_size(a.size(), rows * cols, "scale_rows");
    require_same_size(out.size(), rows * cols, "scale_rows");
    table().scale_rows(scale.data(), a.data(), rows, cols, out.data());
}

void scale(std::span<double> x, double s) { table().scale(x.data(), x.size(), s); }

void accumulate(std::span<double> dst, std::span<const double> src) {
    require_same_size(dst.size(), src.size(), "accumulate");
    table().accumulate(dst.data(), src.data(), dst.size());
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    require_same_size(a.size(), b.size(), "max_abs_diff");
    return table().max_abs_diff(a.data(), b.data(), a.size());
}

} // namespace esac::kernels
