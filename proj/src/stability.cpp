#include "esac/stability.hpp"

#include "esac/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace esac {
namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

void require_finite_nonnegative(double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0) {
        throw std::invalid_argument(std::string(name) + " must be finite and >= 0, got " + fmt(v));
    }
}

void require_square_nonnegative(const Matrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument(std::string(what) + ": matrix must be square and nonempty");
    }
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        const double v = m.data()[i];
        if (!std::isfinite(v) || v < 0.0) {
            throw std::invalid_argument(std::string(what) + ": entries must be finite and >= 0, found " +
                                        fmt(v));
        }
    }
}

double gelfand_radius(const Matrix& m) {
    double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
    if (norm == 0.0) {
        return 0.0;
    }
    Matrix b = m / norm;
    double log_scale = std::log(norm);
    constexpr int kSquarings = 60;
    for (int s = 0; s < kSquarings; ++s) {
        Matrix sq = b * b;
        norm = sq.cwiseAbs().rowwise().sum().maxCoeff();
        if (norm == 0.0) {
            return 0.0; // nilpotent
        }
        b = sq / norm;
        log_scale = 2.0 * log_scale + std::log(norm);
    }
    return std::exp(std::ldexp(log_scale, -kSquarings));
}

// Gains shared by A1 (eta = 1, single contraction) and A2.
Vector gains_for(Scheme scheme, double alpha, double rho1, double rho2, int eta, int n_max) {
    ContractionSpec spec;
    spec.alpha = alpha;
    spec.rho1 = rho1;
    spec.rho2 = scheme == Scheme::A1 ? rho1 : rho2;
    spec.eta = scheme == Scheme::A1 ? 1 : eta;
    return gain_diagonal(spec, n_max);
}

void require_buffered(Scheme scheme) {
    if (scheme != Scheme::A1 && scheme != Scheme::A2) {
        throw std::invalid_argument("certification covers the buffered schemes A1 and A2, not " +
                                    std::string(scheme_name(scheme)));
    }
}

} // namespace

std::vector<std::string> check_contraction(const ContractionSpec& spec) {
    require_finite_nonnegative(spec.alpha, "alpha");
    require_finite_nonnegative(spec.rho1, "rho1");
    require_finite_nonnegative(spec.rho2, "rho2");
    require_finite_nonnegative(spec.d_bound, "d_bound");
    if (spec.sigma_open) {
        require_finite_nonnegative(*spec.sigma_open, "sigma_open");
    }
    if (spec.eta < 1) {
        throw std::invalid_argument("eta must be >= 1, got " + std::to_string(spec.eta));
    }
    if (spec.rho2 > spec.rho1) {
        throw std::invalid_argument("rho2 = " + fmt(spec.rho2) + " exceeds rho1 = " + fmt(spec.rho1) +
                                    "; the fine law must contract at least as well as the coarse law");
    }
    std::vector<std::string> warnings;
    if (spec.rho2 == spec.rho1 && spec.eta > 1) {
        warnings.push_back("rho2 equals rho1: the fine law brings no contraction benefit");
    }
    return warnings;
}

Vector gain_diagonal(const ContractionSpec& spec, int n_max) {
    if (spec.eta < 1) {
        throw std::invalid_argument("eta must be >= 1, got " + std::to_string(spec.eta));
    }
    if (spec.eta > n_max) {
        throw std::invalid_argument("eta = " + std::to_string(spec.eta) + " exceeds n_max = " +
                                    std::to_string(n_max));
    }
    Vector phi(n_max + 1);
    phi(0) = spec.alpha;
    for (int i = 1; i <= n_max; ++i) {
        phi(i) = i < spec.eta ? spec.rho1 : spec.rho2;
    }
    return phi;
}

Matrix certification_matrix(const Vector& phi, const BufferChain& chain) {
    if (phi.size() != chain.pi.rows()) {
        throw std::invalid_argument("certification_matrix: gain vector has " + std::to_string(phi.size()) +
                                    " entries, chain has " + std::to_string(chain.pi.rows()) + " states");
    }
    Matrix t(chain.pi.rows(), chain.pi.cols());
    kernels::scale_rows(as_span(phi), as_span(chain.pi), static_cast<std::size_t>(t.rows()),
                        static_cast<std::size_t>(t.cols()), as_span(t));
    return t;
}

PerronEstimate perron_root(const Matrix& m, double tol) {
    require_square_nonnegative(m, "spectral_radius");
    const auto n = static_cast<std::size_t>(m.rows());
    const std::span<const double> a = as_span(m);

    // Iterate on (M + I) v: positive diagonal keeps v > 0 and removes
    // peripheral eigenvalues of periodic matrices.
    Vector v = Vector::Constant(m.rows(), 1.0 / static_cast<double>(n));
    Vector w(m.rows());
    PerronEstimate est;
    for (int it = 1; it <= kPowerIterationCap; ++it) {
        kernels::gemv(a, n, n, as_span(v), as_span(w));
        kernels::accumulate(as_span(w), as_span(v));

        const double vmax = v.maxCoeff();
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            // Components that have decayed to nothing belong to classes that
            // do not carry the Perron root; they cannot tighten the bracket.
            if (v[static_cast<Eigen::Index>(i)] > 1e-14 * vmax) {
                const double r = w[static_cast<Eigen::Index>(i)] / v[static_cast<Eigen::Index>(i)];
                lo = std::min(lo, r);
                hi = std::max(hi, r);
            }
        }
        const double total = kernels::sum(as_span(w));
        kernels::scale(as_span(w), 1.0 / total);
        v.swap(w);

        est.iterations = it;
        est.lower = std::max(0.0, lo - 1.0);
        est.upper = std::max(0.0, hi - 1.0);
        if (hi - lo <= tol) {
            est.radius = std::max(0.0, 0.5 * (lo + hi) - 1.0);
            return est;
        }
    }
    est.gelfand_fallback = true;
    est.radius = gelfand_radius(m);
    return est;
}

double spectral_radius(const Matrix& m, double tol) { return perron_root(m, tol).radius; }

bool is_schur(const Matrix& m, double margin) { return spectral_radius(m) < 1.0 - margin; }

Vector solve_certificate(const Matrix& t, const Vector& nu) {
    require_square_nonnegative(t, "solve_certificate");
    if (nu.size() != t.rows()) {
        throw std::invalid_argument("solve_certificate: nu has " + std::to_string(nu.size()) +
                                    " entries, T is " + std::to_string(t.rows()) + "x" +
                                    std::to_string(t.cols()));
    }
    if (!(nu.array() > 0.0).all() || !nu.allFinite()) {
        throw std::invalid_argument("solve_certificate: nu must be strictly positive");
    }
    const double radius = spectral_radius(t);
    if (!(radius < 1.0 - kSchurMargin)) {
        throw NumericalError("solve_certificate: certification matrix is not Schur stable (spectral radius " +
                             fmt(radius) + ")");
    }
    const Matrix system = Matrix::Identity(t.rows(), t.cols()) - t;
    Vector zeta = solve_linear(system, nu);
    const double residual = (system * zeta - nu).cwiseAbs().maxCoeff();
    if (residual > 1e-10 * (1.0 + zeta.cwiseAbs().maxCoeff())) {
        throw NumericalError("solve_certificate: residual " + fmt(residual) + " too large");
    }
    if (!(zeta.array() > 0.0).all()) {
        throw NumericalError("solve_certificate: certificate vector is not strictly positive (spectral radius " +
                             fmt(radius) + ")");
    }
    return zeta;
}

DecayConstants theorem1_bounds(const Vector& zeta, const Vector& nu, double sigma_open,
                                  double d_bound) {
    if (zeta.size() == 0 || nu.size() == 0) {
        throw std::invalid_argument("theorem1_bounds: empty vector");
    }
    if (!(zeta.array() > 0.0).all() || !(nu.array() > 0.0).all()) {
        throw std::invalid_argument("theorem1_bounds: zeta and nu must be strictly positive");
    }
    require_finite_nonnegative(sigma_open, "sigma_open");
    require_finite_nonnegative(d_bound, "D");

    const double zmax = zeta.maxCoeff();
    const double zmin = zeta.minCoeff();
    DecayConstants out;
    out.xi = 1.0 - nu.minCoeff() / zmax;
    if (!(out.xi >= 0.0 && out.xi < 1.0)) {
        throw NumericalError("theorem1_bounds: decay rate xi = " + fmt(out.xi) +
                             " is outside [0, 1); certificate vector inconsistent with nu");
    }
    out.c1 = zmax / zmin;
    const double spread = std::abs(zmax * sigma_open - out.xi * zmin) * d_bound;
    out.c2 = std::max(zmin * d_bound, spread) / (zmin * (1.0 - out.xi));
    return out;
}

double first_state_index(const Matrix& t) {
    if (t.rows() != t.cols() || t.rows() < 2) {
        throw std::invalid_argument("first_state_index: need a square matrix of size >= 2");
    }
    const Eigen::Index m = t.rows() - 1;
    const double x = t(0, 0);
    const Eigen::RowVectorXd y = t.block(0, 1, 1, m);
    const Vector z = t.block(1, 0, m, 1);
    const Matrix lower = t.block(1, 1, m, m);
    const Vector resolvent_z = solve_linear(Matrix::Identity(m, m) - lower, z);
    return x + y.dot(resolvent_z);
}

BlockSchurResult block_schur_g1(const Matrix& h, double tol) {
    if (h.rows() != h.cols() || h.rows() < 2) {
        throw std::invalid_argument("block_schur_g1: need a square matrix of size >= 2");
    }
    const Eigen::Index m = h.rows() - 1;
    const Matrix lower = h.block(1, 1, m, m);
    if ((lower.array() < 0.0).any() || !lower.allFinite()) {
        throw std::invalid_argument("block_schur_g1: lower-right block must be nonnegative");
    }
    const double inf_norm = lower.cwiseAbs().rowwise().sum().maxCoeff();
    if (!(inf_norm < 1.0)) {
        throw std::invalid_argument("block_schur_g1: ||M||_inf = " + fmt(inf_norm) + " is not < 1");
    }
    const double trace_sq = (lower * lower).trace();
    if (!(trace_sq < 1.0)) {
        throw std::invalid_argument("block_schur_g1: trace(M^2) = " + fmt(trace_sq) + " is not < 1");
    }
    BlockSchurResult out;
    out.g1 = 1.0 - first_state_index(h);
    out.schur = out.g1 > tol;
    return out;
}

double psi_a2(const ContractionSpec& spec, std::span<const double> l) {
    const int n_max = static_cast<int>(l.size()) - 1;
    if (spec.eta < 2) {
        throw std::invalid_argument("psi_a2: eta = " + std::to_string(spec.eta) +
                                    " has no two-law index; use omega_a1 for eta = 1");
    }
    if (spec.eta > n_max) {
        throw std::invalid_argument("psi_a2: eta = " + std::to_string(spec.eta) + " exceeds n_max = " +
                                    std::to_string(n_max));
    }
    if (!(spec.rho1 < 1.0) || !(spec.rho2 < 1.0)) {
        throw std::invalid_argument("psi_a2: closed form needs rho1, rho2 < 1 (got " + fmt(spec.rho1) + ", " +
                                    fmt(spec.rho2) + "); use the spectral radius instead");
    }
    const BufferChain chain = transition_matrix(l, spec.eta);
    return first_state_index(certification_matrix(gain_diagonal(spec, n_max), chain));
}

double omega_a1(double alpha, double rho1, std::span<const double> l) {
    require_finite_nonnegative(alpha, "alpha");
    require_finite_nonnegative(rho1, "rho1");
    if (!(rho1 < 1.0)) {
        throw std::invalid_argument("omega_a1: closed form needs rho1 < 1 (got " + fmt(rho1) +
                                    "); use the spectral radius instead");
    }
    const BufferChain chain = transition_matrix(l, 1);
    const Eigen::Index m = chain.pi.rows() - 1;
    const Matrix g = chain.pi.block(1, 1, m, m);
    Vector theta(m);
    for (Eigen::Index j = 0; j < m; ++j) {
        theta(j) = l[static_cast<std::size_t>(j) + 1];
    }
    const Vector e1 = Vector::Unit(m, 0);
    const Vector resolvent_e1 = solve_linear(Matrix::Identity(m, m) - rho1 * g, e1);
    return l[0] * alpha * (1.0 + rho1 * theta.dot(resolvent_e1));
}

Matrix boundary_matrix(const BoundaryConfig& cfg, double alpha) {
    require_buffered(cfg.scheme);
    const int eta = cfg.scheme == Scheme::A1 ? 1 : cfg.eta;
    const BufferChain chain = transition_matrix(cfg.l, eta);
    return certification_matrix(gains_for(cfg.scheme, alpha, cfg.rho1, cfg.rho2, eta, chain.n_max), chain);
}

double closed_form_index(const BoundaryConfig& cfg, double alpha) {
    require_buffered(cfg.scheme);
    if (cfg.scheme == Scheme::A1) {
        return omega_a1(alpha, cfg.rho1, cfg.l);
    }
    if (cfg.eta == 1) {
        return omega_a1(alpha, cfg.rho2, cfg.l);
    }
    ContractionSpec spec;
    spec.alpha = alpha;
    spec.rho1 = cfg.rho1;
    spec.rho2 = cfg.rho2;
    spec.eta = cfg.eta;
    return psi_a2(spec, cfg.l);
}

double critical_alpha_closed(const BoundaryConfig& cfg) {
    const double unit = closed_form_index(cfg, 1.0);
    if (unit <= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 1.0 / unit;
}

double critical_alpha_bisection(const BoundaryConfig& cfg, double tol) {
    // T(alpha) differs from T(1) only in its first row, scaled by alpha.
    const Matrix base = boundary_matrix(cfg, 1.0);
    auto radius_at = [&base](double alpha) {
        Matrix t = base;
        t.row(0) *= alpha;
        return spectral_radius(t);
    };

    double lo = 0.0;
    const double r0 = radius_at(lo);
    if (!(r0 < 1.0)) {
        throw NumericalError("critical_alpha: spectral radius at alpha = 0 is " + fmt(r0) +
                             " >= 1, no stabilizing alpha exists");
    }
    double hi = 1.0;
    while (radius_at(hi) < 1.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 0x1p40) {
            throw NumericalError("critical_alpha: bracket failure, spectral radius stays below 1 up to alpha = 2^40");
        }
    }
    while (hi - lo > tol * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        if (radius_at(mid) < 1.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

CertificationReport certify(Scheme scheme, const ContractionSpec& spec, const ChannelModel& channel,
                            std::optional<Vector> nu) {
    require_buffered(scheme);
    CertificationReport report;
    report.scheme = scheme;
    report.notes = check_contraction(spec);

    const int n_max = channel.n_max();
    const int eta = scheme == Scheme::A1 ? 1 : spec.eta;
    const BufferChain chain = transition_matrix(channel.l(), eta);
    report.phi = gains_for(scheme, spec.alpha, spec.rho1, spec.rho2, eta, n_max);
    report.t_matrix = certification_matrix(report.phi, chain);

    const PerronEstimate perron = perron_root(report.t_matrix);
    report.spectral_radius = perron.radius;
    if (perron.gelfand_fallback) {
        report.notes.push_back("power iteration did not converge; spectral radius from the Gelfand formula");
    }

    BoundaryConfig cfg{scheme, eta, spec.rho1, spec.rho2, {channel.l().begin(), channel.l().end()}};
    const double closed_rho = scheme == Scheme::A2 ? std::max(spec.rho1, spec.rho2) : spec.rho1;
    if (closed_rho < 1.0) {
        report.closed_form = closed_form_index(cfg, spec.alpha);
        report.closed_form_name = scheme == Scheme::A2 && eta >= 2 ? "psi" : "omega";
        if (scheme == Scheme::A2 && eta == 1) {
            report.notes.push_back("eta = 1: two-law scheme reduces to the one-law index Omega with rho2");
        }
    } else {
        report.notes.push_back("closed form unavailable (a contraction bound is >= 1); verdict from spectral radius only");
    }

    report.verdict = perron.radius < 1.0 - kSchurMargin ? Verdict::CertifiedStable : Verdict::NotCertified;
    if (report.closed_form) {
        const bool closed_stable = *report.closed_form < 1.0;
        if (closed_stable != (report.verdict == Verdict::CertifiedStable) &&
            std::abs(perron.radius - 1.0) >= kSchurMargin) {
            report.notes.push_back("closed form and spectral radius disagree");
        }
    }

    if (report.verdict == Verdict::CertifiedStable) {
        const Vector weights = nu.value_or(Vector::Ones(report.t_matrix.rows()));
        report.zeta = solve_certificate(report.t_matrix, weights);
        report.bounds = theorem1_bounds(*report.zeta, weights, spec.open_growth(), spec.d_bound);
    }
    return report;
}

} // namespace esac
