#pragma once
// Stochastic-stability certification of the buffered schemes.
//
// A scalar Lyapunov bound sigma_i per buffer state turns the closed loop into
// a positive Markov jump inequality V_{k+1} <= sigma_{theta_k} V_k. Schur
// stability of the certification matrix T = diag(sigma) * Pi then bounds
// E{V_k} <= C1 xi^k E{V_0} + C2. The scalar indices Psi (two-law scheme) and
// Omega (one-law scheme) are the same test collapsed onto the empty-buffer
// state and are linear in the open-loop bound alpha.

#include "esac/linalg.hpp"
#include "esac/markov_core.hpp"
#include "esac/scheme_kind.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace esac {

/// A radius within this margin of 1 is reported as not certified.
inline constexpr double kSchurMargin = 1e-9;

/// Lyapunov growth/contraction bounds of the control laws.
///   V(f(x, 0))        <= alpha V(x)
///   V(f(x, kappa1(x))) <= rho1 V(x)
///   V(f(x, kappa2(x))) <= rho2 V(x)
/// The lower comparison function of V enters no formula and is not stored.
struct ContractionSpec {
    double alpha = 0.0;
    double rho1 = 0.0;
    double rho2 = 0.0;
    int eta = 1;
    /// Growth bound while the trigger is silent (input fixed to zero);
    /// defaults to alpha.
    std::optional<double> sigma_open;
    /// Ceiling D on V in the silent region, phi2(d); equals d for V(x) = |x|.
    double d_bound = 1.0;

    double open_growth() const noexcept { return sigma_open.value_or(alpha); }
};

/// Throws std::invalid_argument for negative or non-finite fields, eta < 1,
/// or rho2 > rho1. Returns warnings (rho2 == rho1 with eta > 1).
std::vector<std::string> check_contraction(const ContractionSpec& spec);

/// [alpha, rho1 x (eta-1), rho2 x (n_max-eta+1)]
Vector gain_diagonal(const ContractionSpec& spec, int n_max);

/// T[i][j] = phi[i] * Pi[i][j]
Matrix certification_matrix(const Vector& phi, const BufferChain& chain);

/// Result of the Perron-root computation. `lower`/`upper` are the final
/// Collatz-Wielandt bounds when power iteration converged.
struct PerronEstimate {
    double radius = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    int iterations = 0;
    bool gelfand_fallback = false;
};

inline constexpr int kPowerIterationCap = 100000;

/// Perron root of a nonnegative square matrix.
///
/// Power iteration runs on M + I from the uniform positive vector, so the
/// iterate stays positive and the dominant eigenvalue is strictly dominant in
/// modulus even for periodic M. It stops when the Collatz-Wielandt bracket
/// min_i (Mv)_i/v_i <= rho <= max_i (Mv)_i/v_i narrows below `tol`. If that
/// does not happen within kPowerIterationCap steps (typically a reducible
/// matrix whose eigenvector has zero entries) the Gelfand formula
/// ||M^k||^{1/k} is evaluated by repeated squaring with k = 2^60.
///
/// Throws std::invalid_argument for non-square input or negative/non-finite
/// entries.
PerronEstimate perron_root(const Matrix& m, double tol = 1e-12);

double spectral_radius(const Matrix& m, double tol = 1e-12);

/// spectral_radius(m) < 1 - margin
bool is_schur(const Matrix& m, double margin = kSchurMargin);

/// Solves (I - T) zeta = nu. Requires T Schur (NumericalError naming the
/// radius otherwise) and nu strictly positive; checks zeta is strictly
/// positive and the residual is below 1e-10.
Vector solve_certificate(const Matrix& t, const Vector& nu);

struct DecayConstants {
    double xi = 0.0; ///< geometric rate
    double c1 = 0.0; ///< zeta_max / zeta_min
    double c2 = 0.0; ///< offset driven by the silent-region ceiling D
};

/// xi = 1 - min(nu)/max(zeta), C1 = max(zeta)/min(zeta),
/// C2 = max{zeta_min D, |zeta_max sigma_open - xi zeta_min| D} / (zeta_min (1 - xi)).
/// Throws NumericalError when xi falls outside [0, 1).
DecayConstants theorem1_bounds(const Vector& zeta, const Vector& nu, double sigma_open,
                                  double d_bound);

struct BlockSchurResult {
    double g1 = 0.0;
    bool schur = false;
};

/// Splits H = [[X, Y], [Z, M]] at the first row/column and evaluates
/// g(1) = (1 - X) - Y (I - M)^{-1} Z. Requires M nonnegative with
/// ||M||_inf < 1 and trace(M^2) < 1 (std::invalid_argument otherwise).
/// schur = g1 > tol.
BlockSchurResult block_schur_g1(const Matrix& h, double tol = kSchurMargin);

/// X + Y (I - M)^{-1} Z for the same split; for T = diag(sigma) Pi this is the
/// scalar index compared with 1.
double first_state_index(const Matrix& t);

/// Two-law index Psi. Requires rho1, rho2 < 1 and 2 <= eta <= n_max, where
/// n_max = l.size() - 1; eta = 1 is refused (use omega_a1).
double psi_a2(const ContractionSpec& spec, std::span<const double> l);

/// One-law index Omega = l0 alpha (1 + rho1 Theta^T (I - rho1 G)^{-1} E1)
/// with G the lower-right block of the one-law transition matrix.
/// Requires rho1 < 1.
double omega_a1(double alpha, double rho1, std::span<const double> l);

/// Parameters that fix the certification matrix up to alpha.
struct BoundaryConfig {
    Scheme scheme = Scheme::A2; ///< A1 or A2
    int eta = 1;                ///< ignored for A1
    double rho1 = 0.0;
    double rho2 = 0.0; ///< ignored for A1
    std::vector<double> l;
};

/// Certification matrix of `cfg` at open-loop bound `alpha`.
Matrix boundary_matrix(const BoundaryConfig& cfg, double alpha);

/// Psi or Omega evaluated at `alpha` for the scheme in `cfg`. A2 with eta = 1
/// is routed to Omega with rho2 as the single contraction.
double closed_form_index(const BoundaryConfig& cfg, double alpha);

/// alpha* = 1 / index(alpha = 1); +inf when the index vanishes (l0 = 0).
double critical_alpha_closed(const BoundaryConfig& cfg);

/// Bisection on spectral_radius(T(alpha)) = 1. The bracket starts at
/// [0, 1] and doubles its upper end up to 2^40; NumericalError when
/// rho(T(0)) >= 1 or no crossing is found. Stops at width `tol`.
double critical_alpha_bisection(const BoundaryConfig& cfg, double tol = 1e-12);

enum class Verdict { CertifiedStable, NotCertified };

struct CertificationReport {
    Scheme scheme = Scheme::A2;
    Vector phi;
    Matrix t_matrix;
    double spectral_radius = 0.0;
    std::optional<double> closed_form; ///< Psi (A2, eta >= 2) or Omega
    std::string closed_form_name;      ///< "psi" or "omega" when present
    std::optional<Vector> zeta;
    std::optional<DecayConstants> bounds;
    Verdict verdict = Verdict::NotCertified;
    std::vector<std::string> notes;
};

/// Full certification of A1 or A2. For A1 the chain is built with eta = 1 and
/// the gains are [alpha, rho1, ...]. `nu` defaults to all ones.
CertificationReport certify(Scheme scheme, const ContractionSpec& spec, const ChannelModel& channel,
                            std::optional<Vector> nu = std::nullopt);

} // namespace esac
