#include "esac/report.hpp"

#include <cstdio>

namespace esac {
namespace {

std::string join(const Vector& v) {
    std::string out;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i > 0) {
            out += ' ';
        }
        out += format_number(v(i));
    }
    return out;
}

} // namespace

std::string format_number(double v) {
    // snprintf honours LC_NUMERIC; the CLI never calls setlocale, so the
    // "C" locale and its '.' separator are in effect.
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_boundary_csv(std::ostream& os, std::span<const BoundaryPoint> curve) {
    os << "rho1,alpha_star_closed,alpha_star_spectral\n";
    for (const BoundaryPoint& p : curve) {
        os << format_number(p.rho1) << ',' << format_number(p.alpha_closed) << ','
           << format_number(p.alpha_spectral) << '\n';
    }
}

void write_mean_v_csv(std::ostream& os, const MonteCarloResult& result) {
    os << "k,mean_v,trigger_rate\n";
    for (std::size_t k = 0; k < result.mean_v.size(); ++k) {
        os << k << ',' << format_number(result.mean_v[k]) << ',' << format_number(result.trigger_rate_by_step[k])
           << '\n';
    }
}

void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory) {
    os << "k,x,u,gamma,N,F,C,v\n";
    for (const TrajectoryStep& s : trajectory.steps) {
        os << s.k << ',' << format_number(s.x) << ',' << format_number(s.u) << ',' << static_cast<int>(s.gamma)
           << ',' << s.units << ',' << s.fine << ',' << s.coarse << ',' << format_number(s.v) << '\n';
    }
}

void print_report(std::ostream& os, const CertificationReport& report) {
    const bool certified = report.verdict == Verdict::CertifiedStable;
    os << "scheme:          " << scheme_name(report.scheme) << '\n';
    os << "verdict:         " << (certified ? "CertifiedStable" : "NotCertified") << '\n';
    os << "spectral_radius: " << format_number(report.spectral_radius) << '\n';
    if (report.closed_form) {
        std::string label = report.closed_form_name + ":";
        label.resize(17, ' ');
        os << label << format_number(*report.closed_form) << '\n';
    } else {
        os << "closed_form:     n/a\n";
    }
    os << "gains:           " << join(report.phi) << '\n';
    if (report.zeta) {
        os << "zeta:            " << join(*report.zeta) << '\n';
    }
    if (report.bounds) {
        os << "xi:              " << format_number(report.bounds->xi) << '\n';
        os << "C1:              " << format_number(report.bounds->c1) << '\n';
        os << "C2:              " << format_number(report.bounds->c2) << '\n';
    }
    for (const std::string& note : report.notes) {
        os << "note:            " << note << '\n';
    }
}

} // namespace esac
