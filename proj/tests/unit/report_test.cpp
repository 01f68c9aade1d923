#include "esac/report.hpp"

#include <gtest/gtest.h>

#include <clocale>
#include <sstream>

namespace esac {
namespace {

TEST(Report, NumberFormat) {
    EXPECT_EQ(format_number(1.0), "1");
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(format_number(1.35265567766123), "1.35265567766");
    EXPECT_EQ(format_number(1e-20), "1e-20");
}

TEST(Report, BoundaryCsv) {
    std::ostringstream os;
    const std::vector<BoundaryPoint> curve{{0.5, 1.5, 1.5000000001}, {0.9, 1.25, 1.25}};
    write_boundary_csv(os, curve);
    EXPECT_EQ(os.str(), "rho1,alpha_star_closed,alpha_star_spectral\n0.5,1.5,1.5000000001\n0.9,1.25,1.25\n");
}

TEST(Report, MeanVCsv) {
    MonteCarloResult r;
    r.horizon = 1;
    r.runs = 2;
    r.mean_v = {20.0, 18.5};
    r.trigger_rate_by_step = {1.0, 0.5};
    std::ostringstream os;
    write_mean_v_csv(os, r);
    EXPECT_EQ(os.str(), "k,mean_v,trigger_rate\n0,20,1\n1,18.5,0.5\n");
}

TEST(Report, TrajectoryCsv) {
    Trajectory t;
    t.steps.push_back({0, 20.0, -3.5, Gamma::Delivered, 3, 1, 1, 20.0, {}});
    t.steps.push_back({1, -2.0, 0.0, Gamma::Dropout, 0, 0, 1, 2.0, {}});
    std::ostringstream os;
    write_trajectory_csv(os, t);
    EXPECT_EQ(os.str(), "k,x,u,gamma,N,F,C,v\n0,20,-3.5,1,3,1,1,20\n1,-2,0,0,0,0,1,2\n");
}

TEST(Report, CertificationReportShowsBothMeasures) {
    CertificationReport r;
    r.scheme = Scheme::A2;
    r.phi = Vector::Constant(2, 0.5);
    r.spectral_radius = 0.75;
    r.closed_form = 0.7;
    r.closed_form_name = "psi";
    r.verdict = Verdict::CertifiedStable;
    r.zeta = Vector::Constant(2, 2.0);
    r.bounds = DecayConstants{0.5, 1.0, 3.0};
    std::ostringstream os;
    print_report(os, r);
    const std::string s = os.str();
    EXPECT_NE(s.find("verdict:         CertifiedStable\n"), std::string::npos);
    EXPECT_NE(s.find("spectral_radius: 0.75\n"), std::string::npos);
    EXPECT_NE(s.find("psi:             0.7\n"), std::string::npos);
    EXPECT_NE(s.find("xi:              0.5\n"), std::string::npos);
    EXPECT_NE(s.find("C2:              3\n"), std::string::npos);
}

} // namespace
} // namespace esac
