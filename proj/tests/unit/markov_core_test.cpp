#include "esac/markov_core.hpp"

#include <gtest/gtest.h>

#include <random>

namespace esac {
namespace {

TEST(EffectiveAvailability, FoldsDropoutsIntoNoComputation) {
    const auto l = effective_availability(0.5, std::vector<double>(5, 0.2));
    ASSERT_EQ(l.size(), 5u);
    EXPECT_DOUBLE_EQ(l[0], 0.6);
    for (std::size_t j = 1; j < 5; ++j) {
        EXPECT_DOUBLE_EQ(l[j], 0.1);
    }
}

TEST(EffectiveAvailability, PerfectChannelKeepsP) {
    const std::vector<double> p{0.1, 0.2, 0.7};
    const auto l = effective_availability(1.0, p);
    EXPECT_EQ(l, p);
}

TEST(EffectiveAvailability, DeadChannelNeverComputes) {
    const auto l = effective_availability(0.0, std::vector<double>{0.0, 0.5, 0.5});
    EXPECT_EQ(l, (std::vector<double>{1.0, 0.0, 0.0}));
}

TEST(EffectiveAvailability, RejectsInvalidInput) {
    EXPECT_THROW(effective_availability(1.5, std::vector<double>{0.5, 0.5}), std::invalid_argument);
    EXPECT_THROW(effective_availability(-0.1, std::vector<double>{0.5, 0.5}), std::invalid_argument);
    EXPECT_THROW(effective_availability(0.5, std::vector<double>{0.5, 0.6}), std::invalid_argument);
    EXPECT_THROW(effective_availability(0.5, std::vector<double>{-0.1, 1.1}), std::invalid_argument);
    EXPECT_THROW(effective_availability(0.5, std::vector<double>{}), std::invalid_argument);
}

TEST(EffectiveAvailability, ToleratesRoundingInTheSum) {
    EXPECT_NO_THROW(effective_availability(0.5, std::vector<double>{0.1, 0.2, 0.7 + 1e-12}));
    EXPECT_THROW(effective_availability(0.5, std::vector<double>{0.1, 0.2, 0.7 + 1e-6}), std::invalid_argument);
}

TEST(ChannelModel, ExposesNmax) {
    const ChannelModel ch(0.5, std::vector<double>(5, 0.2));
    EXPECT_EQ(ch.n_max(), 4);
    EXPECT_DOUBLE_EQ(ch.l()[0], 0.6);
    EXPECT_THROW(ChannelModel(0.5, std::vector<double>{1.0}), std::invalid_argument);
}

TEST(StateSpace, EnumeratesFineThenCoarse) {
    const auto states = state_space(4, 2);
    const std::vector<BufferState> expected{{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 0}};
    EXPECT_EQ(states, expected);
    const auto one_law = state_space(3, 1);
    EXPECT_EQ(one_law, (std::vector<BufferState>{{0, 0}, {1, 0}, {2, 0}, {3, 0}}));
    EXPECT_THROW(state_space(4, 0), std::invalid_argument);
    EXPECT_THROW(state_space(0, 1), std::invalid_argument);
}

TEST(ShiftTarget, ConsumesFineEntriesFirst) {
    EXPECT_EQ(shift_target(0, 2), 0u);
    EXPECT_EQ(shift_target(1, 2), 0u); // (0,1) -> (0,0)
    EXPECT_EQ(shift_target(2, 2), 0u); // (1,0) -> (0,0)
    EXPECT_EQ(shift_target(3, 2), 1u); // (1,1) -> (0,1)
    EXPECT_EQ(shift_target(4, 2), 2u); // (2,0) -> (1,0)
    EXPECT_EQ(shift_target(2, 3), 1u); // (0,2) -> (0,1)
    EXPECT_EQ(shift_target(5, 1), 4u);
}

TEST(TransitionMatrix, BenchmarkTwoLawChain) {
    const ChannelModel ch(0.5, std::vector<double>(5, 0.2));
    const BufferChain chain = transition_matrix(ch.l(), 2);
    Matrix expected(5, 5);
    expected << 0.6, 0.1, 0.1, 0.1, 0.1,
                0.6, 0.1, 0.1, 0.1, 0.1,
                0.6, 0.1, 0.1, 0.1, 0.1,
                0.0, 0.7, 0.1, 0.1, 0.1,
                0.0, 0.1, 0.7, 0.1, 0.1;
    EXPECT_LT((chain.pi - expected).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_EQ(chain.eta, 2);
    EXPECT_EQ(chain.n_max, 4);
}

TEST(TransitionMatrix, ThreeUnitFineLaw) {
    const std::vector<double> l{0.6, 0.1, 0.1, 0.1, 0.1};
    const Matrix pi = transition_matrix(l, 3).pi;
    // States (0,0) (0,1) (0,2) (1,0) (1,1): (0,2) shifts to (0,1), (1,0) to
    // (0,0), (1,1) to (0,1).
    EXPECT_DOUBLE_EQ(pi(2, 1), 0.7);
    EXPECT_DOUBLE_EQ(pi(2, 0), 0.0);
    EXPECT_DOUBLE_EQ(pi(3, 0), 0.6);
    EXPECT_DOUBLE_EQ(pi(4, 1), 0.7);
}

TEST(TransitionMatrix, RowSumsAreOne) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int n_max = 1; n_max <= 12; ++n_max) {
        std::vector<double> p(static_cast<std::size_t>(n_max) + 1);
        double total = 0.0;
        for (double& v : p) {
            v = u(rng);
            total += v;
        }
        for (double& v : p) {
            v /= total;
        }
        const ChannelModel ch(u(rng), p);
        for (int eta = 1; eta <= 6; ++eta) {
            const Matrix pi = transition_matrix(ch.l(), eta).pi;
            EXPECT_LE((pi.rowwise().sum().array() - 1.0).abs().maxCoeff(), 1e-12);
            EXPECT_GE(pi.minCoeff(), 0.0);
        }
    }
}

TEST(TransitionMatrix, EmptyBufferStaysEmptyWithoutComputation) {
    const Matrix pi = transition_matrix(std::vector<double>{1.0, 0.0, 0.0}, 2).pi;
    EXPECT_DOUBLE_EQ(pi(0, 0), 1.0);
    EXPECT_DOUBLE_EQ(pi(2, 0), 1.0);
    EXPECT_DOUBLE_EQ(pi(1, 0), 1.0);
}

TEST(RequiredBufferLength, ExactMaximumOverN) {
    EXPECT_EQ(required_buffer_length(4, 1), 4);
    EXPECT_EQ(required_buffer_length(4, 2), 2); // N = 3: 1 fine + 1 coarse
    EXPECT_EQ(required_buffer_length(4, 3), 2); // N = 2: 2 coarse
    EXPECT_EQ(required_buffer_length(7, 4), 4); // N = 7: 1 fine + 3 coarse
    EXPECT_THROW(required_buffer_length(4, 0), std::invalid_argument);
}

TEST(BufferCapacityWarning, OnlyWhenTooShort) {
    EXPECT_FALSE(buffer_capacity_warning(4, 4, 2).has_value());
    EXPECT_FALSE(buffer_capacity_warning(2, 4, 2).has_value());
    const auto w = buffer_capacity_warning(1, 4, 2);
    ASSERT_TRUE(w.has_value());
    EXPECT_NE(w->find("buffer length 1"), std::string::npos);
}

} // namespace
} // namespace esac
