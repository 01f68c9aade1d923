#include "esac/config.hpp"

#include <gtest/gtest.h>

namespace esac {
namespace {

std::string error_of(std::string_view text, const std::vector<Override>& overrides = {}) {
    try {
        parse_config(text, overrides);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

TEST(Config, ParsesDocumentAndDefaults) {
    const RunConfig c = parse_config(
        "# benchmark\n"
        "scheme = a2\n"
        "eta = 2\n"
        "q = 0.5   # delivery\n"
        "p = 0.2 0.2 0.2 0.2 0.2\n"
        "\n"
        "alpha = 1.35\n"
        "rho1 = 0.9\n"
        "epsilon = 0.5\n");
    EXPECT_EQ(c.scheme, Scheme::A2);
    EXPECT_EQ(c.eta, 2);
    EXPECT_EQ(c.n_max, 4);
    EXPECT_DOUBLE_EQ(*c.resolved_rho2(), 0.45);
    EXPECT_EQ(c.d, 1.0);
    EXPECT_EQ(c.horizon, 200);
    EXPECT_EQ(c.runs, 10000);
    EXPECT_EQ(c.seed, 1u);
    EXPECT_EQ(c.output, "-");
    EXPECT_FALSE(c.nu.has_value());
    const ChannelModel ch = c.channel();
    EXPECT_DOUBLE_EQ(ch.l()[0], 0.6);
    EXPECT_DOUBLE_EQ(ch.l()[4], 0.1);
}

TEST(Config, FlagsOverrideFile) {
    const RunConfig c = parse_config("q = 0.5\nseed = 3\n", {{"q", "0.8", "--q"}, {"--noise-std", "0", ""}});
    EXPECT_DOUBLE_EQ(*c.q, 0.8);
    EXPECT_EQ(c.seed, 3u);
    EXPECT_EQ(c.noise_std, 0.0);
}

TEST(Config, EmptyFileWithFlagsOnly) {
    const RunConfig c = parse_config("", {{"scheme", "A1", "--scheme"}, {"q", "1", "--q"}, {"p", "0 1", "--p"}});
    EXPECT_EQ(c.scheme, Scheme::A1);
    EXPECT_EQ(c.n_max, 1);
}

TEST(Config, CommaSeparatedLists) {
    const RunConfig c = parse_config("p = 0.5, 0.5\nrho1_grid = 0.1,0.2\n");
    EXPECT_EQ(c.p->size(), 2u);
    EXPECT_EQ(c.rho1_grid->size(), 2u);
}

TEST(Config, ErrorsNameTheLineOrFlag) {
    EXPECT_NE(error_of("q = 0.5\nq = 1.5\n").find("line 2"), std::string::npos);
    EXPECT_NE(error_of("q = 1.5").find("[0, 1]"), std::string::npos);
    EXPECT_NE(error_of("q = 1.5").find("q"), std::string::npos);
    EXPECT_NE(error_of("", {{"q", "abc", "--q"}}).find("--q"), std::string::npos);
    EXPECT_NE(error_of("bogus = 1").find("unknown key 'bogus'"), std::string::npos);
    EXPECT_NE(error_of("alpha 1.3").find("line 1"), std::string::npos);
    EXPECT_NE(error_of("p = 0.5 0.6").find("line 1"), std::string::npos);
    EXPECT_NE(error_of("eta = 1.5").find("malformed integer"), std::string::npos);
    EXPECT_NE(error_of("eta = 0").find(">= 1"), std::string::npos);
    EXPECT_NE(error_of("alpha = nan").find("malformed number"), std::string::npos);
    EXPECT_NE(error_of("scheme = C3").find("line 1"), std::string::npos);
    EXPECT_NE(error_of("p = 1").find("n_max >= 1"), std::string::npos);
}

TEST(Config, ConflictsAndConsistency) {
    EXPECT_NE(error_of("rho2 = 0.4\nepsilon = 0.5\n").find("not both"), std::string::npos);
    EXPECT_NE(error_of("n_max = 3\np = 0.5 0.5\n").find("n_max"), std::string::npos);
    EXPECT_NE(error_of("p = 0.5 0.5\nnu = 1 1 1\n").find("nu"), std::string::npos);
    EXPECT_NE(error_of("nu = 1 0 1").find("strictly positive"), std::string::npos);
}

TEST(Config, MissingChannelKeysReported) {
    const RunConfig c = parse_config("p = 0.5 0.5");
    try {
        (void)c.channel();
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("'q'"), std::string::npos);
    }
}

TEST(Config, KeysAreDocumented) {
    const auto& keys = config_keys();
    EXPECT_EQ(keys.size(), 21u);
    for (const auto key : keys) {
        // Every documented key is accepted by the parser.
        const std::string err = error_of(std::string(key) + " = ???");
        EXPECT_EQ(err.find("unknown key"), std::string::npos) << key;
    }
}

} // namespace
} // namespace esac
