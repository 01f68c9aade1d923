// esac: certification, boundary sweeps and Monte Carlo runs for the
// event-triggered buffered control schemes.
//
//   esac certify  --config FILE [--key value ...]
//   esac sweep    --config FILE [--key value ...]
//   esac simulate --config FILE [--key value ...]
//   esac example1
//   esac selftest
//
// Every configuration key is also a flag (--rho1 0.9, --p 0.2 0.2 0.2 0.2 0.2);
// flags override the file. Exit status: 0 success or certified, 2 not
// certified, 1 error.

#include "esac/commands.hpp"
#include "esac/config.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw esac::ConfigError("cannot read config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct ConfigFlags {
    std::string config_path;
    std::map<std::string, std::vector<std::string>> values;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& flags) {
    cmd->add_option("-c,--config", flags.config_path, "key = value configuration file");
    for (const std::string_view key : esac::config_keys()) {
        std::string name = "--" + std::string(key);
        if (key.find('_') != std::string_view::npos) {
            std::string dashed(key);
            std::replace(dashed.begin(), dashed.end(), '_', '-');
            name += ",--" + dashed;
        }
        cmd->add_option(name, flags.values[std::string(key)], "override '" + std::string(key) + "'")
            ->expected(1, CLI::detail::expected_max_vector_size)
            ->allow_extra_args(true);
    }
}

esac::RunConfig load(const ConfigFlags& flags) {
    std::vector<esac::Override> overrides;
    for (const auto& [key, parts] : flags.values) {
        if (parts.empty()) {
            continue;
        }
        std::string joined;
        for (const std::string& part : parts) {
            joined += (joined.empty() ? "" : " ") + part;
        }
        overrides.push_back({key, joined, "--" + key});
    }
    const std::string text = flags.config_path.empty() ? std::string() : read_file(flags.config_path);
    return esac::parse_config(text, overrides);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certification and simulation of event-triggered sequence-based anytime control"};
    app.require_subcommand(1);

    ConfigFlags certify_flags;
    ConfigFlags sweep_flags;
    ConfigFlags simulate_flags;
    CLI::App* certify = app.add_subcommand("certify", "Schur test of the certification matrix with Psi/Omega and bound constants");
    CLI::App* sweep = app.add_subcommand("sweep", "Boundary alpha*(rho1) as CSV");
    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo mean of V(x_k) for the benchmark plant as CSV");
    CLI::App* example1 = app.add_subcommand("example1", "Three-step buffer traces checked against their closed expressions");
    CLI::App* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
    add_config_flags(certify, certify_flags);
    add_config_flags(sweep, sweep_flags);
    add_config_flags(simulate, simulate_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "esac: error: " << e.what() << '\n';
        return esac::kExitError;
    }

    try {
        if (certify->parsed()) {
            return esac::run_certify(load(certify_flags), std::cout, std::cerr);
        }
        if (sweep->parsed()) {
            return esac::run_sweep(load(sweep_flags), std::cout, std::cerr);
        }
        if (simulate->parsed()) {
            return esac::run_simulate(load(simulate_flags), std::cout, std::cerr);
        }
        if (example1->parsed()) {
            return esac::run_example1(std::cout);
        }
        if (selftest->parsed()) {
            return esac::run_selftest(std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "esac: error: " << e.what() << '\n';
        return esac::kExitError;
    }
    return esac::kExitError;
}
