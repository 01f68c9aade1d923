#include "esac/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

namespace esac {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

std::string normalize_key(std::string_view key) {
    std::string out(trim(key));
    while (!out.empty() && out.front() == '-') {
        out.erase(out.begin());
    }
    for (char& c : out) {
        c = c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

[[noreturn]] void fail(const std::string& origin, const std::string& message) {
    throw ConfigError(origin + ": " + message);
}

double parse_double(std::string_view text, const std::string& key, const std::string& origin) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() || !std::isfinite(value)) {
        fail(origin, "malformed number '" + std::string(text) + "' for " + key);
    }
    return value;
}

template <typename Int>
Int parse_int(std::string_view text, const std::string& key, const std::string& origin) {
    text = trim(text);
    Int value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        fail(origin, "malformed integer '" + std::string(text) + "' for " + key);
    }
    return value;
}

std::vector<double> parse_list(std::string_view text, const std::string& key, const std::string& origin) {
    std::vector<double> out;
    std::string buffer(text);
    std::replace(buffer.begin(), buffer.end(), ',', ' ');
    std::istringstream is(buffer);
    std::string token;
    while (is >> token) {
        out.push_back(parse_double(token, key, origin));
    }
    if (out.empty()) {
        fail(origin, key + " needs at least one value");
    }
    return out;
}

double in_range(double v, double lo, double hi, const std::string& key, const std::string& origin) {
    if (v < lo || v > hi) {
        std::ostringstream os;
        os << key << " = " << v << " is outside the valid range [" << lo << ", " << hi << "]";
        fail(origin, os.str());
    }
    return v;
}

double nonnegative(double v, const std::string& key, const std::string& origin) {
    if (v < 0.0) {
        std::ostringstream os;
        os << key << " = " << v << " must be >= 0";
        fail(origin, os.str());
    }
    return v;
}

int at_least_one(int v, const std::string& key, const std::string& origin) {
    if (v < 1) {
        fail(origin, key + " = " + std::to_string(v) + " must be >= 1");
    }
    return v;
}

void apply(RunConfig& cfg, const std::string& key, std::string_view raw, const std::string& origin) {
    const std::string_view value = trim(raw);
    if (key == "scheme") {
        try {
            cfg.scheme = parse_scheme(value);
        } catch (const std::invalid_argument& e) {
            fail(origin, e.what());
        }
    } else if (key == "eta") {
        cfg.eta = at_least_one(parse_int<int>(value, key, origin), key, origin);
    } else if (key == "lambda") {
        cfg.lambda = at_least_one(parse_int<int>(value, key, origin), key, origin);
    } else if (key == "n_max") {
        cfg.n_max = at_least_one(parse_int<int>(value, key, origin), key, origin);
    } else if (key == "d") {
        cfg.d = nonnegative(parse_double(value, key, origin), key, origin);
    } else if (key == "q") {
        cfg.q = in_range(parse_double(value, key, origin), 0.0, 1.0, key, origin);
    } else if (key == "p") {
        std::vector<double> p = parse_list(value, key, origin);
        try {
            validate_pmf(p, "p");
        } catch (const std::invalid_argument& e) {
            fail(origin, e.what());
        }
        if (p.size() < 2) {
            fail(origin, "p must list probabilities for N = 0 .. n_max with n_max >= 1");
        }
        cfg.p = std::move(p);
    } else if (key == "alpha") {
        cfg.alpha = nonnegative(parse_double(value, key, origin), key, origin);
    } else if (key == "rho1") {
        cfg.rho1 = nonnegative(parse_double(value, key, origin), key, origin);
    } else if (key == "rho2") {
        cfg.rho2 = nonnegative(parse_double(value, key, origin), key, origin);
    } else if (key == "epsilon") {
        cfg.epsilon = in_range(parse_double(value, key, origin), 0.0, 1.0, key, origin);
    } else if (key == "sigma_open") {
        cfg.sigma_open = nonnegative(parse_double(value, key, origin), key, origin);
    } else if (key == "nu") {
        std::vector<double> nu = parse_list(value, key, origin);
        if (std::any_of(nu.begin(), nu.end(), [](double v) { return !(v > 0.0); })) {
            fail(origin, "nu entries must be strictly positive");
        }
        cfg.nu = std::move(nu);
    } else if (key == "rho1_grid") {
        cfg.rho1_grid = parse_list(value, key, origin);
    } else if (key == "horizon") {
        cfg.horizon = at_least_one(parse_int<int>(value, key, origin), key, origin);
    } else if (key == "runs") {
        cfg.runs = at_least_one(parse_int<int>(value, key, origin), key, origin);
    } else if (key == "seed") {
        cfg.seed = parse_int<std::uint64_t>(value, key, origin);
    } else if (key == "x0") {
        cfg.x0 = parse_double(value, key, origin);
    } else if (key == "noise_std") {
        cfg.noise_std = nonnegative(parse_double(value, key, origin), key, origin);
    } else if (key == "output") {
        if (value.empty()) {
            fail(origin, "output needs a path or '-'");
        }
        cfg.output = std::string(value);
    } else if (key == "trajectory") {
        if (value.empty()) {
            fail(origin, "trajectory needs a path");
        }
        cfg.trajectory = std::string(value);
    } else {
        fail(origin, "unknown key '" + key + "'");
    }
}

} // namespace

const std::vector<std::string_view>& config_keys() {
    static const std::vector<std::string_view> keys{
        "scheme", "eta",     "lambda",     "n_max", "d",         "q",       "p",
        "alpha",  "rho1",    "rho2",       "epsilon", "sigma_open", "nu",   "rho1_grid",
        "horizon", "runs",   "seed",       "x0",    "noise_std", "output",  "trajectory",
    };
    return keys;
}

ChannelModel RunConfig::channel() const {
    if (!q) {
        throw ConfigError("missing key 'q' (delivery probability)");
    }
    if (!p) {
        throw ConfigError("missing key 'p' (processor pmf)");
    }
    return ChannelModel(*q, *p);
}

std::optional<double> RunConfig::resolved_rho2() const {
    if (rho2) {
        return rho2;
    }
    if (epsilon && rho1) {
        return *epsilon * *rho1;
    }
    return std::nullopt;
}

RunConfig parse_config(std::string_view text, const std::vector<Override>& overrides) {
    RunConfig cfg;
    std::map<std::string, std::string> origin_of;

    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find('\n', start), text.size());
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;

        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            if (end == text.size()) {
                break;
            }
            continue;
        }
        const std::string origin = "line " + std::to_string(line_no);
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            fail(origin, "expected 'key = value', got '" + std::string(line) + "'");
        }
        const std::string key = normalize_key(line.substr(0, eq));
        apply(cfg, key, line.substr(eq + 1), origin);
        origin_of[key] = origin;
        if (end == text.size()) {
            break;
        }
    }

    for (const Override& o : overrides) {
        const std::string key = normalize_key(o.key);
        const std::string origin = o.origin.empty() ? "--" + key : o.origin;
        apply(cfg, key, o.value, origin);
        origin_of[key] = origin;
    }

    if (cfg.rho2 && cfg.epsilon) {
        fail(origin_of["epsilon"], "give either rho2 (" + origin_of["rho2"] + ") or epsilon, not both");
    }
    if (cfg.p && cfg.n_max && *cfg.n_max != static_cast<int>(cfg.p->size()) - 1) {
        fail(origin_of["n_max"], "n_max = " + std::to_string(*cfg.n_max) + " but p has " +
                                     std::to_string(cfg.p->size()) + " entries (n_max + 1 expected)");
    }
    if (cfg.p && !cfg.n_max) {
        cfg.n_max = static_cast<int>(cfg.p->size()) - 1;
    }
    if (cfg.nu && cfg.n_max && static_cast<int>(cfg.nu->size()) != *cfg.n_max + 1) {
        fail(origin_of["nu"], "nu has " + std::to_string(cfg.nu->size()) + " entries, expected n_max + 1 = " +
                                  std::to_string(*cfg.n_max + 1));
    }
    return cfg;
}

} // namespace esac
