#include "esac/scheme_kind.hpp"

#include <cctype>
#include <stdexcept>

namespace esac {

std::string_view scheme_name(Scheme scheme) noexcept {
    switch (scheme) {
    case Scheme::B1:
        return "B1";
    case Scheme::B2:
        return "B2";
    case Scheme::A1:
        return "A1";
    case Scheme::A2:
        return "A2";
    }
    return "?";
}

Scheme parse_scheme(std::string_view text) {
    std::string upper(text);
    for (char& c : upper) {
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    if (upper == "B1") {
        return Scheme::B1;
    }
    if (upper == "B2") {
        return Scheme::B2;
    }
    if (upper == "A1") {
        return Scheme::A1;
    }
    if (upper == "A2") {
        return Scheme::A2;
    }
    throw std::invalid_argument("unknown scheme '" + std::string(text) + "' (expected B1, B2, A1 or A2)");
}

} // namespace esac
