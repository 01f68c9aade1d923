#pragma once

#include <string>
#include <string_view>

namespace esac {

/// B1/B2 apply one input per successful transmission with no buffering;
/// A1/A2 buffer tentative future inputs (one-law and two-law variants).
enum class Scheme { B1, B2, A1, A2 };

std::string_view scheme_name(Scheme scheme) noexcept;

/// Case-insensitive "B1", "B2", "A1", "A2". Throws std::invalid_argument.
Scheme parse_scheme(std::string_view text);

} // namespace esac
