#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "cliffq/algebra.hpp"

namespace cliffq {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

// Accepts "a", "bi", "a+bi", "a-bi", "i", "-i" (j is accepted for i).
std::optional<Complex> parse_complex(std::string_view text);

// args excludes the program name. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cliffq
