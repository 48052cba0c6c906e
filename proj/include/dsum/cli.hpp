#pragma once

// The `dsum` command line.
//
// Exit codes: 0 success, 1 usage or invalid argument, 2 input format,
// 3 numeric overflow or scale guard, 4 verification failure.

#include <iosfwd>

namespace dsum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFormat = 2;
inline constexpr int kExitOverflow = 3;
inline constexpr int kExitVerification = 4;

int dispatch(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace dsum::cli
