// Command line front end. Exit codes: 0 success, 1 verification failure,
// 2 usage error.
#pragma once

namespace tbf {

int run(int argc, const char* const* argv);

}  // namespace tbf
