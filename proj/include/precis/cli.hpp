#pragma once

namespace precis {

// Full command-line entry point; returns the process exit code.
// 0 = success, 2 = input/config error, 3 = numerical/estimator failure.
int run_cli(int argc, const char* const* argv);

}  // namespace precis
