// Single command-line entry point wiring all modules; JSON in, JSON out,
// exit codes 0 (ok) / 1 (fail) / 2 (unknown).

#ifndef NRD_CLI_HPP
#define NRD_CLI_HPP

#include <string>
#include <vector>

namespace nrd {

int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);  // args without the program name

}  // namespace nrd

#endif
