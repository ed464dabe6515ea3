#include "nrd/cli.hpp"

int main(int argc, char** argv) { return nrd::run_cli(argc, argv); }
