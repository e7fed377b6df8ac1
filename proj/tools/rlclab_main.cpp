#include "rlclab/cli.hpp"

int main(int argc, char** argv) { return rlclab::run_cli(argc, argv); }
