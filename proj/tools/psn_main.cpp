#include "psn/cli.hpp"

int main(int argc, char** argv) { return psn::run_cli(argc, argv); }
