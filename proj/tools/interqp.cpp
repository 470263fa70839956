#include "iqp/cli.hpp"

int main(int argc, char** argv) { return iqp::run_cli(argc, argv); }
