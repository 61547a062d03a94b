#include "ncmult_tools/cli.hpp"

int main(int argc, char** argv) { return ncmult::tools::run_cli(std::vector<std::string>(argv, argv + argc)); }
