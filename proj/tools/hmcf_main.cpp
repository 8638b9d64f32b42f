#include "hmcf/cli.hpp"

int main(int argc, char** argv) { return hmcf::run_cli(argc, argv); }
