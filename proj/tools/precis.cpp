#include "precis/cli.hpp"

int main(int argc, char** argv) { return precis::run_cli(argc, argv); }
