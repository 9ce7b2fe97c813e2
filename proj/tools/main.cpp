#include "bsa/cli.hpp"

int main(int argc, char** argv) { return bsa::run_cli(argc, argv); }
