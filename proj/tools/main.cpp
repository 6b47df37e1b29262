#include "hcsa/cli.hpp"

int main(int argc, char** argv) { return hcsa::cli::run(argc, argv); }
