#include "guessgraph/cli.hpp"

int main(int argc, char** argv) { return guessgraph::cli::run(argc, argv); }
