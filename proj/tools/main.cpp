#include "neuro01/cli.hpp"

int main(int argc, char** argv) { return neuro01::cli::run(argc, argv); }
