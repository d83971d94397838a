#include "affexp/cli.hpp"

int main(int argc, char** argv) { return affexp::cli::run(argc, argv); }
