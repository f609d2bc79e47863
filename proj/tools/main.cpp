#include "coploc/cli.hpp"

int main(int argc, char** argv) { return coploc::cli::run(argc, argv); }
