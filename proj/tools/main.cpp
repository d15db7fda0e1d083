#include "cli.hpp"

int main(int argc, char** argv) { return fairgdt::cli::run(argc, argv); }
