#include "cli.hpp"

int main(int argc, char** argv) { return spheredpp::cli::run(argc, argv); }
