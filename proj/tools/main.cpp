#include "mvc/cli.hpp"

int main(int argc, char** argv) { return mvc::cli::run(argc, argv); }
