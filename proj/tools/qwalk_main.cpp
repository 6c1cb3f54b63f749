#include "cli/runner.hpp"

int main(int argc, char** argv) { return qwalk::cli::run_main(argc, argv); }
