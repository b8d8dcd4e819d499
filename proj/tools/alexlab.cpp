#include "alexlab/cli/app.hpp"

int main(int argc, char** argv) { return alexlab::cli::run_cli(argc, argv); }
