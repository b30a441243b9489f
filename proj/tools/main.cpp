#include "cli.hpp"

int main(int argc, char** argv) { return tcsp::cli::dispatch(argc, argv); }
