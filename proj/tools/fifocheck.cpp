#include "fifo/frontend/cli.hpp"

int main(int argc, char** argv) { return fifo::cli::run(argc, argv); }
