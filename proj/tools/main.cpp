#include "wgcool/cli.hpp"

int main(int argc, char** argv) { return wgcool::cli::main(argc, argv); }
