#include "cli.hpp"

int main(int argc, char** argv) { return sharpconst::cli::main_entry(argc, argv); }
