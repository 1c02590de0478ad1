#include <bandedge/cli.hpp>

int main(int argc, char** argv) { return bandedge::cli::main_entry(argc, argv); }
