#include "rggmst/cli.hpp"

int main(int argc, char** argv) { return rggmst::cli_main(argc, argv); }
