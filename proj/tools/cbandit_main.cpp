#include "cbandit/cli.hpp"

int main(int argc, char** argv) { return cbandit::cli_main(argc, argv); }
