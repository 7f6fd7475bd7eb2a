#include "rgstar/cli.hpp"

int main(int argc, char** argv) { return rgstar::cli_main(argc, argv); }
