#include "qsx/cli.hpp"

int main(int argc, char** argv) { return qsx::cli_main(argc, argv); }
