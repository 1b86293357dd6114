#include "xortho/cli.hpp"

int main(int argc, char** argv) { return xortho::cli_main(argc, argv); }
