#include "isoforge/cli.hpp"

int main(int argc, char** argv) { return isoforge::cli_dispatch(argc, argv); }
