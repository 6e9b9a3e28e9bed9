#include "blockrad/cli.hpp"

int main(int argc, char** argv) { return blockrad::cli_dispatch(argc, argv); }
