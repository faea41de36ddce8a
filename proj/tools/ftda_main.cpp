#include "ftda/cli.hpp"

int main(int argc, char** argv) { return ftda::cli_dispatch(argc, argv); }
