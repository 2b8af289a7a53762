#include "chowz/cli.hpp"

int main(int argc, char** argv) { return chowz::cli::run(argc, argv); }
