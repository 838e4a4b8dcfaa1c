#include "cli.hpp"

int main(int argc, char** argv) { return zerotherm::run_cli(argc, argv); }
