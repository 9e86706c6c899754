#include "frobangle/cli.hpp"

int main(int argc, char** argv) { return frobangle::run_cli(argc, argv); }
