#include "wpi/cli.hpp"

int main(int argc, char** argv) { return wpi::run_cli(argc, argv); }
