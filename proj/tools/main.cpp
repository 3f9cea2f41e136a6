#include "hddist/cli.hpp"

int main(int argc, char** argv) { return hddist::run_cli(argc, argv); }
