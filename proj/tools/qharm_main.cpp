#include "qharm/cli.hpp"

int main(int argc, char** argv) { return qharm::run_cli(argc, argv); }
