#include "cohpol/run.hpp"

int main(int argc, char** argv) { return cohpol::run_cli(argc, argv); }
