#include "twinsurf/cli.hpp"

int main(int argc, char** argv) { return twinsurf::run(argc, argv); }
