#include "latticeforge/cli.hpp"

int main(int argc, char** argv) { return latticeforge::run(argc, argv); }
