#include "geodist/cli.hpp"

int main(int argc, char** argv) { return geodist::run(argc, argv); }
