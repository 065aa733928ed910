#include "tbf/cli.hpp"

int main(int argc, char** argv) { return tbf::run(argc, argv); }
