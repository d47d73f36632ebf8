#include "cli.hpp"

int main(int argc, char** argv) { return dlcc::runCli(argc, argv); }
