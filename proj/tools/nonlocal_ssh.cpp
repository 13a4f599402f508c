#include "nlssh/cli.hpp"

int main(int argc, char** argv) { return nlssh::cli::run(argc, argv); }
