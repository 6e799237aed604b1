#include "ppcount/cli.hpp"

int main(int argc, char** argv) { return ppcount::cli::run(argc, argv); }
