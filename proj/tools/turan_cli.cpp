#include "turan/cli.hpp"

int main(int argc, char** argv) { return turan::cli::run(argc, argv); }
