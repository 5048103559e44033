#include "nonnoether/cli.hpp"

int main(int argc, char** argv) { return nonnoether::cli::dispatch(argc, argv); }
