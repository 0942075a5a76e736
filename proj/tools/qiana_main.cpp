#include "qiana/runner.hpp"

int main(int argc, char** argv) { return qiana::cli_main(argc, argv); }
