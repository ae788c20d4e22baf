#include "cli.hpp"

int main(int argc, char** argv) { return skillc::cli::run(argc, argv); }
