#include "commands.hpp"

int main(int argc, char** argv) { return qdf::cli::run(argc, argv); }
