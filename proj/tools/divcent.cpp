#include "divcent/cli.hpp"

int main(int argc, char** argv) { return divcent::cli::run(argc, argv); }
