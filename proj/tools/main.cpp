#include "wearfem/experiments.hpp"

int main(int argc, char** argv) { return wearfem::cli_main(argc, argv); }
