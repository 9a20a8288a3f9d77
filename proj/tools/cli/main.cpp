#include "icgm_cli/app.hpp"

int main(int argc, char** argv) { return icgm::cli::run(argc, argv); }
