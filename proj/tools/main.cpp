#include "trigmom/cli_app.hpp"

int main(int argc, char** argv) { return trigmom::run_cli(argc, argv); }
