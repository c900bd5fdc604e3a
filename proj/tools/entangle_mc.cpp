#include "entangle/runner.hpp"

int main(int argc, char** argv) { return entangle::cli_main(argc, argv); }
