#include "steklov/run.hpp"

int main(int argc, char** argv) { return steklov::run_main(argc, argv); }
