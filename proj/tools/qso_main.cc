#include <iostream>

#include "qso/cli.h"

int main(int argc, char** argv) { return qso::Main(argc, argv, std::cout, std::cerr); }
