#include "sentitrade/cli.hpp"

#include <iostream>

int main(int argc, char **argv) {
	return sentitrade::cli::run(argc, argv, std::cout, std::cerr);
}
