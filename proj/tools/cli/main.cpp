#include <iostream>

#include "app.hpp"

int main(int argc, char** argv) {
    return bayesmv::cli::main_entry(argc, argv, std::cerr);
}
