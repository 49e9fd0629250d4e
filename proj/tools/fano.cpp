#include "fano/lattice.hpp"

#include <iostream>

int main() {
    std::cout << "fano cli placeholder\n";
    return 0;
}
