#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <omp.h>

#include "commands.hpp"

int main(int argc, char** argv) {
    if (const char* env = std::getenv("STRONGMAX_THREADS")) {
        const int threads = std::atoi(env);
        if (threads > 0) omp_set_num_threads(threads);
    }
    const std::vector<std::string> args(argv, argv + argc);
    return strongmax::cli::run(args, std::cout, std::cerr);
}
