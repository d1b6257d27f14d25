#include <cstdlib>
#include <iostream>

#include "bachelier/validate.hpp"

int main(int argc, char** argv) {
    bachelier::validate::Options opts;
    if (argc > 1)
        opts.filter = argv[1];
    const auto results = bachelier::validate::run_acceptance(opts);
    bachelier::validate::print_table(results, std::cout);
    return bachelier::validate::all_passed(results) ? EXIT_SUCCESS : EXIT_FAILURE;
}
