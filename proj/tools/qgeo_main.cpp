#include <cstdlib>

#include "qgeo/cli.hpp"

int main(int argc, char** argv) {
    // Point-level parallelism owns the cores; a threaded BLAS underneath would
    // oversubscribe and make run-to-run output order-dependent.
    setenv("OPENBLAS_NUM_THREADS", "1", 1);
    return qgeo::cli::main_entry(argc, argv);
}
