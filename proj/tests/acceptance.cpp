// Acceptance suite: one pass/fail line per criterion, selected by argv[1].
#include <cstdio>
#include <cstdlib>

#include "oracles.hpp"
#include "swarm/io.hpp"
#include "swarm/simulator.hpp"

using namespace swarm;

namespace {
const Tolerance tol;

bool criterion_placeholder(int k) {
    std::printf("criterion %d: not yet implemented\n", k);
    return false;
}

} // namespace

int main(int argc, char** argv) {
    int k = argc > 1 ? std::atoi(argv[1]) : 0;
    bool ok = criterion_placeholder(k);
    return ok ? 0 : 1;
}
