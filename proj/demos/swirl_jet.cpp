// Advects cos(2 pi x) cos(4 pi y) through one swirl period with both jet
// steppers and prints the error against the initial condition.

#include <cstdio>

#include "advectlab/advectlab.hpp"

int main() {
    using namespace advectlab;
    for (int n : {16, 32, 64}) {
        const Grid grid(n);
        const JetField ic = sample_jet(grid, efficiency_ic);
        for (auto variant : {JetVariant::analytic, JetVariant::epsfd}) {
            SwirlField swirl(1.0);
            const JetField out = advance(ic, variant, 0.0, 1.0, swirl);
            std::printf("n=%3d %-9s error=%.3e  velocity evals=%llu\n", n,
                        variant == JetVariant::analytic ? "analytic" : "epsfd", max_abs_diff(out.phi, ic.phi),
                        static_cast<unsigned long long>(swirl.evaluations()));
        }
    }
}
