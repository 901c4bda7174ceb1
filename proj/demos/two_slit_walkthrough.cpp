// Library walkthrough: sets up the three-position universe, shows basis
// changes and a degenerate measurement chain, then runs the two-slit
// experiment with and without a measurement at the slits.

#include <cstdio>

#include "qmsets/density.hpp"
#include "qmsets/dynamics.hpp"
#include "qmsets/observables.hpp"
#include "qmsets/serialize.hpp"
#include "qmsets/states.hpp"

using namespace qmsets;

int main() {
    auto u = Universe::make({"a", "b", "c"});

    // {a,b}, {b,c}, {a,b,c} form a second basis of the subset space.
    const auto prime = Basis::make(
        "U'", {u->subset({"a", "b"}), u->subset({"b", "c"}), u->subset({"a", "b", "c"})});
    const Ket superposition{u->subset({"a", "c"})};
    std::printf("|{a,c}> in the U'-basis: %s\n",
                express(superposition, prime).to_string().c_str());

    // Two characteristic attributes form a complete set: their eigenvalue
    // pairs label every singleton.
    const auto chi_bc = Attribute::characteristic(u->subset({"b", "c"}));
    const auto chi_ab = Attribute::characteristic(u->subset({"a", "b"}));
    std::printf("chi_bc, chi_ab form a CSCA: %s\n",
                is_csca({chi_bc, chi_ab}) ? "yes" : "no");
    RandomSource rng(3);
    const auto chain = measure_sequence({chi_bc, chi_ab}, u->full_set(), rng);
    std::printf("measured eigenket (%s,%s) -> %s\n",
                chain[0].eigenvalue.str().c_str(), chain[1].eigenvalue.str().c_str(),
                chain[1].post_state.to_string().c_str());

    // The measurement as a density-matrix superoperator.
    const auto hatted = measure_density(chi_bc, u->full_set());
    std::printf("rho-hat after measuring chi_bc on {a,b,c}:\n%s",
                density_csv(hatted).c_str());

    // One period of non-singular dynamics between the slits and the wall.
    const auto dynamics =
        Dynamics::make(Gf2Matrix::from_rows(u, {{1, 1, 0}, {1, 1, 1}, {0, 1, 1}}));
    for (const bool measured : {true, false}) {
        RandomSource sampler(0);
        const TwoSlitConfig config{dynamics, u->subset({"a", "c"}), measured, 1};
        const auto result = two_slit(config, sampler, 100000);
        std::printf("\n%s", two_slit_ascii(result).c_str());
    }
    return 0;
}
