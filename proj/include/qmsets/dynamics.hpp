#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qmsets/gf2.hpp"
#include "qmsets/observables.hpp"
#include "qmsets/random.hpp"
#include "qmsets/states.hpp"
#include "qmsets/universe.hpp"

namespace qmsets {

// Non-singular GF(2) evolution, the sets-analogue of unitary dynamics. One
// application of the matrix is one time period.
class Dynamics {
public:
    static Dynamics make(Gf2Matrix matrix) {
        if (matrix.domain().get() != matrix.codomain().get()) {
            throw std::invalid_argument("Dynamics: matrix must map a universe to itself");
        }
        if (!matrix.is_nonsingular()) {
            throw SingularMatrixError();
        }
        return Dynamics(std::move(matrix));
    }

    const Gf2Matrix& matrix() const { return matrix_; }
    const UniversePtr& universe() const { return matrix_.domain(); }

private:
    explicit Dynamics(Gf2Matrix matrix) : matrix_(std::move(matrix)) {}

    Gf2Matrix matrix_;
};

inline SubsetVector evolve(const Dynamics& dynamics, const SubsetVector& state,
                           std::uint64_t periods) {
    return dynamics.matrix().pow(periods).apply(state);
}

// Checks <S|_U T> = <A(S)|_{A(U)} A(T)> by actually expressing the images
// in the image basis A(U). Non-singular dynamics preserves coordinates, so
// this holds for every pair; the function makes the property executable.
inline bool bracket_preserved(const Dynamics& dynamics, const SubsetVector& s,
                              const SubsetVector& t) {
    SubsetVector::require_same_universe(s, t);
    const Basis image_basis = Basis::make("U'", dynamics.matrix().columns());
    const SubsetVector s_image = dynamics.matrix().apply(s);
    const SubsetVector t_image = dynamics.matrix().apply(t);
    const int before = bracket(s, t);
    const int after =
        bracket(express(Ket{s_image}, image_basis), express(Ket{t_image}, image_basis));
    return before == after;
}

// The two-slit arrangement: a state prepared at the diaphragm, evolved to
// the wall where vertical position (the U-basis) is always what gets
// measured. measure_at_slits toggles the position measurement at the
// diaphragm.
struct TwoSlitConfig {
    Dynamics dynamics;
    SubsetVector slit_state;
    bool measure_at_slits = false;
    std::uint64_t periods = 1;
};

struct TwoSlitResult {
    bool measured;
    // Exact wall distribution over every position label, zeros included.
    std::vector<std::pair<std::string, Rational>> exact;
    // Monte-Carlo counts per position; empty when trials == 0.
    std::vector<std::pair<std::string, std::uint64_t>> sampled;
    std::uint64_t trials = 0;
};

namespace detail {

// One draw against a cumulative basis distribution, universe order.
inline const std::string& sample_position(
    const std::vector<std::pair<std::string, Rational>>& distribution,
    RandomSource& rng) {
    const Rational u = rng.next_unit();
    Rational cumulative(0);
    for (const auto& [label, p] : distribution) {
        cumulative += p;
        if (u < cumulative) return label;
    }
    return distribution.back().first;
}

}  // namespace detail

// Exact wall distribution by total probability; optional Monte-Carlo
// replay with the caller's seeded source as an independent cross-check.
inline TwoSlitResult two_slit(const TwoSlitConfig& config, RandomSource& rng,
                              std::uint64_t trials) {
    if (config.slit_state.empty()) throw EmptyStateError();
    if (config.slit_state.universe().get() != config.dynamics.universe().get()) {
        throw UniverseMismatchError();
    }
    const UniversePtr& universe = config.dynamics.universe();
    const int n = universe->size();
    const Gf2Matrix stepped = config.dynamics.matrix().pow(config.periods);

    std::vector<Rational> exact(static_cast<std::size_t>(n), Rational(0));
    if (config.measure_at_slits) {
        // Condition on the slit the particle was found in, evolve that
        // eigenstate, and mix the wall distributions.
        const Rational slit_probability(1, config.slit_state.cardinality());
        for (int slit = 0; slit < n; ++slit) {
            if (!config.slit_state.contains(slit)) continue;
            const SubsetVector at_wall = stepped.apply(universe->singleton(slit));
            for (const auto& [label, p] : born_basis_distribution(at_wall)) {
                exact[static_cast<std::size_t>(universe->index_of(label))] +=
                    slit_probability * p;
            }
        }
    } else {
        // The undisturbed superposition evolves as one vector; overlapping
        // branches cancel mod 2 before the wall measurement.
        const SubsetVector at_wall = stepped.apply(config.slit_state);
        for (const auto& [label, p] : born_basis_distribution(at_wall)) {
            exact[static_cast<std::size_t>(universe->index_of(label))] = p;
        }
    }

    TwoSlitResult result;
    result.measured = config.measure_at_slits;
    result.trials = trials;
    for (int i = 0; i < n; ++i) {
        result.exact.emplace_back(universe->label(i), exact[static_cast<std::size_t>(i)]);
    }

    if (trials > 0) {
        std::vector<std::uint64_t> counts(static_cast<std::size_t>(n), 0);
        const auto slit_distribution = born_basis_distribution(config.slit_state);
        // Wall distributions per conditioned slit, and for the undisturbed
        // superposition, fixed before the replay loop.
        std::vector<std::vector<std::pair<std::string, Rational>>> wall_by_slit(
            static_cast<std::size_t>(n));
        for (int slit = 0; slit < n; ++slit) {
            if (config.slit_state.contains(slit)) {
                wall_by_slit[static_cast<std::size_t>(slit)] =
                    born_basis_distribution(stepped.apply(universe->singleton(slit)));
            }
        }
        const auto wall_undisturbed =
            born_basis_distribution(stepped.apply(config.slit_state));
        for (std::uint64_t trial = 0; trial < trials; ++trial) {
            int wall_position;
            if (config.measure_at_slits) {
                const std::string& slit = detail::sample_position(slit_distribution, rng);
                const auto& wall = wall_by_slit[static_cast<std::size_t>(universe->index_of(slit))];
                wall_position = universe->index_of(detail::sample_position(wall, rng));
            } else {
                wall_position =
                    universe->index_of(detail::sample_position(wall_undisturbed, rng));
            }
            ++counts[static_cast<std::size_t>(wall_position)];
        }
        for (int i = 0; i < n; ++i) {
            result.sampled.emplace_back(universe->label(i), counts[static_cast<std::size_t>(i)]);
        }
    }
    return result;
}

}  // namespace qmsets
