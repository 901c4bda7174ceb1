#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmsets/partition.hpp"
#include "qmsets/random.hpp"
#include "qmsets/rational.hpp"
#include "qmsets/universe.hpp"

namespace qmsets {

class EmptyStateError : public std::domain_error {
public:
    EmptyStateError()
        : std::domain_error("measurement of the zero vector is undefined") {}
};

// Numerical attribute f: U -> Q, the observable of this calculus. Values
// are exact rationals so eigenvalue grouping is exact equality.
class Attribute {
public:
    static Attribute make(UniversePtr universe, std::vector<Rational> values) {
        if (static_cast<int>(values.size()) != universe->size()) {
            throw std::invalid_argument("Attribute: need one value per outcome");
        }
        return Attribute(std::move(universe), std::move(values));
    }

    static Attribute make(const UniversePtr& universe,
                          const std::vector<std::pair<std::string, Rational>>& entries) {
        std::vector<Rational> values(static_cast<std::size_t>(universe->size()));
        std::vector<bool> seen(static_cast<std::size_t>(universe->size()), false);
        for (const auto& [label, value] : entries) {
            const int i = universe->index_of(label);
            if (seen[static_cast<std::size_t>(i)]) {
                throw std::invalid_argument("Attribute: duplicate value for '" + label + "'");
            }
            seen[static_cast<std::size_t>(i)] = true;
            values[static_cast<std::size_t>(i)] = value;
        }
        for (int i = 0; i < universe->size(); ++i) {
            if (!seen[static_cast<std::size_t>(i)]) {
                throw std::invalid_argument("Attribute: missing value for '" +
                                            universe->label(i) + "'");
            }
        }
        return Attribute(universe, std::move(values));
    }

    // chi_S: the 0/1 indicator of a subset.
    static Attribute characteristic(const SubsetVector& s) {
        std::vector<Rational> values(static_cast<std::size_t>(s.universe()->size()));
        for (int i = 0; i < s.universe()->size(); ++i) {
            values[static_cast<std::size_t>(i)] = Rational(s.contains(i) ? 1 : 0);
        }
        return Attribute(s.universe(), std::move(values));
    }

    static Attribute constant(UniversePtr universe, const Rational& value) {
        std::vector<Rational> values(static_cast<std::size_t>(universe->size()), value);
        return Attribute(std::move(universe), std::move(values));
    }

    const UniversePtr& universe() const { return universe_; }

    const Rational& value(int index) const {
        return values_.at(static_cast<std::size_t>(index));
    }
    const Rational& value(std::string_view label) const {
        return value(universe_->index_of(label));
    }

    // Distinct values in ascending order.
    std::vector<Rational> spectrum() const {
        std::vector<Rational> out = values_;
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    // f^{-1}(r); empty when r is outside the spectrum.
    SubsetVector preimage(const Rational& r) const {
        std::uint64_t bits = 0;
        for (int i = 0; i < universe_->size(); ++i) {
            if (values_[static_cast<std::size_t>(i)] == r) bits |= std::uint64_t{1} << i;
        }
        return universe_->from_bits(bits);
    }

private:
    Attribute(UniversePtr universe, std::vector<Rational> values)
        : universe_(std::move(universe)), values_(std::move(values)) {}

    UniversePtr universe_;
    std::vector<Rational> values_;
};

struct MeasurementOutcome {
    Rational eigenvalue;
    Rational probability;
    SubsetVector post_state;
};

// The inverse images of an attribute partition the universe.
inline Partition inverse_image_partition(const Attribute& f) {
    std::vector<SubsetVector> blocks;
    for (const auto& r : f.spectrum()) blocks.push_back(f.preimage(r));
    return Partition::make(std::move(blocks));
}

// The eigenvalue equation: f restricted to S equals r*S iff f is constant
// on a nonempty S with value r.
inline std::optional<Rational> eigen_check(const Attribute& f, const SubsetVector& s) {
    if (s.universe().get() != f.universe().get()) {
        throw UniverseMismatchError();
    }
    if (s.empty()) return std::nullopt;
    const Rational r = f.value(s.least_element());
    for (int i = 0; i < s.universe()->size(); ++i) {
        if (s.contains(i) && f.value(i) != r) return std::nullopt;
    }
    return r;
}

// (r, f^{-1}(r)) pairs in ascending eigenvalue order; f = sum of
// r * chi_{f^{-1}(r)} pointwise.
inline std::vector<std::pair<Rational, SubsetVector>> spectral_decomposition(
    const Attribute& f) {
    std::vector<std::pair<Rational, SubsetVector>> out;
    for (const auto& r : f.spectrum()) out.emplace_back(r, f.preimage(r));
    return out;
}

// The projection operator f^{-1}(r) intersect (): idempotent and
// GF(2)-linear.
class Projector {
public:
    explicit Projector(SubsetVector block) : block_(std::move(block)) {}

    const SubsetVector& block() const { return block_; }

    SubsetVector operator()(const SubsetVector& t) const { return intersect(block_, t); }

private:
    SubsetVector block_;
};

inline Projector projector(const Attribute& f, const Rational& r) {
    const SubsetVector block = f.preimage(r);
    if (block.empty()) {
        std::string spectrum = "{";
        bool first = true;
        for (const auto& value : f.spectrum()) {
            if (!first) spectrum += ", ";
            spectrum += value.str();
            first = false;
        }
        spectrum += "}";
        throw std::domain_error("projector: " + r.str() +
                                " is not an eigenvalue; the spectrum is " + spectrum);
    }
    return Projector(block);
}

// Pr(r|S) = |f^{-1}(r) intersect S| / |S|, the Laplace-Boole conditional
// probability. Zero-probability eigenvalues are omitted.
inline std::map<Rational, Rational> born_distribution(const Attribute& f,
                                                      const SubsetVector& s) {
    if (s.universe().get() != f.universe().get()) {
        throw UniverseMismatchError();
    }
    if (s.empty()) throw EmptyStateError();
    std::map<Rational, Rational> out;
    for (const auto& r : f.spectrum()) {
        const int overlap = intersect(f.preimage(r), s).cardinality();
        if (overlap > 0) {
            out.emplace(r, Rational(overlap, s.cardinality()));
        }
    }
    return out;
}

// Pr({u}|S) = 1/|S| on the members of S, 0 elsewhere; entries listed in
// universe order, members of S only.
inline std::vector<std::pair<std::string, Rational>> born_basis_distribution(
    const SubsetVector& s) {
    if (s.empty()) throw EmptyStateError();
    std::vector<std::pair<std::string, Rational>> out;
    for (int i = 0; i < s.universe()->size(); ++i) {
        if (s.contains(i)) {
            out.emplace_back(s.universe()->label(i), Rational(1, s.cardinality()));
        }
    }
    return out;
}

// One projective measurement: sample an eigenvalue by the Born rule, then
// project. One rational-uniform draw is split by cumulative probabilities
// in ascending eigenvalue order.
inline MeasurementOutcome measure(const Attribute& f, const SubsetVector& s,
                                  RandomSource& rng) {
    const auto distribution = born_distribution(f, s);
    const Rational u = rng.next_unit();
    Rational cumulative(0);
    for (const auto& [r, p] : distribution) {
        cumulative += p;
        if (u < cumulative) {
            return MeasurementOutcome{r, p, intersect(f.preimage(r), s)};
        }
    }
    // Unreachable for exact probabilities summing to 1 and u < 1; keep the
    // last outcome as a safety net.
    const auto& [r, p] = *distribution.rbegin();
    return MeasurementOutcome{r, p, intersect(f.preimage(r), s)};
}

// Sequential measurement, feeding each post-state into the next attribute.
inline std::vector<MeasurementOutcome> measure_sequence(
    const std::vector<Attribute>& attrs, const SubsetVector& s, RandomSource& rng) {
    std::vector<MeasurementOutcome> out;
    SubsetVector state = s;
    for (const auto& f : attrs) {
        out.push_back(measure(f, state, rng));
        state = out.back().post_state;
    }
    return out;
}

// Complete Set of Compatible Attributes: the join of the inverse-image
// partitions is discrete, so eigenvalue tuples pin down singletons.
inline bool is_csca(const std::vector<Attribute>& attrs) {
    if (attrs.empty()) return false;
    Partition joined = inverse_image_partition(attrs.front());
    for (std::size_t i = 1; i < attrs.size(); ++i) {
        joined = join(joined, inverse_image_partition(attrs[i]));
    }
    return joined.is_discrete();
}

// Each outcome labeled by its eigenvalue tuple, in universe order.
inline std::vector<std::pair<std::string, std::vector<Rational>>> eigenket_labels(
    const std::vector<Attribute>& attrs) {
    if (!is_csca(attrs)) {
        throw std::domain_error(
            "eigenket_labels: attributes are not a complete set (join of their "
            "partitions is not discrete)");
    }
    const UniversePtr& universe = attrs.front().universe();
    std::vector<std::pair<std::string, std::vector<Rational>>> out;
    for (int i = 0; i < universe->size(); ++i) {
        std::vector<Rational> tuple;
        tuple.reserve(attrs.size());
        for (const auto& f : attrs) tuple.push_back(f.value(i));
        out.emplace_back(universe->label(i), std::move(tuple));
    }
    return out;
}

}  // namespace qmsets
