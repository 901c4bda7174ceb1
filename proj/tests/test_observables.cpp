#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qmsets/observables.hpp"
#include "qmsets/serialize.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

using namespace qmsets;

namespace {

UniversePtr abc() { return Universe::make({"a", "b", "c"}); }

UniversePtr first_n(int n) {
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(std::string(1, char('a' + i)));
    return Universe::make(labels);
}

// Alphabet-ordinal attribute: a -> 1, b -> 2, c -> 3.
Attribute ordinal(const UniversePtr& u) {
    std::vector<Rational> values;
    for (int i = 0; i < u->size(); ++i) values.emplace_back(i + 1);
    return Attribute::make(u, std::move(values));
}

// All attributes with values from {0..top-1}, as value tables.
std::vector<Attribute> all_attributes(const UniversePtr& u, int top) {
    std::vector<Attribute> out;
    const int n = u->size();
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    while (true) {
        std::vector<Rational> values;
        for (int d : digits) values.emplace_back(d);
        out.push_back(Attribute::make(u, std::move(values)));
        int i = 0;
        while (i < n && ++digits[static_cast<std::size_t>(i)] == top) {
            digits[static_cast<std::size_t>(i)] = 0;
            ++i;
        }
        if (i == n) break;
    }
    return out;
}

}  // namespace

TEST_CASE("attribute construction and spectrum") {
    auto u = abc();
    const auto f = ordinal(u);
    CHECK(f.value("a") == Rational(1));
    CHECK(f.value("c") == Rational(3));
    CHECK(f.spectrum() == std::vector<Rational>{Rational(1), Rational(2), Rational(3)});
    const auto chi = Attribute::characteristic(u->subset({"b", "c"}));
    CHECK(chi.spectrum() == std::vector<Rational>{Rational(0), Rational(1)});
    CHECK(chi.preimage(Rational(1)) == u->subset({"b", "c"}));
    CHECK(chi.preimage(Rational(7)).empty());
    CHECK_THROWS_AS(Attribute::make(u, std::vector<Rational>{Rational(1)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        Attribute::make(u, std::vector<std::pair<std::string, Rational>>{
                               {"a", Rational(1)}, {"b", Rational(2)}}),
        std::invalid_argument);
}

TEST_CASE("inverse images partition the universe") {
    auto u = abc();
    CHECK(inverse_image_partition(ordinal(u)) == Partition::discrete(u));
    CHECK(inverse_image_partition(Attribute::characteristic(u->subset({"b", "c"}))) ==
          Partition::make({u->subset({"b", "c"}), u->subset({"a"})}));
    CHECK(inverse_image_partition(Attribute::constant(u, Rational(5))) ==
          Partition::indiscrete(u));
}

TEST_CASE("the eigenvalue equation means constant on the subset") {
    auto u = abc();
    const auto chi = Attribute::characteristic(u->subset({"b", "c"}));
    CHECK(eigen_check(chi, u->subset({"b", "c"})) == Rational(1));
    CHECK(eigen_check(chi, u->subset({"a"})) == Rational(0));
    CHECK_FALSE(eigen_check(ordinal(u), u->subset({"a", "b"})).has_value());
    CHECK_FALSE(eigen_check(chi, u->empty_set()).has_value());
}

TEST_CASE("spectral decomposition reconstructs the attribute") {
    auto u = abc();
    const auto decomposition = spectral_decomposition(ordinal(u));
    REQUIRE(decomposition.size() == 3);
    CHECK(decomposition[0].first == Rational(1));
    CHECK(decomposition[0].second == u->subset({"a"}));
    CHECK(decomposition[2].second == u->subset({"c"}));

    const auto chi = Attribute::characteristic(u->subset({"b", "c"}));
    const auto chi_decomposition = spectral_decomposition(chi);
    REQUIRE(chi_decomposition.size() == 2);
    CHECK(chi_decomposition[0].first == Rational(0));
    CHECK(chi_decomposition[0].second == u->subset({"a"}));
    CHECK(chi_decomposition[1].first == Rational(1));
    CHECK(chi_decomposition[1].second == u->subset({"b", "c"}));

    const auto constant = spectral_decomposition(Attribute::constant(u, Rational(5)));
    REQUIRE(constant.size() == 1);
    CHECK(constant[0].first == Rational(5));
    CHECK(constant[0].second == u->full_set());

    // pointwise: f(u) = sum of r over blocks containing u
    for (const auto& f : all_attributes(u, 3)) {
        for (int i = 0; i < u->size(); ++i) {
            Rational sum(0);
            for (const auto& [r, block] : spectral_decomposition(f)) {
                if (block.contains(i)) sum += r;
            }
            CHECK(sum == f.value(i));
        }
    }
}

TEST_CASE("projectors cut down to the eigenvalue block") {
    auto u = abc();
    const auto chi = Attribute::characteristic(u->subset({"b", "c"}));
    const auto p1 = projector(chi, Rational(1));
    CHECK(p1(u->full_set()) == u->subset({"b", "c"}));
    CHECK(p1(p1(u->full_set())) == p1(u->full_set()));
    CHECK(p1(u->empty_set()) == u->empty_set());
    try {
        projector(chi, Rational(7));
        FAIL("out-of-spectrum eigenvalue accepted");
    } catch (const std::domain_error& e) {
        const std::string what = e.what();
        CHECK(what.find("{0, 1}") != std::string::npos);  // spectrum is listed
    }
}

TEST_CASE("Born distributions are the Laplace-Boole conditionals") {
    auto u = abc();
    const auto uniform = born_distribution(ordinal(u), u->full_set());
    REQUIRE(uniform.size() == 3);
    for (const auto& [r, p] : uniform) CHECK(p == Rational(1, 3));

    const auto chi_bc = Attribute::characteristic(u->subset({"b", "c"}));
    const auto two_valued = born_distribution(chi_bc, u->full_set());
    CHECK(two_valued.at(Rational(0)) == Rational(1, 3));
    CHECK(two_valued.at(Rational(1)) == Rational(2, 3));

    const auto chi_ab = Attribute::characteristic(u->subset({"a", "b"}));
    const auto conditioned = born_distribution(chi_ab, u->subset({"b", "c"}));
    CHECK(conditioned.at(Rational(1)) == Rational(1, 2));
    CHECK(conditioned.at(Rational(0)) == Rational(1, 2));

    // zero-probability eigenvalues are omitted
    const auto collapsed = born_distribution(chi_bc, u->subset({"a"}));
    CHECK(collapsed.size() == 1);
    CHECK(collapsed.at(Rational(0)) == Rational(1));

    CHECK_THROWS_WITH_AS(born_distribution(chi_bc, u->empty_set()),
                         "measurement of the zero vector is undefined",
                         EmptyStateError);
}

TEST_CASE("basis Born rule spreads 1/|S| over the members") {
    auto u = abc();
    const auto dist = born_basis_distribution(u->subset({"a", "c"}));
    REQUIRE(dist.size() == 2);
    CHECK(dist[0] == std::pair<std::string, Rational>("a", Rational(1, 2)));
    CHECK(dist[1] == std::pair<std::string, Rational>("c", Rational(1, 2)));
    const auto single = born_basis_distribution(u->subset({"b"}));
    REQUIRE(single.size() == 1);
    CHECK(single[0].second == Rational(1));
    for (const auto& [label, p] : born_basis_distribution(u->full_set())) {
        CHECK(p == Rational(1, 3));
    }
    CHECK_THROWS_AS(born_basis_distribution(u->empty_set()), EmptyStateError);
}

TEST_CASE("probabilities in any distribution sum to exactly 1") {
    for (int n = 1; n <= 4; ++n) {
        auto u = first_n(n);
        for (const auto& f : all_attributes(u, 3)) {
            for (std::uint64_t bits = 1; bits <= u->all_bits(); ++bits) {
                Rational total(0);
                for (const auto& [r, p] : born_distribution(f, u->from_bits(bits))) {
                    total += p;
                }
                CHECK(total == Rational(1));
            }
        }
    }
}

TEST_CASE("measurement collapses by the sampled eigenvalue") {
    auto u = abc();
    const auto f = ordinal(u);

    // frozen draw: seed 2 selects eigenvalue 3, the jump to {c}
    RandomSource rng(2);
    const auto outcome = measure(f, u->full_set(), rng);
    CHECK(outcome.eigenvalue == Rational(3));
    CHECK(outcome.probability == Rational(1, 3));
    CHECK(outcome.post_state == u->subset({"c"}));

    // fixed seed, fixed outcome
    RandomSource again(2);
    CHECK(measure(f, u->full_set(), again).eigenvalue == Rational(3));

    // every outcome projects onto the matching preimage
    for (unsigned seed = 0; seed < 32; ++seed) {
        RandomSource source(seed);
        const auto m = measure(f, u->full_set(), source);
        CHECK(m.post_state == intersect(f.preimage(m.eigenvalue), u->full_set()));
    }

    // measuring an eigenstate is certain
    RandomSource eigen_rng(0);
    const auto chi = Attribute::characteristic(u->subset({"b", "c"}));
    const auto certain = measure(chi, u->subset({"b", "c"}), eigen_rng);
    CHECK(certain.eigenvalue == Rational(1));
    CHECK(certain.probability == Rational(1));
    CHECK(certain.post_state == u->subset({"b", "c"}));
}

TEST_CASE("repeating a measurement repeats its eigenvalue with certainty") {
    auto u = abc();
    for (const auto& f : all_attributes(u, 3)) {
        for (unsigned seed = 0; seed < 8; ++seed) {
            RandomSource rng(seed);
            const auto first = measure(f, u->full_set(), rng);
            const auto second = measure(f, first.post_state, rng);
            CHECK(second.eigenvalue == first.eigenvalue);
            CHECK(second.probability == Rational(1));
            CHECK(second.post_state == first.post_state);
        }
    }
}

TEST_CASE("sequential measurement feeds post-states forward") {
    auto u = abc();
    const auto chi_bc = Attribute::characteristic(u->subset({"b", "c"}));
    const auto chi_ab = Attribute::characteristic(u->subset({"a", "b"}));

    // frozen draw: seed 3 yields the (1,0) chain ending in {c}
    RandomSource rng(3);
    const auto chain = measure_sequence({chi_bc, chi_ab}, u->full_set(), rng);
    REQUIRE(chain.size() == 2);
    CHECK(chain[0].eigenvalue == Rational(1));
    CHECK(chain[0].post_state == u->subset({"b", "c"}));
    CHECK(chain[0].probability == Rational(2, 3));
    CHECK(chain[1].eigenvalue == Rational(0));
    CHECK(chain[1].post_state == u->subset({"c"}));
    CHECK(chain[1].probability == Rational(1, 2));

    RandomSource empty_rng(0);
    CHECK(measure_sequence({}, u->full_set(), empty_rng).empty());

    RandomSource single_rng(2);
    const auto single = measure_sequence({ordinal(u)}, u->full_set(), single_rng);
    REQUIRE(single.size() == 1);
    CHECK(single[0].post_state.cardinality() == 1);
}

TEST_CASE("complete sets of compatible attributes") {
    auto u = abc();
    const auto chi_bc = Attribute::characteristic(u->subset({"b", "c"}));
    const auto chi_ab = Attribute::characteristic(u->subset({"a", "b"}));
    CHECK(is_csca({chi_bc, chi_ab}));
    CHECK_FALSE(is_csca({chi_bc}));  // block {b,c} is never split
    CHECK(is_csca({ordinal(u)}));

    const auto labels = eigenket_labels({chi_bc, chi_ab});
    REQUIRE(labels.size() == 3);
    CHECK(labels[0].first == "a");
    CHECK(labels[0].second == std::vector<Rational>{Rational(0), Rational(1)});
    CHECK(labels[1].first == "b");
    CHECK(labels[1].second == std::vector<Rational>{Rational(1), Rational(1)});
    CHECK(labels[2].first == "c");
    CHECK(labels[2].second == std::vector<Rational>{Rational(1), Rational(0)});

    CHECK_THROWS_AS(eigenket_labels({chi_bc}), std::domain_error);

    // a constant attribute joins in an indiscrete partition and changes nothing
    const auto padded = std::vector<Attribute>{chi_bc, chi_ab,
                                               Attribute::constant(u, Rational(9))};
    CHECK(join(join(inverse_image_partition(chi_bc), inverse_image_partition(chi_ab)),
               Partition::indiscrete(u)) ==
          join(inverse_image_partition(chi_bc), inverse_image_partition(chi_ab)));
    CHECK(is_csca(padded));
    const auto padded_labels = eigenket_labels(padded);
    for (const auto& [label, tuple] : padded_labels) {
        REQUIRE(tuple.size() == 3);
        CHECK(tuple[2] == Rational(9));
    }
    CHECK_FALSE(padded_labels[0].second == padded_labels[1].second);
    CHECK_FALSE(padded_labels[1].second == padded_labels[2].second);
}

TEST_CASE("projector completeness and orthogonality, exhaustive n <= 4") {
    for (int n = 1; n <= 4; ++n) {
        auto u = first_n(n);
        for (const auto& f : all_attributes(u, 3)) {
            const auto spectrum = f.spectrum();
            for (std::uint64_t bits = 0; bits <= u->all_bits(); ++bits) {
                const auto s = u->from_bits(bits);
                SubsetVector xor_sum = u->empty_set();
                int cardinality_sum = 0;
                int pythagoras = 0;
                for (const auto& r : spectrum) {
                    const auto projected = projector(f, r)(s);
                    xor_sum = add(xor_sum, projected);
                    cardinality_sum += projected.cardinality();
                    pythagoras += norm_squared(projected);
                }
                CHECK(xor_sum == s);                        // completeness
                CHECK(cardinality_sum == s.cardinality());  // disjoint blocks
                CHECK(pythagoras == norm_squared(s));       // attribute Pythagoras
            }
            for (const auto& r : spectrum) {
                for (const auto& r2 : spectrum) {
                    if (r == r2) continue;
                    for (std::uint64_t bits = 0; bits <= u->all_bits(); ++bits) {
                        const auto s = u->from_bits(bits);
                        CHECK(projector(f, r)(projector(f, r2)(s)) == u->empty_set());
                    }
                }
            }
        }
    }
}

TEST_CASE("an eigenvalue is degenerate exactly when its eigenspace exceeds one line") {
    auto u = abc();
    for (const auto& f : all_attributes(u, 3)) {
        for (const auto& r : f.spectrum()) {
            // independent route: count the nonzero solutions of the
            // eigenvalue equation for this r
            int eigenvectors = 0;
            for (std::uint64_t bits = 1; bits <= u->all_bits(); ++bits) {
                if (eigen_check(f, u->from_bits(bits)) == r) ++eigenvectors;
            }
            const int block = f.preimage(r).cardinality();
            CHECK(eigenvectors == (1 << block) - 1);
            CHECK((block >= 2) == (eigenvectors >= 3));
        }
    }
}

TEST_CASE("characteristic-attribute Born value is the conditional probability") {
    for (int n = 1; n <= 4; ++n) {
        auto u = first_n(n);
        for (std::uint64_t tb = 0; tb <= u->all_bits(); ++tb) {
            for (std::uint64_t sb = 1; sb <= u->all_bits(); ++sb) {
                const auto t = u->from_bits(tb);
                const auto s = u->from_bits(sb);
                const auto dist = born_distribution(Attribute::characteristic(t), s);
                const int overlap = intersect(t, s).cardinality();
                if (overlap > 0) {
                    CHECK(dist.at(Rational(1)) == Rational(overlap, s.cardinality()));
                } else {
                    CHECK(dist.find(Rational(1)) == dist.end());
                }
            }
        }
    }
}

TEST_CASE("sampled frequencies track the exact Born probabilities") {
    auto u = abc();
    const auto chi = Attribute::characteristic(u->subset({"b", "c"}));
    const auto exact = born_distribution(chi, u->full_set());
    constexpr int kTrials = 100000;
    std::map<Rational, int> counts;
    RandomSource rng(0);
    for (int trial = 0; trial < kTrials; ++trial) {
        ++counts[measure(chi, u->full_set(), rng).eigenvalue];
    }
    for (const auto& [r, p] : exact) {
        const double expected = p.to_double();
        const double freq = counts[r] / static_cast<double>(kTrials);
        const double bound = 4.0 * std::sqrt(expected * (1.0 - expected) / kTrials);
        CHECK(std::abs(freq - expected) <= bound);
    }
}

TEST_CASE("distribution serialization carries fractions and post-states") {
    auto u = abc();
    const auto chi = Attribute::characteristic(u->subset({"b", "c"}));
    const Json json = distribution_json(chi, u->full_set());
    REQUIRE(json.size() == 2);
    CHECK(json[0]["eigenvalue"] == "0");
    CHECK(json[0]["prob"] == "1/3");
    CHECK(json[0]["decimal"] == "0.333333");
    CHECK(json[0]["post_state"] == "{a}");
    CHECK(json[1]["eigenvalue"] == "1");
    CHECK(json[1]["prob"] == "2/3");
    CHECK(json[1]["post_state"] == "{b,c}");
}
