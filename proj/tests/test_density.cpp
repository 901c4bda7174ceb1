#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qmsets/density.hpp"
#include "qmsets/serialize.hpp"

#include <cstdint>
#include <string>
#include <vector>

using namespace qmsets;

namespace {

UniversePtr abc() { return Universe::make({"a", "b", "c"}); }

UniversePtr first_n(int n) {
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(std::string(1, char('a' + i)));
    return Universe::make(labels);
}

// Test-side matrix type, independent of the library's arithmetic.
using NaiveMatrix = std::vector<std::vector<Rational>>;

NaiveMatrix naive_zero(int n) {
    return NaiveMatrix(static_cast<std::size_t>(n),
                       std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
}

NaiveMatrix naive_multiply(const NaiveMatrix& a, const NaiveMatrix& b) {
    const int n = static_cast<int>(a.size());
    NaiveMatrix out = naive_zero(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                    a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                    b[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            }
        }
    }
    return out;
}

NaiveMatrix naive_projector(const SubsetVector& block) {
    const int n = block.universe()->size();
    NaiveMatrix out = naive_zero(n);
    for (int i = 0; i < n; ++i) {
        if (block.contains(i)) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Rational(1);
    }
    return out;
}

NaiveMatrix naive_rho(const SubsetVector& state) {
    const int n = state.universe()->size();
    NaiveMatrix out = naive_zero(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (state.contains(i) && state.contains(j)) {
                out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    Rational(1, state.cardinality());
            }
        }
    }
    return out;
}

void check_equal(const DensityMatrix& actual, const NaiveMatrix& expected) {
    for (int i = 0; i < actual.dimension(); ++i) {
        for (int j = 0; j < actual.dimension(); ++j) {
            CHECK(actual.at(i, j) ==
                  expected[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        }
    }
}

}  // namespace

TEST_CASE("pure-state density matrices") {
    auto u = abc();
    const auto pair_block = rho_block(u->subset({"a", "b"}));
    const NaiveMatrix expected_pair = {
        {Rational(1, 2), Rational(1, 2), Rational(0)},
        {Rational(1, 2), Rational(1, 2), Rational(0)},
        {Rational(0), Rational(0), Rational(0)},
    };
    check_equal(pair_block, expected_pair);

    const auto singleton = rho_block(u->subset({"c"}));
    const NaiveMatrix expected_singleton = {
        {Rational(0), Rational(0), Rational(0)},
        {Rational(0), Rational(0), Rational(0)},
        {Rational(0), Rational(0), Rational(1)},
    };
    check_equal(singleton, expected_singleton);

    const auto b_only = rho_block(u->subset({"b"}));
    CHECK(b_only.at(1, 1) == Rational(1));
    CHECK(b_only.matrix().trace() == Rational(1));

    CHECK_THROWS_AS(rho_block(u->empty_set()), EmptyStateError);
}

TEST_CASE("partition density matrices, weighted sum route") {
    auto u = abc();
    const auto pi = Partition::make({u->subset({"a", "b"}), u->subset({"c"})});
    const NaiveMatrix expected = {
        {Rational(1, 3), Rational(1, 3), Rational(0)},
        {Rational(1, 3), Rational(1, 3), Rational(0)},
        {Rational(0), Rational(0), Rational(1, 3)},
    };
    check_equal(rho_partition(pi), expected);

    // indiscrete: every entry 1/n; discrete: (1/n) identity
    const auto blob = rho_partition(Partition::indiscrete(u));
    const auto fine = rho_partition(Partition::discrete(u));
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            CHECK(blob.at(i, j) == Rational(1, 3));
            CHECK(fine.at(i, j) == (i == j ? Rational(1, 3) : Rational(0)));
        }
    }
}

TEST_CASE("partition density entries read off the indit relation, n <= 4") {
    for (int n = 1; n <= 4; ++n) {
        auto u = first_n(n);
        for (const auto& pi : enumerate_partitions(u)) {
            const auto rho = rho_partition(pi);
            const auto indits = indit_set(pi);
            CHECK(rho.matrix().trace() == Rational(1));
            CHECK(rho.matrix().is_symmetric());
            for (int i = 0; i < n; ++i) {
                CHECK(rho.at(i, i) == Rational(1, n));  // diagonal always 1/n
                for (int j = 0; j < n; ++j) {
                    if (indits.contains(i, j)) {
                        CHECK(rho.at(i, j) == Rational(1, n));
                    } else {
                        CHECK(rho.at(i, j) == Rational(0));
                    }
                }
            }
        }
    }
}

TEST_CASE("projector matrices are idempotent and symmetric") {
    auto u = abc();
    for (std::uint64_t bits = 0; bits <= u->all_bits(); ++bits) {
        const ProjectorMatrix p(u->from_bits(bits));
        const RationalMatrix m = p.to_matrix();
        CHECK(m.multiply(m) == m);
        CHECK(m.is_symmetric());
    }
}

TEST_CASE("the trace rule recovers Born probabilities") {
    auto u = abc();
    CHECK(prob_via_trace(u->subset({"b", "c"}), u->full_set()) == Rational(2, 3));
    CHECK(prob_via_trace(u->subset({"a", "c"}), u->subset({"a", "c"})) == Rational(1));
    CHECK(prob_via_trace(u->subset({"a"}), u->subset({"b", "c"})) == Rational(0));
    CHECK_THROWS_AS(prob_via_trace(u->subset({"a"}), u->empty_set()), EmptyStateError);

    // oracle: naive trace of the naive product agrees
    const NaiveMatrix product =
        naive_multiply(naive_projector(u->subset({"b", "c"})), naive_rho(u->full_set()));
    Rational trace(0);
    for (int i = 0; i < 3; ++i) trace += product[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    CHECK(trace == Rational(2, 3));
}

TEST_CASE("trace rule equals the Born distribution everywhere, n <= 4") {
    for (int n = 1; n <= 4; ++n) {
        auto u = first_n(n);
        // all attributes valued in {0,1,2,3}
        std::vector<int> digits(static_cast<std::size_t>(n), 0);
        while (true) {
            std::vector<Rational> values;
            for (int d : digits) values.emplace_back(d);
            const auto f = Attribute::make(u, std::move(values));
            for (std::uint64_t bits = 1; bits <= u->all_bits(); ++bits) {
                const auto s = u->from_bits(bits);
                const auto distribution = born_distribution(f, s);
                for (const auto& r : f.spectrum()) {
                    const Rational via_trace = prob_via_trace(f.preimage(r), s);
                    const auto it = distribution.find(r);
                    CHECK(via_trace == (it == distribution.end() ? Rational(0) : it->second));
                }
            }
            int i = 0;
            while (i < n && ++digits[static_cast<std::size_t>(i)] == 4) {
                digits[static_cast<std::size_t>(i)] = 0;
                ++i;
            }
            if (i == n) break;
        }
    }
}

TEST_CASE("measurement damps coherences across eigenvalue blocks") {
    auto u = abc();
    const auto chi = Attribute::characteristic(u->subset({"b", "c"}));

    // oracle: evaluate the superoperator sum with the naive routines
    NaiveMatrix folded = naive_zero(3);
    for (const auto& r : chi.spectrum()) {
        const NaiveMatrix p = naive_projector(chi.preimage(r));
        const NaiveMatrix conjugated = naive_multiply(naive_multiply(p, naive_rho(u->full_set())), p);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                folded[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                    conjugated[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            }
        }
    }
    const NaiveMatrix frozen = {
        {Rational(1, 3), Rational(0), Rational(0)},
        {Rational(0), Rational(1, 3), Rational(1, 3)},
        {Rational(0), Rational(1, 3), Rational(1, 3)},
    };
    CHECK(folded == frozen);

    const auto hatted = measure_density(chi, u->full_set());
    check_equal(hatted, frozen);
    // the result is the density matrix of the induced partition
    CHECK(hatted == rho_partition(Partition::make({u->subset({"a"}), u->subset({"b", "c"})})));

    // constant attribute: nothing to distinguish, the state is untouched
    const auto untouched = measure_density(Attribute::constant(u, Rational(5)),
                                           u->subset({"a", "c"}));
    CHECK(untouched == rho_block(u->subset({"a", "c"})));

    // injective attribute: all coherences die, 1/|S| on the diagonal of S
    std::vector<Rational> ordinal_values{Rational(1), Rational(2), Rational(3)};
    const auto injective = Attribute::make(u, std::move(ordinal_values));
    const auto diagonal = measure_density(injective, u->subset({"a", "c"}));
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (i == j && u->subset({"a", "c"}).contains(i)) {
                CHECK(diagonal.at(i, j) == Rational(1, 2));
            } else {
                CHECK(diagonal.at(i, j) == Rational(0));
            }
        }
    }

    CHECK_THROWS_AS(measure_density(chi, u->empty_set()), EmptyStateError);
}

TEST_CASE("measurement equals the partition made on the state, n <= 3") {
    // rho-hat(S) is rho of the partition {f^-1(r) cap S} on S, extended by
    // zeros off S: entry (i,j) = 1/|S| iff i,j in S and f(i) = f(j).
    for (int n = 1; n <= 3; ++n) {
        auto u = first_n(n);
        std::vector<int> digits(static_cast<std::size_t>(n), 0);
        while (true) {
            std::vector<Rational> values;
            for (int d : digits) values.emplace_back(d);
            const auto f = Attribute::make(u, std::move(values));
            for (std::uint64_t bits = 1; bits <= u->all_bits(); ++bits) {
                const auto s = u->from_bits(bits);
                const auto hatted = measure_density(f, s);
                for (int i = 0; i < n; ++i) {
                    for (int j = 0; j < n; ++j) {
                        const bool coherent = s.contains(i) && s.contains(j) &&
                                              f.value(i) == f.value(j);
                        CHECK(hatted.at(i, j) ==
                              (coherent ? Rational(1, s.cardinality()) : Rational(0)));
                    }
                }
            }
            int i = 0;
            while (i < n && ++digits[static_cast<std::size_t>(i)] == 3) {
                digits[static_cast<std::size_t>(i)] = 0;
                ++i;
            }
            if (i == n) break;
        }
    }
}

TEST_CASE("the join as a superoperator") {
    auto u = abc();
    const auto blob = Partition::indiscrete(u);
    const auto split = Partition::make({u->subset({"b", "c"}), u->subset({"a"})});
    CHECK(join_via_density(blob, split) == rho_partition(split));
    // joining with the indiscrete partition changes nothing
    for (const auto& pi : enumerate_partitions(u)) {
        CHECK(join_via_density(pi, blob) == rho_partition(pi));
    }
    const auto fine = Partition::discrete(u);
    const auto finest = join_via_density(fine, fine);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            CHECK(finest.at(i, j) == (i == j ? Rational(1, 3) : Rational(0)));
        }
    }
}

TEST_CASE("partition-join identity over all pairs, n <= 4") {
    for (int n = 1; n <= 4; ++n) {
        auto u = first_n(n);
        const auto all = enumerate_partitions(u);
        for (const auto& pi : all) {
            for (const auto& sigma : all) {
                CHECK(join_via_density(pi, sigma) == rho_partition(join(pi, sigma)));
            }
        }
    }
}

TEST_CASE("density matrices serialize with explicit row order") {
    auto u = abc();
    const auto pi = Partition::make({u->subset({"a", "b"}), u->subset({"c"})});
    const Json json = density_json(rho_partition(pi));
    CHECK(json["order"] == Json::array({"a", "b", "c"}));
    CHECK(json["entries"][0][0] == "1/3");
    CHECK(json["entries"][0][2] == "0");
    CHECK(json["entries"][2][2] == "1/3");
    const std::string csv = density_csv(rho_partition(pi));
    CHECK(csv.rfind(",a,b,c\n", 0) == 0);
    CHECK(csv.find("a,1/3,1/3,0\n") != std::string::npos);
    CHECK(csv.find("c,0,0,1/3\n") != std::string::npos);
}

TEST_CASE("invalid density matrices are rejected") {
    auto u = abc();
    RationalMatrix skew = RationalMatrix::zero(u);
    skew.at(0, 1) = Rational(1, 2);
    skew.at(0, 0) = Rational(1);
    CHECK_THROWS_AS(DensityMatrix::from_matrix(skew), std::invalid_argument);

    RationalMatrix off_trace = RationalMatrix::identity(u);
    CHECK_THROWS_AS(DensityMatrix::from_matrix(off_trace), std::invalid_argument);
}
