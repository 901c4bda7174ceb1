#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "qmsets/gf2.hpp"
#include "qmsets/observables.hpp"
#include "qmsets/states.hpp"
#include "qmsets/universe.hpp"

namespace qmsets {

class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A declarative experiment description: the universe plus named bases,
// attributes, states, and at most one dynamics matrix. Two encodings parse
// to the same structure: a line-oriented text format and JSON.
//
// Text format, one declaration per line ('#' starts a comment):
//
//   universe a b c
//   basis U' {a,b} {b,c} {a,b,c}
//   attribute f a=1 b=2 c=3
//   dynamics 110 111 011          # matrix rows, column j acts on singleton j
//   state slits {a,c}
//   seed 0
//
// Set literals must not contain spaces. The universe line comes first.
struct ExperimentSpec {
    UniversePtr universe;
    std::vector<Basis> bases;
    std::vector<std::pair<std::string, Attribute>> attributes;
    std::optional<Gf2Matrix> dynamics_matrix;
    std::vector<std::pair<std::string, SubsetVector>> states;
    std::uint64_t seed = 0;

    const Basis& basis(std::string_view name) const {
        for (const auto& b : bases) {
            if (b.name() == name) return b;
        }
        throw SpecError("unknown basis '" + std::string(name) + "'");
    }

    const Attribute& attribute(std::string_view name) const {
        for (const auto& [key, value] : attributes) {
            if (key == name) return value;
        }
        throw SpecError("unknown attribute '" + std::string(name) + "'");
    }

    // Accepts a declared state name or an inline set literal.
    SubsetVector state(std::string_view name_or_literal) const {
        if (!name_or_literal.empty() && name_or_literal.front() == '{') {
            return parse_subset(universe, name_or_literal);
        }
        for (const auto& [key, value] : states) {
            if (key == name_or_literal) return value;
        }
        throw SpecError("unknown state '" + std::string(name_or_literal) + "'");
    }

    const Gf2Matrix& dynamics() const {
        if (!dynamics_matrix) {
            throw SpecError("the experiment declares no dynamics matrix");
        }
        return *dynamics_matrix;
    }
};

namespace detail {

inline std::vector<std::string> split_tokens(std::string_view line) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) tokens.emplace_back(line.substr(start, i - start));
    }
    return tokens;
}

inline void require_unique_name(const ExperimentSpec& spec, const std::string& name) {
    for (const auto& b : spec.bases) {
        if (b.name() == name) throw SpecError("duplicate name '" + name + "'");
    }
    for (const auto& [key, value] : spec.attributes) {
        if (key == name) throw SpecError("duplicate name '" + name + "'");
    }
    for (const auto& [key, value] : spec.states) {
        if (key == name) throw SpecError("duplicate name '" + name + "'");
    }
}

}  // namespace detail

inline ExperimentSpec parse_experiment_text(std::string_view text) {
    ExperimentSpec spec;
    std::istringstream stream{std::string(text)};
    std::string raw;
    int line_number = 0;
    const auto fail = [&](const std::string& message) -> void {
        throw SpecError("line " + std::to_string(line_number) + ": " + message);
    };
    while (std::getline(stream, raw)) {
        ++line_number;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const auto tokens = detail::split_tokens(raw);
        if (tokens.empty()) continue;
        const std::string& keyword = tokens.front();
        try {
            if (keyword == "universe") {
                if (spec.universe) fail("universe declared twice");
                spec.universe = Universe::make({tokens.begin() + 1, tokens.end()});
                continue;
            }
            if (!spec.universe) fail("the universe line must come first");
            if (keyword == "basis") {
                if (tokens.size() < 3) fail("basis needs a name and vectors");
                detail::require_unique_name(spec, tokens[1]);
                std::vector<SubsetVector> vectors;
                for (std::size_t i = 2; i < tokens.size(); ++i) {
                    vectors.push_back(parse_subset(spec.universe, tokens[i]));
                }
                spec.bases.push_back(Basis::make(tokens[1], std::move(vectors)));
            } else if (keyword == "attribute") {
                if (tokens.size() < 2) fail("attribute needs a name");
                detail::require_unique_name(spec, tokens[1]);
                std::vector<std::pair<std::string, Rational>> entries;
                for (std::size_t i = 2; i < tokens.size(); ++i) {
                    const std::size_t eq = tokens[i].find('=');
                    if (eq == std::string::npos) {
                        fail("attribute entries look like label=value");
                    }
                    entries.emplace_back(tokens[i].substr(0, eq),
                                         Rational::parse(tokens[i].substr(eq + 1)));
                }
                spec.attributes.emplace_back(tokens[1],
                                             Attribute::make(spec.universe, entries));
            } else if (keyword == "dynamics") {
                if (spec.dynamics_matrix) fail("dynamics declared twice");
                const int n = spec.universe->size();
                if (static_cast<int>(tokens.size()) - 1 != n) {
                    fail("dynamics needs " + std::to_string(n) + " rows");
                }
                std::vector<std::vector<int>> rows;
                for (std::size_t i = 1; i < tokens.size(); ++i) {
                    if (static_cast<int>(tokens[i].size()) != n) {
                        fail("each dynamics row needs " + std::to_string(n) + " digits");
                    }
                    std::vector<int> row;
                    for (char digit : tokens[i]) {
                        if (digit != '0' && digit != '1') {
                            fail("dynamics rows are strings of 0s and 1s");
                        }
                        row.push_back(digit - '0');
                    }
                    rows.push_back(std::move(row));
                }
                spec.dynamics_matrix = Gf2Matrix::from_rows(spec.universe, rows);
            } else if (keyword == "state") {
                if (tokens.size() != 3) fail("state needs a name and a set literal");
                detail::require_unique_name(spec, tokens[1]);
                spec.states.emplace_back(tokens[1],
                                         parse_subset(spec.universe, tokens[2]));
            } else if (keyword == "seed") {
                if (tokens.size() != 2) fail("seed needs a single value");
                spec.seed = std::stoull(tokens[1]);
            } else {
                fail("unknown keyword '" + keyword + "'");
            }
        } catch (const SpecError&) {
            throw;
        } catch (const std::exception& e) {
            fail(e.what());
        }
    }
    if (!spec.universe) throw SpecError("the experiment declares no universe");
    return spec;
}

inline ExperimentSpec parse_experiment_json(const std::string& text) {
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw SpecError(std::string("invalid JSON: ") + e.what());
    }
    ExperimentSpec spec;
    try {
        if (!doc.contains("universe")) {
            throw SpecError("the experiment declares no universe");
        }
        spec.universe =
            Universe::make(doc.at("universe").get<std::vector<std::string>>());
        const auto to_subset = [&](const nlohmann::ordered_json& cell) {
            return spec.universe->subset(cell.get<std::vector<std::string>>());
        };
        const auto bases = doc.value("bases", nlohmann::ordered_json::object());
        for (const auto& [name, vectors] : bases.items()) {
            detail::require_unique_name(spec, name);
            std::vector<SubsetVector> parsed;
            for (const auto& cell : vectors) parsed.push_back(to_subset(cell));
            spec.bases.push_back(Basis::make(name, std::move(parsed)));
        }
        const auto attributes = doc.value("attributes", nlohmann::ordered_json::object());
        for (const auto& [name, table] : attributes.items()) {
            detail::require_unique_name(spec, name);
            std::vector<std::pair<std::string, Rational>> entries;
            for (const auto& [label, value] : table.items()) {
                entries.emplace_back(label,
                                     value.is_string()
                                         ? Rational::parse(value.get<std::string>())
                                         : Rational(value.get<std::int64_t>()));
            }
            spec.attributes.emplace_back(name, Attribute::make(spec.universe, entries));
        }
        if (doc.contains("dynamics")) {
            spec.dynamics_matrix = Gf2Matrix::from_rows(
                spec.universe, doc.at("dynamics").get<std::vector<std::vector<int>>>());
        }
        const auto states = doc.value("states", nlohmann::ordered_json::object());
        for (const auto& [name, members] : states.items()) {
            detail::require_unique_name(spec, name);
            spec.states.emplace_back(name, to_subset(members));
        }
        spec.seed = doc.value("seed", std::uint64_t{0});
    } catch (const SpecError&) {
        throw;
    } catch (const std::exception& e) {
        throw SpecError(e.what());
    }
    return spec;
}

// Dispatches on the first significant character: '{' means JSON.
inline ExperimentSpec parse_experiment(const std::string& text) {
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
        if (c == '{') return parse_experiment_json(text);
        break;
    }
    return parse_experiment_text(text);
}

inline ExperimentSpec load_experiment_file(const std::string& path) {
    std::ifstream stream(path);
    if (!stream) {
        throw SpecError("cannot open experiment file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return parse_experiment(buffer.str());
}

}  // namespace qmsets
