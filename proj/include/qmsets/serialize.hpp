#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"

#include "qmsets/density.hpp"
#include "qmsets/dynamics.hpp"
#include "qmsets/gf2.hpp"
#include "qmsets/observables.hpp"
#include "qmsets/partition.hpp"
#include "qmsets/rational.hpp"
#include "qmsets/states.hpp"

// Machine-readable renderings of the library's results. The fraction string
// is always the authoritative value; decimals are 6-place conveniences.

namespace qmsets {

using Json = nlohmann::ordered_json;

inline std::string decimal6(const Rational& r) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6f", r.to_double());
    return buffer;
}

inline std::string csv_quote(const std::string& cell) {
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// ---- ket table ------------------------------------------------------------

inline Json ket_table_json(const KetTable& table) {
    Json out;
    out["columns"] = table.column_names;
    Json rows = Json::array();
    for (const auto& row : table.rows) {
        Json cells = Json::array();
        for (const auto& cell : row) cells.push_back(cell.to_string());
        rows.push_back(std::move(cells));
    }
    out["rows"] = std::move(rows);
    return out;
}

inline std::string ket_table_csv(const KetTable& table) {
    std::string out;
    for (std::size_t i = 0; i < table.column_names.size(); ++i) {
        if (i) out += ",";
        out += csv_quote(table.column_names[i]);
    }
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            out += csv_quote(row[i].to_string());
        }
        out += "\n";
    }
    return out;
}

// ---- Born distributions ----------------------------------------------------

inline Json distribution_json(const Attribute& f, const SubsetVector& state) {
    Json out = Json::array();
    for (const auto& [eigenvalue, prob] : born_distribution(f, state)) {
        Json entry;
        entry["eigenvalue"] = eigenvalue.str();
        entry["prob"] = prob.str();
        entry["decimal"] = decimal6(prob);
        entry["post_state"] = intersect(f.preimage(eigenvalue), state).to_string();
        out.push_back(std::move(entry));
    }
    return out;
}

inline Json basis_distribution_json(const SubsetVector& state) {
    Json out = Json::array();
    for (const auto& [label, prob] : born_basis_distribution(state)) {
        Json entry;
        entry["outcome"] = label;
        entry["prob"] = prob.str();
        entry["decimal"] = decimal6(prob);
        out.push_back(std::move(entry));
    }
    return out;
}

// ---- density matrices -------------------------------------------------------

inline Json density_json(const DensityMatrix& rho) {
    Json out;
    out["order"] = rho.universe()->labels();
    Json entries = Json::array();
    for (int i = 0; i < rho.dimension(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < rho.dimension(); ++j) row.push_back(rho.at(i, j).str());
        entries.push_back(std::move(row));
    }
    out["entries"] = std::move(entries);
    return out;
}

inline std::string density_csv(const DensityMatrix& rho) {
    std::string out;
    for (int j = 0; j < rho.dimension(); ++j) {
        out += ",";
        out += rho.universe()->label(j);
    }
    out += "\n";
    for (int i = 0; i < rho.dimension(); ++i) {
        out += rho.universe()->label(i);
        for (int j = 0; j < rho.dimension(); ++j) {
            out += ",";
            out += rho.at(i, j).str();
        }
        out += "\n";
    }
    return out;
}

// ---- two-slit results --------------------------------------------------------

inline Json two_slit_json(const TwoSlitResult& result, std::uint64_t seed) {
    Json out;
    out["mode"] = result.measured ? "measured" : "unmeasured";
    Json exact;
    for (const auto& [label, p] : result.exact) exact[label] = p.str();
    out["exact"] = std::move(exact);
    Json decimals;
    for (const auto& [label, p] : result.exact) decimals[label] = decimal6(p);
    out["decimal"] = std::move(decimals);
    if (!result.sampled.empty()) {
        Json sampled;
        for (const auto& [label, count] : result.sampled) sampled[label] = count;
        out["sampled"] = std::move(sampled);
    }
    out["trials"] = result.trials;
    out["seed"] = seed;
    return out;
}

inline std::string two_slit_csv(const TwoSlitResult& result) {
    std::string out = result.sampled.empty()
                          ? std::string("position,exact,decimal\n")
                          : std::string("position,exact,decimal,count,frequency\n");
    for (std::size_t i = 0; i < result.exact.size(); ++i) {
        const auto& [label, p] = result.exact[i];
        out += label;
        out += ",";
        out += p.str();
        out += ",";
        out += decimal6(p);
        if (!result.sampled.empty()) {
            const auto count = result.sampled[i].second;
            out += ",";
            out += std::to_string(count);
            out += ",";
            out += decimal6(Rational(static_cast<std::int64_t>(count),
                                     static_cast<std::int64_t>(result.trials)));
        }
        out += "\n";
    }
    return out;
}

// Proportional bars, full scale = the largest probability.
inline std::string bar_chart(const std::vector<std::pair<std::string, Rational>>& dist,
                             int width = 40) {
    Rational top(0);
    std::size_t label_width = 0;
    std::size_t fraction_width = 0;
    for (const auto& [label, p] : dist) {
        if (top < p) top = p;
        label_width = std::max(label_width, label.size());
        fraction_width = std::max(fraction_width, p.str().size());
    }
    std::string out;
    for (const auto& [label, p] : dist) {
        std::string line = label;
        line.append(label_width - label.size() + 2, ' ');
        const std::string frac = p.str();
        line += frac;
        line.append(fraction_width - frac.size() + 2, ' ');
        line += decimal6(p);
        line += "  ";
        if (!top.is_zero()) {
            const Rational scaled = p / top * Rational(width);
            line.append(static_cast<std::size_t>(scaled.to_double() + 0.5), '#');
        }
        out += line;
        out += "\n";
    }
    return out;
}

inline std::string two_slit_ascii(const TwoSlitResult& result) {
    std::string out = result.measured ? "mode: measured at slits\n"
                                      : "mode: no measurement at slits\n";
    out += "exact wall distribution:\n";
    out += bar_chart(result.exact);
    if (!result.sampled.empty()) {
        out += "sampled (" + std::to_string(result.trials) + " trials):\n";
        std::vector<std::pair<std::string, Rational>> freq;
        for (const auto& [label, count] : result.sampled) {
            freq.emplace_back(label, Rational(static_cast<std::int64_t>(count),
                                              static_cast<std::int64_t>(result.trials)));
        }
        out += bar_chart(freq);
    }
    return out;
}

// ---- partition and orbit listings ---------------------------------------------

inline Json partitions_json(const std::vector<Partition>& partitions) {
    Json out = Json::array();
    for (const auto& pi : partitions) {
        Json entry;
        entry["partition"] = pi.to_string();
        entry["blocks"] = pi.block_count();
        const Rational h = logical_entropy(pi);
        entry["entropy"] = h.str();
        entry["decimal"] = decimal6(h);
        entry["dits"] = dit_set(pi).count();
        out.push_back(std::move(entry));
    }
    return out;
}

inline std::string partitions_csv(const std::vector<Partition>& partitions) {
    std::string out = "partition,blocks,entropy,decimal,dits\n";
    for (const auto& pi : partitions) {
        const Rational h = logical_entropy(pi);
        out += csv_quote(pi.to_string());
        out += "," + std::to_string(pi.block_count());
        out += "," + h.str();
        out += "," + decimal6(h);
        out += "," + std::to_string(dit_set(pi).count());
        out += "\n";
    }
    return out;
}

inline Json orbits_json(const std::vector<std::vector<SubsetVector>>& cycles) {
    Json out = Json::array();
    for (const auto& cycle : cycles) {
        Json entry;
        entry["length"] = cycle.size();
        Json members = Json::array();
        for (const auto& v : cycle) members.push_back(v.to_string());
        entry["cycle"] = std::move(members);
        out.push_back(std::move(entry));
    }
    return out;
}

inline std::string orbits_csv(const std::vector<std::vector<SubsetVector>>& cycles) {
    std::string out = "length,cycle\n";
    for (const auto& cycle : cycles) {
        out += std::to_string(cycle.size());
        out += ",";
        std::string chain;
        for (const auto& v : cycle) {
            if (!chain.empty()) chain += "->";
            chain += v.to_string();
        }
        out += csv_quote(chain);
        out += "\n";
    }
    return out;
}

}  // namespace qmsets
