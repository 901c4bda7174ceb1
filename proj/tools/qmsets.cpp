// Command-line front end: runs the experiments described by a spec document
// and prints machine-readable results. Exit codes: 0 success, 1 usage error,
// 2 domain error (singular matrix, empty state, dependent basis, bad spec).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qmsets/density.hpp"
#include "qmsets/dynamics.hpp"
#include "qmsets/observables.hpp"
#include "qmsets/partition.hpp"
#include "qmsets/serialize.hpp"
#include "qmsets/spec_doc.hpp"
#include "qmsets/states.hpp"

namespace {

using namespace qmsets;

struct CommonOptions {
    std::string spec_path;
    std::string format = "json";
    std::string out_path;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonOptions& options, bool with_seed = true) {
    cmd->add_option("spec", options.spec_path, "experiment description file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--format", options.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "ascii"}))
        ->capture_default_str();
    cmd->add_option("--out", options.out_path, "write results to a file instead of stdout");
    if (with_seed) {
        cmd->add_option("--seed", options.seed, "sampling seed (overrides the spec)");
    }
}

std::uint64_t effective_seed(const CommonOptions& options, const ExperimentSpec& spec) {
    return options.seed ? *options.seed : spec.seed;
}

void emit(const CommonOptions& options, const std::string& text) {
    if (options.out_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(options.out_path, std::ios::binary);
    if (!out) {
        throw SpecError("cannot open output file '" + options.out_path + "'");
    }
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

void emit_json(const CommonOptions& options, const Json& document) {
    emit(options, document.dump(2));
}

std::string pad(const std::string& cell, std::size_t width) {
    std::string out = cell;
    out.append(width > cell.size() ? width - cell.size() : 0, ' ');
    return out;
}

// ---- ket-table --------------------------------------------------------------

std::string ket_table_ascii(const KetTable& table) {
    std::vector<std::size_t> widths;
    for (const auto& name : table.column_names) widths.push_back(name.size());
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            widths[j] = std::max(widths[j], row[j].to_string().size());
        }
    }
    std::string out;
    for (std::size_t j = 0; j < table.column_names.size(); ++j) {
        if (j) out += "  ";
        out += pad(table.column_names[j], widths[j]);
    }
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out += "  ";
            out += pad(row[j].to_string(), widths[j]);
        }
        out += "\n";
    }
    return out;
}

int run_ket_table(const CommonOptions& options) {
    const auto spec = load_experiment_file(options.spec_path);
    std::vector<Basis> bases{Basis::standard(spec.universe)};
    bases.insert(bases.end(), spec.bases.begin(), spec.bases.end());
    const auto table = ket_table(bases);
    if (options.format == "json") {
        emit_json(options, ket_table_json(table));
    } else if (options.format == "csv") {
        emit(options, ket_table_csv(table));
    } else {
        emit(options, ket_table_ascii(table));
    }
    return 0;
}

// ---- measure ----------------------------------------------------------------

int run_measure(const CommonOptions& options, const std::vector<std::string>& attribute_names,
                const std::string& state_name) {
    const auto spec = load_experiment_file(options.spec_path);
    const std::uint64_t seed = effective_seed(options, spec);
    const SubsetVector initial = spec.state(state_name);
    std::vector<Attribute> attrs;
    for (const auto& name : attribute_names) attrs.push_back(spec.attribute(name));

    RandomSource rng(seed);
    const auto chain = measure_sequence(attrs, initial, rng);

    if (options.format == "json") {
        Json doc;
        doc["state"] = initial.to_string();
        doc["seed"] = seed;
        Json steps = Json::array();
        SubsetVector state = initial;
        for (std::size_t i = 0; i < chain.size(); ++i) {
            Json step;
            step["attribute"] = attribute_names[i];
            step["distribution"] = distribution_json(attrs[i], state);
            Json outcome;
            outcome["eigenvalue"] = chain[i].eigenvalue.str();
            outcome["prob"] = chain[i].probability.str();
            outcome["decimal"] = decimal6(chain[i].probability);
            outcome["post_state"] = chain[i].post_state.to_string();
            step["outcome"] = std::move(outcome);
            steps.push_back(std::move(step));
            state = chain[i].post_state;
        }
        doc["steps"] = std::move(steps);
        Json eigenket = Json::array();
        for (const auto& outcome : chain) eigenket.push_back(outcome.eigenvalue.str());
        doc["eigenket"] = std::move(eigenket);
        doc["final_state"] =
            (chain.empty() ? initial : chain.back().post_state).to_string();
        emit_json(options, doc);
    } else if (options.format == "csv") {
        std::string out = "step,attribute,eigenvalue,prob,decimal,post_state\n";
        for (std::size_t i = 0; i < chain.size(); ++i) {
            out += std::to_string(i + 1);
            out += "," + attribute_names[i];
            out += "," + chain[i].eigenvalue.str();
            out += "," + chain[i].probability.str();
            out += "," + decimal6(chain[i].probability);
            out += "," + csv_quote(chain[i].post_state.to_string());
            out += "\n";
        }
        emit(options, out);
    } else {
        std::string out = "initial state " + initial.to_string() + "\n";
        SubsetVector state = initial;
        for (std::size_t i = 0; i < chain.size(); ++i) {
            out += "measure " + attribute_names[i] + " on " + state.to_string() + ":\n";
            std::vector<std::pair<std::string, Rational>> bars;
            for (const auto& [r, p] : born_distribution(attrs[i], state)) {
                bars.emplace_back(r.str(), p);
            }
            out += bar_chart(bars);
            out += "-> eigenvalue " + chain[i].eigenvalue.str() + ", state " +
                   chain[i].post_state.to_string() + "\n";
            state = chain[i].post_state;
        }
        if (!chain.empty()) {
            std::string tuple;
            for (const auto& outcome : chain) {
                if (!tuple.empty()) tuple += ",";
                tuple += outcome.eigenvalue.str();
            }
            out += "eigenket (" + tuple + ") -> " + state.to_string() + "\n";
        }
        emit(options, out);
    }
    return 0;
}

// ---- two-slit -----------------------------------------------------------------

int run_two_slit(const CommonOptions& options, const std::string& state_name,
                 bool measured, std::uint64_t trials, std::uint64_t periods) {
    const auto spec = load_experiment_file(options.spec_path);
    const std::uint64_t seed = effective_seed(options, spec);
    const TwoSlitConfig config{Dynamics::make(spec.dynamics()), spec.state(state_name),
                               measured, periods};
    RandomSource rng(seed);
    const auto result = two_slit(config, rng, trials);
    if (options.format == "json") {
        emit_json(options, two_slit_json(result, seed));
    } else if (options.format == "csv") {
        emit(options, two_slit_csv(result));
    } else {
        emit(options, two_slit_ascii(result));
    }
    return 0;
}

// ---- density -------------------------------------------------------------------

std::string density_ascii(const DensityMatrix& rho) {
    std::size_t width = 0;
    for (int i = 0; i < rho.dimension(); ++i) {
        width = std::max(width, rho.universe()->label(i).size());
        for (int j = 0; j < rho.dimension(); ++j) {
            width = std::max(width, rho.at(i, j).str().size());
        }
    }
    std::string out = pad("", width);
    for (int j = 0; j < rho.dimension(); ++j) {
        out += "  " + pad(rho.universe()->label(j), width);
    }
    out += "\n";
    for (int i = 0; i < rho.dimension(); ++i) {
        out += pad(rho.universe()->label(i), width);
        for (int j = 0; j < rho.dimension(); ++j) {
            out += "  " + pad(rho.at(i, j).str(), width);
        }
        out += "\n";
    }
    return out;
}

int run_density(const CommonOptions& options, const std::string& partition_literal,
                const std::string& block_literal, const std::string& state_name,
                const std::string& attribute_name) {
    const auto spec = load_experiment_file(options.spec_path);
    std::optional<DensityMatrix> rho;
    if (!partition_literal.empty()) {
        rho = rho_partition(parse_partition(spec.universe, partition_literal));
    } else if (!block_literal.empty()) {
        rho = rho_block(parse_subset(spec.universe, block_literal));
    } else {
        rho = measure_density(spec.attribute(attribute_name), spec.state(state_name));
    }
    if (options.format == "json") {
        emit_json(options, density_json(*rho));
    } else if (options.format == "csv") {
        emit(options, density_csv(*rho));
    } else {
        emit(options, density_ascii(*rho));
    }
    return 0;
}

// ---- partitions and orbits --------------------------------------------------------

int run_partitions(const CommonOptions& options) {
    const auto spec = load_experiment_file(options.spec_path);
    const auto all = enumerate_partitions(spec.universe);
    if (options.format == "json") {
        emit_json(options, partitions_json(all));
    } else if (options.format == "csv") {
        emit(options, partitions_csv(all));
    } else {
        std::string out;
        for (const auto& pi : all) {
            const Rational h = logical_entropy(pi);
            out += pi.to_string() + "  h=" + h.str() + " (" + decimal6(h) +
                   ")  dits=" + std::to_string(dit_set(pi).count()) + "\n";
        }
        emit(options, out);
    }
    return 0;
}

int run_orbits(const CommonOptions& options) {
    const auto spec = load_experiment_file(options.spec_path);
    const auto cycles = Dynamics::make(spec.dynamics()).matrix().orbits();
    if (options.format == "json") {
        emit_json(options, orbits_json(cycles));
    } else if (options.format == "csv") {
        emit(options, orbits_csv(cycles));
    } else {
        std::string out;
        for (const auto& cycle : cycles) {
            out += std::to_string(cycle.size()) + ": ";
            for (std::size_t i = 0; i < cycle.size(); ++i) {
                if (i) out += " -> ";
                out += cycle[i].to_string();
            }
            out += "\n";
        }
        emit(options, out);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite probability calculus over GF(2) subset spaces"};
    app.require_subcommand(1);

    CommonOptions ket_table_options;
    auto* ket_table_cmd =
        app.add_subcommand("ket-table", "list every ket in every declared basis");
    add_common(ket_table_cmd, ket_table_options, false);

    CommonOptions measure_options;
    std::vector<std::string> measure_attributes;
    std::string measure_state;
    auto* measure_cmd =
        app.add_subcommand("measure", "projective measurement of a state");
    add_common(measure_cmd, measure_options);
    measure_cmd->add_option("--attribute", measure_attributes,
                            "attribute to measure (repeat for a sequence)")
        ->required();
    measure_cmd->add_option("--state", measure_state, "state name or set literal")
        ->required();

    CommonOptions two_slit_options;
    std::string two_slit_state;
    bool measured = false;
    bool unmeasured = false;
    std::uint64_t trials = 0;
    std::uint64_t periods = 1;
    auto* two_slit_cmd =
        app.add_subcommand("two-slit", "interference experiment under the dynamics");
    add_common(two_slit_cmd, two_slit_options);
    two_slit_cmd->add_option("--state", two_slit_state, "state prepared at the slits")
        ->required();
    auto* measured_flag =
        two_slit_cmd->add_flag("--measured", measured, "measure position at the slits");
    two_slit_cmd->add_flag("--unmeasured", unmeasured, "let the superposition evolve")
        ->excludes(measured_flag);
    two_slit_cmd->add_option("--trials", trials, "Monte-Carlo replay count (0 = exact only)")
        ->capture_default_str();
    two_slit_cmd->add_option("--periods", periods, "time periods from slits to wall")
        ->capture_default_str();

    CommonOptions density_options;
    std::string density_partition;
    std::string density_block;
    std::string density_state;
    std::string density_attribute;
    auto* density_cmd =
        app.add_subcommand("density", "density matrix of a block, partition, or measurement");
    add_common(density_cmd, density_options, false);
    auto* partition_option = density_cmd->add_option(
        "--partition", density_partition, "partition literal like {{a},{b,c}}");
    auto* block_option =
        density_cmd->add_option("--block", density_block, "pure-state block literal");
    auto* state_option =
        density_cmd->add_option("--state", density_state, "state to measure");
    auto* attribute_option =
        density_cmd->add_option("--attribute", density_attribute, "attribute to measure with");
    partition_option->excludes(block_option)->excludes(state_option)->excludes(attribute_option);
    block_option->excludes(state_option)->excludes(attribute_option);
    state_option->needs(attribute_option);
    attribute_option->needs(state_option);

    CommonOptions partitions_options;
    auto* partitions_cmd =
        app.add_subcommand("partitions", "every partition with entropy and dit count");
    add_common(partitions_cmd, partitions_options, false);

    CommonOptions orbits_options;
    auto* orbits_cmd =
        app.add_subcommand("orbits", "cycle structure of the dynamics");
    add_common(orbits_cmd, orbits_options, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }

    try {
        if (app.got_subcommand(ket_table_cmd)) return run_ket_table(ket_table_options);
        if (app.got_subcommand(measure_cmd)) {
            return run_measure(measure_options, measure_attributes, measure_state);
        }
        if (app.got_subcommand(two_slit_cmd)) {
            if (measured == unmeasured) {
                std::cerr << "two-slit needs exactly one of --measured / --unmeasured\n";
                return 1;
            }
            return run_two_slit(two_slit_options, two_slit_state, measured, trials,
                                periods);
        }
        if (app.got_subcommand(density_cmd)) {
            if (density_partition.empty() && density_block.empty() &&
                (density_state.empty() || density_attribute.empty())) {
                std::cerr << "density needs --partition, --block, or --state with "
                             "--attribute\n";
                return 1;
            }
            return run_density(density_options, density_partition, density_block,
                               density_state, density_attribute);
        }
        if (app.got_subcommand(partitions_cmd)) return run_partitions(partitions_options);
        if (app.got_subcommand(orbits_cmd)) return run_orbits(orbits_options);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
