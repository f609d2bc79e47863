#include "coploc/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <CLI11.hpp>
#include <json.hpp>

#include "coploc/analysis.hpp"
#include "coploc/campaign.hpp"
#include "coploc/localize.hpp"
#include "coploc/report.hpp"

namespace coploc::cli {

namespace {

using nlohmann::json;

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        if (text.empty() || text.back() != '\n') out << '\n';
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot write " + out_path);
    f << text;
    if (text.empty() || text.back() != '\n') f << '\n';
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::vector<i64>> read_csv_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::vector<i64>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        rows.push_back(parse_csv_ints(line));
    }
    if (rows.empty()) throw std::runtime_error(path + ": no data lines");
    return rows;
}

i64 magnitude_for_bits(int bits) { return (i64(1) << (bits - 1)) - 1; }

// The round structure a scheme produces: one vector, or a checked pair.
struct Rounds {
    Scheme scheme = Scheme::one_round;
    SketchVector single;
    std::optional<SketchPair> pair;

    std::size_t count() const { return pair ? 2 : 1; }
    const SketchVector& at(std::size_t r) const {
        if (!pair) return single;
        return r == 0 ? pair->first : pair->second;
    }
};

Rounds build_rounds(Scheme scheme, std::size_t rows, i64 M, PoolKind pool_kind,
                    std::size_t shift, const std::string& vector_file) {
    Rounds r;
    r.scheme = scheme;
    if (!vector_file.empty()) {
        const auto lines = read_csv_rows(vector_file);
        if (scheme == Scheme::one_round) {
            if (lines.size() != 1)
                throw std::runtime_error(vector_file + ": expected one round, got " +
                                         std::to_string(lines.size()));
            r.single = sketch_from_entries(lines[0], M);
        } else {
            if (lines.size() != 2)
                throw std::runtime_error(vector_file + ": expected two rounds, got " +
                                         std::to_string(lines.size()));
            r.pair = pair_from_entries(lines[0], lines[1], M);
        }
        if (r.at(0).entries.size() != rows)
            throw std::runtime_error(vector_file + ": " +
                                     std::to_string(r.at(0).entries.size()) +
                                     " entries for " + std::to_string(rows) + " rows");
        return r;
    }
    switch (scheme) {
        case Scheme::one_round:
            r.single = one_round_vector(rows, make_pool(pool_kind, M));
            break;
        case Scheme::two_round_derangement: {
            SketchVector base = one_round_vector(rows, make_pool(pool_kind, M));
            r.pair = two_round_derangement(base, shift);
            break;
        }
        case Scheme::two_round_consecutive:
            r.pair = two_round_consecutive(rows, M);
            break;
    }
    return r;
}

std::optional<FaultSpec> fault_from_flags(bool has_row, std::size_t row, bool has_col,
                                          std::size_t col, bool has_error, i64 error,
                                          bool has_bit, int bit, bool has_value, int value) {
    const bool any = has_row || has_col || has_error || has_bit || has_value;
    if (!any) return std::nullopt;
    if (!has_row || !has_col)
        throw std::runtime_error("a fault needs both --fault-row and --fault-col");
    if (has_error == (has_bit || has_value))
        throw std::runtime_error(
            "give either --error or --stuck-bit/--stuck-value, not both");
    if (!has_error && (!has_bit || !has_value))
        throw std::runtime_error("stuck faults need both --stuck-bit and --stuck-value");
    FaultSpec spec;
    spec.row = row;
    spec.col = col;
    if (has_error)
        spec.model = AdditiveBounded{error};
    else
        spec.model = StuckBit{bit, value};
    return spec;
}

json vector_json(const Rounds& rounds, int bits, std::optional<PoolKind> pool) {
    json j;
    j["bit_width"] = bits;
    j["magnitude_bound"] = magnitude_for_bits(bits);
    j["scheme"] = to_string(rounds.scheme);
    if (pool) j["pool"] = to_string(*pool);
    j["degraded"] = rounds.at(0).degraded;
    json rs = json::array();
    for (std::size_t r = 0; r < rounds.count(); ++r) rs.push_back(rounds.at(r).entries);
    j["rounds"] = std::move(rs);
    return j;
}

void warn_if_degraded(const Rounds& rounds, const CoprimePool& pool, std::ostream& err) {
    if (!rounds.at(0).degraded) return;
    err << "warning: " << rounds.at(0).entries.size() << " rows exceed the "
        << pool.entries.size() << "-entry " << to_string(pool.kind)
        << " pool; entries repeat round-robin and repeated rows lose one-round"
           " localizability\n";
}

int cmd_primes(int bits, PoolKind kind, const std::string& format,
               const std::string& out_path, std::ostream& out) {
    const CoprimePool pool = make_pool(kind, magnitude_for_bits(bits));
    if (format == "json") {
        json j;
        j["bit_width"] = bits;
        j["magnitude_bound"] = pool.magnitude_bound;
        j["pool"] = to_string(pool.kind);
        j["count"] = pool.entries.size();
        j["entries"] = pool.entries;
        emit(j.dump(2), out_path, out);
    } else {
        SketchVector v;
        v.entries = pool.entries;
        emit(to_csv(v), out_path, out);
    }
    return exit_ok;
}

int cmd_vector(int bits, std::size_t rows, PoolKind kind, Scheme scheme, std::size_t shift,
               const std::string& format, const std::string& out_path, std::ostream& out,
               std::ostream& err) {
    const i64 M = magnitude_for_bits(bits);
    const Rounds rounds = build_rounds(scheme, rows, M, kind, shift, "");
    warn_if_degraded(rounds, make_pool(kind, M), err);
    const bool pool_used = scheme != Scheme::two_round_consecutive;
    if (format == "json") {
        emit(vector_json(rounds, bits, pool_used ? std::optional(kind) : std::nullopt)
                 .dump(2),
             out_path, out);
    } else {
        std::string text;
        for (std::size_t r = 0; r < rounds.count(); ++r) {
            text += to_csv(rounds.at(r));
            text += '\n';
        }
        emit(text, out_path, out);
    }
    return exit_ok;
}

struct RunFlags {
    int bits = 8;
    std::size_t rows = 0;
    std::size_t cols = 0;  // 0 means square (rows)
    std::string weights_path;
    u64 seed = 1;
    PoolKind pool = PoolKind::prime_powers;
    Scheme scheme = Scheme::one_round;
    std::size_t shift = 1;
    std::string vector_file;
};

struct SimResult {
    ArrayConfig config;
    Rounds rounds;
    WeightMatrix weights;
    std::vector<std::vector<i64>> observed;  // per round
    std::vector<std::vector<i64>> expected;
    bool fault_masked = false;
    bool weight_out_of_range = false;
};

SimResult run_rounds(const RunFlags& flags, const std::optional<FaultSpec>& fault) {
    SimResult sim;
    const std::size_t cols = flags.cols ? flags.cols : flags.rows;
    sim.config = ArrayConfig::make(flags.rows, cols, flags.bits);
    sim.rounds = build_rounds(flags.scheme, flags.rows, sim.config.magnitude_bound(),
                              flags.pool, flags.shift, flags.vector_file);
    sim.weights = flags.weights_path.empty()
                      ? random_weights(sim.config, flags.seed)
                      : load_weights_csv(flags.weights_path, sim.config);
    if (fault && (fault->row >= flags.rows || fault->col >= cols))
        throw std::runtime_error("fault location outside the array");
    for (std::size_t r = 0; r < sim.rounds.count(); ++r) {
        const SketchVector& x = sim.rounds.at(r);
        const RunOutput run = run_mv(sim.config, sim.weights, fault, x);
        sim.observed.push_back(run.outputs);
        sim.expected.push_back(expected_outputs(sim.weights, x));
        sim.fault_masked = run.fault_masked;
        sim.weight_out_of_range = run.weight_out_of_range;
    }
    return sim;
}

int cmd_simulate(const RunFlags& flags, const std::optional<FaultSpec>& fault,
                 const std::string& format, const std::string& out_path, std::ostream& out,
                 std::ostream& err) {
    const SimResult sim = run_rounds(flags, fault);
    warn_if_degraded(sim.rounds, make_pool(flags.pool, sim.config.magnitude_bound()), err);
    if (format == "json") {
        json j;
        j["bit_width"] = flags.bits;
        j["rows"] = sim.config.rows;
        j["cols"] = sim.config.cols;
        j["scheme"] = to_string(flags.scheme);
        j["observed"] = sim.observed;
        j["expected"] = sim.expected;
        json deltas = json::array();
        for (std::size_t r = 0; r < sim.observed.size(); ++r) {
            std::vector<i64> d(sim.observed[r].size());
            for (std::size_t c = 0; c < d.size(); ++c)
                d[c] = sim.observed[r][c] - sim.expected[r][c];
            deltas.push_back(d);
        }
        j["deltas"] = std::move(deltas);
        j["cycles"] = cycle_model(sim.config, sim.rounds.count());
        j["fault_masked"] = sim.fault_masked;
        j["weight_out_of_range"] = sim.weight_out_of_range;
        emit(j.dump(2), out_path, out);
    } else {
        std::string text;
        for (const auto& row : sim.observed) {
            SketchVector v;
            v.entries = row;
            text += to_csv(v);
            text += '\n';
        }
        emit(text, out_path, out);
    }
    return exit_ok;
}

int cmd_localize(const RunFlags& flags, const std::optional<FaultSpec>& fault,
                 const std::string& observed_path, std::optional<i64> max_error,
                 bool no_magnitude_check, const std::string& format,
                 const std::string& out_path, std::ostream& out, std::ostream& err) {
    if (format == "csv") throw std::runtime_error("localize reports are JSON only");
    const std::size_t cols = flags.cols ? flags.cols : flags.rows;
    ArrayConfig config = ArrayConfig::make(flags.rows, cols, flags.bits);
    const i64 M = config.magnitude_bound();
    Rounds rounds = build_rounds(flags.scheme, flags.rows, M, flags.pool, flags.shift,
                                 flags.vector_file);
    WeightMatrix weights = flags.weights_path.empty()
                               ? random_weights(config, flags.seed)
                               : load_weights_csv(flags.weights_path, config);
    warn_if_degraded(rounds, make_pool(flags.pool, M), err);

    std::vector<std::vector<i64>> observed;
    if (!observed_path.empty()) {
        if (fault) throw std::runtime_error("--observed and fault flags are exclusive");
        observed = read_csv_rows(observed_path);
        if (observed.size() != rounds.count())
            throw std::runtime_error(observed_path + ": expected " +
                                     std::to_string(rounds.count()) + " round(s), got " +
                                     std::to_string(observed.size()));
        for (const auto& row : observed)
            if (row.size() != cols)
                throw std::runtime_error(observed_path + ": output width " +
                                         std::to_string(row.size()) + ", expected " +
                                         std::to_string(cols));
    } else {
        if (fault && (fault->row >= flags.rows || fault->col >= cols))
            throw std::runtime_error("fault location outside the array");
        for (std::size_t r = 0; r < rounds.count(); ++r)
            observed.push_back(run_mv(config, weights, fault, rounds.at(r)).outputs);
    }

    LocalizeReport report;
    report.degraded = rounds.at(0).degraded;
    int code = exit_ok;

    if (flags.scheme == Scheme::one_round) {
        std::optional<i64> filter = max_error ? max_error : std::optional<i64>(M);
        if (no_magnitude_check) filter = std::nullopt;
        RunOutput as_run;
        as_run.outputs = observed[0];
        report.columns = decode_pass(weights, rounds.single, as_run, filter);
        for (const ColumnDecode& c : report.columns)
            report.faulty_columns.push_back(c.column);
        bool any_empty = false, any_multi = false;
        for (const ColumnDecode& c : report.columns) {
            if (c.set.candidates.empty()) any_empty = true;
            if (c.set.candidates.size() > 1) any_multi = true;
        }
        if (report.columns.empty()) {
            report.status = "no_fault";
        } else if (any_empty) {
            report.status = "model_violation";
            code = exit_model_violation;
        } else if (any_multi) {
            report.status = "incomplete";
            code = exit_incomplete;
        } else {
            report.status = "localized";
        }
    } else {
        if (no_magnitude_check)
            throw std::runtime_error("--no-magnitude-check applies to one-round decoding");
        const SketchPair& pair = *rounds.pair;
        const std::vector<i64> e1 = expected_outputs(weights, pair.first);
        const std::vector<i64> e2 = expected_outputs(weights, pair.second);
        for (std::size_t c = 0; c < cols; ++c)
            if (observed[0][c] != e1[c] || observed[1][c] != e2[c])
                report.faulty_columns.push_back(c);
        if (report.faulty_columns.empty()) {
            report.status = "no_fault";
        } else {
            bool all_ok = true;
            for (std::size_t c : report.faulty_columns) {
                TwoRoundResult res = localize_two_round(
                    observed[0][c] - e1[c], observed[1][c] - e2[c], pair,
                    max_error.value_or(M));
                if (!report.two_round) report.two_round = res;
                all_ok = all_ok && res.ok();
            }
            report.status = all_ok ? "localized" : "model_violation";
            code = all_ok ? exit_ok : exit_model_violation;
        }
    }
    emit(localize_report_json(report), out_path, out);
    return code;
}

int cmd_table(bool with_exact, const std::vector<std::size_t>& dims, int bits, PoolKind kind,
              u64 max_subsets, const std::string& format, const std::string& out_path,
              std::ostream& out, std::ostream& err) {
    const i64 M = magnitude_for_bits(bits);
    const CoprimePool pool = make_pool(kind, M);
    std::vector<PfailReport> rows;
    for (std::size_t L : dims) {
        PfailReport r;
        r.dim = L;
        r.pool_kind = kind;
        const SketchVector v = one_round_vector(L, pool);
        if (!v.degraded) {
            r.bound = pfail_union_bound(v.entries, M);
            if (with_exact) r.exact = pfail_exact(v.entries, M, ExactOptions{max_subsets});
        } else {
            r.degraded = true;
            std::unordered_map<i64, int> count;
            for (i64 x : v.entries) ++count[x];
            i64 repeated = 0;
            for (i64 x : v.entries)
                if (count[x] > 1) ++repeated;
            r.repeated_row_fraction = Rational(repeated, static_cast<i64>(L));
            err << "note: L=" << L << " exceeds the " << pool.entries.size()
                << "-entry pool; no analytical rate applies, and the " << repeated << "/" << L
                << " rows with repeated entries lose one-round localizability\n";
        }
        rows.push_back(std::move(r));
    }
    emit(format == "csv" ? pfail_table_csv(rows) : pfail_table_json(rows, bits), out_path,
         out);
    return exit_ok;
}

int cmd_campaign(const std::string& config_path, bool seed_given, u64 seed,
                 const std::string& format, const std::string& out_path, std::ostream& out) {
    CampaignConfig config = campaign_config_from_json(read_file(config_path));
    if (seed_given) config.rng_seed = seed;
    const CampaignResult result = run_campaign(config);
    emit(format == "csv" ? campaign_result_csv(result) : campaign_result_json(result),
         out_path, out);
    u64 violations = 0;
    for (const DimResult& d : result.dims) violations += d.model_violation_count;
    return violations ? exit_model_violation : exit_ok;
}

int cmd_cycles(std::size_t rows, std::size_t cols, int bits, u64 vectors,
               const std::string& format, const std::string& out_path, std::ostream& out) {
    const ArrayConfig config = ArrayConfig::make(rows, cols ? cols : rows, bits);
    const u64 cycles = cycle_model(config, vectors);
    if (format == "json") {
        json j;
        j["rows"] = config.rows;
        j["cols"] = config.cols;
        j["vectors"] = vectors;
        j["cycles"] = cycles;
        emit(j.dump(2), out_path, out);
    } else {
        emit("rows,cols,vectors,cycles\n" + std::to_string(config.rows) + ',' +
                 std::to_string(config.cols) + ',' + std::to_string(vectors) + ',' +
                 std::to_string(cycles) + '\n',
             out_path, out);
    }
    return exit_ok;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fault localization laboratory for weight-stationary systolic arrays"};
    app.name("coploc");
    app.require_subcommand(1);

    std::string format = "csv";
    std::string out_path;
    int bits = 8;
    std::string pool_name = "prime_powers";
    std::string scheme_name = "one_round";

    auto add_common = [&](CLI::App* sub, bool with_pool) {
        sub->add_option("--format", format, "Output format (json or csv)")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", out_path, "Write output to a file instead of stdout");
        sub->add_option("--bits", bits, "Operand bit width b (magnitude bound 2^(b-1)-1)")
            ->check(CLI::Range(2, 24));
        if (with_pool)
            sub->add_option("--pool", pool_name, "Coprime pool kind")
                ->check(CLI::IsMember({"largest_primes", "odd_primes", "prime_powers"}));
    };

    CLI::App* primes = app.add_subcommand("primes", "Print the coprime pool for a bit width");
    add_common(primes, true);

    std::size_t rows = 0;
    std::size_t shift = 1;
    CLI::App* vector_cmd =
        app.add_subcommand("vector", "Generate per-round test vectors for an array height");
    add_common(vector_cmd, true);
    vector_cmd->add_option("--rows", rows, "Array height L")->required();
    vector_cmd->add_option("--scheme", scheme_name, "Vector scheme")
        ->check(CLI::IsMember({"one_round", "two_round_derangement", "two_round_consecutive"}));
    vector_cmd->add_option("--shift", shift, "Rotation for the derangement scheme");

    RunFlags rf;
    std::size_t cols = 0;
    std::string weights_path, vector_file, observed_path;
    u64 seed = 1;
    i64 fault_error = 0;
    std::size_t fault_row = 0, fault_col = 0;
    int stuck_bit = 0, stuck_value = 0;
    i64 max_error = 0;
    bool no_magnitude_check = false;

    auto add_run_flags = [&](CLI::App* sub) {
        add_common(sub, true);
        sub->add_option("--rows", rows, "Array height L")->required();
        sub->add_option("--cols", cols, "Array width K (defaults to L)");
        sub->add_option("--weights", weights_path, "Weight matrix CSV (L rows, K columns)");
        sub->add_option("--seed", seed, "Seed for generated weights when no file is given");
        sub->add_option("--scheme", scheme_name, "Vector scheme")
            ->check(CLI::IsMember(
                {"one_round", "two_round_derangement", "two_round_consecutive"}));
        sub->add_option("--shift", shift, "Rotation for the derangement scheme");
        sub->add_option("--vector", vector_file,
                        "Read test vectors from a CSV file (one line per round)");
        sub->add_option("--fault-row", fault_row, "Faulty PE row (0-based)");
        sub->add_option("--fault-col", fault_col, "Faulty PE column (0-based)");
        sub->add_option("--error", fault_error, "Additive weight error e, 1 <= |e| <= M");
        sub->add_option("--stuck-bit", stuck_bit, "Stuck bit position (0-based)");
        sub->add_option("--stuck-value", stuck_value, "Stuck bit value (0 or 1)");
    };

    CLI::App* simulate =
        app.add_subcommand("simulate", "Run test passes with an optional injected fault");
    add_run_flags(simulate);

    CLI::App* localize = app.add_subcommand(
        "localize", "Decode per-column deviations into fault candidates");
    add_run_flags(localize);
    localize->add_option("--observed", observed_path,
                         "Observed outputs CSV (one line per round) instead of a fault");
    localize->add_option("--max-error", max_error,
                         "Implied-error magnitude filter (defaults to M)");
    localize->add_flag("--no-magnitude-check", no_magnitude_check,
                       "Keep every divisor row regardless of implied error");

    std::vector<std::size_t> dims;
    u64 max_subsets = ExactOptions{}.max_visited_subsets;
    CLI::App* bound =
        app.add_subcommand("bound", "Analytical one-round failure bound per dimension");
    add_common(bound, true);
    bound->add_option("--rows", dims, "Dimensions L (repeatable)")->required();
    CLI::App* exact = app.add_subcommand(
        "exact", "Exact one-round failure probability (with the bound) per dimension");
    add_common(exact, true);
    exact->add_option("--rows", dims, "Dimensions L (repeatable)")->required();
    exact->add_option("--max-subsets", max_subsets,
                      "Inclusion-exclusion subset budget before giving up");

    std::string config_path;
    CLI::App* campaign =
        app.add_subcommand("campaign", "Run a seeded fault-injection campaign from a config");
    campaign->add_option("--config", config_path, "Campaign config JSON")->required();
    campaign->add_option("--format", format, "Output format (json or csv)")
        ->check(CLI::IsMember({"json", "csv"}));
    campaign->add_option("--out", out_path, "Write output to a file instead of stdout");
    CLI::Option* campaign_seed = campaign->add_option("--seed", seed, "Override rng_seed");

    u64 vectors = 1;
    CLI::App* cycles = app.add_subcommand("cycles", "Streaming-pipeline cycle model");
    add_common(cycles, false);
    cycles->add_option("--rows", rows, "Array height L")->required();
    cycles->add_option("--cols", cols, "Array width K (defaults to L)");
    cycles->add_option("--vectors", vectors, "Number of streamed input vectors");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? exit_ok : exit_usage;
    }

    try {
        if (primes->parsed())
            return cmd_primes(bits, pool_kind_from_string(pool_name), format, out_path, out);
        if (vector_cmd->parsed())
            return cmd_vector(bits, rows, pool_kind_from_string(pool_name),
                              scheme_from_string(scheme_name), shift, format, out_path, out,
                              err);
        if (simulate->parsed() || localize->parsed()) {
            rf.bits = bits;
            rf.rows = rows;
            rf.cols = cols;
            rf.weights_path = weights_path;
            rf.seed = seed;
            rf.pool = pool_kind_from_string(pool_name);
            rf.scheme = scheme_from_string(scheme_name);
            rf.shift = shift;
            rf.vector_file = vector_file;
            CLI::App* sub = simulate->parsed() ? simulate : localize;
            const auto fault = fault_from_flags(
                sub->count("--fault-row") > 0, fault_row, sub->count("--fault-col") > 0,
                fault_col, sub->count("--error") > 0, fault_error,
                sub->count("--stuck-bit") > 0, stuck_bit, sub->count("--stuck-value") > 0,
                stuck_value);
            if (simulate->parsed())
                return cmd_simulate(rf, fault, format, out_path, out, err);
            return cmd_localize(rf, fault, observed_path,
                                localize->count("--max-error") > 0
                                    ? std::optional<i64>(max_error)
                                    : std::nullopt,
                                no_magnitude_check,
                                localize->count("--format") > 0 ? format : "json", out_path,
                                out, err);
        }
        if (bound->parsed())
            return cmd_table(false, dims, bits, pool_kind_from_string(pool_name),
                             max_subsets, format, out_path, out, err);
        if (exact->parsed())
            return cmd_table(true, dims, bits, pool_kind_from_string(pool_name), max_subsets,
                             format, out_path, out, err);
        if (campaign->parsed())
            return cmd_campaign(config_path, campaign_seed->count() > 0, seed,
                                campaign->count("--format") > 0 ? format : "json", out_path,
                                out);
        if (cycles->parsed())
            return cmd_cycles(rows, cols, bits, vectors,
                              cycles->count("--format") > 0 ? format : "json", out_path, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    err << "error: no subcommand\n";
    return exit_usage;
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(std::move(args), std::cout, std::cerr);
}

}  // namespace coploc::cli
