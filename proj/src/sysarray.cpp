#include "coploc/sysarray.hpp"

#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "coploc/rng.hpp"

namespace coploc {

namespace {

int ceil_log2(std::size_t n) {
    int bits = 0;
    std::size_t v = 1;
    while (v < n) {
        v <<= 1;
        ++bits;
    }
    return bits;
}

}  // namespace

i64 ArrayConfig::magnitude_bound() const {
    return (i64(1) << (bit_width - 1)) - 1;
}

i64 ArrayConfig::min_weight() const { return -(i64(1) << (bit_width - 1)); }

ArrayConfig ArrayConfig::make(std::size_t rows, std::size_t cols, int bit_width) {
    ArrayConfig c;
    c.rows = rows;
    c.cols = cols;
    c.bit_width = bit_width;
    c.accumulator_bits = 2 * bit_width + ceil_log2(rows ? rows : 1) + 1;
    c.validate();
    return c;
}

void ArrayConfig::validate() const {
    if (rows == 0 || cols == 0)
        throw std::invalid_argument("ArrayConfig: rows and cols must be positive");
    if (bit_width < 2 || bit_width > 24)
        throw std::invalid_argument("ArrayConfig: bit_width must be in [2, 24]");
    if (accumulator_bits < 2 * bit_width + ceil_log2(rows))
        throw std::invalid_argument("ArrayConfig: accumulator narrower than 2b + log2(L)");
    if (accumulator_bits > 63)
        throw std::invalid_argument("ArrayConfig: accumulator above 63 bits unsupported");
    const i64 m = magnitude_bound();
    // The accumulator must hold the largest fault-free sum; checked in
    // 128-bit so the check itself cannot overflow.
    __int128 worst = static_cast<__int128>(rows) * m * m;
    if (worst >= (static_cast<__int128>(1) << (accumulator_bits - 1)))
        throw std::invalid_argument("ArrayConfig: L * M^2 overflows the accumulator");
}

WeightMatrix::WeightMatrix(std::size_t rows, std::size_t cols, i64 fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

WeightMatrix load_weights_csv(const std::string& path, const ArrayConfig& config) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open weight file: " + path);
    WeightMatrix w(config.rows, config.cols);
    std::string line;
    std::size_t i = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        if (i >= config.rows)
            throw std::runtime_error(path + ": more rows than the configured " +
                                     std::to_string(config.rows));
        std::vector<i64> row = parse_csv_ints(line);
        if (row.size() != config.cols)
            throw std::runtime_error(path + ": row " + std::to_string(i) + " has " +
                                     std::to_string(row.size()) + " columns, expected " +
                                     std::to_string(config.cols));
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (row[j] < config.min_weight() || row[j] > config.magnitude_bound())
                throw std::runtime_error(path + ": weight " + std::to_string(row[j]) +
                                         " outside the signed " +
                                         std::to_string(config.bit_width) + "-bit range");
            w.set(i, j, row[j]);
        }
        ++i;
    }
    if (i != config.rows)
        throw std::runtime_error(path + ": " + std::to_string(i) + " rows, expected " +
                                 std::to_string(config.rows));
    return w;
}

void save_weights_csv(const std::string& path, const WeightMatrix& w) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write weight file: " + path);
    for (std::size_t i = 0; i < w.rows(); ++i) {
        for (std::size_t j = 0; j < w.cols(); ++j) {
            if (j) out << ',';
            out << w.at(i, j);
        }
        out << '\n';
    }
}

WeightMatrix random_weights(const ArrayConfig& config, u64 seed) {
    Rng rng(seed);
    WeightMatrix w(config.rows, config.cols);
    const u64 span = u64(1) << config.bit_width;
    for (std::size_t i = 0; i < config.rows; ++i)
        for (std::size_t j = 0; j < config.cols; ++j)
            w.set(i, j, static_cast<i64>(rng.uniform_below(span)) + config.min_weight());
    return w;
}

EffectiveWeight effective_weight(i64 w, const FaultModel& model, int bit_width) {
    if (const auto* add = std::get_if<AdditiveBounded>(&model)) {
        const i64 m = (i64(1) << (bit_width - 1)) - 1;
        if (add->error == 0 || add->error < -m || add->error > m)
            throw std::invalid_argument("additive fault error must satisfy 1 <= |e| <= M");
        const i64 value = w + add->error;
        const bool oor = value < -(i64(1) << (bit_width - 1)) || value > m;
        return EffectiveWeight{value, add->error, oor};
    }
    const auto& stuck = std::get<StuckBit>(model);
    if (stuck.bit < 0 || stuck.bit >= bit_width)
        throw std::invalid_argument("stuck bit index outside [0, b-1]");
    if (stuck.value != 0 && stuck.value != 1)
        throw std::invalid_argument("stuck bit value must be 0 or 1");
    const u64 mask = (u64(1) << bit_width) - 1;
    u64 word = static_cast<u64>(w) & mask;
    if (stuck.value)
        word |= u64(1) << stuck.bit;
    else
        word &= ~(u64(1) << stuck.bit);
    // Two's-complement reinterpretation at width b.
    i64 value = (word & (u64(1) << (bit_width - 1))) ? static_cast<i64>(word | ~mask)
                                                     : static_cast<i64>(word);
    return EffectiveWeight{value, value - w, false};
}

RunOutput run_mv(const ArrayConfig& config, const WeightMatrix& weights,
                 const std::optional<FaultSpec>& fault, const SketchVector& x) {
    config.validate();
    if (weights.rows() != config.rows || weights.cols() != config.cols)
        throw std::invalid_argument("run_mv: weight matrix does not match the config");
    if (x.entries.size() != config.rows)
        throw std::invalid_argument("run_mv: input vector does not match the row count");
    if (fault && (fault->row >= config.rows || fault->col >= config.cols))
        throw std::invalid_argument("run_mv: fault indices out of range");

    RunOutput out;
    out.outputs.assign(config.cols, 0);
    out.cycle_count = cycle_model(config, 1);

    std::optional<EffectiveWeight> eff;
    if (fault) {
        eff = effective_weight(weights.at(fault->row, fault->col), fault->model,
                               config.bit_width);
        out.fault_masked = eff->error == 0;
        out.weight_out_of_range = eff->out_of_range;
    }
    for (std::size_t j = 0; j < config.cols; ++j) {
        i64 acc = 0;
        for (std::size_t i = 0; i < config.rows; ++i) {
            i64 w = weights.at(i, j);
            if (fault && i == fault->row && j == fault->col) w = eff->value;
            acc += w * x.entries[i];
        }
        out.outputs[j] = acc;
    }
    return out;
}

u64 cycle_model(const ArrayConfig& config, u64 n_input_vectors) {
    if (n_input_vectors < 1)
        throw std::invalid_argument("cycle_model: need at least one input vector");
    const u64 weight_load = config.rows;
    const u64 pipeline_fill = config.rows + config.cols - 1;
    return weight_load + pipeline_fill + (n_input_vectors - 1);
}

}  // namespace coploc
