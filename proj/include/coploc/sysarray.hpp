#pragma once

// Functional weight-stationary systolic array simulator with
// weight-register fault injection, plus a streaming-pipeline cycle
// model. The simulation is dataflow-equivalent: column outputs are
// exact inner products; timing lives solely in cycle_model.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "coploc/vectors.hpp"

namespace coploc {

struct ArrayConfig {
    std::size_t rows = 0;      // L
    std::size_t cols = 0;      // K
    int bit_width = 8;         // b, operand width
    int accumulator_bits = 0;  // must cover L * M^2

    i64 magnitude_bound() const;  // M = 2^(b-1) - 1
    i64 min_weight() const;       // -2^(b-1)

    // Default accumulator: 2b + ceil(log2 L) + 1 (one spare bit for the
    // injected-error contribution).
    static ArrayConfig make(std::size_t rows, std::size_t cols, int bit_width);

    // Throws std::invalid_argument when dimensions/widths are degenerate
    // or the accumulator cannot hold L * M^2.
    void validate() const;
};

// Row-major L x K signed weights within the b-bit range.
class WeightMatrix {
public:
    WeightMatrix() = default;
    WeightMatrix(std::size_t rows, std::size_t cols, i64 fill = 0);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    i64 at(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, i64 w) { values_[i * cols_ + j] = w; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<i64> values_;
};

// CSV of signed decimals, L rows x K columns, no header. Values are
// range-checked against the config.
WeightMatrix load_weights_csv(const std::string& path, const ArrayConfig& config);
void save_weights_csv(const std::string& path, const WeightMatrix& w);

// Uniform over the signed b-bit range, deterministic in the seed.
WeightMatrix random_weights(const ArrayConfig& config, u64 seed);

// Additive register perturbation with 1 <= |e| <= M.
struct AdditiveBounded {
    i64 error;
};

// Bit `bit` of the stored word reads back as `value` regardless of what
// was written. Effective error is 0 (masked) or +/- 2^bit.
struct StuckBit {
    int bit;    // 0-based, bit_width-1 is the sign bit
    int value;  // 0 or 1
};

using FaultModel = std::variant<AdditiveBounded, StuckBit>;

struct FaultSpec {
    std::size_t row = 0;  // i*
    std::size_t col = 0;  // j*
    FaultModel model;
};

struct EffectiveWeight {
    i64 value;          // what the register holds
    i64 error;          // value - intended; 0 means masked
    bool out_of_range;  // additive faults may leave the b-bit range
};

EffectiveWeight effective_weight(i64 w, const FaultModel& model, int bit_width);

struct RunOutput {
    std::vector<i64> outputs;  // y[j]
    u64 cycle_count = 0;
    bool fault_masked = false;
    bool weight_out_of_range = false;
};

// Column outputs y[j] = sum_i w_eff[i][j] * x[i], with the fault (if
// any) applied to exactly one register. A masked stuck bit is reported
// via the flag, not an error.
RunOutput run_mv(const ArrayConfig& config, const WeightMatrix& weights,
                 const std::optional<FaultSpec>& fault, const SketchVector& x);

// weight load (L) + pipeline fill (L + K - 1) + one cycle per extra
// input vector. The documented contract is the increment: each
// additional vector costs exactly 1 cycle; absolute totals are a model,
// not measured hardware.
u64 cycle_model(const ArrayConfig& config, u64 n_input_vectors);

}  // namespace coploc
