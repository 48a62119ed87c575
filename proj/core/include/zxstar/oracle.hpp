#pragma once

#include "zxstar/diagram.hpp"

#include <vector>

namespace zxstar {

/// Exact dense matrix of a diagram: rows indexed by output wires, columns by
/// input wires, first wire in each list = most significant bit.
struct DenseTensor {
    std::size_t n_out = 0, n_in = 0;
    std::vector<ExactScalar> data; // size 2^(n_out+n_in), row-major

    std::size_t rows() const { return std::size_t{1} << n_out; }
    std::size_t cols() const { return std::size_t{1} << n_in; }
    ExactScalar& at(std::size_t r, std::size_t c) { return data[(r << n_in) | c]; }
    const ExactScalar& at(std::size_t r, std::size_t c) const {
        return data[(r << n_in) | c];
    }
    bool operator==(const DenseTensor&) const = default;
};

struct OracleLimits {
    std::size_t max_wires = 22;      // open boundary wires
    std::size_t max_interm_legs = 26; // intermediate tensor legs
};

/// Exact brute-force contraction. Order of elimination is greedy smallest
/// intermediate; the result is order independent.
DenseTensor contract(const Diagram& d, const OracleLimits& limits = {});

/// Contraction result kept factored by connected component; wire slots are
/// positions in (outputs ++ inputs). Lets callers accumulate large register
/// sums without materializing every term densely.
struct FactoredTensor {
    struct Component {
        std::vector<std::size_t> slots; // slot of each leg, MSB first
        std::vector<ExactScalar> data;
    };
    std::size_t n_out = 0, n_in = 0;
    ExactScalar scalar;
    std::vector<Component> components;

    DenseTensor to_dense() const;
    /// acc[idx] += coeff * this[idx], visiting only the support.
    void add_into(const ExactScalar& coeff, std::vector<ExactScalar>& acc) const;
};

FactoredTensor contract_factored(const Diagram& d, const OracleLimits& limits = {});

/// Column vector of a stateless-input diagram (inputs must be empty).
std::vector<ExactScalar> statevector(const Diagram& d, const OracleLimits& limits = {});

/// True iff contract(lhs) == sum coeff * contract(branch), exactly.
bool verify_rule(const Diagram& lhs,
                 const std::vector<std::pair<ExactScalar, Diagram>>& branches,
                 const OracleLimits& limits = {});

} // namespace zxstar
