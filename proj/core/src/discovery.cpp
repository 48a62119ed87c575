#include "zxstar/discovery.hpp"

#include "zxstar/circuits.hpp"
#include "zxstar/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace zxstar {

namespace {

void subspaces_rec(int n, int d, int next_pivot, std::vector<int>& pivots,
                   std::vector<std::vector<std::uint32_t>>& out) {
    if (static_cast<int>(pivots.size()) == d) {
        // enumerate free entries above-right of the pivots
        std::vector<int> free_cols;
        std::vector<std::vector<int>> per_row;
        for (int r = 0; r < d; ++r) {
            std::vector<int> cols;
            for (int c = pivots[r] + 1; c < n; ++c)
                if (std::find(pivots.begin(), pivots.end(), c) == pivots.end())
                    cols.push_back(c);
            per_row.push_back(cols);
        }
        std::vector<std::uint32_t> rows(d);
        std::function<void(int)> fill = [&](int r) {
            if (r == d) {
                out.push_back(rows);
                return;
            }
            std::uint32_t base = std::uint32_t{1} << (n - 1 - pivots[r]);
            int nfree = static_cast<int>(per_row[r].size());
            for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << nfree); ++bits) {
                std::uint32_t row = base;
                for (int i = 0; i < nfree; ++i)
                    if ((bits >> i) & 1)
                        row |= std::uint32_t{1} << (n - 1 - per_row[r][i]);
                rows[r] = row;
                fill(r + 1);
            }
        };
        fill(0);
        return;
    }
    for (int p = next_pivot; p < n; ++p) {
        pivots.push_back(p);
        subspaces_rec(n, d, p + 1, pivots, out);
        pivots.pop_back();
    }
}

std::vector<std::uint32_t> coset_reps(const std::vector<std::uint32_t>& basis, int n) {
    std::vector<bool> is_pivot(n, false);
    for (std::uint32_t row : basis) {
        int msb = 31 - __builtin_clz(row);
        is_pivot[n - 1 - msb] = true;
    }
    std::vector<int> free_bits;
    for (int w = 0; w < n; ++w)
        if (!is_pivot[w])
            free_bits.push_back(w);
    std::vector<std::uint32_t> reps;
    for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << free_bits.size()); ++bits) {
        std::uint32_t t = 0;
        for (std::size_t i = 0; i < free_bits.size(); ++i)
            if ((bits >> i) & 1)
                t |= std::uint32_t{1} << (n - 1 - free_bits[i]);
        reps.push_back(t);
    }
    return reps;
}

std::vector<ExactScalar> recipe_vector(const StabRecipe& r) {
    const int d = static_cast<int>(r.basis.size());
    std::vector<ExactScalar> v(std::size_t{1} << r.n, ExactScalar::zero());
    for (std::uint32_t y = 0; y < (std::uint32_t{1} << d); ++y) {
        std::uint32_t x = r.shift;
        int phase = 0;
        for (int j = 0; j < d; ++j)
            if ((y >> j) & 1) {
                x ^= r.basis[j];
                phase += r.l[j];
            }
        for (const auto& [j, k] : r.quadratic)
            if (((y >> j) & 1) && ((y >> k) & 1))
                phase += 2;
        v[x] = ExactScalar::phase_factor(Phase((phase % 4) * 2));
    }
    return v;
}

} // namespace

StabilizerLibrary enumerate_stabilizers(int n, bool real_only) {
    if (n < 1 || n > 3)
        throw std::invalid_argument("enumerate_stabilizers: n must be 1..3");
    StabilizerLibrary lib;
    lib.n = n;
    lib.real_only = real_only;
    for (int d = 0; d <= n; ++d) {
        std::vector<std::vector<std::uint32_t>> bases;
        std::vector<int> pivots;
        subspaces_rec(n, d, 0, pivots, bases);
        if (d == 0)
            bases.assign(1, {});
        for (const auto& basis : bases) {
            for (std::uint32_t t : coset_reps(basis, n)) {
                std::vector<int> l(d, 0);
                const int lbase = real_only ? 2 : 1;
                const int lcount = real_only ? 2 : 4;
                std::vector<int> digits(d, 0);
                while (true) {
                    StabRecipe r;
                    r.n = n;
                    r.basis = basis;
                    r.shift = t;
                    r.l.resize(d);
                    for (int j = 0; j < d; ++j)
                        r.l[j] = digits[j] * lbase;
                    const int qbits = d * (d - 1) / 2;
                    for (std::uint32_t q = 0; q < (std::uint32_t{1} << qbits); ++q) {
                        StabRecipe rq = r;
                        int bit = 0;
                        for (int j = 0; j < d; ++j)
                            for (int k = j + 1; k < d; ++k, ++bit)
                                if ((q >> bit) & 1)
                                    rq.quadratic.push_back({j, k});
                        lib.states.push_back(recipe_vector(rq));
                        lib.recipes.push_back(std::move(rq));
                    }
                    int j = 0;
                    for (; j < d; ++j) {
                        if (++digits[j] < lcount)
                            break;
                        digits[j] = 0;
                    }
                    if (j == d)
                        break;
                }
            }
        }
    }
    return lib;
}

Diagram state_diagram(const StabRecipe& r) {
    Diagram d;
    const int n = r.n;
    std::vector<bool> is_pivot(n, false);
    std::vector<int> pivot_of_row(r.basis.size());
    for (std::size_t j = 0; j < r.basis.size(); ++j) {
        int msb = 31 - __builtin_clz(r.basis[j]);
        int w = n - 1 - msb;
        pivot_of_row[j] = w;
        is_pivot[w] = true;
    }
    // pivot wires: |0> -H- Z spider with i^{l_j} phase; others: |0> into an
    // X spider (CNOT target chain)
    std::vector<VertexId> wire_node(n);
    for (int w = 0; w < n; ++w) {
        VertexId leaf = d.add_vertex(VertexType::X, Phase::zero());
        d.mul_scalar(ExactScalar::inv_sqrt2());
        if (is_pivot[w]) {
            VertexId s = d.add_vertex(VertexType::Z, Phase(0));
            d.add_edge(leaf, s, EdgeKind::Hadamard);
            wire_node[w] = s;
        } else {
            VertexId x = d.add_vertex(VertexType::X, Phase::zero());
            d.add_edge(leaf, x, EdgeKind::Plain);
            wire_node[w] = x;
        }
    }
    for (std::size_t j = 0; j < r.basis.size(); ++j) {
        d.set_phase(wire_node[pivot_of_row[j]], Phase(2 * (r.l[j] % 4)));
        for (int w = 0; w < n; ++w) {
            if (w == pivot_of_row[j])
                continue;
            if ((r.basis[j] >> (n - 1 - w)) & 1)
                d.add_edge(wire_node[pivot_of_row[j]], wire_node[w], EdgeKind::Plain);
        }
    }
    for (const auto& [j, k] : r.quadratic)
        d.add_edge(wire_node[pivot_of_row[j]], wire_node[pivot_of_row[k]],
                   EdgeKind::Hadamard);
    for (int w = 0; w < n; ++w) {
        VertexId tail = wire_node[w];
        if ((r.shift >> (n - 1 - w)) & 1) {
            VertexId flip = d.add_vertex(VertexType::X, Phase::pi());
            d.add_edge(tail, flip, EdgeKind::Plain);
            tail = flip;
        }
        d.add_output(tail);
    }
    return d;
}

namespace {

using cd = std::complex<double>;

// least squares via normal equations, Gaussian elimination
std::optional<std::vector<cd>> lstsq(const std::vector<std::vector<cd>>& cols,
                                     const std::vector<cd>& target,
                                     double* residual_out) {
    const std::size_t k = cols.size(), dim = target.size();
    std::vector<std::vector<cd>> G(k, std::vector<cd>(k + 1));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            cd s = 0;
            for (std::size_t t = 0; t < dim; ++t)
                s += std::conj(cols[i][t]) * cols[j][t];
            G[i][j] = s;
        }
        cd s = 0;
        for (std::size_t t = 0; t < dim; ++t)
            s += std::conj(cols[i][t]) * target[t];
        G[i][k] = s;
    }
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < k; ++i)
            if (std::abs(G[i][col]) > std::abs(G[piv][col]))
                piv = i;
        if (std::abs(G[piv][col]) < 1e-12)
            return std::nullopt;
        std::swap(G[col], G[piv]);
        cd inv = 1.0 / G[col][col];
        for (auto& x : G[col])
            x *= inv;
        for (std::size_t i = 0; i < k; ++i) {
            if (i == col || G[i][col] == 0.0)
                continue;
            cd f = G[i][col];
            for (std::size_t j = 0; j <= k; ++j)
                G[i][j] -= f * G[col][j];
        }
    }
    std::vector<cd> c(k);
    for (std::size_t i = 0; i < k; ++i)
        c[i] = G[i][k];
    if (residual_out) {
        double r2 = 0;
        for (std::size_t t = 0; t < dim; ++t) {
            cd v = target[t];
            for (std::size_t i = 0; i < k; ++i)
                v -= c[i] * cols[i][t];
            r2 += std::norm(v);
        }
        *residual_out = std::sqrt(r2);
    }
    return c;
}

// snap x ~= (a + b i + (c + d i) sqrt2) / 2^k with k <= 12
std::optional<ExactScalar> snap_scalar(cd x) {
    const double s2 = std::sqrt(2.0);
    for (std::uint32_t k = 0; k <= 12; ++k) {
        double scale = std::ldexp(1.0, static_cast<int>(k));
        double re = x.real() * scale, im = x.imag() * scale;
        auto split = [&](double v, long long& intpart, long long& s2part) -> bool {
            for (long long C = -(1 << 14); C <= (1 << 14); ++C) {
                double rem = v - C * s2;
                long long A = std::llround(rem);
                if (std::abs(rem - A) < 1e-7) {
                    intpart = A;
                    s2part = C;
                    return true;
                }
            }
            return false;
        };
        long long a, c, b, dd;
        if (!split(re, a, c) || !split(im, b, dd))
            continue;
        ExactScalar cand(a, b, c, dd, k);
        if (std::abs(cand.to_complex() - x) < 1e-9)
            return cand;
    }
    return std::nullopt;
}

std::vector<cd> to_cd(const std::vector<ExactScalar>& v) {
    std::vector<cd> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = v[i].to_complex();
    return out;
}

} // namespace

std::optional<std::vector<ExactScalar>>
solve_coefficients(const std::vector<std::vector<ExactScalar>>& states,
                   const std::vector<ExactScalar>& target) {
    if (states.empty() || states.size() > target.size() * 2)
        return std::nullopt;
    std::vector<std::vector<cd>> cols;
    for (const auto& s : states)
        cols.push_back(to_cd(s));
    double residual = 0;
    auto c = lstsq(cols, to_cd(target), &residual);
    if (!c || residual > 1e-10)
        return std::nullopt;
    std::vector<ExactScalar> exact;
    for (cd x : *c) {
        auto e = snap_scalar(x);
        if (!e)
            return std::nullopt;
        exact.push_back(*e);
    }
    // exact verification of the snapped sum
    for (std::size_t t = 0; t < target.size(); ++t) {
        ExactScalar sum;
        for (std::size_t i = 0; i < states.size(); ++i)
            sum += exact[i] * states[i][t];
        if (!(sum == target[t]))
            return std::nullopt;
    }
    return exact;
}

std::optional<AnnealOutcome> anneal(const std::vector<ExactScalar>& target, int k,
                                    const AnnealSchedule& schedule,
                                    const StabilizerLibrary& library) {
    if (schedule.cooling_factor <= 0 || schedule.cooling_factor >= 1)
        throw std::invalid_argument("anneal: cooling_factor must be in (0,1)");
    const std::size_t N = library.states.size();
    if (N < static_cast<std::size_t>(k))
        return std::nullopt;
    std::vector<std::vector<cd>> all(N);
    for (std::size_t i = 0; i < N; ++i)
        all[i] = to_cd(library.states[i]);
    std::vector<cd> tgt = to_cd(target);

    SplitMix64 rng(schedule.seed);
    std::vector<std::size_t> picks;
    while (picks.size() < static_cast<std::size_t>(k)) {
        std::size_t cand = rng.below(N);
        if (std::find(picks.begin(), picks.end(), cand) == picks.end())
            picks.push_back(cand);
    }
    auto energy = [&](const std::vector<std::size_t>& idx) {
        std::vector<std::vector<cd>> cols;
        for (std::size_t i : idx)
            cols.push_back(all[i]);
        double r = 1e9;
        lstsq(cols, tgt, &r);
        return r;
    };
    AnnealOutcome out;
    double e = energy(picks);
    double T = schedule.initial_temperature;
    for (int step = 0; step < schedule.steps; ++step) {
        out.steps_taken = step + 1;
        for (int mv = 0; mv < schedule.moves_per_step; ++mv) {
            if (e < 1e-10) {
                out.indices = picks;
                out.residual = e;
                return out;
            }
            std::size_t pos = rng.below(k);
            std::size_t cand = rng.below(N);
            if (std::find(picks.begin(), picks.end(), cand) != picks.end())
                continue;
            std::size_t old = picks[pos];
            picks[pos] = cand;
            double e2 = energy(picks);
            bool accept = e2 < e || rng.unit() < std::exp(-(e2 - e) / std::max(T, 1e-300));
            if (accept) {
                e = e2;
                ++out.accepted;
            } else {
                picks[pos] = old;
                ++out.rejected;
            }
        }
        T *= schedule.cooling_factor;
    }
    if (e < 1e-10) {
        out.indices = picks;
        out.residual = e;
        return out;
    }
    return std::nullopt;
}

Diagram star_state_pattern(int legs, Phase phase) {
    Diagram d;
    for (int i = 0; i < legs; ++i) {
        VertexId leaf = d.add_vertex(VertexType::Z, phase);
        d.add_output(leaf, EdgeKind::Star);
    }
    return d;
}

std::vector<ExactScalar> star_state_vector(int legs, Phase phase) {
    return statevector(star_state_pattern(legs, phase));
}

std::optional<DecompositionRule>
certify(const std::string& id, int legs, Phase phase,
        const std::vector<std::size_t>& indices, const StabilizerLibrary& library) {
    DecompositionRule rule;
    rule.id = id;
    rule.legs = legs;
    rule.phase_eighths = phase.eighths();
    rule.terms_p = static_cast<int>(indices.size());
    rule.reduction_r = legs;
    rule.lhs = star_state_pattern(legs, phase);

    std::vector<Diagram> dias;
    std::vector<std::vector<ExactScalar>> drawn;
    for (std::size_t i : indices) {
        Diagram dia = state_diagram(library.recipes[i]);
        drawn.push_back(statevector(dia));
        dias.push_back(std::move(dia));
    }
    auto coeffs = solve_coefficients(drawn, star_state_vector(legs, phase));
    if (!coeffs)
        return std::nullopt;
    for (std::size_t i = 0; i < dias.size(); ++i)
        rule.branches.emplace_back((*coeffs)[i], std::move(dias[i]));
    if (!rule.verify())
        return std::nullopt;
    return rule;
}

} // namespace zxstar
