#include "flowlab/steiner.hpp"

#include <map>
#include <stdexcept>

namespace flowlab::steiner {

using lattice::Cell;
using lattice::centered_span;

LatticeSet symmetrize_rows(const LatticeSet& e) {
    std::map<int, long long> rows;
    for (const Cell& c : e.cells()) ++rows[c.y];
    std::vector<Cell> out;
    out.reserve(e.size());
    for (auto& [y, count] : rows) {
        auto [lo, hi] = centered_span((int)count);
        for (int x = lo; x <= hi; ++x) out.push_back({x, y});
    }
    return LatticeSet(e.eps(), std::move(out));
}

LatticeSet symmetrize_columns(const LatticeSet& e_prime, const QuasiRect& qr) {
    if (e_prime.eps() != qr.eps())
        throw std::invalid_argument("symmetrize_columns: mismatched eps");
    const bool m_even = qr.m() % 2 == 0;
    std::map<int, long long> cols;
    for (const Cell& c : e_prime.cells()) ++cols[c.x];
    std::vector<Cell> out;
    out.reserve(e_prime.size());
    for (auto& [x, count] : cols) {
        auto [lo, hi] = centered_span((int)count);
        if (m_even && count % 2 == 1) {  // odd runs shift toward the partial row
            ++lo;
            ++hi;
        }
        for (int y = lo; y <= hi; ++y) out.push_back({x, y});
    }
    return LatticeSet(e_prime.eps(), std::move(out));
}

RearrangeReport rearrange(const LatticeSet& e, const QuasiRect& qr) {
    if (e.eps() != qr.eps()) throw std::invalid_argument("rearrange: mismatched eps");
    LatticeSet after_rows = symmetrize_rows(e);
    LatticeSet output = symmetrize_columns(after_rows, qr);
    LatticeSet qr_set = qr.to_set();
    RearrangeReport rep{e,
                        after_rows,
                        output,
                        perimeter_eps(e),
                        perimeter_eps(output),
                        dissipation_eps(e, qr_set),
                        dissipation_eps(output, qr_set)};
    return rep;
}

}  // namespace flowlab::steiner
